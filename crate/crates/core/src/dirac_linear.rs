//! Linear Dirac structures on `V ⊕ V*`.
//!
//! Coordinates on the `2n`-dimensional paired space are the vector part
//! followed by the covector part in the dual basis. The pairing is
//! `⟨(x, ξ), (y, η)⟩ = ξ(y) + η(x)`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::{self, kernel, quotient_map, zeros, Matrix, Scalar, Subspace, Vector};
use crate::Verdict;

/// Symmetric pairing of two `2n`-vectors.
pub fn pair(u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    if !u.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: u.len() + 1, found: u.len() });
    }
    let n = u.len() / 2;
    Ok(ratlin::dot(&u[n..], &v[..n]) + ratlin::dot(&v[n..], &u[..n]))
}

pub fn join(x: &[Scalar], xi: &[Scalar]) -> Vector {
    x.iter().chain(xi).cloned().collect()
}

pub fn split(u: &[Scalar]) -> (&[Scalar], &[Scalar]) {
    u.split_at(u.len() / 2)
}

/// Why a subspace of `V ⊕ V*` fails to be Lagrangian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LagrangianViolation {
    WrongAmbient { ambient: usize, n: usize },
    WrongDimension { dim: usize, n: usize },
    NotIsotropic {
        i: usize,
        j: usize,
        #[serde(with = "crate::json::rat")]
        value: Scalar,
    },
}

impl std::fmt::Display for LagrangianViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::WrongAmbient { ambient, n } => write!(f, "ambient dimension {ambient} != 2*{n}"),
            Self::WrongDimension { dim, n } => write!(f, "dimension {dim} != {n}"),
            Self::NotIsotropic { i, j, value } => {
                write!(f, "basis vectors {i} and {j} pair to {value}")
            }
        }
    }
}

pub fn lagrangian_check(n: usize, body: &Subspace) -> Verdict<LagrangianViolation> {
    if body.ambient_dim() != 2 * n {
        return Err(LagrangianViolation::WrongAmbient { ambient: body.ambient_dim(), n });
    }
    let basis = body.basis_vectors();
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate().skip(i) {
            let value = pair(u, v).expect("same ambient");
            if !value.is_zero() {
                return Err(LagrangianViolation::NotIsotropic { i, j, value });
            }
        }
    }
    if body.dim() != n {
        return Err(LagrangianViolation::WrongDimension { dim: body.dim(), n });
    }
    Ok(())
}

/// A Lagrangian subspace of `Q^n ⊕ (Q^n)*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiracSubspace {
    n: usize,
    body: Subspace,
}

impl DiracSubspace {
    pub fn new(n: usize, body: Subspace) -> Result<Self> {
        lagrangian_check(n, &body).map_err(|w| Error::NotLagrangian(w.to_string()))?;
        Ok(Self { n, body })
    }

    pub fn from_basis(n: usize, rows: &[Vector]) -> Result<Self> {
        Self::new(n, Subspace::span(2 * n, rows)?)
    }

    /// `V × {0}`.
    pub fn tangent(n: usize) -> Self {
        Self::split(&Subspace::full(n))
    }

    /// `{0} × V*`.
    pub fn cotangent(n: usize) -> Self {
        Self::split(&Subspace::zero(n))
    }

    /// `k × k°`.
    pub fn split(k: &Subspace) -> Self {
        let n = k.ambient_dim();
        let mut rows: Vec<Vector> = k.basis_vectors().iter().map(|x| join(x, &zeros(n))).collect();
        rows.extend(k.annihilator().basis_vectors().iter().map(|xi| join(&zeros(n), xi)));
        Self::from_basis(n, &rows).expect("k × k° is Lagrangian")
    }

    /// Graph `{(π♯ξ, ξ)}` of a bivector, where `η(π♯ξ) = π(ξ, η) = ξᵀ π η`.
    pub fn graph_of_bivector(pi: &Matrix) -> Result<Self> {
        if !pi.is_antisymmetric() {
            return Err(Error::NotSkew);
        }
        let n = pi.rows();
        let sharp = pi.transpose();
        let rows: Vec<Vector> = (0..n)
            .map(|i| join(&sharp.column(i), &ratlin::unit(n, i)))
            .collect();
        Self::from_basis(n, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn body(&self) -> &Subspace {
        &self.body
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.body.basis_vectors()
    }

    pub fn contains(&self, x: &[Scalar], xi: &[Scalar]) -> Result<bool> {
        self.body.contains(&join(x, xi))
    }

    pub fn characteristic(&self) -> Characteristic {
        characteristic(self)
    }

    /// Same structure in the reordered basis `e'_i = e_{perm[i]}` of `V`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        crate::liealg::check_permutation(self.n, perm)?;
        let rows: Vec<Vector> = self
            .basis_vectors()
            .iter()
            .map(|u| {
                let (x, xi) = split(u);
                join(&crate::liealg::permute(x, perm), &crate::liealg::permute(xi, perm))
            })
            .collect();
        Self::from_basis(self.n, &rows)
    }
}

/// `g0 = {x : (x,0) ∈ D}`, `g1 = pr_V D`, `p0 = {ξ : (0,ξ) ∈ D}`, `p1 = pr_V* D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characteristic {
    pub g0: Subspace,
    pub g1: Subspace,
    pub p0: Subspace,
    pub p1: Subspace,
}

impl Characteristic {
    /// `p1 = g0°` and `p0 = g1°`.
    pub fn annihilator_relations_hold(&self) -> bool {
        self.g0.annihilator() == self.p1 && self.g1.annihilator() == self.p0
    }
}

pub fn characteristic(d: &DiracSubspace) -> Characteristic {
    let n = d.n;
    let basis = d.body.basis();
    let vec_part = basis.select_columns(0..n);
    let cov_part = basis.select_columns(n..2 * n);
    // Coefficient vectors c with cᵀ·cov = 0 give the elements (x, 0).
    let with_zero_cov = kernel(&cov_part.transpose());
    let with_zero_vec = kernel(&vec_part.transpose());
    let combine = |coeffs: &Subspace, part: &Matrix| {
        let vs: Vec<Vector> = coeffs
            .basis_vectors()
            .iter()
            .map(|c| part.transpose().apply(c).expect("coefficient length"))
            .collect();
        Subspace::span(n, &vs).expect("length n")
    };
    Characteristic {
        g0: combine(&with_zero_cov, &vec_part),
        g1: Subspace::row_span(&vec_part),
        p0: combine(&with_zero_vec, &cov_part),
        p1: Subspace::row_span(&cov_part),
    }
}

/// `D = {(x, ξ) : x ∈ R, ξ|_R = ε(x, ·)}` with `ε` given on the canonical basis of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeForm {
    range: Subspace,
    form: Matrix,
}

impl RangeForm {
    pub fn new(range: Subspace, form: Matrix) -> Result<Self> {
        if form.rows() != range.dim() || form.cols() != range.dim() {
            return Err(Error::DimensionMismatch { expected: range.dim(), found: form.rows() });
        }
        if !form.is_antisymmetric() {
            return Err(Error::NotSkew);
        }
        Ok(Self { range, form })
    }

    pub fn range(&self) -> &Subspace {
        &self.range
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn n(&self) -> usize {
        self.range.ambient_dim()
    }
}

pub fn from_range_form(p: &RangeForm) -> DiracSubspace {
    let n = p.n();
    let r = &p.range;
    let mut rows = Vec::with_capacity(n);
    // RREF basis: r_c[pivot_b] = δ_bc, so ξ_a = Σ_b ε_ab e*_{pivot_b} satisfies ξ_a(r_c) = ε_ac.
    for (a, x) in r.basis_vectors().iter().enumerate() {
        let mut xi = zeros(n);
        for (b, &p_b) in r.pivots().iter().enumerate() {
            xi[p_b] = p.form[(a, b)].clone();
        }
        rows.push(join(x, &xi));
    }
    for zeta in r.annihilator().basis_vectors() {
        rows.push(join(&zeros(n), &zeta));
    }
    DiracSubspace::from_basis(n, &rows).expect("range-form presentations are Lagrangian")
}

pub fn to_range_form(d: &DiracSubspace) -> RangeForm {
    let n = d.n;
    let range = characteristic(d).g1;
    let basis = d.body.basis();
    let vec_part_t = basis.select_columns(0..n).transpose();
    let cov_part = basis.select_columns(n..2 * n);
    let reps: Vec<Vector> = range
        .basis_vectors()
        .iter()
        .map(|r| {
            let c = vec_part_t.solve(r).expect("r lies in the vector projection");
            cov_part.transpose().apply(&c).expect("coefficient length")
        })
        .collect();
    let rb = range.basis_vectors();
    let k = rb.len();
    let form = Matrix::from_fn(k, k, |a, b| ratlin::dot(&reps[a], &rb[b]));
    RangeForm::new(range, form).expect("a Lagrangian subspace induces a skew form")
}

/// Pairs `(x, ξ̄) ∈ Q^a × Q^b` satisfying `α_j(x) + ξ̄(w_j) = 0` for each row
/// `(α_j | w_j)` of `constraints`, then mapped by `f`.
fn solve_pairs(
    constraints: &Matrix,
    split_at: usize,
    f: impl Fn(&[Scalar], &[Scalar]) -> Vector,
    out_ambient: usize,
) -> Subspace {
    let sol = kernel(constraints);
    let vs: Vec<Vector> =
        sol.basis_vectors().iter().map(|v| f(&v[..split_at], &v[split_at..])).collect();
    Subspace::span(out_ambient, &vs).expect("mapped vectors have the output length")
}

fn check_surjective(q: &Matrix) -> Result<()> {
    let rank = q.rank();
    if rank != q.rows() {
        return Err(Error::NotSurjective { rank, target: q.rows() });
    }
    Ok(())
}

/// Forward image `{(q x, ξ̄) : (x, qᵀ ξ̄) ∈ D}` under a surjection `q : Q^n → Q^m`.
pub fn forward_image(d: &DiracSubspace, q: &Matrix) -> Result<DiracSubspace> {
    if q.cols() != d.n {
        return Err(Error::DimensionMismatch { expected: d.n, found: q.cols() });
    }
    check_surjective(q)?;
    let (n, m) = (d.n, q.rows());
    // (x, qᵀξ̄) ∈ D = D^⊥  ⟺  α_j(x) + ξ̄(q a_j) = 0 for every basis (a_j, α_j) of D.
    let rows: Vec<Vector> = d
        .basis_vectors()
        .iter()
        .map(|u| {
            let (a, alpha) = split(u);
            join(alpha, &q.apply(a).expect("length n"))
        })
        .collect();
    let constraints = Matrix::from_rows(n + m, rows)?;
    let body = solve_pairs(&constraints, n, |x, xb| join(&q.apply(x).expect("length n"), xb), 2 * m);
    DiracSubspace::new(m, body)
}

/// Backward image `{(x, qᵀ ξ̄) : (q x, ξ̄) ∈ D̄}` under a surjection `q : Q^n → Q^m`.
pub fn pullback(dbar: &DiracSubspace, q: &Matrix) -> Result<DiracSubspace> {
    if q.rows() != dbar.n {
        return Err(Error::DimensionMismatch { expected: dbar.n, found: q.rows() });
    }
    check_surjective(q)?;
    let (n, m) = (q.cols(), dbar.n);
    let qt = q.transpose();
    // (q x, ξ̄) ∈ D̄ = D̄^⊥  ⟺  (qᵀ α_j)(x) + ξ̄(a_j) = 0.
    let rows: Vec<Vector> = dbar
        .basis_vectors()
        .iter()
        .map(|u| {
            let (a, alpha) = split(u);
            join(&qt.apply(alpha).expect("length m"), a)
        })
        .collect();
    let constraints = Matrix::from_rows(n + m, rows)?;
    let body = solve_pairs(&constraints, n, |x, xb| join(x, &qt.apply(xb).expect("length m")), 2 * n);
    DiracSubspace::new(n, body)
}

/// `((D ∩ K^⊥) + K) / K` for `K = k × {0}`, in the pivot-complement coordinates of `V / k`.
pub fn reduce(d: &DiracSubspace, k: &Subspace) -> Result<DiracSubspace> {
    if k.ambient_dim() != d.n {
        return Err(Error::DimensionMismatch { expected: d.n, found: k.ambient_dim() });
    }
    let q = quotient_map(d.n, k)?;
    forward_image(d, &q.projection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int, ints, unit};

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&ints(&[1, 0, 0, 0]), &ints(&[0, 0, 1, 0])).unwrap(), int(1));
        assert_eq!(pair(&ints(&[1, 2, 0, 0]), &ints(&[3, 4, 0, 0])).unwrap(), int(0));
        assert_eq!(pair(&ints(&[1, 0, 0, 1]), &ints(&[0, 1, 1, 0])).unwrap(), int(2));
        assert!(pair(&ints(&[1, 0]), &ints(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn lagrangian_examples() {
        assert!(lagrangian_check(3, DiracSubspace::tangent(3).body()).is_ok());
        assert!(lagrangian_check(3, DiracSubspace::cotangent(3).body()).is_ok());
        let bad = Subspace::span(2, &[ints(&[1, 1])]).unwrap();
        assert_eq!(
            lagrangian_check(1, &bad),
            Err(LagrangianViolation::NotIsotropic { i: 0, j: 0, value: int(2) })
        );
        let small = Subspace::span(4, &[ints(&[1, 0, 0, 0])]).unwrap();
        assert_eq!(lagrangian_check(2, &small), Err(LagrangianViolation::WrongDimension { dim: 1, n: 2 }));
        assert!(matches!(DiracSubspace::new(1, bad), Err(Error::NotLagrangian(_))));
    }

    #[test]
    fn characteristic_split_fiber() {
        let g0 = Subspace::coordinate(3, &[2]);
        let d = DiracSubspace::split(&g0);
        let c = d.characteristic();
        assert_eq!(c.g0, g0);
        assert_eq!(c.p1, Subspace::coordinate(3, &[0, 1]));
        assert_eq!(c.g1, c.g0);
        assert_eq!(c.p0, c.p1);
        assert!(c.annihilator_relations_hold());

        let c = DiracSubspace::cotangent(3).characteristic();
        assert!(c.g0.is_zero());
        assert!(c.p1.is_full());
    }

    #[test]
    fn characteristic_of_bivector_graph() {
        // π = e1∧e2 on Q^3: π♯ has kernel span{e3*}, image span{e1, e2}.
        let mut pi = Matrix::zeros(3, 3);
        pi[(0, 1)] = int(1);
        pi[(1, 0)] = int(-1);
        let d = DiracSubspace::graph_of_bivector(&pi).unwrap();
        let c = d.characteristic();
        assert!(c.g0.is_zero());
        assert!(c.p1.is_full());
        assert_eq!(c.p0, Subspace::coordinate(3, &[2]));
        assert_eq!(c.g1, Subspace::coordinate(3, &[0, 1]));
        assert!(c.annihilator_relations_hold());
        // η(π♯ξ) = π(ξ, η)
        assert!(d.contains(&ints(&[0, 1, 0]), &unit(3, 0)).unwrap());
        assert!(DiracSubspace::graph_of_bivector(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn range_form_examples() {
        let rf = RangeForm::new(Subspace::full(3), Matrix::zeros(3, 3)).unwrap();
        assert_eq!(from_range_form(&rf), DiracSubspace::tangent(3));
        let rf = RangeForm::new(Subspace::zero(3), Matrix::zeros(0, 0)).unwrap();
        assert_eq!(from_range_form(&rf), DiracSubspace::cotangent(3));
        assert!(matches!(
            RangeForm::new(Subspace::full(2), Matrix::identity(2)),
            Err(Error::NotSkew)
        ));
    }

    #[test]
    fn range_form_recovers_non_coordinate_range() {
        let r = Subspace::span(3, &[ints(&[1, 1, 0]), ints(&[0, 2, 1])]).unwrap();
        let mut eps = Matrix::zeros(2, 2);
        eps[(0, 1)] = frac(3, 2);
        eps[(1, 0)] = frac(-3, 2);
        let rf = RangeForm::new(r.clone(), eps).unwrap();
        let d = from_range_form(&rf);
        assert_eq!(d.characteristic().g1, r);
        assert_eq!(to_range_form(&d), rf);
    }

    #[test]
    fn reduce_examples() {
        let g0 = Subspace::coordinate(3, &[2]);
        let red = reduce(&DiracSubspace::split(&g0), &g0).unwrap();
        assert_eq!(red, DiracSubspace::cotangent(2));

        let d = DiracSubspace::split(&Subspace::coordinate(3, &[0]));
        assert_eq!(reduce(&d, &Subspace::zero(3)).unwrap(), d);

        let k = Subspace::span(3, &[ints(&[1, 1, 1])]).unwrap();
        assert_eq!(reduce(&DiracSubspace::cotangent(3), &k).unwrap(), DiracSubspace::cotangent(2));
    }

    #[test]
    fn pullback_examples() {
        let h = Subspace::coordinate(3, &[0]);
        let q = quotient_map(3, &h).unwrap();
        let pb = pullback(&DiracSubspace::cotangent(2), &q.projection).unwrap();
        assert_eq!(pb, DiracSubspace::split(&h));

        let d = DiracSubspace::tangent(3);
        assert_eq!(pullback(&d, &Matrix::identity(3)).unwrap(), d);

        let not_onto = Matrix::from_i64(&[&[1, 0, 0], &[2, 0, 0]]);
        assert!(matches!(
            pullback(&DiracSubspace::cotangent(2), &not_onto),
            Err(Error::NotSurjective { rank: 1, target: 2 })
        ));
    }

    #[test]
    fn pullback_of_reduction_recovers_only_when_kernel_in_g0() {
        let k = Subspace::coordinate(3, &[2]);
        let q = quotient_map(3, &k).unwrap();
        let d = DiracSubspace::split(&Subspace::coordinate(3, &[1, 2]));
        let back = pullback(&reduce(&d, &k).unwrap(), &q.projection).unwrap();
        assert_eq!(back, d);

        let d = DiracSubspace::cotangent(3);
        let back = pullback(&reduce(&d, &k).unwrap(), &q.projection).unwrap();
        assert_ne!(back, d);
    }
}
