//! Infinitesimal data of multiplicative Dirac structures.
//!
//! A multiplicative Dirac structure on a connected, simply connected group
//! is determined by an ideal `g0 ⊆ g` and a 1-cocycle `δ : g → Λ²(g/g0)`.
//!
//! Conventions used throughout this module:
//!
//! - `g/g0` carries the pivot-complement coordinates of [`QuotientMap`]
//!   (projection `P`, section `S`).
//! - `p1 = g0°`. A form `ξ ∈ p1` has quotient coordinates `ξ̂ = Sᵀ ξ`, the
//!   coordinates dual to the basis of `g/g0`; conversely `ξ = Pᵀ ξ̂`.
//! - `δ(x)` is stored as a skew matrix `M(x)` with
//!   `δ(x)(ξ, η) = ξ̂ᵀ M(x) η̂`, i.e. `Λ² (g/g0)` is paired with `Λ² p1` by
//!   `(x̄ ∧ ȳ)(ξ, η) = ξ(x) η(y) − ξ(y) η(x)` without a factor `1/2`.
//! - The dual bracket is `[ξ, η](x) = δ(x)(ξ, η)` and the mixed coadjoint
//!   action is `(ad_ξ* x)(η) = [η, ξ](x)`, hence `ad_ξ* x = M(x) ξ̂`.

use num_traits::Zero;
use serde::Serialize;

use crate::dirac_linear::{join, split, DiracSubspace};
use crate::error::{Error, Result};
use crate::liealg::{self, LieAlgebra, StructureConstants};
use crate::ratlin::{self, kernel, quotient_map, zeros, Matrix, QuotientMap, Scalar, Subspace, Vector};
use crate::Verdict;

/// An ideal `g0` together with a linear map `δ : g → Λ²(g/g0)`.
///
/// Construction checks that `g0` is an ideal and each `δ(e_i)` is skew; the
/// cocycle identity is checked separately by [`cocycle_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    g: LieAlgebra,
    g0: Subspace,
    quotient: QuotientMap,
    p1: Subspace,
    delta: Vec<Matrix>,
}

impl CocycleData {
    pub fn new(g: LieAlgebra, g0: Subspace, delta: Vec<Matrix>) -> Result<Self> {
        if !g.is_ideal(&g0)? {
            return Err(Error::NotAnIdeal);
        }
        if delta.len() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: delta.len() });
        }
        let quotient = quotient_map(g.dim(), &g0)?;
        let m = quotient.quotient_dim();
        for d in &delta {
            if d.rows() != m || d.cols() != m {
                return Err(Error::DimensionMismatch { expected: m, found: d.rows() });
            }
            if !d.is_antisymmetric() {
                return Err(Error::NotSkew);
            }
        }
        let p1 = g0.annihilator();
        Ok(Self { g, g0, quotient, p1, delta })
    }

    /// `δ = 0`.
    pub fn trivial(g: LieAlgebra, g0: Subspace) -> Result<Self> {
        let m = g.dim() - g0.dim();
        let n = g.dim();
        Self::new(g, g0, vec![Matrix::zeros(m, m); n])
    }

    /// Coboundary `δ(x) = x · Λ` of a skew `Λ ∈ Λ²(g/g0)`.
    pub fn coboundary(g: LieAlgebra, g0: Subspace, lambda: &Matrix) -> Result<Self> {
        let base = Self::trivial(g, g0)?;
        let m = base.quotient_dim();
        if lambda.rows() != m || lambda.cols() != m {
            return Err(Error::DimensionMismatch { expected: m, found: lambda.rows() });
        }
        if !lambda.is_antisymmetric() {
            return Err(Error::NotSkew);
        }
        let n = base.g.dim();
        let delta = (0..n).map(|i| base.act(&ratlin::unit(n, i), lambda)).collect();
        Self::new(base.g, base.g0, delta)
    }

    /// `δ(x) = Σ_a (P x)_a N_a`, which vanishes on `g0` by construction.
    pub fn factored(g: LieAlgebra, g0: Subspace, per_quotient_basis: &[Matrix]) -> Result<Self> {
        let base = Self::trivial(g, g0)?;
        let m = base.quotient_dim();
        if per_quotient_basis.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: per_quotient_basis.len() });
        }
        let n = base.g.dim();
        let delta = (0..n)
            .map(|i| {
                let px = base.quotient.project(&ratlin::unit(n, i));
                px.iter().zip(per_quotient_basis).fold(Matrix::zeros(m, m), |acc, (c, nm)| {
                    acc.add(&nm.scale(c)).expect("square blocks of size m")
                })
            })
            .collect();
        Self::new(base.g, base.g0, delta)
    }

    /// Builds `δ` from a bilinear antisymmetric bracket `p1 × p1 → g*`,
    /// evaluated on the canonical basis of `p1`.
    pub fn from_dual_bracket(
        g: LieAlgebra,
        g0: Subspace,
        bracket: impl Fn(&[Scalar], &[Scalar]) -> Vector,
    ) -> Result<Self> {
        let p1 = g0.annihilator();
        let basis = p1.basis_vectors();
        let table = basis.iter().map(|a| basis.iter().map(|b| bracket(a, b)).collect()).collect();
        bracket_to_delta(&DualBracket::new(g, g0, table)?)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn g0(&self) -> &Subspace {
        &self.g0
    }

    pub fn p1(&self) -> &Subspace {
        &self.p1
    }

    pub fn quotient(&self) -> &QuotientMap {
        &self.quotient
    }

    pub fn delta(&self) -> &[Matrix] {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient.quotient_dim()
    }

    /// `M(x) = Σ_i x_i δ(e_i)`.
    pub fn delta_at(&self, x: &[Scalar]) -> Matrix {
        let m = self.quotient_dim();
        x.iter()
            .zip(&self.delta)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(m, m), |acc, (c, d)| acc.add(&d.scale(c)).expect("m × m"))
    }

    /// Quotient coordinates `ξ̂ = Sᵀ ξ` of a form in `p1`.
    pub fn hat(&self, xi: &[Scalar]) -> Vector {
        self.quotient.restrict_form(xi)
    }

    /// Form in `p1` with quotient coordinates `ξ̂`.
    pub fn unhat(&self, xi_hat: &[Scalar]) -> Vector {
        self.quotient.pullback_form(xi_hat)
    }

    /// `δ(x)(ξ, η)` for `ξ, η ∈ p1` given as forms on `g`.
    pub fn eval(&self, x: &[Scalar], xi: &[Scalar], eta: &[Scalar]) -> Scalar {
        let m = self.delta_at(x);
        ratlin::dot(&self.hat(xi), &m.apply(&self.hat(eta)).expect("length m"))
    }

    /// `[ξ, η] ∈ g*` with `[ξ, η](e_i) = δ(e_i)(ξ, η)`.
    pub fn dual_bracket(&self, xi: &[Scalar], eta: &[Scalar]) -> Vector {
        let (a, b) = (self.hat(xi), self.hat(eta));
        self.delta
            .iter()
            .map(|d| ratlin::dot(&a, &d.apply(&b).expect("length m")))
            .collect()
    }

    /// `ad_ξ* x ∈ g/g0`, defined by `(ad_ξ* x)(η) = [η, ξ](x)`.
    pub fn mixed_coad(&self, xi: &[Scalar], x: &[Scalar]) -> Vector {
        self.delta_at(x).apply(&self.hat(xi)).expect("length m")
    }

    /// Matrix of `ad_z` on `g/g0` (`P ad(z) S`).
    pub fn quotient_ad(&self, z: &[Scalar]) -> Matrix {
        let ad = self.g.ad_matrix(z).expect("vector in g");
        self.quotient
            .projection
            .mul(&ad)
            .and_then(|pa| pa.mul(&self.quotient.section))
            .expect("compatible shapes")
    }

    /// Module action `z · (x̄ ∧ ȳ) = [z,x]‾ ∧ ȳ + x̄ ∧ [z,y]‾` on skew matrices.
    pub fn act(&self, z: &[Scalar], m: &Matrix) -> Matrix {
        let a = self.quotient_ad(z);
        let am = a.mul(m).expect("m × m");
        let mat = m.mul(&a.transpose()).expect("m × m");
        am.add(&mat).expect("m × m")
    }

    /// Bracket on `g/g0`.
    pub fn quotient_bracket(&self, x_bar: &[Scalar], y_bar: &[Scalar]) -> Vector {
        let x = self.quotient.lift(x_bar);
        let y = self.quotient.lift(y_bar);
        self.quotient.project(&self.g.br(&x, &y))
    }

    /// `δ` restricted to `g0` vanishes.
    pub fn vanishes_on_g0(&self) -> bool {
        self.g0.basis_vectors().iter().all(|x| self.delta_at(x).is_zero())
    }

    /// Same data in the reordered basis `e'_i = e_{perm[i]}` of `g`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let g = self.g.relabel(perm)?;
        let g0 = liealg::permute_subspace(&self.g0, perm)?;
        let mut inverse = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        Self::from_dual_bracket(g, g0, |xi, eta| {
            let b = self.dual_bracket(&liealg::permute(xi, &inverse), &liealg::permute(eta, &inverse));
            liealg::permute(&b, perm)
        })
    }
}

// ---------------------------------------------------------------------------
// Cocycle identity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleWitness {
    pub pair: (usize, usize),
    /// `δ([x, y])`
    #[serde(with = "crate::json::rat_mat")]
    pub lhs: Matrix,
    /// `x · δ(y) − y · δ(x)`
    #[serde(with = "crate::json::rat_mat")]
    pub rhs: Matrix,
}

/// `δ([x,y]) = x·δ(y) − y·δ(x)` on every basis pair.
pub fn cocycle_check(data: &CocycleData) -> Verdict<CocycleWitness> {
    let n = data.dim();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (ratlin::unit(n, i), ratlin::unit(n, j));
            let lhs = data.delta_at(data.g.basis_bracket(i, j));
            let rhs = data
                .act(&x, &data.delta[j])
                .sub(&data.act(&y, &data.delta[i]))
                .expect("m × m");
            if lhs != rhs {
                return Err(CocycleWitness { pair: (i, j), lhs, rhs });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Dual bracket on p1
// ---------------------------------------------------------------------------

/// The bracket `p1 × p1 → g*` tabulated on the canonical basis of `p1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBracket {
    g: LieAlgebra,
    g0: Subspace,
    p1: Subspace,
    table: Vec<Vec<Vector>>,
}

impl DualBracket {
    pub fn new(g: LieAlgebra, g0: Subspace, table: Vec<Vec<Vector>>) -> Result<Self> {
        if g0.ambient_dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: g0.ambient_dim() });
        }
        let p1 = g0.annihilator();
        let k = p1.dim();
        if table.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: table.len() });
        }
        for row in &table {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: row.len() });
            }
            for v in row {
                if v.len() != g.dim() {
                    return Err(Error::DimensionMismatch { expected: g.dim(), found: v.len() });
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                if ratlin::add(&table[a][b], &table[b][a]).iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(Self { g, g0, p1, table })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn g0(&self) -> &Subspace {
        &self.g0
    }

    pub fn p1(&self) -> &Subspace {
        &self.p1
    }

    /// `[ξ_a, ξ_b]` for the canonical basis of `p1`.
    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    /// Bilinear extension to arbitrary `ξ, η ∈ p1`.
    pub fn bracket(&self, xi: &[Scalar], eta: &[Scalar]) -> Result<Vector> {
        let a = self.p1.coordinates(xi)?.ok_or(Error::NotInSubspace)?;
        let b = self.p1.coordinates(eta)?.ok_or(Error::NotInSubspace)?;
        let mut out = zeros(self.g.dim());
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &c * t;
                }
            }
        }
        Ok(out)
    }
}

pub fn delta_to_bracket(data: &CocycleData) -> DualBracket {
    let basis = data.p1.basis_vectors();
    let table = basis
        .iter()
        .map(|a| basis.iter().map(|b| data.dual_bracket(a, b)).collect())
        .collect();
    DualBracket::new(data.g.clone(), data.g0.clone(), table).expect("δ(x) is skew")
}

/// Inverse of [`delta_to_bracket`]: `M(e_i) = Ξ̂⁻¹ T_i Ξ̂⁻ᵀ` where `Ξ̂` has rows `ξ̂_a`
/// and `T_i[a][b] = [ξ_a, ξ_b](e_i)`.
pub fn bracket_to_delta(b: &DualBracket) -> Result<CocycleData> {
    let base = CocycleData::trivial(b.g.clone(), b.g0.clone())?;
    let m = base.quotient_dim();
    let rows: Vec<Vector> = b.p1.basis_vectors().iter().map(|xi| base.hat(xi)).collect();
    let xi_hat = Matrix::from_rows(m, rows)?;
    let inv = xi_hat.inverse().expect("p1 basis restricts to a basis of (g/g0)*");
    let inv_t = inv.transpose();
    let delta = (0..b.g.dim())
        .map(|i| {
            let t = Matrix::from_fn(m, m, |a, c| b.table[a][c][i].clone());
            inv.mul(&t).and_then(|x| x.mul(&inv_t)).expect("m × m")
        })
        .collect();
    CocycleData::new(b.g.clone(), b.g0.clone(), delta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NInvarianceWitness {
    /// Indices into the canonical basis of `p1`.
    pub pair: (usize, usize),
    #[serde(with = "crate::json::rat_vec")]
    pub value: Vector,
}

/// Every `[ξ_a, ξ_b]` lies in `p1`.
pub fn n_invariance_check(b: &DualBracket) -> Verdict<NInvarianceWitness> {
    for (a, row) in b.table.iter().enumerate() {
        for (c, value) in row.iter().enumerate().skip(a + 1) {
            if !b.p1.contains(value).expect("form on g") {
                return Err(NInvarianceWitness { pair: (a, c), value: value.clone() });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegrabilityWitness {
    NotNInvariant(NInvarianceWitness),
    Jacobi {
        triple: (usize, usize, usize),
        #[serde(with = "crate::json::rat_vec")]
        jacobiator: Vector,
    },
}

/// The dual bracket is a Lie bracket on `p1`.
pub fn integrability_check(b: &DualBracket) -> Verdict<IntegrabilityWitness> {
    n_invariance_check(b).map_err(IntegrabilityWitness::NotNInvariant)?;
    let basis = b.p1.basis_vectors();
    let k = basis.len();
    let br = |x: &[Scalar], y: &[Scalar]| b.bracket(x, y).expect("values lie in p1");
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let (x, y, z) = (&basis[i], &basis[j], &basis[l]);
                let s1 = br(&b.table[i][j], z);
                let s2 = br(&b.table[j][l], x);
                let s3 = br(&b.table[l][i], y);
                let sum = ratlin::add(&ratlin::add(&s1, &s2), &s3);
                if !ratlin::is_zero(&sum) {
                    return Err(IntegrabilityWitness::Jacobi { triple: (i, j, l), jacobiator: sum });
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Expanded forms of the cocycle identity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityWitness {
    /// Basis indices: vectors of `g` first, then forms of the `p1` basis.
    pub vectors: Vec<usize>,
    pub forms: Vec<usize>,
    #[serde(with = "crate::json::rat_vec")]
    pub lhs: Vector,
    #[serde(with = "crate::json::rat_vec")]
    pub rhs: Vector,
}

/// Values reused across the expanded identities, indexed by basis vectors
/// `e_i` of `g` and the canonical basis `ξ_a` of `p1`.
struct IdentityTables {
    forms: Vec<Vector>,
    /// `ad_{e_i}* ξ_a`
    coad: Vec<Vec<Vector>>,
    /// `ad_{ξ_a}* e_i ∈ g/g0`
    mixed: Vec<Vec<Vector>>,
}

impl IdentityTables {
    fn new(data: &CocycleData) -> Self {
        let n = data.dim();
        let forms = data.p1.basis_vectors();
        let coad = (0..n)
            .map(|i| {
                let c = data.g.coad_matrix(&ratlin::unit(n, i)).expect("basis vector");
                forms.iter().map(|xi| c.apply(xi).expect("length n")).collect()
            })
            .collect();
        let mixed = (0..n)
            .map(|i| forms.iter().map(|xi| data.delta[i].apply(&data.hat(xi)).expect("length m")).collect())
            .collect();
        Self { forms, coad, mixed }
    }

    /// `ad_v* ξ_a` for arbitrary `v ∈ g`.
    fn coad_at(&self, v: &[Scalar], a: usize) -> Vector {
        let mut out = zeros(v.len());
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, t) in out.iter_mut().zip(&self.coad[j][a]) {
                *o += c * t;
            }
        }
        out
    }

    /// `ad_ξ* v ∈ g/g0` for `ξ` given by its quotient coordinates.
    fn mixed_at(data: &CocycleData, v: &[Scalar], xi_hat: &[Scalar]) -> Vector {
        let mut out = zeros(data.quotient_dim());
        for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let col = data.delta[j].apply(xi_hat).expect("length m");
            for (o, t) in out.iter_mut().zip(&col) {
                *o += c * t;
            }
        }
        out
    }
}

/// `ad_x*[ξ,η] = [ad_x*ξ, η] − [ad_x*η, ξ] + ad*_{ad_η* x} ξ − ad*_{ad_ξ* x} η` in `g*`.
pub fn ppart_identity_check(data: &CocycleData) -> Verdict<IdentityWitness> {
    let g = &data.g;
    let n = g.dim();
    let t = IdentityTables::new(data);
    let k = t.forms.len();
    let brackets: Vec<Vec<Vector>> =
        (0..k).map(|a| (0..k).map(|b| data.dual_bracket(&t.forms[a], &t.forms[b])).collect()).collect();
    for i in 0..n {
        let c = g.coad_matrix(&ratlin::unit(n, i)).expect("basis vector");
        for a in 0..k {
            for b in 0..k {
                let lhs = c.apply(&brackets[a][b]).expect("length n");
                let t1 = data.dual_bracket(&t.coad[i][a], &t.forms[b]);
                let t2 = data.dual_bracket(&t.coad[i][b], &t.forms[a]);
                let t3 = t.coad_at(&data.quotient.lift(&t.mixed[i][b]), a);
                let t4 = t.coad_at(&data.quotient.lift(&t.mixed[i][a]), b);
                let rhs = ratlin::sub(&ratlin::add(&ratlin::sub(&t1, &t2), &t3), &t4);
                if lhs != rhs {
                    return Err(IdentityWitness { vectors: vec![i], forms: vec![a, b], lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

/// `ad_ξ*[x,y] = [ad_ξ* x, y] − [ad_ξ* y, x] − ad*_{ad_x*ξ} y + ad*_{ad_y*ξ} x` in `g/g0`.
pub fn gpart_identity_check(data: &CocycleData) -> Verdict<IdentityWitness> {
    let g = &data.g;
    let q = &data.quotient;
    let n = g.dim();
    let t = IdentityTables::new(data);
    let k = t.forms.len();
    let coad_hat: Vec<Vec<Vector>> =
        t.coad.iter().map(|row| row.iter().map(|v| data.hat(v)).collect()).collect();
    let projected: Vec<Vector> = (0..n).map(|j| q.project(&ratlin::unit(n, j))).collect();
    for i in 0..n {
        for j in 0..n {
            let xy = g.basis_bracket(i, j);
            for a in 0..k {
                let lhs = IdentityTables::mixed_at(data, xy, &data.hat(&t.forms[a]));
                let t1 = data.quotient_bracket(&t.mixed[i][a], &projected[j]);
                let t2 = data.quotient_bracket(&t.mixed[j][a], &projected[i]);
                let t3 = data.delta[j].apply(&coad_hat[i][a]).expect("length m");
                let t4 = data.delta[i].apply(&coad_hat[j][a]).expect("length m");
                let rhs = ratlin::add(&ratlin::sub(&ratlin::sub(&t1, &t2), &t3), &t4);
                if lhs != rhs {
                    return Err(IdentityWitness { vectors: vec![i, j], forms: vec![a], lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The double g/g0 × p1
// ---------------------------------------------------------------------------

/// Element `(x̄, ξ̂)` of `g/g0 × p1` in quotient coordinates.
pub type DoubleElement = (Vector, Vector);

/// `[(x̄,ξ),(ȳ,η)] = ([x,y] − ad_η* x + ad_ξ* y, [ξ,η] + ad_x* η − ad_y* ξ)`, evaluated
/// with the section representatives `x = S x̄`, `y = S ȳ`.
pub fn double_bracket(data: &CocycleData, (xb, xih): (&[Scalar], &[Scalar]), (yb, etah): (&[Scalar], &[Scalar])) -> DoubleElement {
    let q = &data.quotient;
    let g = &data.g;
    let (x, y) = (q.lift(xb), q.lift(yb));
    let (xi, eta) = (data.unhat(xih), data.unhat(etah));
    let v = ratlin::add(
        &ratlin::sub(&q.project(&g.br(&x, &y)), &data.mixed_coad(&eta, &x)),
        &data.mixed_coad(&xi, &y),
    );
    let c = ratlin::sub(
        &ratlin::add(&data.hat(&data.dual_bracket(&xi, &eta)), &data.hat(&g.coad(&x, &eta))),
        &data.hat(&g.coad(&y, &xi)),
    );
    (v, c)
}

/// Lie algebra structure on `g/g0 × p1`; coordinates are `(x̄, ξ̂)`, so the
/// canonical pairing is the standard one of [`crate::dirac_linear::pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleAlgebra {
    algebra: LieAlgebra,
    data: CocycleData,
}

impl DoubleAlgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn data(&self) -> &CocycleData {
        &self.data
    }

    pub fn quotient_dim(&self) -> usize {
        self.data.quotient_dim()
    }

    /// Coordinates of `(x + g0, ξ)` for `x ∈ g`, `ξ ∈ p1`.
    pub fn embed(&self, x: &[Scalar], xi: &[Scalar]) -> Result<Vector> {
        if !self.data.p1.contains(xi)? {
            return Err(Error::NotInSubspace);
        }
        Ok(join(&self.data.quotient.project(x), &self.data.hat(xi)))
    }

    /// `g/g0 × {0}`.
    pub fn quotient_part(&self) -> Subspace {
        let m = self.quotient_dim();
        Subspace::coordinate(2 * m, &(0..m).collect::<Vec<_>>())
    }

    /// `{0} × p1`.
    pub fn dual_part(&self) -> Subspace {
        let m = self.quotient_dim();
        Subspace::coordinate(2 * m, &(m..2 * m).collect::<Vec<_>>())
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        self.algebra.bracket(u, v)
    }
}

/// Builds and certifies the double. Requires a cocycle whose dual bracket is
/// a Lie bracket on `p1`.
pub fn build_double(data: &CocycleData) -> Result<DoubleAlgebra> {
    if cocycle_check(data).is_err() {
        return Err(Error::NotCocycle);
    }
    if integrability_check(&delta_to_bracket(data)).is_err() {
        return Err(Error::NotIntegrable);
    }
    let m = data.quotient_dim();
    let names: Vec<String> = data
        .quotient
        .complement
        .iter()
        .map(|&c| data.g.names()[c].clone())
        .chain(data.quotient.complement.iter().map(|&c| format!("{}*", data.g.names()[c])))
        .collect();
    let mut sc = StructureConstants::zero(2 * m).with_names(names)?;
    let basis = |i: usize| -> DoubleElement {
        let u = ratlin::unit(2 * m, i);
        let (a, b) = split(&u);
        (a.to_vec(), b.to_vec())
    };
    for i in 0..2 * m {
        for j in i + 1..2 * m {
            let (a, b) = (basis(i), basis(j));
            let (v, c) = double_bracket(data, (&a.0, &a.1), (&b.0, &b.1));
            sc.set(i, j, join(&v, &c))?;
        }
    }
    Ok(DoubleAlgebra { algebra: LieAlgebra::new(sc)?, data: data.clone() })
}

/// Derivative at the identity of the action of `exp(t y)` on `g/g0 × p1`:
/// `([y,x] − ad_ξ* y + g0, ad_y* ξ)`.
pub fn infinitesimal_action(data: &CocycleData, y: &[Scalar], (xb, xih): (&[Scalar], &[Scalar])) -> Result<DoubleElement> {
    if y.len() != data.dim() {
        return Err(Error::DimensionMismatch { expected: data.dim(), found: y.len() });
    }
    let m = data.quotient_dim();
    for v in [xb, xih] {
        if v.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: v.len() });
        }
    }
    if !data.vanishes_on_g0() {
        return Err(Error::NotNInvariant);
    }
    let q = &data.quotient;
    let x = q.lift(xb);
    let xi = data.unhat(xih);
    let v = ratlin::sub(&q.project(&data.g.br(y, &x)), &data.mixed_coad(&xi, y));
    let c = data.hat(&data.g.coad(y, &xi));
    Ok((v, c))
}

// ---------------------------------------------------------------------------
// Abelian groups: pointwise realisation
// ---------------------------------------------------------------------------

/// `D(r) = {(δ(r)♯ ξ + x, ξ) : ξ ∈ p1, x ∈ g0}` on `g = Q^n` abelian, with the
/// group identified with its Lie algebra. `δ(r)♯ ξ` is the section lift of
/// `δ(r)(ξ, ·)`, i.e. `S M(r)ᵀ ξ̂`.
pub fn abelian_fiber(data: &CocycleData, r: &[Scalar]) -> Result<DiracSubspace> {
    if !data.g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = data.dim();
    if r.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    let mt = data.delta_at(r).transpose();
    let mut rows: Vec<Vector> = data
        .p1
        .basis_vectors()
        .iter()
        .map(|xi| {
            let v = data.quotient.lift(&mt.apply(&data.hat(xi)).expect("length m"));
            join(&v, xi)
        })
        .collect();
    rows.extend(data.g0.basis_vectors().iter().map(|x| join(x, &zeros(n))));
    DiracSubspace::from_basis(n, &rows)
}

/// `{(v + w, ξ) : (v, ξ) ∈ D1, (w, ξ) ∈ D2}`: the product in the abelian
/// Pontryagin groupoid, fibrewise.
pub fn groupoid_product(d1: &DiracSubspace, d2: &DiracSubspace) -> Result<Subspace> {
    let n = d1.n();
    if d2.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: d2.n() });
    }
    let (b1, b2) = (d1.body().basis(), d2.body().basis());
    let (k1, k2) = (b1.rows(), b2.rows());
    let cov1 = b1.select_columns(n..2 * n).transpose();
    let cov2 = b2.select_columns(n..2 * n).transpose();
    let sys = cov1.hstack(&cov2.neg())?;
    let vec1 = b1.select_columns(0..n).transpose();
    let vec2 = b2.select_columns(0..n).transpose();
    let vs: Vec<Vector> = kernel(&sys)
        .basis_vectors()
        .iter()
        .map(|c| {
            let (a, b) = c.split_at(k1);
            debug_assert_eq!(b.len(), k2);
            let v = ratlin::add(&vec1.apply(a).expect("k1"), &vec2.apply(b).expect("k2"));
            join(&v, &cov1.apply(a).expect("k1"))
        })
        .collect();
    Subspace::span(2 * n, &vs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativityWitness {
    /// Basis element of `D(r + s)` that is not a product.
    #[serde(with = "crate::json::rat_vec")]
    pub element: Vector,
}

/// Every element of `D(r + s)` factors as a product of elements of `D(r)` and `D(s)`.
pub fn abelian_multiplicativity_check(
    data: &CocycleData,
    r: &[Scalar],
    s: &[Scalar],
) -> Result<Verdict<MultiplicativityWitness>> {
    let drs = abelian_fiber(data, &ratlin::add(r, s))?;
    let product = groupoid_product(&abelian_fiber(data, r)?, &abelian_fiber(data, s)?)?;
    for element in drs.basis_vectors() {
        if !product.contains(&element)? {
            return Ok(Err(MultiplicativityWitness { element }));
        }
    }
    Ok(Ok(()))
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// The multiplicative structure on `R³` spanned by `(∂z, 0)`, `(z∂x, dy)`,
/// `(−z∂y, dx)`: `g0 = span{e3}` and `[dy, dx] = dz`.
pub fn r3_counterexample() -> CocycleData {
    sections_fixture(
        Subspace::coordinate(3, &[2]),
        &[
            (ratlin::unit(3, 1), Matrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]])),
            (ratlin::unit(3, 0), Matrix::from_i64(&[&[0, 0, 0], &[0, 0, -1], &[0, 0, 0]])),
        ],
    )
    .expect("R3 sections are compatible")
}

fn sections_fixture(g0: Subspace, sections: &[(Vector, Matrix)]) -> Result<CocycleData> {
    let b = DualBracket::from_linear_sections(g0, sections)?;
    bracket_to_delta(&b)
}

impl DualBracket {
    /// Dual bracket of a multiplicative structure on `Q^n` given by linear
    /// vector fields: each pair `(ξ, A)` means `(A r, ξ) ∈ D(r)`. Then
    /// `[ξ, η] = d_0(η(X_ξ)) = Aᵀ η`. The forms must be a basis of `g0°`.
    pub fn from_linear_sections(g0: Subspace, sections: &[(Vector, Matrix)]) -> Result<Self> {
        let n = g0.ambient_dim();
        let p1 = g0.annihilator();
        let forms: Vec<Vector> = sections.iter().map(|(xi, _)| xi.clone()).collect();
        if Subspace::span(n, &forms)? != p1 || forms.len() != p1.dim() {
            return Err(Error::Schema("section forms must be a basis of the annihilator of g0".into()));
        }
        let raw = |i: usize, eta: &[Scalar]| sections[i].1.transpose().apply(eta).expect("n × n");
        // Express the canonical p1 basis in the given forms.
        let given = Matrix::from_rows(n, forms.clone())?.transpose();
        let coeffs: Vec<Vector> = p1
            .basis_vectors()
            .iter()
            .map(|b| given.solve(b).expect("form lies in the span"))
            .collect();
        let k = forms.len();
        for i in 0..k {
            for j in i..k {
                if !ratlin::is_zero(&ratlin::add(&raw(i, &forms[j]), &raw(j, &forms[i]))) {
                    return Err(Error::NotSkew);
                }
            }
        }
        let table = coeffs
            .iter()
            .map(|ca| {
                coeffs
                    .iter()
                    .map(|cb| {
                        let mut out = zeros(n);
                        for (i, a) in ca.iter().enumerate() {
                            for (j, b) in cb.iter().enumerate() {
                                let c = a * b;
                                if !c.is_zero() {
                                    out = ratlin::add(&out, &ratlin::scale(&c, &raw(i, &forms[j])));
                                }
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        Self::new(liealg::abelian(n), g0, table)
    }
}

/// Standard bialgebra on `sl2`: `g0 = 0`, `δ = ∂(e ∧ f)`.
pub fn sl2_standard_bialgebra() -> CocycleData {
    let mut lambda = Matrix::zeros(3, 3);
    lambda[(1, 2)] = ratlin::int(1);
    lambda[(2, 1)] = ratlin::int(-1);
    CocycleData::coboundary(liealg::sl2(), Subspace::zero(3), &lambda).expect("skew Λ")
}
