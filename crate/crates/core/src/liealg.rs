//! Finite-dimensional Lie algebras given by structure constants.
//!
//! Coadjoint convention: `(ad_x* ξ)(y) = ξ([y, x])`, so the coadjoint matrix
//! of `x` is `-ad(x)ᵀ`. Every downstream formula uses this sign.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::{self, int, quotient_map, zeros, Matrix, QuotientMap, Scalar, Subspace, Vector};
use crate::Verdict;

/// Antisymmetric bracket table `[e_i, e_j] = Σ_k c[i][j][k] e_k`, not yet
/// known to satisfy Jacobi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    names: Vec<String>,
    table: Vec<Vector>,
}

/// A basis triple on which the Jacobiator is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    #[serde(with = "crate::json::rat_vec")]
    pub jacobiator: Vector,
}

fn default_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{}", i + 1)).collect()
}

impl StructureConstants {
    /// The abelian table on `dim` generators.
    pub fn zero(dim: usize) -> Self {
        Self { dim, names: default_names(dim), table: vec![zeros(dim); dim * dim] }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if i >= self.dim || j >= self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: i.max(j) + 1 });
        }
        if i == j {
            return if ratlin::is_zero(&v) { Ok(()) } else { Err(Error::NotAntisymmetric { i, j, k: 0 }) };
        }
        self.table[j * self.dim + i] = ratlin::neg(&v);
        self.table[i * self.dim + j] = v;
        Ok(())
    }

    /// Builds from a full `dim × dim` table of bracket vectors, checking antisymmetry.
    pub fn from_table(dim: usize, table: Vec<Vector>) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: table.len() });
        }
        for v in &table {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if !(&table[i * dim + j][k] + &table[j * dim + i][k]).is_zero() {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(Self { dim, names: default_names(dim), table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    /// Bilinear extension of the table. Panics on length mismatch.
    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = zeros(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi * yj;
                for (o, b) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    /// Checks `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for all `i < j < k`.
    pub fn jacobi_check(&self) -> Verdict<JacobiWitness> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ek = ratlin::unit(n, k);
                    let ei = ratlin::unit(n, i);
                    let ej = ratlin::unit(n, j);
                    let a = self.bracket_unchecked(self.basis_bracket(i, j), &ek);
                    let b = self.bracket_unchecked(self.basis_bracket(j, k), &ei);
                    let c = self.bracket_unchecked(self.basis_bracket(k, i), &ej);
                    let sum = ratlin::add(&ratlin::add(&a, &b), &c);
                    if !ratlin::is_zero(&sum) {
                        return Err(JacobiWitness { triple: (i, j, k), jacobiator: sum });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A Lie algebra whose Jacobi identity has been certified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    constants: StructureConstants,
}

impl LieAlgebra {
    pub fn new(constants: StructureConstants) -> Result<Self> {
        constants
            .jacobi_check()
            .map_err(|w| Error::JacobiFailed(w.triple.0, w.triple.1, w.triple.2))?;
        Ok(Self { constants })
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn names(&self) -> &[String] {
        &self.constants.names
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.constants.bracket(x, y)
    }

    pub(crate) fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.constants.bracket_unchecked(x, y)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        self.constants.basis_bracket(i, j)
    }

    /// Always passes for a certified algebra; kept for symmetric reporting.
    pub fn jacobi_check(&self) -> Verdict<JacobiWitness> {
        self.constants.jacobi_check()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.table.iter().all(|v| ratlin::is_zero(v))
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        let cols: Vec<Vector> =
            (0..self.dim()).map(|j| self.br(x, &ratlin::unit(self.dim(), j))).collect();
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    /// Matrix of `ξ ↦ ad_x* ξ` with `(ad_x* ξ)(y) = ξ([y, x])`.
    pub fn coad_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        Ok(self.ad_matrix(x)?.transpose().neg())
    }

    /// `ad_x* ξ` evaluated directly from the defining formula.
    pub fn coad(&self, x: &[Scalar], xi: &[Scalar]) -> Vector {
        (0..self.dim())
            .map(|j| ratlin::dot(xi, &self.br(&ratlin::unit(self.dim(), j), x)))
            .collect()
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        let b = s.basis_vectors();
        for (i, x) in b.iter().enumerate() {
            for y in &b[i + 1..] {
                if !s.contains(&self.br(x, y))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        for x in s.basis_vectors() {
            for j in 0..self.dim() {
                if !s.contains(&self.br(&ratlin::unit(self.dim(), j), &x))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[s, t]`: span of brackets of basis vectors.
    pub fn commutator(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        self.check_subspace(t)?;
        let mut vs = Vec::new();
        for x in s.basis_vectors() {
            for y in t.basis_vectors() {
                vs.push(self.br(&x, &y));
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.commutator(&full, &full).expect("full subspace has matching dimension")
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut stacked = Matrix::zeros(0, n);
        for j in 0..n {
            let m = self.ad_matrix(&ratlin::unit(n, j)).expect("unit vector");
            stacked = stacked.vstack(&m).expect("square blocks");
        }
        ratlin::kernel(&stacked)
    }

    /// Quotient by an ideal, in the pivot-complement coordinates of `k`.
    pub fn quotient_algebra(&self, k: &Subspace) -> Result<QuotientAlgebra> {
        if !self.is_ideal(k)? {
            return Err(Error::NotAnIdeal);
        }
        let map = quotient_map(self.dim(), k)?;
        let m = map.quotient_dim();
        let mut sc = StructureConstants::zero(m);
        sc.names = map.complement.iter().map(|&c| self.names()[c].clone()).collect();
        for a in 0..m {
            for b in a + 1..m {
                let x = map.section.column(a);
                let y = map.section.column(b);
                sc.set(a, b, map.project(&self.br(&x, &y)))?;
            }
        }
        Ok(QuotientAlgebra { algebra: LieAlgebra::new(sc)?, map })
    }

    /// Same algebra in the reordered basis `e'_i = e_{perm[i]}`.
    pub fn relabel(&self, perm: &[usize]) -> Result<LieAlgebra> {
        let n = self.dim();
        check_permutation(n, perm)?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = self.basis_bracket(perm[i], perm[j]);
                table.push(permute(v, perm));
            }
        }
        let mut sc = StructureConstants::from_table(n, table)?;
        sc.names = perm.iter().map(|&p| self.names()[p].clone()).collect();
        LieAlgebra::new(sc)
    }
}

/// Coordinates of `v` in the basis `e'_i = e_{perm[i]}` (also valid for covectors).
pub fn permute(v: &[Scalar], perm: &[usize]) -> Vector {
    perm.iter().map(|&p| v[p].clone()).collect()
}

pub(crate) fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Schema(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Image of a subspace under the coordinate permutation of [`LieAlgebra::relabel`].
pub fn permute_subspace(s: &Subspace, perm: &[usize]) -> Result<Subspace> {
    check_permutation(s.ambient_dim(), perm)?;
    let vs: Vec<Vector> = s.basis_vectors().iter().map(|v| permute(v, perm)).collect();
    Subspace::span(s.ambient_dim(), &vs)
}

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: LieAlgebra,
    pub map: QuotientMap,
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::new(StructureConstants::zero(n)).expect("abelian algebra")
}

/// `[e1, e2] = e3`.
pub fn heisenberg3() -> LieAlgebra {
    let mut sc = StructureConstants::zero(3);
    sc.set(0, 1, ratlin::ints(&[0, 0, 1])).expect("in range");
    LieAlgebra::new(sc).expect("heisenberg algebra satisfies Jacobi")
}

/// Basis `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::new(sl2_constants()).expect("sl2 satisfies Jacobi")
}

pub fn sl2_constants() -> StructureConstants {
    let mut sc = StructureConstants::zero(3)
        .with_names(vec!["h".into(), "e".into(), "f".into()])
        .expect("three names");
    sc.set(0, 1, ratlin::ints(&[0, 2, 0])).expect("in range");
    sc.set(0, 2, ratlin::ints(&[0, 0, -2])).expect("in range");
    sc.set(1, 2, ratlin::ints(&[1, 0, 0])).expect("in range");
    sc
}

/// Basis of `n × n` matrix units `E_ij` with `(i, j)` ranging over a pattern,
/// ordered row-major.
fn matrix_units(n: usize, keep: impl Fn(usize, usize) -> bool) -> LieAlgebra {
    let units: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
    let d = units.len();
    let index = |p: (usize, usize)| units.iter().position(|&u| u == p);
    let mut sc = StructureConstants::zero(d)
        .with_names(units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect())
        .expect("one name per unit");
    for a in 0..d {
        for b in a + 1..d {
            // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
            let (i, j) = units[a];
            let (k, l) = units[b];
            let mut v = zeros(d);
            if j == k {
                v[index((i, l)).expect("closed pattern")] += int(1);
            }
            if l == i {
                v[index((k, j)).expect("closed pattern")] -= int(1);
            }
            sc.set(a, b, v).expect("in range");
        }
    }
    LieAlgebra::new(sc).expect("matrix commutators satisfy Jacobi")
}

/// Upper triangular `n × n` matrices, basis `E_ij` (`i ≤ j`) in row-major order.
pub fn upper_triangular(n: usize) -> LieAlgebra {
    matrix_units(n, |i, j| i <= j)
}

/// Strictly upper triangular `n × n` matrices.
pub fn strictly_upper(n: usize) -> LieAlgebra {
    matrix_units(n, |i, j| i < j)
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let mut sc = StructureConstants::zero(d);
    sc.names = a.names().iter().chain(b.names()).cloned().collect();
    for i in 0..d {
        for j in i + 1..d {
            let v = if j < da {
                let mut v = a.basis_bracket(i, j).clone();
                v.extend(zeros(db));
                v
            } else if i >= da {
                let mut v = zeros(da);
                v.extend(b.basis_bracket(i - da, j - da).iter().cloned());
                v
            } else {
                zeros(d)
            };
            sc.set(i, j, v).expect("in range");
        }
    }
    LieAlgebra::new(sc).expect("direct sum of Lie algebras")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{ints, unit};

    #[test]
    fn sl2_brackets() {
        let g = sl2();
        assert_eq!(g.bracket(&unit(3, 1), &unit(3, 2)).unwrap(), unit(3, 0));
        let x = ints(&[3, -1, 2]);
        assert!(ratlin::is_zero(&g.bracket(&x, &x).unwrap()));
        assert!(matches!(g.bracket(&ints(&[1, 0]), &x), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn abelian_brackets_vanish() {
        let g = abelian(3);
        assert!(ratlin::is_zero(&g.bracket(&unit(3, 0), &unit(3, 1)).unwrap()));
        assert!(g.is_abelian());
        assert!(abelian(4).constants().table.iter().all(|v| ratlin::is_zero(v)));
    }

    #[test]
    fn jacobi_fixtures_and_tampering() {
        assert!(heisenberg3().jacobi_check().is_ok());
        assert!(sl2().jacobi_check().is_ok());
        let mut bad = sl2_constants();
        bad.set(1, 2, ints(&[0, 1, 0])).unwrap();
        let w = bad.jacobi_check().unwrap_err();
        assert_eq!(w.triple, (0, 1, 2));
        assert_eq!(w.jacobiator, ints(&[0, -2, 0]));
        assert_eq!(LieAlgebra::new(bad), Err(Error::JacobiFailed(0, 1, 2)));
    }

    #[test]
    fn antisymmetry_enforced() {
        let mut table = vec![zeros(2); 4];
        table[1] = ints(&[1, 0]);
        assert!(matches!(
            StructureConstants::from_table(2, table),
            Err(Error::NotAntisymmetric { .. })
        ));
    }

    #[test]
    fn ad_and_coad() {
        let g = sl2();
        let ad_h = g.ad_matrix(&unit(3, 0)).unwrap();
        assert_eq!(ad_h, Matrix::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
        for i in 0..3 {
            let x = unit(3, i);
            let coad = g.coad_matrix(&x).unwrap();
            assert_eq!(coad.transpose(), g.ad_matrix(&x).unwrap().neg());
            for j in 0..3 {
                let xi = unit(3, j);
                assert_eq!(coad.apply(&xi).unwrap(), g.coad(&x, &xi));
            }
        }
        let a = abelian(3);
        assert!(a.ad_matrix(&ints(&[1, 2, 3])).unwrap().is_zero());
        assert!(a.coad_matrix(&ints(&[1, 2, 3])).unwrap().is_zero());
    }

    #[test]
    fn derived_algebra_and_center() {
        let ut = upper_triangular(3);
        // basis order E11 E12 E13 E22 E23 E33
        assert_eq!(ut.derived_algebra(), Subspace::coordinate(6, &[1, 2, 4]));
        assert_eq!(strictly_upper(3).dim(), 3);
        let ut2 = upper_triangular(2);
        assert_eq!(ut2.dim(), 3);
        assert_eq!(ut2.derived_algebra().dim(), 1);
        assert!(sl2().center().is_zero());
        let g = direct_sum(&sl2(), &abelian(1));
        assert_eq!(g.dim(), 4);
        assert_eq!(g.center(), Subspace::coordinate(4, &[3]));
        for g in [sl2(), heisenberg3(), upper_triangular(3)] {
            assert!(g.is_ideal(&Subspace::zero(g.dim())).unwrap());
            assert!(g.is_ideal(&Subspace::full(g.dim())).unwrap());
            assert!(g.is_ideal(&g.derived_algebra()).unwrap());
            assert!(g.is_ideal(&g.center()).unwrap());
        }
    }

    #[test]
    fn quotients() {
        let h = heisenberg3();
        let q = h.quotient_algebra(&Subspace::coordinate(3, &[2])).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_abelian());

        let g = sl2();
        let q0 = g.quotient_algebra(&Subspace::zero(3)).unwrap();
        assert_eq!(q0.algebra.constants().table, g.constants().table);

        let ut = upper_triangular(3);
        let q = ut.quotient_algebra(&ut.derived_algebra()).unwrap();
        assert_eq!(q.algebra.dim(), 3);
        assert!(q.algebra.is_abelian());

        let b = Subspace::coordinate(3, &[0, 1]);
        assert!(matches!(g.quotient_algebra(&b), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let ut = upper_triangular(3);
        for k in [ut.derived_algebra(), ut.center(), Subspace::coordinate(6, &[2])] {
            let q = ut.quotient_algebra(&k).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    let (x, y) = (unit(6, i), unit(6, j));
                    let lhs = q.map.project(&ut.br(&x, &y));
                    let rhs = q.algebra.br(&q.map.project(&x), &q.map.project(&y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn subalgebras() {
        let g = sl2();
        assert!(g.is_subalgebra(&Subspace::coordinate(3, &[0, 1])).unwrap());
        assert!(!g.is_subalgebra(&Subspace::coordinate(3, &[1, 2])).unwrap());
        assert!(!g.is_ideal(&Subspace::coordinate(3, &[0, 1])).unwrap());
    }

    #[test]
    fn relabel_preserves_brackets() {
        let g = sl2();
        let perm = [2, 0, 1];
        let p = g.relabel(&perm).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.basis_bracket(i, j), &permute(g.basis_bracket(perm[i], perm[j]), &perm));
            }
        }
        assert!(g.relabel(&[0, 0, 1]).is_err());
    }
}
