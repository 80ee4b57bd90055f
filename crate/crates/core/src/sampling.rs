//! Seeded random instances and bounded integer grids.
//!
//! All generators draw from a [`ChaCha8Rng`], so a seed reproduces the same
//! instances on every platform.

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dirac_linear::{from_range_form, DiracSubspace, RangeForm};
use crate::liealg::LieAlgebra;
use crate::multiplicative::CocycleData;
use crate::ratlin::{self, frac, int, Matrix, Scalar, Subspace, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-bound, bound]`.
pub fn integer(rng: &mut impl Rng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

/// `p / q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    let q = rng.gen_range(1..=bound.max(1));
    frac(rng.gen_range(-bound..=bound), q)
}

pub fn vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| integer(rng, bound)).collect()
}

pub fn nonzero_vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vector {
    loop {
        let v = vector(rng, n, bound);
        if !ratlin::is_zero(&v) {
            return v;
        }
    }
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rational(rng, bound))
}

pub fn skew(rng: &mut impl Rng, m: usize, bound: i64) -> Matrix {
    let mut a = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let c = integer(rng, bound);
            a[(j, i)] = -c.clone();
            a[(i, j)] = c;
        }
    }
    a
}

/// Nonzero skew matrix; requires `m ≥ 2`.
pub fn nonzero_skew(rng: &mut impl Rng, m: usize, bound: i64) -> Matrix {
    assert!(m >= 2, "no nonzero skew matrices in dimension {m}");
    loop {
        let a = skew(rng, m, bound);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Subspace of dimension `dim` in `Q^n`.
pub fn subspace_of_dim(rng: &mut impl Rng, n: usize, dim: usize, bound: i64) -> Subspace {
    assert!(dim <= n);
    loop {
        let rows: Vec<Vector> = (0..dim).map(|_| vector(rng, n, bound)).collect();
        let s = Subspace::span(n, &rows).expect("rows of length n");
        if s.dim() == dim {
            return s;
        }
    }
}

pub fn subspace(rng: &mut impl Rng, n: usize, bound: i64) -> Subspace {
    let dim = rng.gen_range(0..=n);
    subspace_of_dim(rng, n, dim, bound)
}

/// Surjection `Q^n → Q^m`.
pub fn surjection(rng: &mut impl Rng, n: usize, m: usize, bound: i64) -> Matrix {
    assert!(m <= n);
    loop {
        let q = matrix(rng, m, n, bound);
        if q.rank() == m {
            return q;
        }
    }
}

pub fn range_form(rng: &mut impl Rng, n: usize, bound: i64) -> RangeForm {
    let r = subspace(rng, n, bound);
    let k = r.dim();
    let mut form = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let c = rational(rng, bound);
            form[(j, i)] = -c.clone();
            form[(i, j)] = c;
        }
    }
    RangeForm::new(r, form).expect("skew form of matching size")
}

pub fn dirac(rng: &mut impl Rng, n: usize, bound: i64) -> DiracSubspace {
    from_range_form(&range_form(rng, n, bound))
}

/// Ideals built from `0`, `g`, `[g, g]` and the center by sums and intersections.
pub fn admissible_ideals(g: &LieAlgebra) -> Vec<Subspace> {
    let n = g.dim();
    let mut out: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, out: &mut Vec<Subspace>| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    for s in [Subspace::zero(n), Subspace::full(n), g.derived_algebra(), g.center()] {
        push(s, &mut out);
    }
    let base = out.clone();
    for a in &base {
        for b in &base {
            push(a.sum(b).expect("same ambient"), &mut out);
            push(a.intersect(b).expect("same ambient"), &mut out);
        }
    }
    debug_assert!(out.iter().all(|s| g.is_ideal(s).unwrap_or(false)));
    out
}

/// Coboundary `δ(x) = x · Λ` for a random skew `Λ`.
pub fn coboundary(rng: &mut impl Rng, g: &LieAlgebra, g0: &Subspace, bound: i64) -> CocycleData {
    let m = g.dim() - g0.dim();
    CocycleData::coboundary(g.clone(), g0.clone(), &skew(rng, m, bound)).expect("ideal and skew Λ")
}

/// Arbitrary linear `δ : g → Λ²(g/g0)`.
pub fn linear_delta(rng: &mut impl Rng, g: &LieAlgebra, g0: &Subspace, bound: i64) -> CocycleData {
    let m = g.dim() - g0.dim();
    let delta = (0..g.dim()).map(|_| skew(rng, m, bound)).collect();
    CocycleData::new(g.clone(), g0.clone(), delta).expect("ideal and skew matrices")
}

/// Linear `δ` vanishing on `g0`.
pub fn delta_vanishing_on_g0(rng: &mut impl Rng, g: &LieAlgebra, g0: &Subspace, bound: i64) -> CocycleData {
    let m = g.dim() - g0.dim();
    let per: Vec<Matrix> = (0..m).map(|_| skew(rng, m, bound)).collect();
    CocycleData::factored(g.clone(), g0.clone(), &per).expect("ideal and skew matrices")
}

/// Linear `δ` that does not vanish on `g0` (requires `g0 ≠ 0` and `dim g/g0 ≥ 2`).
pub fn delta_not_vanishing_on_g0(rng: &mut impl Rng, g: &LieAlgebra, g0: &Subspace, bound: i64) -> CocycleData {
    loop {
        let d = linear_delta(rng, g, g0, bound);
        if !d.vanishes_on_g0() {
            return d;
        }
    }
}

/// Random permutation of `0..n`.
pub fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

// ---------------------------------------------------------------------------
// Integer grids
// ---------------------------------------------------------------------------

fn grid_values(bound: i64) -> Vec<Scalar> {
    (-bound..=bound).map(int).collect()
}

/// Number of free entries of a reduced row echelon `k × n` matrix with the given pivots.
fn free_entries(n: usize, pivots: &[usize]) -> usize {
    pivots
        .iter()
        .map(|&p| (p + 1..n).filter(|c| !pivots.contains(c)).count())
        .sum()
}

fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            cur.push(p);
            rec(p + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Calls `f` on every tuple of length `len` over `values`, in odometer order
/// (last position fastest).
fn for_each_tuple(values: &[Scalar], len: usize, mut f: impl FnMut(&[Scalar])) {
    let mut idx = vec![0usize; len];
    let mut cur: Vec<Scalar> = vec![values[0].clone(); len];
    loop {
        f(&cur);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                cur[pos] = values[idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            cur[pos] = values[0].clone();
        }
    }
}

/// Every subspace of `Q^n` whose reduced row echelon basis has free entries in
/// `[-bound, bound]`, ordered by dimension, then pivot set, then entries.
pub fn rref_grid(n: usize, bound: i64) -> Vec<Subspace> {
    let values = grid_values(bound);
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in pivot_sets(n, k) {
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for_each_tuple(&values, slots.len(), |entries| {
                let mut m = Matrix::zeros(k, n);
                for (r, &p) in pivots.iter().enumerate() {
                    m[(r, p)] = Scalar::one();
                }
                for ((r, c), v) in slots.iter().zip(entries) {
                    m[(*r, *c)] = v.clone();
                }
                out.push(Subspace::row_span(&m));
            });
        }
    }
    out
}

/// Skew `k × k` forms with strictly upper entries in `[-bound, bound]`, odometer order.
pub fn skew_grid(k: usize, bound: i64) -> Vec<Matrix> {
    let values = grid_values(bound);
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for_each_tuple(&values, slots.len(), |entries| {
        let mut m = Matrix::zeros(k, k);
        for ((i, j), v) in slots.iter().zip(entries) {
            m[(*i, *j)] = v.clone();
            m[(*j, *i)] = -v.clone();
        }
        out.push(m);
    });
    out
}

/// Number of `(R, ε)` presentations in the grid of [`range_form_grid`], computed
/// without enumerating.
pub fn range_form_grid_size(n: usize, bound: i64) -> u128 {
    let v = (2 * bound.max(0) + 1) as u128;
    let mut total: u128 = 0;
    for k in 0..=n {
        let forms = v.saturating_pow((k * k.saturating_sub(1) / 2) as u32);
        for pivots in pivot_sets(n, k) {
            let ranges = v.saturating_pow(free_entries(n, &pivots) as u32);
            total = total.saturating_add(ranges.saturating_mul(forms));
        }
    }
    total
}

/// Every `(R, ε)` presentation with `R` from [`rref_grid`] and `ε` from [`skew_grid`].
pub fn range_form_grid(n: usize, bound: i64) -> Vec<RangeForm> {
    let mut out = Vec::new();
    for r in rref_grid(n, bound) {
        for eps in skew_grid(r.dim(), bound) {
            out.push(RangeForm::new(r.clone(), eps).expect("matching sizes"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{heisenberg3, sl2, upper_triangular};

    #[test]
    fn grid_sizes_match_enumeration() {
        for (n, b) in [(1, 1), (2, 1), (3, 1), (2, 2), (3, 0)] {
            assert_eq!(range_form_grid(n, b).len() as u128, range_form_grid_size(n, b), "n={n} b={b}");
        }
        assert_eq!(range_form_grid_size(3, 1), 80);
        assert_eq!(rref_grid(3, 1).len(), 1 + 13 + 13 + 1);
    }

    #[test]
    fn grid_entries_are_distinct() {
        let g = rref_grid(3, 1);
        for (i, a) in g.iter().enumerate() {
            assert!(!g[i + 1..].contains(a));
        }
    }

    #[test]
    fn admissible_ideals_of_fixtures() {
        assert_eq!(admissible_ideals(&sl2()).len(), 2);
        // heisenberg3: 0, g, center = derived
        assert_eq!(admissible_ideals(&heisenberg3()).len(), 3);
        // upper_triangular(3): 0, g, derived (dim 3), center (scalars, dim 1), and their sum
        let ut = admissible_ideals(&upper_triangular(3));
        assert_eq!(ut.len(), 5);
        let dims: Vec<usize> = ut.iter().map(Subspace::dim).collect();
        assert!(dims.contains(&4));
    }

    #[test]
    fn seeded_generators_are_reproducible() {
        let a = dirac(&mut rng(7), 4, 3);
        let b = dirac(&mut rng(7), 4, 3);
        assert_eq!(a, b);
        let q = surjection(&mut rng(1), 4, 2, 2);
        assert_eq!(q.rank(), 2);
    }
}
