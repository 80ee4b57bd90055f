//! Homogeneous Dirac structures over `G/H` at the level of the identity coset.
//!
//! A candidate is a subspace `D ⊆ g ⊕ g*` (the pullback of the fiber at `eH`).
//! It defines a homogeneous structure when it is Lagrangian and
//!
//! 1. `(g0 + h) × {0} ⊆ D ⊆ g × (p1 ∩ h°)`,
//! 2. `D̄ = D / (g0 × {0})` is Lagrangian in `g/g0 × p1`,
//! 3. `D̄` is invariant under `h`.
//!
//! It is integrable when, in addition, `D̄` is a subalgebra of the double
//! `g/g0 × p1`. Invariance is checked under the infinitesimal action of a basis
//! of `h`, which is equivalent to invariance under a connected `H`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dirac_linear::{from_range_form, join, lagrangian_check, pullback, split, DiracSubspace, LagrangianViolation, RangeForm};
use crate::error::{Error, Result};
use crate::liealg;
use crate::multiplicative::{
    build_double, delta_to_bracket, infinitesimal_action, n_invariance_check, CocycleData, DoubleAlgebra,
};
use crate::ratlin::{quotient_map, zeros, Subspace, Vector};
use crate::sampling::{range_form_grid_size, rref_grid, skew_grid};
use crate::Verdict;

/// Largest `dim g/g0` accepted by [`search_candidates`].
pub const MAX_QUOTIENT_DIM: usize = 4;

/// Default cap on the number of presentations [`search_candidates`] enumerates.
pub const DEFAULT_SEARCH_LIMIT: u128 = 250_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousCandidate {
    data: CocycleData,
    h: Subspace,
    d: Subspace,
}

impl HomogeneousCandidate {
    /// `d` is a subspace of `g ⊕ g*`; whether it is Lagrangian is part of [`classify`].
    pub fn new(data: CocycleData, h: Subspace, d: Subspace) -> Result<Self> {
        let n = data.dim();
        if h.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: h.ambient_dim() });
        }
        if d.ambient_dim() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: d.ambient_dim() });
        }
        if !data.algebra().is_subalgebra(&h)? {
            return Err(Error::NotSubalgebra);
        }
        Ok(Self { data, h, d })
    }

    /// `D` as the pullback of a Lagrangian `D̄ ⊆ g/h ⊕ (g/h)*` along `g → g/h`.
    pub fn from_dbar(data: CocycleData, h: Subspace, dbar: &DiracSubspace) -> Result<Self> {
        let n = data.dim();
        if h.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: h.ambient_dim() });
        }
        let q = quotient_map(n, &h)?;
        if dbar.n() != q.quotient_dim() {
            return Err(Error::DimensionMismatch { expected: q.quotient_dim(), found: dbar.n() });
        }
        let d = pullback(dbar, &q.projection)?;
        Self::new(data, h, d.body().clone())
    }

    pub fn data(&self) -> &CocycleData {
        &self.data
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn d(&self) -> &Subspace {
        &self.d
    }

    /// Same candidate in the reordered basis `e'_i = e_{perm[i]}` of `g`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.data.dim();
        let doubled: Vec<usize> = perm.iter().copied().chain(perm.iter().map(|p| p + n)).collect();
        Self::new(
            self.data.relabel(perm)?,
            liealg::permute_subspace(&self.h, perm)?,
            liealg::permute_subspace(&self.d, &doubled)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SandwichWitness {
    /// A basis vector of `g0 + h` with `(x, 0) ∉ D`.
    MissingVector {
        #[serde(with = "crate::json::rat_vec")]
        vector: Vector,
    },
    /// A basis element of `D` whose covector part is outside `p1 ∩ h°`.
    CovectorOutside {
        #[serde(with = "crate::json::rat_vec")]
        element: Vector,
    },
}

/// `(g0 + h) × {0} ⊆ D ⊆ g × (p1 ∩ h°)`.
pub fn sandwich_check(c: &HomogeneousCandidate) -> Verdict<SandwichWitness> {
    let n = c.data.dim();
    let lower = c.data.g0().sum(&c.h).expect("same ambient");
    for x in lower.basis_vectors() {
        if !c.d.contains(&join(&x, &zeros(n))).expect("length 2n") {
            return Err(SandwichWitness::MissingVector { vector: x });
        }
    }
    let upper = c.data.p1().intersect(&c.h.annihilator()).expect("same ambient");
    for element in c.d.basis_vectors() {
        if !upper.contains(split(&element).1).expect("length n") {
            return Err(SandwichWitness::CovectorOutside { element });
        }
    }
    Ok(())
}

/// Image of `D` in `g/g0 × p1`, in the coordinates `(x̄, ξ̂)` of the double,
/// together with its Lagrangian verdict.
pub fn quotient_dbar(c: &HomogeneousCandidate) -> Result<(Subspace, Verdict<LagrangianViolation>)> {
    if sandwich_check(c).is_err() {
        return Err(Error::SandwichViolated);
    }
    let m = c.data.quotient_dim();
    let q = c.data.quotient();
    let rows: Vec<Vector> = c
        .d
        .basis_vectors()
        .iter()
        .map(|u| {
            let (x, xi) = split(u);
            join(&q.project(x), &c.data.hat(xi))
        })
        .collect();
    let dbar = Subspace::span(2 * m, &rows)?;
    let verdict = lagrangian_check(m, &dbar);
    Ok((dbar, verdict))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceWitness {
    #[serde(with = "crate::json::rat_vec")]
    pub generator: Vector,
    #[serde(with = "crate::json::rat_vec")]
    pub element: Vector,
    #[serde(with = "crate::json::rat_vec")]
    pub image: Vector,
}

fn require_lagrangian_dbar(c: &HomogeneousCandidate) -> Result<Subspace> {
    let (dbar, verdict) = quotient_dbar(c)?;
    verdict.map_err(|w| Error::NotLagrangian(w.to_string()))?;
    Ok(dbar)
}

/// `D̄` is mapped into itself by the infinitesimal action of each basis vector of `h`.
pub fn h_invariance_check(c: &HomogeneousCandidate) -> Result<Verdict<InvarianceWitness>> {
    if n_invariance_check(&delta_to_bracket(&c.data)).is_err() {
        return Err(Error::NotNInvariant);
    }
    let dbar = require_lagrangian_dbar(c)?;
    for y in c.h.basis_vectors() {
        for element in dbar.basis_vectors() {
            let (v, w) = infinitesimal_action(&c.data, &y, split(&element))?;
            let image = join(&v, &w);
            if !dbar.contains(&image)? {
                return Ok(Err(InvarianceWitness { generator: y, element, image }));
            }
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraWitness {
    /// Indices into the canonical basis of `D̄`.
    pub pair: (usize, usize),
    #[serde(with = "crate::json::rat_vec")]
    pub bracket: Vector,
}

/// `D̄` is closed under the bracket of the double.
pub fn integrable_homogeneous_check(c: &HomogeneousCandidate, dbl: &DoubleAlgebra) -> Result<Verdict<SubalgebraWitness>> {
    if dbl.data() != &c.data {
        return Err(Error::Schema("double was built from different data".into()));
    }
    if sandwich_check(c).is_err() {
        return Err(Error::SandwichViolated);
    }
    let dbar = require_lagrangian_dbar(c)?;
    if let Err(w) = h_invariance_check(c)? {
        return Err(Error::Schema(format!(
            "candidate is not h-invariant (generator {:?})",
            w.generator.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    let basis = dbar.basis_vectors();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i + 1) {
            let bracket = dbl.bracket(a, b)?;
            if !dbar.contains(&bracket)? {
                return Ok(Err(SubalgebraWitness { pair: (i, j), bracket }));
            }
        }
    }
    Ok(Ok(()))
}

/// Outcome of one classification criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flag {
    pub check: String,
    pub criterion: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Flag {
    fn new<W: Serialize>(check: &str, criterion: &str, verdict: Verdict<W>) -> Self {
        let (pass, witness) = match verdict {
            Ok(()) => (true, None),
            Err(w) => (false, Some(serde_json::to_value(w).expect("witnesses serialize"))),
        };
        Self { check: check.into(), criterion: criterion.into(), pass, witness }
    }

    fn error(check: &str, criterion: &str, e: &Error) -> Self {
        Self::new(check, criterion, Err(json!({ "error": e.to_string() })))
    }

    fn skipped(check: &str, criterion: &str, after: &str) -> Self {
        Self::new(check, criterion, Err(json!({ "skipped": format!("{after} failed") })))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub lagrangian: Flag,
    pub condition1: Flag,
    pub condition2: Flag,
    pub condition3: Flag,
    pub integrable: Flag,
    /// `lagrangian ∧ condition1 ∧ condition2 ∧ condition3`.
    pub homogeneous: bool,
}

impl ClassificationReport {
    pub fn flags(&self) -> [&Flag; 5] {
        [&self.lagrangian, &self.condition1, &self.condition2, &self.condition3, &self.integrable]
    }

    pub fn is_integrable(&self) -> bool {
        self.homogeneous && self.integrable.pass
    }
}

const LAGRANGIAN: &str = "D = D^⊥ in g ⊕ g*";
const SANDWICH: &str = "(g0 + h) × 0 ⊆ D ⊆ g × (p1 ∩ h°)";
const QUOTIENT: &str = "D / (g0 × 0) is Lagrangian in g/g0 × p1";
const INVARIANCE: &str = "D / (g0 × 0) is invariant under the action of h";
const SUBALGEBRA: &str = "D / (g0 × 0) is a subalgebra of the double g/g0 × p1";

/// Runs every criterion; failures of earlier criteria are reported in the
/// witnesses of the later ones.
pub fn classify(c: &HomogeneousCandidate) -> ClassificationReport {
    let n = c.data.dim();
    let lagrangian = Flag::new("lagrangian", LAGRANGIAN, lagrangian_check(n, &c.d));
    let condition1 = Flag::new("sandwich", SANDWICH, sandwich_check(c));
    let condition2 = if condition1.pass {
        match quotient_dbar(c) {
            Ok((_, verdict)) => Flag::new("quotient_lagrangian", QUOTIENT, verdict),
            Err(e) => Flag::error("quotient_lagrangian", QUOTIENT, &e),
        }
    } else {
        Flag::skipped("quotient_lagrangian", QUOTIENT, "sandwich")
    };
    let condition3 = if condition2.pass {
        match h_invariance_check(c) {
            Ok(verdict) => Flag::new("h_invariance", INVARIANCE, verdict),
            Err(e) => Flag::error("h_invariance", INVARIANCE, &e),
        }
    } else {
        Flag::skipped("h_invariance", INVARIANCE, "quotient_lagrangian")
    };
    let homogeneous = lagrangian.pass && condition1.pass && condition2.pass && condition3.pass;
    let integrable = if homogeneous {
        match build_double(&c.data).and_then(|dbl| integrable_homogeneous_check(c, &dbl)) {
            Ok(verdict) => Flag::new("subalgebra_of_double", SUBALGEBRA, verdict),
            Err(e) => Flag::error("subalgebra_of_double", SUBALGEBRA, &e),
        }
    } else {
        Flag::skipped("subalgebra_of_double", SUBALGEBRA, "homogeneous")
    };
    ClassificationReport { lagrangian, condition1, condition2, condition3, integrable, homogeneous }
}

/// A grid candidate that defines a homogeneous structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchHit {
    /// Position in the enumeration order of the grid.
    pub index: usize,
    #[serde(serialize_with = "serialize_body")]
    pub d: Subspace,
    pub integrable: bool,
}

fn serialize_body<S: serde::Serializer>(d: &Subspace, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::json::rat_rows::serialize(&d.basis_vectors(), s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub quotient_dim: usize,
    pub bound: i64,
    pub grid_size: u128,
    pub homogeneous_count: usize,
    pub integrable_count: usize,
    pub hits: Vec<SearchHit>,
}

/// Enumerates the Lagrangian `D̄ ⊆ g/g0 ⊕ p1` given by `(R, ε)` presentations
/// with integer entries in `[-bound, bound]`, pulls each back to `D ⊆ g ⊕ g*`
/// and keeps those passing [`classify`], in grid order.
pub fn search_candidates(data: &CocycleData, h: &Subspace, bound: i64, limit: u128) -> Result<SearchReport> {
    if bound < 0 {
        return Err(Error::Schema("bound must be non-negative".into()));
    }
    let n = data.dim();
    if h.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.ambient_dim() });
    }
    if !data.algebra().is_subalgebra(h)? {
        return Err(Error::NotSubalgebra);
    }
    let m = data.quotient_dim();
    if m > MAX_QUOTIENT_DIM {
        return Err(Error::QuotientTooLarge { dim: m, limit: MAX_QUOTIENT_DIM });
    }
    let size = range_form_grid_size(m, bound);
    if size > limit {
        return Err(Error::SearchSpaceTooLarge { size, limit });
    }
    let ranges = rref_grid(m, bound);
    let forms: Vec<_> = (0..=m).map(|k| skew_grid(k, bound)).collect();
    let offsets: Vec<usize> = ranges
        .iter()
        .scan(0, |acc, r| {
            let start = *acc;
            *acc += forms[r.dim()].len();
            Some(start)
        })
        .collect();
    let projection = &data.quotient().projection;
    let hits: Vec<SearchHit> = ranges
        .par_iter()
        .zip(offsets.par_iter())
        .flat_map_iter(|(r, &start)| {
            forms[r.dim()].iter().enumerate().filter_map(move |(i, eps)| {
                let dbar = from_range_form(&RangeForm::new(r.clone(), eps.clone()).expect("matching sizes"));
                let d = pullback(&dbar, projection).expect("quotient projection is surjective");
                let c = HomogeneousCandidate::new(data.clone(), h.clone(), d.body().clone())
                    .expect("h is a subalgebra");
                let report = classify(&c);
                report.homogeneous.then(|| SearchHit {
                    index: start + i,
                    d: d.body().clone(),
                    integrable: report.is_integrable(),
                })
            })
        })
        .collect();
    Ok(SearchReport {
        quotient_dim: m,
        bound,
        grid_size: size,
        homogeneous_count: hits.len(),
        integrable_count: hits.iter().filter(|h| h.integrable).count(),
        hits,
    })
}
