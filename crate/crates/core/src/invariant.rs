//! Left-invariant Dirac structures `D^L` on a Lie group, seen through their
//! value `D ⊆ g ⊕ g*` at the identity.

use num_traits::Zero;
use serde::Serialize;

use crate::dirac_linear::{join, pair, split, DiracSubspace};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::ratlin::{self, Scalar, Vector};
use crate::Verdict;

/// Dorfman bracket of left-invariant sections: `([x,y], ad_x*η − ad_y*ξ)`.
pub fn invariant_courant_bracket(
    g: &LieAlgebra,
    (x, xi): (&[Scalar], &[Scalar]),
    (y, eta): (&[Scalar], &[Scalar]),
) -> Result<(Vector, Vector)> {
    for v in [x, xi, y, eta] {
        if v.len() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: v.len() });
        }
    }
    let v = g.br(x, y);
    let c = ratlin::sub(&g.coad(x, eta), &g.coad(y, xi));
    Ok((v, c))
}

fn check_dims(g: &LieAlgebra, d: &DiracSubspace) -> Result<()> {
    if d.n() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: d.n() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicWitness {
    pub triple: (usize, usize, usize),
    #[serde(with = "crate::json::rat")]
    pub value: Scalar,
}

/// `ζ([x,y]) + ξ([y,z]) + η([z,x]) = 0` on every basis triple of `D`.
pub fn cyclic_integrability(g: &LieAlgebra, d: &DiracSubspace) -> Result<Verdict<CyclicWitness>> {
    check_dims(g, d)?;
    let basis = d.basis_vectors();
    let parts: Vec<(&[Scalar], &[Scalar])> = basis.iter().map(|u| split(u)).collect();
    for (i, (x, xi)) in parts.iter().enumerate() {
        for (j, (y, eta)) in parts.iter().enumerate() {
            let xy = g.br(x, y);
            for (k, (z, zeta)) in parts.iter().enumerate() {
                let value = ratlin::dot(zeta, &xy)
                    + ratlin::dot(xi, &g.br(y, z))
                    + ratlin::dot(eta, &g.br(z, x));
                if !value.is_zero() {
                    return Ok(Err(CyclicWitness { triple: (i, j, k), value }));
                }
            }
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub pair: (usize, usize),
    #[serde(with = "crate::json::rat_vec")]
    pub bracket: Vector,
}

/// Closure of the basis of `D` under the invariant Courant bracket.
pub fn courant_closure_check(g: &LieAlgebra, d: &DiracSubspace) -> Result<Verdict<ClosureWitness>> {
    check_dims(g, d)?;
    let basis = d.basis_vectors();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let (v, c) = invariant_courant_bracket(g, split(a), split(b))?;
            let bracket = join(&v, &c);
            if !d.body().contains(&bracket)? {
                return Ok(Err(ClosureWitness { pair: (i, j), bracket }));
            }
        }
    }
    Ok(Ok(()))
}

/// Pairing of the bracket of two elements against a third, `⟨[a, b], c⟩`.
pub fn bracket_pairing(g: &LieAlgebra, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Result<Scalar> {
    let (v, w) = invariant_courant_bracket(g, split(a), split(b))?;
    pair(&join(&v, &w), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac_linear::DiracSubspace;
    use crate::liealg::{abelian, heisenberg3, sl2, upper_triangular};
    use crate::ratlin::{ints, unit, zeros, Subspace};

    #[test]
    fn bracket_examples() {
        let a = abelian(3);
        let (v, c) = invariant_courant_bracket(
            &a,
            (&ints(&[1, 2, 3]), &ints(&[0, 1, 0])),
            (&ints(&[3, 1, 0]), &ints(&[1, 1, 1])),
        )
        .unwrap();
        assert!(ratlin::is_zero(&v) && ratlin::is_zero(&c));

        let g = sl2();
        let (v, c) =
            invariant_courant_bracket(&g, (&unit(3, 0), &zeros(3)), (&unit(3, 1), &zeros(3))).unwrap();
        assert_eq!(v, ints(&[0, 2, 0]));
        assert!(ratlin::is_zero(&c));

        assert!(invariant_courant_bracket(&g, (&unit(2, 0), &zeros(3)), (&unit(3, 1), &zeros(3))).is_err());
    }

    #[test]
    fn trivial_structures_integrable() {
        for g in [sl2(), heisenberg3(), upper_triangular(2)] {
            let n = g.dim();
            for d in [DiracSubspace::tangent(n), DiracSubspace::cotangent(n)] {
                assert!(cyclic_integrability(&g, &d).unwrap().is_ok());
                assert!(courant_closure_check(&g, &d).unwrap().is_ok());
            }
        }
    }

    #[test]
    fn r3_fiber_at_origin_is_invariantly_integrable() {
        let d = DiracSubspace::split(&Subspace::coordinate(3, &[2]));
        assert!(cyclic_integrability(&abelian(3), &d).unwrap().is_ok());
    }

    #[test]
    fn non_subalgebra_tangent_part_fails() {
        // span{e, f} × its annihilator: [e,f] = h leaves the range.
        let g = sl2();
        let d = DiracSubspace::split(&Subspace::coordinate(3, &[1, 2]));
        let w = cyclic_integrability(&g, &d).unwrap().unwrap_err();
        assert!(!w.value.is_zero());
        assert!(courant_closure_check(&g, &d).unwrap().is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(cyclic_integrability(&sl2(), &DiracSubspace::tangent(2)).is_err());
    }
}
