//! File schemas shared with the command-line front end.
//!
//! Rationals are written as strings `"p/q"` (or `"p"` when `q = 1`); integers
//! are also accepted on input. Vectors and matrices are arrays of such values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dirac_linear::{DiracSubspace, RangeForm};
use crate::error::{Error, Result};
use crate::homogeneous::HomogeneousCandidate;
use crate::liealg::{LieAlgebra, StructureConstants};
use crate::multiplicative::CocycleData;
use crate::ratlin::{Matrix, Scalar, Subspace, Vector};

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Str(String),
    Int(i64),
}

fn parse_rat(r: RatRepr) -> std::result::Result<Scalar, String> {
    match r {
        RatRepr::Int(i) => Ok(Scalar::from_integer(i.into())),
        RatRepr::Str(s) => {
            let t = s.trim();
            if let Some((_, d)) = t.split_once('/') {
                if d.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
                    return Err(format!("zero denominator in {s:?}"));
                }
            }
            t.parse::<Scalar>().map_err(|_| format!("not a rational: {s:?}"))
        }
    }
}

pub mod rat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        parse_rat(RatRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub mod rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vector, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .into_iter()
            .map(|r| parse_rat(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A list of vectors (basis rows).
pub mod rat_rows {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "super::rat_vec")] Vector);

    pub fn serialize<S: Serializer>(rows: &[Vector], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in rows {
            seq.serialize_element(&Row(r.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vector>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

pub mod rat_mat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        rat_rows::serialize(&m.row_vecs(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix, D::Error> {
        let rows = rat_rows::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(cols, rows).map_err(serde::de::Error::custom)
    }
}

/// A single rational, for use as a map value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rat(#[serde(with = "rat")] pub Scalar);

/// `{"dim", "names", "brackets": [{"i", "j", "coeffs": {"k": "p/q"}}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl AlgebraJson {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<usize, Rat> = g
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (k, Rat(c.clone())))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketJson { i, j, coeffs });
                }
            }
        }
        Self { dim: n, names: Some(g.names().to_vec()), brackets }
    }

    /// Structure constants with antisymmetric completion; not Jacobi-certified.
    pub fn constants(&self) -> Result<StructureConstants> {
        let n = self.dim;
        let mut table: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for b in &self.brackets {
            if b.i >= n || b.j >= n {
                return Err(Error::Schema(format!("bracket index ({}, {}) out of range for dim {n}", b.i, b.j)));
            }
            let mut v = crate::ratlin::zeros(n);
            for (&k, c) in &b.coeffs {
                if k >= n {
                    return Err(Error::Schema(format!("coefficient index {k} out of range for dim {n}")));
                }
                v[k] = c.0.clone();
            }
            let (key, v) = if b.i <= b.j { ((b.i, b.j), v) } else { ((b.j, b.i), crate::ratlin::neg(&v)) };
            if let Some(prev) = table.get(&key) {
                if *prev != v {
                    return Err(Error::Schema(format!("conflicting entries for bracket {key:?}")));
                }
            }
            table.insert(key, v);
        }
        let mut sc = StructureConstants::zero(n);
        if let Some(names) = &self.names {
            sc = sc.with_names(names.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        }
        for ((i, j), v) in table {
            sc.set(i, j, v).map_err(|e| Error::Schema(e.to_string()))?;
        }
        Ok(sc)
    }

    /// Certified algebra; a Jacobi failure is reported as [`Error::JacobiFailed`].
    pub fn algebra(&self) -> Result<LieAlgebra> {
        LieAlgebra::new(self.constants()?)
    }
}

/// `{"n", "basis": [[2n rationals], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiracJson {
    pub n: usize,
    #[serde(with = "rat_rows")]
    pub basis: Vec<Vector>,
}

impl DiracJson {
    pub fn from_dirac(d: &DiracSubspace) -> Self {
        Self { n: d.n(), basis: d.basis_vectors() }
    }

    /// Span of the rows in `Q^{2n}`, without the Lagrangian check.
    pub fn body(&self) -> Result<Subspace> {
        spanned(2 * self.n, &self.basis)
    }

    pub fn dirac(&self) -> Result<DiracSubspace> {
        DiracSubspace::new(self.n, self.body()?)
    }
}

fn spanned(ambient: usize, rows: &[Vector]) -> Result<Subspace> {
    if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
        return Err(Error::Schema(format!("row of length {} in a space of dimension {ambient}", r.len())));
    }
    Subspace::span(ambient, rows)
}

/// `{"n", "range": [[n rationals], ...], "form": [[...]]}`; the form is given
/// on the listed range vectors, which must be independent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeFormJson {
    pub n: usize,
    #[serde(with = "rat_rows")]
    pub range: Vec<Vector>,
    #[serde(with = "rat_rows")]
    pub form: Vec<Vector>,
}

impl RangeFormJson {
    pub fn from_range_form(p: &RangeForm) -> Self {
        Self { n: p.n(), range: p.range().basis_vectors(), form: p.form().row_vecs() }
    }

    pub fn range_form(&self) -> Result<RangeForm> {
        let range = spanned(self.n, &self.range)?;
        let k = self.range.len();
        if range.dim() != k {
            return Err(Error::Schema("range vectors are linearly dependent".into()));
        }
        let form = Matrix::from_rows(k, self.form.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        if form.rows() != k {
            return Err(Error::Schema(format!("form must be {k} x {k}")));
        }
        // Canonical basis rows are C · (given rows); the form transforms as C ε Cᵀ.
        let given = Matrix::from_rows(self.n, self.range.clone())?.transpose();
        let c_rows: Vec<Vector> = range
            .basis_vectors()
            .iter()
            .map(|b| given.solve(b).expect("canonical vector lies in the span"))
            .collect();
        let c = Matrix::from_rows(k, c_rows)?;
        let canonical = c.mul(&form)?.mul(&c.transpose())?;
        RangeForm::new(range, canonical)
    }
}

/// `{"algebra", "g0": [[...]], "delta": [skew matrix per basis vector]}`;
/// an omitted `delta` means `δ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleJson {
    pub algebra: AlgebraJson,
    #[serde(with = "rat_rows")]
    pub g0: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(#[serde(with = "rat_mat")] pub Matrix);

impl CocycleJson {
    pub fn from_data(data: &CocycleData) -> Self {
        Self {
            algebra: AlgebraJson::from_algebra(data.algebra()),
            g0: data.g0().basis_vectors(),
            delta: Some(data.delta().iter().cloned().map(MatrixJson).collect()),
        }
    }

    pub fn data(&self) -> Result<CocycleData> {
        let g = self.algebra.algebra()?;
        let g0 = spanned(g.dim(), &self.g0)?;
        match &self.delta {
            None => CocycleData::trivial(g, g0),
            Some(ms) => CocycleData::new(g, g0, ms.iter().map(|m| m.0.clone()).collect()),
        }
    }
}

/// `{"data", "h": [[...]], "D": <DiracJson>}` or with `"D_bar"` over `g/h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateJson {
    pub data: CocycleJson,
    #[serde(with = "rat_rows")]
    pub h: Vec<Vector>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<DiracJson>,
    #[serde(rename = "D_bar", default, skip_serializing_if = "Option::is_none")]
    pub d_bar: Option<DiracJson>,
}

impl CandidateJson {
    pub fn candidate(&self) -> Result<HomogeneousCandidate> {
        let data = self.data.data()?;
        let h = spanned(data.dim(), &self.h)?;
        match (&self.d, &self.d_bar) {
            (Some(d), None) => {
                if d.n != data.dim() {
                    return Err(Error::Schema(format!("D has n = {}, algebra has dim {}", d.n, data.dim())));
                }
                HomogeneousCandidate::new(data, h, d.body()?)
            }
            (None, Some(db)) => HomogeneousCandidate::from_dbar(data, h, &db.dirac()?),
            _ => Err(Error::Schema("exactly one of \"D\" and \"D_bar\" is required".into())),
        }
    }
}

/// `{"data", "h": [[...]]}` for the bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchJson {
    pub data: CocycleJson,
    #[serde(with = "rat_rows")]
    pub h: Vec<Vector>,
}

impl SearchJson {
    pub fn inputs(&self) -> Result<(CocycleData, Subspace)> {
        let data = self.data.data()?;
        let h = spanned(data.dim(), &self.h)?;
        Ok((data, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::sl2;
    use crate::ratlin::{frac, int, ints};

    #[test]
    fn rationals_roundtrip_as_strings() {
        let v: Vec<Rat> = serde_json::from_str(r#"["3/6", "-2", 4, "0/5"]"#).unwrap();
        assert_eq!(v, vec![Rat(frac(1, 2)), Rat(int(-2)), Rat(int(4)), Rat(int(0))]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","-2","4","0"]"#);
        assert!(serde_json::from_str::<Rat>(r#""1/0""#).is_err());
        assert!(serde_json::from_str::<Rat>(r#""x""#).is_err());
        assert!(serde_json::from_str::<Rat>("0.5").is_err());
    }

    #[test]
    fn algebra_schema_roundtrip() {
        let g = sl2();
        let j = AlgebraJson::from_algebra(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.algebra().unwrap(), g);
    }

    #[test]
    fn algebra_schema_completion_and_conflicts() {
        let j: AlgebraJson =
            serde_json::from_str(r#"{"dim": 3, "brackets": [{"i": 1, "j": 0, "coeffs": {"2": "-1"}}]}"#).unwrap();
        let g = j.algebra().unwrap();
        assert_eq!(g.basis_bracket(0, 1), &ints(&[0, 0, 1]));
        let bad: AlgebraJson = serde_json::from_str(
            r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"0": 1}}, {"i": 1, "j": 0, "coeffs": {"0": 1}}]}"#,
        )
        .unwrap();
        assert!(matches!(bad.constants(), Err(Error::Schema(_))));
        assert!(serde_json::from_str::<AlgebraJson>(r#"{"dim": 2, "extra": 1}"#).is_err());
    }

    #[test]
    fn range_form_transforms_to_canonical_basis() {
        // range spanned by (2,0) with no form, then by (1,1),(1,-1) with ε = [[0,1],[-1,0]]
        let j: RangeFormJson =
            serde_json::from_str(r#"{"n": 2, "range": [[1, 1], [1, -1]], "form": [[0, 1], [-1, 0]]}"#).unwrap();
        let p = j.range_form().unwrap();
        assert!(p.range().is_full());
        // canonical e1 = (r1 + r2)/2, e2 = (r1 - r2)/2: ε(e1, e2) = -1/2
        assert_eq!(p.form()[(0, 1)], frac(-1, 2));
    }
}
