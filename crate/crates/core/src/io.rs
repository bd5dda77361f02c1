//! JSON file formats.
//!
//! Rationals are written as strings (`"3/4"`, `"-2"`); on input plain JSON
//! integers are accepted as well.
//!
//! ```text
//! polytope    {"dim": d, "points": [["p/q", ...], ...],
//!              "labels": [{"point": [...], "rank": n, "is_z": bool}, ...]}
//! cones       {"cones": [{"label": i, "rays": [[...]], "halfspaces": [[...]]}]}
//! polynomial  {"terms": [{"exp": [..], "coef": c}]}
//! ```

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cones::{DualConeSystem, PolyhedralCone};
use crate::error::{Error, Result};
use crate::fox::LaurentPolynomial;
use crate::linalg::{format_rational, parse_rational, Coords, ExactCovector, ExactVector, Rational, Side};
use crate::polytope::{FacetDescription, LabeledSupport, Polytope, RankLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Literal {
    Text(String),
    Int(i64),
}

impl Literal {
    fn value(&self) -> Result<Rational> {
        match self {
            Literal::Text(s) => parse_rational(s),
            Literal::Int(n) => Ok(crate::linalg::rat(*n)),
        }
    }

    fn of(r: &Rational) -> Self {
        Literal::Text(format_rational(r))
    }
}

fn coords<S: Side>(xs: &[Literal]) -> Result<Coords<S>> {
    Ok(Coords::new(xs.iter().map(Literal::value).collect::<Result<_>>()?))
}

fn literals<S: Side>(c: &Coords<S>) -> Vec<Literal> {
    c.coords().iter().map(Literal::of).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelRecord {
    point: Vec<Literal>,
    rank: u64,
    is_z: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeRecord {
    dim: usize,
    points: Vec<Vec<Literal>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<LabelRecord>>,
}

/// Contents of a polytope file, points kept in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeInput {
    pub dim: usize,
    pub points: Vec<ExactCovector>,
    pub labels: Option<LabeledSupport>,
}

impl PolytopeInput {
    pub fn hull(&self) -> Result<Polytope> {
        Polytope::from_points(self.dim, self.points.clone())
    }

    /// The file's labels, or every point labeled ℤ when it has none.
    pub fn labels_or_all_z(&self) -> Result<LabeledSupport> {
        match &self.labels {
            Some(l) => Ok(l.clone()),
            None => LabeledSupport::new(self.dim, self.points.iter().map(|p| (p.clone(), RankLabel::z()))),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_polytope(text: &str) -> Result<PolytopeInput> {
    let rec: PolytopeRecord = serde_json::from_str(text).map_err(parse_err)?;
    let points = rec
        .points
        .iter()
        .map(|p| {
            let c: ExactCovector = coords(p)?;
            crate::error::check_dim(rec.dim, c.dim())?;
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = match &rec.labels {
        None => None,
        Some(ls) => {
            let entries = ls
                .iter()
                .map(|l| Ok((coords(&l.point)?, RankLabel { rank: l.rank, is_exactly_z: l.is_z })))
                .collect::<Result<Vec<_>>>()?;
            Some(LabeledSupport::new(rec.dim, entries)?)
        }
    };
    Ok(PolytopeInput { dim: rec.dim, points, labels })
}

fn polytope_record(input: &PolytopeInput) -> PolytopeRecord {
    PolytopeRecord {
        dim: input.dim,
        points: input.points.iter().map(literals).collect(),
        labels: input.labels.as_ref().map(|ls| {
            ls.entries()
                .iter()
                .map(|(p, l)| LabelRecord { point: literals(p), rank: l.rank, is_z: l.is_exactly_z })
                .collect()
        }),
    }
}

/// Pretty-printed polytope file.
pub fn polytope_input_to_string(input: &PolytopeInput) -> String {
    serde_json::to_string_pretty(&polytope_record(input)).expect("plain data serializes")
}

/// Vertices of `p` in the polytope file format. Works on either side.
pub fn polytope_json<S: Side>(p: &Polytope<S>, labels: Option<&LabeledSupport>) -> Value {
    let record =
        PolytopeRecord { dim: p.ambient_dim(), points: p.vertices().iter().map(literals).collect(), labels: None };
    let mut v = serde_json::to_value(record).expect("plain data serializes");
    if let Some(ls) = labels {
        let input = PolytopeInput { dim: ls.dim(), points: Vec::new(), labels: Some(ls.clone()) };
        v["labels"] = serde_json::to_value(polytope_record(&input).labels).expect("plain data serializes");
    }
    v
}

pub fn facets_json<S: Side>(facets: &[FacetDescription<S>]) -> Value {
    json!({
        "facets": facets
            .iter()
            .map(|f| json!({
                "normal": literals(&f.outward_normal),
                "offset": format_rational(&f.offset),
                "vertices": f.incident_vertex_indices,
            }))
            .collect::<Vec<_>>()
    })
}

/// One entry of a cone file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeRecordRaw {
    label: usize,
    rays: Vec<Vec<Literal>>,
    halfspaces: Vec<Vec<Literal>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeFileRaw {
    cones: Vec<ConeRecordRaw>,
}

/// A cone as stored on disk: vertex label, rays and inward normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRecord {
    pub label: usize,
    pub rays: Vec<ExactVector>,
    pub halfspaces: Vec<ExactCovector>,
}

impl ConeRecord {
    pub fn from_cone(label: usize, c: &PolyhedralCone) -> Self {
        ConeRecord { label, rays: c.generators().to_vec(), halfspaces: c.halfspaces().to_vec() }
    }
}

pub fn cone_records(sys: &DualConeSystem) -> Vec<ConeRecord> {
    sys.cones().iter().enumerate().map(|(i, c)| ConeRecord::from_cone(c.label().unwrap_or(i), c)).collect()
}

pub fn cones_to_string(records: &[ConeRecord]) -> String {
    serde_json::to_string_pretty(&cone_file(records)).expect("plain data serializes")
}

pub fn cones_json(records: &[ConeRecord]) -> Value {
    serde_json::to_value(cone_file(records)).expect("plain data serializes")
}

fn cone_file(records: &[ConeRecord]) -> ConeFileRaw {
    ConeFileRaw {
        cones: records
            .iter()
            .map(|r| ConeRecordRaw {
                label: r.label,
                rays: r.rays.iter().map(literals).collect(),
                halfspaces: r.halfspaces.iter().map(literals).collect(),
            })
            .collect(),
    }
}

pub fn parse_cones(text: &str) -> Result<Vec<ConeRecord>> {
    let raw: ConeFileRaw = serde_json::from_str(text).map_err(parse_err)?;
    raw.cones
        .iter()
        .map(|c| {
            Ok(ConeRecord {
                label: c.label,
                rays: c.rays.iter().map(|r| coords(r)).collect::<Result<_>>()?,
                halfspaces: c.halfspaces.iter().map(|h| coords(h)).collect::<Result<_>>()?,
            })
        })
        .collect()
}

/// Terms in increasing lexicographic order of exponent. Coefficients that fit
/// in 64 bits are JSON numbers, larger ones are decimal strings.
pub fn polynomial_json(f: &LaurentPolynomial) -> Value {
    let coef = |c: &BigInt| match i64::try_from(c) {
        Ok(n) => json!(n),
        Err(_) => json!(c.to_string()),
    };
    json!({
        "terms": f.terms().iter().map(|(e, c)| json!({"exp": e, "coef": coef(c)})).collect::<Vec<_>>()
    })
}

pub fn parse_polynomial(text: &str) -> Result<LaurentPolynomial> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Coef {
        Int(i64),
        Text(String),
    }
    #[derive(Deserialize)]
    struct Term {
        exp: Vec<i64>,
        coef: Coef,
    }
    #[derive(Deserialize)]
    struct File {
        terms: Vec<Term>,
    }
    let file: File = serde_json::from_str(text).map_err(parse_err)?;
    let nvars = file.terms.first().map_or(0, |t| t.exp.len());
    let mut f = LaurentPolynomial::zero(nvars);
    for t in file.terms {
        if t.exp.len() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: t.exp.len() });
        }
        let c = match t.coef {
            Coef::Int(n) => BigInt::from(n),
            Coef::Text(s) => s.parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?,
        };
        f = &f + &LaurentPolynomial::monomial(t.exp, c);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::dual_cones;
    use crate::linalg::ratio;

    #[test]
    fn polytope_round_trip() {
        let text = r#"{"dim": 2, "points": [["1/2", "0"], [1, -3]], "labels": [{"point": ["1/2", 0], "rank": 2, "is_z": false}]}"#;
        let input = parse_polytope(text).unwrap();
        assert_eq!(input.points[0].coords()[0], ratio(1, 2));
        assert_eq!(input.labels.as_ref().unwrap().entries().len(), 1);
        let again = parse_polytope(&polytope_input_to_string(&input)).unwrap();
        assert_eq!(again, input);
    }

    #[test]
    fn bad_polytope_files() {
        assert!(parse_polytope("{").unwrap_err().is_parse());
        assert!(parse_polytope(r#"{"dim": 2, "points": [["1/0", "1"]]}"#).unwrap_err().is_parse());
        assert!(parse_polytope(r#"{"dim": 2, "points": [["x", "1"]]}"#).unwrap_err().is_parse());
        assert!(parse_polytope(r#"{"dim": 2, "points": [], "extra": 1}"#).unwrap_err().is_parse());
        assert_eq!(
            parse_polytope(r#"{"dim": 2, "points": [["1"]]}"#).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 1 }
        );
        let empty = parse_polytope(r#"{"dim": 2, "points": []}"#).unwrap();
        assert!(matches!(empty.hull().unwrap_err(), Error::Empty(_)));
    }

    #[test]
    fn cones_round_trip() {
        let p = Polytope::<crate::linalg::Cohomology>::from_int_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let records = cone_records(&dual_cones(&p));
        assert_eq!(parse_cones(&cones_to_string(&records)).unwrap(), records);
    }

    #[test]
    fn polynomial_round_trip() {
        let f = LaurentPolynomial::from_terms(1, [(vec![0], 1), (vec![1], -3), (vec![2], 1)]).unwrap();
        let v = polynomial_json(&f);
        assert_eq!(v.to_string(), r#"{"terms":[{"coef":1,"exp":[0]},{"coef":-3,"exp":[1]},{"coef":1,"exp":[2]}]}"#);
        assert_eq!(parse_polynomial(&v.to_string()).unwrap(), f);
        let big = LaurentPolynomial::monomial(vec![1], BigInt::from(10).pow(30));
        assert_eq!(parse_polynomial(&polynomial_json(&big).to_string()).unwrap(), big);
    }
}
