//! Built-in examples.
//!
//! `cc-two-component-link` is the pyramid
//! `conv{(0,1,1), (0,1,0), (0,0,1), (1,0,1), (1,1,0)}` with every lattice
//! point carrying ℤ, shipped together with its five dual cones. The pretzel
//! examples ship only their presentations; polytope and labels are computed
//! from them through the Fox calculus pipeline every time they are loaded.
//!
//! Coordinates use the basis `e1, e2, e3` and the extra vector
//! `e0 = −(e1 + e2 + e3)`, so the pyramid's ray list reads
//! `−e2 − e3, e2, −e0, e3, −e1`.

use crate::cones::{DualConeSystem, PolyhedralCone};
use crate::error::{Error, Result};
use crate::fox::{labeled_support, parse_fox_input, FoxInput, LaurentPolynomial};
use crate::io::{parse_cones, parse_polytope, ConeRecord};
use crate::linalg::{ExactVector, Homology};
use crate::polytope::{LabeledSupport, Polytope};

pub const PYRAMID_POLYTOPE_JSON: &str = include_str!("../data/cc-two-component-link.polytope.json");
pub const PYRAMID_CONES_JSON: &str = include_str!("../data/cc-two-component-link.cones.json");
pub const PRETZEL_2_2_2: &str = include_str!("../data/pretzel-2-2-2.fox");
pub const PRETZEL_2_4_2: &str = include_str!("../data/pretzel-2-4-2.fox");

/// Knot-group presentations, by name.
pub const PRESENTATIONS: &[(&str, &str)] = &[
    ("unknot", include_str!("../data/unknot.fox")),
    ("trefoil", include_str!("../data/trefoil.fox")),
    ("figure-eight", include_str!("../data/figure-eight.fox")),
    ("pretzel-2-2-2", PRETZEL_2_2_2),
    ("pretzel-2-4-2", PRETZEL_2_4_2),
];

pub const EXAMPLE_NAMES: &[&str] = &["cc-two-component-link", "pretzel-2-2-2", "pretzel-2-4-2"];

/// Where an example's numbers come from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Entered by hand from a stored point list.
    Recorded,
    /// Computed by this crate from a checked-in presentation.
    Computed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Recorded => "recorded",
            Provenance::Computed => "computed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedExample {
    pub name: &'static str,
    pub polytope: Polytope,
    pub labels: LabeledSupport,
    pub expected_cones: Option<Vec<ConeRecord>>,
    pub provenance: Provenance,
    /// The generating presentation and its polynomial, for computed examples.
    pub fox: Option<(FoxInput, LaurentPolynomial)>,
}

impl NamedExample {
    /// The stored cones as a system over this example's polytope. Cone `i`
    /// of the file sits over vertex `label`.
    pub fn expected_system(&self) -> Result<Option<DualConeSystem>> {
        let Some(records) = &self.expected_cones else { return Ok(None) };
        let mut records = records.clone();
        records.sort_by_key(|r| r.label);
        let cones = records
            .into_iter()
            .map(|r| {
                Ok(PolyhedralCone::<Homology>::from_generators(self.polytope.ambient_dim(), r.rays)?
                    .with_label(r.label))
            })
            .collect::<Result<Vec<_>>>()?;
        DualConeSystem::from_parts(self.polytope.clone(), cones).map(Some)
    }
}

pub fn load_example(name: &str) -> Result<NamedExample> {
    match name {
        "cc-two-component-link" => {
            let input = parse_polytope(PYRAMID_POLYTOPE_JSON)?;
            Ok(NamedExample {
                name: "cc-two-component-link",
                polytope: input.hull()?,
                labels: input.labels_or_all_z()?,
                expected_cones: Some(parse_cones(PYRAMID_CONES_JSON)?),
                provenance: Provenance::Recorded,
                fox: None,
            })
        }
        "pretzel-2-2-2" => computed("pretzel-2-2-2", PRETZEL_2_2_2),
        "pretzel-2-4-2" => computed("pretzel-2-4-2", PRETZEL_2_4_2),
        _ => Err(Error::UnknownExample { name: name.to_string(), registered: EXAMPLE_NAMES.join(", ") }),
    }
}

fn computed(name: &'static str, text: &str) -> Result<NamedExample> {
    let input = parse_fox_input(text)?;
    let f = input.polynomial()?;
    let labels = labeled_support(&f, true)?;
    Ok(NamedExample {
        name,
        polytope: labels.hull(),
        labels,
        expected_cones: None,
        provenance: Provenance::Computed,
        fox: Some((input, f)),
    })
}

/// Text of a shipped presentation file.
pub fn presentation_text(name: &str) -> Result<&'static str> {
    PRESENTATIONS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| Error::UnknownExample {
        name: name.to_string(),
        registered: PRESENTATIONS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "),
    })
}

/// `e0 = −(e1 + e2 + e3)`.
pub fn e0() -> ExactVector {
    ExactVector::from_ints(&[-1, -1, -1])
}

/// `e0, e1, e2, e3` by index.
pub fn named_basis(i: usize) -> Option<ExactVector> {
    match i {
        0 => Some(e0()),
        1..=3 => Some(ExactVector::basis(3, i - 1)),
        _ => None,
    }
}
