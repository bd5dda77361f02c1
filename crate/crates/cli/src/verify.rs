//! The `verify` report: reproduces the built-in examples and checks the
//! cone, norm and Fox calculus machinery on them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};
use sutured::cones::{dual_cones, fan_check_with, foliation_cones, FanCheckConfig};
use sutured::corpus::{load_example, presentation_text, NamedExample, EXAMPLE_NAMES, PRESENTATIONS};
use sutured::error::Result;
use sutured::fox::{fundamental_identity_residual, parse_fox_input};
use sutured::linalg::{ratio, ExactCovector, ExactVector};
use sutured::norms::{ball_facet_cones, unit_ball, y_seminorm, z_symmetrized};
use sutured::polytope::Polytope;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    /// Reported for reference, never fails the run.
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "MISMATCH",
            Status::Info => "info",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Section {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Section {
    fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), checks: Vec::new() }
    }

    fn expect(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Ok } else { Status::Mismatch };
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
    }

    fn equal<T: PartialEq + std::fmt::Display>(&mut self, name: &str, found: T, expected: T) {
        let ok = found == expected;
        let detail = if ok { found.to_string() } else { format!("{found} (expected {expected})") };
        self.expect(name, ok, detail);
    }

    fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Info, detail: detail.into() });
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.sections.iter().flat_map(|s| &s.checks).all(|c| c.status != Status::Mismatch)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "== {}", s.title);
            for c in &s.checks {
                let _ = writeln!(out, "  [{:>8}] {}: {}", c.status.as_str(), c.name, c.detail);
            }
        }
        let _ = writeln!(out, "fan check seed: {}", self.seed);
        let _ = writeln!(out, "result: {}", if self.ok() { "ok" } else { "MISMATCH" });
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "ok": self.ok(),
            "sections": self.sections.iter().map(|s| json!({
                "title": s.title,
                "checks": s.checks.iter().map(|c| json!({
                    "name": c.name,
                    "status": c.status.as_str().to_lowercase(),
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn set_string<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Verifies one example, or every example plus the knot presentations.
pub fn verify(example: Option<&str>, seed: u64) -> Result<Report> {
    let mut sections = Vec::new();
    match example {
        Some(name) => sections.extend(verify_example(&load_example(name)?, seed)?),
        None => {
            for name in EXAMPLE_NAMES {
                sections.extend(verify_example(&load_example(name)?, seed)?);
            }
            sections.push(verify_fox()?);
        }
    }
    Ok(Report { seed, sections })
}

fn verify_example(ex: &NamedExample, seed: u64) -> Result<Vec<Section>> {
    let mut s = Section::new(format!("{} ({})", ex.name, ex.provenance.as_str()));
    let p = &ex.polytope;
    if let Some((_, f)) = &ex.fox {
        s.info("polynomial", f.to_string());
        s.expect("labels", !ex.labels.warning(), "every coefficient is ±1");
    }
    s.info("support points", ex.labels.entries().len().to_string());
    s.info("vertices", set_string(p.vertices()));
    s.expect(
        "full-dimensional",
        p.is_full_dimensional(),
        format!("affine dimension {} of {}", p.affine_dim(), p.ambient_dim()),
    );

    if ex.name == "cc-two-component-link" {
        s.equal("vertex count", p.vertex_count(), 5);
        let facets = p.facets()?;
        s.equal("facet count", facets.len(), 5);
        let normals: BTreeSet<ExactVector> = facets.iter().map(|f| f.outward_normal.clone()).collect();
        let expected: BTreeSet<ExactVector> = [[0, 1, 0], [0, 0, 1], [-1, 0, 0], [1, 1, 1], [0, -1, -1]]
            .iter()
            .map(|x| ExactVector::from_ints(x))
            .collect();
        s.equal("facet normals", set_string(&normals), set_string(&expected));
        let centroid = ExactCovector::new(vec![ratio(2, 5), ratio(3, 5), ratio(3, 5)]);
        s.equal("vertex centroid", p.vertex_centroid().to_string(), centroid.to_string());
    }

    let sys = dual_cones(p);
    let mut counts = sys.generator_counts();
    counts.sort();
    s.info("cones", format!("{} with generator counts {:?}", sys.cones().len(), counts));
    if ex.name == "cc-two-component-link" {
        s.equal("cone count", sys.cones().len(), 5);
        s.equal("generator counts", format!("{counts:?}"), "[3, 3, 3, 3, 4]".to_string());
        let expected: BTreeSet<ExactVector> = [[0, -1, -1], [0, 1, 0], [1, 1, 1], [0, 0, 1], [-1, 0, 0]]
            .iter()
            .map(|x| ExactVector::from_ints(x))
            .collect();
        s.equal("ray union", set_string(sys.ray_union()), set_string(&expected));
        let centred = p.centered();
        s.equal(
            "y(e1) on the centred polytope",
            y_seminorm(&centred, &ExactVector::from_ints(&[1, 0, 0]))?,
            ratio(2, 5),
        );
        s.equal(
            "z(e1) on the centred polytope",
            z_symmetrized(&centred, &ExactVector::from_ints(&[1, 0, 0]))?,
            ratio(1, 2),
        );
    }
    if let Some(stored) = ex.expected_system()? {
        s.expect("stored cones", stored.ray_sets() == sys.ray_sets(), "equal to the computed cones as ray sets");
    }
    let fol = foliation_cones(&ex.labels);
    s.equal("foliation cones", fol.selected().len(), sys.cones().len());

    let report = fan_check_with(&sys, FanCheckConfig { seed, ..Default::default() });
    s.expect(
        "fan check",
        report.covers && report.disjoint,
        format!(
            "covers={} disjoint={} walls_matched={} strict argmax on {}/{} samples",
            report.covers,
            report.disjoint,
            report.walls_matched.map_or("n/a".to_string(), |b| b.to_string()),
            report.samples_with_strict_argmax,
            report.samples
        ),
    );

    let mut bridge = Section::new(format!("{}: unit ball of the centred polytope", ex.name));
    if p.is_full_dimensional() {
        let centred = p.centered();
        let ball = unit_ball(&centred)?;
        bridge.equal("ball facets", ball.facets()?.len(), p.vertex_count());
        let (literal, negated) = bridge_counts(&centred)?;
        let n = p.vertex_count();
        bridge.info("facet cones equal to the dual cone at the same vertex", format!("{literal} of {n}"));
        bridge.expect(
            "facet cones equal to the dual cone of -P at the negated vertex",
            negated == n,
            format!("{negated} of {n}"),
        );
    } else {
        bridge.info("ball", "unbounded");
    }
    Ok(vec![s, bridge])
}

/// How many ball-facet cones equal the dual cone at the same vertex, and how
/// many equal the dual cone of the negated polytope at the negated vertex.
pub fn bridge_counts(centred: &Polytope) -> Result<(usize, usize)> {
    let facet_cones = ball_facet_cones(centred)?;
    let sys = dual_cones(centred);
    let neg = centred.negate();
    let neg_sys = dual_cones(&neg);
    let mut literal = 0;
    let mut negated = 0;
    for (i, (cone, c)) in facet_cones.iter().zip(centred.vertices()).enumerate() {
        if cone.ray_set() == sys.cones()[i].ray_set() {
            literal += 1;
        }
        let j = neg.index_of(&-c).expect("negation permutes the vertices");
        if cone.ray_set() == neg_sys.cones()[j].ray_set() {
            negated += 1;
        }
    }
    Ok((literal, negated))
}

fn verify_fox() -> Result<Section> {
    let mut s = Section::new("Fox calculus");
    for (name, expected) in [("unknot", "1"), ("trefoil", "t^2 - t + 1"), ("figure-eight", "t^2 - 3*t + 1")] {
        let f = parse_fox_input(presentation_text(name)?)?.polynomial()?;
        s.equal(&format!("{name} polynomial"), f.to_string(), expected.to_string());
        s.expect(&format!("{name} symmetry"), f.is_symmetric(), "Δ(t) ≐ Δ(1/t)");
    }
    let mut words = 0;
    let mut bad = 0;
    for (_, text) in PRESENTATIONS {
        let input = parse_fox_input(text)?;
        for w in input.words() {
            words += 1;
            if !fundamental_identity_residual(w, input.abelianization())?.is_zero() {
                bad += 1;
            }
        }
    }
    s.expect("fundamental identity", bad == 0, format!("{} of {words} words", words - bad));
    Ok(s)
}
