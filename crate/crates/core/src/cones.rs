//! Dual cones of a polytope and their fan structure.
//!
//! For a polytope with vertices `v_1, …, v_n`, the dual cone at `v_i` is the
//! set of functionals maximized at `v_i`:
//!
//! ```text
//! Q_i = { α : ⟨v_i − v_j, α⟩ ≥ 0 for all j }
//! ```
//!
//! Cones are stored closed; the open cones (functionals with `v_i` as the
//! unique maximizer) are their interiors, and [`membership`] tells the two
//! apart. Generators and halfspaces are kept primitive and sorted so that
//! cones compare by plain equality.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Result};
use crate::linalg::{dot, primitive_coords, rank_of, Coords, ExactMatrix, Homology, Rational, Side};
use crate::polytope::{LabeledSupport, Polytope};

/// Seed used by [`fan_check`] unless the caller overrides it.
pub const DEFAULT_FAN_SEED: u64 = 0x5EED_C0DE;
/// Number of random functionals sampled by [`fan_check`].
pub const DEFAULT_FAN_SAMPLES: usize = 10_000;
/// Sampled coordinates are integers in `[-DEFAULT_FAN_RANGE, DEFAULT_FAN_RANGE]`.
pub const DEFAULT_FAN_RANGE: i64 = 100;

/// A closed polyhedral cone `{x : ⟨h, x⟩ ≥ 0 for every halfspace h}`.
///
/// A cone with a lineality space lists each lineality basis direction as an
/// opposite pair of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyhedralCone<S: Side = Homology> {
    dim: usize,
    generators: Vec<Coords<S>>,
    halfspaces: Vec<Coords<S::Dual>>,
    lineality_dim: usize,
    label: Option<usize>,
}

/// Where a functional sits relative to a closed cone.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl<S: Side> PolyhedralCone<S> {
    /// Cone cut out by inward normals. Zero normals are ignored and
    /// redundant ones dropped.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Coords<S::Dual>>) -> Result<Self> {
        for h in &halfspaces {
            check_dim(dim, h.dim())?;
        }
        let raw: Vec<Vec<Rational>> = halfspaces
            .iter()
            .filter(|h| !h.is_zero())
            .map(|h| primitive_coords(h.coords()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let reduced = irredundant(dim, raw);
        let (rays, lineality) = cone_generators(dim, &reduced);
        let lineality_dim = lineality.len();
        let mut generators: BTreeSet<Vec<Rational>> = rays.into_iter().collect();
        for l in lineality {
            let neg: Vec<Rational> = l.iter().map(|x| -x).collect();
            generators.insert(l);
            generators.insert(neg);
        }
        Ok(PolyhedralCone {
            dim,
            generators: generators.into_iter().map(Coords::new).collect(),
            halfspaces: reduced.into_iter().map(Coords::new).collect(),
            lineality_dim,
            label: None,
        })
    }

    /// Conic hull of the given vectors.
    pub fn from_generators(dim: usize, generators: Vec<Coords<S>>) -> Result<Self> {
        // the dual cone's generators are exactly the defining halfspaces
        let dual = PolyhedralCone::<S::Dual>::from_halfspaces(dim, generators)?;
        Self::from_halfspaces(dim, dual.generators)
    }

    pub fn with_label(mut self, label: usize) -> Self {
        self.label = Some(label);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive generators, sorted; opposite pairs span the lineality space.
    pub fn generators(&self) -> &[Coords<S>] {
        &self.generators
    }

    /// Primitive inward normals of the facets, sorted.
    pub fn halfspaces(&self) -> &[Coords<S::Dual>] {
        &self.halfspaces
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality_dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim == 0
    }

    pub fn label(&self) -> Option<usize> {
        self.label
    }

    pub fn ray_set(&self) -> BTreeSet<Coords<S>> {
        self.generators.iter().cloned().collect()
    }

    /// Generators lying on the boundary hyperplane of `h`.
    pub fn rays_on(&self, h: &Coords<S::Dual>) -> BTreeSet<Coords<S>> {
        self.generators.iter().filter(|g| dot(g.coords(), h.coords()).is_zero()).cloned().collect()
    }
}

/// Irredundant generator list of a cone.
pub fn extremal_rays<S: Side>(c: &PolyhedralCone<S>) -> Vec<Coords<S>> {
    c.generators.clone()
}

/// Classifies `a` by exact sign tests against the halfspaces.
pub fn membership<S: Side>(c: &PolyhedralCone<S>, a: &Coords<S>) -> Result<Membership> {
    check_dim(c.dim, a.dim())?;
    let mut all_strict = true;
    for h in &c.halfspaces {
        let x = dot(h.coords(), a.coords());
        if x.is_negative() {
            return Ok(Membership::Outside);
        }
        all_strict &= x.is_positive();
    }
    Ok(if all_strict { Membership::Interior } else { Membership::Boundary })
}

/// Extreme rays of the pointed part and a basis of the lineality space of
/// `{x : ⟨h, x⟩ ≥ 0}`. Brute force over `(rank − 1)`-subsets of the normals.
fn cone_generators(dim: usize, halfspaces: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let lineality: Vec<Vec<Rational>> = if halfspaces.is_empty() {
        ExactMatrix::identity(dim).rows().to_vec()
    } else {
        ExactMatrix::new(halfspaces.to_vec(), dim).expect("uniform rows").nullspace()
    };
    let lineality: Vec<Vec<Rational>> = lineality.iter().map(|l| line_rep(l)).collect();
    let k = dim - lineality.len();
    if k == 0 {
        return (Vec::new(), lineality);
    }
    let mut rays = BTreeSet::new();
    for subset in (0..halfspaces.len()).combinations(k - 1) {
        let mut rows: Vec<Vec<Rational>> = subset.iter().map(|&i| halfspaces[i].clone()).collect();
        rows.extend(lineality.iter().cloned());
        let m = ExactMatrix::new(rows, dim).expect("uniform rows");
        let ns = m.nullspace();
        if ns.len() != 1 {
            continue;
        }
        let r = &ns[0];
        let values: Vec<Rational> = halfspaces.iter().map(|h| dot(h, r)).collect();
        if values.iter().all(|x| !x.is_negative()) {
            rays.insert(primitive_coords(r));
        } else if values.iter().all(|x| !x.is_positive()) {
            let neg: Vec<Rational> = r.iter().map(|x| -x).collect();
            rays.insert(primitive_coords(&neg));
        }
    }
    (rays.into_iter().collect(), lineality)
}

fn line_rep(x: &[Rational]) -> Vec<Rational> {
    let p = primitive_coords(x);
    match p.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => p.into_iter().map(|c| -c).collect(),
        _ => p,
    }
}

/// Drops halfspaces implied by the others, one at a time.
fn irredundant(dim: usize, mut hs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut i = 0;
    while i < hs.len() {
        let others: Vec<Vec<Rational>> =
            hs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let (rays, lineality) = cone_generators(dim, &others);
        let implied =
            rays.iter().all(|r| !dot(&hs[i], r).is_negative()) && lineality.iter().all(|l| dot(&hs[i], l).is_zero());
        if implied {
            hs.remove(i);
        } else {
            i += 1;
        }
    }
    hs
}

/// The dual cones of a polytope, one per vertex, labeled by vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualConeSystem<S: Side = crate::linalg::Cohomology> {
    cones: Vec<PolyhedralCone<S::Dual>>,
    source: Polytope<S>,
}

impl<S: Side> DualConeSystem<S> {
    /// Pairs a polytope with externally supplied cones, one per vertex in
    /// vertex order, e.g. cones read back from a file.
    pub fn from_parts(source: Polytope<S>, cones: Vec<PolyhedralCone<S::Dual>>) -> Result<Self> {
        check_dim(source.vertex_count(), cones.len())?;
        for c in &cones {
            check_dim(source.ambient_dim(), c.dim())?;
        }
        Ok(DualConeSystem { cones, source })
    }

    pub fn cones(&self) -> &[PolyhedralCone<S::Dual>] {
        &self.cones
    }

    pub fn source(&self) -> &Polytope<S> {
        &self.source
    }

    /// Union of all generator rays.
    pub fn ray_union(&self) -> BTreeSet<Coords<S::Dual>> {
        self.cones.iter().flat_map(|c| c.generators.iter().cloned()).collect()
    }

    /// Generator counts, one per cone, in vertex order.
    pub fn generator_counts(&self) -> Vec<usize> {
        self.cones.iter().map(|c| c.generators.len()).collect()
    }

    /// The cones' ray sets, in vertex order.
    pub fn ray_sets(&self) -> Vec<BTreeSet<Coords<S::Dual>>> {
        self.cones.iter().map(PolyhedralCone::ray_set).collect()
    }
}

/// Dual cone at every vertex of `p`.
pub fn dual_cones<S: Side>(p: &Polytope<S>) -> DualConeSystem<S> {
    let vs = p.vertices();
    let cones = vs
        .iter()
        .enumerate()
        .map(|(i, vi)| {
            let hs: Vec<Coords<S>> = vs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, vj)| vi - vj).collect();
            PolyhedralCone::<S::Dual>::from_halfspaces(p.ambient_dim(), hs)
                .expect("vertex differences share the ambient dimension")
                .with_label(i)
        })
        .collect();
    DualConeSystem { cones, source: p.clone() }
}

/// Index of the unique vertex strictly maximizing `⟨·, a⟩`, or `None` on a tie.
pub fn extremal_vertex_for<S: Side>(p: &Polytope<S>, a: &Coords<S::Dual>) -> Result<Option<usize>> {
    check_dim(p.ambient_dim(), a.dim())?;
    let values: Vec<Rational> = p.vertices().iter().map(|v| dot(v.coords(), a.coords())).collect();
    let best = values.iter().max().expect("polytopes are non-empty");
    let mut winners = values.iter().enumerate().filter(|(_, x)| *x == best);
    let first = winners.next().map(|(i, _)| i);
    Ok(if winners.next().is_some() { None } else { first })
}

/// Dual cones whose vertex carries exactly ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationConeSet {
    system: DualConeSystem,
    selected: Vec<usize>,
}

impl FoliationConeSet {
    pub fn system(&self) -> &DualConeSystem {
        &self.system
    }

    /// Vertex indices of the selected cones.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn cones(&self) -> impl Iterator<Item = &PolyhedralCone<Homology>> {
        self.selected.iter().map(move |&i| &self.system.cones[i])
    }
}

/// Hull of the labeled support, its dual cones, and the ones sitting over a
/// vertex labeled `(rank 1, exactly ℤ)`. Labels on non-vertices are ignored.
pub fn foliation_cones(ls: &LabeledSupport) -> FoliationConeSet {
    let system = dual_cones(&ls.hull());
    let selected = system
        .source
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| ls.label(v).is_some_and(|l| l.rank == 1 && l.is_exactly_z))
        .map(|(i, _)| i)
        .collect();
    FoliationConeSet { system, selected }
}

/// Knobs for [`fan_check_with`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FanCheckConfig {
    pub seed: u64,
    pub samples: usize,
    pub range: i64,
}

impl Default for FanCheckConfig {
    fn default() -> Self {
        FanCheckConfig { seed: DEFAULT_FAN_SEED, samples: DEFAULT_FAN_SAMPLES, range: DEFAULT_FAN_RANGE }
    }
}

/// Outcome of [`fan_check`]. Witnesses are functionals where a property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport<S: Side = Homology> {
    pub covers: bool,
    pub disjoint: bool,
    pub witnesses: Vec<Coords<S>>,
    pub samples: usize,
    pub samples_with_strict_argmax: usize,
    /// Result of the exact wall-matching check; `None` when it did not run.
    pub walls_matched: Option<bool>,
    /// Some cone is not pointed.
    pub has_lineality: bool,
}

pub fn fan_check<S: Side>(sys: &DualConeSystem<S>) -> FanReport<S::Dual> {
    fan_check_with(sys, FanCheckConfig::default())
}

/// Checks that the dual cones cover the space and have disjoint interiors.
///
/// `covers` holds iff the source polytope is full-dimensional or a single
/// point: otherwise every functional vanishing on the hull's direction space
/// ties all vertices, and one such functional is reported. Both properties
/// are cross-validated on seeded integer samples (each sample with a strict
/// argmax must lie in exactly that cone's interior, and in no other), and for
/// full-dimensional sources every wall of every cone must be shared, with the
/// same rays, by exactly one neighbouring cone.
pub fn fan_check_with<S: Side>(sys: &DualConeSystem<S>, cfg: FanCheckConfig) -> FanReport<S::Dual> {
    let p = &sys.source;
    let d = p.ambient_dim();
    let mut report = FanReport {
        covers: true,
        disjoint: true,
        witnesses: Vec::new(),
        samples: cfg.samples,
        samples_with_strict_argmax: 0,
        walls_matched: None,
        has_lineality: sys.cones.iter().any(|c| !c.is_pointed()),
    };

    if !p.is_full_dimensional() && p.vertex_count() > 1 {
        report.covers = false;
        let diffs: Vec<Coords<S>> = p.vertices()[1..].iter().map(|v| v - &p.vertices()[0]).collect();
        let ns = ExactMatrix::from_rows(&diffs).expect("uniform rows").nullspace();
        if let Some(w) = ns.first() {
            report.witnesses.push(Coords::new(line_rep(w)));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let a: Coords<S::Dual> =
            Coords::from_ints(&(0..d).map(|_| rng.random_range(-cfg.range..=cfg.range)).collect::<Vec<_>>());
        let argmax = extremal_vertex_for(p, &a).expect("sample has the ambient dimension");
        let mut interiors = Vec::new();
        let mut touched = false;
        for (i, c) in sys.cones.iter().enumerate() {
            match membership(c, &a).expect("sample has the ambient dimension") {
                Membership::Interior => {
                    interiors.push(i);
                    touched = true;
                }
                Membership::Boundary => touched = true,
                Membership::Outside => {}
            }
        }
        if interiors.len() > 1 {
            report.disjoint = false;
            report.witnesses.push(a.clone());
        }
        match argmax {
            Some(i) => {
                report.samples_with_strict_argmax += 1;
                if interiors != [i] {
                    report.covers = false;
                    report.witnesses.push(a.clone());
                }
            }
            None => {
                if !interiors.is_empty() || !touched {
                    report.covers = false;
                    report.witnesses.push(a.clone());
                }
            }
        }
    }

    if p.is_full_dimensional() && p.vertex_count() > 1 {
        let mut ok = true;
        for c in &sys.cones {
            for h in &c.halfspaces {
                let opposite = -h;
                let wall = c.rays_on(h);
                let partners = sys
                    .cones
                    .iter()
                    .filter(|o| o.halfspaces.contains(&opposite) && o.rays_on(&opposite) == wall)
                    .count();
                if partners != 1 {
                    ok = false;
                    let mut w = Coords::zero(d);
                    for r in &wall {
                        w = &w + r;
                    }
                    report.witnesses.push(w);
                }
            }
        }
        report.walls_matched = Some(ok);
        report.covers &= ok;
    }
    report
}

/// Rank of a set of vectors; exposed for the normal-fan checks in tests.
pub fn rank<S: Side>(vs: &[Coords<S>]) -> usize {
    let d = vs.first().map_or(0, Coords::dim);
    rank_of(&vs.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, Cohomology, ExactCovector, ExactVector};
    use crate::polytope::RankLabel;
    use proptest::prelude::*;

    fn pyramid() -> Polytope {
        Polytope::<Cohomology>::from_int_points(3, &[&[0, 1, 1], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[1, 1, 0]])
            .unwrap()
    }

    fn v(xs: &[i64]) -> ExactVector {
        ExactVector::from_ints(xs)
    }

    fn cv(xs: &[i64]) -> ExactCovector {
        ExactCovector::from_ints(xs)
    }

    fn rays(xs: &[&[i64]]) -> BTreeSet<ExactVector> {
        xs.iter().map(|x| v(x)).collect()
    }

    #[test]
    fn pyramid_ray_union() {
        let sys = dual_cones(&pyramid());
        assert_eq!(sys.cones().len(), 5);
        assert_eq!(sys.ray_union(), rays(&[&[0, -1, -1], &[0, 1, 0], &[1, 1, 1], &[0, 0, 1], &[-1, 0, 0]]));
        let mut counts = sys.generator_counts();
        counts.sort();
        assert_eq!(counts, vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn apex_cone() {
        let p = pyramid();
        let apex = p.index_of(&cv(&[0, 1, 1])).unwrap();
        let sys = dual_cones(&p);
        let c = &sys.cones()[apex];
        assert_eq!(c.label(), Some(apex));
        assert_eq!(
            extremal_rays(c).into_iter().collect::<BTreeSet<_>>(),
            rays(&[&[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[1, 1, 1]])
        );
        assert_eq!(membership(c, &v(&[0, 1, 1])).unwrap(), Membership::Interior);
        assert_eq!(membership(c, &v(&[0, 1, 0])).unwrap(), Membership::Boundary);
        assert_eq!(membership(c, &v(&[0, -1, -1])).unwrap(), Membership::Outside);
        assert!(membership(c, &v(&[0, 1])).is_err());
    }

    #[test]
    fn single_vertex_cone_is_everything() {
        let p = Polytope::<Cohomology>::from_int_points(2, &[&[4, 4]]).unwrap();
        let sys = dual_cones(&p);
        assert_eq!(sys.cones().len(), 1);
        assert!(sys.cones()[0].halfspaces().is_empty());
        assert_eq!(sys.cones()[0].lineality_dim(), 2);
        assert_eq!(membership(&sys.cones()[0], &v(&[-3, 8])).unwrap(), Membership::Interior);
        let report = fan_check(&sys);
        assert!(report.covers && report.disjoint);
    }

    #[test]
    fn redundant_generator_is_dropped() {
        let c = PolyhedralCone::<Homology>::from_generators(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(extremal_rays(&c), vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.halfspaces(), &[cv(&[0, 1]), cv(&[1, 0])]);
    }

    #[test]
    fn halfplane_has_a_lineality_pair() {
        let c = PolyhedralCone::<Homology>::from_halfspaces(2, vec![cv(&[1, 0])]).unwrap();
        assert_eq!(c.ray_set(), rays(&[&[0, 1], &[0, -1], &[1, 0]]));
        assert_eq!(c.lineality_dim(), 1);
        assert!(!c.is_pointed());
    }

    #[test]
    fn generators_and_halfspaces_agree() {
        let c = PolyhedralCone::<Homology>::from_halfspaces(
            3,
            vec![cv(&[1, 0, 0]), cv(&[0, 1, 0]), cv(&[0, 0, 1]), cv(&[1, 1, 0]), cv(&[2, 0, 0])],
        )
        .unwrap();
        assert_eq!(c.halfspaces().len(), 3);
        let back = PolyhedralCone::<Homology>::from_generators(3, c.generators().to_vec()).unwrap();
        assert_eq!(back.halfspaces(), c.halfspaces());
        for g in c.generators() {
            assert_ne!(membership(&c, g).unwrap(), Membership::Outside);
            assert_ne!(membership(&c, g).unwrap(), Membership::Interior);
        }
    }

    #[test]
    fn strict_argmax() {
        let p = pyramid();
        let apex = p.index_of(&cv(&[0, 1, 1])).unwrap();
        assert_eq!(extremal_vertex_for(&p, &v(&[0, 1, 1])).unwrap(), Some(apex));
        assert_eq!(extremal_vertex_for(&p, &v(&[0, 1, 0])).unwrap(), None);
        assert_eq!(extremal_vertex_for(&p, &v(&[0, 0, 0])).unwrap(), None);
    }

    #[test]
    fn foliation_cone_selection() {
        let p = pyramid();
        let all = LabeledSupport::all_z(p.vertices()).unwrap();
        assert_eq!(foliation_cones(&all).selected().len(), 5);

        let entries = p.vertices().iter().map(|x| {
            let label = if *x == cv(&[0, 1, 1]) { RankLabel { rank: 2, is_exactly_z: false } } else { RankLabel::z() };
            (x.clone(), label)
        });
        let ls = LabeledSupport::new(3, entries).unwrap();
        let set = foliation_cones(&ls);
        assert_eq!(set.selected().len(), 4);
        assert!(set.cones().all(|c| c.generators().len() == 3));

        let single = LabeledSupport::all_z(&[cv(&[1, 2, 3])]).unwrap();
        let one = foliation_cones(&single);
        assert_eq!(one.selected(), &[0]);
        assert!(one.cones().next().unwrap().halfspaces().is_empty());
    }

    #[test]
    fn non_vertex_labels_are_ignored() {
        let pts = [cv(&[0, 0]), cv(&[2, 0]), cv(&[0, 2]), cv(&[1, 0])];
        let ls = LabeledSupport::all_z(&pts).unwrap();
        let set = foliation_cones(&ls);
        assert_eq!(set.system().cones().len(), 3);
        assert_eq!(set.selected().len(), 3);
    }

    #[test]
    fn pyramid_fan_is_complete() {
        let report = fan_check(&dual_cones(&pyramid()));
        assert!(report.covers, "{:?}", report.witnesses);
        assert!(report.disjoint);
        assert_eq!(report.walls_matched, Some(true));
        assert!(report.samples_with_strict_argmax > 9_000);
    }

    #[test]
    fn segment_does_not_cover() {
        let seg = Polytope::<Cohomology>::from_int_points(2, &[&[0, 0], &[2, 1]]).unwrap();
        let report = fan_check(&dual_cones(&seg));
        assert!(!report.covers);
        assert!(report.disjoint);
        assert!(report.has_lineality);
        let w = &report.witnesses[0];
        assert_eq!(w, &v(&[1, -2]));
        assert_eq!(dot(w.coords(), &[crate::linalg::rat(2), crate::linalg::rat(1)]), crate::linalg::rat(0));
    }

    #[test]
    fn normal_cones_are_spanned_by_incident_facet_normals() {
        let p = pyramid();
        let facets = p.facets().unwrap();
        for (i, c) in dual_cones(&p).cones().iter().enumerate() {
            let normals: BTreeSet<ExactVector> = facets
                .iter()
                .filter(|f| f.incident_vertex_indices.contains(&i))
                .map(|f| f.outward_normal.clone())
                .collect();
            assert_eq!(c.ray_set(), normals);
        }
    }

    fn full_dim_polytope() -> impl Strategy<Value = Polytope> {
        (2usize..=3)
            .prop_flat_map(|d| proptest::collection::vec(proptest::collection::vec(-3i64..=3, d), d + 1..=8))
            .prop_map(|pts| {
                let d = pts[0].len();
                Polytope::from_points(d, pts.iter().map(|x| cv(x)).collect()).unwrap()
            })
            .prop_filter("full-dimensional", |p| p.is_full_dimensional())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn translation_invariance(p in full_dim_polytope(), w in proptest::collection::vec(-9i64..=9, 3)) {
            let w = cv(&w[..p.ambient_dim()]);
            let q = p.translate(&w).unwrap();
            let (a, b) = (dual_cones(&p), dual_cones(&q));
            prop_assert_eq!(a.cones(), b.cones());
        }

        #[test]
        fn interior_iff_strict_argmax(p in full_dim_polytope(), a in proptest::collection::vec(-3i64..=3, 3)) {
            let a = v(&a[..p.ambient_dim()]);
            let sys = dual_cones(&p);
            let argmax = extremal_vertex_for(&p, &a).unwrap();
            for (i, c) in sys.cones().iter().enumerate() {
                let inside = membership(c, &a).unwrap() == Membership::Interior;
                prop_assert_eq!(inside, argmax == Some(i));
            }
        }

        #[test]
        fn classification_is_scale_invariant(p in full_dim_polytope(), a in proptest::collection::vec(-3i64..=3, 3), n in 1i64..20, d in 1i64..20) {
            let a = v(&a[..p.ambient_dim()]);
            let scaled = a.scale(&ratio(n, d));
            for c in dual_cones(&p).cones() {
                prop_assert_eq!(membership(c, &a).unwrap(), membership(c, &scaled).unwrap());
            }
        }

        #[test]
        fn normal_fan_characterization(p in full_dim_polytope()) {
            let facets = p.facets().unwrap();
            for (i, c) in dual_cones(&p).cones().iter().enumerate() {
                let normals: BTreeSet<ExactVector> = facets
                    .iter()
                    .filter(|f| f.incident_vertex_indices.contains(&i))
                    .map(|f| f.outward_normal.clone())
                    .collect();
                prop_assert_eq!(c.ray_set(), normals);
            }
        }

        #[test]
        fn random_fans_are_complete(p in full_dim_polytope()) {
            let report = fan_check_with(&dual_cones(&p), FanCheckConfig { samples: 200, ..Default::default() });
            prop_assert!(report.covers && report.disjoint);
        }
    }
}
