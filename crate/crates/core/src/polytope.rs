//! Exact convex polytopes in vertex representation.
//!
//! A [`Polytope`] is always canonical: its vertex list holds exactly the
//! extreme points of the input, sorted lexicographically, so two polytopes
//! are equal iff their vertex lists are. Facets use the maximization
//! convention `⟨v, n⟩ ≤ offset` with a primitive outward normal `n`; the
//! minimizing supporting hyperplanes used for support functions are the same
//! data with the normal negated.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Signed;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{
    dot, primitive_coords, rank_of, rat, Cohomology, Coords, ExactCovector, ExactMatrix, Rational, Side,
};

/// A finite list of points, duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<S: Side = Cohomology> {
    points: Vec<Coords<S>>,
    ambient_dim: usize,
}

impl<S: Side> PointSet<S> {
    pub fn new(ambient_dim: usize, points: Vec<Coords<S>>) -> Result<Self> {
        for p in &points {
            check_dim(ambient_dim, p.dim())?;
        }
        Ok(PointSet { points, ambient_dim })
    }

    pub fn points(&self) -> &[Coords<S>] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
}

/// Which optimum of a linear functional to take.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A convex polytope given by its extreme points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope<S: Side = Cohomology> {
    vertices: Vec<Coords<S>>,
    ambient_dim: usize,
    affine_dim: usize,
}

/// A facet `{x : ⟨x, outward_normal⟩ = offset}` of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDescription<S: Side = Cohomology> {
    pub outward_normal: Coords<S::Dual>,
    pub offset: Rational,
    pub incident_vertex_indices: BTreeSet<usize>,
}

/// A face of a polytope, as indices into its vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: BTreeSet<usize>,
    pub dim: usize,
}

/// Convex hull of a non-empty point set.
pub fn convex_hull<S: Side>(ps: &PointSet<S>) -> Result<Polytope<S>> {
    if ps.points.is_empty() {
        return Err(Error::Empty("convex hull of an empty point set"));
    }
    let distinct: Vec<Coords<S>> = ps.points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let raw: Vec<Vec<Rational>> = distinct.iter().map(|p| p.coords().to_vec()).collect();
    let (keep, affine_dim) = extreme_point_indices(&raw, ps.ambient_dim);
    let vertices = keep.into_iter().map(|i| distinct[i].clone()).collect();
    Ok(Polytope { vertices, ambient_dim: ps.ambient_dim, affine_dim })
}

impl<S: Side> Polytope<S> {
    /// Convenience wrapper around [`convex_hull`].
    pub fn from_points(ambient_dim: usize, points: Vec<Coords<S>>) -> Result<Self> {
        convex_hull(&PointSet::new(ambient_dim, points)?)
    }

    pub fn from_int_points(ambient_dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::from_points(ambient_dim, points.iter().map(|p| Coords::from_ints(p)).collect())
    }

    pub fn vertices(&self) -> &[Coords<S>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    pub fn index_of(&self, v: &Coords<S>) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// All facets, sorted by outward normal.
    pub fn facets(&self) -> Result<Vec<FacetDescription<S>>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional { affine_dim: self.affine_dim, ambient_dim: self.ambient_dim });
        }
        let raw: Vec<Vec<Rational>> = self.vertices.iter().map(|v| v.coords().to_vec()).collect();
        Ok(full_dim_facets(&raw, self.ambient_dim)
            .into_iter()
            .map(|(normal, (offset, incident))| FacetDescription {
                outward_normal: Coords::new(normal),
                offset,
                incident_vertex_indices: incident,
            })
            .collect())
    }

    /// Arithmetic mean of the vertices.
    pub fn vertex_centroid(&self) -> Coords<S> {
        let n = rat(self.vertices.len() as i64);
        let mut sum = Coords::zero(self.ambient_dim);
        for v in &self.vertices {
            sum = &sum + v;
        }
        sum.scale(&n.recip())
    }

    pub fn translate(&self, w: &Coords<S>) -> Result<Self> {
        check_dim(self.ambient_dim, w.dim())?;
        // translation preserves lexicographic order
        Ok(Polytope {
            vertices: self.vertices.iter().map(|v| v + w).collect(),
            ambient_dim: self.ambient_dim,
            affine_dim: self.affine_dim,
        })
    }

    /// Translate so that the vertex centroid sits at the origin.
    pub fn centered(&self) -> Self {
        let c = self.vertex_centroid();
        self.translate(&-c).expect("centroid has the ambient dimension")
    }

    /// The centrally reflected polytope `−P`.
    pub fn negate(&self) -> Self {
        let mut vertices: Vec<Coords<S>> = self.vertices.iter().map(|v| -v).collect();
        vertices.sort();
        Polytope { vertices, ambient_dim: self.ambient_dim, affine_dim: self.affine_dim }
    }

    /// Vertices attaining the optimum of `⟨·, a⟩`. The zero functional
    /// returns the whole polytope.
    pub fn face_in_direction(&self, a: &Coords<S::Dual>, sense: Sense) -> Result<Face> {
        check_dim(self.ambient_dim, a.dim())?;
        let values: Vec<Rational> = self.vertices.iter().map(|v| dot(v.coords(), a.coords())).collect();
        let best = match sense {
            Sense::Minimize => values.iter().min(),
            Sense::Maximize => values.iter().max(),
        }
        .expect("polytopes are non-empty")
        .clone();
        let vertex_indices: BTreeSet<usize> =
            values.iter().enumerate().filter(|(_, x)| **x == best).map(|(i, _)| i).collect();
        let dim = affine_dim(
            &vertex_indices.iter().map(|&i| self.vertices[i].coords().to_vec()).collect::<Vec<_>>(),
            self.ambient_dim,
        );
        Ok(Face { vertex_indices, dim })
    }

    /// Optimum value of `⟨·, a⟩` over the vertices.
    pub fn optimum(&self, a: &Coords<S::Dual>, sense: Sense) -> Result<Rational> {
        check_dim(self.ambient_dim, a.dim())?;
        let values = self.vertices.iter().map(|v| dot(v.coords(), a.coords()));
        Ok(match sense {
            Sense::Minimize => values.min(),
            Sense::Maximize => values.max(),
        }
        .expect("polytopes are non-empty"))
    }

    /// Exact membership test. Works in any affine dimension.
    pub fn contains(&self, x: &Coords<S>) -> Result<bool> {
        check_dim(self.ambient_dim, x.dim())?;
        if self.is_full_dimensional() {
            return Ok(self.facets()?.iter().all(|f| dot(x.coords(), f.outward_normal.coords()) <= f.offset));
        }
        // fall back to hull comparison: x is inside iff adding it changes nothing
        let mut pts = self.vertices.clone();
        pts.push(x.clone());
        Ok(Polytope::from_points(self.ambient_dim, pts)? == *self)
    }

    /// The polar dual `{a : ⟨v, a⟩ ≤ 1 for every vertex v}`.
    ///
    /// Requires the origin in the interior; the result is then bounded and
    /// its vertices are `n / h` for the facets `⟨x, n⟩ ≤ h`.
    pub fn polar(&self) -> Result<Polytope<S::Dual>> {
        let facets = self.facets()?;
        if facets.iter().any(|f| !f.offset.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let points = facets.iter().map(|f| f.outward_normal.scale(&f.offset.recip())).collect();
        Polytope::from_points(self.ambient_dim, points)
    }

    pub fn map_vertices<T: Side>(&self, f: impl Fn(&Coords<S>) -> Coords<T>) -> Result<Polytope<T>> {
        Polytope::from_points(self.ambient_dim, self.vertices.iter().map(f).collect())
    }
}

/// Dimension of the affine hull of a point list (0 for empty or singleton).
pub(crate) fn affine_dim(points: &[Vec<Rational>], ambient: usize) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| sub(p, first)).collect();
    rank_of(&diffs, ambient)
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Indices (into distinct, sorted `points`) of the extreme points, plus the
/// affine dimension. Works by projecting onto the affine hull and
/// enumerating facets there.
fn extreme_point_indices(points: &[Vec<Rational>], ambient: usize) -> (Vec<usize>, usize) {
    let origin = &points[0];
    let diffs: Vec<Vec<Rational>> = points.iter().map(|p| sub(p, origin)).collect();

    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for d in &diffs {
        let mut trial = basis.clone();
        trial.push(d.clone());
        if rank_of(&trial, ambient) > basis.len() {
            basis = trial;
        }
    }
    let r = basis.len();
    if r == 0 {
        return (vec![0], 0);
    }

    // local coordinates λ with Σ λ_k basis_k = p − origin
    let columns = ExactMatrix::new(basis, ambient).expect("uniform rows").transpose();
    let local: Vec<Vec<Rational>> = diffs
        .iter()
        .map(|d| columns.solve_raw(d).expect("shape checked").expect("every difference lies in the span of the basis"))
        .collect();

    let facets = full_dim_facets(&local, r);
    let mut normals_at: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); points.len()];
    for (normal, (_, incident)) in &facets {
        for &i in incident {
            normals_at[i].push(normal.clone());
        }
    }
    let keep = (0..points.len()).filter(|&i| rank_of(&normals_at[i], r) == r).collect();
    (keep, r)
}

type FacetMap = BTreeMap<Vec<Rational>, (Rational, BTreeSet<usize>)>;

/// Brute-force facet enumeration for a full-dimensional point list: fit a
/// hyperplane through every affinely independent `dim`-subset and keep those
/// with all points on one side. Keyed by primitive outward normal.
fn full_dim_facets(points: &[Vec<Rational>], dim: usize) -> FacetMap {
    let mut out = FacetMap::new();
    for subset in (0..points.len()).combinations(dim) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<Rational>> = subset[1..].iter().map(|&j| sub(&points[j], base)).collect();
        let m = ExactMatrix::new(diffs, dim).expect("uniform rows");
        let ns = m.nullspace();
        if ns.len() != 1 {
            continue;
        }
        let normal = primitive_coords(&ns[0]);
        let offset = dot(&normal, base);
        let values: Vec<Rational> = points.iter().map(|p| dot(&normal, p)).collect();
        let above = values.iter().any(|x| *x > offset);
        let below = values.iter().any(|x| *x < offset);
        let (normal, offset) = match (above, below) {
            (false, _) => (normal, offset),
            (true, false) => (normal.into_iter().map(|x| -x).collect(), -offset),
            (true, true) => continue,
        };
        if out.contains_key(&normal) {
            continue;
        }
        let incident = points.iter().enumerate().filter(|(_, p)| dot(&normal, p) == offset).map(|(i, _)| i).collect();
        out.insert(normal, (offset, incident));
    }
    out
}

/// Rank descriptor of a support point: `rank` of the graded group and
/// whether the group is exactly ℤ.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankLabel {
    pub rank: u64,
    pub is_exactly_z: bool,
}

impl RankLabel {
    pub fn z() -> Self {
        RankLabel { rank: 1, is_exactly_z: true }
    }
}

/// Lattice points of a support together with their rank labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSupport {
    dim: usize,
    entries: BTreeMap<ExactCovector, RankLabel>,
    warning: bool,
}

impl LabeledSupport {
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (ExactCovector, RankLabel)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, label) in entries {
            check_dim(dim, p.dim())?;
            if label.rank == 0 {
                return Err(Error::ZeroRank { point: p.to_string() });
            }
            map.insert(p, label);
        }
        if map.is_empty() {
            return Err(Error::Empty("labeled support without points"));
        }
        Ok(LabeledSupport { dim, entries: map, warning: false })
    }

    /// Every point labeled `ℤ`.
    pub fn all_z(polytope_points: &[ExactCovector]) -> Result<Self> {
        let dim = polytope_points.first().map_or(0, Coords::dim);
        Self::new(dim, polytope_points.iter().map(|p| (p.clone(), RankLabel::z())))
    }

    pub(crate) fn with_warning(mut self, warning: bool) -> Self {
        self.warning = warning;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &BTreeMap<ExactCovector, RankLabel> {
        &self.entries
    }

    pub fn label(&self, p: &ExactCovector) -> Option<RankLabel> {
        self.entries.get(p).copied()
    }

    /// Set when the data contradicts the rank hypothesis it was built under.
    pub fn warning(&self) -> bool {
        self.warning
    }

    pub fn point_set(&self) -> PointSet {
        PointSet { points: self.entries.keys().cloned().collect(), ambient_dim: self.dim }
    }

    pub fn hull(&self) -> Polytope {
        convex_hull(&self.point_set()).expect("labeled supports are non-empty")
    }
}

/// Whether `p` is a rational convex combination of `others`, decided by
/// enumerating affinely independent subsets (Carathéodory) and solving the
/// barycentric system exactly. Used as an independent check of the hull.
pub fn in_convex_hull_by_enumeration(p: &[Rational], others: &[Vec<Rational>]) -> bool {
    let dim = p.len();
    for size in 1..=(dim + 1).min(others.len()) {
        for subset in (0..others.len()).combinations(size) {
            // Σ λ_k q_k = p, Σ λ_k = 1
            let mut rows: Vec<Vec<Rational>> =
                (0..dim).map(|i| subset.iter().map(|&k| others[k][i].clone()).collect()).collect();
            rows.push(vec![rat(1); size]);
            let mut rhs = p.to_vec();
            rhs.push(rat(1));
            let m = ExactMatrix::new(rows, size).expect("uniform rows");
            if let Some(lambda) = m.solve_raw(&rhs).expect("shape checked") {
                if lambda.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}
