//! Support functions, the seminorms they induce, and surface complexities.
//!
//! Polytopes live on the cohomology side and are evaluated on homology
//! classes. For a polytope `P`:
//!
//! ```text
//! c(a)   = min { ⟨c, a⟩ : c ∈ P }
//! y_t(a) = −c(a)
//! y(a)   = max { ⟨−c, a⟩ : c ∈ P − centroid }
//! z(a)   = ½ (y(a) + y(−a))
//! ```
//!
//! `y_t` depends on which translate of `P` is passed in; `y` insists on a
//! centred polytope and refuses anything else.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::PolyhedralCone;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, rat, ratio, ExactCovector, ExactVector, Homology, Rational};
use crate::polytope::{Face, FacetDescription, Polytope, Sense};

/// Minimum of the pairing and the face where it is attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportEvaluation {
    pub value: Rational,
    pub attaining_face: Face,
}

pub fn support_min(p: &Polytope, a: &ExactVector) -> Result<SupportEvaluation> {
    Ok(SupportEvaluation {
        value: p.optimum(a, Sense::Minimize)?,
        attaining_face: p.face_in_direction(a, Sense::Minimize)?,
    })
}

/// `−min ⟨c, a⟩` over `p`. Can be negative when `p` is a bad translate.
pub fn y_t(p: &Polytope, a: &ExactVector) -> Result<Rational> {
    Ok(-p.optimum(a, Sense::Minimize)?)
}

fn require_centered(p: &Polytope) -> Result<()> {
    let c = p.vertex_centroid();
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::NotCentered { centroid: c.to_string() })
    }
}

/// The seminorm of a polytope already centred at its vertex centroid.
pub fn y_seminorm(p_centered: &Polytope, a: &ExactVector) -> Result<Rational> {
    require_centered(p_centered)?;
    y_t(p_centered, a)
}

pub fn z_symmetrized(p_centered: &Polytope, a: &ExactVector) -> Result<Rational> {
    let plus = y_seminorm(p_centered, a)?;
    let minus = y_seminorm(p_centered, &-a)?;
    Ok((plus + minus) / rat(2))
}

/// Unit ball `{a : ⟨−c, a⟩ ≤ 1 for every vertex c}` of the seminorm `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormBall {
    /// The polar of `−P`.
    Bounded(Polytope<Homology>),
    /// Constraints `⟨n, a⟩ ≤ 1`, one per vertex; the ball contains the
    /// annihilator of the polytope's direction space.
    Unbounded { dim: usize, normals: Vec<ExactCovector> },
}

impl NormBall {
    pub fn is_bounded(&self) -> bool {
        matches!(self, NormBall::Bounded(_))
    }

    pub fn dim(&self) -> usize {
        match self {
            NormBall::Bounded(b) => b.ambient_dim(),
            NormBall::Unbounded { dim, .. } => *dim,
        }
    }

    pub fn contains(&self, a: &ExactVector) -> Result<bool> {
        match self {
            NormBall::Bounded(b) => b.contains(a),
            NormBall::Unbounded { dim, normals } => {
                check_dim(*dim, a.dim())?;
                Ok(normals.iter().all(|n| dot(n.coords(), a.coords()) <= rat(1)))
            }
        }
    }

    /// Facets of a bounded ball; an unbounded one has no facet list.
    pub fn facets(&self) -> Result<Vec<FacetDescription<Homology>>> {
        match self {
            NormBall::Bounded(b) => b.facets(),
            NormBall::Unbounded { dim, normals } => {
                Err(Error::NotFullDimensional { affine_dim: normals.len().min(*dim), ambient_dim: *dim })
            }
        }
    }
}

pub fn unit_ball(p_centered: &Polytope) -> Result<NormBall> {
    require_centered(p_centered)?;
    let neg = p_centered.negate();
    if neg.is_full_dimensional() {
        Ok(NormBall::Bounded(neg.polar()?))
    } else {
        Ok(NormBall::Unbounded { dim: neg.ambient_dim(), normals: neg.vertices().to_vec() })
    }
}

/// For every vertex `c_i` of a full-dimensional centred polytope, the cone
/// over the ball facet lying on `⟨−c_i, a⟩ = 1`, labeled `i`.
pub fn ball_facet_cones(p_centered: &Polytope) -> Result<Vec<PolyhedralCone<Homology>>> {
    let ball = unit_ball(p_centered)?;
    let NormBall::Bounded(b) = &ball else {
        return Err(Error::NotFullDimensional {
            affine_dim: p_centered.affine_dim(),
            ambient_dim: p_centered.ambient_dim(),
        });
    };
    let facets = b.facets()?;
    p_centered
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let normal = (-c).primitive();
            let facet = facets
                .iter()
                .find(|f| f.outward_normal == normal)
                .expect("polar duality pairs every vertex with a facet");
            let gens = facet.incident_vertex_indices.iter().map(|&j| b.vertices()[j].clone()).collect();
            Ok(PolyhedralCone::from_generators(b.ambient_dim(), gens)?.with_label(i))
        })
        .collect()
}

/// One component of a surface, reduced to the numbers the complexities use.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    #[serde(rename = "chi")]
    pub euler: i64,
    /// Geometric intersection count of the boundary with the sutures.
    #[serde(rename = "n", default)]
    pub suture_count: u64,
    #[serde(rename = "beta", default)]
    pub beta_count: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComplexityData {
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceComplexityData {
    pub fn euler_total(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }
}

pub fn chi_minus(s: &SurfaceComplexityData) -> u64 {
    s.components.iter().map(|c| (-c.euler).max(0) as u64).sum()
}

pub fn chi_beta(s: &SurfaceComplexityData) -> u64 {
    s.components.iter().map(|c| (c.beta_count as i64 - c.euler).max(0) as u64).sum()
}

pub fn chi_s_minus(s: &SurfaceComplexityData) -> Rational {
    s.components
        .iter()
        .map(|c| {
            let x = rat(-c.euler) + ratio(c.suture_count as i64, 2);
            if x.is_positive() {
                x
            } else {
                Rational::zero()
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializationSummand {
    pub euler: i64,
    pub index_sum: Rational,
    pub rotation_sum: i64,
}

pub fn c_s_t(t: &TrivializationSummand) -> Rational {
    rat(t.euler) + &t.index_sum - rat(t.rotation_sum)
}

/// Index of a surface in terms of how often its boundary meets the sutures.
pub fn index_from_suture_count(k: u64) -> Rational {
    ratio(-(k as i64), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::dual_cones;
    use crate::linalg::{Cohomology, ExactMatrix};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn pyramid() -> Polytope {
        Polytope::<Cohomology>::from_int_points(3, &[&[0, 1, 1], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[1, 1, 0]])
            .unwrap()
    }

    fn v(xs: &[i64]) -> ExactVector {
        ExactVector::from_ints(xs)
    }

    #[test]
    fn support_examples() {
        let p = pyramid();
        let e1 = support_min(&p, &v(&[1, 0, 0])).unwrap();
        assert_eq!(e1.value, rat(0));
        assert_eq!(e1.attaining_face.vertex_indices.len(), 3);
        assert!(e1.attaining_face.vertex_indices.iter().all(|&i| p.vertices()[i].coords()[0].is_zero()));

        let zero = support_min(&p, &v(&[0, 0, 0])).unwrap();
        assert_eq!(zero.value, rat(0));
        assert_eq!(zero.attaining_face.vertex_indices.len(), 5);

        let yz = support_min(&p, &v(&[0, 1, 1])).unwrap();
        assert_eq!(yz.value, rat(1));
        assert_eq!(yz.attaining_face.vertex_indices.len(), 4);
        assert_eq!(yz.attaining_face.dim, 2);
        assert!(support_min(&p, &v(&[1, 0])).is_err());
    }

    #[test]
    fn y_t_examples() {
        let p = pyramid();
        assert_eq!(y_t(&p, &v(&[1, 0, 0])).unwrap(), rat(0));
        assert_eq!(y_t(&p, &v(&[-1, 0, 0])).unwrap(), rat(1));
        assert_eq!(y_t(&p, &v(&[0, 0, 0])).unwrap(), rat(0));
    }

    #[test]
    fn y_t_can_be_negative() {
        let p = Polytope::<Cohomology>::from_int_points(1, &[&[3], &[5]]).unwrap();
        assert_eq!(y_t(&p, &v(&[1])).unwrap(), rat(-3));
    }

    #[test]
    fn seminorm_examples() {
        let c = pyramid().centered();
        assert_eq!(y_seminorm(&c, &v(&[1, 0, 0])).unwrap(), ratio(2, 5));
        assert_eq!(y_seminorm(&c, &v(&[0, 0, 0])).unwrap(), rat(0));
        assert_eq!(y_seminorm(&c, &v(&[0, 1, 1])).unwrap(), ratio(1, 5));
        assert_eq!(z_symmetrized(&c, &v(&[1, 0, 0])).unwrap(), ratio(1, 2));
        assert_eq!(z_symmetrized(&c, &v(&[0, 0, 0])).unwrap(), rat(0));
    }

    #[test]
    fn uncentred_input_is_rejected() {
        let err = y_seminorm(&pyramid(), &v(&[1, 0, 0])).unwrap_err();
        assert_eq!(err, Error::NotCentered { centroid: "(2/5, 3/5, 3/5)".into() });
        assert!(z_symmetrized(&pyramid(), &v(&[1, 0, 0])).is_err());
        assert!(unit_ball(&pyramid()).is_err());
    }

    #[test]
    fn square_ball_is_cross_polytope() {
        let sq = Polytope::<Cohomology>::from_int_points(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let NormBall::Bounded(b) = unit_ball(&sq).unwrap() else { panic!("square ball is bounded") };
        let expected = Polytope::<Homology>::from_int_points(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn pyramid_ball_has_one_facet_per_vertex() {
        let ball = unit_ball(&pyramid().centered()).unwrap();
        assert!(ball.is_bounded());
        assert_eq!(ball.facets().unwrap().len(), 5);
    }

    #[test]
    fn segment_ball_is_unbounded() {
        let seg = Polytope::<Cohomology>::from_int_points(2, &[&[-1, 0], &[1, 0]]).unwrap();
        let ball = unit_ball(&seg).unwrap();
        assert!(!ball.is_bounded());
        assert!(ball.contains(&v(&[0, 1000])).unwrap());
        assert!(!ball.contains(&v(&[2, 0])).unwrap());
        assert!(ball.facets().is_err());
    }

    #[test]
    fn ball_facet_cones_are_negated_dual_cones() {
        let c = pyramid().centered();
        let cones = ball_facet_cones(&c).unwrap();
        let sys = dual_cones(&c);
        for (i, cone) in cones.iter().enumerate() {
            let negated: BTreeSet<ExactVector> = sys.cones()[i].generators().iter().map(|g| -g).collect();
            assert_eq!(cone.ray_set(), negated);
        }
    }

    #[test]
    fn complexity_examples() {
        let one = |euler, n, beta| SurfaceComplexityData {
            components: vec![SurfaceComponent { euler, suture_count: n, beta_count: beta }],
        };
        assert_eq!(chi_minus(&one(2, 0, 0)), 0);
        assert_eq!(chi_minus(&one(-2, 0, 0)), 2);
        let two = SurfaceComplexityData {
            components: vec![
                SurfaceComponent { euler: -1, suture_count: 0, beta_count: 0 },
                SurfaceComponent { euler: -3, suture_count: 0, beta_count: 3 },
            ],
        };
        assert_eq!(chi_minus(&two), 4);

        assert_eq!(chi_beta(&one(1, 0, 2)), 1);
        assert_eq!(chi_beta(&one(2, 0, 1)), 0);
        let mixed = SurfaceComplexityData {
            components: vec![
                SurfaceComponent { euler: -1, suture_count: 0, beta_count: 0 },
                SurfaceComponent { euler: 0, suture_count: 0, beta_count: 3 },
            ],
        };
        assert_eq!(chi_beta(&mixed), 4);

        assert_eq!(chi_s_minus(&one(1, 4, 0)), rat(1));
        assert_eq!(chi_s_minus(&one(1, 3, 0)), ratio(1, 2));
        assert_eq!(chi_s_minus(&one(0, 0, 0)), rat(0));
    }

    #[test]
    fn trivialization_examples() {
        let t = |euler, index_sum, rotation_sum| TrivializationSummand { euler, index_sum, rotation_sum };
        assert_eq!(c_s_t(&t(1, rat(-2), 0)), rat(-1));
        assert_eq!(c_s_t(&t(0, rat(0), 0)), rat(0));
        assert_eq!(c_s_t(&t(-2, ratio(-3, 2), 1)), ratio(-9, 2));
        assert_eq!(index_from_suture_count(4), rat(-2));
        assert_eq!(index_from_suture_count(0), rat(0));
        assert_eq!(index_from_suture_count(3), ratio(-3, 2));
    }

    #[test]
    fn surface_json() {
        let s: SurfaceComplexityData =
            serde_json::from_str(r#"{"components": [{"chi": -1, "n": 4, "beta": 0}]}"#).unwrap();
        assert_eq!(s.components[0], SurfaceComponent { euler: -1, suture_count: 4, beta_count: 0 });
        assert!(serde_json::from_str::<SurfaceComplexityData>(r#"{"components": [{"chi": 1, "n": -4}]}"#).is_err());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
    }

    fn vector(d: usize) -> impl Strategy<Value = ExactVector> {
        proptest::collection::vec(rational(), d).prop_map(ExactVector::new)
    }

    fn centred_full_dim() -> impl Strategy<Value = Polytope> {
        (2usize..=3)
            .prop_flat_map(|d| proptest::collection::vec(proptest::collection::vec(-4i64..=4, d), d + 1..=7))
            .prop_map(|pts| {
                let d = pts[0].len();
                Polytope::from_points(d, pts.iter().map(|x| ExactCovector::from_ints(x)).collect()).unwrap()
            })
            .prop_filter("full-dimensional", |p| p.is_full_dimensional())
            .prop_map(|p| p.centered())
    }

    /// Components with even suture count (the boundary alternates between the
    /// two sides of the sutures) that satisfy `−χ + n ≥ 0`, with `β = n`.
    fn surface() -> impl Strategy<Value = SurfaceComplexityData> {
        proptest::collection::vec((-6i64..=2, 0u64..=6), 1..=5).prop_map(|cs| SurfaceComplexityData {
            components: cs
                .into_iter()
                .map(|(euler, half)| {
                    let n = if euler == 2 { 0 } else { 2 * half };
                    SurfaceComponent { euler, suture_count: n, beta_count: n }
                })
                .filter(|c| c.suture_count as i64 - c.euler >= 0)
                .collect(),
        })
    }

    proptest! {
        #[test]
        fn homogeneity(p in centred_full_dim(), a in vector(3), n in 1i64..30, d in 1i64..30) {
            let a = ExactVector::new(a.coords()[..p.ambient_dim()].to_vec());
            let l = ratio(n, d);
            prop_assert_eq!(y_t(&p, &a.scale(&l)).unwrap(), &l * y_t(&p, &a).unwrap());
            prop_assert_eq!(y_seminorm(&p, &a.scale(&l)).unwrap(), &l * y_seminorm(&p, &a).unwrap());
        }

        #[test]
        fn triangle_inequality(p in centred_full_dim(), a in vector(3), b in vector(3), w in proptest::collection::vec(-5i64..=5, 3)) {
            let d = p.ambient_dim();
            let a = ExactVector::new(a.coords()[..d].to_vec());
            let b = ExactVector::new(b.coords()[..d].to_vec());
            let shifted = p.translate(&ExactCovector::from_ints(&w[..d])).unwrap();
            prop_assert!(y_t(&shifted, &(&a + &b)).unwrap() <= y_t(&shifted, &a).unwrap() + y_t(&shifted, &b).unwrap());
            prop_assert!(y_seminorm(&p, &(&a + &b)).unwrap() <= y_seminorm(&p, &a).unwrap() + y_seminorm(&p, &b).unwrap());
        }

        #[test]
        fn ball_matches_norm(p in centred_full_dim(), a in vector(3)) {
            let a = ExactVector::new(a.coords()[..p.ambient_dim()].to_vec());
            let ball = unit_ball(&p).unwrap();
            prop_assert_eq!(y_seminorm(&p, &a).unwrap() <= rat(1), ball.contains(&a).unwrap());
        }

        #[test]
        fn ball_matches_norm_on_segments(x in -5i64..=5, a in vector(2)) {
            prop_assume!(x != 0);
            let seg = Polytope::<Cohomology>::from_int_points(2, &[&[x, 2 * x], &[-x, -2 * x]]).unwrap();
            let ball = unit_ball(&seg).unwrap();
            prop_assert!(!ball.is_bounded());
            prop_assert_eq!(y_seminorm(&seg, &a).unwrap() <= rat(1), ball.contains(&a).unwrap());
        }

        #[test]
        fn polar_involution(p in centred_full_dim()) {
            let neg = p.negate();
            prop_assert_eq!(neg.polar().unwrap().polar().unwrap(), neg);
        }

        #[test]
        fn symmetric_part_is_even(p in centred_full_dim(), a in vector(3)) {
            let a = ExactVector::new(a.coords()[..p.ambient_dim()].to_vec());
            prop_assert_eq!(z_symmetrized(&p, &a).unwrap(), z_symmetrized(&p, &-&a).unwrap());
        }

        #[test]
        fn chi_identity(s in surface()) {
            prop_assert_eq!(
                rat(chi_beta(&s) as i64),
                rat(2) * chi_s_minus(&s) + rat(s.euler_total())
            );
        }

        #[test]
        fn lineality_of_unbounded_ball(p in centred_full_dim()) {
            // a flattened copy of p gains the last axis as a kernel direction
            let d = p.ambient_dim();
            let lifted = p.vertices().iter().map(|v| {
                let mut xs = v.coords().to_vec();
                xs.push(rat(0));
                ExactCovector::new(xs)
            });
            let flat = Polytope::from_points(d + 1, lifted.collect()).unwrap();
            let ball = unit_ball(&flat).unwrap();
            let mut kernel = vec![rat(0); d + 1];
            kernel[d] = rat(77);
            prop_assert!(ball.contains(&ExactVector::new(kernel)).unwrap());
            let m = ExactMatrix::from_rows(flat.vertices()).unwrap();
            prop_assert_eq!(m.nullspace().len(), 1);
        }
    }
}
