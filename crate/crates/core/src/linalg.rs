//! Exact rational scalars, coordinate tuples and Gaussian elimination.
//!
//! Coordinates come in two flavours that must never be mixed up: classes in
//! relative second homology (where surfaces and foliation cones live) and
//! classes in relative second cohomology (where Chern-class images and the
//! polytope live). Both are [`Coords`], tagged with a [`Side`] marker, and
//! only [`pairing`] combines one of each.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches('+').chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
    }
    Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational literal: {t:?}")))
}

/// Prints `p` for integers and `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Marker for which side of the homology/cohomology pairing a tuple lives on.
pub trait Side:
    Copy + Clone + fmt::Debug + Default + PartialEq + Eq + PartialOrd + Ord + std::hash::Hash + 'static
{
    type Dual: Side<Dual = Self>;
    const NAME: &'static str;
}

/// H₂(M, ∂M): surface classes, functionals on the polytope, cone rays.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Homology;

/// H²(M, ∂M): Chern-class images, polytope vertices.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cohomology;

impl Side for Homology {
    type Dual = Cohomology;
    const NAME: &'static str = "homology";
}

impl Side for Cohomology {
    type Dual = Homology;
    const NAME: &'static str = "cohomology";
}

/// A rational coordinate tuple on one side of the pairing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coords<S: Side> {
    coords: Vec<Rational>,
    side: PhantomData<S>,
}

/// Element of H₂(M, ∂M; ℚ).
pub type ExactVector = Coords<Homology>;
/// Element of H²(M, ∂M; ℚ).
pub type ExactCovector = Coords<Cohomology>;

impl<S: Side> Coords<S> {
    pub fn new(coords: Vec<Rational>) -> Self {
        Coords { coords, side: PhantomData }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis tuple.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = Rational::one();
        v
    }

    /// Parses a comma-separated list of rational literals, e.g. `"1,0,-1/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coords))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coords.iter().map(|c| c * k).collect())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(self - other)
    }

    /// Reinterprets the coordinates on the other side of the pairing via the
    /// standard basis and its dual basis.
    pub fn transpose(&self) -> Coords<S::Dual> {
        Coords::new(self.coords.clone())
    }

    /// Coprime integer multiple pointing in the same direction.
    ///
    /// The zero tuple is returned unchanged.
    pub fn primitive(&self) -> Self {
        Self::new(primitive_coords(&self.coords))
    }

    /// Primitive representative of the line through `self`, with the first
    /// nonzero entry positive.
    pub fn line_representative(&self) -> Self {
        let p = self.primitive();
        match p.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -p,
            _ => p,
        }
    }

    /// True when both are positive multiples of each other (zero only matches zero).
    pub fn same_ray(&self, other: &Self) -> bool {
        self.primitive() == other.primitive()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl<S: Side> fmt::Display for Coords<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<S: Side> Add for &Coords<S> {
    type Output = Coords<S>;

    fn add(self, rhs: Self) -> Coords<S> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        Coords::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl<S: Side> Sub for &Coords<S> {
    type Output = Coords<S>;

    fn sub(self, rhs: Self) -> Coords<S> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        Coords::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl<S: Side> Neg for Coords<S> {
    type Output = Coords<S>;

    fn neg(self) -> Coords<S> {
        Coords::new(self.coords.into_iter().map(|c| -c).collect())
    }
}

impl<S: Side> Neg for &Coords<S> {
    type Output = Coords<S>;

    fn neg(self) -> Coords<S> {
        -self.clone()
    }
}

/// The evaluation pairing ⟨c, a⟩ between a class and a dual class.
pub fn pairing<S: Side>(c: &Coords<S>, a: &Coords<S::Dual>) -> Result<Rational> {
    check_dim(c.dim(), a.dim())?;
    Ok(dot(&c.coords, &a.coords))
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn primitive_coords(xs: &[Rational]) -> Vec<Rational> {
    let lcm = xs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = xs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return xs.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// A dense rational matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl ExactMatrix {
    /// Builds a matrix from raw rows; every row must have `cols` entries.
    pub fn new(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        for r in &rows {
            check_dim(cols, r.len())?;
        }
        Ok(ExactMatrix { rows, cols })
    }

    pub fn from_rows<S: Side>(rows: &[Coords<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Coords::dim);
        Self::new(rows.iter().map(|r| r.coords.clone()).collect(), cols)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        ExactMatrix { rows, cols: n }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows: vec![vec![Rational::zero(); cols]; rows], cols }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        ExactMatrix { rows, cols: self.rows.len() }
    }

    pub fn rank(&self) -> usize {
        rref(self.rows.clone(), self.cols).1.len()
    }

    /// Multiplies the matrix by a column of raw coordinates.
    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        check_dim(self.cols, x.len())?;
        Ok(self.rows.iter().map(|r| dot(r, x)).collect())
    }

    /// One exact solution of `m·x = b`, or `None` when the system is
    /// inconsistent. Free variables are pinned to zero.
    pub fn solve<S: Side>(&self, b: &Coords<S>) -> Result<Option<Coords<S>>> {
        Ok(self.solve_raw(b.coords())?.map(Coords::new))
    }

    pub(crate) fn solve_raw(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        check_dim(self.row_count(), b.len())?;
        let aug: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut row = r.clone();
                row.push(bi.clone());
                row
            })
            .collect();
        let (red, pivots) = rref(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in red.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Basis of the right null space `{x : m·x = 0}`, one vector per free
    /// column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = rref(self.rows.clone(), self.cols);
        (0..self.cols)
            .filter(|j| !pivots.contains(j))
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (row, &p) in red.iter().zip(&pivots) {
                    x[p] = -row[free].clone();
                }
                x
            })
            .collect()
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    rref(rows.to_vec(), cols).1.len()
}
