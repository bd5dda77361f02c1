//! Free differential calculus with coefficients in the group ring of a
//! free abelian group.
//!
//! Words are abelianized as they are read, so every derivative is a Laurent
//! polynomial in `b` variables. Generators are written `x1, x2, …` and
//! inverses `x1^-1`; powers `x2^3` are expanded when parsed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ExactCovector, Rational};
use crate::polytope::{LabeledSupport, Polytope, RankLabel};

/// A freely reduced word. Letters are `(generator, ±1)` with 0-based generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    /// Reduces the letters as it goes; any nonzero sign counts as its direction.
    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, s) in letters {
            let s = s.signum();
            if s == 0 {
                continue;
            }
            match out.last() {
                Some(&(h, t)) if h == g && t == -s => {
                    out.pop();
                }
                _ => out.push((g, s)),
            }
        }
        FreeWord { letters: out }
    }

    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: usize) -> Self {
        FreeWord { letters: vec![(g, 1)] }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|&(g, s)| (g, -s)).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        FreeWord::new(self.letters.iter().chain(&other.letters).copied())
    }

    /// Strips conjugating letters from both ends.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let mut i = 0;
        while i + 1 < l.len() - i && l[i].0 == l[l.len() - 1 - i].0 && l[i].1 == -l[l.len() - 1 - i].1 {
            i += 1;
        }
        FreeWord { letters: l[i..l.len() - i].to_vec() }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Parses whitespace-separated tokens `xN`, `xN^-1`, `xN^k`; `1` or an
    /// empty string is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => {
                    let p: i64 = p.parse().map_err(|_| Error::Parse(format!("bad exponent in token {tok:?}")))?;
                    (b, p)
                }
                None => (tok, 1),
            };
            let index: usize = base
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::Parse(format!("expected a generator like x1, got {tok:?}")))?;
            let sign = if power < 0 { -1 } else { 1 };
            letters.extend(std::iter::repeat_n((index - 1, sign), power.unsigned_abs() as usize));
        }
        Ok(FreeWord::new(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let tokens =
            self.letters.iter().map(|&(g, s)| if s > 0 { format!("x{}", g + 1) } else { format!("x{}^-1", g + 1) });
        write!(f, "{}", tokens.format(" "))
    }
}

/// Generators and relators; relators are stored cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_count: usize,
    relators: Vec<FreeWord>,
}

impl GroupPresentation {
    pub fn new(generator_count: usize, relators: Vec<FreeWord>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::Empty("presentation without generators"));
        }
        for r in &relators {
            check_generators(r, generator_count)?;
        }
        let relators = relators.iter().map(FreeWord::cyclically_reduced).collect();
        Ok(GroupPresentation { generator_count, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }
}

fn check_generators(w: &FreeWord, count: usize) -> Result<()> {
    match w.max_generator() {
        Some(g) if g >= count => Err(Error::GeneratorOutOfRange { index: g, count }),
        _ => Ok(()),
    }
}

/// A homomorphism from the free group onto a lattice `ℤ^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    rank: usize,
    images: Vec<Vec<i64>>,
}

impl AbelianizationMap {
    pub fn new(rank: usize, images: Vec<Vec<i64>>) -> Result<Self> {
        for im in &images {
            if im.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: im.len() });
            }
        }
        Ok(AbelianizationMap { rank, images })
    }

    /// Same map, checked to kill every relator of `pr`.
    pub fn validated(rank: usize, images: Vec<Vec<i64>>, pr: &GroupPresentation) -> Result<Self> {
        let ab = Self::new(rank, images)?;
        ab.validate(pr)?;
        Ok(ab)
    }

    pub fn validate(&self, pr: &GroupPresentation) -> Result<()> {
        if self.images.len() != pr.generator_count {
            return Err(Error::DimensionMismatch { expected: pr.generator_count, found: self.images.len() });
        }
        for (i, r) in pr.relators.iter().enumerate() {
            let image = self.apply(r)?;
            if image.iter().any(|&x| x != 0) {
                return Err(Error::RelatorNotInKernel { relator: i, image: format!("{image:?}") });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<Vec<i64>> {
        check_generators(w, self.images.len())?;
        let mut acc = vec![0; self.rank];
        for &(g, s) in w.letters() {
            for (a, x) in acc.iter_mut().zip(&self.images[g]) {
                *a += s as i64 * x;
            }
        }
        Ok(acc)
    }
}

/// Finitely supported integer combination of monomials `t^e`, `e ∈ ℤ^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exp: Vec<i64>, coef: BigInt) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coef);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, BigInt::from(c));
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<i64>, coef: BigInt) {
        debug_assert_eq!(exp.len(), self.nvars);
        let entry = self.terms.entry(exp.clone()).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, c)| (x.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ t⁻¹` in every variable.
    pub fn conjugate(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, c)| (x.iter().map(|a| -a).collect(), c.clone())).collect(),
        }
    }

    /// Representative modulo units `±t^e`: exponents shifted so each
    /// coordinate has minimum 0, then the sign fixed so the lexicographically
    /// first coefficient is positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mins: Vec<i64> = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).min().expect("nonzero")).collect();
        let shifted = self.shift(&mins.iter().map(|m| -m).collect::<Vec<_>>());
        let first = shifted.terms.values().next().expect("nonzero");
        if first.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// `f ≐ f(t⁻¹)` up to a unit.
    pub fn is_symmetric(&self) -> bool {
        self.normalized() == self.conjugate().normalized()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Rational = e.iter().zip(point).map(|(&k, x)| pow(x, k)).product();
                mono * Rational::from_integer(c.clone())
            })
            .sum()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }
}

fn pow(x: &Rational, k: i64) -> Rational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &-rhs
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(mut self) -> LaurentPolynomial {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -self.clone()
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for ((a, x), (b, y)) in self.terms.iter().cartesian_product(&rhs.terms) {
            out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Highest exponent first: `t^2 - t + 1`, `t1^-1*t2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = |i: usize| if self.nvars == 1 { "t".to_string() } else { format!("t{}", i + 1) };
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { var(i) } else { format!("{}^{}", var(i), x) })
                .collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", mag, mono.join("*")),
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Image of `∂w/∂g` in `ℤ[ℤ^b]`, read left to right.
pub fn fox_derivative(w: &FreeWord, g: usize, ab: &AbelianizationMap) -> Result<LaurentPolynomial> {
    let n = ab.generator_count();
    if g >= n {
        return Err(Error::GeneratorOutOfRange { index: g, count: n });
    }
    check_generators(w, n)?;
    let mut prefix = vec![0i64; ab.rank];
    let mut out = LaurentPolynomial::zero(ab.rank);
    for &(h, s) in w.letters() {
        let step = &ab.images[h];
        if s > 0 {
            if h == g {
                out.add_term(prefix.clone(), BigInt::one());
            }
            prefix.iter_mut().zip(step).for_each(|(p, x)| *p += x);
        } else {
            prefix.iter_mut().zip(step).for_each(|(p, x)| *p -= x);
            if h == g {
                out.add_term(prefix.clone(), -BigInt::one());
            }
        }
    }
    Ok(out)
}

/// `Σ_g (∂w/∂g)(t^{ab(g)} − 1) − (t^{ab(w)} − 1)`, which vanishes for every word.
pub fn fundamental_identity_residual(w: &FreeWord, ab: &AbelianizationMap) -> Result<LaurentPolynomial> {
    let one = LaurentPolynomial::one(ab.rank);
    let mut acc = LaurentPolynomial::zero(ab.rank);
    for g in 0..ab.generator_count() {
        let unit = LaurentPolynomial::monomial(ab.images[g].clone(), BigInt::one());
        acc = &acc + &(&fox_derivative(w, g, ab)? * &(&unit - &one));
    }
    let total = LaurentPolynomial::monomial(ab.apply(w)?, BigInt::one());
    Ok(&acc - &(&total - &one))
}

/// Rows indexed by relators, columns by generators.
pub fn alexander_matrix(pr: &GroupPresentation, ab: &AbelianizationMap) -> Result<Vec<Vec<LaurentPolynomial>>> {
    ab.validate(pr)?;
    jacobian(pr.relators(), pr.generator_count(), ab)
}

fn jacobian(words: &[FreeWord], n: usize, ab: &AbelianizationMap) -> Result<Vec<Vec<LaurentPolynomial>>> {
    words.iter().map(|w| (0..n).map(|g| fox_derivative(w, g, ab)).collect()).collect()
}

/// Determinant by cofactor expansion along the first row. The empty matrix has determinant 1.
pub fn determinant(m: &[Vec<LaurentPolynomial>], nvars: usize) -> LaurentPolynomial {
    match m.len() {
        0 => LaurentPolynomial::one(nvars),
        1 => m[0][0].clone(),
        n => {
            let mut acc = LaurentPolynomial::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPolynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Normalized determinant of the Alexander matrix with a column removed.
/// Every column is tried and the results must agree.
pub fn alexander_polynomial(pr: &GroupPresentation, ab: &AbelianizationMap) -> Result<LaurentPolynomial> {
    let n = pr.generator_count();
    if pr.relators().len() + 1 != n {
        return Err(Error::Deficiency { generators: n, relators: pr.relators().len() });
    }
    let m = alexander_matrix(pr, ab)?;
    let mut result: Option<LaurentPolynomial> = None;
    for j in 0..n {
        let minor: Vec<Vec<LaurentPolynomial>> = m
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = determinant(&minor, ab.rank).normalized();
        match &result {
            None => result = Some(d),
            Some(first) if *first != d => {
                return Err(Error::MinorDisagreement { first: first.to_string(), second: d.to_string() })
            }
            Some(_) => {}
        }
    }
    Ok(result.expect("at least one generator"))
}

/// A homomorphism between free groups given by the images of the source
/// generators, written in the target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroupMap {
    target_rank: usize,
    images: Vec<FreeWord>,
}

impl FreeGroupMap {
    pub fn new(target_rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        for w in &images {
            check_generators(w, target_rank)?;
        }
        Ok(FreeGroupMap { target_rank, images })
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }
}

/// Normalized determinant of the square Fox Jacobian of a map between free
/// groups of equal rank, with coefficients abelianized in the target.
pub fn jacobian_torsion(map: &FreeGroupMap, ab: &AbelianizationMap) -> Result<LaurentPolynomial> {
    let n = map.target_rank;
    if map.images.len() != n {
        return Err(Error::NonSquareJacobian { images: map.images.len(), generators: n });
    }
    if ab.generator_count() != n {
        return Err(Error::DimensionMismatch { expected: n, found: ab.generator_count() });
    }
    let m = jacobian(&map.images, n, ab)?;
    Ok(determinant(&m, ab.rank).normalized())
}

/// Convex hull of the exponents with nonzero coefficient.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<Polytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Polytope::from_points(f.nvars, f.exponents().map(|e| ExactCovector::from_ints(e)).collect())
}

/// Exponents labeled by `|coefficient|`. With `lspace` a point is exactly ℤ
/// when its coefficient is ±1, and any other magnitude raises the warning.
pub fn labeled_support(f: &LaurentPolynomial, lspace: bool) -> Result<LabeledSupport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut warning = false;
    let entries: Vec<(ExactCovector, RankLabel)> = f
        .terms
        .iter()
        .map(|(e, c)| {
            let rank = c.abs();
            let unit = rank.is_one();
            warning |= lspace && !unit;
            let rank = u64::try_from(rank).unwrap_or(u64::MAX);
            (ExactCovector::from_ints(e), RankLabel { rank, is_exactly_z: lspace && unit })
        })
        .collect();
    Ok(LabeledSupport::new(f.nvars, entries)?.with_warning(warning))
}

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoxInput {
    /// Relators of a deficiency-one presentation.
    Presentation { presentation: GroupPresentation, abelianization: AbelianizationMap },
    /// Images of the generators of a free subgroup.
    SurfaceMap { map: FreeGroupMap, abelianization: AbelianizationMap },
}

impl FoxInput {
    /// Alexander polynomial or Jacobian torsion, whichever the file describes.
    pub fn polynomial(&self) -> Result<LaurentPolynomial> {
        match self {
            FoxInput::Presentation { presentation, abelianization } => {
                alexander_polynomial(presentation, abelianization)
            }
            FoxInput::SurfaceMap { map, abelianization } => jacobian_torsion(map, abelianization),
        }
    }

    pub fn abelianization(&self) -> &AbelianizationMap {
        match self {
            FoxInput::Presentation { abelianization, .. } | FoxInput::SurfaceMap { abelianization, .. } => {
                abelianization
            }
        }
    }

    /// Every word the file lists: relators or generator images.
    pub fn words(&self) -> &[FreeWord] {
        match self {
            FoxInput::Presentation { presentation, .. } => presentation.relators(),
            FoxInput::SurfaceMap { map, .. } => map.images(),
        }
    }
}

/// Reads
///
/// ```text
/// generators: 2
/// abelianization: 1
/// 1
/// 1
/// x1 x2 x1 x2^-1 x1^-1 x2^-1
/// ```
///
/// An optional `kind: surface-map` line after the lattice vectors switches
/// the remaining lines from relators to generator images. Blank lines and
/// `#` comments are skipped.
pub fn parse_fox_input(text: &str) -> Result<FoxInput> {
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let header = |line: Option<&str>, key: &str| -> Result<usize> {
        let line = line.ok_or_else(|| Error::Parse(format!("missing `{key}:` line")))?;
        let (k, v) =
            line.split_once(':').ok_or_else(|| Error::Parse(format!("expected `{key}: <n>`, got {line:?}")))?;
        if k.trim() != key {
            return Err(Error::Parse(format!("expected `{key}:`, got {line:?}")));
        }
        v.trim().parse().map_err(|_| Error::Parse(format!("bad count in {line:?}")))
    };
    let n = header(lines.next(), "generators")?;
    let b = header(lines.next(), "abelianization")?;
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines.next().ok_or_else(|| Error::Parse(format!("missing lattice vector for x{}", i + 1)))?;
        let v: Vec<i64> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad lattice vector {line:?}"))))
            .collect::<Result<_>>()?;
        if v.len() != b {
            return Err(Error::Parse(format!("lattice vector {line:?} should have {b} entries")));
        }
        images.push(v);
    }
    let mut rest: Vec<&str> = lines.collect();
    let mut surface_map = false;
    if let Some(first) = rest.first() {
        if let Some((k, v)) = first.split_once(':') {
            if k.trim() != "kind" {
                return Err(Error::Parse(format!("unknown header {first:?}")));
            }
            surface_map = match v.trim() {
                "surface-map" => true,
                "presentation" => false,
                other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
            };
            rest.remove(0);
        }
    }
    let words: Vec<FreeWord> = rest.iter().map(|l| FreeWord::parse(l)).collect::<Result<_>>()?;
    let ab = AbelianizationMap::new(b, images)?;
    if surface_map {
        Ok(FoxInput::SurfaceMap { map: FreeGroupMap::new(n, words)?, abelianization: ab })
    } else {
        let presentation = GroupPresentation::new(n, words)?;
        ab.validate(&presentation)?;
        Ok(FoxInput::Presentation { presentation, abelianization: ab })
    }
}
