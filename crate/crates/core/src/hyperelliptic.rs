//! Exact Möbius equivalence of finite subsets of the rational projective
//! line.
//!
//! Everything here is over `Q`: a negative answer from
//! [`moebius_equivalent`] means no rational Möbius map exists, which says
//! nothing about maps defined over larger fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperellError {
    #[error("parameter {0} collides with a fixed branch point")]
    ExcludedParameter(String),
    #[error("genus must be at least 3, got {0}")]
    GenusTooSmall(i64),
    #[error("branch sets have sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("a branch set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("duplicate branch point {0}")]
    DuplicatePoint(String),
    #[error("singular Möbius matrix")]
    Degenerate,
    #[error("cannot parse `{0}` as a rational or `inf`")]
    Parse(String),
}

/// A point of `P^1(Q)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(BigRational),
    Infinity,
}

impl ProjPoint {
    pub fn integer(n: i64) -> Self {
        ProjPoint::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ProjPoint::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Homogeneous coordinates `[x : y]`, with `[1 : 0]` at infinity.
    pub fn homogeneous(&self) -> (BigRational, BigRational) {
        match self {
            ProjPoint::Finite(r) => (r.clone(), BigRational::one()),
            ProjPoint::Infinity => (BigRational::one(), BigRational::zero()),
        }
    }

    pub fn from_homogeneous(x: BigRational, y: BigRational) -> Self {
        if y.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(x / y)
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(r) => write!(f, "{r}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ProjPoint {
    type Err = HyperellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(ProjPoint::Infinity);
        }
        let err = || HyperellError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(ProjPoint::Finite(BigRational::new(num, den)))
    }
}

/// A set of at least three distinct points, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BranchSet {
    points: Vec<ProjPoint>,
}

impl BranchSet {
    pub fn new(mut points: Vec<ProjPoint>) -> Result<Self, HyperellError> {
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(HyperellError::DuplicatePoint(w[0].to_string()));
        }
        if points.len() < 3 {
            return Err(HyperellError::TooFewPoints(points.len()));
        }
        Ok(BranchSet { points })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Parses comma-separated rationals and `inf`.
    pub fn parse(s: &str) -> Result<Self, HyperellError> {
        let points = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points)
    }
}

impl fmt::Display for BranchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for BranchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `z -> (a z + b) / (c z + d)`, scaled so the first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    m: [[BigRational; 2]; 2],
}

impl MoebiusMap {
    pub fn new(m: [[BigRational; 2]; 2]) -> Result<Self, HyperellError> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(HyperellError::Degenerate);
        }
        let lead = [&m[0][0], &m[0][1], &m[1][0], &m[1][1]]
            .into_iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("nonzero determinant");
        let m = m.map(|row| row.map(|x| x / &lead));
        Ok(MoebiusMap { m })
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Result<Self, HyperellError> {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        Self::new([[r(a), r(b)], [r(c), r(d)]])
    }

    pub fn identity() -> Self {
        Self::from_integers(1, 0, 0, 1).expect("nonsingular")
    }

    pub fn matrix(&self) -> &[[BigRational; 2]; 2] {
        &self.m
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let (x, y) = p.homogeneous();
        let [[a, b], [c, d]] = &self.m;
        ProjPoint::from_homogeneous(a * &x + b * &y, c * &x + d * &y)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let [[a, b], [c, d]] = &self.m;
        let [[p, q], [r, s]] = &other.m;
        MoebiusMap::new([
            [a * p + b * r, a * q + b * s],
            [c * p + d * r, c * q + d * s],
        ])
        .expect("product of nonsingular matrices")
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [[a, b], [c, d]] = &self.m;
        MoebiusMap::new([[d.clone(), -b], [-c, a.clone()]]).expect("nonsingular")
    }

    /// The unique map sending `(1:0), (0:1), (1:1)` to `p1, p2, p3`.
    fn from_standard_frame(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> MoebiusMap {
        // Columns l1 * p1 and l2 * p2 with l1 * p1 + l2 * p2 = p3.
        let (x1, y1) = p1.homogeneous();
        let (x2, y2) = p2.homogeneous();
        let (x3, y3) = p3.homogeneous();
        let det = &x1 * &y2 - &x2 * &y1;
        let l1 = (&x3 * &y2 - &x2 * &y3) / &det;
        let l2 = (&x1 * &y3 - &x3 * &y1) / &det;
        MoebiusMap::new([[&l1 * &x1, &l2 * &x2], [&l1 * &y1, &l2 * &y2]])
            .expect("distinct points give a nonsingular frame")
    }

    /// The unique map sending `p_i` to `q_i` for distinct triples.
    pub fn through_three(p: [&ProjPoint; 3], q: [&ProjPoint; 3]) -> MoebiusMap {
        let to_p = Self::from_standard_frame(p[0], p[1], p[2]);
        let to_q = Self::from_standard_frame(q[0], q[1], q[2]);
        to_q.compose(&to_p.inverse())
    }

    /// Largest absolute numerator or denominator among the entries.
    pub fn height(&self) -> BigInt {
        self.m
            .iter()
            .flatten()
            .flat_map(|x| [x.numer().abs(), x.denom().abs()])
            .max()
            .expect("four entries")
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Roots of `(z - a)(z + 2g) * prod_{i=0}^{2g-1} (z - i)`.
pub fn catanese_branch_set(genus: i64, a: &ProjPoint) -> Result<BranchSet, HyperellError> {
    if genus < 3 {
        return Err(HyperellError::GenusTooSmall(genus));
    }
    let mut points: Vec<ProjPoint> = (0..2 * genus).map(ProjPoint::integer).collect();
    points.push(ProjPoint::integer(-2 * genus));
    if points.contains(a) || *a == ProjPoint::Infinity {
        return Err(HyperellError::ExcludedParameter(a.to_string()));
    }
    points.push(a.clone());
    BranchSet::new(points)
}

pub fn apply(m: &MoebiusMap, set: &BranchSet) -> BranchSet {
    BranchSet::new(set.points.iter().map(|p| m.apply_point(p)).collect())
        .expect("a Möbius map is a bijection")
}

/// A rational Möbius map carrying `b1` onto `b2`, if one exists.
///
/// A map is fixed by the images of three points, so the three least points
/// of `b1` are sent to every ordered triple of `b2` in lexicographic order of
/// indices, and the first candidate that maps the whole set is returned.
pub fn moebius_equivalent(
    b1: &BranchSet,
    b2: &BranchSet,
) -> Result<Option<MoebiusMap>, HyperellError> {
    if b1.len() != b2.len() {
        return Err(HyperellError::SizeMismatch(b1.len(), b2.len()));
    }
    let p = [&b1.points[0], &b1.points[1], &b1.points[2]];
    let n = b2.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let q = [&b2.points[i], &b2.points[j], &b2.points[k]];
                let m = MoebiusMap::through_three(p, q);
                if b1.points[3..]
                    .iter()
                    .all(|x| b2.contains(&m.apply_point(x)))
                {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}
