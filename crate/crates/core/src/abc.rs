//! Bidouble covers of the quadric `P^1 x P^1` and abc-surfaces: invariant
//! formulas, the diffeomorphism step between `(a, b, c)` and
//! `(a + 1, b, c - 1)`, and the non-deformation-equivalence conditions.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::SurfaceInvariants;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbcError {
    #[error("bidouble type entries must be at least 3, got ({0}, {1}, {2}, {3})")]
    BelowBound(i64, i64, i64, i64),
    #[error("abc type entries must be positive, got ({0}, {1}, {2})")]
    NonPositive(i64, i64, i64),
}

/// Bidegrees `(2a, 2b)` and `(2c, 2d)` of a bidouble cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BidoubleType {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl BidoubleType {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, AbcError> {
        if a < 3 || b < 3 || c < 3 || d < 3 {
            return Err(AbcError::BelowBound(a, b, c, d));
        }
        Ok(BidoubleType { a, b, c, d })
    }

    pub fn abc(&self) -> Option<AbcType> {
        (self.b == self.d).then_some(AbcType {
            a: self.a,
            b: self.b,
            c: self.c,
        })
    }
}

/// Simple bidouble type `(2a, 2b), (2c, 2b)`.
///
/// Entries below 3 are admitted (the diffeomorphism step is stated for
/// entries down to 2) and are flagged by [`AbcType::below_standard_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbcType {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl AbcType {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, AbcError> {
        if a < 1 || b < 1 || c < 1 {
            return Err(AbcError::NonPositive(a, b, c));
        }
        Ok(AbcType { a, b, c })
    }

    pub fn below_standard_bound(&self) -> bool {
        self.a < 3 || self.b < 3 || self.c < 3
    }

    /// The pair `(b, a + c)` that fixes the diffeomorphism class.
    pub fn diffeo_key(&self) -> (i64, i64) {
        (self.b, self.a + self.c)
    }
}

/// Which value of `K^2` to match when classifying.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum KsqConvention {
    /// `8 (a + c - 2)(b + d - 2)`, the canonical class pulled back under the
    /// degree-4 cover.
    #[default]
    Pullback,
    /// `(a + c - 2)(b + d - 2)`.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidoubleInvariants {
    #[serde(flatten)]
    pub invariants: SurfaceInvariants,
    pub ksq_paper: i64,
    pub below_standard_bound: bool,
}

impl BidoubleInvariants {
    pub fn ksq(&self, convention: KsqConvention) -> i64 {
        match convention {
            KsqConvention::Pullback => self.invariants.ksq,
            KsqConvention::Paper => self.ksq_paper,
        }
    }
}

fn chi_formula(a: i64, b: i64, c: i64, d: i64) -> i64 {
    1 + (a - 1) * (b - 1) + (c - 1) * (d - 1) + (a + c - 1) * (b + d - 1)
}

fn compute(a: i64, b: i64, c: i64, d: i64, below: bool) -> BidoubleInvariants {
    let chi = chi_formula(a, b, c, d);
    let ksq_paper = (a + c - 2) * (b + d - 2);
    BidoubleInvariants {
        invariants: SurfaceInvariants::from_chi_ksq(chi, 8 * ksq_paper),
        ksq_paper,
        below_standard_bound: below,
    }
}

pub fn bidouble_invariants(t: &BidoubleType) -> BidoubleInvariants {
    compute(t.a, t.b, t.c, t.d, false)
}

pub fn abc_invariants(t: &AbcType) -> BidoubleInvariants {
    compute(t.a, t.b, t.c, t.b, t.below_standard_bound())
}

/// Whether `s2` is `(a + 1, b, c - 1)` or `(a - 1, b, c + 1)` of `s` with the
/// step hypotheses `a, b, c - 1 >= 2` holding for the source of the step.
pub fn diffeo_step(s: &AbcType, s2: &AbcType) -> bool {
    let forward = |from: &AbcType, to: &AbcType| {
        to.a == from.a + 1
            && to.b == from.b
            && to.c == from.c - 1
            && from.a >= 2
            && from.b >= 2
            && from.c - 1 >= 2
    };
    forward(s, s2) || forward(s2, s)
}

/// Breadth-first search over single steps; returns the chain from `s` to
/// `s2` inclusive, or `None`.
pub fn diffeo_equivalent(s: &AbcType, s2: &AbcType) -> Option<Vec<AbcType>> {
    if s.diffeo_key() != s2.diffeo_key() {
        return None;
    }
    if s == s2 {
        return Some(vec![*s]);
    }
    let sum = s.a + s.c;
    let neighbours = |t: AbcType| -> Vec<AbcType> {
        [-1i64, 1]
            .into_iter()
            .map(|da| AbcType {
                a: t.a + da,
                b: t.b,
                c: t.c - da,
            })
            .filter(|n| n.a >= 1 && n.c >= 1 && n.a + n.c == sum && diffeo_step(&t, n))
            .collect()
    };
    let mut parent: HashMap<AbcType, AbcType> = HashMap::new();
    let mut queue = VecDeque::from([*s]);
    parent.insert(*s, *s);
    while let Some(t) = queue.pop_front() {
        for n in neighbours(t) {
            if parent.contains_key(&n) {
                continue;
            }
            parent.insert(n, t);
            if n == *s2 {
                let mut chain = vec![n];
                let mut cur = n;
                while cur != *s {
                    cur = parent[&cur];
                    chain.push(cur);
                }
                chain.reverse();
                return Some(chain);
            }
            queue.push_back(n);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NondefClause {
    I,
    II,
    III,
    IV1,
    IV2,
}

impl NondefClause {
    pub fn label(&self) -> &'static str {
        match self {
            NondefClause::I => "I",
            NondefClause::II => "II",
            NondefClause::III => "III",
            NondefClause::IV1 => "IV1",
            NondefClause::IV2 => "IV2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondefReport {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub k: i64,
    /// Truth value of every clause, in order I, II, III, IV1, IV2.
    pub conditions: Vec<(NondefClause, bool)>,
    pub verdict: bool,
}

impl NondefReport {
    pub fn holds(&self, clause: NondefClause) -> bool {
        self.conditions
            .iter()
            .find(|(c, _)| *c == clause)
            .map(|(_, v)| *v)
            .unwrap_or(false)
    }

    /// Clauses that must hold but do not. IV1 and IV2 are reported only if
    /// both fail.
    pub fn failing(&self) -> Vec<NondefClause> {
        let mut out: Vec<NondefClause> = [NondefClause::I, NondefClause::II, NondefClause::III]
            .into_iter()
            .filter(|c| !self.holds(*c))
            .collect();
        if !self.holds(NondefClause::IV1) && !self.holds(NondefClause::IV2) {
            out.extend([NondefClause::IV1, NondefClause::IV2]);
        }
        out
    }

    /// The two bidouble types `(2a,2b),(2c,2b)` and `(2a+2k,2b),(2c-2k,2b)`.
    pub fn compared_types(&self) -> (AbcType, AbcType) {
        (
            AbcType {
                a: self.a,
                b: self.b,
                c: self.c,
            },
            AbcType {
                a: self.a + self.k,
                b: self.b,
                c: self.c - self.k,
            },
        )
    }
}

/// Sufficient conditions for the simple bidouble covers of types
/// `(2a,2b),(2c,2b)` and `(2a+2k,2b),(2c-2k,2b)` not to be deformation
/// equivalent.
pub fn nondef_predicate(a: i64, b: i64, c: i64, k: i64) -> NondefReport {
    let even_positive = |x: i64| x > 0 && x % 2 == 0;
    let one = [a, b, c, k].into_iter().all(even_positive) && a >= 4 && b >= 4 && c - k >= 4;
    let two = a >= 2 * c + 1;
    let three = b >= c + 2;
    let four_one = b >= 2 * a + 2 * k - 1;
    let four_two = a >= b + 2;
    let conditions = vec![
        (NondefClause::I, one),
        (NondefClause::II, two),
        (NondefClause::III, three),
        (NondefClause::IV1, four_one),
        (NondefClause::IV2, four_two),
    ];
    NondefReport {
        a,
        b,
        c,
        k,
        conditions,
        verdict: one && two && three && (four_one || four_two),
    }
}

/// Types with a common `(b, a + c)`, all sharing one diffeomorphism type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffeoClass {
    pub b: i64,
    pub a_plus_c: i64,
    pub members: Vec<AbcType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub types: Vec<BidoubleType>,
    /// Classes formed by the `d = b` members of `types`.
    pub diffeo_classes: Vec<DiffeoClass>,
}

/// All bidouble types with entries in `3..=bound` whose invariants are
/// `(chi, ksq)` under the chosen convention.
pub fn enumerate_types(
    chi: i64,
    ksq: i64,
    bound: i64,
    convention: KsqConvention,
) -> Classification {
    let mut types = Vec::new();
    for a in 3..=bound {
        for b in 3..=bound {
            if chi_formula(a, b, 3, 3) > chi {
                break;
            }
            for c in 3..=bound {
                if chi_formula(a, b, c, 3) > chi {
                    break;
                }
                for d in 3..=bound {
                    let value = chi_formula(a, b, c, d);
                    // chi is strictly increasing in d.
                    if value > chi {
                        break;
                    }
                    if value < chi {
                        continue;
                    }
                    let t = BidoubleType { a, b, c, d };
                    if bidouble_invariants(&t).ksq(convention) == ksq {
                        types.push(t);
                    }
                }
            }
        }
    }
    let mut grouped: BTreeMap<(i64, i64), Vec<AbcType>> = BTreeMap::new();
    for t in &types {
        if let Some(abc) = t.abc() {
            grouped.entry(abc.diffeo_key()).or_default().push(abc);
        }
    }
    let diffeo_classes = grouped
        .into_iter()
        .map(|((b, a_plus_c), members)| DiffeoClass {
            b,
            a_plus_c,
            members,
        })
        .collect();
    Classification {
        types,
        diffeo_classes,
    }
}
