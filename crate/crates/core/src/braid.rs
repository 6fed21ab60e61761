//! Braid words, factorizations, and the moves that act on them.
//!
//! Braid equality is decided through the Artin action of `B_n` on the free
//! group `F_n`: `σ_i` sends `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i` and
//! fixes the other generators. The action is faithful, so two words are equal
//! in `B_n` iff the freely reduced images of `x_1, …, x_n` agree.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the length of an Artin image word.
pub const DEFAULT_WORD_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid on {0} strands needs at least 2")]
    TooFewStrands(usize),
    #[error("letter {letter} out of range for {strands} strands")]
    BadLetter { letter: i32, strands: usize },
    #[error("strand counts {0} and {1} differ")]
    StrandMismatch(usize, usize),
    #[error("position {position} out of range for {len} factors")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("factors at {0} and {0}+1 are not the node pair for the given conjugator")]
    CancelMismatch(usize),
    #[error("Artin image exceeded {0} letters")]
    BudgetExceeded(usize),
}

/// A word in the Artin generators. Letter `i` is `σ_i`, letter `-i` is
/// `σ_i^-1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::BadLetter { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `σ_i^power`.
    pub fn generator_power(strands: usize, i: i32, power: i32) -> Result<Self, BraidError> {
        let letter = if power < 0 { -i } else { i };
        Self::new(strands, vec![letter; power.unsigned_abs() as usize])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Concatenation, with adjacent `σ σ^-1` pairs cancelled.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        debug_assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `w * self * w^-1`.
    pub fn conjugate_by(&self, w: &BraidWord) -> BraidWord {
        w.concat(self).concat(&w.inverse())
    }

    fn check_strands(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{:?}", self.strands, self.letters)
    }
}

/// A freely reduced word in `x_1, …, x_n`; `-j` is `x_j^-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn generator(j: i32) -> Self {
        FreeWord(vec![j])
    }

    /// Reduces `letters` freely.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out = FreeWord::default();
        for l in letters {
            out.push(l);
        }
        out
    }

    fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    fn product(parts: &[&FreeWord]) -> FreeWord {
        let mut out = FreeWord::default();
        for p in parts {
            for &l in &p.0 {
                out.push(l);
            }
        }
        out
    }
}

/// Images of `x_1, …, x_n` under the automorphism of `F_n` attached to `w`.
pub fn artin_images(w: &BraidWord, cap: usize) -> Result<Vec<FreeWord>, BraidError> {
    let n = w.strands;
    let mut images: Vec<FreeWord> = (1..=n as i32).map(FreeWord::generator).collect();
    // images[j] is phi_w(x_j); appending a letter s gives phi_w ∘ phi_s.
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (xi, xj) = (images[i].clone(), images[i + 1].clone());
        let (new_i, new_j) = if l > 0 {
            (FreeWord::product(&[&xi, &xj, &xi.inverse()]), xi)
        } else {
            (xj.clone(), FreeWord::product(&[&xj.inverse(), &xi, &xj]))
        };
        if new_i.len() > cap || new_j.len() > cap {
            return Err(BraidError::BudgetExceeded(cap));
        }
        images[i] = new_i;
        images[i + 1] = new_j;
    }
    Ok(images)
}

pub fn braid_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    w1.check_strands(w2)?;
    Ok(artin_images(w1, DEFAULT_WORD_CAP)? == artin_images(w2, DEFAULT_WORD_CAP)?)
}

/// An ordered tuple of braids on a common number of strands.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Factorization {
    strands: usize,
    factors: Vec<BraidWord>,
}

/// Canonical label of a factorization: the Artin images of every factor.
pub type CanonicalForm = Vec<Vec<FreeWord>>;

impl Factorization {
    pub fn new(strands: usize, factors: Vec<BraidWord>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        for f in &factors {
            if f.strands != strands {
                return Err(BraidError::StrandMismatch(strands, f.strands));
            }
        }
        Ok(Factorization { strands, factors })
    }

    pub fn from_letters(strands: usize, factors: Vec<Vec<i32>>) -> Result<Self, BraidError> {
        let factors = factors
            .into_iter()
            .map(|l| BraidWord::new(strands, l))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, factors)
    }

    pub fn empty(strands: usize) -> Self {
        Factorization {
            strands,
            factors: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[BraidWord] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn canonical(&self) -> Result<CanonicalForm, BraidError> {
        self.factors
            .iter()
            .map(|f| artin_images(f, DEFAULT_WORD_CAP))
            .collect()
    }

    /// Factorwise braid equality.
    pub fn equivalent_factors(&self, other: &Factorization) -> Result<bool, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        Ok(self.len() == other.len() && self.canonical()? == other.canonical()?)
    }

    fn check_pair(&self, i: usize) -> Result<(), BraidError> {
        if i == 0 || i >= self.factors.len() {
            return Err(BraidError::PositionOutOfRange {
                position: i,
                len: self.factors.len(),
            });
        }
        Ok(())
    }
}

pub fn product(f: &Factorization) -> BraidWord {
    f.factors
        .iter()
        .fold(BraidWord::identity(f.strands), |acc, w| acc.concat(w))
}

/// `(…, t_i, t_{i+1}, …) -> (…, t_i t_{i+1} t_i^-1, t_i, …)`, 1-based `i`.
pub fn hurwitz_move(f: &Factorization, i: usize) -> Result<Factorization, BraidError> {
    f.check_pair(i)?;
    let mut out = f.clone();
    let (t, u) = (&f.factors[i - 1], &f.factors[i]);
    out.factors[i - 1] = u.conjugate_by(t);
    out.factors[i] = t.clone();
    Ok(out)
}

/// `(…, t_i, t_{i+1}, …) -> (…, t_{i+1}, t_{i+1}^-1 t_i t_{i+1}, …)`.
pub fn hurwitz_move_inverse(f: &Factorization, i: usize) -> Result<Factorization, BraidError> {
    f.check_pair(i)?;
    let mut out = f.clone();
    let (t, u) = (&f.factors[i - 1], &f.factors[i]);
    out.factors[i - 1] = u.clone();
    out.factors[i] = t.conjugate_by(&u.inverse());
    Ok(out)
}

pub fn simultaneous_conjugation(
    f: &Factorization,
    w: &BraidWord,
) -> Result<Factorization, BraidError> {
    if w.strands != f.strands {
        return Err(BraidError::StrandMismatch(f.strands, w.strands));
    }
    Ok(Factorization {
        strands: f.strands,
        factors: f.factors.iter().map(|t| t.conjugate_by(w)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeDirection {
    Create,
    Cancel,
}

/// The positive and negative nodes `u σ_1^2 u^-1`, `u σ_1^-2 u^-1`.
pub fn node_pair(u: &BraidWord) -> (BraidWord, BraidWord) {
    let s = u.strands;
    let pos = BraidWord::generator_power(s, 1, 2).expect("at least two strands");
    let neg = pos.inverse();
    (pos.conjugate_by(u), neg.conjugate_by(u))
}

/// Inserts the node pair for `u` before 1-based position `i`
/// (`1..=len+1`), or removes it from positions `i`, `i+1`.
pub fn node_pair_move(
    f: &Factorization,
    i: usize,
    u: &BraidWord,
    direction: NodeDirection,
) -> Result<Factorization, BraidError> {
    if u.strands != f.strands {
        return Err(BraidError::StrandMismatch(f.strands, u.strands));
    }
    let (pos, neg) = node_pair(u);
    let mut out = f.clone();
    match direction {
        NodeDirection::Create => {
            if i == 0 || i > f.len() + 1 {
                return Err(BraidError::PositionOutOfRange {
                    position: i,
                    len: f.len(),
                });
            }
            out.factors.splice(i - 1..i - 1, [pos, neg]);
        }
        NodeDirection::Cancel => {
            f.check_pair(i)?;
            if !braid_equal(&f.factors[i - 1], &pos)? || !braid_equal(&f.factors[i], &neg)? {
                return Err(BraidError::CancelMismatch(i));
            }
            out.factors.drain(i - 1..=i);
        }
    }
    Ok(out)
}

/// Order in which moves are tried from each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoveOrder {
    #[default]
    Forward,
    Reversed,
}

#[derive(Debug, Clone)]
pub struct Orbit {
    /// Canonical forms of every state reached.
    pub states: BTreeSet<CanonicalForm>,
    /// One factorization per state, in discovery order.
    pub representatives: Vec<Factorization>,
    /// False if the budget stopped the search early.
    pub exhausted: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

fn bfs<F>(start: &Factorization, budget: usize, mut neighbours: F) -> Result<Orbit, BraidError>
where
    F: FnMut(&Factorization) -> Result<Vec<Factorization>, BraidError>,
{
    let budget = budget.max(1);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut states = BTreeSet::new();
    let mut representatives = Vec::new();
    let first = start.canonical()?;
    seen.insert(first.clone());
    states.insert(first);
    representatives.push(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(f) = queue.pop_front() {
        for g in neighbours(&f)? {
            let key = g.canonical()?;
            if seen.contains(&key) {
                continue;
            }
            if seen.len() >= budget {
                return Ok(Orbit {
                    states,
                    representatives,
                    exhausted: false,
                });
            }
            seen.insert(key.clone());
            states.insert(key);
            representatives.push(g.clone());
            queue.push_back(g);
        }
    }
    Ok(Orbit {
        states,
        representatives,
        exhausted: true,
    })
}

/// Breadth-first closure under Hurwitz moves and their inverses.
pub fn hurwitz_orbit(
    f: &Factorization,
    budget: usize,
    order: MoveOrder,
) -> Result<Orbit, BraidError> {
    bfs(f, budget, |g| {
        let mut moves = Vec::new();
        for i in 1..g.len() {
            moves.push(hurwitz_move(g, i)?);
            moves.push(hurwitz_move_inverse(g, i)?);
        }
        if order == MoveOrder::Reversed {
            moves.reverse();
        }
        Ok(moves)
    })
}

/// Limits for the search over the infinite m-equivalence move set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MLimits {
    pub budget: usize,
    /// Longest conjugator `u` tried for node pairs.
    pub conjugator_len: usize,
    /// States with more factors than this are not expanded further.
    pub max_factors: usize,
}

/// All words of length at most `max_len` on `strands` strands, free of
/// adjacent cancelling letters, shortest first.
pub fn words_up_to(strands: usize, max_len: usize) -> Vec<BraidWord> {
    let letters: Vec<i32> = (1..strands as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![BraidWord::identity(strands)];
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters.last() == Some(&-l) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                next.push(BraidWord { strands, letters });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Bounded closure under Hurwitz moves, simultaneous conjugation by single
/// generators, and creation or cancellation of node pairs with conjugators of
/// bounded length.
pub fn m_equivalence_orbit(f: &Factorization, limits: MLimits) -> Result<Orbit, BraidError> {
    let conjugators = words_up_to(f.strands, limits.conjugator_len);
    let generators: Vec<BraidWord> = words_up_to(f.strands, 1).into_iter().skip(1).collect();
    let pairs: Vec<(BraidWord, BraidWord)> = conjugators.iter().map(node_pair).collect();
    bfs(f, limits.budget, |g| {
        let mut moves = Vec::new();
        for i in 1..g.len() {
            moves.push(hurwitz_move(g, i)?);
            moves.push(hurwitz_move_inverse(g, i)?);
        }
        for w in &generators {
            moves.push(simultaneous_conjugation(g, w)?);
        }
        for i in 1..g.len() {
            for (u, (pos, neg)) in conjugators.iter().zip(&pairs) {
                if braid_equal(&g.factors[i - 1], pos)? && braid_equal(&g.factors[i], neg)? {
                    moves.push(node_pair_move(g, i, u, NodeDirection::Cancel)?);
                    break;
                }
            }
        }
        if g.len() + 2 <= limits.max_factors {
            for i in 1..=g.len() + 1 {
                for u in &conjugators {
                    moves.push(node_pair_move(g, i, u, NodeDirection::Create)?);
                }
            }
        }
        Ok(moves)
    })
}

/// Whether `g` is reached from `f` within the limits. `false` means only
/// that no certificate was found.
pub fn bounded_m_equivalent(
    f: &Factorization,
    g: &Factorization,
    limits: MLimits,
) -> Result<bool, BraidError> {
    let target = g.canonical()?;
    Ok(m_equivalence_orbit(f, limits)?.states.contains(&target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn fact(n: usize, fs: &[&[i32]]) -> Factorization {
        Factorization::from_letters(n, fs.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn equality_examples() {
        assert!(braid_equal(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
        assert!(braid_equal(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
        assert!(!braid_equal(&w(2, &[1]), &w(2, &[-1])).unwrap());
        assert!(!braid_equal(&w(3, &[1, 2]), &w(3, &[2, 1])).unwrap());
        assert_eq!(
            braid_equal(&w(2, &[1]), &w(3, &[1])),
            Err(BraidError::StrandMismatch(2, 3))
        );
    }

    #[test]
    fn word_validation() {
        assert_eq!(BraidWord::new(1, vec![]), Err(BraidError::TooFewStrands(1)));
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(Factorization::new(3, vec![w(4, &[1])]).is_err());
    }

    #[test]
    fn artin_images_of_generator() {
        let imgs = artin_images(&w(3, &[1]), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(imgs[0].letters(), &[1, 2, -1]);
        assert_eq!(imgs[1].letters(), &[1]);
        assert_eq!(imgs[2].letters(), &[3]);
        let imgs = artin_images(&w(3, &[1, -1]), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(imgs, (1..=3).map(FreeWord::generator).collect::<Vec<_>>());
    }

    #[test]
    fn word_cap_is_enforced() {
        let long = w(3, &[1, -2].repeat(40));
        assert_eq!(
            artin_images(&long, 100),
            Err(BraidError::BudgetExceeded(100))
        );
    }

    #[test]
    fn product_examples() {
        assert!(product(&Factorization::empty(3)).is_empty());
        let p = product(&fact(2, &[&[1], &[-1]]));
        assert!(braid_equal(&p, &BraidWord::identity(2)).unwrap());
        assert_eq!(product(&fact(3, &[&[1], &[2]])).letters(), &[1, 2]);
    }

    #[test]
    fn hurwitz_examples() {
        let f = fact(3, &[&[1], &[2]]);
        let g = hurwitz_move(&f, 1).unwrap();
        assert_eq!(g, fact(3, &[&[1, 2, -1], &[1]]));
        assert!(hurwitz_move_inverse(&g, 1)
            .unwrap()
            .equivalent_factors(&f)
            .unwrap());

        let same = fact(2, &[&[1], &[1]]);
        assert!(hurwitz_move(&same, 1)
            .unwrap()
            .equivalent_factors(&same)
            .unwrap());

        assert!(matches!(
            hurwitz_move(&f, 2),
            Err(BraidError::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            hurwitz_move_inverse(&Factorization::empty(3), 1),
            Err(BraidError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn conjugation_examples() {
        let f = fact(3, &[&[1], &[2, 2], &[-1, 2]]);
        let id = BraidWord::identity(3);
        assert_eq!(simultaneous_conjugation(&f, &id).unwrap(), f);
        let u = w(3, &[2, -1, 2]);
        let there = simultaneous_conjugation(&f, &u).unwrap();
        let back = simultaneous_conjugation(&there, &u.inverse()).unwrap();
        assert!(back.equivalent_factors(&f).unwrap());
        let expected = product(&f).conjugate_by(&u);
        assert!(braid_equal(&product(&there), &expected).unwrap());
        assert!(simultaneous_conjugation(&f, &w(4, &[1])).is_err());
    }

    #[test]
    fn node_pair_examples() {
        let f = fact(3, &[&[1], &[2]]);
        let id = BraidWord::identity(3);
        let g = node_pair_move(&f, 2, &id, NodeDirection::Create).unwrap();
        assert_eq!(g.len(), 4);
        let back = node_pair_move(&g, 2, &id, NodeDirection::Cancel).unwrap();
        assert_eq!(back, f);

        let wrong = fact(3, &[&[1, 1], &[1, 1]]);
        assert_eq!(
            node_pair_move(&wrong, 1, &id, NodeDirection::Cancel),
            Err(BraidError::CancelMismatch(1))
        );
        assert!(node_pair_move(&f, 4, &id, NodeDirection::Create).is_err());
    }

    #[test]
    fn orbit_examples() {
        let f = fact(2, &[&[1], &[1]]);
        let orbit = hurwitz_orbit(&f, 10, MoveOrder::Forward).unwrap();
        assert_eq!(orbit.len(), 1);
        assert!(orbit.exhausted);

        let orbit = hurwitz_orbit(&f, 1, MoveOrder::Forward).unwrap();
        assert!(orbit.exhausted);

        let f = fact(3, &[&[1], &[2]]);
        let orbit = hurwitz_orbit(&f, 1, MoveOrder::Forward).unwrap();
        assert_eq!(orbit.len(), 1);
        assert!(!orbit.exhausted);
    }

    #[test]
    fn m_orbit_reaches_created_pairs() {
        let f = fact(3, &[&[1], &[2]]);
        let limits = MLimits {
            budget: 200,
            conjugator_len: 1,
            max_factors: 4,
        };
        let id = BraidWord::identity(3);
        let g = node_pair_move(&f, 1, &id, NodeDirection::Create).unwrap();
        assert!(bounded_m_equivalent(&f, &g, limits).unwrap());
        let h = simultaneous_conjugation(&g, &w(3, &[2])).unwrap();
        assert!(bounded_m_equivalent(&f, &h, limits).unwrap());
        // Products differ, so no certificate can exist.
        let other = fact(3, &[&[1], &[1]]);
        assert!(!bounded_m_equivalent(&f, &other, limits).unwrap());
    }

    #[test]
    fn words_enumeration() {
        assert_eq!(words_up_to(3, 0).len(), 1);
        // 1 + 4 + 4*3
        assert_eq!(words_up_to(3, 2).len(), 17);
    }
}
