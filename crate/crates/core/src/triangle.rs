//! Generating triples `(a, b, c)` with `a * b * c = 1`, the combinatorial
//! data of a Galois cover of the projective line branched over three points.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::group::{automorphisms, Automorphism, GroupError, PermGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    #[error("element is not in the group")]
    NotInGroup,
    #[error("a and b do not generate the group")]
    NotGenerating,
    #[error("Riemann-Hurwitz gives a non-integral genus")]
    NonIntegralGenus,
    #[error("triples live on different groups")]
    GroupMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Branching orders of a triple, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleType(pub [u32; 3]);

impl TripleType {
    pub fn new(mut orders: [u32; 3]) -> Self {
        orders.sort_unstable();
        TripleType(orders)
    }

    pub fn orders(&self) -> [u32; 3] {
        self.0
    }
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

#[derive(Clone)]
pub struct SphericalTriple {
    group: Arc<PermGroup>,
    ids: [usize; 3],
}

impl fmt::Debug for SphericalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SphericalTriple({}; {}, {}, {})",
            self.group.label(),
            self.a(),
            self.b(),
            self.c()
        )
    }
}

impl PartialEq for SphericalTriple {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.ids == other.ids
    }
}

impl Eq for SphericalTriple {}

impl SphericalTriple {
    /// The triple `(a, b, (ab)^-1)`; `a` and `b` must generate the group.
    pub fn new(
        group: Arc<PermGroup>,
        a: &Permutation,
        b: &Permutation,
    ) -> Result<Self, TriangleError> {
        let a = group.index_of(a).ok_or(TriangleError::NotInGroup)?;
        let b = group.index_of(b).ok_or(TriangleError::NotInGroup)?;
        Self::from_ids(group, a, b).ok_or(TriangleError::NotGenerating)
    }

    /// Like [`SphericalTriple::new`] on element indices; `None` if `a`, `b`
    /// do not generate.
    pub fn from_ids(group: Arc<PermGroup>, a: usize, b: usize) -> Option<Self> {
        if !group.generates_ids(&[a, b]) {
            return None;
        }
        Some(Self::from_generating_ids(group, a, b))
    }

    pub(crate) fn from_generating_ids(group: Arc<PermGroup>, a: usize, b: usize) -> Self {
        let c = group.inv(group.mul(a, b));
        SphericalTriple {
            group,
            ids: [a, b, c],
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn ids(&self) -> [usize; 3] {
        self.ids
    }

    pub fn a(&self) -> &Permutation {
        self.group.element(self.ids[0])
    }

    pub fn b(&self) -> &Permutation {
        self.group.element(self.ids[1])
    }

    pub fn c(&self) -> &Permutation {
        self.group.element(self.ids[2])
    }

    /// Orders of `a`, `b`, `c` in that order.
    pub fn orders(&self) -> [u32; 3] {
        self.ids.map(|x| self.group.element_order(x))
    }

    pub fn triple_type(&self) -> TripleType {
        TripleType::new(self.orders())
    }

    /// Componentwise image under an element-index map.
    pub(crate) fn mapped(&self, f: impl Fn(usize) -> usize) -> SphericalTriple {
        SphericalTriple {
            group: self.group.clone(),
            ids: self.ids.map(f),
        }
    }

    pub fn conjugated_by(&self, h: usize) -> SphericalTriple {
        self.mapped(|x| self.group.conjugate(h, x))
    }

    pub fn to_record(&self) -> Result<TripleRecord, TriangleError> {
        Ok(TripleRecord {
            group: self.group.label().to_string(),
            a: self.a().images_one_based(),
            b: self.b().images_one_based(),
            c: self.c().images_one_based(),
            triple_type: self.triple_type().orders(),
            genus: genus(self)?,
        })
    }
}

/// Serialized form of a triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub group: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    #[serde(rename = "type")]
    pub triple_type: [u32; 3],
    pub genus: u64,
}

/// `2g - 2 = |G| * (1 - 1/m1 - 1/m2 - 1/m3)` from a group order and the
/// three branching orders.
pub fn riemann_hurwitz_genus(order: u64, orders: [u32; 3]) -> Result<u64, TriangleError> {
    let n = order as i64;
    let mut rhs = n;
    for m in orders {
        let m = m as i64;
        if m == 0 || n % m != 0 {
            return Err(TriangleError::NonIntegralGenus);
        }
        rhs -= n / m;
    }
    if rhs % 2 != 0 || rhs < -2 {
        return Err(TriangleError::NonIntegralGenus);
    }
    Ok(((rhs + 2) / 2) as u64)
}

pub fn genus(t: &SphericalTriple) -> Result<u64, TriangleError> {
    riemann_hurwitz_genus(t.group.order() as u64, t.orders())
}

pub fn is_hyperbolic(t: &SphericalTriple) -> bool {
    matches!(genus(t), Ok(g) if g >= 2)
}

/// Restrictions applied during enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TripleQuery {
    pub triple_type: Option<TripleType>,
    pub hyperbolic_only: bool,
}

impl TripleQuery {
    fn accepts(&self, t: &SphericalTriple) -> bool {
        if let Some(ty) = self.triple_type {
            if t.triple_type() != ty {
                return false;
            }
        }
        !self.hyperbolic_only || is_hyperbolic(t)
    }
}

/// All generating triples of `group`, optionally of one type.
///
/// Ordered by the conjugacy class of `a`, then `a`, then `b`.
pub fn enumerate_triples(
    group: &Arc<PermGroup>,
    filter: Option<TripleType>,
) -> Vec<SphericalTriple> {
    enumerate_triples_with(
        group,
        &TripleQuery {
            triple_type: filter,
            hyperbolic_only: false,
        },
    )
}

pub fn enumerate_triples_with(group: &Arc<PermGroup>, query: &TripleQuery) -> Vec<SphericalTriple> {
    close_under_conjugation(group, &triple_representatives(group, query))
}

/// One triple per simultaneous-conjugacy orbit: `a` is a class
/// representative and `b` is least in its orbit under the centralizer of `a`.
/// This is the lexicographically least member of the orbit.
///
/// Ordered by `a`, then `b`.
pub fn triple_representatives(group: &Arc<PermGroup>, query: &TripleQuery) -> Vec<SphericalTriple> {
    let reps: Vec<usize> = group.classes().iter().map(|c| c.representative).collect();
    reps.par_iter()
        .map(|&a| {
            let n = group.order();
            let centralizer = group.centralizer(a);
            let mut marked = vec![false; n];
            let mut out = Vec::new();
            for b in 0..n {
                if marked[b] {
                    continue;
                }
                for &h in centralizer {
                    marked[group.conjugate(h, b)] = true;
                }
                if let Some(t) = SphericalTriple::from_ids(group.clone(), a, b) {
                    if query.accepts(&t) {
                        out.push(t);
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All conjugates of the given triples, deduplicated and in enumeration
/// order.
pub fn close_under_conjugation(
    group: &Arc<PermGroup>,
    reps: &[SphericalTriple],
) -> Vec<SphericalTriple> {
    let mut pairs: Vec<(usize, usize, usize)> = reps
        .par_iter()
        .flat_map_iter(|t| {
            let [a, b, _] = t.ids;
            (0..group.order()).map(move |h| {
                let a2 = group.conjugate(h, a);
                (group.class_of(a2), a2, group.conjugate(h, b))
            })
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
        .into_iter()
        .map(|(_, a, b)| SphericalTriple::from_generating_ids(group.clone(), a, b))
        .collect()
}

/// Elements with a fixed point on the associated curve: all conjugates of all
/// powers of `a`, `b`, `c`. Always contains the identity (index 0).
pub fn sigma_set(t: &SphericalTriple) -> BitSet {
    let g = &t.group;
    let mut classes = BitSet::new(g.classes().len());
    for &x in &t.ids {
        let mut p = PermGroup::IDENTITY;
        for _ in 0..g.element_order(x) {
            classes.insert(g.class_of(p));
            p = g.mul(p, x);
        }
    }
    let mut set = BitSet::new(g.order());
    for c in classes.iter() {
        for &m in &g.classes()[c].members {
            set.insert(m);
        }
    }
    set
}

/// [`sigma_set`] as permutations, sorted.
pub fn sigma_permutations(t: &SphericalTriple) -> Vec<Permutation> {
    sigma_set(t)
        .iter()
        .map(|i| t.group.element(i).clone())
        .collect()
}

/// Conjugacy classes (as a set over class indices) of the elements of prime
/// order in `sigma_set(t)`. Two triples have stabilizer sets meeting only in
/// the identity exactly when these sets are disjoint, since any nontrivial
/// element has a power of prime order.
pub fn prime_order_classes(t: &SphericalTriple) -> BitSet {
    let g = &t.group;
    let mut classes = BitSet::new(g.classes().len());
    for &x in &t.ids {
        let mut p = x;
        for _ in 1..g.element_order(x) {
            if is_prime(g.element_order(p)) {
                classes.insert(g.class_of(p));
            }
            p = g.mul(p, x);
        }
    }
    classes
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// Up to inner automorphisms.
    Marked,
    /// Up to all automorphisms.
    Unmarked,
}

pub fn triples_equivalent(
    t1: &SphericalTriple,
    t2: &SphericalTriple,
    mode: EquivalenceMode,
) -> Result<bool, TriangleError> {
    if !Arc::ptr_eq(&t1.group, &t2.group) {
        return Err(TriangleError::GroupMismatch);
    }
    if t1.orders() != t2.orders() {
        return Ok(false);
    }
    match mode {
        EquivalenceMode::Marked => {
            let g = &t1.group;
            Ok((0..g.order()).any(|h| t1.conjugated_by(h).ids == t2.ids))
        }
        EquivalenceMode::Unmarked => {
            let auts = automorphisms(&t1.group)?;
            Ok(equivalent_under(t1, t2, &auts))
        }
    }
}

/// Whether some automorphism in `auts` carries `t1` to `t2`.
pub fn equivalent_under(t1: &SphericalTriple, t2: &SphericalTriple, auts: &[Automorphism]) -> bool {
    auts.iter().any(|phi| {
        let table = phi.map.table();
        t1.ids.map(|x| table[x]) == t2.ids
    })
}

/// Least image of `(a, b)` under the given automorphisms, a canonical label
/// for the orbit of `t` when `auts` is the full automorphism group.
pub fn aut_canonical_pair(t: &SphericalTriple, auts: &[Automorphism]) -> (usize, usize) {
    auts.iter()
        .map(|phi| {
            let table = phi.map.table();
            (table[t.ids[0]], table[t.ids[1]])
        })
        .min()
        .unwrap_or((t.ids[0], t.ids[1]))
}
