//! Exact arithmetic for finite permutation groups.
//!
//! A [`PermGroup`] materializes every element of the group generated by a list
//! of permutations, sorts them by image sequence and works with element
//! indices from then on. Index 0 is always the identity, and the
//! lexicographically least member of a conjugacy class is its representative,
//! so both are also the least index.
//!
//! Products compose left to right: `(g * h)(x) = h(g(x))`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::bitset::BitSet;

/// Largest group that [`PermGroup::close`] will materialize.
pub const ORDER_BOUND: usize = 100_000;
/// Largest group for which [`automorphisms`] will run.
pub const AUT_BOUND: usize = 2_000;
/// Groups up to this order get a full multiplication table.
const MUL_TABLE_BOUND: usize = 3_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the order bound of {ORDER_BOUND} elements")]
    OrderBoundExceeded,
    #[error("automorphism search needs |G| <= {AUT_BOUND}, got {0}")]
    AutBoundExceeded(usize),
    #[error("generators have mismatched degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("no generators given")]
    NoGenerators,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("generator assignment does not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("unknown group name `{0}`")]
    UnknownGroup(String),
    #[error("group file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A bijection of `{1, …, n}`, stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        if n == 0 {
            return Err(GroupError::InvalidPermutation("degree 0".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(GroupError::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree + 1];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree || touched[p] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "bad cycle point {p} for degree {degree}"
                    )));
                }
                touched[p] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn image(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`. Both must have the same degree.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation::from_zero_based(inv)
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Least `k >= 1` with `g^k` the identity.
pub fn order_of(g: &Permutation) -> u64 {
    g.cycles()
        .iter()
        .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Element index of the lexicographically least member.
    pub representative: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A finite permutation group with its full element list and conjugacy
/// classes.
pub struct PermGroup {
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    generator_ids: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
    orders: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    /// `transversal[x]` conjugates the representative of x's class to x.
    transversal: Vec<usize>,
    table: Option<Vec<u32>>,
    centralizers: OnceLock<Vec<OnceLock<Vec<usize>>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Materializes the group generated by `generators`.
    pub fn close(generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        Self::close_labeled("G", generators)
    }

    pub fn close_labeled(
        label: impl Into<String>,
        generators: Vec<Permutation>,
    ) -> Result<PermGroup, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }

        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= ORDER_BOUND {
                        return Err(GroupError::OrderBoundExceeded);
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }

        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let n = elements.len();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let generator_ids: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        let inverse: Vec<usize> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders: Vec<u32> = elements.iter().map(|p| order_of(p) as u32).collect();

        let table = if n <= MUL_TABLE_BOUND {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.then(b)] as u32);
                }
            }
            Some(t)
        } else {
            None
        };

        let mut group = PermGroup {
            label: label.into(),
            degree,
            generators,
            generator_ids,
            elements,
            index,
            inverse,
            orders,
            classes: Vec::new(),
            class_of: Vec::new(),
            transversal: Vec::new(),
            table,
            centralizers: OnceLock::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut transversal = vec![0usize; n];
        let mut classes = Vec::new();
        let gens: Vec<usize> = self.distinct_generator_ids();
        // Elements are visited in index order, so each new class starts at
        // its least member.
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            transversal[start] = 0;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.conjugate(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        transversal[y] = self.mul(g, transversal[x]);
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: start,
                members,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
        self.transversal = transversal;
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generator_ids
    }

    pub(crate) fn distinct_generator_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = Vec::new();
        for &g in &self.generator_ids {
            if g != 0 && !ids.contains(&g) {
                ids.push(g);
            }
        }
        ids
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `h * x * h^-1`.
    #[inline]
    pub fn conjugate(&self, h: usize, x: usize) -> usize {
        self.mul(self.mul(h, x), self.inverse[h])
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut result = Self::IDENTITY;
        for _ in 0..(k % self.orders[x] as u64) {
            result = self.mul(result, x);
        }
        result
    }

    pub fn element_order(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Some `h` with `h * x * h^-1` equal to the representative of x's class.
    pub fn conjugator_to_representative(&self, x: usize) -> usize {
        self.inverse[self.transversal[x]]
    }

    /// Sorted element indices commuting with `x`. Cached.
    pub fn centralizer(&self, x: usize) -> &[usize] {
        let slots = self
            .centralizers
            .get_or_init(|| (0..self.order()).map(|_| OnceLock::new()).collect());
        slots[x].get_or_init(|| {
            (0..self.order())
                .filter(|&h| self.mul(h, x) == self.mul(x, h))
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// The subgroup generated by the given element indices, as a membership
    /// set.
    pub fn subgroup_closure(&self, gens: &[usize]) -> BitSet {
        let n = self.order();
        let mut set = BitSet::new(n);
        set.insert(Self::IDENTITY);
        let mut queue = VecDeque::from([Self::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Whether the given element indices generate the whole group.
    pub fn generates_ids(&self, gens: &[usize]) -> bool {
        let n = self.order();
        if n == 1 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[Self::IDENTITY] = true;
        let mut count = 1usize;
        let mut queue = VecDeque::from([Self::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    // A subgroup larger than half the group is the group.
                    if 2 * count > n {
                        return true;
                    }
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// Whether the given permutations generate the whole group.
    pub fn generates(&self, elems: &[Permutation]) -> Result<bool, GroupError> {
        let ids = elems
            .iter()
            .map(|p| self.index_of(p).ok_or(GroupError::NotInGroup))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.generates_ids(&ids))
    }

    /// Smallest normal subgroup containing `x`.
    pub fn normal_closure(&self, x: usize) -> BitSet {
        let class = &self.classes[self.class_of[x]].members;
        self.subgroup_closure(class)
    }

    /// Whether G has no normal subgroups besides 1 and G.
    pub fn is_simple(&self) -> bool {
        if self.order() < 2 {
            return false;
        }
        self.classes
            .iter()
            .skip(1)
            .all(|c| self.normal_closure(c.representative).len() == self.order())
    }

    /// The element-index permutation induced by conjugation with `h`.
    pub(crate) fn inner_images(&self, h: usize, of: &[usize]) -> Vec<usize> {
        of.iter().map(|&x| self.conjugate(h, x)).collect()
    }
}

/// A homomorphism between permutation groups, given by generator images.
#[derive(Clone)]
pub struct GroupMap {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    images: Vec<Permutation>,
    /// Image index of every source element.
    table: Vec<usize>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupMap")
            .field("source", &self.source.label())
            .field("target", &self.target.label())
            .field("images", &self.images)
            .finish()
    }
}

impl GroupMap {
    /// Checks that sending the i-th generator of `source` to `images[i]`
    /// extends to a homomorphism.
    pub fn new(
        source: Arc<PermGroup>,
        target: Arc<PermGroup>,
        images: Vec<Permutation>,
    ) -> Result<GroupMap, GroupError> {
        if images.len() != source.generators().len() {
            return Err(GroupError::ImageCount {
                expected: source.generators().len(),
                got: images.len(),
            });
        }
        let image_ids = images
            .iter()
            .map(|p| target.index_of(p).ok_or(GroupError::NotInGroup))
            .collect::<Result<Vec<_>, _>>()?;
        let table = extend_along_witnesses(&source, &target, source.generator_ids(), &image_ids)
            .ok_or(GroupError::NotAHomomorphism)?;
        Ok(GroupMap {
            source,
            target,
            images,
            table,
        })
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    /// Image of a source element index, as a target element index.
    pub fn apply_id(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn apply(&self, p: &Permutation) -> Option<&Permutation> {
        self.source
            .index_of(p)
            .map(|x| self.target.element(self.table[x]))
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
            && self.source.order() == self.target.order()
    }

    /// Composite `other ∘ self` (apply self first).
    pub fn then(&self, other: &GroupMap) -> Option<GroupMap> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return None;
        }
        let table: Vec<usize> = self.table.iter().map(|&y| other.table[y]).collect();
        let images = self
            .source
            .generator_ids()
            .iter()
            .map(|&g| other.target.element(table[g]).clone())
            .collect();
        Some(GroupMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
            table,
        })
    }

    pub(crate) fn table(&self) -> &[usize] {
        &self.table
    }
}

/// Extends `gens[i] -> images[i]` along a spanning tree of the Cayley graph
/// and verifies every edge. Returns the full element table, or `None` if the
/// assignment is inconsistent.
fn extend_along_witnesses(
    source: &PermGroup,
    target: &PermGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = source.order();
    let mut table = vec![usize::MAX; n];
    table[PermGroup::IDENTITY] = PermGroup::IDENTITY;
    let mut queue = VecDeque::from([PermGroup::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let expected = target.mul(table[x], img);
            if table[y] == usize::MAX {
                table[y] = expected;
                queue.push_back(y);
            } else if table[y] != expected {
                return None;
            }
        }
    }
    Some(table)
}

/// An automorphism together with whether it is conjugation by some element.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub map: GroupMap,
    pub inner: bool,
}

/// All automorphisms of `group`, by backtracking over generator images.
///
/// Candidate images of a generator must match its order and class size and
/// keep the partial map injective; each partial assignment is verified on the
/// whole subgroup it generates before descending.
pub fn automorphisms(group: &Arc<PermGroup>) -> Result<Vec<Automorphism>, GroupError> {
    let n = group.order();
    if n > AUT_BOUND {
        return Err(GroupError::AutBoundExceeded(n));
    }
    let gens = group.distinct_generator_ids();

    let inner_tuples: HashSet<Vec<usize>> = (0..n).map(|h| group.inner_images(h, &gens)).collect();

    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(gens.len());
    backtrack_auts(group, &gens, &mut chosen, &mut found);

    let all_gen_ids = group.generator_ids().to_vec();
    found
        .into_iter()
        .map(|imgs| {
            let table =
                extend_along_witnesses(group, group, &gens, &imgs).expect("verified during search");
            let images = all_gen_ids
                .iter()
                .map(|&g| group.element(table[g]).clone())
                .collect();
            let inner = inner_tuples.contains(&imgs);
            Ok(Automorphism {
                map: GroupMap {
                    source: group.clone(),
                    target: group.clone(),
                    images,
                    table,
                },
                inner,
            })
        })
        .collect()
}

fn backtrack_auts(
    group: &PermGroup,
    gens: &[usize],
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let depth = chosen.len();
    if depth == gens.len() {
        found.push(chosen.clone());
        return;
    }
    let g = gens[depth];
    let order = group.element_order(g);
    let class_len = group.classes()[group.class_of(g)].len();
    for y in 0..group.order() {
        if group.element_order(y) != order || group.classes()[group.class_of(y)].len() != class_len
        {
            continue;
        }
        chosen.push(y);
        if partial_map_is_injective_hom(group, &gens[..=depth], chosen) {
            backtrack_auts(group, gens, chosen, found);
        }
        chosen.pop();
    }
}

fn partial_map_is_injective_hom(group: &PermGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = group.order();
    let mut table = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    table[PermGroup::IDENTITY] = PermGroup::IDENTITY;
    hit[PermGroup::IDENTITY] = true;
    let mut queue = VecDeque::from([PermGroup::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let expected = group.mul(table[x], img);
            if table[y] == usize::MAX {
                if hit[expected] {
                    return false;
                }
                hit[expected] = true;
                table[y] = expected;
                queue.push_back(y);
            } else if table[y] != expected {
                return false;
            }
        }
    }
    true
}

// Built-in constructors.

pub fn cyclic(n: usize) -> Result<PermGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::UnknownGroup("C0".into()));
    }
    let images: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    PermGroup::close_labeled(format!("C{n}"), vec![Permutation::from_images(&images)?])
}

/// Symmetries of the regular n-gon, order `2n`.
pub fn dihedral(n: usize) -> Result<PermGroup, GroupError> {
    let label = format!("D{n}");
    match n {
        0 => Err(GroupError::UnknownGroup(label)),
        1 => Ok(cyclic(2)?.with_label(label)),
        2 => PermGroup::close_labeled(
            label,
            vec![
                Permutation::from_cycles(4, &[&[1, 2]])?,
                Permutation::from_cycles(4, &[&[3, 4]])?,
            ],
        ),
        _ => {
            let rot: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
            let refl: Vec<usize> = (1..=n).map(|i| n + 1 - i).collect();
            PermGroup::close_labeled(
                label,
                vec![
                    Permutation::from_images(&rot)?,
                    Permutation::from_images(&refl)?,
                ],
            )
        }
    }
}

pub fn symmetric(n: usize) -> Result<PermGroup, GroupError> {
    let label = format!("S{n}");
    if n == 0 {
        return Err(GroupError::UnknownGroup(label));
    }
    if n == 1 {
        return PermGroup::close_labeled(label, vec![Permutation::identity(1)]);
    }
    let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    PermGroup::close_labeled(
        label,
        vec![
            Permutation::from_images(&cycle)?,
            Permutation::from_cycles(n, &[&[1, 2]])?,
        ],
    )
}

pub fn alternating(n: usize) -> Result<PermGroup, GroupError> {
    let label = format!("A{n}");
    if n == 0 {
        return Err(GroupError::UnknownGroup(label));
    }
    if n < 3 {
        return PermGroup::close_labeled(label, vec![Permutation::identity(n)]);
    }
    let gens = (3..=n)
        .map(|i| Permutation::from_cycles(n, &[&[1, 2, i]]))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::close_labeled(label, gens)
}

/// `(Z/n)^2` acting on two disjoint n-cycles.
pub fn elementary_abelian_square(n: usize) -> Result<PermGroup, GroupError> {
    direct_product_of_cyclic(&[n, n]).map(|g| g.with_label(format!("EA{n}x{n}")))
}

/// `C_{n_1} x … x C_{n_k}` on disjoint cycles.
pub fn direct_product_of_cyclic(factors: &[usize]) -> Result<PermGroup, GroupError> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(GroupError::UnknownGroup(format!("{factors:?}")));
    }
    let degree: usize = factors.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &n in factors {
        let mut images: Vec<usize> = (1..=degree).collect();
        for i in 0..n {
            images[offset + i] = offset + (i + 1) % n + 1;
        }
        gens.push(Permutation::from_images(&images)?);
        offset += n;
    }
    let label = factors
        .iter()
        .map(|n| format!("C{n}"))
        .collect::<Vec<_>>()
        .join("x");
    PermGroup::close_labeled(label, gens)
}

/// PSL(2, p) acting on the p+1 points of the projective line over F_p.
/// Point i (0-based) is the residue i, point p is infinity.
pub fn psl2(p: usize) -> Result<PermGroup, GroupError> {
    let label = format!("PSL2_{p}");
    if !(2..=31).contains(&p) || !(2..p).all(|d| p % d != 0) {
        return Err(GroupError::UnknownGroup(label));
    }
    let inf = p;
    // z -> z + 1
    let translate: Vec<usize> = (0..=p)
        .map(|z| if z == inf { inf } else { (z + 1) % p } + 1)
        .collect();
    // z -> -1/z
    let invert: Vec<usize> = (0..=p)
        .map(|z| {
            let w = if z == inf {
                0
            } else if z == 0 {
                inf
            } else {
                let zinv = (1..p).find(|&y| (y * z) % p == 1).unwrap();
                (p - zinv) % p
            };
            w + 1
        })
        .collect();
    PermGroup::close_labeled(
        label,
        vec![
            Permutation::from_images(&translate)?,
            Permutation::from_images(&invert)?,
        ],
    )
}

/// Resolves a built-in group name: `Cn`, `Dn`, `Sn`, `An`, `EAnxn`,
/// `PSL2_p`, or a product of cyclic groups such as `C2xC6`.
pub fn builtin(name: &str) -> Result<PermGroup, GroupError> {
    let unknown = || GroupError::UnknownGroup(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());

    if let Some(rest) = name.strip_prefix("PSL2_") {
        return psl2(num(rest)?);
    }
    if let Some(rest) = name.strip_prefix("EA") {
        let (l, r) = rest.split_once('x').ok_or_else(unknown)?;
        if l != r {
            return Err(unknown());
        }
        return elementary_abelian_square(num(l)?);
    }
    if name.contains('x') {
        let factors = name
            .split('x')
            .map(|part| part.strip_prefix('C').ok_or_else(unknown).and_then(num))
            .collect::<Result<Vec<_>, _>>()?;
        return direct_product_of_cyclic(&factors).map(|g| g.with_label(name));
    }
    let (kind, n) = name.split_at(1.min(name.len()));
    let n = num(n)?;
    match kind {
        "C" => cyclic(n),
        "D" => dihedral(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(unknown()),
    }
}

/// Parses the plain-text group format: a `degree n` line, then one generator
/// per line as n space-separated 1-based images. `#` starts a comment line.
pub fn parse_group_file(label: &str, text: &str) -> Result<PermGroup, GroupError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| GroupError::Parse {
            line: lineno + 1,
            msg,
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| err("expected `degree n`".into()))?;
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad degree: {e}")))?;
                if n == 0 {
                    return Err(err("degree must be positive".into()));
                }
                degree = Some(n);
            }
            Some(n) => {
                let images = line
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| err(format!("`{t}`: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if images.len() != n {
                    return Err(err(format!("expected {n} images, got {}", images.len())));
                }
                gens.push(Permutation::from_images(&images).map_err(|e| err(e.to_string()))?);
            }
        }
    }
    let n = degree.ok_or(GroupError::Parse {
        line: 0,
        msg: "missing `degree n` line".into(),
    })?;
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    PermGroup::close_labeled(label, gens)
}

/// Every abelian group of order at most `max_order`, one per isomorphism
/// type, as products of cyclic groups with invariant factors `d_1 | d_2 | …`.
pub fn abelian_catalog(max_order: usize) -> Vec<Vec<usize>> {
    fn extend(remaining: usize, last: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(current.clone());
            return;
        }
        // Invariant factors are listed largest first, each dividing the previous.
        for d in 2..=remaining {
            if remaining % d == 0 && last % d == 0 {
                current.push(d);
                extend(remaining / d, d, current, out);
                current.pop();
            }
        }
    }
    let mut out = vec![vec![1]];
    for n in 2..=max_order {
        let mut found = Vec::new();
        let mut current = Vec::new();
        extend(n, n, &mut current, &mut found);
        for mut f in found {
            f.reverse();
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn closure_examples() {
        let trivial = PermGroup::close(vec![Permutation::identity(3)]).unwrap();
        assert_eq!(trivial.order(), 1);

        let s5 = PermGroup::close(vec![perm(&[2, 3, 4, 5, 1]), perm(&[2, 1, 3, 4, 5])]).unwrap();
        assert_eq!(s5.order(), 120);

        let err = PermGroup::close(vec![perm(&[2, 1, 3]), perm(&[2, 1, 3, 4])]).unwrap_err();
        assert_eq!(err, GroupError::DegreeMismatch(3, 4));
        assert_eq!(
            PermGroup::close(vec![]).unwrap_err(),
            GroupError::NoGenerators
        );
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of(&Permutation::identity(4)), 1);
        assert_eq!(order_of(&perm(&[2, 3, 4, 5, 1])), 5);
        let p = Permutation::from_cycles(5, &[&[1, 2], &[3, 4, 5]]).unwrap();
        assert_eq!(order_of(&p), 6);
    }

    #[test]
    fn class_examples() {
        let c5 = cyclic(5).unwrap();
        assert_eq!(c5.classes().len(), 5);
        assert!(c5.classes().iter().all(|c| c.len() == 1));

        let s4 = symmetric(4).unwrap();
        let mut sizes: Vec<usize> = s4.classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);

        let trivial = cyclic(1).unwrap();
        assert_eq!(trivial.classes().len(), 1);
    }

    #[test]
    fn class_representative_is_lex_least() {
        let s4 = symmetric(4).unwrap();
        for c in s4.classes() {
            let min = c.members.iter().map(|&m| s4.element(m)).min().unwrap();
            assert_eq!(s4.element(c.representative), min);
        }
        for x in 0..s4.order() {
            let h = s4.conjugator_to_representative(x);
            assert_eq!(
                s4.conjugate(h, x),
                s4.classes()[s4.class_of(x)].representative
            );
        }
    }

    #[test]
    fn generation_examples() {
        let s4 = symmetric(4).unwrap();
        let t = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        let c = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap();
        assert!(s4.generates(&[t, c]).unwrap());

        let x = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        let y = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert!(!s4.generates(&[x, y]).unwrap());

        assert!(s4.generates(s4.elements()).unwrap());
        assert_eq!(
            s4.generates(&[Permutation::identity(5)]),
            Err(GroupError::NotInGroup)
        );
    }

    #[test]
    fn simplicity_examples() {
        assert!(alternating(5).unwrap().is_simple());
        assert!(!cyclic(6).unwrap().is_simple());
        assert!(cyclic(7).unwrap().is_simple());
        assert!(!symmetric(4).unwrap().is_simple());
        assert!(psl2(7).unwrap().is_simple());
    }

    #[test]
    fn automorphism_examples() {
        let c5 = Arc::new(cyclic(5).unwrap());
        let auts = automorphisms(&c5).unwrap();
        assert_eq!(auts.len(), 4);
        assert_eq!(auts.iter().filter(|a| a.inner).count(), 1);

        let s3 = Arc::new(symmetric(3).unwrap());
        let auts = automorphisms(&s3).unwrap();
        assert_eq!(auts.len(), 6);
        assert!(auts.iter().all(|a| a.inner));

        let trivial = Arc::new(cyclic(1).unwrap());
        assert_eq!(automorphisms(&trivial).unwrap().len(), 1);

        let big = Arc::new(alternating(7).unwrap());
        assert_eq!(
            automorphisms(&big).unwrap_err(),
            GroupError::AutBoundExceeded(2520)
        );
    }

    #[test]
    fn group_map_rejects_non_homomorphism() {
        let c4 = Arc::new(cyclic(4).unwrap());
        // Generator of order 4 sent to an element of order 2 twice over is a
        // homomorphism onto C2 only if the image has order dividing 4.
        let sq = c4
            .element(c4.mul(c4.generator_ids()[0], c4.generator_ids()[0]))
            .clone();
        assert!(GroupMap::new(c4.clone(), c4.clone(), vec![sq]).is_ok());

        let c3 = Arc::new(cyclic(3).unwrap());
        let g = c3.generators()[0].clone();
        assert_eq!(
            GroupMap::new(c4.clone(), c3, vec![g]).unwrap_err(),
            GroupError::NotAHomomorphism
        );
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("A5").unwrap().order(), 60);
        assert_eq!(builtin("S4").unwrap().order(), 24);
        assert_eq!(builtin("C7").unwrap().order(), 7);
        assert_eq!(builtin("D4").unwrap().order(), 8);
        assert_eq!(builtin("EA5x5").unwrap().order(), 25);
        assert_eq!(builtin("PSL2_7").unwrap().order(), 168);
        assert_eq!(builtin("PSL2_5").unwrap().order(), 60);
        assert_eq!(builtin("C2xC6").unwrap().order(), 12);
        assert!(builtin("Q8").is_err());
        assert!(builtin("PSL2_9").is_err());
        assert!(builtin("EA5x7").is_err());
    }

    #[test]
    fn group_file_parsing() {
        let text = "# S3\ndegree 3\n2 1 3\n\n2 3 1\n";
        let g = parse_group_file("S3", text).unwrap();
        assert_eq!(g.order(), 6);
        assert!(matches!(
            parse_group_file("x", "degree 3\n1 2\n"),
            Err(GroupError::Parse { line: 2, .. })
        ));
        assert!(parse_group_file("x", "3 1 2\n").is_err());
        assert!(parse_group_file("x", "degree 2\n1 1\n").is_err());
    }

    #[test]
    fn abelian_catalog_counts() {
        let cat = abelian_catalog(16);
        let count = |n: usize| {
            cat.iter()
                .filter(|f| f.iter().product::<usize>() == n)
                .count()
        };
        assert_eq!(count(1), 1);
        assert_eq!(count(8), 3);
        assert_eq!(count(12), 2);
        assert_eq!(count(16), 5);
        for f in &cat {
            assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
