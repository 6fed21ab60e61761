//! Unmixed Beauville structures and the invariants of the surfaces
//! `(C1 x C2) / G` they define.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{automorphisms, Automorphism, GroupError, PermGroup};
use crate::invariants::SurfaceInvariants;
use crate::triangle::{
    aut_canonical_pair, close_under_conjugation, genus, is_hyperbolic, prime_order_classes,
    sigma_set, triple_representatives, SphericalTriple, TriangleError, TripleQuery,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeauvilleError {
    #[error("triples live on different groups")]
    GroupMismatch,
    #[error("(g1-1)(g2-1) = {product} is not divisible by |G| = {order}")]
    NonIntegralChi { product: i64, order: i64 },
    #[error("genera must be at least 2, got {0} and {1}")]
    GenusTooSmall(i64, i64),
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("not a Beauville structure")]
    NotBeauville,
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone)]
pub struct BeauvilleStructure {
    pub t1: SphericalTriple,
    pub t2: SphericalTriple,
    /// Whether the two triples are equivalent under `Aut(G)`; `None` when the
    /// group is too large for the automorphism search.
    pub triples_unmarked_equivalent: Option<bool>,
}

impl BeauvilleStructure {
    pub fn new(t1: SphericalTriple, t2: SphericalTriple) -> Result<Self, BeauvilleError> {
        if !is_beauville_pair(&t1, &t2)? {
            return Err(BeauvilleError::NotBeauville);
        }
        Ok(BeauvilleStructure {
            t1,
            t2,
            triples_unmarked_equivalent: None,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.t1.group()
    }

    /// `(a1, b1, a2, b2)` element indices.
    pub fn key(&self) -> [usize; 4] {
        let [a1, b1, _] = self.t1.ids();
        let [a2, b2, _] = self.t2.ids();
        [a1, b1, a2, b2]
    }
}

/// Both triples hyperbolic and `Σ(T1) ∩ Σ(T2) = {1}`.
pub fn is_beauville_pair(
    t1: &SphericalTriple,
    t2: &SphericalTriple,
) -> Result<bool, BeauvilleError> {
    if !Arc::ptr_eq(t1.group(), t2.group()) {
        return Err(BeauvilleError::GroupMismatch);
    }
    if !is_hyperbolic(t1) || !is_hyperbolic(t2) {
        return Ok(false);
    }
    Ok(sigma_set(t1).intersection_len(&sigma_set(t2)) == 1)
}

struct Candidate {
    triple: SphericalTriple,
    primes: crate::bitset::BitSet,
}

fn candidates(triples: Vec<SphericalTriple>) -> Vec<Candidate> {
    triples
        .into_par_iter()
        .map(|triple| Candidate {
            primes: prime_order_classes(&triple),
            triple,
        })
        .collect()
}

/// Every unmixed Beauville structure on `group` up to simultaneous
/// conjugation, or only the first one.
///
/// Each structure is reported as the lexicographically least of its
/// simultaneous conjugates: the first triple is a conjugacy representative
/// (see [`triple_representatives`]), and since it generates `G` its
/// stabilizer is the center, which also fixes the second triple.
pub fn search(group: &Arc<PermGroup>, stop_at_first: bool) -> Vec<BeauvilleStructure> {
    let query = TripleQuery {
        triple_type: None,
        hyperbolic_only: true,
    };
    let reps = triple_representatives(group, &query);
    if reps.is_empty() {
        return Vec::new();
    }
    let firsts = candidates(reps.clone());
    let seconds = candidates(close_under_conjugation(group, &reps));

    let pair = |c1: &Candidate, c2: &Candidate| -> Option<BeauvilleStructure> {
        if c1.primes.intersects(&c2.primes) {
            return None;
        }
        debug_assert_eq!(
            sigma_set(&c1.triple).intersection_len(&sigma_set(&c2.triple)),
            1
        );
        Some(BeauvilleStructure {
            t1: c1.triple.clone(),
            t2: c2.triple.clone(),
            triples_unmarked_equivalent: None,
        })
    };

    let mut found: Vec<BeauvilleStructure> = if stop_at_first {
        firsts
            .iter()
            .find_map(|c1| seconds.iter().find_map(|c2| pair(c1, c2)))
            .into_iter()
            .collect()
    } else {
        firsts
            .par_iter()
            .flat_map_iter(|c1| seconds.iter().filter_map(move |c2| pair(c1, c2)))
            .collect()
    };

    if let Ok(auts) = automorphisms(group) {
        flag_unmarked_equivalence(&mut found, &auts);
    }
    found
}

fn flag_unmarked_equivalence(found: &mut [BeauvilleStructure], auts: &[Automorphism]) {
    let mut labels: HashMap<[usize; 3], (usize, usize)> = HashMap::new();
    let mut label = |t: &SphericalTriple| {
        *labels
            .entry(t.ids())
            .or_insert_with(|| aut_canonical_pair(t, auts))
    };
    for s in found.iter_mut() {
        let same = label(&s.t1) == label(&s.t2);
        s.triples_unmarked_equivalent = Some(same);
    }
}

/// Lexicographically least simultaneous conjugate of `(t1, t2)`, computed
/// by the reduction described in [`search`].
pub fn canonical_key(t1: &SphericalTriple, t2: &SphericalTriple) -> [usize; 4] {
    let g = t1.group();
    let [a1, _, _] = t1.ids();
    let to_rep = g.conjugator_to_representative(a1);
    let rep = g.conjugate(to_rep, a1);
    let (b1, a2, b2) = (t1.ids()[1], t2.ids()[0], t2.ids()[1]);
    let (b1, a2, b2) = (
        g.conjugate(to_rep, b1),
        g.conjugate(to_rep, a2),
        g.conjugate(to_rep, b2),
    );
    g.centralizer(rep)
        .iter()
        .map(|&h| {
            [
                rep,
                g.conjugate(h, b1),
                g.conjugate(h, a2),
                g.conjugate(h, b2),
            ]
        })
        .min()
        .expect("centralizer contains the identity")
}

/// Number of orbits of `Aut(G)` on the given structures, which must be in
/// canonical form (as returned by [`search`]) and closed under `Aut(G)`.
pub fn aut_orbit_count(
    group: &Arc<PermGroup>,
    structures: &[BeauvilleStructure],
) -> Result<usize, BeauvilleError> {
    let auts = automorphisms(group)?;
    let gens = automorphism_generators(group, &auts);
    let index: HashMap<[usize; 4], usize> = structures
        .iter()
        .enumerate()
        .map(|(i, s)| (s.key(), i))
        .collect();
    let images: Vec<Vec<usize>> = structures
        .par_iter()
        .map(|s| {
            gens.iter()
                .filter_map(|phi| {
                    let f = |x: usize| phi.map.apply_id(x);
                    index
                        .get(&canonical_key(&s.t1.mapped(f), &s.t2.mapped(f)))
                        .copied()
                })
                .collect()
        })
        .collect();
    let mut parent: Vec<usize> = (0..structures.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, targets) in images.iter().enumerate() {
        for &j in targets {
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    Ok((0..structures.len())
        .filter(|&i| root(&mut parent, i) == i)
        .count())
}

/// A small subset of `auts` generating the same group, chosen greedily.
fn automorphism_generators<'a>(
    group: &PermGroup,
    auts: &'a [Automorphism],
) -> Vec<&'a Automorphism> {
    let gens = group.distinct_generator_ids();
    let key = |table: &[usize]| gens.iter().map(|&g| table[g]).collect::<Vec<_>>();
    let identity: Vec<usize> = (0..group.order()).collect();
    let mut chosen: Vec<&Automorphism> = Vec::new();
    let mut reached: HashSet<Vec<usize>> = HashSet::from([key(&identity)]);
    let mut elements: Vec<Vec<usize>> = vec![identity];
    for phi in auts {
        if reached.contains(&key(phi.map.table())) {
            continue;
        }
        chosen.push(phi);
        // Re-close the generated subgroup under right multiplication by all
        // chosen generators.
        let mut frontier: Vec<Vec<usize>> = elements.clone();
        while let Some(t) = frontier.pop() {
            for g in &chosen {
                let composed: Vec<usize> = g.map.table().iter().map(|&y| t[y]).collect();
                if reached.insert(key(&composed)) {
                    elements.push(composed.clone());
                    frontier.push(composed);
                }
            }
        }
        if elements.len() == auts.len() {
            break;
        }
    }
    chosen
}

pub fn isogenous_invariants(
    g1: i64,
    g2: i64,
    group_order: i64,
) -> Result<SurfaceInvariants, BeauvilleError> {
    if g1 < 2 || g2 < 2 {
        return Err(BeauvilleError::GenusTooSmall(g1, g2));
    }
    if group_order < 1 {
        return Err(BeauvilleError::EmptyGroup);
    }
    let product = (g1 - 1) * (g2 - 1);
    if product % group_order != 0 {
        return Err(BeauvilleError::NonIntegralChi {
            product,
            order: group_order,
        });
    }
    let chi = product / group_order;
    Ok(SurfaceInvariants::from_chi_ksq(chi, 8 * chi))
}

/// Invariants of the surface of a structure. Both quotient curves are
/// rational, so `q = 0`.
pub fn structure_invariants(s: &BeauvilleStructure) -> Result<SurfaceInvariants, BeauvilleError> {
    let g1 = genus(&s.t1)? as i64;
    let g2 = genus(&s.t2)? as i64;
    let inv = isogenous_invariants(g1, g2, s.group().order() as i64)?;
    Ok(inv.with_irregularity(0))
}

/// One line of a family scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub group: String,
    pub order: usize,
    pub beauville: bool,
    pub structures_found: usize,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// What to do per group in a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanDepth {
    /// Stop at the first structure.
    Existence,
    /// Count all structures.
    Full,
}

/// Runs [`search`] over each group a loader produces; failures are recorded
/// per entry. Entries are sorted by group name.
pub fn scan<F>(names: &[String], depth: ScanDepth, load: F) -> Vec<ScanEntry>
where
    F: Fn(&str) -> Result<PermGroup, GroupError> + Sync,
{
    let mut report: Vec<ScanEntry> = names
        .par_iter()
        .map(|name| {
            let start = Instant::now();
            match load(name) {
                Ok(group) => {
                    let group = Arc::new(group);
                    let found = search(&group, depth == ScanDepth::Existence);
                    ScanEntry {
                        group: name.clone(),
                        order: group.order(),
                        beauville: !found.is_empty(),
                        structures_found: found.len(),
                        elapsed_ms: start.elapsed().as_millis() as u64,
                        error: None,
                    }
                }
                Err(e) => ScanEntry {
                    group: name.clone(),
                    order: 0,
                    beauville: false,
                    structures_found: 0,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    report.sort_by(|a, b| a.group.cmp(&b.group));
    report
}
