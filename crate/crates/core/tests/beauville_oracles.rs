use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use trisurf_core::beauville::{
    aut_orbit_count, is_beauville_pair, scan, search, structure_invariants, ScanDepth,
};
use trisurf_core::group::{abelian_catalog, automorphisms, builtin, direct_product_of_cyclic};
use trisurf_core::triangle::{riemann_hurwitz_genus, SphericalTriple};
use trisurf_core::PermGroup;

/// Stabilizer set of `(a, b, (ab)^-1)` built from permutations: every
/// conjugate of every power.
fn brute_sigma(g: &PermGroup, a: usize, b: usize) -> Vec<bool> {
    let c = g.inv(g.mul(a, b));
    let mut mask = vec![false; g.order()];
    for x in [a, b, c] {
        let p = g.element(x);
        let mut power = p.clone();
        loop {
            for h in g.elements() {
                let conj = h.inverse().then(&power).then(h);
                mask[g.index_of(&conj).unwrap()] = true;
            }
            if power.is_identity() {
                break;
            }
            power = power.then(p);
        }
    }
    mask
}

fn element_order(g: &PermGroup, x: usize) -> u32 {
    let mut k = 1;
    let mut p = x;
    while p != 0 {
        p = g.mul(p, x);
        k += 1;
    }
    k
}

/// Unpruned search: all pairs of hyperbolic generating triples, reduced to
/// the least simultaneous conjugate by trying every element.
fn brute_force_structures(g: &PermGroup) -> BTreeSet<[usize; 4]> {
    let n = g.order();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !g.generates_ids(&[a, b]) {
                continue;
            }
            let c = g.inv(g.mul(a, b));
            let orders = [a, b, c].map(|x| element_order(g, x));
            if matches!(riemann_hurwitz_genus(n as u64, orders), Ok(genus) if genus >= 2) {
                triples.push((a, b, brute_sigma(g, a, b)));
            }
        }
    }
    let mut out = BTreeSet::new();
    for (a1, b1, s1) in &triples {
        for (a2, b2, s2) in &triples {
            let meet = s1.iter().zip(s2).filter(|(x, y)| **x && **y).count();
            if meet != 1 {
                continue;
            }
            let key = (0..n)
                .map(|h| [*a1, *b1, *a2, *b2].map(|x| g.conjugate(h, x)))
                .min()
                .unwrap();
            out.insert(key);
        }
    }
    out
}

fn keys(found: &[trisurf_core::BeauvilleStructure]) -> BTreeSet<[usize; 4]> {
    found.iter().map(|s| s.key()).collect()
}

#[test]
fn search_matches_unpruned_enumeration() {
    for name in [
        "A5", "EA5x5", "S4", "A4", "D5", "EA3x3", "C2xC6", "EA2x2", "C6", "C2xC2xC2",
    ] {
        let g = Arc::new(builtin(name).unwrap());
        let found = search(&g, false);
        let ours = keys(&found);
        assert_eq!(ours.len(), found.len(), "{name}: duplicates");
        assert_eq!(ours, brute_force_structures(&g), "{name}");
        assert_eq!(search(&g, true).is_empty(), found.is_empty());
    }
}

#[test]
fn every_structure_reverifies() {
    for name in ["EA5x5", "PSL2_7"] {
        let g = Arc::new(builtin(name).unwrap());
        let found = search(&g, false);
        assert!(!found.is_empty());
        for s in found.iter().step_by(7) {
            assert!(is_beauville_pair(&s.t1, &s.t2).unwrap());
            let inv = structure_invariants(s).unwrap();
            assert!(inv.chi >= 1);
            assert_eq!(inv.ksq, 8 * inv.chi);
            assert!(inv.is_consistent());
        }
    }
}

#[test]
fn structures_are_symmetric_and_aut_invariant() {
    let g = Arc::new(builtin("EA5x5").unwrap());
    let found = search(&g, false);
    let all = keys(&found);
    let auts = automorphisms(&g).unwrap();
    let canon = |k: [usize; 4]| {
        (0..g.order())
            .map(|h| k.map(|x| g.conjugate(h, x)))
            .min()
            .unwrap()
    };
    for s in found.iter().step_by(97) {
        let [a1, b1, a2, b2] = s.key();
        assert!(all.contains(&canon([a2, b2, a1, b1])));
        for phi in auts.iter().step_by(11) {
            let image = [a1, b1, a2, b2].map(|x| phi.map.apply_id(x));
            assert!(all.contains(&canon(image)));
        }
    }
}

#[test]
fn aut_orbits_match_brute_force() {
    for name in ["EA5x5", "S4", "A5"] {
        let g = Arc::new(builtin(name).unwrap());
        let found = search(&g, false);
        let auts = automorphisms(&g).unwrap();
        let canon = |k: [usize; 4]| {
            (0..g.order())
                .map(|h| k.map(|x| g.conjugate(h, x)))
                .min()
                .unwrap()
        };
        let mut seen: HashSet<[usize; 4]> = HashSet::new();
        let mut orbits = 0;
        for s in &found {
            if seen.contains(&s.key()) {
                continue;
            }
            orbits += 1;
            for phi in &auts {
                seen.insert(canon(s.key().map(|x| phi.map.apply_id(x))));
            }
        }
        assert_eq!(seen.len(), found.len());
        assert_eq!(aut_orbit_count(&g, &found).unwrap(), orbits, "{name}");
    }
}

#[test]
fn unmarked_flag_matches_automorphism_search() {
    let g = Arc::new(builtin("EA5x5").unwrap());
    let auts = automorphisms(&g).unwrap();
    let found = search(&g, false);
    for s in found.iter().step_by(13) {
        let [a1, b1, _] = s.t1.ids();
        let [a2, b2, _] = s.t2.ids();
        let expected = auts
            .iter()
            .any(|phi| phi.map.apply_id(a1) == a2 && phi.map.apply_id(b1) == b2);
        assert_eq!(s.triples_unmarked_equivalent, Some(expected));
        // GL(2, 5) is transitive on ordered bases.
        assert!(expected);
        let t = SphericalTriple::from_ids(g.clone(), a1, b1).unwrap();
        assert_eq!(t.ids(), s.t1.ids());
    }
}

#[test]
fn abelian_scan_up_to_sixty() {
    let names: Vec<String> = abelian_catalog(60)
        .iter()
        .map(|f| {
            f.iter()
                .map(|n| format!("C{n}"))
                .collect::<Vec<_>>()
                .join("x")
        })
        .collect();
    assert_eq!(names.len(), 102);
    let report = scan(&names, ScanDepth::Existence, |name| {
        let factors: Vec<usize> = name
            .split('x')
            .map(|p| p.trim_start_matches('C').parse().unwrap())
            .collect();
        direct_product_of_cyclic(&factors)
    });
    let beauville: Vec<&str> = report
        .iter()
        .filter(|e| e.beauville)
        .map(|e| e.group.as_str())
        .collect();
    assert_eq!(beauville, vec!["C5xC5", "C7xC7"]);
    assert!(report.iter().all(|e| e.error.is_none()));
}

#[test]
fn ea7_hand_witness() {
    // Cyclic subgroups of slopes {0, inf, 1} and {2, 3, 6} in F_7^2.
    let g = Arc::new(builtin("EA7x7").unwrap());
    let x = g.generators()[0].clone();
    let y = g.generators()[1].clone();
    let t1 = SphericalTriple::new(g.clone(), &x, &y).unwrap();
    let t2 = SphericalTriple::new(g.clone(), &x.then(&y.pow(2)), &x.then(&y.pow(3))).unwrap();
    let [a1, b1, _] = t1.ids();
    let [a2, b2, _] = t2.ids();
    let s1 = brute_sigma(&g, a1, b1);
    let s2 = brute_sigma(&g, a2, b2);
    assert_eq!(s1.iter().zip(&s2).filter(|(p, q)| **p && **q).count(), 1);
    assert!(is_beauville_pair(&t1, &t2).unwrap());
    // 2g - 2 = 49 - 3 * 7.
    assert_eq!(riemann_hurwitz_genus(49, [7, 7, 7]).unwrap(), 15);
}
