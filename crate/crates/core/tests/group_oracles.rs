use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use proptest::prelude::*;
use trisurf_core::group::{
    abelian_catalog, automorphisms, builtin, direct_product_of_cyclic, order_of, PermGroup,
    Permutation,
};

/// Closure by repeated multiplication of the whole set until nothing new
/// appears.
fn naive_closure(gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut set: BTreeSet<Permutation> = gens.iter().cloned().collect();
    set.insert(Permutation::identity(gens[0].degree()));
    loop {
        let snapshot: Vec<Permutation> = set.iter().cloned().collect();
        let before = set.len();
        for a in &snapshot {
            for b in &snapshot {
                set.insert(a.then(b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

fn catalog() -> Vec<PermGroup> {
    let mut groups: Vec<PermGroup> = [
        "C1", "C2", "C6", "C7", "C12", "S3", "S4", "A4", "A5", "D4", "D5", "D6", "D10", "EA2x2",
        "EA3x3", "PSL2_2", "PSL2_3", "PSL2_5", "C2xC2xC2", "C2xC6",
    ]
    .iter()
    .map(|n| builtin(n).unwrap())
    .collect();
    // S3 x C4 on disjoint points.
    let s3c4 = PermGroup::close(vec![
        Permutation::from_cycles(7, &[&[1, 2, 3]]).unwrap(),
        Permutation::from_cycles(7, &[&[1, 2]]).unwrap(),
        Permutation::from_cycles(7, &[&[4, 5, 6, 7]]).unwrap(),
    ])
    .unwrap();
    groups.push(s3c4);
    groups
}

#[test]
fn closure_matches_naive_fixed_point() {
    for g in catalog() {
        let naive = naive_closure(g.generators());
        assert_eq!(naive.len(), g.order(), "{}", g.label());
        assert!(g.elements().iter().cloned().eq(naive.into_iter()));
    }
}

#[test]
fn s5_has_order_120() {
    let gens = vec![
        Permutation::from_images(&[2, 3, 4, 5, 1]).unwrap(),
        Permutation::from_images(&[2, 1, 3, 4, 5]).unwrap(),
    ];
    assert_eq!(naive_closure(&gens).len(), 120);
    assert_eq!(PermGroup::close(gens).unwrap().order(), 120);
}

#[test]
fn classes_match_brute_force_conjugation() {
    for g in catalog() {
        let mut brute: Vec<BTreeSet<usize>> = Vec::new();
        let mut done = vec![false; g.order()];
        for x in 0..g.order() {
            if done[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..g.order()).map(|h| g.conjugate(h, x)).collect();
            for &y in &class {
                done[y] = true;
            }
            brute.push(class);
        }
        let ours: Vec<BTreeSet<usize>> = g
            .classes()
            .iter()
            .map(|c| c.members.iter().copied().collect())
            .collect();
        assert_eq!(ours, brute, "{}", g.label());
        let total: usize = g.classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order());
    }
}

#[test]
fn s4_class_sizes() {
    let s4 = builtin("S4").unwrap();
    let sizes: Vec<usize> = s4.classes().iter().map(|c| c.len()).collect();
    let mut sorted = sizes.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![1, 3, 6, 6, 8]);
}

/// Normal subgroups as unions of classes that contain the identity and are
/// closed under products.
fn brute_force_is_simple(g: &PermGroup) -> bool {
    let k = g.classes().len();
    assert!(k <= 16);
    for mask in 1u32..(1 << (k - 1)) {
        let mut members: HashSet<usize> = HashSet::from([0]);
        for i in 1..k {
            if mask & (1 << (i - 1)) != 0 {
                members.extend(g.classes()[i].members.iter().copied());
            }
        }
        if members.len() == g.order() || g.order() % members.len() != 0 {
            continue;
        }
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| members.contains(&g.mul(a, b))));
        if closed {
            return false;
        }
    }
    g.order() > 1
}

#[test]
fn simplicity_matches_normal_subgroup_enumeration() {
    for g in catalog() {
        if g.order() < 2 {
            continue;
        }
        let expected = if g.classes().len() <= 16 {
            brute_force_is_simple(&g)
        } else {
            // Only abelian groups in the catalog have many classes.
            assert!(g.is_abelian());
            (2..g.order()).all(|d| g.order() % d != 0)
        };
        assert_eq!(g.is_simple(), expected, "{}", g.label());
    }
    for factors in abelian_catalog(60).into_iter().skip(1) {
        let g = direct_product_of_cyclic(&factors).unwrap();
        let prime = (2..g.order()).all(|d| g.order() % d != 0);
        assert_eq!(g.is_simple(), prime, "{factors:?}");
    }
}

/// Every assignment of generator images, checked for multiplicativity on all
/// pairs of elements and for bijectivity.
fn brute_force_automorphism_count(g: &PermGroup) -> usize {
    let gens = g.generator_ids().to_vec();
    let n = g.order();
    let mut count = 0;
    let mut images = vec![0usize; gens.len()];
    loop {
        // Build the map along a spanning tree, then check everything.
        let mut table = vec![usize::MAX; n];
        table[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if table[y] == usize::MAX {
                    table[y] = g.mul(table[x], images[gi]);
                    queue.push_back(y);
                }
            }
        }
        let hom = (0..n).all(|a| (0..n).all(|b| table[g.mul(a, b)] == g.mul(table[a], table[b])));
        let bij = table.iter().collect::<HashSet<_>>().len() == n;
        if hom && bij {
            count += 1;
        }
        // Next assignment.
        let mut i = 0;
        loop {
            if i == images.len() {
                return count;
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    for name in ["C5", "S3", "C1", "D4", "EA2x2", "C2xC6", "A4", "C12"] {
        let g = Arc::new(builtin(name).unwrap());
        let auts = automorphisms(&g).unwrap();
        assert_eq!(auts.len(), brute_force_automorphism_count(&g), "{name}");
    }
}

#[test]
fn inner_flags_match_conjugation() {
    for name in ["S4", "D4", "A4", "C6", "A5"] {
        let g = Arc::new(builtin(name).unwrap());
        let auts = automorphisms(&g).unwrap();
        let inner_tables: HashSet<Vec<usize>> = (0..g.order())
            .map(|h| (0..g.order()).map(|x| g.conjugate(h, x)).collect())
            .collect();
        for phi in &auts {
            let table: Vec<usize> = (0..g.order()).map(|x| phi.map.apply_id(x)).collect();
            assert_eq!(phi.inner, inner_tables.contains(&table), "{name}");
        }
        assert_eq!(auts.iter().filter(|a| a.inner).count(), inner_tables.len());
    }
}

#[test]
fn automorphisms_form_a_group() {
    for name in ["S4", "D5", "EA3x3", "A5", "C2xC2xC2"] {
        let g = Arc::new(builtin(name).unwrap());
        let auts = automorphisms(&g).unwrap();
        let tables: HashSet<Vec<usize>> = auts
            .iter()
            .map(|a| (0..g.order()).map(|x| a.map.apply_id(x)).collect())
            .collect();
        assert_eq!(tables.len(), auts.len());
        let identity: Vec<usize> = (0..g.order()).collect();
        assert!(tables.contains(&identity));
        for a in &auts {
            assert!(a.map.is_bijective());
            for b in auts.iter().step_by(7) {
                let composed = a.map.then(&b.map).unwrap();
                let t: Vec<usize> = (0..g.order()).map(|x| composed.apply_id(x)).collect();
                assert!(tables.contains(&t));
            }
            let mut inv = vec![0; g.order()];
            for x in 0..g.order() {
                inv[a.map.apply_id(x)] = x;
            }
            assert!(tables.contains(&inv));
        }
    }
}

#[test]
fn psl2_orders_and_simplicity() {
    for p in [5usize, 7, 11, 13] {
        let g = builtin(&format!("PSL2_{p}")).unwrap();
        assert_eq!(g.order(), p * (p * p - 1) / 2);
        assert!(g.is_simple());
    }
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subgroups_and_orders(g in perm_strategy(6), h in perm_strategy(6), k in perm_strategy(6)) {
        let big = PermGroup::close(vec![g.clone(), h.clone(), k]).unwrap();
        let sub = PermGroup::close(vec![g.clone(), h]).unwrap();
        prop_assert!(sub.elements().iter().all(|x| big.contains(x)));
        prop_assert_eq!(big.order() % sub.order(), 0);
        let cyclic = PermGroup::close(vec![g.clone()]).unwrap();
        prop_assert_eq!(cyclic.order() as u64, order_of(&g));
    }

    #[test]
    fn classes_are_conjugation_closed(g in perm_strategy(5), h in perm_strategy(5)) {
        let group = PermGroup::close(vec![g, h]).unwrap();
        for c in group.classes() {
            for &x in &c.members {
                for y in (0..group.order()).step_by(3) {
                    prop_assert_eq!(group.class_of(group.conjugate(y, x)), group.class_of(x));
                }
            }
        }
    }
}
