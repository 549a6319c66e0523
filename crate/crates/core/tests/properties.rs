use std::collections::BTreeSet;

use proptest::prelude::*;
use sectionkit::analysis::normal_subgroups;
use sectionkit::construct::{quotient, DirectProduct, Side};
use sectionkit::formats::{parse_group, render_group};
use sectionkit::iso::{fingerprint, is_isomorphic};
use sectionkit::{PermGroup, Permutation};

const DEGREE: usize = 6;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group() -> impl Strategy<Value = PermGroup> {
    prop::collection::vec(perm(DEGREE), 0..3).prop_map(|gens| PermGroup::new(DEGREE, gens).unwrap())
}

fn brute_closure(g: &PermGroup) -> BTreeSet<Permutation> {
    let id = Permutation::identity(g.degree());
    let mut set = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn relabel(g: &PermGroup, c: &Permutation) -> PermGroup {
    PermGroup::new(
        g.degree(),
        g.generators().iter().map(|x| x.conjugate_by(c)).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_with_inverses(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).apply(3), b.apply(a.apply(3)));
        prop_assert!(a.pow(a.order()).is_identity());
    }

    #[test]
    fn chain_order_matches_closure(g in group()) {
        let brute = brute_closure(&g);
        prop_assert_eq!(g.order(), brute.len() as u64);
        let listed: BTreeSet<Permutation> = g.elements().unwrap().iter().cloned().collect();
        prop_assert_eq!(&listed, &brute);
        for x in brute.iter().take(20) {
            prop_assert!(g.has(x));
            prop_assert!(brute.contains(&x.inverse()));
        }
        let outside = Permutation::from_cycles(DEGREE + 1, &[vec![DEGREE - 1, DEGREE]]).unwrap();
        prop_assert!(g.contains(&outside).is_err());
    }

    #[test]
    fn orbits_partition_points_and_divide_order(g in group()) {
        let orbits = g.orbits();
        let total: usize = orbits.iter().map(Vec::len).sum();
        prop_assert_eq!(total, DEGREE);
        for o in &orbits {
            prop_assert_eq!(g.order() % o.len() as u64, 0);
        }
    }

    #[test]
    fn quotient_orders_and_maps(g in group(), a in perm(DEGREE), b in perm(DEGREE)) {
        prop_assume!(g.order() <= 120);
        let elements = g.elements().unwrap();
        let x = &elements[a.apply(0) * elements.len() / DEGREE];
        let y = &elements[b.apply(0) * elements.len() / DEGREE];
        for n in normal_subgroups(&g).unwrap() {
            let q = quotient(&g, &n).unwrap();
            prop_assert_eq!(q.group().order() * n.order(), g.order());
            prop_assert_eq!(q.map(&x.then(y)).unwrap(), q.map(x).unwrap().then(&q.map(y).unwrap()));
            prop_assert!(q.map(&n.generators().first().cloned()
                .unwrap_or_else(|| Permutation::identity(DEGREE))).unwrap().is_identity());
        }
    }

    #[test]
    fn isomorphism_under_relabelling(g in group(), c in perm(DEGREE)) {
        prop_assume!(g.order() <= 120);
        let h = relabel(&g, &c);
        prop_assert_eq!(fingerprint(&g).unwrap(), fingerprint(&h).unwrap());
        let r = is_isomorphic(&g, &h).unwrap();
        prop_assert!(r.isomorphic);
        let w = r.witness.unwrap();
        prop_assert!(w.is_bijective());
        let back = is_isomorphic(&h, &g).unwrap();
        prop_assert!(back.isomorphic);
    }

    #[test]
    fn isomorphism_respects_order(g in group(), h in group()) {
        prop_assume!(g.order() <= 120 && h.order() <= 120);
        let r = is_isomorphic(&g, &h).unwrap();
        if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
            prop_assert!(!r.isomorphic);
        }
        if r.isomorphic {
            prop_assert_eq!(fingerprint(&g).unwrap(), fingerprint(&h).unwrap());
        }
    }

    #[test]
    fn product_projections_are_homomorphisms(g in group(), h in group(), a in perm(DEGREE), b in perm(DEGREE)) {
        let dp = DirectProduct::new(g.clone(), h.clone());
        prop_assert_eq!(dp.f().order(), g.order() * h.order());
        let z = dp.pair(&a, &b);
        prop_assert_eq!(dp.project(Side::X, &z), a.clone());
        prop_assert_eq!(dp.project(Side::Y, &z), b.clone());
        let w = dp.pair(&b, &a);
        prop_assert_eq!(dp.project(Side::X, &z.then(&w)), a.then(&b));
    }

    #[test]
    fn group_files_round_trip(g in group()) {
        let text = render_group(&g, Some("G"));
        let parsed = parse_group(&text).unwrap();
        prop_assert_eq!(parsed.name.as_deref(), Some("G"));
        prop_assert!(parsed.group.same_as(&g));
        prop_assert_eq!(render_group(&parsed.group, Some("G")), text);
    }
}
