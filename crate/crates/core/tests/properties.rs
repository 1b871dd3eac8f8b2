mod common;

use std::sync::Arc;

use common::{cycles_lcm, cycles_of, digits, images, perm, then};
use ogs_core::catalog;
use ogs_core::ogs::Method;
use ogs_core::{ExponentVector, Item, OrderedGeneratingSystem, PermGroup, Permutation};
use proptest::prelude::*;

fn arb_images(max_degree: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_degree).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

fn arb_triple(max_degree: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
    (1..=max_degree).prop_flat_map(|n| {
        let s = || Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
        (s(), s(), s())
    })
}

/// A flat system of disjoint cycles, one item per cycle, verified
/// exhaustively.
fn cycle_product(lengths: &[usize]) -> OrderedGeneratingSystem {
    let n: usize = lengths.iter().sum();
    let mut items = Vec::new();
    let mut start = 0;
    for &l in lengths {
        let mut img = common::identity(n);
        for (slot, x) in img[start..start + l].iter_mut().zip(cycles_of(&[l])) {
            *slot = x + start;
        }
        items.push(Item::new(perm(&img), l as u64));
        start += l;
    }
    let g = PermGroup::new(items.iter().map(|i| i.perm.clone()).collect()).unwrap();
    let mut ogs =
        OrderedGeneratingSystem::new(Arc::new(g), "abelian", items, None, "test").unwrap();
    assert!(ogs.verify(Method::Exhaustive, 1 << 28).unwrap().ok);
    ogs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compose_matches_oracle((a, b, c) in arb_triple(12)) {
        let (p, q, r) = (perm(&a), perm(&b), perm(&c));
        prop_assert_eq!(images(&p.compose(&q).unwrap()), then(&a, &b));
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_order(a in arb_images(16)) {
        let p = perm(&a);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert_eq!(p.order(), cycles_lcm(&a));
        prop_assert!(p.power(p.order() as i64).is_identity());
        prop_assert_eq!(p.power(-1), p.inverse());
    }

    #[test]
    fn cycle_string_round_trip(a in arb_images(20)) {
        let p = perm(&a);
        let text = p.to_cycles();
        prop_assert_eq!(Permutation::parse(&text, Some(a.len())).unwrap(), p);
    }

    #[test]
    fn abelian_rank_unrank(
        lengths in prop::collection::vec(1usize..7, 1..5),
        seed in any::<u64>(),
    ) {
        let ogs = cycle_product(&lengths);
        let bounds: Vec<u64> = lengths.iter().map(|&l| l as u64).collect();
        let size: u128 = bounds.iter().map(|&b| b as u128).product();
        prop_assert_eq!(ogs.bounds_product(), size);
        let r = common::Mix(seed).below(size);
        let e = digits(&bounds, r);
        let v = ExponentVector(e.clone());
        prop_assert_eq!(ogs.rank(&v).unwrap(), r);
        prop_assert_eq!(ogs.unrank(r).unwrap(), v.clone());
        let w = ogs.word(&v).unwrap();
        prop_assert_eq!(images(&w), common::word(&ogs, &e));
        prop_assert_eq!(ogs.factor(&w).unwrap(), v);
    }
}

#[test]
fn m11_rank_unrank_is_a_bijection() {
    let (g, ogs) = catalog::build("M11").unwrap();
    let elements = common::group_closure(&g);
    assert_eq!(elements.len(), 7920);
    let mut seen = std::collections::HashSet::new();
    for r in 0..ogs.bounds_product() {
        let e = ogs.unrank(r).unwrap();
        assert_eq!(ogs.rank(&e).unwrap(), r);
        let w = common::word(&ogs, &e.0);
        assert!(elements.contains(&w));
        assert!(seen.insert(w));
    }
    assert_eq!(seen.len(), 7920);
}

#[test]
fn rank_rejects_out_of_range() {
    let (_, ogs) = catalog::build("A5").unwrap();
    assert!(ogs.unrank(60).is_err());
    let mut e = ogs.unrank(0).unwrap();
    e.0[0] = ogs.items()[0].bound;
    assert!(ogs.rank(&e).is_err());
    e.0.pop();
    assert!(ogs.word(&e).is_err());
}
