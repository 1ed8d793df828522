use std::collections::BTreeSet;

use voltlift::oracle::{
    as_pair_subgraph, brute_force_iso, derived_graph_by_closure, exhaustive_common_covers, good_cover_by_definition,
    ISO_BUDGET,
};
use voltlift::{
    decide_with_trees, find_common_covers, is_covering, Ambient, DecideOptions, Input, Outcome, DEFAULT_BUDGET,
};
use voltlift_testkit::{
    corpus, random_condensed, random_graph, random_spec, recondense, relabel, rng, Instance,
};

fn voltage_group_order(inst: &Instance) -> usize {
    inst.vg.spec().generated_elements(inst.vg.voltages()).unwrap().len()
}

#[test]
fn derived_covers_are_regular_with_deck_group_the_voltage_group() {
    let mut r = rng(21);
    for _ in 0..150 {
        let spec = random_spec(&mut r);
        let inst = random_condensed(&mut r, &spec, 5, 7);
        let cover = inst.vg.derived_graph(&Ambient::VoltageGroup).unwrap();
        let n = voltage_group_order(&inst);
        assert!(is_covering(cover.domain(), cover.codomain(), cover.hom()));
        assert_eq!(cover.degree_over(0), n);
        assert!(cover.monodromy(&inst.tree).unwrap().is_regular(1_000_000).unwrap());
        let deck = cover.deck_group();
        assert_eq!(deck.len(), n);
        // translates of one proper lift's interior tile the domain
        let lift = cover.proper_lift(&inst.tree, cover.fiber(inst.tree.base())[0]).unwrap();
        assert_eq!(lift.interior_vertices.len(), inst.vg.graph().vertex_count());
        let mut tiles = BTreeSet::new();
        for g in &deck {
            for &u in &lift.interior_vertices {
                assert!(tiles.insert(g.vmap[u]), "translates overlap");
            }
        }
        assert_eq!(tiles.len(), cover.domain().vertex_count());
        assert!(good_cover_by_definition(&cover, &inst.vg, 4));
    }
}

#[test]
fn decision_is_reflexive_symmetric_and_tree_independent() {
    let mut r = rng(22);
    let opts = DecideOptions::default();
    for i in 0..120 {
        let spec = random_spec(&mut r);
        let a = random_condensed(&mut r, &spec, 4, 6);
        let b = if i % 2 == 0 { relabel(&mut r, &a) } else { random_condensed(&mut r, &spec, 4, 6) };
        let decide = |x: &Instance, y: &Instance| {
            decide_with_trees(Input::with_tree(&x.vg, &x.tree), Input::with_tree(&y.vg, &y.tree), &opts).unwrap()
        };
        assert_eq!(decide(&a, &a).outcome, Outcome::Isomorphic);
        let ab = decide(&a, &b);
        assert_eq!(ab.outcome, decide(&b, &a).outcome);
        assert_eq!(ab.outcome, decide(&recondense(&mut r, &a), &recondense(&mut r, &b)).outcome);
        if let Some(w) = &ab.witness {
            assert!(w.verify(&a.vg, &b.vg).unwrap());
        }
    }
}

#[test]
fn brute_force_iso_behaves_as_an_equivalence() {
    let mut r = rng(23);
    for _ in 0..60 {
        let spec = random_spec(&mut r);
        let a = random_condensed(&mut r, &spec, 4, 6);
        let b = relabel(&mut r, &a);
        let c = relabel(&mut r, &b);
        let (ga, gb, gc) = [&a, &b, &c].map(|x| derived_graph_by_closure(&x.vg).unwrap()).into();
        let refl = brute_force_iso(&ga, &ga, ISO_BUDGET).unwrap().unwrap();
        assert!(refl.is_valid(&ga, &ga));
        let ab = brute_force_iso(&ga, &gb, ISO_BUDGET).unwrap().unwrap();
        let bc = brute_force_iso(&gb, &gc, ISO_BUDGET).unwrap().unwrap();
        assert!(ab.is_valid(&ga, &gb));
        assert!(ab.inverse().is_valid(&gb, &ga));
        assert!(ab.then(&bc).is_valid(&ga, &gc));
    }
}

#[test]
fn backtracking_finds_exactly_the_exhaustive_common_covers() {
    let mut r = rng(24);
    let mut checked = 0;
    while checked < 150 {
        let (g1, _) = random_graph(&mut r, 3, 4);
        let (g2, _) = random_graph(&mut r, 3, 4);
        if g1.vertex_count() * g2.vertex_count() > 8 {
            continue;
        }
        checked += 1;
        let fast: BTreeSet<_> = find_common_covers(&g1, &g2, DEFAULT_BUDGET)
            .unwrap()
            .iter()
            .map(|c| as_pair_subgraph(&g2, &c.theta_vertices, &c.theta_edges))
            .collect();
        let slow: BTreeSet<_> = exhaustive_common_covers(&g1, &g2, 8).unwrap().into_iter().collect();
        assert_eq!(fast, slow);
    }
}

#[test]
fn algebraic_goodness_agrees_with_walk_definition() {
    let (mut good, mut bad) = (0, 0);
    for pair in corpus(25, 60, 6, 8) {
        let (a, b) = (&pair.first, &pair.second);
        for c in find_common_covers(a.vg.graph(), b.vg.graph(), DEFAULT_BUDGET).unwrap() {
            let max_len = 2 * c.graph().edge_count();
            for (mu, x) in [(&c.mu1, a), (&c.mu2, b)] {
                let algebraic = mu.is_good_cover(&x.vg, &x.tree).unwrap();
                assert_eq!(algebraic, good_cover_by_definition(mu, &x.vg, max_len));
                if algebraic {
                    good += 1;
                } else {
                    bad += 1;
                }
            }
        }
    }
    assert!(good > 20 && bad > 20, "good {good}, not good {bad}");
}
