use voltlift::oracle::{brute_force_iso, derived_graph_by_closure, ISO_BUDGET};
use voltlift::{decide_with_trees, DecideOptions, Input, Outcome};
use voltlift_testkit::corpus;

#[test]
fn decision_matches_brute_force_on_small_corpus() {
    let opts = DecideOptions::default();
    for (i, pair) in corpus(11, 120, 6, 8).iter().enumerate() {
        let a = Input::with_tree(&pair.first.vg, &pair.first.tree);
        let b = Input::with_tree(&pair.second.vg, &pair.second.tree);
        let verdict = decide_with_trees(a, b, &opts).unwrap();
        let d1 = derived_graph_by_closure(&pair.first.vg).unwrap();
        let d2 = derived_graph_by_closure(&pair.second.vg).unwrap();
        let iso = brute_force_iso(&d1, &d2, ISO_BUDGET).unwrap().is_some();
        let expected = if iso { Outcome::Isomorphic } else { Outcome::NotIsomorphic };
        assert_eq!(verdict.outcome, expected, "pair {i} {:?}: {:?}", pair.kind, verdict.reason);
        if let Some(w) = &verdict.witness {
            assert!(w.verify(&pair.first.vg, &pair.second.vg).unwrap(), "pair {i}");
        }
    }
}
