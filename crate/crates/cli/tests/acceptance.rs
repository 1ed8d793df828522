//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p voltlift-cli --test acceptance -- --nocapture`
//! to see the report.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use voltlift::oracle::{
    as_pair_subgraph, brute_force_iso, derived_graph_by_closure, exhaustive_common_covers, good_cover_by_definition,
    ISO_BUDGET,
};
use voltlift::{
    decide_with_trees, find_common_covers, is_covering, AlphaScope, Ambient, CommonCover, CoverMap, DecideOptions, Element,
    GraphHom, GroupSpec, Index, Input, Int, Multigraph, Outcome, Reason, TreeSet, VertexId, VoltageGraph,
    DEFAULT_BUDGET,
};
use voltlift_cli::document::load_str;
use voltlift_testkit::{corpus, random_spanning_tree, random_spec, random_voltage_graph, rng, Instance, Pair, PairKind};

type Check = Result<String, String>;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn load_fixture(name: &str) -> voltlift_cli::document::Loaded {
    load_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

/// Simple 4-cycles (four distinct vertices) in the underlying undirected graph.
fn has_four_cycle(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    let mut adj = vec![HashSet::new(); n];
    for e in g.edges() {
        let (a, b) = (g.src(e), g.dst(e));
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    (0..n).any(|a| {
        adj[a].iter().any(|&b| {
            adj[b].iter().any(|&c| c != a && adj[c].iter().any(|&d| d != a && d != b && adj[d].contains(&a)))
        })
    })
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = voltlift_cli::run([
        "voltlift",
        "decide",
        &fixture("same_quotient_a.json"),
        &fixture("same_quotient_b.json"),
    ]);
    let first = out.stdout.lines().next().unwrap_or_default().to_string();
    ensure(out.code == 0 && first.starts_with("NOT_ISOMORPHIC"), || format!("decide printed {first:?}, exit {}", out.code))?;
    let top = load_fixture("same_quotient_a.json").vg.derived_ball(4).map_err(|e| e.to_string())?;
    let bottom = load_fixture("same_quotient_b.json").vg.derived_ball(4).map_err(|e| e.to_string())?;
    ensure(!has_four_cycle(&top), || "blue = -1 ball has a 4-cycle".into())?;
    ensure(has_four_cycle(&bottom), || "blue = 2 ball has no 4-cycle".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{first}; 4-cycle only in the blue = 2 ball (radius 4, {} vertices)", bottom.vertex_count()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let l = load_fixture("condense_z.json");
    let tree = l.tree.clone().unwrap();
    let condensed = l.vg.condense(&tree).map_err(|e| e.to_string())?;
    let g = condensed.graph();
    let chord_values: Vec<String> = tree
        .chords()
        .iter()
        .map(|&e| format!("{}={}", g.edge_name(e), condensed.voltage(e).coords()[0]))
        .collect();
    let chords: Vec<Element> = tree.chords().iter().map(|&e| condensed.voltage(e).clone()).collect();
    let got: Vec<Int> = chords.iter().map(|x| x.coords()[0].clone()).collect();
    ensure(got == [Int::from(2), Int::from(-2)], || format!("chord voltages {chord_values:?}"))?;
    let spec = condensed.spec();
    let two = spec.element_from_i64(&[2]).unwrap();
    ensure(spec.same_subgroup(&chords, &[two]).unwrap(), || "chords do not generate 2Z".into())?;

    // Over Z/6 the chords generate <2> = {0, 2, 4}, so the derived graph over
    // the whole group has 6 / 3 = 2 components, as [Z : 2Z] = 2 over Z.
    let finite = load_fixture("condense_z6.json");
    let components = finite.vg.count_derived_components().map_err(|e| e.to_string())?;
    let c6 = finite.vg.condense(finite.tree.as_ref().unwrap()).map_err(|e| e.to_string())?;
    let generated = c6.spec().generated_elements(c6.voltages()).unwrap().len();
    let by_counting = 6 / generated;
    let index = c6.spec().subgroup_index(c6.voltages()).unwrap();
    ensure(generated == 3 && components == by_counting && index == Index::Finite(Int::from(by_counting)), || {
        format!("Z/6: {components} components, |<chords>| = {generated}, index {index:?}")
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("chords {}; over Z/6: {components} components = [Z/6 : <2>] = 6/{generated}", chord_values.join(", ")))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    // coordinates are (free, torsion): the Z/4 factor comes second
    let spec = GroupSpec::new(1, vec![Int::from(4)]).unwrap();
    let el = |z: i64, t: i64| spec.element_from_i64(&[z, t]).unwrap();
    let mu1 = [el(0, 1), el(3, 0)];
    let mu2 = [el(0, 2), el(1, 0)];
    let nu = spec.subgroup_intersection(&mu1, &mu2).unwrap();
    ensure(spec.same_subgroup(&nu, &[el(0, 2), el(3, 0)]).unwrap(), || format!("intersection {nu:?}"))?;
    let index = |gens: &[Element]| match spec.subgroup_index(gens).unwrap() {
        Index::Finite(n) => n,
        Index::Infinite => panic!("finite index expected"),
    };
    let (i_nu, i1, i2) = (index(&nu), index(&mu1), index(&mu2));
    let (q1, q2) = (&i_nu / &i1, &i_nu / &i2);
    ensure(&q1 * &i1 == i_nu && &q2 * &i2 == i_nu, || "indices do not divide".into())?;
    ensure(q1 == Int::from(2) && q2 == Int::from(3), || format!("quotient indices {q1}, {q2}"))?;
    within(start, Duration::from_secs(1))?;
    let shown: Vec<String> = nu.iter().map(|g| format!("(t={}, z={})", g.coords()[1], g.coords()[0])).collect();
    Ok(format!("intersection <{}>; [mu1 : nu] = {q1}, [mu2 : nu] = {q2}", shown.join(", ")))
}

/// Goodness of one projection, algebraic vs bounded walk definition.
fn goodness_agrees(mu: &CoverMap, inst: &Instance, max_len: usize) -> Result<bool, String> {
    let algebraic = mu.is_good_cover(&inst.vg, &inst.tree).map_err(|e| e.to_string())?;
    let by_walks = good_cover_by_definition(mu, &inst.vg, max_len);
    ensure(algebraic == by_walks, || format!("algebraic {algebraic}, by walks {by_walks}"))?;
    Ok(algebraic)
}

/// Common covers the decision examined: all of them, or up to the successful one.
fn examined_covers<'a>(covers: &'a [CommonCover], witness: Option<&CommonCover>) -> &'a [CommonCover] {
    match witness.and_then(|w| covers.iter().position(|c| c == w)) {
        Some(i) => &covers[..=i],
        None => covers,
    }
}

#[derive(Default)]
struct GoodTally {
    agree: usize,
    good: usize,
    errors: Vec<String>,
}

impl GoodTally {
    fn check(&mut self, covers: &[CommonCover], a: &Instance, b: &Instance, label: &str) {
        for c in covers {
            let max_len = 2 * c.graph().edge_count();
            for (mu, x) in [(&c.mu1, a), (&c.mu2, b)] {
                match goodness_agrees(mu, x, max_len) {
                    Ok(good) => {
                        self.agree += 1;
                        self.good += good as usize;
                    }
                    Err(e) => self.errors.push(format!("{label}: {e}")),
                }
            }
        }
    }
}

fn not_free_instances() -> (Instance, Instance) {
    let inst = |name| {
        let l = load_fixture(name);
        Instance { tree: l.tree.clone().unwrap(), vg: l.vg }
    };
    (inst("not_free_a.json"), inst("not_free_b.json"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let (a, b) = not_free_instances();
    let v = decide_with_trees(Input::with_tree(&a.vg, &a.tree), Input::with_tree(&b.vg, &b.tree), &DecideOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Isomorphic, || format!("{:?} {:?}", v.outcome, v.reason))?;
    let w = v.witness.as_ref().unwrap();
    let order = w.cover.graph().vertex_count();
    let bound = a.vg.graph().vertex_count() * b.vg.graph().vertex_count();
    ensure(order == 4 && order <= bound, || format!("witness cover has {order} vertices"))?;
    ensure(w.verify(&a.vg, &b.vg).unwrap(), || "witness does not re-check".into())?;
    let any = DecideOptions { alpha: AlphaScope::Any, ..DecideOptions::default() };
    let wide = decide_with_trees(Input::with_tree(&a.vg, &a.tree), Input::with_tree(&b.vg, &b.tree), &any)
        .map_err(|e| e.to_string())?;
    ensure(wide.outcome == Outcome::Isomorphic, || format!("with any alpha: {:?}", wide.outcome))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "ISOMORPHIC, witness cover of order {order} <= {bound}; {} of {} good covers failed before the successful one \
         ({} with alpha ranging over all automorphisms)",
        v.failed_good_covers, v.good_covers_tested, wide.failed_good_covers
    ))
}

/// Every cyclic walk from each base vertex of length at most `max_len`
/// lifts to closed walks exactly when its voltage is trivial. Walks are
/// explored as states (vertex, voltage, lift endpoints), which covers every
/// walk since the outcome only depends on the state.
fn cyclic_lifting_matches(cover: &CoverMap, vg: &VoltageGraph, max_len: usize) -> Result<(), String> {
    let (top, base) = (cover.domain(), cover.codomain());
    let spec = vg.spec();
    for v in base.vertices() {
        let start: Vec<VertexId> = cover.fiber(v).to_vec();
        let first = (v, spec.zero(), start.clone());
        let mut seen = HashSet::from([first.clone()]);
        let mut queue = VecDeque::from([(first, 0usize)]);
        while let Some(((at, volt, pos), len)) = queue.pop_front() {
            if len == max_len {
                continue;
            }
            for step in base.steps_from(at) {
                let next_at = base.traverse(at, step.edge, step.dir).unwrap();
                let next_volt = match step.dir {
                    voltlift::Dir::Forward => spec.add(&volt, vg.voltage(step.edge)).unwrap(),
                    voltlift::Dir::Backward => spec.sub(&volt, vg.voltage(step.edge)).unwrap(),
                };
                let next_pos: Vec<VertexId> =
                    pos.iter().map(|&u| top.traverse(u, cover.lift_step(u, step), step.dir).unwrap()).collect();
                if next_at == v {
                    let zero = spec.is_zero(&next_volt);
                    if next_pos.iter().zip(&start).any(|(x, y)| (x == y) != zero) {
                        return Err(format!("walk at vertex {v} of voltage {next_volt} lifts wrongly"));
                    }
                }
                let state = (next_at, next_volt, next_pos);
                if seen.insert(state.clone()) {
                    queue.push_back((state, len + 1));
                }
            }
        }
    }
    Ok(())
}

fn cover_invariants(inst: &Instance) -> Result<(), String> {
    let cover = inst.vg.derived_graph(&Ambient::VoltageGroup).map_err(|e| e.to_string())?;
    ensure(is_covering(cover.domain(), cover.codomain(), cover.hom()), || "projection is not a covering".into())?;
    let mono = cover.monodromy(&inst.tree).map_err(|e| e.to_string())?;
    ensure(mono.is_regular(1_000_000).map_err(|e| e.to_string())?, || "projection is not regular".into())?;
    let order = inst.vg.spec().generated_elements(inst.vg.voltages()).map_err(|e| e.to_string())?.len();
    let deck = cover.deck_group().len();
    ensure(deck == order, || format!("deck group of size {deck}, voltage group of order {order}"))?;
    cyclic_lifting_matches(&cover, &inst.vg, 2 * inst.vg.graph().edge_count())
}

struct PairReport {
    kind: PairKind,
    outcome: Outcome,
    reason: Reason,
    oracle_iso: Option<bool>,
    failed_before_success: usize,
    /// Failing good covers when the same pair is decided with `AlphaScope::Any`.
    failed_with_any_alpha: Option<usize>,
    invariants: Vec<String>,
    goodness: GoodTally,
    error: Option<String>,
    /// Time spent in the decision and in the brute-force oracle.
    decide_time: Duration,
    oracle_time: Duration,
    checks_time: Duration,
}

fn examine(pair: &Pair) -> PairReport {
    let opts = DecideOptions::default();
    let (a, b) = (&pair.first, &pair.second);
    let mut report = PairReport {
        kind: pair.kind,
        outcome: Outcome::Unresolved,
        reason: Reason::SearchBudget,
        oracle_iso: None,
        failed_before_success: 0,
        failed_with_any_alpha: None,
        invariants: Vec::new(),
        goodness: GoodTally::default(),
        error: None,
        decide_time: Duration::ZERO,
        oracle_time: Duration::ZERO,
        checks_time: Duration::ZERO,
    };
    let clock = Instant::now();
    let verdict = match decide_with_trees(Input::with_tree(&a.vg, &a.tree), Input::with_tree(&b.vg, &b.tree), &opts) {
        Ok(v) => v,
        Err(e) => {
            report.error = Some(format!("decide: {e}"));
            return report;
        }
    };
    report.decide_time = clock.elapsed();
    let clock = Instant::now();
    report.outcome = verdict.outcome;
    report.reason = verdict.reason;
    if verdict.outcome == Outcome::Isomorphic {
        report.failed_before_success = verdict.failed_good_covers;
    }
    if report.failed_before_success > 0 {
        let any = DecideOptions { alpha: AlphaScope::Any, ..DecideOptions::default() };
        match decide_with_trees(Input::with_tree(&a.vg, &a.tree), Input::with_tree(&b.vg, &b.tree), &any) {
            Ok(v) if v.outcome == Outcome::Isomorphic && v.witness.as_ref().unwrap().verify(&a.vg, &b.vg).unwrap() => {
                report.failed_with_any_alpha = Some(v.failed_good_covers);
            }
            Ok(v) => report.error = Some(format!("decide with any alpha: {:?} {:?}", v.outcome, v.reason)),
            Err(e) => report.error = Some(format!("decide with any alpha: {e}")),
        }
    }
    let derived: Vec<Multigraph> = [a, b].iter().map(|x| derived_graph_by_closure(&x.vg).unwrap()).collect();
    match brute_force_iso(&derived[0], &derived[1], ISO_BUDGET) {
        Ok(c) => report.oracle_iso = Some(c.is_some()),
        Err(e) => report.error = Some(format!("oracle: {e}")),
    }
    report.oracle_time = clock.elapsed();
    let clock = Instant::now();
    for x in [a, b] {
        if let Err(e) = cover_invariants(x) {
            report.invariants.push(e);
        }
    }
    if verdict.reason != Reason::DegreeMismatch {
        let covers = find_common_covers(a.vg.graph(), b.vg.graph(), DEFAULT_BUDGET).unwrap();
        let examined = examined_covers(&covers, verdict.witness.as_ref().map(|w| &w.cover));
        report.goodness.check(examined, a, b, &format!("{:?} pair", pair.kind));
    }
    report.checks_time = clock.elapsed();
    report
}

fn examine_all(pairs: &[Pair]) -> Vec<PairReport> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<PairReport>> = (0..pairs.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= pairs.len() {
                    break;
                }
                let r = examine(&pairs[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every pair examined")).collect()
}

fn criterion_5(reports: &[PairReport]) -> Check {
    let mut disagreements = Vec::new();
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for (i, r) in reports.iter().enumerate() {
        if let Some(e) = &r.error {
            disagreements.push(format!("pair {i}: {e}"));
            continue;
        }
        let expected = if r.oracle_iso == Some(true) { Outcome::Isomorphic } else { Outcome::NotIsomorphic };
        if r.outcome != expected {
            disagreements.push(format!("pair {i} ({:?}): decided {:?} {:?}, oracle {:?}", r.kind, r.outcome, r.reason, r.oracle_iso));
        }
        *tally.entry(format!("{:?}", r.reason)).or_default() += 1;
    }
    let iso = reports.iter().filter(|r| r.oracle_iso == Some(true)).count();
    let conflicts = reports.iter().filter(|r| r.failed_before_success > 0).count();
    println!(
        "      corpus: {} pairs, {iso} isomorphic by brute force; verdict reasons {tally:?}",
        reports.len()
    );
    let mut kinds: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let k = kinds.entry(format!("{:?}", r.kind)).or_default();
        k.0 += 1;
        k.1 += (r.oracle_iso == Some(true)) as usize;
    }
    println!("      by construction (pairs, isomorphic): {kinds:?}");
    let decide: Duration = reports.iter().map(|r| r.decide_time).sum();
    let oracle: Duration = reports.iter().map(|r| r.oracle_time).sum();
    let checks: Duration = reports.iter().map(|r| r.checks_time).sum();
    println!("      time: decision {decide:.1?}, brute force {oracle:.1?}, invariant and goodness checks {checks:.1?}");
    let rescued: Vec<usize> = reports.iter().filter_map(|r| r.failed_with_any_alpha).collect();
    println!("      isomorphic pairs where a good cover failed before the successful one: {conflicts}");
    println!(
        "      the same pairs with alpha ranging over all automorphisms: {} decided isomorphic, failing good covers {}",
        rescued.len(),
        rescued.iter().sum::<usize>()
    );
    ensure(disagreements.is_empty(), || format!("{} disagreements, first: {}", disagreements.len(), disagreements[0]))?;
    ensure(reports.len() >= 500, || "fewer than 500 pairs".into())?;
    let spent = decide + oracle;
    ensure(spent < Duration::from_secs(600), || format!("decision and oracle took {spent:.2?}"))?;
    Ok(format!("{} of {} pairs agree with brute force", reports.len(), reports.len()))
}

fn criterion_6(reports: &[PairReport]) -> Check {
    let failures: Vec<&String> = reports.iter().flat_map(|r| &r.invariants).collect();
    ensure(failures.is_empty(), || format!("{} failures, first: {}", failures.len(), failures[0]))?;
    Ok(format!(
        "{} derived covers: covering, regular, deck group = <voltages>, cyclic lifts up to length 2|E|",
        2 * reports.len()
    ))
}

fn wedge_double_cover(x_swaps: bool) -> (CoverMap, Instance) {
    let base = Multigraph::from_names(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
    let (x_edges, y_edges) = if x_swaps {
        ([("x0", "u0", "u1"), ("x1", "u1", "u0")], [("y0", "u0", "u0"), ("y1", "u1", "u1")])
    } else {
        ([("x0", "u0", "u0"), ("x1", "u1", "u1")], [("y0", "u0", "u1"), ("y1", "u1", "u0")])
    };
    let edges: Vec<_> = x_edges.into_iter().chain(y_edges).collect();
    let top = Multigraph::from_names(&["u0", "u1"], &edges).unwrap();
    let hom = GraphHom { vmap: vec![0, 0], emap: vec![0, 0, 1, 1] };
    let cover = CoverMap::new(top, base.clone(), hom).unwrap();
    let vg = VoltageGraph::from_i64(base, GroupSpec::free(1), &[&[0], &[1]]).unwrap();
    let tree = TreeSet::from_edges(vg.graph(), 0, &[]).unwrap();
    (cover, Instance { vg, tree })
}

fn criterion_7(reports: &[PairReport]) -> Check {
    let mut tally = GoodTally::default();
    let (a, b) = not_free_instances();
    let covers = find_common_covers(a.vg.graph(), b.vg.graph(), DEFAULT_BUDGET).unwrap();
    tally.check(&covers, &a, &b, "not_free");
    for r in reports {
        tally.agree += r.goodness.agree;
        tally.good += r.goodness.good;
        tally.errors.extend(r.goodness.errors.iter().cloned());
    }
    for (x_swaps, expected) in [(true, false), (false, true)] {
        let (cover, inst) = wedge_double_cover(x_swaps);
        match goodness_agrees(&cover, &inst, 2 * cover.domain().edge_count()) {
            Ok(good) if good == expected => tally.agree += 1,
            Ok(good) => tally.errors.push(format!("wedge cover (x swaps: {x_swaps}) good = {good}")),
            Err(e) => tally.errors.push(format!("wedge cover: {e}")),
        }
    }
    ensure(tally.errors.is_empty(), || format!("{} disagreements, first: {}", tally.errors.len(), tally.errors[0]))?;
    Ok(format!(
        "{} projections agree ({} good), including both wedge double covers",
        tally.agree, tally.good
    ))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let mut r = rng(808);
    let mut components_seen = 0;
    for i in 0..100 {
        let spec = random_spec(&mut r);
        let vg = random_voltage_graph(&mut r, &spec, 6, 8);
        let full = vg.derived_graph(&Ambient::Full).map_err(|e| e.to_string())?;
        let (count, labels) = full.domain().component_labels();
        for _ in 0..2 {
            let tree = random_spanning_tree(&mut r, vg.graph());
            let condensed = vg.condense(&tree).map_err(|e| e.to_string())?;
            let index = spec.subgroup_index(condensed.voltages()).unwrap();
            ensure(index == Index::Finite(Int::from(count)), || {
                format!("instance {i}: {count} components, index {index:?}")
            })?;
            let local = derived_graph_by_closure(&condensed).map_err(|e| e.to_string())?;
            for k in 0..count {
                let keep: Vec<bool> = labels.iter().map(|&l| l == k).collect();
                let component = full.domain().induced_subgraph(&keep);
                let iso = brute_force_iso(&component, &local, ISO_BUDGET).map_err(|e| e.to_string())?;
                ensure(iso.is_some(), || format!("instance {i}: component {k} differs from the condensed derived graph"))?;
                components_seen += 1;
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("100 instances x 2 trees, {components_seen} components matched, counts = subgroup index"))
}

/// Connected multigraphs with `n` vertices and `m` edges, one per multiset
/// of ordered endpoint pairs.
fn small_graphs(n: usize, m: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; m];
    loop {
        let mut g = Multigraph::new();
        for v in 0..n {
            g.add_vertex(format!("v{v}")).unwrap();
        }
        for (i, &c) in choice.iter().enumerate() {
            g.add_edge(format!("e{i}"), pairs[c].0, pairs[c].1).unwrap();
        }
        if voltlift::is_connected(&g) {
            out.push(g);
        }
        // next non-decreasing sequence
        let Some(i) = (0..m).rev().find(|&i| choice[i] + 1 < pairs.len()) else { break };
        let next = choice[i] + 1;
        for c in &mut choice[i..] {
            *c = next;
        }
    }
    out
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let mut family = Vec::new();
    for (n, max_m) in [(1, 3), (2, 3), (3, 3), (4, 4)] {
        for m in 1..=max_m {
            family.extend(small_graphs(n, m));
        }
    }
    let mut instances = 0;
    let mut nonempty = 0;
    for g1 in &family {
        for g2 in &family {
            if g1.vertex_count() * g2.vertex_count() > 8 {
                continue;
            }
            instances += 1;
            let fast: Vec<_> = find_common_covers(g1, g2, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|c| as_pair_subgraph(g2, &c.theta_vertices, &c.theta_edges))
                .collect();
            let mut fast_sorted = fast.clone();
            fast_sorted.sort();
            fast_sorted.dedup();
            let slow = exhaustive_common_covers(g1, g2, 8).map_err(|e| e.to_string())?;
            ensure(fast_sorted.len() == fast.len(), || "duplicate covers".into())?;
            ensure(fast_sorted == slow, || format!("{g1:?} vs {g2:?}: {} vs {} covers", fast.len(), slow.len()))?;
            nonempty += !slow.is_empty() as usize;
        }
    }
    let double = Multigraph::from_names(&["a"], &[("x", "a", "a"), ("y", "a", "a")]).unwrap();
    let n_fast = find_common_covers(&double, &double, DEFAULT_BUDGET).unwrap().len();
    let n_slow = exhaustive_common_covers(&double, &double, 8).unwrap().len();
    ensure(n_fast == 2 && n_slow == 2, || format!("double loops: {n_fast} and {n_slow} covers"))?;
    Ok(format!(
        "{instances} tiny instances ({nonempty} with covers) agree; double loops have 2 covers; {:.1?}",
        start.elapsed()
    ))
}

fn report(number: usize, title: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let (ok, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => (false, format!("panicked: {:?}", p.downcast_ref::<String>().map(String::as_str).or(p.downcast_ref::<&str>().copied()))),
    };
    println!("{} {number}. {title}: {detail} [{:.1?}]", if ok { "PASS" } else { "FAIL" }, start.elapsed());
    ok
}

#[test]
fn acceptance() {
    let mut all = true;
    all &= report(1, "same quotient, different voltages", criterion_1);
    all &= report(2, "condensation", criterion_2);
    all &= report(3, "subgroup intersection in Z/4 + Z", criterion_3);
    all &= report(4, "isomorphic quotients of a non-free action", criterion_4);

    let start = Instant::now();
    let pairs = corpus(5, 600, 6, 8);
    let reports = examine_all(&pairs);
    let elapsed = start.elapsed();
    println!("      corpus examined in {elapsed:.1?}");
    all &= report(5, "decision vs brute force on random pairs", || criterion_5(&reports));
    all &= report(6, "cover invariants of derived graphs", || criterion_6(&reports));
    all &= report(7, "algebraic vs definitional goodness", || criterion_7(&reports));
    all &= report(8, "condensation soundness", criterion_8);
    all &= report(9, "common cover completeness", criterion_9);
    assert!(all, "some acceptance criteria failed");
}
