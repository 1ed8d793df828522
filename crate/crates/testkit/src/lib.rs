//! Seeded generators of small voltage graphs over finite abelian groups and
//! of pairs with known or unknown relationship, for cross-checking the
//! decision procedure against brute force.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use voltlift::{spanning_tree, Element, EdgeId, GroupSpec, Int, Multigraph, TreeSet, VertexId, VoltageGraph};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite groups in standard form with at most 16 elements.
pub const FINITE_SPECS: &[&[i64]] = &[
    &[2], &[3], &[4], &[5], &[6], &[7], &[8], &[9], &[10], &[11], &[12], &[13], &[14], &[15], &[16],
    &[2, 2], &[2, 4], &[2, 6], &[2, 8], &[3, 3], &[4, 4], &[2, 2, 2], &[2, 2, 4], &[2, 2, 2, 2],
];

pub fn spec_of(moduli: &[i64]) -> GroupSpec {
    GroupSpec::finite(moduli.iter().map(|&d| Int::from(d)).collect()).expect("moduli are at least 2")
}

pub fn random_spec(rng: &mut TestRng) -> GroupSpec {
    spec_of(FINITE_SPECS.choose(rng).expect("nonempty"))
}

pub fn random_element(rng: &mut TestRng, spec: &GroupSpec) -> Element {
    let coords: Vec<i64> = spec.moduli().iter().map(|d| rng.gen_range(0..to_i64(d))).collect();
    let mut full = vec![0i64; spec.rank()];
    full.extend(coords);
    spec.element_from_i64(&full).expect("length matches")
}

fn to_i64(x: &Int) -> i64 {
    i64::try_from(x).expect("small integer")
}

/// A voltage graph together with a tree it is condensed over.
#[derive(Debug, Clone)]
pub struct Instance {
    pub vg: VoltageGraph,
    pub tree: TreeSet,
}

/// Random connected multigraph with `1..=max_v` vertices and at most `max_e`
/// edges (at least one), built from a random tree plus random extra edges
/// (loops and parallels allowed) in shuffled insertion order. Returns the
/// graph and its tree edges.
pub fn random_graph(rng: &mut TestRng, max_v: usize, max_e: usize) -> (Multigraph, Vec<EdgeId>) {
    let n = rng.gen_range(1..=max_v.min(max_e + 1));
    let m = rng.gen_range((n - 1).max(1)..=max_e);
    let mut raw: Vec<(usize, usize, bool)> = Vec::with_capacity(m);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        raw.push(if rng.gen_bool(0.5) { (parent, i, true) } else { (i, parent, true) });
    }
    while raw.len() < m {
        raw.push((rng.gen_range(0..n), rng.gen_range(0..n), false));
    }
    raw.shuffle(rng);
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(format!("v{v}")).expect("fresh name");
    }
    let mut tree = Vec::new();
    for (i, &(a, b, in_tree)) in raw.iter().enumerate() {
        let e = g.add_edge(format!("e{i}"), a, b).expect("fresh name");
        if in_tree {
            tree.push(e);
        }
    }
    (g, tree)
}

/// Random condensed voltage graph: zero on a random tree, random elsewhere.
pub fn random_condensed(rng: &mut TestRng, spec: &GroupSpec, max_v: usize, max_e: usize) -> Instance {
    let (g, tree_edges) = random_graph(rng, max_v, max_e);
    let tree = TreeSet::from_edges(&g, 0, &tree_edges).expect("generated tree spans");
    let voltages = g
        .edges()
        .map(|e| if tree.contains(e) { spec.zero() } else { random_element(rng, spec) })
        .collect();
    Instance { vg: VoltageGraph::new(g, spec.clone(), voltages).expect("valid voltages"), tree }
}

/// Random voltage graph with arbitrary voltages on every edge.
pub fn random_voltage_graph(rng: &mut TestRng, spec: &GroupSpec, max_v: usize, max_e: usize) -> VoltageGraph {
    let (g, _) = random_graph(rng, max_v, max_e);
    let voltages = g.edges().map(|_| random_element(rng, spec)).collect();
    VoltageGraph::new(g, spec.clone(), voltages).expect("valid voltages")
}

/// Uniformly shuffled spanning tree (Kruskal over a random edge order) with a random base.
pub fn random_spanning_tree(rng: &mut TestRng, g: &Multigraph) -> TreeSet {
    let mut parent: Vec<usize> = g.vertices().collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut order: Vec<EdgeId> = g.edges().collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for e in order {
        let (a, b) = (find(&mut parent, g.src(e)), find(&mut parent, g.dst(e)));
        if a != b {
            parent[a] = b;
            edges.push(e);
        }
    }
    let base = rng.gen_range(0..g.vertex_count());
    TreeSet::from_edges(g, base, &edges).expect("kruskal tree spans a connected graph")
}

/// Same voltage graph with vertices and edges inserted in a random order
/// under fresh names; the tree is carried along.
pub fn relabel(rng: &mut TestRng, inst: &Instance) -> Instance {
    let g = inst.vg.graph();
    let mut vorder: Vec<VertexId> = g.vertices().collect();
    let mut eorder: Vec<EdgeId> = g.edges().collect();
    vorder.shuffle(rng);
    eorder.shuffle(rng);
    let mut new_v = vec![0; g.vertex_count()];
    let mut h = Multigraph::new();
    for (i, &v) in vorder.iter().enumerate() {
        new_v[v] = h.add_vertex(format!("w{i}")).expect("fresh name");
    }
    let mut new_e = vec![0; g.edge_count()];
    let mut voltages = Vec::with_capacity(g.edge_count());
    for (i, &e) in eorder.iter().enumerate() {
        new_e[e] = h.add_edge(format!("f{i}"), new_v[g.src(e)], new_v[g.dst(e)]).expect("fresh name");
        voltages.push(inst.vg.voltage(e).clone());
    }
    let tree_edges: Vec<EdgeId> = inst.tree.edges().iter().map(|&e| new_e[e]).collect();
    let tree = TreeSet::from_edges(&h, new_v[inst.tree.base()], &tree_edges).expect("tree is carried along");
    Instance { vg: VoltageGraph::new(h, inst.vg.spec().clone(), voltages).expect("valid voltages"), tree }
}

/// Multiplies every torsion coordinate by a random unit of its modulus,
/// which is an automorphism of the group.
pub fn apply_unit_automorphism(rng: &mut TestRng, inst: &Instance) -> Instance {
    let spec = inst.vg.spec();
    let units: Vec<i64> = spec
        .moduli()
        .iter()
        .map(|d| {
            let d = to_i64(d);
            let candidates: Vec<i64> = (1..d).filter(|&u| gcd(u, d) == 1).collect();
            *candidates.choose(rng).expect("1 is a unit")
        })
        .collect();
    let voltages = inst
        .vg
        .voltages()
        .iter()
        .map(|g| {
            let mut c: Vec<i64> = g.coords().iter().map(to_i64).collect();
            for (j, u) in units.iter().enumerate() {
                c[spec.rank() + j] *= u;
            }
            spec.element_from_i64(&c).expect("length matches")
        })
        .collect();
    Instance { vg: inst.vg.with_voltages(voltages).expect("valid voltages"), tree: inst.tree.clone() }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Re-condenses over a random spanning tree.
pub fn recondense(rng: &mut TestRng, inst: &Instance) -> Instance {
    let tree = random_spanning_tree(rng, inst.vg.graph());
    Instance { vg: inst.vg.condense(&tree).expect("connected"), tree }
}

/// Same graph and tree, fresh random chord voltages.
pub fn revoltage(rng: &mut TestRng, inst: &Instance) -> Instance {
    let spec = inst.vg.spec().clone();
    let voltages = inst
        .vg
        .graph()
        .edges()
        .map(|e| if inst.tree.contains(e) { spec.zero() } else { random_element(rng, &spec) })
        .collect();
    Instance { vg: inst.vg.with_voltages(voltages).expect("valid voltages"), tree: inst.tree.clone() }
}

/// Changes the voltage of one random chord, if there is one.
pub fn perturb(rng: &mut TestRng, inst: &Instance) -> Instance {
    let chords = inst.tree.chords();
    let Some(&e) = chords.choose(rng) else { return inst.clone() };
    let mut voltages = inst.vg.voltages().to_vec();
    voltages[e] = random_element(rng, inst.vg.spec());
    Instance { vg: inst.vg.with_voltages(voltages).expect("valid voltages"), tree: inst.tree.clone() }
}

/// A different quotient of the same derived graph.
///
/// With `χ: G → ℤ/p` reducing some coordinates mod a prime `p`, the
/// intermediate graph `Y = Δ ×_{χγ} ℤ/p` is covered by the derived graph of
/// `Δ`, which is in turn the derived graph of `Y` with voltages
/// `δ(e, c) = s(c) + γ(e) − s(c + χγ(e))` in `ker χ`, where `s` is a section
/// of `χ` on the voltage group. The result is condensed over a BFS tree.
pub fn lifted_quotient(rng: &mut TestRng, inst: &Instance, max_v: usize, max_e: usize) -> Option<Instance> {
    let spec = inst.vg.spec();
    let moduli: Vec<i64> = spec.moduli().iter().map(to_i64).collect();
    let primes: Vec<i64> = [2, 3, 5, 7, 11, 13].into_iter().filter(|p| moduli.iter().any(|d| d % p == 0)).collect();
    let p = *primes.choose(rng)?;
    let g = inst.vg.graph();
    if g.vertex_count() * p as usize > max_v || g.edge_count() * p as usize > max_e {
        return None;
    }
    let coeffs: Vec<i64> = moduli.iter().map(|d| if d % p == 0 { rng.gen_range(0..p) } else { 0 }).collect();
    let coords = |x: &Element| -> Vec<i64> { x.coords().iter().map(to_i64).collect() };
    let chi = |x: &Element| -> i64 {
        let c = coords(x);
        coeffs.iter().enumerate().map(|(j, k)| k * c[spec.rank() + j]).sum::<i64>().rem_euclid(p)
    };
    let a = inst.vg.voltages().iter().find(|x| chi(x) != 0)?.clone();
    let inv = (1..p).find(|u| (u * chi(&a)) % p == 1).expect("p is prime");
    let t = spec.scale(&a, &Int::from(inv)).ok()?;
    let section = |c: i64| spec.scale(&t, &Int::from(c)).expect("length matches");
    let mut y = Multigraph::new();
    for v in g.vertices() {
        for c in 0..p {
            y.add_vertex(format!("{}.{c}", g.vertex_name(v))).ok()?;
        }
    }
    let pu = p as usize;
    let mut voltages = Vec::new();
    for e in g.edges() {
        let ge = inst.vg.voltage(e);
        for c in 0..p {
            let c2 = (c + chi(ge)).rem_euclid(p);
            y.add_edge(format!("{}.{c}", g.edge_name(e)), g.src(e) * pu + c as usize, g.dst(e) * pu + c2 as usize).ok()?;
            let delta = spec.sub(&spec.add(&section(c), ge).ok()?, &section(c2)).ok()?;
            debug_assert_eq!(chi(&delta), 0);
            voltages.push(delta);
        }
    }
    let vg = VoltageGraph::new(y, spec.clone(), voltages).ok()?;
    let tree = spanning_tree(vg.graph(), 0).ok()?;
    let condensed = vg.condense(&tree).ok()?;
    Some(relabel(rng, &Instance { vg: condensed, tree }))
}

/// How a corpus pair was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    /// Two unrelated random graphs.
    Independent,
    /// Same graph and tree, independently drawn chord voltages.
    SameShape,
    /// Relabelled, re-condensed and/or transformed by a group automorphism.
    Equivalent,
    /// A different quotient of the same derived graph.
    Lifted,
    /// A lifted quotient with one chord voltage changed.
    Perturbed,
}

#[derive(Debug, Clone)]
pub struct Pair {
    pub kind: PairKind,
    pub first: Instance,
    pub second: Instance,
}

/// Deterministic corpus of `count` pairs (≤ `max_v` vertices, ≤ `max_e` edges).
pub fn corpus(seed: u64, count: usize, max_v: usize, max_e: usize) -> Vec<Pair> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut turn = 0usize;
    while out.len() < count {
        let spec = random_spec(&mut rng);
        let kind = [PairKind::Independent, PairKind::SameShape, PairKind::Equivalent, PairKind::Lifted, PairKind::Perturbed]
            [turn % 5];
        turn += 1;
        let first = match kind {
            PairKind::Lifted | PairKind::Perturbed => random_condensed(&mut rng, &spec, max_v / 2, max_e / 2),
            _ => random_condensed(&mut rng, &spec, max_v, max_e),
        };
        let second = match kind {
            PairKind::Independent => Some(random_condensed(&mut rng, &spec, max_v, max_e)),
            PairKind::SameShape => Some(revoltage(&mut rng, &first)),
            PairKind::Equivalent => {
                let mut x = relabel(&mut rng, &first);
                if rng.gen_bool(0.5) {
                    x = apply_unit_automorphism(&mut rng, &x);
                }
                Some(recondense(&mut rng, &x))
            }
            PairKind::Lifted => lifted_quotient(&mut rng, &first, max_v, max_e),
            PairKind::Perturbed => lifted_quotient(&mut rng, &first, max_v, max_e).map(|x| perturb(&mut rng, &x)),
        };
        if let Some(second) = second {
            let (first, second) = if rng.gen_bool(0.5) { (first, second) } else { (second, first) };
            out.push(Pair { kind, first, second });
        }
    }
    out
}
