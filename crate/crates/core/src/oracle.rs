//! Deliberately naive reference implementations used to cross-check the
//! main pipeline. Nothing here uses the lattice, group, cover or search code;
//! group arithmetic is redone on plain `i64` vectors.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::cover::CoverMap;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphHom, Multigraph, VertexId};
use crate::scalar::Scalar;
use crate::voltage::VoltageGraph;

/// Vertex and edge bijections of an isomorphism `g1 → g2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub vbij: Vec<VertexId>,
    pub ebij: Vec<EdgeId>,
}

impl IsoCertificate {
    /// True iff both maps are bijections preserving initial and terminal vertices.
    pub fn is_valid(&self, g1: &Multigraph, g2: &Multigraph) -> bool {
        if self.vbij.len() != g1.vertex_count()
            || self.ebij.len() != g1.edge_count()
            || g1.vertex_count() != g2.vertex_count()
            || g1.edge_count() != g2.edge_count()
        {
            return false;
        }
        let bijective = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        bijective(&self.vbij, g2.vertex_count())
            && bijective(&self.ebij, g2.edge_count())
            && g1.edges().all(|e| {
                let f = self.ebij[e];
                g2.src(f) == self.vbij[g1.src(e)] && g2.dst(f) == self.vbij[g1.dst(e)]
            })
    }

    pub fn inverse(&self) -> IsoCertificate {
        let invert = |m: &[usize]| {
            let mut out = vec![0; m.len()];
            for (i, &x) in m.iter().enumerate() {
                out[x] = i;
            }
            out
        };
        IsoCertificate { vbij: invert(&self.vbij), ebij: invert(&self.ebij) }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &IsoCertificate) -> IsoCertificate {
        IsoCertificate {
            vbij: self.vbij.iter().map(|&v| other.vbij[v]).collect(),
            ebij: self.ebij.iter().map(|&e| other.ebij[e]).collect(),
        }
    }
}

/// Default node budget of [`brute_force_iso`].
pub const ISO_BUDGET: u64 = 2_000_000;

/// Multigraph isomorphism by joint colour refinement and individualization.
///
/// Both graphs are coloured together; at each branch one vertex of the
/// first graph in the smallest ambiguous class is pinned to every candidate
/// of the same colour in the second graph. Fails with `SizeBudgetExceeded`
/// after `budget` branch nodes.
pub fn brute_force_iso(g1: &Multigraph, g2: &Multigraph, budget: u64) -> Result<Option<IsoCertificate>> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let n = g1.vertex_count();
    if n == 0 {
        return Ok(Some(IsoCertificate { vbij: vec![], ebij: vec![] }));
    }
    let joint = Joint::new(g1, g2);
    let mut nodes = 0u64;
    let colors = vec![0usize; 2 * n];
    let found = joint.branch(colors, &mut nodes, budget)?;
    Ok(found.map(|vbij| {
        let ebij = match_edges(g1, g2, &vbij).expect("leaf maps were checked");
        IsoCertificate { vbij, ebij }
    }))
}

// Disjoint union of both graphs with adjacency lists; vertex i of g2 is n + i.
struct Joint<'a> {
    g1: &'a Multigraph,
    g2: &'a Multigraph,
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl<'a> Joint<'a> {
    fn new(g1: &'a Multigraph, g2: &'a Multigraph) -> Self {
        let n = g1.vertex_count();
        let mut out = vec![Vec::new(); 2 * n];
        let mut inn = vec![Vec::new(); 2 * n];
        for (g, shift) in [(g1, 0), (g2, n)] {
            for e in g.edges() {
                out[g.src(e) + shift].push(g.dst(e) + shift);
                inn[g.dst(e) + shift].push(g.src(e) + shift);
            }
        }
        Joint { g1, g2, n, out, inn }
    }

    // refine until stable; None when the two sides disagree on class sizes
    fn refine(&self, mut colors: Vec<usize>) -> Option<Vec<usize>> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..2 * self.n)
                .map(|v| {
                    let mut o: Vec<usize> = self.out[v].iter().map(|&w| colors[w]).collect();
                    let mut i: Vec<usize> = self.inn[v].iter().map(|&w| colors[w]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (colors[v], o, i)
                })
                .collect();
            let mut ids: BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
            for s in &sigs {
                let next = ids.len();
                ids.entry(s).or_insert(next);
            }
            // renumber by sorted signature so both sides agree
            let sorted: Vec<_> = ids.keys().cloned().collect();
            let rank: HashMap<&(usize, Vec<usize>, Vec<usize>), usize> =
                sorted.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            colors = sigs.iter().map(|s| rank[s]).collect();
            let mut left = vec![0usize; rank.len()];
            let mut right = vec![0usize; rank.len()];
            for v in 0..self.n {
                left[colors[v]] += 1;
                right[colors[v + self.n]] += 1;
            }
            if left != right {
                return None;
            }
            let now = count_classes(&colors);
            if now == classes {
                return Some(colors);
            }
            classes = now;
        }
    }

    fn branch(&self, colors: Vec<usize>, nodes: &mut u64, budget: u64) -> Result<Option<Vec<VertexId>>> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::SizeBudgetExceeded(format!("isomorphism search exceeded {budget} nodes")));
        }
        let Some(colors) = self.refine(colors) else { return Ok(None) };
        let n = self.n;
        let mut size = vec![0usize; 2 * n + 1];
        for v in 0..n {
            size[colors[v]] += 1;
        }
        let pick = (0..n).filter(|&v| size[colors[v]] > 1).min_by_key(|&v| (size[colors[v]], v));
        let Some(v) = pick else {
            let vbij: Vec<VertexId> = (0..n)
                .map(|v| (0..n).find(|&w| colors[w + n] == colors[v]).expect("classes are balanced"))
                .collect();
            return Ok(match_edges(self.g1, self.g2, &vbij).map(|_| vbij));
        };
        let fresh = 2 * n + 1;
        for w in (0..n).filter(|&w| colors[w + n] == colors[v]) {
            let mut c = colors.clone();
            c[v] = fresh;
            c[w + n] = fresh;
            if let Some(found) = self.branch(c, nodes, budget)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

// pair up parallel edges in insertion order once the vertex map is fixed
fn match_edges(g1: &Multigraph, g2: &Multigraph, vbij: &[VertexId]) -> Option<Vec<EdgeId>> {
    let mut pool: HashMap<(VertexId, VertexId), VecDeque<EdgeId>> = HashMap::new();
    for f in g2.edges() {
        pool.entry((g2.src(f), g2.dst(f))).or_default().push_back(f);
    }
    let mut ebij = Vec::with_capacity(g1.edge_count());
    for e in g1.edges() {
        let key = (vbij[g1.src(e)], vbij[g1.dst(e)]);
        ebij.push(pool.get_mut(&key)?.pop_front()?);
    }
    Some(ebij)
}

// plain i64 arithmetic in ℤ^r ⊕ ℤ/d_1 ⊕ …
struct Arith {
    rank: usize,
    moduli: Vec<i64>,
}

impl Arith {
    fn of<T: Scalar>(vg: &VoltageGraph<T>) -> Arith {
        Arith {
            rank: vg.spec().rank(),
            moduli: vg.spec().moduli().iter().map(|d| d.to_i64().expect("modulus fits i64")).collect(),
        }
    }

    fn norm(&self, mut x: Vec<i64>) -> Vec<i64> {
        for (j, d) in self.moduli.iter().enumerate() {
            x[self.rank + j] = x[self.rank + j].rem_euclid(*d);
        }
        x
    }

    fn add(&self, a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
        self.norm(a.iter().zip(b).map(|(x, y)| x + sign * y).collect())
    }
}

fn voltages_i64<T: Scalar>(vg: &VoltageGraph<T>) -> Vec<Vec<i64>> {
    vg.voltages()
        .iter()
        .map(|g| g.coords().iter().map(|x| x.to_i64().expect("voltage fits i64")).collect())
        .collect()
}

/// Bounded check of goodness straight from the definition: every cyclic
/// walk of length at most `max_len` in the codomain with zero voltage must
/// lift to closed walks from every point of its start fiber.
///
/// Walks are explored as states (current vertex, voltage so far, current
/// position of every lift); a state seen at a shorter length is never
/// revisited, which loses no walk since the remaining budget only shrinks.
pub fn good_cover_by_definition<T: Scalar>(cover: &CoverMap, vg: &VoltageGraph<T>, max_len: usize) -> bool {
    let (top, base, hom) = (cover.domain(), cover.codomain(), cover.hom());
    let arith = Arith::of(vg);
    let volts = voltages_i64(vg);
    let zero = vec![0i64; arith.rank + arith.moduli.len()];
    // the lift of a codomain edge at a domain vertex, found by scanning
    let lift = |u: VertexId, e: EdgeId, forward: bool| -> VertexId {
        type End = fn(&Multigraph, EdgeId) -> VertexId;
        let (edges, end): (&[EdgeId], End) = if forward {
            (top.out_edges(u), Multigraph::dst)
        } else {
            (top.in_edges(u), Multigraph::src)
        };
        let f = edges.iter().copied().find(|&f| hom.emap[f] == e).expect("covering lifts every edge");
        end(top, f)
    };
    for v in base.vertices() {
        let start: Vec<VertexId> = top.vertices().filter(|&u| hom.vmap[u] == v).collect();
        let first = (v, zero.clone(), start.clone());
        let mut seen: HashSet<(VertexId, Vec<i64>, Vec<VertexId>)> = HashSet::from([first.clone()]);
        let mut queue = VecDeque::from([(first, 0usize)]);
        while let Some(((at, volt, pos), len)) = queue.pop_front() {
            if len == max_len {
                continue;
            }
            let moves = base
                .out_edges(at)
                .iter()
                .map(|&e| (e, true))
                .chain(base.in_edges(at).iter().map(|&e| (e, false)));
            for (e, forward) in moves {
                let next_at = if forward { base.dst(e) } else { base.src(e) };
                let next_volt = arith.add(&volt, &volts[e], if forward { 1 } else { -1 });
                let next_pos: Vec<VertexId> = pos.iter().map(|&u| lift(u, e, forward)).collect();
                if next_at == v && next_volt == zero && next_pos != start {
                    return false;
                }
                let state = (next_at, next_volt, next_pos);
                if seen.insert(state.clone()) {
                    queue.push_back((state, len + 1));
                }
            }
        }
    }
    true
}

/// Component of `(v0, 0)` in the derived graph, built by closing under
/// edge traversal with `i64` arithmetic. Requires a finite voltage group.
pub fn derived_graph_by_closure<T: Scalar>(vg: &VoltageGraph<T>) -> Result<Multigraph> {
    if vg.spec().rank() > 0 && voltages_i64(vg).iter().any(|g| g[..vg.spec().rank()].iter().any(|&x| x != 0)) {
        return Err(Error::InfiniteGroup);
    }
    let arith = Arith::of(vg);
    let volts = voltages_i64(vg);
    let g = vg.graph();
    let mut out = Multigraph::new();
    if g.vertex_count() == 0 {
        return Ok(out);
    }
    let mut index: HashMap<(VertexId, Vec<i64>), VertexId> = HashMap::new();
    let mut order: Vec<(VertexId, Vec<i64>)> = Vec::new();
    let start = (0, vec![0i64; arith.rank + arith.moduli.len()]);
    index.insert(start.clone(), 0);
    order.push(start);
    let mut k = 0;
    while k < order.len() {
        let (v, x) = order[k].clone();
        k += 1;
        let mut reach = Vec::new();
        for &e in g.out_edges(v) {
            reach.push((g.dst(e), arith.add(&x, &volts[e], 1)));
        }
        for &e in g.in_edges(v) {
            reach.push((g.src(e), arith.add(&x, &volts[e], -1)));
        }
        for key in reach {
            if !index.contains_key(&key) {
                index.insert(key.clone(), order.len());
                order.push(key);
            }
        }
    }
    for (i, (v, x)) in order.iter().enumerate() {
        out.add_vertex(format!("{}@{:?}", g.vertex_name(*v), x))?;
        debug_assert_eq!(index[&(*v, x.clone())], i);
    }
    for (i, (v, x)) in order.iter().enumerate() {
        for &e in g.out_edges(*v) {
            let j = index[&(g.dst(e), arith.add(x, &volts[e], 1))];
            out.add_edge(format!("{}@{:?}", g.edge_name(e), x), i, j)?;
        }
    }
    Ok(out)
}

/// A common cover found by exhaustive search, as sets of product pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSubgraph {
    pub vertices: Vec<(VertexId, VertexId)>,
    pub edges: Vec<(EdgeId, EdgeId)>,
}

/// Every connected subgraph of `d1 × d2` with at most `max_size` vertices on
/// which both coordinate projections are coverings, found by trying all
/// vertex subsets and, within each, all edge subsets of the right size.
pub fn exhaustive_common_covers(d1: &Multigraph, d2: &Multigraph, max_size: usize) -> Result<Vec<PairSubgraph>> {
    let vertices: Vec<(VertexId, VertexId)> =
        d1.vertices().flat_map(|a| d2.vertices().map(move |b| (a, b))).collect();
    if vertices.len() > 8 {
        return Err(Error::SizeBudgetExceeded(format!("product has {} vertices", vertices.len())));
    }
    let edges: Vec<(EdgeId, EdgeId)> = d1.edges().flat_map(|a| d2.edges().map(move |b| (a, b))).collect();
    let src = |&(a, b): &(EdgeId, EdgeId)| (d1.src(a), d2.src(b));
    let dst = |&(a, b): &(EdgeId, EdgeId)| (d1.dst(a), d2.dst(b));
    let mut found = Vec::new();
    let mut work = 0u64;
    for mask in 1u32..(1 << vertices.len()) {
        let vs: Vec<(VertexId, VertexId)> =
            (0..vertices.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vertices[i]).collect();
        if vs.len() > max_size {
            continue;
        }
        let inside: Vec<(EdgeId, EdgeId)> =
            edges.iter().copied().filter(|e| vs.contains(&src(e)) && vs.contains(&dst(e))).collect();
        let need: usize = vs.iter().map(|&(a, _)| d1.out_degree(a)).sum();
        if need > inside.len() {
            continue;
        }
        for subset in combinations(inside.len(), need) {
            work += 1;
            if work > 20_000_000 {
                return Err(Error::SizeBudgetExceeded("too many edge subsets".into()));
            }
            let es: Vec<(EdgeId, EdgeId)> = subset.iter().map(|&i| inside[i]).collect();
            if projections_cover(d1, d2, &vs, &es) && pair_connected(&vs, &es, src, dst) {
                found.push(PairSubgraph { vertices: vs.clone(), edges: es });
            }
        }
    }
    found.sort();
    Ok(found)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// at every vertex, first coordinates of out/in edges are exactly Out/In of the
// first factor, each once; likewise for the second factor
fn projections_cover(
    d1: &Multigraph,
    d2: &Multigraph,
    vs: &[(VertexId, VertexId)],
    es: &[(EdgeId, EdgeId)],
) -> bool {
    vs.iter().all(|&(a, b)| {
        let outs: Vec<&(EdgeId, EdgeId)> = es.iter().filter(|(x, y)| d1.src(*x) == a && d2.src(*y) == b).collect();
        let ins: Vec<&(EdgeId, EdgeId)> = es.iter().filter(|(x, y)| d1.dst(*x) == a && d2.dst(*y) == b).collect();
        let same = |mut got: Vec<EdgeId>, want: &[EdgeId]| {
            got.sort_unstable();
            let mut w = want.to_vec();
            w.sort_unstable();
            got == w
        };
        same(outs.iter().map(|e| e.0).collect(), d1.out_edges(a))
            && same(outs.iter().map(|e| e.1).collect(), d2.out_edges(b))
            && same(ins.iter().map(|e| e.0).collect(), d1.in_edges(a))
            && same(ins.iter().map(|e| e.1).collect(), d2.in_edges(b))
    })
}

fn pair_connected(
    vs: &[(VertexId, VertexId)],
    es: &[(EdgeId, EdgeId)],
    src: impl Fn(&(EdgeId, EdgeId)) -> (VertexId, VertexId),
    dst: impl Fn(&(EdgeId, EdgeId)) -> (VertexId, VertexId),
) -> bool {
    let mut reached: HashSet<(VertexId, VertexId)> = HashSet::from([vs[0]]);
    let mut grew = true;
    while grew {
        grew = false;
        for e in es {
            let (a, b) = (src(e), dst(e));
            if reached.contains(&a) != reached.contains(&b) {
                reached.insert(a);
                reached.insert(b);
                grew = true;
            }
        }
    }
    reached.len() == vs.len()
}

/// Product pairs of a cover produced by the main search, for comparison with
/// [`exhaustive_common_covers`].
pub fn as_pair_subgraph(d2: &Multigraph, theta_vertices: &[VertexId], theta_edges: &[EdgeId]) -> PairSubgraph {
    let (n2, m2) = (d2.vertex_count(), d2.edge_count());
    let mut vertices: Vec<_> = theta_vertices.iter().map(|&x| (x / n2, x % n2)).collect();
    let mut edges: Vec<_> = theta_edges.iter().map(|&e| (e / m2, e % m2)).collect();
    vertices.sort_unstable();
    edges.sort_unstable();
    PairSubgraph { vertices, edges }
}

/// Checks a homomorphism against the definition of a covering directly.
pub fn is_covering_by_definition(domain: &Multigraph, codomain: &Multigraph, h: &GraphHom) -> bool {
    let onto_v = codomain.vertices().all(|v| h.vmap.contains(&v));
    let onto_e = codomain.edges().all(|e| h.emap.contains(&e));
    let compatible = domain.edges().all(|e| {
        codomain.src(h.emap[e]) == h.vmap[domain.src(e)] && codomain.dst(h.emap[e]) == h.vmap[domain.dst(e)]
    });
    let local = domain.vertices().all(|u| {
        let image = |es: &[EdgeId]| {
            let mut m: Vec<EdgeId> = es.iter().map(|&e| h.emap[e]).collect();
            m.sort_unstable();
            m
        };
        let v = h.vmap[u];
        image(domain.out_edges(u)) == image(codomain.out_edges(v)) && image(domain.in_edges(u)) == image(codomain.in_edges(v))
    });
    onto_v && onto_e && compatible && local
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn g(v: &[&str], e: &[(&str, &str, &str)]) -> Multigraph {
        Multigraph::from_names(v, e).unwrap()
    }

    #[test]
    fn iso_examples() {
        let c3 = g(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")]);
        let c3b = g(&["p", "q", "r"], &[("u", "q", "r"), ("v", "r", "p"), ("w", "p", "q")]);
        let cert = brute_force_iso(&c3, &c3b, ISO_BUDGET).unwrap().unwrap();
        assert!(cert.is_valid(&c3, &c3b));
        let p3 = g(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")]);
        assert!(brute_force_iso(&c3, &p3, ISO_BUDGET).unwrap().is_none());
        let par = g(&["a", "b"], &[("x", "a", "b"), ("y", "a", "b")]);
        let cyc = g(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a")]);
        assert!(brute_force_iso(&par, &cyc, ISO_BUDGET).unwrap().is_none());
    }

    #[test]
    fn iso_on_vertex_transitive_graphs() {
        // two labellings of the 4-dimensional hypercube as Cayley graphs of (ℤ/2)^4
        let spec = GroupSpec::<i64>::finite(vec![2, 2, 2, 2]).unwrap();
        let wedge = g(&["v"], &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v"), ("d", "v", "v")]);
        let x = VoltageGraph::from_i64(wedge.clone(), spec.clone(), &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        let y = VoltageGraph::from_i64(wedge, spec, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]).unwrap();
        let dx = derived_graph_by_closure(&x).unwrap();
        let dy = derived_graph_by_closure(&y).unwrap();
        assert_eq!(dx.vertex_count(), 16);
        let cert = brute_force_iso(&dx, &dy, ISO_BUDGET).unwrap().unwrap();
        assert!(cert.is_valid(&dx, &dy));
        assert!(cert.inverse().is_valid(&dy, &dx));
        assert!(cert.then(&cert.inverse()).vbij.iter().enumerate().all(|(i, &v)| i == v));
    }

    #[test]
    fn budget_error() {
        let c = g(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")]);
        assert!(matches!(brute_force_iso(&c, &c, 1), Err(Error::SizeBudgetExceeded(_))));
    }

    #[test]
    fn definitional_goodness() {
        let base = g(&["v"], &[("x", "v", "v"), ("y", "v", "v")]);
        let vg = VoltageGraph::from_i64(base.clone(), GroupSpec::<i64>::free(1), &[&[0], &[1]]).unwrap();
        assert!(good_cover_by_definition(&CoverMap::identity(&base), &vg, 6));
        let top = g(&["p", "q"], &[("x0", "p", "q"), ("x1", "q", "p"), ("y0", "p", "p"), ("y1", "q", "q")]);
        let c = CoverMap::new(top, base, GraphHom { vmap: vec![0, 0], emap: vec![0, 0, 1, 1] }).unwrap();
        assert!(!good_cover_by_definition(&c, &vg, 1));
        assert!(good_cover_by_definition(&c, &vg, 0));
        assert!(!good_cover_by_definition(&c, &vg, 4));
    }

    #[test]
    fn closure_builds_component() {
        let l = g(&["v"], &[("l", "v", "v")]);
        let vg = VoltageGraph::from_i64(l.clone(), GroupSpec::<i64>::finite(vec![6]).unwrap(), &[&[2]]).unwrap();
        let d = derived_graph_by_closure(&vg).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (3, 3));
        let vg = VoltageGraph::from_i64(l, GroupSpec::<i64>::free(1), &[&[2]]).unwrap();
        assert_eq!(derived_graph_by_closure(&vg).err(), Some(Error::InfiniteGroup));
    }

    #[test]
    fn exhaustive_examples() {
        let one = g(&["v"], &[("l", "v", "v")]);
        assert_eq!(exhaustive_common_covers(&one, &one, 8).unwrap().len(), 1);
        let two = g(&["v"], &[("a", "v", "v"), ("b", "v", "v")]);
        assert_eq!(exhaustive_common_covers(&two, &two, 8).unwrap().len(), 2);
        let cyc = g(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a")]);
        assert!(exhaustive_common_covers(&two, &cyc, 8).unwrap().is_empty());
        let big = g(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")]);
        assert!(exhaustive_common_covers(&big, &big, 9).is_err());
    }

    #[test]
    fn covering_definition() {
        let cyc = g(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a")]);
        let l = g(&["v"], &[("l", "v", "v")]);
        assert!(is_covering_by_definition(&cyc, &l, &GraphHom { vmap: vec![0, 0], emap: vec![0, 0] }));
    }
}
