//! Finite directed multigraphs with explicit initial/terminal maps.
//!
//! Vertices and edges are addressed by their insertion index; every vertex
//! and edge also carries a unique, never reused name used for I/O. Loops and
//! parallel edges are allowed. Walks may traverse an edge in either direction.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Insertion index of a vertex.
pub type VertexId = usize;
/// Insertion index of an edge.
pub type EdgeId = usize;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    src: Vec<VertexId>,
    dst: Vec<VertexId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    // position of an edge inside `out_edges[src]` / `in_edges[dst]`
    out_pos: Vec<usize>,
    in_pos: Vec<usize>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertex names and `(edge, from, to)` name triples.
    pub fn from_names<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut g = Multigraph::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (e, a, b) in edges {
            let a = g.vertex_by_name(a.as_ref())?;
            let b = g.vertex_by_name(b.as_ref())?;
            g.add_edge(e.as_ref(), a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateId(name));
        }
        let id = self.vertex_names.len();
        self.vertex_index.insert(name.clone(), id);
        self.vertex_names.push(name);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, name: impl Into<String>, from: VertexId, to: VertexId) -> Result<EdgeId> {
        let name = name.into();
        if self.edge_index.contains_key(&name) {
            return Err(Error::DuplicateId(name));
        }
        for v in [from, to] {
            if v >= self.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        let id = self.edge_names.len();
        self.edge_index.insert(name.clone(), id);
        self.edge_names.push(name);
        self.src.push(from);
        self.dst.push(to);
        self.out_pos.push(self.out_edges[from].len());
        self.out_edges[from].push(id);
        self.in_pos.push(self.in_edges[to].len());
        self.in_edges[to].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn edges(&self) -> std::ops::Range<EdgeId> {
        0..self.edge_count()
    }

    /// Initial endpoint of `e`.
    pub fn src(&self, e: EdgeId) -> VertexId {
        self.src[e]
    }

    /// Terminal endpoint of `e`.
    pub fn dst(&self, e: EdgeId) -> VertexId {
        self.dst[e]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges[v].len()
    }

    /// Index of `e` within `out_edges(src(e))`.
    pub fn out_position(&self, e: EdgeId) -> usize {
        self.out_pos[e]
    }

    /// Index of `e` within `in_edges(dst(e))`.
    pub fn in_position(&self, e: EdgeId) -> usize {
        self.in_pos[e]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e]
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// Endpoint reached when leaving `from` along `e` in direction `dir`, if
    /// `e` is incident to `from` on the correct side.
    pub fn traverse(&self, from: VertexId, e: EdgeId, dir: Dir) -> Option<VertexId> {
        match dir {
            Dir::Forward if self.src[e] == from => Some(self.dst[e]),
            Dir::Backward if self.dst[e] == from => Some(self.src[e]),
            _ => None,
        }
    }

    /// All steps leaving `v`: out-edges forward, then in-edges backward.
    pub fn steps_from(&self, v: VertexId) -> impl Iterator<Item = Step> + '_ {
        let fwd = self.out_edges[v].iter().map(|&e| Step::new(e, Dir::Forward));
        let bwd = self.in_edges[v].iter().map(|&e| Step::new(e, Dir::Backward));
        fwd.chain(bwd)
    }

    /// Connected component label of every vertex (underlying undirected graph),
    /// numbered in order of first appearance.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        for root in self.vertices() {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for step in self.steps_from(v) {
                    let w = self.endpoint_after(v, step);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    fn endpoint_after(&self, v: VertexId, step: Step) -> VertexId {
        self.traverse(v, step.edge, step.dir).expect("step taken from steps_from")
    }

    /// Subgraph induced by `keep`, preserving relative insertion order.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Multigraph {
        let mut g = Multigraph::new();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for v in self.vertices().filter(|&v| keep[v]) {
            new_id[v] = g.add_vertex(self.vertex_name(v)).expect("names are unique");
        }
        for e in self.edges() {
            let (a, b) = (self.src[e], self.dst[e]);
            if keep[a] && keep[b] {
                g.add_edge(self.edge_name(e), new_id[a], new_id[b]).expect("names are unique");
            }
        }
        g
    }
}

/// Orientation in which a walk traverses an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn reversed(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }

    /// `+1` for forward, `-1` for backward.
    pub fn sign(self) -> i32 {
        match self {
            Dir::Forward => 1,
            Dir::Backward => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: EdgeId,
    pub dir: Dir,
}

impl Step {
    pub fn new(edge: EdgeId, dir: Dir) -> Self {
        Step { edge, dir }
    }

    pub fn reversed(self) -> Step {
        Step::new(self.edge, self.dir.reversed())
    }
}

/// A walk: a start vertex followed by signed edge traversals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: VertexId,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn new(start: VertexId, steps: Vec<Step>) -> Self {
        Walk { start, steps }
    }

    pub fn empty(start: VertexId) -> Self {
        Walk::new(start, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex sequence visited by the walk, or an error if two consecutive
    /// steps are not endpoint compatible.
    pub fn vertices(&self, g: &Multigraph) -> Result<Vec<VertexId>> {
        if self.start >= g.vertex_count() {
            return Err(Error::InvalidWalk(format!("start vertex #{} out of range", self.start)));
        }
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut at = self.start;
        out.push(at);
        for (i, s) in self.steps.iter().enumerate() {
            if s.edge >= g.edge_count() {
                return Err(Error::InvalidWalk(format!("step {i}: edge #{} out of range", s.edge)));
            }
            at = g.traverse(at, s.edge, s.dir).ok_or_else(|| {
                Error::InvalidWalk(format!(
                    "step {i}: edge `{}` is not incident to `{}` in that direction",
                    g.edge_name(s.edge),
                    g.vertex_name(at)
                ))
            })?;
            out.push(at);
        }
        Ok(out)
    }

    pub fn end(&self, g: &Multigraph) -> Result<VertexId> {
        Ok(*self.vertices(g)?.last().expect("walk visits its start"))
    }

    pub fn is_cyclic(&self, g: &Multigraph) -> Result<bool> {
        Ok(self.end(g)? == self.start)
    }

    /// The same walk traversed backwards from its end.
    pub fn reversed(&self, g: &Multigraph) -> Result<Walk> {
        let end = self.end(g)?;
        Ok(Walk::new(end, self.steps.iter().rev().map(|s| s.reversed()).collect()))
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, g: &Multigraph, other: &Walk) -> Result<Walk> {
        if self.end(g)? != other.start {
            return Err(Error::InvalidWalk("concatenated walks do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk::new(self.start, steps))
    }
}

/// A spanning tree set together with a base vertex and parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSet {
    base: VertexId,
    in_tree: Vec<bool>,
    // step leading from a vertex one level closer to the base
    parent_step: Vec<Option<Step>>,
    depth: Vec<usize>,
}

impl TreeSet {
    /// Validates `edges` as a spanning tree set of `g` rooted at `base`.
    pub fn from_edges(g: &Multigraph, base: VertexId, edges: &[EdgeId]) -> Result<TreeSet> {
        if base >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{base}")));
        }
        let mut in_tree = vec![false; g.edge_count()];
        for &e in edges {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(format!("#{e}")));
            }
            if in_tree[e] {
                return Err(Error::InvalidTree(format!("edge `{}` listed twice", g.edge_name(e))));
            }
            in_tree[e] = true;
        }
        if edges.len() + 1 != g.vertex_count() {
            return Err(Error::InvalidTree(format!(
                "{} edges cannot span {} vertices",
                edges.len(),
                g.vertex_count()
            )));
        }
        let tree = Self::grow(g, base, &in_tree);
        if tree.parent_step.iter().enumerate().any(|(v, p)| v != base && p.is_none()) {
            return Err(Error::InvalidTree("edges do not connect every vertex".into()));
        }
        Ok(tree)
    }

    // BFS restricted to `in_tree` edges
    fn grow(g: &Multigraph, base: VertexId, in_tree: &[bool]) -> TreeSet {
        let n = g.vertex_count();
        let mut parent_step = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[base] = 0;
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for step in g.steps_from(v) {
                if !in_tree[step.edge] {
                    continue;
                }
                let w = g.endpoint_after(v, step);
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_step[w] = Some(step.reversed());
                    queue.push_back(w);
                }
            }
        }
        TreeSet { base, in_tree: in_tree.to_vec(), parent_step, depth }
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree[e]
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    /// Non-tree edges in insertion order.
    pub fn chords(&self) -> Vec<EdgeId> {
        (0..self.in_tree.len()).filter(|&e| !self.in_tree[e]).collect()
    }

    /// Step from `v` towards the base, `None` at the base.
    pub fn parent_step(&self, v: VertexId) -> Option<Step> {
        self.parent_step[v]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    /// The unique tree path from `v` to the base.
    pub fn path_to_base(&self, g: &Multigraph, v: VertexId) -> Walk {
        let mut steps = Vec::with_capacity(self.depth[v]);
        let mut at = v;
        while let Some(step) = self.parent_step[at] {
            steps.push(step);
            at = g.endpoint_after(at, step);
        }
        Walk::new(v, steps)
    }

    /// The unique tree path from the base to `v`.
    pub fn path_from_base(&self, g: &Multigraph, v: VertexId) -> Walk {
        self.path_to_base(g, v).reversed(g).expect("tree paths are valid walks")
    }
}

/// Connectivity of the underlying undirected graph; the empty graph counts as connected.
pub fn is_connected(g: &Multigraph) -> bool {
    g.vertex_count() == 0 || g.component_labels().0 == 1
}

/// Breadth-first spanning tree from `base`, scanning out-edges then in-edges
/// of each vertex in insertion order.
pub fn spanning_tree(g: &Multigraph, base: VertexId) -> Result<TreeSet> {
    if base >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{base}")));
    }
    if !is_connected(g) {
        return Err(Error::DisconnectedGraph);
    }
    let n = g.vertex_count();
    let mut in_tree = vec![false; g.edge_count()];
    let mut seen = vec![false; n];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for step in g.steps_from(v) {
            let w = g.endpoint_after(v, step);
            if !seen[w] {
                seen[w] = true;
                in_tree[step.edge] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(TreeSet::grow(g, base, &in_tree))
}

/// The return walk of chord `e`: tree path base → ι(e), then `e`, then tree
/// path τ(e) → base.
pub fn return_walk(g: &Multigraph, tree: &TreeSet, e: EdgeId) -> Result<Walk> {
    if e >= g.edge_count() {
        return Err(Error::UnknownEdge(format!("#{e}")));
    }
    if tree.contains(e) {
        return Err(Error::EdgeInTree(g.edge_name(e).to_string()));
    }
    let mut walk = tree.path_from_base(g, g.src(e));
    walk.steps.push(Step::new(e, Dir::Forward));
    walk.steps.extend(tree.path_to_base(g, g.dst(e)).steps);
    Ok(walk)
}

/// A graph homomorphism given by its vertex and edge maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphHom {
    pub vmap: Vec<VertexId>,
    pub emap: Vec<EdgeId>,
}

impl GraphHom {
    pub fn identity(g: &Multigraph) -> Self {
        GraphHom { vmap: g.vertices().collect(), emap: g.edges().collect() }
    }

    /// Checks sizes and that ι and τ commute with the maps.
    pub fn validate(&self, domain: &Multigraph, codomain: &Multigraph) -> Result<()> {
        if self.vmap.len() != domain.vertex_count() || self.emap.len() != domain.edge_count() {
            return Err(Error::InvalidHom("map sizes do not match the domain".into()));
        }
        if self.vmap.iter().any(|&v| v >= codomain.vertex_count())
            || self.emap.iter().any(|&e| e >= codomain.edge_count())
        {
            return Err(Error::InvalidHom("image outside the codomain".into()));
        }
        for e in domain.edges() {
            let f = self.emap[e];
            if codomain.src(f) != self.vmap[domain.src(e)] || codomain.dst(f) != self.vmap[domain.dst(e)] {
                return Err(Error::InvalidHom(format!(
                    "edge `{}` is not mapped compatibly with its endpoints",
                    domain.edge_name(e)
                )));
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphHom) -> GraphHom {
        GraphHom {
            vmap: self.vmap.iter().map(|&v| other.vmap[v]).collect(),
            emap: self.emap.iter().map(|&e| other.emap[e]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vmap.iter().enumerate().all(|(i, &v)| i == v) && self.emap.iter().enumerate().all(|(i, &e)| i == e)
    }
}

/// Tensor product Θ = d1 × d2 with its two coordinate projections.
///
/// Vertex `(v1, v2)` has index `v1 * |V2| + v2` and edge `(e1, e2)` has index
/// `e1 * |E2| + e2`; names are `"(a|b)"`.
pub fn directed_product(d1: &Multigraph, d2: &Multigraph) -> (Multigraph, GraphHom, GraphHom) {
    let mut theta = Multigraph::new();
    let (n2, m2) = (d2.vertex_count(), d2.edge_count());
    let mut p1 = GraphHom { vmap: Vec::new(), emap: Vec::new() };
    let mut p2 = GraphHom { vmap: Vec::new(), emap: Vec::new() };
    for v1 in d1.vertices() {
        for v2 in d2.vertices() {
            theta
                .add_vertex(pair_name(d1.vertex_name(v1), d2.vertex_name(v2)))
                .expect("pair names are unique");
            p1.vmap.push(v1);
            p2.vmap.push(v2);
        }
    }
    for e1 in d1.edges() {
        for e2 in d2.edges() {
            let a = d1.src(e1) * n2 + d2.src(e2);
            let b = d1.dst(e1) * n2 + d2.dst(e2);
            theta
                .add_edge(pair_name(d1.edge_name(e1), d2.edge_name(e2)), a, b)
                .expect("pair names are unique");
            p1.emap.push(e1);
            p2.emap.push(e2);
        }
    }
    debug_assert_eq!(theta.edge_count(), d1.edge_count() * m2);
    (theta, p1, p2)
}

pub(crate) fn pair_name(a: &str, b: &str) -> String {
    format!("({a}|{b})")
}

/// True iff `h` is onto and bijective from each `Out(v)` / `In(v)` onto
/// `Out(h(v))` / `In(h(v))`.
pub fn is_covering(domain: &Multigraph, codomain: &Multigraph, h: &GraphHom) -> bool {
    covering_violation(domain, codomain, h).is_none()
}

pub(crate) fn covering_violation(domain: &Multigraph, codomain: &Multigraph, h: &GraphHom) -> Option<String> {
    if let Err(e) = h.validate(domain, codomain) {
        return Some(e.to_string());
    }
    let mut hit_v = vec![false; codomain.vertex_count()];
    let mut hit_e = vec![false; codomain.edge_count()];
    for v in domain.vertices() {
        hit_v[h.vmap[v]] = true;
    }
    for e in domain.edges() {
        hit_e[h.emap[e]] = true;
    }
    if hit_v.iter().chain(hit_e.iter()).any(|hit| !hit) {
        return Some("map is not onto".into());
    }
    for v in domain.vertices() {
        let image = h.vmap[v];
        let sides = [
            (domain.out_edges(v), codomain.out_edges(image), "out"),
            (domain.in_edges(v), codomain.in_edges(image), "in"),
        ];
        for (local, target, side) in sides {
            if local.len() != target.len() {
                return Some(format!("{side}-degree differs at `{}`", domain.vertex_name(v)));
            }
            let mut seen = vec![false; codomain.edge_count()];
            for &e in local {
                if std::mem::replace(&mut seen[h.emap[e]], true) {
                    return Some(format!("{side}-edges of `{}` are not mapped injectively", domain.vertex_name(v)));
                }
            }
        }
    }
    None
}

/// Sorted list of `(indegree, outdegree)` over all vertices.
pub fn degree_profile(g: &Multigraph) -> Vec<(usize, usize)> {
    let mut profile: Vec<_> = g.vertices().map(|v| (g.in_degree(v), g.out_degree(v))).collect();
    profile.sort_unstable();
    profile
}

/// Classes of parallel non-tree edges (same initial and terminal vertex), in
/// order of first appearance. Singleton classes are included.
pub fn parallel_chord_classes(g: &Multigraph, tree: &TreeSet) -> Vec<Vec<EdgeId>> {
    let mut index: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut classes: Vec<Vec<EdgeId>> = Vec::new();
    for e in tree.chords() {
        let key = (g.src(e), g.dst(e));
        let slot = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(e);
    }
    classes
}

/// All automorphisms fixing every tree edge: products of permutations of the
/// parallel chord classes. The identity comes first.
pub fn automorphisms_fixing_tree(g: &Multigraph, tree: &TreeSet) -> Vec<GraphHom> {
    let classes = parallel_chord_classes(g, tree);
    let mut out = Vec::new();
    let mut emap: Vec<EdgeId> = g.edges().collect();
    fn rec(classes: &[Vec<EdgeId>], k: usize, emap: &mut Vec<EdgeId>, vmap: &[VertexId], out: &mut Vec<GraphHom>) {
        if k == classes.len() {
            out.push(GraphHom { vmap: vmap.to_vec(), emap: emap.clone() });
            return;
        }
        let class = &classes[k];
        for perm in permutations(class.len()) {
            for (i, &e) in class.iter().enumerate() {
                emap[e] = class[perm[i]];
            }
            rec(classes, k + 1, emap, vmap, out);
        }
        for &e in class {
            emap[e] = e;
        }
    }
    let vmap: Vec<VertexId> = g.vertices().collect();
    rec(&classes, 0, &mut emap, &vmap, &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot has a successor");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}
