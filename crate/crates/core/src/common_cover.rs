//! Enumeration of the connected subgraphs of `Θ = Δ1 × Δ2` on which both
//! coordinate projections are coverings.
//!
//! Such a subgraph picks, at each of its vertices `(v1, v2)`, a bijection
//! `Out(v1) ↔ Out(v2)` and a bijection `In(v1) ↔ In(v2)`; the chosen product
//! edges must agree between their two endpoints. The search grows the
//! subgraph from a seed vertex, deciding one (vertex, side) at a time. Every
//! vertex smaller than the seed is forbidden, so each subgraph is produced
//! exactly once: from its smallest vertex.

use log::debug;

use crate::cover::CoverMap;
use crate::error::{Error, Result};
use crate::graph::{directed_product, is_connected, EdgeId, GraphHom, Multigraph, VertexId};

/// Default node budget of the search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A common cover inside the product, with both projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonCover {
    /// Product vertex index of each cover vertex (increasing).
    pub theta_vertices: Vec<VertexId>,
    /// Product edge index of each cover edge (increasing).
    pub theta_edges: Vec<EdgeId>,
    pub mu1: CoverMap,
    pub mu2: CoverMap,
}

impl CommonCover {
    pub fn graph(&self) -> &Multigraph {
        self.mu1.domain()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeState {
    Open,
    Chosen,
    Excluded,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Out,
    In,
}

struct Search<'a> {
    d1: &'a Multigraph,
    d2: &'a Multigraph,
    theta: &'a Multigraph,
    seed: VertexId,
    budget: u64,
    nodes: u64,
    included: Vec<bool>,
    done_out: Vec<bool>,
    done_in: Vec<bool>,
    edges: Vec<EdgeState>,
    found: Vec<(Vec<VertexId>, Vec<EdgeId>)>,
}

impl Search<'_> {
    fn n2(&self) -> usize {
        self.d2.vertex_count()
    }

    fn m2(&self) -> usize {
        self.d2.edge_count()
    }

    fn next_task(&self) -> Option<(VertexId, Side)> {
        (0..self.included.len()).filter(|&x| self.included[x]).find_map(|x| {
            if !self.done_out[x] {
                Some((x, Side::Out))
            } else if !self.done_in[x] {
                Some((x, Side::In))
            } else {
                None
            }
        })
    }

    fn run(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let Some((x, side)) = self.next_task() else {
            self.record();
            return Ok(());
        };
        let (v1, v2) = (x / self.n2(), x % self.n2());
        let (left, right) = match side {
            Side::Out => (self.d1.out_edges(v1), self.d2.out_edges(v2)),
            Side::In => (self.d1.in_edges(v1), self.d2.in_edges(v2)),
        };
        if left.len() != right.len() {
            return Ok(());
        }
        let (left, right) = (left.to_vec(), right.to_vec());
        let mut used = vec![false; right.len()];
        let mut picks = Vec::with_capacity(left.len());
        self.mark_done(x, side, true);
        let result = self.match_side(x, side, &left, &right, &mut used, &mut picks);
        self.mark_done(x, side, false);
        result
    }

    fn mark_done(&mut self, x: VertexId, side: Side, value: bool) {
        match side {
            Side::Out => self.done_out[x] = value,
            Side::In => self.done_in[x] = value,
        }
    }

    // chooses right[j] for each left[i] in order, then applies the whole bijection
    fn match_side(
        &mut self,
        x: VertexId,
        side: Side,
        left: &[EdgeId],
        right: &[EdgeId],
        used: &mut Vec<bool>,
        picks: &mut Vec<EdgeId>,
    ) -> Result<()> {
        let i = picks.len();
        if i == left.len() {
            return self.apply(x, side, left, right, picks);
        }
        for j in 0..right.len() {
            if used[j] {
                continue;
            }
            let pe = left[i] * self.m2() + right[j];
            if self.edges[pe] == EdgeState::Excluded {
                continue;
            }
            // an edge already chosen from the other end forces this pairing
            if (0..right.len()).any(|k| k != j && self.edges[left[i] * self.m2() + right[k]] == EdgeState::Chosen) {
                continue;
            }
            used[j] = true;
            picks.push(pe);
            self.match_side(x, side, left, right, used, picks)?;
            picks.pop();
            used[j] = false;
        }
        Ok(())
    }

    fn apply(&mut self, x: VertexId, side: Side, left: &[EdgeId], right: &[EdgeId], picks: &[EdgeId]) -> Result<()> {
        let mut changed: Vec<EdgeId> = Vec::new();
        let mut newly_included: Vec<VertexId> = Vec::new();
        let mut ok = true;
        for &e1 in left {
            for &e2 in right {
                let pe = e1 * self.m2() + e2;
                let want = if picks.contains(&pe) { EdgeState::Chosen } else { EdgeState::Excluded };
                match self.edges[pe] {
                    EdgeState::Open => {
                        self.edges[pe] = want;
                        changed.push(pe);
                    }
                    s if s != want => ok = false,
                    _ => {}
                }
                if want == EdgeState::Chosen {
                    let other = match side {
                        Side::Out => self.theta.dst(pe),
                        Side::In => self.theta.src(pe),
                    };
                    if other < self.seed {
                        ok = false;
                    } else if !self.included[other] {
                        self.included[other] = true;
                        newly_included.push(other);
                    }
                }
            }
        }
        let result = if ok && self.sides_consistent(&newly_included) { self.run() } else { Ok(()) };
        for pe in changed {
            self.edges[pe] = EdgeState::Open;
        }
        for v in newly_included {
            self.included[v] = false;
        }
        debug_assert!(self.included[x]);
        result
    }

    // a decided side of a vertex must not have gained or lost chosen edges
    fn sides_consistent(&self, touched: &[VertexId]) -> bool {
        touched.iter().all(|&v| {
            let out_chosen = self.theta.out_edges(v).iter().filter(|&&e| self.edges[e] == EdgeState::Chosen).count();
            let in_chosen = self.theta.in_edges(v).iter().filter(|&&e| self.edges[e] == EdgeState::Chosen).count();
            let (v1, v2) = (v / self.n2(), v % self.n2());
            out_chosen <= self.d1.out_degree(v1).min(self.d2.out_degree(v2))
                && in_chosen <= self.d1.in_degree(v1).min(self.d2.in_degree(v2))
        })
    }

    fn record(&mut self) {
        let vertices: Vec<VertexId> = (0..self.included.len()).filter(|&x| self.included[x]).collect();
        let edges: Vec<EdgeId> = (0..self.edges.len()).filter(|&e| self.edges[e] == EdgeState::Chosen).collect();
        self.found.push((vertices, edges));
    }
}

/// All common covers of `d1` and `d2` inside their product, smallest first
/// (by vertex count, edge count, then the sorted product ids).
pub fn find_common_covers(d1: &Multigraph, d2: &Multigraph, budget: u64) -> Result<Vec<CommonCover>> {
    if !is_connected(d1) || !is_connected(d2) {
        return Err(Error::DisconnectedGraph);
    }
    let (theta, p1, p2) = directed_product(d1, d2);
    let mut search = Search {
        d1,
        d2,
        theta: &theta,
        seed: 0,
        budget,
        nodes: 0,
        included: vec![false; theta.vertex_count()],
        done_out: vec![false; theta.vertex_count()],
        done_in: vec![false; theta.vertex_count()],
        edges: vec![EdgeState::Open; theta.edge_count()],
        found: Vec::new(),
    };
    for seed in theta.vertices() {
        search.seed = seed;
        search.included[seed] = true;
        search.run()?;
        search.included[seed] = false;
    }
    debug!("common cover search: {} nodes, {} covers", search.nodes, search.found.len());
    let mut found = search.found;
    found.sort_by(|a, b| (a.0.len(), a.1.len(), &a.0, &a.1).cmp(&(b.0.len(), b.1.len(), &b.0, &b.1)));
    found
        .into_iter()
        .map(|(vs, es)| build_cover(&theta, &p1, &p2, d1, d2, vs, es))
        .collect()
}

fn build_cover(
    theta: &Multigraph,
    p1: &GraphHom,
    p2: &GraphHom,
    d1: &Multigraph,
    d2: &Multigraph,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
) -> Result<CommonCover> {
    let mut sub = Multigraph::new();
    let mut local = vec![usize::MAX; theta.vertex_count()];
    for &x in &vertices {
        local[x] = sub.add_vertex(theta.vertex_name(x))?;
    }
    for &e in &edges {
        sub.add_edge(theta.edge_name(e), local[theta.src(e)], local[theta.dst(e)])?;
    }
    let restrict = |p: &GraphHom| GraphHom {
        vmap: vertices.iter().map(|&x| p.vmap[x]).collect(),
        emap: edges.iter().map(|&e| p.emap[e]).collect(),
    };
    let mu1 = CoverMap::new(sub.clone(), d1.clone(), restrict(p1))?;
    let mu2 = CoverMap::new(sub, d2.clone(), restrict(p2))?;
    Ok(CommonCover { theta_vertices: vertices, theta_edges: edges, mu1, mu2 })
}
