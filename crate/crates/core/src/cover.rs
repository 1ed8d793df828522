//! Covering maps: unique walk lifting, monodromy, regularity, goodness,
//! proper lifts, voltage lifting and deck transformations.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{covering_violation, is_connected, Dir, EdgeId, GraphHom, Multigraph, Step, TreeSet, VertexId, Walk};
use crate::group::GroupElement;
use crate::scalar::Scalar;
use crate::voltage::VoltageGraph;

/// A graph homomorphism checked to be a covering at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMap {
    domain: Multigraph,
    codomain: Multigraph,
    hom: GraphHom,
    // out_lift[u][k]: the edge leaving u over the k-th out-edge of hom(u)
    out_lift: Vec<Vec<EdgeId>>,
    in_lift: Vec<Vec<EdgeId>>,
    fibers: Vec<Vec<VertexId>>,
}

impl CoverMap {
    pub fn new(domain: Multigraph, codomain: Multigraph, hom: GraphHom) -> Result<Self> {
        if let Some(why) = covering_violation(&domain, &codomain, &hom) {
            return Err(Error::NotCovering(why));
        }
        let mut out_lift: Vec<Vec<EdgeId>> =
            domain.vertices().map(|u| vec![usize::MAX; domain.out_degree(u)]).collect();
        let mut in_lift: Vec<Vec<EdgeId>> = domain.vertices().map(|u| vec![usize::MAX; domain.in_degree(u)]).collect();
        for e in domain.edges() {
            let image = hom.emap[e];
            out_lift[domain.src(e)][codomain.out_position(image)] = e;
            in_lift[domain.dst(e)][codomain.in_position(image)] = e;
        }
        let mut fibers = vec![Vec::new(); codomain.vertex_count()];
        for u in domain.vertices() {
            fibers[hom.vmap[u]].push(u);
        }
        Ok(CoverMap { domain, codomain, hom, out_lift, in_lift, fibers })
    }

    pub fn identity(g: &Multigraph) -> Self {
        CoverMap::new(g.clone(), g.clone(), GraphHom::identity(g)).expect("identity is a covering")
    }

    pub fn domain(&self) -> &Multigraph {
        &self.domain
    }

    pub fn codomain(&self) -> &Multigraph {
        &self.codomain
    }

    pub fn hom(&self) -> &GraphHom {
        &self.hom
    }

    pub fn vertex_image(&self, u: VertexId) -> VertexId {
        self.hom.vmap[u]
    }

    pub fn edge_image(&self, e: EdgeId) -> EdgeId {
        self.hom.emap[e]
    }

    /// Domain vertices over `v`, in increasing order.
    pub fn fiber(&self, v: VertexId) -> &[VertexId] {
        &self.fibers[v]
    }

    /// Number of sheets over `v`.
    pub fn degree_over(&self, v: VertexId) -> usize {
        self.fibers[v].len()
    }

    /// The domain edge over `step.edge` incident to `u` on the side the step leaves from.
    pub fn lift_step(&self, u: VertexId, step: Step) -> EdgeId {
        match step.dir {
            Dir::Forward => self.out_lift[u][self.codomain.out_position(step.edge)],
            Dir::Backward => self.in_lift[u][self.codomain.in_position(step.edge)],
        }
    }

    /// End of the lift of `w` from `start`, without materializing the walk.
    pub fn lift_endpoint(&self, w: &Walk, start: VertexId) -> Result<VertexId> {
        self.check_over(start, w.start)?;
        let mut at = start;
        for &step in &w.steps {
            let e = self.lift_step(at, step);
            at = self.domain.traverse(at, e, step.dir).expect("lift tables respect endpoints");
        }
        Ok(at)
    }

    /// The unique walk over `w` starting at `start`.
    pub fn lift_walk(&self, w: &Walk, start: VertexId) -> Result<Walk> {
        w.vertices(&self.codomain)?;
        self.check_over(start, w.start)?;
        let mut at = start;
        let mut steps = Vec::with_capacity(w.len());
        for &step in &w.steps {
            let e = self.lift_step(at, step);
            steps.push(Step::new(e, step.dir));
            at = self.domain.traverse(at, e, step.dir).expect("lift tables respect endpoints");
        }
        Ok(Walk::new(start, steps))
    }

    fn check_over(&self, u: VertexId, v: VertexId) -> Result<()> {
        if u >= self.domain.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{u}")));
        }
        if self.hom.vmap[u] != v {
            return Err(Error::FiberMismatch {
                vertex: self.domain.vertex_name(u).to_string(),
                expected: self.codomain.vertex_name(v).to_string(),
            });
        }
        Ok(())
    }

    /// Monodromy action of the return walks of `tree` on the fiber over its base.
    pub fn monodromy(&self, tree: &TreeSet) -> Result<Monodromy> {
        let base_fiber = self.fiber(tree.base()).to_vec();
        let slot: std::collections::HashMap<VertexId, usize> =
            base_fiber.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let chords = tree.chords();
        let mut perms = Vec::with_capacity(chords.len());
        for &e in &chords {
            let walk = crate::graph::return_walk(&self.codomain, tree, e)?;
            let perm: Vec<usize> = base_fiber
                .iter()
                .map(|&u| self.lift_endpoint(&walk, u).map(|end| slot[&end]))
                .collect::<Result<_>>()?;
            perms.push(perm);
        }
        Ok(Monodromy { base_fiber, chords, perms })
    }

    /// Builds a proper lift of the codomain: the tree is lifted from
    /// `base_lift` along tree paths, giving one interior vertex per fiber;
    /// every domain edge leaving an interior vertex is a lift edge.
    pub fn proper_lift(&self, tree: &TreeSet, base_lift: VertexId) -> Result<ProperLift> {
        self.check_over(base_lift, tree.base())?;
        let n = self.codomain.vertex_count();
        let mut interior = vec![usize::MAX; n];
        let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
        interior[tree.base()] = base_lift;
        // visit codomain vertices by depth so every parent is lifted first
        let mut by_depth: Vec<VertexId> = self.codomain.vertices().collect();
        by_depth.sort_by_key(|&v| tree.depth(v));
        for v in by_depth {
            let Some(up) = tree.parent_step(v) else { continue };
            let parent = self.codomain.traverse(v, up.edge, up.dir).expect("parent step is incident");
            let down = up.reversed();
            let e = self.lift_step(interior[parent], down);
            interior[v] = self.domain.traverse(interior[parent], e, down.dir).expect("lift is incident");
            tree_edges.push(e);
        }
        let mut is_interior = vec![false; self.domain.vertex_count()];
        for &u in &interior {
            is_interior[u] = true;
        }
        let mut interior_edges = Vec::new();
        let mut boundary_edges = Vec::new();
        for &u in &interior {
            for &e in self.domain.out_edges(u) {
                if is_interior[self.domain.dst(e)] {
                    interior_edges.push(e);
                } else {
                    boundary_edges.push(e);
                }
            }
        }
        interior_edges.sort_unstable();
        boundary_edges.sort_unstable();
        tree_edges.sort_unstable();
        Ok(ProperLift { interior_vertices: interior, interior_edges, boundary_edges, lifted_tree: tree_edges })
    }

    /// All automorphisms `g` of a connected domain with `self ∘ g = self`.
    ///
    /// A deck transformation is fixed by where it sends one vertex, so each
    /// candidate image of the first vertex over codomain vertex 0 is
    /// propagated along the domain and kept if the result is bijective.
    pub fn deck_group(&self) -> Vec<GraphHom> {
        let mut out = Vec::new();
        if self.domain.vertex_count() == 0 || !is_connected(&self.domain) {
            return out;
        }
        let root = self.fibers[self.hom.vmap[0]][0];
        for &target in self.fiber(self.hom.vmap[root]) {
            if let Some(g) = self.propagate(root, target) {
                out.push(g);
            }
        }
        out
    }

    fn propagate(&self, root: VertexId, target: VertexId) -> Option<GraphHom> {
        let n = self.domain.vertex_count();
        let mut vmap = vec![usize::MAX; n];
        let mut emap = vec![usize::MAX; self.domain.edge_count()];
        vmap[root] = target;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for step in self.domain.steps_from(u) {
                let down = Step::new(self.hom.emap[step.edge], step.dir);
                let image_edge = self.lift_step(vmap[u], down);
                let w = self.domain.traverse(u, step.edge, step.dir).expect("step leaves u");
                let w_image = self.domain.traverse(vmap[u], image_edge, step.dir).expect("lift is incident");
                if emap[step.edge] != usize::MAX && emap[step.edge] != image_edge {
                    return None;
                }
                emap[step.edge] = image_edge;
                if vmap[w] == usize::MAX {
                    vmap[w] = w_image;
                    queue.push_back(w);
                } else if vmap[w] != w_image {
                    return None;
                }
            }
        }
        let mut hit = vec![false; n];
        for &x in &vmap {
            if std::mem::replace(&mut hit[x], true) {
                return None;
            }
        }
        Some(GraphHom { vmap, emap })
    }

    /// Each domain edge receives the voltage of its image edge.
    pub fn lift_voltage<T: Scalar>(&self, vg: &VoltageGraph<T>) -> Result<VoltageGraph<T>> {
        if vg.graph() != &self.codomain {
            return Err(Error::InvalidHom("voltage graph is not the codomain of the cover".into()));
        }
        let voltages: Vec<GroupElement<T>> = self.domain.edges().map(|e| vg.voltage(self.hom.emap[e]).clone()).collect();
        VoltageGraph::new(self.domain.clone(), vg.spec().clone(), voltages)
    }

    pub fn is_good_cover<T: Scalar>(&self, vg: &VoltageGraph<T>, tree: &TreeSet) -> Result<bool> {
        self.monodromy(tree)?.is_good(vg, tree)
    }
}

/// A lift of a spanning tree plus every edge leaving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperLift {
    /// Interior vertex over each codomain vertex.
    pub interior_vertices: Vec<VertexId>,
    /// Lift edges ending inside the interior.
    pub interior_edges: Vec<EdgeId>,
    /// Lift edges ending outside the interior.
    pub boundary_edges: Vec<EdgeId>,
    /// Domain edges over the tree edges.
    pub lifted_tree: Vec<EdgeId>,
}

/// Fiber permutations of the chord return walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monodromy {
    pub base_fiber: Vec<VertexId>,
    pub chords: Vec<EdgeId>,
    /// `perms[i][k]` is the fiber slot reached by lifting chord `i`'s return walk from slot `k`.
    pub perms: Vec<Vec<usize>>,
}

impl Monodromy {
    pub fn fiber_size(&self) -> usize {
        self.base_fiber.len()
    }

    pub fn commutes(&self) -> bool {
        self.perms
            .iter()
            .enumerate()
            .all(|(i, p)| self.perms[i + 1..].iter().all(|q| compose(p, q) == compose(q, p)))
    }

    /// Regularity of the fiber action: the generated group is transitive and
    /// every element fixes either all fiber points or none.
    ///
    /// The closure is abandoned early once it has more elements than the
    /// fiber, since a group acting freely cannot; `bound` caps its size.
    pub fn is_regular(&self, bound: usize) -> Result<bool> {
        let n = self.fiber_size();
        if n <= 1 {
            return Ok(true);
        }
        let identity: Vec<usize> = (0..n).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for p in &self.perms {
                let y = compose(&x, p);
                if seen.contains(&y) {
                    continue;
                }
                let fixed = (0..n).filter(|&k| y[k] == k).count();
                if fixed != 0 && fixed != n {
                    return Ok(false);
                }
                if seen.len() >= bound {
                    return Err(Error::GroupTooLarge(bound));
                }
                seen.insert(y.clone());
                if seen.len() > n {
                    return Ok(false);
                }
                queue.push_back(y);
            }
        }
        // a semiregular group is regular iff it is transitive, i.e. has n elements
        Ok(seen.len() == n)
    }

    /// Goodness with respect to the voltages of `vg`.
    ///
    /// Cyclic walks at the base form a free group on the chords, and the
    /// voltage of such a walk only depends on its chord exponent sums. The
    /// trivial-voltage walks are therefore generated by commutators together
    /// with the words whose exponent vectors lie in the relation lattice of
    /// the chord voltages, so it suffices that the chord permutations commute
    /// and that every basis vector of that lattice acts trivially. Walks at
    /// other vertices are conjugate to base walks through tree paths, which
    /// changes neither their voltage nor whether all their lifts close up.
    pub fn is_good<T: Scalar>(&self, vg: &VoltageGraph<T>, tree: &TreeSet) -> Result<bool> {
        if !self.commutes() {
            return Ok(false);
        }
        let chord_voltages = vg.chord_voltages(tree)?;
        let relations = vg.spec().relation_lattice(&chord_voltages)?;
        let n = self.fiber_size();
        let identity: Vec<usize> = (0..n).collect();
        for row in relations.basis() {
            let mut acc = identity.clone();
            for (x, p) in row.iter().zip(&self.perms) {
                acc = compose(&acc, &power(p, x));
            }
            if acc != identity {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `p` then `q`: slot `k` goes to `q[p[k]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&k| q[k]).collect()
}

/// Order of a permutation (lcm of its cycle lengths).
pub fn perm_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut order = 1usize;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// `p^x` for an arbitrary integer exponent.
pub fn power<T: Scalar>(p: &[usize], x: &T) -> Vec<usize> {
    let order = T::from_usize(perm_order(p)).expect("permutation order fits");
    let mut e = x.mod_floor(&order).to_usize().expect("reduced exponent fits");
    let mut base = p.to_vec();
    let mut acc: Vec<usize> = (0..p.len()).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = compose(&acc, &base);
        }
        base = compose(&base, &base);
        e >>= 1;
    }
    acc
}
