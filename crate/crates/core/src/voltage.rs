//! Voltage assignments, walk voltages, condensation and derived graphs.

use std::collections::{HashMap, VecDeque};

use crate::cover::CoverMap;
use crate::error::{Error, Result};
use crate::graph::{is_connected, pair_name, return_walk, Dir, EdgeId, GraphHom, Multigraph, TreeSet, VertexId, Walk};
use crate::group::{GroupElement, GroupSpec};
use crate::scalar::Scalar;

/// A multigraph with a group element on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageGraph<T> {
    graph: Multigraph,
    spec: GroupSpec<T>,
    voltages: Vec<GroupElement<T>>,
}

/// Which group the derived graph is built over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient<T> {
    /// The whole voltage group.
    Full,
    /// The subgroup generated by all edge voltages.
    VoltageGroup,
    /// The subgroup generated by the listed elements; it must contain every voltage.
    Generated(Vec<GroupElement<T>>),
}

impl<T: Scalar> VoltageGraph<T> {
    pub fn new(graph: Multigraph, spec: GroupSpec<T>, voltages: Vec<GroupElement<T>>) -> Result<Self> {
        if voltages.len() != graph.edge_count() {
            return Err(Error::LengthMismatch { left: graph.edge_count(), right: voltages.len() });
        }
        let voltages = voltages
            .into_iter()
            .map(|g| spec.element(g.into_coords()))
            .collect::<Result<Vec<_>>>()?;
        Ok(VoltageGraph { graph, spec, voltages })
    }

    /// Convenience constructor with voltages given as `i64` coordinate slices.
    pub fn from_i64(graph: Multigraph, spec: GroupSpec<T>, voltages: &[&[i64]]) -> Result<Self> {
        let vs = voltages.iter().map(|c| spec.element_from_i64(c)).collect::<Result<Vec<_>>>()?;
        Self::new(graph, spec, vs)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn spec(&self) -> &GroupSpec<T> {
        &self.spec
    }

    pub fn voltage(&self, e: EdgeId) -> &GroupElement<T> {
        &self.voltages[e]
    }

    pub fn voltages(&self) -> &[GroupElement<T>] {
        &self.voltages
    }

    /// Same graph, new voltages.
    pub fn with_voltages(&self, voltages: Vec<GroupElement<T>>) -> Result<Self> {
        Self::new(self.graph.clone(), self.spec.clone(), voltages)
    }

    /// Signed sum of edge voltages along `w`.
    pub fn walk_voltage(&self, w: &Walk) -> Result<GroupElement<T>> {
        w.vertices(&self.graph)?;
        let mut acc = self.spec.zero();
        for step in &w.steps {
            let g = &self.voltages[step.edge];
            acc = match step.dir {
                Dir::Forward => self.spec.add(&acc, g)?,
                Dir::Backward => self.spec.sub(&acc, g)?,
            };
        }
        Ok(acc)
    }

    /// Tree edges get zero; each chord gets the voltage of its return walk.
    pub fn condense(&self, tree: &TreeSet) -> Result<Self> {
        if !is_connected(&self.graph) {
            return Err(Error::DisconnectedGraph);
        }
        let mut out = Vec::with_capacity(self.graph.edge_count());
        for e in self.graph.edges() {
            out.push(if tree.contains(e) {
                self.spec.zero()
            } else {
                self.walk_voltage(&return_walk(&self.graph, tree, e)?)?
            });
        }
        self.with_voltages(out)
    }

    pub fn is_condensed(&self, tree: &TreeSet) -> bool {
        tree.edges().iter().all(|&e| self.spec.is_zero(&self.voltages[e]))
    }

    /// Voltages of the chords of `tree` (in edge order) read off their return walks.
    pub fn chord_voltages(&self, tree: &TreeSet) -> Result<Vec<GroupElement<T>>> {
        tree.chords()
            .into_iter()
            .map(|e| self.walk_voltage(&return_walk(&self.graph, tree, e)?))
            .collect()
    }

    /// Elements of the group a derived graph is built over, sorted.
    pub fn ambient_elements(&self, ambient: &Ambient<T>) -> Result<Vec<GroupElement<T>>> {
        match ambient {
            Ambient::Full => self.spec.elements(),
            Ambient::VoltageGroup => self.spec.generated_elements(&self.voltages),
            Ambient::Generated(gens) => {
                for g in &self.voltages {
                    if !self.spec.is_member(g, gens)? {
                        return Err(Error::InvalidSpec(format!("voltage {g} lies outside the chosen subgroup")));
                    }
                }
                self.spec.generated_elements(gens)
            }
        }
    }

    /// The derived graph over a finite group, with its canonical projection.
    ///
    /// Vertex `(v, g)` has index `v * |G| + rank(g)` where `rank` is the
    /// position of `g` in lexicographic order; edges likewise.
    pub fn derived_graph(&self, ambient: &Ambient<T>) -> Result<CoverMap> {
        let elements = self.ambient_elements(ambient)?;
        let order = elements.len();
        let position: HashMap<&GroupElement<T>, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut derived = Multigraph::new();
        let mut hom = GraphHom { vmap: Vec::new(), emap: Vec::new() };
        for v in self.graph.vertices() {
            for g in &elements {
                derived.add_vertex(pair_name(self.graph.vertex_name(v), &coord_label(g)))?;
                hom.vmap.push(v);
            }
        }
        for e in self.graph.edges() {
            let (a, b) = (self.graph.src(e), self.graph.dst(e));
            for (i, g) in elements.iter().enumerate() {
                let h = self.spec.add(g, &self.voltages[e])?;
                let j = position[&h];
                derived.add_edge(pair_name(self.graph.edge_name(e), &coord_label(g)), a * order + i, b * order + j)?;
                hom.emap.push(e);
            }
        }
        CoverMap::new(derived, self.graph.clone(), hom)
    }

    /// Finite window into the derived graph over the voltage group: the
    /// subgraph induced by all `(v, g)` within undirected distance `radius`
    /// of `(v0, 0)`, where `v0` is the first vertex. Vertices appear in
    /// breadth-first discovery order.
    pub fn derived_ball(&self, radius: usize) -> Result<Multigraph> {
        let mut ball = Multigraph::new();
        if self.graph.vertex_count() == 0 {
            return Ok(ball);
        }
        let mut index: HashMap<(VertexId, GroupElement<T>), VertexId> = HashMap::new();
        let mut order: Vec<(VertexId, GroupElement<T>)> = Vec::new();
        let start = (0, self.spec.zero());
        index.insert(start.clone(), 0);
        order.push(start.clone());
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some(((v, g), d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for step in self.graph.steps_from(v) {
                let w = self.graph.traverse(v, step.edge, step.dir).expect("step leaves v");
                let h = match step.dir {
                    Dir::Forward => self.spec.add(&g, &self.voltages[step.edge])?,
                    Dir::Backward => self.spec.sub(&g, &self.voltages[step.edge])?,
                };
                let key = (w, h);
                if !index.contains_key(&key) {
                    index.insert(key.clone(), order.len());
                    order.push(key.clone());
                    queue.push_back((key, d + 1));
                }
            }
        }
        for (v, g) in &order {
            ball.add_vertex(pair_name(self.graph.vertex_name(*v), &coord_label(g)))?;
        }
        for (i, (v, g)) in order.iter().enumerate() {
            for &e in self.graph.out_edges(*v) {
                let key = (self.graph.dst(e), self.spec.add(g, &self.voltages[e])?);
                if let Some(&j) = index.get(&key) {
                    ball.add_edge(pair_name(self.graph.edge_name(e), &coord_label(g)), i, j)?;
                }
            }
        }
        Ok(ball)
    }

    /// Number of connected components of the derived graph over the full
    /// (finite) voltage group.
    pub fn count_derived_components(&self) -> Result<usize> {
        if !self.spec.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(self.derived_graph(&Ambient::Full)?.domain().component_labels().0)
    }

    /// A spanning tree set made only of zero-voltage edges, rooted at `base`,
    /// if one exists.
    pub fn condensing_tree(&self, base: VertexId) -> Option<TreeSet> {
        let g = &self.graph;
        let mut seen = vec![false; g.vertex_count()];
        let mut edges = Vec::new();
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for step in g.steps_from(v) {
                if !self.spec.is_zero(&self.voltages[step.edge]) {
                    continue;
                }
                let w = g.traverse(v, step.edge, step.dir).expect("step leaves v");
                if !seen[w] {
                    seen[w] = true;
                    edges.push(step.edge);
                    queue.push_back(w);
                }
            }
        }
        TreeSet::from_edges(g, base, &edges).ok()
    }
}

/// `"a,b,c"` for an element with coordinates `(a, b, c)`.
pub fn coord_label<T: Scalar>(g: &GroupElement<T>) -> String {
    g.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
