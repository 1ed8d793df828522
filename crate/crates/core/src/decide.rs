//! Deciding whether two voltage graphs have isomorphic derived graphs by
//! testing the common covers inside their product.
//!
//! A cover `Δ⊤` with projections `μ1`, `μ2` is *good* when each `μi` is good
//! for `γi`. It *succeeds* when, after lifting both assignments to `Δ⊤` and
//! condensing them over one spanning tree `S⊤`, some automorphism `α` of
//! `Δ⊤` fixing `S⊤` makes `γ1⊤(e) ↦ γ2⊤(α e)` (over the chords `e`) extend to
//! a group isomorphism. A success proves the derived graphs isomorphic.
//!
//! With `α` restricted to tree-fixing automorphisms a good cover can fail
//! even though the derived graphs are isomorphic; another good cover then
//! succeeds, so the verdict scans all of them. [`AlphaScope`] widens the
//! search to tree-preserving or arbitrary automorphisms; in the latter case
//! `γ2⊤ ∘ α` is re-condensed over `S⊤` before comparing.

use std::collections::{HashMap, HashSet};

use log::{debug, warn};

use crate::common_cover::{find_common_covers, CommonCover, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{degree_profile, Dir, is_connected, parallel_chord_classes, spanning_tree, EdgeId, GraphHom, Multigraph, TreeSet, VertexId};
use crate::group::{generator_map_extends_to_iso, GroupElement};
use crate::scalar::Scalar;
use crate::voltage::VoltageGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOptions {
    /// Node budget of the common cover search.
    pub budget: u64,
    /// Which automorphisms of `Δ⊤` the generator-map test may use.
    pub alpha: AlphaScope,
    /// Largest monodromy group closure built by the regularity check.
    pub regular_bound: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: DEFAULT_BUDGET, alpha: AlphaScope::TreeFixing, regular_bound: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AlphaScope {
    /// Automorphisms fixing every edge of `S⊤`.
    #[default]
    TreeFixing,
    /// Automorphisms mapping `S⊤` onto itself.
    TreeSetwise,
    /// All automorphisms; `γ2⊤` is pulled back along `α` and re-condensed.
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Isomorphic,
    NotIsomorphic,
    Unresolved,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    DegreeMismatch,
    NoCommonCover,
    NoGoodCommonCover,
    AllGoodCoversFail,
    GeneratorMapIso,
    NonRegularProjection,
    SearchBudget,
}

/// Evidence for an isomorphic verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<T> {
    pub cover: CommonCover,
    pub tree_top: TreeSet,
    /// Lifts of both assignments to the cover, condensed over `tree_top`.
    pub lifted: (VoltageGraph<T>, VoltageGraph<T>),
    pub alpha: GraphHom,
    /// `(γ1⊤(e), γ2⊤'(e))` for every chord `e` of `tree_top`, in edge order,
    /// where `γ2⊤'` is `γ2⊤ ∘ α` condensed over `tree_top` (just `γ2⊤(α e)`
    /// when `α` preserves the tree).
    pub generator_pairs: Vec<(GroupElement<T>, GroupElement<T>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T> {
    pub outcome: Outcome,
    pub reason: Reason,
    pub witness: Option<Witness<T>>,
    /// Number of common covers found in the product.
    pub covers_found: usize,
    /// Good covers that were tested.
    pub good_covers_tested: usize,
    /// Good covers that failed before a successful one was found.
    pub failed_good_covers: usize,
}

impl<T> Verdict<T> {
    fn plain(outcome: Outcome, reason: Reason) -> Self {
        Verdict { outcome, reason, witness: None, covers_found: 0, good_covers_tested: 0, failed_good_covers: 0 }
    }
}

/// Result of examining a single common cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverTest<T> {
    Success(Box<Witness<T>>),
    Fail,
    NotGood,
    NonRegular,
}

/// Voltage graph with an optional spanning tree it is claimed to be condensed over.
#[derive(Debug)]
pub struct Input<'a, T> {
    pub vg: &'a VoltageGraph<T>,
    pub tree: Option<&'a TreeSet>,
}

impl<T> Clone for Input<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Input<'_, T> {}

impl<'a, T: Scalar> Input<'a, T> {
    pub fn new(vg: &'a VoltageGraph<T>) -> Self {
        Input { vg, tree: None }
    }

    pub fn with_tree(vg: &'a VoltageGraph<T>, tree: &'a TreeSet) -> Self {
        Input { vg, tree: Some(tree) }
    }

    fn validate(&self) -> Result<()> {
        if !is_connected(self.vg.graph()) || self.vg.graph().vertex_count() == 0 {
            return Err(Error::DisconnectedGraph);
        }
        if let Some(t) = self.tree {
            if let Some(&e) = t.edges().iter().find(|&&e| !self.vg.spec().is_zero(self.vg.voltage(e))) {
                return Err(Error::NotCondensed(self.vg.graph().edge_name(e).to_string()));
            }
        }
        Ok(())
    }

    fn tree(&self) -> Result<TreeSet> {
        match self.tree {
            Some(t) => Ok(t.clone()),
            None => spanning_tree(self.vg.graph(), 0),
        }
    }
}

/// Fast necessary condition for a common cover: both graphs use the same
/// `(indegree, outdegree)` types, with proportional multiplicities (each
/// type is repeated once per sheet of a covering).
pub fn precheck<T: Scalar>(a: Input<'_, T>, b: Input<'_, T>) -> Result<bool> {
    a.validate()?;
    b.validate()?;
    Ok(degree_types_compatible(a.vg.graph(), b.vg.graph()))
}

fn degree_types_compatible(g1: &Multigraph, g2: &Multigraph) -> bool {
    let count = |g: &Multigraph| {
        let mut m: HashMap<(usize, usize), usize> = HashMap::new();
        for t in degree_profile(g) {
            *m.entry(t).or_default() += 1;
        }
        m
    };
    let (c1, c2) = (count(g1), count(g2));
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    c1.len() == c2.len() && c1.iter().all(|(t, &k1)| c2.get(t).is_some_and(|&k2| k1 * n2 == k2 * n1))
}

/// Runs the goodness, regularity and generator-map tests on one cover.
pub fn test_cover<T: Scalar>(
    a: Input<'_, T>,
    b: Input<'_, T>,
    cover: &CommonCover,
    opts: &DecideOptions,
) -> Result<CoverTest<T>> {
    let (t1, t2) = (a.tree()?, b.tree()?);
    test_cover_with_trees(a.vg, &t1, b.vg, &t2, cover, opts, &mut HashSet::new())
}

fn test_cover_with_trees<T: Scalar>(
    vg1: &VoltageGraph<T>,
    t1: &TreeSet,
    vg2: &VoltageGraph<T>,
    t2: &TreeSet,
    cover: &CommonCover,
    opts: &DecideOptions,
    failed: &mut HashSet<AlphaKey<T>>,
) -> Result<CoverTest<T>> {
    let m1 = cover.mu1.monodromy(t1)?;
    let m2 = cover.mu2.monodromy(t2)?;
    if !m1.is_good(vg1, t1)? || !m2.is_good(vg2, t2)? {
        return Ok(CoverTest::NotGood);
    }
    if !m1.is_regular(opts.regular_bound)? || !m2.is_regular(opts.regular_bound)? {
        return Ok(CoverTest::NonRegular);
    }
    let top = cover.graph();
    let tree_top = spanning_tree(top, 0)?;
    let l1 = cover.mu1.lift_voltage(vg1)?.condense(&tree_top)?;
    let l2 = cover.mu2.lift_voltage(vg2)?.condense(&tree_top)?;
    let key = AlphaKey::new(top, &tree_top, &l1, &l2);
    if failed.contains(&key) {
        return Ok(CoverTest::Fail);
    }
    let Some((alpha, generator_pairs)) = AlphaSearch::new(top, &tree_top, &l1, &l2).find(opts.alpha)? else {
        failed.insert(key);
        return Ok(CoverTest::Fail);
    };
    Ok(CoverTest::Success(Box::new(Witness {
        cover: cover.clone(),
        tree_top,
        lifted: (l1, l2),
        alpha,
        generator_pairs,
    })))
}

/// Everything the generator-map test sees: the shape of `Δ⊤` and its tree,
/// and per chord class the lifted voltages of both sides as sorted lists.
/// Permuting a class is itself a tree-fixing automorphism, so the order
/// there is irrelevant; covers with equal keys pass or fail together.
#[derive(PartialEq, Eq, Hash)]
struct AlphaKey<T> {
    ends: Vec<(VertexId, VertexId)>,
    tree: Vec<EdgeId>,
    classes: Vec<ClassVoltages<T>>,
}

type ClassVoltages<T> = (Vec<GroupElement<T>>, Vec<GroupElement<T>>);

impl<T: Scalar> AlphaKey<T> {
    fn new(top: &Multigraph, tree: &TreeSet, l1: &VoltageGraph<T>, l2: &VoltageGraph<T>) -> Self {
        let sorted = |vg: &VoltageGraph<T>, class: &[EdgeId]| {
            let mut v: Vec<GroupElement<T>> = class.iter().map(|&e| vg.voltage(e).clone()).collect();
            v.sort();
            v
        };
        AlphaKey {
            ends: top.edges().map(|e| (top.src(e), top.dst(e))).collect(),
            tree: tree.edges(),
            classes: parallel_chord_classes(top, tree).iter().map(|c| (sorted(l1, c), sorted(l2, c))).collect(),
        }
    }
}

/// Calls `visit` on vertex permutations of `Δ⊤` that preserve, for every
/// ordered pair, the number of edges between them (counted separately for
/// tree edges and chords when `split` is set), in lexicographic order so the
/// identity comes first. Stops as soon as `visit` returns `true`.
fn for_each_vertex_map(
    top: &Multigraph,
    tree: &TreeSet,
    split: bool,
    visit: &mut dyn FnMut(&[VertexId]) -> Result<bool>,
) -> Result<bool> {
    let n = top.vertex_count();
    let mut counts: HashMap<(VertexId, VertexId), (usize, usize)> = HashMap::new();
    for e in top.edges() {
        let c = counts.entry((top.src(e), top.dst(e))).or_default();
        if split && tree.contains(e) {
            c.0 += 1;
        } else {
            c.1 += 1;
        }
    }
    let pair = |u: VertexId, v: VertexId| counts.get(&(u, v)).copied().unwrap_or_default();
    struct State<'s> {
        n: usize,
        map: Vec<VertexId>,
        used: Vec<bool>,
        pair: &'s dyn Fn(VertexId, VertexId) -> (usize, usize),
    }
    fn rec(k: usize, s: &mut State<'_>, visit: &mut dyn FnMut(&[VertexId]) -> Result<bool>) -> Result<bool> {
        if k == s.n {
            return visit(&s.map);
        }
        for t in 0..s.n {
            if s.used[t] || (s.pair)(k, k) != (s.pair)(t, t) {
                continue;
            }
            if (0..k).any(|j| (s.pair)(j, k) != (s.pair)(s.map[j], t) || (s.pair)(k, j) != (s.pair)(t, s.map[j])) {
                continue;
            }
            s.map[k] = t;
            s.used[t] = true;
            let stop = rec(k + 1, s, visit)?;
            s.used[t] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let mut state = State { n, map: vec![usize::MAX; n], used: vec![false; n], pair: &pair };
    rec(0, &mut state, visit)
}

type Found<T> = (GraphHom, Vec<(GroupElement<T>, GroupElement<T>)>);

/// Search for `α`. For a vertex map and a choice of tree edge images, `γ2⊤`
/// is pulled back along `α` and re-condensed over `S⊤` through vertex
/// potentials; the chords are then matched by backtracking, pruned by
/// element orders and by the relation lattice of every partial assignment
/// (a generator map that extends to an isomorphism restricts to one on any
/// subfamily). When `α` preserves `S⊤` the potentials vanish.
struct AlphaSearch<'a, T> {
    top: &'a Multigraph,
    tree: &'a TreeSet,
    l1: &'a VoltageGraph<T>,
    l2: &'a VoltageGraph<T>,
    orders1: Vec<Option<T>>,
    classes: Vec<Vec<EdgeId>>,
    between: HashMap<(VertexId, VertexId), Vec<EdgeId>>,
    // non-base vertices, parents first
    by_depth: Vec<VertexId>,
}

impl<'a, T: Scalar> AlphaSearch<'a, T> {
    fn new(top: &'a Multigraph, tree: &'a TreeSet, l1: &'a VoltageGraph<T>, l2: &'a VoltageGraph<T>) -> Self {
        let orders1 =
            l1.voltages().iter().map(|g| l1.spec().element_order(g).expect("voltage matches its spec")).collect();
        let mut between: HashMap<(VertexId, VertexId), Vec<EdgeId>> = HashMap::new();
        for e in top.edges() {
            between.entry((top.src(e), top.dst(e))).or_default().push(e);
        }
        let mut by_depth: Vec<VertexId> = top.vertices().filter(|&v| v != tree.base()).collect();
        by_depth.sort_by_key(|&v| tree.depth(v));
        AlphaSearch { top, tree, l1, l2, orders1, classes: parallel_chord_classes(top, tree), between, by_depth }
    }

    fn find(&self, scope: AlphaScope) -> Result<Option<Found<T>>> {
        if scope == AlphaScope::TreeFixing {
            let identity: Vec<VertexId> = self.top.vertices().collect();
            return self.with_vertex_map(&identity, scope);
        }
        let mut found = None;
        for_each_vertex_map(self.top, self.tree, scope == AlphaScope::TreeSetwise, &mut |vmap| {
            found = self.with_vertex_map(vmap, scope)?;
            Ok(found.is_some())
        })?;
        Ok(found)
    }

    fn with_vertex_map(&self, vmap: &[VertexId], scope: AlphaScope) -> Result<Option<Found<T>>> {
        let tree_edges = self.tree.edges();
        let mut choices: Vec<Vec<EdgeId>> = Vec::with_capacity(tree_edges.len());
        for &e in &tree_edges {
            let all = self.between.get(&(vmap[self.top.src(e)], vmap[self.top.dst(e)])).map_or(&[][..], |v| v);
            let c: Vec<EdgeId> = match scope {
                AlphaScope::Any => all.to_vec(),
                _ => all.iter().copied().filter(|&f| self.tree.contains(f)).collect(),
            };
            if c.is_empty() {
                return Ok(None);
            }
            choices.push(c);
        }
        // tree edges lie in distinct classes, so any choice is injective
        let mut pick = vec![0; choices.len()];
        loop {
            let mut emap = vec![usize::MAX; self.top.edge_count()];
            for (k, &e) in tree_edges.iter().enumerate() {
                emap[e] = choices[k][pick[k]];
            }
            if let Some(found) = self.with_tree_images(vmap, emap)? {
                return Ok(Some(found));
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return Ok(None);
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }

    fn with_tree_images(&self, vmap: &[VertexId], mut emap: Vec<EdgeId>) -> Result<Option<Found<T>>> {
        let spec = self.l2.spec();
        // voltage of the tree path from the base under the pulled-back assignment
        let mut potential = vec![spec.zero(); self.top.vertex_count()];
        for &v in &self.by_depth {
            let step = self.tree.parent_step(v).expect("non-base vertices have a parent");
            let parent = self.top.traverse(v, step.edge, step.dir).expect("parent steps are valid");
            let g = self.l2.voltage(emap[step.edge]);
            potential[v] = match step.dir {
                Dir::Forward => spec.sub(&potential[parent], g)?,
                Dir::Backward => spec.add(&potential[parent], g)?,
            };
        }
        let mut classes = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let (s, d) = (self.top.src(class[0]), self.top.dst(class[0]));
            let targets: Vec<EdgeId> = self.between[&(vmap[s], vmap[d])]
                .iter()
                .copied()
                .filter(|f| !emap.contains(f))
                .collect();
            if targets.len() != class.len() {
                return Ok(None);
            }
            let values = targets
                .iter()
                .map(|&f| spec.sub(&spec.add(&potential[s], self.l2.voltage(f))?, &potential[d]))
                .collect::<Result<Vec<_>>>()?;
            let orders = values.iter().map(|g| spec.element_order(g)).collect::<Result<Vec<_>>>()?;
            classes.push(Targets { edges: targets, values, orders, used: vec![false; class.len()] });
        }
        let sources: Vec<(usize, EdgeId)> =
            self.classes.iter().enumerate().flat_map(|(c, s)| s.iter().map(move |&e| (c, e))).collect();
        let mut assigned = Vec::with_capacity(sources.len());
        if !self.rec(&sources, &mut classes, &mut assigned)? {
            return Ok(None);
        }
        let mut pairs = vec![None; self.top.edge_count()];
        for (&(c, e), &j) in sources.iter().zip(&assigned) {
            emap[e] = classes[c].edges[j];
            pairs[e] = Some((self.l1.voltage(e).clone(), classes[c].values[j].clone()));
        }
        let generator_pairs = self.tree.chords().into_iter().map(|e| pairs[e].take().expect("every chord is matched")).collect();
        Ok(Some((GraphHom { vmap: vmap.to_vec(), emap }, generator_pairs)))
    }

    fn rec(&self, sources: &[(usize, EdgeId)], classes: &mut [Targets<T>], assigned: &mut Vec<usize>) -> Result<bool> {
        let k = assigned.len();
        if k == sources.len() {
            return Ok(true);
        }
        let (c, e) = sources[k];
        // targets carrying the same value are interchangeable
        let mut tried: Vec<usize> = Vec::new();
        for j in 0..classes[c].edges.len() {
            let t = &classes[c];
            if t.used[j] || self.orders1[e] != t.orders[j] || tried.iter().any(|&i| t.values[i] == t.values[j]) {
                continue;
            }
            tried.push(j);
            assigned.push(j);
            if self.consistent(sources, classes, assigned)? {
                classes[c].used[j] = true;
                if self.rec(sources, classes, assigned)? {
                    return Ok(true);
                }
                classes[c].used[j] = false;
            }
            assigned.pop();
        }
        Ok(false)
    }

    fn consistent(&self, sources: &[(usize, EdgeId)], classes: &[Targets<T>], assigned: &[usize]) -> Result<bool> {
        let gs: Vec<GroupElement<T>> = sources.iter().zip(assigned).map(|(&(_, e), _)| self.l1.voltage(e).clone()).collect();
        let hs: Vec<GroupElement<T>> = sources.iter().zip(assigned).map(|(&(c, _), &j)| classes[c].values[j].clone()).collect();
        generator_map_extends_to_iso(self.l1.spec(), &gs, self.l2.spec(), &hs)
    }
}

/// Possible images of one chord class, with their pulled-back voltages.
struct Targets<T> {
    edges: Vec<EdgeId>,
    values: Vec<GroupElement<T>>,
    orders: Vec<Option<T>>,
    used: Vec<bool>,
}

impl<T: Scalar> Witness<T> {
    /// Re-checks the witness against the original inputs: both projections
    /// are good, the lifted assignments are the condensed lifts, `α` is an
    /// automorphism, the pairs are the chord voltages of `γ1⊤` and of `γ2⊤`
    /// pulled back along `α`, and they satisfy the same relations.
    pub fn verify(&self, vg1: &VoltageGraph<T>, vg2: &VoltageGraph<T>) -> Result<bool> {
        let t1 = spanning_tree(vg1.graph(), 0)?;
        let t2 = spanning_tree(vg2.graph(), 0)?;
        if !self.cover.mu1.is_good_cover(vg1, &t1)? || !self.cover.mu2.is_good_cover(vg2, &t2)? {
            return Ok(false);
        }
        let l1 = self.cover.mu1.lift_voltage(vg1)?.condense(&self.tree_top)?;
        let l2 = self.cover.mu2.lift_voltage(vg2)?.condense(&self.tree_top)?;
        if (&l1, &l2) != (&self.lifted.0, &self.lifted.1) {
            return Ok(false);
        }
        let top = self.cover.graph();
        if self.alpha.validate(top, top).is_err() || !is_bijection(&self.alpha.vmap) || !is_bijection(&self.alpha.emap) {
            return Ok(false);
        }
        let pulled = l2.with_voltages(self.alpha.emap.iter().map(|&f| l2.voltage(f).clone()).collect())?.condense(&self.tree_top)?;
        let expected: Vec<_> =
            self.tree_top.chords().into_iter().map(|e| (l1.voltage(e).clone(), pulled.voltage(e).clone())).collect();
        if expected != self.generator_pairs {
            return Ok(false);
        }
        let (gs, hs): (Vec<_>, Vec<_>) = self.generator_pairs.iter().cloned().unzip();
        generator_map_extends_to_iso(vg1.spec(), &gs, vg2.spec(), &hs)
    }
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| x < map.len() && !std::mem::replace(&mut seen[x], true))
}

/// Decides whether the derived graphs of two connected voltage graphs are
/// isomorphic. Trees, when given, must have zero voltage on every edge.
pub fn decide_with_trees<T: Scalar>(a: Input<'_, T>, b: Input<'_, T>, opts: &DecideOptions) -> Result<Verdict<T>> {
    if !precheck(a, b)? {
        return Ok(Verdict::plain(Outcome::NotIsomorphic, Reason::DegreeMismatch));
    }
    let covers = match find_common_covers(a.vg.graph(), b.vg.graph(), opts.budget) {
        Ok(c) => c,
        Err(Error::SearchBudgetExceeded(_)) => return Ok(Verdict::plain(Outcome::BudgetExceeded, Reason::SearchBudget)),
        Err(e) => return Err(e),
    };
    let mut verdict = Verdict::plain(Outcome::NotIsomorphic, Reason::NoCommonCover);
    verdict.covers_found = covers.len();
    if covers.is_empty() {
        return Ok(verdict);
    }
    let (t1, t2) = (a.tree()?, b.tree()?);
    let mut non_regular = false;
    let mut failed = HashSet::new();
    for (i, cover) in covers.iter().enumerate() {
        match test_cover_with_trees(a.vg, &t1, b.vg, &t2, cover, opts, &mut failed)? {
            CoverTest::NotGood => continue,
            CoverTest::NonRegular => {
                verdict.good_covers_tested += 1;
                non_regular = true;
            }
            CoverTest::Fail => {
                verdict.good_covers_tested += 1;
                verdict.failed_good_covers += 1;
                debug!("good common cover #{i} fails");
            }
            CoverTest::Success(w) => {
                verdict.good_covers_tested += 1;
                if verdict.failed_good_covers > 0 {
                    warn!(
                        "common cover #{i} succeeds after {} failing good covers",
                        verdict.failed_good_covers
                    );
                }
                verdict.outcome = Outcome::Isomorphic;
                verdict.reason = Reason::GeneratorMapIso;
                verdict.witness = Some(*w);
                return Ok(verdict);
            }
        }
    }
    (verdict.outcome, verdict.reason) = if verdict.good_covers_tested == 0 {
        (Outcome::NotIsomorphic, Reason::NoGoodCommonCover)
    } else if non_regular {
        (Outcome::Unresolved, Reason::NonRegularProjection)
    } else {
        (Outcome::NotIsomorphic, Reason::AllGoodCoversFail)
    };
    Ok(verdict)
}

/// [`decide_with_trees`] without supplied trees.
pub fn decide_isomorphism<T: Scalar>(
    vg1: &VoltageGraph<T>,
    vg2: &VoltageGraph<T>,
    opts: &DecideOptions,
) -> Result<Verdict<T>> {
    decide_with_trees(Input::new(vg1), Input::new(vg2), opts)
}
