//! Triangulations of `M_T`: the defining conditions, the stacking relation,
//! and exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chirotope::{binomial, four_subsets, sort_with_parity};
use crate::error::{Error, Result};
use crate::matroid::{OrientedMatroid, SignedSet};
use crate::polygon::{Arc, Triangle, Vertex};

/// Largest polygon size accepted by [`enumerate_matroid_triangulations`].
/// Completeness is only expected up to 7; 8 and 9 need a node budget.
pub const MAX_MTRI_ENUMERATE: usize = 9;

/// A 4-subset of `[m]`, sorted. Every such subset is a basis of `M_T`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 4]", into = "[Vertex; 4]")]
pub struct Simplex([Vertex; 4]);

impl Simplex {
    pub fn new(v: [Vertex; 4]) -> Result<Self> {
        if v.contains(&0) {
            return Err(Error::VertexOutOfRange { vertex: 0, m: 0 });
        }
        sort_with_parity(v)
            .map(|(s, _)| Simplex(s))
            .ok_or_else(|| Error::RepeatedVertex(v[0]))
    }

    pub(crate) fn new_unchecked(mut v: [Vertex; 4]) -> Self {
        v.sort_unstable();
        Simplex(v)
    }

    /// The simplex spanned by two crossing arcs.
    pub fn from_arcs(a: Arc, b: Arc) -> Self {
        Self::new_unchecked([a.lo(), a.hi(), b.lo(), b.hi()])
    }

    pub fn vertices(self) -> [Vertex; 4] {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// The four 3-subsets.
    pub fn facets(self) -> [Triangle; 4] {
        let [a, b, c, d] = self.0;
        [[b, c, d], [a, c, d], [a, b, d], [a, b, c]].map(Triangle::new_unchecked)
    }

    pub fn intersection(self, other: Simplex) -> Vec<Vertex> {
        self.0
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect()
    }

    pub fn union(self, other: Simplex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        set.into_iter().collect()
    }
}

impl TryFrom<[Vertex; 4]> for Simplex {
    type Error = Error;

    fn try_from(v: [Vertex; 4]) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for [Vertex; 4] {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{{{a},{b},{c},{d}}}")
    }
}

/// A set of simplices, sorted and without repeats.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatroidTriangulation {
    simplices: Vec<Simplex>,
}

impl MatroidTriangulation {
    /// Collects the simplices; fails on an empty collection. Whether the
    /// collection satisfies the triangulation conditions is a separate check.
    pub fn new(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let set: BTreeSet<Simplex> = simplices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyCollection);
        }
        Ok(Self {
            simplices: set.into_iter().collect(),
        })
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// How a cell facet that is also a facet of `M_T` may be shared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetReading {
    /// A facet of `M_T` lies in exactly one cell; every other cell facet lies in exactly two.
    Strict,
    /// A facet of `M_T` is unconstrained; every other cell facet lies in exactly two.
    Inclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    /// Always true: each `M(σ)` is uniform of rank four on four elements, so
    /// every subset of `σ` is a face of it.
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    /// A cell facet covered the wrong number of times, with its count.
    pub facet_witness: Option<(Triangle, usize)>,
    /// A pair that overlaps on a circuit.
    pub overlap_witness: Option<(Simplex, Simplex)>,
}

impl TriangulationReport {
    pub fn passed(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }
}

/// Whether `σ` and `τ` overlap on the circuit of `σ ∪ τ`, in either signature:
/// `C⁺ ⊆ σ` and `C \ {a} ⊆ τ` for some `a ∈ C⁺`.
pub fn overlap_on_circuit(om: &OrientedMatroid, sigma: Simplex, tau: Simplex) -> bool {
    let union = sigma.union(tau);
    if union.len() != 5 {
        return false;
    }
    let c = om.circuit(&union).expect("5-subset of [m]");
    overlaps(&c, sigma, tau)
}

fn overlaps(c: &SignedSet, sigma: Simplex, tau: Simplex) -> bool {
    let support = c.support();
    [c.clone(), c.negated()].iter().any(|sig| {
        sig.positive.iter().all(|&v| sigma.contains(v))
            && sig
                .positive
                .iter()
                .any(|&a| support.iter().all(|&v| v == a || tau.contains(v)))
    })
}

fn facet_counts(delta: &[Simplex]) -> BTreeMap<Triangle, usize> {
    let mut counts = BTreeMap::new();
    for s in delta {
        for f in s.facets() {
            *counts.entry(f).or_insert(0) += 1;
        }
    }
    counts
}

/// Checks the three triangulation conditions for `delta`, reading facet
/// sharing strictly.
pub fn check_triangulation(om: &OrientedMatroid, delta: &[Simplex]) -> Result<TriangulationReport> {
    check_triangulation_with(om, delta, FacetReading::Strict)
}

pub fn check_triangulation_with(
    om: &OrientedMatroid,
    delta: &[Simplex],
    reading: FacetReading,
) -> Result<TriangulationReport> {
    if delta.is_empty() {
        return Err(Error::EmptyCollection);
    }
    for s in delta {
        for v in s.vertices() {
            crate::polygon::check_vertex(v, om.m())?;
        }
    }
    let facet_witness = facet_counts(delta).into_iter().find(|&(f, n)| {
        if om.is_facet(f) {
            reading == FacetReading::Strict && n != 1
        } else {
            n != 2
        }
    });
    let mut overlap_witness = None;
    'outer: for &s in delta {
        for &t in delta {
            if s != t && overlap_on_circuit(om, s, t) {
                overlap_witness = Some((s, t));
                break 'outer;
            }
        }
    }
    Ok(TriangulationReport {
        cond1: true,
        cond2: facet_witness.is_none(),
        cond3: overlap_witness.is_none(),
        facet_witness,
        overlap_witness,
    })
}

/// Cover edges `σ → τ`: `σ ∩ τ` is an upper facet of `σ` and a lower facet of `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackingRelation {
    pub edges: Vec<(Simplex, Simplex)>,
}

pub fn stacking_relation(om: &OrientedMatroid, delta: &[Simplex]) -> StackingRelation {
    let mut edges = Vec::new();
    for &s in delta {
        let up = om.simplex_facets(s).upper;
        for &t in delta {
            if s == t {
                continue;
            }
            let shared = s.intersection(t);
            if shared.len() != 3 {
                continue;
            }
            let f = Triangle::new_unchecked([shared[0], shared[1], shared[2]]);
            if up.contains(&f) && om.simplex_facets(t).lower.contains(&f) {
                edges.push((s, t));
            }
        }
    }
    edges.sort_unstable();
    StackingRelation { edges }
}

/// Pairs sharing three vertices whose common triangle is not upper in exactly
/// one of them and lower in the other.
pub fn dichotomy_violations(om: &OrientedMatroid, delta: &[Simplex]) -> Vec<(Simplex, Simplex)> {
    let mut out = Vec::new();
    for (i, &s) in delta.iter().enumerate() {
        for &t in &delta[i + 1..] {
            let shared = s.intersection(t);
            if shared.len() != 3 {
                continue;
            }
            let f = Triangle::new_unchecked([shared[0], shared[1], shared[2]]);
            let (fs, ft) = (om.simplex_facets(s), om.simplex_facets(t));
            let s_up = fs.upper.contains(&f);
            let t_up = ft.upper.contains(&f);
            if s_up == t_up {
                out.push((s, t));
            }
        }
    }
    out
}

/// Which minimal element to take next when building a linear extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionOrder {
    Smallest,
    Largest,
}

/// A total order of `delta` extending the stacking relation, or
/// [`Error::NotStackable`] if the relation has a cycle.
pub fn linear_extension(
    om: &OrientedMatroid,
    delta: &[Simplex],
    order: ExtensionOrder,
) -> Result<Vec<Simplex>> {
    let rel = stacking_relation(om, delta);
    let mut indegree: BTreeMap<Simplex, usize> = delta.iter().map(|&s| (s, 0)).collect();
    let mut succ: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
    for &(s, t) in &rel.edges {
        *indegree.get_mut(&t).expect("member") += 1;
        succ.entry(s).or_default().push(t);
    }
    let mut ready: BTreeSet<Simplex> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&s, _)| s)
        .collect();
    let mut out = Vec::with_capacity(delta.len());
    while let Some(s) = match order {
        ExtensionOrder::Smallest => ready.pop_first(),
        ExtensionOrder::Largest => ready.pop_last(),
    } {
        out.push(s);
        for &t in succ.get(&s).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indegree.get_mut(&t).expect("member");
            *d -= 1;
            if *d == 0 {
                ready.insert(t);
            }
        }
    }
    if out.len() == indegree.len() {
        Ok(out)
    } else {
        Err(Error::NotStackable)
    }
}

/// Whether the reflexive-transitive closure of the cover edges is a partial
/// order, i.e. the edge digraph is acyclic.
pub fn is_stackable(om: &OrientedMatroid, delta: &[Simplex]) -> bool {
    linear_extension(om, delta, ExtensionOrder::Smallest).is_ok()
}

/// One enumerated triangulation in the line-oriented JSON format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtriRecord {
    pub m: usize,
    #[serde(rename = "T")]
    pub t: Vec<Arc>,
    pub simplices: Vec<Simplex>,
    pub stackable: bool,
}

impl MtriRecord {
    pub fn new(om: &OrientedMatroid, delta: &MatroidTriangulation) -> Self {
        Self {
            m: om.m(),
            t: om.triangulation().arcs().to_vec(),
            simplices: delta.simplices().to_vec(),
            stackable: is_stackable(om, delta.simplices()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of search nodes across all branches.
    pub max_nodes: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct MtriEnumeration {
    /// Sorted and free of repeats.
    pub triangulations: Vec<MatroidTriangulation>,
    pub status: SearchStatus,
    pub nodes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

/// Static data for the search: simplices in search order, their facets, and
/// pairwise overlap conflicts.
struct SearchSpace<'a> {
    om: &'a OrientedMatroid,
    simplices: Vec<Simplex>,
    facet_ids: Vec<[usize; 4]>,
    containing: Vec<Vec<usize>>,
    boundary: Vec<bool>,
    conflicts: Vec<Vec<usize>>,
}

fn triple_rank(t: Triangle) -> usize {
    let [a, b, c] = t.vertices();
    binomial(a as usize - 1, 1) + binomial(b as usize - 1, 2) + binomial(c as usize - 1, 3)
}

impl<'a> SearchSpace<'a> {
    fn new(om: &'a OrientedMatroid, simplices: Vec<Simplex>) -> Self {
        let m = om.m();
        let n_triples = binomial(m, 3);
        let mut boundary = vec![false; n_triples];
        for f in om.facets().upper.into_iter().chain(om.facets().lower) {
            boundary[triple_rank(f)] = true;
        }
        let facet_ids: Vec<[usize; 4]> = simplices
            .iter()
            .map(|s| s.facets().map(triple_rank))
            .collect();
        let mut containing = vec![Vec::new(); n_triples];
        for (i, ids) in facet_ids.iter().enumerate() {
            for &f in ids {
                containing[f].push(i);
            }
        }
        let mut circuits = BTreeMap::new();
        let mut conflicts = vec![Vec::new(); simplices.len()];
        for i in 0..simplices.len() {
            for j in i + 1..simplices.len() {
                let (s, t) = (simplices[i], simplices[j]);
                let union = s.union(t);
                if union.len() != 5 {
                    continue;
                }
                let c = circuits
                    .entry(union.clone())
                    .or_insert_with(|| om.circuit(&union).expect("5-subset"));
                if overlaps(c, s, t) || overlaps(c, t, s) {
                    conflicts[i].push(j);
                    conflicts[j].push(i);
                }
            }
        }
        Self {
            om,
            simplices,
            facet_ids,
            containing,
            boundary,
            conflicts,
        }
    }
}

struct SearchState {
    decision: Vec<Decision>,
    count: Vec<u8>,
    blocked: Vec<u16>,
    chosen: Vec<usize>,
}

struct Shared<'a> {
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
    max_nodes: Option<u64>,
}

impl<'a> SearchSpace<'a> {
    fn fresh_state(&self) -> SearchState {
        SearchState {
            decision: vec![Decision::Open; self.simplices.len()],
            count: vec![0; self.boundary.len()],
            blocked: vec![0; self.simplices.len()],
            chosen: Vec::new(),
        }
    }

    fn viable(&self, st: &SearchState, s: usize) -> bool {
        st.decision[s] == Decision::Open
            && st.blocked[s] == 0
            && self.facet_ids[s].iter().all(|&f| {
                if self.boundary[f] {
                    st.count[f] == 0
                } else {
                    st.count[f] <= 1
                }
            })
    }

    fn include(&self, st: &mut SearchState, s: usize) {
        st.decision[s] = Decision::In;
        for &f in &self.facet_ids[s] {
            st.count[f] += 1;
        }
        for &j in &self.conflicts[s] {
            st.blocked[j] += 1;
        }
        st.chosen.push(s);
    }

    fn remove(&self, st: &mut SearchState, s: usize) {
        st.decision[s] = Decision::Open;
        for &f in &self.facet_ids[s] {
            st.count[f] -= 1;
        }
        for &j in &self.conflicts[s] {
            st.blocked[j] -= 1;
        }
        st.chosen.pop();
    }

    /// The interior facet covered once with the fewest viable candidates, and
    /// those candidates. `None` when no interior facet is covered once.
    fn most_constrained_open_facet(&self, st: &SearchState) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for &s in &st.chosen {
            for &f in &self.facet_ids[s] {
                if self.boundary[f] || st.count[f] != 1 {
                    continue;
                }
                let cands: Vec<usize> = self.containing[f]
                    .iter()
                    .copied()
                    .filter(|&c| self.viable(st, c))
                    .collect();
                if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                    let done = cands.is_empty();
                    best = Some(cands);
                    if done {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn tick(&self, shared: &Shared) -> bool {
        let n = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if shared.max_nodes.is_some_and(|max| n > max) {
            shared.exhausted.store(true, Ordering::Relaxed);
        }
        !shared.exhausted.load(Ordering::Relaxed)
    }

    fn emit(&self, st: &SearchState, out: &mut Vec<MatroidTriangulation>) {
        let delta = MatroidTriangulation::new(st.chosen.iter().map(|&i| self.simplices[i]))
            .expect("non-empty");
        let report = check_triangulation(self.om, delta.simplices()).expect("valid simplices");
        if report.passed() {
            out.push(delta);
        }
    }

    /// Each call partitions the completions of `st`: either an open interior
    /// facet forces a choice among its candidates, or the current set is closed
    /// and is emitted before branching on which further simplex starts a new
    /// component.
    fn dfs(&self, st: &mut SearchState, shared: &Shared, out: &mut Vec<MatroidTriangulation>) {
        if !self.tick(shared) {
            return;
        }
        let branches = match self.most_constrained_open_facet(st) {
            Some(cands) => cands,
            None => {
                if !st.chosen.is_empty() {
                    self.emit(st, out);
                }
                (0..self.simplices.len())
                    .filter(|&s| self.viable(st, s))
                    .collect()
            }
        };
        self.branch(st, &branches, shared, out);
    }

    fn branch(
        &self,
        st: &mut SearchState,
        branches: &[usize],
        shared: &Shared,
        out: &mut Vec<MatroidTriangulation>,
    ) {
        let mut excluded = Vec::new();
        for &s in branches {
            if !self.viable(st, s) {
                continue;
            }
            self.include(st, s);
            self.dfs(st, shared, out);
            self.remove(st, s);
            st.decision[s] = Decision::Out;
            excluded.push(s);
        }
        for s in excluded {
            st.decision[s] = Decision::Open;
        }
    }
}

/// Every triangulation of `M_T`, searching simplices in lexicographic order.
pub fn enumerate_matroid_triangulations(
    om: &OrientedMatroid,
    limits: SearchLimits,
) -> Result<MtriEnumeration> {
    let order: Vec<Simplex> = four_subsets(om.m()).into_iter().map(Simplex).collect();
    enumerate_with_order(om, &order, limits)
}

/// As [`enumerate_matroid_triangulations`] with a caller-chosen simplex
/// order, which must list every 4-subset of `[m]` once. The result set does
/// not depend on the order.
pub fn enumerate_with_order(
    om: &OrientedMatroid,
    order: &[Simplex],
    limits: SearchLimits,
) -> Result<MtriEnumeration> {
    crate::polygon::check_polygon_size(
        om.m(),
        "matroid triangulation enumeration",
        MAX_MTRI_ENUMERATE,
    )?;
    let expected: BTreeSet<Simplex> = four_subsets(om.m()).into_iter().map(Simplex).collect();
    let given: BTreeSet<Simplex> = order.iter().copied().collect();
    if given != expected || order.len() != expected.len() {
        return Err(Error::InvalidMatroidTriangulation(
            "search order must list every 4-subset exactly once".into(),
        ));
    }
    let space = SearchSpace::new(om, order.to_vec());
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let shared = Shared {
        nodes: &nodes,
        exhausted: &exhausted,
        max_nodes: limits.max_nodes,
    };
    // The root is closed and empty: branch on the first simplex, in parallel.
    let found: Vec<Vec<MatroidTriangulation>> = (0..order.len())
        .into_par_iter()
        .map(|first| {
            let mut st = space.fresh_state();
            for s in 0..first {
                st.decision[s] = Decision::Out;
            }
            let mut out = Vec::new();
            space.include(&mut st, first);
            space.dfs(&mut st, &shared, &mut out);
            out
        })
        .collect();
    let mut triangulations: Vec<MatroidTriangulation> = found.into_iter().flatten().collect();
    triangulations.sort_unstable();
    triangulations.dedup();
    Ok(MtriEnumeration {
        triangulations,
        status: if exhausted.load(Ordering::Relaxed) {
            SearchStatus::BudgetExhausted
        } else {
            SearchStatus::Complete
        },
        nodes: nodes.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{enumerate_triangulations, Triangulation};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn om(m: usize, s: &str) -> OrientedMatroid {
        OrientedMatroid::new(&Triangulation::parse(m, s).unwrap())
    }

    fn sx(v: [Vertex; 4]) -> Simplex {
        Simplex::new(v).unwrap()
    }

    /// Every subset of simplices that passes the full check.
    fn brute_force(om: &OrientedMatroid, reading: FacetReading) -> Vec<MatroidTriangulation> {
        let all: Vec<Simplex> = four_subsets(om.m()).into_iter().map(Simplex).collect();
        let mut out = Vec::new();
        for mask in 1u64..(1 << all.len()) {
            let delta: Vec<Simplex> = (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            if check_triangulation_with(om, &delta, reading)
                .unwrap()
                .passed()
            {
                out.push(MatroidTriangulation::new(delta).unwrap());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn overlap_examples() {
        let fan = om(6, "2-6,3-6,4-6");
        let s = sx([1, 2, 3, 4]);
        assert!(!overlap_on_circuit(&fan, s, s));
        assert!(!overlap_on_circuit(
            &fan,
            sx([1, 2, 3, 4]),
            sx([1, 2, 5, 6])
        ));
        // Circuit on 12345 is ({1,3,5},{2,4}). With C⁺ = {1,3,5}: C⁺ ⊆ 1235 and
        // C \ 3 ⊆ 1245. With C⁺ = {2,4}: C⁺ ⊆ 1245 and C \ 4 ⊆ 1235.
        assert!(overlap_on_circuit(&fan, sx([1, 2, 3, 5]), sx([1, 2, 4, 5])));
        assert!(overlap_on_circuit(&fan, sx([1, 2, 4, 5]), sx([1, 2, 3, 5])));
        // Same union, but 1234 misses 5 from C⁺ = {1,3,5} and τ = 2345 misses 1.
        assert!(!overlap_on_circuit(
            &fan,
            sx([1, 2, 3, 4]),
            sx([2, 3, 4, 5])
        ));
    }

    #[test]
    fn check_examples() {
        let sq = om(4, "2-4");
        assert!(check_triangulation(&sq, &[sx([1, 2, 3, 4])])
            .unwrap()
            .passed());

        let pent = om(5, "2-5,3-5");
        assert!(
            check_triangulation(&pent, &[sx([1, 3, 4, 5]), sx([1, 2, 3, 5])])
                .unwrap()
                .passed()
        );
        let bad = check_triangulation(&pent, &[sx([1, 2, 3, 4]), sx([1, 3, 4, 5])]).unwrap();
        assert!(!bad.cond3);
        assert!(bad.overlap_witness.is_some());
        assert!(matches!(
            check_triangulation(&pent, &[]),
            Err(Error::EmptyCollection)
        ));
    }

    #[test]
    fn stacking_examples() {
        let sq = om(4, "2-4");
        assert!(stacking_relation(&sq, &[sx([1, 2, 3, 4])]).edges.is_empty());
        assert!(is_stackable(&sq, &[sx([1, 2, 3, 4])]));

        let pent = om(5, "2-5,3-5");
        let delta = [sx([1, 2, 3, 4]), sx([1, 2, 4, 5]), sx([2, 3, 4, 5])];
        assert!(check_triangulation(&pent, &delta).unwrap().passed());
        let rel = stacking_relation(&pent, &delta);
        // Every pair shares a triangle, so the cover edges form a transitive tournament.
        assert_eq!(rel.edges.len(), 3);
        let order = linear_extension(&pent, &delta, ExtensionOrder::Smallest).unwrap();
        let pos = |s: Simplex| order.iter().position(|&x| x == s).unwrap();
        for (s, t) in &rel.edges {
            assert!(pos(*s) < pos(*t));
        }
        assert!(is_stackable(&pent, &delta));
    }

    #[test]
    fn small_enumeration_counts() {
        let sq = enumerate_matroid_triangulations(&om(4, "2-4"), SearchLimits::default()).unwrap();
        assert_eq!(sq.status, SearchStatus::Complete);
        assert_eq!(
            sq.triangulations,
            vec![MatroidTriangulation::new([sx([1, 2, 3, 4])]).unwrap()]
        );

        let pent =
            enumerate_matroid_triangulations(&om(5, "2-5,3-5"), SearchLimits::default()).unwrap();
        let sizes: Vec<usize> = pent
            .triangulations
            .iter()
            .map(MatroidTriangulation::len)
            .collect();
        assert_eq!(pent.triangulations.len(), 2);
        assert_eq!(BTreeSet::from_iter(sizes), BTreeSet::from([2, 3]));
    }

    #[test]
    fn search_matches_brute_force() {
        for m in 4..=6 {
            for t in enumerate_triangulations(m).unwrap() {
                let o = OrientedMatroid::new(&t);
                let found = enumerate_matroid_triangulations(&o, SearchLimits::default()).unwrap();
                assert_eq!(
                    found.triangulations,
                    brute_force(&o, FacetReading::Strict),
                    "{t}"
                );
            }
        }
    }

    #[test]
    fn inclusive_facet_reading_changes_nothing() {
        for m in 4..=6 {
            for t in enumerate_triangulations(m).unwrap() {
                let o = OrientedMatroid::new(&t);
                assert_eq!(
                    brute_force(&o, FacetReading::Inclusive),
                    brute_force(&o, FacetReading::Strict),
                    "{t}"
                );
            }
        }
    }

    #[test]
    fn order_independence() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for t in enumerate_triangulations(6)
            .unwrap()
            .into_iter()
            .chain(enumerate_triangulations(7).unwrap().into_iter().step_by(7))
        {
            let o = OrientedMatroid::new(&t);
            let base = enumerate_matroid_triangulations(&o, SearchLimits::default()).unwrap();
            let mut order: Vec<Simplex> = four_subsets(t.m()).into_iter().map(Simplex).collect();
            order.reverse();
            let rev = enumerate_with_order(&o, &order, SearchLimits::default()).unwrap();
            order.shuffle(&mut rng);
            let shuf = enumerate_with_order(&o, &order, SearchLimits::default()).unwrap();
            assert_eq!(base.triangulations, rev.triangulations);
            assert_eq!(base.triangulations, shuf.triangulations);
        }
    }

    #[test]
    fn budget_is_reported() {
        let o = OrientedMatroid::new(&Triangulation::fan(7, 7).unwrap());
        let r = enumerate_matroid_triangulations(
            &o,
            SearchLimits {
                max_nodes: Some(10),
            },
        )
        .unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExhausted);
        let bad_order = vec![sx([1, 2, 3, 4])];
        assert!(enumerate_with_order(&o, &bad_order, SearchLimits::default()).is_err());
    }

    #[test]
    fn enumerated_triangulations_are_consistent() {
        for m in 4..=7 {
            for t in enumerate_triangulations(m).unwrap() {
                let o = OrientedMatroid::new(&t);
                for d in enumerate_matroid_triangulations(&o, SearchLimits::default())
                    .unwrap()
                    .triangulations
                {
                    assert!(check_triangulation(&o, d.simplices()).unwrap().passed());
                    assert!(dichotomy_violations(&o, d.simplices()).is_empty());
                }
            }
        }
    }

    #[test]
    fn record_json_shape() {
        let o = om(4, "2-4");
        let d = MatroidTriangulation::new([sx([1, 2, 3, 4])]).unwrap();
        let rec = MtriRecord::new(&o, &d);
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"m":4,"T":[[2,4]],"simplices":[[1,2,3,4]],"stackable":true}"#
        );
    }
}
