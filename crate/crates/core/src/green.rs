//! Arcs as objects of the type-A cluster category: the Hom and Ext
//! criteria, green mutations, maximal green sequences, and the bijection
//! with stackable triangulations of `M_T`.
//!
//! The cluster-tilting object for `M_T` is the triangulation `T + 1`; a
//! maximal green sequence is a chain of green flips from `T + 1` to `T`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chirotope::{binomial, Sign};
use crate::error::{Error, Result};
use crate::matroid::OrientedMatroid;
use crate::mtri::{
    check_triangulation, enumerate_matroid_triangulations, is_stackable, linear_extension,
    ExtensionOrder, MatroidTriangulation, SearchLimits, SearchStatus, Simplex,
};
use crate::polygon::{
    check_polygon_size, is_cyclic_unchecked, is_triangulation, shift, Arc, Triangulation, Vertex,
};

/// Largest polygon size accepted by [`enumerate_mgs`].
pub const MAX_MGS: usize = 8;

/// Largest polygon size accepted by [`verify_bijection`].
pub const MAX_BIJECTION: usize = 7;

/// One mutation: `removed` leaves the cluster, `added` enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExchangePair {
    pub removed: Arc,
    pub added: Arc,
}

impl ExchangePair {
    /// The simplex spanned by the two arcs.
    pub fn simplex(self) -> Simplex {
        Simplex::from_arcs(self.removed, self.added)
    }
}

impl std::fmt::Display for ExchangePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}", self.removed, self.added)
    }
}

/// Whether `Hom(O_B, O_C)` is nonzero: some labelling has
/// `b1 - 1 ≺ c1 ≺ b2 - 1 ≺ c2`.
pub fn hom_nonzero(b: Arc, c: Arc, m: usize) -> bool {
    let [b1, b2] = b.endpoints();
    let [c1, c2] = c.endpoints();
    [(b1, b2), (b2, b1)].iter().any(|&(x1, x2)| {
        [(c1, c2), (c2, c1)].iter().any(|&(y1, y2)| {
            let seq = [shift(x1, -1, m), y1, shift(x2, -1, m), y2];
            distinct(&seq) && is_cyclic_unchecked(&seq, m)
        })
    })
}

fn distinct(seq: &[Vertex]) -> bool {
    seq.iter().enumerate().all(|(i, v)| !seq[..i].contains(v))
}

/// Whether the arcs form a cluster-tilting object, i.e. a triangulation.
pub fn is_cluster_tilting(arcs: &[Arc], m: usize) -> bool {
    is_triangulation(arcs, m)
}

/// The same predicate read through the Hom criterion: `m - 3` distinct
/// diagonals with `Hom(O_A, Σ O_B) = 0` for every pair, `Σ` subtracting one.
pub fn is_cluster_tilting_by_hom(arcs: &[Arc], m: usize) -> bool {
    let set: BTreeSet<Arc> = arcs.iter().copied().collect();
    m >= 3
        && set.len() == m - 3
        && set.len() == arcs.len()
        && arcs
            .iter()
            .all(|a| a.is_diagonal(m) && a.hi() as usize <= m)
        && arcs
            .iter()
            .all(|&a| arcs.iter().all(|&b| !hom_nonzero(a, b.shifted(-1, m), m)))
}

/// Labels two crossing arcs as `A = {a, c}`, `B = {b, d}` with
/// `a ≺ b ≺ c ≺ d`.
fn interleave(a: Arc, b: Arc) -> Result<[Vertex; 4]> {
    if !a.crosses(b) {
        return Err(Error::ArcsDoNotCross(a.to_string(), b.to_string()));
    }
    let (x, z) = (a.lo(), a.hi());
    let (y, w) = if x < b.lo() && b.lo() < z {
        (b.lo(), b.hi())
    } else {
        (b.hi(), b.lo())
    };
    Ok([x, y, z, w])
}

/// Whether `Ext¹(O_B, O_A)` is nonzero in the structure given by `T`: for
/// crossing `A = {a, c}`, `B = {b, d}` with `a ≺ b ≺ c ≺ d`, this is
/// `χ_T(a, b, c, d) = +1`.
pub fn ext_nonzero(om: &OrientedMatroid, a: Arc, b: Arc) -> Result<bool> {
    let tuple = interleave(a, b)?;
    Ok(om.chirotope().get(tuple)? == Sign::Pos)
}

/// The green flips available from `current`.
pub fn green_moves(om: &OrientedMatroid, current: &Triangulation) -> Vec<ExchangePair> {
    let chi = om.chirotope();
    current
        .flippable_quadrilaterals()
        .into_iter()
        .filter_map(|(q, e)| {
            let [a, b, c, d] = q;
            let (ac, bd) = (Arc::new_unchecked(a, c), Arc::new_unchecked(b, d));
            match chi.get_ascending(q) {
                Sign::Pos if e == ac => Some(ExchangePair {
                    removed: ac,
                    added: bd,
                }),
                Sign::Neg if e == bd => Some(ExchangePair {
                    removed: bd,
                    added: ac,
                }),
                _ => None,
            }
        })
        .collect()
}

/// A maximal green sequence: `states[0] = T + 1`, `states[l] = T`, and
/// `pairs[i]` is the flip from `states[i]` to `states[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenSequence {
    pub t: Triangulation,
    pub states: Vec<Triangulation>,
    pub pairs: Vec<ExchangePair>,
}

#[derive(Serialize, Deserialize)]
struct GreenSequenceRepr {
    #[serde(rename = "T")]
    t: Vec<Arc>,
    m: usize,
    pairs: Vec<ExchangePair>,
}

impl Serialize for GreenSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GreenSequenceRepr {
            t: self.t.arcs().to_vec(),
            m: self.t.m(),
            pairs: self.pairs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GreenSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GreenSequenceRepr::deserialize(d)?;
        let t = Triangulation::new(repr.m, repr.t).map_err(D::Error::custom)?;
        GreenSequence::replay(&t, &repr.pairs).map_err(D::Error::custom)
    }
}

impl GreenSequence {
    /// Rebuilds the states of a sequence from its pairs, checking each flip
    /// is green and that the last state is `T`.
    pub fn replay(t: &Triangulation, pairs: &[ExchangePair]) -> Result<Self> {
        let om = OrientedMatroid::new(t);
        let mut states = vec![t.rotate(1)];
        for p in pairs {
            let cur = states.last().expect("non-empty");
            if !green_moves(&om, cur).contains(p) {
                return Err(Error::ReplayFailed(format!(
                    "{p} is not a green flip of {cur}"
                )));
            }
            states.push(cur.exchange_unchecked(p.removed, p.added));
        }
        if states.last() != Some(t) {
            return Err(Error::ReplayFailed(format!(
                "sequence ends at {}, not {t}",
                states.last().expect("non-empty")
            )));
        }
        Ok(Self {
            t: t.clone(),
            states,
            pairs: pairs.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The exchange pairs as a sorted set.
    pub fn exch(&self) -> Vec<ExchangePair> {
        let mut e = self.pairs.clone();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// One simplex per mutation, in mutation order.
    pub fn simplices(&self) -> Vec<Simplex> {
        self.pairs.iter().map(|p| p.simplex()).collect()
    }
}

/// Sequences grouped by their set of exchange pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EquivalenceClass {
    /// Sorted.
    pub exch: Vec<ExchangePair>,
    /// How many enumerated sequences share this set; zero when the class was
    /// built from a triangulation rather than by enumeration.
    pub sequences: usize,
}

impl EquivalenceClass {
    pub fn len(&self) -> usize {
        self.exch.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exch.is_empty()
    }

    pub fn delta(&self) -> MatroidTriangulation {
        MatroidTriangulation::new(self.exch.iter().map(|p| p.simplex()))
            .expect("classes are non-empty")
    }
}

impl Serialize for EquivalenceClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EquivalenceClass", 3)?;
        st.serialize_field("exch", &self.exch)?;
        st.serialize_field("delta", &self.delta())?;
        st.serialize_field("length", &self.len())?;
        st.end()
    }
}

/// All maximal green sequences of `T` together with search statistics.
#[derive(Clone, Debug)]
pub struct MgsEnumeration {
    /// In depth-first order.
    pub sequences: Vec<GreenSequence>,
    /// States other than `T` with no green flip; expected to be empty.
    pub dead_ends: Vec<Triangulation>,
    /// Number of distinct triangulations visited.
    pub distinct_states: usize,
}

struct Walk<'a> {
    om: &'a OrientedMatroid,
    target: &'a Triangulation,
    max_depth: usize,
}

#[derive(Default)]
struct WalkOut {
    sequences: Vec<GreenSequence>,
    dead_ends: BTreeSet<Triangulation>,
    seen: BTreeSet<Triangulation>,
}

impl Walk<'_> {
    fn dfs(
        &self,
        states: &mut Vec<Triangulation>,
        pairs: &mut Vec<ExchangePair>,
        out: &mut WalkOut,
    ) -> Result<()> {
        let cur = states.last().expect("non-empty").clone();
        out.seen.insert(cur.clone());
        if &cur == self.target {
            out.sequences.push(GreenSequence {
                t: self.target.clone(),
                states: states.clone(),
                pairs: pairs.clone(),
            });
            return Ok(());
        }
        if pairs.len() >= self.max_depth {
            return Err(Error::DepthExceeded(self.max_depth));
        }
        let moves = green_moves(self.om, &cur);
        if moves.is_empty() {
            out.dead_ends.insert(cur);
            return Ok(());
        }
        for p in moves {
            states.push(cur.exchange_unchecked(p.removed, p.added));
            pairs.push(p);
            self.dfs(states, pairs, out)?;
            states.pop();
            pairs.pop();
        }
        Ok(())
    }
}

/// Every maximal green sequence of `T`, by depth-first search from `T + 1`.
pub fn enumerate_mgs(om: &OrientedMatroid) -> Result<MgsEnumeration> {
    let m = om.m();
    check_polygon_size(m, "maximal green sequence enumeration", MAX_MGS)?;
    let target = om.triangulation();
    let walk = Walk {
        om,
        target,
        max_depth: binomial(m, 4),
    };
    let start = target.rotate(1);
    let first_moves = if &start == target {
        Vec::new()
    } else {
        green_moves(om, &start)
    };
    let branches: Vec<Result<WalkOut>> = first_moves
        .par_iter()
        .map(|&p| {
            let mut out = WalkOut::default();
            let mut states = vec![start.clone(), start.exchange_unchecked(p.removed, p.added)];
            let mut pairs = vec![p];
            walk.dfs(&mut states, &mut pairs, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = WalkOut::default();
    all.seen.insert(start.clone());
    if first_moves.is_empty() && &start != target {
        all.dead_ends.insert(start);
    }
    for b in branches {
        let b = b?;
        all.sequences.extend(b.sequences);
        all.dead_ends.extend(b.dead_ends);
        all.seen.extend(b.seen);
    }
    Ok(MgsEnumeration {
        sequences: all.sequences,
        dead_ends: all.dead_ends.into_iter().collect(),
        distinct_states: all.seen.len(),
    })
}

/// Groups sequences by exchange-pair set, sorted by that set.
pub fn classes_of(sequences: &[GreenSequence]) -> Vec<EquivalenceClass> {
    let mut by_exch: BTreeMap<Vec<ExchangePair>, usize> = BTreeMap::new();
    for g in sequences {
        *by_exch.entry(g.exch()).or_insert(0) += 1;
    }
    by_exch
        .into_iter()
        .map(|(exch, sequences)| EquivalenceClass { exch, sequences })
        .collect()
}

/// The equivalence classes of maximal green sequences of `T`.
pub fn enumerate_classes(om: &OrientedMatroid) -> Result<Vec<EquivalenceClass>> {
    Ok(classes_of(&enumerate_mgs(om)?.sequences))
}

/// The triangulation of `M_T` built from a sequence: one simplex per
/// exchange pair.
pub fn delta_from_mgs(g: &GreenSequence) -> MatroidTriangulation {
    MatroidTriangulation::new(g.simplices()).expect("sequences have at least one mutation")
}

/// The sequence obtained by flipping through the simplices of a stackable
/// `delta` in the given linear-extension order, starting from `T + 1`.
pub fn mgs_from_stackable(
    om: &OrientedMatroid,
    delta: &[Simplex],
    order: ExtensionOrder,
) -> Result<GreenSequence> {
    let ordered = linear_extension(om, delta, order)?;
    let t = om.triangulation();
    let mut states = vec![t.rotate(1)];
    let mut pairs = Vec::with_capacity(ordered.len());
    for sigma in ordered {
        let f = om.simplex_facets(sigma);
        let (lower, upper) = (f.lower_diagonal(), f.upper_diagonal());
        let cur = states.last().expect("non-empty");
        let [a, b, c, d] = sigma.vertices();
        let sides = [(a, b), (b, c), (c, d), (a, d)];
        if !cur.contains(lower) || !sides.iter().all(|&(p, q)| cur.has_edge(p, q)) {
            return Err(Error::ReplayFailed(format!(
                "lower facets of {sigma} are not in {cur}"
            )));
        }
        let pair = ExchangePair {
            removed: lower,
            added: upper,
        };
        debug_assert!(ext_nonzero(om, lower, upper).unwrap_or(false));
        states.push(cur.exchange_unchecked(lower, upper));
        pairs.push(pair);
    }
    if states.last() != Some(t) {
        return Err(Error::ReplayFailed(format!(
            "replay ends at {}, not {t}",
            states.last().expect("non-empty")
        )));
    }
    Ok(GreenSequence {
        t: t.clone(),
        states,
        pairs,
    })
}

/// The class of a stackable triangulation, read directly off its simplices:
/// each contributes (lower diagonal, upper diagonal).
pub fn class_of_stackable(om: &OrientedMatroid, delta: &[Simplex]) -> Result<EquivalenceClass> {
    let g = mgs_from_stackable(om, delta, ExtensionOrder::Smallest)?;
    Ok(EquivalenceClass {
        exch: g.exch(),
        sequences: 0,
    })
}

/// Both sides of the correspondence for one `T`, and whether they match.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub m: usize,
    #[serde(rename = "T")]
    pub t: Vec<Arc>,
    pub classes: usize,
    pub triangulations: usize,
    pub stackable: usize,
    /// Triangulations of `M_T` whose stacking relation has a cycle.
    pub non_stackable: Vec<MatroidTriangulation>,
    pub dead_ends: usize,
    pub matched: bool,
    pub mismatches: Vec<String>,
}

/// Computes every class and every triangulation of `M_T` and checks that
/// `delta_from_mgs` and `mgs_from_stackable` are inverse bijections.
pub fn verify_bijection(t: &Triangulation) -> Result<BijectionReport> {
    check_polygon_size(t.m(), "bijection check", MAX_BIJECTION)?;
    let om = OrientedMatroid::new(t);
    let mgs = enumerate_mgs(&om)?;
    let classes = classes_of(&mgs.sequences);
    let found = enumerate_matroid_triangulations(&om, SearchLimits::default())?;
    debug_assert_eq!(found.status, SearchStatus::Complete);

    let mut mismatches = Vec::new();
    let (stackable, non_stackable): (Vec<_>, Vec<_>) = found
        .triangulations
        .into_iter()
        .partition(|d| is_stackable(&om, d.simplices()));
    let triangulations = stackable.len() + non_stackable.len();

    // Forward map: class -> Δ. Every image must be a stackable triangulation
    // and distinct classes must have distinct images.
    let mut images: BTreeMap<MatroidTriangulation, &EquivalenceClass> = BTreeMap::new();
    for c in &classes {
        let d = c.delta();
        if d.len() != c.len() {
            mismatches.push(format!(
                "class of length {} has only {} simplices",
                c.len(),
                d.len()
            ));
        }
        if !check_triangulation(&om, d.simplices())?.passed() {
            mismatches.push(format!(
                "image of a class is not a triangulation: {:?}",
                d.simplices()
            ));
        }
        if !is_stackable(&om, d.simplices()) {
            mismatches.push(format!(
                "image of a class is not stackable: {:?}",
                d.simplices()
            ));
        }
        if images.insert(d.clone(), c).is_some() {
            mismatches.push(format!("two classes share the image {:?}", d.simplices()));
        }
    }
    let stackable_set: BTreeSet<&MatroidTriangulation> = stackable.iter().collect();
    let image_set: BTreeSet<&MatroidTriangulation> = images.keys().collect();
    if stackable_set != image_set {
        mismatches.push(format!(
            "{} stackable triangulations, {} class images, {} in common",
            stackable_set.len(),
            image_set.len(),
            stackable_set.intersection(&image_set).count()
        ));
    }

    // Inverse map: Δ -> class, under two linear extensions.
    for d in &stackable {
        for order in [ExtensionOrder::Smallest, ExtensionOrder::Largest] {
            match mgs_from_stackable(&om, d.simplices(), order) {
                Ok(g) => {
                    if delta_from_mgs(&g) != *d {
                        mismatches
                            .push(format!("replay of {:?} does not return it", d.simplices()));
                    }
                    if let Some(c) = images.get(d) {
                        if c.exch != g.exch() {
                            mismatches
                                .push(format!("exchange pairs differ for {:?}", d.simplices()));
                        }
                    }
                }
                Err(e) => mismatches.push(format!("{e}")),
            }
        }
    }
    if !mgs.dead_ends.is_empty() {
        mismatches.push(format!("{} dead-end states", mgs.dead_ends.len()));
    }

    Ok(BijectionReport {
        m: t.m(),
        t: t.arcs().to_vec(),
        classes: classes.len(),
        triangulations,
        stackable: stackable.len(),
        non_stackable,
        dead_ends: mgs.dead_ends.len(),
        matched: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::subsets;
    use crate::mtri::stacking_relation;
    use crate::polygon::{cyclically_ordered, enumerate_triangulations};

    fn arc(p: Vertex, q: Vertex) -> Arc {
        Arc::new(p, q).unwrap()
    }

    fn tri(m: usize, s: &str) -> Triangulation {
        Triangulation::parse(m, s).unwrap()
    }

    fn pair(r: (Vertex, Vertex), a: (Vertex, Vertex)) -> ExchangePair {
        ExchangePair {
            removed: arc(r.0, r.1),
            added: arc(a.0, a.1),
        }
    }

    /// Hom criterion evaluated literally through the public cyclic-order check.
    fn hom_oracle(b: Arc, c: Arc, m: usize) -> bool {
        let [b1, b2] = b.endpoints();
        let [c1, c2] = c.endpoints();
        let mut any = false;
        for (x1, x2) in [(b1, b2), (b2, b1)] {
            for (y1, y2) in [(c1, c2), (c2, c1)] {
                let seq = [shift(x1, -1, m), y1, shift(x2, -1, m), y2];
                any |= cyclically_ordered(&seq, m).unwrap_or(false);
            }
        }
        any
    }

    fn all_diagonals(m: usize) -> Vec<Arc> {
        subsets(m, 2)
            .into_iter()
            .map(|p| arc(p[0], p[1]))
            .filter(|a| a.is_diagonal(m))
            .collect()
    }

    #[test]
    fn hom_examples() {
        // 0 ≺ c1 ≺ 2 ≺ c2 has no solution in {2, 4}; neither does 2 ≺ c1 ≺ 0 ≺ c2.
        assert_eq!(
            hom_nonzero(arc(1, 3), arc(2, 4), 6),
            hom_oracle(arc(1, 3), arc(2, 4), 6)
        );
        assert!(!hom_nonzero(arc(1, 3), arc(2, 4), 6));
        assert!(hom_nonzero(arc(1, 3), arc(1, 3), 6));
        assert!(!hom_nonzero(arc(2, 6), arc(3, 5), 6));
        assert_eq!(
            hom_nonzero(arc(2, 6), arc(3, 5), 6),
            hom_oracle(arc(2, 6), arc(3, 5), 6)
        );
        for m in 4..=8 {
            for &b in &all_diagonals(m) {
                assert!(hom_nonzero(b, b, m));
                for &c in &all_diagonals(m) {
                    assert_eq!(hom_nonzero(b, c, m), hom_oracle(b, c, m));
                }
            }
        }
    }

    #[test]
    fn hom_into_suspension_detects_crossing() {
        for m in 4..=8 {
            for &a in &all_diagonals(m) {
                for &b in &all_diagonals(m) {
                    assert_eq!(hom_nonzero(a, b.shifted(-1, m), m), a.crosses(b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn cluster_tilting_criteria_agree() {
        assert!(is_cluster_tilting(tri(6, "2-6,3-6,4-6").arcs(), 6));
        assert!(!is_cluster_tilting(&[arc(1, 3), arc(2, 4)], 4));
        for m in 4..=6 {
            let diags = all_diagonals(m);
            let mut n_true = 0;
            for pick in subsets(diags.len(), m - 3) {
                let arcs: Vec<Arc> = pick.iter().map(|&i| diags[i as usize - 1]).collect();
                let by_hom = is_cluster_tilting_by_hom(&arcs, m);
                assert_eq!(is_cluster_tilting(&arcs, m), by_hom);
                n_true += by_hom as usize;
            }
            assert_eq!(n_true, enumerate_triangulations(m).unwrap().len());
        }
    }

    #[test]
    fn ext_examples() {
        let pent = OrientedMatroid::new(&tri(5, "2-5,3-5"));
        assert!(ext_nonzero(&pent, arc(1, 3), arc(2, 4)).unwrap());
        assert!(!ext_nonzero(&pent, arc(2, 4), arc(1, 3)).unwrap());
        let sq = OrientedMatroid::new(&tri(4, "1-3"));
        assert!(!ext_nonzero(&sq, arc(1, 3), arc(2, 4)).unwrap());
        assert!(matches!(
            ext_nonzero(&pent, arc(1, 3), arc(1, 4)),
            Err(Error::ArcsDoNotCross(..))
        ));
    }

    #[test]
    fn ext_dichotomy() {
        for m in 4..=7 {
            for t in enumerate_triangulations(m).unwrap() {
                let om = OrientedMatroid::new(&t);
                for &a in &all_diagonals(m) {
                    for &b in &all_diagonals(m) {
                        if a.crosses(b) {
                            assert_ne!(
                                ext_nonzero(&om, a, b).unwrap(),
                                ext_nonzero(&om, b, a).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn green_move_examples() {
        let t = tri(5, "2-5,3-5");
        let om = OrientedMatroid::new(&t);
        let mut moves = green_moves(&om, &tri(5, "1-3,1-4"));
        moves.sort();
        assert_eq!(moves, vec![pair((1, 3), (2, 4)), pair((1, 4), (3, 5))]);
        assert!(green_moves(&om, &t).is_empty());

        let sq = OrientedMatroid::new(&tri(4, "2-4"));
        assert_eq!(green_moves(&sq, &tri(4, "1-3")), vec![pair((1, 3), (2, 4))]);
    }

    #[test]
    fn green_moves_are_ext_nonzero() {
        for m in 4..=7 {
            for t in enumerate_triangulations(m).unwrap() {
                let om = OrientedMatroid::new(&t);
                for cur in enumerate_triangulations(m).unwrap() {
                    let moves = green_moves(&om, &cur);
                    for p in &moves {
                        assert!(ext_nonzero(&om, p.removed, p.added).unwrap());
                    }
                    // Every other flip goes the other way.
                    let flips = cur.flippable_quadrilaterals().len();
                    let decreasing = cur
                        .flippable_quadrilaterals()
                        .into_iter()
                        .filter(|&(_, e)| {
                            let f = cur.flip(e).unwrap();
                            let added = *f.arcs().iter().find(|a| !cur.contains(**a)).unwrap();
                            !ext_nonzero(&om, e, added).unwrap()
                        })
                        .count();
                    assert_eq!(moves.len() + decreasing, flips);
                }
            }
        }
    }

    #[test]
    fn mgs_small_cases() {
        let sq = OrientedMatroid::new(&tri(4, "2-4"));
        let e = enumerate_mgs(&sq).unwrap();
        assert_eq!(e.sequences.len(), 1);
        assert_eq!(e.sequences[0].len(), 1);
        assert_eq!(classes_of(&e.sequences).len(), 1);

        let pent = OrientedMatroid::new(&tri(5, "2-5,3-5"));
        let classes = enumerate_classes(&pent).unwrap();
        let exch: Vec<Vec<ExchangePair>> = classes.iter().map(|c| c.exch.clone()).collect();
        let mut short = vec![pair((1, 4), (3, 5)), pair((1, 3), (2, 5))];
        let mut long = vec![
            pair((1, 3), (2, 4)),
            pair((1, 4), (2, 5)),
            pair((2, 4), (3, 5)),
        ];
        short.sort();
        long.sort();
        assert_eq!(BTreeSet::from_iter(exch), BTreeSet::from([short, long]));
    }

    #[test]
    fn delta_examples() {
        let t = tri(5, "2-5,3-5");
        let om = OrientedMatroid::new(&t);
        let deltas: BTreeSet<Vec<[Vertex; 4]>> = enumerate_mgs(&om)
            .unwrap()
            .sequences
            .iter()
            .map(|g| {
                delta_from_mgs(g)
                    .simplices()
                    .iter()
                    .map(|s| s.vertices())
                    .collect()
            })
            .collect();
        assert_eq!(
            deltas,
            BTreeSet::from([
                vec![[1, 2, 3, 5], [1, 3, 4, 5]],
                vec![[1, 2, 3, 4], [1, 2, 4, 5], [2, 3, 4, 5]],
            ])
        );
        let sq = OrientedMatroid::new(&tri(4, "2-4"));
        let g = &enumerate_mgs(&sq).unwrap().sequences[0];
        assert_eq!(
            delta_from_mgs(g).simplices(),
            &[Simplex::new([1, 2, 3, 4]).unwrap()]
        );

        let short = [
            Simplex::new([1, 3, 4, 5]).unwrap(),
            Simplex::new([1, 2, 3, 5]).unwrap(),
        ];
        let g = mgs_from_stackable(&om, &short, ExtensionOrder::Smallest).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.states.last(), Some(&t));
    }

    #[test]
    fn sequence_invariants() {
        for m in 4..=7 {
            for t in enumerate_triangulations(m).unwrap() {
                let om = OrientedMatroid::new(&t);
                let e = enumerate_mgs(&om).unwrap();
                assert!(e.dead_ends.is_empty(), "{t}");
                assert!(!e.sequences.is_empty());
                for g in &e.sequences {
                    assert_eq!(g.states[0], t.rotate(1));
                    assert_eq!(g.states.last(), Some(&t));
                    assert_eq!(g.exch().len(), g.len());
                    // An arc that leaves never returns.
                    let mut gone = BTreeSet::new();
                    for p in &g.pairs {
                        assert!(!gone.contains(&p.added), "{t}: {} returns", p.added);
                        gone.insert(p.removed);
                    }
                    // Mutation order extends the stacking relation.
                    let sims = g.simplices();
                    for (s, u) in stacking_relation(&om, &sims).edges {
                        let pos = |x: Simplex| sims.iter().position(|&y| y == x).unwrap();
                        assert!(pos(s) < pos(u));
                    }
                }
            }
        }
    }

    #[test]
    fn equal_exch_gives_equal_delta() {
        for t in enumerate_triangulations(6).unwrap() {
            let om = OrientedMatroid::new(&t);
            let mut by_exch: BTreeMap<Vec<ExchangePair>, MatroidTriangulation> = BTreeMap::new();
            for g in enumerate_mgs(&om).unwrap().sequences {
                let d = delta_from_mgs(&g);
                assert_eq!(by_exch.entry(g.exch()).or_insert_with(|| d.clone()), &d);
            }
        }
    }

    #[test]
    fn bijection_small() {
        for m in 4..=6 {
            for t in enumerate_triangulations(m).unwrap() {
                let r = verify_bijection(&t).unwrap();
                assert!(r.matched, "{t}: {:?}", r.mismatches);
                assert_eq!(r.classes, r.stackable);
                if m == 4 {
                    assert_eq!(r.classes, 1);
                }
                if m == 5 {
                    assert_eq!(r.classes, 2);
                }
            }
        }
    }

    #[test]
    fn replay_rejects_bad_input() {
        let t = tri(5, "2-5,3-5");
        assert!(GreenSequence::replay(&t, &[pair((1, 4), (3, 5))]).is_err());
        assert!(GreenSequence::replay(&t, &[pair((2, 4), (1, 3))]).is_err());
        let om = OrientedMatroid::new(&t);
        let bad = [
            Simplex::new([1, 2, 3, 4]).unwrap(),
            Simplex::new([1, 3, 4, 5]).unwrap(),
        ];
        assert!(mgs_from_stackable(&om, &bad, ExtensionOrder::Smallest).is_err());
        assert!(enumerate_mgs(&OrientedMatroid::new(&Triangulation::fan(9, 1).unwrap())).is_err());
    }

    #[test]
    fn json_shapes() {
        let t = tri(5, "2-5,3-5");
        let g = GreenSequence::replay(&t, &[pair((1, 4), (3, 5)), pair((1, 3), (2, 5))]).unwrap();
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(
            js,
            r#"{"T":[[2,5],[3,5]],"m":5,"pairs":[{"removed":[1,4],"added":[3,5]},{"removed":[1,3],"added":[2,5]}]}"#
        );
        let back: GreenSequence = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
        let c = &classes_of(&[g])[0];
        assert_eq!(
            serde_json::to_string(c).unwrap(),
            r#"{"exch":[{"removed":[1,3],"added":[2,5]},{"removed":[1,4],"added":[3,5]}],"delta":[[1,2,3,5],[1,3,4,5]],"length":2}"#
        );
    }
}
