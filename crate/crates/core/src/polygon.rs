//! Cyclic order on `[m]`, arcs, and triangulations of the convex `m`-gon.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polygon vertex, 1-based.
pub type Vertex = u8;

/// Largest polygon size the library accepts at all; individual enumerations
/// carry tighter guards.
pub const MAX_POLYGON: usize = 32;

/// Largest polygon size for exhaustive triangulation enumeration.
pub const MAX_ENUMERATE: usize = 12;

/// Distance walked from `base` to `v` in increasing cyclic direction, in `0..m`.
#[inline]
pub(crate) fn offset(v: Vertex, base: Vertex, m: usize) -> usize {
    (v as usize + m - base as usize) % m
}

/// Whether `x` lies in the half-open cyclic interval `[start, end)`.
#[inline]
pub(crate) fn in_interval(x: Vertex, start: Vertex, end: Vertex, m: usize) -> bool {
    offset(x, start, m) < offset(end, start, m)
}

/// `v + k` with representative in `1..=m`.
pub fn shift(v: Vertex, k: i64, m: usize) -> Vertex {
    let m = m as i64;
    ((v as i64 - 1 + k).rem_euclid(m) + 1) as Vertex
}

pub(crate) fn check_vertex(v: Vertex, m: usize) -> Result<()> {
    if v == 0 || v as usize > m {
        return Err(Error::VertexOutOfRange {
            vertex: v as usize,
            m,
        });
    }
    Ok(())
}

pub(crate) fn check_polygon_size(m: usize, what: &'static str, max: usize) -> Result<()> {
    if !(4..=max).contains(&m) {
        return Err(Error::SizeGuard {
            what,
            m,
            min: 4,
            max,
        });
    }
    Ok(())
}

/// Whether some rotation of `seq` is strictly increasing, i.e.
/// `seq[0] ≺ seq[1] ≺ … ≺ seq[l-1]` in the cyclic order on `[m]`.
pub fn cyclically_ordered(seq: &[Vertex], m: usize) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for &v in seq {
        check_vertex(v, m)?;
        if !seen.insert(v) {
            return Err(Error::RepeatedVertex(v));
        }
    }
    Ok(is_cyclic_unchecked(seq, m))
}

#[inline]
pub(crate) fn is_cyclic_unchecked(seq: &[Vertex], m: usize) -> bool {
    let Some(&first) = seq.first() else {
        return true;
    };
    seq.windows(2)
        .all(|w| offset(w[0], first, m) < offset(w[1], first, m))
}

/// An internal diagonal `{p, q}` of the polygon, stored with `lo < hi`.
///
/// Only distinctness is enforced here; non-adjacency is a property relative
/// to `m` and is checked by [`Triangulation::new`] and [`Arc::is_diagonal`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Arc {
    lo: Vertex,
    hi: Vertex,
}

impl Arc {
    pub fn new(p: Vertex, q: Vertex) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::VertexOutOfRange {
                vertex: 0,
                m: MAX_POLYGON,
            });
        }
        if p == q {
            return Err(Error::RepeatedVertex(p));
        }
        Ok(Self {
            lo: p.min(q),
            hi: p.max(q),
        })
    }

    pub(crate) fn new_unchecked(p: Vertex, q: Vertex) -> Self {
        debug_assert!(p != q);
        Self {
            lo: p.min(q),
            hi: p.max(q),
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn endpoints(self) -> [Vertex; 2] {
        [self.lo, self.hi]
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// True iff both endpoints lie in `[m]` and are not neighbours on the boundary.
    pub fn is_diagonal(self, m: usize) -> bool {
        self.hi as usize <= m && self.hi - self.lo != 1 && !(self.lo == 1 && self.hi as usize == m)
    }

    pub fn shifted(self, k: i64, m: usize) -> Self {
        Self::new_unchecked(shift(self.lo, k, m), shift(self.hi, k, m))
    }

    /// Whether the two arcs cross in the interior of the polygon.
    pub fn crosses(self, other: Arc) -> bool {
        let inside = |v: Vertex| self.lo < v && v < self.hi;
        let shared = self.contains(other.lo) || self.contains(other.hi);
        !shared && (inside(other.lo) != inside(other.hi))
    }
}

impl TryFrom<[Vertex; 2]> for Arc {
    type Error = Error;

    fn try_from(value: [Vertex; 2]) -> Result<Self> {
        Arc::new(value[0], value[1])
    }
}

impl From<Arc> for [Vertex; 2] {
    fn from(a: Arc) -> Self {
        a.endpoints()
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Three polygon vertices, sorted ascending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 3]", into = "[Vertex; 3]")]
pub struct Triangle([Vertex; 3]);

impl Triangle {
    pub fn new(mut v: [Vertex; 3]) -> Result<Self> {
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::RepeatedVertex(v[1]));
        }
        if v[0] == 0 {
            return Err(Error::VertexOutOfRange {
                vertex: 0,
                m: MAX_POLYGON,
            });
        }
        Ok(Self(v))
    }

    pub(crate) fn new_unchecked(mut v: [Vertex; 3]) -> Self {
        v.sort_unstable();
        Self(v)
    }

    pub fn vertices(self) -> [Vertex; 3] {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn shifted(self, k: i64, m: usize) -> Self {
        Self::new_unchecked(self.0.map(|v| shift(v, k, m)))
    }
}

impl TryFrom<[Vertex; 3]> for Triangle {
    type Error = Error;

    fn try_from(v: [Vertex; 3]) -> Result<Self> {
        Triangle::new(v)
    }
}

impl From<Triangle> for [Vertex; 3] {
    fn from(t: Triangle) -> Self {
        t.0
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// A triangulation of the convex `m`-gon: `m - 3` pairwise non-crossing
/// diagonals. Arcs are kept sorted, so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TriangulationRepr", into = "TriangulationRepr")]
pub struct Triangulation {
    m: usize,
    arcs: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct TriangulationRepr {
    m: usize,
    arcs: Vec<Arc>,
}

impl TryFrom<TriangulationRepr> for Triangulation {
    type Error = Error;

    fn try_from(r: TriangulationRepr) -> Result<Self> {
        Triangulation::new(r.m, r.arcs)
    }
}

impl From<Triangulation> for TriangulationRepr {
    fn from(t: Triangulation) -> Self {
        TriangulationRepr {
            m: t.m,
            arcs: t.arcs,
        }
    }
}

/// Reasons an arc set fails to triangulate the `m`-gon, or `None`.
fn triangulation_defect(arcs: &[Arc], m: usize) -> Option<String> {
    if arcs.len() + 3 != m {
        return Some(format!(
            "{} arcs given, an {m}-gon needs {}",
            arcs.len(),
            m.saturating_sub(3)
        ));
    }
    for a in arcs {
        if !a.is_diagonal(m) {
            return Some(format!("{a} is not an internal diagonal of the {m}-gon"));
        }
    }
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if a == b {
                return Some(format!("{a} repeated"));
            }
            if a.crosses(*b) {
                return Some(format!("{a} crosses {b}"));
            }
        }
    }
    None
}

/// True iff `arcs` is a set of `m - 3` pairwise non-crossing diagonals.
pub fn is_triangulation(arcs: &[Arc], m: usize) -> bool {
    triangulation_defect(arcs, m).is_none()
}

impl Triangulation {
    pub fn new(m: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        check_polygon_size(m, "triangulation", MAX_POLYGON)?;
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        if let Some(reason) = triangulation_defect(&arcs, m) {
            return Err(Error::NotATriangulation(reason));
        }
        Ok(Self { m, arcs })
    }

    pub(crate) fn new_unchecked(m: usize, mut arcs: Vec<Arc>) -> Self {
        arcs.sort_unstable();
        debug_assert!(is_triangulation(&arcs, m), "{arcs:?} on {m}");
        Self { m, arcs }
    }

    /// Parses the comma-separated form `2-6,3-6,4-6`.
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let arcs = parse_arcs(text)?;
        Self::new(m, arcs)
    }

    /// The fan of all diagonals at vertex `apex`.
    pub fn fan(m: usize, apex: Vertex) -> Result<Self> {
        check_polygon_size(m, "triangulation", MAX_POLYGON)?;
        check_vertex(apex, m)?;
        let arcs = (2..m as i64 - 1).map(|k| Arc::new_unchecked(apex, shift(apex, k, m)));
        Self::new(m, arcs)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    /// Whether `p` and `q` are joined by a boundary edge or an arc.
    pub fn has_edge(&self, p: Vertex, q: Vertex) -> bool {
        if p == q {
            return false;
        }
        let d = offset(p, q, self.m);
        d == 1 || d == self.m - 1 || self.contains(Arc::new_unchecked(p, q))
    }

    /// Adds `k` to every vertex label.
    pub fn rotate(&self, k: i64) -> Self {
        let arcs = self.arcs.iter().map(|a| a.shifted(k, self.m)).collect();
        Self::new_unchecked(self.m, arcs)
    }

    /// The `m - 2` triangles of the triangulation, sorted.
    pub fn triangles(&self) -> Vec<Triangle> {
        let m = self.m as Vertex;
        let mut out = Vec::with_capacity(self.m - 2);
        for a in 1..=m {
            for b in a + 1..=m {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..=m {
                    if self.has_edge(a, c) && self.has_edge(b, c) {
                        out.push(Triangle([a, b, c]));
                    }
                }
            }
        }
        out
    }

    /// The two apexes of the triangles on either side of `arc`.
    fn apexes(&self, arc: Arc) -> [Vertex; 2] {
        let mut found = [0; 2];
        let mut n = 0;
        for r in 1..=self.m as Vertex {
            if !arc.contains(r) && self.has_edge(arc.lo, r) && self.has_edge(arc.hi, r) {
                found[n] = r;
                n += 1;
            }
        }
        debug_assert_eq!(n, 2, "arc {arc} should border two triangles");
        found
    }

    /// For each arc, the quadrilateral formed by the two triangles sharing it.
    pub fn flippable_quadrilaterals(&self) -> Vec<([Vertex; 4], Arc)> {
        self.arcs
            .iter()
            .map(|&arc| {
                let [r, s] = self.apexes(arc);
                let mut quad = [arc.lo, arc.hi, r, s];
                quad.sort_unstable();
                (quad, arc)
            })
            .collect()
    }

    /// Replaces `old` by the other diagonal of its quadrilateral.
    pub fn flip(&self, old: Arc) -> Result<Self> {
        let idx = self
            .arcs
            .binary_search(&old)
            .map_err(|_| Error::ArcNotPresent(old.to_string()))?;
        let [r, s] = self.apexes(old);
        let mut arcs = self.arcs.clone();
        arcs[idx] = Arc::new_unchecked(r, s);
        Ok(Self::new_unchecked(self.m, arcs))
    }

    /// Replaces `old` by `new` without consulting the quadrilateral; the
    /// caller guarantees `new` is the flip of `old`.
    pub(crate) fn exchange_unchecked(&self, old: Arc, new: Arc) -> Self {
        let mut arcs: Vec<Arc> = self.arcs.iter().copied().filter(|&a| a != old).collect();
        arcs.push(new);
        Self::new_unchecked(self.m, arcs)
    }

    /// The induced triangulation `T_V` of the convex polygon on `vertices`,
    /// labelled by the original vertex names.
    ///
    /// An arc `xy` separates `V` when both cyclic sides `(y, x]` and `(x, y]`
    /// meet `V`; it contributes the arc between the last vertex of `V` on each
    /// side. Contributions that are sides of the smaller polygon are dropped.
    pub fn restrict(&self, vertices: &[Vertex]) -> Result<RestrictedTriangulation> {
        let mut vs: Vec<Vertex> = vertices.to_vec();
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedVertex(w[0]));
            }
        }
        for &v in &vs {
            check_vertex(v, self.m)?;
        }
        if vs.len() < 4 {
            return Err(Error::WrongSubsetSize {
                expected: 4,
                got: vs.len(),
            });
        }
        let pos = |v: Vertex| vs.binary_search(&v).expect("member of V");
        let n = vs.len();
        let mut arcs = BTreeSet::new();
        for &Arc { lo: x, hi: y } in &self.arcs {
            // Side (x, y] is a contiguous run of the sorted V; (y, x] is the rest.
            let inner: Vec<Vertex> = vs.iter().copied().filter(|&v| x < v && v <= y).collect();
            if inner.is_empty() || inner.len() == n {
                continue;
            }
            let y_v = *inner.last().expect("non-empty");
            let x_v = vs
                .iter()
                .copied()
                .rfind(|&v| v <= x)
                .unwrap_or_else(|| *vs.last().expect("non-empty"));
            let (i, j) = (pos(x_v), pos(y_v));
            let gap = (j + n - i) % n;
            if gap == 1 || gap == n - 1 {
                continue;
            }
            arcs.insert(Arc::new_unchecked(x_v, y_v));
        }
        Ok(RestrictedTriangulation {
            vertices: vs,
            arcs: arcs.into_iter().collect(),
        })
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(Arc::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `p-q,p-q,...` into arcs; an empty string gives no arcs.
pub fn parse_arcs(text: &str) -> Result<Vec<Arc>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (p, q) = tok
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("expected p-q, got {tok:?}")))?;
            let p: Vertex = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {tok:?}")))?;
            let q: Vertex = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {tok:?}")))?;
            Arc::new(p, q)
        })
        .collect()
}

/// A triangulation of the convex polygon on a vertex subset, in the
/// original labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedTriangulation {
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<Arc>,
}

impl RestrictedTriangulation {
    /// Relabels `vertices[i]` as `i + 1`, giving a triangulation of the
    /// `|V|`-gon. Fails if the arcs do not triangulate it.
    pub fn renumber(&self) -> Result<Triangulation> {
        let idx = |v: Vertex| {
            self.vertices
                .binary_search(&v)
                .map(|i| i as Vertex + 1)
                .map_err(|_| Error::VertexOutOfRange {
                    vertex: v as usize,
                    m: self.vertices.len(),
                })
        };
        let arcs = self
            .arcs
            .iter()
            .map(|a| Ok(Arc::new_unchecked(idx(a.lo)?, idx(a.hi)?)))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(self.vertices.len(), arcs)
    }
}

fn triangulate_run(vs: &[Vertex], out: &mut Vec<Vec<Arc>>) {
    if vs.len() <= 3 {
        out.push(Vec::new());
        return;
    }
    let last = vs.len() - 1;
    // The side vs[0]–vs[last] lies in exactly one triangle, with apex vs[k].
    for k in 1..last {
        let mut left = Vec::new();
        triangulate_run(&vs[..=k], &mut left);
        let mut right = Vec::new();
        triangulate_run(&vs[k..], &mut right);
        for l in &left {
            for r in &right {
                let mut arcs = Vec::with_capacity(vs.len() - 3);
                if k > 1 {
                    arcs.push(Arc::new_unchecked(vs[0], vs[k]));
                }
                if k < last - 1 {
                    arcs.push(Arc::new_unchecked(vs[k], vs[last]));
                }
                arcs.extend_from_slice(l);
                arcs.extend_from_slice(r);
                out.push(arcs);
            }
        }
    }
}

/// Every triangulation of the convex `m`-gon, sorted, for `4 <= m <= 12`.
pub fn enumerate_triangulations(m: usize) -> Result<Vec<Triangulation>> {
    check_polygon_size(m, "triangulation enumeration", MAX_ENUMERATE)?;
    let vs: Vec<Vertex> = (1..=m as Vertex).collect();
    let mut raw = Vec::new();
    triangulate_run(&vs, &mut raw);
    let mut out: Vec<Triangulation> = raw
        .into_iter()
        .map(|a| Triangulation::new_unchecked(m, a))
        .collect();
    out.sort_unstable();
    Ok(out)
}
