//! Signed circuits, cocircuits and facets of `M_T`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::chirotope::{sort_with_parity, subsets, Chirotope, Sign};
use crate::error::{Error, Result};
use crate::mtri::Simplex;
use crate::polygon::{check_polygon_size, check_vertex, Arc, Triangle, Triangulation, Vertex};

/// Largest polygon size for the exhaustive acyclicity check.
pub const MAX_ACYCLIC_CHECK: usize = 9;

/// A signed subset of `[m]`: disjoint positive and negative parts, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedSet {
    pub positive: Vec<Vertex>,
    pub negative: Vec<Vertex>,
}

impl SignedSet {
    pub fn new(mut positive: Vec<Vertex>, mut negative: Vec<Vertex>) -> Result<Self> {
        positive.sort_unstable();
        negative.sort_unstable();
        for part in [&positive, &negative] {
            if let Some(w) = part.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(w[0]));
            }
        }
        if let Some(&v) = positive.iter().find(|v| negative.binary_search(v).is_ok()) {
            return Err(Error::RepeatedVertex(v));
        }
        Ok(Self { positive, negative })
    }

    pub fn support(&self) -> Vec<Vertex> {
        let mut s: Vec<Vertex> = self
            .positive
            .iter()
            .chain(&self.negative)
            .copied()
            .collect();
        s.sort_unstable();
        s
    }

    pub fn negated(&self) -> Self {
        Self {
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }

    /// The signature in which the smallest support element is positive.
    pub fn canonical(self) -> Self {
        match (self.positive.first(), self.negative.first()) {
            (Some(p), Some(n)) if n < p => self.negated(),
            (None, Some(_)) => self.negated(),
            _ => self,
        }
    }

    /// One part empty.
    pub fn is_one_signed(&self) -> bool {
        self.positive.is_empty() || self.negative.is_empty()
    }

    pub fn sign_of(&self, v: Vertex) -> Sign {
        if self.positive.binary_search(&v).is_ok() {
            Sign::Pos
        } else if self.negative.binary_search(&v).is_ok() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }
}

/// Upper and lower facets of `M_T`, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetList {
    pub upper: Vec<Triangle>,
    pub lower: Vec<Triangle>,
}

/// Upper and lower facets of a single simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexFacets {
    pub upper: [Triangle; 2],
    pub lower: [Triangle; 2],
}

impl SimplexFacets {
    /// The diagonal shared by the two lower facets.
    pub fn lower_diagonal(&self) -> Arc {
        shared_pair(self.lower)
    }

    /// The diagonal shared by the two upper facets.
    pub fn upper_diagonal(&self) -> Arc {
        shared_pair(self.upper)
    }
}

fn shared_pair([s, t]: [Triangle; 2]) -> Arc {
    let common: Vec<Vertex> = s
        .vertices()
        .into_iter()
        .filter(|&v| t.contains(v))
        .collect();
    Arc::new_unchecked(common[0], common[1])
}

fn distinct_sorted<const N: usize>(set: &[Vertex], m: usize) -> Result<[Vertex; N]> {
    if set.len() != N {
        return Err(Error::WrongSubsetSize {
            expected: N,
            got: set.len(),
        });
    }
    for &v in set {
        check_vertex(v, m)?;
    }
    let arr: [Vertex; N] = set.try_into().expect("length checked");
    sort_with_parity(arr)
        .map(|(s, _)| s)
        .ok_or_else(|| Error::RepeatedVertex(arr[0]))
}

/// The signed circuit supported on the 5-subset `set`.
///
/// With `set` sorted as `s_0 < … < s_4`, element `s_i` gets the sign
/// `(-1)^i · χ(set \ s_i)`; the result is normalised so that `s_0` is positive.
pub fn circuit_of(chi: &Chirotope, set: &[Vertex]) -> Result<SignedSet> {
    let s: [Vertex; 5] = distinct_sorted(set, chi.m())?;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for i in 0..5 {
        let rest: Vec<Vertex> = s.iter().copied().filter(|&v| v != s[i]).collect();
        let minor = chi.get_ascending([rest[0], rest[1], rest[2], rest[3]]);
        let alt = if i % 2 == 0 { Sign::Pos } else { Sign::Neg };
        match alt * minor {
            Sign::Pos => positive.push(s[i]),
            Sign::Neg => negative.push(s[i]),
            Sign::Zero => {}
        }
    }
    Ok(SignedSet { positive, negative }.canonical())
}

/// The signed cocircuit complementary to the hyperplane spanned by the 3-subset `h`.
///
/// Each `f` outside `h` is compared with the smallest such `e` by
/// `χ(e, h_1, h_2, h_3) · χ(f, h_1, h_2, h_3)`.
pub fn cocircuit_of(chi: &Chirotope, h: &[Vertex]) -> Result<SignedSet> {
    let [h1, h2, h3]: [Vertex; 3] = distinct_sorted(h, chi.m())?;
    let side = |f: Vertex| chi.value([f, h1, h2, h3]);
    let outside: Vec<Vertex> = (1..=chi.m() as Vertex)
        .filter(|v| ![h1, h2, h3].contains(v))
        .collect();
    let anchor = side(outside[0]);
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for &f in &outside {
        match anchor * side(f) {
            Sign::Pos => positive.push(f),
            Sign::Neg => negative.push(f),
            Sign::Zero => {}
        }
    }
    Ok(SignedSet { positive, negative }.canonical())
}

/// Facets read off one-signed cocircuits: `H` is upper when every outside
/// `x` has `χ(x, h_1, h_2, h_3) = +1` and lower when every such value is `-1`.
pub fn facets_by_cocircuits(chi: &Chirotope) -> FacetList {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for h in subsets(chi.m(), 3) {
        let hs = [h[0], h[1], h[2]];
        let values: BTreeSet<Sign> = (1..=chi.m() as Vertex)
            .filter(|v| !hs.contains(v))
            .map(|x| chi.value([x, hs[0], hs[1], hs[2]]))
            .collect();
        match values.into_iter().collect::<Vec<_>>().as_slice() {
            [Sign::Pos] => upper.push(Triangle::new_unchecked(hs)),
            [Sign::Neg] => lower.push(Triangle::new_unchecked(hs)),
            _ => {}
        }
    }
    FacetList { upper, lower }
}

/// True iff no 5-subset supports a one-signed circuit.
pub fn chirotope_is_acyclic(chi: &Chirotope) -> Result<bool> {
    check_polygon_size(chi.m(), "acyclicity check", MAX_ACYCLIC_CHECK)?;
    for s in subsets(chi.m(), 5) {
        let c = circuit_of(chi, &s)?;
        if !c.support().is_empty() && c.is_one_signed() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper and lower facets of a simplex `{a < b < c < d}`: when
/// `χ(a, b, c, d) = +1` the upper facets are `abd, bcd` and the lower ones
/// `abc, acd`; the roles swap when it is `-1`.
pub fn simplex_facets_of(chi: &Chirotope, sigma: Simplex) -> SimplexFacets {
    let [a, b, c, d] = sigma.vertices();
    let t = Triangle::new_unchecked;
    let first = [t([a, b, d]), t([b, c, d])];
    let second = [t([a, b, c]), t([a, c, d])];
    match chi.get_ascending(sigma.vertices()) {
        Sign::Neg => SimplexFacets {
            upper: second,
            lower: first,
        },
        _ => SimplexFacets {
            upper: first,
            lower: second,
        },
    }
}

/// The oriented matroid `M_T`: a triangulation together with its chirotope
/// and facet sets.
#[derive(Clone, Debug)]
pub struct OrientedMatroid {
    triangulation: Triangulation,
    chirotope: Chirotope,
    upper: BTreeSet<Triangle>,
    lower: BTreeSet<Triangle>,
}

impl OrientedMatroid {
    pub fn new(t: &Triangulation) -> Self {
        let upper = t.triangles().into_iter().collect();
        let lower = t.rotate(1).triangles().into_iter().collect();
        Self {
            triangulation: t.clone(),
            chirotope: Chirotope::from_triangulation(t),
            upper,
            lower,
        }
    }

    /// `M_T` for the cluster-tilting triangulation `ct`, i.e. `T = ct - 1`.
    pub fn from_cluster_tilting(ct: &Triangulation) -> Self {
        Self::new(&ct.rotate(-1))
    }

    pub fn m(&self) -> usize {
        self.triangulation.m()
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn chirotope(&self) -> &Chirotope {
        &self.chirotope
    }

    pub fn circuit(&self, set: &[Vertex]) -> Result<SignedSet> {
        circuit_of(&self.chirotope, set)
    }

    pub fn cocircuit(&self, h: &[Vertex]) -> Result<SignedSet> {
        cocircuit_of(&self.chirotope, h)
    }

    /// Upper facets are the triangles of `T`, lower facets those of `T + 1`.
    pub fn facets(&self) -> FacetList {
        FacetList {
            upper: self.upper.iter().copied().collect(),
            lower: self.lower.iter().copied().collect(),
        }
    }

    pub fn is_upper_facet(&self, f: Triangle) -> bool {
        self.upper.contains(&f)
    }

    pub fn is_lower_facet(&self, f: Triangle) -> bool {
        self.lower.contains(&f)
    }

    pub fn is_facet(&self, f: Triangle) -> bool {
        self.is_upper_facet(f) || self.is_lower_facet(f)
    }

    pub fn simplex_facets(&self, sigma: Simplex) -> SimplexFacets {
        simplex_facets_of(&self.chirotope, sigma)
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        chirotope_is_acyclic(&self.chirotope)
    }
}
