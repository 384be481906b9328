//! The rank-four chirotope `χ_T` of a polygon triangulation, and a direct
//! check of the chirotope axioms.
//!
//! For `a ≺ b ≺ c ≺ d`, `χ_T(a, b, c, d)` is `+1` when `T` has an arc `xy`
//! with `x ∈ [b, c)` and `y ∈ [d, a)`, and `-1` when it has one with
//! `x ∈ [a, b)` and `y ∈ [c, d)` (intervals taken in cyclic order). Exactly
//! one of the two happens. Other tuples follow by alternation.

use std::fmt;
use std::ops::{Mul, Neg};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{
    check_polygon_size, check_vertex, in_interval, Triangulation, Vertex, MAX_POLYGON,
};

/// Largest polygon size for the exhaustive axiom check.
pub const MAX_AXIOM_CHECK: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn of<T: PartialOrd + Default>(x: T) -> Self {
        let zero = T::default();
        if x > zero {
            Sign::Pos
        } else if x < zero {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            -1 => Ok(Sign::Neg),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Pos),
            _ => Err(Error::Parse(format!("sign must be -1, 0 or 1, got {v}"))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        })
    }
}

/// Sorts `v` ascending and returns the sign of the sorting permutation, or
/// `None` if an entry repeats.
pub(crate) fn sort_with_parity<const N: usize>(mut v: [Vertex; N]) -> Option<([Vertex; N], Sign)> {
    let mut odd = false;
    for i in 1..N {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, if odd { Sign::Neg } else { Sign::Pos }))
}

/// All `k`-subsets of `[m]` in lexicographic order, each ascending.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<Vertex>> {
    fn go(start: Vertex, m: Vertex, k: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            if (m - v) as usize + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m as Vertex, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All ascending 4-subsets of `[m]`, lexicographically.
pub fn four_subsets(m: usize) -> Vec<[Vertex; 4]> {
    subsets(m, 4)
        .into_iter()
        .map(|s| [s[0], s[1], s[2], s[3]])
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Colex rank of an ascending 4-subset of `[m]`.
#[inline]
fn colex_rank(q: [Vertex; 4]) -> usize {
    q.iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as usize - 1, i + 1))
        .sum()
}

/// `χ_T` on a cyclically ordered (here: ascending) 4-tuple.
fn chi_ascending(t: &Triangulation, [a, b, c, d]: [Vertex; 4]) -> Sign {
    let m = t.m();
    for arc in t.arcs() {
        for (x, y) in [(arc.lo(), arc.hi()), (arc.hi(), arc.lo())] {
            if in_interval(x, b, c, m) && in_interval(y, d, a, m) {
                return Sign::Pos;
            }
            if in_interval(x, a, b, m) && in_interval(y, c, d, m) {
                return Sign::Neg;
            }
        }
    }
    unreachable!("every 4-subset is decided by a triangulation arc; {t} on {a}{b}{c}{d}")
}

fn check_tuple<const N: usize>(tuple: [Vertex; N], m: usize) -> Result<([Vertex; N], Sign)> {
    for v in tuple {
        check_vertex(v, m)?;
    }
    sort_with_parity(tuple).ok_or_else(|| {
        let mut s = tuple;
        s.sort_unstable();
        let dup = s
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| w[0])
            .unwrap_or(0);
        Error::RepeatedVertex(dup)
    })
}

/// `χ_T` on an arbitrary tuple of four distinct vertices.
pub fn chi(t: &Triangulation, tuple: [Vertex; 4]) -> Result<Sign> {
    let (sorted, parity) = check_tuple(tuple, t.m())?;
    Ok(parity * chi_ascending(t, sorted))
}

/// An alternating sign map on 4-tuples of `[m]`, stored on ascending
/// 4-subsets only.
///
/// Equality compares sign tables only; the recorded source is ignored.
#[derive(Clone, Debug)]
pub struct Chirotope {
    m: usize,
    table: Vec<Sign>,
    source: Option<Triangulation>,
}

impl Chirotope {
    /// Fills the table of `χ_T` on all `C(m, 4)` ascending 4-subsets.
    pub fn from_triangulation(t: &Triangulation) -> Self {
        let mut c =
            Self::from_fn(t.m(), |q| chi_ascending(t, q)).expect("triangulation size is valid");
        c.source = Some(t.clone());
        c
    }

    /// Builds a table from a function on ascending 4-subsets.
    pub fn from_fn(m: usize, mut f: impl FnMut([Vertex; 4]) -> Sign) -> Result<Self> {
        check_polygon_size(m, "chirotope", MAX_POLYGON)?;
        let mut table = vec![Sign::Zero; binomial(m, 4)];
        for q in four_subsets(m) {
            table[colex_rank(q)] = f(q);
        }
        Ok(Self {
            m,
            table,
            source: None,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The triangulation this table was built from, if any.
    pub fn source(&self) -> Option<&Triangulation> {
        self.source.as_ref()
    }

    /// Value on an ascending 4-subset.
    #[inline]
    pub fn get_ascending(&self, q: [Vertex; 4]) -> Sign {
        self.table[colex_rank(q)]
    }

    /// Value on any 4-tuple of `[m]`; tuples with a repeated entry give zero.
    #[inline]
    pub fn value(&self, tuple: [Vertex; 4]) -> Sign {
        match sort_with_parity(tuple) {
            Some((q, parity)) => parity * self.get_ascending(q),
            None => Sign::Zero,
        }
    }

    /// Checked evaluation on four distinct vertices.
    pub fn get(&self, tuple: [Vertex; 4]) -> Result<Sign> {
        let (q, parity) = check_tuple(tuple, self.m)?;
        Ok(parity * self.get_ascending(q))
    }

    /// A copy with the entry on the ascending subset `q` replaced.
    pub fn with_entry(&self, q: [Vertex; 4], s: Sign) -> Result<Self> {
        let (sorted, _) = check_tuple(q, self.m)?;
        let mut c = self.clone();
        c.table[colex_rank(sorted)] = s;
        c.source = None;
        Ok(c)
    }

    /// `(basis, sign)` for every ascending 4-subset, lexicographically.
    pub fn entries(&self) -> Vec<([Vertex; 4], Sign)> {
        four_subsets(self.m)
            .into_iter()
            .map(|q| (q, self.get_ascending(q)))
            .collect()
    }

    /// Whether every ascending 4-subset has a nonzero entry.
    pub fn is_uniform(&self) -> bool {
        self.table.iter().all(|&s| s != Sign::Zero)
    }

    /// Dense lookup over all `m^4` tuples, zero on repeats. Index with
    /// [`Self::dense_index`].
    pub(crate) fn dense(&self) -> Vec<i8> {
        let m = self.m;
        let mut out = vec![0i8; m * m * m * m];
        for a in 1..=m as Vertex {
            for b in 1..=m as Vertex {
                for c in 1..=m as Vertex {
                    for d in 1..=m as Vertex {
                        out[self.dense_index([a, b, c, d])] = self.value([a, b, c, d]).as_i8();
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub(crate) fn dense_index(&self, [a, b, c, d]: [Vertex; 4]) -> usize {
        let m = self.m;
        (((a as usize - 1) * m + (b as usize - 1)) * m + (c as usize - 1)) * m + (d as usize - 1)
    }
}

impl PartialEq for Chirotope {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.table == other.table
    }
}

impl Eq for Chirotope {}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    basis: [Vertex; 4],
    sign: Sign,
}

#[derive(Serialize, Deserialize)]
struct ChirotopeRepr {
    m: usize,
    entries: Vec<EntryRepr>,
}

impl Serialize for Chirotope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChirotopeRepr {
            m: self.m,
            entries: self
                .entries()
                .into_iter()
                .map(|(basis, sign)| EntryRepr { basis, sign })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chirotope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ChirotopeRepr::deserialize(d)?;
        let mut c = Chirotope::from_fn(r.m, |_| Sign::Zero).map_err(D::Error::custom)?;
        let mut seen = vec![false; c.table.len()];
        for e in r.entries {
            let (q, parity) = check_tuple(e.basis, r.m).map_err(D::Error::custom)?;
            let i = colex_rank(q);
            if std::mem::replace(&mut seen[i], true) {
                return Err(D::Error::custom(format!(
                    "basis {:?} listed twice",
                    e.basis
                )));
            }
            c.table[i] = parity * e.sign;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let q = four_subsets(r.m)
                .into_iter()
                .find(|&q| colex_rank(q) == i)
                .expect("rank in range");
            return Err(D::Error::custom(format!("missing basis {q:?}")));
        }
        Ok(c)
    }
}

/// Outcome of checking the three chirotope axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom1: bool,
    pub axiom2: bool,
    pub axiom3: bool,
    /// A tuple on which alternation fails, if any.
    pub alternation_witness: Option<[Vertex; 4]>,
    /// A pair `(x, y)` satisfying every hypothesis product with a negative
    /// conclusion product, if any.
    pub exchange_witness: Option<([Vertex; 4], [Vertex; 4])>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.axiom1 && self.axiom2 && self.axiom3
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn permutation_sign(p: [usize; 4]) -> Sign {
    let inversions = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Whether the axiom-3 implication holds for the pair `(x, y)`.
///
/// Hypothesis `i` is `χ(y_i, x_2, x_3, x_4) · χ(y_1, …, y_{i-1}, x_1, y_{i+1}, …, y_4) ≥ 0`;
/// the conclusion is `χ(x) · χ(y) ≥ 0`.
pub fn exchange_holds(chi: &Chirotope, x: [Vertex; 4], y: [Vertex; 4]) -> bool {
    let conclusion = chi.value(x).as_i8() * chi.value(y).as_i8();
    if conclusion >= 0 {
        return true;
    }
    !(0..4).all(|i| {
        let mut yi = y;
        yi[i] = x[0];
        chi.value([y[i], x[1], x[2], x[3]]).as_i8() * chi.value(yi).as_i8() >= 0
    })
}

/// Exhaustively checks the chirotope axioms for `m <= 9`.
///
/// For the exchange axiom, `x_2 < x_3 < x_4` is fixed and `x_1` and `y`
/// range over everything else. Reordering `x_2, x_3, x_4` by an odd
/// permutation negates every hypothesis and the conclusion, which is the
/// same as transposing `y_1, y_2`, so no case is lost. Tuples with repeats
/// make the conclusion zero and are skipped.
pub fn verify_axioms(chi: &Chirotope) -> Result<AxiomReport> {
    let m = chi.m();
    check_polygon_size(m, "chirotope axiom check", MAX_AXIOM_CHECK)?;
    let axiom1 = chi.table.iter().any(|&s| s != Sign::Zero);

    let perms = permutations4();
    let alternation_witness = four_subsets(m).into_iter().find_map(|q| {
        let base = chi.get_ascending(q);
        perms.iter().find_map(|&p| {
            let t = p.map(|i| q[i]);
            (chi.value(t) != permutation_sign(p) * base).then_some(t)
        })
    });

    let dense = chi.dense();
    let at = |t: [Vertex; 4]| dense[chi.dense_index(t)] as i32;
    let ordered: Vec<[Vertex; 4]> = {
        let mut v = Vec::new();
        for q in four_subsets(m) {
            for p in &perms {
                v.push(p.map(|i| q[i]));
            }
        }
        v
    };
    let xs: Vec<[Vertex; 4]> = subsets(m, 3)
        .into_iter()
        .flat_map(|tail| {
            let tail = [tail[0], tail[1], tail[2]];
            (1..=m as Vertex)
                .filter(move |v| !tail.contains(v))
                .map(move |x1| [x1, tail[0], tail[1], tail[2]])
                .collect::<Vec<_>>()
        })
        .collect();
    let exchange_witness = xs.par_iter().find_map_first(|&x| {
        let cx = at(x);
        if cx == 0 {
            return None;
        }
        ordered.iter().find_map(|&y| {
            if cx * at(y) >= 0 {
                return None;
            }
            let all_hyp = (0..4).all(|i| {
                let mut yi = y;
                yi[i] = x[0];
                at([y[i], x[1], x[2], x[3]]) * at(yi) >= 0
            });
            all_hyp.then_some((x, y))
        })
    });

    Ok(AxiomReport {
        axiom1,
        axiom2: alternation_witness.is_none(),
        axiom3: exchange_witness.is_none(),
        alternation_witness,
        exchange_witness,
    })
}

/// Whether `χ_T` restricted to 4-subsets of `vertices` equals `χ_{T_V}`.
pub fn restriction_equals(t: &Triangulation, vertices: &[Vertex]) -> Result<bool> {
    let restricted = t.restrict(vertices)?;
    let small = restricted.renumber()?;
    let vs = &restricted.vertices;
    let k = vs.len();
    Ok(four_subsets(k).into_iter().all(|q| {
        let original = q.map(|i| vs[i as usize - 1]);
        chi_ascending(t, original) == chi_ascending(&small, q)
    }))
}
