//! Multilinearized monomials over `GF(q^r)`, their orbits under permutation and
//! Frobenius, and the universal symmetric multilinear map they assemble into.

use crate::code::binomial;
use crate::error::{Error, Result};
use crate::field::{ExtensionBasis, Field, SubfieldEmbedding};
use crate::matrix::Mat;
use itertools::Itertools;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A nonincreasing `t`-tuple over `Z/r`, compared lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NeckTuple {
    entries: Vec<usize>,
    #[serde(skip)]
    r: usize,
}

impl NeckTuple {
    pub fn new(r: usize, entries: Vec<usize>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be positive".into()));
        }
        if entries.iter().any(|&x| x >= r) {
            return Err(Error::InvalidParameter(format!("entries must lie in [0, {r})")));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("entries must be nonincreasing".into()));
        }
        Ok(NeckTuple { entries, r })
    }

    fn sorted(r: usize, mut entries: Vec<usize>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        NeckTuple { entries, r }
    }

    /// The equidistributed tuple `(⌊(t−1)r/t⌋, …, ⌊r/t⌋, 0)`.
    pub fn equidistributed(r: usize, t: usize) -> Self {
        NeckTuple { entries: (0..t).rev().map(|a| a * r / t).collect(), r }
    }

    /// All of `R_{r,t}` in increasing lexicographic order.
    pub fn all(r: usize, t: usize) -> Vec<NeckTuple> {
        let mut v: Vec<NeckTuple> = (0..r).combinations_with_replacement(t).map(|c| Self::sorted(r, c)).collect();
        v.sort();
        v
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Translate by `j` modulo `r` and re-sort.
    pub fn boxplus(&self, j: usize) -> Self {
        Self::sorted(self.r, self.entries.iter().map(|&x| (x + j) % self.r).collect())
    }

    /// `D_I = Σ q^{i_j}`.
    pub fn degree(&self, q: u64) -> u128 {
        self.entries.iter().map(|&i| (q as u128).pow(i as u32)).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.last() == Some(&0)
    }

    /// `g_1 = r − j_1`, `g_i = j_{i−1} − j_i`.
    pub fn gaps(&self) -> Result<Vec<usize>> {
        if !self.is_reduced() {
            return Err(Error::Precondition("gap sequence needs a reduced tuple (last entry 0)".into()));
        }
        let mut g = vec![self.r - self.entries[0]];
        g.extend(self.entries.windows(2).map(|w| w[0] - w[1]));
        Ok(g)
    }

    /// Inverse of [`gaps`](Self::gaps): `j_i = r − (g_1 + … + g_i)`.
    pub fn from_gaps(r: usize, gaps: &[usize]) -> Result<Self> {
        if gaps.iter().sum::<usize>() != r || gaps.first().is_none_or(|&g| g == 0) {
            return Err(Error::InvalidParameter("gaps must sum to r with a positive first gap".into()));
        }
        let entries = gaps.iter().scan(0, |acc, &g| {
            *acc += g;
            Some(r - *acc)
        });
        Self::new(r, entries.collect())
    }

    pub fn is_balanced(&self) -> bool {
        let (r, t) = (self.r, self.t());
        self.gaps().is_ok_and(|g| g.iter().all(|&x| x * t + t > r && x * t < r + t))
    }

    /// The derived sequence in `R_{t,u}`, `u = t⌈r/t⌉ − r`.
    pub fn derived(&self) -> Result<Self> {
        let (r, t) = (self.r, self.t());
        if r % t == 0 {
            return Err(Error::Precondition(format!("derived sequence needs t ∤ r, got r={r}, t={t}")));
        }
        if !self.is_balanced() {
            return Err(Error::Precondition("derived sequence needs a balanced reduced tuple".into()));
        }
        let lo = r / t;
        let b = self.gaps()?.iter().enumerate().filter(|(_, &g)| g == lo).map(|(a, _)| t - (a + 1)).collect();
        Self::new(t, b)
    }
}

impl fmt::Debug for NeckTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

/// A shift `j` with `I ⊞ j ≤ I_{r,t}`, scanning `j = 0, 1, …`.
pub fn necklace_representative(i: &NeckTuple) -> Option<(usize, NeckTuple)> {
    let bound = NeckTuple::equidistributed(i.r, i.t());
    (0..i.r).map(|j| (j, i.boxplus(j))).find(|(_, s)| *s <= bound)
}

/// `T = q^{⌊(t−1)r/t⌋} + … + q^{⌊r/t⌋} + 1`.
pub fn degree_bound(q: u64, r: usize, t: usize) -> u128 {
    NeckTuple::equidistributed(r, t).degree(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepRule {
    #[default]
    LexMin,
    MinDegree,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub representative: NeckTuple,
    pub size: usize,
    pub degree: u128,
    pub members: Vec<NeckTuple>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    pub q: u64,
    pub r: usize,
    pub t: usize,
    pub rule: RepRule,
    pub orbits: Vec<Orbit>,
}

/// Upper limit on `|R_{r,t}|` for orbit enumeration.
pub const ORBIT_LIMIT: u128 = 1_000_000;

impl OrbitTable {
    pub fn new(q: u64, r: usize, t: usize, rule: RepRule) -> Result<Self> {
        if r == 0 || t == 0 {
            return Err(Error::InvalidParameter("r and t must be positive".into()));
        }
        let size = binomial((r + t - 1) as u64, t as u64);
        if size > ORBIT_LIMIT {
            return Err(Error::TooLarge(format!("|R_{{{r},{t}}}| = {size}")));
        }
        let mut seen: HashMap<NeckTuple, ()> = HashMap::new();
        let mut orbits = Vec::new();
        for i in NeckTuple::all(r, t) {
            if seen.contains_key(&i) {
                continue;
            }
            let mut members: Vec<NeckTuple> = (0..r).map(|j| i.boxplus(j)).collect();
            members.sort();
            members.dedup();
            for m in &members {
                seen.insert(m.clone(), ());
            }
            let representative = match rule {
                RepRule::LexMin => members[0].clone(),
                RepRule::MinDegree => members.iter().min_by_key(|m| (m.degree(q), (*m).clone())).unwrap().clone(),
            };
            orbits.push(Orbit { degree: representative.degree(q), size: members.len(), representative, members });
        }
        orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
        Ok(OrbitTable { q, r, t, rule, orbits })
    }

    pub fn representatives(&self) -> Vec<NeckTuple> {
        self.orbits.iter().map(|o| o.representative.clone()).collect()
    }

    pub fn max_degree(&self) -> u128 {
        self.orbits.iter().map(|o| o.degree).max().unwrap_or(0)
    }
}

/// `Σ c_J x_1^{q^{j_1}} ⋯ x_t^{q^{j_t}}` over `GF(q^r)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinPoly {
    field: Arc<Field>,
    q: u64,
    t: usize,
    terms: Vec<(Vec<usize>, u32)>,
}

impl MultilinPoly {
    pub fn new(field: &Arc<Field>, q: u64, t: usize, terms: Vec<(Vec<usize>, u32)>) -> Result<Self> {
        if terms.iter().any(|(j, c)| j.len() != t || !field.contains(*c)) {
            return Err(Error::InvalidParameter("term arity or coefficient out of range".into()));
        }
        Ok(MultilinPoly { field: field.clone(), q, t, terms })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn terms(&self) -> &[(Vec<usize>, u32)] {
        &self.terms
    }

    pub fn degree(&self) -> u128 {
        self.terms.iter().map(|(j, _)| j.iter().map(|&i| (self.q as u128).pow(i as u32)).sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, xs: &[u32]) -> u32 {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (j, c)| {
            let m = j.iter().zip(xs).fold(*c, |p, (&i, &x)| f.mul(p, f.pow(x, self.q.pow(i as u32))));
            f.add(acc, m)
        })
    }
}

impl fmt::Debug for MultilinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.terms.iter().map(|(j, c)| format!("{c}*x^{:?}", j)).join(" + ");
        write!(f, "MultilinPoly[{}]({body})", self.field.header())
    }
}

impl Serialize for MultilinPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MultilinPoly", 4)?;
        st.serialize_field("field", &self.field.header())?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("terms", &self.terms)?;
        st.end()
    }
}

/// `S_I`: the sum of `M_J` over distinct permutations `J` of `I`.
pub fn build_si(q: u64, r: usize, i: &NeckTuple) -> Result<MultilinPoly> {
    if i.r() != r {
        return Err(Error::Mismatch(format!("tuple lives in Z/{}, expected Z/{r}", i.r())));
    }
    let field = Field::from_order(q.pow(r as u32))?;
    let t = i.t();
    let mut terms: Vec<Vec<usize>> = i.entries().iter().copied().permutations(t).collect();
    terms.sort();
    terms.dedup();
    MultilinPoly::new(&field, q, t, terms.into_iter().map(|j| (j, 1)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub q: u64,
    pub r: usize,
    pub t: usize,
    /// `dim S^t GF(q^r) = binom(r+t−1, t)`.
    pub dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub values_in_subfields: bool,
    pub bijective: bool,
    pub orbit_sizes: Vec<usize>,
}

/// Builds `Ψ = (S_I)_I` on the multiset basis and checks that it is bijective onto `Π GF(q^{r_I})`.
pub fn universal_map_check(q: u64, r: usize, t: usize) -> Result<UniversalReport> {
    if (q as u128).pow(r as u32) > 1 << 16 {
        return Err(Error::TooLarge(format!("GF({q}^{r})")));
    }
    let dim = binomial((r + t - 1) as u64, t as u64);
    if dim > 4096 {
        return Err(Error::TooLarge(format!("symmetric power of dimension {dim}")));
    }
    let table = OrbitTable::new(q, r, t, RepRule::LexMin)?;
    let emb = SubfieldEmbedding::of_orders(q, r as u32)?;
    let basis = ExtensionBasis::standard(&emb);
    let small = emb.small().clone();
    let mut parts = Vec::new();
    for o in &table.orbits {
        let si = build_si(q, r, &o.representative)?;
        let down = SubfieldEmbedding::of_orders(q.pow(o.size as u32), (r / o.size) as u32)?;
        let coords = ExtensionBasis::standard(&SubfieldEmbedding::of_orders(q, o.size as u32)?);
        parts.push((si, down, coords));
    }
    let target_dim: usize = table.orbits.iter().map(|o| o.size).sum();
    let mut in_subfields = true;
    let rows: Vec<Vec<u32>> = multisets_of(r, t)
        .into_iter()
        .map(|m| {
            let xs: Vec<u32> = m.iter().map(|&i| basis.basis()[i]).collect();
            let mut row = Vec::with_capacity(target_dim);
            for (si, down, coords) in &parts {
                match down.restrict(si.eval(&xs)) {
                    Some(y) => row.extend_from_slice(coords.coords(y)),
                    None => {
                        in_subfields = false;
                        row.extend(std::iter::repeat_n(0, coords.degree()));
                    }
                }
            }
            row
        })
        .collect();
    let rank = Mat::from_rows(&small, target_dim, &rows)?.rank();
    let dim = dim as usize;
    Ok(UniversalReport {
        q,
        r,
        t,
        dim,
        target_dim,
        rank,
        values_in_subfields: in_subfields,
        bijective: in_subfields && rank == dim && target_dim == dim,
        orbit_sizes: table.orbits.iter().map(|o| o.size).collect(),
    })
}

fn multisets_of(n: usize, t: usize) -> Vec<Vec<usize>> {
    (0..n).combinations_with_replacement(t).collect()
}
