//! Concatenation through trace forms whose tensor powers span the symmetric power.

use crate::bounds::{BoundReport, Relation};
use crate::code::{binomial, LinearCode};
use crate::error::{Error, Result};
use crate::field::{ExtensionBasis, SubfieldEmbedding};
use crate::matrix::{Echelon, Mat};
use crate::metrics::dmin;
use crate::multilinpoly::degree_bound;
use crate::symtensor::{multisets, trace_functional};
use serde_json::json;

/// `x ↦ (tr(a_1 x), …, tr(a_m x))` from `GF(q^r)` to `GF(q)^m`.
#[derive(Clone, Debug)]
pub struct SymbolMap {
    basis: ExtensionBasis,
    t: usize,
    elements: Vec<u32>,
}

impl SymbolMap {
    /// Trace forms given by `elements`; they must determine `x`.
    pub fn from_elements(emb: &SubfieldEmbedding, t: usize, elements: Vec<u32>) -> Result<Self> {
        let sm = SymbolMap { basis: ExtensionBasis::standard(emb), t, elements };
        if sm.inner_code()?.k() != emb.degree() as usize {
            return Err(Error::Precondition("symbol map is not injective".into()));
        }
        Ok(sm)
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        self.basis.embedding()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Inner length `m`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn power(&self) -> usize {
        self.t
    }

    pub fn apply(&self, x: u32) -> Vec<u32> {
        let emb = self.embedding();
        self.elements.iter().map(|&a| emb.trace(emb.big().mul(a, x))).collect()
    }

    /// The `[m, r]` image code `{φ(x)}` over `GF(q)`.
    pub fn inner_code(&self) -> Result<LinearCode> {
        let rows: Vec<Vec<u32>> = self.basis.basis().iter().map(|&b| self.apply(b)).collect();
        LinearCode::from_rows(self.embedding().small(), self.len(), &rows)
    }

    /// Rank of the `φ_j^{⊗t}` inside `Sym^t` of the dual.
    pub fn tensor_rank(&self) -> usize {
        let r = self.basis.degree();
        let monos = multisets(r, self.t);
        let f = self.embedding().small();
        let mut e = Echelon::new(f, monos.len());
        for &a in &self.elements {
            e.insert(power_row(f, &trace_functional(&self.basis, a), &monos));
        }
        e.rank()
    }
}

fn power_row(f: &crate::field::Field, l: &[u32], monos: &[Vec<usize>]) -> Vec<u32> {
    monos.iter().map(|m| m.iter().fold(1, |acc, &i| f.mul(acc, l[i]))).collect()
}

/// Greedy choice of `binom(r+t−1, t)` trace forms whose t-th powers span, scanning `GF(q^r)` in order.
pub fn build_symbol_map(q: u64, r: u32, t: usize) -> Result<SymbolMap> {
    if t == 0 || t as u64 > q {
        return Err(Error::Precondition(format!("need 1 ≤ t ≤ q, got t={t}, q={q}")));
    }
    let emb = SubfieldEmbedding::of_orders(q, r)?;
    let basis = ExtensionBasis::standard(&emb);
    let monos = multisets(r as usize, t);
    let target = binomial((r as usize + t - 1) as u64, t as u64) as usize;
    let small = emb.small().clone();
    let mut span = Echelon::new(&small, monos.len());
    let mut elements = Vec::new();
    for a in emb.big().elements().skip(1) {
        if span.insert(power_row(&small, &trace_functional(&basis, a), &monos)) {
            elements.push(a);
            if span.rank() == target {
                return SymbolMap::from_elements(&emb, t, elements);
            }
        }
    }
    Err(Error::Precondition(format!("trace forms span only {} of {target} dimensions", span.rank())))
}

/// `φ(C) ⊂ GF(q)^{nm}`, each symbol replaced by its image block.
pub fn concatenate(c: &LinearCode, sm: &SymbolMap) -> Result<LinearCode> {
    let emb = sm.embedding();
    if **c.field() != **emb.big() {
        return Err(Error::Mismatch(format!("outer code over GF({}), symbol map from GF({})", c.field().q(), emb.big().q())));
    }
    let big = emb.big();
    let mut rows = Vec::with_capacity(c.k() * sm.basis.degree());
    for g in c.rows() {
        for &b in sm.basis.basis() {
            rows.push(g.iter().flat_map(|&x| sm.apply(big.mul(b, x))).collect::<Vec<u32>>());
        }
    }
    let m = Mat::from_rows(emb.small(), c.n() * sm.len(), &rows)?;
    Ok(LinearCode::from_generator(&m))
}

/// Checks `dmin(φ(C)^[t]) ≥ dmin(C^[T])` and `dim φ(C) = r·dim C` for one outer code.
pub fn verify_power_bound(c: &LinearCode, sm: &SymbolMap, t: usize) -> Result<BoundReport> {
    let emb = sm.embedding();
    let (q, r) = (emb.small().q() as u64, emb.degree() as usize);
    if t != sm.power() {
        return Err(Error::Precondition(format!("symbol map built for t={}, asked for t={t}", sm.power())));
    }
    let cap_t = degree_bound(q, r, t);
    let big_t = usize::try_from(cap_t).map_err(|_| Error::TooLarge(format!("degree bound {cap_t}")))?;
    let concat = concatenate(c, sm)?;
    let mut rep = BoundReport::new("concatenated power distance", json!({"q": q, "r": r, "t": t, "T": big_t, "n": c.n(), "k": c.k(), "m": sm.len()}));
    rep.condition("t ≤ q", t as u64 <= q);
    rep.condition("forms span the symmetric power", sm.tensor_rank() == binomial((r + t - 1) as u64, t as u64) as usize);
    let lhs = dmin(&concat.power(t))?;
    let rhs = dmin(&c.power(big_t))?;
    rep.check("dmin(phi(C)^[t]) >= dmin(C^[T])", Relation::AtLeast, rhs as i64, Some(lhs as i64));
    rep.check("dim phi(C) = r dim C", Relation::Equal, (r * c.k()) as i64, Some(concat.k() as i64));
    Ok(rep)
}
