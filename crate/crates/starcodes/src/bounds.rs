//! Product bounds, each reported with the exact values it is checked against.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Mat};
use crate::metrics::{ddual, dmin, generalized_weights, RankedProductStructure};
use crate::word;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `exact ≤ bound`
    AtMost,
    /// `exact ≥ bound`
    AtLeast,
    Equal,
    /// A hypothesis: `exact` is 1 when it holds, 0 otherwise.
    Condition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub relation: Relation,
    pub bound: i64,
    pub exact: Option<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: Value,
    pub bound: Option<i64>,
    pub exact: Option<i64>,
    pub holds: bool,
    pub witness: Option<Value>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub(crate) fn new(name: &str, inputs: Value) -> Self {
        BoundReport {
            name: name.into(),
            inputs,
            bound: None,
            exact: None,
            holds: true,
            witness: None,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Adds a check; an unavailable exact value is recorded as a note and counts as holding.
    pub(crate) fn check(&mut self, label: impl Into<String>, relation: Relation, bound: i64, exact: Option<i64>) -> bool {
        let label = label.into();
        let holds = match (relation, exact) {
            (_, None) => {
                self.notes.push(format!("{label}: exact value not computed"));
                true
            }
            (Relation::AtMost, Some(e)) => e <= bound,
            (Relation::AtLeast, Some(e)) => e >= bound,
            (Relation::Equal, Some(e)) => e == bound,
            (Relation::Condition, Some(e)) => e == 1,
        };
        if self.bound.is_none() && relation != Relation::Condition {
            self.bound = Some(bound);
            self.exact = exact;
        }
        self.holds &= holds;
        self.checks.push(Check { label, relation, bound, exact, holds });
        holds
    }

    pub(crate) fn condition(&mut self, label: impl Into<String>, ok: bool) -> bool {
        self.check(label, Relation::Condition, 1, Some(i64::from(ok)))
    }

    /// Whether every hypothesis check passed.
    pub fn preconditions_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.relation == Relation::Condition).all(|c| c.holds)
    }

    /// Whether every inequality check passed.
    pub fn inequalities_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.relation != Relation::Condition).all(|c| c.holds)
    }
}

fn summary(c: &LinearCode) -> Value {
    json!({"q": c.field().q(), "n": c.n(), "k": c.k()})
}

/// Turns a search that may exceed its budget into an optional value.
fn soft(r: Result<usize>) -> Result<Option<i64>> {
    match r {
        Ok(v) => Ok(Some(v as i64)),
        Err(Error::TooLarge(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn same_shape(a: &LinearCode, b: &LinearCode) -> Result<()> {
    if a.n() != b.n() || **a.field() != **b.field() {
        return Err(Error::Mismatch("codes must share length and field".into()));
    }
    Ok(())
}

fn require_full_support(c: &LinearCode, which: &str) -> Result<()> {
    if c.has_full_support() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{which} must have full support")))
    }
}

/// `ddual(C1 ∗ C2) ≥ min(n + 1, d1⊥ + d2⊥ − 2)`.
pub fn ddual_product(c1: &LinearCode, c2: &LinearCode) -> Result<BoundReport> {
    same_shape(c1, c2)?;
    require_full_support(c1, "C1")?;
    require_full_support(c2, "C2")?;
    let n = c1.n() as i64;
    let (d1, d2) = (ddual(c1)? as i64, ddual(c2)? as i64);
    let mut r = BoundReport::new("ddual_product", json!([summary(c1), summary(c2)]));
    let exact = soft(ddual(&c1.star(c2)?))?;
    r.check("ddual(C1*C2) >= min(n+1, d1' + d2' - 2)", Relation::AtLeast, (n + 1).min(d1 + d2 - 2), exact);
    r.witness = Some(json!({"ddual1": d1, "ddual2": d2}));
    Ok(r)
}

/// `dim(C1 ∗ C2) ≥ min(|Supp C1|, k1 + d2⊥ − 2)`.
pub fn dim_product(c1: &LinearCode, c2: &LinearCode) -> Result<BoundReport> {
    same_shape(c1, c2)?;
    require_full_support(c2, "C2")?;
    let n1 = c1.support().len() as i64;
    let d2 = ddual(c2)? as i64;
    let mut r = BoundReport::new("dim_product", json!([summary(c1), summary(c2)]));
    let exact = c1.star(c2)?.k() as i64;
    r.check("dim(C1*C2) >= min(n1, k1 + d2' - 2)", Relation::AtLeast, n1.min(c1.k() as i64 + d2 - 2), Some(exact));
    Ok(r)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    if a <= 0 {
        0
    } else {
        (a + b - 1) / b
    }
}

/// Upper bounds on the regularity from the dual distance, the `(t0, a)` refinement, and `n_2 − k + 1`.
pub fn regularity_bounds(c: &LinearCode) -> Result<BoundReport> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    require_full_support(c, "C")?;
    let n = c.n() as i64;
    let r_exact = c.regularity()? as i64;
    let n2 = c.projective_length() as i64;
    let mut r = BoundReport::new("regularity", json!([summary(c)]));
    let dperp = ddual(c)? as i64;
    if dperp >= 3 {
        r.check("r(C) <= ceil((n-1)/(d'-2))", Relation::AtMost, ceil_div(n - 1, dperp - 2), Some(r_exact));
        let powers = c.powers(4);
        let mut best: Option<(i64, i64, i64)> = None;
        for a in 1..=3usize {
            let Some(da) = soft(ddual(&powers[a]))? else {
                r.notes.push(format!("ddual(C^[{a}]) not computed"));
                continue;
            };
            if da < 3 {
                continue;
            }
            for t0 in 0..=3usize {
                let k0 = powers[t0].k() as i64;
                let v = t0 as i64 + a as i64 * ceil_div(n - k0, da - 2);
                if best.is_none_or(|b| v < b.0) {
                    best = Some((v, t0 as i64, a as i64));
                }
            }
        }
        if let Some((v, t0, a)) = best {
            r.check(format!("r(C) <= t0 + a*ceil((n-k0)/(d_a'-2)) at t0={t0}, a={a}"), Relation::AtMost, v, Some(r_exact));
        }
    } else {
        r.notes.push("dual distance below 3: dual-distance bounds do not apply".into());
    }
    r.check("r(C) <= n2 - k + 1", Relation::AtMost, n2 - c.k() as i64 + 1, Some(r_exact));
    r.bound = r.checks.iter().map(|x| x.bound).min();
    r.exact = Some(r_exact);
    Ok(r)
}

/// `dmin(C1∗…∗Ct) ≤ dmin,1(C1∗…∗Ct) ≤ max(t − 1, n − Σ k_i + t)`.
pub fn singleton_product(codes: &[LinearCode]) -> Result<BoundReport> {
    let t = codes.len();
    if t < 2 {
        return Err(Error::InvalidParameter("product Singleton bound needs at least two codes".into()));
    }
    for c in &codes[1..] {
        same_shape(&codes[0], c)?;
    }
    if t >= 3 && !codes.iter().all(LinearCode::has_full_support) {
        return Err(Error::Precondition("for three or more factors all codes must have full support".into()));
    }
    let n = codes[0].n() as i64;
    let ksum: i64 = codes.iter().map(|c| c.k() as i64).sum();
    let bound = (t as i64 - 1).max(n - ksum + t as i64);
    let ps = RankedProductStructure::new(codes.to_vec())?;
    if ps.ambient().is_zero() {
        return Err(Error::Precondition("the product code is zero".into()));
    }
    let mut r = BoundReport::new("singleton_product", Value::Array(codes.iter().map(summary).collect()));
    let d = soft(dmin(ps.ambient()))?;
    let d1 = soft(ps.dmin_rank(1))?;
    r.check("dmin(prod) <= max(t-1, n - sum k + t)", Relation::AtMost, bound, d);
    r.check("dmin_1(prod) <= max(t-1, n - sum k + t)", Relation::AtMost, bound, d1);
    if let (Some(d), Some(d1)) = (d, d1) {
        r.check("dmin(prod) <= dmin_1(prod)", Relation::AtMost, d1, Some(d));
    }
    Ok(r)
}

/// Output of the greedy search for a weight-one elementary product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KashyapPair {
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub j: usize,
    pub c1: Vec<u32>,
    pub c2: Vec<u32>,
}

/// Greedy search over parity-check columns for `c1 ∈ C1`, `c2 ∈ C2` with `w(c1 ∗ c2) = 1`.
pub fn kashyap_pair(c1: &LinearCode, c2: &LinearCode) -> Result<KashyapPair> {
    same_shape(c1, c2)?;
    require_full_support(c1, "C1")?;
    require_full_support(c2, "C2")?;
    let n = c1.n();
    if c1.k() + c2.k() <= n {
        return Err(Error::Precondition(format!("k1 + k2 = {} must exceed n = {n}", c1.k() + c2.k())));
    }
    let f = c1.field();
    let h: [Mat; 2] = [c1.dual().generator().clone(), c2.dual().generator().clone()];
    let cols: [Vec<Vec<u32>>; 2] = [0, 1].map(|i| (0..n).map(|j| h[i].column(j)).collect());
    let mut spans = [Echelon::new(f, h[0].rows()), Echelon::new(f, h[1].rows())];
    let mut sets: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for j in 0..n {
        if spans[0].insert(cols[0][j].clone()) {
            sets[0].push(j);
        } else if spans[1].insert(cols[1][j].clone()) {
            sets[1].push(j);
        } else {
            let words = [0, 1].map(|i| {
                let mut idx = sets[i].clone();
                idx.push(j);
                let rel = h[i].select_columns(&idx).kernel();
                debug_assert_eq!(rel.rows(), 1);
                let mut w = vec![0; n];
                for (&p, &x) in idx.iter().zip(rel.row(0)) {
                    w[p] = x;
                }
                w
            });
            let [w1, w2] = words;
            debug_assert!(c1.contains(&w1) && c2.contains(&w2));
            debug_assert_eq!(word::weight(&word::star(f, &w1, &w2)), 1);
            let [a1, a2] = sets;
            return Ok(KashyapPair { a1, a2, j, c1: w1, c2: w2 });
        }
    }
    unreachable!("rk(H1) + rk(H2) < n forces a stop")
}

/// Generalized-weight inequalities for a product with a full-support factor.
pub fn weight_bounds(c1: &LinearCode, c2: &LinearCode) -> Result<BoundReport> {
    same_shape(c1, c2)?;
    require_full_support(c2, "C2")?;
    let n = c1.n() as i64;
    let d2 = ddual(c2)? as i64;
    let prod = c1.star(c2)?;
    let w1 = generalized_weights(c1)?;
    let wp = generalized_weights(&prod)?;
    let mut r = BoundReport::new("weight_bounds", json!([summary(c1), summary(c2)]));
    for i in 1..=c1.k() {
        let wi = w1[i - 1] as i64;
        let m = (wi - i as i64).min(d2 - 2);
        for j in 1..=(i as i64 + m) {
            let exact = wp.get(j as usize - 1).map(|&x| x as i64).unwrap_or(i64::MAX);
            r.check(format!("w_{j}(C1*C2) <= w_{i}(C1) - {i} - {m} + {j}"), Relation::AtMost, wi - i as i64 - m + j, Some(exact));
        }
    }
    if c1.has_full_support() {
        let wpd = generalized_weights(&prod.dual())?;
        let w1d = generalized_weights(&c1.dual())?;
        for i in 1..=(n - prod.k() as i64) {
            let idx = i + d2 - 2;
            if idx < 1 || idx as usize > w1d.len() {
                continue;
            }
            r.check(
                format!("w_{i}((C1*C2)') >= w_{idx}(C1')"),
                Relation::AtLeast,
                w1d[idx as usize - 1] as i64,
                Some(wpd[i as usize - 1] as i64),
            );
        }
    } else {
        r.notes.push("C1 lacks full support: dual-weight inequalities skipped".into());
    }
    if !c1.is_zero() {
        let ps = RankedProductStructure::new(vec![c1.clone(), c2.clone()])?;
        let d1 = dmin(c1)? as i64;
        let bound = 1.max(d1 - d2 + 2);
        for i in 1..=c1.k().min(2) {
            r.check(format!("dmin_{i}(C1*C2) <= max(1, dmin(C1) - d2' + 2)"), Relation::AtMost, bound, soft(ps.dmin_rank(i))?);
        }
    }
    Ok(r)
}

/// `0 ⊂ C_1 ⊂ … ⊂ C_ℓ = C` spanned by the prefixes of a basis sorted by weight.
pub fn weight_ordered_flag(c: &LinearCode) -> Vec<LinearCode> {
    let mut rows: Vec<&[u32]> = c.rows().collect();
    rows.sort_by_key(|r| word::weight(r));
    (1..=rows.len())
        .map(|i| {
            let pre: Vec<Vec<u32>> = rows[..i].iter().map(|r| r.to_vec()).collect();
            LinearCode::from_rows(c.field(), c.n(), &pre).expect("rows of length n")
        })
        .collect()
}

/// `dim(C ∗ C') ≥ Σ dim(π_{T_i}(C_i) ∗ π_{T_i}(C'))` for a filtration ending at `C`.
pub fn filtration(c: &LinearCode, cprime: &LinearCode, chain: &[LinearCode]) -> Result<BoundReport> {
    same_shape(c, cprime)?;
    if chain.last() != Some(c) {
        return Err(Error::Precondition("the filtration must end at C".into()));
    }
    let mut prev = LinearCode::zero(c.field(), c.n());
    let mut total = 0i64;
    let mut parts = Vec::new();
    for ci in chain {
        same_shape(c, ci)?;
        if !prev.is_subcode_of(ci) {
            return Err(Error::Precondition("the filtration is not nested".into()));
        }
        let old = prev.support();
        let t: Vec<usize> = ci.support().into_iter().filter(|j| old.binary_search(j).is_err()).collect();
        let d = if t.is_empty() { 0 } else { ci.project(&t).star(&cprime.project(&t))?.k() as i64 };
        parts.push(json!({"T": t, "dim": d}));
        total += d;
        prev = ci.clone();
    }
    let mut r = BoundReport::new("filtration", json!([summary(c), summary(cprime)]));
    r.check("dim(C*C') >= sum dim(pi_T(C_i) * pi_T(C'))", Relation::AtLeast, total, Some(c.star(cprime)?.k() as i64));
    r.witness = Some(Value::Array(parts));
    Ok(r)
}

fn orthogonal(a: &LinearCode, b: &LinearCode) -> bool {
    let f = a.field();
    a.rows().all(|x| b.rows().all(|y| f.dot(x, y) == 0))
}

/// Roos bound `dmin(C) ≥ dim A + ddual B − 1`, with its hypotheses evaluated.
pub fn roos(a: &LinearCode, b: &LinearCode, c: &LinearCode) -> Result<BoundReport> {
    same_shape(a, b)?;
    same_shape(a, c)?;
    let n = a.n() as i64;
    let ab = a.star(b)?;
    let db = ddual(b)? as i64;
    let mut r = BoundReport::new("roos", json!([summary(a), summary(b), summary(c)]));
    r.condition("A*B orthogonal to C", orthogonal(&ab, c));
    r.condition("A has full support", a.has_full_support());
    let da = if a.is_zero() { None } else { soft(dmin(a))? };
    match da {
        Some(da) => {
            r.condition("dim A + dmin A + ddual B >= n + 3", a.k() as i64 + da + db >= n + 3);
        }
        None => {
            r.condition("dim A + dmin A + ddual B >= n + 3", false);
            r.notes.push("dmin(A) unavailable".into());
        }
    }
    let bound = a.k() as i64 + db - 1;
    if c.is_zero() {
        r.notes.push("C is zero: dmin(C) is unbounded".into());
        r.bound = Some(bound);
    } else {
        r.check("dmin(C) >= dim A + ddual B - 1", Relation::AtLeast, bound, soft(dmin(c))?);
    }
    Ok(r)
}

/// Evaluates the four conditions for `(A, B)` to be a t-error-correcting pair for `C`.
pub fn ecp(a: &LinearCode, b: &LinearCode, c: &LinearCode, t: usize) -> Result<BoundReport> {
    same_shape(a, b)?;
    same_shape(a, c)?;
    let n = a.n() as i64;
    let t = t as i64;
    let mut r = BoundReport::new("ecp", json!({"codes": [summary(a), summary(b), summary(c)], "t": t}));
    r.condition("(i) A*B orthogonal to C", orthogonal(&a.star(b)?, c));
    r.condition("(ii) dim A > t", a.k() as i64 > t);
    let dc = if c.is_zero() { n + 1 } else { dmin(c)? as i64 };
    let da = if a.is_zero() { 0 } else { dmin(a)? as i64 };
    r.condition("(iii) dmin A > n - dmin C", da > n - dc);
    r.condition("(iv) ddual B > t", ddual(b)? as i64 > t);
    Ok(r)
}

/// Cap on the number of subspaces visited by [`fundamental_function`].
pub const SUBSPACE_BUDGET: u128 = 1 << 20;

/// Every subspace of `GF(q)^n` of dimension `k`, via its rref generator matrix.
fn for_each_subspace(field: &std::sync::Arc<Field>, n: usize, k: usize, mut visit: impl FnMut(LinearCode) -> bool) {
    use itertools::Itertools;
    let q = field.q();
    for pivots in (0..n).combinations(k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut g = Mat::zeros(field, k, n);
            for (i, &p) in pivots.iter().enumerate() {
                g.set(i, p, 1);
            }
            for (&(i, j), &v) in free.iter().zip(&vals) {
                g.set(i, j, v);
            }
            if !visit(LinearCode::from_generator(&g)) {
                return;
            }
            let mut pos = 0;
            while pos < vals.len() {
                vals[pos] += 1;
                if vals[pos] < q {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
    }
}

fn gaussian_binomial(q: u128, n: usize, k: usize) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k as u32 {
        num *= q.pow(n as u32 - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// `a_q^[t](n, d)` by exhaustive search, with a code achieving it.
pub fn fundamental_function(q: u64, n: usize, d: usize, t: usize) -> Result<(usize, LinearCode)> {
    if d == 0 || d > n || t == 0 {
        return Err(Error::InvalidParameter(format!("need 1 ≤ d ≤ n and t ≥ 1, got n={n}, d={d}, t={t}")));
    }
    let field = Field::from_order(q)?;
    let total: u128 = (0..=n).map(|k| gaussian_binomial(q as u128, n, k)).sum();
    if total > SUBSPACE_BUDGET {
        return Err(Error::TooLarge(format!("{total} subspaces of GF({q})^{n}")));
    }
    for k in (1..=n).rev() {
        let mut found = None;
        for_each_subspace(&field, n, k, |c| {
            let p = c.power(t);
            // A subspace whose power has dmin ≥ d.
            if p.is_zero() || dmin(&p).is_ok_and(|x| x >= d) {
                found = Some(c);
                false
            } else {
                true
            }
        });
        if let Some(c) = found {
            return Ok((k, c));
        }
    }
    Ok((0, LinearCode::zero(&field, n)))
}

/// `a_q^[t](n, d)` together with the known lower and upper bounds on it.
pub fn fundamental_report(q: u64, n: usize, d: usize, t: usize) -> Result<BoundReport> {
    let (a, witness) = fundamental_function(q, n, d, t)?;
    let (ni, di, ti) = (n as i64, d as i64, t as i64);
    let a = a as i64;
    let mut r = BoundReport::new("fundamental", json!({"q": q, "n": n, "d": d, "t": t}));
    let singleton = (ni - di) / ti + 1;
    if d <= t {
        r.check("a = floor(n/d) when d <= t", Relation::Equal, ni / di, Some(a));
    } else if n as u64 <= q + 1 {
        r.check("a = floor((n-d)/t) + 1 when t < d <= n <= q+1", Relation::Equal, singleton, Some(a));
    } else {
        r.check("a <= floor((n-d)/t) + 1", Relation::AtMost, singleton, Some(a));
    }
    r.check("a >= floor(n/d)", Relation::AtLeast, ni / di, Some(a));
    if n as u64 <= q + 1 {
        r.check("a >= floor((n-d)/t) + 1", Relation::AtLeast, singleton, Some(a));
    }
    let (next, _) = fundamental_function(q, n, d, t + 1)?;
    r.check("a^[t+1] <= a^[t]", Relation::AtMost, a, Some(next as i64));
    r.bound = Some(a);
    r.exact = Some(a);
    r.witness = Some(serde_json::to_value(&witness).expect("codes serialize"));
    Ok(r)
}
