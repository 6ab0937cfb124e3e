//! Weight metrics computed by bounded exhaustive search.

use crate::code::{binomial, LinearCode};
use crate::error::{Error, Result};
use crate::word;
use itertools::Itertools;
use std::collections::HashSet;

/// Default cap on the number of words or subsets a search may visit.
pub const ENUMERATION_BUDGET: u128 = 1 << 24;
/// Largest length accepted by subset-lattice searches such as generalized weights.
pub const MAX_SUBSET_LENGTH: usize = 20;

/// Number of nonzero codewords up to scaling.
fn projective_count(q: u128, k: usize) -> u128 {
    (0..k as u32).map(|i| q.pow(i)).sum()
}

/// Calls `visit` on every nonzero codeword up to scaling; stops when it returns false.
///
/// Messages have a leading 1 and the free digits follow a modular Gray code, so
/// consecutive words differ by a multiple of a single generator row.
fn for_each_projective(code: &LinearCode, mut visit: impl FnMut(&[u32]) -> bool) {
    let f = code.field();
    let q = f.q();
    let rows: Vec<&[u32]> = code.rows().collect();
    let k = rows.len();
    for lead in 0..k {
        let mut w = rows[lead].to_vec();
        if !visit(&w) {
            return;
        }
        let free = &rows[lead + 1..];
        let mut digits = vec![0u32; free.len()];
        let total = (q as u64).pow(free.len() as u32);
        for step in 1..total {
            let mut s = step;
            let mut i = 0;
            while s % q as u64 == 0 {
                s /= q as u64;
                i += 1;
            }
            let old = digits[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            digits[i] = new;
            f.axpy(&mut w, free[i], f.sub(new, old));
            if !visit(&w) {
                return;
            }
        }
    }
}

fn dmin_by_enumeration(code: &LinearCode) -> usize {
    let mut best = code.n();
    for_each_projective(code, |w| {
        best = best.min(word::weight(w));
        best > 1
    });
    best
}

/// Subsets visited by [`dmin_by_supports`], which stops by the Singleton bound `|supp| − k + 1`.
fn support_search_cost(code: &LinearCode) -> u128 {
    let m = code.support().len() as u64;
    let top = m + 1 - code.k() as u64;
    (1..=top).fold(0u128, |acc, s| acc.saturating_add(crate::code::binomial(m, s)))
}

/// Smallest `s` such that some nonzero codeword vanishes off an `s`-subset of the support.
fn dmin_by_supports(code: &LinearCode) -> usize {
    let supp = code.support();
    let k = code.k();
    let g = code.generator();
    for s in 1..=supp.len() + 1 - k {
        for set in supp.iter().copied().combinations(s) {
            let off: Vec<usize> = (0..code.n()).filter(|j| set.binary_search(j).is_err()).collect();
            if g.select_columns(&off).rank() < k {
                return s;
            }
        }
    }
    unreachable!("the full support carries every codeword")
}

pub fn dmin(code: &LinearCode) -> Result<usize> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    let words = projective_count(code.field().q() as u128, code.k());
    let subsets = support_search_cost(code);
    if words <= ENUMERATION_BUDGET && words <= subsets.saturating_mul(code.k() as u128) {
        Ok(dmin_by_enumeration(code))
    } else if subsets <= ENUMERATION_BUDGET {
        Ok(dmin_by_supports(code))
    } else {
        Err(Error::TooLarge(format!("dmin of a [{}, {}] code over GF({})", code.n(), code.k(), code.field().q())))
    }
}

/// `A_0, …, A_n`: number of codewords of each weight.
pub fn weight_distribution(code: &LinearCode) -> Result<Vec<u128>> {
    let q = code.field().q() as u128;
    if projective_count(q, code.k()) > ENUMERATION_BUDGET {
        return Err(Error::TooLarge(format!("weight distribution over {} codewords", q.pow(code.k() as u32))));
    }
    let mut hist = vec![0u128; code.n() + 1];
    hist[0] = 1;
    for_each_projective(code, |w| {
        hist[word::weight(w)] += q - 1;
        true
    });
    Ok(hist)
}

/// `dmin(C^⊥)`, with `n + 1` for the full space.
pub fn ddual(code: &LinearCode) -> Result<usize> {
    if code.k() == code.n() {
        return Ok(code.n() + 1);
    }
    dmin(&code.dual())
}

/// `dmin(C^[t])` for `t = 1..=tmax`.
pub fn distance_sequence(code: &LinearCode, tmax: usize) -> Result<Vec<usize>> {
    code.powers(tmax).iter().skip(1).map(dmin).collect()
}

/// Generalized Hamming weights `w_1 < … < w_k`.
pub fn generalized_weights(code: &LinearCode) -> Result<Vec<usize>> {
    let n = code.n();
    if n > MAX_SUBSET_LENGTH {
        return Err(Error::TooLarge(format!("generalized weights at length {n} > {MAX_SUBSET_LENGTH}")));
    }
    let k = code.k();
    let g = code.generator();
    // best[s] = max dim C_S over |S| = s.
    let mut best = vec![0usize; n + 1];
    let mut done_at = n + 1;
    'sizes: for s in 1..=n {
        for set in (0..n).combinations(s) {
            let off: Vec<usize> = (0..n).filter(|j| set.binary_search(j).is_err()).collect();
            let d = k - g.select_columns(&off).rank();
            best[s] = best[s].max(d);
            if best[s] == k {
                done_at = s;
                break 'sizes;
            }
        }
    }
    Ok((1..=k).map(|i| (1..=n.min(done_at)).find(|&s| best[s] >= i).expect("w_k ≤ n")).collect())
}

/// Nonzero words of one factor up to scaling, materialized.
fn projective_list(code: &LinearCode) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_projective(code, |w| {
        out.push(w.to_vec());
        true
    });
    out
}

/// A product code `C_1 ∗ … ∗ C_t` with the rank function given by its factors.
#[derive(Clone, Debug)]
pub struct RankedProductStructure {
    factors: Vec<LinearCode>,
    ambient: LinearCode,
}

/// Cap on the number of rank-1 words kept in memory.
const RANK_ONE_LIMIT: usize = 1 << 16;
/// Cap on the size of each sumset level.
const SUMSET_LIMIT: usize = 1 << 20;

impl RankedProductStructure {
    pub fn new(factors: Vec<LinearCode>) -> Result<Self> {
        let ambient = LinearCode::star_all(&factors)?;
        Ok(RankedProductStructure { factors, ambient })
    }

    pub fn factors(&self) -> &[LinearCode] {
        &self.factors
    }

    pub fn ambient(&self) -> &LinearCode {
        &self.ambient
    }

    fn elementary_count(&self) -> u128 {
        self.factors
            .iter()
            .map(|c| projective_count(c.field().q() as u128, c.k()))
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    /// Nonzero elementary products `c_1 ∗ … ∗ c_t`, normalized and deduplicated.
    fn rank_one_words(&self, limit: usize) -> Result<HashSet<Vec<u32>>> {
        let f = self.ambient.field();
        let lists: Vec<Vec<Vec<u32>>> = self.factors.iter().map(projective_list).collect();
        let mut set = HashSet::new();
        for combo in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
            let mut w = combo[0].clone();
            for c in &combo[1..] {
                w = word::star(f, &w, c);
            }
            if f.normalize(&mut w) {
                set.insert(w);
                if set.len() > limit {
                    return Err(Error::TooLarge(format!("more than {limit} rank-one words")));
                }
            }
        }
        Ok(set)
    }

    /// `dmin,i`: least weight of a nonzero sum of at most `i` elementary products.
    pub fn dmin_rank(&self, i: usize) -> Result<usize> {
        if i == 0 {
            return Err(Error::InvalidParameter("rank index must be at least 1".into()));
        }
        if self.ambient.is_zero() {
            return Err(Error::ZeroCode);
        }
        if i >= self.ambient.k() {
            return dmin(&self.ambient);
        }
        if self.elementary_count() > ENUMERATION_BUDGET {
            return Err(Error::TooLarge("too many elementary products".into()));
        }
        if i == 1 {
            let f = self.ambient.field();
            let lists: Vec<Vec<Vec<u32>>> = self.factors.iter().map(projective_list).collect();
            let mut best = usize::MAX;
            for combo in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
                let mut w = combo[0].clone();
                for c in &combo[1..] {
                    w = word::star(f, &w, c);
                }
                match word::weight(&w) {
                    0 => {}
                    wt => best = best.min(wt),
                }
            }
            return Ok(best);
        }
        let f = self.ambient.field();
        let r1 = self.rank_one_words(RANK_ONE_LIMIT)?;
        let r1: Vec<Vec<u32>> = r1.into_iter().collect();
        let mut level: HashSet<Vec<u32>> = r1.iter().cloned().collect();
        for _ in 1..i {
            let mut next = level.clone();
            for s in &level {
                for r in &r1 {
                    for a in 1..f.q() {
                        let mut w = s.clone();
                        f.axpy(&mut w, r, a);
                        if f.normalize(&mut w) {
                            next.insert(w);
                        }
                    }
                }
                if next.len() > SUMSET_LIMIT {
                    return Err(Error::TooLarge(format!("rank-{i} sumset exceeds {SUMSET_LIMIT}")));
                }
            }
            level = next;
        }
        Ok(level.iter().map(|w| word::weight(w)).min().expect("rank-one words are nonzero"))
    }
}

/// `i(C_1, C_2)`: least weight of `c_1 ∗ c_2` over nonzero pairs, possibly 0.
pub fn intersection_number(c1: &LinearCode, c2: &LinearCode) -> Result<usize> {
    if c1.is_zero() || c2.is_zero() {
        return Err(Error::ZeroCode);
    }
    if c1.n() != c2.n() {
        return Err(Error::Mismatch(format!("lengths {} and {}", c1.n(), c2.n())));
    }
    let q = c1.field().q() as u128;
    if projective_count(q, c1.k()).saturating_mul(projective_count(q, c2.k())) > ENUMERATION_BUDGET {
        return Err(Error::TooLarge("intersection number search".into()));
    }
    let l2 = projective_list(c2);
    let f = c1.field();
    let mut best = c1.n();
    for_each_projective(c1, |a| {
        for b in &l2 {
            let w = a.iter().zip(b).filter(|(&x, &y)| f.mul(x, y) != 0).count();
            best = best.min(w);
        }
        best > 0
    });
    Ok(best)
}

/// Number of subsets of size at most `s` of an `n`-set.
pub fn subsets_up_to(n: usize, s: usize) -> u128 {
    (0..=s.min(n)).map(|i| binomial(n as u64, i as u64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn rs(q: u64, n: usize, k: usize) -> LinearCode {
        let f = Field::from_order(q).unwrap();
        let rows: Vec<Vec<u32>> = (0..k).map(|i| (0..n as u32).map(|x| f.pow(x, i as u64)).collect()).collect();
        LinearCode::from_rows(&f, n, &rows).unwrap()
    }

    /// Two [7,2] binary codes whose product has dmin 1 but no weight-1 elementary product.
    fn dmin_non_product_pair() -> (LinearCode, LinearCode) {
        let f = Field::from_order(2).unwrap();
        let c = LinearCode::from_rows(&f, 7, &[vec![1, 0, 0, 1, 1, 1, 1], vec![0, 1, 1, 1, 1, 0, 0]]).unwrap();
        let d = LinearCode::from_rows(&f, 7, &[vec![1, 0, 0, 1, 1, 1, 1], vec![0, 1, 1, 0, 0, 1, 1]]).unwrap();
        (c, d)
    }

    #[test]
    fn rs_and_repetition() {
        assert_eq!(dmin(&rs(5, 5, 3)).unwrap(), 3);
        let f = Field::from_order(3).unwrap();
        assert_eq!(dmin(&LinearCode::repetition(&f, 6)).unwrap(), 6);
        assert_eq!(dmin(&LinearCode::zero(&f, 3)), Err(Error::ZeroCode));
        assert_eq!(ddual(&LinearCode::full(&Field::from_order(2).unwrap(), 3)).unwrap(), 4);
        assert_eq!(ddual(&rs(7, 7, 3)).unwrap(), 4);
        let rep = LinearCode::from_rows(&f, 3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(ddual(&rep).unwrap(), 2);
    }

    #[test]
    fn both_dmin_strategies_agree() {
        for (q, n, k) in [(2, 2, 1), (3, 3, 2), (4, 4, 2), (5, 5, 2), (7, 7, 4)] {
            let c = rs(q, n, k);
            assert_eq!(dmin_by_enumeration(&c), dmin_by_supports(&c));
            let d = c.dual();
            assert_eq!(dmin_by_enumeration(&d), dmin_by_supports(&d));
        }
    }

    #[test]
    fn weight_distribution_rs() {
        // MDS [5,3]_5 weight enumerator from the closed MDS formula.
        assert_eq!(weight_distribution(&rs(5, 5, 3)).unwrap(), vec![1, 0, 0, 40, 40, 44]);
    }

    #[test]
    fn generalized_weights_mds() {
        assert_eq!(generalized_weights(&rs(5, 5, 3)).unwrap(), vec![3, 4, 5]);
        let f = Field::from_order(2).unwrap();
        let c = LinearCode::from_rows(&f, 5, &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 0]]).unwrap();
        assert_eq!(generalized_weights(&c).unwrap(), vec![2, 4]);
    }

    #[test]
    fn rank_constrained_distance() {
        let (c, d) = dmin_non_product_pair();
        let ps = RankedProductStructure::new(vec![c.clone(), d.clone()]).unwrap();
        let mut e = vec![0; 7];
        e[0] = 1;
        assert!(ps.ambient().contains(&e));
        assert_eq!(dmin(ps.ambient()).unwrap(), 1);
        assert_eq!(ps.dmin_rank(1).unwrap(), 2);
        assert_eq!(ps.dmin_rank(2).unwrap(), 1);
        let single = RankedProductStructure::new(vec![rs(5, 5, 2)]).unwrap();
        assert_eq!(single.dmin_rank(1).unwrap(), 4);
    }

    #[test]
    fn intersection_numbers() {
        let f = Field::from_order(3).unwrap();
        let rep = LinearCode::repetition(&f, 4);
        assert_eq!(intersection_number(&rep, &rep).unwrap(), 4);
        let a = LinearCode::from_rows(&f, 4, &[vec![1, 1, 0, 0]]).unwrap();
        let b = LinearCode::from_rows(&f, 4, &[vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(intersection_number(&a, &b).unwrap(), 0);
    }
}
