//! Construction D: `Λ = ε(C_0) + p ε(C_1) + … + p^{a−1} ε(C_{a−1}) + p^a Z^n`.

use crate::bounds::BoundReport;
use crate::code::parse_codes;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;
use itertools::Itertools;
use serde::Serialize;
use serde_json::json;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftKind {
    /// Representatives `0, 1, …, p−1`.
    Naive,
    /// Zero and the `(p−1)`-th roots of unity mod `p^a`.
    Teichmuller,
}

/// A set of representatives of `GF(p)` in `Z/p^a` with its carry tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lifting {
    p: u32,
    a: usize,
    kind: LiftKind,
    reps: Vec<u64>,
    /// `carries[j−1][x·p + y] = κ_j(x, y)` for `1 ≤ j ≤ a−1`.
    carries: Vec<Vec<u32>>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Lifting {
    pub fn new(p: u32, a: usize, kind: LiftKind) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if a == 0 {
            return Err(Error::InvalidParameter("depth a must be at least 1".into()));
        }
        let modulus = (p as u64).checked_pow(a as u32).filter(|&m| m <= 1 << 40).ok_or_else(|| Error::TooLarge(format!("{p}^{a}")))?;
        let reps: Vec<u64> = (0..p as u64)
            .map(|x| match kind {
                LiftKind::Naive => x,
                LiftKind::Teichmuller => pow_mod(x, (p as u64).pow(a as u32 - 1), modulus),
            })
            .collect();
        let mut lift = Lifting { p, a, kind, reps, carries: vec![vec![0; (p * p) as usize]; a - 1] };
        for x in 0..p {
            for y in 0..p {
                let s = (lift.reps[x as usize] + lift.reps[y as usize]) % modulus;
                let d = lift.digits(s);
                debug_assert_eq!(d[0], (x + y) % p);
                for j in 1..a {
                    lift.carries[j - 1][(x * p + y) as usize] = d[j];
                }
            }
        }
        Ok(lift)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.a
    }

    pub fn kind(&self) -> LiftKind {
        self.kind
    }

    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.a as u32)
    }

    pub fn epsilon(&self, x: u32) -> u64 {
        self.reps[x as usize]
    }

    pub fn representatives(&self) -> &[u64] {
        &self.reps
    }

    pub fn carry(&self, j: usize, x: u32, y: u32) -> u32 {
        self.carries[j - 1][(x * self.p + y) as usize]
    }

    /// Whether `κ_j` vanishes identically.
    pub fn carry_is_zero(&self, j: usize) -> bool {
        self.carries[j - 1].iter().all(|&c| c == 0)
    }

    /// `z = Σ p^i ε(d_i) mod p^a`, digits `d_0, …, d_{a−1}`.
    pub fn digits(&self, z: u64) -> Vec<u32> {
        let (p, m) = (self.p as u64, self.modulus());
        let mut z = z % m;
        let mut scale = 1;
        let mut out = Vec::with_capacity(self.a);
        for _ in 0..self.a {
            let d = ((z / scale) % p) as u32;
            out.push(d);
            z = (z + m * p - (self.reps[d as usize] * scale) % m) % m;
            scale *= p;
        }
        out
    }

    /// `ε(x)+ε(y) ≡ ε(x+y) + Σ_j p^j ε(κ_j(x,y)) mod p^a` for every pair.
    pub fn carry_identity_holds(&self) -> bool {
        let m = self.modulus();
        (0..self.p).cartesian_product(0..self.p).all(|(x, y)| {
            let lhs = (self.epsilon(x) + self.epsilon(y)) % m;
            let mut rhs = self.epsilon((x + y) % self.p);
            let mut scale = 1;
            for j in 1..self.a {
                scale *= self.p as u64;
                rhs = (rhs + scale * self.epsilon(self.carry(j, x, y))) % m;
            }
            lhs == rhs % m
        })
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// `C_0 ⊂ C_1 ⊂ … ⊂ C_a = GF(p)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeChain {
    codes: Vec<LinearCode>,
}

impl CodeChain {
    /// The last code must be the full space; containment is checked at every step.
    pub fn new(codes: Vec<LinearCode>) -> Result<Self> {
        let Some(top) = codes.last() else {
            return Err(Error::InvalidParameter("empty chain".into()));
        };
        if codes.len() < 2 {
            return Err(Error::InvalidParameter("a chain needs at least C_0 and the full space".into()));
        }
        if top.k() != top.n() {
            return Err(Error::Precondition("the last code of a chain must be the full space".into()));
        }
        if top.field().e() != 1 {
            return Err(Error::Precondition("chains live over a prime field".into()));
        }
        for (i, w) in codes.windows(2).enumerate() {
            if w[0].n() != w[1].n() || **w[0].field() != **w[1].field() {
                return Err(Error::Mismatch(format!("C_{i} and C_{} differ in length or field", i + 1)));
            }
            if !w[0].is_subcode_of(&w[1]) {
                return Err(Error::Precondition(format!("C_{i} is not contained in C_{}", i + 1)));
            }
        }
        Ok(CodeChain { codes })
    }

    /// Appends the full space when the list does not already end with it.
    pub fn completed(mut codes: Vec<LinearCode>) -> Result<Self> {
        if let Some(last) = codes.last() {
            if last.k() != last.n() {
                let full = LinearCode::full(last.field(), last.n());
                codes.push(full);
            }
        }
        Self::new(codes)
    }

    /// Code blocks back to back; the full space is appended if missing.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::completed(parse_codes(text)?)
    }

    pub fn codes(&self) -> &[LinearCode] {
        &self.codes
    }

    /// The depth `a`.
    pub fn depth(&self) -> usize {
        self.codes.len() - 1
    }

    pub fn n(&self) -> usize {
        self.codes[0].n()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.codes[0].field()
    }

    fn check_lift(&self, lift: &Lifting) -> Result<()> {
        if lift.depth() != self.depth() {
            return Err(Error::Mismatch(format!("lifting depth {} vs chain depth {}", lift.depth(), self.depth())));
        }
        if self.field().q() != lift.p() {
            return Err(Error::Mismatch(format!("chain over GF({}), lifting for p = {}", self.field().q(), lift.p())));
        }
        Ok(())
    }

    /// All codeword tuples `(c_0, …, c_{a−1})`, as elements of `Λ / p^a Z^n`.
    fn elements(&self, lift: &Lifting, budget: u128) -> Result<Vec<Vec<u64>>> {
        let p = lift.p() as u128;
        let count = self.codes[..self.depth()].iter().map(|c| p.pow(c.k() as u32)).product::<u128>();
        if count > budget {
            return Err(Error::TooLarge(format!("{count} lattice classes")));
        }
        let words: Vec<Vec<Vec<u32>>> = self.codes[..self.depth()].iter().map(all_words).collect();
        let m = lift.modulus();
        Ok(words
            .iter()
            .multi_cartesian_product()
            .map(|cs| {
                let mut z = vec![0u64; self.n()];
                let mut scale = 1;
                for c in cs {
                    for (zi, &x) in z.iter_mut().zip(c) {
                        *zi = (*zi + scale * lift.epsilon(x)) % m;
                    }
                    scale *= lift.p() as u64;
                }
                z
            })
            .collect())
    }

    fn contains(&self, lift: &Lifting, z: &[u64]) -> bool {
        let digits: Vec<Vec<u32>> = z.iter().map(|&x| lift.digits(x)).collect();
        (0..self.depth()).all(|i| self.codes[i].contains(&digits.iter().map(|d| d[i]).collect::<Vec<_>>()))
    }
}

fn all_words(c: &LinearCode) -> Vec<Vec<u32>> {
    let q = c.field().q();
    (0..c.k()).map(|_| 0..q).multi_cartesian_product().map(|m| c.encode(&m)).collect()
}

fn pair_budget() -> u128 {
    1 << 22
}

/// Carry criterion: `κ_j(C_i, C_i) ⊂ C_{i+j}` for all `i`, `j` with `i + j < a`.
pub fn is_lattice(chain: &CodeChain, lift: &Lifting) -> Result<BoundReport> {
    chain.check_lift(lift)?;
    let a = chain.depth();
    let mut rep = BoundReport::new("construction D lattice criterion", json!({"p": lift.p(), "a": a, "n": chain.n(), "lifting": lift.kind(), "dims": chain.codes().iter().map(LinearCode::k).collect::<Vec<_>>()}));
    let f = chain.field().clone();
    for i in 0..a {
        for j in 1..a - i {
            let label = format!("kappa_{j}(C_{i},C_{i}) in C_{}", i + j);
            if lift.carry_is_zero(j) {
                rep.condition(label, true);
                continue;
            }
            let ci = &chain.codes()[i];
            let target = &chain.codes()[i + j];
            let product_shape = (0..lift.p()).cartesian_product(0..lift.p()).all(|(x, y)| lift.carry(j, x, y) == f.mul(x, y));
            let bad = if product_shape {
                // κ_j is the product, so a pair of generator rows suffices.
                let rows: Vec<Vec<u32>> = ci.rows().map(<[u32]>::to_vec).collect();
                rows.iter().tuple_combinations().chain(rows.iter().map(|r| (r, r))).find(|(u, v)| !target.contains(&crate::word::star(&f, u, v))).map(|(u, v)| (u.clone(), v.clone()))
            } else {
                let words = all_words(ci);
                if (words.len() as u128).pow(2) > pair_budget() {
                    return Err(Error::TooLarge(format!("{} codeword pairs", words.len().pow(2))));
                }
                words
                    .iter()
                    .enumerate()
                    .flat_map(|(s, u)| words[s..].iter().map(move |v| (u, v)))
                    .find(|(u, v)| {
                        let k: Vec<u32> = u.iter().zip(v.iter()).map(|(&x, &y)| lift.carry(j, x, y)).collect();
                        !target.contains(&k)
                    })
                    .map(|(u, v)| (u.clone(), v.clone()))
            };
            if let Some((u, v)) = bad {
                if rep.witness.is_none() {
                    rep.witness = Some(json!({"i": i, "j": j, "u": u, "v": v}));
                }
                rep.condition(label, false);
            } else {
                rep.condition(label, true);
            }
        }
    }
    Ok(rep)
}

/// Exhaustive test of additive closure modulo `p^a`; returns a pair whose sum leaves `Λ`.
pub fn closure_counterexample(chain: &CodeChain, lift: &Lifting) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
    chain.check_lift(lift)?;
    let elems = chain.elements(lift, 1 << 12)?;
    let m = lift.modulus();
    for (s, x) in elems.iter().enumerate() {
        for y in &elems[s..] {
            let z: Vec<u64> = x.iter().zip(y).map(|(a, b)| (a + b) % m).collect();
            if !chain.contains(lift, &z) {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    /// `log_p` of the covolume, `Σ_i (n − k_i)`.
    pub volume_exponent: usize,
    pub volume: u128,
    pub min_norm: u64,
}

/// Covolume and minimum squared norm of a Construction D lattice.
pub fn lattice_invariants(chain: &CodeChain, lift: &Lifting) -> Result<LatticeInvariants> {
    if chain.n() > 8 {
        return Err(Error::TooLarge(format!("length {} exceeds 8", chain.n())));
    }
    if !is_lattice(chain, lift)?.holds {
        return Err(Error::Precondition("the chain does not give a lattice".into()));
    }
    let n = chain.n();
    let exponent: usize = chain.codes()[..chain.depth()].iter().map(|c| n - c.k()).sum();
    let m = lift.modulus();
    let shortest = |z: &[u64]| z.iter().map(|&x| x.min(m - x).pow(2)).sum::<u64>();
    let best = chain.elements(lift, 1 << 22)?.iter().filter(|z| z.iter().any(|&x| x != 0)).map(|z| shortest(z)).min();
    Ok(LatticeInvariants {
        volume_exponent: exponent,
        volume: (lift.p() as u128).pow(exponent as u32),
        min_norm: best.map_or(m * m, |b| b.min(m * m)),
    })
}
