//! Finite fields GF(p^e) with elements packed as integers.
//!
//! The element `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` of GF(p)[x]/(f) is stored
//! as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Fields are interned,
//! so the same `(p, modulus)` pair always yields the same `Arc<Field>`.

mod extension;
pub(crate) mod poly;

pub use extension::{dual_basis, normal_basis, ExtensionBasis, SubfieldEmbedding};

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

/// Log/antilog tables are built up to this order.
const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;
/// Packed elements and sums of two of them must fit in a `u32`.
const MAX_ORDER: u64 = 1 << 31;

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, `e + 1` coefficients low-to-high. For `e = 1` this is the placeholder `x`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
    primitive: u32,
}

type FieldKey = (u32, Vec<u32>);

fn registry() -> &'static Mutex<HashMap<FieldKey, Arc<Field>>> {
    static REG: OnceLock<Mutex<HashMap<FieldKey, Arc<Field>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// GF(p^e) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, e: u32) -> Result<Arc<Field>> {
        check_order(p, e)?;
        let modulus = default_modulus(p, e);
        Self::intern(p, modulus)
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn from_order(q: u64) -> Result<Arc<Field>> {
        if q < 2 {
            return Err(Error::InvalidField(format!("order {q} is not a prime power")));
        }
        let p = poly::prime_factors(q)[0];
        let mut e = 0;
        let mut m = q;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if m != 1 {
            return Err(Error::InvalidField(format!("order {q} is not a prime power")));
        }
        Self::new(p as u32, e)
    }

    /// Field with an explicit monic modulus given low-to-high (length `e + 1`).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Arc<Field>> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let e = (modulus.len() - 1) as u32;
        check_order(p, e)?;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        if e == 1 {
            // Degree one: the representation is integers mod p whatever the root.
            return Self::intern(p, vec![0, 1]);
        }
        let as64: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if !poly::is_irreducible(&as64, p as u64) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        Self::intern(p, modulus.to_vec())
    }

    /// Parses a header `"p^e/m"` where `m` is the packed modulus, e.g. `"2^2/7"`.
    pub fn parse_header(s: &str) -> Result<Arc<Field>> {
        let bad = || Error::InvalidField(format!("bad field header {s:?}"));
        let (pe, m) = s.trim().split_once('/').ok_or_else(bad)?;
        let (p, e) = pe.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        let mut m: u64 = m.parse().map_err(|_| bad())?;
        check_order(p, e)?;
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        for _ in 0..=e {
            coeffs.push((m % p as u64) as u32);
            m /= p as u64;
        }
        if m != 0 {
            return Err(bad());
        }
        Self::with_modulus(p, &coeffs)
    }

    fn intern(p: u32, modulus: Vec<u32>) -> Result<Arc<Field>> {
        let key = (p, modulus.clone());
        if let Some(f) = registry().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, modulus));
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(key).or_insert(field).clone())
    }

    fn build(p: u32, modulus: Vec<u32>) -> Field {
        let e = (modulus.len() - 1) as u32;
        let q = p.pow(e);
        let mut f = Field {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
            primitive: 0,
        };
        f.primitive = f.find_primitive();
        if (q as u64) <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..n {
                exp[i] = x;
                log[x as usize] = i as u32;
                x = f.mul_slow(x, f.primitive);
            }
            for i in n..2 * n {
                exp[i] = exp[i - n];
            }
            f.exp = exp;
            f.log = log;
            f.neg_table = (0..q).map(|a| f.neg_digits(a)).collect();
        }
        if e > 1 && p != 2 && (q as u64) <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = f.add_digits(a, b);
                }
            }
            f.add_table = t;
        }
        f
    }

    fn find_primitive(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let order = (self.q - 1) as u64;
        let factors = poly::prime_factors(order);
        (2..self.q)
            .find(|&g| factors.iter().all(|&l| self.pow_slow(g, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low-to-high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_packed(&self) -> u64 {
        self.modulus.iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn header(&self) -> String {
        format!("{}^{}/{}", self.p, self.e, self.modulus_packed())
    }

    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if !self.add_table.is_empty() {
            self.add_table[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if !self.neg_table.is_empty() {
            self.neg_table[a as usize]
        } else {
            self.neg_digits(a)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if !self.exp.is_empty() {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let e = self.e as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (e..2 * e - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for k in 0..e {
                let m = self.modulus[k] as u64;
                prod[deg - e + k] = (prod[deg - e + k] + (p - c) * m) % p;
            }
        }
        let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.from_digits(&d)
    }

    fn pow_slow(&self, a: u32, mut n: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            n >>= 1;
        }
        r
    }

    pub fn pow(&self, a: u32, n: u64) -> u32 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let ord = (self.q - 1) as u64;
            let l = (self.log[a as usize] as u64 * (n % ord)) % ord;
            return self.exp[l as usize];
        }
        let n = (n - 1) % (self.q as u64 - 1) + 1;
        self.pow_slow(a, n)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv_nonzero(a))
        }
    }

    /// Inverse of an element known to be nonzero.
    ///
    /// # Panics
    /// If `a == 0`.
    #[inline]
    pub fn inv_nonzero(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        if !self.exp.is_empty() {
            let ord = self.q - 1;
            self.exp[((ord - self.log[a as usize]) % ord) as usize]
        } else {
            self.pow_slow(a, self.q as u64 - 2)
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete log to the primitive base, `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 || a >= self.q {
            return None;
        }
        if !self.log.is_empty() {
            return Some(self.log[a as usize]);
        }
        let mut x = 1;
        for i in 0..self.q - 1 {
            if x == a {
                return Some(i);
            }
            x = self.mul(x, self.primitive);
        }
        None
    }

    /// `a^(qs^j)`: the j-th power of the Frobenius relative to the subfield of order `qs`.
    pub fn frobenius(&self, a: u32, qs: u32, j: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let ord = (self.q - 1) as u64;
        let ex = poly::pow_mod(qs as u64, j as u64, ord);
        // a^(qs^j) = a^(qs^j mod ord) for a != 0, but keep exponent positive.
        self.pow(a, if ex == 0 { ord } else { ex })
    }

    /// `dst -= c * src`, the row operation of elimination.
    #[inline]
    pub fn axpy_neg(&self, dst: &mut [u32], src: &[u32], c: u32) {
        if c == 0 {
            return;
        }
        if self.p == 2 && self.e == 1 {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        } else if self.e == 1 {
            let p = self.p as u64;
            let nc = (p - c as u64) % p;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u64 + nc * s as u64) % p) as u32;
            }
        } else {
            let nc = self.neg(c);
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = self.add(*d, self.mul(nc, s));
            }
        }
    }

    /// `dst += c * src`.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], src: &[u32], c: u32) {
        self.axpy_neg(dst, src, self.neg(c));
    }

    pub fn scale(&self, v: &mut [u32], c: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
    pub fn normalize(&self, v: &mut [u32]) -> bool {
        match v.iter().find(|&&x| x != 0) {
            Some(&lead) => {
                if lead != 1 {
                    let inv = self.inv_nonzero(lead);
                    self.scale(v, inv);
                }
                true
            }
            None => false,
        }
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn check_order(p: u32, e: u32) -> Result<()> {
    if !poly::is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if e == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    match (p as u64).checked_pow(e) {
        Some(q) if q <= MAX_ORDER => Ok(()),
        _ => Err(Error::InvalidField(format!("{p}^{e} exceeds the supported order {MAX_ORDER}"))),
    }
}

/// Smallest monic irreducible of degree `e`, ordered by packed value.
fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let q = (p as u64).pow(e);
    for low in 0..q {
        let mut coeffs: Vec<u64> = Vec::with_capacity(e as usize + 1);
        let mut m = low;
        for _ in 0..e {
            coeffs.push(m % p as u64);
            m /= p as u64;
        }
        coeffs.push(1);
        if poly::is_irreducible(&coeffs, p as u64) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.header())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

/// A field element carrying its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: Arc<Field>,
    value: u32,
}

impl FieldElem {
    pub fn new(field: &Arc<Field>, value: u32) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::InvalidParameter(format!("{value} is not an element of GF({})", field.q())));
        }
        Ok(FieldElem { field: field.clone(), value })
    }

    pub fn from_coeffs(field: &Arc<Field>, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() > field.e() as usize || coeffs.iter().any(|&c| c >= field.p()) {
            return Err(Error::InvalidParameter(format!("bad coefficients {coeffs:?}")));
        }
        Self::new(field, field.from_digits(coeffs))
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        FieldElem { field: field.clone(), value: 0 }
    }

    pub fn one(field: &Arc<Field>) -> Self {
        FieldElem { field: field.clone(), value: 1 }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElem { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> Self {
        self.with(self.field.pow(self.value, n))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
