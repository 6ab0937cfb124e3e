//! Constructors for the standard code families.

use crate::code::{LinearCode, Partition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Reed-Solomon code: evaluations of polynomials of degree `< k`.
///
/// Points default to `0, 1, …` in packed order. With `at_infinity`, a final
/// coordinate reads the coefficient of `x^(k-1)`.
pub fn reed_solomon(field: &Arc<Field>, n: usize, k: usize, points: Option<&[u32]>, at_infinity: bool) -> Result<LinearCode> {
    let finite = n.checked_sub(usize::from(at_infinity)).ok_or_else(|| invalid("n must be at least 1"))?;
    if k == 0 || k > n {
        return Err(invalid(format!("RS needs 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let pts: Vec<u32> = match points {
        Some(p) => p.to_vec(),
        None => {
            if finite as u64 > field.q() as u64 {
                return Err(invalid(format!("RS length {n} exceeds the {} available points", field.q())));
            }
            (0..finite as u32).collect()
        }
    };
    if pts.len() != finite || pts.iter().any(|&x| !field.contains(x)) {
        return Err(invalid("evaluation points must be field elements, one per finite coordinate"));
    }
    let mut sorted = pts.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("evaluation points must be distinct"));
    }
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut r: Vec<u32> = pts.iter().map(|&x| field.pow(x, i as u64)).collect();
            if at_infinity {
                r.push(u32::from(i == k - 1));
            }
            r
        })
        .collect();
    LinearCode::from_rows(field, n, &rows)
}

/// All exponent vectors of length `m` with entries `≤ cap` and total degree in `degrees`.
fn exponents(m: usize, cap: usize, degrees: std::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut e = vec![0usize; m];
    loop {
        if degrees.contains(&e.iter().sum()) {
            out.push(e.clone());
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            if e[i] < cap {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn evaluate_monomials(field: &Arc<Field>, points: &[Vec<u32>], monos: &[Vec<usize>]) -> Result<LinearCode> {
    let rows: Vec<Vec<u32>> = monos
        .iter()
        .map(|e| {
            points
                .iter()
                .map(|x| x.iter().zip(e).fold(1, |acc, (&xi, &ei)| field.mul(acc, field.pow(xi, ei as u64))))
                .collect()
        })
        .collect();
    LinearCode::from_rows(field, points.len(), &rows)
}

fn digits_of(mut idx: u64, q: u64, m: usize) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = (idx % q) as u32;
            idx /= q;
            d
        })
        .collect()
}

/// Points of `F_q^m`, the i-th having base-q digits of i as coordinates.
pub fn affine_points(field: &Field, m: usize) -> Result<Vec<Vec<u32>>> {
    let q = field.q() as u64;
    let total = q.checked_pow(m as u32).filter(|&t| t <= 1 << 20).ok_or_else(|| invalid("too many affine points"))?;
    Ok((0..total).map(|i| digits_of(i, q, m)).collect())
}

/// Reed-Muller code `RM_q(r, m)` of length `q^m`.
pub fn reed_muller(field: &Arc<Field>, r: usize, m: usize) -> Result<LinearCode> {
    if m == 0 {
        return Err(invalid("RM needs m ≥ 1"));
    }
    let pts = affine_points(field, m)?;
    let monos = exponents(m, field.q() as usize - 1, 0..=r);
    evaluate_monomials(field, &pts, &monos)
}

/// Points of `P^(m)` over `F_q`: first nonzero coordinate 1, in increasing order of `Σ x_i q^i`.
pub fn projective_points(field: &Field, m: usize) -> Result<Vec<Vec<u32>>> {
    let mut pts = affine_points(field, m + 1)?;
    pts.retain(|x| x.iter().find(|&&c| c != 0) == Some(&1));
    Ok(pts)
}

/// Projective Reed-Muller code `PRM_q(t, m)`: degree-t forms in `m + 1` variables on `P^m`.
pub fn projective_reed_muller(field: &Arc<Field>, t: usize, m: usize) -> Result<LinearCode> {
    if t == 0 {
        return Err(invalid("PRM needs t ≥ 1"));
    }
    let pts = projective_points(field, m)?;
    let monos = exponents(m + 1, t, t..=t);
    evaluate_monomials(field, &pts, &monos)
}

/// Simplex code of dimension `dim`, i.e. `PRM_q(1, dim - 1)`.
pub fn simplex(field: &Arc<Field>, dim: usize) -> Result<LinearCode> {
    if dim == 0 {
        return Err(invalid("simplex needs dimension ≥ 1"));
    }
    projective_reed_muller(field, 1, dim - 1)
}

/// `C(U)`: the span of the block indicators of a partition of a subset of `[n]`.
pub fn partition_code(field: &Arc<Field>, n: usize, partition: &Partition) -> Result<LinearCode> {
    if partition.ground().last().is_some_and(|&j| j >= n) {
        return Err(Error::Precondition(format!("partition exceeds length {n}")));
    }
    let rows: Vec<Vec<u32>> = partition.blocks().iter().map(|b| crate::word::indicator(n, b)).collect();
    LinearCode::from_rows(field, n, &rows)
}

/// `⌊n/d⌋` consecutive blocks of size `d`, with any remainder added to the last block.
pub fn tiling_partition(n: usize, d: usize) -> Result<Partition> {
    if d == 0 || d > n {
        return Err(invalid(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    let m = n / d;
    let blocks = (0..m).map(|i| if i + 1 == m { (i * d..n).collect() } else { (i * d..(i + 1) * d).collect() }).collect();
    Partition::new(blocks)
}

/// A uniformly random `[n, k]` code, reproducible from `seed`.
pub fn random(field: &Arc<Field>, n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_with(field, n, k, &mut rng)
}

/// Random `[n, k]` code drawn from a caller-provided generator.
pub fn random_with<R: Rng>(field: &Arc<Field>, n: usize, k: usize, rng: &mut R) -> Result<LinearCode> {
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    loop {
        let data: Vec<u32> = (0..n * k).map(|_| rng.gen_range(0..field.q())).collect();
        let g = Mat::from_flat(field, k, n, data)?;
        if g.rank() == k {
            return Ok(LinearCode::from_generator(&g));
        }
    }
}

/// A family member described by a string like `rs:q=5,n=5,k=3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: String,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for kv in rest.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| invalid(format!("expected key=value, found '{kv}'")))?;
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(invalid(format!("duplicate parameter '{k}'")));
            }
        }
        Ok(FamilySpec { kind: kind.trim().to_string(), params })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.params.get(key).ok_or_else(|| invalid(format!("{}: missing parameter '{key}'", self.kind)))?;
        v.parse().map_err(|_| invalid(format!("{}: bad value '{v}' for '{key}'", self.kind)))
    }

    fn get_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        if self.params.contains_key(key) {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(invalid(format!("{}: unknown parameter '{k}'", self.kind))),
            None => Ok(()),
        }
    }

    pub fn build(&self) -> Result<LinearCode> {
        let field = Field::from_order(self.get("q")?)?;
        match self.kind.as_str() {
            "rs" => {
                self.check_keys(&["q", "n", "k", "inf"])?;
                reed_solomon(&field, self.get("n")?, self.get("k")?, None, self.get_or("inf", 0u8)? == 1)
            }
            "rm" => {
                self.check_keys(&["q", "r", "m"])?;
                reed_muller(&field, self.get("r")?, self.get("m")?)
            }
            "prm" => {
                self.check_keys(&["q", "t", "m"])?;
                projective_reed_muller(&field, self.get("t")?, self.get("m")?)
            }
            "simplex" => {
                self.check_keys(&["q", "k"])?;
                simplex(&field, self.get("k")?)
            }
            "rep" | "parity" | "full" => {
                self.check_keys(&["q", "n"])?;
                let n = self.get("n")?;
                Ok(match self.kind.as_str() {
                    "rep" => LinearCode::repetition(&field, n),
                    "parity" => LinearCode::parity(&field, n),
                    _ => LinearCode::full(&field, n),
                })
            }
            "partition" => {
                self.check_keys(&["q", "n", "d", "blocks"])?;
                let n = self.get("n")?;
                let part = match (self.params.get("blocks"), self.params.get("d")) {
                    (Some(b), None) => parse_blocks(b)?,
                    (None, Some(_)) => tiling_partition(n, self.get("d")?)?,
                    _ => return Err(invalid("partition: give exactly one of 'blocks' or 'd'")),
                };
                partition_code(&field, n, &part)
            }
            "random" => {
                self.check_keys(&["q", "n", "k", "seed"])?;
                random(&field, self.get("n")?, self.get("k")?, self.get("seed")?)
            }
            other => Err(invalid(format!("unknown family '{other}'"))),
        }
    }
}

/// Blocks written as `0.1.2/3.4`.
fn parse_blocks(s: &str) -> Result<Partition> {
    let blocks = s
        .split('/')
        .map(|b| b.split('.').map(|x| x.parse::<usize>().map_err(|_| invalid(format!("bad block index '{x}'")))).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Partition::new(blocks).map_err(|e| Error::Precondition(e.to_string()))
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}:{}", self.kind, ps.join(","))
    }
}
