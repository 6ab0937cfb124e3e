//! Linear codes in canonical form and their componentwise products.

mod io;
mod structure;

pub use io::{parse_code, parse_codes};
pub use structure::{Partition, SliceData, StableStructure};

use crate::error::{Error, Result};
use crate::field::{ExtensionBasis, Field, SubfieldEmbedding};
use crate::matrix::{Echelon, Mat};
use crate::word;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

/// A subspace of F_q^n, stored as its reduced row echelon basis.
///
/// Equality and hashing are structural on the basis, so two codes compare
/// equal exactly when they are the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    gen: Mat,
}

impl LinearCode {
    pub fn from_generator(gen: &Mat) -> Self {
        LinearCode { gen: gen.row_basis() }
    }

    pub fn from_rows(field: &Arc<Field>, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        Ok(Self::from_generator(&Mat::from_rows(field, n, rows)?))
    }

    fn from_echelon(e: &Echelon) -> Self {
        LinearCode { gen: e.to_mat() }
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> Self {
        LinearCode { gen: Mat::zeros(field, 0, n) }
    }

    pub fn full(field: &Arc<Field>, n: usize) -> Self {
        LinearCode { gen: Mat::identity(field, n) }
    }

    /// The all-ones code `⟨(1,…,1)⟩`, the unit for `∗`.
    pub fn repetition(field: &Arc<Field>, n: usize) -> Self {
        Self::indicator(field, n, &(0..n).collect::<Vec<_>>())
    }

    pub fn parity(field: &Arc<Field>, n: usize) -> Self {
        Self::repetition(field, n).dual()
    }

    /// `⟨1_S⟩`, or the zero code when `S` is empty.
    pub fn indicator(field: &Arc<Field>, n: usize, set: &[usize]) -> Self {
        Self::from_rows(field, n, &[word::indicator(n, set)]).expect("indicator is a valid word")
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Mat {
        &self.gen
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.gen.row_iter()
    }

    pub fn is_zero(&self) -> bool {
        self.k() == 0
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Mismatch(format!("lengths {} and {}", self.n(), other.n())));
        }
        if **self.field() != **other.field() {
            return Err(Error::Mismatch(format!("fields {} and {}", self.field(), other.field())));
        }
        Ok(())
    }

    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        self.gen.left_mul(msg)
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        if w.len() != self.n() {
            return false;
        }
        let mut v = w.to_vec();
        let f = self.field();
        // The basis is in rref, so reduce on pivot columns.
        for r in self.rows() {
            let pc = r.iter().position(|&x| x != 0).unwrap();
            let c = v[pc];
            if c != 0 {
                f.axpy_neg(&mut v, r, c);
            }
        }
        word::is_zero(&v)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n() == other.n() && self.rows().all(|r| other.contains(r))
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.gen.kernel())
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        Ok(LinearCode { gen: self.gen.rowspace_sum(&other.gen)? })
    }

    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        Ok(LinearCode { gen: self.gen.rowspace_intersect(&other.gen)? })
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.rows().any(|r| r[j] != 0)).collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.support().len() == self.n()
    }

    /// `C ∗ C'`: the span of all componentwise products of basis rows.
    pub fn star(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let s2 = other.support();
        let cap = self.support().iter().filter(|j| s2.binary_search(j).is_ok()).count();
        let f = self.field();
        let mut e = Echelon::new(f, self.n());
        'outer: for a in self.rows() {
            for b in other.rows() {
                e.insert(word::star(f, a, b));
                if e.rank() == cap {
                    break 'outer;
                }
            }
        }
        Ok(LinearCode::from_echelon(&e))
    }

    /// Product of several codes of the same length.
    pub fn star_all(codes: &[LinearCode]) -> Result<LinearCode> {
        let (first, rest) = codes.split_first().ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
        rest.iter().try_fold(first.clone(), |acc, c| acc.star(c))
    }

    /// `C^[t]`, with `C^[0]` the all-ones code of length n.
    pub fn power(&self, t: usize) -> LinearCode {
        let mut p = LinearCode::repetition(self.field(), self.n());
        for _ in 0..t {
            p = self.star(&p).expect("same length and field");
        }
        p
    }

    /// `C^[0], …, C^[tmax]`, each obtained from the previous by one product.
    pub fn powers(&self, tmax: usize) -> Vec<LinearCode> {
        let mut out = vec![LinearCode::repetition(self.field(), self.n())];
        for t in 0..tmax {
            let next = self.star(&out[t]).expect("same length and field");
            out.push(next);
        }
        out
    }

    pub fn dim_sequence(&self, tmax: usize) -> Vec<usize> {
        self.powers(tmax).iter().map(|c| c.k()).collect()
    }

    /// First `r` with `dim C^[r] = dim C^[r+1]`.
    pub fn regularity(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let cap = (self.projective_length() + 1).saturating_sub(self.k());
        let mut cur = LinearCode::repetition(self.field(), self.n());
        for r in 0..=cap {
            let next = self.star(&cur)?;
            if next.k() == cur.k() {
                return Ok(r);
            }
            cur = next;
        }
        Err(Error::RegularityCap(cap))
    }

    /// `dim I^t(C) = binom(k+t-1, t) - dim C^[t]`.
    pub fn dim_it(&self, t: usize) -> u128 {
        if t == 0 {
            return 0;
        }
        let k = self.k();
        if k == 0 {
            return 0;
        }
        binomial((k + t - 1) as u64, t as u64) - self.power(t).k() as u128
    }

    /// Number of proportionality classes of nonzero columns, `n_2`.
    pub fn projective_length(&self) -> usize {
        self.repeated_columns().len()
    }

    /// `n_0, …, n_imax` where `n_i` is the codimension of the span of dual words of weight ≤ i.
    pub fn n_i_sequence(&self, imax: usize) -> Result<Vec<usize>> {
        let n = self.n();
        let f = self.field();
        let mut out = vec![n];
        let mut e = Echelon::new(f, n);
        let full_rank = n - self.k();
        for i in 1..=imax {
            let s = i.min(n);
            if e.rank() < full_rank {
                let count = binomial(n as u64, s as u64);
                if count > 1 << 22 {
                    return Err(Error::TooLarge(format!("{count} supports of size {s}")));
                }
                for subset in itertools::Itertools::combinations(0..n, s) {
                    let k = self.gen.select_columns(&subset).kernel();
                    for r in k.row_iter() {
                        let mut w = vec![0; n];
                        for (&j, &x) in subset.iter().zip(r) {
                            w[j] = x;
                        }
                        e.insert(w);
                    }
                    if e.rank() == full_rank {
                        break;
                    }
                }
            }
            out.push(n - e.rank());
        }
        Ok(out)
    }

    /// Column permutation: position `j` of `C^σ` reads position `σ[j]` of `C`.
    pub fn permuted(&self, sigma: &[usize]) -> LinearCode {
        LinearCode::from_generator(&self.gen.select_columns(sigma))
    }

    /// Projection `π_S(C)` onto the coordinates of `S`, as a code of length `|S|`.
    pub fn project(&self, set: &[usize]) -> LinearCode {
        LinearCode::from_generator(&self.gen.select_columns(set))
    }

    /// `C ∩ ι_S(F^S)`: codewords vanishing outside `S`, kept at length n.
    pub fn subcode_supported_in(&self, set: &[usize]) -> LinearCode {
        let mut inside = vec![false; self.n()];
        for &j in set {
            inside[j] = true;
        }
        let outside: Vec<usize> = (0..self.n()).filter(|&j| !inside[j]).collect();
        let combos = self.gen.select_columns(&outside).transpose().kernel();
        let f = self.field();
        let mut e = Echelon::new(f, self.n());
        for c in combos.row_iter() {
            e.insert(self.encode(c));
        }
        LinearCode::from_echelon(&e)
    }

    /// The same generator matrix read over an extension field.
    pub fn extend_scalars(&self, emb: &SubfieldEmbedding) -> Result<LinearCode> {
        if **self.field() != **emb.small() {
            return Err(Error::Mismatch("code is not over the embedding's small field".into()));
        }
        let data = self.gen.data().iter().map(|&x| emb.embed(x)).collect();
        Ok(LinearCode { gen: Mat::from_flat(emb.big(), self.k(), self.n(), data)? })
    }

    /// `tr(C')`: the small-field span of componentwise traces of `λ c` for λ in a basis.
    pub fn trace_descent(&self, emb: &SubfieldEmbedding) -> Result<LinearCode> {
        if **self.field() != **emb.big() {
            return Err(Error::Mismatch("code is not over the embedding's big field".into()));
        }
        let basis = ExtensionBasis::standard(emb);
        let big = emb.big();
        let mut e = Echelon::new(emb.small(), self.n());
        for r in self.rows() {
            for &l in basis.basis() {
                e.insert(r.iter().map(|&x| emb.trace(big.mul(l, x))).collect());
            }
        }
        Ok(LinearCode::from_echelon(&e))
    }

    /// An extension GF(q^d), d ≤ k, and a word of `C ⊗ GF(q^d)` whose support is `Supp(C)`.
    pub fn full_support_word(&self) -> Result<(SubfieldEmbedding, Vec<u32>)> {
        const SEARCH_BUDGET: u64 = 1 << 16;
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let f = self.field();
        let k = self.k();
        let target = self.support().len();
        for d in 1..k as u32 {
            let Ok(emb) = SubfieldEmbedding::new(f, &Field::new(f.p(), f.e() * d)?) else {
                break;
            };
            let qd = emb.big().q() as u64;
            if qd.checked_pow(k as u32 - 1).is_none_or(|c| c > SEARCH_BUDGET) {
                break;
            }
            let ext = self.extend_scalars(&emb)?;
            let found = projective_words(&ext).find(|w| word::weight(w) == target);
            if let Some(w) = found {
                return Ok((emb, w));
            }
        }
        let emb = SubfieldEmbedding::new(f, &Field::new(f.p(), f.e() * k as u32)?)?;
        let basis = ExtensionBasis::standard(&emb);
        let big = emb.big();
        let mut w = vec![0; self.n()];
        for (r, &l) in self.rows().zip(basis.basis()) {
            for (wj, &x) in w.iter_mut().zip(r) {
                *wj = big.add(*wj, big.mul(l, emb.embed(x)));
            }
        }
        Ok((emb, w))
    }

    /// All σ ∈ S_n with `C^σ = C`, by brute force.
    pub fn symmetry_group(&self, max_n: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.n();
        if n > max_n {
            return Err(Error::TooLarge(format!("symmetry group search at length {n} > {max_n}")));
        }
        Ok(itertools::Itertools::permutations(0..n, n).filter(|s| self.permuted(s) == *self).collect())
    }
}

/// Nonzero codewords up to scaling (first nonzero message digit equal to 1).
pub fn projective_words(code: &LinearCode) -> impl Iterator<Item = Vec<u32>> + '_ {
    let k = code.k();
    let q = code.field().q();
    (0..k).flat_map(move |lead| {
        let total = (q as u64).pow((k - lead - 1) as u32);
        (0..total).map(move |mut idx| {
            let mut msg = vec![0u32; k];
            msg[lead] = 1;
            for m in msg.iter_mut().skip(lead + 1) {
                *m = (idx % q as u64) as u32;
                idx /= q as u64;
            }
            code.encode(&msg)
        })
    })
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code over {}", self.n(), self.k(), self.field())?;
        for r in self.rows() {
            write!(f, "\n  {r:?}")?;
        }
        Ok(())
    }
}

impl Serialize for LinearCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinearCode", 4)?;
        st.serialize_field("field", &self.field().header())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("k", &self.k())?;
        st.serialize_field("generator", &self.gen.to_rows())?;
        st.end()
    }
}
