//! Symmetric multilinear maps over GF(q), the Frobenius exchange condition,
//! and small exact complexity searches.

use crate::error::{Error, Result};
use crate::field::{ExtensionBasis, Field, SubfieldEmbedding};
use crate::matrix::{Echelon, Mat};
use itertools::Itertools;
use serde::{Serialize, Serializer};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// Nondecreasing `t`-tuples over `[n]`, in lexicographic order.
pub fn multisets(n: usize, t: usize) -> Vec<Vec<usize>> {
    (0..n).combinations_with_replacement(t).collect()
}

/// Every `t`-tuple over `[n]`, first index most significant.
fn tuples(n: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(t as u32)).map(move |mut idx| {
        let mut v = vec![0; t];
        for slot in v.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        v
    })
}

/// Nonzero vectors of `GF(q)^n` with first nonzero coordinate 1.
pub fn projective_vectors(field: &Field, n: usize) -> Vec<Vec<u32>> {
    let q = field.q() as usize;
    tuples(q, n)
        .map(|v| v.into_iter().map(|x| x as u32).collect::<Vec<u32>>())
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

/// A symmetric t-multilinear map `V^t → W`, with `V = GF(q)^rv` and `W = GF(q)^s`.
///
/// Stored by its values on basis multisets.
#[derive(Clone)]
pub struct SymMultiForm {
    field: Arc<Field>,
    rv: usize,
    s: usize,
    t: usize,
    monos: Arc<Vec<Vec<usize>>>,
    index: Arc<HashMap<Vec<usize>, usize>>,
    coeffs: Vec<Vec<u32>>,
}

impl SymMultiForm {
    pub fn zero(field: &Arc<Field>, rv: usize, s: usize, t: usize) -> Self {
        Self::from_fn(field, rv, s, t, |_| vec![0; s])
    }

    /// `f` gives the value on the basis multiset `(e_{i1}, …, e_{it})`.
    pub fn from_fn(field: &Arc<Field>, rv: usize, s: usize, t: usize, f: impl Fn(&[usize]) -> Vec<u32>) -> Self {
        let monos = multisets(rv, t);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let coeffs = monos.iter().map(|m| f(m)).collect();
        SymMultiForm { field: field.clone(), rv, s, t, monos: Arc::new(monos), index: Arc::new(index), coeffs }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn v_dim(&self) -> usize {
        self.rv
    }

    pub fn w_dim(&self) -> usize {
        self.s
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monos
    }

    /// Value on basis vectors given in any order.
    pub fn coeff(&self, idx: &[usize]) -> &[u32] {
        let mut m = idx.to_vec();
        m.sort_unstable();
        &self.coeffs[self.index[&m]]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&x| x == 0)
    }

    /// The `w`-th output coordinate as a vector over the multiset basis.
    pub fn component(&self, w: usize) -> Vec<u32> {
        self.coeffs.iter().map(|c| c[w]).collect()
    }

    /// `f(v_1, …, v_t)` by full multilinear expansion.
    pub fn eval(&self, vs: &[Vec<u32>]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0; self.s];
        for tup in tuples(self.rv, self.t) {
            let c = tup.iter().zip(vs).fold(1, |acc, (&j, v)| f.mul(acc, v[j]));
            if c != 0 {
                f.axpy(&mut out, self.coeff(&tup), c);
            }
        }
        out
    }

    /// The i-th Frobenius reduced map (1-based), collapsing q copies of slot i.
    pub fn frobenius_reduced(&self, i: usize) -> Result<MultiForm> {
        let q = self.field.q() as usize;
        if self.t < q {
            return Err(Error::Precondition(format!("arity {} is below q = {q}", self.t)));
        }
        let arity = self.t - q + 1;
        if i == 0 || i > arity {
            return Err(Error::InvalidParameter(format!("reduction slot must lie in 1..={arity}")));
        }
        let entries = tuples(self.rv, arity)
            .map(|tup| {
                let mut m = tup.clone();
                m.extend(std::iter::repeat_n(tup[i - 1], q - 1));
                self.coeff(&m).to_vec()
            })
            .collect();
        Ok(MultiForm { field: self.field.clone(), rv: self.rv, s: self.s, arity, entries })
    }

    /// Whether the first two Frobenius reduced maps agree, with the first differing basis tuple.
    pub fn frobenius_symmetry(&self) -> FrobeniusCheck {
        if self.t <= self.field.q() as usize {
            return FrobeniusCheck { symmetric: true, witness: None };
        }
        let a = self.frobenius_reduced(1).expect("t > q");
        let b = self.frobenius_reduced(2).expect("t > q");
        let witness = tuples(self.rv, a.arity).zip(a.entries.iter().zip(&b.entries)).find(|(_, (x, y))| x != y).map(|(t, _)| t);
        FrobeniusCheck { symmetric: witness.is_none(), witness }
    }

    pub fn is_frobenius_symmetric(&self) -> bool {
        self.frobenius_symmetry().symmetric
    }

    /// Row of `l^{⊗t}` over the multiset basis.
    fn power_row(&self, l: &[u32]) -> Vec<u32> {
        let f = &self.field;
        self.monos.iter().map(|m| m.iter().fold(1, |acc, &i| f.mul(acc, l[i]))).collect()
    }

    /// A decomposition `Σ l_j^{⊗t} ⊗ w_j`, or `None` when none exists.
    pub fn symmetric_algorithm(&self) -> Result<Option<SymAlgorithm>> {
        let count = (self.field.q() as u128).pow(self.rv as u32);
        if count > 1 << 16 {
            return Err(Error::TooLarge(format!("{count} linear forms")));
        }
        let mut span = Echelon::new(&self.field, self.monos.len());
        let mut forms = Vec::new();
        let mut rows = Vec::new();
        for l in projective_vectors(&self.field, self.rv) {
            let row = self.power_row(&l);
            if span.insert(row.clone()) {
                forms.push(l);
                rows.push(row);
            }
        }
        let basis = Mat::from_rows(&self.field, self.monos.len(), &rows)?;
        let mut outputs = vec![vec![0u32; self.s]; forms.len()];
        for w in 0..self.s {
            let Some(x) = basis.solve(&self.component(w)) else {
                return Ok(None);
            };
            for (o, xj) in outputs.iter_mut().zip(x) {
                o[w] = xj;
            }
        }
        let (forms, outputs): (Vec<_>, Vec<_>) = forms.into_iter().zip(outputs).filter(|(_, o)| o.iter().any(|&x| x != 0)).unzip();
        Ok(Some(SymAlgorithm { field: self.field.clone(), t: self.t, forms, outputs }))
    }
}

impl PartialEq for SymMultiForm {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && (self.rv, self.s, self.t) == (other.rv, other.s, other.t) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for SymMultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym^{}(GF({})^{} -> GF({})^{})", self.t, self.field.q(), self.rv, self.field.q(), self.s)?;
        for (m, c) in self.monos.iter().zip(&self.coeffs) {
            if c.iter().any(|&x| x != 0) {
                write!(f, " {m:?}:{c:?}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCheck {
    pub symmetric: bool,
    /// Basis indices `(j_1, …)` where the first two reduced maps differ.
    pub witness: Option<Vec<usize>>,
}

/// A multilinear map `V^arity → W` stored on all basis tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiForm {
    field: Arc<Field>,
    rv: usize,
    s: usize,
    arity: usize,
    entries: Vec<Vec<u32>>,
}

impl MultiForm {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entry(&self, idx: &[usize]) -> &[u32] {
        let pos = idx.iter().fold(0, |acc, &j| acc * self.rv + j);
        &self.entries[pos]
    }

    pub fn eval(&self, vs: &[Vec<u32>]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0; self.s];
        for (tup, e) in tuples(self.rv, self.arity).zip(&self.entries) {
            let c = tup.iter().zip(vs).fold(1, |acc, (&j, v)| f.mul(acc, v[j]));
            if c != 0 {
                f.axpy(&mut out, e, c);
            }
        }
        out
    }

    /// Invariance under every permutation of the slots.
    pub fn is_symmetric(&self) -> bool {
        tuples(self.rv, self.arity).all(|tup| {
            let mut s = tup.clone();
            s.sort_unstable();
            self.entry(&tup) == self.entry(&s)
        })
    }
}

/// `Σ_j l_j(v_1)⋯l_j(v_t) · w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymAlgorithm {
    field: Arc<Field>,
    t: usize,
    pub forms: Vec<Vec<u32>>,
    pub outputs: Vec<Vec<u32>>,
}

impl SymAlgorithm {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn eval(&self, vs: &[Vec<u32>], s: usize) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0; s];
        for (l, w) in self.forms.iter().zip(&self.outputs) {
            let c = vs.iter().fold(1, |acc, v| f.mul(acc, f.dot(l, v)));
            f.axpy(&mut out, w, c);
        }
        out
    }

    /// Agreement with `f` on every basis multiset, which span the symmetric inputs.
    pub fn computes(&self, form: &SymMultiForm) -> bool {
        let n = form.v_dim();
        let unit = |i: usize| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        };
        self.t == form.arity()
            && form.monomials().iter().all(|m| {
                let vs: Vec<Vec<u32>> = m.iter().map(|&i| unit(i)).collect();
                self.eval(&vs, form.w_dim()) == form.coeff(m)
            })
    }
}

impl Serialize for SymAlgorithm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SymAlgorithm", 4)?;
        st.serialize_field("field", &self.field.header())?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("length", &self.forms.len())?;
        let terms: Vec<(&Vec<u32>, &Vec<u32>)> = self.forms.iter().zip(&self.outputs).collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn extension(q: u64, k: u32) -> Result<ExtensionBasis> {
    let emb = SubfieldEmbedding::of_orders(q, k)?;
    Ok(ExtensionBasis::standard(&emb))
}

/// Form on `GF(q^k)` over `GF(q)` given by a big-field valued symmetric function, output in coordinates.
pub fn extension_form(basis: &ExtensionBasis, t: usize, f: impl Fn(&[u32]) -> u32) -> SymMultiForm {
    let k = basis.degree();
    SymMultiForm::from_fn(basis.embedding().small(), k, k, t, |m| {
        let xs: Vec<u32> = m.iter().map(|&i| basis.basis()[i]).collect();
        basis.coords(f(&xs)).to_vec()
    })
}

/// Multiplication `(x, y) ↦ xy` of `GF(q^k)` as a symmetric bilinear map over `GF(q)`.
pub fn mult_tensor(q: u64, k: u32) -> Result<SymMultiForm> {
    let b = extension(q, k)?;
    let big = b.embedding().big().clone();
    Ok(extension_form(&b, 2, |xs| big.mul(xs[0], xs[1])))
}

/// `(x_1, …, x_t) ↦ x_1⋯x_t` on `GF(q^k)`.
pub fn product_form(q: u64, k: u32, t: usize) -> Result<SymMultiForm> {
    let b = extension(q, k)?;
    let big = b.embedding().big().clone();
    Ok(extension_form(&b, t, |xs| xs.iter().fold(1, |a, &x| big.mul(a, x))))
}

/// `Σ_i x_i^q Π_{j≠i} x_j`, symmetric and t-multilinear over `GF(q)`.
pub fn frobenius_twisted_product(q: u64, k: u32, t: usize) -> Result<SymMultiForm> {
    let b = extension(q, k)?;
    let big = b.embedding().big().clone();
    Ok(extension_form(&b, t, |xs| {
        (0..xs.len()).fold(0, |acc, i| {
            let term = xs.iter().enumerate().fold(1, |a, (j, &x)| big.mul(a, if i == j { big.pow(x, q) } else { x }));
            big.add(acc, term)
        })
    }))
}

/// `(x_1, …, x_t) ↦ tr(x_1⋯x_t)` with values in `GF(q)`.
pub fn trace_form(q: u64, k: u32, t: usize) -> Result<SymMultiForm> {
    let b = extension(q, k)?;
    let emb = b.embedding().clone();
    let big = emb.big().clone();
    Ok(SymMultiForm::from_fn(emb.small(), k as usize, 1, t, |m| {
        vec![emb.trace(m.iter().fold(1, |a, &i| big.mul(a, b.basis()[i])))]
    }))
}

/// The linear form `t_a(x) = tr(ax)` in coordinates of the standard basis.
pub fn trace_functional(basis: &ExtensionBasis, a: u32) -> Vec<u32> {
    let emb = basis.embedding();
    basis.basis().iter().map(|&b| emb.trace(emb.big().mul(a, b))).collect()
}

/// A complexity that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Complexity {
    Finite(usize),
    Infinite,
}

impl Serialize for Complexity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Complexity::Finite(n) => s.serialize_u64(*n as u64),
            Complexity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complexity::Finite(n) => write!(f, "{n}"),
            Complexity::Infinite => write!(f, "inf"),
        }
    }
}

/// `dim Sym^t_Frob`: the span of the `l^{⊗t}` over all forms `l` on `GF(q)^rv`.
pub fn frobenius_sym_dim(field: &Arc<Field>, rv: usize, t: usize) -> usize {
    let proto = SymMultiForm::zero(field, rv, 1, t);
    let mut e = Echelon::new(field, proto.monomials().len());
    for l in projective_vectors(field, rv) {
        e.insert(proto.power_row(&l));
    }
    e.rank()
}

/// Cap on the number of candidate subsets tried by the rank searches.
pub const SUBSET_BUDGET: u128 = 1 << 24;
/// Largest `q^k` accepted by the exact complexity searches.
pub const MAX_EXTENSION_ORDER: u64 = 16;

/// Fewest forms `l` such that every target lies in the span of the `l^{⊗t}`.
fn min_symmetric_rank(field: &Arc<Field>, rv: usize, t: usize, targets: &[Vec<u32>]) -> Result<Complexity> {
    let proto = SymMultiForm::zero(field, rv, 1, t);
    let rows: Vec<Vec<u32>> = projective_vectors(field, rv).iter().map(|l| proto.power_row(l)).collect();
    let width = proto.monomials().len();
    let mut need = Echelon::new(field, width);
    for tg in targets {
        need.insert(tg.clone());
    }
    let mut all = Echelon::new(field, width);
    for r in &rows {
        all.insert(r.clone());
    }
    if targets.iter().any(|tg| !all.contains(tg)) {
        return Ok(Complexity::Infinite);
    }
    for n in need.rank()..=rows.len() {
        if crate::code::binomial(rows.len() as u64, n as u64) > SUBSET_BUDGET {
            return Err(Error::TooLarge(format!("subsets of size {n} among {} forms", rows.len())));
        }
        for subset in (0..rows.len()).combinations(n) {
            let mut e = Echelon::new(field, width);
            for &i in &subset {
                e.insert(rows[i].clone());
            }
            if targets.iter().all(|tg| e.contains(tg)) {
                return Ok(Complexity::Finite(n));
            }
        }
    }
    unreachable!("the full set of forms spans the targets")
}

fn check_order(q: u64, k: u32) -> Result<()> {
    match q.checked_pow(k) {
        Some(v) if v <= MAX_EXTENSION_ORDER => Ok(()),
        _ => Err(Error::TooLarge(format!("exact search needs q^k ≤ {MAX_EXTENSION_ORDER}, got {q}^{k}"))),
    }
}

/// Symmetric bilinear complexity of multiplication in `GF(q^k)` over `GF(q)`.
pub fn mu_sym(q: u64, k: u32) -> Result<Complexity> {
    check_order(q, k)?;
    let m = mult_tensor(q, k)?;
    let targets: Vec<Vec<u32>> = (0..k as usize).map(|w| m.component(w)).collect();
    min_symmetric_rank(m.field(), k as usize, 2, &targets)
}

/// Trisymmetric complexity: the symmetric rank of the trace trilinear form.
pub fn mu_tri(q: u64, k: u32) -> Result<Complexity> {
    check_order(q, k)?;
    let t = trace_form(q, k, 3)?;
    min_symmetric_rank(t.field(), k as usize, 3, &[t.component(0)])
}

/// Cap on the group size explored by the normalized search.
const STATE_BUDGET: usize = 1 << 24;

/// Normalized trisymmetric complexity: fewest cubes `t_a^{⊗3}` summing to the trace form.
pub fn mu_nrm(q: u64, k: u32) -> Result<Complexity> {
    check_order(q, k)?;
    let b = extension(q, k)?;
    let t = trace_form(q, k, 3)?;
    let f = t.field().clone();
    let target = t.component(0);
    let gens: Vec<Vec<u32>> = b
        .embedding()
        .big()
        .elements()
        .skip(1)
        .map(|a| t.power_row(&trace_functional(&b, a)))
        .collect::<HashSet<_>>()
        .into_iter()
        .sorted()
        .collect();
    let zero = vec![0u32; target.len()];
    if target == zero {
        return Ok(Complexity::Finite(0));
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for s in &frontier {
            for g in &gens {
                let v: Vec<u32> = s.iter().zip(g).map(|(&x, &y)| f.add(x, y)).collect();
                if v == target {
                    return Ok(Complexity::Finite(depth));
                }
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        if seen.len() > STATE_BUDGET {
            return Err(Error::TooLarge("normalized search state space".into()));
        }
        frontier = next;
    }
    Ok(Complexity::Infinite)
}

/// `g(t, q)`: least g with every element of `GF(q)` a sum of g t-th powers.
pub fn waring_g(t: u64, q: u64) -> Result<Complexity> {
    if q > 1 << 12 {
        return Err(Error::TooLarge(format!("Waring search over GF({q})")));
    }
    let f = Field::from_order(q)?;
    let powers: Vec<u32> = f.elements().map(|x| f.pow(x, t)).collect::<HashSet<_>>().into_iter().sorted().collect();
    let mut reach: HashSet<u32> = powers.iter().copied().collect();
    let mut g = 1;
    loop {
        if reach.len() == q as usize {
            return Ok(Complexity::Finite(g));
        }
        let next: HashSet<u32> = reach.iter().flat_map(|&a| powers.iter().map(move |&p| (a, p))).map(|(a, p)| f.add(a, p)).collect();
        if next.len() == reach.len() {
            return Ok(Complexity::Infinite);
        }
        reach = next;
        g += 1;
    }
}

/// A finite-dimensional `GF(q)`-algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Arc<Field>,
    dim: usize,
    /// `table[i * dim + j]` holds the coordinates of `e_i e_j`.
    table: Vec<Vec<u32>>,
}

impl Algebra {
    pub fn new(field: &Arc<Field>, dim: usize, table: Vec<Vec<u32>>) -> Result<Self> {
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidParameter("structure constants must be dim x dim vectors of length dim".into()));
        }
        Ok(Algebra { field: field.clone(), dim, table })
    }

    /// `GF(q^k)` over `GF(q)` in its standard basis.
    pub fn extension(q: u64, k: u32) -> Result<Self> {
        let b = extension(q, k)?;
        let big = b.embedding().big();
        let d = k as usize;
        let table = (0..d * d).map(|ij| b.coords(big.mul(b.basis()[ij / d], b.basis()[ij % d])).to_vec()).collect();
        Self::new(b.embedding().small(), d, table)
    }

    /// `GF(q)^n` with componentwise multiplication.
    pub fn split(field: &Arc<Field>, n: usize) -> Self {
        let table = (0..n * n)
            .map(|ij| {
                let mut v = vec![0; n];
                if ij / n == ij % n {
                    v[ij % n] = 1;
                }
                v
            })
            .collect();
        Algebra { field: field.clone(), dim: n, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = f.mul(a[i], b[j]);
                if c != 0 {
                    f.axpy(&mut out, &self.table[i * self.dim + j], c);
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i * self.dim + j] == self.table[j * self.dim + i]))
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; self.dim];
        e[i] = 1;
        e
    }

    /// The t-wise product map `(a_1, …, a_t) ↦ a_1⋯a_t` as a symmetric form.
    pub fn power_map(&self, t: usize) -> Result<SymMultiForm> {
        if !self.is_commutative() {
            return Err(Error::Precondition("algebra is not commutative".into()));
        }
        Ok(SymMultiForm::from_fn(&self.field, self.dim, self.dim, t, |m| {
            m[1..].iter().fold(self.unit(m[0]), |acc, &i| self.mul(&acc, &self.unit(i)))
        }))
    }
}

/// Whether t-wise multiplication in a commutative algebra has a symmetric algorithm.
///
/// True for `t ≤ q`; otherwise checks `a^q = a` on a basis, which suffices since
/// `a ↦ a^q − a` is `GF(q)`-linear.
pub fn bshouty_check(algebra: &Algebra, t: usize) -> Result<bool> {
    if !algebra.is_commutative() {
        return Err(Error::Precondition("algebra is not commutative".into()));
    }
    let q = algebra.field.q() as usize;
    if t <= q {
        return Ok(true);
    }
    Ok((0..algebra.dim).all(|i| {
        let e = algebra.unit(i);
        let p = (1..q).fold(e.clone(), |acc, _| algebra.mul(&acc, &e));
        p == e
    }))
}
