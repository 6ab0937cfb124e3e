use super::LinearCode;
use crate::error::{Error, Result};
use crate::matrix::Echelon;
use crate::word;
use serde::Serialize;
use std::collections::HashMap;

/// A partition of a ground set of coordinates.
///
/// Stored canonically: each block sorted, blocks ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    ground: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidParameter("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut ground: Vec<usize> = blocks.iter().flatten().copied().collect();
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("blocks overlap".into()));
        }
        Ok(Partition { ground, blocks })
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&i).is_ok())
    }

    /// `P ∧ Q`: nonempty pairwise intersections, on the intersection of grounds.
    pub fn meet(&self, other: &Partition) -> Partition {
        let mut blocks = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                let i: Vec<usize> = a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect();
                if !i.is_empty() {
                    blocks.push(i);
                }
            }
        }
        Partition::new(blocks).expect("intersections of disjoint blocks are disjoint")
    }
}

/// One-dimensional slices `v_B = 1_B ∗ c` of a code, one per class of proportional columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceData {
    pub representatives: Vec<usize>,
    pub generators: Vec<Vec<u32>>,
    pub normalized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableStructure {
    pub regularity: usize,
    pub stable_dim: usize,
    pub slices: SliceData,
}

impl LinearCode {
    /// Classes of proportional nonzero columns, `U(C)`.
    pub fn repeated_columns(&self) -> Partition {
        let f = self.field();
        let mut classes: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for j in 0..self.n() {
            let mut col = self.gen.column(j);
            if !f.normalize(&mut col) {
                continue;
            }
            let next = blocks.len();
            let b = *classes.entry(col).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(j);
        }
        Partition::new(blocks).expect("column classes are disjoint")
    }

    /// Slice generators, normalized to 1 at each representative.
    ///
    /// `reps`, if given, must pick one coordinate of each class of `U(C)`, in class order.
    pub fn slices(&self, reps: Option<&[usize]>) -> Result<SliceData> {
        let u = self.repeated_columns();
        let representatives: Vec<usize> = match reps {
            None => u.blocks().iter().map(|b| b[0]).collect(),
            Some(r) => {
                if r.len() != u.len() || r.iter().zip(u.blocks()).any(|(j, b)| b.binary_search(j).is_err()) {
                    return Err(Error::InvalidParameter("representatives must pick one index per class".into()));
                }
                r.to_vec()
            }
        };
        let f = self.field();
        let generators = u
            .blocks()
            .iter()
            .zip(&representatives)
            .map(|(b, &j)| {
                let c = self.rows().find(|r| r[j] != 0).expect("representative lies in the support");
                let mut v = vec![0; self.n()];
                let s = f.inv_nonzero(c[j]);
                for &i in b {
                    v[i] = f.mul(c[i], s);
                }
                v
            })
            .collect();
        Ok(SliceData { representatives, generators, normalized: true })
    }

    /// `(Â(C), A(C))` with `Â(C) = (C ∗ C^⊥)^⊥` and `A(C) = 1_Supp ∗ Â(C)`.
    pub fn stabilizing_algebra(&self) -> (LinearCode, LinearCode) {
        let f = self.field();
        let ext = self.star(&self.dual()).expect("same length").dual();
        let ind = LinearCode::indicator(f, self.n(), &self.support());
        let proper = ind.star(&ext).expect("same length");
        (ext, proper)
    }

    /// The finest partition `P(C)` of the support and the components `1_{A_i} ∗ C`.
    pub fn decompose(&self) -> Result<(Partition, Vec<LinearCode>)> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let (_, alg) = self.stabilizing_algebra();
        let mut classes: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for j in self.support() {
            let next = blocks.len();
            let b = *classes.entry(alg.gen.column(j)).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(j);
        }
        let part = Partition::new(blocks)?;
        let comps = part
            .blocks()
            .iter()
            .map(|b| {
                let rows: Vec<Vec<u32>> = self
                    .rows()
                    .map(|r| {
                        let mut w = vec![0; self.n()];
                        for &j in b {
                            w[j] = r[j];
                        }
                        w
                    })
                    .collect();
                LinearCode::from_rows(self.field(), self.n(), &rows).expect("rows of length n")
            })
            .collect();
        Ok((part, comps))
    }

    /// Regularity, stable dimension and slices, after checking `C^[t] = ⊕ ⟨v_i^t⟩` at `t = max(r, 1)`.
    pub fn stable_structure(&self) -> Result<StableStructure> {
        let r = self.regularity()?;
        let slices = self.slices(None)?;
        let t = r.max(1);
        let pw = self.power(t);
        let f = self.field();
        let mut e = Echelon::new(f, self.n());
        for v in &slices.generators {
            e.insert(word::power_on_support(f, v, t as u64));
        }
        let expected = LinearCode::from_generator(&e.to_mat());
        if pw != expected || pw.k() != slices.generators.len() {
            return Err(Error::Precondition(format!("power {t} does not split along the slices")));
        }
        Ok(StableStructure { regularity: r, stable_dim: pw.k(), slices })
    }
}
