//! Subfield embeddings GF(q) ⊂ GF(q^r), traces, and bases of the extension.

use super::Field;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use std::sync::Arc;

/// Embeddings and coordinate tables are only built for big fields up to this order.
const TABLE_LIMIT: u32 = 1 << 20;
const NOT_IN_SUBFIELD: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    small: Arc<Field>,
    big: Arc<Field>,
    degree: u32,
    generator_image: u32,
    embed: Arc<Vec<u32>>,
    restrict: Arc<Vec<u32>>,
}

impl SubfieldEmbedding {
    pub fn new(small: &Arc<Field>, big: &Arc<Field>) -> Result<Self> {
        if small.p() != big.p() || big.e() % small.e() != 0 {
            return Err(Error::Mismatch(format!("GF({}) is not a subfield of GF({})", small.q(), big.q())));
        }
        if big.q() > TABLE_LIMIT {
            return Err(Error::TooLarge(format!("extension field of order {}", big.q())));
        }
        let degree = big.e() / small.e();
        // Image of the small field's generator x: a root of its modulus in the big field.
        let generator_image = if small.e() == 1 {
            0
        } else {
            big.elements()
                .find(|&b| small.modulus().iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, b), c)) == 0)
                .ok_or_else(|| Error::Mismatch("small modulus has no root in the big field".into()))?
        };
        let embed: Vec<u32> = small
            .elements()
            .map(|x| {
                small.digits(x).iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, generator_image), c))
            })
            .collect();
        let mut restrict = vec![NOT_IN_SUBFIELD; big.q() as usize];
        for (x, &y) in embed.iter().enumerate() {
            if restrict[y as usize] != NOT_IN_SUBFIELD {
                return Err(Error::Mismatch("subfield map is not injective".into()));
            }
            restrict[y as usize] = x as u32;
        }
        Ok(SubfieldEmbedding {
            small: small.clone(),
            big: big.clone(),
            degree,
            generator_image,
            embed: Arc::new(embed),
            restrict: Arc::new(restrict),
        })
    }

    /// GF(q) ⊂ GF(q^r), both with default moduli.
    pub fn of_orders(q: u64, r: u32) -> Result<Self> {
        let small = Field::from_order(q)?;
        let big = Field::new(small.p(), small.e() * r)?;
        Self::new(&small, &big)
    }

    /// The identity embedding of a field in itself.
    pub fn trivial(field: &Arc<Field>) -> Result<Self> {
        Self::new(field, field)
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    /// `r = [GF(q^r) : GF(q)]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generator_image(&self) -> u32 {
        self.generator_image
    }

    #[inline]
    pub fn embed(&self, x: u32) -> u32 {
        self.embed[x as usize]
    }

    #[inline]
    pub fn restrict(&self, y: u32) -> Option<u32> {
        match self.restrict[y as usize] {
            NOT_IN_SUBFIELD => None,
            x => Some(x),
        }
    }

    /// `a^(q^j)` for `q` the small field order.
    pub fn frobenius(&self, a: u32, j: u32) -> u32 {
        self.big.frobenius(a, self.small.q(), j)
    }

    /// Relative trace to the small field, as a small-field element.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut c = a;
        for _ in 0..self.degree {
            acc = self.big.add(acc, c);
            c = self.big.pow(c, self.small.q() as u64);
        }
        self.restrict(acc).expect("trace lands in the subfield")
    }

    /// Checks that the embedding respects addition and multiplication, exhaustively.
    pub fn is_homomorphism(&self) -> bool {
        let (s, b) = (&self.small, &self.big);
        s.elements().all(|x| {
            s.elements().all(|y| {
                self.embed(s.add(x, y)) == b.add(self.embed(x), self.embed(y))
                    && self.embed(s.mul(x, y)) == b.mul(self.embed(x), self.embed(y))
            })
        })
    }
}

/// A GF(q)-basis of GF(q^r) with a precomputed coordinate table.
#[derive(Clone, Debug)]
pub struct ExtensionBasis {
    emb: SubfieldEmbedding,
    basis: Vec<u32>,
    coords: Arc<Vec<u32>>,
}

impl ExtensionBasis {
    pub fn new(emb: &SubfieldEmbedding, basis: Vec<u32>) -> Result<Self> {
        let r = emb.degree() as usize;
        if basis.len() != r {
            return Err(Error::NotABasis(format!("{} elements for degree {r}", basis.len())));
        }
        let (small, big) = (emb.small(), emb.big());
        let qs = small.q();
        let total = big.q() as usize;
        let mut coords = vec![NOT_IN_SUBFIELD; total * r];
        let mut c = vec![0u32; r];
        for _ in 0..total {
            let v = c
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&ci, &b)| big.add(acc, big.mul(emb.embed(ci), b)));
            let slot = &mut coords[v as usize * r..(v as usize + 1) * r];
            if slot[0] != NOT_IN_SUBFIELD {
                return Err(Error::NotABasis("elements are linearly dependent".into()));
            }
            slot.copy_from_slice(&c);
            for d in c.iter_mut() {
                *d += 1;
                if *d < qs {
                    break;
                }
                *d = 0;
            }
        }
        Ok(ExtensionBasis { emb: emb.clone(), basis, coords: Arc::new(coords) })
    }

    /// Powers of `x` over a prime subfield, powers of a primitive element otherwise.
    pub fn standard(emb: &SubfieldEmbedding) -> Self {
        let big = emb.big();
        let r = emb.degree();
        let basis: Vec<u32> = if emb.small().e() == 1 {
            (0..r).map(|i| big.p().pow(i)).collect()
        } else {
            (0..r).map(|i| big.pow(big.primitive(), i as u64)).collect()
        };
        Self::new(emb, basis).expect("power basis of a generator is a basis")
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.emb
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// Small-field coordinates of a big-field element.
    pub fn coords(&self, a: u32) -> &[u32] {
        let r = self.basis.len();
        &self.coords[a as usize * r..(a as usize + 1) * r]
    }

    pub fn combine(&self, c: &[u32]) -> u32 {
        let big = self.emb.big();
        c.iter().zip(&self.basis).fold(0, |acc, (&ci, &b)| big.add(acc, big.mul(self.emb.embed(ci), b)))
    }

    pub fn dual(&self) -> Vec<u32> {
        dual_basis(&self.basis, &self.emb).expect("a basis has a trace-dual basis")
    }
}

/// The basis `(λ_i*)` with `tr(λ_i* λ_j) = δ_ij`.
pub fn dual_basis(basis: &[u32], emb: &SubfieldEmbedding) -> Result<Vec<u32>> {
    let r = emb.degree() as usize;
    if basis.len() != r {
        return Err(Error::NotABasis(format!("{} elements for degree {r}", basis.len())));
    }
    let (small, big) = (emb.small(), emb.big());
    let mut gram = Mat::zeros(small, r, r);
    for i in 0..r {
        for j in 0..r {
            gram.set(i, j, emb.trace(big.mul(basis[i], basis[j])));
        }
    }
    let inv = gram.inverse().ok_or_else(|| Error::NotABasis("trace Gram matrix is singular".into()))?;
    Ok((0..r)
        .map(|i| (0..r).fold(0, |acc, j| big.add(acc, big.mul(emb.embed(inv.get(i, j)), basis[j]))))
        .collect())
}

/// First `γ` in packed order whose conjugates form a basis.
pub fn normal_basis(emb: &SubfieldEmbedding) -> u32 {
    let std = ExtensionBasis::standard(emb);
    let r = emb.degree() as usize;
    emb.big()
        .elements()
        .skip(1)
        .find(|&g| {
            let rows: Vec<Vec<u32>> = (0..r).map(|j| std.coords(emb.frobenius(g, j as u32)).to_vec()).collect();
            Mat::from_rows(emb.small(), r, &rows).unwrap().rank() == r
        })
        .expect("normal bases exist")
}
