#![allow(dead_code)]

use itertools::Itertools;
use proptest::prelude::*;
use proptest::sample::select;
use starcodes::families::random;
use starcodes::{Echelon, Field, LinearCode};
use std::sync::Arc;

pub fn field(q: u64) -> Arc<Field> {
    Field::from_order(q).unwrap()
}

/// A random code of the given shape whose masked columns are zeroed out.
pub fn masked_code(q: u64, n: usize, k: usize, seed: u64, mask: u32) -> LinearCode {
    let c = random(&field(q), n, k, seed).unwrap();
    let rows: Vec<Vec<u32>> = c
        .rows()
        .map(|r| r.iter().enumerate().map(|(j, &x)| if mask >> j & 1 == 1 { 0 } else { x }).collect())
        .collect();
    LinearCode::from_rows(c.field(), n, &rows).unwrap()
}

/// `count` codes sharing q and n; about one in four has some zero columns.
pub fn codes(qs: &'static [u64], nmax: usize, count: usize) -> impl Strategy<Value = Vec<LinearCode>> {
    (select(qs), 1..=nmax).prop_flat_map(move |(q, n)| {
        let one = (0..=n, any::<u64>(), any::<u32>(), 0..4u8)
            .prop_map(move |(k, seed, mask, sparse)| masked_code(q, n, k, seed, if sparse == 0 { mask } else { 0 }));
        proptest::collection::vec(one, count)
    })
}

/// A random code with every zero column patched by a 1 in the first row.
pub fn full_support_code(q: u64, n: usize, k: usize, seed: u64) -> LinearCode {
    let c = random(&field(q), n, k.max(1), seed).unwrap();
    let mut rows: Vec<Vec<u32>> = c.rows().map(<[u32]>::to_vec).collect();
    for j in 0..n {
        if rows.iter().all(|r| r[j] == 0) {
            rows[0][j] = 1;
        }
    }
    LinearCode::from_rows(c.field(), n, &rows).unwrap()
}

/// Puts a 1 in the first row of every zero column; the zero code becomes the all-ones code.
pub fn patch_full_support(c: &LinearCode) -> LinearCode {
    let n = c.n();
    let mut rows: Vec<Vec<u32>> = c.rows().map(<[u32]>::to_vec).collect();
    if rows.is_empty() {
        rows.push(vec![0; n]);
    }
    for j in 0..n {
        if rows.iter().all(|r| r[j] == 0) {
            rows[0][j] = 1;
        }
    }
    LinearCode::from_rows(c.field(), n, &rows).unwrap()
}

/// Codes without zero columns.
pub fn full_support_codes(qs: &'static [u64], nmax: usize, count: usize) -> impl Strategy<Value = Vec<LinearCode>> {
    (select(qs), 1..=nmax).prop_flat_map(move |(q, n)| {
        let one = (1..=n, any::<u64>()).prop_map(move |(k, seed)| full_support_code(q, n, k, seed));
        proptest::collection::vec(one, count)
    })
}

/// Every codeword, by enumerating all messages.
pub fn all_words(c: &LinearCode) -> Vec<Vec<u32>> {
    let q = c.field().q();
    (0..c.k()).map(|_| 0..q).multi_cartesian_product().map(|m| c.encode(&m)).chain(std::iter::once(vec![0; c.n()])).collect()
}

pub fn weight(w: &[u32]) -> usize {
    w.iter().filter(|&&x| x != 0).count()
}

/// Minimum distance by listing every codeword.
pub fn brute_dmin(c: &LinearCode) -> Option<usize> {
    all_words(c).iter().map(|w| weight(w)).filter(|&w| w > 0).min()
}

/// A uniformly random ordered basis of `GF(q)^n`.
pub fn random_basis(f: &Arc<Field>, n: usize, rng: &mut impl rand::Rng) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(f, n);
    let mut basis = Vec::with_capacity(n);
    while basis.len() < n {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.q())).collect();
        if e.insert(v.clone()) {
            basis.push(v);
        }
    }
    basis
}
