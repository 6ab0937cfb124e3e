//! Helpers on words of F^n stored as packed-element slices.

use crate::field::Field;

pub fn star(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect()
}

pub fn add(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn weight(a: &[u32]) -> usize {
    a.iter().filter(|&&x| x != 0).count()
}

pub fn support(a: &[u32]) -> Vec<usize> {
    a.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
}

pub fn is_zero(a: &[u32]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Componentwise power, with `x^0 = 1` only on nonzero entries of `a`.
pub fn power_on_support(f: &Field, a: &[u32], t: u64) -> Vec<u32> {
    a.iter().map(|&x| if x == 0 { 0 } else { f.pow(x, t) }).collect()
}

pub fn indicator(n: usize, set: &[usize]) -> Vec<u32> {
    let mut v = vec![0; n];
    for &i in set {
        v[i] = 1;
    }
    v
}
