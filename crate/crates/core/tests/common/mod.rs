//! Independent oracles shared by the integration tests. Everything here is
//! computed straight from definitions with plain field arithmetic.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scatpoly::{FieldCtx, FieldElem, LinPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q_pow(field: &FieldCtx, i: usize) -> u128 {
    (field.q() as u128).pow(i as u32)
}

/// Pairwise definition: `f(x)/x = f(y)/y` forces `x/y ∈ F_q`.
/// Compares `f(x)·y` with `f(y)·x` so no division is involved.
pub fn brute_scattered(f: &LinPoly<'_>) -> bool {
    let field = f.field();
    let xs: Vec<FieldElem> = field.nonzero_elements().collect();
    let fx: Vec<FieldElem> = xs.iter().map(|&x| f.eval(x)).collect();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            if field.mul(fx[a], xs[b]) == field.mul(fx[b], xs[a]) {
                let r = field.div(xs[a], xs[b]).unwrap();
                if field.frob_q(r, 1) != r {
                    return false;
                }
            }
        }
    }
    true
}

/// `F_{q^t}*` as the nonzero roots of `x^{q^t} = x`, found by a full scan.
pub fn fqt_by_scan(field: &FieldCtx, t: usize) -> Vec<FieldElem> {
    let e = q_pow(field, t);
    field.nonzero_elements().filter(|&x| field.pow(x, e) == x).collect()
}

/// `W* = ω·F_{q^t}*` for the index-smallest nonzero `ω` with `ω^{q^t} = −ω`.
pub fn w_star(field: &FieldCtx, t: usize, fqt: &[FieldElem]) -> Vec<FieldElem> {
    let e = q_pow(field, t);
    let omega = field.nonzero_elements().find(|&x| field.pow(x, e) == field.neg(x)).unwrap();
    fqt.iter().map(|&a| field.mul(omega, a)).collect()
}

/// `{w^k : w ∈ W*}`.
pub fn powers_of(field: &FieldCtx, w: &[FieldElem], k: u128) -> BTreeSet<u64> {
    w.iter().map(|&x| field.index(field.pow(x, k))).collect()
}

/// `N_{q^t/q}(m)` as the product of the `t` conjugates.
pub fn norm(field: &FieldCtx, t: usize, m: FieldElem) -> FieldElem {
    (0..t).fold(field.one(), |acc, i| field.mul(acc, field.frob_q(m, i)))
}

pub fn coprime(a: usize, b: usize) -> bool {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

/// A random q-polynomial with `terms` nonzero coefficients at random positions.
pub fn random_qpoly<'f>(field: &'f FieldCtx, rng: &mut ChaCha8Rng, terms: usize) -> LinPoly<'f> {
    let n = field.n() as usize;
    let size = field.size();
    let list: Vec<(usize, FieldElem)> = (0..terms)
        .map(|_| (rng.random_range(0..n), field.elem(rng.random_range(1..size)).unwrap()))
        .collect();
    LinPoly::from_terms(field, &list)
}

/// `k` distinct entries of `xs` chosen at random, in their original order.
pub fn sample<T: Copy>(xs: &[T], k: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut idx: Vec<usize> = rand::seq::index::sample(rng, xs.len(), k.min(xs.len())).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| xs[i]).collect()
}
