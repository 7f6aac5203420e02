//! Polynomials over `F_p` in dense low-degree-first form, used only to pick
//! the defining modulus of a field.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::pow_mod;

type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// `a mod m` for monic or non-monic nonzero `m`.
fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (j, &mj) in m.iter().enumerate().take(dm + 1) {
            r[shift + j] = (r[shift + j] + (p - c) * mj) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test: `f` of degree `d` is irreducible iff
/// `gcd(X^{p^i} - X, f) = 1` for `1 ≤ i ≤ d/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_poly_mod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(f, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `d`
/// over `F_p`, comparing coefficient lists low-degree-first as integers.
pub(crate) fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; d + 1];
    coeffs[d] = 1;
    // a zero constant term means X divides it; skip that whole block
    if d > 1 {
        coeffs[0] = 1;
    }
    loop {
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // c_0 is the most significant position, c_{d-1} the least.
        let mut i = d;
        loop {
            assert!(i > 0, "irreducible polynomials exist in every degree");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        // no monic factor of degree 1..=d/2
        let d = degree(f).unwrap();
        for k in 1..=d / 2 {
            let total = p.pow(k as u32);
            for idx in 0..total {
                let mut g = vec![0u64; k + 1];
                g[k] = 1;
                let mut v = idx;
                for c in g.iter_mut().take(k) {
                    *c = v % p;
                    v /= p;
                }
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for &(p, d) in &[(3u64, 2usize), (3, 3), (3, 4), (5, 3), (7, 2)] {
            let total = p.pow(d as u32);
            for idx in 0..total {
                let mut f = vec![0u64; d + 1];
                f[d] = 1;
                let mut v = idx;
                for c in f.iter_mut().take(d) {
                    *c = v % p;
                    v /= p;
                }
                assert_eq!(is_irreducible(&f, p), brute_irreducible(&f, p), "{f:?} over F_{p}");
            }
        }
    }

    #[test]
    fn smallest_irreducible_quadratic_over_f3() {
        // c0 = 1: X^2 + 1 is irreducible over F_3 (no square root of -1)
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }
}
