use alloc::vec::Vec;

use super::{FieldCtx, FieldElem, FpMatrix};
use crate::error::{domain, Result};

/// The subfield `F_{p^m}` of a [`FieldCtx`]: the fixed points of
/// `x ↦ x^{p^m}`, with an `F_p`-basis.
///
/// The basis is echelonized on leading (highest) coordinates, which makes
/// lexicographic enumeration of coefficient tuples coincide with canonical
/// index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldHandle {
    degree: usize,
    /// sorted by decreasing leading coordinate
    basis: Vec<FieldElem>,
}

impl SubfieldHandle {
    pub(crate) fn new(ctx: &FieldCtx, m: usize) -> Result<Self> {
        if m == 0 || !ctx.degree().is_multiple_of(m) {
            return Err(domain!("subfield degree {m} does not divide {}", ctx.degree()));
        }
        let d = ctx.degree();
        let p = ctx.p();
        let mut frob = ctx.frobenius_matrix(m);
        for i in 0..d {
            frob.set(i, i, (frob.get(i, i) + p - 1) % p);
        }
        let kernel = frob.nullspace();
        let vectors: Vec<FieldElem> = kernel
            .iter()
            .map(|v| ctx.from_coeffs(v).expect("kernel vector has D coordinates"))
            .collect();
        let basis = echelon_by_leading(ctx, vectors);
        if basis.len() != m {
            return Err(domain!("fixed space of x^(p^{m}) has dimension {}", basis.len()));
        }
        Ok(SubfieldHandle { degree: m, basis })
    }

    /// Degree over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn contains(&self, ctx: &FieldCtx, x: FieldElem) -> bool {
        ctx.frobenius(x, self.degree) == x
    }

    pub fn cardinality(&self, ctx: &FieldCtx) -> u64 {
        ctx.pow_p(self.degree)
    }

    /// All elements in canonical index order.
    pub fn elements<'a>(&'a self, ctx: &'a FieldCtx) -> impl Iterator<Item = FieldElem> + 'a {
        span_elements(ctx, &self.basis)
    }
}

/// Row-reduces `vectors` so that each has a distinct leading coordinate
/// equal to 1 and every other vector is zero there; sorted by decreasing
/// leading coordinate.
pub(crate) fn echelon_by_leading(ctx: &FieldCtx, vectors: Vec<FieldElem>) -> Vec<FieldElem> {
    let d = ctx.degree();
    let p = ctx.p();
    let rows: Vec<Vec<u32>> = vectors
        .iter()
        .map(|&v| {
            let mut c = ctx.coeffs(v);
            c.reverse();
            c
        })
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = FpMatrix::from_rows(&rows, d, p);
    let pivots = m.rref();
    (0..pivots.len())
        .map(|r| {
            let mut c: Vec<u32> = m.row(r).to_vec();
            c.reverse();
            ctx.from_coeffs(&c).expect("D coordinates")
        })
        .collect()
}

/// Every `F_p`-combination of `basis` (assumed echelonized by
/// [`echelon_by_leading`]) in canonical index order.
pub(crate) fn span_elements<'a>(
    ctx: &'a FieldCtx,
    basis: &'a [FieldElem],
) -> impl Iterator<Item = FieldElem> + 'a {
    let k = basis.len();
    let p = ctx.p();
    let mut digits = alloc::vec![0u32; k];
    let mut cur = Some(ctx.zero());
    core::iter::from_fn(move || {
        let x = cur?;
        // odometer: the last basis vector (lowest leading coordinate) moves fastest
        let mut next = x;
        let mut i = k;
        cur = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            next = ctx.add(next, basis[i]);
            digits[i] += 1;
            if digits[i] < p {
                break Some(next);
            }
            digits[i] = 0;
        };
        Some(x)
    })
}
