//! Rank-metric codes `C_f = ⟨X, f⟩_{F_{q^n}}` and the Gabidulin reference codes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::gfield::{FieldCtx, FieldElem, FpMatrix};
use crate::linpoly::LinPoly;

/// Cap on projective classes enumerated by [`gabidulin`].
pub const GABIDULIN_CLASS_BUDGET: u128 = 2_000_000;

/// The code `⟨X, f⟩` over `F_{q^n}`.
#[derive(Clone, Debug)]
pub struct RankCode<'f> {
    f: LinPoly<'f>,
}

impl<'f> RankCode<'f> {
    pub fn new(f: LinPoly<'f>) -> Result<Self> {
        if f.is_scalar_multiple_of_identity() {
            return Err(domain!("f is an F_{{q^n}}-multiple of X, so the code degenerates"));
        }
        Ok(RankCode { f })
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.f.field()
    }

    pub fn f(&self) -> &LinPoly<'f> {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }
}

/// Rank distribution of the nonzero codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSpectrum {
    /// Rank to number of projective classes (codewords up to `F_{q^n}*`).
    pub projective: BTreeMap<usize, u128>,
    /// Rank to number of codewords.
    pub full: BTreeMap<usize, u128>,
    pub min_rank: usize,
}

impl RankSpectrum {
    fn from_projective(projective: BTreeMap<usize, u128>, scalars: u128) -> Self {
        let full = projective.iter().map(|(&r, &c)| (r, c * scalars)).collect();
        let min_rank = projective.keys().next().copied().unwrap_or(0);
        RankSpectrum { projective, full, min_rank }
    }

    pub fn total(&self) -> u128 {
        self.full.values().sum()
    }
}

/// `F_q`-rank of `Σ_i c_i X^{q^i}` given `powers[i][j] = e_j^{q^i}`.
fn rank_of(field: &FieldCtx, coeffs: &[(FieldElem, &[FieldElem])]) -> usize {
    let d = field.degree();
    let cols: Vec<Vec<u32>> = (0..d)
        .map(|j| {
            let y = coeffs.iter().fold(field.zero(), |acc, (c, pw)| field.add(acc, field.mul(*c, pw[j])));
            field.coeffs(y)
        })
        .collect();
    FpMatrix::from_columns(&cols, d, field.p()).rank() / field.eps() as usize
}

/// Ranks of `X + b·f` for every `b`, and of `f`.
pub fn rank_spectrum(code: &RankCode<'_>) -> RankSpectrum {
    let field = code.field();
    let d = field.degree();
    let e = field.eps() as usize;
    let units: Vec<FieldElem> = (0..d).map(|j| field.unit(j)).collect();
    let images = code.f.basis_images();
    let rank = |b: FieldElem| {
        let cols: Vec<Vec<u32>> =
            (0..d).map(|j| field.coeffs(field.add(units[j], field.mul(b, images[j])))).collect();
        FpMatrix::from_columns(&cols, d, field.p()).rank() / e
    };
    let mut hist: BTreeMap<usize, u128> = BTreeMap::new();
    for b in field.elements() {
        *hist.entry(rank(b)).or_default() += 1;
    }
    *hist.entry(code.f.image_dim()).or_default() += 1;
    RankSpectrum::from_projective(hist, field.order() as u128)
}

/// Result of [`is_mrd`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrdReport {
    pub is_mrd: bool,
    pub min_rank: usize,
    pub spectrum: RankSpectrum,
}

/// A 2-dimensional code of `n × n` matrices is MRD iff its minimum rank is `n − 1`.
pub fn is_mrd(code: &RankCode<'_>) -> MrdReport {
    let spectrum = rank_spectrum(code);
    MrdReport { is_mrd: spectrum.min_rank + 1 == code.n(), min_rank: spectrum.min_rank, spectrum }
}

/// Number of `n × n` matrices over `F_q` of rank `r`.
fn matrices_of_rank(q: u128, n: usize, r: usize) -> u128 {
    let qn = q.pow(n as u32);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        let qi = q.pow(i as u32);
        num *= (qn - qi) * (qn - qi);
        den *= q.pow(r as u32) - qi;
    }
    num / den
}

/// The rank spectrum of `⟨X, X^q, …, X^{q^{k−1}}⟩`.
///
/// For `k = n` the code is every `F_q`-linear map and the spectrum is counted
/// in closed form; otherwise projective classes are enumerated, within
/// [`GABIDULIN_CLASS_BUDGET`].
pub fn gabidulin(field: &FieldCtx, k: usize) -> Result<RankSpectrum> {
    let n = field.n() as usize;
    if k == 0 || k > n {
        return Err(domain!("need 1 <= k <= n, got k = {k}, n = {n}"));
    }
    let qn = field.order() as u128;
    if k == n {
        let q = field.q() as u128;
        let projective = (1..=n).map(|r| (r, matrices_of_rank(q, n, r) / qn)).collect();
        return Ok(RankSpectrum::from_projective(projective, qn));
    }
    let size = field.size() as u128;
    let classes: u128 = (0..k).map(|i| size.pow(i as u32)).sum();
    if classes > GABIDULIN_CLASS_BUDGET {
        return Err(Error::Resource(alloc::format!(
            "{classes} projective classes exceed the budget of {GABIDULIN_CLASS_BUDGET}"
        )));
    }
    let d = field.degree();
    let powers: Vec<Vec<FieldElem>> =
        (0..k).map(|i| (0..d).map(|j| field.frob_q(field.unit(j), i)).collect()).collect();
    let mut hist: BTreeMap<usize, u128> = BTreeMap::new();
    // classes with leading coefficient 1 at position `lead`, earlier ones zero
    for lead in 0..k {
        let free = k - 1 - lead;
        let mut tail: Vec<FieldElem> = alloc::vec![field.zero(); free];
        loop {
            let mut terms: Vec<(FieldElem, &[FieldElem])> = Vec::with_capacity(k - lead);
            terms.push((field.one(), &powers[lead]));
            for (i, &c) in tail.iter().enumerate() {
                terms.push((c, &powers[lead + 1 + i]));
            }
            *hist.entry(rank_of(field, &terms)).or_default() += 1;
            // odometer over the tail, last entry fastest
            let mut i = free;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tail[i] = field.succ(tail[i]);
                if !tail[i].is_zero() {
                    break;
                }
            }
            if tail.iter().all(|c| c.is_zero()) {
                break;
            }
        }
    }
    Ok(RankSpectrum::from_projective(hist, qn))
}
