//! Decision procedures for scattered and partially scattered q-polynomials,
//! and the linear set `L_f`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::gfield::{FieldCtx, FieldElem, FpMatrix};
use crate::linpoly::LinPoly;

/// Default cap on `q^n` for the L-partial sweep over `F_{q^n} \ F_{q^t}`.
pub const DEFAULT_L_PARTIAL_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Every element (or projective representative) is visited.
    Enumeration,
    /// One kernel computation per `ρ`.
    KernelSweep,
}

/// A counterexample to one of the scatteredness conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `f(x)/x = f(y)/y` with `x/y ∉ F_q`; `y` precedes `x` in index order.
    Pair { y: FieldElem, x: FieldElem },
    /// `f(ρx) = ρ f(x)` with `x ≠ 0`.
    Rho { rho: FieldElem, x: FieldElem },
}

/// Outcome of a single condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

/// All three conditions together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScatterVerdict {
    pub is_scattered: bool,
    pub is_l_partial: bool,
    pub is_r_partial: bool,
    /// From the first failing condition, in the order scattered, R, L.
    pub witness: Option<Witness>,
}

/// Computes all three conditions and checks `scattered = L ∧ R`.
pub fn verdict(f: &LinPoly<'_>, t: usize, l_budget: u64) -> Result<ScatterVerdict> {
    let s = is_scattered(f)?;
    let r = is_r_partial(f, t)?;
    let l = is_l_partial(f, t, l_budget)?;
    if s.holds != (l.holds && r.holds) {
        return Err(Error::SelfCheck(alloc::format!(
            "scattered = {} but L-partial = {} and R-partial = {}",
            s.holds,
            l.holds,
            r.holds
        )));
    }
    Ok(ScatterVerdict {
        is_scattered: s.holds,
        is_l_partial: l.holds,
        is_r_partial: r.holds,
        witness: s.witness.or(r.witness).or(l.witness),
    })
}

/// Maps packed values back to canonical indices a few lanes at a time.
struct IndexTables {
    shift: u32,
    mask: u64,
    tables: Vec<Vec<u32>>,
}

impl IndexTables {
    fn new(field: &FieldCtx) -> Self {
        let w = field.lane_width() as usize;
        let d = field.degree();
        let lanes_per_chunk = (16 / w).max(1);
        let chunks = d.div_ceil(lanes_per_chunk);
        let bits = w * lanes_per_chunk;
        let lane_mask = (1u64 << w) - 1;
        let tables = (0..chunks)
            .map(|c| {
                let base = field.pow_p(c * lanes_per_chunk);
                (0..1u64 << bits)
                    .map(|v| {
                        let mut acc = 0u64;
                        for l in (0..lanes_per_chunk).rev() {
                            acc = acc * field.p() as u64 + ((v >> (w * l)) & lane_mask);
                        }
                        // entries for invalid lane values are never looked up
                        (acc.wrapping_mul(base)) as u32
                    })
                    .collect()
            })
            .collect();
        IndexTables { shift: bits as u32, mask: (1u64 << bits) - 1, tables }
    }

    #[inline(always)]
    fn index(&self, mut v: u64) -> usize {
        let mut acc = 0u32;
        for t in &self.tables {
            acc = acc.wrapping_add(t[(v & self.mask) as usize]);
            v >>= self.shift;
        }
        acc as usize
    }
}

/// `delta[k] = f(e_0) + … + f(e_k)`: stepping `x` to its index successor,
/// when the lowest `k` digits wrap from `p − 1` to 0, adds `delta[k]` to `f(x)`.
fn carry_deltas(field: &FieldCtx, images: &[FieldElem]) -> Vec<u64> {
    let mut acc = field.zero();
    images
        .iter()
        .map(|&y| {
            acc = field.add(acc, y);
            acc.raw()
        })
        .collect()
}

/// Decides scatteredness by counting the values of `f(x)/x`.
///
/// `f` is scattered iff every value is taken by exactly `q − 1` nonzero `x`.
/// Only one representative per `F_p*`-class is visited, and the search stops
/// at the first collision; the witness is then found by an index-order scan.
pub fn is_scattered(f: &LinPoly<'_>) -> Result<Check> {
    if f.is_zero() {
        return Err(domain!("the zero polynomial has no scatteredness verdict"));
    }
    let field = f.field();
    let collision = match field.log_table() {
        Some(log) => !ratios_distinct_with_logs(f, log),
        None => !ratios_distinct_sorted(f),
    };
    if !collision {
        return Ok(Check { holds: true, witness: None, method: Method::Enumeration });
    }
    let witness = pair_witness(f).ok_or_else(|| {
        Error::SelfCheck("a ratio collision was found but no witness pair exists".into())
    })?;
    Ok(Check { holds: false, witness: Some(witness), method: Method::Enumeration })
}

/// Visits `x` with leading digit 1; returns false on the first ratio class
/// hit more than `(q−1)/(p−1)` times.
fn ratios_distinct_with_logs(f: &LinPoly<'_>, log: &[u32]) -> bool {
    let field = f.field();
    let d = field.degree();
    let p = field.p() as u64;
    let order = field.order() as usize;
    let zero_slot = order;
    let images = f.basis_images();
    let deltas = carry_deltas(field, &images);
    let idx = IndexTables::new(field);
    let threshold = ((field.q() - 1) / (p - 1)) as u16;
    let mut counts: Vec<u16> = Vec::new();
    let mut seen: Vec<u64> = Vec::new();
    if threshold == 1 {
        seen = vec![0u64; (order + 1).div_ceil(64)];
    } else {
        counts = vec![0u16; order + 1];
    }
    for h in 0..d {
        let start = field.pow_p(h) as usize;
        let mut fx = images[h].raw();
        let mut low = start as u64 % p;
        for i in start..2 * start {
            let slot = if fx == 0 {
                zero_slot
            } else {
                let lf = log[idx.index(fx)] as usize;
                let lx = log[i] as usize;
                if lf >= lx { lf - lx } else { lf + order - lx }
            };
            if threshold == 1 {
                let (w, b) = (slot >> 6, 1u64 << (slot & 63));
                if seen[w] & b != 0 {
                    return false;
                }
                seen[w] |= b;
            } else {
                counts[slot] += 1;
                if counts[slot] > threshold {
                    return false;
                }
            }
            // advance f(x) to f(x + 1 in index order)
            low += 1;
            let k = if low < p {
                0
            } else {
                low = 0;
                let mut k = 1;
                let mut j = (i + 1) / p as usize;
                while j.is_multiple_of(p as usize) {
                    j /= p as usize;
                    k += 1;
                }
                k
            };
            if k < d {
                fx = field.add_raw(fx, deltas[k]);
            }
        }
    }
    true
}

/// `f(x)/x` for one `x` per `F_p*`-class (leading digit 1), unsorted.
///
/// `x` and `f(x)` advance incrementally in index order and the divisions are
/// batched so that each block of values costs a single inversion.
fn ratio_keys(f: &LinPoly<'_>) -> Vec<u64> {
    const BLOCK: usize = 1024;
    let field = f.field();
    let d = field.degree();
    let p = field.p() as u64;
    let images = f.basis_images();
    let deltas = carry_deltas(field, &images);
    let unit_deltas = carry_deltas(field, &(0..d).map(|j| field.unit(j)).collect::<Vec<_>>());
    let reps = ((field.size() - 1) / (p - 1)) as usize;
    let mut keys: Vec<u64> = Vec::with_capacity(reps);
    let mut xs: Vec<FieldElem> = Vec::with_capacity(BLOCK);
    let mut fxs: Vec<FieldElem> = Vec::with_capacity(BLOCK);
    let mut prefix: Vec<FieldElem> = Vec::with_capacity(BLOCK);
    let mut flush = |xs: &mut Vec<FieldElem>, fxs: &mut Vec<FieldElem>, keys: &mut Vec<u64>| {
        prefix.clear();
        let mut acc = field.one();
        for &x in xs.iter() {
            prefix.push(acc);
            acc = field.mul(acc, x);
        }
        let mut inv = field.inv(acc).expect("product of nonzero elements");
        let base = keys.len();
        keys.resize(base + xs.len(), 0);
        for i in (0..xs.len()).rev() {
            let xinv = field.mul(inv, prefix[i]);
            inv = field.mul(inv, xs[i]);
            keys[base + i] = field.mul(fxs[i], xinv).raw();
        }
        xs.clear();
        fxs.clear();
    };
    for h in 0..d {
        let start = field.pow_p(h);
        let mut x = field.unit(h).raw();
        let mut fx = images[h].raw();
        let mut low = start % p;
        for i in start..2 * start {
            xs.push(FieldElem::from_raw(x));
            fxs.push(FieldElem::from_raw(fx));
            if xs.len() == BLOCK {
                flush(&mut xs, &mut fxs, &mut keys);
            }
            low += 1;
            let k = if low < p {
                0
            } else {
                low = 0;
                let mut k = 1;
                let mut j = (i + 1) / p;
                while j.is_multiple_of(p) {
                    j /= p;
                    k += 1;
                }
                k
            };
            if k < d {
                fx = field.add_raw(fx, deltas[k]);
                x = field.add_raw(x, unit_deltas[k]);
            }
        }
    }
    if !xs.is_empty() {
        flush(&mut xs, &mut fxs, &mut keys);
    }
    keys
}

fn ratios_distinct_sorted(f: &LinPoly<'_>) -> bool {
    let field = f.field();
    let threshold = ((field.q() - 1) / (field.p() as u64 - 1)) as usize;
    let mut keys = ratio_keys(f);
    keys.sort_unstable();
    keys.chunk_by(|a, b| a == b).all(|run| run.len() <= threshold)
}

/// The `u` with `⟨(1, u)⟩` in the linear set of `f`, sorted by packed value.
///
/// Works from the values of `f(x)/x` and never builds a rank matrix, so it
/// scales to fields too large for [`linear_set`]; weights are not reported.
pub fn linear_set_points(f: &LinPoly<'_>) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(domain!("the zero polynomial defines no linear set"));
    }
    let mut keys = ratio_keys(f);
    keys.sort_unstable();
    keys.dedup();
    Ok(keys.into_iter().map(FieldElem::from_raw).collect())
}

fn in_fq_ratio(field: &FieldCtx, x: FieldElem, y: FieldElem) -> bool {
    let r = field.div(x, y).expect("nonzero");
    field.frob_q(r, 1) == r
}

/// The index-smallest `x` whose ratio was already taken by some `y` outside
/// `x`'s `F_q`-line, paired with the first `y` taking that ratio.
fn pair_witness(f: &LinPoly<'_>) -> Option<Witness> {
    let field = f.field();
    let op = f.operator();
    match field.log_table() {
        Some(log) => {
            let order = field.order() as usize;
            let mut first = vec![u32::MAX; order + 1];
            let idx = IndexTables::new(field);
            for (i, x) in field.nonzero_elements().enumerate() {
                let i = i + 1;
                let fx = op.apply(field, x);
                let slot = if fx.is_zero() {
                    order
                } else {
                    let lf = log[idx.index(fx.raw())] as usize;
                    let lx = log[i] as usize;
                    (lf + order - lx) % order
                };
                match first[slot] {
                    u32::MAX => first[slot] = i as u32,
                    j => {
                        let y = field.elem(j as u64).expect("in range");
                        if !in_fq_ratio(field, x, y) {
                            return Some(Witness::Pair { y, x });
                        }
                    }
                }
            }
            None
        }
        None => {
            let mut first: BTreeMap<u64, FieldElem> = BTreeMap::new();
            for x in field.nonzero_elements() {
                let fx = op.apply(field, x);
                let key = if fx.is_zero() { u64::MAX } else { field.div(fx, x).ok()?.raw() };
                match first.get(&key) {
                    None => {
                        first.insert(key, x);
                    }
                    Some(&y) => {
                        if !in_fq_ratio(field, x, y) {
                            return Some(Witness::Pair { y, x });
                        }
                    }
                }
            }
            None
        }
    }
}

fn check_partial_t(field: &FieldCtx, t: usize) -> Result<()> {
    let n = field.n() as usize;
    if t <= 1 || t >= n || !n.is_multiple_of(t) {
        return Err(domain!("need t | n and 1 < t < n, got t = {t}, n = {n}"));
    }
    Ok(())
}

/// Precomputed `e_j^{q^i}` for the nonzero terms of `f`.
struct TwistSystem<'a, 'f> {
    f: &'a LinPoly<'f>,
    /// `(i, a_i, [e_j^{q^i}])`
    terms: Vec<(usize, FieldElem, Vec<FieldElem>)>,
}

impl<'a, 'f> TwistSystem<'a, 'f> {
    fn new(f: &'a LinPoly<'f>) -> Self {
        let field = f.field();
        let terms = f
            .terms()
            .map(|(i, a)| {
                let powers = (0..field.degree()).map(|j| field.frob_q(field.unit(j), i)).collect();
                (i, a, powers)
            })
            .collect();
        TwistSystem { f, terms }
    }

    /// A nonzero kernel vector of `x ↦ f(ρx) − ρ f(x)`, if any.
    fn kernel_vector(&self, rho: FieldElem) -> Option<FieldElem> {
        let field = self.f.field();
        let d = field.degree();
        let coeffs: Vec<(FieldElem, &Vec<FieldElem>)> = self
            .terms
            .iter()
            .map(|(i, a, pw)| (field.mul(*a, field.sub(field.frob_q(rho, *i), rho)), pw))
            .collect();
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let y = coeffs
                    .iter()
                    .fold(field.zero(), |acc, (c, pw)| field.add(acc, field.mul(*c, pw[j])));
                field.coeffs(y)
            })
            .collect();
        let m = FpMatrix::from_columns(&cols, d, field.p());
        if m.rank() == d {
            return None;
        }
        let v = m.nullspace().into_iter().next()?;
        Some(field.from_coeffs(&v).expect("D coordinates"))
    }

    fn sweep(&self, rhos: impl Iterator<Item = FieldElem>) -> Check {
        for rho in rhos {
            if let Some(x) = self.kernel_vector(rho) {
                return Check { holds: false, witness: Some(Witness::Rho { rho, x }), method: Method::KernelSweep };
            }
        }
        Check { holds: true, witness: None, method: Method::KernelSweep }
    }
}

/// R-`q^t`-partial scatteredness: for every `ρ ∈ F_{q^t} \ F_q` the map
/// `x ↦ f(ρx) − ρ f(x)` is injective.
pub fn is_r_partial(f: &LinPoly<'_>, t: usize) -> Result<Check> {
    let field = f.field();
    check_partial_t(field, t)?;
    let e = field.eps() as usize;
    let sub = field.subfield(e * t)?;
    let sys = TwistSystem::new(f);
    Ok(sys.sweep(sub.elements(field).filter(|&r| field.frob_q(r, 1) != r)))
}

/// L-`q^t`-partial scatteredness: for every `ρ ∈ F_{q^n} \ F_{q^t}` the map
/// `x ↦ f(ρx) − ρ f(x)` is injective. Refuses fields with `q^n > budget`.
pub fn is_l_partial(f: &LinPoly<'_>, t: usize, budget: u64) -> Result<Check> {
    let field = f.field();
    check_partial_t(field, t)?;
    if field.size() > budget {
        return Err(Error::Resource(alloc::format!(
            "the L-partial sweep visits {} elements, over the budget of {budget}; \
             use the scattered and R-partial checks instead",
            field.size()
        )));
    }
    let sys = TwistSystem::new(f);
    Ok(sys.sweep(field.elements().filter(|&r| field.frob_q(r, t) != r)))
}

/// The linear set `L_f` with the weight of each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSetReport {
    /// Points of weight at least 1.
    pub size: u64,
    /// Weight to number of points, weights ≥ 1 only.
    pub weight_histogram: BTreeMap<usize, u64>,
    pub max_weight: usize,
    /// `u` for each point `⟨(1, u)⟩` of positive weight, in index order.
    /// The point `⟨(0, 1)⟩` always has weight 0.
    pub points: Vec<FieldElem>,
}

/// Weight of `⟨(1, u)⟩` is `dim_{F_q} ker(f − uX)`.
pub fn linear_set(f: &LinPoly<'_>) -> Result<LinearSetReport> {
    if f.is_zero() {
        return Err(domain!("the zero polynomial defines no linear set"));
    }
    let field = f.field();
    let d = field.degree();
    let e = field.eps() as usize;
    let images = f.basis_images();
    let units: Vec<FieldElem> = (0..d).map(|j| field.unit(j)).collect();
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    let mut points = Vec::new();
    let mut weighted_sum: u128 = 0;
    let q = field.q() as u128;
    for u in field.elements() {
        let cols: Vec<Vec<u32>> =
            (0..d).map(|j| field.coeffs(field.sub(images[j], field.mul(u, units[j])))).collect();
        let w = (d - FpMatrix::from_columns(&cols, d, field.p()).rank()) / e;
        if w > 0 {
            *hist.entry(w).or_default() += 1;
            points.push(u);
            weighted_sum += (q.pow(w as u32) - 1) / (q - 1);
        }
    }
    let total = (q.pow(field.n()) - 1) / (q - 1);
    if weighted_sum != total {
        return Err(Error::SelfCheck(alloc::format!(
            "weights account for {weighted_sum} of {total} F_q-lines"
        )));
    }
    Ok(LinearSetReport {
        size: points.len() as u64,
        max_weight: hist.keys().next_back().copied().unwrap_or(0),
        weight_histogram: hist,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{phi, PhiParams};

    /// Pairwise check straight from the definition.
    fn brute_scattered(f: &LinPoly<'_>) -> bool {
        let field = f.field();
        let xs: Vec<FieldElem> = field.nonzero_elements().collect();
        let r: Vec<FieldElem> = xs.iter().map(|&x| field.div(f.eval(x), x).unwrap()).collect();
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                if r[a] == r[b] && !in_fq_ratio(field, xs[a], xs[b]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn monomials() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        assert!(is_scattered(&LinPoly::monomial(&f, 1, f.one())).unwrap().holds);
        assert!(is_scattered(&LinPoly::monomial(&f, 5, f.one())).unwrap().holds);
        let c = is_scattered(&LinPoly::identity(&f)).unwrap();
        assert!(!c.holds);
        assert!(matches!(c.witness, Some(Witness::Pair { .. })));
        assert!(!is_scattered(&LinPoly::monomial(&f, 2, f.one())).unwrap().holds);
        assert!(is_scattered(&LinPoly::zero(&f)).is_err());
    }

    #[test]
    fn fast_path_matches_definition() {
        let f = FieldCtx::new(3, 1, 4).unwrap();
        let xs: Vec<FieldElem> = f.elements().collect();
        for a in (0..81).step_by(5) {
            for b in (0..81).step_by(7) {
                let g = LinPoly::from_terms(&f, &[(1, xs[a]), (3, xs[b]), (2, xs[(a + b) % 81])]);
                if g.is_zero() {
                    continue;
                }
                let c = is_scattered(&g).unwrap();
                assert_eq!(c.holds, brute_scattered(&g), "a={a} b={b}");
                if let Some(Witness::Pair { y, x }) = c.witness {
                    assert_eq!(f.div(g.eval(x), x).unwrap(), f.div(g.eval(y), y).unwrap());
                    assert!(y < x);
                    assert!(!in_fq_ratio(&f, x, y));
                }
            }
        }
    }

    #[test]
    fn slow_path_matches_fast_path() {
        let fast = FieldCtx::new(3, 1, 6).unwrap();
        let slow = FieldCtx::with_options(3, 1, 6, crate::FieldOptions { table_limit: 0 }).unwrap();
        for m in [0u64, 4, 13, 20] {
            let gm = |field: &FieldCtx| {
                let mm = crate::families::fqt_nonzero(field, 3)[m as usize];
                phi(field, &PhiParams::new(field, 3, 1, mm).unwrap()).unwrap().coeffs().to_vec()
            };
            let a = LinPoly::from_coeffs(&fast, gm(&fast)).unwrap();
            let b = LinPoly::from_coeffs(&slow, gm(&slow)).unwrap();
            assert_eq!(is_scattered(&a).unwrap(), is_scattered(&b).unwrap());
        }
    }

    #[test]
    fn ratio_points_match_rank_points() {
        for opts in [crate::FieldOptions::default(), crate::FieldOptions { table_limit: 0 }] {
            let f = FieldCtx::with_options(3, 1, 6, opts).unwrap();
            let m = crate::families::fqt_nonzero(&f, 3)[7];
            let polys = [
                phi(&f, &PhiParams::new(&f, 3, 1, m).unwrap()).unwrap(),
                LinPoly::monomial(&f, 1, f.one()),
                LinPoly::from_terms(&f, &[(0, f.one()), (3, f.one())]),
            ];
            for g in &polys {
                let mut expected = linear_set(g).unwrap().points;
                expected.sort_by_key(|u| u.raw());
                assert_eq!(linear_set_points(g).unwrap(), expected);
                assert_eq!(is_scattered(g).unwrap().holds, brute_scattered(g));
            }
        }
    }

    #[test]
    fn nonprime_base_uses_counts() {
        // over F_9, X^q is scattered in F_{9^3} and X^{p} is not F_9-linear-scattered
        let f = FieldCtx::new(3, 2, 3).unwrap();
        assert!(is_scattered(&LinPoly::monomial(&f, 1, f.one())).unwrap().holds);
        assert!(!is_scattered(&LinPoly::identity(&f)).unwrap().holds);
    }

    #[test]
    fn partial_checks_decompose_scatteredness() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        for m in crate::families::fqt_nonzero(&f, 3) {
            let g = phi(&f, &PhiParams::new(&f, 3, 1, m).unwrap()).unwrap();
            let v = verdict(&g, 3, DEFAULT_L_PARTIAL_BUDGET).unwrap();
            assert!(v.is_r_partial);
        }
        let x = LinPoly::identity(&f);
        let r = is_r_partial(&x, 3).unwrap();
        assert!(!r.holds);
        assert!(is_l_partial(&x, 3, 10).is_err());
        assert!(is_r_partial(&x, 4).is_err());
    }

    #[test]
    fn linear_set_of_scattered_and_identity() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        let r = linear_set(&LinPoly::monomial(&f, 1, f.one())).unwrap();
        assert_eq!(r.size, 364);
        assert_eq!(r.max_weight, 1);
        let r = linear_set(&LinPoly::identity(&f)).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(r.max_weight, 6);
        assert_eq!(r.points, vec![f.one()]);
    }
}
