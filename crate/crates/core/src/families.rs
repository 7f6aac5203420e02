//! The polynomial families and distinguished subsets of `F_{q^{2t}}` used
//! throughout the crate.

use alloc::vec::Vec;

use crate::error::{domain, param, Error, Result};
use crate::gfield::subfield::{echelon_by_leading, span_elements};
use crate::gfield::{FieldCtx, FieldElem};
use crate::linpoly::LinPoly;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks that the field is `F_{q^{2t}}` with `t ≥ 3`.
pub(crate) fn check_tower(field: &FieldCtx, t: usize) -> Result<()> {
    if t < 3 {
        return Err(param!("t = {t} but t >= 3 is required"));
    }
    if field.n() as usize != 2 * t {
        return Err(param!("field has n = {} but n = 2t = {} is required", field.n(), 2 * t));
    }
    Ok(())
}

/// `x ∈ F_{q^t}` inside `F_{q^{2t}}`.
pub fn in_fqt(field: &FieldCtx, t: usize, x: FieldElem) -> bool {
    field.frob_q(x, t) == x
}

/// `q^t − 1`, the order of `F_{q^t}*`.
pub(crate) fn fqt_order(field: &FieldCtx, t: usize) -> u128 {
    (field.q() as u128).pow(t as u32) - 1
}

/// Nonzero elements of `F_{q^t}` in canonical index order.
pub fn fqt_nonzero(field: &FieldCtx, t: usize) -> Vec<FieldElem> {
    let sub = field.subfield(field.eps() as usize * t).expect("t divides n");
    sub.elements(field).skip(1).collect()
}

/// Parameters of `φ_{m,σ}` with `σ = q^J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiParams {
    pub t: usize,
    /// Reduced mod `2t`.
    pub j: usize,
    pub m: FieldElem,
}

impl PhiParams {
    pub fn new(field: &FieldCtx, t: usize, j: usize, m: FieldElem) -> Result<Self> {
        check_tower(field, t)?;
        let n = 2 * t;
        if gcd(j as u64, n as u64) != 1 {
            return Err(param!("gcd(J, 2t) = gcd({j}, {n}) != 1"));
        }
        if m.is_zero() {
            return Err(param!("m must be nonzero"));
        }
        if !in_fqt(field, t, m) {
            return Err(param!("m (index {}) is not in F_{{q^t}}", field.index(m)));
        }
        Ok(PhiParams { t, j: j % n, m })
    }

    pub fn n(&self) -> usize {
        2 * self.t
    }

    /// q-exponent of `X^{σ^i}`.
    pub fn sigma_exp(&self, i: usize) -> usize {
        (self.j * i) % self.n()
    }
}

/// `α = X^{σ^{t−1}} + X^{σ^{2t−1}}`.
pub fn alpha<'f>(field: &'f FieldCtx, t: usize, j: usize) -> Result<LinPoly<'f>> {
    let pp = PhiParams::new(field, t, j, field.one())?;
    let one = field.one();
    Ok(LinPoly::from_terms(field, &[(pp.sigma_exp(t - 1), one), (pp.sigma_exp(2 * t - 1), one)]))
}

/// `β = m(X^σ − X^{σ^{t+1}})`.
pub fn beta<'f>(field: &'f FieldCtx, t: usize, j: usize, m: FieldElem) -> Result<LinPoly<'f>> {
    let pp = PhiParams::new(field, t, j, m)?;
    Ok(LinPoly::from_terms(field, &[(pp.sigma_exp(1), m), (pp.sigma_exp(t + 1), field.neg(m))]))
}

/// `φ_{m,σ} = X^{σ^{t−1}} + X^{σ^{2t−1}} + m(X^σ − X^{σ^{t+1}})`.
pub fn phi<'f>(field: &'f FieldCtx, params: &PhiParams) -> Result<LinPoly<'f>> {
    let pp = PhiParams::new(field, params.t, params.j, params.m)?;
    let t = pp.t;
    let one = field.one();
    Ok(LinPoly::from_terms(
        field,
        &[
            (pp.sigma_exp(t - 1), one),
            (pp.sigma_exp(2 * t - 1), one),
            (pp.sigma_exp(1), pp.m),
            (pp.sigma_exp(t + 1), field.neg(pp.m)),
        ],
    ))
}

/// `φ_μ = X^q + X^{q^{t+1}} + μ(X^{q^{2t−1}} − X^{q^{t−1}})`, the shape of
/// `φ_{m,q}^⊤` with `μ = m^{q^{t−1}}`.
pub fn phi_adjoint_form<'f>(field: &'f FieldCtx, t: usize, mu: FieldElem) -> Result<LinPoly<'f>> {
    check_tower(field, t)?;
    if mu.is_zero() {
        return Err(param!("mu must be nonzero"));
    }
    if !in_fqt(field, t, mu) {
        return Err(param!("mu (index {}) is not in F_{{q^t}}", field.index(mu)));
    }
    let one = field.one();
    Ok(LinPoly::from_terms(
        field,
        &[(1, one), (t + 1, one), (2 * t - 1, mu), (t - 1, field.neg(mu))],
    ))
}

/// `X^{q^s}` with `gcd(s, n) = 1`.
pub fn pseudoregulus(field: &FieldCtx, s: usize) -> Result<LinPoly<'_>> {
    let n = field.n() as usize;
    if gcd(s as u64, n as u64) != 1 {
        return Err(param!("gcd(s, n) = gcd({s}, {n}) != 1"));
    }
    Ok(LinPoly::monomial(field, s, field.one()))
}

/// `X^{q^{n−s}} + δ X^{q^s}` with `gcd(s, n) = 1` and `N_{q^n/q}(δ) ∉ {0, 1}`.
pub fn lunardon_polverino(field: &FieldCtx, s: usize, delta: FieldElem) -> Result<LinPoly<'_>> {
    let n = field.n() as usize;
    if n < 3 {
        return Err(param!("n = {n} but n >= 3 is required"));
    }
    if gcd(s as u64, n as u64) != 1 {
        return Err(param!("gcd(s, n) = gcd({s}, {n}) != 1"));
    }
    let norm = field.norm_to_fq(delta, n)?;
    if norm.is_zero() || norm == field.one() {
        return Err(param!("N(delta) must not be 0 or 1"));
    }
    let s = s % n;
    Ok(LinPoly::from_terms(field, &[(n - s, field.one()), (s, delta)]))
}

/// Which branch of the ψ family an `h` falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiSubfamily {
    /// `h ∈ F_{q^t}`
    InFqt,
    /// `h ∉ F_{q^t}`
    NotInFqt,
}

/// `ψ_{s,h} = X^{q^s} + X^{q^{s(t−1)}} + h^{1+q^s} X^{q^{s(t+1)}} + h^{1−q^{s(2t−1)}} X^{q^{s(2t−1)}}`
/// with `gcd(s, 2t) = 1` and `h^{q^t+1} = −1`.
pub fn quadrinomial_psi(
    field: &FieldCtx,
    t: usize,
    s: usize,
    h: FieldElem,
) -> Result<(LinPoly<'_>, PsiSubfamily)> {
    check_tower(field, t)?;
    let n = 2 * t;
    if gcd(s as u64, n as u64) != 1 {
        return Err(param!("gcd(s, 2t) = gcd({s}, {n}) != 1"));
    }
    let hh = field.mul(field.frob_q(h, t), h);
    if hh != field.neg(field.one()) {
        return Err(param!("h^(q^t+1) != -1"));
    }
    let e = |k: usize| (s * k) % n;
    let c3 = field.mul(h, field.frob_q(h, e(1)));
    let c4 = field.div(h, field.frob_q(h, e(2 * t - 1)))?;
    let one = field.one();
    let poly = LinPoly::from_terms(field, &[(e(1), one), (e(t - 1), one), (e(t + 1), c3), (e(2 * t - 1), c4)]);
    let sub = if in_fqt(field, t, h) { PsiSubfamily::InFqt } else { PsiSubfamily::NotInFqt };
    Ok((poly, sub))
}

/// `W = {x : x^{q^t} + x = 0}`, the complement of `F_{q^t}` in `F_{q^{2t}}`.
#[derive(Clone, Debug)]
pub struct WSubspace {
    t: usize,
    /// `F_p`-basis echelonized so that enumeration follows index order
    basis: Vec<FieldElem>,
}

impl WSubspace {
    pub fn new(field: &FieldCtx, t: usize) -> Result<Self> {
        check_tower(field, t)?;
        let map = LinPoly::from_terms(field, &[(0, field.one()), (t, field.one())]);
        let kernel = map.kernel_basis();
        let basis = echelon_by_leading(field, kernel);
        if basis.len() * 2 != field.degree() {
            return Err(Error::SelfCheck(alloc::format!(
                "W has F_p-dimension {} instead of {}",
                basis.len(),
                field.degree() / 2
            )));
        }
        Ok(WSubspace { t, basis })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// An `F_p`-basis.
    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn contains(&self, field: &FieldCtx, x: FieldElem) -> bool {
        field.add(field.frob_q(x, self.t), x).is_zero()
    }

    pub fn cardinality(&self, field: &FieldCtx) -> u64 {
        field.pow_p(self.basis.len())
    }

    /// All elements in canonical index order.
    pub fn elements<'a>(&'a self, field: &'a FieldCtx) -> impl Iterator<Item = FieldElem> + 'a {
        span_elements(field, &self.basis)
    }

    /// The index-smallest nonzero element.
    pub fn first_nonzero(&self, field: &FieldCtx) -> FieldElem {
        self.elements(field).nth(1).expect("W is nonzero")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// `(q−1)`-th powers of nonzero elements of `W`.
    QMinus1,
    /// `(q+1)`-th powers of nonzero elements of `W`.
    QPlus1,
    /// `(σ+1)`-th powers of nonzero elements of `W`, `σ = q^J`.
    SigmaPlus1 { j: usize },
    /// `{x ∈ F_{q^t}* : N_{q^t/q}(x) = 1}`.
    NormOne,
}

/// A power class computed two independent ways and found to agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerClassReport {
    pub label: ClassLabel,
    /// Canonical index order.
    pub elements: Vec<FieldElem>,
    pub cardinality: u64,
    /// The closed-form count, when one is known for these parameters.
    pub expected_cardinality: Option<u64>,
    /// Members are the solutions of `x^exponent = target` in `F_{q^t}*`.
    pub exponent: u128,
    pub target: FieldElem,
}

/// The defining equation `x^e = target` of a class inside `F_{q^t}*`.
pub fn class_equation(field: &FieldCtx, t: usize, label: ClassLabel) -> Result<(u128, FieldElem)> {
    check_tower(field, t)?;
    let q = field.q() as u128;
    let ord = fqt_order(field, t);
    let one = field.one();
    let minus_one = field.neg(one);
    let sign = |odd: bool| if odd { minus_one } else { one };
    Ok(match label {
        ClassLabel::QMinus1 => (ord / (q - 1), minus_one),
        ClassLabel::QPlus1 if t.is_multiple_of(2) => (ord / (q + 1), minus_one),
        ClassLabel::QPlus1 => (ord / 2, sign(q.div_ceil(2) % 2 == 1)),
        ClassLabel::SigmaPlus1 { j } => {
            if gcd(j as u64, 2 * t as u64) != 1 {
                return Err(param!("gcd(J, 2t) = gcd({j}, {}) != 1", 2 * t));
            }
            if t.is_multiple_of(2) {
                // (σ^t − 1)/(σ + 1) = Σ_{i<t} (−1)^{i+1} σ^i, reduced mod q^t − 1
                let mut e: u128 = 0;
                for i in 0..t {
                    let term = q.pow(((j * i) % t) as u32) % ord;
                    e = if i % 2 == 1 { (e + term) % ord } else { (e + ord - term) % ord };
                }
                (e, minus_one)
            } else {
                // W = ω·F_{q^t} and ω^{q^t−1} = −1, so the D-th powers form the
                // coset ω^D·H with H the δ-th powers, δ = gcd(D, q^t − 1)
                let d = (q.pow(j as u32) + 1) % ord;
                let delta = gcd128(d, ord);
                (ord / delta, sign((q.pow(j as u32) + 1) / delta % 2 == 1))
            }
        }
        ClassLabel::NormOne => (ord / (q - 1), one),
    })
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn expected_cardinality(field: &FieldCtx, t: usize, label: ClassLabel) -> Option<u64> {
    let q = field.q() as u128;
    let ord = fqt_order(field, t);
    let v = match label {
        ClassLabel::QMinus1 | ClassLabel::NormOne => ord / (q - 1),
        ClassLabel::QPlus1 if t.is_multiple_of(2) => ord / (q + 1),
        ClassLabel::QPlus1 => ord / 2,
        ClassLabel::SigmaPlus1 { .. } => return None,
    };
    Some(v as u64)
}

/// Membership of `x ∈ F_{q^t}*` in a class, by its defining equation.
pub fn in_class(field: &FieldCtx, t: usize, label: ClassLabel, x: FieldElem) -> Result<bool> {
    let (e, target) = class_equation(field, t, label)?;
    Ok(!x.is_zero() && in_fqt(field, t, x) && field.pow(x, e) == target)
}

/// Builds a class by direct enumeration and by its defining equation; any
/// difference between the two is a [`Error::SelfCheck`].
pub fn power_class(field: &FieldCtx, t: usize, label: ClassLabel) -> Result<PowerClassReport> {
    let (exponent, target) = class_equation(field, t, label)?;
    let q = field.q() as u128;
    let fqt = fqt_nonzero(field, t);
    let by_equation: Vec<FieldElem> =
        fqt.iter().copied().filter(|&x| field.pow(x, exponent) == target).collect();

    let mut direct: Vec<FieldElem> = match label {
        ClassLabel::NormOne => fqt
            .iter()
            .copied()
            .filter(|&x| field.norm_to_fq(x, t).map(|nx| nx == field.one()).unwrap_or(false))
            .collect(),
        _ => {
            let d: u128 = match label {
                ClassLabel::QMinus1 => q - 1,
                ClassLabel::QPlus1 => q + 1,
                ClassLabel::SigmaPlus1 { j } => q.pow(j as u32) + 1,
                ClassLabel::NormOne => unreachable!(),
            };
            let w = WSubspace::new(field, t)?;
            w.elements(field).skip(1).map(|x| field.pow(x, d)).collect()
        }
    };
    direct.sort_unstable();
    direct.dedup();

    if direct != by_equation {
        return Err(Error::SelfCheck(alloc::format!(
            "{label:?} at t = {t}: enumeration gives {} elements, the equation gives {}",
            direct.len(),
            by_equation.len()
        )));
    }
    let expected = expected_cardinality(field, t, label);
    if let Some(e) = expected {
        if e != direct.len() as u64 {
            return Err(Error::SelfCheck(alloc::format!(
                "{label:?} at t = {t}: {} elements, closed form says {e}",
                direct.len()
            )));
        }
    }
    Ok(PowerClassReport {
        label,
        cardinality: direct.len() as u64,
        elements: direct,
        expected_cardinality: expected,
        exponent,
        target,
    })
}

/// What the sufficient conditions say about scatteredness of `φ_{m,σ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryVerdict {
    Scattered,
    NotScattered,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MClassification {
    pub in_s_q_minus_1: bool,
    pub in_s_q_plus_1: bool,
    pub in_s_sigma_plus_1: bool,
    pub norm_one: bool,
    /// `m ∉ S_{q−1} ∪ S_{q+1}`, which guarantees `φ_{m,σ}` is scattered.
    pub scattered_guarantee: bool,
    /// `m ∈ S_{σ+1}`, which guarantees `φ_{m,σ}` is not scattered.
    pub not_scattered_guarantee: bool,
}

impl MClassification {
    pub fn theory_verdict(&self) -> TheoryVerdict {
        match (self.scattered_guarantee, self.not_scattered_guarantee) {
            (true, false) => TheoryVerdict::Scattered,
            (false, true) => TheoryVerdict::NotScattered,
            _ => TheoryVerdict::Undetermined,
        }
    }
}

/// Class membership of `m ∈ F_{q^t}*` and the resulting guarantees.
pub fn classify_m(field: &FieldCtx, t: usize, j: usize, m: FieldElem) -> Result<MClassification> {
    if m.is_zero() || !in_fqt(field, t, m) {
        return Err(domain!("m must be a nonzero element of F_{{q^t}}"));
    }
    let a = in_class(field, t, ClassLabel::QMinus1, m)?;
    let b = in_class(field, t, ClassLabel::QPlus1, m)?;
    let c = in_class(field, t, ClassLabel::SigmaPlus1 { j }, m)?;
    let nrm = in_class(field, t, ClassLabel::NormOne, m)?;
    Ok(MClassification {
        in_s_q_minus_1: a,
        in_s_q_plus_1: b,
        in_s_sigma_plus_1: c,
        norm_one: nrm,
        scattered_guarantee: !a && !b,
        not_scattered_guarantee: c,
    })
}

/// Outcome of the search for an `m` outside `S_{q−1} ∪ S_{q+1} ∪ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    /// Index-smallest `m ∉ S_{q−1} ∪ S_{q+1} ∪ T`, if any.
    pub m: Option<FieldElem>,
    pub union_size: u64,
    /// `q^t − 1`
    pub group_size: u64,
    /// The union bound as a fraction of `q^t − 1`: `num / den`.
    pub bound_num: u64,
    pub bound_den: u64,
    /// The bound is `< q^t − 1`, so a witness must exist.
    pub bound_holds: bool,
}

pub fn find_witness_m(field: &FieldCtx, t: usize) -> Result<WitnessSearch> {
    check_tower(field, t)?;
    let q = field.q();
    let (bound_num, bound_den) = if t.is_multiple_of(2) { (3 * q + 1, q * q - 1) } else { (q + 3, 2 * (q - 1)) };
    let mut union_size = 0u64;
    let mut first = None;
    let eqs = [
        class_equation(field, t, ClassLabel::QMinus1)?,
        class_equation(field, t, ClassLabel::QPlus1)?,
        class_equation(field, t, ClassLabel::NormOne)?,
    ];
    for m in fqt_nonzero(field, t) {
        if eqs.iter().any(|&(e, target)| field.pow(m, e) == target) {
            union_size += 1;
        } else if first.is_none() {
            first = Some(m);
        }
    }
    Ok(WitnessSearch {
        m: first,
        union_size,
        group_size: fqt_order(field, t) as u64,
        bound_num,
        bound_den,
        bound_holds: bound_num < bound_den,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u32, t: u32) -> FieldCtx {
        FieldCtx::new(q, 1, 2 * t).unwrap()
    }

    #[test]
    fn phi_coefficient_layout() {
        let f = field(3, 3);
        let pp = PhiParams::new(&f, 3, 1, f.one()).unwrap();
        let g = phi(&f, &pp).unwrap();
        let one = f.one();
        let want = [
            (1, one),
            (2, one),
            (4, f.neg(one)),
            (5, one),
        ];
        assert_eq!(g.terms().collect::<Vec<_>>(), want);
    }

    #[test]
    fn phi_is_alpha_plus_beta() {
        let f = field(3, 3);
        let m = fqt_nonzero(&f, 3)[5];
        for j in [1, 5] {
            let pp = PhiParams::new(&f, 3, j, m).unwrap();
            let sum = alpha(&f, 3, j).unwrap().add(&beta(&f, 3, j, m).unwrap());
            assert_eq!(phi(&f, &pp).unwrap(), sum);
        }
    }

    #[test]
    fn phi_rejects_bad_parameters() {
        let f = field(3, 3);
        let outside = f.nonzero_elements().find(|&x| !in_fqt(&f, 3, x)).unwrap();
        assert!(matches!(PhiParams::new(&f, 3, 1, outside), Err(Error::Param(_))));
        assert!(PhiParams::new(&f, 3, 2, f.one()).is_err());
        assert!(PhiParams::new(&f, 3, 3, f.one()).is_err());
        assert!(beta(&f, 3, 1, f.zero()).is_err());
        assert!(PhiParams::new(&f, 4, 1, f.one()).is_err());
    }

    #[test]
    fn phi_has_four_terms_for_every_j() {
        let f = field(3, 4);
        for j in (1..8).filter(|&j| gcd(j, 8) == 1) {
            let pp = PhiParams::new(&f, 4, j as usize, f.one()).unwrap();
            assert_eq!(phi(&f, &pp).unwrap().terms().count(), 4);
        }
    }

    #[test]
    fn adjoint_of_phi_is_adjoint_form() {
        let f = field(3, 3);
        for m in fqt_nonzero(&f, 3) {
            let pp = PhiParams::new(&f, 3, 1, m).unwrap();
            let mu = f.frob_q(m, 2);
            assert_eq!(phi(&f, &pp).unwrap().adjoint(), phi_adjoint_form(&f, 3, mu).unwrap());
        }
        assert!(phi_adjoint_form(&f, 3, f.zero()).is_err());
    }

    #[test]
    fn w_subspace_structure() {
        for (q, t) in [(3, 3), (3, 4), (5, 3)] {
            let f = field(q, t);
            let t = t as usize;
            let w = WSubspace::new(&f, t).unwrap();
            let all: Vec<_> = w.elements(&f).collect();
            assert_eq!(all.len() as u64, (q as u64).pow(t as u32));
            assert!(all.windows(2).all(|p| p[0] < p[1]));
            assert!(all.iter().all(|&x| w.contains(&f, x)));
            assert!(all[1..].iter().all(|&x| !in_fqt(&f, t, x)));
            assert!(all.iter().all(|&x| w.contains(&f, f.frob_q(x, 1))));
            assert!(all[1..].iter().all(|&x| w.contains(&f, f.inv(x).unwrap())));
        }
    }

    #[test]
    fn alpha_beta_kernels_and_images() {
        let f = field(3, 3);
        let w = WSubspace::new(&f, 3).unwrap();
        let a = alpha(&f, 3, 1).unwrap();
        let b = beta(&f, 3, 1, fqt_nonzero(&f, 3)[3]).unwrap();
        assert_eq!(a.kernel_dim(), 3);
        assert_eq!(b.kernel_dim(), 3);
        for x in a.kernel_basis() {
            assert!(w.contains(&f, x));
        }
        for x in b.kernel_basis() {
            assert!(in_fqt(&f, 3, x));
        }
        for x in f.elements().step_by(7) {
            assert!(in_fqt(&f, 3, a.eval(x)));
            assert!(w.contains(&f, b.eval(x)));
        }
    }

    #[test]
    fn small_power_classes() {
        let f = field(3, 3);
        let r = power_class(&f, 3, ClassLabel::QMinus1).unwrap();
        assert_eq!(r.cardinality, 13);
        assert_eq!(r.exponent, 13);
        let r = power_class(&f, 3, ClassLabel::QPlus1).unwrap();
        assert_eq!(r.cardinality, 13);
        assert_eq!(r.target, f.one());
        let r = power_class(&f, 3, ClassLabel::NormOne).unwrap();
        assert_eq!(r.cardinality, 13);
        let f4 = field(3, 4);
        let r = power_class(&f4, 4, ClassLabel::QPlus1).unwrap();
        assert_eq!(r.cardinality, 20);
        assert_eq!(r.exponent, 20);
    }

    #[test]
    fn sigma_classes_agree_with_enumeration() {
        for (q, t) in [(3u32, 3u32), (3, 4), (5, 3), (3, 5), (3, 6)] {
            let f = field(q, t);
            for j in (1..2 * t as usize).filter(|&j| gcd(j as u64, 2 * t as u64) == 1) {
                power_class(&f, t as usize, ClassLabel::SigmaPlus1 { j }).unwrap();
            }
        }
    }

    #[test]
    fn classification_flags_exclusive() {
        let f = field(3, 4);
        for m in fqt_nonzero(&f, 4) {
            let c = classify_m(&f, 4, 1, m).unwrap();
            assert!(!(c.scattered_guarantee && c.not_scattered_guarantee));
        }
    }

    #[test]
    fn m_equal_one_cases() {
        let f = field(5, 3);
        let c = classify_m(&f, 3, 1, f.one()).unwrap();
        assert!(c.scattered_guarantee);
        let f = field(3, 3);
        let c = classify_m(&f, 3, 1, f.one()).unwrap();
        assert!(c.in_s_q_plus_1);
        assert!(c.not_scattered_guarantee);
    }

    #[test]
    fn witness_search_bounds() {
        let f = field(3, 6);
        let w = find_witness_m(&f, 6).unwrap();
        assert!(!w.bound_holds);
        assert_eq!(w.group_size, 728);
        let f = field(7, 3);
        let w = find_witness_m(&f, 3).unwrap();
        assert!(w.bound_holds);
        let m = w.m.unwrap();
        let c = classify_m(&f, 3, 1, m).unwrap();
        assert!(!c.in_s_q_minus_1 && !c.in_s_q_plus_1 && !c.norm_one);
    }

    #[test]
    fn psi_parameters() {
        let f = field(3, 3);
        assert!(quadrinomial_psi(&f, 3, 1, f.one()).is_err());
        let minus_one = f.neg(f.one());
        let h = f
            .nonzero_elements()
            .find(|&h| f.mul(f.frob_q(h, 3), h) == minus_one)
            .unwrap();
        let (g, _) = quadrinomial_psi(&f, 3, 1, h).unwrap();
        assert_eq!(g.terms().count(), 4);
        // q^t = 27 ≡ 3 mod 4, so no h in F_{q^t} squares to -1
        let f = field(5, 3);
        let h = fqt_nonzero(&f, 3).into_iter().find(|&h| f.mul(h, h) == f.neg(f.one())).unwrap();
        assert_eq!(quadrinomial_psi(&f, 3, 1, h).unwrap().1, PsiSubfamily::InFqt);
    }

    #[test]
    fn pseudoregulus_and_lp_parameters() {
        let f = field(3, 3);
        assert_eq!(pseudoregulus(&f, 1).unwrap(), LinPoly::monomial(&f, 1, f.one()));
        assert!(pseudoregulus(&f, 2).is_err());
        assert!(lunardon_polverino(&f, 1, f.zero()).is_err());
        assert!(lunardon_polverino(&f, 1, f.one()).is_err());
        let d = f
            .nonzero_elements()
            .find(|&d| f.norm_to_fq(d, 6).unwrap() != f.one())
            .unwrap();
        assert!(lunardon_polverino(&f, 1, d).is_ok());
    }
}
