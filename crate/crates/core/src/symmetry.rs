//! Graph stabilizers, right idealizers and ΓL(2, q^n)-equivalence.
//!
//! Every question here reduces to one `F_p`-linear system: the coefficients
//! of `g ∘ (aX + b·h) − cX − d·h` are `F_p`-linear in `(a, b, c, d)`, so the
//! matrices `[[a, b], [c, d]]` sending the graph of `h` into the graph of `g`
//! form an `F_p`-subspace of `F_{q^n}^4`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::families::{fqt_order, gcd, in_fqt, PhiParams};
use crate::gfield::subfield::{echelon_by_leading, span_elements};
use crate::gfield::{FieldCtx, FieldElem, FpMatrix};
use crate::linpoly::LinPoly;
use crate::scatter::linear_set;

/// Solution spaces up to this many elements are enumerated outright.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// `[[a, b], [c, d]]` over `F_{q^n}`; ordered by the entries' indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn identity(field: &FieldCtx) -> Self {
        Mat2 { a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    pub fn det(&self, field: &FieldCtx) -> FieldElem {
        field.sub(field.mul(self.a, self.d), field.mul(self.b, self.c))
    }

    pub fn add(&self, field: &FieldCtx, o: &Mat2) -> Mat2 {
        Mat2 {
            a: field.add(self.a, o.a),
            b: field.add(self.b, o.b),
            c: field.add(self.c, o.c),
            d: field.add(self.d, o.d),
        }
    }

    pub fn scale(&self, field: &FieldCtx, s: u32) -> Mat2 {
        Mat2 {
            a: field.scale(self.a, s),
            b: field.scale(self.b, s),
            c: field.scale(self.c, s),
            d: field.scale(self.d, s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    /// `(ax + by, cx + dy)`
    pub fn apply(&self, field: &FieldCtx, x: FieldElem, y: FieldElem) -> (FieldElem, FieldElem) {
        (
            field.add(field.mul(self.a, x), field.mul(self.b, y)),
            field.add(field.mul(self.c, x), field.mul(self.d, y)),
        )
    }

    pub fn inverse(&self, field: &FieldCtx) -> Result<Mat2> {
        let di = field.inv(self.det(field)).map_err(|_| domain!("singular matrix has no inverse"))?;
        Ok(Mat2 {
            a: field.mul(self.d, di),
            b: field.neg(field.mul(self.b, di)),
            c: field.neg(field.mul(self.c, di)),
            d: field.mul(self.a, di),
        })
    }

    /// Entries raised to `p^k`.
    pub fn frobenius(&self, field: &FieldCtx, k: usize) -> Mat2 {
        Mat2 {
            a: field.frobenius(self.a, k),
            b: field.frobenius(self.b, k),
            c: field.frobenius(self.c, k),
            d: field.frobenius(self.d, k),
        }
    }

    fn from_coords(field: &FieldCtx, v: &[u32]) -> Mat2 {
        let d = field.degree();
        let e = |i: usize| field.from_coeffs(&v[i * d..(i + 1) * d]).expect("D coordinates");
        Mat2 { a: e(0), b: e(1), c: e(2), d: e(3) }
    }
}

/// An `F_p`-basis of `{[[a, b], [c, d]] : g ∘ (aX + b·h) = cX + d·h}`.
fn solution_space(g: &LinPoly<'_>, h: &LinPoly<'_>) -> Vec<Mat2> {
    let field = g.field();
    let d = field.degree();
    let n = g.n();
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(4 * d);
    let flatten = |r: &LinPoly<'_>| -> Vec<u32> { r.coeffs().iter().flat_map(|&c| field.coeffs(c)).collect() };
    for block in 0..4 {
        for j in 0..d {
            let e = field.unit(j);
            let residual = match block {
                0 => g.compose(&LinPoly::monomial(field, 0, e)),
                1 => g.compose(&h.scale(e)),
                2 => LinPoly::monomial(field, 0, field.neg(e)),
                _ => h.scale(field.neg(e)),
            };
            columns.push(flatten(&residual));
        }
    }
    let system = FpMatrix::from_columns(&columns, n * d, field.p());
    system.nullspace().iter().map(|v| Mat2::from_coords(field, v)).collect()
}

/// Every `F_p`-combination of `basis`, the coordinate vector read as a
/// base-`p` integer with the first coordinate least significant.
fn enumerate_span(field: &FieldCtx, basis: &[Mat2]) -> Vec<Mat2> {
    let k = basis.len();
    let p = field.p();
    let mut out = Vec::with_capacity((p as usize).pow(k as u32));
    let mut digits = vec![0u32; k];
    let mut cur = Mat2 { a: field.zero(), b: field.zero(), c: field.zero(), d: field.zero() };
    loop {
        out.push(cur);
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            cur = cur.add(field, &basis[i]);
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn span_size(field: &FieldCtx, dim: usize) -> u128 {
    (field.p() as u128).pow(dim as u32)
}

/// An invertible member of the span of `basis`, or `None` when `det`
/// vanishes on the whole span.
///
/// `det` is an `F_p`-quadratic map, so (with `p` odd) it vanishes on the span
/// iff it vanishes at every `e_i` and every `e_i + e_j`. Small spans are also
/// enumerated, and then the first invertible member in coordinate order is
/// returned.
fn find_invertible(field: &FieldCtx, basis: &[Mat2]) -> Result<Option<Mat2>> {
    let det_nonzero = |m: &Mat2| !m.det(field).is_zero();
    let mut probe = None;
    'outer: for i in 0..basis.len() {
        if det_nonzero(&basis[i]) {
            probe = Some(basis[i]);
            break;
        }
        for j in 0..i {
            let s = basis[i].add(field, &basis[j]);
            if det_nonzero(&s) {
                probe = Some(s);
                break 'outer;
            }
        }
    }
    if span_size(field, basis.len()) > ENUMERATION_LIMIT {
        return Ok(probe);
    }
    let first = enumerate_span(field, basis).into_iter().find(det_nonzero);
    if first.is_some() != probe.is_some() {
        return Err(Error::SelfCheck(
            "enumeration and the polarization test disagree on invertibility".into(),
        ));
    }
    Ok(first)
}

/// The matrices `A` with `A·U_f ⊆ U_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerSet {
    /// `F_p`-basis.
    pub basis: Vec<Mat2>,
    pub cardinality: u128,
    /// Sorted; present when `cardinality ≤ ENUMERATION_LIMIT`.
    pub members: Option<Vec<Mat2>>,
    pub invertible_count: Option<u64>,
    /// Number of distinct upper-right entries `b`.
    pub b_value_count: u128,
}

impl StabilizerSet {
    fn from_basis(field: &FieldCtx, basis: Vec<Mat2>) -> Self {
        let cardinality = span_size(field, basis.len());
        let members = (cardinality <= ENUMERATION_LIMIT).then(|| {
            let mut all = enumerate_span(field, &basis);
            all.sort_unstable();
            all
        });
        let invertible_count =
            members.as_ref().map(|ms| ms.iter().filter(|m| !m.det(field).is_zero()).count() as u64);
        let b_rows: Vec<Vec<u32>> = basis.iter().map(|m| field.coeffs(m.b)).collect();
        let b_rank = if b_rows.is_empty() {
            0
        } else {
            FpMatrix::from_rows(&b_rows, field.degree(), field.p()).rank()
        };
        StabilizerSet { basis, cardinality, members, invertible_count, b_value_count: span_size(field, b_rank) }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// The stabilizer of the graph `U_f = {(x, f(x))}` in `F_{q^n}^{2×2}`.
pub fn graph_stabilizer(f: &LinPoly<'_>) -> Result<StabilizerSet> {
    if f.is_zero() {
        return Err(domain!("the zero polynomial is not a valid input"));
    }
    Ok(StabilizerSet::from_basis(f.field(), solution_space(f, f)))
}

/// The stabilizer of `U_{φ_{m,σ}}` built from its closed form
/// `{[[a, b], [4m b^σ, a^σ]] : a ∈ F_{q^{gcd(t,2)}}, b ∈ W, b^{σ²} = m^{1−σ} b}`,
/// valid for `t > 4`.
pub fn stabilizer_formula_phi(field: &FieldCtx, params: &PhiParams) -> Result<StabilizerSet> {
    let pp = PhiParams::new(field, params.t, params.j, params.m)?;
    let t = pp.t;
    if t <= 4 {
        return Err(Error::OutOfRange(alloc::format!(
            "the closed-form stabilizer needs t > 4, got t = {t}; use graph_stabilizer"
        )));
    }
    let e = field.eps() as usize;
    let sigma = |x: FieldElem, i: usize| field.frob_q(x, pp.sigma_exp(i));
    let m = pp.m;
    let b_basis: Vec<FieldElem> = if t % 2 == 0 {
        // b^{σ^t} + b = 0 and b^{σ²} − m^{1−σ} b = 0, as one F_p-system
        let coef = field.div(m, sigma(m, 1))?;
        let d = field.degree();
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let b = field.unit(j);
                let mut col = field.coeffs(field.add(sigma(b, t), b));
                col.extend(field.coeffs(field.sub(sigma(b, 2), field.mul(coef, b))));
                col
            })
            .collect();
        FpMatrix::from_columns(&cols, 2 * d, field.p())
            .nullspace()
            .iter()
            .map(|v| field.from_coeffs(v).expect("D coordinates"))
            .collect()
    } else {
        // b = λ z m^R with λ ∈ F_q, z^σ + z = 0, R = −(σ^{t+1} − 1)/(σ² − 1)
        let zmap = LinPoly::from_terms(field, &[(0, field.one()), (pp.sigma_exp(1), field.one())]);
        let zspace = echelon_by_leading(field, zmap.kernel_basis());
        let z = span_elements(field, &zspace).nth(1).ok_or_else(|| {
            Error::SelfCheck("z^σ + z = 0 has no nonzero solution".into())
        })?;
        let ord = fqt_order(field, t);
        let q = field.q() as u128;
        let mut r: u128 = 0;
        for i in 0..t.div_ceil(2) {
            r = (r + q.pow(((2 * i * pp.j) % t) as u32)) % ord;
        }
        let r = (ord - r) % ord;
        let zm = field.mul(z, field.pow(m, r));
        let fq = field.subfield(e)?;
        fq.basis().iter().map(|&l| field.mul(l, zm)).collect()
    };
    let a_field = field.subfield(e * gcd(t as u64, 2) as usize)?;
    let four_m = field.mul(field.from_fp(4), m);
    let mut basis: Vec<Mat2> = a_field
        .basis()
        .iter()
        .map(|&a| Mat2 { a, b: field.zero(), c: field.zero(), d: sigma(a, 1) })
        .collect();
    basis.extend(b_basis.iter().map(|&b| Mat2 {
        a: field.zero(),
        b,
        c: field.mul(four_m, sigma(b, 1)),
        d: field.zero(),
    }));
    Ok(StabilizerSet::from_basis(field, basis))
}

/// The stabilizer by brute force over all `(a, b)`; for `q^n ≤ budget`.
pub fn naive_stabilizer(f: &LinPoly<'_>, budget: u64) -> Result<Vec<Mat2>> {
    let field = f.field();
    if field.size() > budget {
        return Err(Error::Resource(alloc::format!(
            "the naive sweep visits {}^2 pairs, over the budget of {budget}",
            field.size()
        )));
    }
    if f.is_zero() || f.is_scalar_multiple_of_identity() {
        return Err(domain!("need f independent of X"));
    }
    let d = field.degree();
    let xs: Vec<FieldElem> = (0..d).map(|j| field.unit(j)).collect();
    let fx: Vec<FieldElem> = xs.iter().map(|&x| f.eval(x)).collect();
    // two points of the graph that are F_{q^n}-independent pin down (c, d)
    let (i0, i1) = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .find(|&(i, j)| !field.sub(field.mul(xs[i], fx[j]), field.mul(xs[j], fx[i])).is_zero())
        .ok_or_else(|| domain!("graph spans a single F_{{q^n}}-line"))?;
    let det = field.sub(field.mul(xs[i0], fx[i1]), field.mul(xs[i1], fx[i0]));
    let det_inv = field.inv(det)?;
    let mut out = Vec::new();
    for a in field.elements() {
        for b in field.elements() {
            let img: Vec<FieldElem> =
                (0..d).map(|j| f.eval(field.add(field.mul(a, xs[j]), field.mul(b, fx[j])))).collect();
            // c·x + d·f(x) = img at the two pinned points
            let c = field.mul(field.sub(field.mul(img[i0], fx[i1]), field.mul(img[i1], fx[i0])), det_inv);
            let dd = field.mul(field.sub(field.mul(xs[i0], img[i1]), field.mul(xs[i1], img[i0])), det_inv);
            if (0..d).all(|j| field.add(field.mul(c, xs[j]), field.mul(dd, fx[j])) == img[j]) {
                out.push(Mat2 { a, b, c, d: dd });
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `|{h : c ∘ h ∈ C_f for all c ∈ C_f}|` with `C_f = ⟨X, f⟩_{F_{q^n}}`.
pub fn right_idealizer_cardinality(f: &LinPoly<'_>) -> Result<u128> {
    if f.is_zero() || f.is_scalar_multiple_of_identity() {
        return Err(domain!("need f independent of X"));
    }
    let field = f.field();
    let d = field.degree();
    let n = f.n();
    let rows = 2 * n * d;
    let flatten = |r1: &LinPoly<'_>, r2: &LinPoly<'_>| -> Vec<u32> {
        r1.coeffs().iter().chain(r2.coeffs()).flat_map(|&c| field.coeffs(c)).collect()
    };
    let zero = LinPoly::zero(field);
    let x = LinPoly::identity(field);
    let mut columns = Vec::with_capacity(n * d + 4 * d);
    // h = Σ h_l X^{q^l}: residuals h − u1 X − v1 f and f∘h − u2 X − v2 f
    for l in 0..n {
        for j in 0..d {
            let h = LinPoly::monomial(field, l, field.unit(j));
            columns.push(flatten(&h, &f.compose(&h)));
        }
    }
    for block in 0..4 {
        for j in 0..d {
            let e = field.neg(field.unit(j));
            let col = match block {
                0 => flatten(&x.scale(e), &zero),
                1 => flatten(&f.scale(e), &zero),
                2 => flatten(&zero, &x.scale(e)),
                _ => flatten(&zero, &f.scale(e)),
            };
            columns.push(col);
        }
    }
    let dim = FpMatrix::from_columns(&columns, rows, field.p()).nullspace().len();
    Ok(span_size(field, dim))
}

/// `(k, M)` such that `M·(x^{p^k}, f(x)^{p^k})` lies in `U_g` for every `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemilinearWitness {
    pub k: usize,
    pub m: Mat2,
}

impl SemilinearWitness {
    /// Checks invertibility and the graph condition on an `F_p`-basis, which
    /// suffices since both sides are `F_p`-linear in `x`.
    pub fn verify(&self, f: &LinPoly<'_>, g: &LinPoly<'_>) -> bool {
        let field = f.field();
        if self.m.det(field).is_zero() {
            return false;
        }
        let h = f.frobenius_twist(self.k);
        (0..field.degree()).all(|j| {
            let z = field.unit(j);
            let (y, w) = self.m.apply(field, z, h.eval(z));
            g.eval(y) == w
        })
    }

    /// The witness for `(g, f)` from one for `(f, g)`.
    pub fn inverse(&self, field: &FieldCtx) -> Result<SemilinearWitness> {
        let d = field.degree();
        let k = (d - self.k % d) % d;
        Ok(SemilinearWitness { k, m: self.m.inverse(field)?.frobenius(field, k) })
    }
}

/// Why no ΓL-equivalence exists: for each automorphism `x ↦ x^{p^k}`, the
/// dimension of the solution space on which `det` vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsenceCertificate {
    pub solution_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(SemilinearWitness),
    Inequivalent(AbsenceCertificate),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&SemilinearWitness> {
        match self {
            Equivalence::Equivalent(w) => Some(w),
            Equivalence::Inequivalent(_) => None,
        }
    }
}

/// The solution space for a single automorphism exponent `k`.
pub fn equivalence_space(f: &LinPoly<'_>, g: &LinPoly<'_>, k: usize) -> Vec<Mat2> {
    solution_space(g, &f.frobenius_twist(k))
}

/// Decides whether `U_f` and `U_g` lie in one `ΓL(2, q^n)`-orbit.
///
/// Tries `k = 0, 1, …, eps·n − 1` and returns the witness for the smallest
/// working `k`; if none works, every `k` is certified empty.
pub fn are_equivalent(f: &LinPoly<'_>, g: &LinPoly<'_>) -> Result<Equivalence> {
    let field = f.field();
    if !core::ptr::eq(field, g.field()) {
        return Err(domain!("polynomials over different field contexts"));
    }
    if f.is_zero() || g.is_zero() {
        return Err(domain!("the zero polynomial is not a valid input"));
    }
    if f == g {
        return Ok(Equivalence::Equivalent(SemilinearWitness { k: 0, m: Mat2::identity(field) }));
    }
    let mut dims = Vec::with_capacity(field.degree());
    for k in 0..field.degree() {
        let space = equivalence_space(f, g, k);
        if let Some(m) = find_invertible(field, &space)? {
            let w = SemilinearWitness { k, m };
            if !w.verify(f, g) {
                return Err(Error::SelfCheck(alloc::format!("witness for k = {k} fails verification")));
            }
            return Ok(Equivalence::Equivalent(w));
        }
        dims.push(space.len());
    }
    Ok(Equivalence::Inequivalent(AbsenceCertificate { solution_dims: dims }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Count(u128),
    Histogram(Vec<(usize, u64)>),
}

/// A ΓL-invariant on which two polynomials differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantMismatch {
    pub invariant: &'static str,
    pub left: InvariantValue,
    pub right: InvariantValue,
}

/// Compares cheap invariants; `Some` certifies nonequivalence, `None` is
/// inconclusive.
pub fn nonequivalence_certificate(f: &LinPoly<'_>, g: &LinPoly<'_>) -> Result<Option<InvariantMismatch>> {
    let sf = graph_stabilizer(f)?;
    let sg = graph_stabilizer(g)?;
    let mismatch = |name, l, r| Some(InvariantMismatch { invariant: name, left: l, right: r });
    if sf.cardinality != sg.cardinality {
        return Ok(mismatch(
            "stabilizer cardinality",
            InvariantValue::Count(sf.cardinality),
            InvariantValue::Count(sg.cardinality),
        ));
    }
    if let (Some(a), Some(b)) = (sf.invertible_count, sg.invertible_count) {
        if a != b {
            return Ok(mismatch(
                "invertible stabilizer elements",
                InvariantValue::Count(a as u128),
                InvariantValue::Count(b as u128),
            ));
        }
    }
    let lf = linear_set(f)?;
    let lg = linear_set(g)?;
    if lf.size != lg.size {
        return Ok(mismatch(
            "linear set size",
            InvariantValue::Count(lf.size as u128),
            InvariantValue::Count(lg.size as u128),
        ));
    }
    if lf.weight_histogram != lg.weight_histogram {
        let h = |m: &BTreeMap<usize, u64>| m.iter().map(|(&w, &c)| (w, c)).collect();
        return Ok(mismatch(
            "weight distribution",
            InvariantValue::Histogram(h(&lf.weight_histogram)),
            InvariantValue::Histogram(h(&lg.weight_histogram)),
        ));
    }
    Ok(None)
}

/// Equivalence of `(f, g)` and of `(f^⊤, g^⊤)`; equivalent inputs must have
/// equivalent adjoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointEquivalenceReport {
    pub direct: Equivalence,
    pub adjoint: Equivalence,
}

impl AdjointEquivalenceReport {
    pub fn consistent(&self) -> bool {
        !self.direct.is_equivalent() || self.adjoint.is_equivalent()
    }
}

pub fn adjoint_equivalence_property(f: &LinPoly<'_>, g: &LinPoly<'_>) -> Result<AdjointEquivalenceReport> {
    let direct = are_equivalent(f, g)?;
    let adjoint = are_equivalent(&f.adjoint(), &g.adjoint())?;
    let report = AdjointEquivalenceReport { direct, adjoint };
    if !report.consistent() {
        return Err(Error::SelfCheck("equivalent polynomials with inequivalent adjoints".into()));
    }
    Ok(report)
}

/// Whether `m ∈ F_{q^t}` has `N_{q^t/q}(m) = 1`.
pub fn norm_is_one(field: &FieldCtx, t: usize, m: FieldElem) -> Result<bool> {
    if !in_fqt(field, t, m) {
        return Err(domain!("m is not in F_{{q^t}}"));
    }
    Ok(field.norm_to_fq(m, t)? == field.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fqt_nonzero, phi, pseudoregulus};

    #[test]
    fn pseudoregulus_stabilizer_is_diagonal_field() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        let g = pseudoregulus(&f, 1).unwrap();
        let s = graph_stabilizer(&g).unwrap();
        assert_eq!(s.cardinality, 729);
        for m in s.members.as_ref().unwrap() {
            assert!(m.is_diagonal());
            assert_eq!(m.d, f.frob_q(m.a, 1));
        }
        assert_eq!(right_idealizer_cardinality(&g).unwrap(), 729);
        assert_eq!(s.invertible_count, Some(728));
    }

    #[test]
    fn linear_system_matches_naive_sweep() {
        let f = FieldCtx::new(3, 1, 4).unwrap();
        let g = LinPoly::from_terms(&f, &[(1, f.one()), (3, f.elem(5).unwrap())]);
        let s = graph_stabilizer(&g).unwrap();
        assert_eq!(s.members.unwrap(), naive_stabilizer(&g, 1000).unwrap());
    }

    #[test]
    fn witness_inverse_round_trip() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        let a = pseudoregulus(&f, 1).unwrap();
        let b = pseudoregulus(&f, 5).unwrap();
        let w = are_equivalent(&a, &b).unwrap();
        let w = *w.witness().expect("X^q and X^{q^5} are equivalent");
        assert!(w.verify(&a, &b));
        let back = w.inverse(&f).unwrap();
        assert!(back.verify(&b, &a));
    }

    #[test]
    fn reflexive_shortcut() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        let m = fqt_nonzero(&f, 3)[4];
        let g = phi(&f, &PhiParams::new(&f, 3, 1, m).unwrap()).unwrap();
        let w = are_equivalent(&g, &g).unwrap();
        assert_eq!(w.witness().unwrap().m, Mat2::identity(&f));
        assert!(nonequivalence_certificate(&g, &g).unwrap().is_none());
    }

    #[test]
    fn formula_out_of_range() {
        let f = FieldCtx::new(3, 1, 6).unwrap();
        let pp = PhiParams::new(&f, 3, 1, f.one()).unwrap();
        assert!(matches!(stabilizer_formula_phi(&f, &pp), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn polarization_agrees_with_enumeration() {
        let f = FieldCtx::new(3, 1, 4).unwrap();
        // diagonal matrices with a, d ∈ F_p: det = ad, never identically zero
        let basis = [
            Mat2 { a: f.one(), b: f.zero(), c: f.zero(), d: f.zero() },
            Mat2 { a: f.zero(), b: f.zero(), c: f.zero(), d: f.one() },
        ];
        let m = find_invertible(&f, &basis).unwrap().unwrap();
        assert!(!m.det(&f).is_zero());
        // strictly upper triangular: det ≡ 0
        let basis = [Mat2 { a: f.zero(), b: f.one(), c: f.zero(), d: f.zero() }];
        assert!(find_invertible(&f, &basis).unwrap().is_none());
    }
}
