//! q-polynomials `Σ a_i X^{q^i}` modulo `X^{q^n} − X`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Result};
use crate::gfield::{FieldCtx, FieldElem, FpMatrix, FpOperator};

/// A q-polynomial over `F_{q^n}` reduced modulo `X^{q^n} − X`.
///
/// `coeffs[i]` is the coefficient of `X^{q^i}`; there are exactly `n` of them.
#[derive(Clone)]
pub struct LinPoly<'f> {
    field: &'f FieldCtx,
    coeffs: Vec<FieldElem>,
}

impl PartialEq for LinPoly<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.field, other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for LinPoly<'_> {}

impl fmt::Debug for LinPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, u64)> = self.terms().map(|(i, a)| (i, self.field.index(a))).collect();
        f.debug_struct("LinPoly").field("n", &self.coeffs.len()).field("terms", &terms).finish()
    }
}

impl<'f> LinPoly<'f> {
    pub fn zero(field: &'f FieldCtx) -> Self {
        LinPoly { field, coeffs: vec![FieldElem::ZERO; field.n() as usize] }
    }

    /// The identity `X`.
    pub fn identity(field: &'f FieldCtx) -> Self {
        Self::monomial(field, 0, field.one())
    }

    /// `c · X^{q^i}` with `i` taken mod `n`.
    pub fn monomial(field: &'f FieldCtx, i: usize, c: FieldElem) -> Self {
        let mut f = Self::zero(field);
        let n = f.coeffs.len();
        f.coeffs[i % n] = c;
        f
    }

    /// `c · X^{σ^i}` with `σ = q^J`, stored at q-exponent `i·J mod n`.
    pub fn sigma_monomial(field: &'f FieldCtx, i: usize, j: usize, c: FieldElem) -> Self {
        let n = field.n() as usize;
        Self::monomial(field, (i % n) * (j % n) % n, c)
    }

    pub fn from_coeffs(field: &'f FieldCtx, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != field.n() as usize {
            return Err(domain!("expected {} coefficients, got {}", field.n(), coeffs.len()));
        }
        Ok(LinPoly { field, coeffs })
    }

    /// Sums `c · X^{q^i}` over the given terms (exponents taken mod `n`).
    pub fn from_terms(field: &'f FieldCtx, terms: &[(usize, FieldElem)]) -> Self {
        let mut f = Self::zero(field);
        let n = f.coeffs.len();
        for &(i, c) in terms {
            f.coeffs[i % n] = field.add(f.coeffs[i % n], c);
        }
        f
    }

    #[inline]
    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs[i % self.coeffs.len()]
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Nonzero terms `(i, a_i)` by increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, FieldElem)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|(_, a)| !a.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    /// Largest `i` with `a_i ≠ 0`.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|a| !a.is_zero())
    }

    /// True when `self = c·X` for some `c` (including zero).
    pub fn is_scalar_multiple_of_identity(&self) -> bool {
        self.coeffs.iter().skip(1).all(|a| a.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| self.field.add(a, b)).collect();
        LinPoly { field: self.field, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| self.field.sub(a, b)).collect();
        LinPoly { field: self.field, coeffs }
    }

    /// Left multiplication `c · f`.
    pub fn scale(&self, c: FieldElem) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(c, a)).collect();
        LinPoly { field: self.field, coeffs }
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = self.field;
        self.terms().fold(f.zero(), |acc, (i, a)| f.add(acc, f.mul(a, f.frob_q(x, i))))
    }

    /// `self ∘ g` reduced modulo `X^{q^n} − X`.
    pub fn compose(&self, g: &Self) -> Self {
        let f = self.field;
        let n = self.n();
        let mut out = vec![FieldElem::ZERO; n];
        for (i, a) in self.terms() {
            for (j, b) in g.terms() {
                let k = (i + j) % n;
                out[k] = f.add(out[k], f.mul(a, f.frob_q(b, i)));
            }
        }
        LinPoly { field: f, coeffs: out }
    }

    /// Adjoint with respect to `(x, y) ↦ Tr_{q^n/q}(xy)`:
    /// `Σ a_i X^{q^i} ↦ Σ a_i^{q^{n−i}} X^{q^{n−i}}`.
    pub fn adjoint(&self) -> Self {
        let f = self.field;
        let n = self.n();
        let mut out = vec![FieldElem::ZERO; n];
        for (i, a) in self.terms() {
            let k = (n - i) % n;
            out[k] = f.frob_q(a, k);
        }
        LinPoly { field: f, coeffs: out }
    }

    /// Coefficients raised to `p^k`; the graph of the result is
    /// `{(x^{p^k}, f(x)^{p^k})}`.
    pub fn frobenius_twist(&self, k: usize) -> Self {
        let f = self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.frobenius(a, k)).collect();
        LinPoly { field: f, coeffs }
    }

    /// Images `f(X^j)` of the `F_p` power basis.
    pub fn basis_images(&self) -> Vec<FieldElem> {
        (0..self.field.degree()).map(|j| self.eval(self.field.unit(j))).collect()
    }

    /// The map as a precomputed `F_p`-linear operator, for repeated evaluation.
    pub fn operator(&self) -> FpOperator {
        self.field.operator(&self.basis_images())
    }

    pub fn to_matrix(&self) -> FqLinearMap {
        FqLinearMap::from_images(self.field, &self.basis_images())
    }

    /// `F_q`-dimension of the kernel.
    pub fn kernel_dim(&self) -> usize {
        self.to_matrix().kernel_dim()
    }

    /// `F_q`-dimension of the image.
    pub fn image_dim(&self) -> usize {
        self.to_matrix().rank()
    }

    /// An `F_p`-basis of the kernel.
    pub fn kernel_basis(&self) -> Vec<FieldElem> {
        self.to_matrix().kernel_basis(self.field)
    }

    /// The unique q-polynomial taking `images[j]` at `X^j`, if the map is `F_q`-linear.
    pub fn interpolate(field: &'f FieldCtx, images: &[FieldElem]) -> Result<Self> {
        let d = field.degree();
        let n = field.n() as usize;
        if images.len() != d {
            return Err(domain!("need {d} basis images, got {}", images.len()));
        }
        // unknowns: the D coordinates of each of the n coefficients
        let rows = d * d;
        let mut sys = FpMatrix::zeros(rows, n * d, field.p());
        for i in 0..n {
            for l in 0..d {
                let a = field.unit(l);
                for j in 0..d {
                    let v = field.mul(a, field.frob_q(field.unit(j), i));
                    for (r, c) in field.coeffs(v).into_iter().enumerate() {
                        sys.set(j * d + r, i * d + l, c);
                    }
                }
            }
        }
        let rhs: Vec<u32> = images.iter().flat_map(|&y| field.coeffs(y)).collect();
        let sol = sys
            .solve(&rhs)
            .ok_or_else(|| domain!("the map is not F_q-linear"))?;
        let coeffs = (0..n)
            .map(|i| field.from_coeffs(&sol[i * d..(i + 1) * d]))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinPoly { field, coeffs })
    }
}

/// An `F_q`-linear endomorphism of `F_{q^n}` as a matrix.
///
/// Stored over `F_p` in the power basis (`eps·n` square); for `eps = 1`
/// this is exactly the `F_q`-matrix. Ranks are reported over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqLinearMap {
    eps: usize,
    matrix: FpMatrix,
}

impl FqLinearMap {
    pub fn from_images(field: &FieldCtx, images: &[FieldElem]) -> Self {
        let cols: Vec<Vec<u32>> = images.iter().map(|&y| field.coeffs(y)).collect();
        FqLinearMap {
            eps: field.eps() as usize,
            matrix: FpMatrix::from_columns(&cols, field.degree(), field.p()),
        }
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn apply(&self, field: &FieldCtx, x: FieldElem) -> FieldElem {
        let y = self.matrix.mul_vec(&field.coeffs(x));
        field.from_coeffs(&y).expect("square matrix")
    }

    /// Rank over `F_q`.
    pub fn rank(&self) -> usize {
        self.matrix.rank() / self.eps
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() / self.eps - self.rank()
    }

    pub fn kernel_basis(&self, field: &FieldCtx) -> Vec<FieldElem> {
        self.matrix
            .nullspace()
            .into_iter()
            .map(|v| field.from_coeffs(&v).expect("D coordinates"))
            .collect()
    }
}
