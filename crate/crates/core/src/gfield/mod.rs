//! Arithmetic in `GF(p^D)` with `D = eps · n`, viewed as the tower
//! `F_p ⊂ F_q ⊂ F_{q^n}` with `q = p^eps`.
//!
//! Elements are stored as packed coefficient vectors over `F_p` (one lane of
//! a `u64` per coefficient of the power basis `1, X, …, X^{D-1}`). Because
//! the highest coefficient sits in the highest lane, comparing packed words
//! as integers is the same as comparing canonical indices `Σ c_i p^i`, so
//! `FieldElem`'s derived ordering *is* the canonical ordering.
//!
//! Addition is lane-parallel. Multiplication uses log/antilog tables when
//! the field is small enough, schoolbook reduction otherwise. Frobenius
//! powers are precomputed `F_p`-linear operators.

mod fpoly;
pub mod linalg;
pub(crate) mod subfield;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
pub use linalg::{solve_fp_nullspace, FpMatrix};
pub use subfield::SubfieldHandle;

/// Largest supported degree `eps · n` over `F_p`.
pub const MAX_DEGREE: usize = 21;

/// Fields up to this many elements get log/antilog tables by default.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 23;

/// An element of a [`FieldCtx`], stored as packed `F_p` coefficients.
///
/// Only meaningful together with the context that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed representation.
    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub(crate) fn from_raw(v: u64) -> Self {
        FieldElem(v)
    }
}

/// Lane layout for packed `F_p` vectors.
#[derive(Clone, Copy, Debug)]
struct Lanes {
    width: u32,
    lane_mask: u64,
    /// the top bit of every used lane
    high: u64,
    /// `2^{w-1} - p` in every used lane
    bias: u64,
    /// `p` in every used lane
    p_all: u64,
    p: u64,
    /// `⌊2^64 / p⌋ + 1`, for reducing values below `2^32` without a division
    recip: u64,
}

impl Lanes {
    /// `a mod p` for `a < 2^32`.
    #[inline(always)]
    fn modp(&self, a: u64) -> u64 {
        debug_assert!(a < 1 << 32);
        ((self.recip.wrapping_mul(a) as u128 * self.p as u128) >> 64) as u64
    }

    fn new(p: u32, degree: usize) -> Option<Self> {
        // 2^{w-1} >= p keeps every lane sum below 2^w and lets the top bit flag overflow
        let mut width = 2;
        while (1u64 << (width - 1)) < p as u64 {
            width += 1;
        }
        if width as usize * degree > 64 {
            return None;
        }
        let lane_mask = (1u64 << width) - 1;
        let mut ones = 0u64;
        for j in 0..degree {
            ones |= 1u64 << (width as usize * j);
        }
        let half = 1u64 << (width - 1);
        Some(Lanes {
            width,
            lane_mask,
            high: ones * half,
            bias: ones * (half - p as u64),
            p_all: ones * p as u64,
            p: p as u64,
            recip: (u64::MAX / p as u64).wrapping_add(1),
        })
    }

    /// Subtracts `p` from every lane holding a value in `[p, 2p)`.
    #[inline(always)]
    fn reduce(&self, v: u64) -> u64 {
        let over = (v + self.bias) & self.high;
        let flags = over >> (self.width - 1);
        v - flags * self.p
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        self.reduce(a + b)
    }

    #[inline(always)]
    fn neg(&self, a: u64) -> u64 {
        self.reduce(self.p_all - a)
    }
}

/// An `F_p`-linear operator on the field, stored as the multiples
/// `c · L(X^j)` for every coordinate `j` and residue `c`. Applying it costs
/// one lane-parallel addition per coordinate.
#[derive(Clone, Debug)]
pub struct FpOperator {
    p: usize,
    multiples: Vec<u64>,
}

impl FpOperator {
    fn from_columns(ctx: &FieldCtx, columns: &[FieldElem]) -> Self {
        let p = ctx.p as usize;
        let mut multiples = vec![0u64; columns.len() * p];
        for (j, col) in columns.iter().enumerate() {
            let mut acc = 0u64;
            for c in 1..p {
                acc = ctx.lanes.add(acc, col.0);
                multiples[j * p + c] = acc;
            }
        }
        FpOperator { p, multiples }
    }

    #[inline]
    pub fn apply(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        let lanes = &ctx.lanes;
        let mut v = x.0;
        let mut acc = 0u64;
        let mut j = 0;
        while v != 0 {
            let c = (v & lanes.lane_mask) as usize;
            if c != 0 {
                acc = lanes.add(acc, self.multiples[j * self.p + c]);
            }
            v >>= lanes.width;
            j += 1;
        }
        FieldElem(acc)
    }

    /// Image of the `j`-th power-basis vector.
    pub fn column(&self, j: usize) -> FieldElem {
        FieldElem(self.multiples[j * self.p + 1])
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    /// log by canonical index; `u32::MAX` at zero
    log: Vec<u32>,
    /// packed element by exponent, length `order`
    exp: Vec<u64>,
}

/// Construction options for [`FieldCtx`].
#[derive(Clone, Copy, Debug)]
pub struct FieldOptions {
    /// Build log/antilog tables when the field has at most this many elements.
    pub table_limit: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { table_limit: DEFAULT_TABLE_LIMIT }
    }
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^n}` with `q = p^eps`.
///
/// Immutable after construction; share it by reference across workers.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    eps: u32,
    n: u32,
    degree: usize,
    modulus: Vec<u32>,
    lanes: Lanes,
    pow_p: Vec<u64>,
    size: u64,
    frob: Vec<FpOperator>,
    tables: Option<LogTables>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Builds `GF(p^{eps·n})` with the lexicographically smallest monic
    /// irreducible modulus (coefficients compared low-degree-first).
    pub fn new(p: u32, eps: u32, n: u32) -> Result<Self> {
        Self::with_options(p, eps, n, FieldOptions::default())
    }

    pub fn with_options(p: u32, eps: u32, n: u32, opts: FieldOptions) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p as u64) {
            return Err(Error::UnsupportedField(format!("characteristic {p} is not an odd prime")));
        }
        if p > 251 {
            return Err(Error::UnsupportedField(format!("characteristic {p} exceeds 251")));
        }
        if eps == 0 || n == 0 {
            return Err(Error::UnsupportedField("eps and n must be positive".into()));
        }
        let degree = (eps as usize) * (n as usize);
        if degree > MAX_DEGREE {
            return Err(Error::UnsupportedField(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut pow_p = Vec::with_capacity(degree + 1);
        let mut acc: u64 = 1;
        for j in 0..=degree {
            pow_p.push(acc);
            if j < degree {
                acc = match acc.checked_mul(p as u64) {
                    Some(v) if v < (1u64 << 62) => v,
                    _ => return Err(Error::UnsupportedField(format!("{p}^{degree} is too large"))),
                };
            }
        }
        let size = pow_p[degree];
        let lanes = Lanes::new(p, degree)
            .ok_or_else(|| Error::UnsupportedField(format!("{p}^{degree} does not fit the packed layout")))?;
        let modulus: Vec<u32> = fpoly::smallest_irreducible(p as u64, degree)
            .into_iter()
            .map(|c| c as u32)
            .collect();

        let mut ctx = FieldCtx {
            p,
            eps,
            n,
            degree,
            modulus,
            lanes,
            pow_p,
            size,
            frob: Vec::new(),
            tables: None,
        };

        // frobenius by one step from the power basis, then iterate
        let basis: Vec<FieldElem> = (0..degree).map(|j| ctx.unit(j)).collect();
        let step: Vec<FieldElem> = basis.iter().map(|&b| ctx.pow_slow(b, p as u128)).collect();
        let step_op = FpOperator::from_columns(&ctx, &step);
        let mut cols = basis.clone();
        let mut frob = Vec::with_capacity(degree);
        for _ in 0..degree {
            frob.push(FpOperator::from_columns(&ctx, &cols));
            cols = cols.iter().map(|&c| step_op.apply(&ctx, c)).collect();
        }
        debug_assert!(cols == basis, "x^(p^D) must equal x");
        ctx.frob = frob;

        if size <= opts.table_limit {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let g = self.primitive_element();
        let order = (self.size - 1) as usize;
        let mut log = vec![u32::MAX; self.size as usize];
        let mut exp = Vec::with_capacity(order);
        // multiplication by g is F_p-linear
        let cols: Vec<FieldElem> = (0..self.degree).map(|j| self.mul_slow(self.unit(j), g)).collect();
        let times_g = FpOperator::from_columns(self, &cols);
        let mut x = self.one();
        for k in 0..order {
            exp.push(x.0);
            log[self.index(x) as usize] = k as u32;
            x = times_g.apply(self, x);
        }
        debug_assert_eq!(x, self.one());
        LogTables { log, exp }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn eps(&self) -> u32 {
        self.eps
    }

    /// Degree of the top field over `F_q`.
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q = p^eps`.
    pub fn q(&self) -> u64 {
        self.pow_p[self.eps as usize]
    }

    /// Degree `eps · n` over `F_p`.
    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements.
    #[inline]
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Order of the multiplicative group.
    #[inline]
    pub fn order(&self) -> u64 {
        self.size - 1
    }

    /// Monic modulus, low-degree-first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The `j`-th power-basis vector `X^j`.
    #[inline]
    pub fn unit(&self, j: usize) -> FieldElem {
        FieldElem(1u64 << (self.lanes.width as usize * j))
    }

    /// The image of `c ∈ F_p`.
    pub fn from_fp(&self, c: u64) -> FieldElem {
        FieldElem(c % self.p as u64)
    }

    /// The element with canonical index `idx = Σ c_i p^i`.
    pub fn elem(&self, idx: u64) -> Result<FieldElem> {
        if idx >= self.size {
            return Err(domain!("index {idx} out of range for a field of size {}", self.size));
        }
        Ok(self.from_index_unchecked(idx))
    }

    pub(crate) fn from_index_unchecked(&self, mut idx: u64) -> FieldElem {
        let p = self.p as u64;
        let mut v = 0u64;
        let mut j = 0;
        while idx != 0 {
            v |= (idx % p) << (self.lanes.width as usize * j);
            idx /= p;
            j += 1;
        }
        FieldElem(v)
    }

    /// Canonical index `Σ c_i p^i`.
    #[inline]
    pub fn index(&self, x: FieldElem) -> u64 {
        let w = self.lanes.width;
        let mask = self.lanes.lane_mask;
        let mut v = x.0;
        let mut acc = 0u64;
        let mut j = 0;
        while v != 0 {
            acc += (v & mask) * self.pow_p[j];
            v >>= w;
            j += 1;
        }
        acc
    }

    /// Coefficients over `F_p`, low-degree-first, length `degree()`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let w = self.lanes.width as usize;
        (0..self.degree)
            .map(|j| ((x.0 >> (w * j)) & self.lanes.lane_mask) as u32)
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElem> {
        if c.len() > self.degree {
            return Err(domain!("{} coefficients for a degree-{} field", c.len(), self.degree));
        }
        let w = self.lanes.width as usize;
        let mut v = 0u64;
        for (j, &cj) in c.iter().enumerate() {
            v |= ((cj % self.p) as u64) << (w * j);
        }
        Ok(FieldElem(v))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.lanes.add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.lanes.neg(a.0))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// `c · x` for `c ∈ F_p`.
    pub fn scale(&self, x: FieldElem, c: u32) -> FieldElem {
        let c = (c % self.p) as u64;
        let p = self.p as u64;
        let w = self.lanes.width as usize;
        let mut v = 0u64;
        for j in 0..self.degree {
            let d = (x.0 >> (w * j)) & self.lanes.lane_mask;
            v |= (d * c % p) << (w * j);
        }
        FieldElem(v)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return FieldElem(0);
                }
                let la = t.log[self.index(a) as usize] as u64;
                let lb = t.log[self.index(b) as usize] as u64;
                let mut s = la + lb;
                let order = self.size - 1;
                if s >= order {
                    s -= order;
                }
                FieldElem(t.exp[s as usize])
            }
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let d = self.degree;
        let w = self.lanes.width as usize;
        let mask = self.lanes.lane_mask;
        let p = self.p as u64;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        for j in 0..d {
            da[j] = (a.0 >> (w * j)) & mask;
            db[j] = (b.0 >> (w * j)) & mask;
        }
        // p ≤ 251 and D ≤ 21 keep these accumulators far from overflow
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if da[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] += da[i] * db[j];
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = self.lanes.modp(prod[i]);
            if c == 0 {
                continue;
            }
            for j in 0..d {
                prod[i - d + j] += c * (p - self.modulus[j] as u64);
            }
        }
        let mut v = 0u64;
        for (j, &c) in prod.iter().enumerate().take(d) {
            v |= self.lanes.modp(c) << (w * j);
        }
        FieldElem(v)
    }

    /// Multiplicative inverse; zero is a domain error.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(domain!("inverse of zero"));
        }
        Ok(match &self.tables {
            Some(t) => {
                let la = t.log[self.index(a) as usize] as u64;
                let order = self.size - 1;
                FieldElem(t.exp[((order - la) % order) as usize])
            }
            None => self.pow_slow(a, (self.size - 2) as u128),
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; exponents are reduced modulo the group order for nonzero `a`.
    pub fn pow(&self, a: FieldElem, e: u128) -> FieldElem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        let order = (self.size - 1) as u128;
        let e = e % order;
        match &self.tables {
            Some(t) => {
                let la = t.log[self.index(a) as usize] as u128;
                FieldElem(t.exp[(la * e % order) as usize])
            }
            None => self.pow_slow(a, e),
        }
    }

    /// `a^{-e}` for nonzero `a`.
    pub fn pow_neg(&self, a: FieldElem, e: u128) -> Result<FieldElem> {
        let order = (self.size - 1) as u128;
        Ok(self.pow(self.inv(a)?, e % order))
    }

    fn pow_slow(&self, a: FieldElem, mut e: u128) -> FieldElem {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    /// `x^{p^k}`, applied through the precomputed operator.
    #[inline]
    pub fn frobenius(&self, x: FieldElem, k: usize) -> FieldElem {
        self.frob[k % self.degree].apply(self, x)
    }

    /// `x^{q^i}`.
    #[inline]
    pub fn frob_q(&self, x: FieldElem, i: usize) -> FieldElem {
        self.frobenius(x, (self.eps as usize * i) % self.degree)
    }

    /// The operator `x ↦ x^{p^k}`.
    pub fn frobenius_operator(&self, k: usize) -> &FpOperator {
        &self.frob[k % self.degree]
    }

    /// The `F_p`-linear operator with the given images of `1, X, …, X^{D-1}`.
    pub fn operator(&self, columns: &[FieldElem]) -> FpOperator {
        assert_eq!(columns.len(), self.degree);
        FpOperator::from_columns(self, columns)
    }

    /// Matrix of `x ↦ x^{p^k}` over `F_p` in the power basis.
    pub fn frobenius_matrix(&self, k: usize) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.degree)
            .map(|j| self.coeffs(self.frobenius(self.unit(j), k)))
            .collect();
        FpMatrix::from_columns(&cols, self.degree, self.p)
    }

    /// Discrete logarithm to the table generator, if tables are present.
    #[inline]
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        let t = self.tables.as_ref()?;
        match t.log[self.index(x) as usize] {
            u32::MAX => None,
            l => Some(l),
        }
    }

    /// Log table indexed by canonical index, if present (`u32::MAX` at zero).
    pub fn log_table(&self) -> Option<&[u32]> {
        self.tables.as_ref().map(|t| t.log.as_slice())
    }

    /// The generator underlying the log tables, or the smallest primitive element.
    pub fn generator(&self) -> FieldElem {
        match &self.tables {
            Some(t) if t.exp.len() > 1 => FieldElem(t.exp[1]),
            _ => self.primitive_element(),
        }
    }

    /// The index-smallest element of multiplicative order `p^D − 1`.
    pub fn primitive_element(&self) -> FieldElem {
        let order = self.size - 1;
        if order == 1 {
            return self.one();
        }
        let primes = prime_factors(order);
        let mut idx = 1;
        loop {
            let g = self.from_index_unchecked(idx);
            if primes.iter().all(|&r| self.pow_slow(g, (order / r) as u128) != self.one()) {
                return g;
            }
            idx += 1;
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FieldElem) -> Result<u64> {
        if x.is_zero() {
            return Err(domain!("zero has no multiplicative order"));
        }
        let mut ord = self.size - 1;
        for r in prime_factors(self.size - 1) {
            while ord.is_multiple_of(r) && self.pow(x, (ord / r) as u128) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Relative norm from the degree-`from_deg` subfield to the degree-`to_deg`
    /// subfield (degrees over `F_p`).
    pub fn rel_norm(&self, x: FieldElem, from_deg: usize, to_deg: usize) -> Result<FieldElem> {
        self.check_relative(x, from_deg, to_deg)?;
        let mut acc = self.one();
        for i in 0..from_deg / to_deg {
            acc = self.mul(acc, self.frobenius(x, to_deg * i));
        }
        Ok(acc)
    }

    /// Relative trace, analogous to [`rel_norm`](Self::rel_norm).
    pub fn rel_trace(&self, x: FieldElem, from_deg: usize, to_deg: usize) -> Result<FieldElem> {
        self.check_relative(x, from_deg, to_deg)?;
        let mut acc = self.zero();
        for i in 0..from_deg / to_deg {
            acc = self.add(acc, self.frobenius(x, to_deg * i));
        }
        Ok(acc)
    }

    fn check_relative(&self, x: FieldElem, from_deg: usize, to_deg: usize) -> Result<()> {
        if to_deg == 0 || from_deg == 0 || !from_deg.is_multiple_of(to_deg) || !self.degree.is_multiple_of(from_deg) {
            return Err(domain!(
                "need to_deg | from_deg | {}, got {to_deg} and {from_deg}",
                self.degree
            ));
        }
        if self.frobenius(x, from_deg) != x {
            return Err(domain!("element is not in the degree-{from_deg} subfield"));
        }
        Ok(())
    }

    /// `N_{q^n/q}`.
    pub fn norm_to_fq(&self, x: FieldElem, from_n: usize) -> Result<FieldElem> {
        let e = self.eps as usize;
        self.rel_norm(x, e * from_n, e)
    }

    /// `Tr_{q^n/q}` on the whole field.
    pub fn trace_to_fq(&self, x: FieldElem) -> FieldElem {
        let e = self.eps as usize;
        self.rel_trace(x, self.degree, e).expect("top field contains every element")
    }

    /// The subfield of degree `m` over `F_p`.
    pub fn subfield(&self, m: usize) -> Result<SubfieldHandle> {
        SubfieldHandle::new(self, m)
    }

    /// The packed successor in canonical order (wrapping to zero).
    #[inline]
    pub(crate) fn succ(&self, x: FieldElem) -> FieldElem {
        let w = self.lanes.width as usize;
        let p = self.p as u64;
        let mut v = x.0;
        for j in 0..self.degree {
            let d = (v >> (w * j)) & self.lanes.lane_mask;
            if d + 1 < p {
                return FieldElem(v + (1u64 << (w * j)));
            }
            v &= !(self.lanes.lane_mask << (w * j));
        }
        FieldElem(v)
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let mut cur = Some(FieldElem(0));
        core::iter::from_fn(move || {
            let x = cur?;
            let nx = self.succ(x);
            cur = if nx.is_zero() { None } else { Some(nx) };
            Some(x)
        })
    }

    /// Nonzero elements in canonical index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.elements().skip(1)
    }

    /// `F_p`-combination `Σ c_i v_i`.
    pub fn combine(&self, coeffs: &[u32], vectors: &[FieldElem]) -> FieldElem {
        coeffs
            .iter()
            .zip(vectors)
            .filter(|(c, _)| **c != 0)
            .fold(self.zero(), |acc, (&c, &v)| self.add(acc, self.scale(v, c)))
    }

    /// Lane-parallel addition on raw packed words (for hot loops).
    #[inline(always)]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        self.lanes.add(a, b)
    }

    pub(crate) fn lane_width(&self) -> u32 {
        self.lanes.width
    }

    pub(crate) fn pow_p(&self, j: usize) -> u64 {
        self.pow_p[j]
    }
}
