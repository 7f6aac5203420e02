//! Dense linear algebra over a prime field `F_p`.
//!
//! Every stabilizer, idealizer and equivalence computation in the crate ends
//! up as a kernel computation here, so the elimination order is fixed:
//! pivots are taken column by column from the left, and the first row (from
//! the top) holding a nonzero entry becomes the pivot row.

use alloc::vec;
use alloc::vec::Vec;

/// Inverses modulo a small prime, indexed by residue.
#[derive(Clone, Debug)]
pub(crate) struct InvTable(Vec<u32>);

impl InvTable {
    pub(crate) fn new(p: u32) -> Self {
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = pow_mod(a as u64, (p - 2) as u64, p as u64) as u32;
        }
        InvTable(inv)
    }

    #[inline]
    pub(crate) fn get(&self, a: u32) -> u32 {
        self.0[a as usize]
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// A dense `rows × cols` matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors; entries are reduced mod `p`.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<u32>], rows: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows, columns.len(), p);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column {j}");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot columns in increasing order.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let inv = InvTable::new(self.p);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let s = inv.get(self.get(r, c)) as u64;
            if s != 1 {
                for j in c..self.cols {
                    let v = self.get(r, j) as u64 * s % p;
                    self.set(r, j, v as u32);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for j in c..self.cols {
                    let pr = self.get(r, j) as u64;
                    if pr != 0 {
                        let v = (self.get(i, j) as u64 + neg * pr) % p;
                        self.set(i, j, v as u32);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rank_in_place()
    }

    /// Rank by forward elimination only; destroys `self`.
    pub fn rank_in_place(&mut self) -> usize {
        let p = self.p as u64;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in c..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let s = pow_mod(self.get(r, c) as u64, p - 2, p);
            for i in r + 1..self.rows {
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let m = (p - f) * s % p;
                for j in c..self.cols {
                    let v = (self.get(i, j) as u64 + m * self.get(r, j) as u64) % p;
                    self.set(i, j, v as u32);
                }
            }
            r += 1;
        }
        r
    }

    /// A basis of `{v : self · v = 0}`, one vector per free column in
    /// increasing column order. Each vector has a 1 at its free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let e = m.get(r, free);
                if e != 0 {
                    v[pc] = p - e;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self · v = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.rows, self.cols + 1, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = aug.get(r, self.cols);
        }
        Some(v)
    }
}

/// Kernel basis of an `F_p` matrix; the engine shared by every linear solve
/// in the crate.
pub fn solve_fp_nullspace(system: &FpMatrix) -> Vec<Vec<u32>> {
    system.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(solve_fp_nullspace(&FpMatrix::identity(7, 5)).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = FpMatrix::zeros(3, 6, 3);
        let ns = solve_fp_nullspace(&z);
        assert_eq!(ns.len(), 6);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows = vec![vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 2]];
        let m = FpMatrix::from_rows(&rows, 4, 3);
        let ns = m.nullspace();
        assert_eq!(m.rank() + ns.len(), 4);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = FpMatrix::from_rows(&[vec![1, 1], vec![2, 2]], 2, 5);
        let v = m.solve(&[3, 1]).unwrap();
        assert_eq!(m.mul_vec(&v), vec![3, 1]);
        assert!(m.solve(&[3, 2]).is_none());
    }
}
