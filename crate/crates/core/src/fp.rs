//! Dense exact linear algebra over the prime field F_p.
//!
//! Entries are stored as reduced `u64` residues in row-major order. Every
//! routine here is total and exact; there is no pivot threshold or rounding.

/// Multiplicative inverse mod p (p prime, a nonzero).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    debug_assert_eq!(r0, 1, "inv_mod of non-unit");
    (s0.rem_euclid(p as i128)) as u64
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            for &x in row {
                data.push(x % p);
            }
        }
        FpMat { p, rows: r, cols: c, data }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMat {
        let mut t = FpMat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.p, other.p);
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.p - b) % self.p;
        }
        out
    }

    pub fn neg(&self) -> FpMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (self.p - *a) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u64) -> FpMat {
        let c = c % self.p;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (*a * c) % self.p;
        }
        out
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMat { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Stack horizontally: self to the left of other.
    pub fn hstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMat::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&FpMat], p: u64) -> FpMat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMat::zeros(p, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[u64]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self.set(i, j, x);
        }
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut piv = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            if piv != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(piv, j));
                    self.set(r, j, b);
                    self.set(piv, j, a);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p);
            for j in 0..self.cols {
                let v = (self.get(r, j) * inv) % self.p;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let v = (self.get(i, j) + (self.p - f) * self.get(r, j)) % self.p;
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel { x : A x = 0 }, returned as columns.
    pub fn right_kernel(&self) -> FpMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut ker = FpMat::zeros(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            ker.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.get(r, fc);
                if v != 0 {
                    ker.set(pc, k, (self.p - v) % self.p);
                }
            }
        }
        ker
    }

    /// Basis of the left kernel { x : x A = 0 }, returned as rows.
    pub fn left_kernel(&self) -> FpMat {
        self.transpose().right_kernel().transpose()
    }

    /// Solve A X = B for X; None if inconsistent.
    pub fn solve(&self, b: &FpMat) -> Option<FpMat> {
        assert_eq!(self.rows, b.rows);
        let mut aug = self.hstack(b);
        let pivots = aug.rref();
        // consistency: no pivot in the B block
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMat::zeros(self.p, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Solve X A = B for X; None if inconsistent.
    pub fn solve_left(&self, b: &FpMat) -> Option<FpMat> {
        assert_eq!(self.cols, b.cols);
        self.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMat> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve(&FpMat::identity(self.p, self.rows))?;
        if self.mul(&inv) == FpMat::identity(self.p, self.rows) {
            Some(inv)
        } else {
            None
        }
    }

    /// Matrix power by repeated squaring.
    pub fn pow(&self, mut e: usize) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut result = FpMat::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Entries as a flat row-major vector (one column matrices are just vectors).
    pub fn flatten(&self) -> Vec<u64> {
        self.data.clone()
    }

    /// Does v lie in the column span of self?
    pub fn column_span_contains(&self, v: &FpMat) -> bool {
        self.solve(v).is_some()
    }

    /// Select columns by index, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> FpMat {
        let mut out = FpMat::zeros(self.p, self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.get(i, j));
            }
        }
        out
    }
}

/// Build a column vector from residues.
pub fn col_vec(p: u64, v: &[u64]) -> FpMat {
    let mut m = FpMat::zeros(p, v.len(), 1);
    for (i, &x) in v.iter().enumerate() {
        m.set(i, 0, x);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_small_primes() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn rref_and_rank() {
        let mut m = FpMat::from_rows(5, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_is_kernel() {
        let m = FpMat::from_rows(3, &[vec![1, 2, 0], vec![0, 0, 1]]);
        let k = m.right_kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let lk = m.left_kernel();
        assert_eq!(lk.rows(), 0);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = FpMat::from_rows(7, &[vec![1, 1], vec![0, 1], vec![1, 2]]);
        let b = col_vec(7, &[3, 2, 5]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = col_vec(7, &[3, 2, 6]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = FpMat::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMat::identity(5, 2));
    }
}
