//! Exact integer matrix arithmetic for subgroup computations inside a free
//! abelian group: canonical row Hermite normal form, Smith invariant factors,
//! lattice membership, equality, saturation and quotient structure.
//!
//! All arithmetic uses arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector length {got} does not match ambient rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient ranks differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[a] += c * row[b]
    fn add_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(a, j) + c * self.get(b, j);
            self.set(a, j, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }
}

/// Canonical row Hermite normal form: pivots positive and strictly increasing
/// by column, entries above each pivot reduced into [0, pivot), zero rows
/// removed. Row span over Z is preserved.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    hnf_with_transform(m).0
}

/// HNF elimination keeping zero rows in place; returns (H, U) with U
/// unimodular and U * m = H. Rows of U aligned with zero rows of H span the
/// left kernel of m.
fn hnf_keep_zeros(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // gcd elimination below row r in column c
        loop {
            let mut best: Option<usize> = None;
            for i in r..h.rows() {
                if !h.get(i, c).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h.get(i, c).abs() < h.get(b, c).abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            let pivot = h.get(r, c).clone();
            for i in r + 1..h.rows() {
                if !h.get(i, c).is_zero() {
                    let q = -(h.get(i, c).div_floor(&pivot));
                    h.add_multiple(i, r, &q);
                    u.add_multiple(i, r, &q);
                    if !h.get(i, c).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = -(h.get(i, c).div_floor(&pivot));
            h.add_multiple(i, r, &q);
            u.add_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Canonical HNF together with the unimodular transform (zero rows dropped
/// from the returned H).
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hnf_keep_zeros(m);
    let kept: Vec<usize> = (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h.get(i, j).is_zero()))
        .collect();
    let hh = if kept.is_empty() {
        IntMatrix::zeros(0, h.cols())
    } else {
        IntMatrix::from_rows(kept.iter().map(|&i| h.row(i)).collect())
    };
    (hh, u)
}

/// Rows spanning { x : x * m = 0 }.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf_keep_zeros(m);
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| (0..h.cols()).all(|j| h.get(i, j).is_zero()))
        .collect();
    if zero_rows.is_empty() {
        IntMatrix::zeros(0, m.rows())
    } else {
        IntMatrix::from_rows(zero_rows.iter().map(|&i| u.row(i)).collect())
    }
}

/// Smith invariant factors d_1 | d_2 | ... (positive, ones included, zero
/// factors omitted). Their count is the rank of the matrix.
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // find a nonzero entry at or after (t, t)
        let mut found = None;
        'outer: for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        a.swap_rows(t, pi);
        swap_cols(&mut a, t, pj);
        // clear row and column t by gcd elimination
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -(a.get(i, t).div_floor(&a.get(t, t).clone()));
                    a.add_multiple(i, t, &q);
                    if !a.get(i, t).is_zero() {
                        a.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -(a.get(t, j).div_floor(&a.get(t, t).clone()));
                    add_col_multiple(&mut a, j, t, &q);
                    if !a.get(t, j).is_zero() {
                        swap_cols(&mut a, t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        // enforce divisibility of the remaining block by the pivot
        let pivot = a.get(t, t).clone();
        let mut redo = false;
        'check: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(a.get(i, j) % &pivot).is_zero() {
                    // fold row i into row t and restart this position
                    a.add_multiple(t, i, &BigInt::one());
                    redo = true;
                    break 'check;
                }
            }
        }
        if redo {
            continue;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
        }
        t += 1;
    }
    (0..t).map(|i| a.get(i, i).clone()).collect()
}

fn swap_cols(a: &mut IntMatrix, x: usize, y: usize) {
    if x == y {
        return;
    }
    for i in 0..a.rows() {
        let (vx, vy) = (a.get(i, x).clone(), a.get(i, y).clone());
        a.set(i, x, vy);
        a.set(i, y, vx);
    }
}

/// col[x] += c * col[y]
fn add_col_multiple(a: &mut IntMatrix, x: usize, y: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let v = a.get(i, x) + c * a.get(i, y);
        a.set(i, x, v);
    }
}

/// Integer sublattice of Z^ambient_rank, stored by its canonical HNF basis.
/// Equality of subgroups is entrywise equality of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenLattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl GenLattice {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }
}

pub fn lattice_from_generators(
    ambient_rank: usize,
    gens: &[Vec<BigInt>],
) -> Result<GenLattice, LatticeError> {
    for g in gens {
        if g.len() != ambient_rank {
            return Err(LatticeError::DimensionMismatch { expected: ambient_rank, got: g.len() });
        }
    }
    let stacked = if gens.is_empty() {
        IntMatrix::zeros(0, ambient_rank)
    } else {
        IntMatrix::from_rows(gens.to_vec())
    };
    Ok(GenLattice { ambient_rank, basis: hnf(&stacked) })
}

pub fn lattice_from_generators_i64(
    ambient_rank: usize,
    gens: &[Vec<i64>],
) -> Result<GenLattice, LatticeError> {
    let gens: Vec<Vec<BigInt>> =
        gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
    lattice_from_generators(ambient_rank, &gens)
}

/// Membership by successive pivot elimination with exact division checks.
pub fn contains(l: &GenLattice, v: &[BigInt]) -> Result<bool, LatticeError> {
    if v.len() != l.ambient_rank {
        return Err(LatticeError::DimensionMismatch { expected: l.ambient_rank, got: v.len() });
    }
    let mut v = v.to_vec();
    for i in 0..l.basis.rows() {
        let pivot_col = (0..l.basis.cols())
            .find(|&j| !l.basis.get(i, j).is_zero())
            .expect("basis rows are nonzero");
        if v[pivot_col].is_zero() {
            continue;
        }
        let pivot = l.basis.get(i, pivot_col);
        let (q, r) = v[pivot_col].div_rem(pivot);
        if !r.is_zero() {
            return Ok(false);
        }
        for j in 0..l.ambient_rank {
            v[j] = &v[j] - &q * l.basis.get(i, j);
        }
    }
    Ok(v.iter().all(|x| x.is_zero()))
}

pub fn equal(l1: &GenLattice, l2: &GenLattice) -> Result<bool, LatticeError> {
    if l1.ambient_rank != l2.ambient_rank {
        return Err(LatticeError::AmbientMismatch(l1.ambient_rank, l2.ambient_rank));
    }
    Ok(l1.basis == l2.basis)
}

/// Smallest subgroup containing l with torsion-free quotient in the ambient
/// group; the rank is preserved. Computed as the double integer kernel:
/// sat(L) = { v : v ⟂ ker_Q(basis) } via two exact kernel computations.
pub fn saturation(l: &GenLattice) -> GenLattice {
    if l.basis.rows() == 0 {
        return l.clone();
    }
    // right kernel of the basis = left kernel of its transpose
    let k = left_kernel(&l.basis.transpose());
    if k.rows() == 0 {
        // full rank: saturation is all of Z^n
        return GenLattice { ambient_rank: l.ambient_rank, basis: hnf(&IntMatrix::identity(l.ambient_rank)) };
    }
    // sat = { v : k * v^T = 0 } = left kernel of k^T
    let sat = left_kernel(&k.transpose());
    GenLattice { ambient_rank: l.ambient_rank, basis: hnf(&sat) }
}

/// Structure of the quotient Z^ambient_rank / l: free rank and the invariant
/// factors exceeding 1.
pub fn quotient_invariants(ambient_rank: usize, l: &GenLattice) -> (usize, Vec<BigInt>) {
    assert_eq!(ambient_rank, l.ambient_rank);
    let inv = snf(&l.basis);
    let free_rank = ambient_rank - inv.len();
    let torsion: Vec<BigInt> = inv.into_iter().filter(|d| d > &BigInt::one()).collect();
    (free_rank, torsion)
}
