//! Exact linear algebra over F2.
//!
//! Two independent elimination kernels: the production kernel packs rows
//! into `u64` words and eliminates with whole-word XOR; the [`naive`]
//! module keeps one `bool` per entry and never touches the packed code.
//! Everything downstream reduces to these, so the test suite cross-checks
//! one against the other on random inputs.

use std::fmt;

const WORD_BITS: usize = 64;

/// A dense F2 vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = F2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit.
    pub fn leading(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_bools(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter_bools().collect()
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter_bools() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A dense F2 matrix, row-major, bit-packed. Tail bits past `cols` in the
/// last word of each row stay zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD_BITS).max(1);
        F2Matrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = F2Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> F2Vector {
        let start = r * self.words_per_row;
        F2Vector {
            len: self.cols,
            words: self.bits[start..start + self.words_per_row].to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &F2Vector) {
        assert_eq!(v.len, self.cols);
        let start = r * self.words_per_row;
        self.bits[start..start + self.words_per_row].copy_from_slice(&v.words);
    }

    pub fn to_bool_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows).map(|r| self.row(r).to_bools()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    /// XORs row `src` into row `dst`.
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let w = self.words_per_row;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let word = self.bits[s + k];
            self.bits[d + k] ^= word;
        }
    }

    /// Matrix-vector product over F2.
    pub fn mul_vector(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len, self.cols);
        let mut out = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let start = r * self.words_per_row;
            let mut acc = 0u64;
            for k in 0..self.words_per_row {
                acc ^= self.bits[start + k] & v.words[k];
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(rank, piv);
            for r in 0..self.rows {
                if r != rank && self.get(r, c) {
                    self.xor_row_into(rank, r);
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    /// F2 row rank via Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        // forward elimination only; cheaper than full rref
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, piv);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form; idempotent.
    pub fn rref(&self) -> F2Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    /// Canonical basis of `{v : self·v = 0}`, with `cols − rank` elements.
    /// The returned vectors, stacked as rows, form a reduced-echelon matrix.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = F2Matrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, f) {
                    basis.set(k, pc, true);
                }
            }
        }
        basis.rref_in_place();
        (0..basis.rows).map(|r| basis.row(r)).collect()
    }

    /// A particular solution of `self·v = b`, or None when inconsistent.
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &F2Vector) -> Option<F2Vector> {
        assert_eq!(b.len, self.rows, "right-hand side length must equal rows");
        // eliminate the augmented matrix [self | b]
        let mut aug = F2Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            let start = r * self.words_per_row;
            let dst = r * aug.words_per_row;
            aug.bits[dst..dst + self.words_per_row]
                .copy_from_slice(&self.bits[start..start + self.words_per_row]);
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None; // a pivot in the augmented column: inconsistent
        }
        let mut v = F2Vector::zeros(self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                v.set(pc, true);
            }
        }
        Some(v)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reference kernel: per-entry boolean elimination, written independently
/// of the packed code and used as its oracle.
pub mod naive {
    /// Row echelon rank.
    pub fn rank(rows: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, piv);
            for r in 0..m.len() {
                if r != rank && m[r][c] {
                    let (head, tail) = m.split_at_mut(std::cmp::max(r, rank));
                    let (hi, lo) = if r > rank {
                        (&head[rank], &mut tail[0])
                    } else {
                        (&tail[0], &mut head[r])
                    };
                    for k in 0..cols {
                        lo[k] ^= hi[k];
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form plus pivot column list.
    pub fn rref(rows: &[Vec<bool>]) -> (Vec<Vec<bool>>, Vec<usize>) {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, piv);
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[c] {
                    for k in 0..cols {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        (m, pivots)
    }

    /// Canonical kernel basis; mirrors the packed contract.
    pub fn kernel_basis(rows: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
        let (m, pivots) = rref(rows);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![false; cols];
            v[f] = true;
            for (r, &pc) in pivots.iter().enumerate() {
                if m[r][f] {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        let (canon, _) = rref(&basis);
        canon
    }

    /// Particular solution with free variables zeroed, or None.
    pub fn solve(rows: &[Vec<bool>], b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(rows.len(), b.len());
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let aug: Vec<Vec<bool>> = rows
            .iter()
            .zip(b)
            .map(|(row, &rhs)| {
                let mut r = row.clone();
                r.push(rhs);
                r
            })
            .collect();
        let (m, pivots) = rref(&aug);
        if pivots.last() == Some(&cols) {
            return None;
        }
        let mut v = vec![false; cols];
        for (r, &pc) in pivots.iter().enumerate() {
            if m[r][cols] {
                v[pc] = true;
            }
        }
        Some(v)
    }
}
