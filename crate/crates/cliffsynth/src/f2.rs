//! Dense linear algebra over GF(2), bit-packed into 64-bit words.

use crate::error::{Error, Result};
use std::fmt;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Mask selecting the valid bits of the last word of a row of `bits` columns.
fn tail_mask(bits: usize) -> u64 {
    let rem = bits % WORD;
    if rem == 0 {
        !0
    } else {
        (1u64 << rem) - 1
    }
}

/// A vector over GF(2). Bits beyond `len` are kept zero so that equality and
/// word-wise operations need no masking.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    limbs: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            limbs: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = F2Vector {
            len,
            limbs: vec![!0u64; words_for(len)],
        };
        if let Some(last) = v.limbs.last_mut() {
            *last &= tail_mask(len);
        }
        v
    }

    /// Standard basis vector e_i.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.limbs[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if b {
            self.limbs[i / WORD] |= mask;
        } else {
            self.limbs[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.limbs[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_with(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        let mut r = self.clone();
        r.xor_with(other);
        r
    }

    pub fn and(&self, other: &F2Vector) -> F2Vector {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let mut r = self.clone();
        for (a, b) in r.limbs.iter_mut().zip(&other.limbs) {
            *a &= b;
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the AND of two vectors; the workhorse for inner products.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let mut acc = 0u64;
        for (a, b) in self.limbs.iter().zip(&other.limbs) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Indices of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({self})")
    }
}

/// A dense matrix over GF(2), row-major with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        F2Matrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_diag(d: &F2Vector) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for i in d.iter_ones() {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows_of_bools(rows: &[Vec<bool>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        m
    }

    /// Convenience for tests and small fixtures: rows of 0/1 u8s.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.bits[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = i * self.stride + j / WORD;
        let mask = 1u64 << (j % WORD);
        if b {
            self.bits[w] |= mask;
        } else {
            self.bits[w] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        let w = i * self.stride + j / WORD;
        self.bits[w] ^= 1u64 << (j % WORD);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// row[tgt] ^= row[src]
    pub fn row_xor(&mut self, tgt: usize, src: usize) {
        assert_ne!(tgt, src);
        let (lo, hi) = (tgt.min(src), tgt.max(src));
        let (a, b) = self.bits.split_at_mut(hi * self.stride);
        let lo_sl = &mut a[lo * self.stride..lo * self.stride + self.stride];
        let hi_sl = &mut b[..self.stride];
        if tgt < src {
            for (t, s) in lo_sl.iter_mut().zip(hi_sl.iter()) {
                *t ^= s;
            }
        } else {
            for (t, s) in hi_sl.iter_mut().zip(lo_sl.iter()) {
                *t ^= s;
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.bits.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// col[tgt] ^= col[src]
    pub fn col_xor(&mut self, tgt: usize, src: usize) {
        for i in 0..self.rows {
            if self.get(i, src) {
                self.flip(i, tgt);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector {
            len: self.cols,
            limbs: self.row_words(i).to_vec(),
        }
    }

    pub fn set_row(&mut self, i: usize, v: &F2Vector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.bits[i * self.stride..(i + 1) * self.stride].copy_from_slice(&v.limbs);
        }

    pub fn col(&self, j: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn diagonal(&self) -> F2Vector {
        let n = self.rows.min(self.cols);
        let mut v = F2Vector::zeros(n);
        for i in 0..n {
            if self.get(i, i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch in add"
        );
        let mut r = self.clone();
        for (a, b) in r.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        r
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in mul");
        let mut r = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out = i * r.stride;
            for (w, &word) in self.row_words(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let k = w * WORD + word.trailing_zeros() as usize;
                    word &= word - 1;
                    let src = k * other.stride;
                    for t in 0..other.stride {
                        r.bits[out + t] ^= other.bits[src + t];
                    }
                }
            }
        }
        r
    }

    /// self * v, treating v as a column vector.
    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(self.cols, v.len(), "matrix shape mismatch in mul_vec");
        let mut out = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.row(i).dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (w, &word) in self.row_words(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = w * WORD + word.trailing_zeros() as usize;
                    word &= word - 1;
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == F2Matrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Copy of the `nr` x `nc` submatrix anchored at (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> F2Matrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        let mut b = F2Matrix::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                if self.get(r0 + i, c0 + j) {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &F2Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut w = self.clone();
        let mut r = 0;
        for j in 0..w.cols {
            if r == w.rows {
                break;
            }
            // first nonzero pivot at or below row r
            let Some(p) = (r..w.rows).find(|&i| w.get(i, j)) else {
                continue;
            };
            w.swap_rows(r, p);
            for i in 0..w.rows {
                if i != r && w.get(i, j) {
                    w.row_xor(i, r);
                }
            }
            r += 1;
        }
        r
    }

    /// Gauss-Jordan on [self | I]; `None` if singular. Pivot choice is the
    /// first nonzero entry at or below the diagonal, so results are
    /// deterministic.
    pub fn invert(&self) -> Option<F2Matrix> {
        assert_eq!(self.rows, self.cols, "invert needs a square matrix");
        let n = self.rows;
        let mut w = self.clone();
        let mut inv = F2Matrix::identity(n);
        for j in 0..n {
            let p = (j..n).find(|&i| w.get(i, j))?;
            w.swap_rows(j, p);
            inv.swap_rows(j, p);
            for i in 0..n {
                if i != j && w.get(i, j) {
                    w.row_xor(i, j);
                    inv.row_xor(i, j);
                }
            }
        }
        Some(inv)
    }

    /// Any particular solution x of self * x = rhs (one column per rhs
    /// column), with free variables set to zero. `None` if inconsistent.
    pub fn solve(&self, rhs: &F2Matrix) -> Option<F2Matrix> {
        assert_eq!(self.rows, rhs.rows, "matrix shape mismatch in solve");
        let n = self.rows;
        let m = self.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut pivot_col = Vec::new();
        let mut r = 0;
        for j in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| a.get(i, j)) else {
                continue;
            };
            a.swap_rows(r, p);
            b.swap_rows(r, p);
            for i in 0..n {
                if i != r && a.get(i, j) {
                    a.row_xor(i, r);
                    b.row_xor(i, r);
                }
            }
            pivot_col.push(j);
            r += 1;
        }
        // rows r..n of a are zero; rhs must be zero there too
        for i in r..n {
            if !b.row(i).is_zero() {
                return None;
            }
        }
        let mut x = F2Matrix::zeros(m, rhs.cols);
        for (i, &j) in pivot_col.iter().enumerate() {
            for k in 0..rhs.cols {
                if b.get(i, k) {
                    x.set(j, k, true);
                }
            }
        }
        Some(x)
    }

    /// `solve` specialized to a single right-hand-side vector.
    pub fn solve_vec(&self, rhs: &F2Vector) -> Option<F2Vector> {
        let mut b = F2Matrix::zeros(rhs.len(), 1);
        for i in rhs.iter_ones() {
            b.set(i, 0, true);
        }
        self.solve(&b).map(|x| x.col(0))
    }

    /// For symmetric `self`, find a diagonal correction b and an invertible
    /// unit-lower-triangular M with self + diag(b) = M * M^T. Whenever a
    /// pivot of the running Schur complement vanishes, the corresponding
    /// diagonal entry is flipped and recorded in b.
    pub fn factor_symmetric(&self) -> (F2Vector, F2Matrix) {
        assert!(self.is_symmetric(), "factor_symmetric needs a symmetric matrix");
        let n = self.rows;
        let mut g = self.clone();
        let mut b = F2Vector::zeros(n);
        let mut m = F2Matrix::identity(n);
        for k in 0..n {
            if !g.get(k, k) {
                b.set(k, true);
                g.flip(k, k);
            }
            // column k of the Schur complement is column k of M
            let c = g.col(k);
            for j in k + 1..n {
                if c.get(j) {
                    m.set(j, k, true);
                }
            }
            // rank-one update G -= c c^T restricted to rows/cols > k
            let mut crow = F2Vector::zeros(n);
            for j in c.iter_ones() {
                if j > k {
                    crow.set(j, true);
                }
            }
            for i in k + 1..n {
                if c.get(i) {
                    let start = i * g.stride;
                    for (t, s) in g.bits[start..start + g.stride]
                        .iter_mut()
                        .zip(&crow.limbs)
                    {
                        *t ^= s;
                    }
                }
            }
        }
        (b, m)
    }

    /// True iff self is 2n x 2n and S^T O S = O for O = [[0,I],[I,0]],
    /// checked blockwise: A^T C and B^T D symmetric, A^T D + C^T B = I.
    pub fn is_symplectic(&self) -> bool {
        if self.rows != self.cols || self.rows % 2 != 0 {
            return false;
        }
        let n = self.rows / 2;
        let a = self.block(0, 0, n, n);
        let b = self.block(0, n, n, n);
        let c = self.block(n, 0, n, n);
        let d = self.block(n, n, n, n);
        let at = a.transpose();
        let bt = b.transpose();
        let ct = c.transpose();
        if !at.mul(&c).is_symmetric() || !bt.mul(&d).is_symmetric() {
            return false;
        }
        at.mul(&d).add(&ct.mul(&b)).is_identity()
    }

    /// Parse the text format: a "rows cols" header line, then one 0/1
    /// string per row.
    pub fn parse(text: &str) -> Result<F2Matrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "empty matrix text"))?;
        let mut it = header.split_whitespace();
        let rows: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(ln, "expected 'rows cols' header"))?;
        let cols: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(ln, "expected 'rows cols' header"))?;
        if it.next().is_some() {
            return Err(Error::parse(ln, "trailing tokens in header"));
        }
        let mut m = F2Matrix::zeros(rows, cols);
        for i in 0..rows {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("expected {rows} rows")))?;
            if row.len() != cols {
                return Err(Error::parse(ln, format!("expected {cols} columns")));
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(Error::parse(ln, format!("bad digit {ch:?}"))),
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing rows after matrix"));
        }
        Ok(m)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix {}x{}:\n{}", self.rows, self.cols, self)
    }
}
