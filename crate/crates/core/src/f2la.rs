//! Linear algebra over F2 on bit-packed rows.
//!
//! Every dimension and membership claim in the crate is checked through this
//! module: ranks of the parity-check matrices, solvability of `m x = b`, and
//! row-space membership for stabilizer tests.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(width: usize) -> usize {
    width.div_ceil(WORD)
}

/// A vector in `F2^width`. Bits beyond `width` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    width: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(width: usize) -> Self {
        Self {
            width,
            words: vec![0; words_for(width)],
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut v = Self {
            width,
            words: vec![u64::MAX; words_for(width)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector with ones at `indices`; repeated indices cancel.
    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(width);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Parses a string over `{0,1}`; index 0 is the first character.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::Parse(format!("bad bit {other:?} in {s:?}"))),
            }
        }
        Ok(v)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width, "index {i} out of range {}", self.width);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width, "index {i} out of range {}", self.width);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.width, "index {i} out of range {}", self.width);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(
            self.width, other.width,
            "xor of vectors with different widths"
        );
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the coordinatewise product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(
            self.width, other.width,
            "dot of vectors with different widths"
        );
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros() as usize;
                out.push(wi * WORD + t);
                w &= w - 1;
            }
        }
        out
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    fn clear_tail(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense F2 matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::from_indices(n, [i])).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.width() != cols) {
            return Err(Error::WidthMismatch {
                expected: cols,
                actual: bad.width(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows written as bit strings, e.g. `["110", "011"]`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BitVector::parse(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.rows[src].clone();
        self.rows[dst].xor_assign(&s);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Matrix-vector product `m x`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.width() != self.cols {
            return Err(Error::WidthMismatch {
                expected: self.cols,
                actual: x.width(),
            });
        }
        Ok(BitVector::from_bools(
            &self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>(),
        ))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows(),
                self.cols,
                other.rows(),
                other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.support() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }
}

/// Row rank over F2. The input is not modified.
pub fn rank(m: &BitMatrix) -> usize {
    RowSpace::from_rows(m.cols(), m.row_vectors().iter().cloned()).rank()
}

/// Finds some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &BitMatrix, b: &BitVector) -> Result<Option<BitVector>> {
    if b.width() != m.rows() {
        return Err(Error::WidthMismatch {
            expected: m.rows(),
            actual: b.width(),
        });
    }
    // Reduced row echelon form of [m | b], rhs bits kept alongside.
    let mut rows: Vec<BitVector> = m.row_vectors().to_vec();
    let mut rhs: Vec<bool> = (0..m.rows()).map(|i| b.get(i)).collect();
    let pivots = rref_with_rhs(&mut rows, &mut rhs, m.cols());
    if rhs[pivots.len()..].iter().any(|&bit| bit) {
        return Ok(None);
    }
    let mut x = BitVector::zeros(m.cols());
    for (r, &col) in pivots.iter().enumerate() {
        if rhs[r] {
            x.set(col, true);
        }
    }
    Ok(Some(x))
}

/// Basis of `{x : m x = 0}`; its size is `cols - rank(m)`.
pub fn nullspace_basis(m: &BitMatrix) -> Vec<BitVector> {
    let mut rows: Vec<BitVector> = m.row_vectors().to_vec();
    let mut rhs = vec![false; rows.len()];
    let pivots = rref_with_rhs(&mut rows, &mut rhs, m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(m.cols());
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if rows[r].get(free) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

/// Gauss-Jordan elimination in place. Returns pivot columns; rows `0..pivots.len()`
/// are the nonzero reduced rows and the remaining rows are zero.
fn rref_with_rhs(rows: &mut [BitVector], rhs: &mut [bool], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(top, found);
        rhs.swap(top, found);
        let pivot_row = rows[top].clone();
        let pivot_rhs = rhs[top];
        for r in 0..rows.len() {
            if r != top && rows[r].get(col) {
                rows[r].xor_assign(&pivot_row);
                rhs[r] ^= pivot_rhs;
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Incrementally built echelon basis of a row space, used for fast membership
/// queries against a fixed set of generators.
#[derive(Clone, Debug)]
pub struct RowSpace {
    width: usize,
    // Each basis row has a distinct pivot (its lowest set bit); `pivot_of[c]`
    // indexes the row whose pivot is column c.
    basis: Vec<BitVector>,
    pivot_of: Vec<Option<usize>>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            basis: Vec::new(),
            pivot_of: vec![None; width],
        }
    }

    pub fn from_rows(width: usize, rows: impl IntoIterator<Item = BitVector>) -> Self {
        let mut space = Self::new(width);
        for r in rows {
            space.insert(r);
        }
        space
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` modulo the space; the result is zero iff `v` was a member.
    pub fn reduce(&self, v: &mut BitVector) {
        assert_eq!(v.width(), self.width);
        // Pivots are lowest set bits, so an ascending sweep never
        // reintroduces a column it has already cleared.
        for wi in 0..v.words.len() {
            let mut unseen = u64::MAX;
            loop {
                let w = v.words[wi] & unseen;
                if w == 0 {
                    break;
                }
                let t = w.trailing_zeros();
                unseen &= !((1u64 << t) << 1).wrapping_sub(1);
                if let Some(r) = self.pivot_of[wi * WORD + t as usize] {
                    v.xor_assign(&self.basis[r]);
                }
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        self.reduce(&mut v);
        match v.first_one() {
            None => false,
            Some(c) => {
                self.pivot_of[c] = Some(self.basis.len());
                self.basis.push(v);
                true
            }
        }
    }
}

/// Sparse F2 matrix: each row lists its nonzero columns in ascending order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<usize>>,
}

impl SparseMatrix {
    pub fn new(cols: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        for row in &mut rows {
            row.sort_unstable();
            if let Some(&c) = row.iter().find(|&&c| c >= cols) {
                return Err(Error::DimensionMismatch(format!(
                    "column {c} out of range {cols}"
                )));
            }
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DimensionMismatch("repeated column index".into()));
            }
        }
        Ok(Self { cols, rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    pub fn row_lists(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn max_row_weight(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                cols[c].push(r);
            }
        }
        SparseMatrix {
            cols: self.rows.len(),
            rows: cols,
        }
    }

    pub fn to_dense(&self) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .map(|r| BitVector::from_indices(self.cols, r.iter().copied()))
                .collect(),
        }
    }

    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.width(), self.cols);
        BitVector::from_bools(
            &self
                .rows
                .iter()
                .map(|row| row.iter().filter(|&&c| x.get(c)).count() % 2 == 1)
                .collect::<Vec<_>>(),
        )
    }
}
