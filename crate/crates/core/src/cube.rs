//! Faces and chains of the Hamming cube `Q^n`.
//!
//! A face is a word over `{0, 1, *}` stored as two masks. Coordinate `i`
//! (the `i`-th character of the literal, counting from 0) lives in bit
//! `n - 1 - i`, so numeric order on `(stars, bits)` follows the literal from
//! left to right. Chains are sorted, duplicate-free face lists; the same type
//! carries cochains.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::f2la::BitVector;

/// Largest supported cube dimension.
pub const MAX_WIDTH: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Star,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Star => '*',
        }
    }
}

#[inline]
pub(crate) fn coord_bit(n: usize, i: usize) -> u64 {
    1u64 << (n - 1 - i)
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Converts a coordinate-indexed vector to the internal mask layout.
pub(crate) fn vector_to_mask(v: &BitVector) -> u64 {
    let n = v.width();
    v.support().into_iter().fold(0, |m, i| m | coord_bit(n, i))
}

pub(crate) fn mask_to_vector(n: usize, mask: u64) -> BitVector {
    BitVector::from_indices(n, (0..n).filter(|&i| mask & coord_bit(n, i) != 0))
}

/// Removes bit `b` from `x`, shifting higher bits down by one.
#[inline]
fn squeeze(x: u64, b: usize) -> u64 {
    let low = x & ((1u64 << b) - 1);
    let high = (x >> (b + 1)) << b;
    high | low
}

/// Opens a zero at bit `b`, shifting bits `>= b` up by one.
#[inline]
fn widen(x: u64, b: usize) -> u64 {
    let low = x & ((1u64 << b) - 1);
    let high = (x >> b) << (b + 1);
    high | low
}

/// A cell of `{0,1,*}^n`. Ordering is by `(stars, bits)` as unsigned integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    stars: u64,
    bits: u64,
    n: u8,
}

impl Face {
    pub fn new(n: usize, stars: u64, bits: u64) -> Result<Self> {
        if n > MAX_WIDTH {
            return Err(Error::InvalidDimension(format!(
                "cube dimension {n} exceeds {MAX_WIDTH}"
            )));
        }
        let full = full_mask(n);
        if stars & !full != 0 || bits & !full != 0 || stars & bits != 0 {
            return Err(Error::InvalidDimension(format!(
                "masks {stars:#x}/{bits:#x} do not describe a face of Q^{n}"
            )));
        }
        Ok(Self::from_masks(n, stars, bits))
    }

    #[inline]
    pub(crate) fn from_masks(n: usize, stars: u64, bits: u64) -> Self {
        debug_assert!(stars & bits == 0);
        Face {
            stars,
            bits,
            n: n as u8,
        }
    }

    /// The face with stars at `positions` and zeros elsewhere.
    pub fn with_stars(n: usize, positions: &[usize]) -> Result<Self> {
        let mut stars = 0;
        for &i in positions {
            if i >= n {
                return Err(Error::InvalidDimension(format!(
                    "position {i} outside Q^{n}"
                )));
            }
            stars |= coord_bit(n, i);
        }
        Face::new(n, stars, 0)
    }

    pub fn width(&self) -> usize {
        self.n as usize
    }

    pub fn star_mask(&self) -> u64 {
        self.stars
    }

    pub fn bit_mask(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.stars.count_ones() as usize
    }

    pub fn symbol(&self, i: usize) -> Symbol {
        let b = coord_bit(self.width(), i);
        if self.stars & b != 0 {
            Symbol::Star
        } else if self.bits & b != 0 {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    /// Star positions in increasing coordinate order.
    pub fn direction(&self) -> Vec<usize> {
        (0..self.width())
            .filter(|&i| self.stars & coord_bit(self.width(), i) != 0)
            .collect()
    }

    /// Translation by a binary word given as a mask; stars absorb the shift.
    #[inline]
    pub(crate) fn shifted(self, y: u64) -> Face {
        Face {
            stars: self.stars,
            bits: self.bits ^ (y & !self.stars),
            n: self.n,
        }
    }

    pub fn translate(&self, y: &BitVector) -> Result<Face> {
        if y.width() != self.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                actual: y.width(),
            });
        }
        Ok(self.shifted(vector_to_mask(y)))
    }

    pub fn complement(&self) -> Face {
        self.shifted(full_mask(self.width()))
    }

    /// Drops coordinate `i`, returning its symbol and the face in `Q^{n-1}`.
    #[inline]
    pub(crate) fn remove_coord(self, i: usize) -> (Symbol, Face) {
        let n = self.width();
        let b = n - 1 - i;
        let sym = if self.stars >> b & 1 == 1 {
            Symbol::Star
        } else if self.bits >> b & 1 == 1 {
            Symbol::One
        } else {
            Symbol::Zero
        };
        let f = Face::from_masks(n - 1, squeeze(self.stars, b), squeeze(self.bits, b));
        (sym, f)
    }

    /// Inserts `sym` as the new coordinate `i` of a face of `Q^{n+1}`.
    #[inline]
    pub(crate) fn insert_coord(self, i: usize, sym: Symbol) -> Face {
        let n = self.width() + 1;
        let b = n - 1 - i;
        let mut stars = widen(self.stars, b);
        let mut bits = widen(self.bits, b);
        match sym {
            Symbol::Zero => {}
            Symbol::One => bits |= 1 << b,
            Symbol::Star => stars |= 1 << b,
        }
        Face::from_masks(n, stars, bits)
    }

    pub(crate) fn push_boundary(self, out: &mut Vec<Face>) {
        let mut s = self.stars;
        while s != 0 {
            let b = s & s.wrapping_neg();
            s &= s - 1;
            let stars = self.stars & !b;
            out.push(Face::from_masks(self.width(), stars, self.bits));
            out.push(Face::from_masks(self.width(), stars, self.bits | b));
        }
    }

    pub(crate) fn push_coboundary(self, out: &mut Vec<Face>) {
        let mut free = full_mask(self.width()) & !self.stars;
        while free != 0 {
            let b = free & free.wrapping_neg();
            free &= free - 1;
            out.push(Face::from_masks(
                self.width(),
                self.stars | b,
                self.bits & !b,
            ));
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            write!(f, "{}", self.symbol(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Face({self})")
    }
}

impl FromStr for Face {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n == 0 || n > MAX_WIDTH {
            return Err(Error::Parse(format!(
                "face literal {s:?} has unsupported length"
            )));
        }
        let mut stars = 0;
        let mut bits = 0;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= coord_bit(n, i),
                '*' => stars |= coord_bit(n, i),
                other => return Err(Error::Parse(format!("bad symbol {other:?} in {s:?}"))),
            }
        }
        Ok(Face::from_masks(n, stars, bits))
    }
}

/// Sorts and reduces mod 2: faces occurring an even number of times vanish.
pub(crate) fn normalize(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable();
    let mut out: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if out.last() == Some(&f) {
            out.pop();
        } else {
            out.push(f);
        }
    }
    out
}

/// Symmetric difference of two sorted duplicate-free face lists.
pub(crate) fn xor_sorted(a: &[Face], b: &[Face]) -> Vec<Face> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn intersection_count(a: &[Face], b: &[Face]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

pub(crate) fn boundary_faces(faces: &[Face]) -> Vec<Face> {
    let mut out = Vec::with_capacity(faces.len() * 4);
    for &f in faces {
        f.push_boundary(&mut out);
    }
    normalize(out)
}

pub(crate) fn coboundary_faces(faces: &[Face]) -> Vec<Face> {
    let mut out = Vec::with_capacity(faces.len() * 4);
    for &f in faces {
        f.push_coboundary(&mut out);
    }
    normalize(out)
}

pub(crate) fn shift_faces(faces: &[Face], y: u64) -> Vec<Face> {
    let mut out: Vec<Face> = faces.iter().map(|f| f.shifted(y)).collect();
    out.sort_unstable();
    out
}

/// The three parts of a face list cut along one coordinate.
#[derive(Debug, Default)]
pub(crate) struct Split {
    pub zero: Vec<Face>,
    pub one: Vec<Face>,
    pub star: Vec<Face>,
}

/// Splits sorted faces of `Q^n` by their symbol at `cut`; parts are sorted
/// faces of `Q^{n-1}`.
pub(crate) fn split_faces(faces: &[Face], cut: usize) -> Split {
    let mut split = Split::default();
    for &f in faces {
        let (sym, rest) = f.remove_coord(cut);
        match sym {
            Symbol::Zero => split.zero.push(rest),
            Symbol::One => split.one.push(rest),
            Symbol::Star => split.star.push(rest),
        }
    }
    // Removing a coordinate is monotone within each symbol class only up to
    // the star mask, so re-sort.
    split.zero.sort_unstable();
    split.one.sort_unstable();
    split.star.sort_unstable();
    split
}

/// Reassembles `0·zero ⊕ 1·one ⊕ *·star` into faces of `Q^{n+1}`.
pub(crate) fn join_faces(cut: usize, zero: &[Face], one: &[Face], star: &[Face]) -> Vec<Face> {
    let mut out = Vec::with_capacity(zero.len() + one.len() + star.len());
    out.extend(zero.iter().map(|f| f.insert_coord(cut, Symbol::Zero)));
    out.extend(one.iter().map(|f| f.insert_coord(cut, Symbol::One)));
    out.extend(star.iter().map(|f| f.insert_coord(cut, Symbol::Star)));
    out.sort_unstable();
    out
}

/// An F2 combination of faces of `Q^n` of common dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    n: usize,
    dim: usize,
    faces: Vec<Face>,
}

impl Chain {
    pub fn empty(n: usize, dim: usize) -> Self {
        Chain {
            n,
            dim,
            faces: Vec::new(),
        }
    }

    /// Builds a chain; faces occurring an even number of times cancel.
    pub fn new(n: usize, dim: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        if dim > n {
            return Err(Error::InvalidDimension(format!("{dim}-chain in Q^{n}")));
        }
        let faces: Vec<Face> = faces.into_iter().collect();
        for f in &faces {
            if f.width() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    actual: f.width(),
                });
            }
            if f.dim() != dim {
                return Err(Error::InvalidDimension(format!(
                    "face {f} has dimension {} in a {dim}-chain",
                    f.dim()
                )));
            }
        }
        Ok(Chain {
            n,
            dim,
            faces: normalize(faces),
        })
    }

    /// Parses face literals; width and dimension come from the first literal.
    pub fn from_literals(n: usize, dim: usize, literals: &[&str]) -> Result<Self> {
        let faces = literals
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Face>>>()?;
        Chain::new(n, dim, faces)
    }

    pub(crate) fn from_sorted(n: usize, dim: usize, faces: Vec<Face>) -> Self {
        debug_assert!(faces.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(faces.iter().all(|f| f.width() == n && f.dim() == dim));
        Chain { n, dim, faces }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn into_faces(self) -> Vec<Face> {
        self.faces
    }

    /// Hamming weight: number of faces.
    pub fn weight(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.binary_search(f).is_ok()
    }

    /// Sum over F2. Panics if the chains live in different spaces.
    pub fn xor(&self, other: &Chain) -> Chain {
        assert!(
            self.n == other.n && self.dim == other.dim,
            "adding a {}-chain of Q^{} to a {}-chain of Q^{}",
            self.dim,
            self.n,
            other.dim,
            other.n
        );
        Chain::from_sorted(self.n, self.dim, xor_sorted(&self.faces, &other.faces))
    }

    /// Mod-2 intersection number with another chain of the same space.
    pub fn pairing(&self, other: &Chain) -> bool {
        self.intersection_size(other) % 2 == 1
    }

    pub fn intersection_size(&self, other: &Chain) -> usize {
        intersection_count(&self.faces, &other.faces)
    }

    /// Comma-separated face literals.
    pub fn to_literals(&self) -> String {
        self.faces
            .iter()
            .map(Face::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chain[Q^{}, dim {}]{{{}}}",
            self.n,
            self.dim,
            self.to_literals()
        )
    }
}

pub fn boundary(c: &Chain) -> Result<Chain> {
    if c.dim == 0 {
        return Err(Error::InvalidDimension("boundary of a 0-chain".into()));
    }
    Ok(Chain::from_sorted(c.n, c.dim - 1, boundary_faces(&c.faces)))
}

pub fn coboundary(c: &Chain) -> Result<Chain> {
    if c.dim >= c.n {
        return Err(Error::InvalidDimension(format!(
            "coboundary of a {}-cochain of Q^{}",
            c.dim, c.n
        )));
    }
    Ok(Chain::from_sorted(
        c.n,
        c.dim + 1,
        coboundary_faces(&c.faces),
    ))
}

pub fn translate(c: &Chain, y: &BitVector) -> Result<Chain> {
    if y.width() != c.n {
        return Err(Error::WidthMismatch {
            expected: c.n,
            actual: y.width(),
        });
    }
    Ok(Chain::from_sorted(
        c.n,
        c.dim,
        shift_faces(&c.faces, vector_to_mask(y)),
    ))
}

/// Exchanges 0 and 1 in every face.
pub fn complement(c: &Chain) -> Chain {
    Chain::from_sorted(c.n, c.dim, shift_faces(&c.faces, full_mask(c.n)))
}

/// All faces of `Q^n` with the given dimension, in canonical order.
pub fn all_faces(n: usize, dim: usize) -> Vec<Face> {
    let mut out = Vec::new();
    for stars in star_masks(n, dim) {
        let free = full_mask(n) & !stars;
        for_each_submask(free, |bits| out.push(Face::from_masks(n, stars, bits)));
    }
    out
}

/// Masks with `dim` of the low `n` bits set, ascending.
pub(crate) fn star_masks(n: usize, dim: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if dim > n {
        return out;
    }
    if dim == 0 {
        out.push(0);
        return out;
    }
    let mut m: u64 = (1u64 << dim) - 1;
    let limit = full_mask(n);
    while m <= limit {
        out.push(m);
        // Gosper's hack: next integer with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        if r == 0 {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Calls `f` on every submask of `mask` in increasing numeric order.
pub(crate) fn for_each_submask(mask: u64, mut f: impl FnMut(u64)) {
    let mut sub = 0u64;
    loop {
        f(sub);
        if sub == mask {
            break;
        }
        sub = sub.wrapping_sub(mask) & mask;
    }
}
