//! The quotient complex `Q^n / C` for a binary linear code `C`.
//!
//! Faces of the quotient are orbits of cube faces under translation by
//! codewords. Each orbit is represented by its smallest member in the
//! `(stars, bits)` order; chains of the quotient are chains of such
//! representatives.

use std::fmt;

use crate::cube::{self, coord_bit, for_each_submask, full_mask, star_masks, Chain, Face};
use crate::error::{Error, Result};
use crate::f2la::{rank, BitMatrix, BitVector};

/// Largest supported code dimension (codewords are enumerated).
pub const MAX_CODE_DIM: usize = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    n: usize,
    generators: Vec<BitVector>,
    /// Codeword masks in cube layout, index = binary combination of generators.
    codewords: Vec<u64>,
    d: usize,
}

impl ClassicalCode {
    pub fn new(n: usize, generators: Vec<BitVector>) -> Result<Self> {
        if n == 0 || n > cube::MAX_WIDTH {
            return Err(Error::InvalidCode(format!("length {n} out of range")));
        }
        if generators.is_empty() {
            return Err(Error::InvalidCode(
                "at least one generator is required".into(),
            ));
        }
        if generators.len() > MAX_CODE_DIM {
            return Err(Error::InvalidCode(format!(
                "dimension {} exceeds {MAX_CODE_DIM}",
                generators.len()
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.width() != n) {
            return Err(Error::WidthMismatch {
                expected: n,
                actual: g.width(),
            });
        }
        let k = generators.len();
        let m = BitMatrix::from_rows(n, generators.clone())?;
        if rank(&m) != k {
            return Err(Error::InvalidCode(
                "generators are linearly dependent".into(),
            ));
        }
        let gmasks: Vec<u64> = generators.iter().map(cube::vector_to_mask).collect();
        let mut codewords = vec![0u64; 1 << k];
        for idx in 1..codewords.len() {
            let low = idx.trailing_zeros() as usize;
            codewords[idx] = codewords[idx & (idx - 1)] ^ gmasks[low];
        }
        let d = codewords[1..]
            .iter()
            .map(|c| c.count_ones() as usize)
            .min()
            .unwrap_or(0);
        Ok(ClassicalCode {
            n,
            generators,
            codewords,
            d,
        })
    }

    /// The `[n, 1, n]` repetition code.
    pub fn repetition(n: usize) -> Result<Self> {
        ClassicalCode::new(n, vec![BitVector::ones(n)])
    }

    /// Parses comma- or whitespace-separated generator bit strings.
    pub fn from_generator_strings(gens: &[&str]) -> Result<Self> {
        let vs = gens
            .iter()
            .map(|s| BitVector::parse(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        let n = vs.first().map_or(0, BitVector::width);
        ClassicalCode::new(n, vs)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn min_distance(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[BitVector] {
        &self.generators
    }

    pub fn codewords(&self) -> Vec<BitVector> {
        self.codewords
            .iter()
            .map(|&m| cube::mask_to_vector(self.n, m))
            .collect()
    }

    pub(crate) fn codeword_masks(&self) -> &[u64] {
        &self.codewords
    }

    pub(crate) fn generator_masks(&self) -> Vec<u64> {
        self.generators.iter().map(cube::vector_to_mask).collect()
    }

    pub fn is_repetition(&self) -> bool {
        self.dimension() == 1 && self.codewords[1] == full_mask(self.n)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.width() == self.n && self.codewords.contains(&cube::vector_to_mask(v))
    }

    /// Union of codeword supports as a coordinate set.
    pub fn support(&self) -> Vec<usize> {
        let all = self.codewords.iter().fold(0, |a, c| a | c);
        (0..self.n)
            .filter(|&i| all & coord_bit(self.n, i) != 0)
            .collect()
    }
}

impl fmt::Debug for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]{{", self.n, self.dimension(), self.d)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// A parsed code descriptor: the code and, when given, the face dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub code: ClassicalCode,
    pub p: Option<usize>,
}

/// Parses either `rep:n` or the block form `n k p` followed by `k` generator
/// lines. Blank lines and `#` comments are ignored.
pub fn parse_descriptor(text: &str) -> Result<Descriptor> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let first = *lines
        .first()
        .ok_or_else(|| Error::Parse("empty code descriptor".into()))?;
    if let Some(rest) = first.strip_prefix("rep:") {
        let n = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad repetition length in {first:?}")))?;
        return Ok(Descriptor {
            code: ClassicalCode::repetition(n)?,
            p: None,
        });
    }
    let head: Vec<usize> = first
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad header {first:?}")))
        })
        .collect::<Result<_>>()?;
    let [n, k, p] = head[..] else {
        return Err(Error::Parse(format!("header {first:?} must be `n k p`")));
    };
    if lines.len() != k + 1 {
        return Err(Error::Parse(format!(
            "expected {k} generator lines, found {}",
            lines.len() - 1
        )));
    }
    let gens = lines[1..]
        .iter()
        .map(|l| BitVector::parse(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Descriptor {
        code: ClassicalCode::new(n, gens)?,
        p: Some(p),
    })
}

/// Renders the block form accepted by [`parse_descriptor`].
pub fn format_descriptor(code: &ClassicalCode, p: usize) -> String {
    let mut s = format!("{} {} {}\n", code.length(), code.dimension(), p);
    for g in code.generators() {
        s.push_str(&format!("{g}\n"));
    }
    s
}

/// Canonical representative of a face under a list of codeword masks.
#[inline]
pub(crate) fn canon_with(codewords: &[u64], f: Face) -> Face {
    let free = !f.star_mask();
    let bits = f.bit_mask();
    let best = codewords
        .iter()
        .map(|&c| bits ^ (c & free))
        .min()
        .unwrap_or(bits);
    Face::from_masks(f.width(), f.star_mask(), best & full_mask(f.width()))
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    code: ClassicalCode,
    p: usize,
}

impl QuotientComplex {
    /// Requires `1 <= p <= d - 2`.
    pub fn new(code: ClassicalCode, p: usize) -> Result<Self> {
        let d = code.min_distance();
        if p == 0 || p + 2 > d {
            return Err(Error::InvalidParameters(format!(
                "face dimension p={p} needs 1 <= p <= d-2 with d={d} (n={})",
                code.length()
            )));
        }
        Ok(QuotientComplex { code, p })
    }

    pub fn code(&self) -> &ClassicalCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.length()
    }

    pub fn k(&self) -> usize {
        self.code.dimension()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    fn check_width(&self, f: &Face) -> Result<()> {
        if f.width() != self.n() {
            return Err(Error::WidthMismatch {
                expected: self.n(),
                actual: f.width(),
            });
        }
        Ok(())
    }

    pub fn canonical_rep(&self, f: &Face) -> Result<Face> {
        self.check_width(f)?;
        Ok(self.canon(*f))
    }

    #[inline]
    pub(crate) fn canon(&self, f: Face) -> Face {
        canon_with(self.code.codeword_masks(), f)
    }

    pub fn is_canonical(&self, f: &Face) -> bool {
        f.width() == self.n() && self.canon(*f) == *f
    }

    /// Sorted canonical faces of dimension `dim`; the position of a face in
    /// the list is its index.
    pub fn enumerate_faces(&self, dim: usize) -> Vec<Face> {
        let n = self.n();
        let mut out = Vec::new();
        for stars in star_masks(n, dim) {
            for_each_submask(full_mask(n) & !stars, |bits| {
                let f = Face::from_masks(n, stars, bits);
                if self.canon(f) == f {
                    out.push(f);
                }
            });
        }
        out
    }

    /// The qubits: canonical `p`-faces in index order.
    pub fn qubits(&self) -> Vec<Face> {
        self.enumerate_faces(self.p)
    }

    /// Expected face count `2^{n-dim-k} C(n,dim)`, valid for `dim < d`.
    pub fn face_count(&self, dim: usize) -> usize {
        (binomial(self.n(), dim) << (self.n() - dim)) >> self.k()
    }

    fn check_chain(&self, c: &Chain) -> Result<()> {
        if c.width() != self.n() {
            return Err(Error::WidthMismatch {
                expected: self.n(),
                actual: c.width(),
            });
        }
        if let Some(f) = c.faces().iter().find(|f| self.canon(**f) != **f) {
            return Err(Error::NonCanonical(f.to_string()));
        }
        Ok(())
    }

    fn canon_normalize(&self, mut faces: Vec<Face>) -> Vec<Face> {
        for f in faces.iter_mut() {
            *f = self.canon(*f);
        }
        cube::normalize(faces)
    }

    pub fn q_boundary(&self, c: &Chain) -> Result<Chain> {
        self.check_chain(c)?;
        if c.dim() == 0 {
            return Err(Error::InvalidDimension("boundary of a 0-chain".into()));
        }
        let mut out = Vec::with_capacity(c.weight() * 2 * c.dim());
        for &f in c.faces() {
            f.push_boundary(&mut out);
        }
        Ok(Chain::from_sorted(
            self.n(),
            c.dim() - 1,
            self.canon_normalize(out),
        ))
    }

    pub fn q_coboundary(&self, c: &Chain) -> Result<Chain> {
        self.check_chain(c)?;
        if c.dim() >= self.n() {
            return Err(Error::InvalidDimension(format!(
                "coboundary of a {}-cochain of Q^{}",
                c.dim(),
                self.n()
            )));
        }
        let mut out = Vec::with_capacity(c.weight() * (self.n() - c.dim()));
        for &f in c.faces() {
            f.push_coboundary(&mut out);
        }
        Ok(Chain::from_sorted(
            self.n(),
            c.dim() + 1,
            self.canon_normalize(out),
        ))
    }

    /// The preimage of a quotient chain in the cube: every translate of every
    /// face by every codeword.
    pub fn lift(&self, c: &Chain) -> Result<Chain> {
        self.check_chain(c)?;
        let mut out = Vec::with_capacity(c.weight() << self.k());
        for &f in c.faces() {
            for &w in self.code.codeword_masks() {
                out.push(f.shifted(w));
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(Chain::from_sorted(self.n(), c.dim(), out))
    }

    /// Keeps the canonical faces of a cube chain. On symmetric chains this
    /// inverts [`QuotientComplex::lift`].
    pub fn project(&self, c: &Chain) -> Chain {
        let faces = c
            .faces()
            .iter()
            .copied()
            .filter(|f| self.canon(*f) == *f)
            .collect();
        Chain::from_sorted(c.width(), c.dim(), faces)
    }

    /// Image of a cube chain in the quotient: each face is replaced by its
    /// representative and coincident faces cancel in pairs.
    pub fn image(&self, c: &Chain) -> Result<Chain> {
        if c.width() != self.n() {
            return Err(Error::WidthMismatch {
                expected: self.n(),
                actual: c.width(),
            });
        }
        let faces = self.canon_normalize(c.faces().to_vec());
        Ok(Chain::from_sorted(c.width(), c.dim(), faces))
    }

    /// Whether a cube chain is invariant under translation by the code.
    pub fn is_symmetric(&self, c: &Chain) -> bool {
        c.width() == self.n()
            && self.code.generator_masks().into_iter().all(|g| {
                let t = cube::shift_faces(c.faces(), g);
                t == c.faces()
            })
    }

    /// Indicator vector of a chain of canonical faces over an indexed face list.
    pub fn indicator(&self, index: &[Face], c: &Chain) -> Result<BitVector> {
        let mut v = BitVector::zeros(index.len());
        for f in c.faces() {
            let i = index
                .binary_search(f)
                .map_err(|_| Error::NonCanonical(f.to_string()))?;
            v.set(i, true);
        }
        Ok(v)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}
