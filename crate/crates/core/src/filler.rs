//! Recursive fillings and cofillings.
//!
//! Given a cycle `z` (resp. cocycle), these routines build a chain `F` with
//! `∂F = z` (resp. `δF = z`). Each step cuts the cube along one coordinate,
//! splits `z = 0Z₀ ⊕ 1Z₁ ⊕ *Z★`, recurses on smaller cubes and glues the
//! pieces back. The cut minimizes a one-step size estimate.
//!
//! Symmetric variants work on chains invariant under translation by a
//! classical code, stored as full preimages in the cube. At a cut `j` in the
//! code support, pick a codeword `α` with `α_j = 1` and let `A` be the
//! codewords vanishing at `j`. Removing coordinate `j` gives the frames
//! `A'` (dimension `k-1`) and `C'` (dimension `k`, one less in width):
//!
//! - fill: `F★ = fill_{C'}(Z★)`, `F₀ = fill_{A'}(Z₀ ⊕ F★)`,
//!   `F = 0F₀ ⊕ *F★ ⊕ 1(F₀ + α')`;
//! - cofill: `Y₀ = cofill_{A'}(Z₀)`, `Y₁ = Y₀ + α'`,
//!   `F★ = cofill_{C'}(Y₀ ⊕ Y₁ ⊕ Z★)`, `F = 0Y₀ ⊕ 1Y₁ ⊕ *F★`.
//!
//! With `k = 0` the frame is the plain cube:
//!
//! - fill: `Y = *Z₁ ⊕ 0·fill(Z₀ ⊕ Z₁)` or its mirror `*Z₀ ⊕ 1·fill(Z₀ ⊕ Z₁)`;
//! - cofill: `Y = 0Y₀ ⊕ 1(Y₀ ⊕ Z★)` with `Y₀ = cofill(Z₀)`, or the mirror.
//!
//! Recursion ends on empty input or, for fillings, on the top cell.

use num_rational::Ratio;

use crate::cube::{
    self, boundary_faces, coboundary_faces, full_mask, join_faces, shift_faces, split_faces,
    xor_sorted, Chain, Face,
};
use crate::error::{Error, Result};
use crate::quotient::{ClassicalCode, QuotientComplex};

pub type Rational = Ratio<i128>;

/// Widest cube accepted by the symmetric routines for code dimension 1 and 2.
/// Beyond these the exact cut constants leave the range of `i128`.
pub const MAX_WIDTH_K1: usize = 40;
pub const MAX_WIDTH_K2: usize = 16;

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn harmonic(from: usize, to: usize) -> Rational {
    (from..=to).fold(Rational::from_integer(0), |acc, m| acc + r(1, m as i128))
}

/// Filling constant of the plain cube, `(n-p+1)/(2p)`.
pub fn cube_fill_constant(n: usize, p: usize) -> Rational {
    if p == 0 || p > n {
        return Rational::from_integer(0);
    }
    r((n - p + 1) as i128, 2 * p as i128)
}

/// `c(n,p) = (n-p+1)(n-p)/(2p) · Σ_{m=n-p+1}^{n} 1/m`, the filling constant of
/// the hemicube.
pub fn c_fill(n: usize, p: usize) -> Rational {
    if p == 0 || p > n {
        return Rational::from_integer(0);
    }
    let (n_, p_) = (n as i128, p as i128);
    r((n_ - p_ + 1) * (n_ - p_), 2 * p_) * harmonic(n - p + 1, n)
}

/// `c'(n,p) = (n-p-1) · Σ_{m=n-p}^{n} 1/m`, the cofilling constant of the
/// hemicube.
pub fn c_cofill(n: usize, p: usize) -> Rational {
    if p >= n {
        return Rational::from_integer(0);
    }
    Rational::from_integer((n - p - 1) as i128) * harmonic(n - p, n)
}

/// Closed-form filling envelope for code dimension 2:
/// `(n-p+1)²/2 · Σ_{l=0}^{p} (n-p+2)^l (n-l+1)! p! / (n! (p-l)!)`.
pub fn c2_fill(n: usize, p: usize) -> Rational {
    if p == 0 || p > n {
        return Rational::from_integer(0);
    }
    let (n_, p_) = (n as i128, p as i128);
    let base = n_ - p_ + 2;
    let mut sum = Rational::from_integer(0);
    for l in 0..=p_ {
        // p!/(p-l)! is a falling product; (n-l+1)!/n! is n+1 for l = 0 and
        // 1/(n(n-1)...(n-l+2)) otherwise.
        let falling_p: i128 = (0..l).map(|i| p_ - i).product();
        let factorial_ratio = if l == 0 {
            Rational::from_integer(n_ + 1)
        } else {
            r(1, (0..l - 1).map(|i| n_ - i).product())
        };
        sum += Rational::from_integer(base.pow(l as u32) * falling_p) * factorial_ratio;
    }
    r((n_ - p_ + 1) * (n_ - p_ + 1), 2) * sum
}

/// Cofilling envelope for code dimension 2, from the recurrence
/// `c(n,p) = (p+1)(n-p-1)/n + c(n-1,p-1)·((p+1)(n-p-1)/n + (p+1)/n)`,
/// `c(n,0) = (n-1)/n`.
pub fn c2_cofill(n: usize, p: usize) -> Rational {
    if p >= n {
        return Rational::from_integer(0);
    }
    let n_ = n as i128;
    if p == 0 {
        return r(n_ - 1, n_);
    }
    let p_ = p as i128;
    let a = r((p_ + 1) * (n_ - p_ - 1), n_);
    a + c2_cofill(n - 1, p - 1) * (a + r(p_ + 1, n_))
}

/// The constants bounding filling and cofilling sizes in the hemicube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundConstants {
    pub c: Rational,
    pub c_prime: Rational,
    pub loose_fill: Rational,
    pub loose_cofill: Rational,
}

impl BoundConstants {
    pub fn new(n: usize, p: usize) -> Self {
        BoundConstants {
            c: c_fill(n, p),
            c_prime: c_cofill(n, p),
            loose_fill: r(n.saturating_sub(p) as i128, 2),
            loose_cofill: Rational::from_integer(p as i128 + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutMode {
    Fill,
    Cofill,
    SymmetricFill,
    SymmetricCofill,
}

/// Which numeral side of the cut carries the recursive call in the plain-cube
/// routines. Symmetric routines always use `Zero`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Zero,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutChoice {
    pub coordinate: usize,
    pub side: Side,
    pub estimate: Rational,
}

/// A code given by basis masks in the current cube width.
#[derive(Clone, Debug)]
struct Frame {
    n: usize,
    gens: Vec<u64>,
}

impl Frame {
    fn support(&self) -> u64 {
        self.gens.iter().fold(0, |a, g| a | g)
    }

    /// `(α', A', C')` for a cut at coordinate `j` inside the support.
    fn cut(&self, j: usize) -> (u64, Frame, Frame) {
        let b = self.n - 1 - j;
        let bit = 1u64 << b;
        let ai = self
            .gens
            .iter()
            .position(|g| g & bit != 0)
            .expect("cut inside the code support");
        let alpha = self.gens[ai];
        let squeeze = |x: u64| {
            let low = x & (bit - 1);
            ((x >> (b + 1)) << b) | low
        };
        let a_gens: Vec<u64> = self
            .gens
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ai)
            .map(|(_, &g)| squeeze(if g & bit != 0 { g ^ alpha } else { g }))
            .collect();
        let alpha_p = squeeze(alpha);
        let mut c_gens = a_gens.clone();
        c_gens.push(alpha_p);
        (
            alpha_p,
            Frame {
                n: self.n - 1,
                gens: a_gens,
            },
            Frame {
                n: self.n - 1,
                gens: c_gens,
            },
        )
    }
}

/// Per-coordinate counts of faces with symbol 0, 1 and `*`.
fn symbol_counts(n: usize, z: &[Face]) -> Vec<[usize; 3]> {
    let mut counts = vec![[0usize; 3]; n];
    for f in z {
        let (s, bits) = (f.star_mask(), f.bit_mask());
        for (i, c) in counts.iter_mut().enumerate() {
            let b = 1u64 << (n - 1 - i);
            if s & b != 0 {
                c[2] += 1;
            } else if bits & b != 0 {
                c[1] += 1;
            } else {
                c[0] += 1;
            }
        }
    }
    counts
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i128)
}

fn cube_fill_cut(n: usize, p: usize, z: &[Face]) -> CutChoice {
    let a = r((n - p) as i128, 2 * p as i128);
    let b = r((n + p) as i128, 2 * p as i128);
    best_cut(symbol_counts(n, z).iter().enumerate().flat_map(|(j, c)| {
        [
            (j, Side::Zero, a * int(c[0]) + b * int(c[1])),
            (j, Side::One, a * int(c[1]) + b * int(c[0])),
        ]
    }))
}

fn cube_cofill_cut(n: usize, z: &[Face]) -> CutChoice {
    best_cut(symbol_counts(n, z).iter().enumerate().flat_map(|(j, c)| {
        [
            (j, Side::Zero, int(2 * c[0] + c[2])),
            (j, Side::One, int(2 * c[1] + c[2])),
        ]
    }))
}

/// Coefficients `(a, b)` of the symmetric estimate `a‖Z₀‖ + b‖Z★‖`.
fn symmetric_coefficients(
    k: usize,
    n: usize,
    p: usize,
    fill: bool,
) -> Result<(Rational, Rational)> {
    let zero = Rational::from_integer(0);
    let (n_, p_) = (n as i128, p as i128);
    match (k, fill) {
        (1, true) => {
            let cs = if p >= 2 { c_fill(n - 1, p - 1) } else { zero };
            Ok((r(n_ - p_, p_), r(n_, p_) * cs))
        }
        (1, false) => {
            let cs = if p >= 1 { c_cofill(n - 1, p - 1) } else { zero };
            Ok((int(2) + cs * int(2), cs))
        }
        (2, true) => {
            let cs = if p >= 2 { c2_fill(n - 1, p - 1) } else { zero };
            let c0 = c_fill(n - 1, p);
            Ok((int(2) * c0, int(2) * c0 * cs + cs))
        }
        (2, false) => {
            let cs = if p >= 1 {
                c2_cofill(n - 1, p - 1)
            } else {
                zero
            };
            let q = Rational::from_integer(2 * (p_ + 1));
            Ok((cs * q + q, cs))
        }
        _ => Err(Error::Unsupported(format!(
            "no cut estimate for code dimension {k}"
        ))),
    }
}

fn symmetric_cut(frame: &Frame, p: usize, z: &[Face], fill: bool) -> Result<CutChoice> {
    let (a, b) = symmetric_coefficients(frame.gens.len(), frame.n, p, fill)?;
    let support = frame.support();
    let n = frame.n;
    let counts = symbol_counts(n, z);
    Ok(best_cut(
        counts
            .iter()
            .enumerate()
            .filter(|&(j, _)| support & (1u64 << (n - 1 - j)) != 0)
            .map(|(j, c)| (j, Side::Zero, a * int(c[0]) + b * int(c[2]))),
    ))
}

/// Lowest estimate; ties go to the earliest candidate (lowest coordinate,
/// then side zero).
fn best_cut(cands: impl Iterator<Item = (usize, Side, Rational)>) -> CutChoice {
    let mut best: Option<CutChoice> = None;
    for (coordinate, side, estimate) in cands {
        if best.as_ref().map_or(true, |b| estimate < b.estimate) {
            best = Some(CutChoice {
                coordinate,
                side,
                estimate,
            });
        }
    }
    best.unwrap_or(CutChoice {
        coordinate: 0,
        side: Side::Zero,
        estimate: Rational::from_integer(0),
    })
}

fn top_cell(n: usize) -> Face {
    Face::from_masks(n, full_mask(n), 0)
}

fn cube_fill_rec(n: usize, p: usize, z: Vec<Face>) -> Result<Vec<Face>> {
    if z.is_empty() {
        return Ok(z);
    }
    if p > n {
        return Err(Error::NotABoundary);
    }
    if p == n {
        let top = top_cell(n);
        return if boundary_faces(&[top]) == z {
            Ok(vec![top])
        } else {
            Err(Error::NotABoundary)
        };
    }
    let choice = cube_fill_cut(n, p, &z);
    let j = choice.coordinate;
    let s = split_faces(&z, j);
    let inner = cube_fill_rec(n - 1, p, xor_sorted(&s.zero, &s.one))?;
    Ok(match choice.side {
        Side::Zero => join_faces(j, &inner, &[], &s.one),
        Side::One => join_faces(j, &[], &inner, &s.zero),
    })
}

fn cube_cofill_rec(n: usize, p: usize, z: Vec<Face>) -> Result<Vec<Face>> {
    if z.is_empty() {
        return Ok(z);
    }
    if p >= n {
        return Err(Error::NotACoboundary);
    }
    let choice = cube_cofill_cut(n, &z);
    let j = choice.coordinate;
    let s = split_faces(&z, j);
    Ok(match choice.side {
        Side::Zero => {
            let y0 = cube_cofill_rec(n - 1, p, s.zero)?;
            let y1 = xor_sorted(&y0, &s.star);
            join_faces(j, &y0, &y1, &[])
        }
        Side::One => {
            let y1 = cube_cofill_rec(n - 1, p, s.one)?;
            let y0 = xor_sorted(&y1, &s.star);
            join_faces(j, &y0, &y1, &[])
        }
    })
}

fn sym_fill_rec(frame: &Frame, p: usize, z: Vec<Face>) -> Result<Vec<Face>> {
    if frame.gens.is_empty() {
        return cube_fill_rec(frame.n, p, z);
    }
    if z.is_empty() {
        return Ok(z);
    }
    if p > frame.n {
        return Err(Error::NotABoundary);
    }
    let j = symmetric_cut(frame, p, &z, true)?.coordinate;
    let (alpha, a_frame, c_frame) = frame.cut(j);
    let s = split_faces(&z, j);
    let f_star = if p >= 2 {
        sym_fill_rec(&c_frame, p - 1, s.star)?
    } else {
        Vec::new()
    };
    let f0 = sym_fill_rec(&a_frame, p, xor_sorted(&s.zero, &f_star))?;
    let f1 = shift_faces(&f0, alpha);
    Ok(join_faces(j, &f0, &f1, &f_star))
}

fn sym_cofill_rec(frame: &Frame, p: usize, z: Vec<Face>) -> Result<Vec<Face>> {
    if frame.gens.is_empty() {
        return cube_cofill_rec(frame.n, p, z);
    }
    if z.is_empty() {
        return Ok(z);
    }
    if p >= frame.n {
        return Err(Error::NotACoboundary);
    }
    let j = symmetric_cut(frame, p, &z, false)?.coordinate;
    let (alpha, a_frame, c_frame) = frame.cut(j);
    let s = split_faces(&z, j);
    let y0 = sym_cofill_rec(&a_frame, p, s.zero)?;
    let y1 = shift_faces(&y0, alpha);
    let w = xor_sorted(&xor_sorted(&y0, &y1), &s.star);
    let f_star = if p == 0 {
        if !w.is_empty() {
            return Err(Error::NotACoboundary);
        }
        w
    } else {
        sym_cofill_rec(&c_frame, p - 1, w)?
    };
    Ok(join_faces(j, &y0, &y1, &f_star))
}

fn check_input(n: usize, dim: usize, z: &Chain) -> Result<()> {
    if z.width() != n {
        return Err(Error::WidthMismatch {
            expected: n,
            actual: z.width(),
        });
    }
    if z.dim() != dim {
        return Err(Error::InvalidDimension(format!(
            "expected a {dim}-chain, got dimension {}",
            z.dim()
        )));
    }
    Ok(())
}

fn fill_dims(n: usize, p: usize, z: &Chain) -> Result<()> {
    if p == 0 || p > n || n > cube::MAX_WIDTH {
        return Err(Error::InvalidDimension(format!(
            "filling by {p}-chains in Q^{n}"
        )));
    }
    check_input(n, p - 1, z)?;
    if p >= 2 && !boundary_faces(z.faces()).is_empty() {
        return Err(Error::NotACycle);
    }
    Ok(())
}

fn cofill_dims(n: usize, p: usize, z: &Chain) -> Result<()> {
    if p >= n || n > cube::MAX_WIDTH {
        return Err(Error::InvalidDimension(format!(
            "cofilling by {p}-cochains in Q^{n}"
        )));
    }
    check_input(n, p + 1, z)?;
    if p + 1 < n && !coboundary_faces(z.faces()).is_empty() {
        return Err(Error::NotACocycle);
    }
    Ok(())
}

/// A `p`-chain `y` of the cube with `∂y = z`, of size at most
/// `(n-p+1)/(2p) ‖z‖`.
pub fn cube_fill(n: usize, p: usize, z: &Chain) -> Result<Chain> {
    fill_dims(n, p, z)?;
    let y = cube_fill_rec(n, p, z.faces().to_vec())?;
    debug_assert_eq!(boundary_faces(&y), z.faces(), "inexact filling");
    Ok(Chain::from_sorted(n, p, y))
}

/// A `p`-cochain `y` of the cube with `δy = z` and `‖y‖ <= ‖z‖`.
pub fn cube_cofill(n: usize, p: usize, z: &Chain) -> Result<Chain> {
    cofill_dims(n, p, z)?;
    let y = cube_cofill_rec(n, p, z.faces().to_vec())?;
    debug_assert_eq!(coboundary_faces(&y), z.faces(), "inexact cofilling");
    Ok(Chain::from_sorted(n, p, y))
}

fn frame_of(code: &ClassicalCode) -> Result<Frame> {
    let limit = match code.dimension() {
        1 => MAX_WIDTH_K1,
        2 => MAX_WIDTH_K2,
        k => {
            return Err(Error::Unsupported(format!(
                "symmetric fillings for code dimension {k}"
            )))
        }
    };
    if code.length() > limit {
        return Err(Error::Unsupported(format!(
            "symmetric fillings with k={} need n <= {limit}",
            code.dimension()
        )));
    }
    Ok(Frame {
        n: code.length(),
        gens: code.generator_masks(),
    })
}

fn check_symmetric(frame: &Frame, z: &Chain) -> Result<()> {
    for &g in &frame.gens {
        if shift_faces(z.faces(), g) != z.faces() {
            return Err(Error::NotSymmetric);
        }
    }
    Ok(())
}

/// Filling of a cycle that is invariant under translation by `code`. Input
/// and output are full preimages in the cube; the output is invariant too.
pub fn symmetric_fill(code: &ClassicalCode, p: usize, z: &Chain) -> Result<Chain> {
    let n = code.length();
    fill_dims(n, p, z)?;
    let frame = frame_of(code)?;
    check_symmetric(&frame, z)?;
    let y = sym_fill_rec(&frame, p, z.faces().to_vec())?;
    debug_assert_eq!(boundary_faces(&y), z.faces(), "inexact symmetric filling");
    Ok(Chain::from_sorted(n, p, y))
}

/// Cofilling of a cocycle invariant under translation by `code`.
pub fn symmetric_cofill(code: &ClassicalCode, p: usize, z: &Chain) -> Result<Chain> {
    let n = code.length();
    cofill_dims(n, p, z)?;
    let frame = frame_of(code)?;
    check_symmetric(&frame, z)?;
    let y = sym_cofill_rec(&frame, p, z.faces().to_vec())?;
    debug_assert_eq!(
        coboundary_faces(&y),
        z.faces(),
        "inexact symmetric cofilling"
    );
    Ok(Chain::from_sorted(n, p, y))
}

/// Filling in the hemicube, on antipodally symmetric chains of the cube.
pub fn hemi_fill(n: usize, p: usize, z: &Chain) -> Result<Chain> {
    symmetric_fill(&ClassicalCode::repetition(n)?, p, z)
}

/// Cofilling in the hemicube, on antipodally symmetric cochains of the cube.
pub fn hemi_cofill(n: usize, p: usize, z: &Chain) -> Result<Chain> {
    symmetric_cofill(&ClassicalCode::repetition(n)?, p, z)
}

fn require_k2(qc: &QuotientComplex) -> Result<()> {
    if qc.k() != 2 {
        return Err(Error::Unsupported(format!(
            "this filling needs a code of dimension 2, got {}",
            qc.k()
        )));
    }
    Ok(())
}

/// Filling for a quotient by a code of dimension 2; `z` is a lifted
/// `(p-1)`-cycle.
pub fn gen_fill_k2(qc: &QuotientComplex, z: &Chain) -> Result<Chain> {
    require_k2(qc)?;
    symmetric_fill(qc.code(), qc.p(), z)
}

/// Cofilling for a quotient by a code of dimension 2; `z` is a lifted
/// `(p+1)`-cocycle.
pub fn gen_cofill_k2(qc: &QuotientComplex, z: &Chain) -> Result<Chain> {
    require_k2(qc)?;
    symmetric_cofill(qc.code(), qc.p(), z)
}

/// The cut the corresponding routine takes first on input `z`. `p` is the
/// dimension of the chain being built.
pub fn choose_cut(n: usize, p: usize, z: &Chain, mode: CutMode) -> CutChoice {
    let rep = || Frame {
        n,
        gens: vec![full_mask(n)],
    };
    match mode {
        CutMode::Fill => cube_fill_cut(n, p, z.faces()),
        CutMode::Cofill => cube_cofill_cut(n, z.faces()),
        CutMode::SymmetricFill => {
            symmetric_cut(&rep(), p, z.faces(), true).expect("code dimension 1 has estimates")
        }
        CutMode::SymmetricCofill => {
            symmetric_cut(&rep(), p, z.faces(), false).expect("code dimension 1 has estimates")
        }
    }
}
