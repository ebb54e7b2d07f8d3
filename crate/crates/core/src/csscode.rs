//! The CSS code of a quotient complex.
//!
//! Qubits are canonical `p`-faces. `H_X` is the boundary map on `p`-chains
//! (rows indexed by canonical `(p-1)`-faces) and `H_Z` is the transpose of the
//! boundary map on `(p+1)`-chains (rows indexed by canonical `(p+1)`-faces).
//! X-stabilizers are spanned by the rows of `H_Z`, Z-stabilizers by the rows
//! of `H_X`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::cube::{self, coord_bit, Chain, Face};
use crate::error::{Error, Result};
use crate::f2la::{rank, BitMatrix, BitVector, RowSpace, SparseMatrix};
use crate::quotient::{binomial, ClassicalCode, QuotientComplex};

#[derive(Debug)]
pub struct CodeInstance {
    qc: QuotientComplex,
    qubits: Vec<Face>,
    x_checks: Vec<Face>,
    z_checks: Vec<Face>,
    hx: SparseMatrix,
    hz: SparseMatrix,
    hx_space: OnceLock<RowSpace>,
    hz_space: OnceLock<RowSpace>,
}

/// Explicit logical operators: X-type cycles and Z-type cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalSet {
    pub x_logicals: Vec<Chain>,
    pub z_logicals: Vec<Chain>,
}

impl LogicalSet {
    /// Entry `(i, j)` is the parity of `|x_i ∩ z_j|`.
    pub fn pairing_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.x_logicals.len(), self.z_logicals.len());
        for (i, x) in self.x_logicals.iter().enumerate() {
            for (j, z) in self.z_logicals.iter().enumerate() {
                m.set(i, j, x.pairing(z));
            }
        }
        m
    }
}

fn index_of(list: &[Face], f: &Face) -> Result<usize> {
    list.binary_search(f)
        .map_err(|_| Error::NonCanonical(f.to_string()))
}

impl CodeInstance {
    pub fn build(qc: QuotientComplex) -> Result<Self> {
        let p = qc.p();
        let qubits = qc.enumerate_faces(p);
        let x_checks = qc.enumerate_faces(p - 1);
        let z_checks = qc.enumerate_faces(p + 1);

        let mut hx_rows = vec![Vec::new(); x_checks.len()];
        for (q, f) in qubits.iter().enumerate() {
            let b = qc.q_boundary(&Chain::from_sorted(qc.n(), p, vec![*f]))?;
            for g in b.faces() {
                hx_rows[index_of(&x_checks, g)?].push(q);
            }
        }
        let mut hz_rows = Vec::with_capacity(z_checks.len());
        for f in &z_checks {
            let b = qc.q_boundary(&Chain::from_sorted(qc.n(), p + 1, vec![*f]))?;
            let row = b
                .faces()
                .iter()
                .map(|g| index_of(&qubits, g))
                .collect::<Result<Vec<_>>>()?;
            hz_rows.push(row);
        }
        let hx = SparseMatrix::new(qubits.len(), hx_rows)?;
        let hz = SparseMatrix::new(qubits.len(), hz_rows)?;

        // H_X · H_Z^T = 0: every Z-check row is a cycle.
        let hx_cols = hx.transpose();
        for r in 0..hz.rows() {
            let mut acc = BitVector::zeros(hx.rows());
            for &q in hz.row(r) {
                for &c in hx_cols.row(q) {
                    acc.flip(c);
                }
            }
            if !acc.is_zero() {
                return Err(Error::InternalInconsistency(format!(
                    "H_X H_Z^T is nonzero at Z-check {}",
                    z_checks[r]
                )));
            }
        }

        Ok(CodeInstance {
            qc,
            qubits,
            x_checks,
            z_checks,
            hx,
            hz,
            hx_space: OnceLock::new(),
            hz_space: OnceLock::new(),
        })
    }

    /// Shorthand for building from a code and face dimension.
    pub fn new(code: ClassicalCode, p: usize) -> Result<Self> {
        CodeInstance::build(QuotientComplex::new(code, p)?)
    }

    pub fn repetition(n: usize, p: usize) -> Result<Self> {
        CodeInstance::new(ClassicalCode::repetition(n)?, p)
    }

    pub fn qc(&self) -> &QuotientComplex {
        &self.qc
    }

    pub fn n(&self) -> usize {
        self.qc.n()
    }

    pub fn p(&self) -> usize {
        self.qc.p()
    }

    pub fn code(&self) -> &ClassicalCode {
        self.qc.code()
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[Face] {
        &self.qubits
    }

    pub fn x_check_faces(&self) -> &[Face] {
        &self.x_checks
    }

    pub fn z_check_faces(&self) -> &[Face] {
        &self.z_checks
    }

    pub fn hx(&self) -> &SparseMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &SparseMatrix {
        &self.hz
    }

    pub fn qubit_index(&self, f: &Face) -> Option<usize> {
        self.qubits.binary_search(f).ok()
    }

    /// The p-chain on the given qubit indices (repeated indices cancel).
    pub fn chain_from_indices(&self, indices: &[usize]) -> Result<Chain> {
        if let Some(&i) = indices.iter().find(|&&i| i >= self.qubits.len()) {
            return Err(Error::InvalidDimension(format!(
                "qubit index {i} out of range 0..{}",
                self.qubits.len()
            )));
        }
        Chain::new(self.n(), self.p(), indices.iter().map(|&i| self.qubits[i]))
    }

    /// Sorted qubit indices of a chain of canonical p-faces.
    pub fn indices_of(&self, c: &Chain) -> Result<Vec<usize>> {
        self.check_qubit_chain(c)?;
        c.faces()
            .iter()
            .map(|f| index_of(&self.qubits, f))
            .collect()
    }

    pub fn indicator(&self, c: &Chain) -> Result<BitVector> {
        Ok(BitVector::from_indices(
            self.qubits.len(),
            self.indices_of(c)?,
        ))
    }

    fn check_qubit_chain(&self, c: &Chain) -> Result<()> {
        if c.width() != self.n() {
            return Err(Error::WidthMismatch {
                expected: self.n(),
                actual: c.width(),
            });
        }
        if c.dim() != self.p() {
            return Err(Error::InvalidDimension(format!(
                "expected a {}-chain, got dimension {}",
                self.p(),
                c.dim()
            )));
        }
        Ok(())
    }

    /// Row space of `H_X`: the Z-stabilizers.
    pub fn z_stabilizers(&self) -> &RowSpace {
        self.hx_space.get_or_init(|| sparse_row_space(&self.hx))
    }

    /// Row space of `H_Z`: the X-stabilizers.
    pub fn x_stabilizers(&self) -> &RowSpace {
        self.hz_space.get_or_init(|| sparse_row_space(&self.hz))
    }

    pub fn rank_hx(&self) -> usize {
        self.z_stabilizers().rank()
    }

    pub fn rank_hz(&self) -> usize {
        self.x_stabilizers().rank()
    }

    /// Number of logical qubits, `N - rank H_X - rank H_Z`.
    pub fn dimension(&self) -> usize {
        self.num_qubits() - self.rank_hx() - self.rank_hz()
    }

    /// `(C(d,p), 2^{n-p-k}, min)`.
    pub fn distance_formula(&self) -> (usize, usize, usize) {
        let dx = binomial(self.code().min_distance(), self.p());
        let dz = 1usize << (self.n() - self.p() - self.qc.k());
        (dx, dz, dx.min(dz))
    }

    pub fn syndrome_x(&self, e: &Chain) -> Result<Chain> {
        self.check_qubit_chain(e)?;
        self.qc.q_boundary(e)
    }

    pub fn syndrome_z(&self, e: &Chain) -> Result<Chain> {
        self.check_qubit_chain(e)?;
        self.qc.q_coboundary(e)
    }

    pub fn is_stabilizer_x(&self, c: &Chain) -> Result<bool> {
        let v = self.indicator(c)?;
        Ok(self.x_stabilizers().contains(&v))
    }

    pub fn is_stabilizer_z(&self, c: &Chain) -> Result<bool> {
        let v = self.indicator(c)?;
        Ok(self.z_stabilizers().contains(&v))
    }

    /// Product cycle of the code generators for a composition of `p`.
    pub fn product_cycle(&self, composition: &[usize]) -> Result<Chain> {
        product_cycle(&self.qc, self.code().generators(), composition)
    }

    pub fn canonical_cocycle(&self, direction: &[usize]) -> Result<Chain> {
        canonical_cocycle(&self.qc, direction)
    }

    pub fn logical_basis(&self) -> Result<LogicalSet> {
        let k = self.qc.k();
        let p = self.p();
        let dim = self.dimension();

        let x_logicals = compositions(p, k)
            .iter()
            .map(|comp| self.product_cycle(comp))
            .collect::<Result<Vec<_>>>()?;

        let mut space = self.z_stabilizers().clone();
        let mut z_logicals = Vec::new();
        for dir in combinations(self.n(), p) {
            if z_logicals.len() == dim {
                break;
            }
            let z = self.canonical_cocycle(&dir)?;
            if space.insert(self.indicator(&z)?) {
                z_logicals.push(z);
            }
        }
        if x_logicals.len() != dim || z_logicals.len() != dim {
            return Err(Error::InternalInconsistency(format!(
                "found {} X and {} Z logicals for dimension {dim}",
                x_logicals.len(),
                z_logicals.len()
            )));
        }
        let set = LogicalSet {
            x_logicals,
            z_logicals,
        };
        if rank(&set.pairing_matrix()) != dim {
            return Err(Error::InternalInconsistency(
                "logical pairing matrix is singular".into(),
            ));
        }
        Ok(set)
    }
}

fn sparse_row_space(m: &SparseMatrix) -> RowSpace {
    let mut space = RowSpace::new(m.cols());
    for row in m.row_lists() {
        if space.rank() == m.cols() {
            break;
        }
        space.insert(BitVector::from_indices(m.cols(), row.iter().copied()));
    }
    space
}

/// Canonical form under the repetition code: the smaller of a face and its
/// complement.
fn antipodal_canon(f: Face) -> Face {
    f.min(f.complement())
}

/// The cycle `{n p}` built directly: all star placements, first numeral 0,
/// numerals flip after each odd run of stars. Faces are canonical for the
/// repetition code.
pub fn logical_cycle_np(n: usize, p: usize) -> Result<Chain> {
    if p == 0 || p >= n || n > cube::MAX_WIDTH {
        return Err(Error::InvalidParameters(format!(
            "logical cycle needs 1 <= p <= n-1, got n={n}, p={p}"
        )));
    }
    let faces = combinations(n, p).into_iter().map(|dir| {
        let mut stars = 0;
        let mut bits = 0;
        let mut parity = 0;
        let mut seen_numeral = false;
        let mut next = dir.iter().peekable();
        for i in 0..n {
            if next.peek() == Some(&&i) {
                next.next();
                stars |= coord_bit(n, i);
                if seen_numeral {
                    parity ^= 1;
                }
            } else {
                seen_numeral = true;
                if parity == 1 {
                    bits |= coord_bit(n, i);
                }
            }
        }
        antipodal_canon(Face::from_masks(n, stars, bits))
    });
    Chain::new(n, p, faces)
}

/// The same cycle from the recursion `{n p} = b{n-1 p} ⊕ *{n-1 p-1}` with
/// `b = 1` for even `p` and `b = 0` for odd `p`, canonicalized at the end.
pub fn logical_cycle_np_recursive(n: usize, p: usize) -> Result<Chain> {
    if p == 0 || p > n || n > cube::MAX_WIDTH {
        return Err(Error::InvalidParameters(format!(
            "logical cycle needs 1 <= p <= n, got n={n}, p={p}"
        )));
    }
    let raw = bracket_raw(n, p);
    let dim = p;
    Chain::new(n, dim, raw.into_iter().map(antipodal_canon))
}

fn bracket_raw(n: usize, p: usize) -> Vec<Face> {
    if p == n {
        return vec![Face::from_masks(n, cube::full_mask(n), 0)];
    }
    if p == 1 {
        // 0^l * 1^{n-l-1} for l = 0..n-1
        return (0..n)
            .map(|l| {
                let star = coord_bit(n, l);
                Face::from_masks(n, star, star - 1)
            })
            .collect();
    }
    let b = if p % 2 == 0 {
        cube::Symbol::One
    } else {
        cube::Symbol::Zero
    };
    let mut out: Vec<Face> = bracket_raw(n - 1, p)
        .into_iter()
        .map(|f| f.insert_coord(0, b))
        .collect();
    out.extend(
        bracket_raw(n - 1, p - 1)
            .into_iter()
            .map(|f| f.insert_coord(0, cube::Symbol::Star)),
    );
    out
}

/// `S = *^p 0 {0,1}^{n-p-1}`, a cocycle of the hemicube.
pub fn cocycle_s(n: usize, p: usize) -> Result<Chain> {
    if p == 0 || p >= n || n > cube::MAX_WIDTH {
        return Err(Error::InvalidParameters(format!(
            "cocycle S needs 1 <= p <= n-1, got n={n}, p={p}"
        )));
    }
    let stars = cube::full_mask(n) & !cube::full_mask(n - p);
    let free = cube::full_mask(n - p - 1);
    let mut faces = Vec::with_capacity(1 << (n - p - 1));
    cube::for_each_submask(free, |bits| faces.push(Face::from_masks(n, stars, bits)));
    Chain::new(n, p, faces)
}

/// The standard face with direction `dir` (0-based positions): stars on
/// `dir`, and coordinate `i` elsewhere equal to `|dir ∩ [0, i]| mod 2`.
pub fn standard_face(n: usize, dir: &[usize]) -> Result<Face> {
    let mut stars = 0u64;
    for &i in dir {
        if i >= n {
            return Err(Error::InvalidDimension(format!(
                "position {i} outside Q^{n}"
            )));
        }
        stars |= coord_bit(n, i);
    }
    Ok(standard_face_mask(n, stars))
}

fn standard_face_mask(n: usize, stars: u64) -> Face {
    standard_face_along(n, stars, &(0..n).collect::<Vec<_>>())
}

/// Like [`standard_face`], with the parity accumulated along `order` instead
/// of left to right.
fn standard_face_along(n: usize, stars: u64, order: &[usize]) -> Face {
    let mut bits = 0;
    let mut parity = false;
    for &i in order {
        let b = coord_bit(n, i);
        if stars & b != 0 {
            parity = !parity;
        } else if parity {
            bits |= b;
        }
    }
    Face::from_masks(n, stars, bits)
}

/// The product chain in the cube: the sum over adapted tuples
/// `(I_1..I_k)` (disjoint, `I_i ⊆ Supp(x_i)`, `|I_i| = p_i`) of the standard
/// face with direction `I_1 ∪ .. ∪ I_k`. Directions reached by an even number
/// of tuples cancel.
pub fn product_chain(n: usize, xs: &[BitVector], composition: &[usize]) -> Result<Chain> {
    product_chain_along(n, xs, composition, &(0..n).collect::<Vec<_>>())
}

fn product_chain_along(
    n: usize,
    xs: &[BitVector],
    composition: &[usize],
    order: &[usize],
) -> Result<Chain> {
    if xs.len() != composition.len() {
        return Err(Error::InvalidParameters(format!(
            "{} vectors for a composition with {} parts",
            xs.len(),
            composition.len()
        )));
    }
    if let Some(x) = xs.iter().find(|x| x.width() != n) {
        return Err(Error::WidthMismatch {
            expected: n,
            actual: x.width(),
        });
    }
    let p: usize = composition.iter().sum();
    if p > n {
        return Err(Error::InvalidDimension(format!("{p}-chain in Q^{n}")));
    }
    let supports: Vec<u64> = xs.iter().map(cube::vector_to_mask).collect();
    let mut parity: BTreeMap<u64, bool> = BTreeMap::new();
    adapted_tuples(&supports, composition, 0, 0, &mut |union| {
        *parity.entry(union).or_default() ^= true;
    });
    let faces = parity
        .into_iter()
        .filter(|&(_, odd)| odd)
        .map(|(dir, _)| standard_face_along(n, dir, order));
    Chain::new(n, p, faces)
}

fn adapted_tuples(
    supports: &[u64],
    composition: &[usize],
    part: usize,
    used: u64,
    visit: &mut impl FnMut(u64),
) {
    if part == supports.len() {
        visit(used);
        return;
    }
    let avail = supports[part] & !used;
    let need = composition[part];
    if (avail.count_ones() as usize) < need {
        return;
    }
    for_each_subset_of_size(avail, need, &mut |sub| {
        adapted_tuples(supports, composition, part + 1, used | sub, visit)
    });
}

fn for_each_subset_of_size(mask: u64, size: usize, f: &mut impl FnMut(u64)) {
    fn go(mask: u64, size: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if size == 0 {
            f(acc);
            return;
        }
        if (mask.count_ones() as usize) < size {
            return;
        }
        let low = mask & mask.wrapping_neg();
        go(mask & !low, size - 1, acc | low, f);
        go(mask & !low, size, acc, f);
    }
    go(mask, size, 0, f)
}

/// Image in the quotient of the product chain of a basis of the code.
pub fn product_cycle(
    qc: &QuotientComplex,
    basis: &[BitVector],
    composition: &[usize],
) -> Result<Chain> {
    let code = qc.code();
    if basis.len() != code.dimension() || basis.iter().any(|c| !code.contains(c)) {
        return Err(Error::NotABasis);
    }
    if rank(&BitMatrix::from_rows(qc.n(), basis.to_vec())?) != code.dimension() {
        return Err(Error::NotABasis);
    }
    if composition.iter().sum::<usize>() != qc.p() {
        return Err(Error::InvalidParameters(format!(
            "composition {composition:?} does not sum to p={}",
            qc.p()
        )));
    }
    let n = qc.n();
    let identity: Vec<usize> = (0..n).collect();
    let c = qc.image(&product_chain_along(n, basis, composition, &identity)?)?;
    if qc.q_boundary(&c)?.is_empty() {
        return Ok(c);
    }
    // The parity rule telescopes only when every support is an interval of the
    // coordinate order. Relabelling coordinates is a cube automorphism, so try
    // orders that make columns with equal basis patterns adjacent.
    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        groups
            .entry(basis.iter().map(|x| x.get(i)).collect())
            .or_default()
            .push(i);
    }
    let zero = groups.remove(&vec![false; basis.len()]).unwrap_or_default();
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    if blocks.len() > MAX_PATTERN_BLOCKS {
        return Err(Error::InternalInconsistency(format!(
            "product chain is not a cycle and {} column patterns are too many to reorder",
            blocks.len()
        )));
    }
    let mut found = None;
    permute(&mut blocks, 0, &mut |blocks| {
        let order: Vec<usize> = blocks.iter().flatten().chain(&zero).copied().collect();
        let c = product_chain_along(n, basis, composition, &order)
            .and_then(|c| qc.image(&c))
            .and_then(|c| Ok((qc.q_boundary(&c)?.is_empty(), c)));
        match c {
            Ok((true, c)) => {
                found = Some(Ok(c));
                true
            }
            Ok(_) => false,
            Err(e) => {
                found = Some(Err(e));
                true
            }
        }
    });
    found.unwrap_or_else(|| {
        Err(Error::InternalInconsistency(format!(
            "no coordinate order makes the product chain for {composition:?} a cycle"
        )))
    })
}

const MAX_PATTERN_BLOCKS: usize = 8;

/// Visits permutations of `items[start..]` until `visit` returns true.
fn permute<T>(items: &mut [T], start: usize, visit: &mut impl FnMut(&[T]) -> bool) -> bool {
    if start == items.len() {
        return visit(items);
    }
    for i in start..items.len() {
        items.swap(start, i);
        if permute(items, start + 1, visit) {
            items.swap(start, i);
            return true;
        }
        items.swap(start, i);
    }
    false
}

/// Sum of all canonical faces whose star positions are exactly `direction`.
pub fn canonical_cocycle(qc: &QuotientComplex, direction: &[usize]) -> Result<Chain> {
    let n = qc.n();
    if direction.len() != qc.p() {
        return Err(Error::InvalidDimension(format!(
            "direction of size {} for p={}",
            direction.len(),
            qc.p()
        )));
    }
    let mut stars = 0u64;
    for &i in direction {
        if i >= n || stars & coord_bit(n, i) != 0 {
            return Err(Error::InvalidDimension(format!(
                "bad direction {direction:?}"
            )));
        }
        stars |= coord_bit(n, i);
    }
    let mut faces = Vec::new();
    cube::for_each_submask(cube::full_mask(n) & !stars, |bits| {
        let f = Face::from_masks(n, stars, bits);
        if qc.is_canonical(&f) {
            faces.push(f);
        }
    });
    Ok(Chain::from_sorted(n, qc.p(), faces))
}

/// All compositions of `total` into `parts` non-negative parts, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// `size`-subsets of `0..n` as ascending position lists, lexicographic.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}
