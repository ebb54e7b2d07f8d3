//! Syndrome decoding by filling and cofilling.
//!
//! X errors are corrected by filling the X syndrome (a `(p-1)`-boundary) and
//! Z errors by cofilling the Z syndrome (a `(p+1)`-coboundary). The two sides
//! are independent.

use crate::csscode::CodeInstance;
use crate::cube::Chain;
use crate::error::{Error, Result};
use crate::filler;
use crate::quotient::binomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    pub sigma_x: Chain,
    pub sigma_z: Chain,
}

impl Syndrome {
    pub fn empty(ci: &CodeInstance) -> Self {
        Syndrome {
            sigma_x: Chain::empty(ci.n(), ci.p() - 1),
            sigma_z: Chain::empty(ci.n(), ci.p() + 1),
        }
    }

    /// The syndrome produced by a Pauli error.
    pub fn of(ci: &CodeInstance, error: &Correction) -> Result<Self> {
        Ok(Syndrome {
            sigma_x: ci.syndrome_x(&error.e_x)?,
            sigma_z: ci.syndrome_z(&error.e_z)?,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.sigma_x.is_empty() && self.sigma_z.is_empty()
    }
}

/// A Pauli error or correction: X part `e_x` and Z part `e_z`, both p-chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub e_x: Chain,
    pub e_z: Chain,
}

impl Correction {
    pub fn empty(ci: &CodeInstance) -> Self {
        Correction {
            e_x: Chain::empty(ci.n(), ci.p()),
            e_z: Chain::empty(ci.n(), ci.p()),
        }
    }

    pub fn xor(&self, other: &Correction) -> Correction {
        Correction {
            e_x: self.e_x.xor(&other.e_x),
            e_z: self.e_z.xor(&other.e_z),
        }
    }
}

/// Outcome of comparing a decoded correction with the true error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub logical_x_failure: bool,
    pub logical_z_failure: bool,
}

impl Verdict {
    pub fn success(&self) -> bool {
        !self.logical_x_failure && !self.logical_z_failure
    }
}

fn check_syndrome(ci: &CodeInstance, s: &Syndrome) -> Result<()> {
    let n = ci.n();
    for (c, dim) in [(&s.sigma_x, ci.p() - 1), (&s.sigma_z, ci.p() + 1)] {
        if c.width() != n || c.dim() != dim {
            return Err(Error::InvalidSyndrome(format!(
                "expected {dim}-faces of Q^{n}, got {}-faces of Q^{}",
                c.dim(),
                c.width()
            )));
        }
        if let Some(f) = c.faces().iter().find(|f| !ci.qc().is_canonical(f)) {
            return Err(Error::NonCanonical(f.to_string()));
        }
    }
    Ok(())
}

fn as_invalid(e: Error) -> Error {
    match e {
        Error::NotABoundary | Error::NotACycle => {
            Error::InvalidSyndrome("X syndrome is not a boundary".into())
        }
        Error::NotACoboundary | Error::NotACocycle => {
            Error::InvalidSyndrome("Z syndrome is not a coboundary".into())
        }
        other => other,
    }
}

fn require_supported(ci: &CodeInstance) -> Result<()> {
    match ci.qc().k() {
        1 | 2 => Ok(()),
        k => Err(Error::Unsupported(format!(
            "decoding quotients by codes of dimension {k}"
        ))),
    }
}

/// An X correction whose boundary is `sigma_x`.
pub fn decode_x(ci: &CodeInstance, sigma_x: &Chain) -> Result<Chain> {
    require_supported(ci)?;
    let qc = ci.qc();
    let z = qc.lift(sigma_x)?;
    let f = if qc.k() == 2 {
        filler::gen_fill_k2(qc, &z)
    } else {
        filler::symmetric_fill(qc.code(), qc.p(), &z)
    }
    .map_err(as_invalid)?;
    let e = qc.project(&f);
    if qc.q_boundary(&e)? != *sigma_x {
        return Err(Error::InternalInconsistency(
            "X correction does not reproduce the syndrome".into(),
        ));
    }
    Ok(e)
}

/// A Z correction whose coboundary is `sigma_z`.
pub fn decode_z(ci: &CodeInstance, sigma_z: &Chain) -> Result<Chain> {
    require_supported(ci)?;
    let qc = ci.qc();
    let z = qc.lift(sigma_z)?;
    let f = if qc.k() == 2 {
        filler::gen_cofill_k2(qc, &z)
    } else {
        filler::symmetric_cofill(qc.code(), qc.p(), &z)
    }
    .map_err(as_invalid)?;
    let e = qc.project(&f);
    if qc.q_coboundary(&e)? != *sigma_z {
        return Err(Error::InternalInconsistency(
            "Z correction does not reproduce the syndrome".into(),
        ));
    }
    Ok(e)
}

pub fn decode(ci: &CodeInstance, s: &Syndrome) -> Result<Correction> {
    check_syndrome(ci, s)?;
    Ok(Correction {
        e_x: decode_x(ci, &s.sigma_x)?,
        e_z: decode_z(ci, &s.sigma_z)?,
    })
}

/// Classifies the residual `true_error ⊕ decoded` modulo stabilizers.
pub fn verify(ci: &CodeInstance, true_error: &Correction, decoded: &Correction) -> Result<Verdict> {
    if Syndrome::of(ci, true_error)? != Syndrome::of(ci, decoded)? {
        return Err(Error::SyndromeMismatch);
    }
    let residual = true_error.xor(decoded);
    Ok(Verdict {
        logical_x_failure: !ci.is_stabilizer_x(&residual.e_x)?,
        logical_z_failure: !ci.is_stabilizer_z(&residual.e_z)?,
    })
}

/// Largest error weight the decoder is proven to correct on the hemicube.
///
/// This is the minimum of three limits: the largest `w < d_min / (2p(n-p))`,
/// the X-side condition `(1 + p(n-p)) w < C(n,p)`, and the Z-side condition
/// `(1 + (p+1)(n-p)) w < 2^{n-p-1}`. The last two use the loose filling
/// constants `(n-p)/2` and `p+1`.
pub fn guaranteed_radius(ci: &CodeInstance) -> Result<usize> {
    if !ci.code().is_repetition() {
        return Err(Error::Unsupported(
            "the correction radius is proven only for the repetition quotient".into(),
        ));
    }
    let (n, p) = (ci.n(), ci.p());
    let (_, _, d_min) = ci.distance_formula();
    let headline = (d_min - 1) / (2 * p * (n - p));
    let loose_x = (binomial(n, p) - 1) / (1 + p * (n - p));
    let loose_z = ((1usize << (n - p - 1)) - 1) / (1 + (p + 1) * (n - p));
    Ok(headline.min(loose_x).min(loose_z))
}
