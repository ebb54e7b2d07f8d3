//! Line-oriented text formats.
//!
//! Sparse matrices: a `rows cols` header, then one line per row holding the
//! ascending 0-based column indices separated by spaces.
//!
//! Chains: one chain per line as comma-separated face literals. When reading,
//! a token `#i` stands for the `i`-th face of the relevant index (qubits for
//! p-chains, check rows for syndromes), and literals are reduced to their
//! canonical coset representative.

use std::fmt::Write as _;

use crate::csscode::CodeInstance;
use crate::cube::{Chain, Face};
use crate::decoder::{Correction, Syndrome};
use crate::error::{Error, Result};
use crate::f2la::SparseMatrix;
use crate::harness::{SoundnessReport, TrialReport, WorstCase};
use crate::quotient::QuotientComplex;

pub fn write_sparse(m: &SparseMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for row in m.row_lists() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_sparse(text: &str) -> Result<SparseMatrix> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `rows cols` header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad header {header:?}")))
        })
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!(
            "header {header:?} must be `rows cols`"
        )));
    };
    let mut out = Vec::with_capacity(rows);
    for (r, line) in lines.enumerate() {
        if r >= rows {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse(format!("more than {rows} rows")));
        }
        let idx: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad index {t:?} in row {r}")))
            })
            .collect::<Result<_>>()?;
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("row {r} is not strictly ascending")));
        }
        out.push(idx);
    }
    if out.len() != rows {
        return Err(Error::Parse(format!(
            "expected {rows} rows, found {}",
            out.len()
        )));
    }
    SparseMatrix::new(cols, out)
}

/// One chain per line.
pub fn write_chains(chains: &[Chain]) -> String {
    chains.iter().map(|c| c.to_literals() + "\n").collect()
}

/// Parses one line of comma-separated tokens into a `dim`-chain of canonical
/// faces. `index` resolves `#i` tokens.
pub fn parse_chain_line(
    qc: &QuotientComplex,
    dim: usize,
    index: &[Face],
    line: &str,
) -> Result<Chain> {
    let mut faces = Vec::new();
    for tok in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let face = if let Some(i) = tok.strip_prefix('#') {
            let i: usize = i
                .parse()
                .map_err(|_| Error::Parse(format!("bad index token {tok:?}")))?;
            *index
                .get(i)
                .ok_or_else(|| Error::Parse(format!("index {i} out of range 0..{}", index.len())))?
        } else {
            let f: Face = tok.parse()?;
            qc.canonical_rep(&f)?
        };
        faces.push(face);
    }
    Chain::new(qc.n(), dim, faces)
}

/// Two lines: the X syndrome, then the Z syndrome.
pub fn write_syndrome(s: &Syndrome) -> String {
    format!("{}\n{}\n", s.sigma_x.to_literals(), s.sigma_z.to_literals())
}

/// Missing lines are read as empty chains.
pub fn parse_syndrome(ci: &CodeInstance, text: &str) -> Result<Syndrome> {
    let mut lines = text.lines();
    let (lx, lz) = (lines.next().unwrap_or(""), lines.next().unwrap_or(""));
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::Parse("a syndrome file has at most two lines".into()));
    }
    Ok(Syndrome {
        sigma_x: parse_chain_line(ci.qc(), ci.p() - 1, ci.x_check_faces(), lx)?,
        sigma_z: parse_chain_line(ci.qc(), ci.p() + 1, ci.z_check_faces(), lz)?,
    })
}

fn index_line(ci: &CodeInstance, c: &Chain) -> Result<String> {
    let idx = ci.indices_of(c)?;
    Ok(idx
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" "))
}

/// Four lines: X literals, Z literals, X qubit indices, Z qubit indices.
pub fn write_correction(ci: &CodeInstance, c: &Correction) -> Result<String> {
    Ok(format!(
        "{}\n{}\n{}\n{}\n",
        c.e_x.to_literals(),
        c.e_z.to_literals(),
        index_line(ci, &c.e_x)?,
        index_line(ci, &c.e_z)?
    ))
}

/// Reads the first two lines of a correction (or error) file.
pub fn parse_correction(ci: &CodeInstance, text: &str) -> Result<Correction> {
    let mut lines = text.lines();
    let (lx, lz) = (lines.next().unwrap_or(""), lines.next().unwrap_or(""));
    Ok(Correction {
        e_x: parse_chain_line(ci.qc(), ci.p(), ci.qubits(), lx)?,
        e_z: parse_chain_line(ci.qc(), ci.p(), ci.qubits(), lz)?,
    })
}

/// `index literal` per qubit.
pub fn qubit_map(ci: &CodeInstance) -> String {
    let mut s = String::new();
    for (i, f) in ci.qubits().iter().enumerate() {
        let _ = writeln!(s, "{i} {f}");
    }
    s
}

pub const TRIAL_CSV_HEADER: &str = "instance,n,k,p,num_qubits,weight,trials,successes,failures,logical_x_failures,logical_z_failures,invalid_syndromes,seed";

/// `trial_reports.csv`; wall time is left out so files are reproducible.
pub fn trial_csv(reports: &[TrialReport]) -> String {
    let mut s = String::from(TRIAL_CSV_HEADER);
    s.push('\n');
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.n,
            r.k,
            r.p,
            r.num_qubits,
            r.weight,
            r.trials,
            r.successes,
            r.failures,
            r.logical_x_failures,
            r.logical_z_failures,
            r.invalid_syndromes,
            r.seed
        );
    }
    s
}

pub const SOUNDNESS_CSV_HEADER: &str = "instance,side,mode,scanned,dropped,coset_syndrome,coset_weight,coset_ratio,coset_witness,code_syndrome,code_distance,code_ratio,code_witness";

fn worst_fields(w: &WorstCase) -> String {
    let witness: Vec<String> = w.witness.iter().map(usize::to_string).collect();
    match w.ratio {
        Some((a, b)) => format!("{a},{b},{:.6},{}", a as f64 / b as f64, witness.join(" ")),
        None => ",,,".to_string(),
    }
}

/// `soundness.csv`. Each worst case is reported as syndrome weight, error
/// weight, their ratio and a witness given as space-separated qubit indices.
/// The `coset_*` columns weigh errors modulo stabilizers, the `code_*` columns
/// by distance to the undetectable errors.
pub fn soundness_csv(reports: &[SoundnessReport]) -> String {
    let mut s = String::from(SOUNDNESS_CSV_HEADER);
    s.push('\n');
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.instance,
            r.side,
            if r.exhaustive {
                "exhaustive"
            } else {
                "sampled"
            },
            r.scanned,
            r.dropped,
            worst_fields(&r.coset),
            worst_fields(&r.code)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_round_trip() {
        let ci = CodeInstance::repetition(5, 2).unwrap();
        for m in [ci.hx(), ci.hz()] {
            let text = write_sparse(m);
            assert_eq!(&parse_sparse(&text).unwrap(), m);
        }
        assert_eq!(
            write_sparse(&SparseMatrix::new(3, vec![vec![0, 2], vec![]]).unwrap()),
            "2 3\n0 2\n\n"
        );
        assert!(parse_sparse("2 3\n2 0\n\n").is_err());
        assert!(parse_sparse("1 3\n5\n").is_err());
    }

    #[test]
    fn syndrome_tokens() {
        let ci = CodeInstance::repetition(4, 1).unwrap();
        let s = parse_syndrome(&ci, "").unwrap();
        assert!(s.is_trivial());
        let a = parse_syndrome(&ci, "#0,#3\n").unwrap();
        let lits = write_syndrome(&a);
        assert_eq!(parse_syndrome(&ci, &lits).unwrap(), a);
        // Non-canonical literals are reduced: 1111 ~ 0000 under the repetition code.
        let b = parse_syndrome(&ci, "1111\n").unwrap();
        assert_eq!(b.sigma_x.to_literals(), "0000");
        assert!(parse_syndrome(&ci, "#99\n").is_err());
        assert!(parse_syndrome(&ci, "0*00\n").is_err());
    }

    #[test]
    fn correction_lines() {
        let ci = CodeInstance::repetition(4, 1).unwrap();
        let c = Correction {
            e_x: ci.chain_from_indices(&[2, 5]).unwrap(),
            e_z: Chain::empty(4, 1),
        };
        let text = write_correction(&ci, &c).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], "2 5");
        assert_eq!(lines[3], "");
        assert_eq!(parse_correction(&ci, &text).unwrap(), c);
    }

    #[test]
    fn qubit_map_lines() {
        let ci = CodeInstance::repetition(3, 1).unwrap();
        let map = qubit_map(&ci);
        assert_eq!(map.lines().count(), 6);
        assert!(map.starts_with("0 "));
    }
}
