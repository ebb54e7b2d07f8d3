//! Oracles and experiments.
//!
//! Randomness: trial `i` of a run with seed `s` draws from a ChaCha8 generator
//! seeded with [`trial_seed`]`(s, i)`, which is the `(i+1)`-th output of a
//! SplitMix64 stream started at `s`. Results therefore depend only on
//! `(instance, seed, index)` and not on how work is spread over threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::csscode::CodeInstance;
use crate::cube::{boundary, coboundary, Chain};
use crate::decoder::{self, Correction, Syndrome, Verdict};
use crate::error::{Error, Result};
use crate::f2la::{BitVector, RowSpace};
use crate::filler::{self, Rational};
use crate::quotient::{binomial, QuotientComplex};

/// Maximum number of candidate chains the distance ladder may scan.
pub const LADDER_GUARD: u128 = 100_000_000;

/// Maximum number of errors enumerated by [`run_exhaustive`] per side.
pub const EXHAUSTIVE_TRIAL_GUARD: usize = 10_000_000;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output `index + 1` of the stream seeded with `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, index))
}

/// Short, comma-free label: `rep8-p2` or `g111100+001111-p1`.
pub fn instance_label(ci: &CodeInstance) -> String {
    if ci.code().is_repetition() {
        format!("rep{}-p{}", ci.n(), ci.p())
    } else {
        let gens: Vec<String> = ci
            .code()
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        format!("g{}-p{}", gens.join("+"), ci.p())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Z,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Z => "Z",
        })
    }
}

/// Per-qubit columns of the parity checks seen by one error type, the
/// stabilizers of that type and the logicals detecting it.
struct SideData<'a> {
    n_qubits: usize,
    checks: usize,
    columns: Vec<Vec<usize>>,
    stabilizers: &'a RowSpace,
}

impl<'a> SideData<'a> {
    fn new(ci: &'a CodeInstance, side: Side) -> Self {
        let (h, stabilizers) = match side {
            Side::X => (ci.hx(), ci.x_stabilizers()),
            Side::Z => (ci.hz(), ci.z_stabilizers()),
        };
        SideData {
            n_qubits: ci.num_qubits(),
            checks: h.rows(),
            columns: h.transpose().row_lists().to_vec(),
            stabilizers,
        }
    }

    fn syndrome_column(&self, q: usize) -> BitVector {
        BitVector::from_indices(self.checks, self.columns[q].iter().copied())
    }
}

/// Calls `leaf` on every `w`-subset of `0..n` in lexicographic order together
/// with the running XOR of the corresponding columns. Stops when `leaf`
/// returns true.
fn search_subsets(
    n: usize,
    w: usize,
    columns: &[BitVector],
    start_key: BitVector,
    mut leaf: impl FnMut(&[usize], &BitVector) -> bool,
) -> bool {
    fn rec(
        n: usize,
        start: usize,
        left: usize,
        columns: &[BitVector],
        chosen: &mut Vec<usize>,
        key: &mut BitVector,
        leaf: &mut dyn FnMut(&[usize], &BitVector) -> bool,
    ) -> bool {
        if left == 0 {
            return leaf(chosen, key);
        }
        for q in start..=n - left {
            key.xor_assign(&columns[q]);
            chosen.push(q);
            let hit = rec(n, q + 1, left - 1, columns, chosen, key, leaf);
            chosen.pop();
            key.xor_assign(&columns[q]);
            if hit {
                return true;
            }
        }
        false
    }
    if w > n {
        return false;
    }
    let mut key = start_key;
    rec(
        n,
        0,
        w,
        columns,
        &mut Vec::with_capacity(w),
        &mut key,
        &mut leaf,
    )
}

fn ladder_candidates(n: usize, cap: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for w in 1..=cap.min(n) {
        c = c * (n - w + 1) as u128 / w as u128;
        total = total.saturating_add(c);
    }
    total
}

fn ladder_side(ci: &CodeInstance, side: Side, cap: usize) -> Option<usize> {
    let data = SideData::new(ci, side);
    let columns: Vec<BitVector> = (0..data.n_qubits)
        .map(|q| data.syndrome_column(q))
        .collect();
    (1..=cap.min(data.n_qubits)).find(|&w| {
        search_subsets(
            data.n_qubits,
            w,
            &columns,
            BitVector::zeros(data.checks),
            |chosen, syn| {
                syn.is_zero()
                    && !data.stabilizers.contains(&BitVector::from_indices(
                        data.n_qubits,
                        chosen.iter().copied(),
                    ))
            },
        )
    })
}

/// Least weights `w <= cap` of a nontrivial X-logical and Z-logical, found by
/// scanning every chain of weight `1..=cap`.
pub fn distance_ladder(ci: &CodeInstance, cap: usize) -> Result<(Option<usize>, Option<usize>)> {
    let candidates = ladder_candidates(ci.num_qubits(), cap);
    if candidates > LADDER_GUARD {
        return Err(Error::TooLarge(format!(
            "{candidates} candidates up to weight {cap} on {} qubits",
            ci.num_qubits()
        )));
    }
    Ok((ladder_side(ci, Side::X, cap), ladder_side(ci, Side::Z, cap)))
}

/// Worst ratio `‖syndrome‖ / weight` and a minimum-weight error attaining it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorstCase {
    /// `(‖syndrome‖, weight)`.
    pub ratio: Option<(usize, usize)>,
    /// Qubit indices of the error.
    pub witness: Vec<usize>,
}

impl WorstCase {
    pub fn value(&self) -> Option<Rational> {
        self.ratio.map(|(s, e)| Rational::new(s as i128, e as i128))
    }

    fn offer(&mut self, syndrome: usize, witness: Vec<usize>) {
        let cand = (syndrome, witness.len());
        if self.ratio.map_or(true, |r| better(cand, r)) {
            self.ratio = Some(cand);
            self.witness = witness;
        }
    }
}

/// Two notions of the weight of an error `E` with nonzero syndrome are
/// tracked: `‖[E]‖`, the least weight in `E + span(stabilizers)`, and the
/// distance from `E` to the classical code `ker H` (all undetectable errors,
/// logicals included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub instance: String,
    pub side: Side,
    pub exhaustive: bool,
    /// Errors (exhaustive) or nonzero-syndrome samples (sampled) examined.
    pub scanned: u64,
    /// Samples whose coset weight could not be settled within the ladder cap.
    pub dropped: u64,
    /// Worst `‖syndrome‖ / ‖[E]‖`.
    pub coset: WorstCase,
    /// Worst `‖syndrome‖ / dist(E, ker H)`.
    pub code: WorstCase,
}

impl SoundnessReport {
    pub fn worst_ratio(&self) -> Option<Rational> {
        self.coset.value()
    }

    pub fn worst_code_ratio(&self) -> Option<Rational> {
        self.code.value()
    }
}

/// Key columns for coset identification: the syndrome of each qubit and its
/// pairing with the logicals of the opposite type. Two errors lie in the same
/// stabilizer coset exactly when both parts of their keys agree, and differ by
/// an undetectable error exactly when the syndromes agree.
fn coset_columns(ci: &CodeInstance, side: Side) -> Result<(Vec<BitVector>, Vec<BitVector>)> {
    let data = SideData::new(ci, side);
    let basis = ci.logical_basis()?;
    let detectors = match side {
        Side::X => basis.z_logicals,
        Side::Z => basis.x_logicals,
    };
    let mut pair = vec![BitVector::zeros(detectors.len()); data.n_qubits];
    for (j, l) in detectors.iter().enumerate() {
        for q in ci.indices_of(l)? {
            pair[q].flip(j);
        }
    }
    let syn = (0..data.n_qubits)
        .map(|q| data.syndrome_column(q))
        .collect();
    Ok((syn, pair))
}

fn better(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

fn mask_support(n: usize, m: u64) -> Vec<usize> {
    (0..n).filter(|q| m >> q & 1 == 1).collect()
}

/// Minimum of `(weight, mask)` per key; ties resolve to the smaller mask.
fn keep_min<K: std::hash::Hash + Eq>(map: &mut HashMap<K, (u32, u64)>, key: K, w: u32, mask: u64) {
    map.entry(key)
        .and_modify(|e| {
            if (w, mask) < *e {
                *e = (w, mask);
            }
        })
        .or_insert((w, mask));
}

/// Worst entry over sorted keys, so ties resolve deterministically.
fn worst_of<K: Ord>(n: usize, entries: Vec<(K, usize, (u32, u64))>) -> WorstCase {
    let mut entries = entries;
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut worst = WorstCase::default();
    for (_, syn_weight, (_, m)) in entries {
        worst.offer(syn_weight, mask_support(n, m));
    }
    worst
}

/// Exhaustive scan over all `2^N` errors of one type. Requires `2^N <= budget`.
pub fn soundness_exhaustive(ci: &CodeInstance, side: Side, budget: u64) -> Result<SoundnessReport> {
    let n = ci.num_qubits();
    if n >= 40 || (1u64 << n) > budget {
        return Err(Error::TooLarge(format!(
            "2^{n} errors exceed the budget {budget}"
        )));
    }
    let (syn_cols, pair_cols) = coset_columns(ci, side)?;
    let mut best: HashMap<(BitVector, BitVector), (u32, u64)> = HashMap::new();
    let mut syn = BitVector::zeros(syn_cols[0].width());
    let mut pair = BitVector::zeros(pair_cols[0].width());
    let mut mask = 0u64;
    for i in 1u64..1 << n {
        let q = i.trailing_zeros() as usize;
        mask ^= 1 << q;
        syn.xor_assign(&syn_cols[q]);
        pair.xor_assign(&pair_cols[q]);
        if !syn.is_zero() {
            keep_min(
                &mut best,
                (syn.clone(), pair.clone()),
                mask.count_ones(),
                mask,
            );
        }
    }
    let mut by_syndrome: HashMap<BitVector, (u32, u64)> = HashMap::new();
    for ((s, _), &(w, m)) in &best {
        keep_min(&mut by_syndrome, s.clone(), w, m);
    }
    let coset = worst_of(
        n,
        best.into_iter()
            .map(|(k, v)| {
                let s = k.0.weight();
                (k, s, v)
            })
            .collect(),
    );
    let code = worst_of(
        n,
        by_syndrome
            .into_iter()
            .map(|(k, v)| {
                let s = k.weight();
                (k, s, v)
            })
            .collect(),
    );
    Ok(SoundnessReport {
        instance: instance_label(ci),
        side,
        exhaustive: true,
        scanned: (1u64 << n) - 1,
        dropped: 0,
        coset,
        code,
    })
}

/// Least-weight error `E'` with `key(E') = key(E)` below `|E|`, found by a
/// weight ladder; `|E|` itself when the ladder is exhausted. `None` when
/// `|E|` exceeds the cap and nothing lighter was found.
fn ladder_min(
    n: usize,
    cap: usize,
    cols: &[BitVector],
    key: &BitVector,
    support: &[usize],
) -> Option<Vec<usize>> {
    for w in 1..support.len().min(cap + 1) {
        let mut found = None;
        search_subsets(n, w, cols, key.clone(), |chosen, k| {
            if k.is_zero() {
                found = Some(chosen.to_vec());
            }
            found.is_some()
        });
        if found.is_some() {
            return found;
        }
    }
    (support.len() <= cap).then(|| support.to_vec())
}

fn key_of(cols: &[BitVector], support: &[usize]) -> BitVector {
    let mut key = BitVector::zeros(cols[0].width());
    for &q in support {
        key.xor_assign(&cols[q]);
    }
    key
}

/// Random errors with nonzero syndrome, weighed by bounded weight ladders.
/// The ladder cap is the largest `c` with `sum_{w<=c} C(N,w) <= budget`;
/// error weights are drawn uniformly from `1..=c+1`. A sample whose coset
/// weight cannot be settled within the cap is dropped and counted.
pub fn soundness_sampled(
    ci: &CodeInstance,
    side: Side,
    samples: u64,
    budget: u64,
    seed: u64,
) -> Result<SoundnessReport> {
    let n = ci.num_qubits();
    let mut cap = 0;
    while cap < n && ladder_candidates(n, cap + 1) <= budget as u128 {
        cap += 1;
    }
    if cap == 0 {
        return Err(Error::TooLarge(format!(
            "budget {budget} below {n} single-qubit candidates"
        )));
    }
    let (syn_cols, pair_cols) = coset_columns(ci, side)?;
    let key_cols: Vec<BitVector> = syn_cols
        .iter()
        .zip(&pair_cols)
        .map(|(s, p)| concat(s, p))
        .collect();

    let outcomes: Vec<Option<SampleOutcome>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let w = rng.gen_range(1..=(cap + 1).min(n));
            let mut support = sample(&mut rng, n, w).into_vec();
            support.sort_unstable();
            let syn = key_of(&syn_cols, &support);
            if syn.is_zero() {
                return None;
            }
            let coset = ladder_min(n, cap, &key_cols, &key_of(&key_cols, &support), &support);
            Some(match coset {
                None => SampleOutcome::Dropped,
                Some(c) => {
                    let code = ladder_min(n, cap, &syn_cols, &syn, &c)
                        .expect("coset witness is within the cap");
                    SampleOutcome::Settled(syn.weight(), c, code)
                }
            })
        })
        .collect();

    let mut report = SoundnessReport {
        instance: instance_label(ci),
        side,
        exhaustive: false,
        scanned: 0,
        dropped: 0,
        coset: WorstCase::default(),
        code: WorstCase::default(),
    };
    for o in outcomes.into_iter().flatten() {
        report.scanned += 1;
        match o {
            SampleOutcome::Dropped => report.dropped += 1,
            SampleOutcome::Settled(s, coset, code) => {
                report.coset.offer(s, coset);
                report.code.offer(s, code);
            }
        }
    }
    Ok(report)
}

enum SampleOutcome {
    Settled(usize, Vec<usize>, Vec<usize>),
    Dropped,
}

fn concat(a: &BitVector, b: &BitVector) -> BitVector {
    let mut v = BitVector::zeros(a.width() + b.width());
    for i in a.support() {
        v.set(i, true);
    }
    for i in b.support() {
        v.set(a.width() + i, true);
    }
    v
}

/// Exhaustive when `2^N <= budget`, otherwise 1000 samples with seed 0.
pub fn soundness_scan(ci: &CodeInstance, side: Side, budget: u64) -> Result<SoundnessReport> {
    let n = ci.num_qubits();
    if n < 40 && (1u64 << n) <= budget {
        soundness_exhaustive(ci, side, budget)
    } else {
        soundness_sampled(ci, side, 1000, budget, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialReport {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub num_qubits: usize,
    pub weight: usize,
    pub trials: u64,
    pub successes: u64,
    /// Trials with a logical error on at least one side.
    pub failures: u64,
    pub logical_x_failures: u64,
    pub logical_z_failures: u64,
    pub invalid_syndromes: u64,
    pub wall_time: Duration,
    pub seed: u64,
}

#[derive(Clone, Copy)]
enum Outcome {
    Done(Verdict),
    Invalid,
}

fn run_one(ci: &CodeInstance, error: &Correction) -> Result<Outcome> {
    let s = Syndrome::of(ci, error)?;
    match decoder::decode(ci, &s) {
        Ok(c) => Ok(Outcome::Done(decoder::verify(ci, error, &c)?)),
        Err(Error::InvalidSyndrome(_)) => Ok(Outcome::Invalid),
        Err(e) => Err(e),
    }
}

fn tally(
    ci: &CodeInstance,
    weight: usize,
    seed: u64,
    outcomes: &[Outcome],
    start: Instant,
) -> TrialReport {
    let mut r = TrialReport {
        instance: instance_label(ci),
        n: ci.n(),
        k: ci.qc().k(),
        p: ci.p(),
        num_qubits: ci.num_qubits(),
        weight,
        trials: outcomes.len() as u64,
        successes: 0,
        failures: 0,
        logical_x_failures: 0,
        logical_z_failures: 0,
        invalid_syndromes: 0,
        wall_time: Duration::ZERO,
        seed,
    };
    for o in outcomes {
        match o {
            Outcome::Invalid => r.invalid_syndromes += 1,
            Outcome::Done(v) => {
                r.logical_x_failures += v.logical_x_failure as u64;
                r.logical_z_failures += v.logical_z_failure as u64;
                if v.success() {
                    r.successes += 1;
                } else {
                    r.failures += 1;
                }
            }
        }
    }
    r.wall_time = start.elapsed();
    r
}

fn random_chain(ci: &CodeInstance, rng: &mut ChaCha8Rng, weight: usize) -> Result<Chain> {
    let mut idx = sample(rng, ci.num_qubits(), weight).into_vec();
    idx.sort_unstable();
    ci.chain_from_indices(&idx)
}

/// Monte Carlo decoding with independent uniform X and Z errors of the given
/// weight. Uses the ambient rayon pool.
pub fn run_trials(ci: &CodeInstance, weight: usize, trials: u64, seed: u64) -> Result<TrialReport> {
    if weight > ci.num_qubits() {
        return Err(Error::InvalidParameters(format!(
            "weight {weight} exceeds {} qubits",
            ci.num_qubits()
        )));
    }
    let start = Instant::now();
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let error = Correction {
                e_x: random_chain(ci, &mut rng, weight)?,
                e_z: random_chain(ci, &mut rng, weight)?,
            };
            run_one(ci, &error)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tally(ci, weight, seed, &outcomes, start))
}

/// Every X error of the given weight, then every Z error of that weight.
pub fn run_exhaustive(ci: &CodeInstance, weight: usize) -> Result<TrialReport> {
    let n = ci.num_qubits();
    if weight > n {
        return Err(Error::InvalidParameters(format!(
            "weight {weight} exceeds {n} qubits"
        )));
    }
    if binomial(n, weight) > EXHAUSTIVE_TRIAL_GUARD {
        return Err(Error::TooLarge(format!("C({n},{weight}) errors per side")));
    }
    let mut supports = Vec::new();
    let dummy = vec![BitVector::zeros(0); n];
    search_subsets(n, weight, &dummy, BitVector::zeros(0), |chosen, _| {
        supports.push(chosen.to_vec());
        false
    });
    let start = Instant::now();
    let empty = Chain::empty(ci.n(), ci.p());
    let outcomes = [Side::X, Side::Z]
        .iter()
        .flat_map(|&side| supports.iter().map(move |s| (side, s)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(side, s)| {
            let c = ci.chain_from_indices(s)?;
            let error = match side {
                Side::X => Correction {
                    e_x: c,
                    e_z: empty.clone(),
                },
                Side::Z => Correction {
                    e_x: empty.clone(),
                    e_z: c,
                },
            };
            run_one(ci, &error)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tally(ci, weight, 0, &outcomes, start))
}

/// Realized ratios `‖output‖ / ‖input‖` of one filling routine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatioStats {
    pub count: u64,
    /// `(‖output‖, ‖input‖)` at the largest ratio.
    pub max: Option<(usize, usize)>,
    /// Exact ratio values and their multiplicities.
    pub histogram: BTreeMap<Rational, u64>,
    /// Samples above the asserted bound.
    pub violations: u64,
    /// Outputs whose (co)boundary differs from the input or that are not
    /// symmetric.
    pub mismatches: u64,
}

impl RatioStats {
    fn record(&mut self, out: usize, input: usize, bound: Option<Rational>, exact: bool) {
        let r = Rational::new(out as i128, input as i128);
        self.count += 1;
        *self.histogram.entry(r).or_default() += 1;
        if self.max.map_or(true, |(a, b)| out * b > a * input) {
            self.max = Some((out, input));
        }
        if bound.is_some_and(|b| r > b) {
            self.violations += 1;
        }
        if !exact {
            self.mismatches += 1;
        }
    }

    pub fn max_ratio(&self) -> Option<Rational> {
        self.max.map(|(a, b)| Rational::new(a as i128, b as i128))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsReport {
    pub instance: String,
    pub samples: u64,
    /// Asserted bounds: `(n-p)/2` and `p+1` on the repetition quotient, the
    /// recursive envelopes for `k = 2`, none otherwise.
    pub fill_bound: Option<Rational>,
    pub cofill_bound: Option<Rational>,
    pub fill: RatioStats,
    pub cofill: RatioStats,
}

fn bounds(ci: &CodeInstance) -> Result<(Option<Rational>, Option<Rational>)> {
    let (n, p) = (ci.n(), ci.p());
    match ci.qc().k() {
        1 if ci.code().is_repetition() => {
            let b = filler::BoundConstants::new(n, p);
            Ok((Some(b.loose_fill), Some(b.loose_cofill)))
        }
        1 => Ok((None, None)),
        2 => Ok((Some(filler::c2_fill(n, p)), Some(filler::c2_cofill(n, p)))),
        k => Err(Error::Unsupported(format!(
            "constant measurement for k = {k}"
        ))),
    }
}

fn fill_sample(qc: &QuotientComplex, sigma: &Chain) -> Result<(usize, bool)> {
    let z = qc.lift(sigma)?;
    let f = if qc.k() == 2 {
        filler::gen_fill_k2(qc, &z)?
    } else {
        filler::symmetric_fill(qc.code(), qc.p(), &z)?
    };
    let exact = boundary(&f)? == z && qc.is_symmetric(&f);
    Ok((qc.project(&f).weight(), exact))
}

fn cofill_sample(qc: &QuotientComplex, sigma: &Chain) -> Result<(usize, bool)> {
    let z = qc.lift(sigma)?;
    let f = if qc.k() == 2 {
        filler::gen_cofill_k2(qc, &z)?
    } else {
        filler::symmetric_cofill(qc.code(), qc.p(), &z)?
    };
    let exact = coboundary(&f)? == z && qc.is_symmetric(&f);
    Ok((qc.project(&f).weight(), exact))
}

/// Fills random boundaries `∂E` and cofills random coboundaries `δE` for
/// uniformly random p-chains `E` of weight `1..=min(N, 3n)`. Empty inputs are
/// skipped and not counted.
pub fn measure_constants(ci: &CodeInstance, samples: u64, seed: u64) -> Result<ConstantsReport> {
    let (fill_bound, cofill_bound) = bounds(ci)?;
    let qc = ci.qc();
    let max_w = ci.num_qubits().min(3 * ci.n());
    let rows = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let w = rng.gen_range(1..=max_w);
            let e = random_chain(ci, &mut rng, w)?;
            let sx = qc.q_boundary(&e)?;
            let sz = qc.q_coboundary(&e)?;
            let fx = if sx.is_empty() {
                None
            } else {
                Some((fill_sample(qc, &sx)?, sx.weight()))
            };
            let fz = if sz.is_empty() {
                None
            } else {
                Some((cofill_sample(qc, &sz)?, sz.weight()))
            };
            Ok((fx, fz))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ConstantsReport {
        instance: instance_label(ci),
        samples,
        fill_bound,
        cofill_bound,
        fill: RatioStats::default(),
        cofill: RatioStats::default(),
    };
    for (fx, fz) in rows {
        if let Some(((out, exact), input)) = fx {
            report.fill.record(out, input, fill_bound, exact);
        }
        if let Some(((out, exact), input)) = fz {
            report.cofill.record(out, input, cofill_bound, exact);
        }
    }
    Ok(report)
}
