//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every criterion is evaluated
//! and reported even when an earlier one fails. Exits nonzero on any FAIL.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use hemicube_core::csscode::{cocycle_s, logical_cycle_np, logical_cycle_np_recursive};
use hemicube_core::decoder::{self, guaranteed_radius};
use hemicube_core::filler::Rational;
use hemicube_core::harness::{self, Side};
use hemicube_core::{ClassicalCode, CodeInstance, Correction, Syndrome};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rep(n: usize, p: usize) -> Result<CodeInstance, String> {
    CodeInstance::repetition(n, p).map_err(|e| format!("rep({n},{p}): {e}"))
}

fn code(gens: &[&str], p: usize) -> Result<CodeInstance, String> {
    let c = ClassicalCode::from_generator_strings(gens).map_err(|e| e.to_string())?;
    CodeInstance::new(c, p).map_err(|e| format!("{gens:?} p={p}: {e}"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dimension_rep() -> Outcome {
    let mut checked = 0;
    for n in 3..=8 {
        for p in 1..=n - 2 {
            let k = rep(n, p)?.dimension();
            if k != 1 {
                return Err(format!("rep({n},{p}) has k_Q = {k}"));
            }
            checked += 1;
        }
    }
    Ok(format!("k_Q = 1 on all {checked} instances"))
}

fn dimension_general() -> Outcome {
    let cases: [(&[&str], usize); 5] = [
        (&["111100", "001111"], 1),
        (&["111100", "001111"], 2),
        (&["1111000", "0001111"], 1),
        (&["1111000", "0001111"], 2),
        (&["0001111", "0110011", "1010101"], 2),
    ];
    let mut parts = Vec::new();
    for (gens, p) in cases {
        let ci = code(gens, p)?;
        let k = gens.len();
        let want = binomial(p + k - 1, p);
        let got = ci.dimension();
        if got != want {
            return Err(format!("{gens:?} p={p}: k_Q = {got}, expected {want}"));
        }
        parts.push(format!(
            "[{},{},{}] p={p}: {got}",
            ci.n(),
            k,
            ci.code().min_distance()
        ));
    }
    Ok(parts.join("; "))
}

fn distance() -> Outcome {
    let mut parts = Vec::new();
    for (n, p) in [(3, 1), (4, 1), (4, 2), (5, 1)] {
        let ci = rep(n, p)?;
        let (dx, dz, d) = ci.distance_formula();
        let (fx, fz) = harness::distance_ladder(&ci, d).map_err(|e| e.to_string())?;
        // Within the cap each side must match the formula; beyond it nothing
        // may be found.
        let side_ok = |found: Option<usize>, formula: usize| match found {
            Some(w) => w == formula,
            None => formula > d,
        };
        let found_min = fx.into_iter().chain(fz).min();
        if !side_ok(fx, dx) || !side_ok(fz, dz) || found_min != Some(d) {
            return Err(format!(
                "rep({n},{p}): ladder found ({fx:?}, {fz:?}), formula ({dx}, {dz}, {d})"
            ));
        }
        parts.push(format!("rep({n},{p}) d={d}"));
    }
    let ci = code(&["111100", "001111"], 1)?;
    let (dx, _, _) = ci.distance_formula();
    let (fx, fz) = harness::distance_ladder(&ci, 4).map_err(|e| e.to_string())?;
    if fx.is_some_and(|w| w < dx) || fz.is_some_and(|w| w < dx) {
        return Err(format!("[6,2,4] p=1: logical below {dx}: ({fx:?}, {fz:?})"));
    }
    parts.push(format!(
        "[6,2,4] p=1 none below {dx} (found x={fx:?} z={fz:?})"
    ));
    Ok(parts.join("; "))
}

fn explicit_logicals() -> Outcome {
    let mut checked = 0;
    for n in 3..=8 {
        for p in 1..=n - 2 {
            let ci = rep(n, p)?;
            let qc = ci.qc();
            let e = |e: hemicube_core::Error| e.to_string();
            let x = logical_cycle_np(n, p).map_err(e)?;
            let z = cocycle_s(n, p).map_err(e)?;
            let problems = [
                (x.weight() != binomial(n, p), "cycle weight"),
                (!qc.q_boundary(&x).map_err(e)?.is_empty(), "cycle boundary"),
                (ci.is_stabilizer_x(&x).map_err(e)?, "cycle is a stabilizer"),
                (z.weight() != 1 << (n - p - 1), "cocycle weight"),
                (
                    !qc.q_coboundary(&z).map_err(e)?.is_empty(),
                    "cocycle coboundary",
                ),
                (
                    ci.is_stabilizer_z(&z).map_err(e)?,
                    "cocycle is a stabilizer",
                ),
                (x.intersection_size(&z) % 2 == 0, "even intersection"),
            ];
            if let Some((_, what)) = problems.iter().find(|(bad, _)| *bad) {
                return Err(format!("rep({n},{p}): {what}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} instances, n <= 8"))
}

fn filling_bounds() -> Outcome {
    const SAMPLES: u64 = 25_000;
    let mut worst_fill = Rational::from_integer(0);
    let mut worst_cofill = Rational::from_integer(0);
    let mut instances = 0;
    for n in 3..=7 {
        for p in 1..=n - 2 {
            let ci = rep(n, p)?;
            let r = harness::measure_constants(&ci, SAMPLES, 0xC0FFEE + instances)
                .map_err(|e| e.to_string())?;
            for (name, s) in [("fill", &r.fill), ("cofill", &r.cofill)] {
                if s.count < 10_000 {
                    return Err(format!(
                        "rep({n},{p}) {name}: only {} nonempty samples",
                        s.count
                    ));
                }
                if s.violations > 0 || s.mismatches > 0 {
                    return Err(format!(
                        "rep({n},{p}) {name}: {} bound violations, {} mismatches, max {:?}",
                        s.violations,
                        s.mismatches,
                        s.max_ratio()
                    ));
                }
            }
            let rel =
                |s: &harness::RatioStats, b: Option<Rational>| s.max_ratio().unwrap() / b.unwrap();
            worst_fill = worst_fill.max(rel(&r.fill, r.fill_bound));
            worst_cofill = worst_cofill.max(rel(&r.cofill, r.cofill_bound));
            instances += 1;
        }
    }
    Ok(format!(
        "{instances} instances x {SAMPLES} samples, zero violations; max ratio/bound fill {worst_fill}, cofill {worst_cofill}"
    ))
}

fn soundness() -> Outcome {
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for (n, p) in [(3, 1), (4, 1), (4, 2), (5, 3)] {
        let ci = rep(n, p)?;
        assert!(ci.num_qubits() <= 20);
        for (side, bound) in [
            (Side::X, Rational::new(2, (n - p) as i128)),
            (Side::Z, Rational::new(1, (p + 1) as i128)),
        ] {
            let r = harness::soundness_exhaustive(&ci, side, 1 << 20).map_err(|e| e.to_string())?;
            let coset = r.worst_ratio().ok_or("no error with nonzero syndrome")?;
            let code = r
                .worst_code_ratio()
                .ok_or("no error with nonzero syndrome")?;
            let line = format!("rep({n},{p}) {side}: {coset} (to code {code}) vs {bound}");
            if coset < bound {
                failures.push(format!("{line}, witness {:?}", r.coset.witness));
            }
            parts.push(line);
        }
    }
    if failures.is_empty() {
        Ok(parts.join("; "))
    } else {
        Err(format!(
            "stabilizer-coset ratio below the bound: {}. All: {}",
            failures.join("; "),
            parts.join("; ")
        ))
    }
}

fn decoder_guarantee() -> Outcome {
    let ci = rep(8, 2)?;
    let radius = guaranteed_radius(&ci).map_err(|e| e.to_string())?;
    let r = harness::run_exhaustive(&ci, 1).map_err(|e| e.to_string())?;
    if radius != 1 || r.successes != r.trials || r.trials != 2 * 896 {
        return Err(format!(
            "radius {radius}, {}/{} succeeded",
            r.successes, r.trials
        ));
    }
    Ok(format!(
        "radius 1; {}/{} single-qubit X and Z errors corrected",
        r.successes, r.trials
    ))
}

/// Errors grown one random qubit at a time until each syndrome reaches the
/// target weight.
fn grown_error(ci: &CodeInstance, target: usize, rng: &mut ChaCha8Rng) -> Correction {
    let mut order: Vec<usize> = (0..ci.num_qubits()).collect();
    order.shuffle(rng);
    let grow = |syndrome: &dyn Fn(&hemicube_core::Chain) -> usize, order: &[usize]| {
        let mut picked = Vec::new();
        for &q in order {
            picked.push(q);
            let c = ci.chain_from_indices(&picked).unwrap();
            if syndrome(&c) >= target {
                return c;
            }
        }
        unreachable!("syndrome never reached {target}")
    };
    let e_x = grow(&|c| ci.syndrome_x(c).unwrap().weight(), &order);
    order.shuffle(rng);
    let e_z = grow(&|c| ci.syndrome_z(c).unwrap().weight(), &order);
    Correction { e_x, e_z }
}

fn decoder_scaling() -> Outcome {
    const ERRORS: usize = 8;
    const REPEATS: usize = 5;
    let ci = rep(12, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut points = Vec::new();
    for target in [8usize, 16, 32, 64] {
        let mut weight = 0usize;
        let mut total = Duration::ZERO;
        for _ in 0..ERRORS {
            let err = grown_error(&ci, target, &mut rng);
            let s = Syndrome::of(&ci, &err).map_err(|e| e.to_string())?;
            weight += s.sigma_x.weight() + s.sigma_z.weight();
            let mut best = Duration::MAX;
            for _ in 0..REPEATS {
                let t = Instant::now();
                let c = decoder::decode(&ci, &s).map_err(|e| e.to_string())?;
                best = best.min(t.elapsed());
                std::hint::black_box(c);
            }
            total += best;
        }
        points.push((
            weight as f64 / ERRORS as f64,
            total.as_secs_f64() / ERRORS as f64,
        ));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let table: Vec<String> = points
        .iter()
        .map(|(w, t)| format!("|s|={w:.0}: {:.3} ms", t * 1e3))
        .collect();
    let detail = format!("exponent {slope:.3} ({})", table.join(", "));
    if slope <= 1.3 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cross_construction() -> Outcome {
    let e = |e: hemicube_core::Error| e.to_string();
    let mut product = 0;
    for n in 3..=6 {
        for p in 1..=n - 2 {
            let ci = rep(n, p)?;
            if ci.product_cycle(&[p]).map_err(e)? != logical_cycle_np(n, p).map_err(e)? {
                return Err(format!("product cycle differs from {{{n} {p}}}"));
            }
            product += 1;
        }
    }
    let mut recursion = 0;
    for n in 3..=8 {
        for p in 1..=n - 2 {
            if logical_cycle_np_recursive(n, p).map_err(e)? != logical_cycle_np(n, p).map_err(e)? {
                return Err(format!(
                    "recursion differs from the direct rule at ({n},{p})"
                ));
            }
            recursion += 1;
        }
    }
    Ok(format!(
        "{product} product cycles, {recursion} recursive cycles agree"
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for (i, threads) in [1, 4, 2, 1].into_iter().enumerate() {
        let out = dir.path().join(format!("run{i}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_hemicube"))
            .args([
                "simulate", "--n", "6", "--p", "2", "--weight", "1,3,6", "--trials", "3000",
                "--seed", "42",
            ])
            .args(["--threads", &threads.to_string(), "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("simulate exited with {status}"));
        }
        outputs.push(fs::read(&out).map_err(|e| e.to_string())?);
    }
    if outputs.windows(2).all(|w| w[0] == w[1]) {
        Ok(format!(
            "{} runs, threads 1/4/2/1, {} identical bytes",
            outputs.len(),
            outputs[0].len()
        ))
    } else {
        Err("CSV output differs between runs".into())
    }
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        (
            "dimension of rep-code quotients",
            Duration::from_secs(60),
            dimension_rep,
        ),
        (
            "dimension of k >= 2 quotients",
            Duration::from_secs(120),
            dimension_general,
        ),
        ("distance ladder", Duration::from_secs(600), distance),
        (
            "explicit logical operators",
            Duration::from_secs(600),
            explicit_logicals,
        ),
        ("filling bounds", Duration::from_secs(600), filling_bounds),
        ("exhaustive soundness", Duration::from_secs(600), soundness),
        (
            "decoder guarantee rep(8,2)",
            Duration::from_secs(300),
            decoder_guarantee,
        ),
        (
            "decoder scaling rep(12,3)",
            Duration::from_secs(900),
            decoder_scaling,
        ),
        (
            "cross-construction consistency",
            Duration::from_secs(600),
            cross_construction,
        ),
        (
            "simulate determinism",
            Duration::from_secs(600),
            determinism,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > limit => Err(format!("{d}; took {elapsed:?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} [{:.2}s]",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {name}: {detail} [{:.2}s]",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("{} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
