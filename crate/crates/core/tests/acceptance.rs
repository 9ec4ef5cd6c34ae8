//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use gtcond::analysis::{
    check_matching_lemma, exhaustive_disjunct_pairs, find_disjunct_violation,
    find_disjunct_violation_exhaustive, lemma1_chain_check, lemma1_check, lemma3_bound,
    max_pairwise_intersection, verify_correcting, Hypergraph,
};
use gtcond::condense::{
    kautz_singleton_matrix, nu0, plan_extractor_style, PlannedScheme, SchemeParams,
};
use gtcond::decode::decode_with_params;
use gtcond::mixtures::check_list_bound_planned;
use gtcond::noise::corrupt_random;
use gtcond::rng::{derive_seed, rng_from, stream_rng};
use gtcond::sweep::{run_sweep, sweep_to_csv_string, GridPoint, MatrixSource, SweepConfig};
use gtcond::{encode, BitMatrix, Frac, NoiseBudget, SupportSet};

// Pinned constants.
const TABLE_SEED: u64 = 20_240_601;
const TRIAL_SEED: u64 = 7;
const PIPELINE_TRIALS: u64 = 1000;
const NOISELESS_TIME_LIMIT: Duration = Duration::from_secs(10);
const NOISY_MIN_PASS_RATE: f64 = 0.99;
const KS_TIME_LIMIT: Duration = Duration::from_secs(1);
const VERIFIER_TIME_LIMIT: Duration = Duration::from_secs(1);
const LIST_SAMPLES: u64 = 200;
const HYPERGRAPHS: u64 = 500;
const MAX_VERTICES: usize = 40;
const NU0_AT_ZERO: f64 = 0.236068;
const NU0_TOLERANCE: f64 = 1e-6;
const NU0_GRID: usize = 100;
const COUNTING_CLOSED_FORM: f64 = 40.0;
const COUNTING_TOLERANCE: f64 = 1e-9;
const CORPUS_CAP: u128 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn planned(p: Frac, nu: Frac) -> SchemeParams {
    plan_extractor_style(4, 256, p, nu).expect("planner instance is feasible")
}

struct PipelineStats {
    superset: u64,
    small: u64,
    both: u64,
}

fn run_pipeline(params: &SchemeParams, noisy: bool) -> PipelineStats {
    let scheme = PlannedScheme::realize(params.clone(), TABLE_SEED).expect("realize");
    let budget = NoiseBudget::new(params.fp_budget(), params.fn_budget());
    let mut stats = PipelineStats {
        superset: 0,
        small: 0,
        both: 0,
    };
    for trial in 0..PIPELINE_TRIALS {
        let mut rng = stream_rng(TRIAL_SEED, trial);
        let x =
            SupportSet::random(scheme.matrix.cols(), params.sparsity as usize, &mut rng).unwrap();
        let mut y = encode(&scheme.matrix, &x).unwrap();
        if noisy {
            y = corrupt_random(&y, budget, derive_seed(TRIAL_SEED ^ trial, 1)).output;
        }
        let r = decode_with_params(&scheme.matrix, &y, params).unwrap();
        let sup = x.is_subset_of(&r.support);
        let small = (r.support.weight() as u64) < params.list_cap();
        stats.superset += u64::from(sup);
        stats.small += u64::from(small);
        stats.both += u64::from(sup && small);
    }
    stats
}

fn criterion1() -> Outcome {
    let params = planned(Frac::new(0, 1), Frac::new(0, 1));
    let start = Instant::now();
    let s = run_pipeline(&params, false);
    let elapsed = start.elapsed();
    ensure(
        s.superset == PIPELINE_TRIALS,
        format!("superset in {}/{PIPELINE_TRIALS}", s.superset),
    )?;
    ensure(
        s.small == PIPELINE_TRIALS,
        format!("weight < K in {}/{PIPELINE_TRIALS}", s.small),
    )?;
    ensure(elapsed < NOISELESS_TIME_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!(
        "M={} K={}: superset {}/{} and weight<K {}/{} in {:.2?}",
        params.rows(),
        params.list_cap(),
        s.superset,
        PIPELINE_TRIALS,
        s.small,
        PIPELINE_TRIALS,
        elapsed
    ))
}

fn criterion2() -> Outcome {
    let params = planned(Frac::new(1, 8), Frac::new(1, 64));
    ensure(params.is_feasible(), "planned instance infeasible")?;
    let s = run_pipeline(&params, true);
    let rate = s.both as f64 / PIPELINE_TRIALS as f64;
    ensure(rate >= NOISY_MIN_PASS_RATE, format!("pass rate {rate}"))?;
    Ok(format!(
        "budgets ({}, {}) on M={}: no false negatives and weight<K in {}/{} (rate {:.3}, seed {})",
        params.fp_budget(),
        params.fn_budget(),
        params.rows(),
        s.both,
        PIPELINE_TRIALS,
        rate,
        TABLE_SEED
    ))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let a = kautz_singleton_matrix(5, 2).map_err(|e| e.to_string())?;
    ensure(a.rows() == 25 && a.cols() == 25, "KS(5,2) must be 25x25")?;
    let four = find_disjunct_violation_exhaustive(&a, 4);
    ensure(four.is_none(), format!("not 4-disjunct: {four:?}"))?;
    let inter = max_pairwise_intersection(&a);
    ensure(inter <= 1, format!("pairwise intersection {inter}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < KS_TIME_LIMIT, format!("took {elapsed:?}"))?;
    let five = find_disjunct_violation(&a, 5);
    ensure(five.is_some(), "unexpectedly 5-disjunct")?;
    Ok(format!(
        "4-disjunct over {} column/4-subset pairs, max intersection {inter}, not 5-disjunct, {:.2?}",
        exhaustive_disjunct_pairs(25, 4).unwrap(),
        elapsed
    ))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let one = NoiseBudget::new(1, 0);
    for n in 1..=8 {
        let id = BitMatrix::identity(n);
        let r =
            verify_correcting(&id, 1, NoiseBudget::NONE, NoiseBudget::NONE, CORPUS_CAP).unwrap();
        ensure(r.passed, format!("identity {n} failed noiseless"))?;
        let r = verify_correcting(&id, 1, one, one, CORPUS_CAP).unwrap();
        ensure(r.passed, format!("identity {n} failed (1,0)/(1,0)"))?;
    }
    let dup = BitMatrix::identity(4)
        .select_columns(&[0, 1, 2, 2, 3])
        .unwrap();
    let r = verify_correcting(&dup, 1, NoiseBudget::NONE, NoiseBudget::NONE, CORPUS_CAP).unwrap();
    ensure(!r.passed, "duplicated columns passed")?;
    let w = r.witness.ok_or("no witness")?;
    let elapsed = start.elapsed();
    ensure(elapsed < VERIFIER_TIME_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!(
        "identities n<=8 pass both settings; duplicates fail at y={} (union {:?}), {:.2?}",
        w.observation,
        w.union.indices(),
        elapsed
    ))
}

/// Small matrices for the cross-lemma checks.
fn corpus() -> Vec<(String, BitMatrix)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("identity{n}"), BitMatrix::identity(n)));
    }
    for (q, w) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        out.push((format!("ks{q}_{w}"), kautz_singleton_matrix(q, w).unwrap()));
    }
    out.push((
        "duplicated".into(),
        BitMatrix::identity(3)
            .select_columns(&[0, 1, 1, 2])
            .unwrap(),
    ));
    let mut rng = rng_from(99);
    for i in 0..40 {
        let m = rng.random_range(1..=5usize);
        let n = rng.random_range(1..=6usize);
        let rows: Vec<Vec<usize>> = (0..m)
            .map(|_| (0..n).filter(|_| rng.random_bool(0.5)).collect())
            .collect();
        out.push((format!("random{i}"), BitMatrix::new(m, n, rows).unwrap()));
    }
    out
}

fn criterion5() -> Outcome {
    let mut passing = 0;
    let mut violations = Vec::new();
    let mut chain_violations = 0;
    for (name, a) in corpus() {
        for d in 1..=2usize.min(a.cols()) {
            for e0 in 0..=2 {
                for e1 in 0..=2 {
                    for acc in 0..=3 {
                        let r = verify_correcting(
                            &a,
                            d,
                            NoiseBudget::new(e0, e1),
                            NoiseBudget::new(acc, 0),
                            CORPUS_CAP,
                        )
                        .map_err(|e| e.to_string())?;
                        if !r.passed {
                            continue;
                        }
                        passing += 1;
                        if !lemma1_chain_check(a.rows(), d, e0, e1, acc, 0)
                            .unwrap()
                            .satisfied
                        {
                            chain_violations += 1;
                        }
                        if !lemma1_check(a.rows(), d, e0, e1, acc, 0).unwrap().satisfied {
                            violations.push((name.clone(), a.rows(), d, e0, e1, acc));
                        }
                    }
                }
            }
        }
    }
    ensure(
        chain_violations == 0,
        format!("{chain_violations} violations of the integral chain form"),
    )?;
    let empty_chain = violations.iter().filter(|v| v.5 >= v.2).count();
    ensure(
        violations.is_empty(),
        format!(
            "rational inequality fails on {} of {passing} passing instances ({} with e'0+e'1 >= d, where the chain \
             argument is empty; first: {} m={} d={} e=({},{}) e'0={}); integral form holds on all {passing}",
            violations.len(),
            empty_chain,
            violations[0].0,
            violations[0].1,
            violations[0].2,
            violations[0].3,
            violations[0].4,
            violations[0].5,
        ),
    )?;
    Ok(format!("{passing} passing instances, 0 violations"))
}

fn criterion6() -> Outcome {
    let mut passing = 0;
    for (name, a) in corpus() {
        for d in 1..=2usize.min(a.cols()) {
            for acc in 0..=3 {
                let r = verify_correcting(
                    &a,
                    d,
                    NoiseBudget::NONE,
                    NoiseBudget::new(acc, 0),
                    CORPUS_CAP,
                )
                .map_err(|e| e.to_string())?;
                if !r.passed {
                    continue;
                }
                passing += 1;
                let b = lemma3_bound(a.cols() as u64, d as u64, acc as u64, 0).unwrap();
                ensure(
                    b.admits(a.rows()),
                    format!(
                        "{name}: rows {} < bound {} (d={d}, acc={acc})",
                        a.rows(),
                        b.exact
                    ),
                )?;
            }
        }
    }
    let closed = lemma3_bound(1024, 8, 8, 0).unwrap();
    ensure(
        (closed.closed_form - COUNTING_CLOSED_FORM).abs() < COUNTING_TOLERANCE,
        format!("closed form {}", closed.closed_form),
    )?;
    Ok(format!(
        "{passing} passing instances, 0 violations; closed form (1024,8,8,0) = {}, exact form {}",
        closed.closed_form, closed.exact
    ))
}

fn criterion7() -> Outcome {
    let params = planned(Frac::new(1, 8), Frac::new(1, 64));
    let scheme = PlannedScheme::realize(params, TABLE_SEED).unwrap();
    let r =
        check_list_bound_planned(&scheme, LIST_SAMPLES, TRIAL_SEED).map_err(|e| e.to_string())?;
    ensure(r.samples == LIST_SAMPLES, "sample count")?;
    ensure(r.violations == 0, format!("{} violations", r.violations))?;
    Ok(format!(
        "{} samples: {} checked, {} vacuous, max list {} < {}",
        r.samples, r.checked, r.vacuous, r.max_list, r.bound
    ))
}

fn criterion8() -> Outcome {
    let mut rng = rng_from(TRIAL_SEED);
    let mut violations = 0;
    let mut per_c = [0u64; 5];
    for i in 0..HYPERGRAPHS {
        let c = 2 + (i % 3) as usize;
        let v = rng.random_range(c..=MAX_VERTICES);
        let total = gtcond::combinatorics::binomial(v as u64, c as u64).unwrap() as usize;
        let density: f64 = rng.random();
        let edges = ((total as f64) * density * density) as usize;
        let h = Hypergraph::random_with_edges(v, c, edges, &mut rng).map_err(|e| e.to_string())?;
        if !check_matching_lemma(&h).satisfied {
            violations += 1;
        }
        per_c[c] += 1;
    }
    ensure(violations == 0, format!("{violations} violations"))?;
    Ok(format!(
        "{HYPERGRAPHS} hypergraphs (c=2: {}, c=3: {}, c=4: {}), 0 violations",
        per_c[2], per_c[3], per_c[4]
    ))
}

fn criterion9() -> Outcome {
    let at_zero: f64 = nu0(0.0).unwrap();
    ensure(
        (at_zero - NU0_AT_ZERO).abs() <= NU0_TOLERANCE,
        format!("nu0(0) = {at_zero}"),
    )?;
    let grid: Vec<f64> = (0..NU0_GRID)
        .map(|i| nu0(i as f64 / NU0_GRID as f64).unwrap())
        .collect();
    ensure(
        grid.windows(2).all(|w| w[1] < w[0]),
        "not strictly decreasing",
    )?;
    Ok(format!(
        "nu0(0) = {at_zero:.6}, strictly decreasing on {NU0_GRID} points"
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gtcond"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("{args:?} exited with {:?}", out.status.code()),
    )?;
    Ok(out.stdout)
}

fn criterion10() -> Outcome {
    let gen = [
        "gen", "--kind", "random", "--n-bits", "6", "--t-bits", "3", "--l-bits", "3", "--seed",
        "11",
    ];
    let g1 = run_cli(&gen)?;
    let g2 = run_cli(&gen)?;
    ensure(g1 == g2, "gen output differs between runs")?;
    let sweep = [
        "sweep",
        "--sparsity",
        "4",
        "--universe",
        "256",
        "--trials",
        "50",
        "--seed",
        "3",
        "--grid",
        "0:0,20:2",
        "--rate-grid",
        "1/8:1/64",
    ];
    let s1 = run_cli(&sweep)?;
    let s2 = run_cli(&sweep)?;
    ensure(s1 == s2, "sweep CSV differs between runs")?;

    let cfg = || SweepConfig {
        source: MatrixSource::Planned {
            params: planned(Frac::new(0, 1), Frac::new(0, 1)),
            table_seed: TABLE_SEED,
        },
        sparsity: 4,
        trials: 50,
        seed: 3,
        grid: vec![GridPoint::Budget(NoiseBudget::new(10, 1))],
    };
    let l1 = sweep_to_csv_string(&run_sweep(&cfg()).unwrap()).unwrap();
    let l2 = sweep_to_csv_string(&run_sweep(&cfg()).unwrap()).unwrap();
    ensure(l1 == l2, "library sweep differs")?;
    Ok(format!(
        "gen {} bytes and sweep {} bytes identical across runs",
        g1.len(),
        s1.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("noiseless decoding", criterion1),
        ("noisy one-sided guarantee", criterion2),
        ("Kautz-Singleton disjunctness", criterion3),
        ("correcting-matrix verifier", criterion4),
        ("noise/accuracy trade-off consistency", criterion5),
        ("counting lower bound", criterion6),
        ("agreement list size", criterion7),
        ("hypergraph matching", criterion8),
        ("nu0 threshold", criterion9),
        ("determinism", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
