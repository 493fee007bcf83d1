//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use qdual::bench::{run_bench, BenchConfig, Family};
use qdual::classical::{self, Classical};
use qdual::corpus::{all_monotone, random_antichain, AntichainParams};
use qdual::pipeline::{cross_validate, Agreement, StepKind};
use qdual::sim::{deutsch_jozsa, quantum_counting};
use qdual::{
    build_h_oracle, generate_majority_phi, intersection_condition, quantum_dual_pair,
    quantum_self_dual, self_dual_reduction, BooleanOracle, MonotoneDNF, Route, SimConfig, SimRng,
    StateVector, VerdictTrace,
};

// Tolerances and sample sizes.
const DJ_RUNS: u64 = 1000;
const COUNTING_RUNS: u64 = 1000;
const M_HAT_TOL: f64 = 1e-9;
const STRICT_RUNS: u64 = 2000;
const STRICT_TARGET: f64 = 0.5;
const STRICT_TOL: f64 = 0.05;
const COMPLETENESS_SEEDS: u64 = 100;
const SOUNDNESS_INSTANCES: usize = 500;
const SOUNDNESS_RATE: f64 = 0.99;
const COUNT_CHAR_RANDOM: usize = 1000;
const PAIRS: usize = 300;
const PLANTED_INSTANCES: usize = 200;
const QUERY_FACTOR: f64 = 9.0;
const NORM_TOL: f64 = 1e-10;
const INVOLUTION_TOL: f64 = 1e-12;
const QFT_TOL: f64 = 1e-10;
const PHI_TIME_LIMIT_SECS: f64 = 1.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dnf(n: usize, imps: &[&[usize]]) -> MonotoneDNF {
    MonotoneDNF::new(n, imps.iter().map(|i| i.to_vec()).collect()).unwrap()
}

fn and_n(n: usize) -> MonotoneDNF {
    MonotoneDNF::new(n, vec![(1..=n).collect()]).unwrap()
}

fn or_n(n: usize) -> MonotoneDNF {
    MonotoneDNF::new(n, (1..=n).map(|i| vec![i]).collect()).unwrap()
}

fn balanced_table(n: usize, rng: &mut SimRng) -> Vec<bool> {
    let size = 1usize << n;
    let mut idx: Vec<usize> = (0..size).collect();
    for i in 0..size / 2 {
        let j = i + rng.below((size - i) as u64) as usize;
        idx.swap(i, j);
    }
    let mut table = vec![false; size];
    for &x in &idx[..size / 2] {
        table[x] = true;
    }
    table
}

fn self_dual_truth(f: &MonotoneDNF) -> bool {
    classical::is_self_dual_brute(&BooleanOracle::from_dnf(f))
        .unwrap()
        .answer
}

fn random_state(q: usize, seed: u64) -> StateVector {
    let mut rng = SimRng::new(seed);
    let raw: Vec<Complex64> = (0..1 << q)
        .map(|_| Complex64::new(rng.uniform() - 0.5, rng.uniform() - 0.5))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn phi_family() -> Outcome {
    let start = Instant::now();
    for (n, k) in [(3, 3), (5, 10), (7, 35), (9, 126)] {
        let phi = generate_majority_phi(n).unwrap();
        let o = BooleanOracle::from_dnf(&phi);
        ensure(phi.implicants().len() == k, || {
            format!("n={n}: {} implicants", phi.implicants().len())
        })?;
        let count = classical::count_satisfying(&o).unwrap();
        ensure(count == 1 << (n - 1), || format!("n={n}: count {count}"))?;
        ensure(classical::is_self_dual_brute(&o).unwrap().answer, || {
            format!("n={n}: not self-dual")
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < PHI_TIME_LIMIT_SECS, || format!("took {secs:.3}s"))?;
    Ok(format!(
        "3/10/35/126 implicants, balanced, self-dual in {secs:.3}s"
    ))
}

fn dj_certainty() -> Outcome {
    let mut cases = 0;
    for n in 2..=8 {
        let h = build_h_oracle(&and_n(n), &or_n(n)).unwrap();
        ensure(classical::count_satisfying(&h).unwrap() == 0, || {
            format!("h not zero at n={n}")
        })?;
        let mut rng = SimRng::new(n as u64);
        for run in 0..DJ_RUNS {
            let z = deutsch_jozsa(&h, &mut rng).unwrap();
            ensure(z == 0, || format!("h = 0, n={n}, run {run}: z={z}"))?;
        }
        cases += 1;
    }
    let mut gen = SimRng::new(5);
    for n in 1..=8 {
        let oracles = [
            BooleanOracle::from_table(n, balanced_table(n, &mut gen)).unwrap(),
            BooleanOracle::new(n, |x| x & 1 == 1).unwrap(),
            BooleanOracle::new(n, |x| x.count_ones() % 2 == 1).unwrap(),
        ];
        for (k, h) in oracles.iter().enumerate() {
            let mut rng = SimRng::new(100 + n as u64 * 3 + k as u64);
            for run in 0..DJ_RUNS {
                let z = deutsch_jozsa(h, &mut rng).unwrap();
                ensure(z != 0, || format!("balanced h #{k}, n={n}, run {run}: z=0"))?;
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} oracles x {DJ_RUNS} runs, all outcomes as required"
    ))
}

fn counting_exactness() -> Outcome {
    let mut gen = SimRng::new(17);
    for n in [4usize, 6, 8] {
        let t = n.div_ceil(2);
        let quarter = 1u64 << (t - 2);
        let predicates = [
            BooleanOracle::from_table(n, balanced_table(n, &mut gen)).unwrap(),
            BooleanOracle::new(n, |x| x & 1 == 1).unwrap(),
            BooleanOracle::from_table(n, balanced_table(n, &mut gen)).unwrap(),
            BooleanOracle::new(n, |x| x.count_ones() % 2 == 0).unwrap(),
        ];
        let mut rng = SimRng::new(n as u64 * 1000);
        for run in 0..COUNTING_RUNS {
            let p = &predicates[(run % 4) as usize];
            let est = quantum_counting(p, t, &mut rng).unwrap();
            ensure(est.y == quarter || est.y == 3 * quarter, || {
                format!("n={n} run {run}: y={}", est.y)
            })?;
            let target = (1u64 << (n - 1)) as f64;
            ensure((est.m_hat - target).abs() <= M_HAT_TOL, || {
                format!("n={n}: m_hat={}", est.m_hat)
            })?;
        }
    }

    let n = 6usize;
    let t = n.div_ceil(2);
    let p = BooleanOracle::from_table(n, balanced_table(n, &mut gen)).unwrap();
    let mut rng = SimRng::new(31337);
    let hits = (0..STRICT_RUNS)
        .filter(|_| quantum_counting(&p, t, &mut rng).unwrap().y == 1 << (t - 2))
        .count();
    let freq = hits as f64 / STRICT_RUNS as f64;
    ensure((freq - STRICT_TARGET).abs() <= STRICT_TOL, || {
        format!("strict y frequency {freq}")
    })?;

    let phi = generate_majority_phi(5).unwrap();
    let accepted = (0..STRICT_RUNS)
        .into_par_iter()
        .filter(|&seed| {
            let config = SimConfig {
                strict: true,
                ..SimConfig::with_seed(seed)
            };
            quantum_self_dual(&phi, &config).unwrap().answer()
        })
        .count();
    let accept_freq = accepted as f64 / STRICT_RUNS as f64;
    ensure((accept_freq - STRICT_TARGET).abs() <= STRICT_TOL, || {
        format!("strict pipeline acceptance on phi_5 {accept_freq}")
    })?;
    Ok(format!(
        "y in accepted pair on all runs; strict y frequency {freq:.3}, strict phi_5 acceptance {accept_freq:.3}"
    ))
}

fn completeness() -> Outcome {
    let mut functions = Vec::new();
    for n in 2..=5 {
        functions.extend(all_monotone(n).unwrap().into_iter().filter(self_dual_truth));
    }
    let failures: Vec<String> = functions
        .par_iter()
        .flat_map_iter(|f| {
            (0..COMPLETENESS_SEEDS).filter_map(move |seed| {
                let trace = quantum_self_dual(f, &SimConfig::with_seed(seed)).unwrap();
                (!trace.answer()).then(|| format!("{:?} seed {seed}", f.implicants()))
            })
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!("false rejections: {failures:?}")
    })?;
    Ok(format!(
        "{} self-dual functions (n = 2..5) x {COMPLETENESS_SEEDS} seeds, all accepted",
        functions.len()
    ))
}

/// Quantum verdict versus brute force for one seeded run.
fn classify(f: &MonotoneDNF, seed: u64) -> (Agreement, f64) {
    let trace = quantum_self_dual(f, &SimConfig::with_seed(seed)).unwrap();
    let check = cross_validate(f, None, &trace).unwrap();
    (check.agreement, trace.max_norm_deviation)
}

fn soundness() -> Outcome {
    let mut rng = SimRng::new(4242);
    let mut corpus = Vec::new();
    let mut true_inputs = Vec::new();
    while corpus.len() < SOUNDNESS_INSTANCES {
        let n = 2 + rng.below(9) as usize;
        let f = random_antichain(n, AntichainParams::for_arity(n), &mut rng).unwrap();
        if self_dual_truth(&f) {
            true_inputs.push(f);
        } else {
            corpus.push(f);
        }
    }
    let results: Vec<Agreement> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, f)| classify(f, i as u64).0)
        .collect();
    let misses = results
        .iter()
        .filter(|&&a| a == Agreement::OneSidedMiss)
        .count();
    let rate = 1.0 - misses as f64 / corpus.len() as f64;
    let defects = true_inputs
        .par_iter()
        .enumerate()
        .filter(|(i, f)| classify(f, 1_000_000 + *i as u64).0 != Agreement::Agree)
        .count();

    // Balanced but not self-dual: steps 1 and 3 cannot reject these.
    let mut adversarial = Vec::new();
    for n in 2..=5 {
        for f in all_monotone(n).unwrap() {
            let o = BooleanOracle::from_dnf(&f);
            if classical::is_balanced(&o).unwrap() && !self_dual_truth(&f) {
                adversarial.push(f);
            }
        }
    }
    let adv_runs: Vec<Agreement> = adversarial
        .par_iter()
        .flat_map_iter(|f| (0..20).map(move |seed| classify(f, seed).0))
        .collect();
    let adv_misses = adv_runs
        .iter()
        .filter(|&&a| a == Agreement::OneSidedMiss)
        .count();
    let adv_rate = 1.0 - adv_misses as f64 / adv_runs.len() as f64;

    ensure(defects == 0, || {
        format!("{defects} false rejections of self-dual inputs")
    })?;
    ensure(rate >= SOUNDNESS_RATE, || {
        format!("random corpus rejection rate {rate:.4}")
    })?;
    ensure(adv_rate >= SOUNDNESS_RATE, || {
        format!("adversarial rejection rate {adv_rate:.4}")
    })?;
    Ok(format!(
        "random: {}/{} rejected ({rate:.4}); adversarial balanced: {} runs over {} functions, rate {adv_rate:.4}; {} self-dual draws all accepted",
        corpus.len() - misses,
        corpus.len(),
        adv_runs.len(),
        adversarial.len(),
        true_inputs.len()
    ))
}

fn count_characterization() -> Outcome {
    let mut checked = 0;
    let mut check = |f: &MonotoneDNF| -> Result<(), String> {
        let by_count = classical::self_dual_by_count(f).unwrap().answer;
        // Independent restatement: pairwise intersection and exactly half true.
        let o = BooleanOracle::from_dnf(f);
        let stated = intersection_condition(f, f).unwrap().is_none()
            && classical::count_satisfying(&o).unwrap() == 1 << (f.num_vars() - 1);
        let brute = self_dual_truth(f);
        checked += 1;
        ensure(by_count == brute && stated == brute, || {
            format!("{f:?}: count={by_count} brute={brute}")
        })
    };
    for n in 1..=4 {
        for f in all_monotone(n).unwrap() {
            check(&f)?;
        }
    }
    let mut rng = SimRng::new(6);
    for _ in 0..COUNT_CHAR_RANDOM {
        let n = 5 + rng.below(6) as usize;
        check(&random_antichain(n, AntichainParams::for_arity(n), &mut rng).unwrap())?;
    }
    Ok(format!("{checked} formulas, full agreement"))
}

fn reduction_and_routes() -> Outcome {
    let mut rng = SimRng::new(77);
    let c = Classical::default();
    let mut pairs = Vec::new();
    while pairs.len() < PAIRS {
        let n = 2 + rng.below(7) as usize;
        let f = random_antichain(n, AntichainParams::for_arity(n), &mut rng).unwrap();
        let g = if pairs.len() % 2 == 0 {
            match c.dual_of(&f).unwrap() {
                Some(g) if !g.is_constant_zero() => g,
                _ => continue,
            }
        } else {
            random_antichain(n, AntichainParams::for_arity(n), &mut rng).unwrap()
        };
        pairs.push((f, g));
    }
    let rows: Vec<Result<(bool, Agreement, Agreement, bool), String>> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (f, g))| {
            let reduced = self_dual_truth(&self_dual_reduction(f, g).unwrap());
            let dual = classical::is_dual_pair_brute(
                &BooleanOracle::from_dnf(f),
                &BooleanOracle::from_dnf(g),
            )
            .unwrap()
            .answer;
            ensure(reduced == dual, || {
                format!("pair {i}: reduced={reduced} dual={dual}")
            })?;
            let config = SimConfig::with_seed(i as u64);
            let direct = quantum_dual_pair(f, g, &config, Route::Direct).unwrap();
            let via = quantum_dual_pair(f, g, &config, Route::Reduction).unwrap();
            let a = cross_validate(f, Some(g), &direct).unwrap().agreement;
            let b = cross_validate(f, Some(g), &via).unwrap().agreement;
            Ok((dual, a, b, direct.answer() == via.answer()))
        })
        .collect();
    let rows: Vec<_> = rows.into_iter().collect::<Result<_, _>>()?;
    let true_pairs = rows.iter().filter(|r| r.0).count();
    let defects = rows
        .iter()
        .filter(|r| r.1 == Agreement::Defect || r.2 == Agreement::Defect)
        .count();
    let misses = rows
        .iter()
        .filter(|r| r.1 == Agreement::OneSidedMiss || r.2 == Agreement::OneSidedMiss)
        .count();
    let disagreements = rows
        .iter()
        .filter(|r| !r.3 && r.1 != Agreement::OneSidedMiss && r.2 != Agreement::OneSidedMiss)
        .count();
    ensure(defects == 0, || format!("{defects} false rejections"))?;
    ensure(disagreements == 0, || {
        format!("{disagreements} route disagreements")
    })?;
    Ok(format!(
        "{PAIRS} pairs ({true_pairs} dual): reduction equivalent on all; routes agree ({misses} one-sided misses)"
    ))
}

fn query_scaling() -> Outcome {
    let config = BenchConfig {
        n_min: 6,
        n_max: 14,
        instances: PLANTED_INSTANCES,
        seed: 8,
        family: Family::Planted,
        sim: SimConfig::default(),
    };
    let rows = run_bench(&config).unwrap();
    let mut summary = Vec::new();
    for (n, mean) in qdual::bench::mean_grover_queries(&rows) {
        let bound = QUERY_FACTOR * (n as f64 / 2.0).exp2();
        ensure(mean <= bound, || {
            format!("n={n}: mean {mean:.1} > {bound:.1}")
        })?;
        summary.push(format!("{n}:{mean:.0}/{bound:.0}"));
    }
    let found = rows.iter().filter(|r| r.quantum_answer).count();

    let mut rng = SimRng::new(3);
    for t in 2..=7 {
        let p = BooleanOracle::new(4, |x| x % 3 == 0).unwrap();
        let est = quantum_counting(&p, t, &mut rng).unwrap();
        let expected = (1u64 << t) - 1;
        ensure(est.iterate_applications == expected, || {
            format!("t={t}: {} iterates", est.iterate_applications)
        })?;
        ensure(p.query_count() == expected, || {
            format!("t={t}: {} oracle queries", p.query_count())
        })?;
    }
    for n in 2..=9 {
        let phi = generate_majority_phi(n | 1).unwrap();
        let trace = quantum_self_dual(&phi, &SimConfig::with_seed(n as u64)).unwrap();
        let t = trace.config.t.unwrap() as u32;
        let step = trace
            .steps
            .iter()
            .find(|s| s.kind == StepKind::Counting)
            .unwrap();
        ensure(step.queries == (1 << t) - 1, || {
            format!("trace counting queries {}", step.queries)
        })?;
    }
    Ok(format!(
        "mean/bound per n {}; {found}/{} planted found; counting uses 2^t - 1 iterates",
        summary.join(" "),
        rows.len()
    ))
}

fn traces_for_hygiene() -> Vec<VerdictTrace> {
    let mut traces = Vec::new();
    let mut rng = SimRng::new(99);
    for seed in 0..20 {
        for n in [3, 5, 7] {
            traces.push(
                quantum_self_dual(
                    &generate_majority_phi(n).unwrap(),
                    &SimConfig::with_seed(seed),
                )
                .unwrap(),
            );
        }
    }
    for i in 0..200 {
        let n = 2 + rng.below(9) as usize;
        let f = random_antichain(n, AntichainParams::for_arity(n), &mut rng).unwrap();
        traces.push(quantum_self_dual(&f, &SimConfig::with_seed(i)).unwrap());
    }
    for (i, route) in [Route::Direct, Route::Reduction].into_iter().enumerate() {
        for n in 2..=6 {
            let config = SimConfig::with_seed(i as u64 + n as u64);
            traces.push(quantum_dual_pair(&and_n(n), &or_n(n), &config, route).unwrap());
            let g = dnf(n, &[&[1]]);
            traces.push(quantum_dual_pair(&g, &g, &config, route).unwrap());
        }
    }
    traces
}

fn simulator_hygiene() -> Outcome {
    let traces = traces_for_hygiene();
    let worst = traces
        .iter()
        .map(|t| t.max_norm_deviation)
        .fold(0.0, f64::max);
    ensure(worst <= NORM_TOL, || {
        format!("pipeline norm deviation {worst:e}")
    })?;

    let mut involution = 0.0f64;
    for q in 1..=6 {
        let inputs: Vec<usize> = (0..q).collect();
        let mut rng = SimRng::new(q as u64);
        let table: Vec<bool> = (0..1 << q).map(|_| rng.below(2) == 1).collect();
        let oracle = BooleanOracle::from_table(q, table).unwrap();
        for seed in 0..10 {
            let original = random_state(q, seed);
            let mut s = original.clone();
            s.apply_diffusion(&inputs).unwrap();
            s.apply_diffusion(&inputs).unwrap();
            involution = involution.max(max_diff(&s, &original));
            let mut s = original.clone();
            s.apply_phase_oracle(&oracle, &inputs).unwrap();
            s.apply_phase_oracle(&oracle, &inputs).unwrap();
            involution = involution.max(max_diff(&s, &original));
        }
    }
    ensure(involution <= INVOLUTION_TOL, || {
        format!("involution error {involution:e}")
    })?;

    let mut qft = 0.0f64;
    for t in 1..=8 {
        let register: Vec<usize> = (0..t).collect();
        for seed in 0..5 {
            let original = random_state(t, 1000 + seed);
            let mut s = original.clone();
            s.apply_qft(&register).unwrap();
            s.apply_inverse_qft(&register).unwrap();
            qft = qft.max(max_diff(&s, &original));
        }
    }
    ensure(qft <= QFT_TOL, || format!("QFT round-trip error {qft:e}"))?;

    let phi = generate_majority_phi(7).unwrap();
    let broken = dnf(4, &[&[1, 2], &[3, 4]]);
    for seed in [0, 1, 12345] {
        let config = SimConfig::with_seed(seed);
        for f in [&phi, &broken] {
            let a = quantum_self_dual(f, &config).unwrap().to_json();
            let b = quantum_self_dual(f, &config).unwrap().to_json();
            ensure(a == b, || format!("JSON differs for seed {seed}"))?;
        }
        let a = quantum_dual_pair(&and_n(3), &or_n(3), &config, Route::Reduction)
            .unwrap()
            .to_json();
        let b = quantum_dual_pair(&and_n(3), &or_n(3), &config, Route::Reduction)
            .unwrap()
            .to_json();
        ensure(a == b, || format!("dual-pair JSON differs for seed {seed}"))?;
    }
    Ok(format!(
        "{} traces, max norm deviation {worst:.1e}; involution {involution:.1e}; QFT round trip {qft:.1e}; JSON stable",
        traces.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("majority family", phi_family),
        ("Deutsch-Jozsa certainty", dj_certainty),
        ("counting exactness", counting_exactness),
        ("completeness", completeness),
        ("soundness", soundness),
        ("count characterization", count_characterization),
        ("reduction and route agreement", reduction_and_routes),
        ("query scaling", query_scaling),
        ("simulator hygiene", simulator_hygiene),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
