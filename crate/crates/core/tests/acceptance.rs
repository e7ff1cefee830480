//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use common::{hv_inclusion_exclusion, SplitMix};
use moea_glu::algorithm::{find_attached_weight, run, run_observed, AlgorithmSettings, RunResult};
use moea_glu::harness::{
    emit_point_cloud, export_results, median, run_experiment, run_experiment_detailed,
    ExperimentConfig, ExportFormat, Metric, StatsSummary,
};
use moea_glu::metrics::{hv_exact, hv_monte_carlo, igd};
use moea_glu::weights::{generate_simplex_weights, generate_two_layer, WeightSet};
use moea_glu::{seeded_rng, CriterionKind, Problem, ProblemId, Variant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn standard_weight_sets() -> Vec<(usize, WeightSet)> {
    vec![
        (3, generate_simplex_weights(12, 3).unwrap()),
        (5, generate_simplex_weights(6, 5).unwrap()),
        (8, generate_two_layer(3, 2, 8, 0.5).unwrap()),
        (10, generate_two_layer(3, 2, 10, 0.5).unwrap()),
        (15, generate_two_layer(2, 1, 15, 0.5).unwrap()),
    ]
}

fn weight_counts() -> Check {
    let expected = [91, 210, 156, 275, 135];
    for ((m, set), n) in standard_weight_sets().into_iter().zip(expected) {
        ensure(set.len() == n, || format!("M={m}: {} vectors, expected {n}", set.len()))?;
        for w in set.vectors() {
            let s: f64 = w.iter().sum();
            ensure((s - 1.0).abs() <= 1e-12, || format!("M={m}: vector sums to {s}"))?;
        }
    }
    Ok("sizes 91/210/156/275/135, all sums within 1e-12".into())
}

fn half_step_order() -> Check {
    let set = generate_simplex_weights(2, 3).unwrap();
    let want = [
        [0.0, 0.0, 1.0],
        [0.0, 0.5, 0.5],
        [0.0, 1.0, 0.0],
        [0.5, 0.0, 0.5],
        [0.5, 0.5, 0.0],
        [1.0, 0.0, 0.0],
    ];
    let got: Vec<Vec<f64>> = set.vectors().iter().map(|w| w.to_vec()).collect();
    ensure(got.len() == 6 && got.iter().zip(&want).all(|(g, w)| g[..] == w[..]), || {
        format!("got {got:?}")
    })?;
    Ok("six vectors in lattice order".into())
}

fn metric_oracles() -> Check {
    let mut rng = SplitMix(2024);
    let mut worst_rel: f64 = 0.0;
    for _ in 0..200 {
        let m = 2 + rng.below(3);
        let n = 1 + rng.below(6);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| rng.point(m)).collect();
        let z: Vec<f64> = (0..m).map(|_| 1.0 + 0.5 * rng.unit()).collect();
        let got = hv_exact(&pts, &z);
        let want = hv_inclusion_exclusion(&pts, &z);
        let rel = (got - want).abs() / want.abs().max(f64::MIN_POSITIVE);
        worst_rel = worst_rel.max(rel);
        ensure(rel <= 1e-9, || format!("exact HV {got} vs oracle {want} (M={m}, |S|={n})"))?;
    }
    let mut worst_z: f64 = 0.0;
    for s in 0..20 {
        let n = 2 + rng.below(5);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| rng.point(3)).collect();
        let z = [1.0, 1.0, 1.0];
        let exact = hv_exact(&pts, &z);
        let est = hv_monte_carlo(&pts, &z, 1_000_000, &mut seeded_rng(s)).unwrap();
        let diff = (est.value - exact).abs();
        if est.standard_error > 0.0 {
            worst_z = worst_z.max(diff / est.standard_error);
        }
        ensure(diff <= 4.0 * est.standard_error + 1e-12 * exact, || {
            format!("MC {} vs exact {exact}, se {}", est.value, est.standard_error)
        })?;
    }
    let r = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
    ensure(igd(&r, &r).unwrap() == 0.0, || "IGD of the reference itself is not 0".into())?;
    let v = igd(&[vec![0.0, 1.0]], &r).unwrap();
    ensure(v == std::f64::consts::SQRT_2 / 2.0, || format!("IGD hand case gave {v}"))?;
    Ok(format!(
        "200 exact instances (worst rel err {worst_rel:.1e}), 20 MC instances (worst {worst_z:.2} SE), IGD hand cases exact"
    ))
}

fn reference_geometry() -> Check {
    let mut checked = 0;
    for (m, set) in standard_weight_sets() {
        for id in [ProblemId::Dtlz1, ProblemId::Dtlz2, ProblemId::Dtlz3, ProblemId::Dtlz4] {
            let refs = Problem::new(id, m).unwrap().dtlz_pf_reference(&set).unwrap();
            for f in &refs {
                let err = if id == ProblemId::Dtlz1 {
                    f.iter().sum::<f64>() - 0.5
                } else {
                    f.iter().map(|v| v * v).sum::<f64>() - 1.0
                };
                ensure(err.abs() <= 1e-12, || format!("{id} M={m}: residual {err:e} at {f:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} reference points on their fronts within 1e-12"))
}

fn metric_median(s: &StatsSummary, name: &str) -> f64 {
    s.metric(name).expect("metric computed").median
}

fn dtlz2_three_objectives() -> Check {
    let s = run_experiment(&ExperimentConfig::new("DTLZ2", 3).resolve().unwrap()).unwrap();
    let (i, h) = (metric_median(&s, "igd"), metric_median(&s, "hv"));
    let detail = format!("median IGD {i:.4e}, median HV {h:.6}");
    ensure(i <= 5e-3 && h >= 0.92, || detail.clone())?;
    Ok(detail)
}

fn dtlz1_three_objectives() -> Check {
    let s = run_experiment(&ExperimentConfig::new("DTLZ1", 3).resolve().unwrap()).unwrap();
    let igd = s.metric("igd").unwrap();
    let detail = format!(
        "median IGD {:.4e} (best {:.4e}, worst {:.4e})",
        igd.median, igd.best, igd.worst
    );
    ensure(igd.median <= 1e-2, || detail.clone())?;
    Ok(detail)
}

fn wfg4(criterion: CriterionKind) -> StatsSummary {
    let mut c = ExperimentConfig::new("WFG4", 3);
    c.criterion = criterion;
    run_experiment(&c.resolve().unwrap()).unwrap()
}

fn wfg4_hybrid(h1: &StatsSummary) -> Check {
    let h = metric_median(h1, "hv");
    let detail = format!("median HV {h:.6}");
    ensure(h >= 0.72, || detail.clone())?;
    Ok(detail)
}

fn criterion_ordering(h1: &StatsSummary, pbi: &StatsSummary) -> Check {
    let (a, b) = (metric_median(h1, "hv"), metric_median(pbi, "hv"));
    let detail = format!("H1 median HV {a:.6} vs PBI {b:.6}");
    ensure(a >= b - 0.002, || detail.clone())?;
    Ok(detail)
}

fn distinct(points: &[Vec<f64>]) -> usize {
    points
        .iter()
        .map(|f| f.iter().map(|v| v.to_bits()).collect::<Vec<_>>())
        .collect::<HashSet<_>>()
        .len()
}

fn occupied_directions(result: &RunResult, weights: &WeightSet) -> usize {
    result
        .population
        .iter()
        .map(|p| find_attached_weight(&p.f, weights, &result.ideal))
        .collect::<HashSet<_>>()
        .len()
}

fn non_degeneration() -> Check {
    let problem = Problem::new(ProblemId::Dtlz4, 3).unwrap();
    let weights = generate_simplex_weights(12, 3).unwrap().with_neighborhoods(20).unwrap();
    let n = weights.len();
    let generations = 600;
    let settings = AlgorithmSettings::defaults_for(&problem);
    let lu_settings = AlgorithmSettings {
        variant: Variant::Lu,
        ..settings
    };
    let mut max_loop = 0;
    let mut glu_dirs = Vec::new();
    let mut lu_report = Vec::new();
    let mut most_degenerate: Option<(usize, RunResult)> = None;
    for seed in 1..=6 {
        let mut violation = None;
        let glu = run_observed(&problem, &weights, settings, generations, seed, |state, report| {
            max_loop = max_loop.max(report.max_loop_iterations);
            let slots_ok = state.population().len() == n
                && state.population().iter().enumerate().all(|(i, p)| p.attached == i)
                && report.occupied_slots == n;
            if violation.is_none() && (!slots_ok || report.max_loop_iterations > n) {
                violation = Some(format!(
                    "seed {seed} generation {}: occupied {} of {n}, loop {}",
                    state.generation(),
                    report.occupied_slots,
                    report.max_loop_iterations
                ));
            }
        })
        .unwrap();
        if let Some(v) = violation {
            return Err(v);
        }
        glu_dirs.push(occupied_directions(&glu, &weights));

        let lu = run(&problem, &weights, lu_settings, generations, seed).unwrap();
        let dirs = occupied_directions(&lu, &weights);
        lu_report.push(format!("{}/{dirs}", distinct(&lu.objectives())));
        if most_degenerate.as_ref().is_none_or(|(d, _)| dirs < *d) {
            most_degenerate = Some((dirs, lu));
        }
    }
    let (_, lu) = most_degenerate.expect("at least one seed");
    let cloud = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dtlz4_m3_lu_points.txt");
    emit_point_cloud(&lu, &cloud).unwrap();
    Ok(format!(
        "GLU kept {n}/{n} slots every generation on 6 seeds (max loop {max_loop}, directions {glu_dirs:?}); \
         LU distinct vectors/directions per seed {lu_report:?}; seed {} cloud at {}",
        lu.seed,
        cloud.display()
    ))
}

fn determinism() -> Check {
    let mut a = ExperimentConfig::new("DTLZ3", 3);
    a.generations = Some(60);
    a.runs = 4;
    a.seed = 17;
    let mut b = ExperimentConfig::new("WFG2", 3);
    b.generations = Some(60);
    b.runs = 4;
    b.variant = Variant::ModifiedLu;
    b.criterion = CriterionKind::H2;
    // force the sampled hypervolume path as well
    b.exact_hv_max_objectives = 2;
    b.hv_samples = 20_000;
    let mut files = 0;
    for c in [a, b] {
        let resolved = c.resolve().unwrap();
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        let p1 = export_results(&run_experiment(&resolved).unwrap(), d1.path(), ExportFormat::Both).unwrap();
        let p2 = export_results(&run_experiment(&resolved).unwrap(), d2.path(), ExportFormat::Both).unwrap();
        for (x, y) in p1.iter().zip(&p2) {
            ensure(std::fs::read(x).unwrap() == std::fs::read(y).unwrap(), || {
                format!("{} differs between reruns", x.display())
            })?;
            files += 1;
        }
    }
    Ok(format!("{files} export files byte-identical across reruns"))
}

fn many_objective_smoke() -> Check {
    let mut parts = Vec::new();
    for m in [8, 10] {
        let full = ExperimentConfig::new("DTLZ2", m).resolve().unwrap().generations;
        let mut medians = Vec::new();
        for g in [0, full / 4, full] {
            let mut c = ExperimentConfig::new("DTLZ2", m);
            c.generations = Some(g);
            c.runs = 5;
            c.metrics = Some(vec![Metric::Igd]);
            let o = run_experiment_detailed(&c.resolve().unwrap()).unwrap();
            let mut v = o.summary.metric("igd").unwrap().values.clone();
            v.sort_by(f64::total_cmp);
            medians.push(median(&v));
        }
        ensure(medians.iter().all(|v| v.is_finite()), || format!("M={m}: {medians:?}"))?;
        ensure(medians.windows(2).all(|w| w[1] <= w[0]) && medians[2] < medians[0], || {
            format!("M={m}: median IGD not improving: {medians:?}")
        })?;
        parts.push(format!("M={m} IGD {:.3e} -> {:.3e} -> {:.3e}", medians[0], medians[1], medians[2]));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: &str, name: &str, f: &mut dyn FnMut() -> Check| {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail}");
            }
        }
    };
    report("1", "weight-set sizes", &mut weight_counts);
    report("2", "half-step lattice order", &mut half_step_order);
    report("3", "metric oracles", &mut metric_oracles);
    report("4", "DTLZ reference geometry", &mut reference_geometry);
    report("5", "DTLZ2 M=3 PBI quality", &mut dtlz2_three_objectives);
    report("6", "DTLZ1 M=3 quality", &mut dtlz1_three_objectives);
    let h1 = catch_unwind(|| wfg4(CriterionKind::H1)).ok();
    let pbi = catch_unwind(|| wfg4(CriterionKind::Pbi)).ok();
    report("7", "WFG4 M=3 H1 quality", &mut || match &h1 {
        Some(s) => wfg4_hybrid(s),
        None => Err("run failed".into()),
    });
    report("8", "H1 versus PBI on WFG4", &mut || match (&h1, &pbi) {
        (Some(a), Some(b)) => criterion_ordering(a, b),
        _ => Err("run failed".into()),
    });
    report("9", "non-degeneration", &mut non_degeneration);
    report("10", "export determinism", &mut determinism);
    report("+", "8/10-objective smoke runs", &mut many_objective_smoke);
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
