//! Acceptance run: one line per criterion. Criteria 1 to 10 gate the exit status; 11 is a stretch goal.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{crossover, s1_oracle, s2_oracle};
use unit_tilings::bounds::{table2, RHO5_PUBLISHED};
use unit_tilings::families::croft::{build_croft, croft_optimize, optimal_theta};
use unit_tilings::families::k6::{build_k6, build_k7, K6Params, VariantFlags, PARAM_NAMES};
use unit_tilings::geometry::{curving_s1, curving_s2};
use unit_tilings::instance::{Family, TilingInstance};
use unit_tilings::optimizer::{maximize_rho, table1, OptimizationResult};
use unit_tilings::params::{evaluate_file, ParamsFile};
use unit_tilings::verifier::{check_proper, monte_carlo_delta, DEFAULT_TOL};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Largest absolute deviation from a published vector over every named parameter.
fn param_gap(found: &BTreeMap<String, f64>, published: &K6Params) -> (f64, &'static str) {
    PARAM_NAMES
        .iter()
        .map(|&n| ((found.get(n).copied().unwrap_or(0.0) - published.get(n).unwrap()).abs(), n))
        .fold((0.0, ""), |a, b| if b.0 > a.0 { b } else { a })
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> (T, Duration, bool) {
    let t0 = Instant::now();
    let v = f();
    let dt = t0.elapsed();
    (v, dt, dt < limit)
}

fn croft_closed_forms() -> Outcome {
    let published = [1.2976307224, 1.8475049575, 3.2060961470, 12.1151804529];
    let (sols, dt, fast) = timed(Duration::from_secs(1), || (1..=4).map(|k| croft_optimize(k).unwrap()).collect::<Vec<_>>());
    let mut worst = rel(sols[0].theta, 0.2633155390).max(rel(sols[0].delta_k, 0.7706352684));
    for (s, p) in sols.iter().zip(published) {
        worst = worst.max(rel(s.rho_k, p));
    }
    outcome(worst < 1e-8 && fast, format!("max rel err {worst:.1e}, {dt:.2?}"))
}

fn single(family: Family, flags: &VariantFlags, target: f64, tol: f64, limit: u64) -> (Outcome, Option<OptimizationResult>) {
    let (r, dt, fast) = timed(Duration::from_secs(limit), || maximize_rho(family, Some(flags), None, 0));
    match r {
        Ok(r) => {
            let e = rel(r.rho, target);
            (outcome(e < tol && fast, format!("rho {:.10}, rel err {e:.1e}, {dt:.1?}", r.rho)), Some(r))
        }
        Err(e) => (outcome(false, format!("{e}")), None),
    }
}

fn full_k6(r: Option<&OptimizationResult>, base: Outcome) -> Outcome {
    let Some(r) = r else { return base };
    let (gap, worst) = param_gap(&r.params, &K6Params::published_k6());
    let (n, v, w) = (r.params["n"], r.params["v"], r.params["w"]);
    let nvw = (n - v).abs().max((n - w).abs());
    let pass = base.pass && gap < 1e-6 && nvw < 1e-6;
    outcome(pass, format!("{}; params within {gap:.1e} (worst {worst}); |n - v|, |n - w| <= {nvw:.1e}", base.detail))
}

fn table_cells() -> Outcome {
    let (cells, dt, fast) = timed(Duration::from_secs(3600), || table1(0));
    let mut worst: f64 = 0.0;
    let mut failed = 0;
    for c in &cells {
        match c {
            Ok(c) => worst = worst.max(c.rel_error),
            Err(_) => failed += 1,
        }
    }
    outcome(failed == 0 && worst < 1e-5 && fast, format!("{} cells, {failed} failed, max rel err {worst:.1e}, {dt:.1?}", cells.len()))
}

fn seven_colours(r: Option<&OptimizationResult>, base: Outcome) -> Outcome {
    let Some(r) = r else { return base };
    let (gap, worst) = param_gap(&r.params, &K6Params::published_k7());
    let dd = (r.delta - 0.000165477642).abs();
    let pass = base.pass && dd < 1e-9 && gap < 1e-6;
    outcome(pass, format!("{}; delta off by {dd:.1e}; params within {gap:.1e} (worst {worst})", base.detail))
}

fn eval_at_point() -> Outcome {
    let report = ParamsFile::load(&fixture("k6_published.json")).map_err(|e| e.to_string()).and_then(|f| evaluate_file(&f).map_err(|e| e.to_string()));
    match report {
        Ok(r) => {
            let poly = r.polygonal.map(|m| m.rho).unwrap_or(f64::NAN);
            let pass = r.max_residual < 1e-6 && poly > 6985.0 && poly < 6985.4;
            outcome(pass, format!("rho {:.7}, polygonal rho {poly:.7}, max residual {:.1e}", r.metrics.rho, r.max_residual))
        }
        Err(e) => outcome(false, e),
    }
}

fn verifier(k6: Option<&OptimizationResult>, k7: Option<&OptimizationResult>) -> Outcome {
    let mut insts: Vec<(String, TilingInstance)> =
        (1..=4).map(|k| (format!("croft k = {k}"), build_croft(optimal_theta(), k).unwrap())).collect();
    if let Some(r) = k6 {
        insts.push(("six colours".into(), build_k6(&K6Params::from_map(&r.params).unwrap(), &VariantFlags::FULL).unwrap()));
    }
    if let Some(r) = k7 {
        insts.push(("seven colours".into(), build_k7(&K6Params::from_map(&r.params).unwrap()).unwrap()));
    }
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, inst) in &insts {
        let (r, dt, fast) = timed(Duration::from_secs(300), || check_proper(inst, DEFAULT_TOL).unwrap());
        slowest = slowest.max(dt);
        if !r.proper || !fast {
            bad.push(name.clone());
        }
    }
    let broken = ParamsFile::load(&fixture("broken_croft_k4.json")).unwrap().build().unwrap();
    let flagged = !check_proper(&broken, DEFAULT_TOL).unwrap().violations.is_empty();
    let pass = bad.is_empty() && flagged && k6.is_some() && k7.is_some();
    outcome(pass, format!("{} instances proper except {bad:?}, broken fixture flagged: {flagged}, slowest {slowest:.2?}", insts.len()))
}

fn monte_carlo(k6: Option<&OptimizationResult>) -> Outcome {
    let croft = build_croft(optimal_theta(), 1).unwrap();
    let a = monte_carlo_delta(&croft, 1_000_000, 1);
    let za = (a.estimate - croft.void_area / croft.cell_area) / a.stderr;
    let Some(r) = k6 else { return outcome(false, "no six-colour optimum") };
    let inst = build_k6(&K6Params::from_map(&r.params).unwrap(), &VariantFlags::FULL).unwrap();
    let b = monte_carlo_delta(&inst, 10_000_000, 1);
    let zb = (b.estimate - inst.void_area / inst.cell_area) / b.stderr;
    outcome(za.abs() < 3.0 && zb.abs() < 3.0, format!("croft {za:+.2} sigma, six colours {zb:+.2} sigma (delta {:.9})", b.estimate))
}

fn bounds(k6: Option<&OptimizationResult>) -> Outcome {
    let Some(r) = k6 else { return outcome(false, "no six-colour optimum") };
    let mut rhos: BTreeMap<u8, f64> = (1..=4).map(|k| (k, croft_optimize(k).unwrap().rho_k)).collect();
    // the five-colour record is not reconstructed; its published value stands in
    rhos.insert(5, RHO5_PUBLISHED);
    rhos.insert(6, r.rho);
    let rows = table2(&rhos).unwrap();
    let colorable: Vec<u64> = rows.iter().map(|r| r.colorable_order).collect();
    let chromatic: Vec<u64> = rows.iter().map(|r| r.chromatic_lower).collect();
    let pass = colorable == [1, 1, 3, 12, 24, 6992] && chromatic == [2, 2, 4, 13, 25, 6993];
    outcome(pass, format!("{colorable:?} / {chromatic:?} (rho5 published)"))
}

fn curving() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        for j in 0..50 {
            let a = 0.01 + 0.98 * i as f64 / 49.0;
            let b = 0.01 + 0.98 * j as f64 / 49.0;
            worst = worst.max((curving_s1(a, b).unwrap().s1 - s1_oracle(a, b)).abs());
            worst = worst.max((curving_s2(a, b).unwrap().s2 - s2_oracle(a, b)).abs());
        }
    }
    let k = crossover(1e-4);
    outcome(worst < 1e-9 && (k - 2.0).abs() < 1e-6, format!("max deviation {worst:.1e}, crossover b/a = {k:.9}"))
}

fn five_colours() -> Outcome {
    match maximize_rho(Family::K5, None, None, 0) {
        Ok(r) => {
            let proper = ParamsFile::from(&r).build().map(|i| check_proper(&i, DEFAULT_TOL).unwrap().proper).unwrap_or(false);
            outcome(
                r.rho > 21.0 && proper,
                format!("rho5 {:.6} (dumbbell baseline, proper: {proper}); the 39-variable construction is not reconstructed", r.rho),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() {
    // `cargo test -- --list` and filters from the default harness are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let t0 = Instant::now();
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    let mut report = |n: u8, name: &'static str, o: Outcome| {
        println!("criterion {n:>2} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, name, o));
    };
    report(1, "croft closed forms", croft_closed_forms());
    report(2, "pritikin baseline", single(Family::K6, &VariantFlags::PRITIKIN, 6197.5793083297, 1e-7, 60).0);
    let (base, k6) = single(Family::K6, &VariantFlags::FULL, 6992.1655504123, 1e-6, 600);
    report(3, "full six colours", full_k6(k6.as_ref(), base));
    report(4, "variant table", table_cells());
    let (base, k7) = single(Family::K7, &VariantFlags::K7, 6043.11246787913, 1e-7, 600);
    report(5, "seven colours", seven_colours(k7.as_ref(), base));
    report(6, "evaluate at the published point", eval_at_point());
    report(7, "verifier", verifier(k6.as_ref(), k7.as_ref()));
    report(8, "monte carlo", monte_carlo(k6.as_ref()));
    report(9, "pigeonhole bounds", bounds(k6.as_ref()));
    report(10, "curving kernel", curving());
    report(11, "five colours (stretch)", five_colours());
    let gating_failures = results.iter().filter(|(n, _, o)| *n <= 10 && !o.pass).count();
    println!("acceptance: {gating_failures} gating failures, total {:.1?}", t0.elapsed());
    if gating_failures > 0 {
        std::process::exit(1);
    }
}
