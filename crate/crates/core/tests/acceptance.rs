//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use bfp::exactpoly::{g_poly, IntPolynomial};
use bfp::extremal::{
    brute_force_extremal, candidates, canonical_form, enumerate_k, one_vertex_added_members, verify_counterexample,
    SearchConfig,
};
use bfp::graphs::{build_family, build_ferrers, pad_columns, BipartiteGraph, DegreeSequence, Family};
use bfp::quotient::{quotient, verify_equitable, RowPartition};
use bfp::report::grid;
use bfp::spectral::{h_matrix, spectral_radius_graph, spectral_radius_h, DEFAULT_TOL};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Every `(ρ, e)` pair computed by the other criteria.
#[derive(Default)]
struct Touched {
    pairs: Vec<(f64, u64)>,
}

impl Touched {
    fn graph(&mut self, g: &BipartiteGraph) -> f64 {
        let rho = spectral_radius_graph(g, DEFAULT_TOL).expect("radius").rho;
        self.pairs.push((rho, g.edge_count() as u64));
        rho
    }

    fn value(&mut self, rho: f64, e: u64) {
        self.pairs.push((rho, e));
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn int_poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(coeffs)
}

fn counterexample(t: &mut Touched) -> Outcome {
    let start = Instant::now();
    let r = verify_counterexample(3, 6, 1, &cfg()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(r.verdict, "verdict false");
    ensure!(r.g == int_poly(&[-4, 17, -15, 1]), "g = {}", r.g);

    let (lo, hi) = common::bisect_largest(&[-4, 17, -15, 1], 13, 14, 60);
    ensure!(
        r.rho_pm_squared.lo <= hi && lo <= r.rho_pm_squared.hi,
        "rho_pm^2 bracket misses the bisection root"
    );
    ensure!((common::to_f64(&lo) - 13.788).abs() < 1e-3, "g root {}", common::to_f64(&lo));

    ensure!(r.candidates.len() == 1, "{} candidates", r.candidates.len());
    let c = &r.candidates[0];
    ensure!(c.f == int_poly(&[0, 18, -15, 1]), "f = {}", c.f);
    // the largest root of x^3 - 15x^2 + 18x is that of x^2 - 15x + 18
    let quad = [18, -15, 1];
    let (at_lo, at_hi) = (common::eval(&quad, &c.rho_squared.lo), common::eval(&quad, &c.rho_squared.hi));
    ensure!(!(at_lo.is_positive() && at_hi.is_positive()), "candidate bracket misses (15+sqrt 153)/2");
    ensure!(!(at_lo.is_negative() && at_hi.is_negative()), "candidate bracket misses (15+sqrt 153)/2");
    let f_root = (15.0 + 153f64.sqrt()) / 2.0;
    ensure!((c.rho_squared.midpoint_f64() - f_root).abs() < 1e-9, "f root {}", c.rho_squared.midpoint_f64());
    ensure!(c.rho_squared.hi < r.rho_pm_squared.lo, "brackets not strictly ordered");

    let pm = pad_columns(build_family(Family::PlusMinus { p: 3, q: 5 }).map_err(|e| e.to_string())?.graph(), 6);
    let up = build_family(Family::UpperE { p: 3, q: 6, e: 15 }).map_err(|e| e.to_string())?;
    let (rho_pm, rho_up) = (t.graph(&pm), t.graph(up.graph()));
    for (what, exact, numeric) in [
        ("rho_pm", r.rho_pm, r.rho_pm_numeric),
        ("rho_pm graph", r.rho_pm, rho_pm),
        ("rho_pm dense", r.rho_pm, common::dense_rho(&pm)),
        ("rho_candidate", c.rho, c.rho_numeric),
        ("rho_candidate graph", c.rho, rho_up),
        ("rho_candidate dense", c.rho, common::dense_rho(up.graph())),
    ] {
        ensure!((exact - numeric).abs() <= 1e-7, "{what}: exact {exact} vs float {numeric}");
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "rho_pm^2 ~ {:.6}, f root ~ {:.6}, rho_pm = {:.9} > {:.9}",
        r.rho_pm_squared.midpoint_f64(),
        c.rho_squared.midpoint_f64(),
        r.rho_pm,
        c.rho
    ))
}

fn grid_check(t: &mut Touched) -> Outcome {
    let (ps, ks, offsets): (Vec<u64>, Vec<u64>, Vec<u64>) = ((3..=6).collect(), (1..=3).collect(), (3..=10).collect());
    let start = Instant::now();
    let rows = grid(&ps, &ks, &offsets, &cfg());
    let elapsed = start.elapsed();
    ensure!(rows.len() == 96, "{} rows", rows.len());
    for row in &rows {
        let (p, q, k) = (row.p, row.q, row.k);
        ensure!(row.error.is_none(), "({p},{q},{k}): {:?}", row.error);
        ensure!(row.verdict == Some(true), "({p},{q},{k}) verdict {:?}", row.verdict);
        ensure!(row.all_certified == Some(true), "({p},{q},{k}) not certified");
    }
    for &p in &ps {
        for &k in &ks {
            for &off in &offsets {
                let q = k * p + off;
                let r = verify_counterexample(p, q, k, &cfg()).map_err(|e| e.to_string())?;
                let e = p * (q - k);
                t.value(r.rho_pm_numeric, e);
                let (pi, qi, ki) = (p as i128, q as i128, k as i128);
                let g_x = (2 * qi - 2 * ki - 1) * (pi - 1) - 1;
                let g_0 = (pi - 2) * (qi - ki - 1);
                for c in &r.candidates {
                    t.value(c.rho_numeric, e);
                    let a = c.a as i128;
                    let f_x = (ki - a) * pi * (pi - 1) * (qi - a - (ki - a) * pi);
                    let want = int_poly(&[g_0 as i64, (f_x - g_x) as i64]);
                    ensure!(c.certificate.diff == want, "({p},{q},{k},a={a}) f-g = {}", c.certificate.diff);
                    ensure!(c.certificate.is_certified(), "({p},{q},{k},a={a}) uncertified");
                    let coeffs = c.certificate.diff.coefficients();
                    ensure!(
                        coeffs.iter().all(|x| !x.is_negative()) && coeffs.iter().any(|x| x.is_positive()),
                        "({p},{q},{k},a={a}) f-g has a negative coefficient"
                    );
                }
            }
        }
    }
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok("96/96 verdict=true, every f-g coefficientwise non-negative".into())
}

fn random_sequences() -> Vec<DegreeSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    (0..200).map(|_| common::random_degrees(&mut rng, 12, 20)).collect()
}

fn gram_identity(t: &mut Touched) -> Outcome {
    let mut worst = 0.0f64;
    for d in random_sequences() {
        let g = build_ferrers(&d, 20).map_err(|e| e.to_string())?.into_graph();
        let rho = t.graph(&g);
        let rho_h = spectral_radius_h(&d, DEFAULT_TOL).map_err(|e| e.to_string())?.rho;
        let dense = common::dense_rho(&g);
        let scale = 1e-9 * rho_h.max(1.0);
        for (what, x) in [("power", rho), ("dense", dense)] {
            let err = (x * x - rho_h).abs();
            ensure!(err <= scale, "{d}: {what} rho^2 {} vs rho(H) {rho_h}", x * x);
            worst = worst.max(err / rho_h.max(1.0));
        }
    }
    Ok(format!("200 sequences, worst relative gap {worst:.2e}"))
}

fn equitable_quotients() -> Outcome {
    let mut matrices: Vec<(String, Vec<Vec<u64>>, RowPartition)> = Vec::new();
    for d in random_sequences() {
        matrices.push((d.to_string(), h_matrix(&d).to_rows(), RowPartition::degree_runs(&d)));
    }
    for (p, q, k) in instances() {
        let pm = build_family(Family::PlusMinus { p: p as usize, q: (q - k) as usize }).map_err(|e| e.to_string())?;
        let d = pm.degrees();
        let h = h_matrix(d).to_rows();
        matrices.push((format!("pm {d}"), h.clone(), RowPartition::first_middle_last(p as usize).unwrap()));
        matrices.push((format!("pm runs {d}"), h, RowPartition::degree_runs(d)));
        for c in candidates(p, q, k).map_err(|e| e.to_string())?.members {
            matrices.push((c.degrees.to_string(), h_matrix(&c.degrees).to_rows(), RowPartition::degree_runs(&c.degrees)));
        }
    }
    let mut worst = 0.0f64;
    for (name, m, part) in &matrices {
        let check = verify_equitable(m, part).map_err(|e| format!("{name}: {e}"))?;
        let residual = check.max_residual();
        ensure!(residual <= 1e-8, "{name}: residual {residual:e}");
        let dense = common::dense_sym_max(m);
        ensure!((check.rho_quotient - check.rho_matrix).abs() <= 1e-8, "{name}: rho(B) {} vs rho(M) {}", check.rho_quotient, check.rho_matrix);
        ensure!((check.rho_quotient - dense).abs() <= 1e-8, "{name}: rho(B) {} vs dense {dense}", check.rho_quotient);
        worst = worst.max(residual);
    }
    Ok(format!("{} quotients, worst residual {worst:.2e}", matrices.len()))
}

fn instances() -> Vec<(u64, u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    (0..50).map(|_| common::random_instance(&mut rng)).collect()
}

fn exact_char_poly() -> Outcome {
    for (p, q, k) in instances() {
        let mut d = vec![(q - k + 1) as u32];
        d.extend(std::iter::repeat_n((q - k) as u32, p as usize - 2));
        d.push((q - k - 1) as u32);
        let d = DegreeSequence::new(d).map_err(|e| e.to_string())?;
        let pm = build_family(Family::PlusMinus { p: p as usize, q: (q - k) as usize }).map_err(|e| e.to_string())?;
        ensure!(pm.degrees() == &d, "({p},{q},{k}): D_k^* = {}", pm.degrees());
        let b = quotient(&h_matrix(&d).to_rows(), &RowPartition::first_middle_last(p as usize).unwrap())
            .map_err(|e| e.to_string())?;
        ensure!(b.is_equitable(), "({p},{q},{k}) not equitable");
        let m = b.to_integer().ok_or("non-integer quotient")?;
        let mut small = [[0i128; 3]; 3];
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                small[i][j] = x.try_into().map_err(|_| "entry overflow".to_string())?;
            }
        }
        let g = g_poly(p, q, k).map_err(|e| e.to_string())?;
        let oracle: Vec<BigInt> = common::char_poly_3(small).iter().map(|&c| BigInt::from(c)).collect();
        ensure!(g.coefficients() == oracle.as_slice(), "({p},{q},{k}): invariants give {oracle:?}, g = {g}");
        let cp = b.characteristic_polynomial().map_err(|e| e.to_string())?;
        ensure!(cp == g, "({p},{q},{k}): char poly {cp} vs g {g}");
    }
    Ok("50/50 integer-equal".into())
}

fn restricted_canon(rows: &[u32]) -> BipartiteGraph {
    let d = DegreeSequence::new(rows.to_vec()).unwrap();
    canonical_form(&build_ferrers(&d, d.max_degree() as usize).unwrap().into_graph().restricted())
}

fn completeness(t: &mut Touched) -> Outcome {
    let mut notes = Vec::new();
    for (p, q, k, want) in [(3u64, 6u64, 1u64, vec![vec![6u32, 6, 3]]), (3, 9, 2, vec![vec![9, 9, 3], vec![8, 8, 5]])] {
        let e = p * (q - k);
        let expected: BTreeSet<BipartiteGraph> = want.iter().map(|d| restricted_canon(d)).collect();
        let mut oracle = BTreeSet::new();
        let mut members = 0u64;
        common::for_each_subset((p * q) as usize, e as usize, |s| {
            let g = common::subset_graph(p as usize, q as usize, s);
            if common::member(&g) {
                members += 1;
                if common::definitionally_one_vertex_added(&g) {
                    oracle.insert(canonical_form(&g.restricted()));
                }
            }
        });
        ensure!(oracle == expected, "({p},{q},{e}): exhaustive oracle found {} classes", oracle.len());
        let found: BTreeSet<BipartiteGraph> =
            one_vertex_added_members(p, q, e, &cfg()).map_err(|e| e.to_string())?.into_iter().collect();
        ensure!(found == expected, "({p},{q},{e}): library found {} classes", found.len());
        let set = candidates(p, q, k).map_err(|e| e.to_string())?;
        let degs: Vec<Vec<u32>> = set.members.iter().map(|c| c.degrees.entries().to_vec()).collect();
        ensure!(degs == want, "({p},{q},{k}) candidates {degs:?}");
        for g in &expected {
            t.graph(g);
        }
        notes.push(format!("K({p},{q},{e}): {members} members -> {want:?}"));
    }
    Ok(notes.join("; "))
}

fn brute_force(t: &mut Touched) -> Outcome {
    let start = Instant::now();
    let mut sweep: Vec<(BipartiteGraph, f64)> = Vec::new();
    for g in enumerate_k(3, 6, 15, &cfg()).map_err(|e| e.to_string())? {
        let rho = spectral_radius_graph(&g, DEFAULT_TOL).map_err(|e| e.to_string())?.rho;
        sweep.push((g, rho));
    }
    let found = brute_force_extremal(3, 6, 15, &cfg()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(found.raw_subsets == 816, "{} raw subsets", found.raw_subsets);
    ensure!(found.members == sweep.len() as u64, "{} vs {} members", found.members, sweep.len());
    for (g, rho) in &sweep {
        t.value(*rho, g.edge_count() as u64);
    }
    let max = sweep.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
    ensure!((found.max_rho.unwrap_or(f64::NAN) - max).abs() <= 1e-9, "search max {:?} vs sweep {max}", found.max_rho);
    let maximizers: Vec<&BipartiteGraph> = sweep.iter().filter(|x| x.1 >= max - 1e-9).map(|x| &x.0).collect();
    ensure!(
        maximizers.iter().all(|g| !common::definitionally_one_vertex_added(g)),
        "a maximizer is one-vertex-added"
    );
    ensure!(!found.any_one_vertex_added, "search reports a one-vertex-added maximizer");

    let pm = canonical_form(&pad_columns(build_family(Family::PlusMinus { p: 3, q: 5 }).unwrap().graph(), 6));
    let up = canonical_form(build_family(Family::UpperE { p: 3, q: 6, e: 15 }).unwrap().graph());
    let value_of = |target: &BipartiteGraph| sweep.iter().find(|(g, _)| &canonical_form(g) == target).map(|x| x.1);
    let rho_pm = value_of(&pm).ok_or("K^± not in the sweep")?;
    let rho_up = value_of(&up).ok_or("^15K_{3,6} not in the sweep")?;
    ensure!(rho_pm > rho_up, "sweep rho(K^±) {rho_pm} <= rho(^15K) {rho_up}");
    let r = verify_counterexample(3, 6, 1, &cfg()).map_err(|e| e.to_string())?;
    ensure!((rho_pm - r.rho_pm).abs() <= 1e-7, "sweep {rho_pm} vs verify {}", r.rho_pm);
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "{} members, max rho {max:.9} by {} labelled graphs, rho(K^±) {rho_pm:.9} > rho(^15K) {rho_up:.9}",
        sweep.len(),
        maximizers.len()
    ))
}

fn bound(t: &Touched) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for &(rho, e) in &t.pairs {
        let slack = rho - (e as f64).sqrt();
        ensure!(slack <= 1e-9, "rho {rho} exceeds sqrt({e})");
        worst = worst.max(slack);
    }
    let mut complete = 0;
    for s in 1..=12usize {
        for t in 1..=20usize {
            let g = build_family(Family::Complete { p: s, q: t }).map_err(|e| e.to_string())?.into_graph();
            let rho = spectral_radius_graph(&g, DEFAULT_TOL).map_err(|e| e.to_string())?.rho;
            let want = ((s * t) as f64).sqrt();
            ensure!((rho - want).abs() <= 1e-10, "K_{{{s},{t}}}: {rho} vs {want}");
            complete += 1;
        }
    }
    Ok(format!("{} graphs within sqrt(e) (max slack {worst:.2e}), {complete} complete graphs exact", t.pairs.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bfp"))
            .args(["grid", "--p", "3..6", "--k", "1..3", "--json"])
            .env_remove("BFP_MAX_SUBSETS")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure!(a.status.success() && b.status.success(), "grid exited {:?} / {:?}", a.status, b.status);
    ensure!(!a.stdout.is_empty(), "empty output");
    ensure!(a.stdout == b.stdout, "outputs differ");
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let mut touched = Touched::default();
    let mut failures = 0;
    let mut report = |n: usize, name: &str, body: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {n} {name}: {detail} ({secs:.2} s)"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {n} {name}: {why} ({secs:.2} s)");
            }
        }
    };
    report(1, "counterexample reproduction", &mut || counterexample(&mut touched));
    report(2, "grid check", &mut || grid_check(&mut touched));
    report(3, "Gram identity", &mut || gram_identity(&mut touched));
    report(4, "equitable quotients", &mut equitable_quotients);
    report(5, "quotient characteristic polynomial", &mut exact_char_poly);
    report(6, "candidate completeness", &mut || completeness(&mut touched));
    report(7, "brute force at (3,6,15)", &mut || brute_force(&mut touched));
    report(8, "sqrt(e) bound", &mut || bound(&touched));
    report(9, "determinism", &mut determinism);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
