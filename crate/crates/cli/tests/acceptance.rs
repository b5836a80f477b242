//! Acceptance criteria 1-7, one PASS/FAIL line each.
//!
//! Runs without the test harness so the summary always prints; exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unirat_core::arith::{GaussRat, Rat};
use unirat_core::conic::{
    no_solution_search, on_conic, parametrize, parity_check, q_conic, PruneStrategy, SearchOptions,
};
use unirat_core::funcfield::{
    apply_g, curve_vars, normal_form, Automorphism, CurveRingElem, FieldElem, GenSet,
};
use unirat_core::identities::{mutations, verify_all, CheckKind};
use unirat_core::pipeline::{
    build_phi, convergence_check, draw_samples, fibre_check, jacobian_rank, recover_v,
    sample_points, verify_on_h, SampleOptions,
};
use unirat_core::poly::{Mono, Poly, RatFunc};

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(cond: bool, what: &str, failures: &mut Vec<String>) {
    if !cond {
        failures.push(what.to_string());
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            ok: true,
            detail: summary,
        }
    } else {
        Outcome {
            ok: false,
            detail: failures.join("; "),
        }
    }
}

fn criterion_1() -> Outcome {
    let mut f = Vec::new();
    let reports = verify_all();
    for r in &reports {
        check(r.ok, &format!("{} failed: {}", r.id, r.witness), &mut f);
        if r.kind == CheckKind::Identity {
            check(
                r.witness.is_zero(),
                &format!("{} witness nonzero", r.id),
                &mut f,
            );
        }
    }
    let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    for needed in [
        "I.1",
        "II.b2",
        "II.lam1",
        "VIII",
        "IX",
        "X.2",
        "X.3",
        "XI.2",
        "XI.3",
        "XII",
        "XIII",
        "XIV",
        "**.2",
        "**.3",
        "H-equiv",
        "not-square",
    ] {
        check(ids.contains(&needed), &format!("missing {needed}"), &mut f);
    }
    let eps = reports
        .iter()
        .find(|r| r.id == "H-equiv")
        .and_then(|r| r.detail.clone());
    check(
        eps.as_deref() == Some("epsilon=1"),
        "epsilon not determined",
        &mut f,
    );
    let muts = mutations();
    check(muts.len() >= 12, "fewer than 12 mutations", &mut f);
    for m in &muts {
        check(
            !m.ok && !m.witness.is_zero(),
            &format!("mutation {} undetected", m.id),
            &mut f,
        );
    }
    finish(
        f,
        format!(
            "{} checks exact, {} mutations detected, epsilon=+1",
            reports.len(),
            muts.len()
        ),
    )
}

fn random_field_elem(rng: &mut ChaCha8Rng) -> FieldElem {
    let mut ring = || loop {
        let terms: Vec<_> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let e: Vec<u32> = (0..6).map(|_| rng.gen_range(0..=3)).collect();
                let c = GaussRat::new(
                    Rat::from_i64(rng.gen_range(-4..=4)),
                    Rat::from_i64(rng.gen_range(-1..=1)),
                );
                (Mono::new(e), c)
            })
            .collect();
        let r: CurveRingElem = normal_form(&Poly::from_terms(curve_vars(), &(), terms)).unwrap();
        if !r.is_zero() {
            return r;
        }
    };
    let (n, d) = (ring(), ring());
    FieldElem::new(n, d).unwrap()
}

fn criterion_2() -> Outcome {
    let mut f = Vec::new();
    check(Automorphism.order() == 4, "order is not 4", &mut f);
    let gens = GenSet::new();
    for (name, x) in gens.named() {
        check(&x.apply_g_pow(4) == x, &format!("g^4 moves {name}"), &mut f);
    }
    for c in Automorphism::coordinates() {
        check(c.apply_g_pow(4) == c, "g^4 moves a coordinate", &mut f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..100 {
        let x = random_field_elem(&mut rng);
        let mut y = x.clone();
        for _ in 0..4 {
            y = apply_g(&y);
        }
        check(y == x, &format!("g^4 moves random element {k}"), &mut f);
    }
    let y1 = Automorphism::coordinate_y(1);
    check(y1.apply_g_pow(2) != y1, "g^2 fixes y1", &mut f);
    check(y1.apply_g_pow(2) == y1.neg(), "g^2(y1) != -y1", &mut f);
    finish(
        f,
        "g^4 = id on 7 generators, 6 coordinates, 100 random elements; g^2(y1) = -y1".into(),
    )
}

fn criterion_3() -> Outcome {
    let mut f = Vec::new();
    let q = q_conic();
    let var = |k| RatFunc::var(q.vars(), &(), k);
    check(
        on_conic(&q, &var(0), &var(1)),
        "(s, t) not on Q-conic",
        &mut f,
    );
    match parametrize(&q, &var(0), &var(1)) {
        Ok(m) => {
            check(
                m.residual(&q).is_ok_and(|r| r.is_zero()),
                "parametrization residual nonzero",
                &mut f,
            );
            check(
                m.recovered_slope().is_ok_and(|v| v == m.slope()),
                "slope not recovered",
                &mut f,
            );
        }
        Err(e) => f.push(format!("parametrize: {e}")),
    }
    let rv = recover_v(&build_phi());
    check(rv.ok, &format!("recover_v: {}", rv.witness), &mut f);
    finish(
        f,
        "(s,t) on Q; back-substitution 0; (alpha-t)/(a-s) = v exactly".into(),
    )
}

fn criterion_4() -> Outcome {
    let mut f = Vec::new();
    let phi = build_phi();
    let h = verify_on_h(&phi);
    check(h.ok, &format!("phi not on H: {}", h.witness), &mut f);
    let g = GaussRat::from_i64;
    match jacobian_rank(&phi, &[g(2), g(3), g(1)]) {
        Ok(r) => check(r.rank == 3, &format!("rank {} at (2,3,1)", r.rank), &mut f),
        Err(e) => f.push(format!("(2,3,1): {e}")),
    }
    let pts = draw_samples(&phi, 5, 4);
    for s in &pts {
        match jacobian_rank(&phi, &s.stv) {
            Ok(r) => check(
                r.rank == 3,
                &format!("rank {} at sample {}", r.rank, s.index),
                &mut f,
            ),
            Err(e) => f.push(format!("sample {}: {e}", s.index)),
        }
    }
    finish(
        f,
        format!(
            "phi on H exactly; rank 3 at (2,3,1) and {} seeded points",
            pts.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut f = Vec::new();
    let mut summary = Vec::new();
    for (p, d) in [(5, 1), (13, 1)] {
        let start = Instant::now();
        match no_solution_search(&SearchOptions::new(p, d)) {
            Ok(r) => {
                let dt = start.elapsed();
                check(
                    r.solutions.is_empty(),
                    &format!("solutions found for p={p}"),
                    &mut f,
                );
                check(
                    dt < Duration::from_secs(60),
                    &format!("p={p} took {dt:?}"),
                    &mut f,
                );
                check(
                    r.candidates_pruned + r.candidates_tested == r.candidates_total,
                    "counts do not add up",
                    &mut f,
                );
                summary.push(format!(
                    "p={p} d={d}: 0 of {} ({:.2?})",
                    r.candidates_total, dt
                ));
            }
            Err(e) => f.push(format!("p={p}: {e}")),
        }
    }
    let json = |threads| {
        let opts = SearchOptions {
            threads,
            ..SearchOptions::new(13, 1)
        };
        serde_json::to_string(&no_solution_search(&opts).unwrap()).unwrap()
    };
    check(
        json(1) == json(4),
        "search output depends on thread count",
        &mut f,
    );
    // the brute force agrees with the pruned search at p = 5
    let brute = SearchOptions {
        threads: 4,
        prune: PruneStrategy::None,
        ..SearchOptions::new(5, 1)
    };
    check(
        no_solution_search(&brute).is_ok_and(|r| r.solutions.is_empty()),
        "brute force disagrees",
        &mut f,
    );
    for d in 0..=4 {
        check(
            parity_check(d).ok(),
            &format!("parity fails at degree {d}"),
            &mut f,
        );
    }
    summary.push("parity forces R1(0,beta)=Q(0,beta)=0 for degrees 0..4".into());
    finish(f, summary.join("; "))
}

fn criterion_6() -> Outcome {
    let mut f = Vec::new();
    let phi = build_phi();
    let samples = draw_samples(&phi, 20, 0);
    let mut worst = i64::MIN;
    for prec in [64, 128, 256] {
        let opts = SampleOptions {
            count: 20,
            seed: 0,
            prec,
            threads: 4,
        };
        match sample_points(&phi, &opts) {
            Ok(reps) => {
                for r in &reps {
                    let k = r.sample.index;
                    check(
                        r.lift.u1_ok(),
                        &format!("u1 disagrees, sample {k} at {prec}"),
                        &mut f,
                    );
                    check(
                        r.lift.residuals_ok(),
                        &format!("residual too large, sample {k} at {prec}"),
                        &mut f,
                    );
                    check(
                        r.lift.orbit_consistent,
                        &format!("orbit mismatch, sample {k} at {prec}"),
                        &mut f,
                    );
                    if let Some(e) = r.lift.max_residual_log2() {
                        worst = worst.max(e + prec as i64);
                    }
                }
            }
            Err(e) => f.push(format!("prec {prec}: {e}")),
        }
    }
    for s in &samples {
        match convergence_check(&s.point, &[64, 128, 256]) {
            Ok(c) => check(
                c.ok(),
                &format!("no convergence at sample {}: {:?}", s.index, c.levels),
                &mut f,
            ),
            Err(e) => f.push(format!("sample {}: {e}", s.index)),
        }
        match fibre_check(&phi, &s.stv) {
            Ok(r) => check(
                r.ok(),
                &format!("fibre check fails at sample {}", s.index),
                &mut f,
            ),
            Err(e) => f.push(format!("fibre at sample {}: {e}", s.index)),
        }
    }
    finish(f, format!("20 samples at 64/128/256 bits; worst residual 2^({worst}-prec); orbits and fibres consistent"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_unirat"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn criterion_7() -> Outcome {
    let mut f = Vec::new();
    let cases: [&[&str]; 3] = [
        &["parametrize"],
        &["sample", "--count", "5", "--seed", "7"],
        &["no-rational-point", "--prime", "13", "--max-degree", "1"],
    ];
    for args in cases {
        let runs: Result<Vec<Vec<u8>>, String> = [None, None, Some("1"), Some("4")]
            .iter()
            .map(|t| {
                let mut a = args.to_vec();
                if let Some(t) = t {
                    a.extend(["--threads", t]);
                }
                run_cli(&a)
            })
            .collect();
        match runs {
            Ok(r) => {
                check(
                    !r[0].is_empty(),
                    &format!("{args:?} printed nothing"),
                    &mut f,
                );
                check(
                    r.iter().all(|x| x == &r[0]),
                    &format!("{args:?} output differs"),
                    &mut f,
                );
            }
            Err(e) => f.push(e),
        }
    }
    finish(
        f,
        "parametrize, sample, search byte-identical across runs and --threads 1/4".into(),
    )
}

/// Name, check, time limit.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 7] = [
        ("identity suite", criterion_1, Duration::from_secs(10)),
        ("ord(g) = 4", criterion_2, Duration::from_secs(1)),
        ("conic certificate", criterion_3, Duration::from_secs(5)),
        (
            "unirationality certificate",
            criterion_4,
            Duration::from_secs(10),
        ),
        ("no rational section", criterion_5, Duration::from_secs(60)),
        ("numeric lift", criterion_6, Duration::from_secs(30)),
        ("determinism", criterion_7, Duration::from_secs(120)),
    ];
    let mut all_ok = true;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let dt = start.elapsed();
        let in_time = dt <= limit;
        let ok = out.ok && in_time;
        all_ok &= ok;
        let timing = if in_time {
            String::new()
        } else {
            format!(" (over {limit:?} limit)")
        };
        println!(
            "criterion {}: {} [{}] {:.2?}{} - {}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            dt,
            timing,
            out.detail
        );
    }
    if !all_ok {
        std::process::exit(1);
    }
}
