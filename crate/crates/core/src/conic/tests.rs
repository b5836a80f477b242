use super::*;
use crate::arith::{FpElem, GaussRat, PrimeField};
use crate::poly::Mono;
use proptest::prelude::*;

fn bb() -> Arc<VarSet> {
    VarSet::new(["b", "beta"]).unwrap()
}

fn rf(vars: &Arc<VarSet>, src: &str) -> RatFunc<GaussRat> {
    RatFunc::from_poly(Poly::parse(vars, &(), src).unwrap())
}

#[test]
fn q_conic_has_point_s_t() {
    let c = q_conic();
    let st = c.vars().clone();
    assert!(on_conic(&c, &rf(&st, "s"), &rf(&st, "t")));
    assert!(!on_conic(&c, &rf(&st, "t"), &rf(&st, "s")));
}

#[test]
fn h_conic_examples() {
    let c = h_conic();
    let v = bb();
    assert!(!on_conic(&c, &rf(&v, "1"), &rf(&v, "1")));
    // C != 0 so the origin is not on it
    assert!(!on_conic(&c, &rf(&v, "0"), &rf(&v, "0")));
    let c0 = ConicDiag::new(rf(&v, "b"), rf(&v, "beta"), rf(&v, "0")).unwrap();
    assert!(on_conic(&c0, &rf(&v, "0"), &rf(&v, "0")));
}

#[test]
fn base_change_coefficients() {
    let c = q_conic();
    let st = c.vars().clone();
    assert_eq!(c.coeff_a, rf(&st, "t^2*(1-t^4)"));
    assert_eq!(c.coeff_alpha, rf(&st, "s^2*(1-s^4)"));
    assert_eq!(c.constant, rf(&st, "s^2*t^2*(s^4-t^4)"));
    let x = VarSet::new(["x"]).unwrap();
    let wrong = ConicDiag::new(rf(&x, "x"), rf(&x, "1"), rf(&x, "1")).unwrap();
    assert!(matches!(base_change(&wrong), Err(Error::VarSetMismatch(_))));
}

#[test]
fn base_change_constant_and_twice() {
    let v = bb();
    let c = ConicDiag::new(rf(&v, "2"), rf(&v, "3"), rf(&v, "-1")).unwrap();
    let bc = base_change(&c).unwrap();
    let st = bc.vars().clone();
    assert_eq!(
        bc,
        ConicDiag::new(rf(&st, "2"), rf(&st, "3"), rf(&st, "-1")).unwrap()
    );

    let twice = base_change(&q_conic()).unwrap();
    assert_eq!(twice.coeff_a, rf(&st, "t^4*(1-t^8)"));
    assert_eq!(twice.constant, rf(&st, "s^4*t^4*(s^8-t^8)"));
}

#[test]
fn conic_rejects_degenerate_input() {
    let v = bb();
    assert_eq!(
        ConicDiag::new(rf(&v, "0"), rf(&v, "b"), rf(&v, "1")),
        Err(Error::DegeneratePencil)
    );
    let st = VarSet::new(["s", "t"]).unwrap();
    assert!(matches!(
        ConicDiag::new(rf(&v, "b"), rf(&st, "s"), rf(&v, "1")),
        Err(Error::VarSetMismatch(_))
    ));
}

#[test]
fn parametrize_q_conic() {
    let c = q_conic();
    let st = c.vars().clone();
    let m = parametrize(&c, &rf(&st, "s"), &rf(&st, "t")).unwrap();
    assert_eq!(m.vars.names(), ["s", "t", "v"]);
    assert!(m.residual(&c).unwrap().is_zero());
    assert_eq!(m.recovered_slope().unwrap(), m.slope());
    // v = 0 is the horizontal line: second point (-s, t)
    let zero = GaussRat::zero_value();
    let a_v0 = RatFunc::new(m.a.num().eval_var(2, &zero), m.a.den().eval_var(2, &zero)).unwrap();
    let al_v0 = RatFunc::new(
        m.alpha.num().eval_var(2, &zero),
        m.alpha.den().eval_var(2, &zero),
    )
    .unwrap();
    let stv = m.vars.clone();
    assert_eq!(a_v0, rf(&stv, "-s"));
    assert_eq!(al_v0, rf(&stv, "t"));
}

#[test]
fn parametrize_at_sample_point() {
    let c = q_conic();
    let st = c.vars().clone();
    let m = parametrize(&c, &rf(&st, "s"), &rf(&st, "t")).unwrap();
    let pt = [
        GaussRat::from_i64(2),
        GaussRat::from_i64(3),
        GaussRat::from_i64(1),
    ];
    assert_eq!(m.a.eval(&pt).unwrap(), GaussRat::frac(-20, 11).unwrap());
    assert_eq!(m.alpha.eval(&pt).unwrap(), GaussRat::frac(-9, 11).unwrap());
}

#[test]
fn parametrize_rejects_off_conic() {
    let c = q_conic();
    let st = c.vars().clone();
    assert_eq!(
        parametrize(&c, &rf(&st, "t"), &rf(&st, "s")).unwrap_err(),
        Error::NotOnConic
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn planted_points_parametrize(
        ca in (1i64..6, -3i64..4), cb in (1i64..6, -3i64..4),
        a0 in (-4i64..5, -3i64..4), al0 in (-4i64..5, -3i64..4),
    ) {
        let v = bb();
        let lin = |(k, m): (i64, i64)| rf(&v, &format!("{k} + ({m})*b - beta"));
        let (a, b) = (lin(ca), lin(cb));
        let (p0, q0) = (lin(a0), rf(&v, &format!("{} + beta", al0.0)));
        let c_term = a.mul(&p0.pow(2)).sub(&b.mul(&q0.pow(2)));
        let c = ConicDiag::new(a, b, c_term).unwrap();
        prop_assert!(on_conic(&c, &p0, &q0));
        let m = parametrize(&c, &p0, &q0).unwrap();
        prop_assert!(m.residual(&c).unwrap().is_zero());
        prop_assert_eq!(m.recovered_slope().unwrap(), m.slope());
    }
}

fn fp_poly(field: &PrimeField, terms: &[((u32, u32), u64)]) -> Poly<FpElem> {
    Poly::from_terms(
        &bb(),
        field,
        terms
            .iter()
            .map(|&((i, j), c)| (Mono::new(vec![i, j]), field.elem(c)))
            .collect::<Vec<_>>(),
    )
}

#[test]
fn forced_divisibility_on_trivial_and_non_solutions() {
    let f = PrimeField::new(13).unwrap();
    let zero = fp_poly(&f, &[]);
    let t = CandidateTriple::new(zero.clone(), zero.clone(), zero.clone()).unwrap();
    let rep = forced_divisibility(&t).unwrap();
    assert!(rep.reduced_identity_holds && rep.all_divisible_by_b_beta && !rep.contradiction);

    let one = fp_poly(&f, &[((0, 0), 1)]);
    let t = CandidateTriple::new(one.clone(), one.clone(), one).unwrap();
    assert_eq!(forced_divisibility(&t).unwrap_err(), Error::NotASolution);
}

#[test]
fn cleared_identity_q_only() {
    // P = R = 0, Q = 1 leaves -b beta (b^2 - beta^2)
    let f = PrimeField::new(5).unwrap();
    let zero = fp_poly(&f, &[]);
    let one = fp_poly(&f, &[((0, 0), 1)]);
    let t = CandidateTriple::new(zero.clone(), one, zero).unwrap();
    assert_eq!(
        cleared_identity(&t),
        fp_poly(&f, &[((3, 1), 4), ((1, 3), 1)])
    );
}

#[test]
fn parity_forces_zero_low_degrees() {
    for d in 0..=4 {
        let rep = parity_check(d);
        assert!(rep.ok(), "degree {d}: {rep:?}");
    }
    assert_eq!(
        parity_check(0).b_zero_identity,
        "beta^2*q_0_0^2 - beta*r_0_0^2"
    );
}

#[test]
fn search_p5_d1_counts() {
    let rep = no_solution_search(&SearchOptions::new(5, 1)).unwrap();
    assert!(rep.solutions.is_empty());
    assert_eq!(rep.candidates_total, (5u128.pow(9) - 1) / 4);
    assert_eq!(
        rep.pruned_by_residue,
        rep.candidates_total - (5u128.pow(5) - 1) / 4
    );
    assert_eq!(
        rep.candidates_pruned + rep.candidates_tested,
        rep.candidates_total
    );
}

#[test]
fn search_degree_zero() {
    for p in [5, 13] {
        let rep = no_solution_search(&SearchOptions::new(p, 0)).unwrap();
        assert!(rep.solutions.is_empty());
        assert_eq!(rep.candidates_total, (p as u128).pow(2) + p as u128 + 1);
    }
}

#[test]
fn search_strategies_agree_p5() {
    let mut reports = Vec::new();
    for prune in [
        PruneStrategy::None,
        PruneStrategy::Residue,
        PruneStrategy::Leading,
        PruneStrategy::ResidueAndLeading,
    ] {
        let opts = SearchOptions {
            prime: 5,
            max_degree: 1,
            threads: 4,
            prune,
        };
        let rep = no_solution_search(&opts).unwrap();
        assert_eq!(
            rep.candidates_pruned + rep.candidates_tested,
            rep.candidates_total
        );
        reports.push(rep);
    }
    assert_eq!(reports[0].candidates_pruned, 0);
    assert_eq!(reports[0].candidates_tested, reports[0].candidates_total);
    assert!(reports.iter().all(|r| r.solutions == reports[0].solutions));
    assert!(reports[0].solutions.is_empty());
}

#[test]
fn search_threads_deterministic() {
    let run = |threads| {
        let opts = SearchOptions {
            threads,
            ..SearchOptions::new(13, 1)
        };
        serde_json::to_string(&no_solution_search(&opts).unwrap()).unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
    assert!(one.starts_with(r#"{"prime":13,"dmax":1,"candidates_pruned":"#));
}

#[test]
fn search_rejects_bad_prime_and_budget() {
    assert!(matches!(
        no_solution_search(&SearchOptions::new(7, 1)),
        Err(Error::UnsupportedField { p: 7, .. })
    ));
    assert!(matches!(
        no_solution_search(&SearchOptions::new(13, 3)),
        Err(Error::BudgetExceeded { .. })
    ));
}
