use confluentia::algebra::{int, rat, Rational};
use confluentia::contraction::*;
use confluentia::singularity::{confluence_type, smultisymbol, ConfluenceKind};
use confluentia::special::{mathieu_eigen, Parity, SolverOptions};
use num_traits::Zero;
use proptest::prelude::*;

/// Sweep sup errors for α = 0.8, 0.4, 0.2 computed with SciPy's
/// `mathieu_cem`/`mathieu_sem` (odd denominators by a central difference of
/// step 1e-5), frozen here.
const SCIPY_SWEEP: [(usize, Parity, [f64; 3]); 6] = [
    (0, Parity::EvenCe, [0.414576934, 0.02941044584, 0.006836063049]),
    (1, Parity::EvenCe, [0.3563714411, 0.1934872175, 0.04164335828]),
    (2, Parity::EvenCe, [0.595798533, 0.9679101869, 0.1384828814]),
    (0, Parity::OddSe, [0.3004475776, 0.07808889255, 0.01695847911]),
    (1, Parity::OddSe, [0.486088353, 0.1171250117, 0.02490970717]),
    (2, Parity::OddSe, [0.5044200123, 0.2026029179, 0.06853494212]),
];

fn default_sweep() -> Vec<SweepRecord> {
    confluence_sweep(&SweepConfig::default()).unwrap()
}

#[test]
fn sweep_layout_and_csv() {
    let recs = default_sweep();
    assert_eq!(recs.len(), 24);
    assert_eq!(recs[0].alpha, 0.8);
    assert_eq!((recs[0].n, recs[0].parity), (0, Parity::EvenCe));
    assert_eq!((recs[1].n, recs[1].parity), (0, Parity::OddSe));
    assert_eq!(recs[23].alpha, 0.1);
    assert!((recs[23].q - 2500.0).abs() < 1e-9);
    let csv = sweep_csv(&recs);
    assert!(csv.starts_with(SweepRecord::CSV_HEADER));
    assert_eq!(csv.lines().count(), 25);
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first.len(), 8);
    assert_eq!((first[0], first[2], first[3]), ("0.8", "0", "even"));
    assert!((first[1].parse::<f64>().unwrap() - 0.6103515625).abs() < 1e-12);
    let script = gnuplot_script("sweep.csv", &recs, "sweep.png");
    assert!(script.contains("set logscale xy") && script.contains("'sweep.csv'") && script.contains("n=2 odd"));
}

#[test]
fn sweep_matches_scipy_oracle() {
    let recs = default_sweep();
    for (n, parity, errs) in SCIPY_SWEEP {
        for (k, alpha) in [0.8, 0.4, 0.2].into_iter().enumerate() {
            let r = recs.iter().find(|r| r.alpha == alpha && r.n == n && r.parity == parity).unwrap();
            assert!((r.sup_err - errs[k]).abs() < 1e-6 * errs[k], "{n} {parity} {alpha}: {} vs {}", r.sup_err, errs[k]);
        }
    }
}

#[test]
fn sweep_errors_decrease_once_asymptotic() {
    // from α = 0.4 on every series decreases; at α = 0.8 (q ≈ 0.61) the
    // ce_4 cell sits below its α = 0.4 value, see the oracle table
    let cfg = SweepConfig { alphas: vec![0.4, 0.2, 0.1], ..SweepConfig::default() };
    let recs = confluence_sweep(&cfg).unwrap();
    assert!(monotonicity_failures(&recs).is_empty());
    for r in recs.iter().filter(|r| r.alpha == 0.1) {
        assert!(r.sup_err < 0.05, "{r:?}");
    }
    assert_eq!(monotonicity_failures(&default_sweep()), vec![(2, Parity::EvenCe)]);
}

#[test]
fn printed_target_does_not_converge() {
    // the printed constants overshoot by a fixed factor, so the error
    // stalls instead of vanishing for n ≥ 1
    let recs = default_sweep();
    for r in recs.iter().filter(|r| r.alpha == 0.1 && r.n >= 1) {
        assert!(r.sup_err_printed > 0.5, "{r:?}");
    }
    let even0 = recs.iter().find(|r| r.alpha == 0.1 && r.n == 0 && r.parity == Parity::EvenCe).unwrap();
    assert!((even0.sup_err_printed - even0.sup_err).abs() < 1e-12);
}

#[test]
fn limit_constant_forms_agree() {
    for n in 0..=10 {
        for p in [Parity::EvenCe, Parity::OddSe] {
            let (g, f) = (limit_constant_gamma(n, p), limit_constant_factorial(n, p));
            assert!((g - f).abs() <= 1e-12 * f.abs(), "{n} {p}: {g} vs {f}");
        }
    }
}

#[test]
fn mu_defect_matches_prediction() {
    for alpha in [0.2, 0.1] {
        for n in 0..=2 {
            for p in [Parity::EvenCe, Parity::OddSe] {
                let mu = mu_of(alpha, 1.0, n, p).unwrap();
                let ratio = (mu - (2 * n + 1) as f64) / predicted_defect(n, alpha);
                assert!((ratio - 1.0).abs() < 0.1, "alpha {alpha} n {n} {p}: ratio {ratio}");
            }
        }
    }
    // μ tends to (2n+1)h for another h as well
    let mu = mu_of(0.1, 2.0, 1, Parity::EvenCe).unwrap();
    assert!((mu - 6.0).abs() < 0.1);
    assert!(mu_of(0.0, 1.0, 0, Parity::EvenCe).is_err());
}

#[test]
fn transported_eigenfunctions_solve_l4() {
    let h = 1.0;
    for (alpha, order) in [(0.8, 0usize), (0.4, 2), (0.2, 4)] {
        let (_, q) = param_map(alpha, h, 0.0);
        let e = mathieu_eigen(Parity::EvenCe, order, q, &SolverOptions::default()).unwrap();
        let mu = param_map_inverse(alpha, e.a, q);
        let f = transported_mathieu(&e, alpha, 512);
        assert!(l4_residual(&f, alpha, h, mu).unwrap() < 1e-8);
    }
    let e = mathieu_eigen(Parity::OddSe, 30, 1.0, &SolverOptions::default()).unwrap();
    let coarse = transported_mathieu(&e, 1.0, 64);
    assert!(matches!(l4_apply(&coarse, 1.0, 2.0), Err(ContractionError::GridTooCoarse { .. })));
}

#[test]
fn mathieu_to_oscillator_is_strong_confluence() {
    let h = int(1);
    let mu = rat(3, 1);
    let osc = oscillator_ode(&h, &mu).unwrap();
    let mut last: Option<Rational> = None;
    for d in [2, 4, 8, 16] {
        let alpha = rat(1, d);
        let m = deformed_mathieu_ode(&alpha, &h, &mu).unwrap();
        assert_eq!(smultisymbol(&m).unwrap().to_string(), "{1/2;1/2;3/2}");
        let dist = coefficient_distance(&m, &osc);
        if let Some(prev) = &last {
            assert!(dist < *prev);
        }
        last = Some(dist);
    }
    let before = smultisymbol(&deformed_mathieu_ode(&rat(1, 2), &h, &mu).unwrap()).unwrap();
    let after = smultisymbol(&osc).unwrap();
    let v = confluence_type(&before, (rat(1, 2), rat(3, 2)), &after).unwrap();
    assert_eq!(v.kind, ConfluenceKind::Strong);
    assert!(coefficient_distance(&deformed_mathieu_ode(&int(0), &h, &mu).unwrap(), &osc).is_zero());
}

#[test]
fn deformed_lame_tends_to_oscillator() {
    let (k, h, mu) = (int(1), int(1), rat(3, 1));
    let target = lame_oscillator_limit(&h, &mu).unwrap();
    let mut last: Option<Rational> = None;
    for d in [2, 4, 8] {
        let alpha = rat(1, d);
        let c = principal_series_casimir(&alpha, &k, &h);
        let s = deformed_lame_ode_casimir(&alpha, &k, &c, &mu).unwrap();
        assert_eq!(smultisymbol(&s).unwrap().to_string(), "{1/2;1/2;1/2;1}");
        let dist = coefficient_distance(&s, &target);
        if let Some(prev) = &last {
            assert!(dist < *prev, "alpha 1/{d}");
        }
        last = Some(dist);
    }
    assert_eq!(smultisymbol(&target).unwrap().to_string(), "{1/2;2}");
}

#[test]
fn contraction_brackets() {
    for a in [int(0), rat(1, 2), int(1)] {
        assert!(BracketTable::m_alpha(&a).jacobi_defect_exact().is_zero());
        assert!(BracketTable::so21_alpha(&a).jacobi_defect_exact().is_zero());
    }
    let t = BracketTable::m_alpha_f64(0.5);
    let pe = conjugated_bracket(0.5, &AlgebraElement::P, &AlgebraElement::E);
    assert_eq!(t.bracket(&AlgebraElement::P, &AlgebraElement::E), pe);
    assert_eq!(pe, -0.25 * AlgebraElement::Q);
}

fn arb_element() -> impl Strategy<Value = AlgebraElement> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(p, q, e)| AlgebraElement::new(p, q, e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(x in arb_element(), y in arb_element(), z in arb_element(), s in -2.0f64..2.0, alpha in 0.0f64..2.0) {
        let t = BracketTable::m_alpha_f64(alpha);
        prop_assert!((t.bracket(&x, &y) + t.bracket(&y, &x)).norm() < 1e-12);
        let lhs = t.bracket(&(x + s * z), &y);
        let rhs = t.bracket(&x, &y) + s * t.bracket(&z, &y);
        prop_assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn jacobi_on_random_elements(x in arb_element(), y in arb_element(), z in arb_element(), alpha in 0.0f64..2.0) {
        for t in [BracketTable::m_alpha_f64(alpha), BracketTable::so21_alpha(&Rational::from_float(alpha).unwrap())] {
            let j = t.bracket(&t.bracket(&x, &y), &z) + t.bracket(&t.bracket(&y, &z), &x) + t.bracket(&t.bracket(&z, &x), &y);
            prop_assert!(j.norm() < 1e-9);
        }
    }

    #[test]
    fn conjugation_matches_family(x in arb_element(), y in arb_element(), alpha in 0.01f64..3.0) {
        let d = BracketTable::m_alpha_f64(alpha).bracket(&x, &y) - conjugated_bracket(alpha, &x, &y);
        prop_assert!(d.norm() < 1e-9 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn bracket_contracts_to_heisenberg(x in arb_element(), y in arb_element(), alpha in 0.0f64..1.0) {
        let heis = BracketTable::m_alpha(&int(0));
        let d = BracketTable::m_alpha_f64(alpha).bracket(&x, &y) - heis.bracket(&x, &y);
        prop_assert!(d.norm() <= alpha * alpha * x.norm() * y.norm() + 1e-12);
    }
}
