mod common;

use acp_core::algebra::{aid_defect, banach_norm, membership};
use acp_core::battery;
use acp_core::funcspace::{PowLogTerm, TermSum};
use acp_core::multipliers::{growth_fit, necessary_check, sufficient_check, verdict, EngineConfig, Verdict};
use acp_core::quadrature::lp_norm_full;
use acp_core::{parse, AsymptoticOrder, Exponent, PiecewiseFunction};
use proptest::prelude::*;

fn exp(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

fn term_strategy() -> impl Strategy<Value = (f64, f64, f64)> {
    (
        prop_oneof![-2.0..-0.25f64, 0.25..2.0f64],
        -0.4..2.5f64,
        -1.5..1.5f64,
    )
}

fn function_strategy() -> impl Strategy<Value = PiecewiseFunction> {
    prop::collection::vec(term_strategy(), 1..4).prop_map(|ts| {
        PiecewiseFunction::single(TermSum::from_terms(
            ts.into_iter().map(|(c, a, b)| PowLogTerm::new(c, a, b)).collect(),
        ))
    })
}

fn p_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(4.0)]
}

fn close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * (1.0 + x.abs().max(y.abs()))
}

fn sample_points() -> impl Iterator<Item = f64> {
    (1..=12).map(|k| 0.9f64.powi(k * 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_rule(f in function_strategy(), g in function_strategy()) {
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        for t in sample_points() {
            prop_assert!(close(lhs.value(t), rhs.value(t), 1e-10), "t = {t}");
        }
    }

    #[test]
    fn term_normalisation_is_idempotent(ts in prop::collection::vec(term_strategy(), 1..6)) {
        let once = TermSum::from_terms(ts.iter().map(|&(c, a, b)| PowLogTerm::new(c, a, b)).collect());
        let twice = TermSum::from_terms(once.terms().to_vec());
        prop_assert_eq!(&once, &twice);
        for t in sample_points() {
            let direct: f64 = ts.iter().map(|&(c, a, b)| c * t.powf(a) * (1.0 - t.ln()).powf(b)).sum();
            prop_assert!(close(once.eval(t), direct, 1e-12));
        }
    }

    #[test]
    fn display_round_trips(f in function_strategy()) {
        let back = parse(&f.to_string()).unwrap();
        for t in sample_points() {
            prop_assert!(close(f.value(t), back.value(t), 1e-12));
        }
    }

    #[test]
    fn dominant_order_is_the_largest_term_far_out(ts in prop::collection::vec(term_strategy(), 1..4)) {
        let f = PiecewiseFunction::single(TermSum::from_terms(
            ts.iter().map(|&(c, a, b)| PowLogTerm::new(c, a, b)).collect(),
        ));
        // log |c t^a L^b| at t = e^-T
        let big_t = 1e8f64;
        let log_size = |&(c, a, b): &(f64, f64, f64)| c.abs().ln() - a * big_t + b * (1.0 + big_t).ln();
        let top = ts.iter().copied().max_by(|x, y| log_size(x).total_cmp(&log_size(y))).unwrap();
        match f.dominant_order() {
            AsymptoticOrder::PowLog { a, b, .. } => {
                prop_assert!((a - top.1).abs() < 1e-12 && (b - top.2).abs() < 1e-12, "{a}, {b} vs {top:?}");
            }
            AsymptoticOrder::Zero => prop_assert!(false, "nonzero sum reported as zero"),
        }
    }

    #[test]
    fn norm_axioms(f in function_strategy(), g in function_strategy(), c in -3.0..3.0f64, p in p_strategy()) {
        let p = exp(p);
        let nf = lp_norm_full(&f, p).value();
        let ng = lp_norm_full(&g, p).value();
        prop_assume!(nf.is_finite() && ng.is_finite());
        let sum = lp_norm_full(&f.add(&g), p).value();
        prop_assert!(sum <= (nf + ng) * (1.0 + 1e-9) + 1e-12);
        let scaled = lp_norm_full(&f.scale(c), p).value();
        prop_assert!(close(scaled, c.abs() * nf, 1e-9));
        prop_assert!(nf >= 0.0);
    }

    #[test]
    fn membership_shrinks_as_p_grows(f in function_strategy()) {
        let ps = [1.0, 1.5, 2.0, 4.0, f64::INFINITY];
        let flags: Vec<bool> = ps.iter().map(|&p| membership(&f, exp(p)).is_member).collect();
        for w in flags.windows(2) {
            prop_assert!(w[0] || !w[1], "{flags:?}");
        }
    }

    #[test]
    fn sup_norm_below_banach_norm(f in function_strategy(), p in p_strategy()) {
        let p = exp(p);
        prop_assume!(membership(&f, p).is_member);
        let sup = lp_norm_full(&f, Exponent::infinity()).value();
        prop_assert!(sup <= banach_norm(&f, p).unwrap() * (1.0 + 1e-9));
    }

    #[test]
    fn aid_defect_stays_below_its_bound(f in function_strategy(), p in p_strategy()) {
        let p = exp(p);
        prop_assume!(membership(&f, p).is_member);
        let mut bounds = Vec::new();
        for k in 1..=12 {
            let rep = aid_defect(&f, p, 2f64.powi(-k)).unwrap();
            prop_assert!(rep.defect <= rep.bound * (1.0 + 1e-9) + 1e-14);
            bounds.push(rep.bound);
        }
        for w in bounds.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-9) + 1e-14);
        }
    }

    #[test]
    fn verdict_ignores_nonzero_scaling(c in prop_oneof![-5.0..-0.1f64, 0.1..5.0f64], idx in 0usize..25) {
        let (_, m) = &battery::battery()[idx];
        for (p, r) in [(2.0, 4.0), (1.5, 3.0), (2.0, 2.0), (3.0, 2.0)] {
            let a = verdict(m, exp(p), exp(r)).unwrap();
            let b = verdict(&m.scale(c), exp(p), exp(r)).unwrap();
            prop_assert_eq!((a.verdict, a.route), (b.verdict, b.route));
        }
    }
}

#[test]
fn growth_fit_matches_brute_force_growth_on_the_battery() {
    let config = EngineConfig::default();
    let (jmin, jmax) = config.window;
    for p in [1.0, 1.5, 2.0, 4.0] {
        for (name, m) in battery::battery() {
            let m_prime = m.derivative();
            let fit = growth_fit(&m_prime, exp(p), &config);
            // G(2^-j) rebuilt from Simpson block masses of |m'|^p
            let masses = common::brute_block_masses(&|t| m_prime.value(t), p, jmax as usize);
            let mut acc = 0.0;
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for (j, w) in masses.iter().enumerate() {
                acc += w;
                let j = j as u32 + 1;
                if j >= jmin && acc > 0.0 {
                    xs.push(j as f64 * std::f64::consts::LN_2);
                    ys.push(acc.powf(1.0 / p).ln());
                }
            }
            if xs.len() < 2 {
                continue;
            }
            let (_, slope) = acp_core::fit::linear(&xs, &ys);
            assert!(
                (fit.slope - slope).abs() <= 0.02,
                "{name} p = {p}: fitted {} vs brute force {slope}",
                fit.slope
            );
        }
    }
}

#[test]
fn sufficient_implies_necessary_on_the_battery() {
    for (p, r) in [(1.5, 3.0), (2.0, 4.0), (2.0, 3.0), (3.0, f64::INFINITY)] {
        for (name, m) in battery::battery() {
            let suf = sufficient_check(&m, exp(p), exp(r)).unwrap();
            if suf.pass {
                assert!(necessary_check(&m, exp(p), exp(r)).pass, "{name} p = {p}, r = {r}");
            }
        }
    }
}

#[test]
fn zero_is_a_multiplier_for_every_pair() {
    let zero = PiecewiseFunction::zero();
    for p in [1.0, 2.0, 4.0, f64::INFINITY] {
        for r in [1.0, 1.5, 3.0, f64::INFINITY] {
            assert_eq!(verdict(&zero, exp(p), exp(r)).unwrap().verdict, Verdict::Multiplier);
        }
    }
}

#[test]
fn random_classification_agrees_with_block_masses() {
    let mut rng = common::rng();
    for _ in 0..20 {
        let rf = common::random_function(&mut rng);
        let f = rf.function();
        let masses = common::brute_block_masses(&|t| rf.eval(t), rf.p, 30);
        let finite = lp_norm_full(&f, exp(rf.p)).is_finite();
        let slope = common::log_slope(&masses, 15, 30);
        assert_eq!(finite, slope < 0.0, "{f} p = {}", rf.p);
    }
}
