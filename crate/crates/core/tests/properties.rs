use proptest::prelude::*;
use tripencil::dense::{pencil_matrix, DenseMatrix};
use tripencil::giep;
use tripencil::io::{InstanceFile, PencilFile, ResultFile};
use tripencil::oracle::{self, GeneratedInstance, GeneratorConfig};
use tripencil::recurrence::{self, Side};
use tripencil::resolvent::{self, ComponentsAt, MFunctionTable};
use tripencil::{Complex64, Pencil};

fn rel(x: Complex64, t: Complex64) -> f64 {
    (x - t).norm() / t.norm().max(1.0)
}

fn max_rel(x: &[Complex64], t: &[Complex64]) -> f64 {
    x.iter().zip(t).map(|(x, t)| rel(*x, *t)).fold(0.0, f64::max)
}

fn pencil_strategy() -> impl Strategy<Value = Pencil> {
    (1usize..=7).prop_flat_map(|n| {
        let nonzero = prop_oneof![-2.0..-0.3f64, 0.3..2.0f64];
        (
            prop::collection::vec(-2.0..2.0f64, n + 1),
            prop::collection::vec(nonzero, n),
            prop::collection::vec(-2.0..2.0f64, n + 1),
            prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n),
        )
            .prop_map(|(c, d, a, b)| {
                let b = b.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                Pencil::from_parts(c, d, a, b).unwrap()
            })
    })
}

fn generated() -> impl Strategy<Value = GeneratedInstance> {
    (2usize..=8, any::<u64>(), any::<prop::sample::Index>()).prop_map(|(n, seed, k)| {
        let k = 1 + k.index(n - 1);
        oracle::generate_instance(&GeneratorConfig::new(n, k, seed)).unwrap()
    })
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

/// A real point at least one unit away from the real spectrum.
fn outside_point(p: &Pencil, offset: f64, above: bool) -> Complex64 {
    let ev = oracle::real_eigenvalues(p).unwrap();
    let x = if above {
        ev[ev.len() - 1] + 1.0 + offset
    } else {
        ev[0] - 1.0 - offset
    };
    Complex64::new(x, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn liouville_ostrogradsky_holds(p in pencil_strategy(), z in complex()) {
        for m in 0..=p.n() {
            prop_assert!(recurrence::liouville_ostrogradsky_residual(&p, m, z).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn determinant_matches_dense(p in pencil_strategy(), z in complex()) {
        let direct = recurrence::eval_p(&p, p.n() + 1, z).unwrap();
        let dense = oracle::dense_determinant(&p, z).unwrap();
        prop_assert!((direct - dense).norm() <= 1e-9 * dense.norm().max(1e-300));
    }

    #[test]
    fn coefficients_agree_with_recurrence(p in pencil_strategy(), z in complex()) {
        for m in 0..=p.n() + 1 {
            let poly = recurrence::poly_p(&p, m).unwrap();
            let v = recurrence::eval_p(&p, m, z).unwrap();
            prop_assert!((poly.eval(z) - v).norm() <= 1e-10 * poly.magnitude_at(z).max(1.0));
        }
    }

    #[test]
    fn real_points_give_real_values(p in pencil_strategy(), x in -3.0..3.0f64) {
        let z = Complex64::new(x, 0.0);
        for m in 0..=p.n() + 1 {
            let poly = recurrence::poly_p(&p, m).unwrap();
            let v = recurrence::eval_p(&p, m, z).unwrap();
            prop_assert!(v.im.abs() <= 1e-12 * poly.magnitude_at(z).max(1.0));
        }
        let right = recurrence::recurrence_components(&p, z, Side::Right).unwrap();
        let left = recurrence::recurrence_components(&p, z, Side::Left).unwrap();
        for (r, l) in right.iter().zip(&left) {
            prop_assert!((r.conj() - l).norm() <= 1e-12 * r.norm().max(1.0));
        }
    }

    #[test]
    fn resolvent_inverts_the_pencil(g in generated(), offset in 0.0..2.0f64, above: bool) {
        let p = &g.truth;
        let w = outside_point(p, offset, above);
        let r = resolvent::resolvent_matrix(p, w).unwrap();
        let prod = pencil_matrix(p, w).matmul(&r).unwrap();
        prop_assert!(prod.max_abs_diff(&DenseMatrix::identity(p.order())) <= 1e-8);
        let dense = oracle::dense_resolvent(p, w).unwrap();
        prop_assert!(r.max_abs_diff(&dense) <= 1e-8 * dense.max_abs().max(1.0));
    }

    #[test]
    fn factors_multiply_back(g in generated(), w in complex()) {
        let p = &g.truth;
        let w = Complex64::new(w.re, if w.im >= 0.0 { w.im + 0.5 } else { w.im - 0.5 });
        let r = resolvent::resolvent_matrix(p, w).unwrap();
        let f = resolvent::ldu_factors(p, w).unwrap();
        prop_assert!(f.product().max_abs_diff(&r) <= 1e-9 * r.max_abs().max(1.0));
        let comps = ComponentsAt::new(p, w).unwrap();
        let diffs = resolvent::m_differences(p, w, &comps).unwrap();
        let table = MFunctionTable::new(p, w).unwrap();
        for (j, d) in diffs.iter().enumerate() {
            prop_assert_eq!(f.diag[j], *d);
            prop_assert!(rel(*d, table.difference(j).unwrap()) <= 1e-8);
        }
    }

    #[test]
    fn trailing_blocks_are_consistent(g in generated(), offset in 0.0..2.0f64, above: bool) {
        let p = &g.truth;
        let n = p.n();
        let w = outside_point(p, offset, above);
        let r = resolvent::resolvent_matrix(p, w).unwrap();
        for k in 1..n {
            let t = resolvent::trailing_inverse(p, k, w).unwrap();
            let block = r.block(k + 1, k + 1, n - k, n - k);
            prop_assert!(t.matmul(&block).unwrap().max_abs_diff(&DenseMatrix::identity(n - k)) <= 1e-8);
        }
    }

    #[test]
    fn real_points_keep_the_resolvent_real(g in generated(), offset in 0.0..2.0f64, above: bool) {
        let p = &g.truth;
        let w = outside_point(p, offset, above);
        let table = MFunctionTable::new(p, w).unwrap();
        for m in &table.values {
            prop_assert!(m.im.abs() <= 1e-10 * m.norm().max(1.0));
        }
        let f = resolvent::ldu_factors(p, w).unwrap();
        for d in &f.diag {
            prop_assert!(d.im.abs() <= 1e-10 * d.norm());
        }
        let r = resolvent::resolvent_matrix(p, w).unwrap();
        prop_assert!(r.max_abs_diff(&r.conj_transpose()) <= 1e-10 * r.max_abs().max(1.0));
    }

    #[test]
    fn both_pipelines_agree(g in generated()) {
        let (truth, k) = (&g.truth, g.instance.k);
        let w = oracle::select_resolvent_point(truth, k).unwrap();
        let table = MFunctionTable::new(truth, w).unwrap();
        let comps = ComponentsAt::new(truth, w).unwrap();
        let m = resolvent::reconstruct_from_m(truth.j(), k, w, &table, &comps, truth.b()[k]).unwrap();
        let pair = giep::solve(&g.instance).unwrap();
        prop_assert!(max_rel(&m.b, &pair.pencil.b()[k + 1..]) <= 1e-7);
        for (x, t) in m.a.iter().zip(&pair.pencil.a()[k + 1..]) {
            prop_assert!((x - t).abs() <= 1e-7 * t.abs().max(1.0));
        }
    }

    #[test]
    fn solve_recovers_the_truth(g in generated()) {
        let r = giep::solve(&g.instance).unwrap();
        let report = oracle::verify(&g.truth, &r).unwrap();
        prop_assert!(report.passed, "{:?}", report);
        prop_assert!(report.max_entry_error <= 1e-8);
        prop_assert!(r.residual_lambda <= 1e-7 && r.residual_mu <= 1e-7);
        for e in &r.b_entries {
            let (gap, conj_gap) = e.closed_form_gaps();
            prop_assert!(gap <= 1e-9 && conj_gap <= 1e-9);
        }
    }

    #[test]
    fn tail_scaling_is_harmless(g in generated(), gamma in complex(), delta in complex()) {
        prop_assume!(gamma.norm() > 0.1 && delta.norm() > 0.1);
        let base = giep::solve(&g.instance).unwrap();
        let mut scaled = g.instance.clone();
        scaled.tail_p.iter_mut().for_each(|x| *x *= gamma);
        scaled.tail_s.iter_mut().for_each(|x| *x *= delta);
        let r = giep::solve(&scaled).unwrap();
        prop_assert!(max_rel(r.pencil.b(), base.pencil.b()) <= 1e-9);
        for (x, t) in r.pencil.a().iter().zip(base.pencil.a()) {
            prop_assert!((x - t).abs() <= 1e-9 * t.abs().max(1.0));
        }
    }

    #[test]
    fn generated_spectra_are_real(g in generated()) {
        let ev = oracle::pencil_eigenvalues(&g.truth).unwrap();
        prop_assert_eq!(ev.len(), g.truth.order());
        prop_assert!(ev.iter().all(|z| z.im.abs() <= 1e-8));
        prop_assert!(oracle::j_is_positive_definite(&g.truth));
    }

    #[test]
    fn files_round_trip(g in generated()) {
        let text = serde_json::to_string(&PencilFile::from(&g.truth)).unwrap();
        let back: PencilFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_pencil().unwrap(), g.truth.clone());

        let text = serde_json::to_string(&InstanceFile::from(&g.instance)).unwrap();
        let back: InstanceFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_instance().unwrap(), g.instance.clone());

        let r = giep::solve(&g.instance).unwrap();
        let text = serde_json::to_string(&ResultFile::from(&r)).unwrap();
        let back: ResultFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_result().unwrap(), r);
    }
}
