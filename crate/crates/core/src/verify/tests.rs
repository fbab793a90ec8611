use std::sync::Arc;

use num_rational::Ratio;
use proptest::prelude::*;

use super::*;
use crate::embedding::{EmbeddingSpec, FtSpec, LieSpec, MokSpec};
use crate::error::Error;
use crate::linalg::{Element, LinearMap, C64, ONE};
use crate::sampling::{complex_normal_vector, rng_for};
use crate::system::TripleSystem;

fn arc(s: &str) -> Arc<TripleSystem> {
    Arc::new(TripleSystem::parse(s).unwrap())
}

fn cfg(n: usize) -> SampleConfig {
    SampleConfig::new(11, n, 0.5, 1e-9).unwrap()
}

fn mok(s: &str) -> EmbeddingSpec {
    EmbeddingSpec::Mok(MokSpec::canonical(arc(s)).unwrap())
}

fn lie(s: &str) -> EmbeddingSpec {
    EmbeddingSpec::LieIrrational(LieSpec::canonical(arc(s), ONE).unwrap())
}

#[test]
fn config_validation() {
    assert!(SampleConfig::new(0, 0, 0.5, 1e-9).is_err());
    assert!(SampleConfig::new(0, 10, 1.0, 1e-9).is_err());
    assert!(SampleConfig::new(0, 10, 0.0, 1e-9).is_err());
    assert!(SampleConfig::new(0, 10, 0.5, -1.0).is_err());
    assert!(SampleConfig::new(0, 10, 0.5, f64::NAN).is_err());
    assert!(SampleConfig::new(0, 10, 0.5, 1e-9).is_ok());
}

#[test]
fn identities_hold_on_every_family() {
    let systems = ["rect:2,3", "rect:1,1", "sym:2", "sym:3", "asym:4", "asym:5", "spin:3", "spin:6", "bicayley", "albert"];
    for s in systems {
        let sys = TripleSystem::parse(s).unwrap();
        for id in Identity::ALL {
            if id.applicable(&sys).is_err() {
                continue;
            }
            let r = run_identity_suite(&sys, id, &cfg(25)).unwrap();
            assert!(r.passed(), "{}", r.text_line());
            assert!(r.max_residual <= 1e-12, "{}", r.text_line());
        }
    }
}

#[test]
fn fk_rank2_is_rejected_off_rank_two() {
    for s in ["rect:1,3", "albert", "sym:3", "rect:3,3"] {
        let sys = TripleSystem::parse(s).unwrap();
        let err = run_identity_suite(&sys, Identity::FkRank2, &cfg(5)).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)), "{s}: {err}");
    }
    assert!(Rank2Kernels::new(&TripleSystem::parse("albert").unwrap()).is_err());
}

#[test]
fn identity_names_roundtrip() {
    for id in Identity::ALL {
        assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        assert_eq!(id.to_string(), id.name());
    }
    assert!("no-such-identity".parse::<Identity>().is_err());
}

#[test]
fn domain_criterion_includes_near_boundary_cases() {
    let sys = TripleSystem::parse("spin:4").unwrap();
    let r = run_identity_suite(&sys, Identity::DomainCriterion, &cfg(30)).unwrap();
    assert!(r.passed());
    assert_eq!(r.details["near_boundary_cases"], 3.0);
}

#[test]
fn covariance_with_identity_map_is_exact() {
    let sys = TripleSystem::parse("rect:2,3").unwrap();
    let id = LinearMap::identity(sys.dim(), sys.dim());
    let mut rng = rng_for(3, 0, 0);
    let u = complex_normal_vector(&mut rng, sys.dim());
    let v = complex_normal_vector(&mut rng, sys.dim());
    assert_eq!(identities::covariance_residual(&sys, &id, &u, &v).unwrap(), 0.0);
}

#[test]
fn covariance_detects_a_non_automorphism() {
    let sys = TripleSystem::parse("rect:2,2").unwrap();
    let mut h = LinearMap::identity(sys.dim(), sys.dim());
    h[(0, 0)] = C64::new(2.0, 0.0);
    let mut rng = rng_for(3, 0, 1);
    let u = complex_normal_vector(&mut rng, sys.dim());
    let v = complex_normal_vector(&mut rng, sys.dim());
    assert!(identities::covariance_residual(&sys, &h, &u, &v).unwrap() > 1e-3);
}

#[test]
fn rank2_coefficient_is_exact() {
    for a in 0..12 {
        // independent oracle: C_2 = 1 + a/2, C_3 = (1 + a/2)(1 + a)
        assert_eq!(Rank2Kernels::coefficient(a, 1), Ratio::from_integer(1));
        assert_eq!(Rank2Kernels::coefficient(a, 2), Ratio::new(2 + a as i64, 2));
        assert_eq!(Rank2Kernels::coefficient(a, 3), Ratio::new((2 + a as i64) * (1 + a as i64), 2));
    }
}

#[test]
fn rank2_quasi_det_on_the_disc_factor() {
    // rect:2,2 (a = 2): Delta(z, w) = det(I - z w^*)
    let sys = TripleSystem::parse("rect:2,2").unwrap();
    let k = Rank2Kernels::new(&sys).unwrap();
    let z = Element::from_vec(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.0), C64::new(0.0, 0.4), C64::new(0.1, -0.1)]);
    let w = Element::from_vec(vec![C64::new(-0.1, 0.2), C64::new(0.3, 0.3), C64::new(0.2, 0.0), C64::new(0.0, 0.5)]);
    let m = |v: &Element, conj: bool| {
        let f = |x: C64| if conj { x.conj() } else { x };
        nalgebra::Matrix2::new(f(v[0]), f(v[1]), f(v[2]), f(v[3]))
    };
    let expected = (nalgebra::Matrix2::identity() - m(&z, false) * m(&w, true).transpose()).determinant();
    assert!((k.quasi_det(&z, &w) - expected).norm() < 1e-14);
}

#[test]
fn corrupted_mok_fails_isometry() {
    let sys = arc("rect:2,2");
    let good = MokSpec::canonical(sys.clone()).unwrap();
    let bad = MokSpec::new_unchecked(sys, good.tripotent.clone(), &good.lift * C64::new(1.01, 0.0));
    let good_r = check_embedding_isometry(&EmbeddingSpec::Mok(good), &cfg(30)).unwrap();
    let bad_r = check_embedding_isometry(&EmbeddingSpec::Mok(bad), &cfg(30)).unwrap();
    assert!(good_r.passed());
    assert_eq!(bad_r.verdict, Verdict::Fail);
    assert!(bad_r.max_residual > 1e-3);
    assert!(!bad_r.witnesses.is_empty() && bad_r.witnesses.len() <= 3);
}

#[test]
fn isometry_and_metric_pullback_pass() {
    for spec in [mok("rect:2,3"), mok("albert"), lie("spin:4"), EmbeddingSpec::FtFamily(FtSpec::new(arc("spin:5"), 0.3).unwrap())] {
        let r = check_embedding_isometry(&spec, &cfg(30)).unwrap();
        assert!(r.passed(), "{}", r.text_line());
        let r = check_metric_pullback(&spec, &cfg(4)).unwrap();
        assert!(r.passed(), "{}", r.text_line());
        assert!(r.tol >= NUMERIC_TOL_FLOOR);
    }
}

#[test]
fn metric_pullback_detects_scaling() {
    let sys = arc("spin:3");
    let good = MokSpec::canonical(sys.clone()).unwrap();
    let bad = MokSpec::new_unchecked(sys, good.tripotent.clone(), &good.lift * C64::new(0.9, 0.0));
    let r = check_metric_pullback(&EmbeddingSpec::Mok(bad), &cfg(3)).unwrap();
    assert!(!r.passed());
}

#[test]
fn classifier_labels_mok_and_lie() {
    let c = classify_embedding(&mok("rect:2,3")).unwrap();
    assert_eq!(c.to_string(), "MOK, tripotent=E11");
    assert_eq!(c.tripotent_rank, Some(1));
    assert_eq!(classify_embedding(&mok("spin:5")).unwrap().to_string(), "MOK, tripotent=e1+");
    assert_eq!(classify_embedding(&mok("albert")).unwrap().to_string(), "MOK, tripotent=[1]");
    for m in [3, 4, 7] {
        let c = classify_embedding(&lie(&format!("spin:{m}"))).unwrap();
        assert_eq!(c.class, EmbeddingClass::NonMok);
        assert_eq!(c.to_string(), "NONMOK, xi_rank=2");
        assert!(c.sff_min >= 0.1);
    }
}

#[test]
fn classification_is_invariant_under_reparametrization() {
    let sys = arc("spin:4");
    let mut rng = rng_for(5, 0, 0);
    let k = sys.k_group_sample(5, 0);
    let u = crate::sampling::random_unitary(&mut rng, 3);
    let spec = mok("spin:4").reparametrize(k.clone(), u.clone()).unwrap();
    let c = classify_embedding(&spec).unwrap();
    assert_eq!(c.class, EmbeddingClass::Mok);
    assert_eq!(c.tripotent_rank, Some(1));
    let l = lie("spin:4").reparametrize(k, u).unwrap();
    assert_eq!(classify_embedding(&l).unwrap().class, EmbeddingClass::NonMok);
    let rotated = mok("rect:2,2").rotate(C64::from_polar(1.0, 0.7)).unwrap();
    assert_eq!(classify_embedding(&rotated).unwrap().class, EmbeddingClass::Mok);
}

#[test]
fn ft_family_is_never_mok() {
    for t in [0.05, 0.5, 0.95] {
        let spec = EmbeddingSpec::FtFamily(FtSpec::new(arc("spin:4"), t).unwrap());
        assert_eq!(classify_embedding(&spec).unwrap().class, EmbeddingClass::NonMok);
    }
}

#[test]
fn sff_dichotomy_on_spin() {
    // Mok maps have a flat direction, Lie maps are bounded away from it
    for m in [3, 4, 5] {
        let s = format!("spin:{m}");
        let mok_reports = check_second_fundamental_form(&mok(&s), &cfg(20)).unwrap();
        let flat = mok_reports.iter().find(|r| r.identity == "sff-distinguished").unwrap();
        assert!(flat.max_residual <= 1e-12);
        assert!(mok_reports.iter().all(|r| r.passed()));
        assert!(mok_reports.iter().any(|r| r.identity == "polarized-determinant"));

        let lie_reports = check_second_fundamental_form(&lie(&s), &cfg(20)).unwrap();
        let bent = lie_reports.iter().find(|r| r.identity == "sff-distinguished").unwrap();
        assert!(bent.max_residual >= 0.1);
        let curv = lie_reports.iter().find(|r| r.identity == "curvature-relation").unwrap();
        assert!(curv.passed());
        assert!(!lie_reports.iter().any(|r| r.identity == "peirce-zero-quartic"));
    }
}

#[test]
fn sff_and_curvature_on_other_kinds() {
    for s in ["rect:2,3", "sym:3", "asym:5", "bicayley", "albert"] {
        for r in check_second_fundamental_form(&mok(s), &cfg(15)).unwrap() {
            assert!(r.passed(), "{}", r.text_line());
        }
    }
}

#[test]
fn presentations_hold() {
    for s in ["rect:3,3", "rect:2,4", "sym:3", "asym:4", "asym:5", "asym:6", "spin:4", "spin:5", "bicayley", "albert"] {
        let sys = TripleSystem::parse(s).unwrap();
        let r = check_presentation_relations(&sys, &cfg(20)).unwrap();
        assert!(r.passed(), "{}", r.text_line());
    }
}

#[test]
fn bicayley_matrix_determinant() {
    let sys = TripleSystem::parse("bicayley").unwrap();
    let g = crate::grid::grid(&sys);
    let idx = crate::models::bicayley::bicayley_index;
    for i in 0..10 {
        let mut rng = rng_for(8, 0, i);
        let v = complex_normal_vector(&mut rng, sys.dim());
        let c = |k: usize, plus: bool| sys.inner(&v, &g.elements[idx(k, plus)]);
        // [[0, a^T], [a, cross(b)]] has determinant -(a.b)^2
        let dot: C64 = (2..=4).map(|k| c(k, false) * c(k, true)).sum();
        let det = bicayley_matrix(&sys, &v).determinant();
        assert!((det + dot * dot).norm() <= 1e-10 * (1.0 + dot.norm_sqr()), "{det} vs {}", -dot * dot);
    }
}

#[test]
fn graph_variety_separates_graph_from_probes() {
    for spec in [mok("spin:3"), lie("spin:4"), EmbeddingSpec::FtFamily(FtSpec::new(arc("spin:5"), 0.4).unwrap())] {
        let r = graph_variety_spin(&spec, &cfg(40)).unwrap();
        assert!(r.passed(), "{} {:?}", r.text_line(), r.details);
        assert!(r.details["rejection_ratio"] >= graph::REJECTION_FACTOR);
        assert_eq!(r.details["span_rank"] as usize, spec.system().dim());
        let gv = GraphVariety::build(&spec, &cfg(40)).unwrap();
        let u = &gv.unitary;
        assert!((u.adjoint() * u - LinearMap::identity(u.ncols(), u.ncols())).norm() < 1e-10);
    }
}

#[test]
fn graph_variety_needs_spin() {
    let err = graph_variety_spin(&mok("rect:2,2"), &cfg(10)).unwrap_err();
    assert!(matches!(err, Error::NotApplicable(_)));
}

#[test]
fn graph_calibration_grows_with_distance() {
    let spec = lie("spin:4");
    let points = graph_calibration(&spec, &cfg(20), &[1e-4, 1e-3, 1e-2, 1e-1]).unwrap();
    assert!(points.windows(2).all(|w| w[1].1 > w[0].1));
    assert!(points[0].1 > 1e-6);
}

#[test]
fn rigidity_distances_decrease() {
    let sys = arc("spin:4");
    let c = SampleConfig::new(1, 60, 0.9, 1e-9).unwrap();
    let r = rigidity_convergence(&sys, &[0.4, 0.2, 0.1, 0.05], &c).unwrap();
    assert!(r.passed(), "{} {:?}", r.text_line(), r.details);
    assert!(r.details["d[0.05]"] < r.details["d[0.4]"]);
    assert!(r.details.contains_key("quarter_ratio"));
    let single = rigidity_convergence(&sys, &[0.3], &c).unwrap();
    assert!(single.passed());
    assert!(!single.details.contains_key("quarter_ratio"));
}

#[test]
fn rigidity_rejects_bad_t_lists() {
    let sys = arc("spin:3");
    let c = cfg(5);
    assert!(rigidity_convergence(&sys, &[], &c).is_err());
    assert!(rigidity_convergence(&sys, &[0.1, 0.2], &c).is_err());
    assert!(rigidity_convergence(&sys, &[1.0], &c).is_err());
    assert!(rigidity_convergence(&arc("rect:2,2"), &[0.5], &c).is_err());
}

#[test]
fn sup_distance_vanishes_with_t() {
    let sys = arc("spin:3");
    let c = SampleConfig::new(2, 50, 0.9, 1e-9).unwrap();
    let a = sup_distance(&sys, 0.01, &c).unwrap();
    let b = sup_distance(&sys, 0.5, &c).unwrap();
    assert!(a < b && a < 0.1);
}

#[test]
fn report_serialization_roundtrip() {
    let sys = TripleSystem::parse("spin:4").unwrap();
    let r = run_identity_suite(&sys, Identity::DomainCriterion, &cfg(12)).unwrap();
    let back = VerificationReport::from_json(&r.to_json()).unwrap();
    assert_eq!(back.identity, r.identity);
    assert_eq!(back.max_residual, r.max_residual);
    assert_eq!(back.details, r.details);
    assert_eq!(back.verdict, r.verdict);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["identity", "system", "n", "seed", "tol", "max_residual", "mean_residual", "verdict", "witnesses"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"], "pass");
    let header = VerificationReport::csv_header().split(',').count();
    assert_eq!(r.csv_row().split(',').count(), header);
    assert!(VerificationReport::from_json("{not json").is_err());
}

#[test]
fn reports_without_details_omit_the_field() {
    let sys = TripleSystem::parse("rect:2,2").unwrap();
    let r = run_identity_suite(&sys, Identity::DetGenus, &cfg(3)).unwrap();
    assert!(!r.to_json().contains("details"));
}

#[test]
fn suites_are_deterministic() {
    let sys = TripleSystem::parse("bicayley").unwrap();
    let a = run_identity_suite(&sys, Identity::BergmanFactorization, &cfg(10)).unwrap();
    let b = run_identity_suite(&sys, Identity::BergmanFactorization, &cfg(10)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let c = run_identity_suite(&sys, Identity::BergmanFactorization, &SampleConfig { seed: 12, ..cfg(10) }).unwrap();
    assert_ne!(a.mean_residual, c.mean_residual);
}

#[test]
fn accumulator_handles_non_finite_residuals() {
    let mut acc = Accumulator::new(1e-9);
    acc.push(0, 1e-12, Vec::new);
    acc.push(1, f64::NAN, Vec::new);
    let r = acc.finish("x", "rect:1,1".into(), 0);
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.max_residual, f64::MAX);
    assert_eq!(r.witnesses[0].sample, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identities_pass_for_any_seed(seed in any::<u64>(), which in 0usize..4) {
        let s = ["rect:2,2", "asym:5", "spin:5", "bicayley"][which];
        let sys = TripleSystem::parse(s).unwrap();
        for id in [Identity::AdditionJp, Identity::QuasiDetTransform, Identity::QuasiInvInvolution] {
            let r = run_identity_suite(&sys, id, &SampleConfig { seed, ..cfg(4) }).unwrap();
            prop_assert!(r.passed(), "{}", r.text_line());
        }
    }

    #[test]
    fn mok_isometry_for_any_seed(seed in any::<u64>(), which in 0usize..3) {
        let spec = mok(["rect:2,3", "sym:2", "spin:4"][which]);
        let r = check_embedding_isometry(&spec, &SampleConfig { seed, ..cfg(6) }).unwrap();
        prop_assert!(r.passed(), "{}", r.text_line());
    }
}
