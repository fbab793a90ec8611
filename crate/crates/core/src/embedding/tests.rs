use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use super::*;
use crate::linalg::{c, ONE, ZERO};
use crate::sampling::{ball_point, rng_for};
use crate::system::max_abs_diff;

fn arc(s: &str) -> Arc<TripleSystem> {
    Arc::new(TripleSystem::parse(s).unwrap())
}

fn kernel_residual(spec: &EmbeddingSpec, pairs: u64) -> f64 {
    let sys = spec.system();
    let d = spec.source_dim();
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let mut rng = rng_for(3, 9, i);
        let z = ball_point(&mut rng, d, 0.95);
        let w = ball_point(&mut rng, d, 0.95);
        let (fz, fw) = (spec.evaluate(&z).unwrap(), spec.evaluate(&w).unwrap());
        let lhs = sys.quasi_det(&fz, &fw);
        worst = worst.max((lhs - (ONE - w.dotc(&z))).norm());
    }
    worst
}

#[test]
fn mok_rect_example_value() {
    let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc("rect:2,2")).unwrap());
    let z = Element::from_vec(vec![c(0.3, 0.0), c(0.2, 0.0), c(0.1, 0.0)]);
    let got = spec.evaluate(&z).unwrap();
    let expect = Element::from_vec(vec![c(0.3, 0.0), c(0.2, 0.0), c(0.1, 0.0), c(0.02 / 1.3, 0.0)]);
    assert!(max_abs_diff(&got, &expect) < 1e-15);
    assert_eq!(spec.evaluate(&Element::zeros(3)).unwrap(), Element::zeros(4));
}

#[test]
fn mok_kernel_identity_every_kind() {
    for s in ["rect:2,3", "rect:1,3", "sym:3", "asym:4", "asym:5", "spin:3", "spin:6", "bicayley", "albert"] {
        let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc(s)).unwrap());
        assert_eq!(spec.source_dim(), spec.system().genus() - 1);
        let r = kernel_residual(&spec, 30);
        assert!(r <= 1e-10, "{s}: {r}");
    }
}

#[test]
fn mok_closed_form_matches_quasi_inverse() {
    for s in ["rect:2,3", "sym:3", "spin:5", "albert"] {
        let m = MokSpec::canonical(arc(s)).unwrap();
        for i in 0..5 {
            let mut rng = rng_for(1, 1, i);
            let z = ball_point(&mut rng, m.lift.ncols(), 0.9);
            let a = m.evaluate(&z).unwrap();
            let b = m.evaluate_via_quasi_inverse(&z).unwrap();
            assert!(max_abs_diff(&a, &b) < 1e-12, "{s}");
        }
    }
}

#[test]
fn spin_mok_coefficient_sign() {
    // Q_v c = -N(v) conj(c) for v in Z^1
    let m = MokSpec::canonical(arc("spin:4")).unwrap();
    let cbar = m.tripotent.element.map(|x| x.conj());
    let z = Element::from_vec(vec![c(0.2, 0.1), c(0.3, -0.2), c(-0.1, 0.4)]);
    let x = &m.lift * &z;
    let u = z[0];
    let v = &x - &m.tripotent.element * u;
    let n = crate::models::spin::norm(v.as_slice());
    let expect = &m.tripotent.element * u + &v - cbar * (n / (ONE + u));
    assert!(max_abs_diff(&m.evaluate(&z).unwrap(), &expect) < 1e-15);
}

#[test]
fn out_of_ball_is_rejected() {
    let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc("spin:3")).unwrap());
    let z = Element::from_vec(vec![ONE, ZERO]);
    assert!(matches!(spec.evaluate(&z), Err(Error::OutsideBall { .. })));
}

#[test]
fn mok_taylor_convention_on_peirce_one() {
    for s in ["rect:2,3", "asym:5", "spin:4", "bicayley"] {
        let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc(s)).unwrap());
        let jet = spec.jet2();
        let mut rng = rng_for(2, 2, 0);
        let mut z = ball_point(&mut rng, spec.source_dim(), 0.8);
        z[0] = ZERO;
        let expect = &jet.first * &z + jet.second_apply(&z, &z);
        assert!(max_abs_diff(&spec.evaluate(&z).unwrap(), &expect) < 1e-14, "{s}");
        let e = spec.distinguished_direction();
        for k in 0..spec.source_dim() {
            let mut x = Element::zeros(spec.source_dim());
            x[k] = ONE;
            assert!(jet.second_apply(&e, &x).norm() < 1e-14, "{s}");
        }
    }
}

#[test]
fn tangent_complement_is_orthogonal() {
    for s in ["rect:2,3", "spin:5", "albert"] {
        let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc(s)).unwrap());
        let sys = spec.system();
        let jet = spec.jet2();
        let mut rng = rng_for(4, 4, 0);
        let z = ball_point(&mut rng, spec.source_dim(), 0.9);
        let rest = spec.evaluate(&z).unwrap() - &jet.first * &z;
        for k in 0..spec.source_dim() {
            let col = jet.first.column(k).into_owned();
            assert!(sys.inner(&rest, &col).norm() < 1e-12, "{s}");
        }
    }
}

#[test]
fn rect_image_shift_has_rank_one() {
    let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc("rect:2,3")).unwrap());
    let shape = spec.system().matrix_shape().unwrap();
    let c0 = spec.mok_tripotent().unwrap();
    for i in 0..5 {
        let mut rng = rng_for(5, 5, i);
        let z = ball_point(&mut rng, spec.source_dim(), 0.9);
        let m = shape.to_matrix((spec.evaluate(&z).unwrap() + &c0).as_slice());
        let sv = m.singular_values();
        let mut sv: Vec<f64> = sv.iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!(sv[1] <= 1e-9, "{sv:?}");
    }
}

#[test]
fn lie_values_and_kernel_identity() {
    for m in 3..=6 {
        let sys = arc(&format!("spin:{m}"));
        let spec = EmbeddingSpec::LieIrrational(LieSpec::canonical(sys.clone(), ONE).unwrap());
        assert_eq!(spec.source_dim(), m - 1);
        let mut z = Element::zeros(m - 1);
        assert_eq!(spec.evaluate(&z).unwrap(), Element::zeros(m));
        z[0] = c(0.6, 0.0);
        let l = LieSpec::canonical(sys.clone(), ONE).unwrap();
        let expect = (&l.e1 + &l.e2) * c(0.6 * FRAC_1_SQRT_2, 0.0)
            + (&l.e2 - &l.e1) * c(FRAC_1_SQRT_2 * (1.0 - 1.36f64.sqrt()), 0.0);
        assert!(max_abs_diff(&spec.evaluate(&z).unwrap(), &expect) < 1e-15);
        assert!(kernel_residual(&spec, 40) <= 1e-10, "spin:{m}");
        let rotated = EmbeddingSpec::LieIrrational(
            LieSpec::new(sys.clone(), sys.k_group_sample(1, m as u64) * &l.e1, C64::from_polar(1.0, 0.7), C64::from_polar(1.0, 2.1)).unwrap(),
        );
        assert!(kernel_residual(&rotated, 40) <= 1e-10, "rotated spin:{m}");
    }
}

#[test]
fn ft_family_kernel_identity_and_limit() {
    let sys = arc("spin:4");
    for t in [0.05, 0.1, 0.2, 0.5, 0.9] {
        let spec = EmbeddingSpec::FtFamily(FtSpec::new(sys.clone(), t).unwrap());
        assert!(kernel_residual(&spec, 40) <= 1e-10, "t={t}");
    }
    assert!(FtSpec::new(sys.clone(), 0.0).is_err());
    assert!(FtSpec::new(sys.clone(), 1.0).is_err());
    // F_0(z) = -G_c(-z)
    let f0 = FtSpec::limit(sys.clone()).unwrap();
    let mok = MokSpec::canonical(sys.clone()).unwrap();
    for i in 0..5 {
        let mut rng = rng_for(6, 6, i);
        let z = ball_point(&mut rng, 3, 0.9);
        let a = f0.evaluate(&z).unwrap();
        let b = -mok.evaluate(&(-&z)).unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-14);
    }
}

#[test]
fn ft_at_half_angle_is_a_reparametrized_lie_map() {
    let sys = arc("spin:5");
    let ft = EmbeddingSpec::FtFamily(FtSpec::new(sys.clone(), FRAC_1_SQRT_2).unwrap());
    let c1 = crate::grid::canonical_frame(&sys).elements[0].clone();
    let lie = EmbeddingSpec::LieIrrational(LieSpec::new(sys.clone(), c1, -ONE, ONE).unwrap()).rotate(-ONE).unwrap();
    for i in 0..5 {
        let mut rng = rng_for(7, 7, i);
        let z = ball_point(&mut rng, 4, 0.9);
        assert!(max_abs_diff(&ft.evaluate(&z).unwrap(), &lie.evaluate(&z).unwrap()) < 1e-13);
    }
}

#[test]
fn closed_form_jets_match_numeric() {
    let specs = vec![
        EmbeddingSpec::Mok(MokSpec::canonical(arc("rect:2,3")).unwrap()),
        EmbeddingSpec::Mok(MokSpec::canonical(arc("albert")).unwrap()),
        EmbeddingSpec::LieIrrational(LieSpec::canonical(arc("spin:4"), C64::from_polar(1.0, 0.4)).unwrap()),
        EmbeddingSpec::FtFamily(FtSpec::new(arc("spin:3"), 0.3).unwrap()),
    ];
    for spec in specs {
        let exact = spec.jet2();
        let numeric = numeric_jet2(&spec, 1e-3).unwrap();
        assert!(exact.max_diff(&numeric) <= 1e-6, "{}: {}", spec.variant_name(), exact.max_diff(&numeric));
    }
}

#[test]
fn numeric_jet_edge_cases() {
    let zero = numeric_jet2_of(|_| Ok(Element::zeros(2)), 2, 3, 1e-3).unwrap();
    assert!(zero.first.norm() == 0.0 && zero.second.iter().all(|s| s.norm() == 0.0));
    let spec = EmbeddingSpec::Mok(MokSpec::canonical(arc("spin:3")).unwrap());
    assert!(numeric_jet2(&spec, 0.1).is_err());
    assert!(numeric_jet2(&spec, 1e-7).is_err());
}

#[test]
fn reparametrization_rules() {
    let sys = arc("rect:2,3");
    let base = EmbeddingSpec::Mok(MokSpec::canonical(sys.clone()).unwrap());
    let d = base.source_dim();
    let same = base.clone().reparametrize(LinearMap::identity(6, 6), LinearMap::identity(d, d)).unwrap();
    let mut rng = rng_for(8, 8, 0);
    let z = ball_point(&mut rng, d, 0.9);
    assert_eq!(same.evaluate(&z).unwrap(), base.evaluate(&z).unwrap());

    let k = sys.k_group_sample(3, 0);
    let u = crate::sampling::random_unitary(&mut rng, d);
    let re = base.clone().reparametrize(k.clone(), u.clone()).unwrap();
    let expect = &k * base.evaluate(&(&u * &z)).unwrap();
    assert!(max_abs_diff(&re.evaluate(&z).unwrap(), &expect) < 1e-14);
    assert!(kernel_residual(&re, 20) <= 1e-10);
    let kc = re.mok_tripotent().unwrap();
    assert!(sys.is_tripotent(&kc, 1e-10).rank == 1);

    // tau-rotation scales the quadratic term by tau
    let tau = C64::from_polar(1.0, 1.3);
    let rot = base.clone().rotate(tau).unwrap();
    let (j0, j1) = (base.jet2(), rot.jet2());
    for (a, b) in j0.second.iter().zip(&j1.second) {
        assert!(max_abs_diff(&(a * tau), b) < 1e-14);
    }

    let bad_k = LinearMap::identity(6, 6) * c(2.0, 0.0);
    assert!(matches!(base.clone().reparametrize(bad_k, LinearMap::identity(d, d)), Err(Error::NotAutomorphism { .. })));
}

#[test]
fn json_roundtrip() {
    let sys = arc("spin:4");
    let specs = vec![
        EmbeddingSpec::Mok(MokSpec::canonical(arc("rect:2,2")).unwrap()),
        EmbeddingSpec::LieIrrational(LieSpec::canonical(sys.clone(), C64::from_polar(1.0, 0.3)).unwrap()),
        EmbeddingSpec::FtFamily(FtSpec::new(sys.clone(), 0.1).unwrap()),
        EmbeddingSpec::Mok(MokSpec::canonical(sys.clone()).unwrap())
            .reparametrize(sys.k_group_sample(1, 1), LinearMap::identity(3, 3))
            .unwrap(),
    ];
    for spec in specs {
        let text = spec.to_json();
        let back = EmbeddingSpec::from_json(&text).unwrap();
        let mut rng = rng_for(9, 9, 0);
        let z = ball_point(&mut rng, spec.source_dim(), 0.9);
        assert!(max_abs_diff(&spec.evaluate(&z).unwrap(), &back.evaluate(&z).unwrap()) < 1e-14, "{text}");
    }
    assert!(matches!(EmbeddingSpec::from_json("{\"variant\": \"mok\""), Err(Error::MalformedSpec(_))));
    assert!(matches!(
        EmbeddingSpec::from_json("{\"variant\": \"mok\", \"system\": \"spin:4\", \"extra\": 1}"),
        Err(Error::MalformedSpec(_))
    ));
}
