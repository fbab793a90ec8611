//! The polynomial map F(z1,z2) = [[0,z1],[z2,z1 z2]] from the 2-ball into
//! 2x2 matrices. Kernel identity and pulled-back metric scale.

use jtriple::{Element, TripleSystem, C64};
use nalgebra::{Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn image(z: Vector2<C64>) -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), z[0], z[1], z[0] * z[1])
}

fn derivative(z: Vector2<C64>, x: Vector2<C64>) -> Matrix2<C64> {
    Matrix2::new(c(0.0, 0.0), x[0], x[1], x[0] * z[1] + z[0] * x[1])
}

fn flatten(m: Matrix2<C64>) -> Element {
    Element::from_vec(vec![m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]])
}

fn ball_point(rng: &mut ChaCha8Rng, radius: f64) -> Vector2<C64> {
    let v = Vector2::new(c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    v * c(radius * rng.random::<f64>() / v.norm(), 0.0)
}

// <B(Z,Z)^{-1} X | X> = tr((I - Z Z*)^{-1} X (I - Z* Z)^{-1} X*)
fn target_metric(z: Matrix2<C64>, x: Matrix2<C64>) -> f64 {
    let id = Matrix2::identity();
    let left = (id - z * z.adjoint()).try_inverse().unwrap();
    let right = (id - z.adjoint() * z).try_inverse().unwrap();
    (left * x * right * x.adjoint()).trace().re
}

fn ball_metric(z: Vector2<C64>, x: Vector2<C64>) -> f64 {
    let s = 1.0 - z.norm_squared();
    (x.norm_squared() + x.dotc(&z).norm_sqr() / s) / s
}

#[test]
fn kernel_identity() {
    let sys = TripleSystem::parse("rect:2,2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let (z, w) = (ball_point(&mut rng, 0.99), ball_point(&mut rng, 0.99));
        let (fz, fw) = (image(z), image(w));
        let expected = c(1.0, 0.0) - w.dotc(&z);
        let oracle = (Matrix2::identity() - fz * fw.adjoint()).determinant();
        assert!((oracle - expected).norm() < 1e-13);
        assert!((sys.quasi_det(&flatten(fz), &flatten(fw)) - expected).norm() < 1e-12);
    }
}

#[test]
fn pulled_back_metric_is_four_thirds() {
    let sys = TripleSystem::parse("rect:2,2").unwrap();
    // genus of 2x2 matrices and of the 2-ball
    let (p_target, p_ball) = (sys.genus() as f64, 3.0);
    assert_eq!(p_target, 4.0);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let z = ball_point(&mut rng, 0.95);
        let x = ball_point(&mut rng, 1.0);
        let (fz, dx) = (image(z), derivative(z, x));
        let oracle = target_metric(fz, dx);
        let b = sys.bergman(&flatten(fz), &flatten(fz));
        let v = flatten(dx);
        let solved = b.lu().solve(&v).unwrap();
        let core = sys.inner(&solved, &v).re;
        assert!((core - oracle).abs() < 1e-9 * oracle.max(1.0));
        let ratio = p_target * oracle / (p_ball * ball_metric(z, x));
        assert!((ratio - 4.0 / 3.0).abs() < 1e-9, "ratio {ratio}");
    }
}

#[test]
fn disc_restriction_doubles_the_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let t = ball_point(&mut rng, 0.95)[0];
        let z = Vector2::new(c(0.0, 0.0), t);
        let x = Vector2::new(c(0.0, 0.0), c(1.0, 0.0));
        let pulled = 4.0 * target_metric(image(z), derivative(z, x));
        let disc = 2.0 / (1.0 - t.norm_sqr()).powi(2);
        assert!((pulled / disc - 2.0).abs() < 1e-10);
    }
}

#[test]
fn diagonal_disc_also_doubles() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for _ in 0..200 {
        let t = ball_point(&mut rng, 0.95)[0];
        let z = Vector2::new(t * s, t * s);
        let x = Vector2::new(c(s, 0.0), c(s, 0.0));
        let pulled = 4.0 * target_metric(image(z), derivative(z, x));
        let disc = 2.0 / (1.0 - t.norm_sqr()).powi(2);
        assert!((pulled / disc - 2.0).abs() < 1e-10, "{}", pulled / disc);
    }
}
