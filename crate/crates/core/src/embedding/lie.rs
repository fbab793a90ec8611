//! Rank-2 embeddings of the ball into the Lie ball (spin factors).

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use super::peirce_one_basis;
use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::linalg::{Element, C64, ONE};
use crate::models::spin;
use crate::system::TripleSystem;

const BRANCH_STEPS: usize = 32;

fn require_spin(system: &TripleSystem) -> Result<()> {
    match system.kind() {
        Kind::Spin { .. } => Ok(()),
        k => Err(Error::InvalidArgument(format!("{k} is not a spin factor"))),
    }
}

fn conj(z: &Element) -> Element {
    z.map(|x| x.conj())
}

/// Square root of `radicand(s)` continued from `sqrt(radicand(0)) = 1`
/// along `s` in `[0, 1]`.
pub(crate) fn tracked_sqrt<F: Fn(f64) -> C64>(radicand: F) -> Result<C64> {
    let mut root = ONE;
    for k in 1..=BRANCH_STEPS {
        let r = radicand(k as f64 / BRANCH_STEPS as f64);
        if r.norm() < 1e-14 {
            return Err(Error::BranchCut(format!("radicand vanishes ({r})")));
        }
        let p = r.sqrt();
        let (near, far) = if (p - root).norm() <= (p + root).norm() { (p, -p) } else { (-p, p) };
        // both roots comparably close means the step straddles a branch point
        if (near - root).norm() > 0.5 * (far - root).norm() {
            return Err(Error::BranchCut(format!("ambiguous continuation at radicand {r}")));
        }
        root = near;
    }
    Ok(root)
}

/// Coordinates `(u, v)` of a source point: `u = z_0`, `v` the combination of
/// the `Z^1` basis with the remaining coordinates.
fn split(basis: &[Element], dim: usize, z: &Element) -> (C64, Element) {
    let mut v = Element::zeros(dim);
    for (k, b) in basis.iter().enumerate() {
        v += b * z[k + 1];
    }
    (z[0], v)
}

/// Orthonormal basis of the joint Peirce 1-space of a frame `(e1, e2)`.
fn frame_basis(system: &TripleSystem, e1: &Element) -> Result<Vec<Element>> {
    let t = system.tripotent(e1)?;
    if t.rank != 1 {
        return Err(Error::InvalidArgument("frame element must be a minimal tripotent".into()));
    }
    Ok(peirce_one_basis(system, &t.p1))
}

/// `F(z) = tau F0(conj(tau) z)` with
/// `F0(u,v) = u(e1+e2)/sqrt2 + v + (e2-e1)/sqrt2 (1 - sqrt(1 + u^2 + omega <v|conj v>))`
/// where `omega = <conj e1|e2>` and `e2 = conj(omega) conj(e1)`.
#[derive(Debug, Clone)]
pub struct LieSpec {
    pub system: Arc<TripleSystem>,
    pub e1: Element,
    pub e2: Element,
    pub omega: C64,
    pub tau: C64,
    pub frame_labels: Option<[String; 2]>,
    pub(crate) basis: Vec<Element>,
}

impl LieSpec {
    pub fn canonical(system: Arc<TripleSystem>, tau: C64) -> Result<Self> {
        require_spin(&system)?;
        let f = crate::grid::canonical_frame(&system);
        let mut spec = Self::new(system, f.elements[0].clone(), ONE, tau)?;
        spec.frame_labels = Some([f.labels[0].clone(), f.labels[1].clone()]);
        Ok(spec)
    }

    pub fn new(system: Arc<TripleSystem>, e1: Element, omega: C64, tau: C64) -> Result<Self> {
        require_spin(&system)?;
        system.check(&e1)?;
        for (name, x) in [("tau", tau), ("omega", omega)] {
            if (x.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!("|{name}| must be 1, got {}", x.norm())));
            }
        }
        let basis = frame_basis(&system, &e1)?;
        let e2 = conj(&e1) * omega.conj();
        Ok(LieSpec { system, e1, e2, omega, tau, frame_labels: None, basis })
    }

    /// Frame given by two elements; `e2` must be a unimodular multiple of
    /// `conj(e1)`.
    pub fn from_frame(system: Arc<TripleSystem>, e1: Element, e2: Element, tau: C64) -> Result<Self> {
        require_spin(&system)?;
        let e1bar = conj(&e1);
        let omega = system.inner(&e1bar, &e2);
        let rebuilt = &e1bar * omega.conj();
        if system.norm(&(rebuilt - &e2)) > 1e-10 {
            return Err(Error::InvalidArgument("second frame element is not a multiple of conj(e1)".into()));
        }
        Self::new(system, e1, omega, tau)
    }

    pub fn evaluate(&self, z: &Element) -> Result<Element> {
        let z0 = z * self.tau.conj();
        let (u, v) = split(&self.basis, self.system.dim(), &z0);
        let x = u * u + self.omega * spin::bilinear(v.as_slice(), v.as_slice());
        let root = tracked_sqrt(|s| ONE + x * (s * s))?;
        let h = FRAC_1_SQRT_2;
        let sum = (&self.e1 + &self.e2) * (u * h);
        let diff = (&self.e2 - &self.e1) * ((ONE - root) * h);
        Ok((sum + v + diff) * self.tau)
    }
}

/// `F_t(u,v) = u eta + p_t(u,v) xi + v` with `xi = t c1 + s c2`,
/// `eta = s c1 - t c2`, `s = sqrt(1 - t^2)`; `t = 0` gives the limit map.
#[derive(Debug, Clone)]
pub struct FtSpec {
    pub system: Arc<TripleSystem>,
    pub t: f64,
    pub c1: Element,
    pub c2: Element,
    pub(crate) basis: Vec<Element>,
}

impl FtSpec {
    pub fn new(system: Arc<TripleSystem>, t: f64) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidArgument(format!("t must lie in (0,1), got {t}")));
        }
        Self::build(system, t)
    }

    /// The `t -> 0` limit `F_0(u,v) = u c1 + N(v)/(1-u) c2 + v`.
    pub fn limit(system: Arc<TripleSystem>) -> Result<Self> {
        Self::build(system, 0.0)
    }

    fn build(system: Arc<TripleSystem>, t: f64) -> Result<Self> {
        require_spin(&system)?;
        let f = crate::grid::canonical_frame(&system);
        let basis = frame_basis(&system, &f.elements[0])?;
        Ok(FtSpec { system, t, c1: f.elements[0].clone(), c2: f.elements[1].clone(), basis })
    }

    pub fn s(&self) -> f64 {
        (1.0 - self.t * self.t).sqrt()
    }

    pub fn xi(&self) -> Element {
        &self.c1 * C64::new(self.t, 0.0) + &self.c2 * C64::new(self.s(), 0.0)
    }

    pub fn eta(&self) -> Element {
        &self.c1 * C64::new(self.s(), 0.0) - &self.c2 * C64::new(self.t, 0.0)
    }

    pub fn evaluate(&self, z: &Element) -> Result<Element> {
        let (u, v) = split(&self.basis, self.system.dim(), z);
        let (t, s) = (self.t, self.s());
        let ts = t * s;
        let nv = spin::norm(v.as_slice());
        let a = |k: f64| u * ((s * s - t * t) * k) - ONE;
        let radicand = |k: f64| a(k) * a(k) + (u * u * (ts * k * k) - nv * (k * k)) * (4.0 * ts);
        let root = tracked_sqrt(radicand)?;
        // rationalized root of ts p^2 + A p - (ts u^2 - N(v)) = 0, stable as t -> 0
        let p = (nv - u * u * ts) * 2.0 / (root - a(1.0));
        Ok(self.eta() * u + self.xi() * p + v)
    }
}
