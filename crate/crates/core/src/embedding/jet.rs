use std::f64::consts::FRAC_1_SQRT_2;

use super::EmbeddingSpec;
use crate::error::{Error, Result};
use crate::linalg::{Element, LinearMap, C64};
use crate::models::spin;

/// Value, first derivative and degree-2 Taylor coefficient at 0.
///
/// `second[i*d + j]` holds the symmetric bilinear form `S(e_i, e_j)` with
/// `F(x) = F(0) + first x + S(x, x) + O(|x|^3)`.
#[derive(Debug, Clone)]
pub struct MapJet {
    pub value: Element,
    pub first: LinearMap,
    pub second: Vec<Element>,
}

impl MapJet {
    pub fn source_dim(&self) -> usize {
        self.first.ncols()
    }

    pub fn second_at(&self, i: usize, j: usize) -> &Element {
        &self.second[i * self.source_dim() + j]
    }

    /// `S(x, y)`.
    pub fn second_apply(&self, x: &Element, y: &Element) -> Element {
        let d = self.source_dim();
        let mut out = Element::zeros(self.first.nrows());
        for i in 0..d {
            if x[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out += self.second_at(i, j) * (x[i] * y[j]);
            }
        }
        out
    }

    /// Largest coordinate difference between two jets.
    pub fn max_diff(&self, other: &MapJet) -> f64 {
        let mut worst = (&self.value - &other.value).camax();
        worst = worst.max((&self.first - &other.first).camax());
        for (a, b) in self.second.iter().zip(&other.second) {
            worst = worst.max((a - b).camax());
        }
        worst
    }
}

fn from_bilinear<F: Fn(&Element, &Element) -> Element>(dim: usize, first: LinearMap, s: F) -> MapJet {
    let d = first.ncols();
    let unit = |i: usize| {
        let mut e = Element::zeros(d);
        e[i] = C64::new(1.0, 0.0);
        e
    };
    let mut second = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            second.push(s(&unit(i), &unit(j)));
        }
    }
    MapJet { value: Element::zeros(dim), first, second }
}

pub(super) fn closed_form(spec: &EmbeddingSpec) -> MapJet {
    let sys = spec.system().clone();
    let dim = sys.dim();
    match spec {
        EmbeddingSpec::Mok(m) => {
            // S(x, y) = {v_x; c; v_y}/2 with v the Z^1 part of L x
            let c = &m.tripotent.element;
            let p1l = &m.tripotent.p1 * &m.lift;
            from_bilinear(dim, m.lift.clone(), |x, y| sys.triple(&(&p1l * x), c, &(&p1l * y)) * C64::new(0.5, 0.0))
        }
        EmbeddingSpec::LieIrrational(l) => {
            let mut first = LinearMap::zeros(dim, l.basis.len() + 1);
            first.set_column(0, &((&l.e1 + &l.e2) * C64::new(FRAC_1_SQRT_2, 0.0)));
            for (k, b) in l.basis.iter().enumerate() {
                first.set_column(k + 1, b);
            }
            let dir = (&l.e2 - &l.e1) * C64::new(FRAC_1_SQRT_2, 0.0);
            let basis = l.basis.clone();
            let scale = l.tau.conj();
            let omega = l.omega;
            from_bilinear(dim, first, move |x, y| {
                let vx = combine(&basis, x, dim);
                let vy = combine(&basis, y, dim);
                let q = x[0] * y[0] + omega * spin::bilinear(vx.as_slice(), vy.as_slice());
                &dir * (q * -0.5 * scale)
            })
        }
        EmbeddingSpec::FtFamily(f) => {
            let mut first = LinearMap::zeros(dim, f.basis.len() + 1);
            first.set_column(0, &f.eta());
            for (k, b) in f.basis.iter().enumerate() {
                first.set_column(k + 1, b);
            }
            let xi = f.xi();
            let ts = f.t * f.s();
            let basis = f.basis.clone();
            from_bilinear(dim, first, move |x, y| {
                let vx = combine(&basis, x, dim);
                let vy = combine(&basis, y, dim);
                let q = spin::bilinear(vx.as_slice(), vy.as_slice()) * 0.5 - x[0] * y[0] * ts;
                &xi * q
            })
        }
        EmbeddingSpec::Reparametrized(r) => {
            let inner = closed_form(&r.inner);
            let first = &r.k * &inner.first * &r.u;
            from_bilinear(dim, first, |x, y| &r.k * inner.second_apply(&(&r.u * x), &(&r.u * y)))
        }
    }
}

fn combine(basis: &[Element], x: &Element, dim: usize) -> Element {
    let mut v = Element::zeros(dim);
    for (k, b) in basis.iter().enumerate() {
        v += b * x[k + 1];
    }
    v
}

/// Jets of `spec` by central differences with one Richardson step.
pub fn numeric_jet2(spec: &EmbeddingSpec, step: f64) -> Result<MapJet> {
    numeric_jet2_of(|z| spec.evaluate(z), spec.system().dim(), spec.source_dim(), step)
}

/// Jets at 0 of any map `C^d -> C^dim` holomorphic near 0.
pub fn numeric_jet2_of<F>(f: F, dim: usize, d: usize, step: f64) -> Result<MapJet>
where
    F: Fn(&Element) -> Result<Element>,
{
    if !(1e-6..=1e-2).contains(&step) {
        return Err(Error::InvalidArgument(format!("step must lie in [1e-6, 1e-2], got {step}")));
    }
    let value = f(&Element::zeros(d))?;
    let unit = |i: usize| {
        let mut e = Element::zeros(d);
        e[i] = C64::new(1.0, 0.0);
        e
    };
    let richardson = |g: &dyn Fn(f64) -> Result<Element>| -> Result<Element> {
        let coarse = g(step)?;
        let fine = g(step / 2.0)?;
        Ok((fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0))
    };
    // first derivative along x
    let slope = |x: &Element| {
        richardson(&|h: f64| {
            let hx = x * C64::new(h, 0.0);
            Ok((f(&hx)? - f(&(-&hx))?) / C64::new(2.0 * h, 0.0))
        })
    };
    // quadratic coefficient S(x, x)
    let curvature = |x: &Element| {
        richardson(&|h: f64| {
            let hx = x * C64::new(h, 0.0);
            Ok((f(&hx)? + f(&(-&hx))? - &value * C64::new(2.0, 0.0)) / C64::new(2.0 * h * h, 0.0))
        })
    };
    let mut first = LinearMap::zeros(dim, d);
    let mut diag = Vec::with_capacity(d);
    for i in 0..d {
        first.set_column(i, &slope(&unit(i))?);
        diag.push(curvature(&unit(i))?);
    }
    let mut second = vec![Element::zeros(dim); d * d];
    for i in 0..d {
        second[i * d + i] = diag[i].clone();
        for j in i + 1..d {
            let plus = curvature(&(unit(i) + unit(j)))?;
            let minus = curvature(&(unit(i) - unit(j)))?;
            let s = (plus - minus) / C64::new(4.0, 0.0);
            second[i * d + j] = s.clone();
            second[j * d + i] = s;
        }
    }
    Ok(MapJet { value, first, second })
}

/// `f'(z)` by fourth-order central differences along the coordinate axes.
pub fn numeric_jacobian<F>(f: F, z: &Element, dim: usize, step: f64) -> Result<LinearMap>
where
    F: Fn(&Element) -> Result<Element>,
{
    if !(1e-6..=1e-2).contains(&step) {
        return Err(Error::InvalidArgument(format!("step must lie in [1e-6, 1e-2], got {step}")));
    }
    let d = z.len();
    let mut jac = LinearMap::zeros(dim, d);
    for i in 0..d {
        let mut h = Element::zeros(d);
        h[i] = C64::new(step, 0.0);
        let h2 = &h * C64::new(2.0, 0.0);
        let near = f(&(z + &h))? - f(&(z - &h))?;
        let far = f(&(z + &h2))? - f(&(z - &h2))?;
        jac.set_column(i, &((near * C64::new(8.0, 0.0) - far) / C64::new(12.0 * step, 0.0)));
    }
    Ok(jac)
}
