//! Spin factor on `C^m` with `<z|w> = 2 sum z_j conj(w_j)` and
//! `{u;v;w} = <u|v> w + <w|v> u - <u|conj w> conj v`.

use crate::linalg::C64;

pub fn inner(z: &[C64], w: &[C64]) -> C64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum::<C64>() * 2.0
}

/// Bilinear pairing `<z|conj w> = 2 sum z_j w_j`.
pub fn bilinear(z: &[C64], w: &[C64]) -> C64 {
    z.iter().zip(w).map(|(a, b)| a * b).sum::<C64>() * 2.0
}

/// Determinant polynomial `N(z) = <z|conj z>/2 = sum z_j^2`.
pub fn norm(z: &[C64]) -> C64 {
    bilinear(z, z) * 0.5
}

pub fn triple(u: &[C64], v: &[C64], w: &[C64]) -> Vec<C64> {
    let uv = inner(u, v);
    let wv = inner(w, v);
    let uw = bilinear(u, w);
    (0..u.len()).map(|j| uv * w[j] + wv * u[j] - uw * v[j].conj()).collect()
}
