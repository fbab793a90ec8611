//! Complexified octonions in a split basis.
//!
//! Basis vectors are `c_l^+` and `c_l^-` for `l = 1..=4`; the unit is
//! `c_1^+ + c_1^-`. Coefficients are stored at index `2(l-1)` for `+`
//! and `2(l-1)+1` for `-`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::linalg::{C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Octonion(pub [C64; 8]);

/// Storage index of `c_l^sign`.
pub const fn oct_index(l: usize, plus: bool) -> usize {
    2 * (l - 1) + if plus { 0 } else { 1 }
}

// (r, r', r'') cyclic on {2,3,4}
const CYCLE: [(usize, usize, usize); 3] = [(2, 3, 4), (3, 4, 2), (4, 2, 3)];

impl Octonion {
    pub const fn zero() -> Self {
        Octonion([ZERO; 8])
    }

    pub fn one() -> Self {
        let mut x = Self::zero();
        x.0[0] = C64::new(1.0, 0.0);
        x.0[1] = C64::new(1.0, 0.0);
        x
    }

    pub fn basis(l: usize, plus: bool) -> Self {
        let mut x = Self::zero();
        x.0[oct_index(l, plus)] = C64::new(1.0, 0.0);
        x
    }

    fn at(&self, l: usize, plus: bool) -> C64 {
        self.0[oct_index(l, plus)]
    }

    pub fn trace(&self) -> C64 {
        self.0[0] + self.0[1]
    }

    /// Quadratic norm, multiplicative: `n(xy) = n(x) n(y)`.
    pub fn norm(&self) -> C64 {
        (1..=4).map(|l| self.at(l, true) * self.at(l, false)).sum()
    }

    /// Octonion conjugation `t(x) 1 - x`.
    pub fn bar(&self) -> Self {
        Self::one() * self.trace() - *self
    }

    /// Antilinear involution fixing the compact real form: swaps the
    /// `+`/`-` coefficients and conjugates them.
    pub fn tau(&self) -> Self {
        let mut y = Self::zero();
        for l in 1..=4 {
            y.0[oct_index(l, true)] = self.at(l, false).conj();
            y.0[oct_index(l, false)] = self.at(l, true).conj();
        }
        y
    }

    pub fn scale(&self, s: C64) -> Self {
        Octonion(self.0.map(|x| x * s))
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    fn mul(self, y: Octonion) -> Octonion {
        let x = self;
        let mut z = Octonion::zero();
        for e in [true, false] {
            let mut first = x.at(1, e) * y.at(1, e);
            for r in 2..=4 {
                first -= x.at(r, !e) * y.at(r, e);
            }
            z.0[oct_index(1, e)] = first;
            for &(r, r1, r2) in &CYCLE {
                z.0[oct_index(r, e)] = x.at(r, e) * y.at(1, e) + x.at(1, !e) * y.at(r, e)
                    + x.at(r2, !e) * y.at(r1, !e)
                    - x.at(r1, !e) * y.at(r2, !e);
            }
        }
        z
    }
}

impl Mul<C64> for Octonion {
    type Output = Octonion;
    fn mul(self, s: C64) -> Octonion {
        self.scale(s)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, o: Octonion) -> Octonion {
        let mut z = self;
        for k in 0..8 {
            z.0[k] += o.0[k];
        }
        z
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, o: Octonion) -> Octonion {
        self + (-o)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|x| -x))
    }
}
