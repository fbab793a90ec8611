//! Raw model of the 27-dimensional exceptional triple: 3x3 hermitian
//! matrices over the complexified octonions.
//!
//! Raw coordinates: three diagonal scalars, then the octonion entries at
//! positions (1,2), (1,3), (2,3), 8 coefficients each. The entry at
//! `(j,i)` is the octonion conjugate of the one at `(i,j)`.

use std::sync::OnceLock;

use super::octonion::Octonion;
use super::sparse::SparseTriple;
use crate::linalg::{C64, ONE, ZERO};

pub const ALBERT_DIM: usize = 27;
pub const OFF_POSITIONS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlbertMatrix {
    pub diag: [C64; 3],
    pub off: [Octonion; 3],
}

fn off_slot(i: usize, j: usize) -> usize {
    OFF_POSITIONS.iter().position(|&p| p == (i, j)).expect("upper off-diagonal position")
}

impl AlbertMatrix {
    pub fn zero() -> Self {
        AlbertMatrix { diag: [ZERO; 3], off: [Octonion::zero(); 3] }
    }

    pub fn identity() -> Self {
        AlbertMatrix { diag: [ONE; 3], off: [Octonion::zero(); 3] }
    }

    pub fn from_coords(v: &[C64]) -> Self {
        assert_eq!(v.len(), ALBERT_DIM);
        let mut x = Self::zero();
        x.diag.copy_from_slice(&v[..3]);
        for s in 0..3 {
            x.off[s].0.copy_from_slice(&v[3 + 8 * s..11 + 8 * s]);
        }
        x
    }

    pub fn coords(&self) -> Vec<C64> {
        let mut v = self.diag.to_vec();
        for o in &self.off {
            v.extend_from_slice(&o.0);
        }
        v
    }

    /// Raw basis vector with index `k` in raw coordinate order.
    pub fn raw_basis(k: usize) -> Self {
        let mut v = vec![ZERO; ALBERT_DIM];
        v[k] = ONE;
        Self::from_coords(&v)
    }

    fn full(&self) -> [[Octonion; 3]; 3] {
        let mut m = [[Octonion::zero(); 3]; 3];
        for i in 0..3 {
            m[i][i] = Octonion::one().scale(self.diag[i]);
        }
        for (s, &(i, j)) in OFF_POSITIONS.iter().enumerate() {
            m[i][j] = self.off[s];
            m[j][i] = self.off[s].bar();
        }
        m
    }

    fn from_full(m: &[[Octonion; 3]; 3]) -> Self {
        let mut x = Self::zero();
        for i in 0..3 {
            // diagonal of a Jordan product is scalar; read the unit part
            x.diag[i] = m[i][i].0[0];
        }
        for (s, &(i, j)) in OFF_POSITIONS.iter().enumerate() {
            x.off[s] = m[i][j];
        }
        x
    }

    /// `x o y = (xy + yx)/2` with the octonion matrix product.
    pub fn jordan(&self, y: &AlbertMatrix) -> AlbertMatrix {
        let a = self.full();
        let b = y.full();
        let mut p = [[Octonion::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Octonion::zero();
                for k in 0..3 {
                    acc = acc + a[i][k] * b[k][j] + b[i][k] * a[k][j];
                }
                p[i][j] = acc.scale(C64::new(0.5, 0.0));
            }
        }
        Self::from_full(&p)
    }

    /// Conjugate-linear involution: conjugated diagonal, `tau` on octonions.
    pub fn star(&self) -> AlbertMatrix {
        AlbertMatrix { diag: self.diag.map(|d| d.conj()), off: self.off.map(|o| o.tau()) }
    }

    pub fn trace(&self) -> C64 {
        self.diag.iter().sum()
    }

    pub fn add(&self, y: &AlbertMatrix) -> AlbertMatrix {
        let mut z = *self;
        for i in 0..3 {
            z.diag[i] += y.diag[i];
            z.off[i] = z.off[i] + y.off[i];
        }
        z
    }

    pub fn scale(&self, s: C64) -> AlbertMatrix {
        AlbertMatrix { diag: self.diag.map(|d| d * s), off: self.off.map(|o| o.scale(s)) }
    }

    /// `{x;y;z} = 2[(x o y*) o z + (y* o z) o x - (x o z) o y*]`.
    pub fn triple(x: &AlbertMatrix, y: &AlbertMatrix, z: &AlbertMatrix) -> AlbertMatrix {
        let ys = y.star();
        let t1 = x.jordan(&ys).jordan(z);
        let t2 = ys.jordan(z).jordan(x);
        let t3 = x.jordan(z).jordan(&ys);
        t1.add(&t2).add(&t3.scale(-ONE)).scale(C64::new(2.0, 0.0))
    }

    /// Cubic norm from power traces: `N(1) = 1`.
    pub fn cubic_norm(&self) -> C64 {
        let x2 = self.jordan(self);
        let x3 = x2.jordan(self);
        let p1 = self.trace();
        let p2 = x2.trace();
        let p3 = x3.trace();
        let e2 = (p1 * p1 - p2) * 0.5;
        (p3 - p1 * p2 + e2 * p1) / 3.0
    }

    /// Octonion at `(i, j)`, `i != j`.
    pub fn entry(&self, i: usize, j: usize) -> Octonion {
        if i < j {
            self.off[off_slot(i, j)]
        } else {
            self.off[off_slot(j, i)].bar()
        }
    }
}

/// Structure constants of the raw triple product over raw coordinates.
///
/// Built from a sparse table of Jordan products of raw basis vectors; the
/// `*` map sends each raw basis vector to a raw basis vector.
pub fn raw_structure() -> &'static SparseTriple {
    static CELL: OnceLock<SparseTriple> = OnceLock::new();
    CELL.get_or_init(build_raw_structure)
}

type SparseVec = Vec<(usize, C64)>;

fn to_sparse(x: &AlbertMatrix) -> SparseVec {
    x.coords()
        .into_iter()
        .enumerate()
        .filter(|(_, v)| v.norm() > 1e-14)
        .collect()
}

fn build_raw_structure() -> SparseTriple {
    let n = ALBERT_DIM;
    let basis: Vec<AlbertMatrix> = (0..n).map(AlbertMatrix::raw_basis).collect();
    let mut jt: Vec<SparseVec> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            jt.push(to_sparse(&basis[a].jordan(&basis[b])));
        }
    }
    let star_of: Vec<usize> = (0..n)
        .map(|a| {
            let s = to_sparse(&basis[a].star());
            assert!(s.len() == 1 && (s[0].1 - ONE).norm() < 1e-14);
            s[0].0
        })
        .collect();
    // (sum_l x_l e_l) o e_b
    let times = |x: &SparseVec, b: usize, sign: f64, acc: &mut Vec<C64>| {
        for &(l, xl) in x {
            for &(m, v) in &jt[l * n + b] {
                acc[m] += xl * v * sign;
            }
        }
    };
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let js = star_of[j];
            let xy = &jt[i * n + js];
            for k in 0..n {
                let mut acc = vec![ZERO; n];
                times(xy, k, 1.0, &mut acc);
                times(&jt[js * n + k], i, 1.0, &mut acc);
                times(&jt[i * n + k], js, -1.0, &mut acc);
                for (l, v) in acc.into_iter().enumerate() {
                    if v.norm() > 1e-13 {
                        terms.push((i, j, k, l, v * 2.0));
                    }
                }
            }
        }
    }
    SparseTriple::new(n, terms)
}

/// Grid coordinates differ from raw ones by a sign on the `-` components
/// of the (1,3) and (2,3) entries; with these signs every quadrangle
/// relation of the grid holds with coefficient +1.
pub fn grid_signs() -> Vec<f64> {
    let mut s = vec![1.0; ALBERT_DIM];
    for slot in [1, 2] {
        for l in 1..=4 {
            s[3 + 8 * slot + super::octonion::oct_index(l, false)] = -1.0;
        }
    }
    s
}

pub fn grid_labels() -> Vec<String> {
    let mut labels: Vec<String> = (1..=3).map(|i| format!("[{i}]")).collect();
    for (i, j) in OFF_POSITIONS {
        for l in 1..=4 {
            for sign in ['+', '-'] {
                labels.push(format!("[{}{}]{l}{sign}", i + 1, j + 1));
            }
        }
    }
    labels
}

/// Grid-coordinate index of `[ij]_l^sign` (`i < j`, 1-based).
pub fn grid_index(i: usize, j: usize, l: usize, plus: bool) -> usize {
    3 + 8 * off_slot(i - 1, j - 1) + super::octonion::oct_index(l, plus)
}

/// Structure constants in grid coordinates.
pub fn grid_structure() -> &'static SparseTriple {
    static CELL: OnceLock<SparseTriple> = OnceLock::new();
    CELL.get_or_init(|| raw_structure().with_signs(&grid_signs()))
}

/// Grid coordinates to a raw matrix.
pub fn from_grid(z: &[C64]) -> AlbertMatrix {
    let raw: Vec<C64> = z.iter().zip(grid_signs()).map(|(x, s)| x * s).collect();
    AlbertMatrix::from_coords(&raw)
}
