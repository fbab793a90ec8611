use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The six families of irreducible hermitian Jordan triples.
///
/// Textual form is `kind[:p1[,p2]]`, e.g. `rect:2,3`, `spin:5`, `albert`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `r x s` complex matrices, `r <= s`.
    Rect { r: usize, s: usize },
    /// Symmetric `r x r` matrices.
    Sym { r: usize },
    /// Antisymmetric `n x n` matrices, `n >= 4`.
    Asym { n: usize },
    /// Spin factor on `C^m`, `m >= 3`.
    Spin { m: usize },
    /// 16-dimensional exceptional triple (2 x 1 octonion matrices).
    BiCayley,
    /// 27-dimensional exceptional triple (3 x 3 hermitian octonion matrices).
    Albert,
}

/// Numerical invariants of an irreducible triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub dim: usize,
    pub rank: usize,
    pub a: usize,
    pub b: usize,
    pub genus: usize,
}

impl Kind {
    pub fn validate(self) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        match self {
            Kind::Rect { r, s } if r == 0 || r > s => bad(format!("rect needs 1 <= r <= s, got {r},{s}")),
            Kind::Sym { r: 0 } => bad("sym needs r >= 1".into()),
            Kind::Asym { n } if n < 4 => bad(format!("asym needs n >= 4, got {n}")),
            Kind::Spin { m } if m < 3 => bad(format!("spin needs m >= 3, got {m}")),
            k => Ok(k),
        }
    }

    pub fn invariants(self) -> Invariants {
        let (rank, a, b) = match self {
            Kind::Rect { r, s } => (r, 2, s - r),
            Kind::Sym { r } => (r, 1, 0),
            Kind::Asym { n } => (n / 2, 4, if n % 2 == 0 { 0 } else { 2 }),
            Kind::Spin { m } => (2, m - 2, 0),
            Kind::BiCayley => (2, 6, 4),
            Kind::Albert => (3, 8, 0),
        };
        let dim = rank + a * (rank - 1) * rank / 2 + rank * b;
        let genus = 2 + a * (rank - 1) + b;
        Invariants { dim, rank, a, b, genus }
    }

    /// Tube type means `b = 0`.
    pub fn is_tube(self) -> bool {
        self.invariants().b == 0
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Kind::BiCayley | Kind::Albert)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Rect { r, s } => write!(f, "rect:{r},{s}"),
            Kind::Sym { r } => write!(f, "sym:{r}"),
            Kind::Asym { n } => write!(f, "asym:{n}"),
            Kind::Spin { m } => write!(f, "spin:{m}"),
            Kind::BiCayley => write!(f, "bicayley"),
            Kind::Albert => write!(f, "albert"),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let nums: Vec<usize> = match params {
            None => vec![],
            Some(p) => p
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidParams(format!("bad parameter {x:?} in {s:?}")))
                })
                .collect::<Result<_>>()?,
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} takes {k} parameter(s), got {}", nums.len())))
            }
        };
        let kind = match name.to_ascii_lowercase().as_str() {
            "rect" => {
                arity(2)?;
                Kind::Rect { r: nums[0], s: nums[1] }
            }
            "sym" => {
                arity(1)?;
                Kind::Sym { r: nums[0] }
            }
            "asym" => {
                arity(1)?;
                Kind::Asym { n: nums[0] }
            }
            "spin" => {
                arity(1)?;
                Kind::Spin { m: nums[0] }
            }
            "bicayley" => {
                arity(0)?;
                Kind::BiCayley
            }
            "albert" => {
                arity(0)?;
                Kind::Albert
            }
            other => return Err(Error::InvalidParams(format!("unknown kind {other:?}"))),
        };
        kind.validate()
    }
}
