use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::DoubleExtDescriptor;
use crate::algebra::Qls;
use crate::error::{QlsError, Result};
use crate::linalg::Matrix;
use crate::orbits::{canonical_skew_map, jordan_pair_map, FormKind, Partition};
use crate::scalar::Scalar;
use crate::space::{darboux_gram, QuadraticZ2Space};

/// Named algebras.
///
/// String forms: `g4,1s`, `g4,2s`, `g6s`, `j(2p)` with the value of `2p`
/// (e.g. `j(4)`), `j(p+p)` (e.g. `j(2+2)`), `j(2p,λ)` (e.g. `j(4,1/2)`) and
/// `g[d1,d2,...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    G41s,
    G42s,
    G6s,
    /// Nilpotent Jordan type `j_{2p}`, `p ≥ 2`.
    J2p(usize),
    /// Nilpotent Jordan type `j_{p+p}`, `p ≥ 1`.
    Jpp(usize),
    /// Jordan type `j_{2p}(λ)`, `p ≥ 1`.
    J2pLambda(usize, Scalar),
    /// Double extension by the canonical map of a symplectic partition.
    Partition(Partition),
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::G41s => f.write_str("g4,1s"),
            CatalogName::G42s => f.write_str("g4,2s"),
            CatalogName::G6s => f.write_str("g6s"),
            CatalogName::J2p(p) => write!(f, "j({})", 2 * p),
            CatalogName::Jpp(p) => write!(f, "j({p}+{p})"),
            CatalogName::J2pLambda(p, l) => write!(f, "j({},{l})", 2 * p),
            CatalogName::Partition(d) => write!(f, "g{d}"),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| QlsError::Parse(format!("expected a non-negative integer, got {s:?}")))
}

fn even_half(s: &str) -> Result<usize> {
    let n = parse_usize(s)?;
    if n % 2 == 1 {
        return Err(QlsError::OutOfRange(format!("j(2p) needs an even size, got {n}")));
    }
    Ok(n / 2)
}

impl FromStr for CatalogName {
    type Err = QlsError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let name = match s {
            "g4,1s" => CatalogName::G41s,
            "g4,2s" => CatalogName::G42s,
            "g6s" => CatalogName::G6s,
            _ => {
                if let Some(inner) = s.strip_prefix("j(").and_then(|r| r.strip_suffix(')')) {
                    if let Some((a, b)) = inner.split_once('+') {
                        let (p, q) = (parse_usize(a)?, parse_usize(b)?);
                        if p != q {
                            return Err(QlsError::Parse(format!("j(p+p) needs equal halves, got {s}")));
                        }
                        CatalogName::Jpp(p)
                    } else if let Some((a, l)) = inner.split_once(',') {
                        CatalogName::J2pLambda(even_half(a)?, l.trim().parse()?)
                    } else {
                        CatalogName::J2p(even_half(inner)?)
                    }
                } else if let Some(inner) = s.strip_prefix("g[").and_then(|r| r.strip_suffix(']')) {
                    let parts = inner.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?;
                    CatalogName::Partition(Partition::new(parts)?)
                } else {
                    return Err(QlsError::Parse(format!("unknown catalog name {s:?}")));
                }
            }
        };
        name.validate()?;
        Ok(name)
    }
}

impl CatalogName {
    pub fn validate(&self) -> Result<()> {
        match self {
            CatalogName::J2p(p) if *p < 2 => Err(QlsError::OutOfRange(format!("j(2p) needs p ≥ 2, got p = {p}"))),
            CatalogName::Jpp(0) | CatalogName::J2pLambda(0, _) => Err(QlsError::OutOfRange("p must be at least 1".into())),
            CatalogName::Partition(d) if d.parts().is_empty() || !d.is_admissible(FormKind::Symplectic) => {
                Err(QlsError::InadmissiblePartition(d.to_string()))
            }
            _ => Ok(()),
        }
    }
}

fn odd_base(m: usize) -> Arc<QuadraticZ2Space> {
    Arc::new(QuadraticZ2Space::new(Matrix::zeros(0, 0), darboux_gram(m)).expect("Darboux form is valid"))
}

/// The symplectic descriptor of a catalog entry, for every name except `g6s`.
pub fn catalog_descriptor(name: &CatalogName) -> Result<Option<DoubleExtDescriptor>> {
    name.validate()?;
    let (size, map) = match name {
        CatalogName::G6s => return Ok(None),
        CatalogName::G41s => (2, Matrix::from_ints(&[[0, -2], [0, 0]])),
        CatalogName::G42s => (2, Matrix::from_ints(&[[1, 0], [0, -1]])),
        CatalogName::J2p(p) => (2 * p, jordan_pair_map(*p, &Scalar::zero())),
        CatalogName::J2pLambda(p, l) => (2 * p, jordan_pair_map(*p, l)),
        CatalogName::Jpp(p) => {
            let d = Partition::new(vec![2 * p])?;
            (2 * p, canonical_skew_map(&d, FormKind::Symplectic)?.0)
        }
        CatalogName::Partition(d) => (d.total(), canonical_skew_map(d, FormKind::Symplectic)?.0),
    };
    DoubleExtDescriptor::symplectic(odd_base(size), map).map(Some)
}

/// Basis `X₀, Y₀` (hyperbolic) and odd `X₁, Y₁, Z, T` with `B(X₁, Z) = B(Y₁, T) = 1`.
fn g6s() -> Qls {
    let space = Arc::new(
        QuadraticZ2Space::new(Matrix::from_ints(&[[0, 1], [1, 0]]), darboux_gram(4)).expect("valid Gram data"),
    );
    let e = |i: usize, c: i64| {
        let mut v = vec![Scalar::zero(); 6];
        v[i] = Scalar::from_int(c);
        v
    };
    Qls::from_upper_entries(space, [(4, 5, e(0, -1)), (1, 4, e(3, -1)), (1, 5, e(2, -1))])
        .expect("entries fit the space")
}

/// The named algebra. Double-extension entries use the basis `X₀, Y₀` followed by the Darboux base.
pub fn catalog(name: &CatalogName) -> Result<Qls> {
    match catalog_descriptor(name)? {
        Some(d) => d.build(),
        None => Ok(g6s()),
    }
}
