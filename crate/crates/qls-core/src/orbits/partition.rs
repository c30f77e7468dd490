use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QlsError, Result};

/// Symmetry type of the bilinear form a skew map preserves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    /// Symmetric form, sign `+1`.
    Orthogonal,
    /// Antisymmetric form, sign `−1`.
    Symplectic,
}

impl FormKind {
    pub fn from_sign(eps: i64) -> Result<Self> {
        match eps {
            1 => Ok(FormKind::Orthogonal),
            -1 => Ok(FormKind::Symplectic),
            other => Err(QlsError::OutOfRange(format!("form sign must be ±1, got {other}"))),
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            FormKind::Orthogonal => 1,
            FormKind::Symplectic => -1,
        }
    }

    /// Parity of the parts that must occur with even multiplicity (0 = even parts).
    fn paired_parity(self) -> usize {
        match self {
            FormKind::Orthogonal => 0,
            FormKind::Symplectic => 1,
        }
    }
}

/// A weakly decreasing tuple of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(QlsError::Parse("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(QlsError::Parse("partition parts must be weakly decreasing".into()));
        }
        Ok(Self(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Parts of the paired parity occur with even multiplicity.
    pub fn is_admissible(&self, kind: FormKind) -> bool {
        let mut parts = self.0.clone();
        parts.dedup();
        parts
            .into_iter()
            .filter(|p| p % 2 == kind.paired_parity())
            .all(|p| self.multiplicity(p).is_multiple_of(2))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = QlsError;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Every partition of `m`, in decreasing lexicographic order.
pub fn all_partitions(m: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Admissible partitions of `m` for the given form, in decreasing lexicographic order.
pub fn enumerate_partitions(m: usize, kind: FormKind) -> Result<Vec<Partition>> {
    if kind == FormKind::Symplectic && m % 2 == 1 {
        return Err(QlsError::OutOfRange(format!("symplectic partitions need an even total, got {m}")));
    }
    Ok(all_partitions(m).into_iter().filter(|p| p.is_admissible(kind)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_tables() {
        assert_eq!(
            enumerate_partitions(4, FormKind::Symplectic).unwrap(),
            vec![p(&[4]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(
            enumerate_partitions(4, FormKind::Orthogonal).unwrap(),
            vec![p(&[3, 1]), p(&[2, 2]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(0, FormKind::Orthogonal).unwrap(), vec![p(&[])]);
        assert!(enumerate_partitions(3, FormKind::Symplectic).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|m| all_partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap(), p(&[3, 2, 1]));
    }
}
