use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::AlgebraError;

/// Exponent vector `(α₁, …, αₙ)`.
///
/// The derived `Ord` is the lexicographic order ≺ used by the triangular
/// kernel solve: `a ≺ b` iff the first differing exponent is smaller in `a`.
/// It only compares like-length indices meaningfully; [`lex_compare`] checks
/// the lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The unit index `e_j`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Self(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree |α|.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, or `None` if some exponent would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn with(&self, j: usize, value: u32) -> Self {
        let mut e = self.0.clone();
        e[j] = value;
        Self(e)
    }

    /// Smallest index carrying a nonzero exponent.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    /// Largest index carrying a nonzero exponent.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }

    /// All indices of length `n` with total degree exactly `degree`, in lex order.
    pub fn all_of_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fill_degree(&mut current, 0, degree, &mut out);
        out
    }

    /// All indices of length `n` with total degree at most `max_degree`, in lex order.
    pub fn all_up_to_degree(n: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> =
            (0..=max_degree).flat_map(|d| Self::all_of_degree(n, d)).collect();
        out.sort();
        out
    }
}

fn fill_degree(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let n = current.len();
    if n == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Lexicographic comparison of two indices of the same length.
pub fn lex_compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering, AlgebraError> {
    if a.len() != b.len() {
        return Err(AlgebraError::DimensionMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.0.cmp(&b.0))
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}
