//! Dense reference computation of `ker X̄` for cross-checking
//! [`solve_kernel`](super::solve_kernel).
//!
//! Every coefficient `C_α^β` with `|α| + |β| ≤ cap` is an unknown, each column
//! is `X̄` applied to one monomial through [`apply_conjugate`], and the
//! nullspace comes from a plain Gauss–Jordan elimination. No block or weight
//! structure is used.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{apply_conjugate, SolverError};
use crate::algebra::{GaussianRational, MixedPolynomial, Monomial, MultiIndex, TruncatedSeries};
use crate::field::NormalFormField;

type SparseVec = BTreeMap<usize, GaussianRational>;

/// Matrix of `X̄` on the monomials of degree `≤ cap`, with its nullspace.
pub struct DenseKernel {
    n: usize,
    cap: u32,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// Column `k` is `X̄` of monomial `k`, as a sparse vector over output monomials.
    columns: Vec<SparseVec>,
    nullity: usize,
    nullspace: Vec<SparseVec>,
}

impl DenseKernel {
    pub fn build(field: &NormalFormField, cap: u32) -> Result<Self, SolverError> {
        let n = field.n();
        let mut monomials = Vec::new();
        for holo in MultiIndex::all_up_to_degree(n, cap) {
            for anti in MultiIndex::all_up_to_degree(n, cap - holo.degree()) {
                monomials.push(Monomial::new(holo.clone(), anti));
            }
        }
        let index: BTreeMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

        let mut columns = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let p = MixedPolynomial::from_terms(n, [(m.clone(), GaussianRational::from_int(1, 0))])
                .expect("dimension");
            let image = apply_conjugate(field, &TruncatedSeries::new(p, cap).value)?.value;
            let col: SparseVec =
                image.poly().terms().map(|(mono, c)| (index[mono], c.clone())).collect();
            columns.push(col);
        }

        // Rows of the matrix are output monomials; eliminate on the transpose view.
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                rows.entry(*i).or_default().insert(j, v.clone());
            }
        }
        let rref = Rref::from_rows(rows.into_values());
        let nullspace = rref.nullspace(monomials.len());
        Ok(Self { n, cap, nullity: nullspace.len(), monomials, index, columns, nullspace })
    }

    pub fn unknowns(&self) -> usize {
        self.monomials.len()
    }

    /// Dimension of the kernel.
    pub fn nullity(&self) -> usize {
        self.nullity
    }

    /// Kernel basis as polynomials.
    pub fn basis(&self) -> Vec<MixedPolynomial> {
        self.nullspace.iter().map(|v| self.to_poly(v)).collect()
    }

    fn to_poly(&self, v: &SparseVec) -> MixedPolynomial {
        MixedPolynomial::from_terms(self.n, v.iter().map(|(k, c)| (self.monomials[*k].clone(), c.clone())))
            .expect("dimension")
    }

    fn to_vec(&self, p: &MixedPolynomial) -> Option<SparseVec> {
        p.terms().map(|(m, c)| self.index.get(m).map(|&k| (k, c.clone()))).collect()
    }

    /// `M·v = 0` for the coefficient vector of `p` (and `p` fits under the cap).
    pub fn contains(&self, p: &MixedPolynomial) -> bool {
        let Some(v) = self.to_vec(p) else { return false };
        let mut acc = SparseVec::new();
        for (k, c) in &v {
            for (i, m) in &self.columns[*k] {
                let e = acc.entry(*i).or_insert_with(GaussianRational::zero);
                *e += &(m * c);
            }
        }
        acc.values().all(Zero::is_zero)
    }

    /// Rank of a family of polynomials under the cap.
    pub fn rank_of(&self, polys: &[MixedPolynomial]) -> Option<usize> {
        let rows: Option<Vec<SparseVec>> = polys.iter().map(|p| self.to_vec(p)).collect();
        Some(Rref::from_rows(rows?).rank())
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Compares a candidate kernel basis against this oracle.
    pub fn compare(&self, candidate: &[MixedPolynomial]) -> OracleComparison {
        OracleComparison {
            oracle_dim: self.nullity,
            candidate_dim: candidate.len(),
            all_members: candidate.iter().all(|p| self.contains(p)),
            candidate_rank: self.rank_of(candidate).unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub oracle_dim: usize,
    pub candidate_dim: usize,
    pub all_members: bool,
    pub candidate_rank: usize,
}

impl OracleComparison {
    /// Same dimension, independent, and inside the kernel: equal spans.
    pub fn spans_agree(&self) -> bool {
        self.all_members
            && self.candidate_rank == self.candidate_dim
            && self.candidate_dim == self.oracle_dim
    }
}

struct Rref {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Rref {
    fn from_rows<I: IntoIterator<Item = SparseVec>>(rows: I) -> Self {
        let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for mut r in rows {
            loop {
                let hit = r.iter().find(|(c, v)| !v.is_zero() && pivots.contains_key(c)).map(|(c, _)| *c);
                let Some(col) = hit else { break };
                let factor = r[&col].clone();
                for (k, v) in &pivots[&col] {
                    let e = r.entry(*k).or_insert_with(GaussianRational::zero);
                    *e -= &(v * &factor);
                }
                r.retain(|_, v| !v.is_zero());
            }
            r.retain(|_, v| !v.is_zero());
            let Some((&lead, lead_val)) = r.iter().next() else { continue };
            let inv = lead_val.inv().expect("nonzero");
            let row: SparseVec = r.iter().map(|(k, v)| (*k, v * &inv)).collect();
            for other in pivots.values_mut() {
                if let Some(f) = other.get(&lead).cloned() {
                    for (k, v) in &row {
                        let e = other.entry(*k).or_insert_with(GaussianRational::zero);
                        *e -= &(v * &f);
                    }
                    other.retain(|_, v| !v.is_zero());
                }
            }
            pivots.insert(lead, row);
        }
        Self { pivots }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn nullspace(&self, unknowns: usize) -> Vec<SparseVec> {
        (0..unknowns)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, GaussianRational::from_int(1, 0));
                for (&p, row) in &self.pivots {
                    if let Some(x) = row.get(&free) {
                        v.insert(p, -x);
                    }
                }
                v
            })
            .collect()
    }
}
