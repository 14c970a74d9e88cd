//! The conjugate field `X̄ = Σ_ν (conj(λ_ν) z̄_ν + conj(g_ν)(z̄)) ∂/∂z̄_ν` on
//! truncated mixed series, and the kernel of `X̄` at a degree cap.
//!
//! `X̄` leaves the holomorphic exponent `α` alone and preserves the weight
//! `w(β) = Σ λ_ν β_ν` of the antiholomorphic exponent, because every monomial
//! of `g_ν` has weight `λ_ν`. The unknown coefficients `C_α^β` therefore split
//! into finite blocks keyed by `(α, w)`. Inside a block the matrix is lower
//! triangular in lex order on `β`: the `g_ν` part sends `β′ = β + e_ν − m` to
//! `β`, and `β′ ≺ β` since `m` lives on indices below `ν`. The diagonal entry
//! is `Σ_ν conj(λ_ν) β_ν`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{
    GaussianRational, MixedPolynomial, Monomial, MultiIndex, Rational, Truncated, TruncatedSeries,
    Var,
};
use crate::field::{compute_a, require_valid, weight, AStatus, FieldError, NormalFormField};

pub mod oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverError {
    DimensionMismatch { field: usize, series: usize },
    Field(FieldError),
    /// `A(λ)` was not certified empty.
    ANotCertified(AStatus),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { field, series } => {
                write!(f, "field has dimension {field}, series has dimension {series}")
            }
            Self::Field(e) => write!(f, "{e}"),
            Self::ANotCertified(s) => write!(f, "A(lambda) is not certified empty: {s:?}"),
        }
    }
}

impl core::error::Error for SolverError {}

impl From<FieldError> for SolverError {
    fn from(e: FieldError) -> Self {
        Self::Field(e)
    }
}

/// `X̄S`, truncated back to the cap of `s`.
pub fn apply_conjugate(
    field: &NormalFormField,
    s: &TruncatedSeries,
) -> Result<Truncated<TruncatedSeries>, SolverError> {
    let n = field.n();
    if s.n() != n {
        return Err(SolverError::DimensionMismatch { field: n, series: s.n() });
    }
    let mut out = MixedPolynomial::zero(n);
    for nu in 0..n {
        let ds = s.poly().wirtinger_d(Var::Anti, nu).expect("index in range");
        if ds.is_zero() {
            continue;
        }
        let coeff = &MixedPolynomial::anti_var(n, nu).scale(&field.lambda()[nu].conj())
            + &field.g()[nu].conjugate();
        out = &out + &(&coeff * &ds);
    }
    Ok(TruncatedSeries::new(out, s.degree_cap()))
}

/// Basis of `ker X̄` on series of total degree `≤ degree_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub degree_cap: u32,
    pub basis: Vec<TruncatedSeries>,
    /// Every basis element is free of `z̄`.
    pub holomorphic_only: bool,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

type LinearForm = BTreeMap<usize, GaussianRational>;

fn axpy(acc: &mut LinearForm, scale: &GaussianRational, x: &LinearForm) {
    for (k, v) in x {
        let entry = acc.entry(*k).or_insert_with(GaussianRational::zero);
        *entry += &(v * scale);
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

/// Kernel of the `β`-system restricted to `|β| ≤ budget`, as sparse vectors
/// over `β`, in block order then free-parameter order.
fn anti_kernel(field: &NormalFormField, budget: u32) -> Vec<BTreeMap<MultiIndex, GaussianRational>> {
    let n = field.n();
    let lambda = field.lambda();
    let conj_lambda: Vec<GaussianRational> = lambda.iter().map(GaussianRational::conj).collect();
    // (ν, m, conj(c)) for every monomial c·z^m of g_ν.
    let g_terms: Vec<(usize, MultiIndex, GaussianRational)> = field
        .g()
        .iter()
        .enumerate()
        .flat_map(|(nu, g)| g.terms().map(move |(mono, c)| (nu, mono.holo.clone(), c.conj())))
        .collect();

    let mut blocks: BTreeMap<GaussianRational, Vec<MultiIndex>> = BTreeMap::new();
    for beta in MultiIndex::all_up_to_degree(n, budget) {
        blocks.entry(weight(lambda, &beta)).or_default().push(beta);
    }

    let mut out = Vec::new();
    for (_, mut members) in blocks {
        members.sort();
        let mut coeffs: BTreeMap<MultiIndex, LinearForm> = BTreeMap::new();
        let mut constraints: Vec<LinearForm> = Vec::new();
        let mut params = 0usize;
        for beta in &members {
            let mut row = LinearForm::new();
            for (nu, m, c) in &g_terms {
                let Some(lowered) = beta.checked_sub(m) else { continue };
                let source = lowered.with(*nu, lowered.get(*nu) + 1);
                debug_assert!(source < *beta);
                if let Some(form) = coeffs.get(&source) {
                    let factor = c.scale(&Rational::from_integer(BigInt::from(source.get(*nu))));
                    axpy(&mut row, &factor, form);
                }
            }
            let mut diag = GaussianRational::zero();
            for (l, &e) in conj_lambda.iter().zip(beta.exponents()) {
                if e != 0 {
                    diag += &l.scale(&Rational::from_integer(BigInt::from(e)));
                }
            }
            let form = if diag.is_zero() {
                if !row.is_empty() {
                    constraints.push(row);
                }
                let mut f = LinearForm::new();
                f.insert(params, GaussianRational::from_int(1, 0));
                params += 1;
                f
            } else {
                let mut f = LinearForm::new();
                axpy(&mut f, &(-&diag.inv().expect("nonzero")), &row);
                f
            };
            coeffs.insert(beta.clone(), form);
        }
        for param_vec in nullspace(&constraints, params) {
            let mut v = BTreeMap::new();
            for (beta, form) in &coeffs {
                let mut value = GaussianRational::zero();
                for (k, c) in form {
                    if let Some(x) = param_vec.get(k) {
                        value += &(c * x);
                    }
                }
                if !value.is_zero() {
                    v.insert(beta.clone(), value);
                }
            }
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
    out
}

/// Nullspace of a sparse system over `unknowns` variables, via reduced row
/// echelon form.
fn nullspace(rows: &[LinearForm], unknowns: usize) -> Vec<LinearForm> {
    let mut pivots: BTreeMap<usize, LinearForm> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        while let Some(col) = r.keys().copied().find(|c| pivots.contains_key(c)) {
            let factor = -r[&col].clone();
            axpy(&mut r, &factor, &pivots[&col]);
        }
        if let Some((&lead, c)) = r.iter().next() {
            let inv = c.inv().expect("nonzero");
            let normalized = r.iter().map(|(k, v)| (*k, v * &inv)).collect::<LinearForm>();
            // Keep earlier pivot rows reduced against the new pivot column.
            for other in pivots.values_mut() {
                if let Some(v) = other.get(&lead).cloned() {
                    axpy(other, &-v, &normalized);
                }
            }
            pivots.insert(lead, normalized);
        }
    }
    (0..unknowns)
        .filter(|c| !pivots.contains_key(c))
        .map(|free| {
            let mut v = LinearForm::new();
            v.insert(free, GaussianRational::from_int(1, 0));
            for (&p, row) in &pivots {
                if let Some(x) = row.get(&free) {
                    v.insert(p, -x);
                }
            }
            v
        })
        .collect()
}

/// Complete kernel of [`apply_conjugate`] at `degree_cap` by blockwise forward
/// substitution. A vanishing diagonal entry (possible only with mixed-sign
/// eigenvalues) makes that coefficient a free parameter, and the row turns
/// into a consistency constraint on earlier coefficients.
pub fn solve_kernel(field: &NormalFormField, degree_cap: u32) -> Result<KernelBasis, SolverError> {
    require_valid(field)?;
    let n = field.n();
    let anti: Vec<_> = (0..=degree_cap).map(|b| anti_kernel(field, b)).collect();
    let mut basis = Vec::new();
    for alpha in MultiIndex::all_up_to_degree(n, degree_cap) {
        let budget = degree_cap - alpha.degree();
        for v in &anti[budget as usize] {
            let terms = v.iter().map(|(beta, c)| (Monomial::new(alpha.clone(), beta.clone()), c.clone()));
            let poly = MixedPolynomial::from_terms(n, terms).expect("dimensions agree");
            basis.push(TruncatedSeries::new(poly, degree_cap).value);
        }
    }
    let holomorphic_only = basis.iter().all(|s| s.poly().is_holomorphic());
    Ok(KernelBasis { degree_cap, basis, holomorphic_only })
}

/// Checks that with `A(λ)` certified empty every kernel element is holomorphic.
pub fn verify_holomorphic_kernel(field: &NormalFormField, degree_cap: u32) -> Result<bool, SolverError> {
    match compute_a(field.lambda(), degree_cap) {
        AStatus::Empty => Ok(solve_kernel(field, degree_cap)?.holomorphic_only),
        other => Err(SolverError::ANotCertified(other)),
    }
}

#[cfg(test)]
mod tests;
