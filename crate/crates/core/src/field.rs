//! Normal-form vector fields `X = Σ (λ_j z_j + g_j(z)) ∂/∂z_j` and their
//! classification: normal-form validity, contraction, alignment, resonance
//! relations and the set `A(λ)`.
//!
//! Coordinates are 0-based throughout the API: `z_0` is the first variable.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{GaussianRational, MixedPolynomial, Monomial, MultiIndex, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// Lengths of `lambda` and `g`, or polynomial dimensions, disagree.
    Malformed(&'static str),
    /// `g_j` contains a `z̄` variable.
    NotHolomorphic { j: usize },
    /// Resonance enumeration needs `Re λ_k > 0` for every `k < j`.
    EnumerationUnbounded { j: usize, k: usize },
    /// Alignment is undefined with a zero eigenvalue.
    DegenerateField { j: usize },
    IndexOutOfRange { index: usize, n: usize },
    /// Structural normal-form violations (see [`Violation::is_structural`]).
    InvalidNormalForm(Vec<Violation>),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Malformed(what) => write!(f, "malformed field: {what}"),
            Self::NotHolomorphic { j } => write!(f, "g_{j} is not a holomorphic polynomial"),
            Self::EnumerationUnbounded { j, k } => write!(
                f,
                "resonance search for lambda_{j} is unbounded: Re lambda_{k} <= 0 (use the capped search)"
            ),
            Self::DegenerateField { j } => write!(f, "lambda_{j} = 0: alignment undefined"),
            Self::IndexOutOfRange { index, n } => {
                write!(f, "coordinate index {index} out of range for dimension {n}")
            }
            Self::InvalidNormalForm(v) => {
                write!(f, "not a valid normal form:")?;
                for violation in v {
                    write!(f, " [{violation}]")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for FieldError {}

/// Holomorphic vector field in (candidate) Poincaré–Dulac normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormField {
    lambda: Vec<GaussianRational>,
    g: Vec<MixedPolynomial>,
}

impl NormalFormField {
    /// Checks shapes only; normal-form conditions are reported by [`validate_normal_form`].
    pub fn new(lambda: Vec<GaussianRational>, g: Vec<MixedPolynomial>) -> Result<Self, FieldError> {
        let n = lambda.len();
        if n == 0 {
            return Err(FieldError::Malformed("dimension must be at least 1"));
        }
        if g.len() != n {
            return Err(FieldError::Malformed("lambda and g have different lengths"));
        }
        for (j, gj) in g.iter().enumerate() {
            if gj.n() != n {
                return Err(FieldError::Malformed("g polynomial dimension differs from n"));
            }
            if !gj.is_holomorphic() {
                return Err(FieldError::NotHolomorphic { j });
            }
        }
        Ok(Self { lambda, g })
    }

    /// Linear field `Σ λ_j z_j ∂/∂z_j`.
    pub fn diagonal(lambda: Vec<GaussianRational>) -> Result<Self, FieldError> {
        let n = lambda.len();
        Self::new(lambda, vec![MixedPolynomial::zero(n); n])
    }

    /// Complex Euler field `Σ z_j ∂/∂z_j`.
    pub fn euler(n: usize) -> Result<Self, FieldError> {
        Self::diagonal(vec![GaussianRational::one(); n])
    }

    /// `α(z ∂/∂z + (m·w + β z^m) ∂/∂w)`: the general contracting
    /// non-diagonalizable planar normal form.
    pub fn planar_resonant(
        alpha: GaussianRational,
        m: u32,
        beta: GaussianRational,
    ) -> Result<Self, FieldError> {
        if m == 0 {
            return Err(FieldError::Malformed("resonance exponent m must be positive"));
        }
        let lambda = vec![alpha.clone(), alpha.scale(&Rational::from_integer(BigInt::from(m)))];
        let g2 = MixedPolynomial::holo_var(2, 0).pow(m).scale(&(&alpha * &beta));
        Self::new(lambda, vec![MixedPolynomial::zero(2), g2])
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[GaussianRational] {
        &self.lambda
    }

    pub fn g(&self) -> &[MixedPolynomial] {
        &self.g
    }

    /// The `j`-th component `λ_j z_j + g_j(z)` as a polynomial.
    pub fn component(&self, j: usize) -> MixedPolynomial {
        let n = self.n();
        &MixedPolynomial::holo_var(n, j).scale(&self.lambda[j]) + &self.g[j]
    }

    /// The field `c·X`. Resonance structure is unchanged.
    pub fn scaled(&self, c: &GaussianRational) -> Self {
        Self {
            lambda: self.lambda.iter().map(|l| l * c).collect(),
            g: self.g.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Stable reordering of coordinates by `Re λ`. Returns the new field and
    /// `perm` with `new coordinate i = old coordinate perm[i]`. The result may
    /// break the lower-triangular condition; validate it afterwards.
    pub fn reorder_by_real_part(&self) -> (Self, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.n()).collect();
        perm.sort_by(|&a, &b| self.lambda[a].re.cmp(&self.lambda[b].re));
        (self.permuted(&perm), perm)
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let mut old_to_new = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            old_to_new[old] = new;
        }
        let remap = |p: &MixedPolynomial| {
            let terms = p.terms().map(|(m, c)| {
                let mut e = vec![0; n];
                for (old, &x) in m.holo.exponents().iter().enumerate() {
                    e[old_to_new[old]] = x;
                }
                (Monomial::holomorphic(MultiIndex::new(e)), c.clone())
            });
            MixedPolynomial::from_terms(n, terms).expect("same dimension")
        };
        Self {
            lambda: perm.iter().map(|&old| self.lambda[old].clone()).collect(),
            g: perm.iter().map(|&old| remap(&self.g[old])).collect(),
        }
    }
}

/// One failed normal-form condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `g_0 ≢ 0`.
    FirstComponentNonzero,
    ConstantTerm { j: usize },
    /// A monomial of `g_j` involves `z_var` with `var ≥ j`.
    LaterVariable { j: usize, monomial: MultiIndex, var: usize },
    /// A monomial `z^m` of `g_j` with `Σ m_k λ_k ≠ λ_j`.
    NonResonantMonomial { j: usize, monomial: MultiIndex, weight: GaussianRational },
    /// `Re λ_j ≤ 0`.
    NonPositiveRealPart { j: usize },
    /// `Re λ_j > Re λ_{j+1}`.
    OrderingViolated { j: usize },
}

impl Violation {
    /// Structural violations block kernel solving and flows; eigenvalue
    /// positivity and ordering are advisory.
    pub fn is_structural(&self) -> bool {
        !matches!(self, Self::NonPositiveRealPart { .. } | Self::OrderingViolated { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FirstComponentNonzero => write!(f, "g_0 must vanish"),
            Self::ConstantTerm { j } => write!(f, "g_{j} has a constant term"),
            Self::LaterVariable { j, monomial, var } => {
                write!(f, "g_{j} monomial z^{monomial} involves z_{var}")
            }
            Self::NonResonantMonomial { j, monomial, weight } => write!(
                f,
                "g_{j} monomial z^{monomial} has weight {weight}, expected lambda_{j}"
            ),
            Self::NonPositiveRealPart { j } => write!(f, "Re lambda_{j} <= 0"),
            Self::OrderingViolated { j } => write!(f, "Re lambda_{j} > Re lambda_{}", j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    /// No structural violation.
    pub fn is_valid(&self) -> bool {
        self.violations.iter().all(|v| !v.is_structural())
    }

    /// All conditions hold, including `0 < Re λ_0 ≤ … ≤ Re λ_{n−1}`.
    pub fn is_strict(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn structural(&self) -> Vec<Violation> {
        self.violations.iter().filter(|v| v.is_structural()).cloned().collect()
    }
}

/// `Σ_k m_k λ_k`.
pub fn weight(lambda: &[GaussianRational], m: &MultiIndex) -> GaussianRational {
    let mut w = GaussianRational::zero();
    for (l, &e) in lambda.iter().zip(m.exponents()) {
        if e != 0 {
            w += &l.scale(&Rational::from_integer(BigInt::from(e)));
        }
    }
    w
}

/// Reports every violated normal-form condition. Quasi-homogeneity
/// `g_j(e^{λ_0ζ}z_0, …) = e^{λ_jζ} g_j(z)` is checked monomial by monomial as
/// the exact identity `Σ m_k λ_k = λ_j`.
pub fn validate_normal_form(field: &NormalFormField) -> ValidityReport {
    let lambda = field.lambda();
    let mut violations = Vec::new();
    if !field.g()[0].is_zero() {
        violations.push(Violation::FirstComponentNonzero);
    }
    for (j, gj) in field.g().iter().enumerate() {
        for (mono, _) in gj.terms() {
            let m = &mono.holo;
            if m.is_zero() {
                violations.push(Violation::ConstantTerm { j });
                continue;
            }
            if j > 0 {
                if let Some(var) = m.last_nonzero().filter(|&v| v >= j) {
                    violations.push(Violation::LaterVariable { j, monomial: m.clone(), var });
                }
            }
            let w = weight(lambda, m);
            if w != lambda[j] {
                violations.push(Violation::NonResonantMonomial { j, monomial: m.clone(), weight: w });
            }
        }
    }
    for (j, l) in lambda.iter().enumerate() {
        if !l.re.is_positive() {
            violations.push(Violation::NonPositiveRealPart { j });
        }
    }
    for j in 0..lambda.len().saturating_sub(1) {
        if lambda[j].re > lambda[j + 1].re {
            violations.push(Violation::OrderingViolated { j });
        }
    }
    ValidityReport { violations }
}

/// Errors unless the field passes every structural condition.
pub fn require_valid(field: &NormalFormField) -> Result<(), FieldError> {
    let report = validate_normal_form(field);
    if report.is_valid() {
        Ok(())
    } else {
        Err(FieldError::InvalidNormalForm(report.structural()))
    }
}

/// `λ_j = Σ_{k<j} m_k λ_k` with `|m| ≥ 1`; `m` has full length `n`, zero from `j` on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResonanceRelation {
    pub target: usize,
    pub m: MultiIndex,
}

/// All resonance relations for `λ_j`, in lex order of `m`.
///
/// Requires `Re λ_k > 0` for `k < j`, which bounds `m_k ≤ Re λ_j / Re λ_k`.
pub fn resonance_relations(
    lambda: &[GaussianRational],
    j: usize,
) -> Result<Vec<ResonanceRelation>, FieldError> {
    let n = lambda.len();
    if j >= n {
        return Err(FieldError::IndexOutOfRange { index: j, n });
    }
    if let Some(k) = (0..j).find(|&k| !lambda[k].re.is_positive()) {
        return Err(FieldError::EnumerationUnbounded { j, k });
    }
    let mut out = Vec::new();
    if !lambda[j].re.is_positive() {
        // Every nonzero combination of the earlier λ has positive real part.
        return Ok(out);
    }
    let mut m = vec![0u32; n];
    search_bounded(lambda, j, 0, &lambda[j].re.clone(), &mut m, &mut out);
    Ok(out)
}

fn search_bounded(
    lambda: &[GaussianRational],
    j: usize,
    k: usize,
    budget: &Rational,
    m: &mut Vec<u32>,
    out: &mut Vec<ResonanceRelation>,
) {
    if k == j {
        let mi = MultiIndex::new(m.clone());
        if budget.is_zero() && !mi.is_zero() && weight(lambda, &mi) == lambda[j] {
            out.push(ResonanceRelation { target: j, m: mi });
        }
        return;
    }
    let step = &lambda[k].re;
    let max = (budget / step).floor().to_integer();
    let max: u32 = max.try_into().unwrap_or(u32::MAX);
    for e in 0..=max {
        m[k] = e;
        let rest = budget - step * Rational::from_integer(BigInt::from(e));
        search_bounded(lambda, j, k + 1, &rest, m, out);
    }
    m[k] = 0;
}

/// Resonance relations for `λ_j` with `|m| ≤ cap`, for any signs of `Re λ`.
pub fn resonance_relations_capped(
    lambda: &[GaussianRational],
    j: usize,
    cap: u32,
) -> Result<Vec<ResonanceRelation>, FieldError> {
    let n = lambda.len();
    if j >= n {
        return Err(FieldError::IndexOutOfRange { index: j, n });
    }
    let mut out = Vec::new();
    for d in 1..=cap {
        for head in MultiIndex::all_of_degree(j, d) {
            let mut e = head.exponents().to_vec();
            e.resize(n, 0);
            let m = MultiIndex::new(e);
            if weight(lambda, &m) == lambda[j] {
                out.push(ResonanceRelation { target: j, m });
            }
        }
    }
    out.sort_by(|a, b| a.m.cmp(&b.m));
    Ok(out)
}

/// Outcome of the search for `m ∈ ℕⁿ`, `|m| ≥ 1`, with `Σ m_j λ_j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AStatus {
    /// Proved empty: the eigenvalues lie in an open half-plane through 0.
    Empty,
    /// No element with `|m| ≤ cap`; emptiness is not proved.
    EmptyUpToCap(u32),
    /// Witness of minimal total degree (lex-first among those).
    NonEmpty(MultiIndex),
}

/// Decides or searches `A(λ)`.
///
/// Emptiness is certified when `0` is outside the convex hull of the `λ_j`
/// (covers "all `Re λ_j > 0`" and "all `Re λ_j < 0`"). Otherwise a witness of
/// minimal degree `≤ cap` is returned, or [`AStatus::EmptyUpToCap`].
pub fn compute_a(lambda: &[GaussianRational], cap: u32) -> AStatus {
    if hull_witness(lambda).is_none() {
        return AStatus::Empty;
    }
    let n = lambda.len();
    for d in 1..=cap {
        for m in MultiIndex::all_of_degree(n, d) {
            if weight(lambda, &m).is_zero() {
                return AStatus::NonEmpty(m);
            }
        }
    }
    AStatus::EmptyUpToCap(cap)
}

/// Exact decision of `A(λ) ≠ ∅` with an integer witness (not necessarily of
/// minimal degree), via Carathéodory: `0` lies in the hull iff it is some `λ_j`,
/// on a segment between two opposite eigenvalues, or inside a triangle.
pub fn hull_witness(lambda: &[GaussianRational]) -> Option<MultiIndex> {
    let n = lambda.len();
    let zero = Rational::zero();
    let build = |entries: &[(usize, Rational)]| {
        // Scale positive rational weights to coprime integers.
        let mut den = BigInt::one();
        for (_, w) in entries {
            den = den.lcm(w.denom());
        }
        let ints: Vec<(usize, BigInt)> =
            entries.iter().map(|(k, w)| (*k, (w * Rational::from_integer(den.clone())).to_integer())).collect();
        let mut g = BigInt::zero();
        for (_, v) in &ints {
            g = g.gcd(v);
        }
        let mut e = vec![0u32; n];
        for (k, v) in ints {
            e[k] += u32::try_from(v / &g).ok()?;
        }
        Some(MultiIndex::new(e))
    };
    for j in 0..n {
        if lambda[j].is_zero() {
            return Some(MultiIndex::unit(n, j));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            // λ_a = −c λ_b with c > 0  ⇔  collinear and opposite.
            if lambda[a].cross(&lambda[b]) == zero {
                let ratio = &lambda[a] / &lambda[b];
                if ratio.re.is_negative() {
                    if let Some(w) = build(&[(a, Rational::one()), (b, -ratio.re)]) {
                        return Some(w);
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                // Barycentric weights of the origin, up to a common factor.
                let wa = lambda[b].cross(&lambda[c]);
                let wb = lambda[c].cross(&lambda[a]);
                let wc = lambda[a].cross(&lambda[b]);
                let all_pos = wa.is_positive() && wb.is_positive() && wc.is_positive();
                let all_neg = wa.is_negative() && wb.is_negative() && wc.is_negative();
                if all_pos || all_neg {
                    if let Some(w) = build(&[(a, wa.abs()), (b, wb.abs()), (c, wc.abs())]) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// `Re λ_j > 0` for every `j`.
pub fn is_contracting(lambda: &[GaussianRational]) -> bool {
    lambda.iter().all(|l| l.re.is_positive())
}

/// Every ratio `λ_j / λ_0` is a positive real.
pub fn is_aligned(lambda: &[GaussianRational]) -> Result<bool, FieldError> {
    if let Some(j) = lambda.iter().position(Zero::is_zero) {
        return Err(FieldError::DegenerateField { j });
    }
    let first = &lambda[0];
    Ok(lambda.iter().all(|l| (l / first).is_positive_real()))
}

/// Full classification of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub validity: ValidityReport,
    pub is_contracting: bool,
    /// `false` also when some eigenvalue is zero; see `degenerate`.
    pub is_aligned: bool,
    pub degenerate: bool,
    pub resonances: Vec<ResonanceRelation>,
    /// Targets whose resonance list came from the capped search.
    pub capped_targets: Vec<usize>,
    pub a_status: AStatus,
}

/// Classifies `field`; `cap` bounds the mixed-sign searches.
pub fn classify(field: &NormalFormField, cap: u32) -> Classification {
    let lambda = field.lambda();
    let aligned = is_aligned(lambda);
    let mut resonances = Vec::new();
    let mut capped_targets = Vec::new();
    for j in 1..field.n() {
        match resonance_relations(lambda, j) {
            Ok(r) => resonances.extend(r),
            Err(_) => {
                capped_targets.push(j);
                resonances.extend(resonance_relations_capped(lambda, j, cap).unwrap_or_default());
            }
        }
    }
    Classification {
        validity: validate_normal_form(field),
        is_contracting: is_contracting(lambda),
        is_aligned: *aligned.as_ref().unwrap_or(&false),
        degenerate: aligned.is_err(),
        resonances,
        capped_targets,
        a_status: compute_a(lambda, cap),
    }
}
