//! Sparse polynomials in `z₁…zₙ` and `z̄₁…z̄ₙ` with Gaussian-rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::multi_index::MultiIndex;
use super::AlgebraError;

/// Which family of variables a derivative or substitution acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// `z_j`
    Holo,
    /// `z̄_j`
    Anti,
}

/// The monomial `z^holo · z̄^anti`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub holo: MultiIndex,
    pub anti: MultiIndex,
}

impl Monomial {
    pub fn new(holo: MultiIndex, anti: MultiIndex) -> Self {
        Self { holo, anti }
    }

    pub fn holomorphic(holo: MultiIndex) -> Self {
        let n = holo.len();
        Self { holo, anti: MultiIndex::zeros(n) }
    }

    pub fn degree(&self) -> u32 {
        self.holo.degree() + self.anti.degree()
    }

    fn mul(&self, other: &Self) -> Self {
        Self { holo: self.holo.add(&other.holo), anti: self.anti.add(&other.anti) }
    }
}

/// Sparse mixed polynomial. Zero coefficients are never stored and terms
/// iterate in lex order of `(holo, anti)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MixedPolynomial {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::new(MultiIndex::zeros(n), MultiIndex::zeros(n)), c);
        p
    }

    /// `z_j`
    pub fn holo_var(n: usize, j: usize) -> Self {
        Self::var(n, Var::Holo, j)
    }

    /// `z̄_j`
    pub fn anti_var(n: usize, j: usize) -> Self {
        Self::var(n, Var::Anti, j)
    }

    pub fn var(n: usize, which: Var, j: usize) -> Self {
        let unit = MultiIndex::unit(n, j);
        let zeros = MultiIndex::zeros(n);
        let mono = match which {
            Var::Holo => Monomial::new(unit, zeros),
            Var::Anti => Monomial::new(zeros, unit),
        };
        let mut p = Self::zero(n);
        p.add_term(mono, GaussianRational::one());
        p
    }

    /// Single-term polynomial `c · z^holo · z̄^anti`.
    pub fn monomial(
        holo: MultiIndex,
        anti: MultiIndex,
        c: GaussianRational,
    ) -> Result<Self, AlgebraError> {
        if holo.len() != anti.len() {
            return Err(AlgebraError::DimensionMismatch { left: holo.len(), right: anti.len() });
        }
        let mut p = Self::zero(holo.len());
        p.add_term(Monomial::new(holo, anti), c);
        Ok(p)
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(n);
        for (mono, c) in terms {
            for len in [mono.holo.len(), mono.anti.len()] {
                if len != n {
                    return Err(AlgebraError::DimensionMismatch { left: n, right: len });
                }
            }
            p.add_term(mono, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> GaussianRational {
        self.terms.get(mono).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Adds `c` to the coefficient of `mono`, dropping the term if it cancels.
    pub(crate) fn add_term(&mut self, mono: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree `max |α| + |β|`; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True iff no term involves a `z̄` variable.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.anti.is_zero())
    }

    /// True iff some term has a nonzero exponent on the given variable.
    pub fn depends_on(&self, which: Var, j: usize) -> bool {
        self.terms.keys().any(|m| match which {
            Var::Holo => m.holo.get(j) != 0,
            Var::Anti => m.anti.get(j) != 0,
        })
    }

    fn check_dim(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative in `z_j` (`Holo`) or `z̄_j` (`Anti`), treating
    /// the two families as independent variables.
    pub fn wirtinger_d(&self, which: Var, j: usize) -> Result<Self, AlgebraError> {
        if j >= self.n {
            return Err(AlgebraError::IndexOutOfRange { index: j, n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let idx = match which {
                Var::Holo => &m.holo,
                Var::Anti => &m.anti,
            };
            let e = idx.get(j);
            if e == 0 {
                continue;
            }
            let lowered = idx.with(j, e - 1);
            let mono = match which {
                Var::Holo => Monomial::new(lowered, m.anti.clone()),
                Var::Anti => Monomial::new(m.holo.clone(), lowered),
            };
            out.add_term(mono, c.scale(&super::rational::integer(i64::from(e))));
        }
        Ok(out)
    }

    /// Antiderivative in one variable with zero constant of integration
    /// (no new terms free of that variable).
    pub fn antiderivative(&self, which: Var, j: usize) -> Result<Self, AlgebraError> {
        if j >= self.n {
            return Err(AlgebraError::IndexOutOfRange { index: j, n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (idx, other) = match which {
                Var::Holo => (&m.holo, &m.anti),
                Var::Anti => (&m.anti, &m.holo),
            };
            let e = idx.get(j) + 1;
            let raised = idx.with(j, e);
            let mono = match which {
                Var::Holo => Monomial::new(raised, other.clone()),
                Var::Anti => Monomial::new(other.clone(), raised),
            };
            let inv = super::rational::rational(1, i64::from(e));
            out.add_term(mono, c.scale(&inv));
        }
        Ok(out)
    }

    /// `p(…, c·x_j, …)` for one variable `x_j`.
    pub fn scale_var(&self, which: Var, j: usize, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            let e = match which {
                Var::Holo => m.holo.get(j),
                Var::Anti => m.anti.get(j),
            };
            let mut factor = GaussianRational::one();
            for _ in 0..e {
                factor = &factor * c;
            }
            out.add_term(m.clone(), a * &factor);
        }
        out
    }

    /// `p` with one variable set to zero.
    pub fn at_zero(&self, which: Var, j: usize) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| match which {
                    Var::Holo => m.holo.get(j) == 0,
                    Var::Anti => m.anti.get(j) == 0,
                })
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Complex conjugate as a function: swaps `z ↔ z̄` and conjugates coefficients.
    pub fn conjugate(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.anti.clone(), m.holo.clone()), c.conj()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `cap`. The flag reports whether
    /// anything was dropped.
    pub fn truncate(&self, cap: u32) -> (Self, bool) {
        let mut dropped = false;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| {
                let keep = m.degree() <= cap;
                dropped |= !keep;
                keep
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        (Self { n: self.n, terms }, dropped)
    }

    /// Floating evaluation with independent values for the `z` and `z̄` slots.
    pub fn eval(&self, holo: &[Complex64], anti: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex64();
            for (j, &e) in m.holo.exponents().iter().enumerate() {
                if e != 0 {
                    t *= holo[j].powu(e);
                }
            }
            for (j, &e) in m.anti.exponents().iter().enumerate() {
                if e != 0 {
                    t *= anti[j].powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates at a point of `ℂⁿ`, feeding `conj(z)` to the `z̄` slots.
    pub fn eval_at(&self, z: &[Complex64]) -> Complex64 {
        let anti: Vec<Complex64> = z.iter().map(|v| v.conj()).collect();
        self.eval(z, &anti)
    }

    /// Ring homomorphism sending `z_j ↦ holo[j]`, `z̄_j ↦ anti[j]` into any
    /// [`Algebra`].
    pub fn substitute<R: Algebra>(&self, holo: &[R], anti: &[R]) -> Result<R, AlgebraError> {
        if holo.len() != self.n || anti.len() != self.n {
            return Err(AlgebraError::MissingImage {
                expected: self.n,
                holo: holo.len(),
                anti: anti.len(),
            });
        }
        let first = holo.first().ok_or(AlgebraError::MissingImage {
            expected: self.n,
            holo: 0,
            anti: 0,
        })?;
        let arity = first.arity();
        for img in holo.iter().chain(anti) {
            if img.arity() != arity {
                return Err(AlgebraError::InconsistentTarget { left: arity, right: img.arity() });
            }
        }
        let one = first.alg_one();
        let mut holo_pows = PowerCache::new(holo, &one);
        let mut anti_pows = PowerCache::new(anti, &one);
        let mut acc = first.alg_zero();
        for (m, c) in &self.terms {
            let mut t = one.alg_scale(c);
            for (j, &e) in m.holo.exponents().iter().enumerate() {
                if e != 0 {
                    t = t.alg_mul(holo_pows.get(j, e));
                }
            }
            for (j, &e) in m.anti.exponents().iter().enumerate() {
                if e != 0 {
                    t = t.alg_mul(anti_pows.get(j, e));
                }
            }
            acc = acc.alg_add(&t);
        }
        Ok(acc)
    }

    /// Appends `extra` unused variables at the end (both families).
    pub fn extend_vars(&self, extra: usize) -> Self {
        let pad = |m: &MultiIndex| {
            let mut e = m.exponents().to_vec();
            e.extend(core::iter::repeat_n(0, extra));
            MultiIndex::new(e)
        };
        Self {
            n: self.n + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(pad(&m.holo), pad(&m.anti)), c.clone()))
                .collect(),
        }
    }

    /// Renders with caller-supplied variable names for both families.
    pub fn display_with(&self, holo_names: &[&str], anti_names: &[&str]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            s.push('0');
            return s;
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let is_const = m.holo.is_zero() && m.anti.is_zero();
            if is_const || !c.is_one() {
                let _ = write!(s, "{c}");
            }
            let mut first = is_const || !c.is_one();
            let mut factor = |name: &str, e: u32| {
                if e == 0 {
                    return;
                }
                if first {
                    s.push('*');
                }
                first = true;
                s.push_str(name);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            };
            for (j, &e) in m.holo.exponents().iter().enumerate() {
                factor(holo_names[j], e);
            }
            for (j, &e) in m.anti.exponents().iter().enumerate() {
                factor(anti_names[j], e);
            }
        }
        s
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let holo: Vec<String> = (1..=self.n).map(|j| alloc::format!("z{j}")).collect();
        let anti: Vec<String> = (1..=self.n).map(|j| alloc::format!("zb{j}")).collect();
        let h: Vec<&str> = holo.iter().map(String::as_str).collect();
        let a: Vec<&str> = anti.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&h, &a))
    }
}

/// Checked product: errors on mismatched dimensions.
pub fn poly_mul(p: &MixedPolynomial, q: &MixedPolynomial) -> Result<MixedPolynomial, AlgebraError> {
    p.checked_mul(q)
}

// Operator forms panic on dimension mismatch; the `checked_*` methods return errors.
impl<'a> Add<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<'a> Sub<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<'a> Mul<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn neg(self) -> MixedPolynomial {
        self.scale(&-GaussianRational::one())
    }
}

/// Target ring of [`MixedPolynomial::substitute`]. `arity` tags the ambient
/// space so mixed targets can be rejected up front.
pub trait Algebra: Clone {
    fn arity(&self) -> usize;
    fn alg_zero(&self) -> Self;
    fn alg_one(&self) -> Self;
    fn alg_add(&self, other: &Self) -> Self;
    fn alg_mul(&self, other: &Self) -> Self;
    fn alg_scale(&self, c: &GaussianRational) -> Self;
}

impl Algebra for MixedPolynomial {
    fn arity(&self) -> usize {
        self.n
    }
    fn alg_zero(&self) -> Self {
        Self::zero(self.n)
    }
    fn alg_one(&self) -> Self {
        Self::one(self.n)
    }
    fn alg_add(&self, other: &Self) -> Self {
        self + other
    }
    fn alg_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn alg_scale(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
}

struct PowerCache<'a, R> {
    base: &'a [R],
    one: &'a R,
    pows: Vec<Vec<R>>,
}

impl<'a, R: Algebra> PowerCache<'a, R> {
    fn new(base: &'a [R], one: &'a R) -> Self {
        Self { base, one, pows: vec![Vec::new(); base.len()] }
    }

    fn get(&mut self, j: usize, e: u32) -> &R {
        let list = &mut self.pows[j];
        if list.is_empty() {
            list.push(self.one.clone());
        }
        while list.len() <= e as usize {
            let next = list[list.len() - 1].alg_mul(&self.base[j]);
            list.push(next);
        }
        &list[e as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::integer;

    fn z(n: usize, j: usize) -> MixedPolynomial {
        MixedPolynomial::holo_var(n, j)
    }
    fn zb(n: usize, j: usize) -> MixedPolynomial {
        MixedPolynomial::anti_var(n, j)
    }

    #[test]
    fn mul_examples() {
        let p = &z(1, 0) * &zb(1, 0);
        let mono = Monomial::new(MultiIndex::new(vec![1]), MultiIndex::new(vec![1]));
        assert_eq!(p.coeff(&mono), GaussianRational::one());
        assert_eq!(p.len(), 1);

        let q = &z(2, 0) + &zb(2, 1);
        assert!((&q * &MixedPolynomial::zero(2)).is_zero());

        let i = GaussianRational::i();
        let lhs = &z(1, 0).pow(2) * &z(1, 0).scale(&i);
        assert_eq!(lhs, z(1, 0).pow(3).scale(&i));

        assert!(matches!(
            poly_mul(&z(1, 0), &z(2, 0)),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wirtinger_examples() {
        let p = &z(1, 0) * &zb(1, 0);
        assert_eq!(p.wirtinger_d(Var::Anti, 0).unwrap(), z(1, 0));
        assert!(z(2, 0).pow(3).wirtinger_d(Var::Anti, 1).unwrap().is_zero());

        // z1^2 zb1^2 z2 zb2 → 2 z1^2 zb1 z2 zb2
        let p = &(&z(2, 0).pow(2) * &zb(2, 0).pow(2)) * &(&z(2, 1) * &zb(2, 1));
        let expected = (&(&z(2, 0).pow(2) * &zb(2, 0)) * &(&z(2, 1) * &zb(2, 1)))
            .scale(&GaussianRational::real(integer(2)));
        assert_eq!(p.wirtinger_d(Var::Anti, 0).unwrap(), expected);
        assert!(matches!(p.wirtinger_d(Var::Holo, 2), Err(AlgebraError::IndexOutOfRange { .. })));
    }

    #[test]
    fn substitute_examples() {
        let two = GaussianRational::from_int(2, 0);
        let p = &z(1, 0) * &zb(1, 0);
        let eta = z(1, 0).scale(&two);
        let eta_bar = zb(1, 0).scale(&two);
        let out = p.substitute(&[eta], &[eta_bar]).unwrap();
        assert_eq!(out, (&z(1, 0) * &zb(1, 0)).scale(&GaussianRational::from_int(4, 0)));

        let err = p.substitute::<MixedPolynomial>(&[z(1, 0)], &[]).unwrap_err();
        assert!(matches!(err, AlgebraError::MissingImage { .. }));
        let err = p.substitute(&[z(1, 0)], &[z(2, 0)]).unwrap_err();
        assert!(matches!(err, AlgebraError::InconsistentTarget { .. }));
    }

    #[test]
    fn truncate_reports_drops() {
        let p = &z(2, 0) + &(&z(2, 1).pow(2) * &zb(2, 0));
        let (t, dropped) = p.truncate(2);
        assert!(dropped);
        assert_eq!(t, z(2, 0));
        let (t, dropped) = p.truncate(3);
        assert!(!dropped);
        assert_eq!(t, p);
    }

    #[test]
    fn conjugate_swaps_families() {
        let p = z(2, 0).pow(2).scale(&GaussianRational::i());
        let c = p.conjugate();
        assert_eq!(c, zb(2, 0).pow(2).scale(&-GaussianRational::i()));
        let pt = [Complex64::new(0.3, -0.7), Complex64::new(1.1, 0.2)];
        assert!((c.eval_at(&pt) - p.eval_at(&pt).conj()).norm() < 1e-14);
    }

    #[test]
    fn antiderivative_and_scaling() {
        let p = &z(2, 1).pow(2) + &z(2, 0);
        let ip = p.antiderivative(Var::Holo, 1).unwrap();
        assert_eq!(ip.wirtinger_d(Var::Holo, 1).unwrap(), p);
        assert!(ip.at_zero(Var::Holo, 1).is_zero());
        let neg = p.scale_var(Var::Holo, 1, &-GaussianRational::one());
        assert_eq!(neg, p);
        let odd = z(2, 1).pow(3).scale_var(Var::Holo, 1, &GaussianRational::from_int(2, 0));
        assert_eq!(odd, z(2, 1).pow(3).scale(&GaussianRational::from_int(8, 0)));
    }

    #[test]
    fn display_is_readable() {
        extern crate std;
        use std::string::ToString;
        let p = &z(2, 0).pow(2).scale(&GaussianRational::i()) + &zb(2, 1);
        assert_eq!(p.to_string(), "zb2 + i*z1^2");
        assert_eq!(MixedPolynomial::zero(2).to_string(), "0");
    }
}
