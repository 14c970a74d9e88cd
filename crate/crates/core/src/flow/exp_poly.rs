use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;

use crate::algebra::{Algebra, GaussianRational, MixedPolynomial, Var};

/// Exponential factor `e^{holo·ζ + anti·ζ̄}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpWeight {
    pub holo: GaussianRational,
    pub anti: GaussianRational,
}

impl ExpWeight {
    pub fn holomorphic(w: GaussianRational) -> Self {
        Self { holo: w, anti: GaussianRational::zero() }
    }

    fn add(&self, other: &Self) -> Self {
        Self { holo: &self.holo + &other.holo, anti: &self.anti + &other.anti }
    }

    fn conj(&self) -> Self {
        Self { holo: self.anti.conj(), anti: self.holo.conj() }
    }
}

/// Exponential polynomial `Σ e^{w·ζ + w′·ζ̄} · p_{w,w′}(η, ζ, η̄, ζ̄)`.
///
/// The polynomial parts live in `n + 1` variables per family: `η_0 … η_{n−1}`
/// then `ζ` at index `n`. Distinct weight pairs are linearly independent over
/// polynomials, so a term-wise zero test is an exact identity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolynomial {
    vars: usize,
    terms: BTreeMap<ExpWeight, MixedPolynomial>,
}

impl ExpPolynomial {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn from_term(weight: ExpWeight, poly: MixedPolynomial) -> Self {
        let mut out = Self::zero(poly.n());
        out.add_term(weight, poly);
        out
    }

    fn add_term(&mut self, weight: ExpWeight, poly: MixedPolynomial) {
        if poly.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&weight) {
            Some(existing) => &existing + &poly,
            None => poly,
        };
        if !merged.is_zero() {
            self.terms.insert(weight, merged);
        }
    }

    /// Number of polynomial variables per family (`n + 1`).
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpWeight, &MixedPolynomial)> {
        self.terms.iter()
    }

    fn zeta(&self) -> usize {
        self.vars - 1
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), -p);
        }
        out
    }

    /// Complex conjugate: `ζ ↔ ζ̄`, `η ↔ η̄`, conjugated coefficients and weights.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (w, p) in &self.terms {
            out.add_term(w.conj(), p.conjugate());
        }
        out
    }

    /// `∂/∂ζ`, treating `ζ` and `ζ̄` as independent.
    pub fn d_zeta(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (w, p) in &self.terms {
            let dp = p.wirtinger_d(Var::Holo, self.zeta()).expect("zeta index");
            out.add_term(w.clone(), &p.scale(&w.holo) + &dp);
        }
        out
    }

    /// Terms that depend on `ζ̄` through the weight or the polynomial part.
    pub fn zeta_bar_terms(&self) -> Vec<(&ExpWeight, &MixedPolynomial)> {
        let zeta = self.zeta();
        self.terms
            .iter()
            .filter(|(w, p)| !w.anti.is_zero() || p.depends_on(Var::Anti, zeta))
            .collect()
    }

    /// No term depends on `ζ̄`.
    pub fn is_holomorphic_in_zeta(&self) -> bool {
        self.zeta_bar_terms().is_empty()
    }

    /// Floating evaluation at `(η, ζ)` with `η̄, ζ̄` taken as conjugates.
    pub fn eval(&self, eta: &[Complex64], zeta: Complex64) -> Complex64 {
        let mut point: Vec<Complex64> = eta.to_vec();
        point.push(zeta);
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, p) in &self.terms {
            let e = (w.holo.to_complex64() * zeta + w.anti.to_complex64() * zeta.conj()).exp();
            acc += e * p.eval_at(&point);
        }
        acc
    }

    /// Human-readable closed form with `eta1 … etan, zeta` variable names.
    pub fn display(&self) -> String {
        let n = self.vars - 1;
        let mut holo: Vec<String> = (1..=n).map(|j| alloc::format!("eta{j}")).collect();
        holo.push(String::from("zeta"));
        let mut anti: Vec<String> = (1..=n).map(|j| alloc::format!("etab{j}")).collect();
        anti.push(String::from("zetab"));
        let h: Vec<&str> = holo.iter().map(String::as_str).collect();
        let a: Vec<&str> = anti.iter().map(String::as_str).collect();
        let mut s = String::new();
        if self.terms.is_empty() {
            s.push('0');
        }
        for (k, (w, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let mut exps = Vec::new();
            if !w.holo.is_zero() {
                exps.push(alloc::format!("{}*zeta", w.holo));
            }
            if !w.anti.is_zero() {
                exps.push(alloc::format!("{}*zetab", w.anti));
            }
            if exps.is_empty() {
                let _ = write!(s, "({})", p.display_with(&h, &a));
            } else {
                let _ = write!(s, "exp({})*({})", exps.join(" + "), p.display_with(&h, &a));
            }
        }
        s
    }
}

impl Algebra for ExpPolynomial {
    fn arity(&self) -> usize {
        self.vars
    }

    fn alg_zero(&self) -> Self {
        Self::zero(self.vars)
    }

    fn alg_one(&self) -> Self {
        Self::from_term(ExpWeight::default(), MixedPolynomial::one(self.vars))
    }

    fn alg_add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p.clone());
        }
        out
    }

    fn alg_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                out.add_term(wa.add(wb), pa * pb);
            }
        }
        out
    }

    fn alg_scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.vars);
        for (w, p) in &self.terms {
            out.add_term(w.clone(), p.scale(c));
        }
        out
    }
}
