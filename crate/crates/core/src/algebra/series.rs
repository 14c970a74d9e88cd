use super::poly::MixedPolynomial;

/// Finite surrogate of a formal mixed power series: a polynomial whose terms
/// all have total degree `|α| + |β| ≤ degree_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: MixedPolynomial,
    degree_cap: u32,
}

/// A value together with whether producing it dropped terms above the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated<T> {
    pub value: T,
    pub truncated: bool,
}

impl TruncatedSeries {
    /// Truncates `poly` to the cap, reporting whether terms were dropped.
    pub fn new(poly: MixedPolynomial, degree_cap: u32) -> Truncated<Self> {
        let (poly, truncated) = poly.truncate(degree_cap);
        Truncated { value: Self { poly, degree_cap }, truncated }
    }

    pub fn poly(&self) -> &MixedPolynomial {
        &self.poly
    }

    pub fn into_poly(self) -> MixedPolynomial {
        self.poly
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}
