//! `f64` functions that work without `std`.

use num_traits::Float;

pub(crate) fn exp(x: f64) -> f64 {
    Float::exp(x)
}

pub(crate) fn ln(x: f64) -> f64 {
    Float::ln(x)
}

pub(crate) fn ceil(x: f64) -> f64 {
    Float::ceil(x)
}

pub(crate) fn floor(x: f64) -> f64 {
    Float::floor(x)
}

pub(crate) fn powi(x: f64, e: i32) -> f64 {
    Float::powi(x, e)
}

pub(crate) fn powf(x: f64, e: f64) -> f64 {
    Float::powf(x, e)
}
