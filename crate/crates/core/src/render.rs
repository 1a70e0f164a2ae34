//! Shared pieces of the canonical text format.
//!
//! Sums render as `-3*x^2 + 2*y`: a unit coefficient is dropped, a negative
//! coefficient becomes a ` - ` separator, and the zero element is `0`.
//! Rational coefficients render as `3/2`, which the expression grammar reads
//! back as a single literal.

use num_traits::{One, Signed, Zero};

use crate::poly::Rat;

/// Renders `Σ c * m` where `m` is an already rendered monomial (`""` for 1).
pub fn render_sum<I>(terms: I) -> String
where
    I: IntoIterator<Item = (Rat, String)>,
{
    let mut out = String::new();
    for (coeff, mono) in terms {
        if coeff.is_zero() {
            continue;
        }
        let negative = coeff.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let abs = coeff.abs();
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_power(name: &str, exp: i64) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

/// Wraps `s` in parentheses unless it is a single atom or a single product.
pub fn parenthesize(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(' ') || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}
