//! Exact rational scalars.
//!
//! Every structure constant in the kernel is rational, so the whole crate
//! computes over arbitrary-precision rationals (`num_rational::BigRational`).
//! Values are always reduced to lowest terms with a positive denominator;
//! `BigRational` maintains that invariant for us.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=i64::from(n) {
        acc *= k;
    }
    acc
}

/// `base^exp` as a big integer, with the convention `0^0 = 1`.
pub fn int_pow(base: i64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// `base^exp / exp!` — the coefficient of `t^exp` in `e^{base·t}`.
pub fn exp_coeff(base: i64, exp: u32) -> Rat {
    Rat::new(int_pow(base, exp), factorial(exp))
}

/// Parse an exact rational literal: `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    s.parse::<Rat>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Render a rational exactly as `p` or `p/q`.
pub fn rat_string(q: &Rat) -> String {
    q.to_string()
}

/// True when `q` has no fractional part.
pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Sign-split helper for pretty printers: `(is_negative, |q| as string)`.
pub fn signed_parts(q: &Rat) -> (bool, String) {
    (q.is_negative(), q.abs().to_string())
}
