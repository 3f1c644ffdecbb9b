//! The exponential-polynomial coefficient ring.
//!
//! Working ring: R = ℚ-span{ t^r e^{ct} : r ∈ ℤ, c ∈ ℤ }, viewed inside the
//! formal Laurent-series field ℚ((t)). The family {t^r e^{ct}} is linearly
//! independent there, so the term map below is a canonical form. R is closed
//! under the companion-algebra bracket: that bracket only ever multiplies a
//! coefficient by e^{dt} with d ∈ ℤ (which shifts rates, `mul_exp`) and takes
//! twisted residues (`residue_twisted`), both of which stay inside R. That
//! closure is the reason the whole kernel can be exact: infinite Laurent
//! tails like t^{-1}e^{t} are finite data here.
//!
//! Exponential rates are restricted to ℤ on purpose — every rate produced by
//! the constructions we implement is an integer difference of row indices.

use crate::rational::{exp_coeff, parse_rat, signed_parts, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// Element of R: finite sum Σ q · t^r · e^{ct}, keyed by `(r, c)`.
///
/// Invariant: no zero coefficient is stored, so equality of maps is equality
/// in ℚ((t)).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term q · t^r · e^{ct}.
    pub fn term(q: Rat, r: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((r, c), q);
        }
        ExpPoly { terms }
    }

    /// t^r (rate zero).
    pub fn t_pow(r: i64) -> Self {
        Self::term(Rat::from_integer(1.into()), r, 0)
    }

    /// t^r e^{ct} with coefficient 1.
    pub fn t_pow_exp(r: i64, c: i64) -> Self {
        Self::term(Rat::from_integer(1.into()), r, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate stored terms as `((r, c), coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: (i64, i64), q: Rat) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + q;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ExpPoly) {
        for (k, q) in &other.terms {
            self.insert(*k, q.clone());
        }
    }

    pub fn scale(&self, q: &Rat) -> ExpPoly {
        if q.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.clone() * q))
                .collect(),
        }
    }

    /// Multiply by e^{dt}: every term (r, c) becomes (r, c + d).
    pub fn mul_exp(&self, d: i64) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(r, c), q)| ((r, c + d), q.clone()))
                .collect(),
        }
    }

    /// Res_t self(t)·e^{dt} — the coefficient of t^{-1} after twisting.
    ///
    /// For a basis term t^r e^{ct} this is (c+d)^{-r-1}/(-r-1)! when r ≤ -1
    /// and 0 otherwise, with 0^0 = 1 (so that Res_t t^{-1} = 1).
    pub fn residue_twisted(&self, d: i64) -> Rat {
        let mut acc = Rat::zero();
        for (&(r, c), q) in &self.terms {
            if r <= -1 {
                acc += q * exp_coeff(c + d, (-r - 1) as u32);
            }
        }
        acc
    }

    /// Coefficient of t^n in the Laurent expansion.
    ///
    /// For a basis term t^r e^{ct} this is c^{n-r}/(n-r)! when n ≥ r, else 0.
    pub fn mode_coeff(&self, n: i64) -> Rat {
        let mut acc = Rat::zero();
        for (&(r, c), q) in &self.terms {
            if n >= r {
                acc += q * exp_coeff(c, (n - r) as u32);
            }
        }
        acc
    }

    /// Laurent coefficients of t^n for every n in `lo..=hi`.
    pub fn mode_window(&self, lo: i64, hi: i64) -> Vec<(i64, Rat)> {
        assert!(lo <= hi, "mode_window requires lo <= hi");
        (lo..=hi).map(|n| (n, self.mode_coeff(n))).collect()
    }

    /// Lowest t-power with a stored term, i.e. the Laurent order.
    ///
    /// t^r e^{ct} = t^r + c·t^{r+1} + … starts exactly at t^r, and distinct
    /// stored terms cannot cancel at their minimal key (the key map is
    /// canonical), so this is the true order of the series.
    pub fn min_t_power(&self) -> Option<i64> {
        self.terms.keys().map(|&(r, _)| r).min()
    }
}

impl Add<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&ExpPoly> for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.insert(*k, -q.clone());
        }
        out
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(k, q)| (*k, -q.clone())).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Textual form: `q * t^r * exp(c*t)`, with unit factors elided.
// ---------------------------------------------------------------------------

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(r, c), q)) in self.terms.iter().enumerate() {
            let (neg, mag) = signed_parts(q);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || (r == 0 && c == 0) {
                factors.push(mag);
            }
            if r != 0 {
                factors.push(format!("t^{r}"));
            }
            if c != 0 {
                factors.push(format!("exp({c}*t)"));
            }
            write!(f, "{}", factors.join(" * "))?;
        }
        Ok(())
    }
}

impl FromStr for ExpPoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = ExpPoly::zero();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err("empty exponential-polynomial expression".into());
        }
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let term_end = find_term_end(rest);
            let term = &rest[..term_end];
            let (q, r, c) = parse_term(term)?;
            out.add_assign(&ExpPoly::term(q * Rat::from_integer(sign.into()), r, c));
            rest = rest[term_end..].trim_start();
            if rest.is_empty() {
                return Ok(out);
            }
            sign = match rest.chars().next() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Err(format!("expected '+' or '-' at {rest:?}")),
            };
            rest = rest[1..].trim_start();
        }
    }
}

fn find_term_end(s: &str) -> usize {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 => {
                // A sign inside an exponent like t^-2 follows '^'.
                let prev = s[..i].trim_end().chars().last();
                if prev != Some('^') && prev.is_some() {
                    return i;
                }
            }
            _ => {}
        }
    }
    s.len()
}

/// Split a term on '*' at parenthesis depth zero, so `exp(c*t)` stays whole.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

fn parse_term(term: &str) -> Result<(Rat, i64, i64), String> {
    let mut q = Rat::from_integer(1.into());
    let mut r = 0i64;
    let mut c = 0i64;
    for factor in split_factors(term) {
        let factor = factor.trim();
        if factor.is_empty() {
            continue;
        }
        if let Some(body) = factor.strip_prefix("exp(") {
            let inner = body
                .strip_suffix("t)")
                .ok_or_else(|| format!("malformed exp factor {factor:?}"))?;
            c = inner
                .trim_end_matches('*')
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("bad rate in {factor:?}"))?;
        } else if let Some(body) = factor.strip_prefix("t^") {
            r = body
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("bad exponent in {factor:?}"))?;
        } else if factor == "t" {
            r = 1;
        } else {
            q *= parse_rat(factor)?;
        }
    }
    Ok((q, r, c))
}
