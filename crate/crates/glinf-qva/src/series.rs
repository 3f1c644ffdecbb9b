//! Truncated multivariate Laurent series over generic coefficient spaces.
//!
//! Every generating-function identity in this crate is checked coefficient by
//! coefficient through this engine. A [`TruncSeries`] carries an explicit
//! per-variable exponent window; terms produced outside the window are
//! dropped and the series is flagged as truncated. Windows are always chosen
//! by the caller — each verification suite documents the window on which the
//! identity's finite content is fully captured, and comparisons never
//! silently extend past a window.
//!
//! Coefficients only need an additive-module contract ([`Coeff`]): exact
//! rationals, algebra elements, and module vectors all plug in. Series with
//! module-valued coefficients form no ring, so general multiplication is
//! only offered as scalar-series × module-series ([`mul_series`]); a
//! module × module product is unrepresentable by construction.

use crate::glinf::GlInfElem;
use crate::glinf_e::GlInfEElem;
use crate::rational::{exp_coeff, Rat};
use std::collections::BTreeMap;
use std::fmt;

/// Formal variable names used across the identity suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X,
    X0,
    X1,
    X2,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::X0 => write!(f, "x0"),
            Var::X1 => write!(f, "x1"),
            Var::X2 => write!(f, "x2"),
        }
    }
}

/// Minimal additive-module contract for series coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn scale_rat(&self, q: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        <Rat as num_traits::Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other
    }
    fn scale_rat(&self, q: &Rat) -> Self {
        self.clone() * q
    }
}

impl Coeff for GlInfElem {
    fn zero() -> Self {
        GlInfElem::zero()
    }
    fn is_zero(&self) -> bool {
        GlInfElem::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn scale_rat(&self, q: &Rat) -> Self {
        self.scale(q)
    }
}

impl Coeff for GlInfEElem {
    fn zero() -> Self {
        GlInfEElem::zero()
    }
    fn is_zero(&self) -> bool {
        GlInfEElem::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn scale_rat(&self, q: &Rat) -> Self {
        self.scale(q)
    }
}

/// A finitely supported Laurent series in one or two formal variables, with
/// an inclusive exponent window per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    vars: Vec<Var>,
    window: Vec<(i64, i64)>,
    terms: BTreeMap<Vec<i64>, C>,
    truncated: bool,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(vars: Vec<Var>, window: Vec<(i64, i64)>) -> Self {
        assert_eq!(vars.len(), window.len());
        for &(lo, hi) in &window {
            assert!(lo <= hi, "window bounds out of order");
        }
        TruncSeries {
            vars,
            window,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn window(&self) -> &[(i64, i64)] {
        &self.window
    }

    /// True when some operation dropped a term outside the window.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    fn in_window(&self, exps: &[i64]) -> bool {
        exps.iter()
            .zip(&self.window)
            .all(|(&e, &(lo, hi))| lo <= e && e <= hi)
    }

    /// Add `c` to the coefficient at `exps`, dropping (and flagging) terms
    /// outside the window.
    pub fn insert(&mut self, exps: Vec<i64>, c: C) {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        if !self.in_window(&exps) {
            self.truncated = true;
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum on the per-variable intersection window.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable sets must agree");
        let window = intersect(&self.window, &other.window);
        let mut out = TruncSeries::new(self.vars.clone(), window);
        out.truncated = self.truncated || other.truncated;
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        let mut out = TruncSeries::new(self.vars.clone(), self.window.clone());
        out.truncated = self.truncated;
        if q.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.scale_rat(q));
        }
        out
    }

    /// Multiply by the Laurent monomial with the given exponent per variable.
    /// The window shifts along, so no information is lost.
    pub fn shift(&self, deltas: &[i64]) -> Self {
        assert_eq!(deltas.len(), self.vars.len());
        let window = self
            .window
            .iter()
            .zip(deltas)
            .map(|(&(lo, hi), &d)| (lo + d, hi + d))
            .collect();
        let mut out = TruncSeries::new(self.vars.clone(), window);
        out.truncated = self.truncated;
        for (e, c) in &self.terms {
            let shifted = e.iter().zip(deltas).map(|(&a, &d)| a + d).collect();
            out.insert(shifted, c.clone());
        }
        out
    }

    /// Reinterpret on a caller-chosen window; terms outside are dropped and
    /// flagged.
    pub fn rewindow(&self, window: Vec<(i64, i64)>) -> Self {
        let mut out = TruncSeries::new(self.vars.clone(), window);
        out.truncated = self.truncated;
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    /// Embed into a larger variable set (missing exponents are zero).
    pub fn embed(&self, vars: Vec<Var>, window: Vec<(i64, i64)>) -> Self {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .expect("embed target must contain all variables")
            })
            .collect();
        let mut out = TruncSeries::new(vars, window);
        out.truncated = self.truncated;
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; out.vars.len()];
            for (k, &p) in positions.iter().enumerate() {
                exps[p] = e[k];
            }
            out.insert(exps, c.clone());
        }
        out
    }
}

fn intersect(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    a.iter()
        .zip(b)
        .map(|(&(lo1, hi1), &(lo2, hi2))| {
            let lo = lo1.max(lo2);
            let hi = hi1.min(hi2);
            assert!(lo <= hi, "windows do not overlap");
            (lo, hi)
        })
        .collect()
}

/// Cauchy product of a scalar series with a (possibly module-valued) series,
/// truncated to the caller's output window. Module × module products are
/// ruled out at the type level: the left factor is always scalar.
pub fn mul_series<C: Coeff>(
    a: &TruncSeries<Rat>,
    b: &TruncSeries<C>,
    out_window: &[(i64, i64)],
) -> TruncSeries<C> {
    assert_eq!(a.vars, b.vars, "variable sets must agree");
    let mut out = TruncSeries::new(a.vars.clone(), out_window.to_vec());
    out.truncated = a.truncated || b.truncated;
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let exps: Vec<i64> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
            out.insert(exps, cb.scale_rat(ca));
        }
    }
    out
}

impl TruncSeries<Rat> {
    /// Scalar series product on the intersection window.
    pub fn mul(&self, other: &Self) -> Self {
        let window = intersect(&self.window, &other.window);
        mul_series(self, other, &window)
    }

    /// The constant series 1.
    pub fn one(vars: Vec<Var>, window: Vec<(i64, i64)>) -> Self {
        let mut out = TruncSeries::new(vars, window);
        let n = out.vars.len();
        out.insert(vec![0; n], Rat::from_integer(1.into()));
        out
    }
}

/// Expansion of e^{a(x₁-x₂)} through total order `order`:
/// Σ_{i+j ≤ order} a^{i+j} (-1)^j x₁^i x₂^j / (i! j!).
///
/// The result is marked truncated when `a ≠ 0` since the true support is
/// infinite; callers pick `order` so the identity under test is complete on
/// their comparison window.
pub fn exp_diff(a: i64, order: u32) -> TruncSeries<Rat> {
    let order_i = i64::from(order);
    let mut out = TruncSeries::new(
        vec![Var::X1, Var::X2],
        vec![(0, order_i), (0, order_i)],
    );
    for i in 0..=order_i {
        for j in 0..=(order_i - i) {
            let c = exp_coeff(a, i as u32) * exp_coeff(-a, j as u32);
            out.insert(vec![i, j], c);
        }
    }
    if a != 0 {
        out.truncated = true;
    }
    out
}

/// The coordinate substitution x₁ = x₂·e^{x₀} applied to a series in
/// (x₁, x₂): each x₁^n maps to x₂^n Σ_j n^j x₀^j / j!, truncated to
/// `x0_order`. The result lives in (x₀, x₂).
pub fn substitute_phi<C: Coeff>(a: &TruncSeries<C>, x0_order: u32) -> TruncSeries<C> {
    assert_eq!(a.vars, vec![Var::X1, Var::X2], "substitution needs (x1, x2)");
    let (x1_lo, x1_hi) = a.window[0];
    let (x2_lo, x2_hi) = a.window[1];
    let mut out = TruncSeries::new(
        vec![Var::X0, Var::X2],
        vec![(0, i64::from(x0_order)), (x1_lo + x2_lo, x1_hi + x2_hi)],
    );
    out.truncated = a.truncated;
    for (e, c) in &a.terms {
        let (n, p) = (e[0], e[1]);
        for j in 0..=x0_order {
            out.insert(vec![i64::from(j), n + p], c.scale_rat(&exp_coeff(n, j)));
        }
        if n != 0 {
            out.truncated = true;
        }
    }
    out
}

/// Outcome of a coefficientwise comparison.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub pass: bool,
    /// First differing exponent vector with both rendered coefficients.
    pub first_diff: Option<(Vec<i64>, String, String)>,
    /// Window the comparison ran on.
    pub window: Vec<(i64, i64)>,
    pub lhs_truncated: bool,
    pub rhs_truncated: bool,
}

/// Compare two series coefficientwise on the intersection of their windows.
/// Errors when the variable sets differ.
pub fn check_identity<C: Coeff>(
    lhs: &TruncSeries<C>,
    rhs: &TruncSeries<C>,
) -> Result<CheckReport, String> {
    if lhs.vars != rhs.vars {
        return Err(format!(
            "incomparable series: variables {:?} vs {:?}",
            lhs.vars, rhs.vars
        ));
    }
    let window = intersect(&lhs.window, &rhs.window);
    let in_win = |e: &[i64]| {
        e.iter()
            .zip(&window)
            .all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    };
    let mut keys: Vec<Vec<i64>> = lhs
        .terms
        .keys()
        .chain(rhs.terms.keys())
        .filter(|e| in_win(e))
        .cloned()
        .collect();
    keys.sort();
    keys.dedup();
    for e in keys {
        let a = lhs.coeff(&e);
        let b = rhs.coeff(&e);
        if a != b {
            return Ok(CheckReport {
                pass: false,
                first_diff: Some((e, a.to_string(), b.to_string())),
                window,
                lhs_truncated: lhs.truncated,
                rhs_truncated: rhs.truncated,
            });
        }
    }
    Ok(CheckReport {
        pass: true,
        first_diff: None,
        window,
        lhs_truncated: lhs.truncated,
        rhs_truncated: rhs.truncated,
    })
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &p) in self.vars.iter().zip(e) {
                if p != 0 {
                    write!(f, "*{v}^{p}")?;
                }
            }
        }
        if self.truncated {
            write!(f, " [truncated]")?;
        }
        Ok(())
    }
}
