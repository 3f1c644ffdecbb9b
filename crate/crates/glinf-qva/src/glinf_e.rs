//! The exponential companion Lie algebra.
//!
//! Underlying space: E ⊗ ℚ((t)) ⊕ ℚK with E spanned by symbols e_m (m ∈ ℤ),
//! restricted to the bracket-closed coefficient subring R of
//! exponential polynomials (see [`crate::exppoly`]). The bracket of
//! e_m ⊗ g(t) and e_n ⊗ h(t) is defined by a double residue against the
//! generating distributions; evaluating both residues symbolically gives the
//! closed form implemented here:
//!
//! ```text
//! [e_m ⊗ g, e_n ⊗ h] = R_g · (e_m ⊗ h·e^{-(m-n)t})
//!                    - R_h · (e_n ⊗ g·e^{(m-n)t})
//!                    + R_g · R_h · f(m,n) · K
//! ```
//!
//! with R_g = Res_t g(t)·e^{(m-n)t} and R_h = Res_t h(t)·e^{(n-m)t}.
//!
//! Why R is closed under this bracket: the only ring operations used are
//! multiplication by e^{±(m-n)t} (a rate shift, staying in R) and the twisted
//! residue (a scalar). The closed form is validated against an independent
//! truncated-series expansion of the defining generating identity in the
//! verification suites; see `verify::eq33_suite`.
//!
//! The mode generators are B(m,r) = e_m ⊗ t^r. The ones with r ≥ 0 span an
//! abelian subalgebra (both residues vanish there).

use crate::exppoly::ExpPoly;
use crate::glinf::f_fn;
use crate::rational::{signed_parts, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Element of the companion algebra: finite map m ↦ g_m(t) for e_m ⊗ g_m(t),
/// plus a central coefficient. No zero coefficient ring elements are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GlInfEElem {
    parts: BTreeMap<i64, ExpPoly>,
    central: Rat,
}

/// Position in the descending filtration F[n] (F[n] = E ⊗ t^n ℚ[[t]] for
/// n ≥ 1, plus the center for n ≤ 0). `Infinite` is the zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltDegree {
    Finite(i64),
    Infinite,
}

impl FiltDegree {
    /// Filtration sum, with the zero element absorbing.
    pub fn plus(self, other: FiltDegree) -> FiltDegree {
        match (self, other) {
            (FiltDegree::Finite(a), FiltDegree::Finite(b)) => FiltDegree::Finite(a + b),
            _ => FiltDegree::Infinite,
        }
    }

    pub fn at_least(self, other: FiltDegree) -> bool {
        match (self, other) {
            (FiltDegree::Infinite, _) => true,
            (FiltDegree::Finite(_), FiltDegree::Infinite) => false,
            (FiltDegree::Finite(a), FiltDegree::Finite(b)) => a >= b,
        }
    }
}

impl GlInfEElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Mode generator B(m,r) = e_m ⊗ t^r.
    pub fn mode(m: i64, r: i64) -> Self {
        Self::part(m, ExpPoly::t_pow(r))
    }

    /// e_m ⊗ g(t).
    pub fn part(m: i64, g: ExpPoly) -> Self {
        let mut parts = BTreeMap::new();
        if !g.is_zero() {
            parts.insert(m, g);
        }
        GlInfEElem {
            parts,
            central: Rat::zero(),
        }
    }

    /// The central element K.
    pub fn central_k() -> Self {
        GlInfEElem {
            parts: BTreeMap::new(),
            central: Rat::from_integer(1.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty() && self.central.is_zero()
    }

    pub fn central(&self) -> &Rat {
        &self.central
    }

    pub fn parts(&self) -> impl Iterator<Item = (&i64, &ExpPoly)> {
        self.parts.iter()
    }

    pub fn part_of(&self, m: i64) -> Option<&ExpPoly> {
        self.parts.get(&m)
    }

    pub fn add_part(&mut self, m: i64, g: &ExpPoly) {
        if g.is_zero() {
            return;
        }
        let entry = self.parts.entry(m).or_default();
        entry.add_assign(g);
        if entry.is_zero() {
            self.parts.remove(&m);
        }
    }

    pub fn add_central(&mut self, q: Rat) {
        self.central += q;
    }

    pub fn scale(&self, q: &Rat) -> GlInfEElem {
        if q.is_zero() {
            return GlInfEElem::zero();
        }
        GlInfEElem {
            parts: self.parts.iter().map(|(m, g)| (*m, g.scale(q))).collect(),
            central: self.central.clone() * q,
        }
    }

    /// The Lie bracket, computed part by part through the closed form of the
    /// double-residue definition. K is central; the result is canonical.
    pub fn bracket(&self, other: &GlInfEElem) -> GlInfEElem {
        let mut out = GlInfEElem::zero();
        for (&m, g) in &self.parts {
            for (&n, h) in &other.parts {
                let rg = g.residue_twisted(m - n);
                let rh = h.residue_twisted(n - m);
                if !rg.is_zero() {
                    out.add_part(m, &h.mul_exp(n - m).scale(&rg));
                }
                if !rh.is_zero() {
                    out.add_part(n, &g.mul_exp(m - n).scale(&-rh.clone()));
                }
                let f = f_fn(m, n);
                if f != 0 && !rg.is_zero() && !rh.is_zero() {
                    out.add_central(rg * rh * Rat::from_integer(f.into()));
                }
            }
        }
        out
    }

    /// [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] — identically zero for a Lie algebra.
    pub fn jacobi_residual(x: &GlInfEElem, y: &GlInfEElem, z: &GlInfEElem) -> GlInfEElem {
        let a = x.bracket(y).bracket(z);
        let b = y.bracket(z).bracket(x);
        let c = z.bracket(x).bracket(y);
        &(&a + &b) + &c
    }

    /// Largest n with X in the filtration piece F[n]: the minimum stored
    /// t-power across parts, clamped to ≤ 0 when the central coefficient is
    /// nonzero (K only lives in the pieces with n ≤ 0). Zero gives
    /// `Infinite`.
    pub fn filtration_degree(&self) -> FiltDegree {
        let mut deg: Option<i64> = None;
        if !self.central.is_zero() {
            deg = Some(0);
        }
        for g in self.parts.values() {
            if let Some(r) = g.min_t_power() {
                deg = Some(match deg {
                    None => r,
                    Some(d) => d.min(r),
                });
            }
        }
        match deg {
            Some(d) => FiltDegree::Finite(d),
            None => FiltDegree::Infinite,
        }
    }
}

impl Add<&GlInfEElem> for &GlInfEElem {
    type Output = GlInfEElem;
    fn add(self, rhs: &GlInfEElem) -> GlInfEElem {
        let mut out = self.clone();
        for (&m, g) in &rhs.parts {
            out.add_part(m, g);
        }
        out.central += &rhs.central;
        out
    }
}

impl Sub<&GlInfEElem> for &GlInfEElem {
    type Output = GlInfEElem;
    fn sub(self, rhs: &GlInfEElem) -> GlInfEElem {
        self + &(-rhs)
    }
}

impl Neg for &GlInfEElem {
    type Output = GlInfEElem;
    fn neg(self) -> GlInfEElem {
        self.scale(&Rat::from_integer((-1).into()))
    }
}

impl fmt::Display for GlInfEElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, q: &Rat, atom: String| -> fmt::Result {
            let (neg, mag) = signed_parts(q);
            if first {
                first = false;
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag == "1" {
                write!(f, "{atom}")
            } else {
                write!(f, "{mag}*{atom}")
            }
        };
        for (&m, g) in &self.parts {
            for (&(r, c), q) in g.terms() {
                let atom = if c == 0 {
                    format!("B[{m},{r}]")
                } else {
                    format!("EB[{m};{r};{c}]")
                };
                emit(f, q, atom)?;
            }
        }
        if !self.central.is_zero() {
            let c = self.central.clone();
            emit(f, &c, "K".to_string())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn creation_pair_bracket() {
        // [B(0,-1), B(1,-1)] = e_0 ⊗ t^{-1}e^{t} - e_1 ⊗ t^{-1}e^{-t} + K.
        let got = GlInfEElem::mode(0, -1).bracket(&GlInfEElem::mode(1, -1));
        let want = &(&GlInfEElem::part(0, ExpPoly::t_pow_exp(-1, 1))
            - &GlInfEElem::part(1, ExpPoly::t_pow_exp(-1, -1)))
            + &GlInfEElem::central_k();
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "EB[0;-1;1] - EB[1;-1;-1] + K");
    }

    #[test]
    fn nonnegative_modes_commute() {
        for (m, r, n, s) in [(0, 2, 1, 3), (0, 0, 1, 0), (-2, 1, 3, 5), (4, 0, 4, 2)] {
            let got = GlInfEElem::mode(m, r).bracket(&GlInfEElem::mode(n, s));
            assert!(got.is_zero(), "B({m},{r}) vs B({n},{s})");
        }
    }

    #[test]
    fn annihilation_against_creation() {
        // [B(0,0), B(1,-1)] = -(e_1 ⊗ e^{-t}).
        let got = GlInfEElem::mode(0, 0).bracket(&GlInfEElem::mode(1, -1));
        let want = GlInfEElem::part(1, ExpPoly::t_pow_exp(0, -1)).scale(&rat(-1));
        assert_eq!(got, want);
    }

    #[test]
    fn central_is_central() {
        let k = GlInfEElem::central_k();
        assert!(k.bracket(&GlInfEElem::mode(2, -3)).is_zero());
        assert!(GlInfEElem::mode(2, -3).bracket(&k).is_zero());
    }

    #[test]
    fn antisymmetry_sampled() {
        for m in -2..=2 {
            for n in -2..=2 {
                for r in -3..=2 {
                    for s in -3..=2i64 {
                        let x = GlInfEElem::mode(m, r);
                        let y = GlInfEElem::mode(n, s);
                        let sum = &x.bracket(&y) + &y.bracket(&x);
                        assert!(sum.is_zero(), "B({m},{r}), B({n},{s})");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_spot_checks() {
        let triples = [
            ((0, -1), (1, -1), (2, -2)),
            ((-1, -1), (0, 0), (1, -2)),
            ((2, -3), (2, -3), (0, -1)),
            ((1, -2), (-2, 1), (0, -1)),
        ];
        for ((m1, r1), (m2, r2), (m3, r3)) in triples {
            let res = GlInfEElem::jacobi_residual(
                &GlInfEElem::mode(m1, r1),
                &GlInfEElem::mode(m2, r2),
                &GlInfEElem::mode(m3, r3),
            );
            assert!(res.is_zero(), "B({m1},{r1}), B({m2},{r2}), B({m3},{r3})");
        }
    }

    #[test]
    fn jacobi_with_exponential_rates() {
        let x = GlInfEElem::part(0, ExpPoly::t_pow_exp(-2, 1));
        let y = GlInfEElem::part(1, ExpPoly::t_pow_exp(-1, -2));
        let z = &GlInfEElem::mode(-1, -1) + &GlInfEElem::central_k();
        let res = GlInfEElem::jacobi_residual(&x, &y, &z);
        assert!(res.is_zero());
    }

    #[test]
    fn filtration_degrees() {
        assert_eq!(
            GlInfEElem::mode(3, 2).filtration_degree(),
            FiltDegree::Finite(2)
        );
        assert_eq!(
            GlInfEElem::central_k().filtration_degree(),
            FiltDegree::Finite(0)
        );
        assert_eq!(
            GlInfEElem::part(0, ExpPoly::t_pow_exp(-2, 5)).filtration_degree(),
            FiltDegree::Finite(-2)
        );
        assert_eq!(GlInfEElem::zero().filtration_degree(), FiltDegree::Infinite);
        let mixed = &GlInfEElem::mode(1, 3) + &GlInfEElem::central_k();
        assert_eq!(mixed.filtration_degree(), FiltDegree::Finite(0));
    }

    #[test]
    fn filtration_inequality_spot() {
        let pairs = [
            (GlInfEElem::mode(0, -2), GlInfEElem::mode(1, -1)),
            (
                GlInfEElem::part(2, ExpPoly::t_pow_exp(-3, 2)),
                GlInfEElem::mode(-1, 1),
            ),
            (GlInfEElem::mode(0, 1), GlInfEElem::mode(5, 2)),
        ];
        for (x, y) in pairs {
            let lhs = x.bracket(&y).filtration_degree();
            let bound = x.filtration_degree().plus(y.filtration_degree());
            assert!(lhs.at_least(bound), "{x} vs {y}");
        }
    }
}
