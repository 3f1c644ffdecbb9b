//! The centrally extended Lie algebra of doubly infinite matrices.
//!
//! Basis: elementary matrices E_{i,j} (i,j ∈ ℤ, finitely many nonzero
//! entries) together with a central element K. The bracket is
//!
//! ```text
//! [E_{m,n}, E_{r,s}] = δ_{n,r} E_{m,s} - δ_{m,s} E_{r,n} + ψ(E_{m,n}, E_{r,s}) K
//! ```
//!
//! where the 2-cocycle is ψ(E_{i,j}, E_{m,n}) = δ_{i,n} δ_{j,m} f(i,j) and f
//! is the skew additive cutoff function on ℤ². Scalars are exact rationals.

use crate::rational::{signed_parts, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// The cutoff function on integer pairs: 1 when m ≤ 0 < n, -1 when n ≤ 0 < m,
/// 0 otherwise. Skew and additive: f(m,n) + f(n,r) = f(m,r).
pub fn f_fn(m: i64, n: i64) -> i64 {
    if m <= 0 && n >= 1 {
        1
    } else if n <= 0 && m >= 1 {
        -1
    } else {
        0
    }
}

/// The 2-cocycle on basis pairs: ψ(E_{i,j}, E_{m,n}) = δ_{i,n} δ_{j,m} f(i,j).
pub fn psi(i: i64, j: i64, m: i64, n: i64) -> i64 {
    if i == n && j == m {
        f_fn(i, j)
    } else {
        0
    }
}

/// Element of the extended algebra: finite rational combination of E_{i,j}
/// plus a central coefficient. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GlInfElem {
    matrix: BTreeMap<(i64, i64), Rat>,
    central: Rat,
}

/// Degree of an element under deg E_{i,j} = j - i (the central element has
/// degree 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlDegree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

impl GlInfElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Basis element E_{i,j}.
    pub fn basis(i: i64, j: i64) -> Self {
        let mut matrix = BTreeMap::new();
        matrix.insert((i, j), Rat::from_integer(1.into()));
        GlInfElem {
            matrix,
            central: Rat::zero(),
        }
    }

    /// The central element K.
    pub fn central_k() -> Self {
        GlInfElem {
            matrix: BTreeMap::new(),
            central: Rat::from_integer(1.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_empty() && self.central.is_zero()
    }

    pub fn central(&self) -> &Rat {
        &self.central
    }

    pub fn matrix_terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.matrix.iter()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Rat {
        self.matrix.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, i: i64, j: i64, q: Rat) {
        if q.is_zero() {
            return;
        }
        match self.matrix.entry((i, j)) {
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

    pub fn add_central(&mut self, q: Rat) {
        self.central += q;
    }

    pub fn scale(&self, q: &Rat) -> GlInfElem {
        if q.is_zero() {
            return GlInfElem::zero();
        }
        GlInfElem {
            matrix: self
                .matrix
                .iter()
                .map(|(k, c)| (*k, c.clone() * q))
                .collect(),
            central: self.central.clone() * q,
        }
    }

    /// Bilinear extension of the basis bracket; K is central.
    pub fn bracket(&self, other: &GlInfElem) -> GlInfElem {
        let mut out = GlInfElem::zero();
        for (&(m, n), a) in &self.matrix {
            for (&(r, s), b) in &other.matrix {
                let q = a.clone() * b;
                if n == r {
                    out.add_term(m, s, q.clone());
                }
                if m == s {
                    out.add_term(r, n, -q.clone());
                }
                let c = psi(m, n, r, s);
                if c != 0 {
                    out.add_central(q * Rat::from_integer(c.into()));
                }
            }
        }
        out
    }

    /// Bracket with the central term dropped — the underlying unextended
    /// algebra, used for checking the cocycle identity.
    pub fn bracket_plain(&self, other: &GlInfElem) -> GlInfElem {
        let mut out = self.bracket(other);
        out.central = Rat::zero();
        out
    }

    /// Bilinear extension of the 2-cocycle (central parts are ignored:
    /// ψ is a form on the unextended algebra).
    pub fn psi_pairing(&self, other: &GlInfElem) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), a) in &self.matrix {
            for (&(m, n), b) in &other.matrix {
                let c = psi(i, j, m, n);
                if c != 0 {
                    acc += a.clone() * b * Rat::from_integer(c.into());
                }
            }
        }
        acc
    }

    /// Degree under the grading deg E_{i,j} = j - i, with K of degree 0.
    pub fn degree(&self) -> GlDegree {
        if self.is_zero() {
            return GlDegree::Zero;
        }
        let mut deg: Option<i64> = None;
        if !self.central.is_zero() {
            deg = Some(0);
        }
        for &(i, j) in self.matrix.keys() {
            match deg {
                None => deg = Some(j - i),
                Some(d) if d == j - i => {}
                Some(_) => return GlDegree::Mixed,
            }
        }
        GlDegree::Homogeneous(deg.expect("nonzero element has a degree"))
    }
}

impl Add<&GlInfElem> for &GlInfElem {
    type Output = GlInfElem;
    fn add(self, rhs: &GlInfElem) -> GlInfElem {
        let mut out = self.clone();
        for (&(i, j), q) in &rhs.matrix {
            out.add_term(i, j, q.clone());
        }
        out.central += &rhs.central;
        out
    }
}

impl Sub<&GlInfElem> for &GlInfElem {
    type Output = GlInfElem;
    fn sub(self, rhs: &GlInfElem) -> GlInfElem {
        self + &(-rhs)
    }
}

impl Neg for &GlInfElem {
    type Output = GlInfElem;
    fn neg(self) -> GlInfElem {
        self.scale(&Rat::from_integer((-1).into()))
    }
}

impl fmt::Display for GlInfElem {
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
        for (&(i, j), q) in &self.matrix {
            emit(f, q, format!("E[{i},{j}]"))?;
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
    fn f_fn_values() {
        assert_eq!(f_fn(0, 1), 1);
        assert_eq!(f_fn(1, 0), -1);
        assert_eq!(f_fn(2, 5), 0);
        assert_eq!(f_fn(-3, -1), 0);
    }

    #[test]
    fn f_fn_skew_and_additive() {
        for m in -10..=10 {
            for n in -10..=10 {
                assert_eq!(f_fn(m, n), -f_fn(n, m));
                for r in -10..=10 {
                    assert_eq!(f_fn(m, n) + f_fn(n, r), f_fn(m, r), "({m},{n},{r})");
                }
            }
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(0, 1, 1, 0), 1);
        assert_eq!(psi(1, 0, 0, 1), -1);
        assert_eq!(psi(0, 1, 2, 3), 0);
    }

    #[test]
    fn bracket_with_central_term() {
        let a = GlInfElem::basis(0, 1);
        let b = GlInfElem::basis(1, 0);
        let got = a.bracket(&b);
        let want = &(&GlInfElem::basis(0, 0) - &GlInfElem::basis(1, 1)) + &GlInfElem::central_k();
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_disjoint_indices_vanishes() {
        let got = GlInfElem::basis(0, 1).bracket(&GlInfElem::basis(2, 3));
        assert!(got.is_zero());
    }

    #[test]
    fn bracket_without_cocycle() {
        let got = GlInfElem::basis(1, 2).bracket(&GlInfElem::basis(2, 1));
        let want = &GlInfElem::basis(1, 1) - &GlInfElem::basis(2, 2);
        assert_eq!(got, want);
    }

    #[test]
    fn central_element_brackets_to_zero() {
        let k = GlInfElem::central_k();
        assert!(k.bracket(&GlInfElem::basis(3, -2)).is_zero());
        assert!(GlInfElem::basis(3, -2).bracket(&k).is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(GlInfElem::basis(3, 5).degree(), GlDegree::Homogeneous(2));
        let diag = &GlInfElem::basis(0, 0) + &GlInfElem::basis(4, 4);
        assert_eq!(diag.degree(), GlDegree::Homogeneous(0));
        let mixed = &GlInfElem::basis(0, 1) + &GlInfElem::basis(0, 2);
        assert_eq!(mixed.degree(), GlDegree::Mixed);
        assert_eq!(GlInfElem::zero().degree(), GlDegree::Zero);
        assert_eq!(GlInfElem::central_k().degree(), GlDegree::Homogeneous(0));
    }

    #[test]
    fn grading_respected_by_bracket() {
        for (i, j, r, s) in [(0, 2, 2, 3), (-1, 1, 1, -1), (2, 2, 2, 5)] {
            let a = GlInfElem::basis(i, j);
            let b = GlInfElem::basis(r, s);
            let br = a.bracket(&b);
            if let GlDegree::Homogeneous(d) = br.degree() {
                assert_eq!(d, (j - i) + (s - r));
            }
        }
    }

    #[test]
    fn display_canonical() {
        let e = &(&GlInfElem::basis(0, 0) - &GlInfElem::basis(1, 1)) + &GlInfElem::central_k();
        assert_eq!(e.to_string(), "E[0,0] - E[1,1] + K");
        let s = GlInfElem::basis(0, 1).scale(&crate::rational::ratio(3, 2));
        assert_eq!(s.to_string(), "3/2*E[0,1]");
        assert_eq!(GlInfElem::zero().to_string(), "0");
    }

    #[test]
    fn antisymmetry_on_window() {
        for i in -2..=2 {
            for j in -2..=2 {
                for r in -2..=2 {
                    for s in -2..=2 {
                        let a = GlInfElem::basis(i, j);
                        let b = GlInfElem::basis(r, s);
                        let sum = &a.bracket(&b) + &b.bracket(&a);
                        assert!(sum.is_zero(), "({i},{j}),({r},{s})");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_small_window() {
        let idx = [-1, 0, 1];
        for &i in &idx {
            for &j in &idx {
                for &r in &idx {
                    for &s in &idx {
                        for &u in &idx {
                            for &v in &idx {
                                let a = GlInfElem::basis(i, j);
                                let b = GlInfElem::basis(r, s);
                                let c = GlInfElem::basis(u, v);
                                let jac = &(&a.bracket(&b).bracket(&c)
                                    + &b.bracket(&c).bracket(&a))
                                    + &c.bracket(&a).bracket(&b);
                                assert!(jac.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_zero_scalar_multiple() {
        let a = GlInfElem::basis(0, 1).scale(&rat(2));
        assert_eq!(a.coeff(0, 1), rat(2));
        assert!(a.scale(&rat(0)).is_zero());
    }
}
