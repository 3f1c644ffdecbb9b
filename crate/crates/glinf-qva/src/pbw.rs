//! Induced modules over the companion algebra via PBW normal ordering.
//!
//! For a level ℓ and a finite-support weight function λ: ℤ → ℚ, the module
//! M(ℓ,λ) is induced from the one-dimensional module where E ⊗ tℚ[[t]] acts
//! trivially, the zero modes B(n,0) act as λ_n, and K acts as ℓ. Setting
//! λ = 0 recovers the vacuum module V(ℓ,0). A basis is given by canonically
//! ordered monomials B(m₁,r₁)···B(m_k,r_k)·v with all r_i ≤ -1, sorted under
//! the total order (m,r) ≺ (m',r') iff r < r', or r = r' and m < m'. Ordering
//! by mode first groups equal modes together.
//!
//! The action of a general algebra element works head-first:
//!
//! ```text
//! X·(B(a)·w) = B(a)·(X·w) + [X, B(a)]·w
//! ```
//!
//! with re-sorting of left products by insertion: an out-of-order pair
//! B(b)B(c) rewrites to B(c)B(b) + [B(b),B(c)]. Each rewrite either shortens
//! the word (bracket terms) or keeps its length and strictly reduces the
//! number of inversions (the swap), so the recursion terminates. Mode
//! expansion of a coefficient g(t) happens only against the highest-weight
//! vector, where modes above 0 act as zero by construction and the modes in
//! [ord(g), 0] form a finite set.

use crate::exppoly::ExpPoly;
use crate::glinf_e::GlInfEElem;
use crate::rational::{signed_parts, Rat};
use crate::series::{Coeff, TruncSeries, Var};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A creation-side mode generator B(m,r) inside a PBW monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gen {
    pub m: i64,
    pub r: i64,
}

impl Gen {
    /// Sort key: mode first, then row index.
    fn key(self) -> (i64, i64) {
        (self.r, self.m)
    }
}

/// Canonically ordered creation monomial applied to the highest-weight
/// vector. Factors are non-decreasing under [`Gen::key`] and all modes are
/// ≤ -1; the empty monomial is the highest-weight vector itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    factors: Vec<Gen>,
}

impl PbwMonomial {
    pub fn empty() -> Self {
        PbwMonomial {
            factors: Vec::new(),
        }
    }

    pub fn single(g: Gen) -> Self {
        debug_assert!(g.r <= -1);
        PbwMonomial { factors: vec![g] }
    }

    /// Build from factors in any order; they are sorted into canonical form.
    /// This is only valid as a *label* constructor (no bracket corrections
    /// are applied); use [`InducedModule::apply_word`] to multiply operators.
    pub fn from_sorted(mut factors: Vec<Gen>) -> Self {
        debug_assert!(factors.iter().all(|g| g.r <= -1));
        factors.sort_by_key(|g| g.key());
        PbwMonomial { factors }
    }

    pub fn depth(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Gen] {
        &self.factors
    }

    fn head(&self) -> Option<Gen> {
        self.factors.first().copied()
    }

    fn tail(&self) -> PbwMonomial {
        PbwMonomial {
            factors: self.factors[1..].to_vec(),
        }
    }

    fn prepend(&self, g: Gen) -> PbwMonomial {
        debug_assert!(self
            .head()
            .map_or(true, |h| g.key() <= h.key()));
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(g);
        factors.extend_from_slice(&self.factors);
        PbwMonomial { factors }
    }
}

/// Deeper monomials sort first so canonical printing leads with the highest
/// PBW depth, matching the element grammar.
impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .factors
            .len()
            .cmp(&self.factors.len())
            .then_with(|| {
                let a = self.factors.iter().map(|g| (g.m, g.r));
                let b = other.factors.iter().map(|g| (g.m, g.r));
                a.cmp(b)
            })
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite rational combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PbwVector {
    terms: BTreeMap<PbwMonomial, Rat>,
}

impl PbwVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The highest-weight vector (the vacuum when λ = 0).
    pub fn vacuum() -> Self {
        Self::monomial(PbwMonomial::empty(), Rat::from_integer(1.into()))
    }

    pub fn monomial(m: PbwMonomial, q: Rat) -> Self {
        let mut v = Self::zero();
        v.add_term(m, q);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn depth(&self) -> usize {
        self.terms.keys().map(|m| m.depth()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: PbwMonomial, q: Rat) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &PbwVector) {
        for (m, q) in &other.terms {
            self.add_term(m.clone(), q.clone());
        }
    }

    pub fn add(&self, other: &PbwVector) -> PbwVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &PbwVector) -> PbwVector {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn scale(&self, q: &Rat) -> PbwVector {
        if q.is_zero() {
            return PbwVector::zero();
        }
        PbwVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * q))
                .collect(),
        }
    }
}

impl Coeff for PbwVector {
    fn zero() -> Self {
        PbwVector::zero()
    }
    fn is_zero(&self) -> bool {
        PbwVector::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn scale_rat(&self, q: &Rat) -> Self {
        self.scale(q)
    }
}

impl fmt::Display for PbwVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, q) in &self.terms {
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
            let factors: String = mono
                .factors
                .iter()
                .map(|g| format!("B[{},{}]", g.m, g.r))
                .collect();
            if mag == "1" {
                write!(f, "{factors}.1")?;
            } else if mono.factors.is_empty() {
                let sep = if mag.contains('/') { " " } else { "" };
                write!(f, "{mag}{sep}.1")?;
            } else {
                write!(f, "{mag}*{factors}.1")?;
            }
        }
        Ok(())
    }
}

/// Level and highest-weight data shared by a module instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleParams {
    pub level: Rat,
    /// Finite-support weight function; indices outside the map act as 0.
    pub lambda: BTreeMap<i64, Rat>,
}

impl ModuleParams {
    pub fn vacuum(level: Rat) -> Self {
        ModuleParams {
            level,
            lambda: BTreeMap::new(),
        }
    }
}

/// The induced module M(ℓ,λ); immutable after construction, so actions are
/// pure values and safe to evaluate concurrently.
#[derive(Clone, Debug)]
pub struct InducedModule {
    params: ModuleParams,
}

impl InducedModule {
    pub fn new(params: ModuleParams) -> Self {
        InducedModule { params }
    }

    /// The vacuum module V(ℓ,0) = M(ℓ,0).
    pub fn vacuum_module(level: Rat) -> Self {
        Self::new(ModuleParams::vacuum(level))
    }

    pub fn level(&self) -> &Rat {
        &self.params.level
    }

    pub fn lambda_of(&self, n: i64) -> Rat {
        self.params
            .lambda
            .get(&n)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// b^{(m)} = B(m,-1)·1.
    pub fn b_vec(&self, m: i64) -> PbwVector {
        PbwVector::monomial(
            PbwMonomial::single(Gen { m, r: -1 }),
            Rat::from_integer(1.into()),
        )
    }

    /// Action of a general algebra element, extended linearly.
    pub fn act(&self, x: &GlInfEElem, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero();
        for (mono, q) in v.terms() {
            out.add_assign(&self.act_mono(x, mono).scale(q));
        }
        out
    }

    /// Action of the single mode B(m,r).
    pub fn mode_apply(&self, m: i64, r: i64, v: &PbwVector) -> PbwVector {
        self.act(&GlInfEElem::mode(m, r), v)
    }

    /// Apply a word of modes right-to-left to the highest-weight vector.
    pub fn apply_word(&self, word: &[(i64, i64)], v: &PbwVector) -> PbwVector {
        let mut acc = v.clone();
        for &(m, r) in word.iter().rev() {
            acc = self.mode_apply(m, r, &acc);
        }
        acc
    }

    /// Truncation of the generating series Σ_n B(m,n)·v x^{-n-1} to modes
    /// n ∈ [lo, hi]. On a restricted module all but finitely many window
    /// entries vanish.
    pub fn vertex_series(
        &self,
        m: i64,
        v: &PbwVector,
        var: Var,
        lo: i64,
        hi: i64,
    ) -> TruncSeries<PbwVector> {
        assert!(lo <= hi);
        let mut out = TruncSeries::new(vec![var], vec![(-hi - 1, -lo - 1)]);
        for n in lo..=hi {
            out.insert(vec![-n - 1], self.mode_apply(m, n, v));
        }
        out
    }

    /// The vector b^{(m)}_k b^{(n)} = B(m,k)·b^{(n)}.
    pub fn composite_mode(&self, m: i64, k: i64, n: i64) -> PbwVector {
        let b = self.b_vec(n);
        self.mode_apply(m, k, &b)
    }

    fn act_mono(&self, x: &GlInfEElem, mono: &PbwMonomial) -> PbwVector {
        let mut out = PbwVector::zero();
        if !x.central().is_zero() {
            out.add_term(mono.clone(), x.central().clone() * &self.params.level);
        }
        for (&p, g) in x.parts() {
            out.add_assign(&self.act_part(p, g, mono));
        }
        out
    }

    /// (e_p ⊗ g)·(mono·v).
    fn act_part(&self, p: i64, g: &ExpPoly, mono: &PbwMonomial) -> PbwVector {
        match mono.head() {
            None => {
                // Base case against the highest-weight vector: modes ≤ -1
                // create, mode 0 multiplies by λ_p, modes ≥ 1 annihilate.
                let mut out = PbwVector::zero();
                if let Some(lo) = g.min_t_power() {
                    for n in lo..=0 {
                        let c = g.mode_coeff(n);
                        if c.is_zero() {
                            continue;
                        }
                        if n <= -1 {
                            out.add_term(PbwMonomial::single(Gen { m: p, r: n }), c);
                        } else {
                            let lam = self.lambda_of(p);
                            if !lam.is_zero() {
                                out.add_term(PbwMonomial::empty(), c * lam);
                            }
                        }
                    }
                }
                out
            }
            Some(b) => {
                let rest = mono.tail();
                let inner = self.act_part(p, g, &rest);
                let mut out = self.create_mul(b, &inner);
                let correction = GlInfEElem::part(p, g.clone()).bracket(&GlInfEElem::mode(b.m, b.r));
                out.add_assign(&self.act_mono(&correction, &rest));
                out
            }
        }
    }

    /// B(b)·w for a creation generator b (b.r ≤ -1) and normal-ordered w.
    fn create_mul(&self, b: Gen, w: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero();
        for (mono, q) in w.terms() {
            out.add_assign(&self.create_mono(b, mono).scale(q));
        }
        out
    }

    /// Ordered insertion of one creation generator into a sorted monomial,
    /// with bracket corrections for every transposition.
    fn create_mono(&self, b: Gen, rho: &PbwMonomial) -> PbwVector {
        debug_assert!(b.r <= -1, "only creation modes enter monomials");
        match rho.head() {
            Some(c) if b.key() > c.key() => {
                let rest = rho.tail();
                // B(b)B(c) = B(c)B(b) + [B(b),B(c)]
                let swapped = self.create_mul(c, &self.create_mono(b, &rest));
                let bracket = GlInfEElem::mode(b.m, b.r).bracket(&GlInfEElem::mode(c.m, c.r));
                let correction = self.act_mono(&bracket, &rest);
                swapped.add(&correction)
            }
            _ => PbwVector::monomial(rho.prepend(b), Rat::from_integer(1.into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn mono(factors: &[(i64, i64)]) -> PbwMonomial {
        PbwMonomial::from_sorted(factors.iter().map(|&(m, r)| Gen { m, r }).collect())
    }

    fn vacuum_module(level: i64) -> InducedModule {
        InducedModule::vacuum_module(rat(level))
    }

    #[test]
    fn annihilation_on_creation_monomial() {
        let md = vacuum_module(3);
        let v = md.b_vec(1);
        let got = md.mode_apply(0, 0, &v);
        assert!(got.is_zero(), "mode 0 on vacuum module: {got}");
        let got = md.mode_apply(0, 3, &v);
        assert!(got.is_zero());
    }

    #[test]
    fn ordered_creation_is_plain_product() {
        let md = vacuum_module(1);
        let v = md.b_vec(1);
        let got = md.mode_apply(0, -1, &v);
        assert_eq!(got, PbwVector::monomial(mono(&[(0, -1), (1, -1)]), rat(1)));
    }

    #[test]
    fn out_of_order_creation_picks_up_corrections() {
        // B(1,-1)·(B(0,-1)·1) at ℓ = 2, λ = 0.
        let md = vacuum_module(2);
        let v = md.b_vec(0);
        let got = md.mode_apply(1, -1, &v);
        let mut want = PbwVector::monomial(mono(&[(0, -1), (1, -1)]), rat(1));
        want.add_term(mono(&[(0, -1)]), rat(-1));
        want.add_term(mono(&[(1, -1)]), rat(1));
        want.add_term(PbwMonomial::empty(), rat(-2));
        assert_eq!(got, want);
        assert_eq!(
            got.to_string(),
            "B[0,-1]B[1,-1].1 - B[0,-1].1 + B[1,-1].1 - 2.1"
        );
    }

    #[test]
    fn zero_mode_acts_by_weight() {
        let mut lambda = BTreeMap::new();
        lambda.insert(3, ratio(5, 2));
        let md = InducedModule::new(ModuleParams {
            level: rat(7),
            lambda,
        });
        let got = md.mode_apply(3, 0, &PbwVector::vacuum());
        assert_eq!(got, PbwVector::vacuum().scale(&ratio(5, 2)));
        // Unlisted indices act as zero.
        assert!(md.mode_apply(2, 0, &PbwVector::vacuum()).is_zero());
    }

    #[test]
    fn central_acts_as_level() {
        let md = vacuum_module(-4);
        let v = md.apply_word(&[(0, -1), (2, -3)], &PbwVector::vacuum());
        let got = md.act(&GlInfEElem::central_k(), &v);
        assert_eq!(got, v.scale(&rat(-4)));
    }

    #[test]
    fn b_vectors() {
        let md = vacuum_module(0);
        assert_eq!(
            md.mode_apply(5, -1, &PbwVector::vacuum()),
            md.b_vec(5)
        );
    }

    #[test]
    fn composite_modes_vanish_for_nonnegative_k() {
        let md = vacuum_module(3);
        assert!(md.composite_mode(0, 2, 7).is_zero());
        assert!(md.composite_mode(1, 0, 0).is_zero());
        assert!(md.composite_mode(-2, 4, 2).is_zero());
    }

    #[test]
    fn composite_mode_creation_pair() {
        let md = vacuum_module(1);
        let got = md.composite_mode(4, -1, 4);
        assert_eq!(got, PbwVector::monomial(mono(&[(4, -1), (4, -1)]), rat(1)));
    }

    #[test]
    fn vertex_series_on_vacuum() {
        let md = vacuum_module(2);
        let s = md.vertex_series(0, &PbwVector::vacuum(), Var::X, -3, 3);
        // Modes n ≥ 0 annihilate; creation modes land at x^{-n-1}.
        for n in 0..=3i64 {
            assert!(s.coeff(&[-n - 1]).is_zero(), "mode {n}");
        }
        for n in -3..=-1i64 {
            let got = s.coeff(&[-n - 1]);
            assert_eq!(
                got,
                PbwVector::monomial(mono(&[(0, n)]), rat(1)),
                "mode {n}"
            );
        }
        // Constant term at x^0 is b^{(m)}.
        assert_eq!(s.coeff(&[0]), md.b_vec(0));
    }

    #[test]
    fn representation_property_spot() {
        // act([X,Y], v) = act(X, act(Y,v)) - act(Y, act(X,v)) on a depth-2
        // vector for a handful of generator pairs.
        let md = vacuum_module(2);
        let v = md.apply_word(&[(1, -1), (-1, -2)], &PbwVector::vacuum());
        for (xm, xr, ym, yr) in [
            (0, -1, 1, -1),
            (2, 0, 0, -2),
            (-1, 1, 1, -3),
            (0, -2, 0, -1),
            (1, 2, -2, -1),
        ] {
            let x = GlInfEElem::mode(xm, xr);
            let y = GlInfEElem::mode(ym, yr);
            let lhs = md.act(&x.bracket(&y), &v);
            let rhs = md.act(&x, &md.act(&y, &v)).sub(&md.act(&y, &md.act(&x, &v)));
            assert_eq!(lhs, rhs, "X=B({xm},{xr}) Y=B({ym},{yr})");
        }
    }

    #[test]
    fn level_dependence_of_reordering() {
        // The central correction scales with ℓ, including fractional levels.
        let md = InducedModule::vacuum_module(ratio(-1, 2));
        let got = md.mode_apply(1, -1, &md.b_vec(0));
        assert_eq!(got.coeff(&PbwMonomial::empty()), ratio(1, 2));
    }

    #[test]
    fn display_fractional_vacuum_coefficient() {
        let v = PbwVector::vacuum().scale(&ratio(5, 2));
        assert_eq!(v.to_string(), "5/2 .1");
        assert_eq!(PbwVector::vacuum().to_string(), ".1");
        assert_eq!(PbwVector::zero().to_string(), "0");
    }
}
