//! Exact verification of the three telescoping relations by multivariate
//! polynomial expansion.
//!
//! The relations are polynomial identities over the variables `x`, `n`, `a`,
//! plus the substitution variable `t` standing for `√(x²+n)` in the third
//! one. Expanding the right-hand side, subtracting the left-hand side, and
//! (for P3) reducing modulo `t² − (x²+n)` must leave the zero polynomial;
//! [`expand_identity`] performs exactly that and nothing else. A numeric
//! spot-check over exact rationals is available separately as
//! [`check_numeric`], which deliberately does not share the polynomial code
//! path.

use crate::SchemeKind;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// The four polynomial variables, in the order used by the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    N,
    A,
    T,
}

impl Var {
    const COUNT: usize = 4;

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::N => 1,
            Var::A => 2,
            Var::T => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::N => "n",
            Var::A => "a",
            Var::T => "t",
        }
    }

    const ALL: [Var; 4] = [Var::X, Var::N, Var::A, Var::T];
}

/// Exponent vector over `(x, n, a, t)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    exps: [u32; Var::COUNT],
}

impl Monomial {
    fn one() -> Self {
        Monomial { exps: [0; 4] }
    }

    fn var(v: Var) -> Self {
        let mut exps = [0; 4];
        exps[v.index()] = 1;
        Monomial { exps }
    }

    fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; 4];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i] + other.exps[i];
        }
        Monomial { exps }
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps[v.index()]
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored; all arithmetic is exact.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        Poly { terms }
    }

    pub fn int(value: i64) -> Self {
        Poly::constant(BigRational::from_integer(value.into()))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigRational::one());
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::constant(BigRational::one());
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Rewrites every power `t^e` with `e ≥ 2` as `t^(e mod 2)·(x²+n)^(e/2)`,
    /// i.e. reduces modulo the relation `t² = x² + n`.
    pub fn reduce_t_squared(&self) -> Poly {
        let relation = &(&Poly::var(Var::X) * &Poly::var(Var::X)) + &Poly::var(Var::N);
        let mut result = Poly::zero();
        for (mono, coeff) in &self.terms {
            let t_exp = mono.exponent(Var::T);
            if t_exp < 2 {
                result.add_term(*mono, coeff.clone());
                continue;
            }
            let mut reduced_mono = *mono;
            reduced_mono.exps[Var::T.index()] = t_exp % 2;
            let mut part = Poly::zero();
            part.add_term(reduced_mono, coeff.clone());
            result = &result + &(&part * &relation.pow(t_exp / 2));
        }
        result
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(*mono, coeff.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(*mono, -coeff.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let mut out = Poly::zero();
        for (mono, coeff) in &self.terms {
            out.add_term(*mono, -coeff.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest monomial first
        for (pos, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            let mut printed_coeff = false;
            if !magnitude.is_one() || mono.total_degree() == 0 {
                write!(f, "{magnitude}")?;
                printed_coeff = true;
            }
            for v in Var::ALL {
                let e = mono.exponent(v);
                if e == 0 {
                    continue;
                }
                if printed_coeff {
                    write!(f, "*")?;
                }
                printed_coeff = true;
                write!(f, "{}", v.name())?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Outcome of expanding one telescoping relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: SchemeKind,
    pub residual: Poly,
    pub holds: bool,
}

impl IdentityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IdentityReport", 3)?;
        s.serialize_field("identity", self.identity.name())?;
        s.serialize_field("holds", &self.holds)?;
        s.serialize_field("residual_terms", &self.residual.term_count())?;
        s.end()
    }
}

/// Expands the relation behind a scheme and reports the residual polynomial.
///
/// * P1: `[n² + an + ax + (x−n−a)(x+n)] − x²` over `(x, n, a)`.
/// * P2: `[2n³ + 3n²x + (x−2n)(x+n)²] − x³` over `(x, n)`.
/// * P3: `[at − n + (t−a)t] − x²` reduced modulo `t² − (x²+n)`, where `t`
///   stands for `√(x²+n)`.
pub fn expand_identity(identity: SchemeKind) -> IdentityReport {
    let x = Poly::var(Var::X);
    let n = Poly::var(Var::N);
    let a = Poly::var(Var::A);
    let residual = match identity {
        SchemeKind::P1 => {
            let rhs =
                &(&(&n.pow(2) + &(&a * &n)) + &(&a * &x)) + &(&(&(&x - &n) - &a) * &(&x + &n));
            &rhs - &x.pow(2)
        }
        SchemeKind::P2 => {
            let rhs = &(&(&Poly::int(2) * &n.pow(3)) + &(&(&Poly::int(3) * &n.pow(2)) * &x))
                + &(&(&x - &(&Poly::int(2) * &n)) * &(&x + &n).pow(2));
            &rhs - &x.pow(3)
        }
        SchemeKind::P3 => {
            let t = Poly::var(Var::T);
            let rhs = &(&(&a * &t) - &n) + &(&(&t - &a) * &t);
            (&rhs - &x.pow(2)).reduce_t_squared()
        }
    };
    IdentityReport {
        identity,
        holds: residual.is_zero(),
        residual,
    }
}

/// Raised by [`check_numeric`] for P3 when `x² + n < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("negative radicand: x^2 + n < 0")]
pub struct NegativeRadicand;

/// Exact quadratic-extension element `alpha·√s + beta` used locally by the
/// P3 numeric check; multiplication folds `√s·√s` back to `s`.
fn quad_mul(
    lhs: (&BigRational, &BigRational),
    rhs: (&BigRational, &BigRational),
    s: &BigRational,
) -> (BigRational, BigRational) {
    let (a1, b1) = lhs;
    let (a2, b2) = rhs;
    (a1 * b2 + a2 * b1, b1 * b2 + a1 * a2 * s)
}

/// Evaluates `RHS − LHS` of one relation at an exact rational point.
///
/// The result must be zero for every admissible input; this is an
/// evaluation-based route independent of [`expand_identity`]. The `a`
/// argument is ignored for P2. For P3 the radicand `x²+n` must be
/// nonnegative; the value `√(x²+n)` is carried symbolically, so the check is
/// exact even when the radicand is not a perfect square.
pub fn check_numeric(
    identity: SchemeKind,
    x: &BigRational,
    n: &BigRational,
    a: &BigRational,
) -> Result<BigRational, NegativeRadicand> {
    match identity {
        SchemeKind::P1 => {
            let rhs = n * n + a * n + a * x + (x - n - a) * (x + n);
            Ok(rhs - x * x)
        }
        SchemeKind::P2 => {
            let two = BigRational::from_integer(2.into());
            let three = BigRational::from_integer(3.into());
            let rhs = &two * n * n * n + &three * n * n * x + (x - &two * n) * (x + n) * (x + n);
            Ok(rhs - x * x * x)
        }
        SchemeKind::P3 => {
            let s = x * x + n;
            if s.is_negative() {
                return Err(NegativeRadicand);
            }
            // t = √s, carried as (alpha, beta) pairs over √s
            let t = (BigRational::one(), BigRational::zero());
            let a_val = (BigRational::zero(), a.clone());
            // a·t − n
            let at = quad_mul((&a_val.0, &a_val.1), (&t.0, &t.1), &s);
            let first = (at.0, at.1 - n);
            // (t − a)·t
            let t_minus_a = (&t.0 - &a_val.0, &t.1 - &a_val.1);
            let second = quad_mul((&t_minus_a.0, &t_minus_a.1), (&t.0, &t.1), &s);
            let alpha = first.0 + second.0;
            let beta = first.1 + second.1;
            assert!(alpha.is_zero(), "the √s component cancels identically");
            Ok(beta - x * x)
        }
    }
}
