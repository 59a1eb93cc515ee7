//! Exact per-depth coefficients of a nested radical scheme.
//!
//! A [`SchemeInstance`] couples a scheme kind with a seed `x` and the two
//! coefficient sequences. Unfolding the telescoping relation to depth `i`
//! yields the term constant `c_i` and multiplier `m_i`; the argument of the
//! iteration at depth `i` is `x + S_{i−1}` where `S_i = n_1 + … + n_i` is the
//! cumulative sum of the `n` sequence:
//!
//! * P1: `c_i = n_i² + a_i·n_i + a_i·(x+S_{i−1})`, `m_i = (x+S_{i−1}) − n_i − a_i`,
//!   square root.
//! * P2: `c_i = 2n_i³ + 3n_i²·(x+S_{i−1})`, `m_i = (x+S_{i−1}) − 2n_i`,
//!   degree-`3/2` radical; the `a` sequence is ignored.
//! * P3: with `s_i = x² + S_i`: `c_i = a_i·√s_i − n_i`, `m_i = √s_i − a_i`,
//!   square root.
//!
//! Every coefficient is a [`QuadraticValue`] `α·√s + β` with exact rational
//! parts; P1/P2 coefficients are purely rational (`α = 0`). Nothing here is
//! evaluated numerically; that is the evaluator's job.

use crate::seqspec::{SeqError, SequenceSpec};
use crate::SchemeKind;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::str::FromStr;
use thiserror::Error;

/// Errors from term generation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error("negative radicand x^2 + S_i at depth i = {0}")]
    NegativeRadicand(u64),
    #[error("scheme P3 requires a nonnegative seed x")]
    NegativeSeed,
}

/// Degree of the radical wrapping each level: `2` or `3/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootDegree {
    Square,
    ThreeHalves,
}

impl RootDegree {
    pub fn as_str(self) -> &'static str {
        match self {
            RootDegree::Square => "2",
            RootDegree::ThreeHalves => "3/2",
        }
    }
}

/// Exact value of the form `alpha·√s + beta` with rational `alpha`, `beta`
/// and nonnegative rational `s`.
///
/// Construction canonicalizes: a zero `alpha` or zero `s` collapses to the
/// rational `beta`, and a perfect-square `s` is folded into `beta`. Equality
/// is structural on the canonical fields (two values over different
/// irrational radicands never compare equal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticValue {
    alpha: BigRational,
    s: BigRational,
    beta: BigRational,
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn rational_sqrt(value: &BigRational) -> Option<BigRational> {
    if value.is_negative() {
        return None;
    }
    let numer_root = value.numer().sqrt();
    if &numer_root * &numer_root != *value.numer() {
        return None;
    }
    let denom_root = value.denom().sqrt();
    if &denom_root * &denom_root != *value.denom() {
        return None;
    }
    Some(BigRational::new(numer_root, denom_root))
}

impl QuadraticValue {
    /// A purely rational value.
    pub fn rational(beta: BigRational) -> Self {
        QuadraticValue {
            alpha: BigRational::zero(),
            s: BigRational::zero(),
            beta,
        }
    }

    /// Builds `alpha·√s + beta`.
    ///
    /// Panics if `s` is negative; callers check the radicand first.
    pub fn new(alpha: BigRational, s: BigRational, beta: BigRational) -> Self {
        assert!(
            !s.is_negative(),
            "QuadraticValue radicand must be nonnegative"
        );
        if alpha.is_zero() || s.is_zero() {
            return QuadraticValue::rational(beta);
        }
        if let Some(root) = rational_sqrt(&s) {
            return QuadraticValue::rational(beta + alpha * root);
        }
        QuadraticValue { alpha, s, beta }
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    /// The radicand `s` of the irrational part (zero for rational values).
    pub fn radicand(&self) -> &BigRational {
        &self.s
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn is_rational(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.beta)
    }
}

impl Serialize for QuadraticValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QuadraticValue", 3)?;
        s.serialize_field("alpha", &self.alpha.to_string())?;
        s.serialize_field("s", &self.s.to_string())?;
        s.serialize_field("beta", &self.beta.to_string())?;
        s.end()
    }
}

/// The exact depth-`i` layer of a nested radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    depth: u64,
    constant: QuadraticValue,
    multiplier: QuadraticValue,
    root_degree: RootDegree,
    cumulative_sum: BigRational,
}

impl Term {
    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// The constant `c_i` under the depth-`i` radical.
    pub fn constant(&self) -> &QuadraticValue {
        &self.constant
    }

    /// The multiplier `m_i` of the next level.
    pub fn multiplier(&self) -> &QuadraticValue {
        &self.multiplier
    }

    pub fn root_degree(&self) -> RootDegree {
        self.root_degree
    }

    /// `S_i = n_1 + … + n_i`.
    pub fn cumulative_sum(&self) -> &BigRational {
        &self.cumulative_sum
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("term serialization is infallible")
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Term", 5)?;
        s.serialize_field("i", &self.depth)?;
        s.serialize_field("c", &self.constant)?;
        s.serialize_field("m", &self.multiplier)?;
        s.serialize_field("root", self.root_degree.as_str())?;
        s.serialize_field("S", &self.cumulative_sum.to_string())?;
        s.end()
    }
}

/// One concrete nested radical: scheme kind, seed, and the two sequences.
#[derive(Clone, Debug)]
pub struct SchemeInstance {
    kind: SchemeKind,
    x: BigRational,
    a_seq: SequenceSpec,
    n_seq: SequenceSpec,
}

impl SchemeInstance {
    /// Builds an instance. For P3 the seed must be nonnegative, because the
    /// fixed point `H(x) = x` requires the principal square root to return
    /// `x` itself.
    pub fn new(
        kind: SchemeKind,
        x: BigRational,
        a_seq: SequenceSpec,
        n_seq: SequenceSpec,
    ) -> Result<Self, SchemeError> {
        if kind == SchemeKind::P3 && x.is_negative() {
            return Err(SchemeError::NegativeSeed);
        }
        Ok(SchemeInstance {
            kind,
            x,
            a_seq,
            n_seq,
        })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn a_seq(&self) -> &SequenceSpec {
        &self.a_seq
    }

    pub fn n_seq(&self) -> &SequenceSpec {
        &self.n_seq
    }

    /// The exact value the infinite radical telescopes to: `x` for P1/P3 and
    /// `x²` for P2.
    pub fn limit(&self) -> BigRational {
        match self.kind {
            SchemeKind::P1 | SchemeKind::P3 => self.x.clone(),
            SchemeKind::P2 => &self.x * &self.x,
        }
    }

    /// Iterator over terms at depths `1, 2, 3, …`, sharing one exact prefix
    /// sum. The first error ends the iteration.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            instance: self,
            next_depth: 1,
            prefix_sum: BigRational::zero(),
            failed: false,
        }
    }

    /// The exact term at depth `i ≥ 1`. An error anywhere in `1..=i`
    /// propagates, carrying the depth it occurred at.
    pub fn term_at(&self, i: u64) -> Result<Term, SchemeError> {
        assert!(i >= 1, "term depths are 1-based");
        let mut last = None;
        for term in self.terms().take(i as usize) {
            last = Some(term?);
        }
        Ok(last.expect("take(i) with i >= 1 yields at least one term"))
    }

    /// The exact tail value at truncation depth `k`: the fixed point of the
    /// iteration at argument `x + S_k`, i.e. `x+S_k` for P1, `(x+S_k)²` for
    /// P2, and `√(x²+S_k)` for P3.
    pub fn fixed_point_tail(&self, k: u64) -> Result<QuadraticValue, SchemeError> {
        let mut sum = BigRational::zero();
        for i in 1..=k {
            sum += self.n_seq.eval(i)?;
        }
        let shifted = &self.x + &sum;
        Ok(match self.kind {
            SchemeKind::P1 => QuadraticValue::rational(shifted),
            SchemeKind::P2 => QuadraticValue::rational(&shifted * &shifted),
            SchemeKind::P3 => {
                let radicand = &self.x * &self.x + &sum;
                if radicand.is_negative() {
                    return Err(SchemeError::NegativeRadicand(k));
                }
                QuadraticValue::new(BigRational::one(), radicand, BigRational::zero())
            }
        })
    }
}

/// Iterator produced by [`SchemeInstance::terms`].
#[derive(Clone, Debug)]
pub struct Terms<'a> {
    instance: &'a SchemeInstance,
    next_depth: u64,
    prefix_sum: BigRational,
    failed: bool,
}

impl Terms<'_> {
    fn generate(&mut self) -> Result<Term, SchemeError> {
        let inst = self.instance;
        let i = self.next_depth;
        let n_i = inst.n_seq.eval(i)?;
        let argument = &inst.x + &self.prefix_sum;
        let cumulative = &self.prefix_sum + &n_i;
        let term = match inst.kind {
            SchemeKind::P1 => {
                let a_i = inst.a_seq.eval(i)?;
                let constant = &n_i * &n_i + &a_i * &n_i + &a_i * &argument;
                let multiplier = &argument - &n_i - &a_i;
                Term {
                    depth: i,
                    constant: QuadraticValue::rational(constant),
                    multiplier: QuadraticValue::rational(multiplier),
                    root_degree: RootDegree::Square,
                    cumulative_sum: cumulative.clone(),
                }
            }
            SchemeKind::P2 => {
                let two = BigRational::from_integer(2.into());
                let three = BigRational::from_integer(3.into());
                let constant = &two * &n_i * &n_i * &n_i + &three * &n_i * &n_i * &argument;
                let multiplier = &argument - &two * &n_i;
                Term {
                    depth: i,
                    constant: QuadraticValue::rational(constant),
                    multiplier: QuadraticValue::rational(multiplier),
                    root_degree: RootDegree::ThreeHalves,
                    cumulative_sum: cumulative.clone(),
                }
            }
            SchemeKind::P3 => {
                let a_i = inst.a_seq.eval(i)?;
                let radicand = &inst.x * &inst.x + &cumulative;
                if radicand.is_negative() {
                    return Err(SchemeError::NegativeRadicand(i));
                }
                Term {
                    depth: i,
                    constant: QuadraticValue::new(a_i.clone(), radicand.clone(), -&n_i),
                    multiplier: QuadraticValue::new(BigRational::one(), radicand, -a_i),
                    root_degree: RootDegree::Square,
                    cumulative_sum: cumulative.clone(),
                }
            }
        };
        self.prefix_sum = cumulative;
        self.next_depth += 1;
        Ok(term)
    }
}

impl Iterator for Terms<'_> {
    type Item = Result<Term, SchemeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let result = self.generate();
        if result.is_err() {
            self.failed = true;
        }
        Some(result)
    }
}

/// Named scheme instances reproducing the displayed radicals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Ramanujan's radical: P1 with `x = 3`, `a_i = 0`, `n_i = 1`; value 3.
    Classic,
    /// P1 with `x = 3`, `a_i = 0`, `n_i = 2i−1`; value 3.
    Cor1,
    /// P1 with `x = 3`, `a_i = 0`, `n_i = 2i`; value 3.
    Cor2,
    /// P2 with `x = 3`, `n_i = 1`; value 9.
    Cor3,
    /// P3 with `x = 1`, `a_i = 1`, `n_i = 1`; value 1.
    Cor4,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Classic,
        Preset::Cor1,
        Preset::Cor2,
        Preset::Cor3,
        Preset::Cor4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Classic => "classic",
            Preset::Cor1 => "cor1",
            Preset::Cor2 => "cor2",
            Preset::Cor3 => "cor3",
            Preset::Cor4 => "cor4",
        }
    }

    pub fn instance(self) -> SchemeInstance {
        let int = |n: i64| BigRational::from_integer(BigInt::from(n));
        let constant = |n: i64| SequenceSpec::Constant(int(n));
        let closed = |text: &str| {
            SequenceSpec::ClosedForm(
                crate::seqspec::parse_expr(text).expect("preset closed forms parse"),
            )
        };
        let built = match self {
            Preset::Classic => {
                SchemeInstance::new(SchemeKind::P1, int(3), constant(0), constant(1))
            }
            Preset::Cor1 => {
                SchemeInstance::new(SchemeKind::P1, int(3), constant(0), closed("2*i-1"))
            }
            Preset::Cor2 => SchemeInstance::new(SchemeKind::P1, int(3), constant(0), closed("2*i")),
            Preset::Cor3 => SchemeInstance::new(SchemeKind::P2, int(3), constant(0), constant(1)),
            Preset::Cor4 => SchemeInstance::new(SchemeKind::P3, int(1), constant(1), constant(1)),
        };
        built.expect("presets satisfy the instance invariants")
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classic" => Ok(Preset::Classic),
            "cor1" => Ok(Preset::Cor1),
            "cor2" => Ok(Preset::Cor2),
            "cor3" => Ok(Preset::Cor3),
            "cor4" => Ok(Preset::Cor4),
            other => Err(format!(
                "unknown preset `{other}` (expected classic, cor1, cor2, cor3, or cor4)"
            )),
        }
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The closed-form multiplier each preset's derivation predicts at depth `i`.
///
/// Used as an independent oracle against [`SchemeInstance::term_at`]:
/// `classic → i+1`, `cor1 → 5+i²−4i`, `cor2 → i²−3(i−1)`, `cor3 → i`,
/// `cor4 → √(i+1) − 1`.
pub fn corollary_coefficient(preset: Preset, i: u64) -> QuadraticValue {
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let idx = i as i64;
    match preset {
        Preset::Classic => QuadraticValue::rational(int(idx + 1)),
        Preset::Cor1 => QuadraticValue::rational(int(5 + idx * idx - 4 * idx)),
        Preset::Cor2 => QuadraticValue::rational(int(idx * idx - 3 * (idx - 1))),
        Preset::Cor3 => QuadraticValue::rational(int(idx)),
        Preset::Cor4 => QuadraticValue::new(int(1), int(idx + 1), int(-1)),
    }
}
