//! Arbitrary-precision evaluation of depth-`k` truncations.
//!
//! Evaluation runs the backward recursion `R_{i−1} = (c_i + m_i·R_i)^(1/ρ)`
//! from the tail value `R_k` down to `R_0`, where `ρ` is the root degree (a
//! degree-`3/2` radical means `u^(2/3)`, computed as the square of the real
//! cube root). The recursion is a loop, never call-stack recursion, so deep
//! sweeps cannot overflow the stack.
//!
//! All numbers are decimals ([`BigDecimal`]) carried at a working precision
//! of `P + 10 + ⌈k/2⌉` significant digits, where `P` is the requested output
//! precision: square roots roughly halve relative error per level, so a
//! modest guard absorbs the accumulated rounding. Additions and
//! multiplications are exact; only roots and final output round, always
//! half-even. Identical inputs therefore produce bit-identical output
//! strings.
//!
//! Tail seeding is configurable: `Zero` is the conventional truncation of the
//! infinite radical, `FixedPoint` seeds the exact fixed point (making every
//! depth telescope to the limit), and `Const` probes sensitivity to tail
//! perturbations.

pub use bigdecimal::BigDecimal;
use bigdecimal::{Context, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::num::NonZeroU64;
use std::str::FromStr;
use thiserror::Error;

use crate::scheme::{QuadraticValue, RootDegree, SchemeError, SchemeInstance, Term};

/// What to place in the innermost position of a depth-`k` truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailMode {
    /// Seed with zero: the usual reading of the truncated infinite radical.
    Zero,
    /// Seed with the exact fixed point at the truncation argument, which
    /// makes the whole evaluation telescope to the limit.
    FixedPoint,
    /// Seed with a fixed nonnegative decimal constant.
    Const(BigDecimal),
}

/// Malformed constant for [`TailMode::Const`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TailParseError {
    #[error("tail constant `{0}` is not a decimal number")]
    NotADecimal(String),
    #[error("tail constant `{0}` is negative")]
    Negative(String),
}

impl TailMode {
    /// Parses a nonnegative decimal string into [`TailMode::Const`].
    pub fn constant(text: &str) -> Result<TailMode, TailParseError> {
        let value = BigDecimal::from_str(text.trim())
            .map_err(|_| TailParseError::NotADecimal(text.to_string()))?;
        if value.is_negative() {
            return Err(TailParseError::Negative(text.to_string()));
        }
        Ok(TailMode::Const(value))
    }

    /// Stable textual label: `zero`, `fixed`, or `const:<decimal>`.
    pub fn label(&self) -> String {
        match self {
            TailMode::Zero => "zero".to_string(),
            TailMode::FixedPoint => "fixed".to_string(),
            TailMode::Const(value) => format!("const:{value}"),
        }
    }
}

impl std::fmt::Display for TailMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Output precision, truncation depth, and tail seeding for one evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalSettings {
    /// Significant digits of the output value; at least 1.
    pub precision: u32,
    /// Number of radical layers retained.
    pub depth: u64,
    pub tail: TailMode,
}

/// One evaluated truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub depth: u64,
    pub tail: TailMode,
    pub precision: u32,
    /// The evaluated truncation, `precision` significant digits.
    pub value: String,
    /// The exact limit (`x` for P1/P3, `x²` for P2) as a decimal string.
    pub limit: String,
    /// `|value − limit|`, computed at working precision.
    pub abs_error: String,
}

impl EvalResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialization is infallible")
    }
}

impl Serialize for EvalResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EvalResult", 6)?;
        s.serialize_field("depth", &self.depth)?;
        s.serialize_field("tail", &self.tail.label())?;
        s.serialize_field("precision", &self.precision)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("limit", &self.limit)?;
        s.serialize_field("abs_error", &self.abs_error)?;
        s.end()
    }
}

/// Errors raised while evaluating a truncation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("negative radicand under a square root at depth {depth}")]
    NegativeRadicand { depth: u64 },
}

fn context(digits: u64) -> Context {
    Context::new(
        NonZeroU64::new(digits).expect("working precision is positive"),
        RoundingMode::HalfEven,
    )
}

fn working_precision(precision: u32, depth: u64) -> u64 {
    precision as u64 + 10 + depth.div_ceil(2)
}

/// Decimal length of a big integer's magnitude.
fn digit_count(value: &BigInt) -> u64 {
    if value.is_zero() {
        return 1;
    }
    value.magnitude().to_string().len() as u64
}

/// Converts an exact rational to a decimal. Integers convert exactly;
/// everything else is correct to `digits` significant digits.
fn rational_to_decimal(value: &BigRational, digits: u64) -> BigDecimal {
    if value.is_zero() {
        return BigDecimal::zero();
    }
    if value.denom().is_one() {
        return BigDecimal::from(value.numer().clone());
    }
    // scale so the integer quotient carries `digits + 2` significant digits,
    // then round once
    let extra = digits as i64
        + 2
        + (digit_count(value.denom()) as i64 - digit_count(value.numer()) as i64).max(0);
    let scaled = value.numer() * BigInt::from(10u32).pow(extra as u32);
    let quotient = scaled / value.denom();
    BigDecimal::new(quotient, extra).with_precision_round(
        NonZeroU64::new(digits).expect("digits is positive"),
        RoundingMode::HalfEven,
    )
}

fn sqrt_decimal(value: &BigDecimal, digits: u64) -> BigDecimal {
    value
        .sqrt_with_context(&context(digits))
        .expect("radicand checked nonnegative")
}

/// Realizes `alpha·√s + beta` at `digits` working digits.
fn realize_working(value: &QuadraticValue, digits: u64) -> BigDecimal {
    let beta = rational_to_decimal(value.beta(), digits);
    if value.is_rational() {
        return beta;
    }
    let root = sqrt_decimal(&rational_to_decimal(value.radicand(), digits + 5), digits);
    rational_to_decimal(value.alpha(), digits) * root + beta
}

/// Realizes `alpha·√s + beta` numerically, rounded to `precision`
/// significant digits (principal root).
pub fn realize(value: &QuadraticValue, precision: u32) -> BigDecimal {
    let digits = precision as u64 + 10;
    round_significant(&realize_working(value, digits), precision as u64)
}

fn round_significant(value: &BigDecimal, digits: u64) -> BigDecimal {
    if value.is_zero() {
        return BigDecimal::zero();
    }
    value.with_precision_round(
        NonZeroU64::new(digits).expect("digits is positive"),
        RoundingMode::HalfEven,
    )
}

/// Plain positional rendering of a decimal, digits exactly as stored.
fn format_positional(value: &BigDecimal) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let (digits, scale) = value.as_bigint_and_exponent();
    let negative = digits.is_negative();
    let mantissa = digits.magnitude().to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if scale <= 0 {
        out.push_str(&mantissa);
        for _ in 0..(-scale) {
            out.push('0');
        }
    } else if (mantissa.len() as i64) > scale {
        let split = mantissa.len() - scale as usize;
        out.push_str(&mantissa[..split]);
        out.push('.');
        out.push_str(&mantissa[split..]);
    } else {
        out.push_str("0.");
        for _ in 0..(scale - mantissa.len() as i64) {
            out.push('0');
        }
        out.push_str(&mantissa);
    }
    out
}

/// Value string: exactly `precision` significant digits, positional.
fn format_value(value: &BigDecimal, precision: u64) -> String {
    format_positional(&round_significant(value, precision))
}

/// Limit string: `precision` significant digits with trailing fractional
/// zeros trimmed, so exact integers print as integers.
fn format_limit(value: &BigDecimal, precision: u64) -> String {
    let mut out = format_value(value, precision);
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// Error string: 6 significant digits, scientific notation for small or huge
/// magnitudes (`4.1e-7`), positional otherwise, zero as `0`.
fn format_error(value: &BigDecimal) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let rounded = round_significant(value, 6);
    let (digits, scale) = rounded.as_bigint_and_exponent();
    let mut mantissa = digits.magnitude().clone();
    let mut scale = scale;
    let ten = num_bigint::BigUint::from(10u32);
    while &mantissa % &ten == num_bigint::BigUint::zero() && mantissa > num_bigint::BigUint::zero()
    {
        mantissa /= &ten;
        scale -= 1;
    }
    let mantissa_str = mantissa.to_string();
    let exponent = mantissa_str.len() as i64 - 1 - scale;
    if (-4..=8).contains(&exponent) {
        return format_positional(&BigDecimal::new(BigInt::from(mantissa), scale));
    }
    let mut out = String::new();
    out.push_str(&mantissa_str[..1]);
    if mantissa_str.len() > 1 {
        out.push('.');
        out.push_str(&mantissa_str[1..]);
    }
    out.push('e');
    out.push_str(&exponent.to_string());
    out
}

/// Evaluates a depth-`k` truncation at the requested precision.
///
/// Backward recursion from the tail: `R_k` is the tail value; for
/// `i = k, …, 1`, `R_{i−1} = (c_i + m_i·R_i)^(1/ρ_i)`. A negative radicand
/// under a square root is a hard error naming the depth; a degree-`3/2`
/// radical uses the real cube root, so negative arguments are permitted
/// there.
pub fn evaluate(inst: &SchemeInstance, settings: &EvalSettings) -> Result<EvalResult, EvalError> {
    let terms = collect_terms(inst, settings.depth)?;
    evaluate_terms(inst, &terms, settings)
}

fn collect_terms(inst: &SchemeInstance, depth: u64) -> Result<Vec<Term>, EvalError> {
    inst.terms()
        .take(depth as usize)
        .collect::<Result<Vec<_>, _>>()
        .map_err(EvalError::from)
}

/// Shared core of [`evaluate`] and [`sweep`]; `terms` holds exactly the
/// first `settings.depth` terms.
fn evaluate_terms(
    inst: &SchemeInstance,
    terms: &[Term],
    settings: &EvalSettings,
) -> Result<EvalResult, EvalError> {
    assert!(settings.precision >= 1, "precision must be positive");
    assert_eq!(terms.len() as u64, settings.depth);
    let digits = working_precision(settings.precision, settings.depth);

    let mut current = match &settings.tail {
        TailMode::Zero => BigDecimal::zero(),
        TailMode::FixedPoint => realize_working(&inst.fixed_point_tail(settings.depth)?, digits),
        TailMode::Const(value) => value.clone(),
    };

    for term in terms.iter().rev() {
        let constant = realize_working(term.constant(), digits);
        let multiplier = realize_working(term.multiplier(), digits);
        let radicand = constant + multiplier * current;
        current = match term.root_degree() {
            RootDegree::Square => {
                if radicand.is_negative() {
                    return Err(EvalError::NegativeRadicand {
                        depth: term.depth(),
                    });
                }
                sqrt_decimal(&radicand, digits)
            }
            RootDegree::ThreeHalves => {
                let cube_root = radicand.cbrt_with_context(&context(digits));
                &cube_root * &cube_root
            }
        };
    }

    let value = round_significant(&current, settings.precision as u64);
    let limit = rational_to_decimal(&inst.limit(), digits);
    let abs_error = (&value - &limit).abs();

    Ok(EvalResult {
        depth: settings.depth,
        tail: settings.tail.clone(),
        precision: settings.precision,
        value: format_positional(&value),
        limit: format_limit(&limit, settings.precision as u64),
        abs_error: format_error(&abs_error),
    })
}

/// Evaluates every depth `1..=max_depth` under the same tail mode and
/// precision, in depth order. Each depth is the same computation
/// [`evaluate`] performs, so the two agree bit-for-bit.
pub fn sweep(
    inst: &SchemeInstance,
    max_depth: u64,
    tail: &TailMode,
    precision: u32,
) -> Result<Vec<EvalResult>, EvalError> {
    assert!(max_depth >= 1, "sweep needs at least depth 1");
    let mut results = Vec::with_capacity(max_depth as usize);
    let mut terms = Vec::with_capacity(max_depth as usize);
    let mut source = inst.terms();
    for depth in 1..=max_depth {
        let term = source
            .next()
            .expect("terms iterator yields a result per depth")?;
        terms.push(term);
        let settings = EvalSettings {
            precision,
            depth,
            tail: tail.clone(),
        };
        results.push(evaluate_terms(inst, &terms, &settings)?);
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::Preset;
    use crate::seqspec::SequenceSpec;
    use crate::SchemeKind;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> BigRational {
        rat(n, 1)
    }

    fn settings(precision: u32, depth: u64, tail: TailMode) -> EvalSettings {
        EvalSettings {
            precision,
            depth,
            tail,
        }
    }

    #[test]
    fn realize_goldens() {
        let nine = QuadraticValue::rational(int(9));
        assert_eq!(realize(&nine, 10), BigDecimal::from(9));

        let sqrt2_minus_1 = QuadraticValue::new(int(1), int(2), int(-1));
        assert_eq!(
            format_positional(&realize(&sqrt2_minus_1, 20)),
            "0.41421356237309504880"
        );

        let sqrt4 = QuadraticValue::new(int(1), int(4), int(0));
        let realized = realize(&sqrt4, 5);
        assert_eq!(realized, BigDecimal::from(2));
        assert_eq!(format_positional(&realized), "2.0000");
    }

    #[test]
    fn rational_conversion_is_scale_aware() {
        assert_eq!(
            format_positional(&rational_to_decimal(&rat(1, 3), 10)),
            "0.3333333333"
        );
        assert_eq!(
            format_positional(&rational_to_decimal(&rat(2, 3), 10)),
            "0.6666666667"
        );
        // tiny magnitudes keep their leading zeros
        assert_eq!(
            format_positional(&rational_to_decimal(&rat(1, 1_000_000_000), 4)),
            "0.000000001000"
        );
        // integers convert exactly, whatever their size
        let huge = BigRational::from_integer(BigInt::from(10).pow(40) + 1);
        assert_eq!(
            format_positional(&rational_to_decimal(&huge, 4)),
            "10000000000000000000000000000000000000001"
        );
    }

    #[test]
    fn telescoping_goldens() {
        // cor1 at depth 2 with the exact tail: R_2 = 7, R_1 = √16 = 4,
        // R_0 = √9 = 3.
        let result = evaluate(
            &Preset::Cor1.instance(),
            &settings(30, 2, TailMode::FixedPoint),
        )
        .unwrap();
        assert_eq!(result.value, format!("3.{}", "0".repeat(29)));
        assert_eq!(result.limit, "3");
        assert_eq!(result.abs_error, "0");

        // cor3 at depth 1: (11 + 1·16)^(2/3) = 27^(2/3) = 9
        let result = evaluate(
            &Preset::Cor3.instance(),
            &settings(30, 1, TailMode::FixedPoint),
        )
        .unwrap();
        assert_eq!(result.value, format!("9.{}", "0".repeat(29)));
        assert_eq!(result.abs_error, "0");
    }

    #[test]
    fn zero_tail_depth_two_is_sqrt_seven() {
        // R_1 = √9 = 3, R_0 = √(1+2·3) = √7
        let result = evaluate(&Preset::Cor1.instance(), &settings(30, 2, TailMode::Zero)).unwrap();
        let sqrt7 = sqrt_decimal(&BigDecimal::from(7), working_precision(30, 2));
        assert_eq!(result.value, format_value(&sqrt7, 30));
        assert_eq!(result.value, "2.64575131106459059050161575364");
    }

    #[test]
    fn const_tail_equal_to_fixed_point_telescopes() {
        // At depth 2 the cor1 fixed point is exactly 7, so const:7 matches it.
        let inst = Preset::Cor1.instance();
        let fixed = evaluate(&inst, &settings(30, 2, TailMode::FixedPoint)).unwrap();
        let consted = evaluate(&inst, &settings(30, 2, TailMode::constant("7").unwrap())).unwrap();
        assert_eq!(fixed.value, consted.value);
    }

    #[test]
    fn depth_zero_returns_the_tail() {
        let inst = Preset::Cor1.instance();
        let result = evaluate(&inst, &settings(10, 0, TailMode::Zero)).unwrap();
        assert_eq!(result.value, "0");
        let result = evaluate(&inst, &settings(10, 0, TailMode::FixedPoint)).unwrap();
        assert_eq!(result.value, format!("3.{}", "0".repeat(9)));
    }

    #[test]
    fn negative_square_radicand_is_a_hard_error() {
        // x = 1, n = 3: c_1 = 9, m_1 = −2; a tail of 10 drives the radicand
        // to 9 − 20 < 0.
        let inst = SchemeInstance::new(
            SchemeKind::P1,
            int(1),
            SequenceSpec::Constant(int(0)),
            SequenceSpec::Constant(int(3)),
        )
        .unwrap();
        let err = evaluate(&inst, &settings(10, 1, TailMode::constant("10").unwrap()));
        assert_eq!(err.unwrap_err(), EvalError::NegativeRadicand { depth: 1 });
    }

    #[test]
    fn three_halves_root_permits_negative_radicand() {
        // P2 with x = 1, n = 2: m_1 = 1 − 4 = −3, zero tail keeps the
        // radicand positive, but a const tail of 100 sends it negative;
        // the real cube root handles it.
        let inst = SchemeInstance::new(
            SchemeKind::P2,
            int(1),
            SequenceSpec::Constant(int(0)),
            SequenceSpec::Constant(int(2)),
        )
        .unwrap();
        let result = evaluate(&inst, &settings(10, 1, TailMode::constant("100").unwrap()));
        assert!(result.is_ok());
    }

    #[test]
    fn deep_zero_tail_approaches_the_limit() {
        // Golden from an independent 100-digit recursion over the preset's
        // closed-form coefficients: |3 − value| = 6.4026315e-10 at depth 30.
        let result = evaluate(&Preset::Cor1.instance(), &settings(50, 30, TailMode::Zero)).unwrap();
        let err = BigDecimal::from_str(&result.abs_error).unwrap();
        assert!(err <= BigDecimal::from_str("1e-6").unwrap(), "{err}");
        assert!(err >= BigDecimal::from_str("6.40e-10").unwrap(), "{err}");
        assert!(err <= BigDecimal::from_str("6.41e-10").unwrap(), "{err}");
        assert!(result.value.starts_with("2.9999999993"), "{}", result.value);
    }

    #[test]
    fn sweep_golden_first_three_depths() {
        // Golden values from the same independent 100-digit recursion:
        // depth 1 → √1, depth 2 → √(1+2√9) = √7, depth 3 → √(1+2√(9+√25)).
        let rows = sweep(&Preset::Cor1.instance(), 3, &TailMode::Zero, 20).unwrap();
        let values: Vec<&str> = rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(
            values,
            [
                "1.0000000000000000000",
                "2.6457513110645905905",
                "2.9126130490588485948",
            ]
        );
    }

    #[test]
    fn classic_sweep_converges_to_three() {
        // Independent-oracle error at depth 20 is 1.2119401e-5 < 1e-4.
        let rows = sweep(&Preset::Classic.instance(), 20, &TailMode::Zero, 30).unwrap();
        assert_eq!(rows.len(), 20);
        assert_eq!(rows.last().unwrap().abs_error, "1.21194e-5");
        assert_eq!(rows.last().unwrap().limit, "3");
    }

    #[test]
    fn fixed_point_sweep_sits_on_the_limit_at_every_depth() {
        for preset in Preset::ALL {
            let inst = preset.instance();
            let rows = sweep(&inst, 10, &TailMode::FixedPoint, 30).unwrap();
            for row in rows {
                assert_eq!(row.abs_error, "0", "{preset} depth {}", row.depth);
            }
        }
    }

    #[test]
    fn sweep_matches_evaluate_per_depth() {
        let inst = Preset::Classic.instance();
        let swept = sweep(&inst, 6, &TailMode::Zero, 25).unwrap();
        assert_eq!(swept.len(), 6);
        for (idx, row) in swept.iter().enumerate() {
            let depth = idx as u64 + 1;
            let single = evaluate(&inst, &settings(25, depth, TailMode::Zero)).unwrap();
            assert_eq!(row, &single, "depth {depth}");
        }
    }

    #[test]
    fn deep_truncation_runs_without_stack_growth() {
        // Backward recursion is a loop; thousands of levels must not touch
        // the call stack.
        let result = evaluate(
            &Preset::Classic.instance(),
            &settings(1, 4000, TailMode::Zero),
        );
        assert_eq!(result.unwrap().value, "3");
    }

    #[test]
    fn evaluation_is_deterministic() {
        let inst = Preset::Cor4.instance();
        let a = evaluate(&inst, &settings(40, 17, TailMode::Zero)).unwrap();
        let b = evaluate(&inst, &settings(40, 17, TailMode::Zero)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn result_json_shape() {
        let result = evaluate(
            &Preset::Cor1.instance(),
            &settings(5, 2, TailMode::FixedPoint),
        )
        .unwrap();
        assert_eq!(
            result.to_json(),
            r#"{"depth":2,"tail":"fixed","precision":5,"value":"3.0000","limit":"3","abs_error":"0"}"#
        );
    }

    #[test]
    fn error_formatting() {
        assert_eq!(format_error(&BigDecimal::zero()), "0");
        assert_eq!(
            format_error(&BigDecimal::from_str("0.00000041").unwrap()),
            "4.1e-7"
        );
        assert_eq!(
            format_error(&BigDecimal::from_str("0.0012345678").unwrap()),
            "0.00123457"
        );
        assert_eq!(format_error(&BigDecimal::from_str("2.5").unwrap()), "2.5");
        assert_eq!(format_error(&BigDecimal::one()), "1");
        assert_eq!(
            format_error(&BigDecimal::from_str("123456789012").unwrap()),
            "1.23457e11"
        );
    }

    #[test]
    fn non_integer_limits_print_trimmed() {
        // P2 with x = 7/2 has limit 49/4 = 12.25
        let inst = SchemeInstance::new(
            SchemeKind::P2,
            rat(7, 2),
            SequenceSpec::Constant(int(0)),
            SequenceSpec::Constant(int(1)),
        )
        .unwrap();
        let result = evaluate(&inst, &settings(30, 3, TailMode::FixedPoint)).unwrap();
        assert_eq!(result.limit, "12.25");
        assert_eq!(result.abs_error, "0");
    }
}
