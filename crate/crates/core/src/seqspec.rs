//! Coefficient sequences `a_1, a_2, …` and `n_1, n_2, …` and the arithmetic
//! expressions that define them.
//!
//! A sequence is either a constant, a closed-form expression in the index
//! variable `i` (e.g. `2*i-1`), or an explicit finite list. Closed forms use
//! a minimal rational-valued expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' '-'? intlit)?
//! base   := intlit | 'i' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant; integer literals are decimal with arbitrary
//! size. Exponents are restricted to integer literals so that every
//! expression evaluates to an exact rational; rational constants are written
//! with the division operator (`1/2`), not a dedicated token.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// AST of a rational-valued arithmetic expression in the index variable `i`.
///
/// Integer literals produced by the parser are nonnegative; negative values
/// appear as [`Expr::Neg`] applied to a literal, mirroring the concrete
/// grammar. `Pow` keeps its exponent as data rather than as a sub-expression,
/// which is what guarantees rational-valued evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Integer literal (arbitrary size).
    Int(BigInt),
    /// The index variable `i`.
    Index,
    /// Unary negation.
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Base raised to an integer (possibly negative) exponent.
    Pow(Box<Expr>, BigInt),
}

/// Error produced by [`parse_expr`]: byte position plus a short message.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            position,
            message: message.into(),
        }
    }
}

/// Division by zero while evaluating an [`Expr`] at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("division by zero")]
pub struct DivisionByZero;

/// Error from evaluating a [`SequenceSpec`] at an index.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("division by zero evaluating sequence at index {0}")]
    DivisionByZero(u64),
    #[error("index {0} is out of range for the explicit sequence")]
    IndexOutOfRange(u64),
}

// ---- lexer ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Index,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                let value =
                    BigInt::from_str(digits).expect("digit run always parses as an integer");
                toks.push((start, Tok::Int(value)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                let word = &text[start..pos];
                if word == "i" {
                    toks.push((start, Tok::Index));
                } else {
                    return Err(SyntaxError::new(
                        start,
                        format!("unknown symbol `{word}` (only the index variable `i` is defined)"),
                    ));
                }
            }
            b'+' => {
                toks.push((pos, Tok::Plus));
                pos += 1;
            }
            b'-' => {
                toks.push((pos, Tok::Minus));
                pos += 1;
            }
            b'*' => {
                toks.push((pos, Tok::Star));
                pos += 1;
            }
            b'/' => {
                toks.push((pos, Tok::Slash));
                pos += 1;
            }
            b'^' => {
                toks.push((pos, Tok::Caret));
                pos += 1;
            }
            b'(' => {
                toks.push((pos, Tok::LParen));
                pos += 1;
            }
            b')' => {
                toks.push((pos, Tok::RParen));
                pos += 1;
            }
            _ => {
                let ch = text[pos..].chars().next().unwrap();
                return Err(SyntaxError::new(pos, format!("unknown token `{ch}`")));
            }
        }
    }
    Ok(toks)
}

// ---- parser ----

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    cursor: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.cursor).map(|(_, t)| t);
        self.cursor += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let negative = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let exp = if negative { -n.clone() } else { n.clone() };
                    Ok(Expr::Pow(Box::new(base), exp))
                }
                _ => Err(SyntaxError::new(pos, "exponent must be an integer literal")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n.clone())),
            Some(Tok::Index) => Ok(Expr::Index),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let pos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(SyntaxError::new(pos, "expected `)`")),
                }
            }
            Some(_) => Err(SyntaxError::new(pos, "expected a number, `i`, or `(`")),
            None => Err(SyntaxError::new(pos, "unexpected end of expression")),
        }
    }
}

/// Parses an expression under the grammar in the module docs.
///
/// Operator precedence, loosest to tightest: `+ -`, `* /`, unary `-`, `^`.
pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    if text.trim().is_empty() {
        return Err(SyntaxError::new(0, "empty expression"));
    }
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks: &toks,
        cursor: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.cursor < toks.len() {
        return Err(SyntaxError::new(parser.pos(), "unexpected trailing token"));
    }
    Ok(expr)
}

// ---- printer ----

/// Syntactic level a printed expression is embedded in; used to decide where
/// parentheses are required so that reparsing reproduces the same AST.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Ctx {
    Expr,
    Term,
    Factor,
    Base,
}

fn write_expr(e: &Expr, ctx: Ctx, out: &mut String) {
    match e {
        Expr::Int(n) => {
            if n.is_negative() {
                // A negative literal has no literal spelling in the grammar;
                // print it as a negation of its magnitude.
                write_expr(&Expr::Neg(Box::new(Expr::Int(-n.clone()))), ctx, out);
            } else {
                out.push_str(&n.to_string());
            }
        }
        Expr::Index => out.push('i'),
        Expr::Add(l, r) => {
            let parens = ctx > Ctx::Expr;
            if parens {
                out.push('(');
            }
            write_expr(l, Ctx::Expr, out);
            out.push('+');
            write_expr(r, Ctx::Term, out);
            if parens {
                out.push(')');
            }
        }
        Expr::Sub(l, r) => {
            let parens = ctx > Ctx::Expr;
            if parens {
                out.push('(');
            }
            write_expr(l, Ctx::Expr, out);
            out.push('-');
            write_expr(r, Ctx::Term, out);
            if parens {
                out.push(')');
            }
        }
        Expr::Mul(l, r) => {
            let parens = ctx > Ctx::Term;
            if parens {
                out.push('(');
            }
            write_expr(l, Ctx::Term, out);
            out.push('*');
            write_expr(r, Ctx::Factor, out);
            if parens {
                out.push(')');
            }
        }
        Expr::Div(l, r) => {
            let parens = ctx > Ctx::Term;
            if parens {
                out.push('(');
            }
            write_expr(l, Ctx::Term, out);
            out.push('/');
            write_expr(r, Ctx::Factor, out);
            if parens {
                out.push(')');
            }
        }
        Expr::Neg(inner) => {
            let parens = ctx > Ctx::Factor;
            if parens {
                out.push('(');
            }
            out.push('-');
            write_expr(inner, Ctx::Factor, out);
            if parens {
                out.push(')');
            }
        }
        Expr::Pow(base, exp) => {
            let parens = ctx > Ctx::Factor;
            if parens {
                out.push('(');
            }
            write_expr(base, Ctx::Base, out);
            out.push('^');
            out.push_str(&exp.to_string());
            if parens {
                out.push(')');
            }
        }
    }
}

/// Prints an expression with minimal parentheses such that
/// `parse_expr(print_expr(e))` is structurally equal to `e`.
pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, Ctx::Expr, &mut out);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_expr(self))
    }
}

// ---- evaluation ----

fn pow_rational(base: &BigRational, exp: &BigInt) -> Result<BigRational, DivisionByZero> {
    if exp.is_zero() {
        // 0^0 = 1, the empty-product convention.
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        if exp.is_negative() {
            return Err(DivisionByZero);
        }
        return Ok(BigRational::zero());
    }
    let mag = exp.magnitude();
    let bits = mag.bits();
    let mut result = BigRational::one();
    let mut square = base.clone();
    for bit in 0..bits {
        if mag.bit(bit) {
            result *= &square;
        }
        if bit + 1 < bits {
            square = &square * &square;
        }
    }
    if exp.is_negative() {
        result = result.recip();
    }
    Ok(result)
}

impl Expr {
    /// Evaluates the expression with `i` bound to `value`, exactly.
    pub fn eval_at(&self, value: &BigRational) -> Result<BigRational, DivisionByZero> {
        match self {
            Expr::Int(n) => Ok(BigRational::from_integer(n.clone())),
            Expr::Index => Ok(value.clone()),
            Expr::Neg(inner) => Ok(-inner.eval_at(value)?),
            Expr::Add(l, r) => Ok(l.eval_at(value)? + r.eval_at(value)?),
            Expr::Sub(l, r) => Ok(l.eval_at(value)? - r.eval_at(value)?),
            Expr::Mul(l, r) => Ok(l.eval_at(value)? * r.eval_at(value)?),
            Expr::Div(l, r) => {
                let denom = r.eval_at(value)?;
                if denom.is_zero() {
                    return Err(DivisionByZero);
                }
                Ok(l.eval_at(value)? / denom)
            }
            Expr::Pow(base, exp) => pow_rational(&base.eval_at(value)?, exp),
        }
    }

    /// True if the expression mentions the index variable.
    pub fn references_index(&self) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Index => true,
            Expr::Neg(inner) => inner.references_index(),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.references_index() || r.references_index()
            }
            Expr::Pow(base, _) => base.references_index(),
        }
    }
}

// ---- sequence specs ----

/// How one of the coefficient sequences is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    /// The same rational at every index.
    Constant(BigRational),
    /// A closed-form expression in the index variable `i`.
    ClosedForm(Expr),
    /// An explicit finite list; indices beyond the end are an error, never a
    /// silent default.
    Explicit(Vec<BigRational>),
}

impl SequenceSpec {
    /// Evaluates the `index`-th element (1-based), exactly.
    pub fn eval(&self, index: u64) -> Result<BigRational, SeqError> {
        match self {
            SequenceSpec::Constant(value) => Ok(value.clone()),
            SequenceSpec::ClosedForm(expr) => expr
                .eval_at(&BigRational::from_integer(BigInt::from(index)))
                .map_err(|DivisionByZero| SeqError::DivisionByZero(index)),
            SequenceSpec::Explicit(values) => {
                if index == 0 || index as usize > values.len() {
                    return Err(SeqError::IndexOutOfRange(index));
                }
                Ok(values[index as usize - 1].clone())
            }
        }
    }

    /// Parses a sequence description: a comma-separated list of rationals
    /// (`1,3,5,7`), or an expression which is folded to a [`Constant`] when
    /// it does not mention `i`.
    ///
    /// [`Constant`]: SequenceSpec::Constant
    pub fn parse(text: &str) -> Result<SequenceSpec, SyntaxError> {
        if text.trim().is_empty() {
            return Err(SyntaxError::new(0, "empty sequence description"));
        }
        if text.contains(',') {
            let mut values = Vec::new();
            let mut offset = 0;
            for entry in text.split(',') {
                let trimmed = entry.trim();
                let start = offset + (entry.len() - entry.trim_start().len());
                if trimmed.is_empty() {
                    return Err(SyntaxError::new(start, "empty list entry"));
                }
                let value = BigRational::from_str(trimmed).map_err(|_| {
                    SyntaxError::new(
                        start,
                        format!("invalid rational `{trimmed}` in explicit list"),
                    )
                })?;
                values.push(value);
                offset += entry.len() + 1;
            }
            return Ok(SequenceSpec::Explicit(values));
        }
        let expr = parse_expr(text)?;
        if expr.references_index() {
            Ok(SequenceSpec::ClosedForm(expr))
        } else {
            let value = expr
                .eval_at(&BigRational::one())
                .map_err(|DivisionByZero| {
                    SyntaxError::new(0, "constant sequence expression divides by zero")
                })?;
            Ok(SequenceSpec::Constant(value))
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SequenceSpec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_precedence_goldens() {
        // * binds tighter than -
        assert_eq!(
            parse_expr("2*i-1").unwrap(),
            Expr::Sub(
                Box::new(Expr::Mul(Box::new(int(2)), Box::new(Expr::Index))),
                Box::new(int(1)),
            )
        );
        assert_eq!(
            parse_expr("i^2").unwrap(),
            Expr::Pow(Box::new(Expr::Index), BigInt::from(2))
        );
        // * binds tighter than +
        assert_eq!(
            parse_expr("2+3*i").unwrap(),
            Expr::Add(
                Box::new(int(2)),
                Box::new(Expr::Mul(Box::new(int(3)), Box::new(Expr::Index))),
            )
        );
    }

    #[test]
    fn rejects_non_integer_exponent() {
        let err = parse_expr("i^i").unwrap_err();
        assert!(err.message.contains("integer literal"), "{err}");
        assert!(parse_expr("i^(2)").is_err());
    }

    #[test]
    fn accepts_negative_exponent() {
        assert_eq!(
            parse_expr("2^-3").unwrap(),
            Expr::Pow(Box::new(int(2)), BigInt::from(-3))
        );
        let value = parse_expr("2^-3").unwrap().eval_at(&rat(1, 1)).unwrap();
        assert_eq!(value, rat(1, 8));
    }

    #[test]
    fn unary_minus_binds_looser_than_pow() {
        // -i^2 is -(i^2)
        assert_eq!(
            parse_expr("-i^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Index), BigInt::from(2))))
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_expr(" 2 * i - 1 ").unwrap(),
            parse_expr("2*i-1").unwrap()
        );
    }

    #[test]
    fn parses_arbitrary_size_literals() {
        let big = "123456789012345678901234567890123456789";
        let expr = parse_expr(big).unwrap();
        assert_eq!(expr, Expr::Int(BigInt::from_str(big).unwrap()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse_expr("").unwrap_err().position, 0);
        assert_eq!(parse_expr("2*").unwrap_err().position, 2);
        assert_eq!(parse_expr("(2").unwrap_err().position, 2);
        assert_eq!(parse_expr("2)").unwrap_err().position, 1);
        assert_eq!(parse_expr("2j").unwrap_err().position, 1);
        assert_eq!(parse_expr("i i").unwrap_err().position, 2);
        // chained exponent is not part of the grammar
        assert!(parse_expr("2^3^2").is_err());
    }

    #[test]
    fn print_goldens() {
        let e = Expr::Sub(
            Box::new(Expr::Mul(Box::new(int(2)), Box::new(Expr::Index))),
            Box::new(int(1)),
        );
        assert_eq!(print_expr(&e), "2*i-1");
        assert_eq!(
            print_expr(&Expr::Pow(Box::new(Expr::Index), BigInt::from(2))),
            "i^2"
        );
        assert_eq!(print_expr(&Expr::Neg(Box::new(Expr::Index))), "-i");
        // structure that forces parentheses
        assert_eq!(
            print_expr(&Expr::Neg(Box::new(Expr::Mul(
                Box::new(int(2)),
                Box::new(Expr::Index)
            )))),
            "-(2*i)"
        );
        assert_eq!(
            print_expr(&Expr::Mul(
                Box::new(Expr::Add(Box::new(int(1)), Box::new(Expr::Index))),
                Box::new(int(2))
            )),
            "(1+i)*2"
        );
        assert_eq!(
            print_expr(&Expr::Pow(
                Box::new(Expr::Neg(Box::new(Expr::Index))),
                BigInt::from(2)
            )),
            "(-i)^2"
        );
        assert_eq!(
            print_expr(&Expr::Div(
                Box::new(int(1)),
                Box::new(Expr::Mul(Box::new(Expr::Index), Box::new(Expr::Index)))
            )),
            "1/(i*i)"
        );
    }

    #[test]
    fn eval_seq_goldens() {
        let spec = SequenceSpec::ClosedForm(parse_expr("2*i-1").unwrap());
        assert_eq!(spec.eval(3).unwrap(), rat(5, 1));
        let constant = SequenceSpec::Constant(rat(1, 1));
        assert_eq!(constant.eval(7).unwrap(), rat(1, 1));
        let div = SequenceSpec::ClosedForm(parse_expr("1/(i-4)").unwrap());
        assert_eq!(div.eval(4).unwrap_err(), SeqError::DivisionByZero(4));
        assert_eq!(div.eval(5).unwrap(), rat(1, 1));
    }

    #[test]
    fn explicit_list_bounds() {
        let spec = SequenceSpec::Explicit(vec![rat(1, 1), rat(3, 1), rat(5, 1)]);
        assert_eq!(spec.eval(3).unwrap(), rat(5, 1));
        assert_eq!(spec.eval(4).unwrap_err(), SeqError::IndexOutOfRange(4));
        assert_eq!(spec.eval(0).unwrap_err(), SeqError::IndexOutOfRange(0));
    }

    #[test]
    fn sequence_spec_parsing() {
        assert_eq!(
            SequenceSpec::parse("0").unwrap(),
            SequenceSpec::Constant(rat(0, 1))
        );
        assert_eq!(
            SequenceSpec::parse("5/2").unwrap(),
            SequenceSpec::Constant(rat(5, 2))
        );
        assert_eq!(
            SequenceSpec::parse("2*i-1").unwrap(),
            SequenceSpec::ClosedForm(parse_expr("2*i-1").unwrap())
        );
        assert_eq!(
            SequenceSpec::parse("1, 3, 5,7").unwrap(),
            SequenceSpec::Explicit(vec![rat(1, 1), rat(3, 1), rat(5, 1), rat(7, 1)])
        );
        assert!(SequenceSpec::parse("1,,3").is_err());
        assert!(SequenceSpec::parse("1/0").is_err());
        assert!(SequenceSpec::parse("1,2/0").is_err());
    }

    #[test]
    fn closed_form_matches_direct_substitution() {
        // i^2 - 3*i + 1/2 against the same formula written directly in
        // rational arithmetic, for every index in 1..=1000.
        let spec = SequenceSpec::ClosedForm(parse_expr("i^2-3*i+1/2").unwrap());
        for i in 1u64..=1000 {
            let direct = rat(i as i64 * i as i64 - 3 * i as i64, 1) + rat(1, 2);
            assert_eq!(spec.eval(i).unwrap(), direct, "index {i}");
        }
    }

    // Random ASTs whose printed form must reparse to the same structure.
    // Literals are nonnegative; negation is an explicit node, like the parser
    // produces.
    fn arb_expr(depth: u32) -> BoxedStrategy<Expr> {
        let leaf = prop_oneof![
            (0u64..1_000_000).prop_map(|n| Expr::Int(BigInt::from(n))),
            Just(Expr::Index),
        ];
        leaf.prop_recursive(depth, 64, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| Expr::Add(Box::new(l), Box::new(r))),
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| Expr::Sub(Box::new(l), Box::new(r))),
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| Expr::Mul(Box::new(l), Box::new(r))),
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| Expr::Div(Box::new(l), Box::new(r))),
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner, -9i64..=9).prop_map(|(b, e)| Expr::Pow(Box::new(b), BigInt::from(e))),
            ]
        })
        .boxed()
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr(6)) {
            let printed = print_expr(&e);
            let reparsed = parse_expr(&printed).unwrap();
            prop_assert_eq!(reparsed, e);
        }
    }
}
