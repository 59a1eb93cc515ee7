//! Plain-text and LaTeX rendering of depth-`k` truncations.
//!
//! Coefficients are rendered pre-evaluated (`9` rather than `3²`): decorative
//! groupings are presentation choices the generator cannot reconstruct
//! uniquely. Rational values print exactly; irrational coefficients
//! print in `sqrt(s)` / `\sqrt{s}` symbolic form. A multiplier of `1` is
//! still written explicitly so output stays machine-parseable.

use crate::scheme::{QuadraticValue, RootDegree, SchemeError, SchemeInstance, Term};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Target syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderKind {
    Text,
    Latex,
}

/// Output syntax plus whether the innermost position shows an ellipsis.
///
/// With `ellipsis` off, the innermost level renders just its constant: the
/// zero-tail truncation, where the `m_k·…` summand drops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderFormat {
    pub kind: RenderKind,
    pub ellipsis: bool,
}

impl RenderFormat {
    pub fn text() -> Self {
        RenderFormat {
            kind: RenderKind::Text,
            ellipsis: true,
        }
    }

    pub fn latex() -> Self {
        RenderFormat {
            kind: RenderKind::Latex,
            ellipsis: true,
        }
    }

    pub fn with_ellipsis(mut self, ellipsis: bool) -> Self {
        self.ellipsis = ellipsis;
        self
    }
}

fn rational_text(value: &BigRational) -> String {
    value.to_string()
}

fn rational_latex(value: &BigRational) -> String {
    if value.denom().is_one() {
        return value.numer().to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    format!(
        "{sign}\\frac{{{}}}{{{}}}",
        value.numer().magnitude(),
        value.denom()
    )
}

fn quadratic(value: &QuadraticValue, kind: RenderKind) -> String {
    if let Some(rational) = value.as_rational() {
        return match kind {
            RenderKind::Text => rational_text(rational),
            RenderKind::Latex => rational_latex(rational),
        };
    }
    let alpha = value.alpha();
    let mut out = String::new();
    let radicand = match kind {
        RenderKind::Text => format!("sqrt({})", rational_text(value.radicand())),
        RenderKind::Latex => format!("\\sqrt{{{}}}", rational_latex(value.radicand())),
    };
    if alpha.is_one() {
        out.push_str(&radicand);
    } else if (-alpha).is_one() {
        out.push('-');
        out.push_str(&radicand);
    } else {
        match kind {
            RenderKind::Text => {
                out.push_str(&rational_text(alpha));
                out.push('*');
            }
            RenderKind::Latex => out.push_str(&rational_latex(alpha)),
        }
        out.push_str(&radicand);
    }
    let beta = value.beta();
    if !beta.is_zero() {
        let magnitude = beta.abs();
        out.push(if beta.is_negative() { '-' } else { '+' });
        out.push_str(&match kind {
            RenderKind::Text => rational_text(&magnitude),
            RenderKind::Latex => rational_latex(&magnitude),
        });
    }
    out
}

/// Composite multipliers (irrational, or negative rationals) are wrapped in
/// parentheses so the product stays unambiguous.
fn multiplier(value: &QuadraticValue, kind: RenderKind) -> String {
    let body = quadratic(value, kind);
    let composite = match value.as_rational() {
        Some(rational) => rational.is_negative(),
        None => true,
    };
    if composite {
        format!("({body})")
    } else {
        body
    }
}

fn wrap(root: RootDegree, body: &str, kind: RenderKind) -> String {
    match (kind, root) {
        (RenderKind::Text, RootDegree::Square) => format!("sqrt({body})"),
        (RenderKind::Text, RootDegree::ThreeHalves) => format!("root[3/2]({body})"),
        (RenderKind::Latex, RootDegree::Square) => format!("\\sqrt{{{body}}}"),
        (RenderKind::Latex, RootDegree::ThreeHalves) => format!("\\sqrt[3/2]{{{body}}}"),
    }
}

/// Renders the depth-`k` truncation as nested radicals, `depth ≥ 1`.
pub fn render(
    inst: &SchemeInstance,
    depth: u64,
    fmt: &RenderFormat,
) -> Result<String, SchemeError> {
    assert!(depth >= 1, "rendering needs at least one level");
    let terms: Vec<Term> = inst
        .terms()
        .take(depth as usize)
        .collect::<Result<_, _>>()?;
    let mut inner: Option<String> = if fmt.ellipsis {
        Some(match fmt.kind {
            RenderKind::Text => "…".to_string(),
            RenderKind::Latex => "\\cdots".to_string(),
        })
    } else {
        None
    };
    for term in terms.iter().rev() {
        let constant = quadratic(term.constant(), fmt.kind);
        let body = match &inner {
            Some(inner) => {
                let m = multiplier(term.multiplier(), fmt.kind);
                match fmt.kind {
                    RenderKind::Text => format!("{constant} + {m}*{inner}"),
                    RenderKind::Latex => format!("{constant}+{m}\\,{inner}"),
                }
            }
            None => constant,
        };
        inner = Some(wrap(term.root_degree(), &body, fmt.kind));
    }
    Ok(inner.expect("depth is at least one"))
}
