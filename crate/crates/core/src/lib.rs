//! Generalized infinitely nested radicals: exact construction, algebraic
//! verification, arbitrary-precision evaluation, and rendering.
//!
//! Three telescoping identities generate the radicals handled here. Each one
//! expresses a power of `x` through the same functional form evaluated at a
//! shifted argument, so unfolding the relation level by level produces a
//! nested radical whose exact value is known in closed form:
//!
//! * **P1**: `x² = n² + an + ax + (x−n−a)(x+n)`, unfolded under square
//!   roots; the fixed point is `F(y) = y`.
//! * **P2**: `x³ = 2n³ + 3n²x + (x−2n)(x+n)²`, unfolded under exponent
//!   `2/3` ("degree 3/2" radicals); the fixed point is `G(y) = y²`.
//! * **P3**: `x² = a√(x²+n) − n + (√(x²+n) − a)·√(x²+n)`, unfolded under
//!   square roots with irrational coefficients; the fixed point is
//!   `H(y) = y`.
//!
//! The crate is organized around that pipeline:
//!
//! * [`seqspec`]: the coefficient sequences `a_i`, `n_i` (constants, closed
//!   forms in the index `i`, or explicit lists) and a small expression parser.
//! * [`algebra`]: machine verification of the three identities by exact
//!   sparse multivariate polynomial expansion.
//! * [`scheme`]: exact per-depth term coefficients for a scheme instance,
//!   plus the presets reproducing the classic Ramanujan radical and its four
//!   generalizations.
//! * [`evaluator`]: arbitrary-precision decimal evaluation of depth-`k`
//!   truncations under configurable tail seeding, and convergence sweeps.
//! * [`render`]: plain-text and LaTeX rendering of truncations.
//!
//! All coefficient arithmetic is exact (big rationals throughout); floating
//! point is never used. Numeric evaluation works on decimals with an explicit
//! digit budget and deterministic half-even rounding, so identical inputs
//! produce bit-identical output strings.
//!
//! ```
//! use nestrad::evaluator::{evaluate, EvalSettings, TailMode};
//! use nestrad::scheme::Preset;
//!
//! // A depth-2 truncation seeded with the exact fixed-point tail
//! // telescopes to the radical's limit.
//! let inst = Preset::Cor1.instance();
//! let settings = EvalSettings {
//!     precision: 30,
//!     depth: 2,
//!     tail: TailMode::FixedPoint,
//! };
//! let result = evaluate(&inst, &settings).unwrap();
//! assert_eq!(result.limit, "3");
//! assert_eq!(result.abs_error, "0");
//! ```

pub mod algebra;
pub mod evaluator;
pub mod render;
pub mod scheme;
pub mod seqspec;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Selects one of the three telescoping identities / iteration schemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Square roots, rational coefficients, fixed point `F(y) = y`.
    P1,
    /// Degree-`3/2` radicals, rational coefficients, fixed point `G(y) = y²`.
    P2,
    /// Square roots, coefficients of the form `α√s + β`, fixed point `H(y) = y`.
    P3,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::P1 => "P1",
            SchemeKind::P2 => "P2",
            SchemeKind::P3 => "P3",
        }
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
