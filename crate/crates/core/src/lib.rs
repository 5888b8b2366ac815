//! Exact-arithmetic invariants of algebraic function fields over small finite fields.
//!
//! The library builds the numerator of the zeta function of a function field
//! from its place counts, computes divisor class numbers and effective-divisor
//! counts, screens candidate count vectors against exact necessary conditions
//! (Hasse-Weil, real Weil polynomial signs at `±2√q`), and decides — with rule
//! citations — when the existence of non-special divisors of degree `g` and
//! `g − 1` is guaranteed.
//!
//! Modules:
//! - [`gf`]: arithmetic in `F_{p^m}` for `p ∈ {2, 3}` and univariate polynomials.
//! - [`doublecover`]: degree-2 covers of the rational function field, place
//!   splitting, place counting and the Riemann-Hurwitz genus.
//! - [`zeta`]: L-polynomials, class numbers, effective-divisor counts, the real
//!   Weil polynomial and exact sign tests in `Z[√q']`.
//! - [`criteria`]: the verdict engine for the properties `E_g` and `E_{g−1}`,
//!   with the embedded exception records.
//! - [`bounds`]: bilinear-complexity upper bounds as exact rationals.
//! - [`tables`]: the embedded classification dataset and its verification runner.
//! - [`sampling`]: seeded generation of admissible instances and the randomized
//!   identity suite.

pub mod arith;
pub mod bounds;
pub mod criteria;
pub mod doublecover;
pub mod gf;
pub mod sampling;
pub mod tables;
pub mod zeta;
