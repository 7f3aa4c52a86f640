//! Exact verification toolkit for the group-theoretic and p-adic facts
//! behind unramified SL₂(7) and 2.A₇ extensions of quadratic number fields.
//!
//! The crate is organized around six subsystems:
//!
//! - [`exactalg`]: arbitrary-precision integers, rationals, dense uni- and
//!   bivariate polynomials, integer factorization, factorization over Q.
//! - [`localfields`]: factorization mod p, (e, f)-invariants over Q_p, and
//!   the ramified-quadratic 7-adic splitting check.
//! - [`permgroup`]: exhaustive finite-group engine for PGL₂(7), S₇ and
//!   2×2 matrix groups over F₇.
//! - [`covers`]: order-2 central extensions (the determinant-±1 cover of
//!   PGL₂(7) and the spin double covers of S₇) with lift and obstruction
//!   queries.
//! - [`specialize`]: branch points, intersection multiplicities, and
//!   ramification prediction for specializations of function-field covers.
//! - [`certify`]: the per-parameter certification pipelines, certificate
//!   data model, class-number oracle, and group-fact suites.

pub mod certify;
pub mod covers;
pub mod exactalg;
pub mod localfields;
pub mod permgroup;
pub mod specialize;
