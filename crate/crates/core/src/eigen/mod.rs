//! Polynomial eigenfamilies `J(P_n) = λ_n P_n` of third-order operators.
//!
//! [`oracle`] computes eigenpolynomials directly from the operator, which is
//! the independent reference for the closed-form recurrence families in
//! [`families`]. [`expansions`] checks the companion-operator expansions of
//! `J^(1)(P_n)`, `J^(2)(P_n)` and `J^(3)(P_n)` in the basis `{P_n}`.

pub mod expansions;
pub mod families;
pub mod oracle;
pub mod solvability;
