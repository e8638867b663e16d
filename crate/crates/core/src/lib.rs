//! Symbolic workbench for second-countable locally compact abelian groups.
//!
//! Groups are written as constructor terms ([`terms::GroupExpr`]) built from a
//! small catalogue of atoms (`R`, `Z`, `T`, `Q`, `Qhat`, `C(n)`, `Prufer(p)`,
//! `Zp(p)`, `Qp(p)`) and the constructors finite direct sum, full power,
//! restricted power and the local direct power `lp(Qp(p), k)`.
//!
//! On top of the terms the crate provides
//!
//! - Pontryagin duals by rewriting ([`duality`]),
//! - structural predicates such as compactness, torsion-freeness and dense
//!   divisibility ([`predicates`]),
//! - a decision procedure for topological characteristic simplicity, with the
//!   canonical five-family form of every simple group ([`classify`]),
//! - exact arithmetic in `Q_p`, the adeles and `F_p((t))` ([`padic`],
//!   [`laurent`]),
//! - finite-rank `Z_p`-module linear algebra ([`zpmodule`]),
//! - finite-window verification of monolith constructions ([`monolith`]).
//!
//! ```
//! use lcagroups::{classify, terms};
//!
//! let e = terms::parse_expr("lp(Qp(2), w) + Qp(2)").unwrap();
//! let verdict = classify::characteristically_simple(&e).unwrap();
//! assert_eq!(verdict.canonical.unwrap().to_string(), "QpLocal(p=2, kappa=w)");
//! ```

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod laurent;
pub mod monolith;
pub mod padic;
pub mod predicates;
pub mod primes;
pub mod terms;
pub mod zpmodule;

pub use error::{Error, Result};
