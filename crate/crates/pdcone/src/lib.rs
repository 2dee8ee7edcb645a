//! # pdcone
//!
//! Bregman and Jensen divergences on the cone of positive definite Hermitian
//! matrices, together with a numerical verification harness.
//!
//! The crate is organized around six modules:
//!
//! - [`matcore`]: complex Hermitian arithmetic, a cyclic Jacobi eigensolver,
//!   matrix functional calculus, unitarily invariant norms, the Loewner
//!   order, and seeded random positive definite matrices.
//! - [`generators`]: the registry of scalar convex generator functions `f`
//!   (with derivatives and boundary metadata) and gauge functions `g`, plus
//!   numerical convexity and gauge-condition audits.
//! - [`divergences`]: Bregman, Jensen, and symmetrized Bregman divergences
//!   from a generator; the whitened-norm distance measure; and independent
//!   closed forms (Stein's loss, the quantum relative entropy, the
//!   log-determinant divergence family).
//! - [`preservers`]: congruence and exp-log transformations of the cone,
//!   polar decomposition, and an empirical divergence-preservation checker.
//! - [`orderlab`]: boundedness probes connecting divergence differences to
//!   the Loewner order, homogeneity defect measurements, and the classical
//!   matrix inequalities (Peierls, Weyl, trace-exp monotonicity).
//! - [`cli`] with [`matfile`], [`report`], and [`suites`]: the command-line
//!   front end, the plain-text matrix file format, and the verification
//!   suites it orchestrates.
//!
//! Everything is pure and deterministic: random sampling is seeded ChaCha,
//! so any reported number is reproducible bit for bit.

pub mod cli;
pub mod divergences;
pub mod generators;
pub mod matcore;
pub mod matfile;
pub mod orderlab;
pub mod preservers;
pub mod report;
pub mod suites;
