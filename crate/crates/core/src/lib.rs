//! Exact computer algebra for q-deformed Witt and Virasoro Lie theory.
//!
//! Everything is computed over exact fields: either the field of rational
//! functions in an indeterminate `q` over the rationals (the *generic* mode),
//! or the cyclotomic field at a primitive `l`-th root of unity (the
//! *root-of-unity* mode). There is no floating point anywhere.
//!
//! The crate is organized around the objects it manipulates:
//!
//! - [`qarith`] — scalars: rational functions in `q`, cyclotomic residues,
//!   q-integers, q-factorials and Gaussian (q-binomial) polynomials.
//! - [`qdivided`] — the commutative carriers: Laurent polynomials with the
//!   Jackson skew derivation, and the q-divided power algebras together with
//!   their truncations at roots of unity.
//! - [`qlie`] — the catalog of q-Lie algebras (q-Witt algebras, q-holomorphs,
//!   the q-Virasoro algebra, q-abelian quantum spaces) with their structure
//!   constants, plus verifiers for antisymmetry, the weighted q-Jacobi
//!   identity, centralizers and the Virasoro cocycle recursion.
//! - [`pbw`] — the universal enveloping algebra as a noncommutative rewriting
//!   system: normal forms in an ordered basis, overlap-ambiguity checking,
//!   power-commutation identities and the central subalgebra at roots of
//!   unity.
//! - [`qrep`] — matrix realizations of graded representations, graded
//!   submodule analysis, and the holomorph-driven deformation and tensor
//!   constructions.
//! - [`expr`] — the text grammar shared by the CLI and the serialization
//!   formats: parsing and evaluation of scalar and generator expressions.

pub mod error;
pub mod expr;
pub mod pbw;
pub mod poly;
pub mod qarith;
pub mod qdivided;
pub mod qlie;
pub mod qrep;

pub use error::{Error, Result};
pub use qarith::{Scalar, ScalarField};
