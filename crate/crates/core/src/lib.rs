//! Exact computations in ℤᵐ-graded polynomial rings.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`], [`groebner`], [`ideal`]: rational sparse polynomials, a
//!   deterministic Buchberger engine and the ideal operations built on it
//!   (sum, product, intersection, saturation, elimination, dimension).
//! * [`lattice`], [`lp`], [`grading`]: integer lattices (Hermite and Smith
//!   normal forms), exact feasibility for positivity witnesses, and the
//!   multigrading itself.
//! * [`cone`]: homogeneous ideals, their linear part, minimal embeddings
//!   into the tangent space at the origin, smoothness and singular loci.
//! * [`torus`]: the torus action induced by a grading and its orbits.
//! * [`strata`]: defining ideals of Gröbner strata of monomial ideals.
//! * [`cli`]: the batch session language and report model used by `gcone`.

pub mod cli;
pub mod cone;
pub mod error;
pub mod grading;
pub mod groebner;
pub mod ideal;
pub mod lattice;
pub mod lp;
pub mod poly;
pub mod strata;
pub mod torus;

pub use error::{Error, Result};
pub use poly::{BigRational, Monomial, Polynomial, Ring, TermOrder};
