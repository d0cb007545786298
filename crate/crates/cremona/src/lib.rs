//! Exact symbolic computation for real forms of del Pezzo surfaces of degree
//! six and for real conic bundles, together with the verification machinery
//! for the maximal infinite automorphism families that act on them.
//!
//! Everything here is exact: scalars live in `Q(i)`, continuous parameters are
//! handled by a small terminating rewrite system, and all geometry is done
//! with multivariate polynomials over those coefficients.  There are no
//! floating point numbers anywhere in the crate.
//!
//! The main layers, bottom to top:
//!
//! - [`gauss`]: arbitrary-precision rationals and Gaussian rationals.
//! - [`param`]: symbolic real parameters (circle coordinates, scale factors)
//!   with canonical reduced forms.
//! - [`poly`]: sparse multivariate polynomials over blocks of projective
//!   variables, with substitution, conjugation and multidegree bookkeeping.
//! - [`binform`]: binary forms in one projective variable, gcds and exact
//!   root extraction over `Q(i)`.
//! - [`model`] / [`catalog`]: the builtin surface models (projective plane,
//!   real quadrics, the degree-six surfaces with hexagons of (-1)-curves,
//!   Hirzebruch surfaces) with their real structures, parameterizations,
//!   named curves and named points.
//! - [`map`]: rational maps between models, with multiple stored
//!   representatives, composition, reality and base-locus checks.
//! - [`picard`]: the hexagon lattice, induced actions, dihedral
//!   classification, invariant ranks and orbit checks.
//! - [`family`]: the automorphism families themselves, their generators,
//!   relation suites, exact-sequence checks, lift certificates, fixed
//!   double covers and the Hirzebruch group law.
//! - [`abelian`] / [`conjugacy`]: the interval invariant, images in the
//!   abelianization, and conjugacy of marked-fibre configurations.
//! - [`report`]: structured pass/fail records and the builtin suites.

#![forbid(unsafe_code)]

pub mod abelian;
pub mod binform;
pub mod catalog;
pub mod config;
pub mod conjugacy;
pub mod error;
mod expr;
pub mod family;
pub mod fixtures;
pub mod gauss;
mod linalg;
pub mod map;
pub mod model;
pub mod param;
pub mod picard;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use gauss::{GaussRat, Rat};
