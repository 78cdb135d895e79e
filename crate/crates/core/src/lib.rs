//! Spherical conics on the unit 2-sphere and the quadric surfaces of
//! revolution they generate in the unit 3-sphere.
//!
//! The crate is organized bottom-up:
//!
//! * [`sphere`] points on S² and S³, geodesic distance, arc-length sampled
//!   curves and their differential invariants (geodesic curvature and the
//!   spherical angular momentum `K = ẋy − xẏ`).
//! * [`conics`] spherical conics as focal loci, canonical geographic
//!   equations and sphere ∩ cylinder intersections, with the `(μ, c)`
//!   momentum moduli.
//! * [`momentum`] closed-form momentum profiles `K(z)` and reconstruction of
//!   the generating curve by quadratures.
//! * [`surfaces`] rotational surfaces in S³, fundamental forms, principal
//!   curvatures and implicit equations.
//! * [`weingarten`] the cubic relation `k_m = μ k_p³`, the sextic relation
//!   of the sphero-cylindrical surfaces, and the `(μ, c)` solver/classifier.
//! * [`projection`] stereographic projections, spiric and Darboux-cyclide
//!   quartics, meshes and file export.
//! * [`cli`] the `spheriq` command-line front end.

pub mod cli;
pub mod conics;
mod error;
pub mod fd;
pub mod momentum;
pub mod projection;
pub mod quadrature;
pub mod sphere;
pub mod surfaces;
pub mod weingarten;

pub use error::{Error, Result};

/// Tool version stamped into every machine-readable report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
