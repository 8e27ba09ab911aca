//! Spectral and nodal analysis on the square flat Möbius strip.
//!
//! The strip is the quotient of `(0,π) × ℝ` by the glide reflection
//! `σ(x,y) = (π−x, y+π)`, with Dirichlet conditions at `x = 0` and `x = π`.
//! Its Dirichlet spectrum is closed-form, which makes it a complete test bed
//! for nodal-domain questions: every eigenfunction is a finite trigonometric
//! combination, nodal sets can be sampled to arbitrary resolution, and the
//! bifurcations of the low eigenspaces can be solved to machine precision.
//!
//! The crate is organised around that pipeline:
//!
//! * [`spectrum`] — closed-form eigenvalue enumeration, labels, counting
//!   function and its quadratic lower bound;
//! * [`screening`] — the three necessary conditions (multiplicity, counting
//!   cutoff, Faber-Krahn ratio) an eigenvalue must pass to have a chance of
//!   being Courant-sharp;
//! * [`eigenfunction`] — trigonometric mode combinations, exact derivatives,
//!   the two-parameter families of the 4-dimensional eigenspaces;
//! * [`bifurcation`] — the auxiliary functions and the angles at which the
//!   family nodal patterns change topology;
//! * [`critical`] — location and order classification of critical zeros;
//! * [`nodal`] — sign-grid sampling on the quotient, nodal-domain counting,
//!   orientability via the cylinder double cover, level-curve extraction;
//! * [`euler`] — the Euler-type identity linking domain count, curve
//!   topology, critical zeros and non-orientability;
//! * [`render`] — fundamental-domain plots and 3-D meshes of the strip;
//! * [`pipeline`] — the end-to-end reproduction run used by the CLI.

pub mod bifurcation;
pub mod critical;
pub mod eigenfunction;
pub mod euler;
pub mod nodal;
pub mod pipeline;
pub mod render;
pub mod screening;
pub mod spectrum;

pub use eigenfunction::{EigenfunctionSpec, Family, FamilyParams, TrigKind, TrigMode};
pub use spectrum::{EigenvalueCluster, ModePair, SpectrumTable};
