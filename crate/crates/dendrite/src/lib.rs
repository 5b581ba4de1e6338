//! Exact symbolic dynamics on the universal (Wazewski) dendrite.
//!
//! The dendrite is realized symbolically: a point is an *itinerary*, the chain
//! of star/beam choices that locates it, and the self-map `f` acts on
//! itineraries by exact rewrite rules. All metric quantities are rational and
//! exact; floating point appears only in the SVG renderer.
//!
//! Module map:
//!
//! * [`dyadics`] — the enumeration of dyadic rationals in `(0,1)`, its
//!   filtered subsequences, and grid-level ω-limit sets of sequences;
//! * [`itinerary`] — symbolic addresses and the rewrite-rule dynamics;
//! * [`geometry`] — beam lengths, the intrinsic (tree-geodesic) metric,
//!   ε-nets, and the planar embedding used for rendering;
//! * [`hyperspace`] — Hausdorff distance, Vietoris basis sets, and exhaustive
//!   finite-space oracles;
//! * [`dynamics`] — orbits, ω-limit approximations, and constructive
//!   transitivity/mixing witnesses;
//! * [`interval`] — the tent map on `[0,1]` as a reference transitive system;
//! * [`suite`] — the verification battery behind `dendrite suite`.

pub mod dyadics;
pub mod dynamics;
pub mod geometry;
pub mod hyperspace;
pub mod interval;
pub mod itinerary;
pub mod par;
pub mod rational;
pub mod report;
pub mod suite;

pub use rational::Rat;
