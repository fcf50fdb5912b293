//! Computations behind obstructions to lifting a generic map `N → M` between
//! manifolds of equal dimension to an embedding `N ↪ M × ℝ²`.
//!
//! * [`freegroup`]: reduced words, Magnus expansions, Stallings graphs and
//!   double cosets.
//! * [`linkhomotopy`]: the repetition-free Magnus ring of the reduced free
//!   group and Milnor-type coefficients.
//! * [`braid`]: braid words, the Artin action, linking numbers and the
//!   Humphries torsion criterion.
//! * [`towers`]: nilpotent truncations of the Artin action and the 2-prem
//!   verdict.
//! * [`foldmap`]: combinatorial fold-map models, pullbacks and monodromy.
//! * [`theta`]: the signed double-coset sum of double points.
//! * [`report`]: the JSON front end shared by the CLI and the C ABI.

pub mod braid;
mod coeff;
pub mod foldmap;
pub mod freegroup;
pub mod linkhomotopy;
pub mod report;
pub mod theta;
pub mod towers;
