//! Relativistic kinetic equation of state of a Jüttner gas.
//!
//! The crate is organised in three layers:
//!
//! * [`bessel`] — the modified Bessel functions K₀, K₁, K₂ of the second kind,
//!   the ratio K₁/K₂ together with its derivative, and closed-form two-sided
//!   bounds on all of them. Everything is evaluated in exponentially scaled
//!   form, so downstream thermodynamics stays finite at any temperature.
//! * [`eos`] — the equation of state itself: the forward maps
//!   (n, β) → (p, ρ, η), their inverse, the pressure as a function of entropy
//!   and energy density, the Jacobian of the change of variables and the sound
//!   speed with its c/√3 bound.
//! * [`verify`] — numerical certification, with explicit signed margins, of
//!   the inequalities that make the equation of state well posed:
//!   invertibility, hyperbolicity, causality, and the two-sided estimates the
//!   proofs rest on.
//!
//! All quantities are nondimensional by default (particle mass, speed of
//! light, Boltzmann and Planck constants all equal to one); dimensional
//! constants enter only through [`eos::PhysicalConstants`].

pub mod bessel;
pub mod eos;
mod quad;
pub mod verify;
