//! Explicit matrix groups over finite fields of odd characteristic and
//! checks of factorizations `Z = XY` of orthogonal groups.

pub mod atlas;
pub mod engine;
pub mod gf;
pub mod orthospace;
pub mod verifier;
