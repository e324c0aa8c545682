//! Orbits, Schreier–Sims, stabilizers and coset actions for matrix and
//! permutation groups.
//!
//! Every group element acts on the right on a set of `u64` point codes. For
//! matrices the natural points are vectors written as base-q digit strings;
//! for permutations they are `0..degree`.

pub mod action;
pub mod bsgs;
pub mod coset;
pub mod orbit;
pub mod perm;
pub mod random;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use thiserror::Error;

use crate::orthospace::Mat;

pub use action::{Action, FormAction, LineAction, Natural, SubspaceAction};
pub use bsgs::{schreier_sims, stabilizer, Bsgs, SsOptions};
pub use coset::{suborbit_transitivity, CosetSpace, Strategy, Suborbit};
pub use orbit::{orbit, Orbit};
pub use perm::Perm;
pub use random::ProductReplacement;

/// Default cap on orbit sizes.
pub const DEFAULT_CAP_POINTS: usize = 5_000_000;
/// Default cap on coset-space sizes.
pub const DEFAULT_CAP_COSETS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("orbit exceeds the cap of {0} points")]
    DomainOverflow(usize),
    #[error("index exceeds the cap of {0} cosets")]
    IndexOverflow(usize),
    #[error("action is not faithful")]
    NotFaithful,
    #[error("certified order {found} differs from expected {expected}")]
    OrderMismatch { found: BigUint, expected: BigUint },
    #[error("orbit of size {orbit} does not divide group order {order}")]
    NotDivisible { orbit: usize, order: BigUint },
    #[error("coset strategy unavailable: {0}")]
    StrategyUnavailable(String),
}

/// A group element with a faithful natural action on `u64` points.
pub trait Element: Clone + Eq + Hash + Send + Sync + fmt::Debug {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn identity_like(&self) -> Self;
    fn image(&self, pt: u64) -> u64;
    /// A distinguished point moved by the element (the first moved basis
    /// vector, or the least moved letter); `None` for the identity.
    fn first_moved(&self) -> Option<u64>;
    /// Points of the natural action lie in `0..point_bound()`.
    fn point_bound(&self) -> u64;

    /// Order by repeated multiplication, up to `limit`.
    fn order_upto(&self, limit: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Element for Mat {
    fn mul(&self, other: &Self) -> Self {
        Mat::mul(self, other)
    }
    fn inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }
    fn is_identity(&self) -> bool {
        Mat::is_identity(self)
    }
    fn identity_like(&self) -> Self {
        Mat::identity(self.field(), self.rows())
    }
    fn image(&self, pt: u64) -> u64 {
        self.image_code(pt)
    }
    fn first_moved(&self) -> Option<u64> {
        let q = self.field().order() as u64;
        let n = self.rows();
        (0..n)
            .find(|&i| (0..n).any(|j| self.get(i, j) != u32::from(i == j)))
            .map(|i| q.pow(i as u32))
    }
    fn point_bound(&self) -> u64 {
        (self.field().order() as u64)
            .checked_pow(self.rows() as u32)
            .unwrap_or(u64::MAX)
    }
}

/// Conjugate `h^g = g^-1 h g`.
pub fn conjugate<E: Element>(h: &E, g: &E) -> E {
    g.inv().mul(h).mul(g)
}

/// Commutator `[a,b] = a^-1 b^-1 a b`.
pub fn commutator<E: Element>(a: &E, b: &E) -> E {
    a.inv().mul(&b.inv()).mul(a).mul(b)
}
