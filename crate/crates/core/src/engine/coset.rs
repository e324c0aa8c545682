//! Right coset spaces `Y\Z` and the transitivity test behind `Z = XY`.
//!
//! A coset `Yg` is identified with the image of a Y-invariant object under
//! `g` whenever Y is exactly the stabilizer of that object (a vector, a
//! subspace, a 3-form). Otherwise cosets are enumerated explicitly and
//! compared by membership in Y.

use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::{FxHashMap, FxHasher};

use super::{orbit, stabilizer, Action, Bsgs, Element, EngineError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Strategy {
    VectorOrbit,
    SubspaceOrbit,
    InvariantSignature,
    GenericPairwise,
}

struct Pairwise<E> {
    reps: Vec<E>,
    reps_inv: Vec<E>,
    buckets: FxHashMap<u64, Vec<u32>>,
    probe: Vec<u64>,
    y: Bsgs<E>,
}

impl<E: Element> Pairwise<E> {
    fn key(&self, g: &E) -> u64 {
        let mut imgs: Vec<u64> = self.probe.iter().map(|&p| g.image(p)).collect();
        imgs.sort_unstable();
        let mut h = FxHasher::default();
        imgs.hash(&mut h);
        h.finish()
    }

    fn label(&self, g: &E) -> Option<u32> {
        let ids = self.buckets.get(&self.key(g))?;
        ids.iter()
            .copied()
            .find(|&id| self.y.contains(&g.mul(&self.reps_inv[id as usize])))
    }
}

enum Kind<E> {
    Direct(Box<dyn Action<E> + Send + Sync>),
    Pairwise(Box<Pairwise<E>>),
}

/// The right cosets of Y in Z, as a set of points with a right Z-action.
pub struct CosetSpace<E> {
    strategy: Strategy,
    index: usize,
    base_point: u64,
    kind: Kind<E>,
}

impl<E: Element> CosetSpace<E> {
    /// Cosets identified with the Z-orbit of `point` under `action`, where Y
    /// is the full stabilizer of `point`. Fails if the orbit size is not
    /// `|Z|/|Y|`.
    pub fn from_invariant(
        strategy: Strategy,
        action: Box<dyn Action<E> + Send + Sync>,
        point: u64,
        z_gens: &[E],
        z_order: &BigUint,
        y_order: &BigUint,
        cap: usize,
    ) -> Result<Self, EngineError> {
        let index = expected_index(z_order, y_order, cap)?;
        let o = orbit(action.as_ref(), z_gens, point, cap)?;
        if o.len() != index {
            return Err(EngineError::StrategyUnavailable(format!(
                "orbit of the invariant has {} points, expected index {}",
                o.len(),
                index
            )));
        }
        Ok(CosetSpace {
            strategy,
            index,
            base_point: point,
            kind: Kind::Direct(action),
        })
    }

    /// Explicit enumeration of Y\Z by breadth-first search over Z's
    /// generators. `probe_candidates` are natural-action points; the
    /// smallest Y-orbits among them form the bucketing invariant.
    pub fn generic_pairwise(
        z_gens: &[E],
        z_order: &BigUint,
        y: &Bsgs<E>,
        y_gens: &[E],
        probe_candidates: &[u64],
        cap: usize,
    ) -> Result<Self, EngineError> {
        let index = expected_index(z_order, &y.order(), cap)?;
        let identity = y.identity().clone();
        let probe = choose_probe(y_gens, probe_candidates);
        let mut t = Pairwise {
            reps: vec![identity.clone()],
            reps_inv: vec![identity.clone()],
            buckets: FxHashMap::default(),
            probe,
            y: y.clone(),
        };
        let k0 = t.key(&identity);
        t.buckets.insert(k0, vec![0]);
        let mut i = 0;
        while i < t.reps.len() {
            for g in z_gens {
                let h = t.reps[i].mul(g);
                if t.label(&h).is_none() {
                    if t.reps.len() >= index {
                        return Err(EngineError::StrategyUnavailable(
                            "more cosets than the index allows".into(),
                        ));
                    }
                    let id = t.reps.len() as u32;
                    t.buckets.entry(t.key(&h)).or_default().push(id);
                    t.reps_inv.push(h.inv());
                    t.reps.push(h);
                }
            }
            i += 1;
        }
        if t.reps.len() != index {
            return Err(EngineError::StrategyUnavailable(format!(
                "enumerated {} cosets, expected {}",
                t.reps.len(),
                index
            )));
        }
        Ok(CosetSpace {
            strategy: Strategy::GenericPairwise,
            index,
            base_point: 0,
            kind: Kind::Pairwise(Box::new(t)),
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }
    pub fn index(&self) -> usize {
        self.index
    }
    /// The point of the trivial coset Y.
    pub fn base_point(&self) -> u64 {
        self.base_point
    }
}

impl<E: Element> Action<E> for CosetSpace<E> {
    fn act(&self, g: &E, pt: u64) -> u64 {
        match &self.kind {
            Kind::Direct(a) => a.act(g, pt),
            Kind::Pairwise(t) => {
                let h = t.reps[pt as usize].mul(g);
                t.label(&h).expect("element outside the ambient group") as u64
            }
        }
    }
}

fn expected_index(z_order: &BigUint, y_order: &BigUint, cap: usize) -> Result<usize, EngineError> {
    if (z_order % y_order) != BigUint::from(0u32) {
        return Err(EngineError::StrategyUnavailable("|Y| does not divide |Z|".into()));
    }
    let idx = (z_order / y_order).to_usize().unwrap_or(usize::MAX);
    if idx > cap {
        return Err(EngineError::IndexOverflow(cap));
    }
    Ok(idx)
}

/// Union of the two smallest distinct Y-orbits among the candidates that
/// are not fixed by all of Y (or fixed points if nothing else is available).
fn choose_probe<E: Element>(y_gens: &[E], candidates: &[u64]) -> Vec<u64> {
    const LIMIT: usize = 4096;
    let mut found: Vec<Vec<u64>> = Vec::new();
    for &c in candidates {
        if found.iter().any(|o| o.contains(&c)) {
            continue;
        }
        if let Ok(o) = orbit(&super::Natural, y_gens, c, LIMIT) {
            let mut pts = o.points().to_vec();
            pts.sort_unstable();
            found.push(pts);
        }
    }
    found.sort_by_key(|o| (o.len(), o[0]));
    let mut probe: Vec<u64> = found.iter().take(2).flatten().copied().collect();
    probe.sort_unstable();
    probe
}

/// Outcome of running X on the coset space.
#[derive(Clone, Debug)]
pub struct Suborbit<E> {
    pub orbit_size: usize,
    pub index: usize,
    /// X ∩ Y, the stabilizer of the trivial coset in X.
    pub intersection: Bsgs<E>,
}

impl<E: Element> Suborbit<E> {
    pub fn transitive(&self) -> bool {
        self.orbit_size == self.index
    }
}

/// Orbit of the trivial coset under X and its stabilizer X ∩ Y, certified
/// to order `|X| / orbitSize`.
pub fn suborbit_transitivity<E: Element>(
    c: &CosetSpace<E>,
    x: &Bsgs<E>,
    x_gens: &[E],
    seed: u64,
    cap: usize,
) -> Result<Suborbit<E>, EngineError> {
    let (stab, o) = stabilizer(x, x_gens, c, c.base_point(), seed, cap)?;
    Ok(Suborbit {
        orbit_size: o.len(),
        index: c.index(),
        intersection: stab,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{schreier_sims, Natural, Perm, SsOptions};

    fn s(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![Perm::from_cycles(n, &[&[0, 1]]), Perm::from_cycles(n, &[&cyc])]
    }

    #[test]
    fn s5_is_a5_times_point_stabilizer() {
        // S5 = A5 * S4 with A5 ∩ S4 = A4.
        let z = s(5);
        let zb = schreier_sims(&z, &Perm::identity(5), &SsOptions::seeded(1)).unwrap();
        let y = vec![Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3]])];
        let yb = schreier_sims(&y, &Perm::identity(5), &SsOptions::seeded(1)).unwrap();
        let x = vec![
            Perm::from_cycles(5, &[&[0, 1, 2]]),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
        ];
        let xb = schreier_sims(&x, &Perm::identity(5), &SsOptions::seeded(1)).unwrap();
        let direct = CosetSpace::from_invariant(
            Strategy::VectorOrbit,
            Box::new(Natural),
            4,
            &z,
            &zb.order(),
            &yb.order(),
            100,
        )
        .unwrap();
        let pw = CosetSpace::generic_pairwise(&z, &zb.order(), &yb, &y, &[0, 1, 2, 3, 4], 100).unwrap();
        for c in [&direct, &pw] {
            let r = suborbit_transitivity(c, &xb, &x, 5, 100).unwrap();
            assert!(r.transitive());
            assert_eq!(r.intersection.order(), BigUint::from(12u32));
        }
        // X = Y is not transitive.
        let r = suborbit_transitivity(&pw, &yb, &y, 5, 100).unwrap();
        assert_eq!(r.orbit_size, 1);
    }
}
