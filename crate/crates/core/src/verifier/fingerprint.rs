//! Structure fingerprints of finite groups given by a BSGS.
//!
//! A fingerprint never claims isomorphism. It records invariants that two
//! isomorphic groups must share, so a mismatch is a real disagreement.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::{FxHashMap, FxHashSet};
use serde_json::{json, Value};

use crate::engine::{commutator, conjugate, orbit, Bsgs, Element, Natural};

/// Groups up to this order are walked element by element.
pub const EXACT_LIMIT: u64 = 1_000_000;
/// Element orders above this bound are pooled.
pub const HISTOGRAM_MAX: u64 = 40;
const QUOTIENT_LIMIT: usize = 20_000;
const ORBIT_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: BigUint,
    pub derived_order: BigUint,
    pub center_order: Option<BigUint>,
    /// Invariant factors of G/G' in elementary-divisor form, ascending.
    pub abelian_invariants: Option<Vec<u64>>,
    pub is_perfect: bool,
    /// Element-order counts, orders above `HISTOGRAM_MAX` pooled under `>40`.
    /// Only computed up to `EXACT_LIMIT`, so it never depends on sampling.
    pub histogram: Option<BTreeMap<String, u64>>,
}

impl Fingerprint {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order.to_string(),
            "derivedOrder": self.derived_order.to_string(),
            "centerOrder": self.center_order.as_ref().map(|c| c.to_string()),
            "abelianInvariants": self.abelian_invariants,
            "isPerfect": self.is_perfect,
            "histogram": self.histogram,
        })
    }

    /// Field-by-field comparison with a reference. Fields the reference
    /// leaves open are not compared.
    pub fn mismatches(&self, reference: &Fingerprint) -> Vec<String> {
        let mut out = Vec::new();
        if self.order != reference.order {
            out.push(format!("order {} vs {}", self.order, reference.order));
        }
        if self.derived_order != reference.derived_order {
            out.push(format!(
                "derived order {} vs {}",
                self.derived_order, reference.derived_order
            ));
        }
        if let (Some(a), Some(b)) = (&self.center_order, &reference.center_order) {
            if a != b {
                out.push(format!("center order {a} vs {b}"));
            }
        }
        if let (Some(a), Some(b)) = (&self.abelian_invariants, &reference.abelian_invariants) {
            if a != b {
                out.push(format!("abelian invariants {a:?} vs {b:?}"));
            }
        }
        if let (Some(a), Some(b)) = (&self.histogram, &reference.histogram) {
            if a != b {
                out.push("element order histogram differs".into());
            }
        }
        out
    }
}

/// Derived subgroup as the normal closure of generator commutators.
pub fn derived_subgroup<E: Element>(gens: &[E], identity: &E) -> Bsgs<E> {
    let mut d = Bsgs::trivial(identity);
    let mut queue = Vec::new();
    for i in 0..gens.len() {
        for j in 0..i {
            let c = commutator(&gens[i], &gens[j]);
            if d.add_element(&c) {
                queue.push(c);
            }
        }
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            let c = conjugate(&x, g);
            if d.add_element(&c) {
                queue.push(c);
            }
        }
    }
    d.verify();
    d
}

fn histogram_key(order: u64) -> String {
    if order > HISTOGRAM_MAX {
        format!(">{HISTOGRAM_MAX}")
    } else {
        order.to_string()
    }
}

fn element_order<E: Element>(g: &E) -> u64 {
    g.order_upto(HISTOGRAM_MAX).unwrap_or(HISTOGRAM_MAX + 1)
}

/// Orbit-minimum signatures of cosets of a normal subgroup N: the cosets
/// gN and hN differ whenever some probe point's image lands in different
/// N-orbits.
struct CosetKey<'a, E> {
    n_gens: &'a [E],
    probes: Vec<u64>,
    min_of: FxHashMap<u64, u64>,
}

impl<E: Element> CosetKey<'_, E> {
    fn key(&mut self, g: &E) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.probes.len());
        for &p in &self.probes {
            let y = g.image(p);
            if !self.min_of.contains_key(&y) {
                let o = orbit(&Natural, self.n_gens, y, ORBIT_LIMIT).ok()?;
                let m = *o.points().iter().min().expect("nonempty orbit");
                for &z in o.points() {
                    self.min_of.insert(z, m);
                }
            }
            out.push(self.min_of[&y]);
        }
        Some(out)
    }
}

/// Invariants of G/N for N = G' via a Cayley-graph walk over coset
/// representatives. `None` when the quotient exceeds the enumeration cap.
fn abelian_invariants<E: Element>(gens: &[E], identity: &E, d: &Bsgs<E>, quotient: usize) -> Option<Vec<u64>> {
    if quotient > QUOTIENT_LIMIT {
        return None;
    }
    if quotient == 1 {
        return Some(Vec::new());
    }
    let n_gens = d.generators();
    let mut probes: Vec<u64> = d.base();
    let mut extra = identity.point_bound().min(64);
    while probes.len() < 8 && extra > 1 {
        extra -= 1;
        probes.push(extra);
    }
    let mut ck = CosetKey {
        n_gens: &n_gens,
        probes,
        min_of: FxHashMap::default(),
    };
    let mut reps: Vec<E> = vec![identity.clone()];
    let mut buckets: FxHashMap<Vec<u64>, Vec<usize>> = FxHashMap::default();
    buckets.insert(ck.key(identity)?, vec![0]);
    let mut i = 0;
    while i < reps.len() {
        for g in gens {
            let h = reps[i].mul(g);
            let k = ck.key(&h)?;
            let bucket = buckets.entry(k).or_default();
            if !bucket.iter().any(|&r| d.contains(&h.mul(&reps[r].inv()))) {
                if reps.len() >= quotient {
                    return None;
                }
                bucket.push(reps.len());
                reps.push(h);
            }
        }
        i += 1;
    }
    // Orders of the quotient elements, then per-prime partitions.
    let orders: Vec<u64> = reps
        .iter()
        .map(|r| {
            let mut x = r.clone();
            let mut n = 1;
            while !d.contains(&x) {
                x = x.mul(r);
                n += 1;
            }
            n
        })
        .collect();
    let mut invariants = Vec::new();
    let mut rest = quotient as u64;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut pk = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                pk *= p;
            }
            // c_k = #{a : a^(p^k) = 1}; c_k / c_{k-1} = p^(number of cyclic factors of order ≥ p^k).
            let mut counts = vec![1u64];
            let mut pow = 1u64;
            while *counts.last().unwrap() < pk {
                pow *= p;
                counts.push(orders.iter().filter(|&&o| pow.is_multiple_of(o)).count() as u64);
            }
            let ranks: Vec<u32> = counts.windows(2).map(|w| (w[1] / w[0]).ilog(p)).collect();
            for (k, pair) in ranks.iter().enumerate() {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(pair - next) {
                    invariants.push(p.pow(k as u32 + 1));
                }
            }
        }
        p += 1;
    }
    invariants.sort_unstable();
    Some(invariants)
}

/// Full fingerprint of the group with BSGS `b` generated by `gens`.
pub fn fingerprint<E: Element>(b: &Bsgs<E>, gens: &[E]) -> Fingerprint {
    let identity = b.identity().clone();
    let gens: Vec<E> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let order = b.order();
    let d = derived_subgroup(&gens, &identity);
    let derived_order = d.order();
    let quotient = (&order / &derived_order).to_usize().unwrap_or(usize::MAX);
    let (histogram, center_order) = if order <= BigUint::from(EXACT_LIMIT) {
        let mut histogram: BTreeMap<String, u64> = BTreeMap::new();
        let mut central = 0u64;
        b.for_each_element(|g| {
            *histogram.entry(histogram_key(element_order(g))).or_default() += 1;
            if gens.iter().all(|s| g.mul(s) == s.mul(g)) {
                central += 1;
            }
        });
        (Some(histogram), Some(BigUint::from(central)))
    } else {
        (None, None)
    };
    Fingerprint {
        is_perfect: derived_order == order,
        abelian_invariants: abelian_invariants(&gens, &identity, &d, quotient),
        order,
        derived_order,
        center_order,
        histogram,
    }
}

/// Number of distinct elements in a small group, by closure. Used by tests
/// as an engine-independent cross-check.
pub fn closure_size<E: Element>(gens: &[E], identity: &E, cap: usize) -> Option<usize> {
    let mut seen: FxHashSet<E> = FxHashSet::default();
    seen.insert(identity.clone());
    let mut frontier = vec![identity.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.len())
}
