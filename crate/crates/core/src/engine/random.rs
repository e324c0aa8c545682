//! Seeded product replacement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Element;

const BURN_IN: usize = 50;
const MIN_SLOTS: usize = 10;

/// Product-replacement random elements with an accumulator ("rattle").
/// Inverses are never taken, which is fine in a finite group.
pub struct ProductReplacement<E> {
    slots: Vec<E>,
    acc: E,
    rng: ChaCha8Rng,
}

impl<E: Element> ProductReplacement<E> {
    pub fn new(gens: &[E], identity: &E, seed: u64) -> Self {
        let base: Vec<E> = if gens.is_empty() {
            vec![identity.clone()]
        } else {
            gens.to_vec()
        };
        let len = base.len().max(MIN_SLOTS);
        let slots = (0..len).map(|i| base[i % base.len()].clone()).collect();
        let mut pr = ProductReplacement {
            slots,
            acc: identity.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..BURN_IN {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> E {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        self.slots[i] = if self.rng.gen_bool(0.5) {
            self.slots[i].mul(&self.slots[j])
        } else {
            self.slots[j].mul(&self.slots[i])
        };
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
