//! Base and strong generating sets.
//!
//! Construction is randomized Schreier–Sims followed by a deterministic pass
//! that sifts every Schreier generator, so reported orders are always exact.
//! Transversal elements and their inverses are stored explicitly.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::{orbit, Action, Element, EngineError, Orbit, ProductReplacement};

const DENSE_LIMIT: u64 = 1 << 22;
const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
enum PointIndex {
    Dense(Vec<u32>),
    Sparse(FxHashMap<u64, u32>),
}

impl PointIndex {
    fn new(bound: u64) -> Self {
        if bound <= DENSE_LIMIT {
            PointIndex::Dense(vec![NONE; bound as usize])
        } else {
            PointIndex::Sparse(FxHashMap::default())
        }
    }
    #[inline]
    fn get(&self, pt: u64) -> Option<usize> {
        match self {
            PointIndex::Dense(v) => match v[pt as usize] {
                NONE => None,
                i => Some(i as usize),
            },
            PointIndex::Sparse(m) => m.get(&pt).map(|&i| i as usize),
        }
    }
    fn insert(&mut self, pt: u64, i: usize) {
        match self {
            PointIndex::Dense(v) => v[pt as usize] = i as u32,
            PointIndex::Sparse(m) => {
                m.insert(pt, i as u32);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Level<E> {
    base: u64,
    gens: Vec<E>,
    gens_inv: Vec<E>,
    orbit: Vec<u64>,
    index: PointIndex,
    trans: Vec<E>,
    trans_inv: Vec<E>,
    /// Schreier pairs (k, s) with k < done_pts and s < done_gens are verified.
    done_pts: usize,
    done_gens: usize,
}

impl<E: Element> Level<E> {
    fn new(base: u64, identity: &E, bound: u64) -> Self {
        let mut index = PointIndex::new(bound);
        index.insert(base, 0);
        Level {
            base,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base],
            index,
            trans: vec![identity.clone()],
            trans_inv: vec![identity.clone()],
            done_pts: 0,
            done_gens: 0,
        }
    }

    fn try_extend(&mut self, i: usize, s: usize) {
        let p = self.gens[s].image(self.orbit[i]);
        if self.index.get(p).is_none() {
            let t = self.trans[i].mul(&self.gens[s]);
            let ti = self.gens_inv[s].mul(&self.trans_inv[i]);
            self.index.insert(p, self.orbit.len());
            self.orbit.push(p);
            self.trans.push(t);
            self.trans_inv.push(ti);
        }
    }

    fn add_gen(&mut self, g: E) {
        self.gens_inv.push(g.inv());
        self.gens.push(g);
        let s_new = self.gens.len() - 1;
        let old = self.orbit.len();
        for i in 0..old {
            self.try_extend(i, s_new);
        }
        let mut i = old;
        while i < self.orbit.len() {
            for s in 0..self.gens.len() {
                self.try_extend(i, s);
            }
            i += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct Bsgs<E> {
    identity: E,
    levels: Vec<Level<E>>,
}

#[derive(Clone, Debug)]
pub struct SsOptions {
    pub seed: u64,
    /// Known order; the random phase stops once it is reached.
    pub target: Option<BigUint>,
    /// Abort with `OrderMismatch` as soon as the order exceeds this bound.
    pub limit: Option<BigUint>,
    /// Consecutive trivially-sifting random elements before the random phase stops.
    pub patience: usize,
}

impl Default for SsOptions {
    fn default() -> Self {
        SsOptions {
            seed: 1,
            target: None,
            limit: None,
            patience: 40,
        }
    }
}

impl SsOptions {
    pub fn seeded(seed: u64) -> Self {
        SsOptions {
            seed,
            ..Default::default()
        }
    }
    pub fn with_target(seed: u64, target: BigUint) -> Self {
        SsOptions {
            seed,
            target: Some(target),
            ..Default::default()
        }
    }
}

impl<E: Element> Bsgs<E> {
    pub fn trivial(identity: &E) -> Self {
        Bsgs {
            identity: identity.identity_like(),
            levels: Vec::new(),
        }
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Generators of the whole group (those stored at the top level).
    pub fn generators(&self) -> Vec<E> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Strong generators, each listed once, top level first.
    pub fn strong_generators(&self) -> Vec<E> {
        let mut out: Vec<E> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sifts from `start`; returns the residue and the level where sifting
    /// stopped (`levels.len()` if it passed every level).
    pub fn sift_from(&self, g: &E, start: usize) -> (E, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let p = h.image(level.base);
            match level.index.get(p) {
                None => return (h, l),
                Some(k) => {
                    if k != 0 {
                        h = h.mul(&level.trans_inv[k]);
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &E) -> bool {
        let (h, j) = self.sift_from(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    fn insert(&mut self, h: E, level: usize, from: usize) {
        if level == self.levels.len() {
            let b = h.first_moved().expect("nontrivial residue");
            self.levels.push(Level::new(b, &self.identity, h.point_bound()));
        }
        for l in from..=level {
            self.levels[l].add_gen(h.clone());
        }
    }

    /// Sifts `g` and adds its residue when nontrivial. Returns whether the
    /// structure grew.
    pub fn add_element(&mut self, g: &E) -> bool {
        let (h, j) = self.sift_from(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        self.insert(h, j, 0);
        true
    }

    /// Makes the structure a complete BSGS of the group generated by the
    /// top-level generators: every Schreier generator must sift to the identity.
    pub fn verify(&mut self) {
        self.verify_bounded(None).expect("no limit given");
    }

    fn verify_bounded(&mut self, limit: Option<&BigUint>) -> Result<(), EngineError> {
        let mut i = self.levels.len();
        while i > 0 {
            let li = i - 1;
            let mut restart = None;
            let n_gens = self.levels[li].gens.len();
            let mut k = 0;
            'scan: while k < self.levels[li].orbit.len() {
                let (d_pts, d_gens) = (self.levels[li].done_pts, self.levels[li].done_gens);
                for s in 0..n_gens {
                    if k < d_pts && s < d_gens {
                        continue;
                    }
                    let level = &self.levels[li];
                    let p = level.gens[s].image(level.orbit[k]);
                    let idx = level.index.get(p).expect("orbit closed");
                    let sg = level.trans[k].mul(&level.gens[s]).mul(&level.trans_inv[idx]);
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(&sg, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        self.levels[li].done_pts = k;
                        self.levels[li].done_gens = n_gens;
                        self.insert(h, j, li + 1);
                        if let Some(lim) = limit {
                            if &self.order() > lim {
                                return Err(EngineError::OrderMismatch {
                                    found: self.order(),
                                    expected: lim.clone(),
                                });
                            }
                        }
                        restart = Some(j);
                        break 'scan;
                    }
                }
                k += 1;
            }
            match restart {
                Some(j) => i = j + 1,
                None => {
                    let level = &mut self.levels[li];
                    level.done_pts = level.orbit.len();
                    level.done_gens = level.gens.len();
                    i -= 1;
                }
            }
        }
        Ok(())
    }

    /// Uniformly random element, as a product of random transversal elements.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> E {
        let mut g = self.identity.clone();
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.orbit.len());
            g = g.mul(&level.trans[k]);
        }
        g
    }

    /// Rebuilds a structure from a stored base and strong generators, then
    /// re-verifies it.
    pub fn from_base_and_gens(identity: &E, base: &[u64], gens: &[E]) -> Self {
        let mut b = Bsgs::trivial(identity);
        for &pt in base {
            b.levels.push(Level::new(pt, &b.identity, identity.point_bound()));
        }
        for g in gens {
            if g.is_identity() {
                continue;
            }
            let j = b
                .levels
                .iter()
                .position(|l| g.image(l.base) != l.base)
                .unwrap_or(b.levels.len());
            b.insert(g.clone(), j, 0);
        }
        b.verify();
        b
    }

    /// Enumerates all elements (only sensible for small groups).
    pub fn elements(&self) -> Vec<E> {
        let mut out = vec![self.identity.clone()];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.trans.len());
            for g in &out {
                for t in &level.trans {
                    next.push(g.mul(t));
                }
            }
            out = next;
        }
        out
    }

    /// Visits every element once without materializing the group.
    pub fn for_each_element(&self, mut f: impl FnMut(&E)) {
        fn walk<E: Element>(levels: &[Level<E>], g: &E, f: &mut dyn FnMut(&E)) {
            match levels.split_last() {
                None => f(g),
                Some((last, rest)) => {
                    for t in &last.trans {
                        walk(rest, &g.mul(t), f);
                    }
                }
            }
        }
        walk(&self.levels, &self.identity, &mut f);
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// Randomized Schreier–Sims with a deterministic verification pass.
pub fn schreier_sims<E: Element>(gens: &[E], identity: &E, opts: &SsOptions) -> Result<Bsgs<E>, EngineError> {
    let mut b = Bsgs::trivial(identity);
    let gens: Vec<E> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return Ok(b);
    }
    let over = |b: &Bsgs<E>| -> Result<(), EngineError> {
        if let Some(lim) = &opts.limit {
            let o = b.order();
            if &o > lim {
                return Err(EngineError::OrderMismatch {
                    found: o,
                    expected: lim.clone(),
                });
            }
        }
        Ok(())
    };
    b.add_element(&gens[0]);
    let mut pr = ProductReplacement::new(&gens, identity, opts.seed);
    let mut misses = 0;
    loop {
        if let Some(t) = &opts.target {
            if &b.order() >= t {
                break;
            }
        }
        if misses >= opts.patience {
            break;
        }
        let r = pr.next_element();
        if b.add_element(&r) {
            misses = 0;
            over(&b)?;
        } else {
            misses += 1;
        }
    }
    for g in &gens {
        b.add_element(g);
    }
    over(&b)?;
    b.verify_bounded(opts.limit.as_ref())?;
    Ok(b)
}

/// Stabilizer of `x0` in the group of `group`, generated by random Schreier
/// generators until its order reaches `|G| / |orbit|`.
pub fn stabilizer<E: Element, A: Action<E> + ?Sized>(
    group: &Bsgs<E>,
    gens: &[E],
    action: &A,
    x0: u64,
    seed: u64,
    cap: usize,
) -> Result<(Bsgs<E>, Orbit), EngineError> {
    let o = orbit(action, gens, x0, cap)?;
    let order = group.order();
    let len = BigUint::from(o.len());
    if !(&order % &len).is_zero() {
        return Err(EngineError::NotDivisible { orbit: o.len(), order });
    }
    let target = &order / &len;
    let mut stab = Bsgs::trivial(group.identity());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while stab.order() < target {
        let g = group.random_element(&mut rng);
        let y = action.act(&g, x0);
        let idx = o.position(y).ok_or(EngineError::NotFaithful)?;
        let t = o.transversal(gens, group.identity(), idx);
        let s = g.mul(&t.inv());
        stab.add_element(&s);
    }
    stab.verify();
    if stab.order() != target {
        return Err(EngineError::OrderMismatch {
            found: stab.order(),
            expected: target,
        });
    }
    Ok((stab, o))
}
