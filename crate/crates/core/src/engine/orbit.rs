//! Breadth-first orbits with Schreier vectors.

use rustc_hash::FxHashMap;

use super::{Action, Element, EngineError};

const ROOT: u32 = u32::MAX;

/// Orbit points in BFS order. `parent[i] = (j, s)` means
/// `points[i] = act(gens[s], points[j])`.
#[derive(Clone, Debug)]
pub struct Orbit {
    points: Vec<u64>,
    parent: Vec<(u32, u32)>,
    index: FxHashMap<u64, u32>,
}

pub fn orbit<E: Element, A: Action<E> + ?Sized>(
    action: &A,
    gens: &[E],
    x0: u64,
    cap: usize,
) -> Result<Orbit, EngineError> {
    let mut o = Orbit {
        points: vec![x0],
        parent: vec![(ROOT, ROOT)],
        index: FxHashMap::default(),
    };
    o.index.insert(x0, 0);
    let mut i = 0;
    while i < o.points.len() {
        let x = o.points[i];
        for (s, g) in gens.iter().enumerate() {
            let y = action.act(g, x);
            if !o.index.contains_key(&y) {
                if o.points.len() >= cap {
                    return Err(EngineError::DomainOverflow(cap));
                }
                o.index.insert(y, o.points.len() as u32);
                o.points.push(y);
                o.parent.push((i as u32, s as u32));
            }
        }
        i += 1;
    }
    Ok(o)
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn points(&self) -> &[u64] {
        &self.points
    }
    pub fn root(&self) -> u64 {
        self.points[0]
    }
    pub fn position(&self, pt: u64) -> Option<usize> {
        self.index.get(&pt).map(|&i| i as usize)
    }
    pub fn contains(&self, pt: u64) -> bool {
        self.index.contains_key(&pt)
    }

    /// Generator indices of the word taking the root to `points[idx]`.
    pub fn word(&self, idx: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut i = idx;
        while self.parent[i].0 != ROOT {
            w.push(self.parent[i].1 as usize);
            i = self.parent[i].0 as usize;
        }
        w.reverse();
        w
    }

    /// An element taking the root to `points[idx]`.
    pub fn transversal<E: Element>(&self, gens: &[E], identity: &E, idx: usize) -> E {
        self.word(idx)
            .into_iter()
            .fold(identity.clone(), |acc, s| acc.mul(&gens[s]))
    }
}
