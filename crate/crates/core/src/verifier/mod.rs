//! The case registry, constructive verification, structure fingerprints,
//! property suites and seeded subgroup discovery.

pub mod cache;
pub mod fingerprint;
pub mod identities;
pub mod reference;
pub mod registry;
pub mod report;
pub mod run;
pub mod suites;

use std::collections::HashMap;
use std::hash::Hash;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use thiserror::Error;

use crate::atlas::{
    affine_omega4_minus, e_s5_candidates, g2_group, nonsingular_vector, omega_group, row10_groups, standard, two_l34,
    vector_stabilizer, AffineOmega4Minus, AtlasError, G2Data, Group, Row10Groups,
};
use crate::engine::{Bsgs, EngineError, DEFAULT_CAP_COSETS, DEFAULT_CAP_POINTS};
use crate::orthospace::{Mat, OrthSpace, WittType};

pub use cache::BsgsCache;
pub use fingerprint::{fingerprint, Fingerprint};
pub use identities::audit_identities;
pub use registry::{cases, controls, FactorCase};
pub use report::{render, Expectation, Report, Verdict};
pub use run::run_case;
pub use run::{run_cases, verify};
pub use suites::{
    conjugation_closure_suite, discover_subgroup, negative_controls, parabolic_intersection_suite, proof_element_suite,
    registry_consistency, special_group_suite,
};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("no subgroup found after {0} attempts")]
    NotFound(usize),
    #[error("bad target: {0}")]
    BadTarget(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Arithmetic,
    Constructive,
    Both,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub mode: Mode,
    pub stretch: bool,
    pub cap_points: usize,
    pub cap_cosets: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            mode: Mode::Both,
            stretch: false,
            cap_points: DEFAULT_CAP_POINTS,
            cap_cosets: DEFAULT_CAP_COSETS,
            cache_dir: None,
        }
    }
}

/// The ambient Ω_{2m+1}(q) with its certified BSGS.
pub struct Ambient {
    pub space: Arc<OrthSpace>,
    pub z: Group,
    pub zb: Bsgs<Mat>,
}

type Slot<V> = Arc<OnceLock<Result<V, String>>>;

/// Compute-once map; concurrent callers of the same key wait for one result.
struct Memo<K, V>(Mutex<HashMap<K, Slot<V>>>);

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }

    fn get(&self, key: &K, f: impl FnOnce() -> Result<V, VerifierError>) -> Result<V, VerifierError> {
        let slot = {
            let mut map = self.0.lock().expect("memo lock");
            Arc::clone(map.entry(key.clone()).or_default())
        };
        slot.get_or_init(|| f().map_err(|e| e.to_string()))
            .clone()
            .map_err(VerifierError::Construction)
    }
}

/// Shared, lazily built groups for a verification run. Everything is
/// deterministic given the seed, so sharing does not affect results.
pub struct Workbench {
    pub opts: RunOptions,
    cache: Option<BsgsCache>,
    ambients: Memo<(usize, u64), Arc<Ambient>>,
    g2: Memo<u64, Arc<G2Data>>,
    aff: Memo<u64, Arc<AffineOmega4Minus>>,
    s5: Memo<u64, Arc<Vec<Group>>>,
    row10: Memo<u64, Arc<Row10Groups>>,
    l34: Memo<u64, Arc<Group>>,
}

impl Workbench {
    pub fn new(opts: RunOptions) -> Workbench {
        Workbench {
            cache: opts.cache_dir.clone().map(BsgsCache::new),
            opts,
            ambients: Memo::new(),
            g2: Memo::new(),
            aff: Memo::new(),
            s5: Memo::new(),
            row10: Memo::new(),
            l34: Memo::new(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.opts.seed
    }

    /// Certified BSGS, through the disk cache when one is configured.
    /// Returns whether the cache supplied it.
    pub fn certify(&self, g: &Group) -> Result<(Bsgs<Mat>, bool), VerifierError> {
        match &self.cache {
            Some(c) => Ok(c.certify(g, self.seed())?),
            None => Ok((g.certify(self.seed())?, false)),
        }
    }

    pub fn ambient(&self, m: usize, q: u64) -> Result<Arc<Ambient>, VerifierError> {
        self.ambients.get(&(m, q), || {
            let space = standard(m, q)?;
            let z = omega_group(&space);
            let (zb, _) = self.certify(&z)?;
            Ok(Arc::new(Ambient { space, z, zb }))
        })
    }

    pub fn g2(&self, q: u64) -> Result<Arc<G2Data>, VerifierError> {
        self.g2.get(&q, || {
            let a = self.ambient(3, q)?;
            Ok(Arc::new(g2_group(&a.space, &a.z, &a.zb, self.seed())?))
        })
    }

    pub fn affine_omega4(&self, q: u64) -> Result<Arc<AffineOmega4Minus>, VerifierError> {
        self.aff.get(&q, || {
            let a = self.ambient(3, q)?;
            Ok(Arc::new(affine_omega4_minus(&a.space)?))
        })
    }

    pub fn s5_candidates(&self) -> Result<Arc<Vec<Group>>, VerifierError> {
        self.s5.get(&3, || {
            let a = self.ambient(3, 3)?;
            let l = self.affine_omega4(3)?;
            Ok(Arc::new(e_s5_candidates(&a.space, &l, self.seed())?))
        })
    }

    pub fn row10(&self) -> Result<Arc<Row10Groups>, VerifierError> {
        self.row10.get(&3, || {
            let a = self.ambient(4, 3)?;
            Ok(Arc::new(row10_groups(&a.space, self.seed())?))
        })
    }

    pub fn two_l34(&self) -> Result<Arc<Group>, VerifierError> {
        self.l34.get(&3, || {
            let a = self.ambient(3, 3)?;
            let zv = vector_stabilizer(&a.space, &nonsingular_vector(&a.space, WittType::Minus)?)?;
            Ok(Arc::new(two_l34(&a.space, &zv, self.seed())?))
        })
    }
}

pub(crate) fn big(x: u64) -> BigUint {
    BigUint::from(x)
}
