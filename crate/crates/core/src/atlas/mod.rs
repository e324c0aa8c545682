//! Explicit generators for the groups in the factorization table, exact
//! order formulas, and the generator data-file format.

pub mod classical;
pub mod g2;
pub mod orders;
pub mod sporadic;
pub mod wedge;

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::engine::{schreier_sims, Bsgs, EngineError, SsOptions};
use crate::gf::{Field, GfError};
use crate::orthospace::{Mat, OrthError, OrthSpace};

pub use classical::*;
pub use g2::*;
pub use orders::{factorial, ord, order_of, order_terms, Family, OrderFormula};
pub use sporadic::*;
pub use wedge::{psp6_wedge, wedge_dims, wedge_embedding};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("a*b does not equal m")]
    BadFactorization,
    #[error("construction needs characteristic 3")]
    BadCharacteristic,
    #[error("generator {0} does not preserve the form")]
    IsometryViolation(usize),
    #[error("certification failed for {name}: {detail}")]
    CertificationFailure { name: String, detail: String },
    #[error("no stored generators for q = {0}")]
    MissingData(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Orth(#[from] OrthError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Constructed,
    Embedded,
    StoredData(String),
    Discovered(u64),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Constructed => write!(f, "constructed"),
            Provenance::Embedded => write!(f, "embedded"),
            Provenance::StoredData(s) => write!(f, "stored-data {s}"),
            Provenance::Discovered(seed) => write!(f, "discovered seed={seed}"),
        }
    }
}

impl Provenance {
    fn parse(s: &str) -> Result<Provenance, AtlasError> {
        let s = s.trim();
        if s == "constructed" {
            Ok(Provenance::Constructed)
        } else if s == "embedded" {
            Ok(Provenance::Embedded)
        } else if let Some(rest) = s.strip_prefix("stored-data") {
            Ok(Provenance::StoredData(rest.trim().to_string()))
        } else if let Some(rest) = s.strip_prefix("discovered seed=") {
            rest.trim()
                .parse()
                .map(Provenance::Discovered)
                .map_err(|_| AtlasError::Parse(format!("bad seed in provenance: {s}")))
        } else {
            Err(AtlasError::Parse(format!("unknown provenance: {s}")))
        }
    }
}

/// A named generating set of matrices, optionally preserving a form.
#[derive(Clone, Debug)]
pub struct Group {
    pub name: String,
    pub field: Arc<Field>,
    pub dim: usize,
    pub space: Option<Arc<OrthSpace>>,
    pub gens: Vec<Mat>,
    pub claimed_order: Option<BigUint>,
    pub provenance: Provenance,
}

impl Group {
    /// Checks that every generator is an isometry of `space`.
    pub fn new(
        name: impl Into<String>,
        space: &Arc<OrthSpace>,
        gens: Vec<Mat>,
        claimed_order: Option<BigUint>,
        provenance: Provenance,
    ) -> Result<Group, AtlasError> {
        for (i, g) in gens.iter().enumerate() {
            if !space.is_isometry(g) {
                return Err(AtlasError::IsometryViolation(i));
            }
        }
        Ok(Group {
            name: name.into(),
            field: Arc::clone(space.field()),
            dim: space.dim(),
            space: Some(Arc::clone(space)),
            gens,
            claimed_order,
            provenance,
        })
    }

    /// A matrix group with no form attached.
    pub fn linear(
        name: impl Into<String>,
        field: &Arc<Field>,
        dim: usize,
        gens: Vec<Mat>,
        claimed_order: Option<BigUint>,
        provenance: Provenance,
    ) -> Group {
        Group {
            name: name.into(),
            field: Arc::clone(field),
            dim,
            space: None,
            gens,
            claimed_order,
            provenance,
        }
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(&self.field, self.dim)
    }

    /// Exact BSGS; fails if a claimed order is set and differs.
    pub fn certify(&self, seed: u64) -> Result<Bsgs<Mat>, AtlasError> {
        let opts = SsOptions {
            seed,
            target: self.claimed_order.clone(),
            ..Default::default()
        };
        let b = schreier_sims(&self.gens, &self.identity(), &opts)?;
        if let Some(c) = &self.claimed_order {
            if &b.order() != c {
                return Err(AtlasError::CertificationFailure {
                    name: self.name.clone(),
                    detail: format!("order {} but claimed {}", b.order(), c),
                });
            }
        }
        Ok(b)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    /// Conjugate `g^-1 X g` of every generator.
    pub fn conjugated(&self, g: &Mat) -> Group {
        let gi = g.inverse().expect("invertible");
        let mut out = self.clone();
        out.gens = self.gens.iter().map(|x| gi.mul(x).mul(g)).collect();
        out
    }

    /// Generator file text: field header, dimension, name, claimed order,
    /// provenance, then one matrix per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.field.header());
        s.push('\n');
        s.push_str(&format!("DIM {}\n", self.dim));
        s.push_str(&format!("NAME {}\n", self.name));
        match &self.claimed_order {
            Some(o) => s.push_str(&format!("CLAIMED_ORDER {o}\n")),
            None => s.push_str("CLAIMED_ORDER -\n"),
        }
        s.push_str(&format!("PROVENANCE {}\n", self.provenance));
        for g in &self.gens {
            s.push_str(&g.to_text());
            s.push('\n');
        }
        s
    }

    /// Parses generator-file text. Odd dimensions of at least 5 are checked
    /// against the standard form.
    pub fn from_text(text: &str) -> Result<Group, AtlasError> {
        let mut lines = text.lines();
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| AtlasError::Parse(format!("missing {what} line")))
        };
        let field = Field::parse_header(next("field")?)?;
        let dim: usize = next("DIM")?
            .strip_prefix("DIM ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| AtlasError::Parse("bad DIM line".into()))?;
        let name = next("NAME")?
            .strip_prefix("NAME ")
            .ok_or_else(|| AtlasError::Parse("bad NAME line".into()))?
            .to_string();
        let co = next("CLAIMED_ORDER")?
            .strip_prefix("CLAIMED_ORDER ")
            .ok_or_else(|| AtlasError::Parse("bad CLAIMED_ORDER line".into()))?
            .trim();
        let claimed_order = if co == "-" {
            None
        } else {
            Some(
                co.parse::<BigUint>()
                    .map_err(|_| AtlasError::Parse("bad claimed order".into()))?,
            )
        };
        let prov = next("PROVENANCE")?
            .strip_prefix("PROVENANCE ")
            .ok_or_else(|| AtlasError::Parse("bad PROVENANCE line".into()))?;
        let provenance = Provenance::parse(prov)?;
        let mut gens = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            gens.push(Mat::from_text(&field, line, dim)?);
        }
        if dim % 2 == 1 && dim >= 5 {
            let space = Arc::new(OrthSpace::standard(dim / 2, &field)?);
            Group::new(name, &space, gens, claimed_order, provenance)
        } else {
            Ok(Group::linear(name, &field, dim, gens, claimed_order, provenance))
        }
    }
}

pub fn store_group(g: &Group, path: &Path) -> Result<(), AtlasError> {
    fs::write(path, g.to_text()).map_err(|e| AtlasError::Io(e.to_string()))
}

pub fn load_group(path: &Path) -> Result<Group, AtlasError> {
    let text = fs::read_to_string(path).map_err(|e| AtlasError::Io(e.to_string()))?;
    Group::from_text(&text)
}

/// The standard (2m+1)-space over GF(q) for prime q.
pub fn standard(m: usize, q: u64) -> Result<Arc<OrthSpace>, AtlasError> {
    let (p, f) = orders::prime_power(q).ok_or(AtlasError::BadParams("q must be a prime power".into()))?;
    let field = crate::gf::make_field(p, f)?;
    Ok(Arc::new(OrthSpace::standard(m, &field)?))
}
