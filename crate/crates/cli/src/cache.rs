//! On-disk cache of canonical bases keyed by (family, order).

use std::fs;
use std::path::{Path, PathBuf};

use apery_core::frobenius::CanonicalBasis;
use apery_core::poly::Poly;
use apery_core::series::{PowerSeries, Var};
use apery_core::FamilyTag;
use serde::{Deserialize, Serialize};

use crate::document::{canonical_json, fraction, parse_fraction, Fraction};

pub const CACHE_DIR_ENV: &str = "APERY_CACHE_DIR";
const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CachedBasis {
    version: u32,
    family: String,
    order: usize,
    discriminant: Vec<Fraction>,
    w0: Vec<Fraction>,
    tails: Vec<Vec<Fraction>>,
}

fn env_dir(name: &str) -> Option<PathBuf> {
    std::env::var_os(name).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn platform_cache_dir() -> Option<PathBuf> {
    if cfg!(windows) {
        env_dir("LOCALAPPDATA")
    } else if cfg!(target_os = "macos") {
        env_dir("HOME").map(|h| h.join("Library/Caches"))
    } else {
        env_dir("XDG_CACHE_HOME").or_else(|| env_dir("HOME").map(|h| h.join(".cache")))
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `$APERY_CACHE_DIR`, else the platform cache directory.
    pub fn from_env() -> Option<Cache> {
        let dir = match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => platform_cache_dir()?.join("apery"),
        };
        Some(Cache { dir })
    }

    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, family: FamilyTag, order: usize) -> PathBuf {
        self.dir.join(format!("{}-basis-{order}.json", family.name()))
    }

    /// Unreadable or mismatched entries count as misses.
    pub fn load(&self, family: FamilyTag, order: usize) -> Option<CanonicalBasis> {
        let text = fs::read_to_string(self.path(family, order)).ok()?;
        let c: CachedBasis = serde_json::from_str(&text).ok()?;
        if c.version != FORMAT_VERSION || c.family != family.name() || c.order != order {
            return None;
        }
        let coeffs = |v: &[Fraction]| v.iter().map(parse_fraction).collect::<Option<Vec<_>>>();
        let series = |v: &[Fraction]| {
            let s = PowerSeries::new(coeffs(v)?, Var::Phi);
            (s.order() == order).then_some(s)
        };
        let tails = c.tails.iter().map(|t| series(t)).collect::<Option<Vec<_>>>()?;
        let disc = Poly::new(coeffs(&c.discriminant)?);
        CanonicalBasis::new(family, disc, series(&c.w0)?, tails).ok()
    }

    pub fn store(&self, basis: &CanonicalBasis) -> std::io::Result<()> {
        let fr = |s: &PowerSeries| s.coeffs().iter().map(fraction).collect::<Vec<_>>();
        let entry = CachedBasis {
            version: FORMAT_VERSION,
            family: basis.family().name().to_string(),
            order: basis.order(),
            discriminant: basis.discriminant().coeffs().iter().map(fraction).collect(),
            w0: fr(basis.w0()),
            tails: (1..basis.rank()).map(|j| fr(basis.h(j))).collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let path = self.path(basis.family(), basis.order());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, canonical_json(&entry))?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use apery_core::frobenius::beukers;

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let b = beukers::recursion_basis(8).unwrap();
        assert!(cache.load(FamilyTag::Beukers, 8).is_none());
        cache.store(&b).unwrap();
        assert_eq!(cache.load(FamilyTag::Beukers, 8), Some(b));
        assert!(cache.load(FamilyTag::Beukers, 9).is_none());
        assert!(cache.load(FamilyTag::Dwork, 8).is_none());
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        fs::write(dir.path().join("beukers-basis-3.json"), "{not json").unwrap();
        assert!(cache.load(FamilyTag::Beukers, 3).is_none());
    }
}
