//! On-disk cache of computed polynomials in the canonical JSON form.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use charpoly::perm::Partition;
use charpoly::QPoly;

use crate::CliError;

/// Directory used when neither a flag nor the environment names one.
pub const DEFAULT_DIR: &str = ".charpoly-cache";
/// Environment variable naming the cache directory.
pub const ENV_VAR: &str = "CHARPOLY_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn fk_key(k: usize, m: usize) -> String {
        format!("fk-k{k}-m{m}")
    }

    pub fn fmu_key(mu: &Partition, m: usize) -> String {
        let parts: Vec<String> = mu.parts().iter().map(|p| p.to_string()).collect();
        format!("fmu-mu{}-m{m}", parts.join("_"))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// The cached polynomial, or `None` on a miss. Unreadable entries count
    /// as misses.
    pub fn load(&self, key: &str) -> Option<QPoly> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        QPoly::from_json(&text).ok()
    }

    /// Writes through a temporary file in the cache directory and renames
    /// it into place.
    pub fn store(&self, key: &str, poly: &QPoly) -> Result<(), CliError> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let mut file = fs::File::create(&tmp)?;
        file.write_all(poly.to_json().as_bytes())?;
        file.sync_all()?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        key: &str,
        compute: impl FnOnce() -> charpoly::Result<QPoly>,
    ) -> Result<QPoly, CliError> {
        if let Some(p) = self.load(key) {
            return Ok(p);
        }
        let p = compute()?;
        self.store(key, &p)?;
        Ok(p)
    }
}
