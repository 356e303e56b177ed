//! On-disk clasp cache. Entries are keyed by weight and engine version and
//! published atomically by renaming a completed temporary file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::tangle::Tangle;
use crate::config::ENGINE_VERSION;
use crate::error::{Error, Result};
use crate::qpoly::RatFunc;
use crate::web::{parse_signs, render_signs, Web, WebSum};

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    a: usize,
    b: usize,
    top: String,
    bottom: String,
    terms: Vec<(String, String)>,
}

pub fn entry_path(dir: &Path, a: usize, b: usize) -> PathBuf {
    dir.join(format!("clasp-{a}-{b}-{ENGINE_VERSION}.json"))
}

/// Reads a cached clasp; a missing or stale entry yields `None`.
pub fn load(dir: &Path, a: usize, b: usize) -> Result<Option<Tangle>> {
    let path = entry_path(dir, a, b);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let e: Entry = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("cache entry {}: {e}", path.display())))?;
    if e.version != ENGINE_VERSION || e.a != a || e.b != b {
        return Ok(None);
    }
    let mut sum = WebSum::new();
    for (k, c) in &e.terms {
        sum.add_term(&Web::from_key_string(k)?, c.parse::<RatFunc>()?);
    }
    Ok(Some(Tangle::from_sum(parse_signs(&e.top)?, parse_signs(&e.bottom)?, sum)))
}

pub fn store(dir: &Path, a: usize, b: usize, t: &Tangle) -> Result<()> {
    fs::create_dir_all(dir)?;
    let e = Entry {
        version: ENGINE_VERSION.to_string(),
        a,
        b,
        top: render_signs(t.top()),
        bottom: render_signs(t.bottom()),
        terms: t.sum().keyed().into_iter().map(|(k, c)| (k, c.to_string())).collect(),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(serde_json::to_string(&e).expect("serializable").as_bytes())?;
    tmp.flush()?;
    tmp.persist(entry_path(dir, a, b)).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
