//! Content-addressed result cache. An entry is keyed by the SHA-256 of the
//! canonical request (operation, resolved settings, precision, crate
//! version) and stores the exact output text with its own checksum.

use crate::error::{CliError, CliResult};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "JACOBI_CACHE_DIR";

pub fn cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => std::env::temp_dir().join("jacobi-cache"),
    }
}

fn sha_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

pub struct Request {
    pub canonical: String,
    pub key: String,
}

impl Request {
    pub fn new(op: &str, config: &Value, precision_bits: u32) -> Self {
        // serde_json maps are ordered, so this text is canonical
        let canonical = json!({
            "op": op,
            "config": config,
            "precision_bits": precision_bits,
            "version": env!("CARGO_PKG_VERSION"),
        })
        .to_string();
        let key = sha_hex(&canonical);
        Request { canonical, key }
    }
}

pub enum Lookup {
    Hit(String),
    Miss,
    Corrupt(String),
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

pub fn lookup(dir: &Path, req: &Request) -> Lookup {
    let path = entry_path(dir, &req.key);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
        Err(e) => return Lookup::Corrupt(e.to_string()),
    };
    let v: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Lookup::Corrupt(format!("unparseable entry: {e}")),
    };
    let (Some(request), Some(output), Some(sum)) =
        (v.get("request").and_then(Value::as_str), v.get("output").and_then(Value::as_str), v.get("output_sha256").and_then(Value::as_str))
    else {
        return Lookup::Corrupt("missing fields".into());
    };
    if request != req.canonical {
        return Lookup::Corrupt("request does not match the key".into());
    }
    if sha_hex(output) != sum {
        return Lookup::Corrupt("checksum mismatch".into());
    }
    Lookup::Hit(output.to_string())
}

pub fn store(dir: &Path, req: &Request, output: &str) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cache directory {}: {e}", dir.display())))?;
    let entry = json!({ "request": req.canonical, "output": output, "output_sha256": sha_hex(output) });
    let path = entry_path(dir, &req.key);
    let tmp = dir.join(format!("{}.tmp{}", req.key, std::process::id()));
    std::fs::write(&tmp, entry.to_string()).map_err(|e| CliError::io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, &path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(())
}

/// Returns the cached output or computes, stores and returns it.
pub fn cached(
    op: &str,
    config: &Value,
    precision_bits: u32,
    no_cache: bool,
    compute: impl FnOnce() -> CliResult<String>,
) -> CliResult<String> {
    let req = Request::new(op, config, precision_bits);
    let dir = cache_dir();
    if !no_cache {
        match lookup(&dir, &req) {
            Lookup::Hit(out) => {
                eprintln!("cache: hit {}", req.key);
                return Ok(out);
            }
            Lookup::Miss => eprintln!("cache: miss {}", req.key),
            Lookup::Corrupt(why) => {
                eprintln!("warning: corrupt cache entry {} ({why}); recomputing", entry_path(&dir, &req.key).display())
            }
        }
    }
    let out = compute()?;
    if let Err(e) = store(&dir, &req, &out) {
        eprintln!("warning: could not write cache entry: {}", e.message);
    }
    Ok(out)
}
