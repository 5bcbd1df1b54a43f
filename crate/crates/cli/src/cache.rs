//! Disk cache for decompositions, keyed by (algebra, degree, engine
//! version). Writes are atomic (temp file + rename) so concurrent
//! invocations cannot corrupt state. The directory comes from
//! SYMPDEC_CACHE_DIR, falling back to a per-user cache path.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;

use crate::envelope::engine_version;

pub fn cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("SYMPDEC_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Ok(home) = std::env::var("HOME") {
        return PathBuf::from(home).join(".cache").join("sympdec");
    }
    std::env::temp_dir().join("sympdec-cache")
}

fn cache_path(algebra: &str, degree: u32) -> PathBuf {
    cache_dir().join(format!("{algebra}-k{degree}-v{}.json", engine_version()))
}

pub fn load(algebra: &str, degree: u32) -> Option<Value> {
    let text = fs::read_to_string(cache_path(algebra, degree)).ok()?;
    let value: Value = serde_json::from_str(&text).ok()?;
    (value.get("schema_version")? == &Value::from(crate::envelope::SCHEMA_VERSION))
        .then(|| value.get("payload").cloned())?
}

pub fn store(algebra: &str, degree: u32, payload: &Value) {
    let dir = cache_dir();
    if fs::create_dir_all(&dir).is_err() {
        return; // caching is best-effort
    }
    let wrapped = serde_json::json!({
        "schema_version": crate::envelope::SCHEMA_VERSION,
        "engine_version": engine_version(),
        "payload": payload,
    });
    let target = cache_path(algebra, degree);
    let tmp = dir.join(format!(
        ".{}-k{}-{}.tmp",
        algebra,
        degree,
        std::process::id()
    ));
    if fs::write(&tmp, serde_json::to_string(&wrapped).unwrap()).is_ok() {
        let _ = fs::rename(&tmp, &target);
    }
}
