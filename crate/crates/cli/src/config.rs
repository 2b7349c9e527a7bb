//! Config files supply flags that are missing from the command line.

use std::ffi::OsString;
use std::path::Path;

use serde_json::Value;

/// Reads `--config PATH` (TOML, or JSON for a `.json` extension) and appends
/// `--key value` for every key not already given on the command line.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let table = parse(&text, Path::new(&path))?;
    let mut out = args.clone();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        let present = args.iter().any(|a| {
            let a = a.to_string_lossy();
            a == flag || a.starts_with(&format!("{flag}="))
        });
        if present {
            continue;
        }
        match value {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let joined: Vec<String> = items.iter().map(scalar).collect::<Result<_, _>>()?;
                out.push(format!("{flag}={}", joined.join(",")).into());
            }
            other => out.push(format!("{flag}={}", scalar(&other)?).into()),
        }
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<String> {
    let mut it = args.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next();
        }
        if let Some(rest) = a.strip_prefix("--config=") {
            return Some(rest.to_string());
        }
    }
    None
}

fn parse(text: &str, path: &Path) -> Result<serde_json::Map<String, Value>, String> {
    let value: Value = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(text).map_err(|e| format!("config JSON: {e}"))?
    } else {
        let t: toml::Table = toml::from_str(text).map_err(|e| format!("config TOML: {e}"))?;
        serde_json::to_value(t).map_err(|e| format!("config TOML: {e}"))?
    };
    match value {
        Value::Object(map) => Ok(map),
        _ => Err("config must be a table of flag values".into()),
    }
}

fn scalar(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(format!("unsupported config value {v}")),
    }
}
