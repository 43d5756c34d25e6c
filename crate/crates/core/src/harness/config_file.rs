//! `key = value` configuration files.
//!
//! One pair per line; `#` starts a comment; blank lines are ignored. Keys
//! are the long CLI flag names without the leading dashes (`mw-min`,
//! `iters`, ...).

use std::collections::BTreeMap;
use std::path::Path;

use crate::{Error, Result};

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {}: expected `key = value`, got `{}`",
                lineno + 1,
                raw.trim()
            )));
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
        }
        if map
            .insert(key.to_string(), value.trim().to_string())
            .is_some()
        {
            return Err(Error::Config(format!(
                "line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    Ok(map)
}

pub fn load_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let m = parse_config(
            "# experiment\nfunction = sphere\n\ndim=30   # inline\n  mw-min = 0.95\n--seed = 7\n",
        )
        .unwrap();
        assert_eq!(m["function"], "sphere");
        assert_eq!(m["dim"], "30");
        assert_eq!(m["mw-min"], "0.95");
        assert_eq!(m["seed"], "7");
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_config("function sphere").is_err());
        assert!(parse_config(" = 3").is_err());
        assert!(parse_config("dim = 3\ndim = 4").is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_config(Path::new("/nonexistent/fishswarm.conf")).unwrap_err();
        assert!(err.is_io());
    }
}
