use std::path::{Path, PathBuf};

use serde::Deserialize;
use tycat_core::{Caps, Error};

use crate::cli::Global;

/// Config-file mirror of the global flags.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    json: Option<bool>,
    verify: Option<bool>,
    cap_subgroups: Option<usize>,
    cap_order: Option<usize>,
    seed: Option<u64>,
    timings: Option<bool>,
    cert_dir: Option<PathBuf>,
    caps: Option<Caps>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub json: bool,
    pub verify: bool,
    pub seed: u64,
    pub timings: bool,
    pub cert_dir: PathBuf,
    pub caps: Caps,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn read_config(path: &Path) -> Result<FileConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        message: format!("{}: {e}", path.display()),
        line: 0,
        column: 0,
    })?;
    toml::from_str(&text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(&text, s.start));
        Error::Parse {
            message: format!("{}: {}", path.display(), e.message()),
            line,
            column,
        }
    })
}

/// Flags override the config file, which overrides the defaults.
pub fn resolve(g: &Global) -> Result<Settings, Error> {
    let file = match &g.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let mut caps = file.caps.unwrap_or_default();
    if let Some(n) = g.cap_subgroups.or(file.cap_subgroups) {
        caps.subgroups = n;
    }
    if let Some(n) = g.cap_order.or(file.cap_order) {
        caps.group_order = n;
    }
    Ok(Settings {
        json: g.json || file.json.unwrap_or(false),
        verify: g.verify || file.verify.unwrap_or(false),
        seed: g.seed.or(file.seed).unwrap_or(tycat_core::verify::DEFAULT_SEED),
        timings: g.timings || file.timings.unwrap_or(false),
        cert_dir: g
            .cert_dir
            .clone()
            .or(file.cert_dir)
            .unwrap_or_else(|| PathBuf::from("tycat-certs")),
        caps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        assert_eq!(line_col("ab\ncd", 4), (2, 2));
        assert_eq!(line_col("x", 0), (1, 1));
    }
}
