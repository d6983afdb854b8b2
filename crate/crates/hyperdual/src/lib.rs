//! File formats, renderings and parallel drivers on top of
//! [`hyperdual_core`].

pub mod export;
pub mod hmap;
pub mod parallel;

pub use hyperdual_core;

use std::path::Path;

use hyperdual_core::{flags_from_arrows, ArrowPresentation, FlagStructure};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: hmap::HmapError },
}

/// Reads an `.hmap` file; `-` reads standard input.
pub fn load(path: &Path) -> Result<ArrowPresentation, LoadError> {
    let shown = path.display().to_string();
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| LoadError::Io { path: shown.clone(), source })?;
    hmap::parse(&text).map_err(|source| LoadError::Parse { path: shown, source })
}

pub fn load_flags(path: &Path) -> Result<(ArrowPresentation, FlagStructure), LoadError> {
    let ap = load(path)?;
    let fs = flags_from_arrows(&ap);
    Ok((ap, fs))
}
