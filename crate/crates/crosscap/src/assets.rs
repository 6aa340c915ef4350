//! Data files shipped with the crate.
//!
//! `base_drawings.json` holds fantastic drawings of the reduced schemes
//! that every larger construction bottoms out in; `exceptional_forms.json`
//! lists the reduced shapes with no perfect drawing. Both are compiled in.
//! Setting `CROSSCAP_DATA_DIR` makes the loaders read the files from that
//! directory instead.

use std::path::PathBuf;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::drawing::CrossCapDrawing;
use crate::error::AssetError;
use crate::scheme::SignedCyclicPermutation;

pub const DATA_DIR_VAR: &str = "CROSSCAP_DATA_DIR";

const BASE_FILE: &str = "base_drawings.json";
const EXCEPTIONAL_FILE: &str = "exceptional_forms.json";
const BASE_EMBEDDED: &str = include_str!("../data/base_drawings.json");
const EXCEPTIONAL_EMBEDDED: &str = include_str!("../data/exceptional_forms.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDrawing {
    /// Census representative of the scheme.
    pub scheme: SignedCyclicPermutation,
    /// A fantastic drawing whose edge `k` is edge `k` of `scheme`.
    pub drawing: CrossCapDrawing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalForm {
    pub name: String,
    pub scheme: SignedCyclicPermutation,
    /// Which elements stand for a non-trivial block.
    pub blocks: Vec<bool>,
}

#[derive(Deserialize)]
struct BaseFile {
    format: u32,
    drawings: Vec<BaseDrawing>,
}

#[derive(Deserialize)]
struct ExceptionalFile {
    format: u32,
    forms: Vec<ExceptionalForm>,
}

fn read(file: &str, embedded: &'static str) -> Result<(String, String), AssetError> {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            let label = path.display().to_string();
            std::fs::read_to_string(&path)
                .map(|t| (label.clone(), t))
                .map_err(|e| AssetError::Io {
                    path: label,
                    reason: e.to_string(),
                })
        }
        None => Ok((format!("<embedded {file}>"), embedded.to_string())),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T, AssetError> {
    serde_json::from_str(text).map_err(|e| AssetError::Parse {
        path: path.into(),
        reason: e.to_string(),
    })
}

fn check_format(path: &str, format: u32) -> Result<(), AssetError> {
    if format == 1 {
        Ok(())
    } else {
        Err(AssetError::Parse {
            path: path.into(),
            reason: format!("unsupported format {format}"),
        })
    }
}

/// Reads the base drawings afresh, honouring `CROSSCAP_DATA_DIR`.
pub fn load_base_drawings() -> Result<Vec<BaseDrawing>, AssetError> {
    let (path, text) = read(BASE_FILE, BASE_EMBEDDED)?;
    let f: BaseFile = parse(&path, &text)?;
    check_format(&path, f.format)?;
    Ok(f.drawings)
}

pub fn load_exceptional_forms() -> Result<Vec<ExceptionalForm>, AssetError> {
    let (path, text) = read(EXCEPTIONAL_FILE, EXCEPTIONAL_EMBEDDED)?;
    let f: ExceptionalFile = parse(&path, &text)?;
    check_format(&path, f.format)?;
    for form in &f.forms {
        if form.blocks.len() != form.scheme.n() {
            return Err(AssetError::Parse {
                path,
                reason: format!("{}: one flag per element expected", form.name),
            });
        }
    }
    Ok(f.forms)
}

/// Cached on first use.
pub fn base_drawings() -> Result<&'static [BaseDrawing], AssetError> {
    static CELL: OnceLock<Result<Vec<BaseDrawing>, AssetError>> = OnceLock::new();
    CELL.get_or_init(load_base_drawings)
        .as_deref()
        .map_err(Clone::clone)
}

/// Cached on first use.
pub fn exceptional_forms() -> Result<&'static [ExceptionalForm], AssetError> {
    static CELL: OnceLock<Result<Vec<ExceptionalForm>, AssetError>> = OnceLock::new();
    CELL.get_or_init(load_exceptional_forms)
        .as_deref()
        .map_err(Clone::clone)
}
