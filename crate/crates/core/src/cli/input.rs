use std::path::Path;

use clap::Args;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::module::Caps;
use crate::verifier::{parse_blocks, parse_elements, parse_ring, Instance, TSpec};

/// An instance file.
///
/// ```json
/// { "ring": [30], "module": [[30]], "T": "closed:6", "S": [[1], [5], [25]],
///   "caps": { "max_elements": 1024 } }
/// ```
///
/// `module` defaults to the ring over itself and `T` to `"spec"`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub ring: Vec<u64>,
    #[serde(default)]
    pub module: Option<Vec<Vec<u64>>>,
    #[serde(rename = "T", default)]
    pub t: Option<String>,
    #[serde(rename = "S", default)]
    pub s: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    pub caps: CapsFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsFile {
    pub max_elements: Option<usize>,
    pub max_submodules: Option<usize>,
    pub max_chi_vertices: Option<usize>,
}

impl InstanceFile {
    pub fn read(path: &Path) -> Result<InstanceFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct CapArgs {
    /// Largest |M| accepted (default 1024)
    #[arg(long, global = true)]
    pub max_elements: Option<usize>,
    /// Largest submodule lattice enumerated (default 20000)
    #[arg(long, global = true)]
    pub max_submodules: Option<usize>,
    /// Largest graph, after merging twins, handed to the χ solver (default 40)
    #[arg(long, global = true)]
    pub max_chi_vertices: Option<usize>,
}

impl CapArgs {
    pub fn apply(&self, file: &CapsFile) -> Caps {
        let d = Caps::default();
        Caps {
            max_elements: self
                .max_elements
                .or(file.max_elements)
                .unwrap_or(d.max_elements),
            max_submodules: self
                .max_submodules
                .or(file.max_submodules)
                .unwrap_or(d.max_submodules),
            max_chi_vertices: self
                .max_chi_vertices
                .or(file.max_chi_vertices)
                .unwrap_or(d.max_chi_vertices),
        }
    }
}

/// An instance from a file, inline flags, or both (flags win).
#[derive(Args, Clone, Debug, Default)]
pub struct InstanceArgs {
    /// JSON instance file.
    #[arg(value_name = "INSTANCE")]
    pub file: Option<std::path::PathBuf>,
    /// Moduli of R, e.g. `6,2` for Z_6 x Z_2.
    #[arg(long)]
    pub ring: Option<String>,
    /// Cyclic blocks per ring factor, e.g. `2,3` or `2;2` (default: R itself).
    #[arg(long)]
    pub module: Option<String>,
    /// `spec`, `primes:i,j,..` or `closed:c;c;..`.
    #[arg(long = "T", value_name = "T")]
    pub t: Option<String>,
    /// Elements of a multiplicative set, e.g. `1;5;25`.
    #[arg(long = "S", value_name = "S")]
    pub s: Option<String>,
}

impl InstanceArgs {
    pub fn has_any(&self) -> bool {
        self.file.is_some()
            || self.ring.is_some()
            || self.module.is_some()
            || self.t.is_some()
            || self.s.is_some()
    }

    pub fn resolve(&self, caps: &CapArgs) -> Result<Instance> {
        let file = match &self.file {
            Some(p) => Some(InstanceFile::read(p)?),
            None => None,
        };
        let ring = match (&self.ring, &file) {
            (Some(r), _) => parse_ring(r)?,
            (None, Some(f)) => f.ring.clone(),
            (None, None) => return Err(Error::Schema("give an instance file or --ring".into())),
        };
        let blocks = match (&self.module, file.as_ref().and_then(|f| f.module.clone())) {
            (Some(m), _) => parse_blocks(m)?,
            (None, Some(b)) => b,
            (None, None) => ring.iter().map(|&n| vec![n]).collect(),
        };
        let t = match (&self.t, file.as_ref().and_then(|f| f.t.clone())) {
            (Some(t), _) => t.parse()?,
            (None, Some(t)) => t.parse()?,
            (None, None) => TSpec::Spec,
        };
        let s = match (&self.s, file.as_ref().and_then(|f| f.s.clone())) {
            (Some(s), _) => Some(parse_elements(s)?),
            (None, s) => s,
        };
        let caps = caps.apply(
            file.as_ref()
                .map(|f| &f.caps)
                .unwrap_or(&CapsFile::default()),
        );
        Ok(Instance {
            ring,
            blocks,
            t,
            s,
            caps,
        })
    }
}
