use std::path::{Path, PathBuf};

use super::hamiltonian::{bundled_nah_file, HamiltonianFile};
use crate::circuit::AnsatzFamily;
use crate::error::{Error, Result};
use crate::optim::OptimizerKind;
use crate::sim::NoiseModel;

#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianSource {
    Bundled,
    File(PathBuf),
}

/// Hamiltonian entry of a sweep, with an optional bond-length label that
/// overrides the file header.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianEntry {
    pub source: HamiltonianSource,
    pub bond_length: Option<f64>,
}

impl HamiltonianEntry {
    pub fn load(&self) -> Result<HamiltonianFile> {
        let mut file = match &self.source {
            HamiltonianSource::Bundled => bundled_nah_file(),
            HamiltonianSource::File(p) => HamiltonianFile::load(p)?,
        };
        if self.bond_length.is_some() {
            file.bond_length_angstrom = self.bond_length;
        }
        Ok(file)
    }
}

/// Study grid:
///
/// ```text
/// hamiltonian: bundled
/// hamiltonian: nah_2.5.ham 2.5
/// p1: 0 1e-4 1e-3 1e-2
/// optimizer: cobyla lbfgs
/// ansatz: uccd uccsd-singlet
/// seeds: 0
/// rc: 0
/// ```
///
/// Values may be separated by spaces or commas and keys may repeat.
/// Relative paths resolve against the manifest's directory. `rc` is the
/// number of randomized compilations averaged per cell (0 = bare circuit).
#[derive(Clone, Debug, PartialEq)]
pub struct SweepManifest {
    pub hamiltonians: Vec<HamiltonianEntry>,
    pub p1: Vec<f64>,
    pub optimizers: Vec<OptimizerKind>,
    pub ansatze: Vec<AnsatzFamily>,
    pub seeds: Vec<u64>,
    pub rc: usize,
}

/// One point of the Cartesian product, as indices into the manifest axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepCell {
    pub hamiltonian: usize,
    pub p1: usize,
    pub optimizer: usize,
    pub ansatz: usize,
    pub seed: usize,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl SweepManifest {
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut m = SweepManifest {
            hamiltonians: Vec::new(),
            p1: Vec::new(),
            optimizers: Vec::new(),
            ansatze: Vec::new(),
            seeds: Vec::new(),
            rc: 0,
        };
        let mut seeds_given = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| parse_err(line_no, format!("expected 'key: values', got '{line}'")))?;
            let values: Vec<&str> = value
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let wrap = |e: Error| parse_err(line_no, e.to_string());
            match key.trim() {
                "hamiltonian" => {
                    let (src, rest) = values
                        .split_first()
                        .ok_or_else(|| parse_err(line_no, "hamiltonian needs a path or 'bundled'"))?;
                    let source = if *src == "bundled" {
                        HamiltonianSource::Bundled
                    } else {
                        let p = PathBuf::from(src);
                        HamiltonianSource::File(match base_dir {
                            Some(dir) if p.is_relative() => dir.join(p),
                            _ => p,
                        })
                    };
                    let bond_length = match rest {
                        [] => None,
                        [r] => Some(r.parse::<f64>().map_err(|e| {
                            parse_err(line_no, format!("bad bond length '{r}': {e}"))
                        })?),
                        _ => return Err(parse_err(line_no, "too many fields for hamiltonian")),
                    };
                    m.hamiltonians.push(HamiltonianEntry { source, bond_length });
                }
                "p1" => {
                    for v in values {
                        let p: f64 = v
                            .parse()
                            .map_err(|e| parse_err(line_no, format!("bad p1 '{v}': {e}")))?;
                        NoiseModel::depolarizing(p).map_err(wrap)?;
                        m.p1.push(p);
                    }
                }
                "optimizer" => {
                    for v in values {
                        m.optimizers.push(v.parse().map_err(wrap)?);
                    }
                }
                "ansatz" => {
                    for v in values {
                        m.ansatze.push(v.parse().map_err(wrap)?);
                    }
                }
                "seeds" => {
                    seeds_given = true;
                    for v in values {
                        m.seeds.push(
                            v.parse()
                                .map_err(|e| parse_err(line_no, format!("bad seed '{v}': {e}")))?,
                        );
                    }
                }
                "rc" => {
                    let [v] = values[..] else {
                        return Err(parse_err(line_no, "rc takes one count"));
                    };
                    m.rc = v
                        .parse()
                        .map_err(|e| parse_err(line_no, format!("bad rc count '{v}': {e}")))?;
                }
                other => return Err(parse_err(line_no, format!("unknown key '{other}'"))),
            }
        }
        if !seeds_given {
            m.seeds.push(0);
        }
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_err(0, format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, empty) in [
            ("hamiltonian", self.hamiltonians.is_empty()),
            ("p1", self.p1.is_empty()),
            ("optimizer", self.optimizers.is_empty()),
            ("ansatz", self.ansatze.is_empty()),
            ("seeds", self.seeds.is_empty()),
        ] {
            if empty {
                return Err(Error::Model(format!("manifest axis '{name}' is empty")));
            }
        }
        Ok(())
    }

    /// Cartesian product, nested hamiltonian > p1 > optimizer > ansatz > seed.
    pub fn cells(&self) -> Vec<SweepCell> {
        let mut out = Vec::new();
        for hamiltonian in 0..self.hamiltonians.len() {
            for p1 in 0..self.p1.len() {
                for optimizer in 0..self.optimizers.len() {
                    for ansatz in 0..self.ansatze.len() {
                        for seed in 0..self.seeds.len() {
                            out.push(SweepCell {
                                hamiltonian,
                                p1,
                                optimizer,
                                ansatz,
                                seed,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}
