use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// NaH at r = 1.91438 Angstrom, 27 terms on 4 qubits.
pub const BUNDLED_NAH_TEXT: &str = include_str!("../../data/nah_r1.91438.ham");

/// Qubit Hamiltonian in the line-oriented text format:
///
/// ```text
/// # comment
/// molecule: NaH
/// bond_length_angstrom: 1.91438
/// basis: sto-3g
/// n_qubits: 4
/// -159.40289 IIII
/// 0.0202421 XXXX
/// ```
///
/// Header lines precede the terms; only `n_qubits` is mandatory. Words
/// list qubit 0 first.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianFile {
    pub molecule: String,
    pub bond_length_angstrom: Option<f64>,
    pub basis: String,
    pub n_qubits: usize,
    pub terms: Vec<(f64, String)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl HamiltonianFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut molecule = String::new();
        let mut basis = String::new();
        let mut bond_length = None;
        let mut n_qubits: Option<usize> = None;
        let mut terms = Vec::new();
        let mut seen = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                if !terms.is_empty() {
                    return Err(parse_err(line_no, "header line after the first term"));
                }
                let value = value.trim();
                match key.trim() {
                    "molecule" => molecule = value.to_owned(),
                    "basis" => basis = value.to_owned(),
                    "bond_length_angstrom" => {
                        bond_length = Some(value.parse::<f64>().map_err(|e| {
                            parse_err(line_no, format!("bad bond length '{value}': {e}"))
                        })?)
                    }
                    "n_qubits" => {
                        let n = value.parse::<usize>().map_err(|e| {
                            parse_err(line_no, format!("bad qubit count '{value}': {e}"))
                        })?;
                        if n == 0 || n > 64 {
                            return Err(parse_err(line_no, format!("unsupported qubit count {n}")));
                        }
                        n_qubits = Some(n);
                    }
                    other => return Err(parse_err(line_no, format!("unknown header key '{other}'"))),
                }
                continue;
            }
            let n = n_qubits.ok_or_else(|| parse_err(line_no, "term before the n_qubits header"))?;
            let mut fields = line.split_whitespace();
            let (coef, word) = match (fields.next(), fields.next(), fields.next()) {
                (Some(c), Some(w), None) => (c, w),
                _ => return Err(parse_err(line_no, format!("expected 'coefficient word', got '{line}'"))),
            };
            let coef: f64 = coef
                .parse()
                .map_err(|e| parse_err(line_no, format!("bad coefficient '{coef}': {e}")))?;
            if !coef.is_finite() {
                return Err(parse_err(line_no, format!("non-finite coefficient {coef}")));
            }
            if let Some(bad) = word.chars().find(|c| !matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
                return Err(parse_err(
                    line_no,
                    format!("invalid Pauli letter '{bad}' in word '{word}'"),
                ));
            }
            if word.len() != n {
                return Err(parse_err(
                    line_no,
                    format!("word '{word}' has length {}, expected {n}", word.len()),
                ));
            }
            if !seen.insert(word.to_owned()) {
                return Err(parse_err(line_no, format!("duplicate term '{word}'")));
            }
            terms.push((coef, word.to_owned()));
        }
        let n_qubits = n_qubits.ok_or_else(|| parse_err(0, "missing n_qubits header"))?;
        Ok(Self {
            molecule,
            bond_length_angstrom: bond_length,
            basis,
            n_qubits,
            terms,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            parse_err(0, format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// Canonical text: header, blank line, one term per line with the
    /// shortest decimal that round-trips the coefficient.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if !self.molecule.is_empty() {
            writeln!(out, "molecule: {}", self.molecule).unwrap();
        }
        if let Some(r) = self.bond_length_angstrom {
            writeln!(out, "bond_length_angstrom: {r}").unwrap();
        }
        if !self.basis.is_empty() {
            writeln!(out, "basis: {}", self.basis).unwrap();
        }
        writeln!(out, "n_qubits: {}", self.n_qubits).unwrap();
        out.push('\n');
        for (c, w) in &self.terms {
            writeln!(out, "{c} {w}").unwrap();
        }
        out
    }

    pub fn to_pauli_sum(&self) -> Result<PauliSum> {
        PauliSum::from_real_terms(
            self.n_qubits,
            self.terms.iter().map(|(c, w)| (*c, w.as_str())),
        )
    }
}

pub fn bundled_nah_file() -> HamiltonianFile {
    HamiltonianFile::parse(BUNDLED_NAH_TEXT).expect("bundled Hamiltonian parses")
}

pub fn bundled_nah() -> PauliSum {
    bundled_nah_file()
        .to_pauli_sum()
        .expect("bundled Hamiltonian is well formed")
}
