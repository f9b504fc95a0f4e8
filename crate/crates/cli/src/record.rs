use std::io::Write;

use noisyvqe::vqe::VqeResult;
use serde::{Serialize, Serializer};

/// CSV header, fixed. Every row carries every column; fields that do not
/// apply to a row kind are left empty.
pub const COLUMNS: [&str; 20] = [
    "kind",
    "iteration",
    "selected_generator",
    "gradient_norm",
    "bond_length",
    "p1",
    "ansatz",
    "optimizer",
    "seed",
    "energy_ha",
    "exact_e0_ha",
    "energy_error_ha",
    "fidelity",
    "n_params",
    "n_1q",
    "n_cnot",
    "evaluations",
    "converged",
    "status",
    "parameters",
];

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunRecord {
    pub kind: String,
    pub iteration: Option<usize>,
    pub selected_generator: String,
    pub gradient_norm: Option<f64>,
    pub bond_length: Option<f64>,
    pub p1: f64,
    pub ansatz: String,
    pub optimizer: String,
    pub seed: Option<u64>,
    pub energy_ha: Option<f64>,
    pub exact_e0_ha: Option<f64>,
    pub energy_error_ha: Option<f64>,
    pub fidelity: Option<f64>,
    pub n_params: Option<usize>,
    /// Fractional on averaged rows.
    #[serde(serialize_with = "count")]
    pub n_1q: Option<f64>,
    #[serde(serialize_with = "count")]
    pub n_cnot: Option<f64>,
    pub evaluations: Option<usize>,
    pub converged: Option<bool>,
    pub status: String,
    /// Semicolon-separated radians.
    pub parameters: String,
}

/// Columns shared by every row of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunContext {
    pub bond_length: Option<f64>,
    pub p1: f64,
    pub ansatz: String,
    pub optimizer: String,
    pub seed: Option<u64>,
}

/// Whole gate counts print as integers.
fn count<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) if x.fract() == 0.0 && x.abs() < 1e15 => s.serialize_some(&(*x as i64)),
        _ => v.serialize(s),
    }
}

pub fn join_parameters(params: &[f64]) -> String {
    params
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

impl RunRecord {
    pub fn blank(ctx: &RunContext, kind: &str) -> Self {
        RunRecord {
            kind: kind.into(),
            bond_length: ctx.bond_length,
            p1: ctx.p1,
            ansatz: ctx.ansatz.clone(),
            optimizer: ctx.optimizer.clone(),
            seed: ctx.seed,
            ..Default::default()
        }
    }

    pub fn from_result(ctx: &RunContext, kind: &str, r: &VqeResult) -> Self {
        RunRecord {
            energy_ha: Some(r.energy),
            exact_e0_ha: Some(r.exact_e0),
            energy_error_ha: Some(r.energy - r.exact_e0),
            fidelity: Some(r.fidelity),
            n_params: Some(r.parameters.len()),
            n_1q: Some(r.gate_counts.single_qubit as f64),
            n_cnot: Some(r.gate_counts.cnot as f64),
            evaluations: Some(r.evaluations),
            converged: Some(r.converged),
            status: r.status.clone(),
            parameters: join_parameters(&r.parameters),
            ..Self::blank(ctx, kind)
        }
    }

    /// Row recording a failed run.
    pub fn failure(ctx: &RunContext, kind: &str, message: &str) -> Self {
        RunRecord {
            converged: Some(false),
            status: format!("error: {message}"),
            ..Self::blank(ctx, kind)
        }
    }

    /// Mean over randomized-compilation runs. Parameters differ between
    /// runs and are not reported.
    pub fn mean(ctx: &RunContext, kind: &str, runs: &[VqeResult]) -> Self {
        let n = runs.len() as f64;
        let avg = |f: &dyn Fn(&VqeResult) -> f64| runs.iter().map(f).sum::<f64>() / n;
        let energy = avg(&|r| r.energy);
        let e0 = runs.first().map_or(f64::NAN, |r| r.exact_e0);
        RunRecord {
            energy_ha: Some(energy),
            exact_e0_ha: Some(e0),
            energy_error_ha: Some(energy - e0),
            fidelity: Some(avg(&|r| r.fidelity)),
            n_params: runs.first().map(|r| r.parameters.len()),
            n_1q: Some(avg(&|r| r.gate_counts.single_qubit as f64)),
            n_cnot: Some(avg(&|r| r.gate_counts.cnot as f64)),
            evaluations: Some(runs.iter().map(|r| r.evaluations).sum()),
            converged: Some(runs.iter().all(|r| r.converged)),
            status: format!("mean of {} randomized compilations", runs.len()),
            ..Self::blank(ctx, kind)
        }
    }
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(COLUMNS)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_matches_columns() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[RunRecord::default()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
        let mut empty = Vec::new();
        write_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim_end(), COLUMNS.join(","));
    }

    #[test]
    fn every_row_has_every_column() {
        let ctx = RunContext {
            bond_length: None,
            p1: 0.0,
            ansatz: "uccd".into(),
            optimizer: "cobyla".into(),
            seed: Some(0),
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &[RunRecord::failure(&ctx, "vqe", "boom, twice")]).unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        for row in rd.records() {
            assert_eq!(row.unwrap().len(), COLUMNS.len());
        }
    }

    #[test]
    fn parameters_joined() {
        assert_eq!(join_parameters(&[0.5, -1.25]), "0.5;-1.25");
        assert_eq!(join_parameters(&[]), "");
    }

    #[test]
    fn counts_print_as_integers_unless_averaged() {
        let rows = [
            RunRecord { n_1q: Some(11.0), n_cnot: Some(6.0), ..Default::default() },
            RunRecord { n_1q: Some(15.8), n_cnot: None, ..Default::default() },
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        let got: Vec<(String, String)> = rd
            .records()
            .map(|r| {
                let r = r.unwrap();
                (r[14].to_string(), r[15].to_string())
            })
            .collect();
        assert_eq!(got, vec![("11".into(), "6".into()), ("15.8".into(), "".into())]);
    }
}
