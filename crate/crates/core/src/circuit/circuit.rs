use std::fmt::Write as _;

use num_complex::Complex64;

use super::gate::{Angle, Gate, GateKind, Mat2};
use crate::error::{Error, Result};

/// Ordered gate list over `n_qubits`, with named parameter slots referenced
/// by rotation angles.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    slots: Vec<String>,
}

/// Tally of gates by arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub single_qubit: usize,
    pub cnot: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "a circuit needs at least one qubit");
        Self {
            n_qubits,
            gates: Vec::new(),
            slots: Vec::new(),
        }
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn slots(&self) -> &[String] {
        &self.slots
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }

    /// Declares a new parameter slot and returns its index.
    pub fn add_slot(&mut self, name: impl Into<String>) -> usize {
        self.slots.push(name.into());
        self.slots.len() - 1
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends the gates of `other`, which must have the same register and
    /// reference only slots declared here.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::Dimension(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        for g in &other.gates {
            self.push(*g)?;
        }
        Ok(())
    }

    fn check_gate(&self, gate: &Gate) -> Result<()> {
        let qubits = gate.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::Dimension(format!(
                "{} on qubit {q} outside a {}-qubit register",
                gate.kind(),
                self.n_qubits
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::Compilation(format!(
                "CNOT control and target coincide on qubit {}",
                qubits[0]
            )));
        }
        if let Some(Angle::Param { slot, .. }) = gate.angle() {
            if slot >= self.slots.len() {
                return Err(Error::Binding(format!("slot {slot} is not declared")));
            }
        }
        if let Gate::U1q(_, m) = gate {
            let err = m.unitarity_error();
            if err > 1e-12 {
                return Err(Error::Compilation(format!(
                    "U1Q matrix not unitary (error {err:e})"
                )));
            }
        }
        Ok(())
    }

    pub fn is_bound(&self) -> bool {
        self.gates.iter().all(Gate::is_bound)
    }

    /// Substitutes every slot; the result has no slots and only numeric angles.
    pub fn bind(&self, values: &[f64]) -> Result<Circuit> {
        if values.len() != self.slots.len() {
            return Err(Error::Binding(format!(
                "circuit declares {} slots, {} values given",
                self.slots.len(),
                values.len()
            )));
        }
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates: self
                .gates
                .iter()
                .map(|g| g.bind(values))
                .collect::<Result<_>>()?,
            slots: Vec::new(),
        })
    }

    pub fn gate_counts(&self) -> GateCounts {
        let cnot = self
            .gates
            .iter()
            .filter(|g| g.kind() == GateKind::Cnot)
            .count();
        GateCounts {
            single_qubit: self.gates.len() - cnot,
            cnot,
        }
    }

    /// One gate per line, `KIND q[,q2][,angle]`, preceded by `#` header
    /// lines for the register size and slot names.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# qubits: {}", self.n_qubits).unwrap();
        if !self.slots.is_empty() {
            writeln!(out, "# slots: {}", self.slots.join(" ")).unwrap();
        }
        for g in &self.gates {
            out.push_str(g.kind().name());
            match *g {
                Gate::Cnot { control, target } => write!(out, " {control},{target}").unwrap(),
                Gate::U1q(q, m) => {
                    write!(out, " {q},").unwrap();
                    let entries: Vec<String> = m
                        .0
                        .iter()
                        .flatten()
                        .map(|z| format!("{}:{}", z.re, z.im))
                        .collect();
                    out.push_str(&entries.join(";"));
                }
                _ => {
                    write!(out, " {}", g.qubits()[0]).unwrap();
                    match g.angle() {
                        Some(Angle::Value(v)) => write!(out, ",{v}").unwrap(),
                        Some(Angle::Param {
                            slot,
                            scale,
                            offset,
                        }) => write!(out, ",{scale}*{}+{offset}", self.slots[slot]).unwrap(),
                        None => {}
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut n_qubits = None;
        let mut slots: Vec<String> = Vec::new();
        let mut body = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("qubits:") {
                    n_qubits = Some(v.trim().parse::<usize>().map_err(|e| Error::Parse {
                        line: line_no,
                        message: format!("bad qubit count: {e}"),
                    })?);
                } else if let Some(v) = rest.strip_prefix("slots:") {
                    slots = v.split_whitespace().map(str::to_owned).collect();
                }
                continue;
            }
            if !line.is_empty() {
                body.push((line_no, line));
            }
        }
        let n_qubits = n_qubits.ok_or(Error::Parse {
            line: 0,
            message: "missing '# qubits:' header".into(),
        })?;
        let mut circuit = Circuit::new(n_qubits);
        for s in slots {
            circuit.add_slot(s);
        }
        for (line_no, line) in body {
            let gate = parse_gate(line, &circuit.slots).map_err(|message| Error::Parse {
                line: line_no,
                message,
            })?;
            circuit.push(gate).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        }
        Ok(circuit)
    }
}

fn parse_gate(line: &str, slots: &[String]) -> std::result::Result<Gate, String> {
    let (name, args) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| format!("malformed gate line '{line}'"))?;
    let kind = GateKind::from_name(name).ok_or_else(|| format!("unknown gate '{name}'"))?;
    let parts: Vec<&str> = args.trim().splitn(2, ',').collect();
    let qubit = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("bad qubit '{s}': {e}"));
    let q = qubit(parts[0])?;
    let angle = || -> std::result::Result<Angle, String> {
        let a = parts.get(1).ok_or("rotation needs an angle")?.trim();
        if let Ok(v) = a.parse::<f64>() {
            return Ok(Angle::Value(v));
        }
        let (scale, rest) = a.split_once('*').ok_or_else(|| format!("bad angle '{a}'"))?;
        let (name, offset) = rest.split_once('+').unwrap_or((rest, "0"));
        let slot = slots
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| format!("undeclared slot '{name}'"))?;
        Ok(Angle::Param {
            slot,
            scale: scale.parse().map_err(|e| format!("bad scale: {e}"))?,
            offset: offset.parse().map_err(|e| format!("bad offset: {e}"))?,
        })
    };
    Ok(match kind {
        GateKind::H => Gate::H(q),
        GateKind::X => Gate::X(q),
        GateKind::Y => Gate::Y(q),
        GateKind::Z => Gate::Z(q),
        GateKind::Rx => Gate::Rx(q, angle()?),
        GateKind::Ry => Gate::Ry(q, angle()?),
        GateKind::Rz => Gate::Rz(q, angle()?),
        GateKind::Cnot => Gate::cnot(q, qubit(parts.get(1).ok_or("CNOT needs a target")?)?),
        GateKind::U1q => {
            let body = parts.get(1).ok_or("U1Q needs a matrix")?;
            let entries: Vec<Complex64> = body
                .split(';')
                .map(|e| {
                    let (re, im) = e.split_once(':').ok_or_else(|| format!("bad entry '{e}'"))?;
                    Ok(Complex64::new(
                        re.trim().parse().map_err(|e| format!("{e}"))?,
                        im.trim().parse().map_err(|e| format!("{e}"))?,
                    ))
                })
                .collect::<std::result::Result<_, String>>()?;
            if entries.len() != 4 {
                return Err("U1Q needs four entries".into());
            }
            Gate::U1q(q, Mat2([[entries[0], entries[1]], [entries[2], entries[3]]]))
        }
    })
}
