use std::fmt::Write as _;

use crate::error::{invalid_arg, Error, Result};
use crate::simulator::{Gate, GateKind};

/// Labelled gate range `[start, end)` used for resource accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

/// Ordered gate list over `n_qubits`, with optional nested segments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    segments: Vec<Segment>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new(), segments: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate, growing the qubit count if needed.
    ///
    /// # Panics
    /// If the gate repeats a qubit.
    pub fn push(&mut self, gate: Gate) {
        let top = gate.controls().iter().copied().chain([gate.target()]).max().unwrap_or(0);
        self.n_qubits = self.n_qubits.max(top + 1);
        if let Err(e) = gate.validate(self.n_qubits) {
            panic!("malformed gate {gate:?}: {e}");
        }
        self.gates.push(gate);
    }

    /// Appends `other`, keeping its segments.
    pub fn append(&mut self, other: &Circuit) {
        let offset = self.gates.len();
        self.n_qubits = self.n_qubits.max(other.n_qubits);
        self.gates.extend_from_slice(&other.gates);
        self.segments.extend(other.segments.iter().map(|s| Segment {
            label: s.label.clone(),
            start: s.start + offset,
            end: s.end + offset,
        }));
    }

    /// Appends `other` wrapped in a segment called `label`.
    pub fn append_labeled(&mut self, label: impl Into<String>, other: &Circuit) {
        let start = self.gates.len();
        // Outer segment first so nested segments sort after it.
        self.segments.push(Segment { label: label.into(), start, end: start });
        let idx = self.segments.len() - 1;
        self.append(other);
        self.segments[idx].end = self.gates.len();
    }

    /// Opens a segment over everything pushed until [`Circuit::close_segment`].
    pub fn open_segment(&mut self, label: impl Into<String>) -> usize {
        let start = self.gates.len();
        self.segments.push(Segment { label: label.into(), start, end: start });
        self.segments.len() - 1
    }

    pub fn close_segment(&mut self, handle: usize) {
        self.segments[handle].end = self.gates.len();
    }

    /// Reversed circuit with every gate inverted. Segment labels toggle a `^dg` suffix.
    pub fn inverse(&self) -> Circuit {
        let len = self.gates.len();
        let gates = self.gates.iter().rev().map(Gate::inverse).collect();
        let mut segments: Vec<Segment> = self
            .segments
            .iter()
            .map(|s| Segment { label: dagger_label(&s.label), start: len - s.end, end: len - s.start })
            .collect();
        segments.sort_by(|a, b| a.start.cmp(&b.start).then(b.end.cmp(&a.end)));
        Circuit { n_qubits: self.n_qubits, gates, segments }
    }

    /// Gates inside the first segment labelled `label`.
    pub fn segment_gates(&self, label: &str) -> Option<&[Gate]> {
        self.segments.iter().find(|s| s.label == label).map(|s| &self.gates[s.start..s.end])
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    /// Line-oriented text form: `KIND target | controls | angle`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# qubits: {}", self.n_qubits);
        for s in &self.segments {
            let _ = writeln!(out, "# segment: {} {} {}", s.start, s.end, s.label);
        }
        for g in &self.gates {
            let controls: Vec<String> = g.controls().iter().map(|c| c.to_string()).collect();
            let angle = g.angle().map(|a| format!("{a:?}")).unwrap_or_default();
            let _ = writeln!(out, "{} {} | {} | {}", g.kind(), g.target(), controls.join(" "), angle);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut n_qubits = None;
        let mut segments = Vec::new();
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::Parse { line: lineno + 1, message };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("qubits:") {
                    n_qubits = Some(v.trim().parse::<usize>().map_err(|e| err(e.to_string()))?);
                } else if let Some(v) = rest.strip_prefix("segment:") {
                    let mut it = v.trim().splitn(3, ' ');
                    let start = it.next().unwrap_or("").parse::<usize>().map_err(|e| err(e.to_string()))?;
                    let end = it.next().unwrap_or("").parse::<usize>().map_err(|e| err(e.to_string()))?;
                    let label = it.next().unwrap_or("").to_string();
                    if end < start {
                        return Err(err("segment ends before it starts".into()));
                    }
                    segments.push(Segment { label, start, end });
                }
                continue;
            }
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(err(format!("expected 'KIND target | controls | angle', got '{line}'")));
            }
            let mut head = fields[0].split_whitespace();
            let kind_s = head.next().ok_or_else(|| err("missing gate kind".into()))?;
            let kind = GateKind::from_mnemonic(kind_s).ok_or_else(|| err(format!("unknown gate '{kind_s}'")))?;
            let target = head
                .next()
                .ok_or_else(|| err("missing target".into()))?
                .parse::<usize>()
                .map_err(|e| err(e.to_string()))?;
            if head.next().is_some() {
                return Err(err("gates take a single target".into()));
            }
            let controls = fields[1]
                .split_whitespace()
                .map(|c| c.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| err(e.to_string()))?;
            let angle = if fields[2].is_empty() {
                None
            } else {
                Some(fields[2].parse::<f64>().map_err(|e| err(e.to_string()))?)
            };
            let gate = Gate::from_parts(kind, target, &controls, angle).map_err(|e| err(e.to_string()))?;
            gates.push(gate);
        }
        let n_qubits = n_qubits.ok_or_else(|| invalid_arg("missing '# qubits:' header"))?;
        for g in &gates {
            g.validate(n_qubits)?;
        }
        if segments.iter().any(|s| s.end > gates.len()) {
            return Err(invalid_arg("segment extends past the last gate"));
        }
        Ok(Circuit { n_qubits, gates, segments })
    }
}

fn dagger_label(label: &str) -> String {
    match label.strip_suffix("^dg") {
        Some(base) => base.to_string(),
        None => format!("{label}^dg"),
    }
}
