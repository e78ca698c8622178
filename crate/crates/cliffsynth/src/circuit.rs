//! Gate-list circuit IR with tagged segments.

use crate::error::{Error, Result};
use std::fmt;

/// One Clifford gate. CNOT carries (control, target); CZ is symmetric but
/// stores the pair as given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    P(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::P(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => (q, None),
            Gate::Cnot(a, b) | Gate::Cz(a, b) => (a, Some(b)),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot(..) | Gate::Cz(..))
    }

    fn check(&self, n: usize) -> Result<()> {
        let (a, b) = self.qubits();
        if a >= n || b.is_some_and(|b| b >= n) {
            return Err(Error::InvalidCircuit(format!(
                "gate {self:?} out of range for {n} qubits"
            )));
        }
        if let Some(b) = b {
            if a == b {
                return Err(Error::InvalidCircuit(format!(
                    "two-qubit gate {self:?} with repeated qubit"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::P(q) => write!(f, "P {q}"),
            Gate::X(q) => write!(f, "X {q}"),
            Gate::Y(q) => write!(f, "Y {q}"),
            Gate::Z(q) => write!(f, "Z {q}"),
            Gate::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
        }
    }
}

/// Segment tags partition a circuit into structural layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentTag {
    Cx,
    Cz,
    P,
    H,
    HAll,
    PAll,
    Pauli,
    F,
}

impl SegmentTag {
    pub fn name(&self) -> &'static str {
        match self {
            SegmentTag::Cx => "CX",
            SegmentTag::Cz => "CZ",
            SegmentTag::P => "P",
            SegmentTag::H => "H",
            SegmentTag::HAll => "H_all",
            SegmentTag::PAll => "P_all",
            SegmentTag::Pauli => "PAULI",
            SegmentTag::F => "F",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "CX" => SegmentTag::Cx,
            "CZ" => SegmentTag::Cz,
            "P" => SegmentTag::P,
            "H" => SegmentTag::H,
            "H_all" => SegmentTag::HAll,
            "P_all" => SegmentTag::PAll,
            "PAULI" => SegmentTag::Pauli,
            "F" => SegmentTag::F,
            _ => return None,
        })
    }

    fn allows(&self, gate: &Gate) -> bool {
        match self {
            SegmentTag::Cx => matches!(gate, Gate::Cnot(..)),
            SegmentTag::Cz => matches!(gate, Gate::Cz(..)),
            SegmentTag::P | SegmentTag::PAll => matches!(gate, Gate::P(_)),
            SegmentTag::H | SegmentTag::HAll => matches!(gate, Gate::H(_)),
            SegmentTag::Pauli => matches!(gate, Gate::X(_) | Gate::Y(_) | Gate::Z(_)),
            SegmentTag::F => !gate.is_two_qubit(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub tag: SegmentTag,
    pub start: usize,
    pub end: usize,
}

/// Gate list plus an optional ordered segment partition. A circuit is either
/// untagged (no segments) or fully partitioned into contiguous segments.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n: usize,
    gates: Vec<Gate>,
    segments: Vec<Segment>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            segments: Vec::new(),
        }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_gates(&self, i: usize) -> &[Gate] {
        let s = self.segments[i];
        &self.gates[s.start..s.end]
    }

    pub fn segment_tags(&self) -> Vec<SegmentTag> {
        self.segments.iter().map(|s| s.tag).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    /// Append a gate to an untagged circuit.
    pub fn push(&mut self, gate: Gate) {
        assert!(
            self.segments.is_empty(),
            "push only applies to untagged circuits; use push_segment"
        );
        self.gates.push(gate);
    }

    /// Append a tagged segment (possibly empty).
    pub fn push_segment(&mut self, tag: SegmentTag, gates: impl IntoIterator<Item = Gate>) {
        assert!(
            self.segments.is_empty() || self.segments.last().unwrap().end == self.gates.len(),
            "segments must stay contiguous"
        );
        assert!(
            self.segments.len() > 0 || self.gates.is_empty(),
            "cannot mix untagged gates with segments"
        );
        let start = self.gates.len();
        self.gates.extend(gates);
        let end = self.gates.len();
        self.segments.push(Segment { tag, start, end });
    }

    /// Structural validity: gates in range, segments (when present) form an
    /// ordered partition, each segment holds only its tag's gate kinds, and
    /// all-qubit layers cover every qubit exactly once.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            g.check(self.n)?;
        }
        if self.segments.is_empty() {
            return Ok(());
        }
        let mut at = 0;
        for seg in &self.segments {
            if seg.start != at || seg.end < seg.start || seg.end > self.gates.len() {
                return Err(Error::InvalidCircuit(
                    "segments do not partition the gate list".into(),
                ));
            }
            at = seg.end;
            for g in &self.gates[seg.start..seg.end] {
                if !seg.tag.allows(g) {
                    return Err(Error::InvalidCircuit(format!(
                        "gate {g} not allowed in segment {}",
                        seg.tag.name()
                    )));
                }
            }
            if matches!(seg.tag, SegmentTag::HAll | SegmentTag::PAll) {
                let mut seen = vec![false; self.n];
                for g in &self.gates[seg.start..seg.end] {
                    let (q, _) = g.qubits();
                    if seen[q] {
                        return Err(Error::InvalidCircuit(format!(
                            "{} visits qubit {q} twice",
                            seg.tag.name()
                        )));
                    }
                    seen[q] = true;
                }
                if seg.end - seg.start != self.n {
                    return Err(Error::InvalidCircuit(format!(
                        "{} must have exactly one gate per qubit",
                        seg.tag.name()
                    )));
                }
            }
        }
        if at != self.gates.len() {
            return Err(Error::InvalidCircuit(
                "segments do not cover the gate list".into(),
            ));
        }
        Ok(())
    }

    /// Concatenation: self runs first, then other. Segment lists are joined
    /// when both sides are tagged (or both untagged and the result stays
    /// untagged); mixing tagged and untagged circuits drops the tags.
    pub fn concat(&self, other: &Circuit) -> Circuit {
        assert_eq!(self.n, other.n, "qubit count mismatch in concat");
        let mut out = Circuit::new(self.n);
        out.gates.extend_from_slice(&self.gates);
        out.gates.extend_from_slice(&other.gates);
        let both_tagged = (self.segments.len() > 0 || self.gates.is_empty())
            && (other.segments.len() > 0 || other.gates.is_empty());
        if both_tagged {
            out.segments.extend_from_slice(&self.segments);
            let off = self.gates.len();
            out.segments.extend(other.segments.iter().map(|s| Segment {
                tag: s.tag,
                start: s.start + off,
                end: s.end + off,
            }));
        }
        out
    }

    /// Reverse the gate order of a CNOT-only circuit; since every CNOT is an
    /// involution the result implements the inverse linear map.
    pub fn reverse_cnot_segment(&self) -> Result<Circuit> {
        if !self.gates.iter().all(|g| matches!(g, Gate::Cnot(..))) {
            return Err(Error::InvalidCircuit(
                "reverse_cnot_segment expects a CNOT-only circuit".into(),
            ));
        }
        let mut out = Circuit::new(self.n);
        let gates: Vec<Gate> = self.gates.iter().rev().copied().collect();
        if self.segments.is_empty() {
            out.gates = gates;
        } else {
            out.push_segment(SegmentTag::Cx, gates);
        }
        Ok(out)
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        let mut level = vec![0usize; self.n];
        for g in &self.gates {
            match g {
                Gate::H(_) => c.h += 1,
                Gate::P(_) => c.p += 1,
                Gate::X(_) => c.x += 1,
                Gate::Y(_) => c.y += 1,
                Gate::Z(_) => c.z += 1,
                Gate::Cnot(..) => c.cnot += 1,
                Gate::Cz(..) => c.cz += 1,
            }
            let (a, b) = g.qubits();
            let l = match b {
                Some(b) => level[a].max(level[b]) + 1,
                None => level[a] + 1,
            };
            level[a] = l;
            if let Some(b) = b {
                level[b] = l;
            }
            c.depth = c.depth.max(l);
        }
        c.total = self.gates.len();
        c.two_qubit = c.cnot + c.cz;
        c
    }

    /// Gate count of the first segment with the given tag, if any.
    pub fn segment_len(&self, tag: SegmentTag) -> Option<usize> {
        self.segments
            .iter()
            .find(|s| s.tag == tag)
            .map(|s| s.end - s.start)
    }

    /// Text serialization; round-trips bit-exactly through `parse`.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        if self.segments.is_empty() {
            for g in &self.gates {
                out.push_str(&g.to_string());
                out.push('\n');
            }
        } else {
            for seg in &self.segments {
                out.push_str(&format!("# segment {}\n", seg.tag.name()));
                for g in &self.gates[seg.start..seg.end] {
                    out.push_str(&g.to_string());
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut circ: Option<Circuit> = None;
        let mut tagged = false;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(tagname) = rest.strip_prefix("segment ") {
                    let c = circ
                        .as_mut()
                        .ok_or_else(|| Error::parse(ln, "segment before header"))?;
                    let tag = SegmentTag::from_name(tagname.trim())
                        .ok_or_else(|| Error::parse(ln, format!("unknown tag {tagname:?}")))?;
                    if !tagged && !c.gates.is_empty() {
                        return Err(Error::parse(ln, "segment after untagged gates"));
                    }
                    tagged = true;
                    let at = c.gates.len();
                    if let Some(last) = c.segments.last_mut() {
                        last.end = at;
                    }
                    c.segments.push(Segment {
                        tag,
                        start: at,
                        end: at,
                    });
                }
                continue; // other comments ignored
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap();
            if circ.is_none() {
                if head != "n" {
                    return Err(Error::parse(ln, "expected 'n <qubits>' header"));
                }
                let n: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(ln, "bad qubit count"))?;
                if toks.next().is_some() {
                    return Err(Error::parse(ln, "trailing tokens in header"));
                }
                circ = Some(Circuit::new(n));
                continue;
            }
            let c = circ.as_mut().unwrap();
            let arg = |toks: &mut dyn Iterator<Item = &str>| -> Result<usize> {
                toks.next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(ln, "bad qubit index"))
            };
            let gate = match head {
                "H" => Gate::H(arg(&mut toks)?),
                "P" => Gate::P(arg(&mut toks)?),
                "X" => Gate::X(arg(&mut toks)?),
                "Y" => Gate::Y(arg(&mut toks)?),
                "Z" => Gate::Z(arg(&mut toks)?),
                "CNOT" => Gate::Cnot(arg(&mut toks)?, arg(&mut toks)?),
                "CZ" => Gate::Cz(arg(&mut toks)?, arg(&mut toks)?),
                _ => return Err(Error::parse(ln, format!("unknown gate {head:?}"))),
            };
            if toks.next().is_some() {
                return Err(Error::parse(ln, "trailing tokens after gate"));
            }
            c.gates.push(gate);
        }
        let mut c = circ.ok_or_else(|| Error::parse(0, "missing circuit header"))?;
        if let Some(last) = c.segments.last_mut() {
            last.end = c.gates.len();
        }
        c.validate()?;
        Ok(c)
    }

    /// OpenQASM 2.0 export; P maps to the s gate.
    pub fn to_qasm(&self) -> String {
        let mut out = String::new();
        out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        out.push_str(&format!("qreg q[{}];\n", self.n));
        for g in &self.gates {
            let line = match *g {
                Gate::H(q) => format!("h q[{q}];"),
                Gate::P(q) => format!("s q[{q}];"),
                Gate::X(q) => format!("x q[{q}];"),
                Gate::Y(q) => format!("y q[{q}];"),
                Gate::Z(q) => format!("z q[{q}];"),
                Gate::Cnot(c, t) => format!("cx q[{c}],q[{t}];"),
                Gate::Cz(a, b) => format!("cz q[{a}],q[{b}];"),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Per-kind gate tallies plus greedy ASAP depth.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub h: usize,
    pub p: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub cnot: usize,
    pub cz: usize,
    pub two_qubit: usize,
    pub total: usize,
    pub depth: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut c = Circuit::new(3);
        c.push_segment(SegmentTag::Cx, [Gate::Cnot(0, 1), Gate::Cnot(2, 1)]);
        c.push_segment(SegmentTag::Cz, [Gate::Cz(0, 2)]);
        c.push_segment(SegmentTag::P, [Gate::P(1)]);
        c.push_segment(SegmentTag::HAll, [Gate::H(0), Gate::H(1), Gate::H(2)]);
        c.push_segment(SegmentTag::Cz, []);
        c.push_segment(SegmentTag::P, []);
        c.push_segment(SegmentTag::H, [Gate::H(1)]);
        c
    }

    #[test]
    fn round_trip_text() {
        let c = sample();
        c.validate().unwrap();
        let text = c.to_text();
        let back = Circuit::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
        // untagged circuits round-trip too
        let mut u = Circuit::new(2);
        u.push(Gate::H(0));
        u.push(Gate::Cnot(0, 1));
        let back = Circuit::parse(&u.to_text()).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Circuit::parse("H 0\n").is_err()); // missing header
        assert!(Circuit::parse("n 2\nQ 0\n").is_err());
        assert!(Circuit::parse("n 2\nH 5\n").is_err()); // out of range
        assert!(Circuit::parse("n 2\nCNOT 1 1\n").is_err());
        assert!(Circuit::parse("n 2\nH 0 1\n").is_err());
        assert!(Circuit::parse("n 2\n# segment NOPE\n").is_err());
    }

    #[test]
    fn validate_all_layers() {
        let mut c = Circuit::new(2);
        c.push_segment(SegmentTag::HAll, [Gate::H(0)]);
        assert!(c.validate().is_err()); // one gate missing
        let mut c = Circuit::new(2);
        c.push_segment(SegmentTag::PAll, [Gate::P(0), Gate::P(0)]);
        assert!(c.validate().is_err()); // duplicate qubit
        let mut c = Circuit::new(2);
        c.push_segment(SegmentTag::Cx, [Gate::Cz(0, 1)]);
        assert!(c.validate().is_err()); // wrong kind for tag
    }

    #[test]
    fn counts_and_depth() {
        let c = sample();
        let k = c.counts();
        assert_eq!(k.cnot, 2);
        assert_eq!(k.cz, 1);
        assert_eq!(k.two_qubit, 3);
        assert_eq!(k.h, 4);
        assert_eq!(k.p, 1);
        assert_eq!(k.total, 8);
        // by hand: CNOT01 | CNOT21+CZ02 | P1,H0,H2 | H1 | H1 again
        // layers: cnot(0,1)=1; cnot(2,1)=2; cz(0,2)=3; p(1)=3; h(0)=4 h(1)=4 h(2)=4; h(1)=5
        assert_eq!(k.depth, 5);
        assert_eq!(Circuit::new(4).counts().depth, 0);
    }

    #[test]
    fn concat_and_reverse() {
        let a = sample();
        let b = sample();
        let ab = a.concat(&b);
        ab.validate().unwrap();
        assert_eq!(ab.len(), a.len() + b.len());
        assert_eq!(ab.segments().len(), 14);

        let mut cx = Circuit::new(3);
        cx.push_segment(SegmentTag::Cx, [Gate::Cnot(0, 1), Gate::Cnot(1, 2)]);
        let rev = cx.reverse_cnot_segment().unwrap();
        assert_eq!(rev.gates(), &[Gate::Cnot(1, 2), Gate::Cnot(0, 1)]);
        assert!(sample().reverse_cnot_segment().is_err());
    }

    #[test]
    fn qasm_export() {
        let mut c = Circuit::new(2);
        c.push(Gate::H(0));
        c.push(Gate::P(1));
        c.push(Gate::Cnot(0, 1));
        let q = c.to_qasm();
        assert!(q.starts_with("OPENQASM 2.0;"));
        assert!(q.contains("qreg q[2];"));
        assert!(q.contains("h q[0];"));
        assert!(q.contains("s q[1];"));
        assert!(q.contains("cx q[0],q[1];"));
    }
}
