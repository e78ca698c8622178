//! Python bindings for the cliffsynth Clifford compiler.
//!
//! All functions speak the crate's text formats, so circuits and operators
//! move across the boundary as plain strings: a symplectic matrix file is a
//! "rows cols" header plus 0/1 rows and an optional "phases ..." line, a
//! circuit file starts with "n <qubits>", and a stabilizer spec is
//! "n <count>" followed by signed Pauli strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cliffsynth::{
    canonical_form, compile, default_gate_count, minimal_phases, parse_symplectic_text,
    prep_state, random_circuit, rng_from_seed, Circuit, CnotSynth, CompileOptions, Error,
    F2Matrix, StabilizerStateSpec, SymplecticRep, Tableau,
};

/// Z_4 digits as a Python list of ints (Vec<u8> would convert to bytes).
fn phase_list(p: &[u8]) -> Vec<u32> {
    p.iter().map(|&x| u32::from(x)).collect()
}

fn to_py(e: Error) -> PyErr {
    match e {
        Error::VerificationFailed(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

enum InputKind {
    Matrix,
    Circuit,
    Spec,
}

fn sniff(text: &str) -> PyResult<InputKind> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = lines
        .next()
        .ok_or_else(|| PyValueError::new_err("empty input"))?;
    if first.starts_with(|c: char| c.is_ascii_digit()) {
        return Ok(InputKind::Matrix);
    }
    if first == "n" || first.starts_with("n ") || first.starts_with("n\t") {
        return match lines.next() {
            Some(l) if l.starts_with('+') || l.starts_with('-') => Ok(InputKind::Spec),
            _ => Ok(InputKind::Circuit),
        };
    }
    Err(PyValueError::new_err(
        "unrecognized input: expected a matrix, circuit, or stabilizer spec",
    ))
}

fn parse_matrix_target(text: &str) -> PyResult<(F2Matrix, Option<Vec<u8>>)> {
    let (s, phases) = parse_symplectic_text(text).map_err(to_py)?;
    if s.rows() != s.cols() || s.rows() % 2 != 0 {
        return Err(PyValueError::new_err(format!(
            "matrix is {}x{}, need square with even size",
            s.rows(),
            s.cols()
        )));
    }
    Ok((s, phases))
}

/// Target operator from matrix or circuit text, plus whether phases were
/// pinned by the caller or defaulted.
fn target_from_text(input: &str) -> PyResult<(SymplecticRep, bool)> {
    match sniff(input)? {
        InputKind::Matrix => {
            let (s, phases) = parse_matrix_target(input)?;
            let given = phases.is_some();
            let p = phases.unwrap_or_else(|| minimal_phases(&s));
            Ok((SymplecticRep::new(s, p).map_err(to_py)?, given))
        }
        InputKind::Circuit => {
            let c = Circuit::parse(input).map_err(to_py)?;
            Ok((Tableau::simulate(&c).to_rep(), true))
        }
        InputKind::Spec => Err(PyValueError::new_err(
            "input is a stabilizer spec; use prep_stabilizer",
        )),
    }
}

/// Compile a Clifford operator into its normal forms.
///
/// `input` is symplectic matrix text (optional "phases ..." line) or circuit
/// text; `form` is "one-cnot", "nine", or "both". Returns a dict of circuit
/// texts plus the achieved phase vector.
#[pyfunction]
#[pyo3(signature = (input, form = "both", pmh_block = 0))]
fn compile_clifford<'py>(
    py: Python<'py>,
    input: &str,
    form: &str,
    pmh_block: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let (want_one, want_nine) = match form {
        "one-cnot" => (true, false),
        "nine" => (false, true),
        "both" => (true, true),
        other => {
            return Err(PyValueError::new_err(format!(
                "form must be one-cnot, nine, or both, not {other:?}"
            )))
        }
    };
    let (rep, phases_given) = target_from_text(input)?;
    let opts = CompileOptions {
        cnot_synth: CnotSynth::Pmh { block: pmh_block },
    };
    let out = compile(&rep, &opts).map_err(to_py)?;

    let d = PyDict::new(py);
    d.set_item("n", out.n)?;
    d.set_item("phases_given", phases_given)?;
    d.set_item("achieved_phases", phase_list(&rep.p))?;
    if want_one {
        d.set_item("one_cnot_form", out.one_cnot_form.to_text())?;
        d.set_item("pauli_layer", out.pauli_layer.to_text())?;
        d.set_item("exact_circuit", out.exact_circuit().to_text())?;
    }
    if want_nine {
        d.set_item("nine_form", out.nine_form.to_text())?;
        d.set_item("nine_phases", phase_list(&out.nine_phases))?;
    }
    Ok(d)
}

/// Preparation circuits for the stabilizer state described by `spec` text.
/// Returns {"n", "cz_circuit", "cx_circuit"}.
#[pyfunction]
#[pyo3(signature = (spec, pmh_block = 0))]
fn prep_stabilizer<'py>(
    py: Python<'py>,
    spec: &str,
    pmh_block: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let parsed = StabilizerStateSpec::parse(spec).map_err(to_py)?;
    let opts = CompileOptions {
        cnot_synth: CnotSynth::Pmh { block: pmh_block },
    };
    let prepared = prep_state(&parsed, &opts).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("n", prepared.n)?;
    d.set_item("cz_circuit", prepared.cz_circuit.to_text())?;
    d.set_item("cx_circuit", prepared.cx_circuit.to_text())?;
    Ok(d)
}

/// Phase-exact simulation of circuit text; returns the operator as
/// symplectic matrix text with a "phases ..." line.
#[pyfunction]
fn simulate(circuit: &str) -> PyResult<String> {
    let c = Circuit::parse(circuit).map_err(to_py)?;
    Ok(Tableau::simulate(&c).to_rep().to_text())
}

/// Check a circuit against a target: matrix text (phases compared only when
/// the line is present), circuit text (phase-exact), or stabilizer spec text
/// (the circuit must prepare that state from |0..0>). Dimension mismatches
/// raise; a wrong answer returns False.
#[pyfunction]
fn verify(target: &str, circuit: &str) -> PyResult<bool> {
    let circ = Circuit::parse(circuit).map_err(to_py)?;
    let got = Tableau::simulate(&circ).to_rep();
    match sniff(target)? {
        InputKind::Spec => {
            let spec = StabilizerStateSpec::parse(target).map_err(to_py)?;
            if spec.n != circ.n {
                return Err(PyValueError::new_err(format!(
                    "spec has {} qubits, circuit has {}",
                    spec.n, circ.n
                )));
            }
            let prepared = Tableau::simulate(&circ).zero_state_stabilizers();
            Ok(canonical_form(&spec.gens) == canonical_form(&prepared))
        }
        InputKind::Matrix => {
            let (s, phases) = parse_matrix_target(target)?;
            if s.rows() != 2 * circ.n {
                return Err(PyValueError::new_err(format!(
                    "target acts on {} qubits, circuit on {}",
                    s.rows() / 2,
                    circ.n
                )));
            }
            if !s.is_symplectic() {
                return Err(PyValueError::new_err("target matrix is not symplectic"));
            }
            Ok(got.s == s && phases.map_or(true, |p| got.p == p))
        }
        InputKind::Circuit => {
            let want = Circuit::parse(target).map_err(to_py)?;
            if want.n != circ.n {
                return Err(PyValueError::new_err(format!(
                    "target circuit has {} qubits, candidate has {}",
                    want.n, circ.n
                )));
            }
            Ok(Tableau::simulate(&want).to_rep() == got)
        }
    }
}

/// Synthesize a CNOT circuit for invertible matrix text. `method` is "pmh"
/// (block 0 picks the default width) or "gauss".
#[pyfunction]
#[pyo3(signature = (matrix, block = 0, method = "pmh"))]
fn synth_cnot(matrix: &str, block: usize, method: &str) -> PyResult<String> {
    let m = F2Matrix::parse(matrix).map_err(to_py)?;
    if m.rows() != m.cols() {
        return Err(PyValueError::new_err(format!(
            "matrix is {}x{}, need square",
            m.rows(),
            m.cols()
        )));
    }
    let circ = match method {
        "pmh" => cliffsynth::synth_cnot_pmh(&m, block),
        "gauss" => cliffsynth::synth_cnot_gauss(&m),
        other => {
            return Err(PyValueError::new_err(format!(
                "method must be pmh or gauss, not {other:?}"
            )))
        }
    }
    .map_err(to_py)?;
    let back = cliffsynth::cnot_circuit_matrix(&circ).map_err(to_py)?;
    if back != m {
        return Err(PyRuntimeError::new_err(
            "verification failed: synthesized circuit does not implement the matrix",
        ));
    }
    Ok(circ.to_text())
}

/// Deterministic random Clifford instance: returns {"circuit", "symplectic"}
/// where the symplectic text (with phases) is the simulated operator of the
/// circuit text.
#[pyfunction]
#[pyo3(signature = (n, gates = None, seed = 1))]
fn random_clifford<'py>(
    py: Python<'py>,
    n: usize,
    gates: Option<usize>,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    if n == 0 {
        return Err(PyValueError::new_err("qubit count must be positive"));
    }
    let gates = gates.unwrap_or_else(|| default_gate_count(n));
    let mut rng = rng_from_seed(seed);
    let circ = random_circuit(n, gates, &mut rng);
    let rep = Tableau::simulate(&circ).to_rep();
    let d = PyDict::new(py);
    d.set_item("n", n)?;
    d.set_item("circuit", circ.to_text())?;
    d.set_item("symplectic", rep.to_text())?;
    Ok(d)
}

#[pymodule]
fn cliffsynth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(compile_clifford, m)?)?;
    m.add_function(wrap_pyfunction!(prep_stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(synth_cnot, m)?)?;
    m.add_function(wrap_pyfunction!(random_clifford, m)?)?;
    Ok(())
}
