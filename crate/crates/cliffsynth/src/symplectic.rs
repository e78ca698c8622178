//! Symplectic representation of Clifford operators.
//!
//! An n-qubit Clifford U is captured (up to global phase) by a 2n x 2n
//! symplectic matrix S over GF(2) together with a phase vector p in Z_4^2n.
//! Column i of S is the (X..X|Z..Z) bit vector of U g_i U^dag where g_i is
//! X_i for i < n and Z_{i-n} otherwise; p_i is the power of the i prefactor
//! of that image.

use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticRep {
    pub n: usize,
    pub s: F2Matrix,
    pub p: Vec<u8>,
}

impl SymplecticRep {
    /// Validating constructor: s must be symplectic and p a Z_4 vector of
    /// length 2n.
    pub fn new(s: F2Matrix, p: Vec<u8>) -> Result<Self> {
        if !s.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        let n = s.rows() / 2;
        if p.len() != 2 * n || p.iter().any(|&x| x > 3) {
            return Err(Error::InvalidPhaseVector);
        }
        Ok(SymplecticRep { n, s, p })
    }

    pub(crate) fn from_parts_unchecked(s: F2Matrix, p: Vec<u8>) -> Self {
        let n = s.rows() / 2;
        SymplecticRep { n, s, p }
    }

    pub fn identity(n: usize) -> Self {
        SymplecticRep {
            n,
            s: F2Matrix::identity(2 * n),
            p: vec![0; 2 * n],
        }
    }

    pub fn blocks(&self) -> BlockView<'_> {
        BlockView {
            m: &self.s,
            n: self.n,
        }
    }

    /// Apply `gate` after U (left multiplication by the gate symplectic);
    /// row operations on s. Phase tracking is delegated to the stabilizer
    /// simulator, so p is left untouched here.
    pub fn apply_left(&mut self, gate: &Gate) -> Result<()> {
        apply_left_rows(&mut self.s, self.n, gate)
    }

    /// Apply `gate` before U (right multiplication); column operations on s.
    /// As with apply_left, p is not tracked.
    pub fn apply_right(&mut self, gate: &Gate) -> Result<()> {
        apply_right_cols(&mut self.s, self.n, gate)
    }

    /// Text form: the matrix in F2Matrix format followed by a line
    /// "phases <d ...>" with one Z_4 digit per column.
    pub fn to_text(&self) -> String {
        let digits: Vec<String> = self.p.iter().map(u8::to_string).collect();
        format!("{}phases {}\n", self.s, digits.join(" "))
    }

    /// Parse the to_text format. A missing phases line defaults to the
    /// minimal Hermiticity-forced phase vector for the matrix.
    pub fn parse(text: &str) -> Result<Self> {
        let (s, phases) = parse_symplectic_text(text)?;
        if s.rows() != s.cols() || s.rows() % 2 != 0 {
            return Err(Error::parse(
                1,
                format!(
                    "matrix is {}x{}, need square with even size",
                    s.rows(),
                    s.cols()
                ),
            ));
        }
        let p = phases.unwrap_or_else(|| minimal_phases(&s));
        SymplecticRep::new(s, p)
    }
}

/// Borrowed view of the four n x n quadrants of a 2n x 2n matrix.
pub struct BlockView<'a> {
    m: &'a F2Matrix,
    n: usize,
}

impl BlockView<'_> {
    pub fn a(&self) -> F2Matrix {
        self.m.block(0, 0, self.n, self.n)
    }
    pub fn b(&self) -> F2Matrix {
        self.m.block(0, self.n, self.n, self.n)
    }
    pub fn c(&self) -> F2Matrix {
        self.m.block(self.n, 0, self.n, self.n)
    }
    pub fn d(&self) -> F2Matrix {
        self.m.block(self.n, self.n, self.n, self.n)
    }
}

/// Row operations for a gate applied after the operator.
pub(crate) fn apply_left_rows(s: &mut F2Matrix, n: usize, gate: &Gate) -> Result<()> {
    match *gate {
        Gate::H(q) => s.swap_rows(q, q + n),
        Gate::P(q) => s.row_xor(q + n, q),
        Gate::Cnot(c, t) => {
            s.row_xor(t, c);
            s.row_xor(c + n, t + n);
        }
        _ => {
            return Err(Error::InvalidCircuit(format!(
                "unsupported gate kind for symplectic row action: {gate:?}"
            )))
        }
    }
    Ok(())
}

/// Column operations for a gate applied before the operator.
pub(crate) fn apply_right_cols(s: &mut F2Matrix, n: usize, gate: &Gate) -> Result<()> {
    match *gate {
        Gate::H(q) => s.swap_cols(q, q + n),
        Gate::P(q) => s.col_xor(q, q + n),
        Gate::Cnot(c, t) => {
            s.col_xor(c, t);
            s.col_xor(t + n, c + n);
        }
        _ => {
            return Err(Error::InvalidCircuit(format!(
                "unsupported gate kind for symplectic column action: {gate:?}"
            )))
        }
    }
    Ok(())
}

/// Symplectic matrix and phase vector of a single gate embedded in n qubits.
pub fn gate_rep(gate: &Gate, n: usize) -> SymplecticRep {
    let mut s = F2Matrix::identity(2 * n);
    let mut p = vec![0u8; 2 * n];
    match *gate {
        Gate::H(q) => s.swap_cols(q, q + n),
        Gate::P(q) => {
            // image of X_q is i X_q Z_q
            s.set(q + n, q, true);
            p[q] = 1;
        }
        Gate::Cnot(c, t) => {
            s.set(t, c, true); // X_c -> X_c X_t
            s.set(c + n, t + n, true); // Z_t -> Z_c Z_t
        }
        Gate::Cz(a, b) => {
            s.set(b + n, a, true); // X_a -> X_a Z_b
            s.set(a + n, b, true); // X_b -> Z_a X_b
        }
        Gate::X(q) => p[q + n] = 2, // Z_q -> -Z_q
        Gate::Z(q) => p[q] = 2,     // X_q -> -X_q
        Gate::Y(q) => {
            p[q] = 2;
            p[q + n] = 2;
        }
    }
    SymplecticRep { n, s, p }
}

/// s-part of the composition U2 ∘ U1 (U1 first). Phase composition is done
/// by the stabilizer simulator, not here.
pub fn compose(u2: &SymplecticRep, u1: &SymplecticRep) -> F2Matrix {
    assert_eq!(u2.n, u1.n, "qubit count mismatch");
    u2.s.mul(&u1.s)
}

/// [[m, 0], [0, m^-T]]: the symplectic matrix of the CNOT circuit
/// implementing the invertible matrix m.
pub fn cnot_block_rep(m: &F2Matrix) -> Result<SymplecticRep> {
    let s = cnot_block_matrix(m)?;
    let n = m.rows();
    Ok(SymplecticRep {
        n,
        s,
        p: vec![0; 2 * n],
    })
}

pub(crate) fn cnot_block_matrix(m: &F2Matrix) -> Result<F2Matrix> {
    assert_eq!(m.rows(), m.cols(), "cnot block needs a square matrix");
    let n = m.rows();
    let mit = m.invert().ok_or(Error::Singular)?.transpose();
    let mut s = F2Matrix::zeros(2 * n, 2 * n);
    s.set_block(0, 0, m);
    s.set_block(n, n, &mit);
    Ok(s)
}

/// Symplectic inner product <u, v> = u_x . v_z + u_z . v_x over GF(2),
/// i.e. 1 iff the corresponding Paulis anticommute. Both vectors have
/// length 2n in (X|Z) layout.
pub fn symplectic_dot(u: &F2Vector, v: &F2Vector) -> bool {
    let len = u.len();
    assert_eq!(len, v.len());
    assert_eq!(len % 2, 0);
    let n = len / 2;
    let mut acc = false;
    for i in 0..n {
        acc ^= (u.get(i) && v.get(i + n)) ^ (u.get(i + n) && v.get(i));
    }
    acc
}

/// Split symplectic text into its matrix and optional phase vector. The
/// phase line is either prefixed with "phases" or a bare final line of
/// space-separated Z_4 digits; every other line belongs to the matrix.
pub fn parse_symplectic_text(text: &str) -> Result<(F2Matrix, Option<Vec<u8>>)> {
    let mut matrix_lines: Vec<&str> = Vec::new();
    let mut phases = None;
    for (idx, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("phases") {
            phases = Some(parse_phase_tokens(rest, idx + 1)?);
        } else {
            matrix_lines.push(line);
        }
    }
    match (F2Matrix::parse(&matrix_lines.join("\n")), phases) {
        (Ok(m), p) => Ok((m, p)),
        (Err(e), Some(_)) => Err(e),
        (Err(e), None) => {
            // the matrix alone does not parse; a bare trailing digit line
            // (at least two tokens, so it cannot be the size header) may be
            // the phase vector
            let Some(last) = matrix_lines.iter().rposition(|l| !l.trim().is_empty()) else {
                return Err(e);
            };
            let toks: Vec<&str> = matrix_lines[last].split_whitespace().collect();
            if toks.len() < 2 || !toks.iter().all(|t| matches!(*t, "0" | "1" | "2" | "3")) {
                return Err(e);
            }
            let p = toks.iter().map(|t| t.parse::<u8>().unwrap()).collect();
            let m = F2Matrix::parse(&matrix_lines[..last].join("\n")).map_err(|_| e)?;
            Ok((m, Some(p)))
        }
    }
}

fn parse_phase_tokens(rest: &str, line_no: usize) -> Result<Vec<u8>> {
    rest.split_whitespace()
        .map(|tok| match tok {
            "0" => Ok(0u8),
            "1" => Ok(1),
            "2" => Ok(2),
            "3" => Ok(3),
            _ => Err(Error::parse(line_no, format!("bad phase entry {tok:?}"))),
        })
        .collect()
}

/// Phase vector with the Hermiticity-forced parity and nothing more: p_i is
/// the parity of the Y count of column i.
pub fn minimal_phases(s: &F2Matrix) -> Vec<u8> {
    let n = s.rows() / 2;
    (0..2 * n)
        .map(|i| {
            let col = s.col(i);
            ((0..n).filter(|&q| col.get(q) && col.get(n + q)).count() % 2) as u8
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_of(gates: &[Gate], n: usize) -> F2Matrix {
        // fold gate symplectics by left multiplication (later gate on the left)
        let mut s = F2Matrix::identity(2 * n);
        for g in gates {
            s = gate_rep(g, n).s.mul(&s);
        }
        s
    }

    #[test]
    fn single_qubit_gate_matrices() {
        let h = gate_rep(&Gate::H(0), 1);
        assert_eq!(h.s, F2Matrix::from_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(h.p, vec![0, 0]);
        let p = gate_rep(&Gate::P(0), 1);
        assert_eq!(p.s, F2Matrix::from_rows(&[&[1, 0], &[1, 1]]));
        assert_eq!(p.p, vec![1, 0]);
    }

    #[test]
    fn cnot_matrix() {
        let c = gate_rep(&Gate::Cnot(0, 1), 2);
        let expect = F2Matrix::from_rows(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[0, 0, 1, 1],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(c.s, expect);
        assert!(c.s.is_symplectic());
        assert_eq!(c.p, vec![0; 4]);
    }

    #[test]
    fn cz_matrix_is_symmetric_gamma() {
        let c = gate_rep(&Gate::Cz(0, 1), 2);
        // lower-left block e0 e1^T + e1 e0^T, identity elsewhere
        let expect = F2Matrix::from_rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 1, 1, 0],
            &[1, 0, 0, 1],
        ]);
        assert_eq!(c.s, expect);
        assert!(c.s.is_symplectic());
    }

    #[test]
    fn compose_h_then_cnot() {
        // H on qubit 0, then CNOT(0 -> 1); product worked out by hand
        let u1 = gate_rep(&Gate::H(0), 2);
        let u2 = gate_rep(&Gate::Cnot(0, 1), 2);
        let s = compose(&u2, &u1);
        let expect = F2Matrix::from_rows(&[
            &[0, 0, 1, 0],
            &[0, 1, 1, 0],
            &[1, 0, 0, 1],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(s, expect);
        assert!(s.is_symplectic());
    }

    #[test]
    fn apply_left_matches_multiplication() {
        let gates = [
            Gate::H(0),
            Gate::P(1),
            Gate::Cnot(0, 2),
            Gate::Cnot(2, 1),
            Gate::H(2),
            Gate::P(0),
        ];
        let n = 3;
        let mut rep = SymplecticRep::identity(n);
        // seed with something non-trivial
        let seed = [Gate::Cnot(1, 0), Gate::H(1), Gate::P(2)];
        for g in &seed {
            rep.apply_left(g).unwrap();
        }
        assert_eq!(rep.s, s_of(&seed, n));
        for g in &gates {
            let before = rep.s.clone();
            rep.apply_left(g).unwrap();
            assert_eq!(rep.s, gate_rep(g, n).s.mul(&before));
            assert!(rep.s.is_symplectic());
        }
    }

    #[test]
    fn apply_right_matches_multiplication() {
        let n = 3;
        let mut rep = SymplecticRep::identity(n);
        let seed = [Gate::Cnot(1, 0), Gate::H(1), Gate::P(2)];
        for g in &seed {
            rep.apply_left(g).unwrap();
        }
        for g in [Gate::H(0), Gate::P(1), Gate::Cnot(2, 0)] {
            let before = rep.s.clone();
            rep.apply_right(&g).unwrap();
            assert_eq!(rep.s, before.mul(&gate_rep(&g, n).s));
            assert!(rep.s.is_symplectic());
        }
    }

    #[test]
    fn apply_left_h_swaps_rows() {
        let mut rep = SymplecticRep::identity(2);
        rep.apply_left(&Gate::H(0)).unwrap();
        let mut expect = F2Matrix::identity(4);
        expect.swap_rows(0, 2);
        assert_eq!(rep.s, expect);
        assert!(rep.apply_left(&Gate::Cz(0, 1)).is_err());
    }

    #[test]
    fn cnot_block_rep_shape() {
        let m = F2Matrix::from_rows(&[&[1, 1], &[0, 1]]);
        let rep = cnot_block_rep(&m).unwrap();
        assert!(rep.s.is_symplectic());
        assert_eq!(rep.blocks().a(), m);
        assert!(rep.blocks().b().is_zero());
        assert!(rep.blocks().c().is_zero());
        assert_eq!(rep.blocks().d(), m.invert().unwrap().transpose());
        assert!(cnot_block_rep(&F2Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn symplectic_dot_anticommutation() {
        let n = 2;
        let x0 = F2Vector::unit(2 * n, 0);
        let z0 = F2Vector::unit(2 * n, n);
        let z1 = F2Vector::unit(2 * n, n + 1);
        assert!(symplectic_dot(&x0, &z0));
        assert!(!symplectic_dot(&x0, &z1));
        assert!(!symplectic_dot(&x0, &x0));
        let mut y0 = x0.clone();
        y0.set(n, true);
        assert!(symplectic_dot(&y0, &x0));
        assert!(symplectic_dot(&y0, &z0));
    }

    #[test]
    fn text_round_trip_with_phases() {
        let rep = gate_rep(&Gate::P(0), 2);
        let text = rep.to_text();
        assert!(text.contains("phases 1 0 0 0"));
        assert_eq!(SymplecticRep::parse(&text).unwrap(), rep);
    }

    #[test]
    fn parse_accepts_bare_phase_line() {
        // the phase line may be given without the "phases" keyword
        let (m, p) = parse_symplectic_text("2 2\n10\n01\n1 0\n").unwrap();
        assert_eq!(m, F2Matrix::identity(2));
        assert_eq!(p, Some(vec![1, 0]));
        // matrix-only text stays phase-free
        let (m, p) = parse_symplectic_text("2 2\n10\n01\n").unwrap();
        assert_eq!(m, F2Matrix::identity(2));
        assert_eq!(p, None);
    }

    #[test]
    fn parse_rejects_bad_phase_tokens() {
        assert!(parse_symplectic_text("2 2\n10\n01\nphases 1 4\n").is_err());
        assert!(parse_symplectic_text("2 2\n10\n01\nphases x\n").is_err());
        // a trailing digit line of the wrong shape is a matrix error
        assert!(parse_symplectic_text("2 2\n10\n01\n5 0\n").is_err());
    }

    #[test]
    fn parse_defaults_to_minimal_phases() {
        // S(P): the X_0 image is Y, which forces an odd phase
        let rep = gate_rep(&Gate::P(0), 1);
        let parsed = SymplecticRep::parse(&format!("{}", rep.s)).unwrap();
        assert_eq!(parsed.s, rep.s);
        assert_eq!(parsed.p, vec![1, 0]);
        assert_eq!(parsed.p, minimal_phases(&rep.s));
    }
}
