//! Bit-sliced stabilizer tableau simulation, Pauli strings with phase
//! tracking, and stabilizer-state specifications.
//!
//! The tableau stores the conjugation images of the 2n Pauli generators as
//! rows: row i (i < n) is U X_i U^dag, row n+i is U Z_i U^dag. Each image is
//! i^xi X^u Z^v with per-qubit operators ordered X-then-Z; xi lives in Z_4 as
//! two bit planes (lo, hi). Storage is column-major: x[q] and z[q] are 2n-bit
//! columns holding the X_q / Z_q component of every row, so a gate updates
//! all rows with a handful of word-wide vector operations.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};
use crate::symplectic::{symplectic_dot, SymplecticRep};
use std::fmt;
use std::mem;

/// xor v[tgt] ^= v[src] for distinct indices of one slice.
fn xor_into(v: &mut [F2Vector], tgt: usize, src: usize) {
    assert_ne!(tgt, src);
    let (t, s) = if tgt < src {
        let (a, b) = v.split_at_mut(src);
        (&mut a[tgt], &b[0])
    } else {
        let (b, a) = v.split_at_mut(tgt);
        (&mut a[0], &b[src])
    };
    t.xor_with(s);
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tableau {
    n: usize,
    x: Vec<F2Vector>,
    z: Vec<F2Vector>,
    lo: F2Vector,
    hi: F2Vector,
}

impl Tableau {
    pub fn identity(n: usize) -> Self {
        let x = (0..n).map(|q| F2Vector::unit(2 * n, q)).collect();
        let z = (0..n).map(|q| F2Vector::unit(2 * n, n + q)).collect();
        Tableau {
            n,
            x,
            z,
            lo: F2Vector::zeros(2 * n),
            hi: F2Vector::zeros(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        match *g {
            Gate::H(q) => {
                let t = self.x[q].and(&self.z[q]);
                self.hi.xor_with(&t);
                mem::swap(&mut self.x[q], &mut self.z[q]);
            }
            Gate::P(q) => {
                let carry = self.lo.and(&self.x[q]);
                self.hi.xor_with(&carry);
                self.lo.xor_with(&self.x[q]);
                self.z[q].xor_with(&self.x[q]);
            }
            Gate::X(q) => self.hi.xor_with(&self.z[q]),
            Gate::Z(q) => self.hi.xor_with(&self.x[q]),
            Gate::Y(q) => {
                self.hi.xor_with(&self.x[q]);
                self.hi.xor_with(&self.z[q]);
            }
            Gate::Cnot(c, t) => {
                xor_into(&mut self.x, t, c);
                xor_into(&mut self.z, c, t);
            }
            Gate::Cz(a, b) => {
                let t = self.x[a].and(&self.x[b]);
                self.hi.xor_with(&t);
                let xb = self.x[b].clone();
                self.z[a].xor_with(&xb);
                self.z[b].xor_with(&self.x[a]);
            }
        }
    }

    pub fn apply_circuit(&mut self, circ: &Circuit) {
        assert_eq!(self.n, circ.n, "qubit count mismatch");
        for g in circ.gates() {
            self.apply_gate(g);
        }
    }

    pub fn simulate(circ: &Circuit) -> Tableau {
        let mut t = Tableau::identity(circ.n);
        t.apply_circuit(circ);
        t
    }

    /// Pauli image of generator i (row i of the tableau).
    pub fn row(&self, i: usize) -> Pauli {
        let mut x = F2Vector::zeros(self.n);
        let mut z = F2Vector::zeros(self.n);
        for q in 0..self.n {
            x.set(q, self.x[q].get(i));
            z.set(q, self.z[q].get(i));
        }
        let xi = u8::from(self.lo.get(i)) + 2 * u8::from(self.hi.get(i));
        Pauli { x, z, xi }
    }

    /// Stabilizer generators of U|0..0>: the images of Z_0 .. Z_{n-1}.
    pub fn zero_state_stabilizers(&self) -> Vec<Pauli> {
        (self.n..2 * self.n).map(|i| self.row(i)).collect()
    }

    /// Convert to the symplectic form. Row q of the matrix is the X_q
    /// component column, row n+q the Z_q component column; this yields the
    /// matrix whose column i is the image vector of generator i.
    pub fn to_rep(&self) -> SymplecticRep {
        let mut s = F2Matrix::zeros(2 * self.n, 2 * self.n);
        for q in 0..self.n {
            s.set_row(q, &self.x[q]);
            s.set_row(self.n + q, &self.z[q]);
        }
        let p = (0..2 * self.n)
            .map(|i| u8::from(self.lo.get(i)) + 2 * u8::from(self.hi.get(i)))
            .collect();
        debug_assert!(s.is_symplectic());
        SymplecticRep::from_parts_unchecked(s, p)
    }

    /// Internal consistency: every row must stay Hermitian, i.e. the low
    /// phase bit equals the X/Z overlap parity of the row.
    pub fn check_hermitian(&self) -> bool {
        let n2 = 2 * self.n;
        let mut overlap = F2Vector::zeros(n2);
        for q in 0..self.n {
            let t = self.x[q].and(&self.z[q]);
            overlap.xor_with(&t);
        }
        overlap == self.lo
    }
}

/// A Pauli operator i^xi X^x Z^z (X-then-Z per qubit), xi in Z_4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pauli {
    pub x: F2Vector,
    pub z: F2Vector,
    pub xi: u8,
}

impl Pauli {
    pub fn identity(n: usize) -> Self {
        Pauli {
            x: F2Vector::zeros(n),
            z: F2Vector::zeros(n),
            xi: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Operator product self * other.
    pub fn mul(&self, other: &Pauli) -> Pauli {
        assert_eq!(self.n(), other.n());
        let swaps = self.z.and(&other.x).count_ones();
        Pauli {
            x: self.x.add(&other.x),
            z: self.z.add(&other.z),
            xi: ((self.xi as usize + other.xi as usize + 2 * swaps) % 4) as u8,
        }
    }

    pub fn anticommutes(&self, other: &Pauli) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn is_hermitian(&self) -> bool {
        (self.xi as usize) % 2 == self.x.and(&self.z).count_ones() % 2
    }

    pub fn is_identity_op(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// The (X..X|Z..Z) bit vector of length 2n.
    pub fn vector(&self) -> F2Vector {
        let n = self.n();
        let mut v = F2Vector::zeros(2 * n);
        for q in self.x.iter_ones() {
            v.set(q, true);
        }
        for q in self.z.iter_ones() {
            v.set(n + q, true);
        }
        v
    }

    /// Parse "XYZ" with an optional +/- sign prefix, e.g. "-XIZ".
    pub fn parse(token: &str) -> Option<Pauli> {
        let (neg, body) = match token.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, token.strip_prefix('+').unwrap_or(token)),
        };
        let n = body.chars().count();
        if n == 0 {
            return None;
        }
        let mut x = F2Vector::zeros(n);
        let mut z = F2Vector::zeros(n);
        let mut ys = 0usize;
        for (q, ch) in body.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => x.set(q, true),
                'Z' => z.set(q, true),
                'Y' => {
                    x.set(q, true);
                    z.set(q, true);
                    ys += 1;
                }
                _ => return None,
            }
        }
        let xi = ((ys + 2 * usize::from(neg)) % 4) as u8;
        Some(Pauli { x, z, xi })
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ys = self.x.and(&self.z).count_ones();
        let head = match (self.xi as usize + 4 - ys % 4) % 4 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{head}")?;
        for q in 0..self.n() {
            let ch = match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// A stabilizer state on n qubits given as n signed Pauli generators.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerStateSpec {
    pub n: usize,
    pub gens: Vec<Pauli>,
}

impl StabilizerStateSpec {
    pub fn new(gens: Vec<Pauli>) -> Result<Self> {
        let n = gens.first().map_or(0, |g| g.n());
        let spec = StabilizerStateSpec { n, gens };
        spec.validate()?;
        Ok(spec)
    }

    /// Pairwise commuting, independent, exactly n generators on n qubits,
    /// all Hermitian with a well-defined sign.
    pub fn validate(&self) -> Result<()> {
        if self.gens.len() != self.n || self.n == 0 {
            return Err(Error::DependentGenerators);
        }
        for g in &self.gens {
            if g.n() != self.n || !g.is_hermitian() {
                return Err(Error::InvalidPhaseVector);
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.gens[i].anticommutes(&self.gens[j]) {
                    return Err(Error::NonCommuting);
                }
            }
        }
        let rows: Vec<Vec<bool>> = self
            .gens
            .iter()
            .map(|g| (0..2 * self.n).map(|k| g.vector().get(k)).collect())
            .collect();
        if F2Matrix::from_rows_of_bools(&rows).rank() != self.n {
            return Err(Error::DependentGenerators);
        }
        Ok(())
    }

    /// Text format: "n <qubits>" then one signed Pauli string per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut gens = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match n {
                None => {
                    let mut it = line.split_whitespace();
                    if it.next() != Some("n") {
                        return Err(Error::parse(ln, "expected 'n <qubits>' header"));
                    }
                    let k: usize = it
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(ln, "bad qubit count"))?;
                    if it.next().is_some() {
                        return Err(Error::parse(ln, "trailing tokens in header"));
                    }
                    n = Some(k);
                }
                Some(k) => {
                    let g = Pauli::parse(line)
                        .ok_or_else(|| Error::parse(ln, format!("bad Pauli string {line:?}")))?;
                    if g.n() != k {
                        return Err(Error::parse(ln, format!("expected {k} qubits")));
                    }
                    gens.push(g);
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing spec header"))?;
        let spec = StabilizerStateSpec { n, gens };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for g in &self.gens {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Unique canonical generating set of the group generated by `gens`: Pauli
/// row reduction to reduced echelon form over the (X..X|Z..Z) columns, with
/// signs carried through the multiplications. Two generating sets describe
/// the same signed stabilizer group iff their canonical forms are equal.
pub fn canonical_form(gens: &[Pauli]) -> Vec<Pauli> {
    let mut rows: Vec<Pauli> = gens.to_vec();
    if rows.is_empty() {
        return rows;
    }
    let n = rows[0].n();
    let bit = |p: &Pauli, col: usize| {
        if col < n {
            p.x.get(col)
        } else {
            p.z.get(col - n)
        }
    };
    let mut r = 0;
    for col in 0..2 * n {
        let Some(pivot) = (r..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in 0..rows.len() {
            if i != r && bit(&rows[i], col) {
                rows[i] = rows[i].mul(&rows[r]);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows
}

/// Extend a stabilizer state spec to a full Clifford: build a symplectic S
/// whose Z-image columns are exactly the spec vectors, so that conjugating
/// Z_i by any circuit implementing S yields the i-th generator up to sign.
/// The X-image columns are solved to pairwise commute and anticommute with
/// exactly their partner generator.
pub fn complete_clifford(spec: &StabilizerStateSpec) -> Result<SymplecticRep> {
    spec.validate()?;
    let n = spec.n;
    // G h = e_i makes h anticommute with generator i and commute with the
    // rest: row j of G is the spec vector with halves swapped.
    let mut g = F2Matrix::zeros(n, 2 * n);
    for (j, gen) in spec.gens.iter().enumerate() {
        for q in gen.z.iter_ones() {
            g.set(j, q, true);
        }
        for q in gen.x.iter_ones() {
            g.set(j, n + q, true);
        }
    }
    let h = g
        .solve(&F2Matrix::identity(n))
        .ok_or(Error::DependentGenerators)?;
    let mut cols: Vec<F2Vector> = (0..n).map(|i| h.col(i)).collect();
    let gvecs: Vec<F2Vector> = spec.gens.iter().map(|g| g.vector()).collect();
    // symplectic Gram-Schmidt: make the X-image columns pairwise commute
    for i in 0..n {
        for j in 0..i {
            if symplectic_dot(&cols[i], &cols[j]) {
                let fix = gvecs[j].clone();
                cols[i].xor_with(&fix);
            }
        }
    }
    let mut s = F2Matrix::zeros(2 * n, 2 * n);
    let mut p = vec![0u8; 2 * n];
    for i in 0..n {
        for k in cols[i].iter_ones() {
            s.set(k, i, true);
        }
        for k in gvecs[i].iter_ones() {
            s.set(k, n + i, true);
        }
        // minimal Hermitian-valid phase for the X columns; spec signs for Z
        let overlap = (0..n).filter(|&q| cols[i].get(q) && cols[i].get(n + q)).count();
        p[i] = (overlap % 2) as u8;
        p[n + i] = spec.gens[i].xi;
    }
    SymplecticRep::new(s, p)
}
