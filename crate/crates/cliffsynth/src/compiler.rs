//! Clifford compilation: reduce a symplectic operator to structured layers
//! and emit circuits in two normal forms.
//!
//! The decomposition peels the 2n x 2n symplectic matrix down to the identity
//! with row operations (gates applied after the operator) and column
//! operations (gates applied before it). Reading the inverses back off gives
//! the nine-segment form
//!
//!   CX(L) P_all CX(M) P(p2) H_all P_all CX(N) P(p1) H(hset)
//!
//! in time order. Local rewrites then fold the trailing CNOT stages into the
//! leading one, leaving a single CNOT segment:
//!
//!   CX(Q^-T) CZ P H_all CZ P H(hset)
//!
//! Both forms realize the requested symplectic exactly; phases are matched
//! afterwards by simulating the circuit and appending a Pauli layer.

use crate::circuit::{Circuit, Gate, SegmentTag};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};
use crate::stabilizer::{canonical_form, complete_clifford, Pauli, StabilizerStateSpec, Tableau};
use crate::symplectic::{cnot_block_matrix, SymplecticRep};
use crate::synth::{
    synth_cnot_gauss, synth_cnot_pmh, synth_cz, synth_h_all, synth_hadamard_layer, synth_p_all,
    synth_phase_layer,
};

/// CNOT-stage synthesis algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CnotSynth {
    Gauss,
    /// Patel-Markov-Hayes with the given section width; 0 picks the default.
    Pmh { block: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    pub cnot_synth: CnotSynth,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            cnot_synth: CnotSynth::Pmh { block: 0 },
        }
    }
}

fn synth_cx(m: &F2Matrix, opts: &CompileOptions) -> Result<Circuit> {
    match opts.cnot_synth {
        CnotSynth::Gauss => synth_cnot_gauss(m),
        CnotSynth::Pmh { block } => synth_cnot_pmh(m, block),
    }
}

/// The layer data of the nine-segment form.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionParts {
    pub hset: F2Vector,
    pub q_mat: F2Matrix,
    pub p1: F2Vector,
    pub n_mat: F2Matrix,
    pub p2: F2Vector,
    pub m_mat: F2Matrix,
    pub l_mat: F2Matrix,
}

impl DecompositionParts {
    pub fn n(&self) -> usize {
        self.q_mat.rows()
    }
}

/// Greedy choice of the Hadamard set: walk the rows of the upper-right block
/// top to bottom keeping a maximal independent subset; the complement gets a
/// Hadamard, which swaps in the lower-right row instead.
fn hadamard_set(s: &F2Matrix, n: usize) -> F2Vector {
    let mut hset = F2Vector::zeros(n);
    let mut basis: Vec<F2Vector> = Vec::new();
    for q in 0..n {
        let mut row = F2Vector::zeros(n);
        for j in 0..n {
            row.set(j, s.get(q, n + j));
        }
        for b in &basis {
            let lead = b.iter_ones().next().unwrap();
            if row.get(lead) {
                row.xor_with(b);
            }
        }
        if row.is_zero() {
            hset.set(q, true);
        } else {
            basis.push(row);
        }
    }
    hset
}

/// Diagonal phase-layer row operations: gates after the operator.
fn left_phase(s: &mut F2Matrix, n: usize, d: &F2Vector) {
    for q in d.iter_ones() {
        s.row_xor(q + n, q);
    }
}

/// Decompose a symplectic matrix into the nine-segment layer data. Every
/// reduction step checks the structural invariant it establishes.
pub fn decompose(rep: &SymplecticRep) -> Result<DecompositionParts> {
    if !rep.s.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let n = rep.n;
    let mut s = rep.s.clone();

    // 1: Hadamards make the upper-right block invertible
    let hset = hadamard_set(&s, n);
    for q in hset.iter_ones() {
        s.swap_rows(q, q + n);
    }
    assert!(s.is_symplectic(), "step 1 must preserve symplecticity");
    let q_mat = s.block(0, n, n, n);
    let q_inv = q_mat
        .invert()
        .expect("hadamard set must make the upper-right block invertible");

    // 2: clear the upper-right block to the identity from the right
    s = s.mul(&cnot_block_matrix(&q_mat.transpose())?);
    assert!(s.is_symplectic(), "step 2 must preserve symplecticity");
    assert!(s.block(0, n, n, n).is_identity());
    let d2 = s.block(n, n, n, n);
    assert!(d2.is_symmetric());

    // 3: make the lower-right block an invertible Gram product
    let (p1, w1) = d2.factor_symmetric();
    let w1_inv = w1.invert().expect("unit triangular factor is invertible");
    let n_mat = w1_inv.transpose(); // N = W1^-T, so N^-1 = W1^T
    let n_inv = w1.transpose();
    left_phase(&mut s, n, &p1);
    assert!(s.is_symplectic(), "step 3 must preserve symplecticity");
    assert_eq!(s.block(n, n, n, n), w1.mul(&w1.transpose()));

    // 4: normalize both right-hand blocks to N^-1
    s = cnot_block_matrix(&n_inv)?.mul(&s);
    assert!(s.is_symplectic(), "step 4 must preserve symplecticity");
    assert_eq!(s.block(0, n, n, n), n_inv);
    assert_eq!(s.block(n, n, n, n), n_inv);

    // 5: clear both right-hand blocks to the identity from the right
    s = s.mul(&cnot_block_matrix(&w1)?); // W1 = N^-T
    assert!(s.is_symplectic(), "step 5 must preserve symplecticity");
    assert!(s.block(0, n, n, n).is_identity());
    assert!(s.block(n, n, n, n).is_identity());

    // 6: a full phase layer empties the right half
    left_phase(&mut s, n, &F2Vector::ones(n));
    assert!(s.is_symplectic(), "step 6 must preserve symplecticity");
    assert!(s.block(n, 0, n, n).is_identity());
    assert!(s.block(n, n, n, n).is_zero());
    assert!(s.block(0, 0, n, n).is_symmetric());

    // 7: a full Hadamard layer moves the action to the lower-left block
    for q in 0..n {
        s.swap_rows(q, q + n);
    }
    assert!(s.is_symplectic(), "step 7 must preserve symplecticity");
    assert!(s.block(0, 0, n, n).is_identity());
    assert!(s.block(0, n, n, n).is_zero());
    assert!(s.block(n, n, n, n).is_identity());

    // 8: factor the remaining symmetric block
    let a6 = s.block(n, 0, n, n);
    let (p2, w2) = a6.factor_symmetric();
    let w2_inv = w2.invert().expect("unit triangular factor is invertible");
    let m_mat = w2_inv.transpose(); // M = W2^-T
    let m_inv = w2.transpose();
    left_phase(&mut s, n, &p2);
    assert!(s.is_symplectic(), "step 8 must preserve symplecticity");
    assert_eq!(s.block(n, 0, n, n), w2.mul(&w2.transpose()));

    // 9: split the Gram product across the diagonal
    s = s.mul(&cnot_block_matrix(&m_mat)?);
    assert!(s.is_symplectic(), "step 9 must preserve symplecticity");
    assert_eq!(s.block(0, 0, n, n), m_mat);
    assert_eq!(s.block(n, 0, n, n), w2); // W2 = M^-T
    assert_eq!(s.block(n, n, n, n), w2);
    assert!(s.block(0, n, n, n).is_zero());

    // 10: a full phase layer from the right clears the lower-left block
    for q in 0..n {
        s.col_xor(q, q + n);
    }
    assert!(s.is_symplectic(), "step 10 must preserve symplecticity");
    assert_eq!(s.block(0, 0, n, n), m_mat);
    assert!(s.block(n, 0, n, n).is_zero());

    // 11: the leftover block-diagonal CNOT stage finishes the reduction
    s = cnot_block_matrix(&m_inv)?.mul(&s);
    assert!(s.is_identity(), "reduction must end at the identity");

    // merged first CNOT stage: the three right-hand factors collapse into
    // L = M^-1 N^T Q^-T
    let l_mat = m_inv.mul(&n_mat.transpose()).mul(&q_inv.transpose());

    Ok(DecompositionParts {
        hset,
        q_mat,
        p1,
        n_mat,
        p2,
        m_mat,
        l_mat,
    })
}

/// Assemble the nine-segment circuit (time order):
/// CX(L) P_all CX(M) P(p2) H_all P_all CX(N) P(p1) H(hset).
pub fn build_nine_form(parts: &DecompositionParts, opts: &CompileOptions) -> Result<Circuit> {
    let n = parts.n();
    let c = synth_cx(&parts.l_mat, opts)?
        .concat(&synth_p_all(n))
        .concat(&synth_cx(&parts.m_mat, opts)?)
        .concat(&synth_phase_layer(&parts.p2, SegmentTag::P))
        .concat(&synth_h_all(n))
        .concat(&synth_p_all(n))
        .concat(&synth_cx(&parts.n_mat, opts)?)
        .concat(&synth_phase_layer(&parts.p1, SegmentTag::P))
        .concat(&synth_hadamard_layer(&parts.hset, SegmentTag::H));
    debug_assert_eq!(c.segments().len(), 9);
    Ok(c)
}

/// Rewrite a phase layer P(d) followed by a CNOT stage CX(m) (time order)
/// into CX(m) CZ(gamma) P(d'): gamma + diag(d') = m^-T diag(d) m^-1.
/// Exact at the symplectic level; phase slack is a Pauli, fixed at the end.
pub fn rewrite_p_cx(d: &F2Vector, m: &F2Matrix) -> Result<(F2Matrix, F2Vector)> {
    let mi = m.invert().ok_or(Error::Singular)?;
    let r = mi.transpose().mul(&F2Matrix::from_diag(d)).mul(&mi);
    debug_assert!(r.is_symmetric());
    let d_new = r.diagonal();
    let mut gamma = r;
    for i in 0..gamma.rows() {
        gamma.set(i, i, false);
    }
    Ok((gamma, d_new))
}

/// Commute a CNOT stage from after a full Hadamard layer to before it:
/// H_all CX(m) (time order) equals CX(m^-T) H_all.
pub fn commute_cx_hall(m: &F2Matrix) -> Result<F2Matrix> {
    Ok(m.invert().ok_or(Error::Singular)?.transpose())
}

/// The layer data of the single-CNOT-segment form (time order):
/// CX(cx_mat) CZ(gamma_cx) P(d_cx) H_all CZ(gamma_h) P(p_h) H(hset).
#[derive(Clone, Debug, PartialEq)]
pub struct OneCnotParts {
    pub cx_mat: F2Matrix,
    pub gamma_cx: F2Matrix,
    pub d_cx: F2Vector,
    pub gamma_h: F2Matrix,
    pub p_h: F2Vector,
    pub hset: F2Vector,
}

/// Fold the nine-segment form into the single-CNOT-segment form by rewriting
/// each interior P/CX pair and commuting the CNOT stages leftwards.
pub fn to_one_cnot_parts(parts: &DecompositionParts) -> Result<OneCnotParts> {
    // P_all CX(N) -> CX(N) CZ(g_a) P(d_a); the P(d_a) merges with P(p1)
    let ones = F2Vector::ones(parts.n());
    let (gamma_h, d_a) = rewrite_p_cx(&ones, &parts.n_mat)?;
    let p_h = d_a.add(&parts.p1);
    // H_all CX(N) -> CX(N^-T) H_all
    let n_it = commute_cx_hall(&parts.n_mat)?;
    // P(p2) CX(N^-T) -> CX(N^-T) CZ(g_b) P(d_b)
    let (g_b, d_b) = rewrite_p_cx(&parts.p2, &n_it)?;
    // adjacent CNOT stages merge: CX(M) CX(N^-T) = CX(N^-T M)
    let k3 = n_it.mul(&parts.m_mat);
    // P_all CX(K3) -> CX(K3) CZ(g_c) P(d_c)
    let (g_c, d_c) = rewrite_p_cx(&ones, &k3)?;
    let cx_mat = k3.mul(&parts.l_mat);
    debug_assert_eq!(
        cx_mat,
        parts.q_mat.invert().unwrap().transpose(),
        "merged CNOT stage must equal Q^-T"
    );
    Ok(OneCnotParts {
        cx_mat,
        gamma_cx: g_b.add(&g_c),
        d_cx: d_b.add(&d_c),
        gamma_h,
        p_h,
        hset: parts.hset.clone(),
    })
}

/// Assemble the single-CNOT-segment circuit (time order):
/// CX CZ P H_all CZ P H.
pub fn build_one_cnot_form(one: &OneCnotParts, opts: &CompileOptions) -> Result<Circuit> {
    let n = one.cx_mat.rows();
    let c = synth_cx(&one.cx_mat, opts)?
        .concat(&synth_cz(&one.gamma_cx))
        .concat(&synth_phase_layer(&one.d_cx, SegmentTag::P))
        .concat(&synth_h_all(n))
        .concat(&synth_cz(&one.gamma_h))
        .concat(&synth_phase_layer(&one.p_h, SegmentTag::P))
        .concat(&synth_hadamard_layer(&one.hset, SegmentTag::H));
    debug_assert_eq!(c.segments().len(), 7);
    Ok(c)
}

/// Pauli gates that, appended to a circuit realizing `achieved`, shift its
/// phase vector to `target_p`. The symplectic parts must already agree; the
/// difference on every generator must be 0 or 2 mod 4.
pub fn pauli_fixup(target_p: &[u8], achieved: &SymplecticRep) -> Result<Vec<Gate>> {
    let n = achieved.n;
    if target_p.len() != 2 * n || target_p.iter().any(|&x| x > 3) {
        return Err(Error::InvalidPhaseVector);
    }
    let mut f = F2Vector::zeros(2 * n);
    for i in 0..2 * n {
        let diff = (4 + target_p[i] - achieved.p[i]) % 4;
        match diff {
            0 => {}
            2 => f.set(i, true),
            _ => return Err(Error::InvalidPhaseVector),
        }
    }
    // row i: <w, col_i> = f_i, i.e. (S^T with swapped halves) w = f
    let mut g = F2Matrix::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        let col = achieved.s.col(i);
        for q in 0..n {
            g.set(i, q, col.get(n + q));
            g.set(i, n + q, col.get(q));
        }
    }
    let w = g
        .solve_vec(&f)
        .expect("symplectic matrix is invertible, so the sign system is solvable");
    Ok(pauli_gates_of(&w, n))
}

fn pauli_gates_of(w: &F2Vector, n: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for q in 0..n {
        match (w.get(q), w.get(n + q)) {
            (false, false) => {}
            (true, false) => gates.push(Gate::X(q)),
            (false, true) => gates.push(Gate::Z(q)),
            (true, true) => gates.push(Gate::Y(q)),
        }
    }
    gates
}

/// A compiled Clifford operator: layer data plus both circuit forms. The
/// forms realize the symplectic part exactly; `one_cnot_form` followed by
/// `pauli_layer` reproduces the full (s, p) pair. `nine_phases` records the
/// phases the bare nine-segment form realizes, so an analogous layer for it
/// can be derived with `pauli_fixup`.
#[derive(Clone, Debug)]
pub struct CompiledClifford {
    pub n: usize,
    pub parts: DecompositionParts,
    pub one_parts: OneCnotParts,
    pub nine_form: Circuit,
    pub one_cnot_form: Circuit,
    pub pauli_layer: Circuit,
    pub nine_phases: Vec<u8>,
}

impl CompiledClifford {
    /// The single-CNOT-segment form with its Pauli layer appended: realizes
    /// the requested operator exactly up to global phase.
    pub fn exact_circuit(&self) -> Circuit {
        self.one_cnot_form.concat(&self.pauli_layer)
    }
}

/// Every phase entry must have the parity forced by Hermiticity: odd exactly
/// when the X and Z halves of its column overlap in an odd number of places.
fn check_phase_parity(rep: &SymplecticRep) -> Result<()> {
    let n = rep.n;
    if rep.p.len() != 2 * n || rep.p.iter().any(|&x| x > 3) {
        return Err(Error::InvalidPhaseVector);
    }
    for i in 0..2 * n {
        let col = rep.s.col(i);
        let overlap = (0..n).filter(|&q| col.get(q) && col.get(n + q)).count();
        if (rep.p[i] as usize) % 2 != overlap % 2 {
            return Err(Error::InvalidPhaseVector);
        }
    }
    Ok(())
}

/// Compile a symplectic operator into both normal forms and verify the
/// result by simulation.
pub fn compile(rep: &SymplecticRep, opts: &CompileOptions) -> Result<CompiledClifford> {
    if !rep.s.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    check_phase_parity(rep)?;
    let parts = decompose(rep)?;
    let one_parts = to_one_cnot_parts(&parts)?;
    let nine_form = build_nine_form(&parts, opts)?;
    let one_cnot_form = build_one_cnot_form(&one_parts, opts)?;

    let nine_rep = Tableau::simulate(&nine_form).to_rep();
    if nine_rep.s != rep.s {
        return Err(Error::VerificationFailed(
            "nine-segment form does not match the requested symplectic".into(),
        ));
    }
    let one_rep = Tableau::simulate(&one_cnot_form).to_rep();
    if one_rep.s != rep.s {
        return Err(Error::VerificationFailed(
            "single-CNOT form does not match the requested symplectic".into(),
        ));
    }

    let mut pauli_layer = Circuit::new(rep.n);
    pauli_layer.push_segment(SegmentTag::Pauli, pauli_fixup(&rep.p, &one_rep)?);
    let full = one_cnot_form.concat(&pauli_layer);
    let full_rep = Tableau::simulate(&full).to_rep();
    if full_rep.s != rep.s || full_rep.p != rep.p {
        return Err(Error::VerificationFailed(
            "Pauli layer does not reproduce the requested phases".into(),
        ));
    }

    Ok(CompiledClifford {
        n: rep.n,
        parts,
        one_parts,
        nine_form,
        one_cnot_form,
        pauli_layer,
        nine_phases: nine_rep.p,
    })
}

/// Circuits preparing a stabilizer state from |0..0>, in two shapes.
#[derive(Clone, Debug)]
pub struct PreparedState {
    pub n: usize,
    /// H_all P_all CX F
    pub cx_circuit: Circuit,
    /// H_all CZ F
    pub cz_circuit: Circuit,
}

/// Sign-correcting Pauli gates: appended to the circuit that produced
/// `achieved`, they turn its stabilizer group into `target`'s. Both
/// generating sets must span the same unsigned group.
fn stabilizer_sign_fix(achieved: &[Pauli], target: &[Pauli]) -> Result<Vec<Gate>> {
    let ca = canonical_form(achieved);
    let ct = canonical_form(target);
    let n = ca.first().map_or(0, |p| p.n());
    let mut f = F2Vector::zeros(ca.len());
    let mut g = F2Matrix::zeros(ca.len(), 2 * n);
    for (i, (a, t)) in ca.iter().zip(&ct).enumerate() {
        if a.x != t.x || a.z != t.z {
            return Err(Error::VerificationFailed(
                "prepared stabilizer group differs from the specification".into(),
            ));
        }
        match (4 + t.xi - a.xi) % 4 {
            0 => {}
            2 => f.set(i, true),
            _ => return Err(Error::InvalidPhaseVector),
        }
        for q in a.z.iter_ones() {
            g.set(i, q, true);
        }
        for q in a.x.iter_ones() {
            g.set(i, n + q, true);
        }
    }
    let w = g
        .solve_vec(&f)
        .expect("independent generators leave the sign system solvable");
    Ok(pauli_gates_of(&w, n))
}

/// Compile preparation circuits for a stabilizer state. Both shapes drop the
/// leading segments of the corresponding operator form, which act trivially
/// on |0..0>, and absorb phase layer, Hadamard set, and sign-fixing Paulis
/// into a final layer of one-qubit gates.
pub fn prep_state(spec: &StabilizerStateSpec, opts: &CompileOptions) -> Result<PreparedState> {
    let rep = complete_clifford(spec)?;
    let parts = decompose(&rep)?;
    let one_parts = to_one_cnot_parts(&parts)?;
    let n = spec.n;

    let build = |head: Circuit, p: &F2Vector, hset: &F2Vector| -> Result<Circuit> {
        let mut f_gates: Vec<Gate> = p.iter_ones().map(Gate::P).collect();
        f_gates.extend(hset.iter_ones().map(Gate::H));
        // simulate the circuit so far to solve for the sign-correcting
        // Paulis, which join the same final layer
        let mut trial = head.clone();
        trial.push_segment(SegmentTag::F, f_gates.clone());
        let achieved = Tableau::simulate(&trial).zero_state_stabilizers();
        f_gates.extend(stabilizer_sign_fix(&achieved, &spec.gens)?);
        let mut out = head;
        out.push_segment(SegmentTag::F, f_gates);
        out.validate()?;
        let check = Tableau::simulate(&out).zero_state_stabilizers();
        if canonical_form(&check) != canonical_form(&spec.gens) {
            return Err(Error::VerificationFailed(
                "prepared state does not match the specification".into(),
            ));
        }
        Ok(out)
    };

    let cx_head = synth_h_all(n)
        .concat(&synth_p_all(n))
        .concat(&synth_cx(&parts.n_mat, opts)?);
    let cx_circuit = build(cx_head, &parts.p1, &parts.hset)?;

    let cz_head = synth_h_all(n).concat(&synth_cz(&one_parts.gamma_h));
    let cz_circuit = build(cz_head, &one_parts.p_h, &one_parts.hset)?;

    Ok(PreparedState {
        n,
        cx_circuit,
        cz_circuit,
    })
}
