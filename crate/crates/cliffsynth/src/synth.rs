//! Gate synthesis for the structured layers: CNOT circuits from invertible
//! GF(2) matrices, CZ layers from symmetric matrices, and diagonal P / H
//! layers from bit vectors.

use crate::circuit::{Circuit, Gate, SegmentTag};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};

/// Row operations recorded by an elimination; (src, tgt) means row tgt += row
/// src, realized by CNOT with control src and target tgt.
type RowOp = (usize, usize);

/// Gaussian elimination synthesis. Reduces m to the identity with row
/// additions; emitting those CNOTs in reverse order rebuilds m from I, i.e.
/// the circuit maps basis state |x> to |m x>.
pub fn synth_cnot_gauss(m: &F2Matrix) -> Result<Circuit> {
    let n = m.rows();
    assert_eq!(m.rows(), m.cols(), "CNOT synthesis needs a square matrix");
    let mut a = m.clone();
    let mut ops: Vec<RowOp> = Vec::new();
    for c in 0..n {
        if !a.get(c, c) {
            let pivot = (c + 1..n).find(|&r| a.get(r, c));
            match pivot {
                Some(r) => {
                    a.row_xor(c, r);
                    ops.push((r, c));
                }
                None => return Err(Error::Singular),
            }
        }
        for r in c + 1..n {
            if a.get(r, c) {
                a.row_xor(r, c);
                ops.push((c, r));
            }
        }
    }
    for c in (1..n).rev() {
        for r in 0..c {
            if a.get(r, c) {
                a.row_xor(r, c);
                ops.push((c, r));
            }
        }
    }
    debug_assert!(a.is_identity());
    let mut circ = Circuit::new(n);
    circ.push_segment(
        SegmentTag::Cx,
        ops.iter().rev().map(|&(src, tgt)| Gate::Cnot(src, tgt)),
    );
    Ok(circ)
}

/// One lower-triangular elimination sweep of the Patel–Markov–Hayes
/// algorithm: returns row ops that bring m to upper triangular form with unit
/// diagonal, deduplicating identical sub-row patterns section by section.
fn lower_eliminate(a: &mut F2Matrix, block: usize) -> Result<Vec<RowOp>> {
    let n = a.rows();
    let mut ops: Vec<RowOp> = Vec::new();
    let mut sec = 0;
    while sec * block < n {
        let lo = sec * block;
        let hi = (lo + block).min(n);
        // collapse duplicate patterns in columns [lo, hi)
        let mut first: Vec<Option<usize>> = vec![None; 1 << (hi - lo)];
        for r in lo..n {
            let mut pat = 0usize;
            for c in lo..hi {
                pat = (pat << 1) | a.get(r, c) as usize;
            }
            if pat == 0 {
                continue;
            }
            match first[pat] {
                None => first[pat] = Some(r),
                Some(r0) => {
                    a.row_xor(r, r0);
                    ops.push((r0, r));
                }
            }
        }
        for c in lo..hi {
            if !a.get(c, c) {
                let pivot = (c + 1..n).find(|&r| a.get(r, c));
                match pivot {
                    Some(r) => {
                        a.row_xor(c, r);
                        ops.push((r, c));
                    }
                    None => return Err(Error::Singular),
                }
            }
            for r in c + 1..n {
                if a.get(r, c) {
                    a.row_xor(r, c);
                    ops.push((c, r));
                }
            }
        }
        sec += 1;
    }
    Ok(ops)
}

/// Patel–Markov–Hayes synthesis with section width `block` (0 picks the
/// asymptotically good default near log2(n)/2). Output circuit maps |x> to
/// |m x| like the Gaussian variant but uses O(n^2 / log n) CNOTs.
pub fn synth_cnot_pmh(m: &F2Matrix, block: usize) -> Result<Circuit> {
    let n = m.rows();
    assert_eq!(m.rows(), m.cols(), "CNOT synthesis needs a square matrix");
    let block = if block == 0 {
        (((n.max(2) as f64).log2() / 2.0).round() as usize).max(1)
    } else {
        block.min(n.max(1)).min(20)
    };
    // lower sweep: L_k .. L_1 m = U (upper, unit diagonal)
    let mut a = m.clone();
    let ops_l = lower_eliminate(&mut a, block)?;
    // upper sweep on U^T, which is lower triangular with unit diagonal
    let mut at = a.transpose();
    let ops_u = lower_eliminate(&mut at, block)?;
    debug_assert!(at.is_identity());
    // m = (ops_l reversed, as CNOTs) . (ops_u forward, transposed row ops):
    // row op (s,t) on the transpose is column op (t,s), i.e. CNOT t -> s
    // applied on the right; right-applied ops come first in time and keep
    // their sweep order when read forward.
    let mut circ = Circuit::new(n);
    let gates = ops_u
        .iter()
        .map(|&(src, tgt)| Gate::Cnot(tgt, src))
        .chain(ops_l.iter().rev().map(|&(src, tgt)| Gate::Cnot(src, tgt)));
    circ.push_segment(SegmentTag::Cx, gates);
    Ok(circ)
}

/// CZ layer for a symmetric matrix with zero diagonal (strictly, only the
/// off-diagonal part is read): one CZ per set pair i < j.
pub fn synth_cz(gamma: &F2Matrix) -> Circuit {
    assert_eq!(gamma.rows(), gamma.cols());
    debug_assert!(gamma.is_symmetric(), "CZ layer needs a symmetric matrix");
    let n = gamma.rows();
    let mut circ = Circuit::new(n);
    let mut gates = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if gamma.get(i, j) {
                gates.push(Gate::Cz(i, j));
            }
        }
    }
    circ.push_segment(SegmentTag::Cz, gates);
    circ
}

/// Diagonal phase layer: P on each qubit with a set bit.
pub fn synth_phase_layer(d: &F2Vector, tag: SegmentTag) -> Circuit {
    assert!(matches!(tag, SegmentTag::P | SegmentTag::PAll));
    let mut circ = Circuit::new(d.len());
    circ.push_segment(tag, d.iter_ones().map(Gate::P));
    circ
}

/// Hadamard layer: H on each qubit with a set bit.
pub fn synth_hadamard_layer(h: &F2Vector, tag: SegmentTag) -> Circuit {
    assert!(matches!(tag, SegmentTag::H | SegmentTag::HAll));
    let mut circ = Circuit::new(h.len());
    circ.push_segment(tag, h.iter_ones().map(Gate::H));
    circ
}

/// All-qubit H layer.
pub fn synth_h_all(n: usize) -> Circuit {
    synth_hadamard_layer(&F2Vector::ones(n), SegmentTag::HAll)
}

/// All-qubit P layer.
pub fn synth_p_all(n: usize) -> Circuit {
    synth_phase_layer(&F2Vector::ones(n), SegmentTag::PAll)
}

/// The linear map computed by a CNOT-only circuit: returns m with the circuit
/// mapping |x> to |m x>. Used as the synthesis oracle in tests and for
/// self-checks.
pub fn cnot_circuit_matrix(circ: &Circuit) -> Result<F2Matrix> {
    let mut m = F2Matrix::identity(circ.n);
    for g in circ.gates() {
        match *g {
            Gate::Cnot(c, t) => m.row_xor(t, c),
            _ => {
                return Err(Error::InvalidCircuit(
                    "cnot_circuit_matrix expects a CNOT-only circuit".into(),
                ))
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_invertible, rng_from_seed};

    #[test]
    fn gauss_single_cnot() {
        // row-add matrix [[1,1],[0,1]]: |x0,x1> -> |x0+x1, x1>, one CNOT 1->0
        let m = F2Matrix::from_rows(&[&[1, 1], &[0, 1]]);
        let c = synth_cnot_gauss(&m).unwrap();
        assert_eq!(c.gates(), &[Gate::Cnot(1, 0)]);
        assert_eq!(cnot_circuit_matrix(&c).unwrap(), m);
    }

    #[test]
    fn gauss_identity_is_empty() {
        let c = synth_cnot_gauss(&F2Matrix::identity(5)).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.segment_tags(), vec![SegmentTag::Cx]);
    }

    #[test]
    fn gauss_rejects_singular() {
        let m = F2Matrix::from_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(synth_cnot_gauss(&m), Err(Error::Singular)));
    }

    #[test]
    fn gauss_round_trip_random() {
        let mut rng = rng_from_seed(11);
        for n in [1, 2, 3, 5, 8, 13, 31, 64, 65] {
            let m = random_invertible(n, &mut rng);
            let c = synth_cnot_gauss(&m).unwrap();
            c.validate().unwrap();
            assert_eq!(cnot_circuit_matrix(&c).unwrap(), m, "n={n}");
        }
    }

    #[test]
    fn pmh_round_trip_random() {
        let mut rng = rng_from_seed(12);
        for n in [1, 2, 3, 5, 8, 13, 31, 64, 65] {
            let m = random_invertible(n, &mut rng);
            for block in [0, 1, 2, 3] {
                let c = synth_cnot_pmh(&m, block).unwrap();
                c.validate().unwrap();
                assert_eq!(cnot_circuit_matrix(&c).unwrap(), m, "n={n} block={block}");
            }
        }
    }

    #[test]
    fn pmh_rejects_singular() {
        let m = F2Matrix::from_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert!(matches!(synth_cnot_pmh(&m, 2), Err(Error::Singular)));
    }

    #[test]
    fn pmh_beats_gauss_on_large_instances() {
        let mut rng = rng_from_seed(13);
        let n = 96;
        let mut total_g = 0usize;
        let mut total_p = 0usize;
        for _ in 0..4 {
            let m = random_invertible(n, &mut rng);
            total_g += synth_cnot_gauss(&m).unwrap().len();
            total_p += synth_cnot_pmh(&m, 0).unwrap().len();
        }
        assert!(
            total_p < total_g,
            "pmh {total_p} should beat gauss {total_g} at n={n}"
        );
    }

    #[test]
    fn cz_layer_pairs() {
        let mut gamma = F2Matrix::zeros(4, 4);
        for (i, j) in [(0, 2), (1, 3), (2, 3)] {
            gamma.set(i, j, true);
            gamma.set(j, i, true);
        }
        let c = synth_cz(&gamma);
        assert_eq!(
            c.gates(),
            &[Gate::Cz(0, 2), Gate::Cz(1, 3), Gate::Cz(2, 3)]
        );
        c.validate().unwrap();
    }

    #[test]
    fn diagonal_layers() {
        let mut d = F2Vector::zeros(4);
        d.set(1, true);
        d.set(3, true);
        let c = synth_phase_layer(&d, SegmentTag::P);
        assert_eq!(c.gates(), &[Gate::P(1), Gate::P(3)]);
        let h = synth_h_all(3);
        assert_eq!(h.gates(), &[Gate::H(0), Gate::H(1), Gate::H(2)]);
        h.validate().unwrap();
        let p = synth_p_all(2);
        assert_eq!(p.segment_tags(), vec![SegmentTag::PAll]);
        p.validate().unwrap();
    }
}
