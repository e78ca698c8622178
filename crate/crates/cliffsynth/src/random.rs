//! Seedable random circuits, matrices, and state specifications.

use crate::circuit::{Circuit, Gate};
use crate::f2::F2Matrix;
use crate::stabilizer::{StabilizerStateSpec, Tableau};
use crate::symplectic::SymplecticRep;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All randomness in the crate flows through this deterministic generator.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random circuit over H, P, and CNOT.
pub fn random_circuit(n: usize, gates: usize, rng: &mut impl Rng) -> Circuit {
    assert!(n >= 1, "need at least one qubit");
    let mut c = Circuit::new(n);
    for _ in 0..gates {
        let kind = rng.random_range(0..if n == 1 { 2 } else { 3 });
        match kind {
            0 => c.push(Gate::H(rng.random_range(0..n))),
            1 => c.push(Gate::P(rng.random_range(0..n))),
            _ => {
                let a = rng.random_range(0..n);
                let mut b = rng.random_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                c.push(Gate::Cnot(a, b));
            }
        }
    }
    c
}

/// Gate budget that mixes an n-qubit random circuit well.
pub fn default_gate_count(n: usize) -> usize {
    (4 * n * n).max(500)
}

/// Random Clifford operator: the conjugation action of a long random circuit.
pub fn random_clifford(n: usize, rng: &mut impl Rng) -> SymplecticRep {
    let c = random_circuit(n, default_gate_count(n), rng);
    Tableau::simulate(&c).to_rep()
}

/// Rejection-sampled invertible matrix (acceptance rate near 29%).
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> F2Matrix {
    loop {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if rng.random() {
                    m.set(i, j, true);
                }
            }
        }
        if m.invert().is_some() {
            return m;
        }
    }
}

pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> F2Matrix {
    let mut m = F2Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            if rng.random() {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

/// Random stabilizer state: the stabilizer group of U|0..0> for random U.
pub fn random_state_spec(n: usize, rng: &mut impl Rng) -> StabilizerStateSpec {
    let c = random_circuit(n, default_gate_count(n), rng);
    StabilizerStateSpec::new(Tableau::simulate(&c).zero_state_stabilizers())
        .expect("stabilizers of a simulated state are always valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let a = random_circuit(5, 100, &mut rng_from_seed(42));
        let b = random_circuit(5, 100, &mut rng_from_seed(42));
        assert_eq!(a, b);
        let c = random_circuit(5, 100, &mut rng_from_seed(43));
        assert_ne!(a, c);
        let ra = random_clifford(4, &mut rng_from_seed(1));
        let rb = random_clifford(4, &mut rng_from_seed(1));
        assert_eq!(ra.s, rb.s);
        assert_eq!(ra.p, rb.p);
    }

    #[test]
    fn random_objects_are_well_formed() {
        let mut rng = rng_from_seed(9);
        for n in [1, 2, 5, 17] {
            assert!(random_invertible(n, &mut rng).invert().is_some());
            assert!(random_symmetric(n, &mut rng).is_symmetric());
            assert!(random_clifford(n, &mut rng).s.is_symplectic());
            random_state_spec(n, &mut rng).validate().unwrap();
        }
    }

    #[test]
    fn circuit_gate_mix() {
        let c = random_circuit(3, 300, &mut rng_from_seed(5));
        let k = c.counts();
        assert_eq!(k.total, 300);
        assert!(k.h > 0 && k.p > 0 && k.cnot > 0);
        assert_eq!(k.cz + k.x + k.y + k.z, 0);
        c.validate().unwrap();
    }
}
