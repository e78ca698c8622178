#![allow(dead_code)]

use cliffsynth::{Circuit, Gate, Pauli, Tableau};
use num_complex::Complex64;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Dense 2^n x 2^n unitary, row-major. Qubit q is bit q of the basis index.
#[derive(Clone)]
pub struct Dense {
    pub n: usize,
    pub dim: usize,
    pub m: Vec<Complex64>,
}

impl Dense {
    pub fn identity(n: usize) -> Dense {
        assert!(n <= 12, "dense oracle is for small instances");
        let dim = 1usize << n;
        let mut m = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = Complex64::ONE;
        }
        Dense { n, dim, m }
    }

    fn at(&self, r: usize, c: usize) -> Complex64 {
        self.m[r * self.dim + c]
    }

    fn apply_1q(&mut self, q: usize, u: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for r0 in 0..self.dim {
            if r0 & bit != 0 {
                continue;
            }
            let r1 = r0 | bit;
            for j in 0..self.dim {
                let a = self.at(r0, j);
                let b = self.at(r1, j);
                self.m[r0 * self.dim + j] = u[0][0] * a + u[0][1] * b;
                self.m[r1 * self.dim + j] = u[1][0] * a + u[1][1] * b;
            }
        }
    }

    fn swap_rows(&mut self, r0: usize, r1: usize) {
        for j in 0..self.dim {
            self.m.swap(r0 * self.dim + j, r1 * self.dim + j);
        }
    }

    /// Left-multiply by the gate's unitary, i.e. run the gate after
    /// everything already applied.
    pub fn apply_gate(&mut self, g: Gate) {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        let i = Complex64::I;
        match g {
            Gate::H(q) => {
                let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.apply_1q(q, [[s, s], [s, -s]]);
            }
            Gate::P(q) => self.apply_1q(q, [[one, zero], [zero, i]]),
            Gate::X(q) => self.apply_1q(q, [[zero, one], [one, zero]]),
            Gate::Y(q) => self.apply_1q(q, [[zero, -i], [i, zero]]),
            Gate::Z(q) => self.apply_1q(q, [[one, zero], [zero, -one]]),
            Gate::Cnot(c, t) => {
                let cb = 1usize << c;
                let tb = 1usize << t;
                for r in 0..self.dim {
                    if r & cb != 0 && r & tb == 0 {
                        self.swap_rows(r, r | tb);
                    }
                }
            }
            Gate::Cz(a, b) => {
                let ab = (1usize << a) | (1usize << b);
                for r in 0..self.dim {
                    if r & ab == ab {
                        for j in 0..self.dim {
                            self.m[r * self.dim + j] = -self.at(r, j);
                        }
                    }
                }
            }
        }
    }

    pub fn from_circuit(c: &Circuit) -> Dense {
        let mut d = Dense::identity(c.n);
        for &g in c.gates() {
            d.apply_gate(g);
        }
        d
    }

    /// Unitary of a signed Pauli i^xi * X^x * Z^z.
    pub fn from_pauli(p: &Pauli) -> Dense {
        let n = p.n();
        let dim = 1usize << n;
        let mut x_mask = 0usize;
        let mut z_mask = 0usize;
        for q in 0..n {
            if p.x.get(q) {
                x_mask |= 1 << q;
            }
            if p.z.get(q) {
                z_mask |= 1 << q;
            }
        }
        let phase = Complex64::I.powu(p.xi as u32);
        let mut m = vec![Complex64::ZERO; dim * dim];
        for b in 0..dim {
            let sign = if (b & z_mask).count_ones() % 2 == 1 {
                -Complex64::ONE
            } else {
                Complex64::ONE
            };
            m[(b ^ x_mask) * dim + b] = phase * sign;
        }
        Dense { n, dim, m }
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut m = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.at(r, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..dim {
                    m[r * dim + j] += a * other.at(k, j);
                }
            }
        }
        Dense { n: self.n, dim, m }
    }

    pub fn dagger(&self) -> Dense {
        let dim = self.dim;
        let mut m = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            for j in 0..dim {
                m[j * dim + r] = self.at(r, j).conj();
            }
        }
        Dense { n: self.n, dim, m }
    }

    /// U * P * U^dagger for a signed Pauli P.
    pub fn conjugate_pauli(&self, p: &Pauli) -> Dense {
        self.mul(&Dense::from_pauli(p)).mul(&self.dagger())
    }

    pub fn max_abs_diff(&self, other: &Dense) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max elementwise deviation after aligning global phase on the
    /// largest-magnitude entry of self.
    pub fn max_dev_up_to_phase(&self, other: &Dense) -> f64 {
        let idx = (0..self.m.len())
            .max_by(|&a, &b| self.m[a].norm().total_cmp(&self.m[b].norm()))
            .expect("nonempty matrix");
        let lead = self.m[idx];
        assert!(lead.norm() > 1e-6, "unitary has no dominant entry");
        let lambda = other.m[idx] / lead;
        let lambda = lambda / lambda.norm();
        self.m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| (lambda * a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Image of an arbitrary signed Pauli under the tableau's Clifford:
/// conjugate each generator factor and multiply the images in
/// X^x-then-Z^z order.
pub fn tableau_conjugate(t: &Tableau, p: &Pauli) -> Pauli {
    let n = t.n();
    assert_eq!(p.n(), n);
    let mut acc = Pauli::identity(n);
    acc.xi = p.xi;
    for q in 0..n {
        if p.x.get(q) {
            acc = acc.mul(&t.row(q));
        }
    }
    for q in 0..n {
        if p.z.get(q) {
            acc = acc.mul(&t.row(n + q));
        }
    }
    acc
}
