//! Independent brute-force oracle for the integration tests: plain
//! row-major complex matrices built from literal Pauli matrices, with no
//! shared code paths into the library.
#![allow(dead_code)]

use num_complex::Complex64;
use qec_core::{DenseOperator, PauliSum, Qubit};
use rand::Rng;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub dim: usize,
    pub data: Vec<C>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![c(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn at(&self, r: usize, col: usize) -> C {
        self.data[r * self.dim + col]
    }

    pub fn scale(&self, s: C) -> Mat {
        Mat { dim: self.dim, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(self.dim, o.dim);
        Mat { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn matmul(&self, o: &Mat) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.at(i, k);
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * o.at(k, j);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    pub fn max_abs_diff(&self, o: &Mat) -> f64 {
        assert_eq!(self.dim, o.dim);
        self.data.iter().zip(&o.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let d = a.dim * b.dim;
    let mut out = Mat::zeros(d);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let x = a.at(i, j);
            for k in 0..b.dim {
                for l in 0..b.dim {
                    out.data[(i * b.dim + k) * d + j * b.dim + l] = x * b.at(k, l);
                }
            }
        }
    }
    out
}

pub fn sigma(letter: char) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let data = match letter {
        'I' => vec![o, z, z, o],
        'X' => vec![z, o, o, z],
        'Y' => vec![z, -i, i, z],
        'Z' => vec![o, z, z, -o],
        _ => panic!("bad letter {letter}"),
    };
    Mat { dim: 2, data }
}

pub fn string_matrix(letters: &str) -> Mat {
    letters.chars().fold(Mat::identity(1), |acc, l| kron(&acc, &sigma(l)))
}

pub fn sum_matrix(terms: &[(&str, C)]) -> Mat {
    let m = terms[0].0.len();
    terms.iter().fold(Mat::zeros(1 << m), |acc, (s, w)| acc.add(&string_matrix(s).scale(*w)))
}

pub fn from_dense(d: &DenseOperator) -> Mat {
    Mat { dim: d.dim(), data: d.data().to_vec() }
}

/// Pauli sum expanded term by term through literal Kronecker products.
pub fn pauli_sum_matrix(p: &PauliSum) -> Mat {
    let m = p.num_qubits();
    p.iter().fold(Mat::zeros(1 << m), |acc, (letters, w)| {
        let s: String = letters.iter().map(|l| l.as_char()).collect();
        acc.add(&string_matrix(&s).scale(w))
    })
}

/// Keeps qubit positions `keep` (in that order) of an `m`-qubit operator;
/// position 0 is the most significant bit.
pub fn partial_trace(rho: &Mat, m: usize, keep: &[usize]) -> Mat {
    let traced: Vec<usize> = (0..m).filter(|p| !keep.contains(p)).collect();
    let k = keep.len();
    let mut out = Mat::zeros(1 << k);
    let index = |kept_bits: usize, traced_bits: usize| {
        let mut idx = 0usize;
        for (i, &p) in keep.iter().enumerate() {
            if kept_bits >> (k - 1 - i) & 1 == 1 {
                idx |= 1 << (m - 1 - p);
            }
        }
        for (i, &p) in traced.iter().enumerate() {
            if traced_bits >> (traced.len() - 1 - i) & 1 == 1 {
                idx |= 1 << (m - 1 - p);
            }
        }
        idx
    };
    for a in 0..1 << k {
        for b in 0..1 << k {
            let mut s = c(0.0, 0.0);
            for t in 0..1 << traced.len() {
                s += rho.at(index(a, t), index(b, t));
            }
            out.data[a * (1 << k) + b] = s;
        }
    }
    out
}

/// Position of a label in the global order `A, S1, N1, S2, N2, ...`.
pub fn global_position(q: Qubit) -> usize {
    match q {
        Qubit::A => 0,
        Qubit::S(k) => 2 * k - 1,
        Qubit::N(k) => 2 * k,
    }
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` from a unit Bloch vector.
pub fn bloch_ket(b: [f64; 3]) -> [C; 2] {
    let theta = b[2].clamp(-1.0, 1.0).acos();
    let phi = b[1].atan2(b[0]);
    [c((theta / 2.0).cos(), 0.0), C::from_polar((theta / 2.0).sin(), phi)]
}

/// `i^k` in floating point.
pub fn ipow(k: i64) -> C {
    c(0.0, 1.0).powi(k.rem_euclid(4) as i32)
}

/// `U = ½ Σ_μ α_μ^{-1} σ_μ^(A) ⊗ σ_μ^{⊗n}` lifted to the full global order.
pub fn encoding_unitary_global(n: usize) -> Mat {
    let alpha = [c(1.0, 0.0), c(0.0, 1.0), -ipow(n as i64 + 1), c(0.0, 1.0)];
    let mut u = Mat::zeros(1 << (2 * n + 1));
    for (mu, letter) in ['I', 'X', 'Y', 'Z'].into_iter().enumerate() {
        let mut s = String::from(letter);
        for _ in 0..n {
            s.push(letter);
            s.push('I');
        }
        u = u.add(&string_matrix(&s).scale(alpha[mu].inv() * 0.5));
    }
    u
}

/// Encoded global density matrix for input Bloch vector `b`.
pub fn encoded_density(n: usize, b: [f64; 3]) -> Mat {
    let psi = bloch_ket(b);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
    let mut state: Vec<C> = psi.to_vec();
    for _ in 0..n {
        state = state.iter().flat_map(|a| bell.iter().map(move |b| a * b)).collect();
    }
    let u = encoding_unitary_global(n);
    let d = u.dim;
    let out: Vec<C> = (0..d).map(|i| (0..d).map(|j| u.at(i, j) * state[j]).sum()).collect();
    let mut rho = Mat::zeros(d);
    for i in 0..d {
        for j in 0..d {
            rho.data[i * d + j] = out[i] * out[j].conj();
        }
    }
    rho
}

/// Oracle reduced state of the encoded input on `labels` (in that order).
pub fn encoded_reduced(n: usize, b: [f64; 3], labels: &[Qubit]) -> Mat {
    let keep: Vec<usize> = labels.iter().map(|q| global_position(*q)).collect();
    partial_trace(&encoded_density(n, b), 2 * n + 1, &keep)
}

/// Uniform point on the sphere by normalizing a Gaussian triple.
pub fn random_unit<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [0, 1, 2].map(|_| {
            let u1: f64 = rng.random::<f64>().max(1e-300);
            let u2: f64 = rng.random();
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        });
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-6 {
            return v.map(|x| x / norm);
        }
    }
}
