//! Nuclear-spin Hamiltonians with quadrupole coupling and their
//! parity-labelled spectra.
//!
//! With the magnetic field along the principal z axis the Hamiltonian
//! H = -b Iz + Hq is real symmetric in the Iz basis and commutes with the
//! Z2 parity operator, so every eigenvector carries a definite parity label.

use crate::error::{Result, SpincatError};
use crate::linalg::{eigh_real, to_complex, RMat, RVec};
use crate::spin::{make_spin_ops, Parity, SpinLength};

/// Nuclear-spin model parameters defining H = -b Iz + Hq.
#[derive(Debug, Clone, Copy)]
pub struct NuclearSpinModel {
    pub spin: SpinLength,
    /// Quadrupole coupling Q (Hz), > 0.
    pub q_coupling: f64,
    /// Asymmetry parameter in [0, 1].
    pub eta: f64,
    /// Nuclear gyromagnetic ratio (Hz/T).
    pub gamma_n: f64,
    /// Zeeman frequency b = gamma_n * B (Hz).
    pub b: f64,
}

impl NuclearSpinModel {
    pub fn new(spin: SpinLength, q_coupling: f64, eta: f64, gamma_n: f64, b: f64) -> Result<Self> {
        if spin.two_i() < 2 {
            return Err(SpincatError::InvalidSpinLength(spin.two_i()));
        }
        if q_coupling <= 0.0 {
            return Err(SpincatError::InvalidRegime(format!(
                "quadrupole coupling must be positive, got {q_coupling}"
            )));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(SpincatError::InvalidRegime(format!(
                "eta must lie in [0, 1], got {eta}"
            )));
        }
        Ok(Self {
            spin,
            q_coupling,
            eta,
            gamma_n,
            b,
        })
    }

    pub fn with_b(&self, b: f64) -> Self {
        Self { b, ..*self }
    }
}

/// Quadrupole Hamiltonian (Q/2) [3 Iz^2 + (eta/2)(I+^2 + I-^2) - I^2],
/// returned as a real symmetric matrix in the Iz basis.
pub fn build_quadrupole(spin: SpinLength, q_coupling: f64, eta: f64) -> RMat {
    let ops = make_spin_ops(spin);
    let dim = spin.dim();
    let iz2 = &ops.iz * &ops.iz;
    let ipp = &ops.iplus * &ops.iplus;
    let imm = &ops.iminus * &ops.iminus;
    let mut h = RMat::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let z = 3.0 * iz2[(r, c)].re + 0.5 * eta * (ipp[(r, c)].re + imm[(r, c)].re)
                - ops.isq[(r, c)].re;
            h[(r, c)] = 0.5 * q_coupling * z;
        }
    }
    h
}

/// Full Hamiltonian H = -b Iz + Hq (real symmetric, Hz).
pub fn build_hamiltonian(model: &NuclearSpinModel) -> RMat {
    let mut h = build_quadrupole(model.spin, model.q_coupling, model.eta);
    let m = model.spin.m_values();
    for (n, mm) in m.iter().enumerate() {
        h[(n, n)] -= model.b * mm;
    }
    h
}

/// Eigensystem of a Z2-symmetric Hamiltonian with parity labels.
#[derive(Debug, Clone)]
pub struct ParityLabeledSpectrum {
    /// Energies in ascending order (Hz).
    pub energies: Vec<f64>,
    /// Parity label of each eigenvector.
    pub parities: Vec<Parity>,
    /// Eigenvectors as columns, matching `energies`.
    pub vectors: RMat,
    pub spin: SpinLength,
}

impl ParityLabeledSpectrum {
    /// Splitting between the two lowest levels.
    pub fn gap(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    /// Index of the lowest level with the requested parity.
    pub fn lowest_with_parity(&self, parity: Parity) -> Option<usize> {
        self.parities.iter().position(|&p| p == parity)
    }
}

/// Diagonalize H (real symmetric, commuting with the Z2 parity operator) and
/// label each eigenvector by parity. Eigenvectors inside a degenerate energy
/// cluster are recombined so each has definite parity; generic solvers return
/// arbitrary mixtures there.
pub fn eigensystem_with_parity(h: &RMat, spin: SpinLength) -> Result<ParityLabeledSpectrum> {
    let dim = spin.dim();
    assert_eq!(h.nrows(), dim);

    // parity-commutation precondition, checked on the complex form
    let ops = make_spin_ops(spin);
    let hc = to_complex(h);
    let scale = h.norm().max(f64::MIN_POSITIVE);
    let comm = (&hc * &ops.parity - &ops.parity * &hc).norm() / scale;
    if comm > 1e-9 {
        return Err(SpincatError::ParityMixing {
            index: 0,
            expectation: comm,
        });
    }

    let (energies, mut vectors) = eigh_real(h);

    // diag(+1, -1, +1, ...) in the m = I..-I basis
    let label_sign = |v: &RVec| -> f64 {
        v.iter()
            .enumerate()
            .map(|(n, &a)| if n % 2 == 0 { a * a } else { -a * a })
            .sum()
    };

    // re-diagonalize the parity label inside degenerate clusters
    let tol = 1e-9 * scale.max(1.0);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (energies[end] - energies[end - 1]).abs() < tol {
            end += 1;
        }
        if end - start > 1 {
            // split the cluster span into even-index and odd-index channels
            let cols: Vec<RVec> = (start..end).map(|k| vectors.column(k).clone_owned()).collect();
            let k = cols.len();
            let mut pblock = RMat::zeros(k, k);
            for a in 0..k {
                for b in 0..k {
                    let s: f64 = (0..dim)
                        .map(|n| {
                            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                            cols[a][n] * sign * cols[b][n]
                        })
                        .sum();
                    pblock[(a, b)] = s;
                }
            }
            let (_, pv) = eigh_real(&pblock);
            for a in 0..k {
                let mut newcol = RVec::zeros(dim);
                for b in 0..k {
                    newcol += &cols[b] * pv[(b, a)];
                }
                let norm = newcol.norm();
                vectors.set_column(start + a, &(newcol / norm));
            }
        }
        start = end;
    }

    let mut parities = Vec::with_capacity(dim);
    for k in 0..dim {
        let v = vectors.column(k).clone_owned();
        let s = label_sign(&v);
        if s.abs() < 0.99 {
            return Err(SpincatError::ParityMixing {
                index: k,
                expectation: s.abs(),
            });
        }
        parities.push(Parity::from_sign(s));
    }

    Ok(ParityLabeledSpectrum {
        energies,
        parities,
        vectors,
        spin,
    })
}
