//! Fixed-step RK4 propagation in the interaction picture of a constant
//! Hamiltonian.
//!
//! Integrating i d/dt psi~ = a(t) (W o E(t)) psi~, with W the coupling in
//! the H0 eigenbasis and E(t)_mn = exp(i (e_m - e_n) t), keeps the generator
//! small whenever the drive amplitude is small: the fast frequencies live in
//! the oscillating coefficients rather than in the state, so RK4 norm drift
//! stays far below what direct lab-frame integration would give at the same
//! step. The step still has to resolve the coefficient oscillations.

use num_complex::Complex64 as C64;

use crate::linalg::{eigh_real, CMat, CVec, RMat};

/// Propagator for H(t) = H0 + a(t) V with constant real-symmetric H0.
pub struct RotatingFramePropagator {
    /// Eigenvalues of H0, ascending.
    pub energies: Vec<f64>,
    /// Eigenvectors of H0 as columns (lab basis -> eigenbasis).
    pub basis: RMat,
    /// Coupling V transformed into the H0 eigenbasis.
    coupling: CMat,
    dim: usize,
}

/// Rotating-frame states sampled on a time grid plus the accumulated norm
/// drift of the integrator (renormalization is never applied).
pub struct Propagation {
    /// States in the H0 eigenbasis, interaction picture, one per grid time.
    pub states: Vec<CVec>,
    /// |norm(final) - 1|.
    pub norm_drift: f64,
}

impl RotatingFramePropagator {
    pub fn new(h0: &RMat, coupling: &CMat) -> Self {
        let dim = h0.nrows();
        let (energies, basis) = eigh_real(h0);
        let mut w = CMat::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = C64::new(0.0, 0.0);
                for r in 0..dim {
                    for c in 0..dim {
                        acc += C64::new(basis[(r, a)], 0.0) * coupling[(r, c)]
                            * C64::new(basis[(c, b)], 0.0);
                    }
                }
                w[(a, b)] = acc;
            }
        }
        Self {
            energies,
            basis,
            coupling: w,
            dim,
        }
    }

    /// Largest level spacing of H0 (sets the fastest coefficient frequency).
    pub fn energy_spread(&self) -> f64 {
        self.energies.last().unwrap() - self.energies.first().unwrap()
    }

    /// Map a lab-frame vector into the H0 eigenbasis.
    pub fn to_eigenbasis(&self, psi_lab: &CVec) -> CVec {
        let mut out = CVec::zeros(self.dim);
        for k in 0..self.dim {
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..self.dim {
                acc += C64::new(self.basis[(n, k)], 0.0) * psi_lab[n];
            }
            out[k] = acc;
        }
        out
    }

    /// Map a rotating-frame eigenbasis vector back to the lab frame at time t.
    pub fn to_lab(&self, psi_rot: &CVec, t: f64) -> CVec {
        let mut out = CVec::zeros(self.dim);
        for n in 0..self.dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..self.dim {
                acc += C64::new(self.basis[(n, k)], 0.0)
                    * C64::from_polar(1.0, -self.energies[k] * t)
                    * psi_rot[k];
            }
            out[n] = acc;
        }
        out
    }

    fn rhs(&self, t: f64, amp: f64, psi: &CVec, out: &mut CVec) {
        // -i a(t) (W o E(t)) psi = -i a(t) u o (W (conj(u) o psi))
        let mut tmp = CVec::zeros(self.dim);
        for n in 0..self.dim {
            tmp[n] = C64::from_polar(1.0, -self.energies[n] * t) * psi[n];
        }
        let w_tmp = &self.coupling * &tmp;
        for m in 0..self.dim {
            out[m] = C64::new(0.0, -amp) * C64::from_polar(1.0, self.energies[m] * t) * w_tmp[m];
        }
    }

    /// Integrate from t = 0 with amplitude schedule `amp`, sampling the
    /// rotating-frame state at each grid time. `max_coeff_freq` is the
    /// fastest frequency in the oscillating coefficients (level spacings
    /// plus drive tones); the step is its period divided by
    /// `steps_per_period`.
    pub fn evolve(
        &self,
        psi0_lab: &CVec,
        amp: &dyn Fn(f64) -> f64,
        t_grid: &[f64],
        max_coeff_freq: f64,
        steps_per_period: usize,
    ) -> Propagation {
        assert!(t_grid.windows(2).all(|w| w[1] >= w[0]));
        let dt_max = 2.0 * std::f64::consts::PI / (max_coeff_freq * steps_per_period as f64);
        let mut psi = self.to_eigenbasis(psi0_lab);
        let mut states = Vec::with_capacity(t_grid.len());
        let mut t_now = 0.0;
        let mut k1 = CVec::zeros(self.dim);
        let mut k2 = CVec::zeros(self.dim);
        let mut k3 = CVec::zeros(self.dim);
        let mut k4 = CVec::zeros(self.dim);
        for &t in t_grid {
            let span = t - t_now;
            if span > 0.0 {
                let steps = (span / dt_max).ceil().max(1.0) as usize;
                let h = span / steps as f64;
                for s in 0..steps {
                    let ts = t_now + s as f64 * h;
                    self.rhs(ts, amp(ts), &psi, &mut k1);
                    let p2 = &psi + &k1 * C64::new(0.5 * h, 0.0);
                    self.rhs(ts + 0.5 * h, amp(ts + 0.5 * h), &p2, &mut k2);
                    let p3 = &psi + &k2 * C64::new(0.5 * h, 0.0);
                    self.rhs(ts + 0.5 * h, amp(ts + 0.5 * h), &p3, &mut k3);
                    let p4 = &psi + &k3 * C64::new(h, 0.0);
                    self.rhs(ts + h, amp(ts + h), &p4, &mut k4);
                    psi += (&k1 + &k2 * C64::new(2.0, 0.0) + &k3 * C64::new(2.0, 0.0) + &k4)
                        * C64::new(h / 6.0, 0.0);
                }
                t_now = t;
            }
            states.push(psi.clone());
        }
        let norm_drift = (psi.norm() - 1.0).abs();
        Propagation { states, norm_drift }
    }
}
