//! Charge-noise-induced symmetry breaking and bitflip rates.
//!
//! A perturbation dV of the EFG tensor tilts the principal axis system, so a
//! magnetic field aligned with the unperturbed z axis acquires transverse
//! components beta_x, beta_y in the perturbed frame. Those transverse Zeeman
//! terms couple only opposite-parity eigenstates and drive bitflips at a
//! golden-rule rate set by the fluctuator spectral density.

use nalgebra::Matrix3;

use crate::clock::CatQubitFrame;
use crate::constants::{COULOMB_K, ELEMENTARY_CHARGE, HBAR};
use crate::error::{Result, SpincatError};
use crate::efg::PASFrame;
use crate::hamiltonian::{build_hamiltonian, eigensystem_with_parity};
use crate::linalg::{eigh_real, RMat};
use crate::spin::{make_spin_ops, SpinLength};
use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Two-level charge fluctuator: a point charge at `distance` along a lab
/// axis, jumping by `jump` with switching rate `kappa`.
#[derive(Debug, Clone, Copy)]
pub struct TLF {
    /// Mean distance to the nucleus (m).
    pub distance: f64,
    /// Jump length (m); 1 Angstrom by default.
    pub jump: f64,
    /// Switching rate (Hz).
    pub kappa: f64,
}

impl TLF {
    pub fn new(distance: f64, kappa: f64) -> Self {
        Self {
            distance,
            jump: 1e-10,
            kappa,
        }
    }
}

/// First-order response of the principal axis system to an EFG perturbation.
#[derive(Debug, Clone)]
pub struct EFGPerturbation {
    /// Lab-frame perturbation dV.
    pub delta_v: Matrix3<f64>,
    /// dV rotated into the unperturbed eigenbasis.
    pub omega: Matrix3<f64>,
    /// Skew-symmetric generator of the frame rotation.
    pub s_delta: Matrix3<f64>,
    /// Transverse field fractions along x and y.
    pub beta_x: f64,
    pub beta_y: f64,
    /// First-order quadrupole-coupling shift (Hz).
    pub delta_q: f64,
    /// First-order asymmetry shift.
    pub delta_eta: f64,
    /// ||dV|| / |D_zz|; the first-order treatment assumes this is small.
    pub perturbation_ratio: f64,
}

/// Rotate a perturbation into the PAS and solve the first-order frame shift.
pub fn perturbation_frame(pas: &PASFrame, delta_v: &Matrix3<f64>) -> Result<EFGPerturbation> {
    let omega = pas.r0.transpose() * delta_v * pas.r0;
    let d = pas.d0;
    let dzz = d[2];

    // generator of R_delta = R0 exp(S): the commutator [S, D0] must cancel
    // the off-diagonal part of Omega at first order, which fixes
    // S_ij = Omega_ij / (D_jj - D_ii); verified by the quadratic scaling of
    // the re-diagonalization residual
    let mut s = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let denom = d[j] - d[i];
            if denom.abs() < 1e-14 * dzz.abs().max(f64::MIN_POSITIVE) {
                return Err(SpincatError::DegenerateDenominator(denom.abs()));
            }
            s[(i, j)] = omega[(i, j)] / denom;
        }
    }

    let beta_x = omega[(0, 2)] / (dzz - d[0]);
    let beta_y = omega[(1, 2)] / (dzz - d[1]);

    // first-order eigenvalue shifts: delta D_ii = Omega_ii, no re-sorting
    let delta_q = pas.q_coupling * omega[(2, 2)] / dzz;
    let eta_new = (d[0] + omega[(0, 0)] - d[1] - omega[(1, 1)]) / (dzz + omega[(2, 2)]);
    let delta_eta = eta_new - pas.eta;

    Ok(EFGPerturbation {
        delta_v: *delta_v,
        omega,
        s_delta: s,
        beta_x,
        beta_y,
        delta_q,
        delta_eta,
        perturbation_ratio: delta_v.norm() / dzz.abs(),
    })
}

/// Lab-frame EFG perturbation of a point-charge fluctuator displaced by its
/// jump length toward/away from the nucleus: a single element
/// dV_xx = -jump * 6 k e / distance^4.
pub fn tlf_delta_v(tlf: &TLF) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    m[(0, 0)] = -tlf.jump * 6.0 * COULOMB_K * ELEMENTARY_CHARGE / tlf.distance.powi(4);
    m
}

/// Bound on the transverse fraction |beta| produced by a fluctuator.
#[derive(Debug, Clone, Copy)]
pub struct BetaBound {
    /// |e q dV_xx / (2I(2I-1) hbar Q)|, with all constants kept.
    pub exact: f64,
    /// |k e^2 q jump / (hbar distance^4 Q)|, prefactors dropped.
    pub prefactor_free: f64,
}

/// Evaluate both the exact-constant and the prefactor-free bound on |beta|.
pub fn beta_bound(spin: SpinLength, quad_moment_q: f64, q_coupling: f64, tlf: &TLF) -> BetaBound {
    let two_i = spin.two_i() as f64;
    let dv = tlf_delta_v(tlf)[(0, 0)].abs();
    let exact =
        ELEMENTARY_CHARGE * quad_moment_q * dv / (two_i * (two_i - 1.0) * HBAR * q_coupling);
    let prefactor_free = COULOMB_K * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * quad_moment_q
        * tlf.jump
        / (HBAR * tlf.distance.powi(4) * q_coupling);
    BetaBound {
        exact,
        prefactor_free,
    }
}

/// Golden-rule transition rates from the ground state to each opposite-parity
/// level, with the kappa-independent upper bounds.
#[derive(Debug, Clone)]
pub struct TransitionRates {
    /// (level index, rate in Hz) for each opposite-parity excited level.
    pub gamma: Vec<(usize, f64)>,
    /// Same shape, kappa-independent bound (gamma <= bound elementwise).
    pub bound: Vec<(usize, f64)>,
}

impl TransitionRates {
    /// Rate into the first excited level (the qubit bitflip rate).
    pub fn qubit_rate(&self) -> f64 {
        self.gamma.first().map(|&(_, g)| g).unwrap_or(0.0)
    }

    pub fn qubit_bound(&self) -> f64 {
        self.bound.first().map(|&(_, g)| g).unwrap_or(0.0)
    }
}

/// Opposite-parity levels reachable from the ground state: index, gap, and
/// the squared transverse matrix element |<m|Ix|0>|^2.
fn opposite_parity_channels(frame: &CatQubitFrame) -> Vec<(usize, f64, f64)> {
    let model = frame.model.with_b(frame.b0);
    let spec = eigensystem_with_parity(&build_hamiltonian(&model), model.spin).expect("z-field");
    let ops = make_spin_ops(model.spin);
    let dim = model.spin.dim();
    let p0 = spec.parities[0];
    (1..dim)
        .filter(|&m| spec.parities[m] != p0)
        .map(|m| {
            let mut elem = 0.0;
            for r in 0..dim {
                for c in 0..dim {
                    elem += spec.vectors[(r, m)] * ops.ix[(r, c)].re * spec.vectors[(c, 0)];
                }
            }
            (m, spec.energies[m] - spec.energies[0], elem * elem)
        })
        .collect()
}

/// Bitflip and leakage rates due to a single fluctuator with transverse
/// fraction `beta_x`: Gamma_m0 = I^2 (gamma_n B0 beta_x)^2 kappa /
/// (eps_m0^2 + 4 kappa^2), bounded by the same expression with the
/// Lorentzian replaced by 1/(2 |eps_m0|). The classical noise is symmetric,
/// so the downward rate equals the upward one.
pub fn single_tlf_rate(frame: &CatQubitFrame, tlf: &TLF, beta_x: f64) -> TransitionRates {
    let i_val = frame.model.spin.value();
    let prefactor = (i_val * frame.b0 * beta_x).powi(2);
    let mut gamma = Vec::new();
    let mut bound = Vec::new();
    for (m, gap, _) in opposite_parity_channels(frame) {
        gamma.push((
            m,
            prefactor * tlf.kappa / (gap * gap + 4.0 * tlf.kappa * tlf.kappa),
        ));
        bound.push((m, prefactor / (2.0 * gap.abs())));
    }
    TransitionRates { gamma, bound }
}

/// Golden-rule rates with the actual transverse matrix elements
/// |<m|Ix|0>|^2 in place of the I^2 bound. This is what a direct integration
/// of the dynamics converges to; [`single_tlf_rate`] upper-bounds it.
pub fn golden_rule_rate(frame: &CatQubitFrame, tlf: &TLF, beta_x: f64) -> TransitionRates {
    let prefactor = (frame.b0 * beta_x).powi(2);
    let mut gamma = Vec::new();
    let mut bound = Vec::new();
    for (m, gap, elem_sq) in opposite_parity_channels(frame) {
        gamma.push((
            m,
            elem_sq * prefactor * tlf.kappa / (gap * gap + 4.0 * tlf.kappa * tlf.kappa),
        ));
        bound.push((m, elem_sq * prefactor / (2.0 * gap.abs())));
    }
    TransitionRates { gamma, bound }
}

/// Summed golden-rule rates for an ensemble of fluctuators, each contributing
/// its own Lorentzian weighted by its exact beta bound. Also returns the
/// beta_max-factored bound.
pub fn multi_tlf_rate(
    frame: &CatQubitFrame,
    tlfs: &[TLF],
    quad_moment_q: f64,
) -> (TransitionRates, f64) {
    let spin = frame.model.spin;
    let i_val = spin.value();
    let gaps = opposite_parity_channels(frame);
    let betas: Vec<f64> = tlfs
        .iter()
        .map(|t| beta_bound(spin, quad_moment_q, frame.model.q_coupling, t).exact)
        .collect();
    let beta_max = betas.iter().cloned().fold(0.0, f64::max);

    let mut gamma = Vec::new();
    let mut bound = Vec::new();
    for &(m, gap, _) in &gaps {
        let rate: f64 = tlfs
            .iter()
            .zip(betas.iter())
            .map(|(t, &b)| {
                (i_val * frame.b0 * b).powi(2) * t.kappa / (gap * gap + 4.0 * t.kappa * t.kappa)
            })
            .sum();
        gamma.push((m, rate));
        bound.push((
            m,
            tlfs.len() as f64 * (i_val * frame.b0 * beta_max).powi(2) / (2.0 * gap.abs()),
        ));
    }
    (TransitionRates { gamma, bound }, beta_max)
}

/// Ensemble-averaged excitation probability from a direct integration of the
/// Schroedinger equation under telegraph noise.
#[derive(Debug, Clone)]
pub struct TransitionSim {
    pub t_grid: Vec<f64>,
    /// Mean excited-state population <|c_1(t)|^2>.
    pub prob: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Mean ground-state depletion at the final time.
    pub depletion: f64,
}

/// Direct simulation oracle for the golden-rule rate: evolves the full
/// (2I+1)-level state under H0 - gamma_n B0 beta xi(t) Ix with xi a telegraph
/// process, using exact per-segment propagators (the Hamiltonian only ever
/// takes two values).
pub fn direct_transition_sim(
    frame: &CatQubitFrame,
    tlf: &TLF,
    beta_x: f64,
    t_grid: &[f64],
    n_traj: usize,
    seed: u64,
) -> Result<TransitionSim> {
    let model = frame.model.with_b(frame.b0);
    let dim = model.spin.dim();
    let h0 = build_hamiltonian(&model);
    let ops = make_spin_ops(model.spin);
    let mut ix = RMat::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            ix[(r, c)] = ops.ix[(r, c)].re;
        }
    }

    // two Hamiltonian branches for xi = +-1/2
    let field = frame.b0 * beta_x;
    let h_plus = &h0 - &ix * (0.5 * field);
    let h_minus = &h0 + &ix * (0.5 * field);
    let eig_plus = eigh_real(&h_plus);
    let eig_minus = eigh_real(&h_minus);
    let eig_h0 = eigh_real(&h0);
    let ground = eig_h0.1.column(0).clone_owned();
    let excited = eig_h0.1.column(1).clone_owned();

    let nt = t_grid.len();
    // ordered collect keeps the averaging order deterministic
    let results: Vec<(Vec<f64>, f64)> = (0..n_traj)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64 + 1);
            let mut psi: Vec<C64> = (0..dim).map(|n| C64::new(ground[n], 0.0)).collect();
            let mut xi_up = rng.gen_bool(0.5);
            let mut t_now = 0.0;
            let mut next_switch =
                -rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln() / tlf.kappa;
            let mut probs = Vec::with_capacity(nt);
            let mut depletion = 0.0;
            for &t in t_grid {
                while next_switch < t {
                    let (vals, vecs) = if xi_up { &eig_plus } else { &eig_minus };
                    propagate_exact(&mut psi, vals, vecs, next_switch - t_now);
                    t_now = next_switch;
                    xi_up = !xi_up;
                    next_switch = t_now
                        - rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln() / tlf.kappa;
                }
                let (vals, vecs) = if xi_up { &eig_plus } else { &eig_minus };
                propagate_exact(&mut psi, vals, vecs, t - t_now);
                t_now = t;
                let c1: C64 = (0..dim).map(|n| C64::new(excited[n], 0.0).conj() * psi[n]).sum();
                probs.push(c1.norm_sqr());
                let c0: C64 = (0..dim).map(|n| C64::new(ground[n], 0.0).conj() * psi[n]).sum();
                depletion = 1.0 - c0.norm_sqr();
            }
            (probs, depletion)
        })
        .collect();

    let n = n_traj as f64;
    let mut prob = vec![0.0; nt];
    let mut sq = vec![0.0; nt];
    let mut depletion = 0.0;
    for (p, d) in &results {
        for i in 0..nt {
            prob[i] += p[i];
            sq[i] += p[i] * p[i];
        }
        depletion += d;
    }
    for i in 0..nt {
        prob[i] /= n;
        sq[i] = ((sq[i] / n - prob[i] * prob[i]).max(0.0) / n).sqrt();
    }
    depletion /= n;
    if depletion > 0.10 {
        return Err(SpincatError::PerturbationTooStrong(depletion));
    }
    Ok(TransitionSim {
        t_grid: t_grid.to_vec(),
        prob,
        stderr: sq,
        depletion,
    })
}

fn propagate_exact(psi: &mut [C64], vals: &[f64], vecs: &RMat, dt: f64) {
    if dt <= 0.0 {
        return;
    }
    let dim = psi.len();
    // project into the eigenbasis, apply phases, project back
    let mut coeffs = vec![C64::new(0.0, 0.0); dim];
    for k in 0..dim {
        let mut acc = C64::new(0.0, 0.0);
        for n in 0..dim {
            acc += C64::new(vecs[(n, k)], 0.0) * psi[n];
        }
        coeffs[k] = acc * C64::from_polar(1.0, -vals[k] * dt);
    }
    for n in 0..dim {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..dim {
            acc += C64::new(vecs[(n, k)], 0.0) * coeffs[k];
        }
        psi[n] = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::find_clock_transition;
    use crate::efg::{efg_to_pas, EFGTensor};
    use crate::hamiltonian::NuclearSpinModel;
    use nalgebra::Vector3;

    fn pas_unit(eta: f64) -> PASFrame {
        // D_zz = 1 with the requested asymmetry
        let dxx = (eta - 1.0) / 2.0;
        let dyy = (-eta - 1.0) / 2.0;
        let v = EFGTensor::from_diagonal(dxx, dyy, 1.0).unwrap();
        efg_to_pas(&v, 1e-28, SpinLength::new(7).unwrap()).unwrap()
    }

    fn frame(two_i: u32, eta: f64, q: f64) -> CatQubitFrame {
        let m = NuclearSpinModel::new(SpinLength::new(two_i).unwrap(), q, eta, 5.55e6, 0.0).unwrap();
        find_clock_transition(&m).unwrap()
    }

    #[test]
    fn diagonal_perturbation_gives_pure_coupling_shifts() {
        let pas = pas_unit(0.8);
        let dv = Matrix3::from_diagonal(&Vector3::new(-0.005, -0.005, 0.01));
        let p = perturbation_frame(&pas, &dv).unwrap();
        assert!(p.beta_x.abs() < 1e-14);
        assert!(p.beta_y.abs() < 1e-14);
        assert!((p.delta_q - pas.q_coupling * 0.01).abs() < 1e-12 * pas.q_coupling.abs());
        assert!(p.delta_eta.abs() > 0.0);
    }

    #[test]
    fn single_off_diagonal_element_maps_to_beta_x() {
        let pas = pas_unit(0.8);
        let eps = 1e-4;
        let mut dv = Matrix3::zeros();
        dv[(0, 2)] = eps;
        dv[(2, 0)] = eps;
        let p = perturbation_frame(&pas, &dv).unwrap();
        assert!((p.beta_x - eps / (pas.d0[2] - pas.d0[0])).abs() < 1e-15);
        assert!(p.beta_y.abs() < 1e-15);
    }

    #[test]
    fn frame_rotation_residual_is_second_order() {
        let pas = pas_unit(0.6);
        let base = Matrix3::new(0.3, 0.1, -0.2, 0.1, -0.25, 0.15, -0.2, 0.15, -0.05);
        let off_norm = |eps: f64| {
            let dv = base * eps;
            let p = perturbation_frame(&pas, &dv).unwrap();
            // exact skew exponential via the rotation it generates
            let r = pas.r0 * matrix_exp3(&p.s_delta);
            let full = pas.r0 * Matrix3::from_diagonal(&pas.d0) * pas.r0.transpose() + dv;
            let rot = r.transpose() * full * r;
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        acc += rot[(i, j)] * rot[(i, j)];
                    }
                }
            }
            acc.sqrt()
        };
        let r1 = off_norm(1e-3);
        let r2 = off_norm(5e-4);
        let ratio = r1 / r2;
        assert!((ratio - 4.0).abs() < 0.3, "quadratic scaling, got {ratio}");
    }

    fn matrix_exp3(s: &Matrix3<f64>) -> Matrix3<f64> {
        // Rodrigues for a skew-symmetric generator
        let axis = Vector3::new(s[(2, 1)], s[(0, 2)], s[(1, 0)]);
        let theta = axis.norm();
        let id = Matrix3::identity();
        if theta < 1e-300 {
            return id;
        }
        id + s * (theta.sin() / theta) + s * s * ((1.0 - theta.cos()) / (theta * theta))
    }

    #[test]
    fn omega_preserves_frobenius_norm_and_skewness() {
        let pas = pas_unit(0.7);
        let dv = Matrix3::new(0.01, 0.002, -0.004, 0.002, -0.006, 0.003, -0.004, 0.003, -0.004);
        let p = perturbation_frame(&pas, &dv).unwrap();
        assert!((p.omega.norm() - dv.norm()).abs() < 1e-12 * dv.norm());
        assert!((p.s_delta + p.s_delta.transpose()).norm() < 1e-14);
    }

    #[test]
    fn beta_invariant_under_joint_scaling() {
        let pas = pas_unit(0.7);
        let mut dv = Matrix3::zeros();
        dv[(0, 2)] = 1e-4;
        dv[(2, 0)] = 1e-4;
        let p1 = perturbation_frame(&pas, &dv).unwrap();
        // scale the EFG and the perturbation together
        let v2 = EFGTensor::new(
            pas.r0 * Matrix3::from_diagonal(&(pas.d0 * 3.0)) * pas.r0.transpose(),
        )
        .unwrap();
        let pas2 = efg_to_pas(&v2, 1e-28, SpinLength::new(7).unwrap()).unwrap();
        let p2 = perturbation_frame(&pas2, &(dv * 3.0)).unwrap();
        assert!((p1.beta_x - p2.beta_x).abs() < 1e-12);
    }

    #[test]
    fn tlf_perturbation_magnitude_and_scaling() {
        let tlf = TLF::new(10e-9, 1.0);
        let dv = tlf_delta_v(&tlf);
        let want = 6.0 * COULOMB_K * ELEMENTARY_CHARGE * 1e-10 / (10e-9f64).powi(4);
        assert!((dv[(0, 0)].abs() - want).abs() < 1e-6 * want);
        // doubling the distance divides by 16
        let dv2 = tlf_delta_v(&TLF::new(20e-9, 1.0));
        assert!((dv[(0, 0)] / dv2[(0, 0)] - 16.0).abs() < 1e-12);
        // zero jump, zero perturbation
        let mut t0 = tlf;
        t0.jump = 0.0;
        assert_eq!(tlf_delta_v(&t0).norm(), 0.0);
    }

    #[test]
    fn beta_bound_anchor_at_ten_nanometers() {
        let spin = SpinLength::new(7).unwrap();
        let q = 1e5;
        let b = beta_bound(spin, 1e-28, q, &TLF::new(10e-9, 1.0));
        // Q |beta|: prefactor-free ~ 2.19 Hz, exact ~ 0.31 Hz
        assert!((q * b.prefactor_free - 2.19).abs() < 0.02, "{}", q * b.prefactor_free);
        assert!((q * b.exact - 0.3125).abs() < 0.002, "{}", q * b.exact);
        // doubling Q halves the bound
        let b2 = beta_bound(spin, 1e-28, 2.0 * q, &TLF::new(10e-9, 1.0));
        assert!((b.exact / b2.exact - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coupling_shift_anchors_at_ten_nanometers() {
        // dQ ~ 1 Hz and d_eta ~ 1e-5 for Q = 100 kHz
        let q = 1e5;
        let dv_mag = tlf_delta_v(&TLF::new(10e-9, 1.0))[(0, 0)].abs();
        let two_i = 7.0;
        let dq = ELEMENTARY_CHARGE * 1e-28 * dv_mag / (two_i * (two_i - 1.0) * HBAR);
        assert!(dq > 0.1 && dq < 3.0, "dQ = {dq} Hz");
        let deta = dq / q;
        assert!(deta > 1e-6 && deta < 1e-4, "d_eta = {deta}");
    }

    #[test]
    fn bitflip_time_anchors() {
        let fr = frame(7, 0.75, 1e5);
        let beta = beta_bound(fr.model.spin, 1e-28, fr.model.q_coupling, &TLF::new(10e-9, 1.0))
            .exact;
        let rates = single_tlf_rate(&fr, &TLF::new(10e-9, 1.0), beta);
        let lifetime = 1.0 / rates.qubit_bound();
        assert!(lifetime > 1e3, "10 nm lifetime {lifetime} s");
        // 5 nm: 256x faster
        let beta5 = beta_bound(fr.model.spin, 1e-28, fr.model.q_coupling, &TLF::new(5e-9, 1.0))
            .exact;
        let rates5 = single_tlf_rate(&fr, &TLF::new(5e-9, 1.0), beta5);
        let lifetime5 = 1.0 / rates5.qubit_bound();
        assert!(lifetime5 > 1.0 && lifetime5 < 10.0, "5 nm lifetime {lifetime5} s");
        assert!((lifetime / lifetime5 - 256.0).abs() < 1e-6 * 256.0);
    }

    #[test]
    fn bound_dominates_rate_for_every_kappa() {
        let fr = frame(7, 0.75, 1e5);
        let beta = 1e-6;
        for &kappa in &[1e-3, 1.0, 1e3, 2e4, 1e6, 1e9] {
            let rates = single_tlf_rate(&fr, &TLF::new(10e-9, kappa), beta);
            for (g, b) in rates.gamma.iter().zip(rates.bound.iter()) {
                assert!(g.1 <= b.1 * (1.0 + 1e-12), "kappa = {kappa}");
            }
        }
    }

    #[test]
    fn leakage_rates_are_smaller_than_qubit_rate() {
        let fr = frame(7, 0.75, 1e5);
        // at the qubit-gap-matched kappa the first transition dominates
        let kappa = 0.5 * fr.delta;
        let rates = single_tlf_rate(&fr, &TLF::new(10e-9, kappa), 1e-6);
        let qubit = rates.qubit_rate();
        for &(m, g) in rates.gamma.iter().skip(1) {
            assert!(g < qubit, "level {m} rate {g} vs qubit {qubit}");
        }
    }

    #[test]
    fn motional_narrowing_limit() {
        let fr = frame(7, 0.75, 1e5);
        let r1 = single_tlf_rate(&fr, &TLF::new(10e-9, 100.0 * fr.delta), 1e-6).qubit_rate();
        let r2 = single_tlf_rate(&fr, &TLF::new(10e-9, 200.0 * fr.delta), 1e-6).qubit_rate();
        assert!((r1 / r2 - 2.0).abs() < 0.01, "1/kappa scaling, got {}", r1 / r2);
    }

    #[test]
    fn multi_tlf_reduction_and_additivity() {
        let fr = frame(7, 0.75, 1e5);
        let t = TLF::new(10e-9, 1e3);
        let (single, _) = multi_tlf_rate(&fr, &[t], 1e-28);
        let beta = beta_bound(fr.model.spin, 1e-28, fr.model.q_coupling, &t).exact;
        let direct = single_tlf_rate(&fr, &t, beta);
        assert!((single.qubit_rate() - direct.qubit_rate()).abs() < 1e-12 * direct.qubit_rate());
        // two identical fluctuators double the rate
        let (double, _) = multi_tlf_rate(&fr, &[t, t], 1e-28);
        assert!((double.qubit_rate() / single.qubit_rate() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nearest_fluctuator_dominates() {
        let fr = frame(7, 0.75, 1e5);
        let near = TLF::new(10e-9, 1e3);
        let far: Vec<TLF> = (0..5).map(|_| TLF::new(30e-9, 1e3)).collect();
        let mut all = vec![near];
        all.extend(far);
        let (with_far, beta_max) = multi_tlf_rate(&fr, &all, 1e-28);
        let (near_only, _) = multi_tlf_rate(&fr, &all[..1], 1e-28);
        let rel = (with_far.qubit_rate() - near_only.qubit_rate()) / near_only.qubit_rate();
        assert!(rel < 0.01, "far fluctuators contribute {rel}");
        assert!((beta_max - beta_bound(fr.model.spin, 1e-28, 1e5, &all[0]).exact).abs() < 1e-18);
    }

    #[test]
    fn transverse_operators_couple_only_opposite_parity() {
        for two_i in [7u32, 9] {
            let fr = frame(two_i, 0.75, 1.0);
            let model = fr.model.with_b(fr.b0);
            let spec = eigensystem_with_parity(&build_hamiltonian(&model), model.spin).unwrap();
            let ops = make_spin_ops(model.spin);
            for a in 0..model.spin.dim() {
                for b in 0..model.spin.dim() {
                    if spec.parities[a] != spec.parities[b] {
                        continue;
                    }
                    for op in [&ops.ix, &ops.iy] {
                        let mut elem = C64::new(0.0, 0.0);
                        for r in 0..model.spin.dim() {
                            for c in 0..model.spin.dim() {
                                elem += C64::new(spec.vectors[(r, a)], 0.0) * op[(r, c)]
                                    * C64::new(spec.vectors[(c, b)], 0.0);
                            }
                        }
                        assert!(elem.norm() < 1e-12, "same-parity element {elem}");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_perturbation_gives_zero_transition() {
        let fr = frame(7, 0.75, 1.0);
        let t_grid = [5.0, 10.0];
        let sim =
            direct_transition_sim(&fr, &TLF::new(10e-9, 0.3), 0.0, &t_grid, 200, 1).unwrap();
        for p in &sim.prob {
            assert!(*p < 1e-20);
        }
    }

    #[test]
    fn golden_rule_matches_direct_simulation() {
        // desk-scale regime: beta inflated far above any physical
        // charge-noise value so the transition is measurable in a short run
        let fr = frame(7, 0.75, 1.0);
        let kappa = 0.5 * fr.delta;
        let tlf = TLF::new(10e-9, kappa);
        let beta = 2.0e-3;
        let t_grid: Vec<f64> = (1..=12).map(|k| 10.0 * k as f64).collect();
        let sim = direct_transition_sim(&fr, &tlf, beta, &t_grid, 6000, 7).unwrap();
        assert!(sim.depletion < 0.10);
        let rate = golden_rule_rate(&fr, &tlf, beta).qubit_rate();
        // the I^2-bound estimate sits far above the true rate
        assert!(single_tlf_rate(&fr, &tlf, beta).qubit_rate() > rate);
        // slope between the transient end and the final time
        let (i0, i1) = (3, 11);
        let slope = (sim.prob[i1] - sim.prob[i0]) / (t_grid[i1] - t_grid[i0]);
        let se = (sim.stderr[i1].powi(2) + sim.stderr[i0].powi(2)).sqrt()
            / (t_grid[i1] - t_grid[i0]);
        assert!(
            (slope - rate).abs() < 3.0 * se,
            "slope {slope} vs golden rule {rate} (3se {})",
            3.0 * se
        );
    }

    #[test]
    fn strong_perturbation_is_rejected() {
        let fr = frame(7, 0.75, 1.0);
        let tlf = TLF::new(10e-9, 0.5 * fr.delta);
        let t_grid = [200.0, 400.0];
        let res = direct_transition_sim(&fr, &tlf, 0.05, &t_grid, 200, 3);
        assert!(matches!(res, Err(SpincatError::PerturbationTooStrong(_))));
    }
}
