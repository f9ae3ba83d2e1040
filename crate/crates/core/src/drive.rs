//! NMR-style single-qubit control of the cat qubit: rotating-frame
//! analytics and full driven-dynamics simulation.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use crate::clock::CatQubitFrame;
use crate::error::{Result, SpincatError};
use crate::hamiltonian::build_hamiltonian;
use crate::linalg::{CMat, CVec};
use crate::propagate::RotatingFramePropagator;
use crate::spin::{cat_state, make_spin_ops, overlap_gamma, CatParams, Parity, SpinLength};

/// AC-drive specification. The drive term is
/// gamma_n B_perp cos(2 pi f t + phase) I_perp with
/// I_perp = cos(theta_axis) Ix + sin(theta_axis) Iy (frequency in Hz,
/// phases per the crate convention: coefficient times time).
#[derive(Debug, Clone)]
pub struct DriveSpec {
    /// AC amplitude as a Zeeman frequency gamma_n * B_perp (Hz).
    pub zeeman_amp: f64,
    /// In-plane drive-axis angle theta.
    pub theta_axis: f64,
    /// Drive phase phi.
    pub phase: f64,
    /// Carrier frequency (Hz); set to the qubit splitting for resonance.
    pub frequency: f64,
    /// Optional multi-tone extension (Hz each); used for global rotations.
    pub tones: Option<Vec<f64>>,
}

impl DriveSpec {
    /// Ratio gamma_n B_perp I / Delta controlling RWA validity; flagged
    /// above 0.1.
    pub fn rwa_ratio(&self, frame: &CatQubitFrame) -> f64 {
        self.zeeman_amp * frame.model.spin.value() / frame.delta
    }
}

/// Rabi frequency, dimensionless axis factor, and effective drive phase of
/// the RWA qubit generator.
#[derive(Debug, Clone, Copy)]
pub struct RabiParams {
    pub omega_r: f64,
    pub f_theta: f64,
    pub theta_drive: f64,
}

/// Axis factor f(theta) for cat basis states at polar angle theta0:
/// sqrt(sin^2(theta0) sin^2(theta) + gamma^2 tan^2(theta0) cos^2(theta))
/// / sqrt(1 - gamma^2).
///
/// This equals |<1| I_perp |0>| / I exactly for every spin length (the
/// endpoints are sin(theta0) at theta = pi/2 and gamma tan(theta0) at
/// theta = 0).
pub fn axis_factor(spin: SpinLength, theta0: f64, theta_axis: f64) -> f64 {
    let gamma = overlap_gamma(spin, theta0);
    let num = (theta0.sin() * theta_axis.sin()).powi(2)
        + (gamma * theta0.tan() * theta_axis.cos()).powi(2);
    (num / (1.0 - gamma * gamma)).sqrt()
}

/// Cat-basis transverse matrix element <1| I_perp |0> (with |1> the even and
/// |0> the odd cat at azimuth pi/2).
pub fn cat_transverse_element(spin: SpinLength, theta0: f64, theta_axis: f64) -> C64 {
    let ops = make_spin_ops(spin);
    let one = cat_state(
        spin,
        CatParams {
            theta: theta0,
            phi: FRAC_PI_2,
            parity: Parity::Even,
        },
    )
    .expect("even cat");
    let zero = cat_state(
        spin,
        CatParams {
            theta: theta0,
            phi: FRAC_PI_2,
            parity: Parity::Odd,
        },
    )
    .expect("odd cat");
    let iperp = &ops.ix * C64::new(theta_axis.cos(), 0.0) + &ops.iy * C64::new(theta_axis.sin(), 0.0);
    one.amplitudes.dotc(&(&iperp * &zero.amplitudes))
}

/// Closed-form Rabi parameters of the resonant RWA generator
/// Omega_R (tau_x cos(theta_drive) + tau_y sin(theta_drive)).
pub fn rabi_params(spin: SpinLength, theta0: f64, drive: &DriveSpec) -> RabiParams {
    let f_theta = axis_factor(spin, theta0, drive.theta_axis);
    let omega_r = 0.5 * drive.zeeman_amp * spin.value() * f_theta;
    let elem = cat_transverse_element(spin, theta0, drive.theta_axis);
    let theta_drive = (drive.phase - elem.arg()).rem_euclid(2.0 * PI);
    RabiParams {
        omega_r,
        f_theta,
        theta_drive,
    }
}

/// Resonant RWA generator on the qubit subspace, built from the exact
/// two-level matrix element of the fitted frame's eigenstates:
/// (gamma_n B_perp / 2)(e^{-i phi} <1|I_perp|0> |1><0| + h.c.).
pub fn rwa_hamiltonian(frame: &CatQubitFrame, drive: &DriveSpec) -> CMat {
    let spin = frame.model.spin;
    let ops = make_spin_ops(spin);
    let iperp = &ops.ix * C64::new(drive.theta_axis.cos(), 0.0)
        + &ops.iy * C64::new(drive.theta_axis.sin(), 0.0);
    let dim = spin.dim();
    let mut elem = C64::new(0.0, 0.0);
    for r in 0..dim {
        for c in 0..dim {
            elem += C64::new(frame.excited[r], 0.0) * iperp[(r, c)] * C64::new(frame.ground[c], 0.0);
        }
    }
    let c = C64::from_polar(0.5 * drive.zeeman_amp, -drive.phase) * elem;
    let mut h = CMat::zeros(2, 2);
    // basis order (|0>, |1>); tau_+ = |1><0|
    h[(1, 0)] = c;
    h[(0, 1)] = c.conj();
    h
}

/// Populations of the undriven eigenstates over a driven full-dynamics run.
#[derive(Debug, Clone)]
pub struct DrivenEvolution {
    pub t_grid: Vec<f64>,
    /// Row per grid time, column per eigenstate, ascending energy order.
    pub populations: Vec<Vec<f64>>,
    /// Population outside the two-level qubit subspace at each grid time.
    pub leakage: Vec<f64>,
    pub norm_drift: f64,
}

/// Integrate the full time-dependent dynamics
/// H(t) = H0 + gamma_n B_perp cos(f t + phi) I_perp from the ground state.
pub fn driven_evolution(
    frame: &CatQubitFrame,
    drive: &DriveSpec,
    t_grid: &[f64],
    steps_per_period: usize,
) -> Result<DrivenEvolution> {
    let model = frame.model.with_b(frame.b0);
    let spin = model.spin;
    let ops = make_spin_ops(spin);
    let h0 = build_hamiltonian(&model);
    let iperp = &ops.ix * C64::new(drive.theta_axis.cos(), 0.0)
        + &ops.iy * C64::new(drive.theta_axis.sin(), 0.0);
    let prop = RotatingFramePropagator::new(&h0, &iperp);

    let mut psi0 = CVec::zeros(spin.dim());
    for n in 0..spin.dim() {
        psi0[n] = C64::new(frame.ground[n], 0.0);
    }

    let (f, phi, amp) = (drive.frequency, drive.phase, drive.zeeman_amp);
    let max_freq = prop.energy_spread() + f;
    let run = prop.evolve(
        &psi0,
        &|t| amp * (f * t + phi).cos(),
        t_grid,
        max_freq,
        steps_per_period,
    );
    if run.norm_drift > 1e-10 {
        return Err(SpincatError::IntegratorTolerance(run.norm_drift));
    }

    // rotating-frame amplitudes are already eigenbasis coefficients
    let mut populations = Vec::with_capacity(t_grid.len());
    let mut leakage = Vec::with_capacity(t_grid.len());
    for st in &run.states {
        let pops: Vec<f64> = (0..spin.dim()).map(|k| st[k].norm_sqr()).collect();
        leakage.push(1.0 - pops[0] - pops[1]);
        populations.push(pops);
    }
    Ok(DrivenEvolution {
        t_grid: t_grid.to_vec(),
        populations,
        leakage,
        norm_drift: run.norm_drift,
    })
}

/// All opposite-parity transition frequencies |e_m - e_n| of the frame's
/// spectrum; a global rotation drive needs one tone per pair.
pub fn opposite_parity_tones(frame: &CatQubitFrame) -> Vec<f64> {
    let model = frame.model.with_b(frame.b0);
    let spec = crate::hamiltonian::eigensystem_with_parity(&build_hamiltonian(&model), model.spin)
        .expect("z-field");
    let dim = model.spin.dim();
    let mut tones = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            if spec.parities[a] != spec.parities[b] {
                tones.push(spec.energies[b] - spec.energies[a]);
            }
        }
    }
    tones
}

/// Result of a multi-tone global-rotation drive.
#[derive(Debug, Clone)]
pub struct MultiToneRotation {
    /// Rotating-frame state at the final time (lab-basis components).
    pub state: CVec,
    /// Fidelity |<target | state>|^2 against the coherent state
    /// |Theta(t), theta_axis - pi/2> with Theta(t) = gamma_n B_perp t / 2.
    pub target_fidelity: f64,
    pub norm_drift: f64,
}

/// Drive all opposite-parity transitions simultaneously, approximating the
/// global rotation exp(-i (gamma_n B_perp / 2) I_perp t) from |I, I>.
///
/// The supplied tone list must cover every opposite-parity gap (that is
/// (I + 1/2)^2 tones for half-integer spins); pass `drive.tones = None` to
/// use the computed set.
pub fn multi_tone_rotation(
    frame: &CatQubitFrame,
    drive: &DriveSpec,
    t_final: f64,
    steps_per_period: usize,
) -> Result<MultiToneRotation> {
    let required = opposite_parity_tones(frame);
    let tones = match &drive.tones {
        None => required.clone(),
        Some(list) => {
            let covered = required.iter().all(|&need| {
                list.iter()
                    .any(|&have| (have - need).abs() < 1e-6 * frame.model.q_coupling)
            });
            if !covered {
                return Err(SpincatError::MissingTone {
                    expected: required.len(),
                    got: list.len(),
                });
            }
            list.clone()
        }
    };

    let model = frame.model.with_b(frame.b0);
    let spin = model.spin;
    let ops = make_spin_ops(spin);
    let h0 = build_hamiltonian(&model);
    let iperp = &ops.ix * C64::new(drive.theta_axis.cos(), 0.0)
        + &ops.iy * C64::new(drive.theta_axis.sin(), 0.0);
    let prop = RotatingFramePropagator::new(&h0, &iperp);

    let mut psi0 = CVec::zeros(spin.dim());
    psi0[0] = C64::new(1.0, 0.0); // |I, I>

    let amp = drive.zeeman_amp;
    let max_tone = tones.iter().cloned().fold(0.0, f64::max);
    let tone_list = tones.clone();
    let run = prop.evolve(
        &psi0,
        &|t| amp * tone_list.iter().map(|&w| (w * t).cos()).sum::<f64>(),
        &[t_final],
        prop.energy_spread() + max_tone,
        steps_per_period,
    );
    if run.norm_drift > 1e-10 {
        return Err(SpincatError::IntegratorTolerance(run.norm_drift));
    }

    let state = prop
        .to_lab(&run.states[0], 0.0)
        .clone_owned(); // rotating-frame state expressed over the lab basis
    let theta_t = 0.5 * amp * t_final;
    let target = crate::spin::coherent_state(
        spin,
        theta_t.min(PI),
        (drive.theta_axis - FRAC_PI_2).rem_euclid(2.0 * PI),
    );
    let fid = target.amplitudes.dotc(&state).norm_sqr();
    Ok(MultiToneRotation {
        state,
        target_fidelity: fid,
        norm_drift: run.norm_drift,
    })
}
