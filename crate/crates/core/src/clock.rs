//! Clock-transition location and spin-cat frame fitting.
//!
//! The qubit splitting Delta(b) between the two lowest levels develops local
//! maxima once eta > 0; the operating point b0 is the largest-b maximum,
//! where dDelta/db = 0 and the curvature is negative. The two eigenstates at
//! b0 are then fitted against cat states |Theta, pi/2>_{+-}.

use crate::error::{Result, SpincatError};
use crate::hamiltonian::{build_hamiltonian, eigensystem_with_parity, NuclearSpinModel};
use crate::linalg::RVec;
use crate::spin::{cat_state, CatParams, Parity, SpinLength};

/// Fitted cat-qubit operating frame at the clock transition.
#[derive(Debug, Clone)]
pub struct CatQubitFrame {
    pub model: NuclearSpinModel,
    /// Clock field b0 = gamma_n B0 (Hz).
    pub b0: f64,
    /// Qubit splitting Delta(b0) = eps1 - eps0 (Hz).
    pub delta: f64,
    /// Curvature d^2 Delta / db^2 at b0 (1/Hz), negative at a maximum.
    pub curvature: f64,
    /// Dimensionless curvature coefficient (2 Q |Delta''|)^(-1).
    pub a_coeff: f64,
    /// Optimal cat polar angle.
    pub theta0: f64,
    /// Cat-basis fidelity, amplitude convention: sqrt of the mean squared
    /// overlap between the two lowest eigenstates and the matching-parity
    /// cat states at theta0.
    pub fidelity: f64,
    /// Mean squared overlap (the optimization objective itself).
    pub mean_sq_overlap: f64,
    /// Ground eigenvector (odd parity).
    pub ground: RVec,
    /// Excited eigenvector (even parity).
    pub excited: RVec,
    /// Parity labels of (ground, excited).
    pub parities: (Parity, Parity),
}

/// Splitting eps1 - eps0 at field b.
pub fn splitting(model: &NuclearSpinModel, b: f64) -> f64 {
    let spec =
        eigensystem_with_parity(&build_hamiltonian(&model.with_b(b)), model.spin).expect("z-field");
    spec.gap()
}

/// Delta(b) sampled over a field grid.
pub fn splitting_curve(model: &NuclearSpinModel, b_grid: &[f64]) -> Vec<f64> {
    b_grid.iter().map(|&b| splitting(model, b)).collect()
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// 5-point central second derivative with one Richardson extrapolation.
/// Returns (value, relative consistency between the two stencil widths).
fn second_derivative<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> (f64, f64) {
    let stencil = |h: f64| {
        (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
            / (12.0 * h * h)
    };
    let d1 = stencil(h);
    let d2 = stencil(h / 2.0);
    let richardson = (16.0 * d2 - d1) / 15.0;
    let consistency = (d2 - d1).abs() / richardson.abs().max(f64::MIN_POSITIVE);
    (richardson, consistency)
}

/// Locate the clock transition: the largest-b local maximum of Delta(b).
///
/// Delta is sampled on a log-dense grid b/Q in [0.05, 4I]; each discrete
/// maximum is refined by golden-section search, and the winner must pass a
/// flat-slope check (|Delta'| < 1e-8) and a Richardson-consistent negative
/// curvature. Both fail as eta -> 0, where the maxima sharpen into kinks.
pub fn find_clock_transition(model: &NuclearSpinModel) -> Result<CatQubitFrame> {
    let q = model.q_coupling;
    let eta = model.eta;
    if eta <= 0.0 {
        return Err(SpincatError::NoClockTransition {
            eta,
            reason: "splitting is piecewise linear at eta = 0".into(),
        });
    }

    let n_grid = 1200;
    let lo = (0.05 * q).ln();
    let hi = (4.0 * model.spin.value() * q).ln();
    let bs: Vec<f64> = (0..n_grid)
        .map(|k| (lo + (hi - lo) * k as f64 / (n_grid - 1) as f64).exp())
        .collect();
    let ds: Vec<f64> = bs.iter().map(|&b| splitting(model, b)).collect();

    let mut maxima = Vec::new();
    for i in 1..n_grid - 1 {
        if ds[i] >= ds[i - 1] && ds[i] >= ds[i + 1] {
            maxima.push(i);
        }
    }
    let &last = maxima.last().ok_or_else(|| SpincatError::NoClockTransition {
        eta,
        reason: "no interior maximum of Delta(b) on the search grid".into(),
    })?;

    let f = |b: f64| splitting(model, b);
    let rough = golden_max(&f, bs[last - 1], bs[last + 1], 1e-8 * q);

    // Polish by bisecting the sign of the finite-difference slope: the
    // splitting itself is flat to eigensolver roundoff near the maximum, so
    // value comparisons alone cannot reach |Delta'| < 1e-8. The stencil
    // width balances roundoff (~1e-15 ||H|| per sample) against truncation.
    let hs = 1e-5 * q;
    let slope_at = |b: f64| (f(b + hs) - f(b - hs)) / (2.0 * hs);
    let mut lo_b = rough - 2e-3 * q;
    let mut hi_b = rough + 2e-3 * q;
    let (s_lo, s_hi) = (slope_at(lo_b), slope_at(hi_b));
    if !(s_lo > 0.0 && s_hi < 0.0) {
        return Err(SpincatError::NoClockTransition {
            eta,
            reason: format!("slope does not change sign across candidate maximum ({s_lo:.2e}, {s_hi:.2e})"),
        });
    }
    let mut b0 = rough;
    for _ in 0..60 {
        b0 = 0.5 * (lo_b + hi_b);
        let s = slope_at(b0);
        if s.abs() < 1e-10 || hi_b - lo_b < 1e-12 * q {
            break;
        }
        if s.signum() == s_lo.signum() {
            lo_b = b0;
        } else {
            hi_b = b0;
        }
    }
    let slope = slope_at(b0);
    if slope.abs() > 1e-8 {
        return Err(SpincatError::NoClockTransition {
            eta,
            reason: format!("residual slope {slope:.2e} at candidate maximum"),
        });
    }

    let (curvature, consistency) = second_derivative(&f, b0, 1e-3 * q);
    if !(curvature < 0.0) || consistency > 1e-4 {
        return Err(SpincatError::NoClockTransition {
            eta,
            reason: format!(
                "curvature {curvature:.3e} with stencil consistency {consistency:.1e}"
            ),
        });
    }

    let delta = f(b0);
    let a_coeff = 1.0 / (2.0 * q * curvature.abs());

    fit_cat_frame_at(model, b0, delta, curvature, a_coeff)
}

/// Dimensionless curvature coefficient (2 Q |Delta''(b0)|)^(-1).
pub fn curvature_coefficient(model: &NuclearSpinModel) -> Result<f64> {
    Ok(find_clock_transition(model)?.a_coeff)
}

fn fit_cat_frame_at(
    model: &NuclearSpinModel,
    b0: f64,
    delta: f64,
    curvature: f64,
    a_coeff: f64,
) -> Result<CatQubitFrame> {
    let spec = eigensystem_with_parity(&build_hamiltonian(&model.with_b(b0)), model.spin)?;
    let (p0, p1) = (spec.parities[0], spec.parities[1]);
    if p0 == p1 {
        return Err(SpincatError::ParityMixing {
            index: 1,
            expectation: p1.sign(),
        });
    }
    let v0 = spec.vectors.column(0).clone_owned();
    let v1 = spec.vectors.column(1).clone_owned();
    let (v_even, v_odd) = if p0 == Parity::Even {
        (&v0, &v1)
    } else {
        (&v1, &v0)
    };

    // mean squared overlap with the matching-parity cats at azimuth pi/2
    let spin = model.spin;
    let objective = |theta: f64| mean_sq_overlap(spin, theta, v_even, v_odd);

    // coarse pre-scan guards the unimodality assumed by golden section
    let mut best = (0.0f64, 0.0f64);
    for k in 1..=60 {
        let t = std::f64::consts::FRAC_PI_2 * k as f64 / 60.0;
        let val = objective(t);
        if val > best.1 {
            best = (t, val);
        }
    }
    let width = std::f64::consts::FRAC_PI_2 / 60.0;
    let theta0 = golden_max(
        &objective,
        (best.0 - width).max(1e-6),
        (best.0 + width).min(std::f64::consts::FRAC_PI_2),
        1e-6,
    );
    let msq = objective(theta0);

    Ok(CatQubitFrame {
        model: *model,
        b0,
        delta,
        curvature,
        a_coeff,
        theta0,
        fidelity: msq.sqrt(),
        mean_sq_overlap: msq,
        ground: v0,
        excited: v1,
        parities: (p0, p1),
    })
}

fn mean_sq_overlap(spin: SpinLength, theta: f64, v_even: &RVec, v_odd: &RVec) -> f64 {
    let phi = std::f64::consts::FRAC_PI_2;
    let cat_even = cat_state(spin, CatParams { theta, phi, parity: Parity::Even }).expect("even");
    let cat_odd = cat_state(spin, CatParams { theta, phi, parity: Parity::Odd }).expect("odd");
    let ov = |v: &RVec, cat: &crate::spin::SpinState| -> f64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for n in 0..spin.dim() {
            acc += cat.amplitudes[n].conj() * v[n];
        }
        acc.norm_sqr()
    };
    0.5 * (ov(v_even, &cat_even) + ov(v_odd, &cat_odd))
}

/// Fit the cat-qubit frame at the clock transition of `model`.
pub fn fit_cat_frame(model: &NuclearSpinModel) -> Result<CatQubitFrame> {
    find_clock_transition(model)
}

/// Count near-zero minima of Delta(b) for b > 0 below the high-field regime.
/// Half-integer spins have I - 1/2 of them.
pub fn count_splitting_zeros(model: &NuclearSpinModel) -> usize {
    let q = model.q_coupling;
    let n = 2000;
    let bmax = 4.0 * model.spin.value() * q;
    let bs: Vec<f64> = (1..=n).map(|k| bmax * k as f64 / n as f64).collect();
    let ds = splitting_curve(model, &bs);
    let mut zeros = 0;
    for i in 1..n - 1 {
        if ds[i] < ds[i - 1] && ds[i] < ds[i + 1] {
            // refine the minimum and test for an actual degeneracy
            let f = |b: f64| -splitting(model, b);
            let bmin = golden_max(&f, bs[i - 1], bs[i + 1], 1e-12 * q);
            if splitting(model, bmin) < 1e-6 * q {
                zeros += 1;
            }
        }
    }
    zeros
}
