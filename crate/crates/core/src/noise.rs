//! Stochastic noise trajectories and Monte Carlo coherence averaging.
//!
//! Trajectories are reproducible under a fixed master seed regardless of
//! thread count: trajectory k always uses ChaCha stream k + 1.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dephasing::{OneOverFSpec, QuasistaticSpec, SensitivityExpansion};
use crate::error::{Result, SpincatError};

/// One symmetric two-state fluctuator: the coupled field jumps between
/// +-amplitude/2 with switching rate kappa, so its autocorrelation is
/// (amplitude^2/4) exp(-2 kappa |t|).
#[derive(Debug, Clone, Copy)]
pub struct Fluctuator {
    /// Full jump of the coupled variable (Hz).
    pub amplitude: f64,
    /// Switching rate (Hz).
    pub kappa: f64,
}

/// Noise models for Monte Carlo coherence runs.
#[derive(Debug, Clone)]
pub enum NoiseModel {
    /// One Gaussian draw per trajectory, constant in time.
    Quasistatic(QuasistaticSpec),
    /// Gaussian 1/f noise via random-phase spectral synthesis.
    OneOverF(OneOverFSpec),
    /// Sum of random telegraph processes.
    Telegraph(Vec<Fluctuator>),
}

/// Tones per decade used for spectral synthesis.
const TONES_PER_DECADE: usize = 40;

/// Build a telegraph ensemble whose summed Lorentzians reproduce a 1/f
/// spectrum: `per_decade` fluctuators per decade with log-uniform switching
/// rates, equal amplitudes calibrated so the summed spectral density equals
/// nu/omega at the geometric-mean reference frequency.
pub fn telegraph_ensemble_for_one_over_f(
    spec: &OneOverFSpec,
    per_decade: usize,
) -> Vec<Fluctuator> {
    let decades = (spec.omega_uv / spec.omega_ir).log10();
    let n = ((decades * per_decade as f64).round() as usize).max(2);
    let dln = (spec.omega_uv / spec.omega_ir).ln() / n as f64;
    let kappas: Vec<f64> = (0..n)
        .map(|k| spec.omega_ir * ((k as f64 + 0.5) * dln).exp())
        .collect();
    let w_ref = (spec.omega_ir * spec.omega_uv).sqrt();
    // sum_j a^2 kappa_j / (w^2 + 4 kappa_j^2) = nu / w at w = w_ref
    let lorentz_sum: f64 = kappas
        .iter()
        .map(|&k| k / (w_ref * w_ref + 4.0 * k * k))
        .sum();
    let a2 = spec.nu / (w_ref * lorentz_sum);
    kappas
        .into_iter()
        .map(|kappa| Fluctuator {
            amplitude: a2.sqrt(),
            kappa,
        })
        .collect()
}

/// Summed Lorentzian spectral density of a telegraph ensemble at frequency w.
pub fn telegraph_spectral_density(fluctuators: &[Fluctuator], omega: f64) -> f64 {
    fluctuators
        .iter()
        .map(|f| f.amplitude * f.amplitude * f.kappa / (omega * omega + 4.0 * f.kappa * f.kappa))
        .sum()
}

/// Ensemble-averaged coherence at one sample time.
#[derive(Debug, Clone, Copy)]
pub struct CoherenceSample {
    pub t: f64,
    pub coherence: C64,
    /// Standard errors of the (real, imaginary) parts.
    pub stderr: (f64, f64),
}

/// Monte Carlo coherence of exp(i integral of dDelta dt') with
/// dDelta = d1 db + (1/2) d2 db^2, averaged over `n_traj` noise trajectories.
pub fn mc_coherence(
    noise: &NoiseModel,
    sens: &SensitivityExpansion,
    t_grid: &[f64],
    n_traj: usize,
    seed: u64,
) -> Result<Vec<CoherenceSample>> {
    if n_traj < 100 {
        return Err(SpincatError::InvalidRegime(format!(
            "need at least 100 trajectories, got {n_traj}"
        )));
    }
    assert!(
        t_grid.windows(2).all(|w| w[1] >= w[0]) && t_grid.iter().all(|&t| t >= 0.0),
        "t_grid must be ascending and non-negative"
    );

    // fixed-size blocks summed sequentially inside and across blocks keep
    // the floating-point reduction order independent of thread scheduling,
    // so identical seeds give byte-identical results at any --jobs setting
    let nt = t_grid.len();
    const BLOCK: usize = 256;
    let n_blocks = n_traj.div_ceil(BLOCK);
    let block_sums: Vec<Vec<(f64, f64, f64, f64)>> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![(0.0f64, 0.0f64, 0.0f64, 0.0f64); nt];
            let lo = b * BLOCK;
            let hi = ((b + 1) * BLOCK).min(n_traj);
            for k in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64 + 1);
                let phases = match noise {
                    NoiseModel::Quasistatic(q) => quasistatic_phases(q, sens, t_grid, &mut rng),
                    NoiseModel::OneOverF(spec) => spectral_phases(spec, sens, t_grid, &mut rng),
                    NoiseModel::Telegraph(fl) => telegraph_phases(fl, sens, t_grid, &mut rng),
                };
                for (i, &p) in phases.iter().enumerate() {
                    let (s, c) = p.sin_cos();
                    acc[i].0 += c;
                    acc[i].1 += s;
                    acc[i].2 += c * c;
                    acc[i].3 += s * s;
                }
            }
            acc
        })
        .collect();
    let mut sums = vec![(0.0f64, 0.0f64, 0.0f64, 0.0f64); nt];
    for block in &block_sums {
        for i in 0..nt {
            sums[i].0 += block[i].0;
            sums[i].1 += block[i].1;
            sums[i].2 += block[i].2;
            sums[i].3 += block[i].3;
        }
    }

    let n = n_traj as f64;
    Ok(t_grid
        .iter()
        .zip(sums.iter())
        .map(|(&t, &(sre, sim, sre2, sim2))| {
            let mre = sre / n;
            let mim = sim / n;
            let vre = (sre2 / n - mre * mre).max(0.0);
            let vim = (sim2 / n - mim * mim).max(0.0);
            CoherenceSample {
                t,
                coherence: C64::new(mre, mim),
                stderr: ((vre / n).sqrt(), (vim / n).sqrt()),
            }
        })
        .collect())
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn detuning(sens: &SensitivityExpansion, db: f64) -> f64 {
    sens.d1 * db + 0.5 * sens.d2 * db * db
}

fn quasistatic_phases<R: Rng>(
    q: &QuasistaticSpec,
    sens: &SensitivityExpansion,
    t_grid: &[f64],
    rng: &mut R,
) -> Vec<f64> {
    let db = q.sigma_b * standard_normal(rng);
    let dd = detuning(sens, db);
    t_grid.iter().map(|&t| dd * t).collect()
}

fn spectral_phases<R: Rng>(
    spec: &OneOverFSpec,
    sens: &SensitivityExpansion,
    t_grid: &[f64],
    rng: &mut R,
) -> Vec<f64> {
    // log-midpoint tone grid: the discretized variance sum a_k^2/2 equals
    // (nu/pi) ln(uv/ir) exactly for a 1/f spectrum
    let decades = (spec.omega_uv / spec.omega_ir).log10();
    let n_tones = ((decades * TONES_PER_DECADE as f64).round() as usize).max(4);
    let dln = (spec.omega_uv / spec.omega_ir).ln() / n_tones as f64;
    let mut tones = Vec::with_capacity(n_tones);
    for k in 0..n_tones {
        let w = spec.omega_ir * ((k as f64 + 0.5) * dln).exp();
        let a = (2.0 * spec.nu * dln / PI).sqrt();
        let phi = rng.gen_range(0.0..2.0 * PI);
        tones.push((w, a, phi));
    }

    let linear_part = |t: f64| -> f64 {
        tones
            .iter()
            .map(|&(w, a, phi)| a / w * ((w * t + phi).sin() - phi.sin()))
            .sum()
    };

    if sens.d2 == 0.0 {
        return t_grid.iter().map(|&t| sens.d1 * linear_part(t)).collect();
    }

    // quadratic part by trapezoid on a grid resolving the fastest tone
    let t_max = *t_grid.last().unwrap();
    let w_max = tones.last().unwrap().0;
    let dt = (2.0 * PI / w_max / 20.0).min(t_max / 64.0);
    let db_at = |t: f64| -> f64 {
        tones.iter().map(|&(w, a, phi)| a * (w * t + phi).cos()).sum()
    };

    let mut phases = Vec::with_capacity(t_grid.len());
    let mut acc_sq = 0.0;
    let mut t_prev = 0.0;
    let mut f_prev = db_at(0.0).powi(2);
    for &t in t_grid {
        let span = t - t_prev;
        if span > 0.0 {
            let steps = (span / dt).ceil() as usize;
            let h = span / steps as f64;
            for s in 1..=steps {
                let ts = t_prev + s as f64 * h;
                let f = db_at(ts).powi(2);
                acc_sq += 0.5 * (f_prev + f) * h;
                f_prev = f;
            }
            t_prev = t;
        }
        phases.push(sens.d1 * linear_part(t) + 0.5 * sens.d2 * acc_sq);
    }
    phases
}

fn telegraph_phases<R: Rng>(
    fluctuators: &[Fluctuator],
    sens: &SensitivityExpansion,
    t_grid: &[f64],
    rng: &mut R,
) -> Vec<f64> {
    // event-driven: db is piecewise constant, so the phase integral is exact
    let nf = fluctuators.len();
    let mut xi: Vec<f64> = (0..nf)
        .map(|_| if rng.gen_bool(0.5) { 0.5 } else { -0.5 })
        .collect();
    let mut next: Vec<f64> = fluctuators
        .iter()
        .map(|f| -rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln() / f.kappa)
        .collect();

    let db_now = |xi: &[f64]| -> f64 {
        fluctuators
            .iter()
            .zip(xi.iter())
            .map(|(f, &x)| f.amplitude * x)
            .sum()
    };

    let mut phases = Vec::with_capacity(t_grid.len());
    let mut t_now = 0.0;
    let mut phase = 0.0;
    let mut db = db_now(&xi);
    for &t in t_grid {
        loop {
            // earliest switch before t
            let (j_min, &t_sw) = match next
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            {
                Some(x) => x,
                None => break,
            };
            if t_sw >= t {
                break;
            }
            phase += detuning(sens, db) * (t_sw - t_now);
            t_now = t_sw;
            xi[j_min] = -xi[j_min];
            db = db_now(&xi);
            next[j_min] =
                t_sw - rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln() / fluctuators[j_min].kappa;
        }
        phase += detuning(sens, db) * (t - t_now);
        t_now = t;
        phases.push(phase);
    }
    phases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dephasing::{
        coherence_quasistatic_clock, coherence_quasistatic_linear, lambda1,
        lambda2_clock_ensemble, short_time_scale,
    };

    fn sens(d1: f64, d2: f64) -> SensitivityExpansion {
        SensitivityExpansion {
            delta0: 0.0,
            d1,
            d2,
        }
    }

    #[test]
    fn rejects_tiny_ensembles() {
        let noise = NoiseModel::Quasistatic(QuasistaticSpec { sigma_b: 1.0 });
        assert!(mc_coherence(&noise, &sens(1.0, 0.0), &[0.0, 1.0], 10, 1).is_err());
    }

    #[test]
    fn reproducible_under_fixed_seed() {
        let noise = NoiseModel::Quasistatic(QuasistaticSpec { sigma_b: 1.0 });
        let a = mc_coherence(&noise, &sens(1.0, 0.0), &[0.5, 1.0], 500, 9).unwrap();
        let b = mc_coherence(&noise, &sens(1.0, 0.0), &[0.5, 1.0], 500, 9).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.coherence, y.coherence);
        }
    }

    #[test]
    fn quasistatic_linear_matches_closed_form() {
        let sigma = 2.0f64.sqrt();
        let noise = NoiseModel::Quasistatic(QuasistaticSpec { sigma_b: sigma });
        let t_grid = [0.0, 0.4, 1.0];
        let out = mc_coherence(&noise, &sens(1.0, 0.0), &t_grid, 100_000, 12).unwrap();
        assert!((out[0].coherence.re - 1.0).abs() < 1e-12);
        for s in &out[1..] {
            let want = coherence_quasistatic_linear(s.t, sigma);
            assert!(
                (s.coherence.re - want.re).abs() < 3.0 * s.stderr.0.max(1e-9),
                "t = {}",
                s.t
            );
            assert!((s.coherence.im - want.im).abs() < 3.0 * s.stderr.1.max(1e-9));
        }
    }

    #[test]
    fn quasistatic_clock_matches_closed_form() {
        let (sigma, d2) = (1.0, -1.0);
        let noise = NoiseModel::Quasistatic(QuasistaticSpec { sigma_b: sigma });
        let t_grid = [0.3, 1.0, 3.0];
        let out = mc_coherence(&noise, &sens(0.0, d2), &t_grid, 100_000, 5).unwrap();
        for s in &out {
            let want = coherence_quasistatic_clock(s.t, sigma, d2);
            assert!(
                (s.coherence.re - want.re).abs() < 3.0 * s.stderr.0,
                "t = {}: {} vs {}",
                s.t,
                s.coherence.re,
                want.re
            );
            assert!((s.coherence.im - want.im).abs() < 3.0 * s.stderr.1);
        }
    }

    #[test]
    fn spectral_synthesis_clock_matches_ensemble_lambda2() {
        // d1 = 0 clock qubit under 1/f: |C| = exp(-Lambda2/2) with the
        // ensemble (Fourier-consistent) variance, and the mean phase drifts
        // at the Lambda1 rate, both for t < T_s
        let spec = OneOverFSpec::new(1.0, 1e-3, 1e2).unwrap();
        let d2 = -1.0;
        let sigma2 = spec.sigma_b_squared();
        // stay well inside t < T_s: at 0.5 T_s the neglected fourth cumulant
        // already biases |C| upward by several standard errors
        let ts = short_time_scale(sigma2, d2);
        let t_grid = [0.1 * ts, 0.2 * ts, 0.3 * ts];
        let noise = NoiseModel::OneOverF(spec);
        let out = mc_coherence(&noise, &sens(0.0, d2), &t_grid, 20_000, 21).unwrap();
        for s in &out {
            let l2 = lambda2_clock_ensemble(s.t, &spec, d2);
            let l1 = lambda1(s.t, sigma2, d2);
            let want = C64::from_polar((-0.5 * l2).exp(), l1);
            let tol_re = 3.0 * s.stderr.0;
            let tol_im = 3.0 * s.stderr.1;
            assert!(
                (s.coherence.re - want.re).abs() < tol_re,
                "t = {}: re {} vs {} (3se {})",
                s.t,
                s.coherence.re,
                want.re,
                tol_re
            );
            assert!(
                (s.coherence.im - want.im).abs() < tol_im,
                "t = {}: im {} vs {} (3se {})",
                s.t,
                s.coherence.im,
                want.im,
                tol_im
            );
        }
    }

    #[test]
    fn spectral_synthesis_linear_matches_quasistatic_limit() {
        // narrow band (uv -> ir) behaves quasistatically on short times
        let spec = OneOverFSpec::new(2.0, 1e-3, 2e-3).unwrap();
        let sigma2 = spec.sigma_b_squared();
        let noise = NoiseModel::OneOverF(spec);
        let t_grid = [0.2 / sigma2.sqrt(), 0.6 / sigma2.sqrt()];
        let out = mc_coherence(&noise, &sens(1.0, 0.0), &t_grid, 20_000, 31).unwrap();
        for s in &out {
            let want = (-0.5 * sigma2 * s.t * s.t).exp();
            assert!(
                (s.coherence.re - want).abs() < 3.0 * s.stderr.0.max(1e-4),
                "t = {}: {} vs {}",
                s.t,
                s.coherence.re,
                want
            );
        }
    }

    #[test]
    fn telegraph_autocorrelation_is_exponential() {
        // measure <xi(0) xi(t)> through the phase accumulated by a single
        // fluctuator with d1 coupling over a short window
        let fl = vec![Fluctuator {
            amplitude: 1.0,
            kappa: 2.0,
        }];
        let n = 40_000;
        let t_grid: Vec<f64> = (0..=20).map(|k| 0.05 * k as f64).collect();
        // correlate sign(db(0)) with sign(db(t)) by sampling phases twice:
        // use the exact phases of each trajectory and differentiate
        let out_lin = mc_coherence(&NoiseModel::Telegraph(fl.clone()), &sens(1.0, 0.0), &t_grid, n, 3)
            .unwrap();
        // for a single symmetric RTS the coherence is the known closed form
        // e^{-kappa t}[cosh(mu t) + (kappa/mu) sinh(mu t)], mu^2 = kappa^2 - b^2/4
        let (kappa, b) = (2.0, 1.0);
        let mu2: f64 = kappa * kappa - 0.25 * b * b;
        let mu = mu2.abs().sqrt();
        for s in &out_lin[1..] {
            let t = s.t;
            let want = if mu2 >= 0.0 {
                (-kappa * t).exp() * ((mu * t).cosh() + kappa / mu * (mu * t).sinh())
            } else {
                (-kappa * t).exp() * ((mu * t).cos() + kappa / mu * (mu * t).sin())
            };
            assert!(
                (s.coherence.re - want).abs() < 4.0 * s.stderr.0.max(1e-4),
                "t = {t}: {} vs {want}",
                s.coherence.re
            );
        }
    }

    #[test]
    fn telegraph_ensemble_calibration_hits_target_spectrum() {
        let spec = OneOverFSpec::new(5.0, 1e-2, 1e3).unwrap();
        let fl = telegraph_ensemble_for_one_over_f(&spec, 20);
        assert_eq!(fl.len(), (5.0f64 * 20.0).round() as usize);
        let w_ref = (spec.omega_ir * spec.omega_uv).sqrt();
        let s_ref = telegraph_spectral_density(&fl, w_ref);
        assert!((s_ref - spec.nu / w_ref).abs() / (spec.nu / w_ref) < 1e-12);
        // 1/f shape holds to ~15% away from the cutoffs
        for &w in &[w_ref / 10.0, w_ref, w_ref * 10.0] {
            let s = telegraph_spectral_density(&fl, w);
            assert!((s - spec.nu / w).abs() / (spec.nu / w) < 0.15, "w = {w}");
        }
    }
}
