//! Coherence decay of linear-sensitive and clock-transition qubits under
//! quasistatic and 1/f noise.
//!
//! Conventions: the variance of the acquired phase is Lambda2(t); the
//! coherence modulus is exp(-Lambda2/2). Two root conventions for the
//! clock-transition dephasing time coexist in the literature and both are
//! exposed: `Lambda2Eq1` solves Lambda2(T) = 1, `Lambda2Eq2` solves
//! Lambda2(T) = 2 (the |C| = 1/e point).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Result, SpincatError};
use crate::quadrature::{integrate, integrate_oscillatory};
use crate::special::dilog;

/// 1/f spectral density S_b(w) = nu / |w| between infrared and ultraviolet
/// cutoffs (all in Hz; nu in Hz^2).
#[derive(Debug, Clone, Copy)]
pub struct OneOverFSpec {
    pub nu: f64,
    pub omega_ir: f64,
    pub omega_uv: f64,
}

impl OneOverFSpec {
    pub fn new(nu: f64, omega_ir: f64, omega_uv: f64) -> Result<Self> {
        if !(nu > 0.0 && omega_ir > 0.0 && omega_ir < omega_uv) {
            return Err(SpincatError::InvalidRegime(format!(
                "need nu > 0 and 0 < omega_ir < omega_uv, got nu={nu}, ir={omega_ir}, uv={omega_uv}"
            )));
        }
        Ok(Self {
            nu,
            omega_ir,
            omega_uv,
        })
    }

    /// Noise variance sigma_b^2 = (nu/pi) ln(w_uv / w_ir).
    pub fn sigma_b_squared(&self) -> f64 {
        self.nu / PI * (self.omega_uv / self.omega_ir).ln()
    }
}

/// Quasistatic Gaussian noise with standard deviation sigma_b (Hz).
#[derive(Debug, Clone, Copy)]
pub struct QuasistaticSpec {
    pub sigma_b: f64,
}

/// Taylor expansion of the qubit splitting around the operating point:
/// delta(b0 + db) = delta0 + d1 db + (1/2) d2 db^2.
#[derive(Debug, Clone, Copy)]
pub struct SensitivityExpansion {
    /// Splitting at the operating point (Hz).
    pub delta0: f64,
    /// First derivative (dimensionless); zero at a clock transition.
    pub d1: f64,
    /// Second derivative (1/Hz).
    pub d2: f64,
}

/// Coherence factor for a linearly sensitive qubit under quasistatic
/// Gaussian noise: exp(-(t/T2*)^2) with T2* = sqrt(2)/sigma_b.
pub fn coherence_quasistatic_linear(t: f64, sigma_b: f64) -> C64 {
    assert!(t >= 0.0);
    let t2 = 2.0f64.sqrt() / sigma_b;
    C64::new((-(t / t2).powi(2)).exp(), 0.0)
}

/// Coherence factor at a clock transition under quasistatic Gaussian noise:
/// (1 + i t / T)^(-1/2) with T = 1 / (sigma_b^2 |d2|), the chi-squared
/// average of exp(i (1/2) d2 db^2 t) for d2 < 0.
pub fn coherence_quasistatic_clock(t: f64, sigma_b: f64, d2: f64) -> C64 {
    assert!(t >= 0.0);
    assert!(d2 < 0.0, "clock-transition curvature must be negative");
    let tct = (sigma_b * sigma_b * d2.abs()).recip();
    let z = C64::new(1.0, t / tct);
    (-0.5 * z.ln()).exp()
}

/// Estimated 1/f amplitude from a measured linear-qubit dephasing time:
/// nu = 2 pi / (T2*^2 ln(1/(w_ir T2*))).
#[derive(Debug, Clone, Copy)]
pub struct NuEstimate {
    pub nu: f64,
    /// ln(1/(w_ir T2*)) entering the estimate.
    pub log_factor: f64,
    /// Set when the logarithm is below 3 and the estimate is marginal.
    pub marginal: bool,
}

pub fn nu_from_t2(t2_star: f64, omega_ir: f64) -> Result<NuEstimate> {
    let log_factor = (1.0 / (omega_ir * t2_star)).ln();
    if log_factor <= 0.0 {
        return Err(SpincatError::InvalidRegime(format!(
            "ln(1/(w_ir T2*)) = {log_factor:.3} <= 0"
        )));
    }
    Ok(NuEstimate {
        nu: 2.0 * PI / (t2_star * t2_star * log_factor),
        log_factor,
        marginal: log_factor < 3.0,
    })
}

/// Inverse of [`nu_from_t2`] up to logarithmic corrections:
/// 1/T2* = sqrt(nu/(2 pi) ln(sqrt(nu/(2 pi)) / w_ir)).
pub fn t2_from_nu(nu: f64, omega_ir: f64) -> f64 {
    let s = (nu / (2.0 * PI)).sqrt();
    (s * (s / omega_ir).ln().sqrt()).recip()
}

/// Asymptotic phase variance of a linearly sensitive qubit under 1/f noise:
/// Lambda2'(t) = (nu/pi) t^2 ln(1/(w_ir t)), valid for w_ir t < 0.1.
pub fn lambda2_linear(t: f64, spec: &OneOverFSpec) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let x = spec.omega_ir * t;
    if x >= 0.1 {
        return Err(SpincatError::InvalidRegime(format!(
            "w_ir t = {x:.3} >= 0.1; asymptotic form invalid"
        )));
    }
    Ok(spec.nu / PI * t * t * (1.0 / x).ln())
}

/// Filter-function integral for the linear qubit,
/// (1/2pi) int F(w,t) S_b(w) dw over both signs of w, evaluated numerically.
pub fn lambda2_linear_quadrature(t: f64, spec: &OneOverFSpec) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let f = |w: f64| {
        let x = 0.5 * w * t;
        let sinc2 = if x.abs() < 1e-12 {
            1.0
        } else {
            (x.sin() / x).powi(2)
        };
        t * t * sinc2 * spec.nu / w
    };
    // oscillation period pi/t; integrate the oscillatory head explicitly and
    // the smooth sinc^2-averaged tail (mean sin^2 = 1/2) beyond it
    let head_end = (400.0 * PI / t).min(spec.omega_uv);
    let head = integrate_oscillatory(&f, spec.omega_ir, head_end, PI / t, 1e-8);
    let tail = if head_end < spec.omega_uv {
        integrate(
            &|w: f64| 0.5 * (2.0 / (w * t)).powi(2) * t * t * spec.nu / w,
            head_end,
            spec.omega_uv,
            1e-8,
        ) * 0.5
    } else {
        0.0
    };
    (head + tail) / PI
}

/// Spectral density of the clock-transition qubit's frequency noise under
/// 1/f field noise, with O(w/w_uv) terms dropped:
/// S(w) = (nu d2)^2 / w [ln((w+w_ir)/w_ir) + H(w - 2 w_ir) ln((w-w_ir)/w_ir)],
/// even in w and finite at w = 0.
pub fn s_delta(omega: f64, spec: &OneOverFSpec, d2: f64) -> f64 {
    let w = omega.abs();
    let amp = (spec.nu * d2).powi(2);
    if w < 1e-300 {
        return amp / spec.omega_ir;
    }
    let mut bracket = (w / spec.omega_ir).ln_1p();
    if w >= 2.0 * spec.omega_ir {
        bracket += ((w - spec.omega_ir) / spec.omega_ir).ln();
    }
    amp * bracket / w
}

/// Direct numerical convolution (1/2)(d2)^2 int S_b(w - W) S_b(W) dW over
/// the regions where both factors are inside the cutoffs. Oracle for
/// [`s_delta`]; keeps the w_uv edge terms the closed form drops.
pub fn s_delta_convolution_quadrature(omega: f64, spec: &OneOverFSpec, d2: f64) -> f64 {
    let w = omega.abs();
    let (ir, uv, nu) = (spec.omega_ir, spec.omega_uv, spec.nu);
    let integrand = |cap_w: f64| -> f64 {
        let a = cap_w.abs();
        let b = (w - cap_w).abs();
        if a < ir || a > uv || b < ir || b > uv {
            0.0
        } else {
            nu * nu / (a * b)
        }
    };
    // regions: (-uv, -ir), (ir, w-ir) when w >= 2 ir, (w+ir, uv)
    let mut total = integrate(&integrand, -uv, -ir, 1e-9);
    if w >= 2.0 * ir {
        total += integrate(&integrand, ir, w - ir, 1e-9);
    }
    if w + ir < uv {
        total += integrate(&integrand, w + ir, uv, 1e-9);
    }
    0.5 * d2 * d2 * total
}

/// Evaluation mode for the clock-transition phase variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda2Mode {
    /// Closed form of the low-pass-filtered integral, exact in dilogarithms.
    Exact,
    /// Leading log-squared asymptotics.
    Asymptotic,
}

/// Phase variance of the clock-transition qubit under 1/f noise.
///
/// Exact mode evaluates
/// (nu d2)^2/pi t^2 [ln(U-1) ln U + Li2(1-U) - Li2(-U) + pi^2/12]
/// with U = 1/(w_ir t); asymptotic mode keeps (nu d2)^2/pi t^2 ln^2 U.
pub fn lambda2_clock(t: f64, spec: &OneOverFSpec, d2: f64, mode: Lambda2Mode) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    assert!(
        spec.omega_ir * t < 1.0,
        "lambda2_clock requires w_ir t < 1, got {}",
        spec.omega_ir * t
    );
    let u = 1.0 / (spec.omega_ir * t);
    let amp = (spec.nu * d2).powi(2) / PI * t * t;
    match mode {
        Lambda2Mode::Asymptotic => amp * u.ln().powi(2),
        Lambda2Mode::Exact => {
            amp * ((u - 1.0).ln() * u.ln() + dilog(1.0 - u) - dilog(-u) + PI * PI / 12.0)
        }
    }
}

/// Numerical low-pass integral t^2/pi int_0^{1/t} S_delta(w) dw: the same
/// object the exact dilogarithm form evaluates in closed form. Oracle for
/// the special-function implementation.
pub fn lambda2_clock_quadrature(t: f64, spec: &OneOverFSpec, d2: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    t * t / PI * integrate(&|w: f64| s_delta(w, spec, d2), 0.0, 1.0 / t, 1e-9)
}

/// Full filter-function integral (1/2pi) int F(w,t) S_delta(w) dw over both
/// signs of w. Larger than the low-pass form by subleading-log terms; used
/// when comparing against Monte Carlo trajectories.
pub fn lambda2_clock_filter_quadrature(t: f64, spec: &OneOverFSpec, d2: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let f = |w: f64| {
        let x = 0.5 * w * t;
        let sinc2 = if x.abs() < 1e-12 {
            1.0
        } else {
            (x.sin() / x).powi(2)
        };
        t * t * sinc2 * s_delta(w, spec, d2)
    };
    let head_end = (400.0 * PI / t).min(spec.omega_uv);
    let head = integrate_oscillatory(&f, 0.0, head_end, PI / t, 1e-8);
    let tail = if head_end < spec.omega_uv {
        integrate(
            &|w: f64| 0.5 * (2.0 / (w * t)).powi(2) * t * t * s_delta(w, spec, d2),
            head_end,
            spec.omega_uv,
            1e-8,
        )
    } else {
        0.0
    };
    (head + tail) / PI
}

/// Phase variance of the actual Gaussian ensemble with spectral density
/// S_b: the filter integral divided by 2 pi.
///
/// The convolution-form spectral density [`s_delta`] follows the closed-form
/// chain used throughout (no 1/2pi on the convolution), which overcounts the
/// Fourier-consistent variance (d2^2/2) iint <db db>^2 by exactly 2 pi.
/// Monte Carlo trajectories average the physical ensemble, so they are
/// compared against this function, not [`lambda2_clock_filter_quadrature`].
pub fn lambda2_clock_ensemble(t: f64, spec: &OneOverFSpec, d2: f64) -> f64 {
    lambda2_clock_filter_quadrature(t, spec, d2) / (2.0 * PI)
}

/// Mean acquired phase Lambda1(t) = (1/2) sigma_b^2 d2 t for stationary noise.
pub fn lambda1(t: f64, sigma_b_squared: f64, d2: f64) -> f64 {
    0.5 * sigma_b_squared * d2 * t
}

/// Short-time validity scale T_s = 1 / (sigma_b^2 |d2|).
pub fn short_time_scale(sigma_b_squared: f64, d2: f64) -> f64 {
    (sigma_b_squared * d2.abs()).recip()
}

/// Root convention for the clock-transition dephasing time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda2Convention {
    /// Solve Lambda2(T) = 1.
    Lambda2Eq1,
    /// Solve Lambda2(T) = 2, i.e. |C(T)| = 1/e.
    Lambda2Eq2,
}

impl Lambda2Convention {
    fn target(&self) -> f64 {
        match self {
            Lambda2Convention::Lambda2Eq1 => 1.0,
            Lambda2Convention::Lambda2Eq2 => 2.0,
        }
    }
}

/// Clock-transition dephasing time.
#[derive(Debug, Clone, Copy)]
pub struct T2ctSolution {
    /// Bisection root of Lambda2(T) = target on the exact mode.
    pub t2ct: f64,
    /// Approximate closed form 1/T = nu |d2|/sqrt(2 pi) ln(nu |d2|/(w_ir sqrt(2 pi))).
    pub closed_form: f64,
}

/// Solve for the clock-transition dephasing time by bisection on the exact
/// Lambda2, bracketed around the closed-form estimate.
pub fn t2ct_solve(
    spec: &OneOverFSpec,
    d2: f64,
    convention: Lambda2Convention,
) -> Result<T2ctSolution> {
    let nd = spec.nu * d2.abs();
    let arg = nd / (spec.omega_ir * (2.0 * PI).sqrt());
    if arg <= 1.0 {
        return Err(SpincatError::InvalidRegime(format!(
            "closed-form log argument {arg:.3e} <= 1"
        )));
    }
    let closed_form = ((2.0 * PI).sqrt() / (nd * arg.ln())).max(f64::MIN_POSITIVE);

    let target = convention.target();
    let g = |t: f64| lambda2_clock(t, spec, d2, Lambda2Mode::Exact) - target;
    let mut lo = 0.1 * closed_form;
    let mut hi = (10.0 * closed_form).min(0.99 / spec.omega_ir);
    if !(g(lo) < 0.0 && g(hi) > 0.0) {
        return Err(SpincatError::NoRoot(format!(
            "Lambda2(T) = {target} in [{lo:.3e}, {hi:.3e}]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo) / hi < 1e-12 {
            break;
        }
    }
    Ok(T2ctSolution {
        t2ct: 0.5 * (lo + hi),
        closed_form,
    })
}

/// Quadratic-enhancement bound T2ct > A/sqrt(2 pi) Q T2*^2,
/// valid when Q T2* > 1.
pub fn enhancement_bound(q_coupling: f64, t2_star: f64, a_coeff: f64) -> Result<f64> {
    if q_coupling * t2_star <= 1.0 {
        return Err(SpincatError::RegimeViolation(format!(
            "Q T2* = {:.3} <= 1",
            q_coupling * t2_star
        )));
    }
    Ok(a_coeff / (2.0 * PI).sqrt() * q_coupling * t2_star * t2_star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn spec_10ms() -> OneOverFSpec {
        let nu = nu_from_t2(1e-2, 1e-5).unwrap().nu;
        OneOverFSpec::new(nu, 1e-5, 1e12).unwrap()
    }

    #[test]
    fn quasistatic_linear_closed_form() {
        assert!((coherence_quasistatic_linear(0.0, 1.0).re - 1.0).abs() < 1e-15);
        let sigma = 2.0f64.sqrt();
        let t2 = 2.0f64.sqrt() / sigma;
        let c = coherence_quasistatic_linear(t2, sigma);
        assert!((c.re - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn quasistatic_linear_matches_monte_carlo() {
        // sigma_b = sqrt(2) Hz, t = 1 s: <e^{i db t}> = 1/e
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 1_000_000;
        let sigma = 2.0f64.sqrt();
        let mut acc = C64::new(0.0, 0.0);
        for _ in 0..n {
            // Box-Muller
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let z = (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos();
            acc += C64::from_polar(1.0, sigma * z * 1.0);
        }
        let mc = acc / n as f64;
        let want = coherence_quasistatic_linear(1.0, sigma);
        let stderr = (1.0 / n as f64).sqrt();
        assert!((mc.re - want.re).abs() < 3.0 * stderr, "{} vs {}", mc.re, want.re);
        assert!(mc.im.abs() < 3.0 * stderr);
    }

    #[test]
    fn quasistatic_clock_closed_form_and_tail() {
        assert!((coherence_quasistatic_clock(0.0, 1.0, -1.0).re - 1.0).abs() < 1e-15);
        // sigma_b = 1, |d2| = 1, t = 1: (1 + i)^(-1/2)
        let c = coherence_quasistatic_clock(1.0, 1.0, -1.0);
        let want = C64::new(1.0, 1.0).powf(-0.5);
        assert!((c - want).norm() < 1e-14);
        // long-time log-log slope -> -1/2 within 2%
        let t_big = 1e6;
        let c1 = coherence_quasistatic_clock(t_big, 1.0, -1.0).norm();
        let c2 = coherence_quasistatic_clock(t_big * 10.0, 1.0, -1.0).norm();
        let slope = (c2.ln() - c1.ln()) / 10f64.ln();
        assert!((slope + 0.5).abs() < 0.01, "slope {slope}");
    }

    #[test]
    fn quasistatic_clock_matches_chi_squared_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 400_000;
        let (sigma, d2, t) = (1.0, -1.0, 1.0);
        let mut acc = C64::new(0.0, 0.0);
        for _ in 0..n {
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let z = (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos();
            let db = sigma * z;
            acc += C64::from_polar(1.0, 0.5 * d2 * db * db * t);
        }
        let mc = acc / n as f64;
        let want = coherence_quasistatic_clock(t, sigma, d2);
        let stderr = (1.0 / n as f64).sqrt();
        assert!((mc.re - want.re).abs() < 3.0 * stderr);
        assert!((mc.im - want.im).abs() < 3.0 * stderr);
    }

    #[test]
    fn nu_estimate_and_round_trip() {
        let est = nu_from_t2(1e-2, 1e-5).unwrap();
        assert!((est.nu - 3898.218153833832).abs() < 1e-6);
        assert!(!est.marginal);
        // doubling T2* reduces nu by ~4x up to the log
        let est2 = nu_from_t2(2e-2, 1e-5).unwrap();
        let ratio = est.nu / est2.nu;
        assert!((ratio - 4.0).abs() < 0.25, "ratio {ratio}");
        // round trip within 5%
        let t2_back = t2_from_nu(est.nu, 1e-5);
        assert!((t2_back - 1e-2).abs() / 1e-2 < 0.05);
        // invalid regime
        assert!(nu_from_t2(1e6, 1e-5).is_err());
    }

    #[test]
    fn lambda2_linear_asymptotic_vs_quadrature() {
        let spec = spec_10ms();
        assert_eq!(lambda2_linear(0.0, &spec).unwrap(), 0.0);
        // ln(1/(w_ir t)) > 5 regime: 10% agreement with the filter integral
        for &t in &[1e-3, 1e-2, 1e-1] {
            let asym = lambda2_linear(t, &spec).unwrap();
            let quad = lambda2_linear_quadrature(t, &spec);
            assert!(
                (asym - quad).abs() / quad < 0.10,
                "t={t}: {asym} vs {quad}"
            );
        }
        // self-consistency: Lambda2'(T2*) = 2 when nu comes from nu_from_t2
        let l = lambda2_linear(1e-2, &spec).unwrap();
        assert!((l - 2.0).abs() < 1e-12);
        // regime error
        assert!(lambda2_linear(2e4, &spec).is_err());
    }

    #[test]
    fn s_delta_limits_and_symmetry() {
        let spec = spec_10ms();
        let d2 = -3.18e-6;
        let s0 = s_delta(0.0, &spec, d2);
        assert!((s0 - (spec.nu * d2).powi(2) / spec.omega_ir).abs() < 1e-9 * s0);
        // continuity toward 0
        let s_eps = s_delta(1e-12, &spec, d2);
        assert!((s_eps - s0).abs() / s0 < 1e-6);
        // evenness and positivity
        for &w in &[1e-6, 1e-3, 1.0, 1e3] {
            assert_eq!(s_delta(w, &spec, d2), s_delta(-w, &spec, d2));
            assert!(s_delta(w, &spec, d2) >= 0.0);
        }
    }

    #[test]
    fn s_delta_matches_convolution_oracle() {
        let spec = OneOverFSpec::new(100.0, 1e-4, 1e6).unwrap();
        let d2 = -1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..12 {
            let w = 10f64.powf(rng.gen_range(-3.0..2.7)); // <= 1e-3 w_uv
            let closed = s_delta(w, &spec, d2);
            let oracle = s_delta_convolution_quadrature(w, &spec, d2);
            assert!(
                (closed - oracle).abs() / oracle < 0.01,
                "w={w}: {closed} vs {oracle}"
            );
        }
    }

    #[test]
    fn lambda2_clock_exact_vs_asymptotic_and_quadrature() {
        let spec = spec_10ms();
        let d2 = -3.18e-6;
        assert_eq!(lambda2_clock(0.0, &spec, d2, Lambda2Mode::Exact), 0.0);
        // exact vs asymptotic within 15% at w_ir t = 1e-6
        let t = 1e-6 / spec.omega_ir;
        let ex = lambda2_clock(t, &spec, d2, Lambda2Mode::Exact);
        let asym = lambda2_clock(t, &spec, d2, Lambda2Mode::Asymptotic);
        assert!((ex - asym).abs() / ex < 0.15);
        // exact matches the low-pass quadrature of the same integral to 1%
        for &t in &[0.5, 4.0, 30.0] {
            let ex = lambda2_clock(t, &spec, d2, Lambda2Mode::Exact);
            let quad = lambda2_clock_quadrature(t, &spec, d2);
            assert!((ex - quad).abs() / quad < 0.01, "t={t}: {ex} vs {quad}");
        }
        // the full filter integral exceeds the low-pass form by subleading
        // logs; the relative gap shrinks as w_ir t -> 0
        let gap = |t: f64| {
            let ex = lambda2_clock(t, &spec, d2, Lambda2Mode::Exact);
            (lambda2_clock_filter_quadrature(t, &spec, d2) - ex) / ex
        };
        let g_small = gap(0.5);
        let g_big = gap(16.0);
        assert!(g_small > 0.0 && g_big > g_small && g_big < 0.4);
    }

    #[test]
    fn t2ct_solver_roots_and_bracket() {
        let spec = spec_10ms();
        let d2 = -3.18e-6;
        let sol1 = t2ct_solve(&spec, d2, Lambda2Convention::Lambda2Eq1).unwrap();
        let sol2 = t2ct_solve(&spec, d2, Lambda2Convention::Lambda2Eq2).unwrap();
        assert!(
            (lambda2_clock(sol1.t2ct, &spec, d2, Lambda2Mode::Exact) - 1.0).abs() < 1e-9
        );
        assert!(
            (lambda2_clock(sol2.t2ct, &spec, d2, Lambda2Mode::Exact) - 2.0).abs() < 1e-9
        );
        assert!(sol2.t2ct > sol1.t2ct);
        // frozen from an independent root solve of the same closed form
        assert!((sol1.t2ct - 16.3066).abs() < 1e-3, "{}", sol1.t2ct);
        assert!((sol2.t2ct - 24.1340).abs() < 1e-3, "{}", sol2.t2ct);
        assert!((sol1.closed_form - 32.5950).abs() < 1e-3);
    }

    #[test]
    fn enhancement_bound_anchors() {
        // A = 1, Q = 100 kHz: T2* = 10 ms -> 3.99 s, T2* = 50 ms -> 99.7 s
        let b1 = enhancement_bound(1e5, 1e-2, 1.0).unwrap();
        assert!((b1 - 3.989).abs() / 3.989 < 0.01, "{b1}");
        let b2 = enhancement_bound(1e5, 5e-2, 1.0).unwrap();
        assert!((b2 - 99.74).abs() / 99.74 < 0.01, "{b2}");
        assert_eq!(enhancement_bound(1e5, 1e-2, 0.0).unwrap(), 0.0);
        assert!(matches!(
            enhancement_bound(10.0, 1e-2, 1.0),
            Err(SpincatError::RegimeViolation(_))
        ));
    }

    #[test]
    fn enhancement_ratio_property() {
        // T2ct from the solver exceeds T2* by more than |d2| T2* / sqrt(2 pi)
        // whenever sqrt(nu) |d2| < 1
        let spec = spec_10ms();
        let d2: f64 = -3.18e-6;
        assert!(spec.nu.sqrt() * d2.abs() < 1.0);
        let sol = t2ct_solve(&spec, d2, Lambda2Convention::Lambda2Eq1).unwrap();
        let r = sol.t2ct / 1e-2;
        assert!(r > d2.abs() * 1e-2 / (2.0 * PI).sqrt());
        assert!(r > 1.0);
    }
}
