//! Phonon-induced relaxation bound via the gradient-elastic coupling.
//!
//! Lattice strain perturbs the EFG tensor through a fourth-rank tensor that
//! has two independent elements under tetrahedral symmetry. A thermal 3D
//! phonon bath then produces transverse-field noise whose spectral density
//! at the qubit splitting bounds the bitflip rate. Thermal occupation uses
//! the full h*f quantum (the one exception to the crate's Hz convention,
//! see [`crate::constants`]).

use crate::clock::CatQubitFrame;
use crate::constants::{BOLTZMANN_K, ELEMENTARY_CHARGE, HBAR, PLANCK_H};
use crate::efg_noise::{beta_bound, TLF};
use crate::spin::SpinLength;

/// Gradient-elastic tensor elements and acoustic parameters for silicon.
#[derive(Debug, Clone, Copy)]
pub struct GradientElasticParams {
    /// Normal-strain element (V/m^2).
    pub s11: f64,
    /// Shear-strain element (V/m^2).
    pub s44: f64,
    /// Mass density (kg/m^3).
    pub rho_mass: f64,
    /// Sound velocity, single-branch approximation (m/s).
    pub v_sound: f64,
    /// Order-of-magnitude gradient-elastic scale used in the rate bound
    /// (V/m^2 per unit strain).
    pub efg_scale: f64,
}

impl Default for GradientElasticParams {
    fn default() -> Self {
        Self {
            s11: 2.4e22,
            s44: 6.1e22,
            rho_mass: 2300.0,
            v_sound: 6500.0,
            efg_scale: 1e22,
        }
    }
}

/// Six-component Voigt vector (xx, yy, zz, yz, xz, xy).
pub type Voigt = [f64; 6];

/// Map a Voigt strain to the EFG perturbation it produces: the normal block
/// has rows (S11, -S11/2, -S11/2) cyclic, the shear block is 2 S44 identity.
pub fn strain_to_efg(strain: &Voigt, params: &GradientElasticParams) -> Voigt {
    let s11 = params.s11;
    let shear = 2.0 * params.s44;
    let normal = |a: f64, b: f64, c: f64| s11 * a - 0.5 * s11 * (b + c);
    [
        normal(strain[0], strain[1], strain[2]),
        normal(strain[1], strain[2], strain[0]),
        normal(strain[2], strain[0], strain[1]),
        shear * strain[3],
        shear * strain[4],
        shear * strain[5],
    ]
}

/// Bose-Einstein occupation with the h*f quantum.
pub fn thermal_occupation(freq: f64, temperature: f64) -> f64 {
    assert!(temperature > 0.0 && freq > 0.0);
    let x = PLANCK_H * freq / (BOLTZMANN_K * temperature);
    (x.exp_m1()).recip()
}

/// Phonon density of states in three dimensions, D(w) = V w^2 / (2 pi^2 v^3).
pub fn phonon_dos(freq: f64, volume: f64, v_sound: f64) -> f64 {
    volume * freq * freq / (2.0 * std::f64::consts::PI.powi(2) * v_sound.powi(3))
}

/// Single-phonon coupling weight g(w) = hbar (w/v)^2 / (2 rho w V).
pub fn phonon_coupling_weight(freq: f64, volume: f64, rho: f64, v_sound: f64) -> f64 {
    HBAR * (freq / v_sound).powi(2) / (2.0 * rho * freq * volume)
}

/// Phonon relaxation estimate at the qubit splitting.
#[derive(Debug, Clone, Copy)]
pub struct PhononBound {
    /// Transverse-field coupling scale C (Hz per unit strain).
    pub c_coupling: f64,
    /// Thermal occupation at the splitting.
    pub n_bar: f64,
    /// Spectral-density bound J_perp(-Delta) (Hz), absorption channel.
    pub j_perp: f64,
    /// Bitflip-rate bound I^2 J_perp (Hz).
    pub gamma_bound: f64,
    /// Emission-channel counterpart, proportional to n_bar + 1.
    pub j_perp_emission: f64,
}

/// Bound the phonon-induced bitflip rate:
/// J_perp(-Delta) <= C^2 D(Delta) g(Delta) n_bar(Delta), with
/// C = (gamma_n B0 / Q) e q S_typ / (2I(2I-1) hbar). The crystal volume
/// cancels between D and g.
pub fn phonon_rate_bound(
    delta: f64,
    temperature: f64,
    b0_over_q: f64,
    spin: SpinLength,
    quad_moment_q: f64,
    params: &GradientElasticParams,
) -> PhononBound {
    assert!(delta > 0.0);
    let two_i = spin.two_i() as f64;
    let c_coupling = b0_over_q * ELEMENTARY_CHARGE * quad_moment_q * params.efg_scale
        / (two_i * (two_i - 1.0) * HBAR);
    let volume = 1.0; // cancels; see volume-independence test
    let dg = phonon_dos(delta, volume, params.v_sound)
        * phonon_coupling_weight(delta, volume, params.rho_mass, params.v_sound);
    let n_bar = thermal_occupation(delta, temperature);
    let j_perp = c_coupling * c_coupling * dg * n_bar;
    let i_val = spin.value();
    PhononBound {
        c_coupling,
        n_bar,
        j_perp,
        gamma_bound: i_val * i_val * j_perp,
        j_perp_emission: c_coupling * c_coupling * dg * (n_bar + 1.0),
    }
}

/// Side-by-side comparison of charge-noise and phonon relaxation channels.
#[derive(Debug, Clone, Copy)]
pub struct ChannelComparison {
    /// Charge-noise bitflip-rate bound (Hz), when a fluctuator is present.
    pub charge_rate: Option<f64>,
    /// Phonon bitflip-rate bound (Hz).
    pub phonon_rate: f64,
    /// phonon / charge, when both are defined.
    pub ratio: Option<f64>,
    /// Fluctuator distance at which the two channels would match (m),
    /// using the r^-8 scaling of the charge channel.
    pub crossover_distance: Option<f64>,
}

/// Compare the charge-noise bound for the nearest fluctuator against the
/// phonon bound at the same operating frame.
pub fn phonon_vs_charge_report(
    frame: &CatQubitFrame,
    tlf: Option<&TLF>,
    temperature: f64,
    quad_moment_q: f64,
    params: &GradientElasticParams,
) -> ChannelComparison {
    let spin = frame.model.spin;
    let phonon = phonon_rate_bound(
        frame.delta,
        temperature,
        frame.b0 / frame.model.q_coupling,
        spin,
        quad_moment_q,
        params,
    );
    let i_val = spin.value();
    match tlf {
        None => ChannelComparison {
            charge_rate: None,
            phonon_rate: phonon.gamma_bound,
            ratio: None,
            crossover_distance: None,
        },
        Some(t) => {
            let beta = beta_bound(spin, quad_moment_q, frame.model.q_coupling, t).exact;
            let charge = (i_val * frame.b0 * beta).powi(2) / (2.0 * frame.delta);
            let ratio = phonon.gamma_bound / charge;
            // charge rate scales like r^-8
            let crossover = t.distance * (charge / phonon.gamma_bound).powf(1.0 / 8.0);
            ChannelComparison {
                charge_rate: Some(charge),
                phonon_rate: phonon.gamma_bound,
                ratio: Some(ratio),
                crossover_distance: Some(crossover),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::find_clock_transition;
    use crate::hamiltonian::NuclearSpinModel;

    fn spin7() -> SpinLength {
        SpinLength::new(7).unwrap()
    }

    #[test]
    fn hydrostatic_strain_produces_no_normal_efg() {
        let p = GradientElasticParams::default();
        let out = strain_to_efg(&[1e-6, 1e-6, 1e-6, 0.0, 0.0, 0.0], &p);
        for v in &out[..3] {
            assert!(v.abs() < 1e-12 * p.s11 * 1e-6);
        }
    }

    #[test]
    fn unit_shear_and_uniaxial_rows() {
        let p = GradientElasticParams::default();
        let shear = strain_to_efg(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0], &p);
        assert_eq!(shear[3], 2.0 * p.s44);
        let uni = strain_to_efg(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], &p);
        assert_eq!(uni[0], p.s11);
        assert_eq!(uni[1], -p.s11 / 2.0);
        assert_eq!(uni[2], -p.s11 / 2.0);
    }

    #[test]
    fn map_is_linear() {
        let p = GradientElasticParams::default();
        let a = [1e-7, -2e-7, 5e-8, 3e-8, 0.0, -1e-8];
        let b = [0.0, 1e-7, -4e-8, 0.0, 2e-8, 6e-8];
        let sum: Voigt = std::array::from_fn(|i| a[i] + b[i]);
        let va = strain_to_efg(&a, &p);
        let vb = strain_to_efg(&b, &p);
        let vs = strain_to_efg(&sum, &p);
        for i in 0..6 {
            assert!((vs[i] - va[i] - vb[i]).abs() < 1e-9 * p.s44.max(p.s11));
        }
    }

    #[test]
    fn thermal_occupation_anchor() {
        // 50 kHz splitting at 10 mK gives n_bar of about 4200
        let n = thermal_occupation(5e4, 0.01);
        assert!((n - 4200.0).abs() / 4200.0 < 0.05, "n_bar = {n}");
        // closes as T -> 0
        assert!(thermal_occupation(5e4, 1e-8) < 1e-10);
    }

    #[test]
    fn rate_bound_at_silicon_defaults() {
        let b = phonon_rate_bound(5e4, 0.01, 10.0, spin7(), 1e-28, &Default::default());
        // order of magnitude 1e-23 Hz
        assert!(b.j_perp < 1e-22, "J_perp = {}", b.j_perp);
        assert!(b.j_perp > 1e-25, "J_perp = {}", b.j_perp);
        assert!(b.gamma_bound > b.j_perp); // I^2 > 1
        // vanishes with temperature
        let cold = phonon_rate_bound(5e4, 1e-8, 10.0, spin7(), 1e-28, &Default::default());
        assert!(cold.j_perp < 1e-40);
    }

    #[test]
    fn volume_cancels_between_dos_and_weight() {
        let p = GradientElasticParams::default();
        for &v in &[1e-9, 1.0, 1e9] {
            let prod = phonon_dos(5e4, v, p.v_sound)
                * phonon_coupling_weight(5e4, v, p.rho_mass, p.v_sound);
            let reference = phonon_dos(5e4, 1.0, p.v_sound)
                * phonon_coupling_weight(5e4, 1.0, p.rho_mass, p.v_sound);
            assert!((prod - reference).abs() < 1e-15 * reference.abs());
        }
    }

    #[test]
    fn detailed_balance_between_channels() {
        let b = phonon_rate_bound(5e4, 0.01, 10.0, spin7(), 1e-28, &Default::default());
        let ratio = b.j_perp / b.j_perp_emission;
        assert!((ratio - b.n_bar / (b.n_bar + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn charge_noise_dominates_at_ten_nanometers() {
        let m = NuclearSpinModel::new(spin7(), 1e5, 0.75, 5.55e6, 0.0).unwrap();
        let fr = find_clock_transition(&m).unwrap();
        let rep = phonon_vs_charge_report(
            &fr,
            Some(&TLF::new(10e-9, 1e3)),
            0.01,
            1e-28,
            &Default::default(),
        );
        assert!(rep.ratio.unwrap() < 1e-15, "ratio = {:?}", rep.ratio);
        // crossover in the micrometer range
        let xr = rep.crossover_distance.unwrap();
        assert!(xr > 1e-7 && xr < 1e-4, "crossover = {xr} m");
        // a fluctuator at 1 um is already below the phonon bound or close:
        // the charge rate falls by (100)^8 relative to 10 nm
        let rep_far = phonon_vs_charge_report(
            &fr,
            Some(&TLF::new(1e-6, 1e3)),
            0.01,
            1e-28,
            &Default::default(),
        );
        assert!(rep_far.charge_rate.unwrap() < rep.charge_rate.unwrap() * 1e-15);
    }

    #[test]
    fn phonon_only_report_without_fluctuators() {
        let m = NuclearSpinModel::new(spin7(), 1e5, 0.75, 5.55e6, 0.0).unwrap();
        let fr = find_clock_transition(&m).unwrap();
        let rep = phonon_vs_charge_report(&fr, None, 0.01, 1e-28, &Default::default());
        assert!(rep.charge_rate.is_none());
        assert!(rep.ratio.is_none());
        assert!(rep.phonon_rate > 0.0);
    }
}
