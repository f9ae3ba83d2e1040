//! Run configuration: TOML with sections, unknown keys rejected.

use anyhow::{bail, Context};
use serde::Deserialize;
use spincat::constants::{BI_209, SB_123};
use spincat::hamiltonian::NuclearSpinModel;
use spincat::spin::SpinLength;

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub noise: NoiseConfig,
    #[serde(default)]
    pub tlf: TlfConfig,
    #[serde(default)]
    pub phonon: PhononConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub gatemap: GatemapConfig,
    #[serde(default)]
    pub protocol: ProtocolConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// "Sb-123", "Bi-209", or "custom".
    pub isotope: String,
    /// Explicit parameters (used when isotope = "custom", otherwise they
    /// override the preset if set).
    pub two_i: Option<u32>,
    pub gamma_n: Option<f64>,
    pub hyperfine_a: Option<f64>,
    /// Quadrupole coupling Q (Hz).
    pub q_coupling: f64,
    /// Asymmetry parameter.
    pub eta: f64,
    /// Nuclear quadrupole moment (m^2).
    pub quad_moment: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            isotope: "Sb-123".into(),
            two_i: None,
            gamma_n: None,
            hyperfine_a: None,
            q_coupling: 1e5,
            eta: 0.75,
            quad_moment: 1e-28,
        }
    }
}

impl ModelConfig {
    pub fn resolve(&self) -> anyhow::Result<ResolvedModel> {
        let (two_i, gamma_n, hyperfine_a, label) = match self.isotope.as_str() {
            "Sb-123" => (SB_123.two_i, SB_123.gamma_n, SB_123.hyperfine_a, "Sb-123"),
            "Bi-209" => (BI_209.two_i, BI_209.gamma_n, BI_209.hyperfine_a, "Bi-209"),
            "custom" => {
                let two_i = self.two_i.context("custom isotope needs two_i")?;
                let gamma_n = self.gamma_n.context("custom isotope needs gamma_n")?;
                (two_i, gamma_n, self.hyperfine_a.unwrap_or(0.0), "custom")
            }
            other => bail!("unknown isotope preset '{other}' (Sb-123 | Bi-209 | custom)"),
        };
        let two_i = self.two_i.unwrap_or(two_i);
        let gamma_n = self.gamma_n.unwrap_or(gamma_n);
        let hyperfine_a = self.hyperfine_a.unwrap_or(hyperfine_a);
        let spin = SpinLength::new(two_i).map_err(|e| anyhow::anyhow!("{e}"))?;
        let model = NuclearSpinModel::new(spin, self.q_coupling, self.eta, gamma_n, 0.0)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(ResolvedModel {
            model,
            hyperfine_a,
            quad_moment: self.quad_moment,
            label: label.to_string(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub model: NuclearSpinModel,
    pub hyperfine_a: f64,
    pub quad_moment: f64,
    pub label: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// Measured linear-qubit dephasing time (s).
    pub t2_star: f64,
    /// Infrared cutoff (Hz).
    pub omega_ir: f64,
    /// Ultraviolet cutoff (Hz).
    pub omega_uv: f64,
    /// Monte Carlo trajectories for overlay tables.
    pub mc_trajectories: usize,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            t2_star: 1e-2,
            omega_ir: 1e-5,
            omega_uv: 1e12,
            mc_trajectories: 20_000,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TlfConfig {
    /// Fluctuator distances (m).
    pub distances: Vec<f64>,
    /// Common switching rate (Hz).
    pub kappa: f64,
    /// Jump length (m).
    pub jump: f64,
}

impl Default for TlfConfig {
    fn default() -> Self {
        Self {
            distances: vec![10e-9],
            kappa: 1e3,
            jump: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhononConfig {
    pub temperature: f64,
    pub s11: f64,
    pub s44: f64,
    pub rho_mass: f64,
    pub v_sound: f64,
}

impl Default for PhononConfig {
    fn default() -> Self {
        Self {
            temperature: 0.01,
            s11: 2.4e22,
            s44: 6.1e22,
            rho_mass: 2300.0,
            v_sound: 6500.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub eta_min: f64,
    pub eta_max: f64,
    pub eta_points: usize,
    /// Field sweep upper limit in units of Q per unit spin (b_max = x * I * Q).
    pub b_max_over_iq: f64,
    pub b_points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            eta_min: 0.3,
            eta_max: 1.0,
            eta_points: 20,
            b_max_over_iq: 4.0,
            b_points: 400,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GatemapConfig {
    pub q_min: f64,
    pub q_max: f64,
    pub q_points: usize,
    pub eta_min: f64,
    pub eta_max: f64,
    pub eta_points: usize,
    /// Haar samples for the cross-validation column.
    pub haar_samples: usize,
    pub steps_per_period: usize,
}

impl Default for GatemapConfig {
    fn default() -> Self {
        Self {
            q_min: 5e4,
            q_max: 6e5,
            q_points: 40,
            eta_min: 0.3,
            eta_max: 1.0,
            eta_points: 30,
            haar_samples: 4000,
            steps_per_period: 260,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    /// Random two-qubit inputs for the CZ dry run.
    pub n_inputs: usize,
    /// Electron shuttling error (user-supplied scalar).
    pub epsilon_shuttle: f64,
    /// Electron measurement error (user-supplied scalar).
    pub epsilon_m: f64,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            n_inputs: 20,
            epsilon_shuttle: 0.005,
            epsilon_m: 0.01,
        }
    }
}

/// Parse a TOML config file; unknown keys anywhere are an error.
pub fn load(path: Option<&std::path::Path>) -> anyhow::Result<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?;
            let cfg: RunConfig = toml::from_str(&text).context("parsing config")?;
            Ok(cfg)
        }
    }
}
