//! Physical constants (CODATA 2018) and isotope presets.
//!
//! # Unit convention
//!
//! All Hamiltonian coefficients are plain frequencies in Hz, and evolution
//! phases are `coefficient * time` with no extra factor of 2*pi. Under this
//! convention a conditional-rotation pulse of strength `A` completes in
//! `pi / A` (about 31 ns at A = 101.5 MHz), and spectral densities carry
//! units of Hz^2 per Hz. One exception: thermal phonon occupation uses the
//! full `h*f` quantum (see [`crate::phonon`]), which is what reproduces
//! n_bar of a few thousand for a 50 kHz splitting at 10 mK.
//!
//! Energies derived from EFG tensors come in two flavours:
//! * quadrupole couplings `Q = e q D_zz / (2I(2I-1) h)` use Planck's `h`,
//! * dimensionless frame-rotation ratios (`beta`) and phonon couplings use
//!   `hbar`, matching the Hz scale of the rate estimates they feed.

/// Elementary charge (C).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Planck constant (J s).
pub const PLANCK_H: f64 = 6.626_070_15e-34;

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant (J/K).
pub const BOLTZMANN_K: f64 = 1.380_649e-23;

/// Coulomb constant 1/(4 pi eps0) (N m^2 / C^2).
pub const COULOMB_K: f64 = 8.987_551_792_3e9;

/// Default nuclear electric quadrupole moment: 1 barn (m^2).
pub const QUADRUPOLE_MOMENT_BARN: f64 = 1e-28;

/// Free-electron gyromagnetic ratio (Hz/T).
pub const GAMMA_ELECTRON: f64 = 27.97e9;

/// Isotope parameter preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isotope {
    /// Twice the spin length (2I).
    pub two_i: u32,
    /// Nuclear gyromagnetic ratio (Hz/T).
    pub gamma_n: f64,
    /// Bulk hyperfine coupling to a donor-bound electron (Hz).
    pub hyperfine_a: f64,
    /// Human-readable label.
    pub label: &'static str,
}

/// Antimony-123 donor: I = 7/2, gamma_n = 5.55 MHz/T, A = 101.52 MHz.
pub const SB_123: Isotope = Isotope {
    two_i: 7,
    gamma_n: 5.55e6,
    hyperfine_a: 101.52e6,
    label: "Sb-123",
};

/// Bismuth-209 donor: I = 9/2, gamma_n = 6.96 MHz/T, A = 1.475 GHz.
pub const BI_209: Isotope = Isotope {
    two_i: 9,
    gamma_n: 6.96e6,
    hyperfine_a: 1.475e9,
    label: "Bi-209",
};
