//! Numerical library for nuclear-spin cat qubits built on quadrupolar
//! nonlinearity: spin operator algebra, Z2-symmetric Hamiltonian spectra,
//! clock-transition location, dephasing and relaxation estimates, NMR-style
//! drive simulation, and electron-mediated gate protocols.
//!
//! See [`constants`] for the global unit convention (Hz coefficients,
//! evolution phase = coefficient * time).

pub mod constants;
pub mod error;
pub mod linalg;
pub mod spin;
pub mod wigner;
pub mod efg;
pub mod hamiltonian;
pub mod clock;
pub mod special;
pub mod quadrature;
pub mod dephasing;
pub mod noise;
pub mod efg_noise;
pub mod phonon;
pub mod propagate;
pub mod drive;
pub mod electron;

pub use error::{Result, SpincatError};
pub use spin::{
    cat_state, coherent_state, make_spin_ops, overlap_gamma, CatParams, Parity, SpinLength,
    SpinOperatorSet, SpinState,
};
pub use efg::{efg_to_pas, EFGTensor, PASFrame};
pub use hamiltonian::{
    build_hamiltonian, build_quadrupole, eigensystem_with_parity, NuclearSpinModel,
    ParityLabeledSpectrum,
};
pub use clock::{
    count_splitting_zeros, curvature_coefficient, find_clock_transition, fit_cat_frame,
    splitting, splitting_curve, CatQubitFrame,
};
pub use dephasing::{
    coherence_quasistatic_clock, coherence_quasistatic_linear, enhancement_bound, lambda1,
    lambda2_clock, lambda2_linear, nu_from_t2, s_delta, short_time_scale, t2_from_nu, t2ct_solve,
    Lambda2Convention, Lambda2Mode, OneOverFSpec, QuasistaticSpec, SensitivityExpansion,
};
pub use noise::{mc_coherence, telegraph_ensemble_for_one_over_f, Fluctuator, NoiseModel};
pub use efg_noise::{
    beta_bound, direct_transition_sim, golden_rule_rate, multi_tlf_rate, perturbation_frame,
    single_tlf_rate, tlf_delta_v, EFGPerturbation, TransitionRates, TLF,
};
pub use phonon::{
    phonon_rate_bound, phonon_vs_charge_report, strain_to_efg, GradientElasticParams, PhononBound,
};
pub use drive::{
    driven_evolution, multi_tone_rotation, opposite_parity_tones, rabi_params, rwa_hamiltonian,
    DriveSpec, RabiParams,
};
pub use electron::{
    cz_protocol, evolve_approx, evolve_exact, gate_fidelity_haar, initialize, make_ramp, readout,
    u_cr_ideal, u_cr_logical, ElectronNuclearParams, RampProfile, RampSchedule,
};
pub use wigner::{wigner_function, wigner_sphere_integral};
