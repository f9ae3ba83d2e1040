//! The six report generators.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use spincat::clock::find_clock_transition;
use spincat::dephasing::{
    enhancement_bound, lambda2_clock, lambda2_clock_quadrature, nu_from_t2, short_time_scale,
    t2ct_solve, Lambda2Convention, Lambda2Mode, OneOverFSpec, QuasistaticSpec,
    SensitivityExpansion,
};
use spincat::efg_noise::{beta_bound, direct_transition_sim, golden_rule_rate, multi_tlf_rate,
    single_tlf_rate, TLF};
use spincat::electron::{
    cz_protocol, gate_fidelity_haar, initialize, make_ramp, readout, ElectronNuclearParams,
    RampProfile,
};
use spincat::hamiltonian::{build_hamiltonian, eigensystem_with_parity, NuclearSpinModel};
use spincat::linalg::CVec;
use spincat::noise::{mc_coherence, NoiseModel};
use spincat::phonon::{phonon_rate_bound, phonon_vs_charge_report, GradientElasticParams};
use spincat::spin::{cat_state, CatParams, Parity, SpinLength};

use crate::config::{ResolvedModel, RunConfig};
use crate::dataset::{Column, Convention, FigureDataset};

pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub out: &'a Path,
    pub seed: u64,
    pub convention: Convention,
    pub json: bool,
}

impl Ctx<'_> {
    fn resolved(&self) -> anyhow::Result<ResolvedModel> {
        self.cfg.model.resolve()
    }

    fn write(&self, ds: &FigureDataset) -> anyhow::Result<()> {
        let path = ds.write(self.out, self.convention, self.seed, self.json)?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }
}

fn frame_for(
    model: &NuclearSpinModel,
) -> anyhow::Result<spincat::clock::CatQubitFrame> {
    find_clock_transition(model).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Spectrum and splitting sweep at the configured asymmetry.
pub fn cmd_spectrum(ctx: &Ctx) -> anyhow::Result<()> {
    let rm = ctx.resolved()?;
    let model = rm.model;
    let spin = model.spin;
    let dim = spin.dim();
    let q = model.q_coupling;
    let sweep = &ctx.cfg.sweep;

    let frame = frame_for(&model).ok();
    let mut ds = FigureDataset::new("spectrum");
    ds.meta("isotope", &rm.label)
        .meta("two_i", spin.two_i())
        .meta("q_coupling_hz", q)
        .meta("eta", model.eta);
    if let Some(fr) = &frame {
        ds.meta("clock_b0_over_q", fr.b0 / q)
            .meta("clock_delta_over_q", fr.delta / q);
    }
    ds.columns.push(Column::new("b_over_q", ""));
    for k in 0..dim {
        ds.columns.push(Column::freq(&format!("energy_{k}")));
    }
    for k in 0..dim {
        ds.columns.push(Column::new(&format!("parity_{k}"), ""));
    }
    ds.columns.push(Column::freq("delta"));

    let b_max = sweep.b_max_over_iq * spin.value() * q;
    let rows: Vec<Vec<f64>> = (0..sweep.b_points)
        .into_par_iter()
        .map(|i| {
            let b = b_max * (i as f64 + 0.5) / sweep.b_points as f64;
            let spec = eigensystem_with_parity(&build_hamiltonian(&model.with_b(b)), spin)
                .expect("z-aligned field");
            let mut row = Vec::with_capacity(2 * dim + 2);
            row.push(b / q);
            row.extend(spec.energies.iter());
            row.extend(spec.parities.iter().map(|p| p.sign()));
            row.push(spec.gap());
            row
        })
        .collect();
    for r in rows {
        ds.push_row(r);
    }
    ctx.write(&ds)
}

/// Cat-frame fit across the asymmetry grid for both isotope presets.
pub fn cmd_catfit(ctx: &Ctx) -> anyhow::Result<()> {
    let rm = ctx.resolved()?;
    let sweep = &ctx.cfg.sweep;
    let mut ds = FigureDataset::new("catfit");
    ds.meta("q_coupling_hz", rm.model.q_coupling);
    ds.columns = vec![
        Column::new("two_i", ""),
        Column::new("eta", ""),
        Column::new("b0_over_q", ""),
        Column::new("delta_over_q", ""),
        Column::new("a_coeff", ""),
        Column::new("theta0", "rad"),
        Column::new("fidelity", ""),
        Column::new("mean_sq_overlap", ""),
        Column::new("field_b0", "mT"),
    ];

    let mut cases: Vec<(u32, f64, f64)> = Vec::new();
    for &(two_i, gamma_n) in &[(7u32, 5.55e6), (9u32, 6.96e6)] {
        for i in 0..sweep.eta_points {
            let eta = sweep.eta_min
                + (sweep.eta_max - sweep.eta_min) * i as f64 / (sweep.eta_points - 1) as f64;
            cases.push((two_i, gamma_n, eta));
        }
    }
    let q = rm.model.q_coupling;
    let rows: Vec<Option<Vec<f64>>> = cases
        .par_iter()
        .map(|&(two_i, gamma_n, eta)| {
            let spin = SpinLength::new(two_i).ok()?;
            let model = NuclearSpinModel::new(spin, q, eta, gamma_n, 0.0).ok()?;
            let fr = find_clock_transition(&model).ok()?;
            Some(vec![
                two_i as f64,
                eta,
                fr.b0 / q,
                fr.delta / q,
                fr.a_coeff,
                fr.theta0,
                fr.fidelity,
                fr.mean_sq_overlap,
                fr.b0 / gamma_n * 1e3,
            ])
        })
        .collect();
    for r in rows.into_iter().flatten() {
        ds.push_row(r);
    }
    ctx.write(&ds)
}

/// Dephasing report: T2* -> nu, Lambda2 curves, clock dephasing times under
/// both root conventions, the curvature-coefficient table, and a Monte Carlo
/// overlay against the quasistatic closed form.
pub fn cmd_dephasing(ctx: &Ctx) -> anyhow::Result<()> {
    let rm = ctx.resolved()?;
    let model = rm.model;
    let q = model.q_coupling;
    let noise = &ctx.cfg.noise;
    let frame = frame_for(&model)?;
    let d2 = frame.curvature;

    // headline table over a pair of T2* anchors plus the configured value
    let mut ds = FigureDataset::new("dephasing_t2ct");
    ds.meta("isotope", &rm.label)
        .meta("two_i", model.spin.two_i())
        .meta("q_coupling_hz", q)
        .meta("eta", model.eta)
        .meta("a_coeff", frame.a_coeff)
        .meta("curvature_per_hz", d2)
        .meta("omega_ir_hz", noise.omega_ir)
        .meta("omega_uv_hz", noise.omega_uv);
    ds.columns = vec![
        Column::new("t2_star", "s"),
        Column::new("nu", "Hz2"),
        Column::new("sigma_b2", "Hz2"),
        Column::new("t_short", "s"),
        Column::new("t2ct_lambda2_eq1", "s"),
        Column::new("t2ct_lambda2_eq2", "s"),
        Column::new("t2ct_closed_form", "s"),
        Column::new("ratio_eq1", ""),
        Column::new("ratio_eq2", ""),
        Column::new("enhancement_bound", "s"),
    ];
    let mut t2s = vec![1e-2, 5e-2];
    if !t2s.contains(&noise.t2_star) {
        t2s.push(noise.t2_star);
    }
    for t2 in t2s {
        let nu = nu_from_t2(t2, noise.omega_ir)
            .map_err(|e| anyhow::anyhow!("{e}"))?
            .nu;
        let spec = OneOverFSpec::new(nu, noise.omega_ir, noise.omega_uv)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let sigma2 = spec.sigma_b_squared();
        let ts = short_time_scale(sigma2, d2);
        let sol1 = t2ct_solve(&spec, d2, Lambda2Convention::Lambda2Eq1)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let sol2 = t2ct_solve(&spec, d2, Lambda2Convention::Lambda2Eq2)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let bound = enhancement_bound(q, t2, frame.a_coeff).unwrap_or(f64::NAN);
        ds.push_row(vec![
            t2,
            nu,
            sigma2,
            ts,
            sol1.t2ct,
            sol2.t2ct,
            sol1.closed_form,
            sol1.t2ct / ts,
            sol2.t2ct / ts,
            bound,
        ]);
    }
    ctx.write(&ds)?;

    // Lambda2(t) curves at the configured T2*
    let nu = nu_from_t2(noise.t2_star, noise.omega_ir)
        .map_err(|e| anyhow::anyhow!("{e}"))?
        .nu;
    let spec = OneOverFSpec::new(nu, noise.omega_ir, noise.omega_uv)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut ds = FigureDataset::new("dephasing_lambda2");
    ds.meta("nu_hz2", nu).meta("curvature_per_hz", d2);
    ds.columns = vec![
        Column::new("t", "s"),
        Column::new("lambda2_exact", ""),
        Column::new("lambda2_asymptotic", ""),
        Column::new("lambda2_quadrature", ""),
    ];
    let t_ref = t2ct_solve(&spec, d2, Lambda2Convention::Lambda2Eq1)
        .map_err(|e| anyhow::anyhow!("{e}"))?
        .t2ct;
    for k in 1..=40 {
        let t = t_ref * 2.0 * k as f64 / 40.0;
        if spec.omega_ir * t >= 0.9 {
            break;
        }
        ds.push_row(vec![
            t,
            lambda2_clock(t, &spec, d2, Lambda2Mode::Exact),
            lambda2_clock(t, &spec, d2, Lambda2Mode::Asymptotic),
            lambda2_clock_quadrature(t, &spec, d2),
        ]);
    }
    ctx.write(&ds)?;

    // curvature coefficient A(I, eta) for both spins
    let sweep = &ctx.cfg.sweep;
    let mut ds = FigureDataset::new("dephasing_acoeff");
    ds.meta("definition", "A = 1 / (2 Q |Delta''(b0)|)");
    ds.columns = vec![
        Column::new("two_i", ""),
        Column::new("eta", ""),
        Column::new("a_coeff", ""),
    ];
    let mut cases = Vec::new();
    for two_i in [7u32, 9] {
        for i in 0..sweep.eta_points {
            let eta = sweep.eta_min
                + (sweep.eta_max - sweep.eta_min) * i as f64 / (sweep.eta_points - 1) as f64;
            cases.push((two_i, eta));
        }
    }
    let rows: Vec<Option<Vec<f64>>> = cases
        .par_iter()
        .map(|&(two_i, eta)| {
            let spin = SpinLength::new(two_i).ok()?;
            let m = NuclearSpinModel::new(spin, q, eta, model.gamma_n, 0.0).ok()?;
            let fr = find_clock_transition(&m).ok()?;
            Some(vec![two_i as f64, eta, fr.a_coeff])
        })
        .collect();
    for r in rows.into_iter().flatten() {
        ds.push_row(r);
    }
    ctx.write(&ds)?;

    // Monte Carlo overlay of the quasistatic clock decay (desk scale)
    let sigma_b = 1.0;
    let sens = SensitivityExpansion {
        delta0: frame.delta,
        d1: 0.0,
        d2: -1.0,
    };
    let t_grid: Vec<f64> = (1..=20).map(|k| 0.2 * k as f64).collect();
    let mc = mc_coherence(
        &NoiseModel::Quasistatic(QuasistaticSpec { sigma_b }),
        &sens,
        &t_grid,
        noise.mc_trajectories.max(100),
        ctx.seed,
    )
    .map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut ds = FigureDataset::new("dephasing_mc");
    ds.meta("model", "quasistatic clock decay, sigma_b = 1 Hz, d2 = -1 per Hz")
        .meta("trajectories", noise.mc_trajectories.max(100));
    ds.columns = vec![
        Column::new("t", "s"),
        Column::new("mc_re", ""),
        Column::new("mc_im", ""),
        Column::new("stderr_re", ""),
        Column::new("stderr_im", ""),
        Column::new("analytic_re", ""),
        Column::new("analytic_im", ""),
        Column::new("residual_sigma", ""),
    ];
    for s in &mc {
        let want = spincat::dephasing::coherence_quasistatic_clock(s.t, sigma_b, -1.0);
        let resid = ((s.coherence.re - want.re) / s.stderr.0.max(1e-12))
            .hypot((s.coherence.im - want.im) / s.stderr.1.max(1e-12));
        ds.push_row(vec![
            s.t,
            s.coherence.re,
            s.coherence.im,
            s.stderr.0,
            s.stderr.1,
            want.re,
            want.im,
            resid,
        ]);
    }
    ctx.write(&ds)
}

/// Relaxation report: distance sweep, multi-fluctuator sums, the phonon
/// comparison, and a golden-rule-versus-simulation check at desk scale.
pub fn cmd_relaxation(ctx: &Ctx) -> anyhow::Result<()> {
    let rm = ctx.resolved()?;
    let model = rm.model;
    let frame = frame_for(&model)?;
    let tlf_cfg = &ctx.cfg.tlf;
    let spin = model.spin;

    let mut ds = FigureDataset::new("relaxation_rates");
    ds.meta("isotope", &rm.label)
        .meta("q_coupling_hz", model.q_coupling)
        .meta("eta", model.eta)
        .meta("kappa_hz", tlf_cfg.kappa)
        .meta("jump_m", tlf_cfg.jump);
    ds.columns = vec![
        Column::new("distance", "nm"),
        Column::new("q_beta_exact", "Hz"),
        Column::new("q_beta_prefactor_free", "Hz"),
        Column::freq("gamma_bound"),
        Column::new("lifetime_bound", "s"),
        Column::freq("gamma_at_kappa"),
    ];
    for k in 0..24 {
        let x = 3e-9 * (50.0f64 / 3.0).powf(k as f64 / 23.0);
        let mut tlf = TLF::new(x, tlf_cfg.kappa);
        tlf.jump = tlf_cfg.jump;
        let bb = beta_bound(spin, rm.quad_moment, model.q_coupling, &tlf);
        let rates = single_tlf_rate(&frame, &tlf, bb.exact);
        ds.push_row(vec![
            x * 1e9,
            model.q_coupling * bb.exact,
            model.q_coupling * bb.prefactor_free,
            rates.qubit_bound(),
            1.0 / rates.qubit_bound(),
            rates.qubit_rate(),
        ]);
    }
    ctx.write(&ds)?;

    // configured fluctuator set
    let tlfs: Vec<TLF> = tlf_cfg
        .distances
        .iter()
        .map(|&d| {
            let mut t = TLF::new(d, tlf_cfg.kappa);
            t.jump = tlf_cfg.jump;
            t
        })
        .collect();
    let (multi, beta_max) = multi_tlf_rate(&frame, &tlfs, rm.quad_moment);
    let mut ds = FigureDataset::new("relaxation_multi");
    ds.meta("fluctuators", tlfs.len()).meta("beta_max", beta_max);
    ds.columns = vec![
        Column::new("level", ""),
        Column::freq("gamma"),
        Column::freq("bound"),
    ];
    for ((m, g), (_, b)) in multi.gamma.iter().zip(multi.bound.iter()) {
        ds.push_row(vec![*m as f64, *g, *b]);
    }
    ctx.write(&ds)?;

    // phonon channel
    let ph = &ctx.cfg.phonon;
    let params = GradientElasticParams {
        s11: ph.s11,
        s44: ph.s44,
        rho_mass: ph.rho_mass,
        v_sound: ph.v_sound,
        ..Default::default()
    };
    let bound = phonon_rate_bound(
        frame.delta,
        ph.temperature,
        frame.b0 / model.q_coupling,
        spin,
        rm.quad_moment,
        &params,
    );
    let report = phonon_vs_charge_report(
        &frame,
        tlfs.first(),
        ph.temperature,
        rm.quad_moment,
        &params,
    );
    let mut ds = FigureDataset::new("relaxation_phonon");
    ds.meta("temperature_k", ph.temperature)
        .meta("n_bar", bound.n_bar)
        .meta("detailed_balance", bound.n_bar / (bound.n_bar + 1.0));
    ds.columns = vec![
        Column::freq("j_perp"),
        Column::freq("phonon_gamma_bound"),
        Column::freq("charge_gamma_bound"),
        Column::new("phonon_over_charge", ""),
        Column::new("crossover_distance", "m"),
    ];
    ds.push_row(vec![
        bound.j_perp,
        report.phonon_rate,
        report.charge_rate.unwrap_or(f64::NAN),
        report.ratio.unwrap_or(f64::NAN),
        report.crossover_distance.unwrap_or(f64::NAN),
    ]);
    ctx.write(&ds)?;

    // golden rule versus direct simulation, desk-scale amplitudes
    let desk = NuclearSpinModel::new(spin, 1.0, model.eta, model.gamma_n, 0.0)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let desk_frame = frame_for(&desk)?;
    let kappa = 0.5 * desk_frame.delta;
    let tlf = TLF::new(10e-9, kappa);
    let beta = 2.0e-3;
    let t_grid: Vec<f64> = (1..=12).map(|k| 10.0 * k as f64).collect();
    let sim = direct_transition_sim(&desk_frame, &tlf, beta, &t_grid, 4000, ctx.seed)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let rate = golden_rule_rate(&desk_frame, &tlf, beta).qubit_rate();
    let mut ds = FigureDataset::new("relaxation_sim");
    ds.meta("beta", beta)
        .meta("kappa_over_delta", 0.5)
        .meta("golden_rule_rate_hz", rate)
        .meta("note", "amplitudes inflated far above physical charge noise for runtime");
    ds.columns = vec![
        Column::new("t", "s"),
        Column::new("excitation_probability", ""),
        Column::new("stderr", ""),
        Column::new("golden_rule_prediction", ""),
    ];
    for (i, &t) in sim.t_grid.iter().enumerate() {
        ds.push_row(vec![t, sim.prob[i], sim.stderr[i], rate * t]);
    }
    ctx.write(&ds)
}

/// Gate-fidelity heatmap over (Q, eta) with the sampled cross-check column.
pub fn cmd_gatemap(ctx: &Ctx) -> anyhow::Result<()> {
    let rm = ctx.resolved()?;
    let gm = &ctx.cfg.gatemap;
    let spin = rm.model.spin;
    let gamma_n = rm.model.gamma_n;
    let a_max = rm.hyperfine_a;

    let mut rows: Vec<Option<Vec<f64>>> = Vec::new();
    for ie in 0..gm.eta_points {
        let eta = gm.eta_min + (gm.eta_max - gm.eta_min) * ie as f64 / (gm.eta_points - 1).max(1) as f64;
        eprintln!("gatemap: eta row {}/{} (eta = {eta:.3})", ie + 1, gm.eta_points);
        let points: Vec<(f64, f64)> = (0..gm.q_points)
            .map(|iq| {
                let q = gm.q_min
                    + (gm.q_max - gm.q_min) * iq as f64 / (gm.q_points - 1).max(1) as f64;
                (q, eta)
            })
            .collect();
        let row: Vec<Option<Vec<f64>>> = points
            .par_iter()
            .map(|&(q, eta)| {
            let model = NuclearSpinModel::new(spin, q, eta, gamma_n, 0.0).ok()?;
            let fr = find_clock_transition(&model).ok()?;
            let p = ElectronNuclearParams::new(fr, a_max);
            let ramp = make_ramp(
                &p,
                RampProfile::Trapezoid {
                    ramp_time: 0.1 * PI / a_max,
                },
            )
            .ok()?;
            let out = gate_fidelity_haar(
                &p,
                &ramp,
                gm.steps_per_period,
                Some((gm.haar_samples, 1)),
            )
            .ok()?;
            let (mean, se) = out.sampled.unwrap();
                Some(vec![q, eta, p.frame.b0 / q, out.closed_form, mean, se])
            })
            .collect();
        rows.extend(row);
    }

    let mut ds = FigureDataset::new("gatemap");
    ds.meta("isotope", &rm.label)
        .meta("hyperfine_a_hz", a_max)
        .meta("ramp", "trapezoid, ramp_time = 0.1 pi / A")
        .meta("haar_samples", gm.haar_samples);
    ds.columns = vec![
        Column::freq("q_coupling"),
        Column::new("eta", ""),
        Column::new("b0_over_q", ""),
        Column::new("f_g_closed_form", ""),
        Column::new("f_g_sampled", ""),
        Column::new("f_g_sampled_stderr", ""),
    ];
    let mut best = f64::MIN;
    for r in rows.into_iter().flatten() {
        best = best.max(r[3]);
        ds.push_row(r);
    }
    ds.meta("max_f_g", best);
    ds.meta("contour_0p99_exists", best >= 0.99);
    ctx.write(&ds)
}

/// Protocol dry runs: CZ with both outcomes, readout distributions, and an
/// initialization transcript.
pub fn cmd_protocol(ctx: &Ctx) -> anyhow::Result<()> {
    let rm = ctx.resolved()?;
    let model = rm.model;
    let frame = frame_for(&model)?;
    let spin = model.spin;
    let dim = spin.dim();
    let pc = &ctx.cfg.protocol;

    let cats = [
        cat_state(spin, CatParams { theta: frame.theta0, phi: FRAC_PI_2, parity: Parity::Odd })
            .map_err(|e| anyhow::anyhow!("{e}"))?,
        cat_state(spin, CatParams { theta: frame.theta0, phi: FRAC_PI_2, parity: Parity::Even })
            .map_err(|e| anyhow::anyhow!("{e}"))?,
    ];

    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut ds = FigureDataset::new("protocol_cz");
    ds.meta("inputs", pc.n_inputs);
    ds.columns = vec![
        Column::new("input", ""),
        Column::new("p_plus", ""),
        Column::new("p_minus", ""),
        Column::new("outcome_overlap", ""),
        Column::new("reference_fidelity_plus", ""),
        Column::new("reference_fidelity_minus", ""),
    ];
    for trial in 0..pc.n_inputs {
        // random two-qubit input in the cat subspace
        let mut psi = CVec::zeros(dim * dim);
        let mut norm = 0.0;
        let mut amps = [[C64::new(0.0, 0.0); 2]; 2];
        for s1 in 0..2 {
            for s2 in 0..2 {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                amps[s1][s2] = z;
                norm += z.norm_sqr();
            }
        }
        let norm = norm.sqrt();
        for s1 in 0..2 {
            for s2 in 0..2 {
                let a = amps[s1][s2] / norm;
                for n1 in 0..dim {
                    for n2 in 0..dim {
                        psi[n1 * dim + n2] +=
                            a * cats[s1].amplitudes[n1] * cats[s2].amplitudes[n2];
                    }
                }
            }
        }
        let plus = cz_protocol(&frame, &psi, Parity::Even).map_err(|e| anyhow::anyhow!("{e}"))?;
        let minus = cz_protocol(&frame, &psi, Parity::Odd).map_err(|e| anyhow::anyhow!("{e}"))?;
        ds.push_row(vec![
            trial as f64,
            plus.probability,
            minus.probability,
            plus.state.dotc(&minus.state).norm(),
            plus.reference_fidelity,
            minus.reference_fidelity,
        ]);
    }
    ctx.write(&ds)?;

    // readout distributions for the basis states and the equal superposition
    let mut ds = FigureDataset::new("protocol_readout");
    ds.columns = vec![
        Column::new("case", ""),
        Column::new("p_plus", ""),
        Column::new("p_minus", ""),
        Column::new("outside_weight", ""),
    ];
    let mut equal = CVec::zeros(dim);
    for n in 0..dim {
        equal[n] = (cats[0].amplitudes[n] + cats[1].amplitudes[n]) * C64::new(0.5f64.sqrt(), 0.0);
    }
    for (k, psi) in [&cats[0].amplitudes, &cats[1].amplitudes, &equal].iter().enumerate() {
        let r = readout(&frame, psi).map_err(|e| anyhow::anyhow!("{e}"))?;
        ds.push_row(vec![k as f64, r.p_plus, r.p_minus, r.outside_weight]);
    }
    ctx.write(&ds)?;

    // initialization transcript plus outcome statistics
    let rec = initialize(&frame, ctx.seed, FRAC_PI_2).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut ds = FigureDataset::new("protocol_init");
    ds.meta("lambda_sq", rec.lambda_sq)
        .meta("outcome_excited", rec.outcome_excited);
    for (i, line) in rec.transcript.iter().enumerate() {
        ds.meta(&format!("transcript_{i}"), line);
    }
    ds.columns = vec![Column::new("lambda_sq", ""), Column::new("one_minus_lambda_sq", "")];
    ds.push_row(vec![rec.lambda_sq, 1.0 - rec.lambda_sq]);
    ctx.write(&ds)?;

    // two-qubit gate fidelity estimate with the user-supplied error scalars
    let p = ElectronNuclearParams::new(frame.clone(), rm.hyperfine_a);
    let ramp = make_ramp(
        &p,
        RampProfile::Trapezoid {
            ramp_time: 0.1 * PI / rm.hyperfine_a,
        },
    )
    .map_err(|e| anyhow::anyhow!("{e}"))?;
    let fg = gate_fidelity_haar(&p, &ramp, 260, None).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut ds = FigureDataset::new("protocol_fcz");
    ds.meta("epsilon_shuttle", pc.epsilon_shuttle)
        .meta("epsilon_m", pc.epsilon_m);
    ds.columns = vec![
        Column::new("f_g", ""),
        Column::new("f_cz_estimate", ""),
    ];
    ds.push_row(vec![
        fg.closed_form,
        (2.0 * fg.closed_form - 1.0) - pc.epsilon_shuttle - pc.epsilon_m,
    ]);
    ctx.write(&ds)
}

