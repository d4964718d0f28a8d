//! One pass/fail line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::Command;
use std::time::Instant;

use iontrap_core::dynamics::{
    analytic_swap, collapse_operators, integrate_tdse, lindblad_evolve, propagate, uniform_grid, DecoherenceParams,
    IntegratorOptions, Propagator,
};
use iontrap_core::experiments::{
    convergence_check, decoherence_sweep, loglog_slope, sweep_fig2, DecoherenceSweepSpec, Fig2Spec, Scenario,
};
use iontrap_core::gates::{swap_duration, timing_budget, verify_cnot, GateSequence, ProtocolTiming, WellRegister};
use iontrap_core::model::{
    beam_splitter_hamiltonian, derive_couplings, lamb_dicke_gap, LaserParams, Layout, TrapArrayParams,
};
use iontrap_core::quantum::{CompositeSpace, Operator, PureState};
use iontrap_core::C64;
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn quoted_laser() -> LaserParams {
    LaserParams::on_calcium_line(1e7, 0.1, 0.0, 0.0).unwrap()
}

fn occupancy_curves() -> Check {
    let start = Instant::now();
    let r = sweep_fig2(&Fig2Spec::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let mut worst_peak = 0.0f64;
    for (ratio, expected) in [(0.0, 1.0), (2.0, 0.5), (5.0, 4.0 / 29.0), (10.0, 1.0 / 26.0)] {
        let c = ((ratio / 2.0f64).powi(2) + 1.0).sqrt();
        let at_peak = analytic_swap(1.0, ratio, PI / (2.0 * c)).unwrap().occupancy();
        worst_peak = worst_peak.max((at_peak - expected).abs());
    }
    let diff = r.summary["max_abs_difference"];
    ensure(
        worst_peak < 1e-12 && diff <= 1e-6 && elapsed < 10.0,
        format!("peak error {worst_peak:.1e}, analytic vs integrated {diff:.2e}, {elapsed:.2} s"),
    )
}

fn coupling_constant() -> Check {
    let c = derive_couplings(&TrapArrayParams::calcium_pair(), &quoted_laser()).map_err(|e| e.to_string())?;
    // Oracle from CODATA 2018 constants, folded here independently.
    let (e, eps0, hbar, u, me) = (1.602176634e-19, 8.8541878128e-12, 1.054571817e-34, 1.66053906660e-27, 9.1093837015e-31);
    let mass = 39.962590863 * u - me;
    let d = 40e-6;
    let k = e * e / (4.0 * PI * eps0 * d);
    let xi = |nu: f64| (hbar / (2.0 * mass * nu)).sqrt();
    let oracle = 2.0 * k * xi(5.0e6) * xi(5.1e6) / (hbar * d * d);
    let rel = (c.g / oracle - 1.0).abs();
    ensure(
        (0.9e4..=1.3e4).contains(&c.g) && rel < 1e-3,
        format!("g = {:.5e} rad/s, oracle {oracle:.5e}, relative gap {rel:.1e}", c.g),
    )
}

fn normalization() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let g = rng.gen_range(1e-2..1e5);
        let delta = rng.gen_range(-1e6..1e6);
        let t = rng.gen_range(0.0..100.0 / g);
        worst = worst.max((analytic_swap(g, delta, t).unwrap().norm_sqr() - 1.0).abs());
    }
    ensure(worst < 1e-10, format!("max | |alpha|^2 + |beta|^2 - 1 | = {worst:.1e} over 1e4 samples"))
}

fn propagator_contracts() -> Check {
    let mut rng = StdRng::seed_from_u64(99);
    let (mut unitarity, mut group) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let dim = rng.gen_range(2..=8);
        let m = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let h = Operator::new(CompositeSpace::modes(1, dim).unwrap(), &m + m.adjoint()).unwrap();
        let (t, s) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let u = propagate(&h, t).unwrap();
        unitarity = unitarity.max((u.matrix().adjoint() * u.matrix() - DMatrix::identity(dim, dim)).norm());
        let p = Propagator::new(&h).unwrap();
        let composed = p.at(t).unwrap().matmul(&p.at(s).unwrap()).unwrap();
        group = group.max(composed.sub(&p.at(t + s).unwrap()).unwrap().max_abs());
    }
    ensure(unitarity < 1e-10 && group < 1e-10, format!("unitarity {unitarity:.1e}, group property {group:.1e}"))
}

fn cnot_verification() -> Check {
    let start = Instant::now();
    let mut worst = (1.0f64, 1.0f64);
    for n in 2..=4 {
        let reg = WellRegister::new(n, 3).unwrap();
        let seq = GateSequence::cnot(&reg, &ProtocolTiming::default()).unwrap();
        let v = verify_cnot(&reg, &seq).map_err(|e| e.to_string())?;
        worst = (worst.0.min(v.fidelity), worst.1.min(v.ancilla_reset_fidelity));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(
        worst.0 >= 1.0 - 1e-9 && worst.1 >= 1.0 - 1e-9 && elapsed < 60.0,
        format!("min fidelity 1 - {:.1e}, min reset 1 - {:.1e}, {elapsed:.2} s", 1.0 - worst.0, 1.0 - worst.1),
    )
}

fn timing() -> Check {
    let b = timing_budget(20, 8e-6, 45e-6, 50e-6).map_err(|e| e.to_string())?;
    let t_u = swap_duration(3.5e4).unwrap();
    ensure(
        (b.t_total - 1.776e-3).abs() < 1e-12 && (t_u * 1e6 * 10.0).round() / 10.0 == 44.9,
        format!("t_total = {:.4} ms, t_u = {:.2} us", b.t_total * 1e3, t_u * 1e6),
    )
}

fn lamb_dicke_order() -> Check {
    let layout = Layout::spin_mode(5).unwrap();
    let etas: Vec<f64> = (0..8).map(|k| (0.01f64.ln() + (0.2f64.ln() - 0.01f64.ln()) * k as f64 / 7.0).exp()).collect();
    let gaps = etas
        .iter()
        .map(|&eta| {
            let laser = LaserParams::on_calcium_line(1e7, eta, 0.0, 0.0).unwrap();
            lamb_dicke_gap(&laser, &layout, FRAC_PI_4 / laser.laser_frequency)
        })
        .collect::<iontrap_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let slope = loglog_slope(&etas, &gaps).map_err(|e| e.to_string())?;
    ensure((slope - 3.0).abs() <= 0.3, format!("log-log slope {slope:.3}"))
}

fn lindblad_sanity() -> Check {
    let layout = Layout::two_modes(2).unwrap();
    let h = beam_splitter_hamiltonian(1.0, 0.0, &layout).unwrap();
    let start = PureState::basis(layout.space(), &[0, 1]).unwrap();
    let grid = uniform_grid(0.0, PI / 2.0, 21).unwrap();
    let opts = IntegratorOptions::default();
    let pure = integrate_tdse(&h, &start, &grid, &opts, &[]).map_err(|e| e.to_string())?;
    let none = collapse_operators(&DecoherenceParams::none(), layout.space()).unwrap();
    let mixed = lindblad_evolve(&h, &none, &start.to_density(), &grid, &opts, &[]).map_err(|e| e.to_string())?;
    let gap = pure
        .states
        .iter()
        .zip(&mixed.states)
        .map(|(p, r)| (p.to_density().matrix() - r.matrix()).norm())
        .fold(0.0, f64::max);

    let g = derive_couplings(&TrapArrayParams::calcium_pair(), &quoted_laser()).unwrap().g;
    let gammas = vec![0.0, 1e2, 3e2, 1e3, 3e3];
    let sweep = decoherence_sweep(&DecoherenceSweepSpec::new(gammas, g)).map_err(|e| e.to_string())?;
    let f = sweep.column("swap_fidelity").unwrap();
    let decreasing = f.windows(2).all(|w| w[1] < w[0]);
    let ratio = g / DecoherenceParams::typical().gamma_ex;
    ensure(
        gap < 1e-7 && decreasing && ratio.round() == 11.0,
        format!("gamma=0 gap {gap:.1e}, fidelities {f:.4?}, g/gamma_ex = {ratio:.2}"),
    )
}

fn truncation_convergence() -> Check {
    let mut worst = 0.0f64;
    for scenario in [Scenario::Fig2 { spec: Fig2Spec::default() }, Scenario::Cnot { wells: 2 }, Scenario::Cnot { wells: 3 }] {
        let r = convergence_check(&scenario, &[2, 3, 5]).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_difference);
    }
    ensure(worst < 1e-9, format!("max difference across truncations 2, 3, 5: {worst:.1e}"))
}

fn payload(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_iontrap"))
        .args(args)
        .env_remove("IONTRAP_OUTPUT_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok(text.lines().filter(|l| !l.starts_with("# timestamp:")).collect::<Vec<_>>().join("\n"))
}

fn determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &["sweep", "--points", "201"],
        &["couplings"],
        &["rwa", "--eta-grid", "0.05,0.1", "--points", "21"],
        &["decohere"],
    ];
    for args in runs {
        let (a, b) = (payload(args)?, payload(args)?);
        if a != b {
            return Err(format!("{args:?} differs between runs"));
        }
    }
    Ok(format!("{} subcommands bit-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("occupancy curves", occupancy_curves),
        ("coupling constant", coupling_constant),
        ("normalization", normalization),
        ("propagator contracts", propagator_contracts),
        ("CNOT verification", cnot_verification),
        ("timing budget", timing),
        ("Lamb-Dicke order", lamb_dicke_order),
        ("Lindblad sanity", lindblad_sanity),
        ("truncation convergence", truncation_convergence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
