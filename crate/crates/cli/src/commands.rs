use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use noisyvqe::circuit::{hartree_fock_occupation, randomized_compile, AnsatzFamily, AnsatzSpec};
use noisyvqe::exact::{ground_state, SpectrumResult};
use noisyvqe::io::{bundled_nah_file, HamiltonianFile, SweepManifest};
use noisyvqe::optim::OptimizerConfig;
use noisyvqe::pauli::PauliSum;
use noisyvqe::sim::NoiseModel;
use noisyvqe::vqe::{build_pool, run_adapt, run_vqe_with, AdaptConfig, AdaptResult, VqeResult};
use rayon::prelude::*;

use crate::record::{join_parameters, write_csv, RunContext, RunRecord};
use crate::{
    AdaptArgs, AdaptOptions, CliError, CompileArgs, ExactArgs, HamiltonianArgs, NoiseArgs,
    OptimizerArgs, SweepArgs, VqeArgs,
};

type Result<T> = std::result::Result<T, CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn load_hamiltonian(args: &HamiltonianArgs) -> Result<(HamiltonianFile, PauliSum)> {
    let mut file = match &args.source.hamiltonian {
        Some(path) => HamiltonianFile::load(path)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => bundled_nah_file(),
    };
    if args.bond_length.is_some() {
        file.bond_length_angstrom = args.bond_length;
    }
    let h = file.to_pauli_sum().map_err(usage)?;
    Ok((file, h))
}

fn spectrum(h: &PauliSum) -> Result<SpectrumResult> {
    ground_state(h).map_err(usage)
}

fn noise_model(p1: f64, noisy_diagonal: bool) -> Result<NoiseModel> {
    Ok(NoiseModel::depolarizing(p1)
        .map_err(usage)?
        .with_diagonal_exemption(!noisy_diagonal))
}

fn noise_from(args: &NoiseArgs) -> Result<NoiseModel> {
    noise_model(args.p1, args.noisy_diagonal)
}

fn optimizer_config(args: &OptimizerArgs) -> Result<OptimizerConfig> {
    let mut cfg = OptimizerConfig::for_kind(args.optimizer);
    if let Some(n) = args.max_iterations {
        cfg.max_iterations = n;
    }
    if let Some(t) = args.tolerance {
        cfg.tolerance = t;
    }
    cfg.fd_step = args.fd_step;
    cfg.initial_point = args.initial_point.clone();
    if cfg.max_iterations == 0 {
        return Err(usage("--max-iterations must be positive"));
    }
    if [cfg.tolerance, cfg.fd_step].iter().any(|v| v.is_nan() || *v <= 0.0) {
        return Err(usage("--tolerance and --fd-step must be positive"));
    }
    Ok(cfg)
}

fn adapt_config(args: &AdaptOptions) -> Result<AdaptConfig> {
    if args.grad_threshold.is_nan() || args.grad_threshold <= 0.0 {
        return Err(usage("--grad-threshold must be positive"));
    }
    if args.max_depth == 0 {
        return Err(usage("--max-depth must be at least 1"));
    }
    Ok(AdaptConfig {
        grad_threshold: args.grad_threshold,
        max_depth: args.max_depth,
        norm: args.norm,
        noiseless_gradients: !args.noisy_gradients,
        n_electrons: args.electrons,
    })
}

fn summary_line(r: &RunRecord) -> String {
    let num = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.10}"));
    format!(
        "{:<10} {:<13} {:<6} p1={:<7} seed={:<4} energy={} error={} fidelity={} params={} status={}",
        r.kind,
        r.ansatz,
        r.optimizer,
        r.p1,
        r.seed.map_or_else(|| "-".into(), |s| s.to_string()),
        num(r.energy_ha),
        num(r.energy_error_ha),
        num(r.fidelity),
        r.n_params.map_or_else(|| "-".into(), |n| n.to_string()),
        r.status,
    )
}

/// CSV to `out`, or to stdout when no path is given; with a path, a short
/// summary goes to stdout instead.
fn emit(out: Option<&Path>, records: &[RunRecord]) -> Result<()> {
    match out {
        Some(path) => {
            write_csv(BufWriter::new(File::create(path)?), records)?;
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            for r in records {
                writeln!(lock, "{}", summary_line(r))?;
            }
        }
        None => write_csv(io::stdout().lock(), records)?,
    }
    Ok(())
}

fn rc_runs(
    h: &PauliSum,
    spec: &AnsatzSpec,
    noise: &NoiseModel,
    cfg: &OptimizerConfig,
    exact: &SpectrumResult,
    base_seed: u64,
    n: usize,
) -> noisyvqe::Result<Vec<VqeResult>> {
    (0..n as u64)
        .into_par_iter()
        .map(|k| run_vqe_with(h, spec, noise, cfg, Some(base_seed.wrapping_add(k)), exact))
        .collect()
}

pub fn vqe(args: &VqeArgs) -> Result<()> {
    let (file, h) = load_hamiltonian(&args.hamiltonian)?;
    let noise = noise_from(&args.noise)?;
    let cfg = optimizer_config(&args.optimizer)?;
    let exact = spectrum(&h)?;
    let spec = AnsatzSpec::for_family(args.ansatz)?;
    let ctx = RunContext {
        bond_length: file.bond_length_angstrom,
        p1: noise.p1,
        ansatz: args.ansatz.to_string(),
        optimizer: cfg.kind.to_string(),
        seed: Some(args.seed),
    };

    let bare = run_vqe_with(&h, &spec, &noise, &cfg, None, &exact)?;
    let mut records = vec![RunRecord::from_result(&ctx, "vqe", &bare)];
    if args.rc > 0 {
        let runs = rc_runs(&h, &spec, &noise, &cfg, &exact, args.seed, args.rc)?;
        for r in &runs {
            let seeded = RunContext { seed: r.rc_seed, ..ctx.clone() };
            records.push(RunRecord::from_result(&seeded, "rc", r));
        }
        records.push(RunRecord::mean(&ctx, "rc-mean", &runs));
    }
    emit(args.out.as_deref(), &records)
}

fn adapt_records(ctx: &RunContext, r: &AdaptResult, n_qubits: usize, n_electrons: usize) -> Result<Vec<RunRecord>> {
    let reference = hartree_fock_occupation(n_electrons, n_qubits);
    let mut records = Vec::with_capacity(r.iterations.len() + 1);
    let mut generators = Vec::new();
    for (k, it) in r.iterations.iter().enumerate() {
        generators.push(r.pool[it.selected_index].clone());
        let counts = AnsatzSpec::adapt(n_qubits, reference.clone(), generators.clone())
            .build()?
            .gate_counts();
        records.push(RunRecord {
            iteration: Some(k + 1),
            selected_generator: it.selected.clone(),
            gradient_norm: Some(it.gradient_norm),
            energy_ha: Some(it.energy),
            exact_e0_ha: Some(r.final_result.exact_e0),
            energy_error_ha: Some(it.energy - r.final_result.exact_e0),
            fidelity: Some(it.fidelity),
            n_params: Some(it.parameters.len()),
            n_1q: Some(counts.single_qubit as f64),
            n_cnot: Some(counts.cnot as f64),
            evaluations: Some(it.evaluations),
            converged: Some(it.converged),
            parameters: join_parameters(&it.parameters),
            ..RunRecord::blank(ctx, "adapt-step")
        });
    }
    records.push(adapt_summary(ctx, r));
    Ok(records)
}

fn adapt_summary(ctx: &RunContext, r: &AdaptResult) -> RunRecord {
    RunRecord {
        iteration: Some(r.iterations.len()),
        gradient_norm: Some(r.final_gradient_norm),
        ..RunRecord::from_result(ctx, "adapt", &r.final_result)
    }
}

pub fn adapt(args: &AdaptArgs) -> Result<()> {
    let (file, h) = load_hamiltonian(&args.hamiltonian)?;
    let noise = noise_from(&args.noise)?;
    let cfg = optimizer_config(&args.optimizer)?;
    let adapt_cfg = adapt_config(&args.adapt)?;
    if adapt_cfg.n_electrons > h.n_qubits() {
        return Err(usage(format!(
            "{} electrons do not fit {} spin orbitals",
            adapt_cfg.n_electrons,
            h.n_qubits()
        )));
    }
    let ctx = RunContext {
        bond_length: file.bond_length_angstrom,
        p1: noise.p1,
        ansatz: AnsatzFamily::Adapt.to_string(),
        optimizer: cfg.kind.to_string(),
        seed: Some(args.seed),
    };
    let r = run_adapt(&h, &noise, &cfg, &adapt_cfg)?;
    let records = adapt_records(&ctx, &r, h.n_qubits(), adapt_cfg.n_electrons)?;
    emit(args.out.as_deref(), &records)
}

struct LoadedHamiltonian {
    file: HamiltonianFile,
    h: PauliSum,
    exact: SpectrumResult,
}

#[allow(clippy::too_many_arguments)]
fn sweep_cell(
    ham: &LoadedHamiltonian,
    p1: f64,
    noisy_diagonal: bool,
    cfg: &OptimizerConfig,
    family: AnsatzFamily,
    seed: u64,
    rc: usize,
    adapt_cfg: &AdaptConfig,
) -> RunRecord {
    let ctx = RunContext {
        bond_length: ham.file.bond_length_angstrom,
        p1,
        ansatz: family.to_string(),
        optimizer: cfg.kind.to_string(),
        seed: Some(seed),
    };
    let kind = match family {
        AnsatzFamily::Adapt => "adapt",
        _ if rc > 0 => "rc-mean",
        _ => "vqe",
    };
    let run = || -> Result<RunRecord> {
        let noise = noise_model(p1, noisy_diagonal)?;
        Ok(match family {
            AnsatzFamily::Adapt => adapt_summary(&ctx, &run_adapt(&ham.h, &noise, cfg, adapt_cfg)?),
            _ => {
                let spec = AnsatzSpec::for_family(family)?;
                if rc > 0 {
                    let runs = rc_runs(&ham.h, &spec, &noise, cfg, &ham.exact, seed, rc)?;
                    RunRecord::mean(&ctx, kind, &runs)
                } else {
                    let r = run_vqe_with(&ham.h, &spec, &noise, cfg, None, &ham.exact)?;
                    RunRecord::from_result(&ctx, kind, &r)
                }
            }
        })
    };
    run().unwrap_or_else(|e| RunRecord::failure(&ctx, kind, &e.to_string()))
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let manifest = SweepManifest::load(&args.manifest)
        .map_err(|e| usage(format!("{}: {e}", args.manifest.display())))?;
    if args.plot.is_some() && args.out.is_none() {
        return Err(usage("--plot needs --out"));
    }
    if args.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let adapt_cfg = adapt_config(&args.adapt)?;
    let hamiltonians = manifest
        .hamiltonians
        .iter()
        .map(|entry| {
            let file = entry.load()?;
            let h = file.to_pauli_sum()?;
            let exact = ground_state(&h)?;
            Ok(LoadedHamiltonian { file, h, exact })
        })
        .collect::<noisyvqe::Result<Vec<_>>>()
        .map_err(usage)?;
    let configs: Vec<OptimizerConfig> = manifest
        .optimizers
        .iter()
        .map(|&k| OptimizerConfig::for_kind(k))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let cells = manifest.cells();
    let records: Vec<RunRecord> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| {
                sweep_cell(
                    &hamiltonians[c.hamiltonian],
                    manifest.p1[c.p1],
                    args.noisy_diagonal,
                    &configs[c.optimizer],
                    manifest.ansatze[c.ansatz],
                    manifest.seeds[c.seed],
                    manifest.rc,
                    &adapt_cfg,
                )
            })
            .collect()
    });
    emit(args.out.as_deref(), &records)?;
    if let (Some(script), Some(csv)) = (&args.plot, &args.out) {
        std::fs::write(script, gnuplot_script(csv))?;
    }
    Ok(())
}

fn gnuplot_script(csv: &Path) -> String {
    let csv = csv.display();
    format!(
        "# gnuplot script for {csv}\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set grid\n\
         set xlabel 'p1'\n\
         set multiplot layout 2,1\n\
         set ylabel 'energy error (Ha)'\n\
         plot '{csv}' using 'p1':'energy_error_ha' with points pt 7 notitle\n\
         set ylabel 'fidelity'\n\
         plot '{csv}' using 'p1':'fidelity' with points pt 7 notitle\n\
         unset multiplot\n"
    )
}

pub fn exact(args: &ExactArgs) -> Result<()> {
    let (file, h) = load_hamiltonian(&args.hamiltonian)?;
    let s = spectrum(&h)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let bond = file
        .bond_length_angstrom
        .map_or_else(|| "-".to_string(), |r| r.to_string());
    writeln!(out, "# {} r={bond} basis={} qubits={}", file.molecule, file.basis, file.n_qubits)?;
    writeln!(out, "ground_energy_ha {}", s.ground_energy())?;
    writeln!(out, "ground_degeneracy {}", s.ground_space.len())?;
    writeln!(out, "eigenvalues_ha")?;
    for (k, e) in s.eigenvalues.iter().enumerate() {
        writeln!(out, "{k} {e}")?;
    }
    if args.state {
        writeln!(out, "ground_state")?;
        for (k, a) in s.ground_state.iter().enumerate() {
            writeln!(out, "{k} {} {}", a.re, a.im)?;
        }
    }
    Ok(())
}

pub fn compile(args: &CompileArgs) -> Result<()> {
    let spec = match args.ansatz {
        AnsatzFamily::Adapt => {
            if args.electrons > args.qubits {
                return Err(usage("more electrons than qubits"));
            }
            let pool = build_pool(args.electrons, args.qubits - args.electrons).map_err(usage)?;
            let generators = args
                .generators
                .iter()
                .map(|id| {
                    pool.iter().find(|g| &g.id == id).cloned().ok_or_else(|| {
                        let known: Vec<&str> = pool.iter().map(|g| g.id.as_str()).collect();
                        usage(format!("unknown generator '{id}'; pool: {}", known.join(" ")))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            AnsatzSpec::adapt(args.qubits, hartree_fock_occupation(args.electrons, args.qubits), generators)
        }
        family => {
            if !args.generators.is_empty() {
                return Err(usage("--generator only applies to --ansatz adapt"));
            }
            AnsatzSpec::for_family(family)?
        }
    };
    let mut circuit = spec.build()?;
    if let Some(params) = &args.params {
        circuit = circuit.bind(params).map_err(usage)?;
    }
    if let Some(seed) = args.rc_seed {
        if args.params.is_none() {
            return Err(usage("--rc-seed needs --params"));
        }
        circuit = randomized_compile(&circuit, seed)?;
    }
    let counts = circuit.gate_counts();
    let summary = format!("n_1q={} n_cnot={}", counts.single_qubit, counts.cnot);
    match &args.out {
        Some(path) => {
            std::fs::write(path, circuit.to_text())?;
            println!("{summary}");
        }
        None => {
            print!("{}", circuit.to_text());
            eprintln!("{summary}");
        }
    }
    Ok(())
}
