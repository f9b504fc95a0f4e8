//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use noisyvqe::circuit::{
    exp_pauli_circuit, push_generator, randomized_compile, singlet_double, singlet_single, Angle,
    AnsatzSpec, Circuit, Gate, Mat2,
};
use noisyvqe::exact::{energy_scan, ground_state, linspace, restricted_minimum, scan_minimum, SpectrumResult};
use noisyvqe::io::bundled_nah;
use noisyvqe::linalg::{expm_hermitian, CMatrix};
use noisyvqe::optim::OptimizerConfig;
use noisyvqe::pauli::{jordan_wigner, FermionOp, Ladder, Pauli, PauliString, PauliSum};
use noisyvqe::sim::{apply_gate, circuit_state, circuit_unitary, run_circuit, unitary_distance_up_to_phase, DensityMatrix, NoiseModel};
use noisyvqe::vqe::{build_pool, run_adapt, run_vqe, run_vqe_with, AdaptConfig, AdaptResult};
use noisyvqe::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const CHEMICAL_ACCURACY: f64 = 1.6e-3;
const NOISE_LEVELS: [f64; 4] = [0.0, 1e-4, 1e-3, 1e-2];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn core<T>(r: noisyvqe::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Expectation of every bundled Hamiltonian word in the UCCD state, as
/// `(word, constant, sin, cos)` so that
/// `<P(theta)> = constant + sin * sin(theta) + cos * cos(theta)`.
const UCCD_COLUMN: [(&str, f64, f64, f64); 27] = [
    ("IIII", 1.0, 0.0, 0.0),
    ("XXII", 0.0, 0.0, 0.0),
    ("XXXX", 0.0, -1.0, 0.0),
    ("XXYY", 0.0, -1.0, 0.0),
    ("XXZI", 0.0, 0.0, 0.0),
    ("XXIZ", 0.0, 0.0, 0.0),
    ("IIXX", 0.0, 0.0, 0.0),
    ("YYII", 0.0, 0.0, 0.0),
    ("YYXX", 0.0, -1.0, 0.0),
    ("YYYY", 0.0, -1.0, 0.0),
    ("YYZI", 0.0, 0.0, 0.0),
    ("YYIZ", 0.0, 0.0, 0.0),
    ("IIYY", 0.0, 0.0, 0.0),
    ("ZIII", 0.0, 0.0, -1.0),
    ("ZIXX", 0.0, 0.0, 0.0),
    ("ZIYY", 0.0, 0.0, 0.0),
    ("ZZII", -1.0, 0.0, 0.0),
    ("ZIZI", 1.0, 0.0, 0.0),
    ("ZIIZ", -1.0, 0.0, 0.0),
    ("IZII", 0.0, 0.0, 1.0),
    ("IZXX", 0.0, 0.0, 0.0),
    ("IZYY", 0.0, 0.0, 0.0),
    ("IZZI", -1.0, 0.0, 0.0),
    ("IZIZ", 1.0, 0.0, 0.0),
    ("IIZI", 0.0, 0.0, -1.0),
    ("IIZZ", -1.0, 0.0, 0.0),
    ("IIIZ", 0.0, 0.0, 1.0),
];

fn noise(p: f64) -> NoiseModel {
    NoiseModel::depolarizing(p).expect("valid p1")
}

fn jw_anticommutators() -> Check {
    let n = 4;
    let ladder = |l: Ladder| core(jordan_wigner(&FermionOp::term(c(1.0, 0.0), vec![l]), n).and_then(|op| op.to_matrix()));
    let id = CMatrix::identity(1 << n);
    let mut worst = 0.0f64;
    for p in 0..n {
        let ap = ladder(Ladder::annihilate(p))?;
        for q in 0..n {
            let adq = ladder(Ladder::create(q))?;
            let anti = &(&ap * &adq) + &(&adq * &ap);
            let want = if p == q { id.clone() } else { CMatrix::zeros(1 << n) };
            worst = worst.max(anti.max_abs_diff(&want));
        }
    }
    ensure!(worst < 1e-12, "max deviation {worst:e}");
    Ok(format!("max deviation {worst:.1e}"))
}

fn exp_generator(a: &PauliSum, theta: f64) -> Result<CMatrix, String> {
    let h = core(a.to_matrix())?.scale(c(0.0, 1.0));
    core(expm_hermitian(&h, theta))
}

fn generator_circuit(gens: &[&PauliSum]) -> Result<Circuit, String> {
    let mut circ = Circuit::new(4);
    for (k, g) in gens.iter().enumerate() {
        let slot = circ.add_slot(format!("t{k}"));
        core(push_generator(&mut circ, g, slot))?;
    }
    Ok(circ)
}

fn compiler_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let angles: Vec<f64> = (0..20).map(|_| rng.random_range(-PI..PI)).collect();
    let mut worst = 0.0f64;
    let mut check = |circ: &Circuit, params: &[f64], want: &CMatrix| -> Result<(), String> {
        let u = core(circuit_unitary(&core(circ.bind(params))?))?;
        worst = worst.max(unitary_distance_up_to_phase(&u, want));
        Ok(())
    };

    let yxxx: PauliString = "YXXX".parse().map_err(|e: noisyvqe::Error| e.to_string())?;
    let g = core(PauliSum::from(yxxx).to_matrix())?;
    let uccd = core(exp_pauli_circuit(&yxxx, 1.0))?;
    for &t in &angles {
        check(&uccd, &[t], &core(expm_hermitian(&g, t / 2.0))?)?;
    }

    let s = core(singlet_single(0, 1, 2))?;
    let d = core(singlet_double(0, 0, 1, 1, 2))?;
    let uccsd = generator_circuit(&[&d, &s])?;
    for (k, &t0) in angles.iter().enumerate() {
        let t1 = angles[(k + 7) % angles.len()];
        check(&uccsd, &[t1, t0], &(&exp_generator(&s, t0)? * &exp_generator(&d, t1)?))?;
    }

    let pool = core(build_pool(2, 2))?;
    for gen in &pool {
        let circ = generator_circuit(&[&gen.operator])?;
        for &t in &angles {
            check(&circ, &[t], &exp_generator(&gen.operator, t)?)?;
        }
    }
    ensure!(worst < 1e-10, "max unitary distance {worst:e}");
    Ok(format!("UCCD, singlet UCCSD and {} pool generators, max distance {worst:.1e}", pool.len()))
}

fn uccd_expectation_column() -> Check {
    let circ = core(AnsatzSpec::uccd().build())?;
    let mut worst = 0.0f64;
    for k in 0..8 {
        let theta = -PI + 0.1 + 0.8 * k as f64;
        let rho = core(run_circuit(&circ, &[theta], &NoiseModel::noiseless(), None))?;
        for (word, k0, s, co) in UCCD_COLUMN {
            let p = core(PauliSum::from_real_terms(4, [(1.0, word)]))?;
            let got = core(rho.expectation(&p))?;
            let want = k0 + s * theta.sin() + co * theta.cos();
            worst = worst.max((got - want).abs());
        }
    }
    ensure!(worst < 1e-8, "max deviation {worst:e}");
    Ok(format!("27 rows x 8 angles, max deviation {worst:.1e}"))
}

fn noiseless_recovery(h: &PauliSum) -> Check {
    let uccd = core(run_vqe(h, &AnsatzSpec::uccd(), &noise(0.0), &OptimizerConfig::gradient_free()))?;
    let block = core(restricted_minimum(h, &[5, 10]))?;
    ensure!(uccd.fidelity >= 0.99, "UCCD fidelity {}", uccd.fidelity);
    ensure!((uccd.energy - block).abs() < 1e-6, "UCCD {} vs subspace {block}", uccd.energy);
    let adapt = core(run_adapt(h, &noise(0.0), &OptimizerConfig::gradient_free(), &AdaptConfig::default()))?;
    let f = &adapt.final_result;
    ensure!(f.energy_error().abs() < CHEMICAL_ACCURACY, "ADAPT error {}", f.energy_error());
    ensure!(f.fidelity >= 0.99, "ADAPT fidelity {}", f.fidelity);
    Ok(format!(
        "UCCD |dE| to subspace {:.1e}, F {:.5}; ADAPT error {:.1e}, F {:.5}",
        (uccd.energy - block).abs(),
        uccd.fidelity,
        f.energy_error(),
        f.fidelity
    ))
}

fn noise_monotonicity(h: &PauliSum) -> Check {
    let exact = core(ground_state(h))?;
    let cfg = OptimizerConfig::gradient_free();
    let mut errors = Vec::new();
    for spec in [AnsatzSpec::uccd(), AnsatzSpec::singlet_uccsd()] {
        let runs = NOISE_LEVELS
            .iter()
            .map(|&p| core(run_vqe_with(h, &spec, &noise(p), &cfg, None, &exact)))
            .collect::<Result<Vec<_>, _>>()?;
        for w in runs.windows(2) {
            ensure!(w[1].energy > w[0].energy, "{}: energy not increasing at p1 = {}", spec.family, w[1].noise_p1);
            ensure!(w[1].fidelity < w[0].fidelity, "{}: fidelity not decreasing at p1 = {}", spec.family, w[1].noise_p1);
        }
        errors.push(runs.iter().map(|r| r.energy_error()).collect::<Vec<_>>());
    }
    for k in 1..NOISE_LEVELS.len() {
        ensure!(
            errors[1][k] >= errors[0][k],
            "p1 = {}: UCCSD error {} below UCCD error {}",
            NOISE_LEVELS[k],
            errors[1][k],
            errors[0][k]
        );
    }
    Ok(format!(
        "errors at p1 = 1e-2: UCCD {:.4} Ha, UCCSD {:.4} Ha",
        errors[0][3], errors[1][3]
    ))
}

fn rc_equivalence(h: &PauliSum, exact: &SpectrumResult) -> Check {
    let spec = AnsatzSpec::uccd();
    let bound = core(core(spec.build())?.bind(&[0.1]))?;
    let reference = core(circuit_state(&bound, 0))?;
    let base = bound.gate_counts();
    let mut inflation = 0.0;
    for seed in 0..10 {
        let rc = core(randomized_compile(&bound, seed))?;
        let counts = rc.gate_counts();
        ensure!(counts.cnot == base.cnot, "seed {seed}: CNOT count {} vs {}", counts.cnot, base.cnot);
        let rho = core(run_circuit(&rc, &[], &NoiseModel::noiseless(), None))?;
        let f = core(rho.fidelity(&reference))?;
        ensure!(f >= 1.0 - 1e-10, "seed {seed}: noiseless fidelity {f}");
        inflation += counts.single_qubit as f64 / base.single_qubit as f64 - 1.0;
    }
    inflation /= 10.0;
    ensure!((0.3..=0.7).contains(&inflation), "single-qubit inflation {:.1}%", 100.0 * inflation);

    let cfg = OptimizerConfig::gradient_free();
    let bare = core(run_vqe_with(h, &spec, &noise(0.01), &cfg, None, exact))?;
    let mut mean = 0.0;
    for seed in 0..10 {
        mean += core(run_vqe_with(h, &spec, &noise(0.01), &cfg, Some(seed), exact))?.energy / 10.0;
    }
    ensure!(mean >= bare.energy, "RC mean {mean} below bare {}", bare.energy);
    Ok(format!(
        "inflation {:.1}%, p1 = 0.01 RC mean {mean:.5} >= bare {:.5}",
        100.0 * inflation,
        bare.energy
    ))
}

fn random_density(rng: &mut ChaCha8Rng, n: usize) -> Result<DensityMatrix, String> {
    let dim = 1 << n;
    let mut m = CMatrix::zeros(dim);
    for _ in 0..rng.random_range(1..=dim) {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let o = CMatrix::outer(&v);
        for (a, b) in m.as_mut_slice().iter_mut().zip(o.as_slice()) {
            *a += *b;
        }
    }
    let t = m.trace();
    core(DensityMatrix::from_matrix(m.scale(t.inv())))
}

fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Gate {
    let q = rng.random_range(0..n);
    let a = Angle::Value(rng.random_range(-4.0..4.0));
    let pick = if n == 1 { rng.random_range(0..8) } else { rng.random_range(0..9) };
    match pick {
        0 => Gate::H(q),
        1 => Gate::X(q),
        2 => Gate::Y(q),
        3 => Gate::Z(q),
        4 => Gate::Rx(q, a),
        5 => Gate::Ry(q, a),
        6 => Gate::Rz(q, a),
        7 => Gate::U1q(q, Mat2::rotation(Pauli::X, 0.7).mul(&Mat2::rotation(Pauli::Z, -0.4))),
        _ => Gate::cnot(q, (q + rng.random_range(1..n)) % n),
    }
}

fn channel_cptp() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut trace, mut herm, mut min_eig) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..1000 {
        let n = rng.random_range(1..=3);
        let mut rho = random_density(&mut rng, n)?;
        let gate = random_gate(&mut rng, n);
        let p1 = rng.random_range(0.0..=0.1);
        let model = core(NoiseModel::new(p1, 10.0 * p1, rng.random_bool(0.5)))?;
        core(apply_gate(&mut rho, &gate, &model))?;
        trace = trace.max((rho.trace() - c(1.0, 0.0)).norm());
        herm = herm.max(rho.matrix().hermiticity_error());
        min_eig = min_eig.min(core(rho.min_eigenvalue())?);
    }
    ensure!(trace < 1e-12 && herm < 1e-12 && min_eig >= -1e-10, "trace {trace:e}, hermiticity {herm:e}, min eigenvalue {min_eig:e}");
    Ok(format!("trace {trace:.1e}, hermiticity {herm:.1e}, min eigenvalue {min_eig:.1e}"))
}

fn optimizer_parity(h: &PauliSum) -> Check {
    let grid: Vec<Vec<f64>> = linspace(-PI, PI, 629).into_iter().map(|t| vec![t]).collect();
    let table = core(energy_scan(&AnsatzSpec::uccd(), h, &grid, &NoiseModel::noiseless()))?;
    let scan = scan_minimum(&table).ok_or("empty scan")?.energy;
    let mut detail = Vec::new();
    for spec in [AnsatzSpec::uccd(), AnsatzSpec::singlet_uccsd()] {
        let a = core(run_vqe(h, &spec, &noise(0.0), &OptimizerConfig::gradient_free()))?;
        let b = core(run_vqe(h, &spec, &noise(0.0), &OptimizerConfig::quasi_newton()))?;
        ensure!((a.energy - b.energy).abs() < 1e-5, "{}: cobyla {} vs lbfgs {}", spec.family, a.energy, b.energy);
        if spec.n_params() == 1 {
            for r in [&a, &b] {
                ensure!((r.energy - scan).abs() < 1e-6, "{}: {} vs scan {scan}", r.optimizer, r.energy);
            }
        }
        detail.push(format!("{} gap {:.1e}", spec.family, (a.energy - b.energy).abs()));
    }
    Ok(detail.join(", "))
}

fn audit_selection(r: &AdaptResult) -> Result<(), String> {
    for (k, it) in r.iterations.iter().enumerate() {
        let best = it.gradients.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        let first = it.gradients.iter().position(|g| g.abs() == best);
        ensure!(first == Some(it.selected_index), "iteration {}: selected {} is not the argmax", k + 1, it.selected);
        ensure!(r.pool[it.selected_index].id == it.selected, "iteration {}: id mismatch", k + 1);
    }
    Ok(())
}

fn adapt_structure(h: &PauliSum) -> Check {
    let cfg = OptimizerConfig::gradient_free();
    let clean = core(run_adapt(h, &noise(0.0), &cfg, &AdaptConfig::default()))?;
    let noisy = core(run_adapt(h, &noise(0.01), &cfg, &AdaptConfig::default()))?;
    let (n0, n1) = (clean.final_result.parameters.len(), noisy.final_result.parameters.len());
    ensure!(n1 >= n0, "p1 = 0.01 used {n1} parameters, p1 = 0 used {n0}");
    for w in clean.iterations.windows(2) {
        ensure!(w[1].energy <= w[0].energy, "noiseless energy rose from {} to {}", w[0].energy, w[1].energy);
    }
    audit_selection(&clean)?;
    audit_selection(&noisy)?;
    Ok(format!("parameters: {n0} at p1 = 0, {n1} at p1 = 0.01"))
}

fn run_cli(args: &[&str], out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_noisyvqe"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("NOISYVQE_JOBS")
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "{args:?} exited with {status}");
    Ok(())
}

fn variational_bound_audit(e0: f64) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let manifest = dir.path().join("sweep.txt");
    std::fs::write(
        &manifest,
        "hamiltonian: bundled\np1: 0 1e-4\noptimizer: cobyla lbfgs\nansatz: uccd uccsd-singlet adapt\nseeds: 0 1\nrc: 2\n",
    )
    .map_err(|e| e.to_string())?;
    let manifest = manifest.to_string_lossy().into_owned();
    let commands: Vec<Vec<&str>> = vec![
        vec!["vqe", "--bundled", "--ansatz", "uccd", "--optimizer", "cobyla"],
        vec!["vqe", "--bundled", "--ansatz", "uccd", "--optimizer", "lbfgs", "--rc", "3"],
        vec!["vqe", "--bundled", "--ansatz", "uccsd-singlet", "--optimizer", "cobyla"],
        vec!["vqe", "--bundled", "--ansatz", "uccsd-singlet", "--optimizer", "lbfgs"],
        vec!["vqe", "--bundled", "--ansatz", "uccd", "--initial-point", "2.5"],
        vec!["adapt", "--bundled", "--optimizer", "cobyla"],
        vec!["adapt", "--bundled", "--optimizer", "lbfgs", "--norm", "max"],
        vec!["adapt", "--bundled", "--grad-threshold", "1e-6"],
        vec!["sweep", &manifest],
    ];
    let mut audited = 0;
    for (k, args) in commands.iter().enumerate() {
        let out = dir.path().join(format!("run{k}.csv"));
        run_cli(args, &out)?;
        let mut rd = csv::Reader::from_path(&out).map_err(|e| e.to_string())?;
        let header = rd.headers().map_err(|e| e.to_string())?.clone();
        let col = |name: &str| header.iter().position(|h| h == name).ok_or(format!("no column {name}"));
        let (p1, energy, status) = (col("p1")?, col("energy_ha")?, col("status")?);
        for row in rd.records() {
            let row = row.map_err(|e| e.to_string())?;
            ensure!(!row[status].starts_with("error"), "{args:?}: failed row {}", &row[status]);
            if row[p1].parse::<f64>() != Ok(0.0) || row[energy].is_empty() {
                continue;
            }
            let e: f64 = row[energy].parse().map_err(|_| format!("bad energy '{}'", &row[energy]))?;
            ensure!(e >= e0 - 1e-9, "{args:?}: energy {e} below E0 {e0}");
            audited += 1;
        }
    }
    ensure!(audited > 0, "no noiseless rows emitted");
    Ok(format!("{audited} noiseless energies from {} commands >= E0 - 1e-9", commands.len()))
}

fn run(name: &str, budget: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let elapsed = start.elapsed();
    let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
    match outcome {
        Ok(detail) if elapsed <= budget => {
            println!("PASS  {name}: {detail} [{timing}]");
            true
        }
        Ok(detail) => {
            println!("FAIL  {name}: over time budget; {detail} [{timing}]");
            false
        }
        Err(reason) => {
            println!("FAIL  {name}: {reason} [{timing}]");
            false
        }
    }
}

fn main() {
    let h = bundled_nah();
    let exact = ground_state(&h).expect("bundled spectrum");
    let secs = Duration::from_secs;
    let results = [
        run("1 JW anticommutators", secs(1), jw_anticommutators),
        run("2 compiler soundness", secs(5), compiler_soundness),
        run("3 UCCD expectation column", secs(2), uccd_expectation_column),
        run("4 noiseless recovery", secs(30), || noiseless_recovery(&h)),
        run("5 noise monotonicity", secs(120), || noise_monotonicity(&h)),
        run("6 RC equivalence and inflation", secs(30), || rc_equivalence(&h, &exact)),
        run("7 channel CPTP", secs(10), channel_cptp),
        run("8 optimizer parity", secs(30), || optimizer_parity(&h)),
        run("9 ADAPT structure", secs(60), || adapt_structure(&h)),
        run("10 variational bound audit", secs(120), || variational_bound_audit(exact.ground_energy())),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
