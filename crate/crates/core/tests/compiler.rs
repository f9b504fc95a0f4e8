mod common;

use common::{c, rng};
use noisyvqe::circuit::*;
use noisyvqe::exact::ansatz_state;
use noisyvqe::linalg::{expm_hermitian, CMatrix};
use noisyvqe::pauli::{PauliString, PauliSum};
use noisyvqe::sim::*;
use noisyvqe::vqe::build_pool;
use noisyvqe::Error;
use rand::Rng;

fn ps(s: &str) -> PauliString {
    s.parse().unwrap()
}

/// `exp(theta A)` for anti-Hermitian `A`.
fn exp_generator(a: &PauliSum, theta: f64) -> CMatrix {
    let h = a.to_matrix().unwrap().scale(c(0.0, 1.0));
    expm_hermitian(&h, theta).unwrap()
}

fn generator_circuit(gens: &[&PauliSum], n: usize) -> Circuit {
    let mut circ = Circuit::new(n);
    for (k, g) in gens.iter().enumerate() {
        let slot = circ.add_slot(format!("t{k}"));
        push_generator(&mut circ, g, slot).unwrap();
    }
    circ
}

fn state_of(c: &Circuit, params: &[f64]) -> Vec<noisyvqe::Complex64> {
    circuit_state(&c.bind(params).unwrap(), 0).unwrap()
}

#[test]
fn z_rotation_is_a_single_rz() {
    let circ = exp_pauli_circuit(&ps("Z"), 2.0).unwrap();
    assert_eq!(circ.gates().len(), 1);
    let u = circuit_unitary(&circ.bind(&[0.4]).unwrap()).unwrap();
    let z = PauliSum::from(ps("Z")).to_matrix().unwrap();
    assert!(unitary_distance_up_to_phase(&u, &expm_hermitian(&z, 0.4).unwrap()) < 1e-14);
}

#[test]
fn yxxx_exponential_matches_dense() {
    let p = ps("YXXX");
    let circ = exp_pauli_circuit(&p, 1.0).unwrap();
    let g = PauliSum::from(p).to_matrix().unwrap();
    for theta in [0.1, 0.7, -1.3] {
        let u = circuit_unitary(&circ.bind(&[theta]).unwrap()).unwrap();
        let want = expm_hermitian(&g, theta / 2.0).unwrap();
        assert!(unitary_distance_up_to_phase(&u, &want) < 1e-10, "theta {theta}");
    }
}

#[test]
fn zero_angle_is_identity() {
    let circ = exp_pauli_circuit(&ps("XYZY"), 1.0).unwrap();
    let u = circuit_unitary(&circ.bind(&[0.0]).unwrap()).unwrap();
    assert!(unitary_distance_up_to_phase(&u, &CMatrix::identity(16)) < 1e-12);
}

#[test]
fn negative_phase_strings_flip_the_angle() {
    let p = ps("XZY").with_phase(noisyvqe::pauli::Phase::MINUS_ONE);
    let circ = exp_pauli_circuit(&p, 1.0).unwrap();
    let g = PauliSum::from(ps("XZY")).to_matrix().unwrap();
    let u = circuit_unitary(&circ.bind(&[0.9]).unwrap()).unwrap();
    assert!(unitary_distance_up_to_phase(&u, &expm_hermitian(&g, -0.45).unwrap()) < 1e-12);
}

#[test]
fn reference_states() {
    let cases = [(vec![0, 2], 5), (vec![], 0), (vec![0, 1, 2, 3], 15)];
    for (occ, index) in cases {
        let circ = build_reference(&occ.iter().copied().collect(), 4).unwrap();
        let rho = run_circuit(&circ, &[], &NoiseModel::noiseless(), None).unwrap();
        assert_eq!(rho, DensityMatrix::basis_state(4, index).unwrap());
    }
}

#[test]
fn uccd_at_zero_is_reference() {
    let circ = AnsatzSpec::uccd().build().unwrap();
    let rho = run_circuit(&circ, &[0.0], &NoiseModel::noiseless(), None).unwrap();
    assert!((rho.fidelity(&DensityMatrix::basis_state(4, 5).unwrap().matrix().mul_vec(&basis(5))).unwrap() - 1.0).abs() < 1e-12);
}

fn basis(k: usize) -> Vec<noisyvqe::Complex64> {
    let mut v = vec![c(0.0, 0.0); 16];
    v[k] = c(1.0, 0.0);
    v
}

#[test]
fn uccd_xx_expectation_vanishes() {
    let circ = AnsatzSpec::uccd().build().unwrap();
    let xx = PauliSum::from_real_terms(4, [(1.0, "XXII")]).unwrap();
    for theta in [-2.0, -0.4, 0.0, 0.3, 1.9] {
        let rho = run_circuit(&circ, &[theta], &NoiseModel::noiseless(), None).unwrap();
        assert!(rho.expectation(&xx).unwrap().abs() < 1e-12);
    }
}

#[test]
fn uccd_state_at_0_2() {
    let spec = AnsatzSpec::uccd();
    let psi = state_of(&spec.build().unwrap(), &[0.2]);
    assert!((psi[5] - c(0.1f64.cos(), 0.0)).norm() < 1e-10 || (psi[5] + c(0.1f64.cos(), 0.0)).norm() < 1e-10);
    let oracle = ansatz_state(&spec, &[0.2]).unwrap();
    assert!((state_overlap(&psi, &oracle) - 1.0).abs() < 1e-10);
    assert!((psi[10].norm() - 0.1f64.sin()).abs() < 1e-10);
}

#[test]
fn uccsd_at_origin_is_reference() {
    let circ = AnsatzSpec::singlet_uccsd().build().unwrap();
    let psi = state_of(&circ, &[0.0, 0.0]);
    assert!((psi[5].norm() - 1.0).abs() < 1e-12);
}

#[test]
fn uccsd_doubles_limit_matches_uccd() {
    let uccsd = AnsatzSpec::singlet_uccsd().build().unwrap();
    let uccd = AnsatzSpec::uccd().build().unwrap();
    // exp(t D)|5> = cos t |5> + ... so it traces UCCD at twice the angle.
    for t in [-0.8, 0.15, 1.1] {
        let a = state_of(&uccsd, &[0.0, t]);
        let candidates = [2.0 * t, -2.0 * t];
        let best = candidates
            .iter()
            .map(|&u| state_overlap(&a, &state_of(&uccd, &[u])))
            .fold(0.0, f64::max);
        assert!((best - 1.0).abs() < 1e-10, "t = {t}: {best}");
    }
}

#[test]
fn uccsd_preserves_particle_number() {
    let number = PauliSum::from_real_terms(
        4,
        [(2.0, "IIII"), (-0.5, "ZIII"), (-0.5, "IZII"), (-0.5, "IIZI"), (-0.5, "IIIZ")],
    )
    .unwrap();
    let circ = AnsatzSpec::singlet_uccsd().build().unwrap();
    let mut r = rng(11);
    for _ in 0..10 {
        let params = [r.random_range(-3.0..3.0), r.random_range(-3.0..3.0)];
        let rho = run_circuit(&circ, &params, &NoiseModel::noiseless(), None).unwrap();
        assert!((rho.expectation(&number).unwrap() - 2.0).abs() < 1e-10);
    }
}

#[test]
fn uccsd_register_shape_checked() {
    let mut spec = AnsatzSpec::singlet_uccsd();
    spec.n_qubits = 6;
    assert!(matches!(spec.build(), Err(Error::UnsupportedModel(_))));
}

#[test]
fn compiler_soundness_against_matrix_exponentials() {
    let mut r = rng(2024);
    let angles: Vec<f64> = (0..20).map(|_| r.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();

    // UCCD generator
    let yxxx = PauliSum::from(ps("YXXX")).to_matrix().unwrap();
    let circ = exp_pauli_circuit(&ps("YXXX"), 1.0).unwrap();
    for &t in &angles {
        let u = circuit_unitary(&circ.bind(&[t]).unwrap()).unwrap();
        assert!(unitary_distance_up_to_phase(&u, &expm_hermitian(&yxxx, t / 2.0).unwrap()) < 1e-10);
    }

    // singlet UCCSD: exp(t0 S) exp(t1 D)
    let s = singlet_single(0, 1, 2).unwrap();
    let d = singlet_double(0, 0, 1, 1, 2).unwrap();
    let circ = generator_circuit(&[&d, &s], 4);
    for pair in angles.chunks(2) {
        let (t0, t1) = (pair[0], pair[1]);
        let u = circuit_unitary(&circ.bind(&[t1, t0]).unwrap()).unwrap();
        let want = &exp_generator(&s, t0) * &exp_generator(&d, t1);
        assert!(unitary_distance_up_to_phase(&u, &want) < 1e-10);
    }

    // every pool generator
    for g in build_pool(2, 2).unwrap() {
        let circ = generator_circuit(&[&g.operator], 4);
        for &t in &angles {
            let u = circuit_unitary(&circ.bind(&[t]).unwrap()).unwrap();
            assert!(
                unitary_distance_up_to_phase(&u, &exp_generator(&g.operator, t)) < 1e-10,
                "{}",
                g.id
            );
        }
    }
}

#[test]
fn compiled_states_match_oracle_for_every_family() {
    let mut r = rng(5);
    let pool = build_pool(2, 2).unwrap();
    let adapt = AnsatzSpec::adapt(
        4,
        hartree_fock_occupation(2, 4),
        vec![pool[1].clone(), pool[0].clone(), pool[1].clone()],
    );
    for spec in [AnsatzSpec::uccd(), AnsatzSpec::singlet_uccsd(), adapt] {
        let circ = spec.build().unwrap();
        for _ in 0..5 {
            let params: Vec<f64> = (0..spec.n_params()).map(|_| r.random_range(-2.0..2.0)).collect();
            let got = state_of(&circ, &params);
            let want = ansatz_state(&spec, &params).unwrap();
            assert!((state_overlap(&got, &want) - 1.0).abs() < 1e-10, "{}", spec.family);
        }
    }
}

#[test]
fn gate_count_examples() {
    assert_eq!(Circuit::new(3).gate_counts(), GateCounts::default());
    let counts = AnsatzSpec::uccd().build().unwrap().gate_counts();
    assert_eq!(counts.cnot, 6);
    let mut circ = Circuit::new(2);
    circ.push(Gate::cnot(0, 1)).unwrap();
    circ.push(Gate::H(1)).unwrap();
    assert_eq!(circ.gate_counts(), GateCounts { single_qubit: 1, cnot: 1 });
}

#[test]
fn binding_leaves_no_symbols() {
    let circ = AnsatzSpec::singlet_uccsd().build().unwrap();
    let bound = circ.bind(&[0.3, -0.2]).unwrap();
    assert!(bound.is_bound());
    assert!(bound.slots().is_empty());
    assert!(bound.gates().iter().all(|g| !matches!(g.angle(), Some(Angle::Param { .. }))));
}

#[test]
fn rc_preserves_noiseless_output() {
    for spec in [AnsatzSpec::uccd(), AnsatzSpec::singlet_uccsd()] {
        let params: Vec<f64> = (0..spec.n_params()).map(|k| 0.37 - 0.5 * k as f64).collect();
        let bound = spec.build().unwrap().bind(&params).unwrap();
        let reference = circuit_state(&bound, 0).unwrap();
        for seed in 0..50 {
            let rc = randomized_compile(&bound, seed).unwrap();
            assert_eq!(rc.gate_counts().cnot, bound.gate_counts().cnot);
            let rho = run_circuit(&rc, &[], &NoiseModel::noiseless(), None).unwrap();
            assert!(rho.fidelity(&reference).unwrap() > 1.0 - 1e-10, "seed {seed}");
        }
    }
}

#[test]
fn rc_unitary_equivalence() {
    let bound = AnsatzSpec::uccd().build().unwrap().bind(&[1.1]).unwrap();
    let u = circuit_unitary(&bound).unwrap();
    for seed in 0..10 {
        let v = circuit_unitary(&randomized_compile(&bound, seed).unwrap()).unwrap();
        assert!(unitary_distance_up_to_phase(&u, &v) < 1e-12);
    }
}

#[test]
fn rc_inflation_in_band() {
    let bound = AnsatzSpec::uccd().build().unwrap().bind(&[0.1]).unwrap();
    let base = bound.gate_counts().single_qubit as f64;
    let mean = (0..10)
        .map(|s| randomized_compile(&bound, s).unwrap().gate_counts().single_qubit as f64)
        .sum::<f64>()
        / 10.0;
    let inflation = mean / base - 1.0;
    assert!((0.3..=0.7).contains(&inflation), "{inflation}");
}

#[test]
fn rc_without_cnots_is_identity_transform() {
    let mut circ = Circuit::new(3);
    circ.push(Gate::H(0)).unwrap();
    circ.push(Gate::Ry(2, Angle::Value(0.2))).unwrap();
    circ.push(Gate::Z(1)).unwrap();
    assert_eq!(randomized_compile(&circ, 99).unwrap(), circ);
}

#[test]
fn circuit_text_round_trip() {
    let circ = AnsatzSpec::singlet_uccsd().build().unwrap();
    assert_eq!(Circuit::from_text(&circ.to_text()).unwrap(), circ);
    let rc = randomized_compile(&circ.bind(&[0.1, 0.2]).unwrap(), 4).unwrap();
    let back = Circuit::from_text(&rc.to_text()).unwrap();
    assert_eq!(back.gate_counts(), rc.gate_counts());
    let (u, v) = (circuit_unitary(&rc).unwrap(), circuit_unitary(&back).unwrap());
    assert!(u.max_abs_diff(&v) < 1e-14);
}
