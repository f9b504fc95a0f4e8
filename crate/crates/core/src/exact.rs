//! Exact references: diagonalization, dense matrix exponentials and
//! brute-force parameter scans.

use num_complex::Complex64;

use crate::circuit::AnsatzSpec;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::pauli::PauliSum;
use crate::sim::{run_circuit, DensityMatrix, NoiseModel};

/// Eigenvalues closer than this to the ground energy span the ground space.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// Ascending, in Ha.
    pub eigenvalues: Vec<f64>,
    pub ground_state: Vec<Complex64>,
    /// Orthonormal basis of the (possibly degenerate) ground eigenspace.
    pub ground_space: Vec<Vec<Complex64>>,
}

impl SpectrumResult {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn is_degenerate(&self) -> bool {
        self.ground_space.len() > 1
    }

    /// Overlap of `rho` with the ground-space projector.
    pub fn fidelity(&self, rho: &DensityMatrix) -> Result<f64> {
        rho.subspace_fidelity(&self.ground_space)
    }
}

/// Full eigendecomposition of the dense matrix of `h`.
pub fn ground_state(h: &PauliSum) -> Result<SpectrumResult> {
    let m = h.to_matrix()?;
    spectrum_of(&m)
}

pub fn spectrum_of(m: &CMatrix) -> Result<SpectrumResult> {
    let eig = hermitian_eigen(m)?;
    let e0 = eig.values[0];
    let ground_space = eig
        .values
        .iter()
        .enumerate()
        .take_while(|(_, &e)| e - e0 <= DEGENERACY_TOLERANCE)
        .map(|(k, _)| eig.vector(k))
        .collect::<Vec<_>>();
    Ok(SpectrumResult {
        ground_state: ground_space[0].clone(),
        eigenvalues: eig.values,
        ground_space,
    })
}

fn basis_vector(dim: usize, index: usize) -> Result<Vec<Complex64>> {
    if index >= dim {
        return Err(Error::Dimension(format!(
            "basis index {index} outside dimension {dim}"
        )));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[index] = Complex64::new(1.0, 0.0);
    Ok(v)
}

/// `exp(-i (angle/2) G) |reference>` for a Hermitian generator `G`.
pub fn matrix_exp_state(generator: &PauliSum, angle: f64, reference: usize) -> Result<Vec<Complex64>> {
    let g = generator.to_matrix()?;
    let u = crate::linalg::expm_hermitian(&g, angle / 2.0)?;
    Ok(u.mul_vec(&basis_vector(g.dim(), reference)?))
}

/// `exp(theta A) psi` for an anti-Hermitian `A`.
pub fn apply_generator_exp(a: &PauliSum, theta: f64, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    // exp(theta A) = exp(-i theta H) with H = i A
    let h = a.to_matrix()?.scale(Complex64::new(0.0, 1.0));
    let u = crate::linalg::expm_hermitian(&h, theta)?;
    if u.dim() != psi.len() {
        return Err(Error::Dimension("state length differs from generator".into()));
    }
    Ok(u.mul_vec(psi))
}

/// Noiseless ansatz state from dense matrix exponentials, independent of
/// the circuit compiler.
pub fn ansatz_state(spec: &AnsatzSpec, params: &[f64]) -> Result<Vec<Complex64>> {
    use crate::circuit::{singlet_double, singlet_single, AnsatzFamily, UCCD_GENERATOR};

    if params.len() != spec.n_params() {
        return Err(Error::Binding(format!(
            "{} parameters for a {}-parameter ansatz",
            params.len(),
            spec.n_params()
        )));
    }
    let dim = 1usize << spec.n_qubits;
    let mut psi = basis_vector(dim, spec.reference_index())?;
    // (generator, parameter) in order of application
    let steps: Vec<(PauliSum, f64)> = match spec.family {
        AnsatzFamily::Uccd => {
            let g = PauliSum::from_real_terms(spec.n_qubits, [(1.0, UCCD_GENERATOR)])?;
            return matrix_exp_state(&g, params[0], spec.reference_index());
        }
        AnsatzFamily::SingletUccsd => vec![
            (singlet_double(0, 0, 1, 1, 2)?, params[1]),
            (singlet_single(0, 1, 2)?, params[0]),
        ],
        AnsatzFamily::Adapt => spec
            .generators
            .iter()
            .map(|g| g.operator.clone())
            .zip(params.iter().copied())
            .collect(),
    };
    for (a, t) in &steps {
        psi = apply_generator_exp(a, *t, &psi)?;
    }
    Ok(psi)
}

/// Lowest eigenvalue of `h` restricted to the span of the given basis states.
pub fn restricted_minimum(h: &PauliSum, indices: &[usize]) -> Result<f64> {
    if indices.is_empty() {
        return Err(Error::Dimension("empty subspace".into()));
    }
    let m = h.to_matrix()?;
    if let Some(&bad) = indices.iter().find(|&&i| i >= m.dim()) {
        return Err(Error::Dimension(format!("basis index {bad} out of range")));
    }
    let block = CMatrix::from_fn(indices.len(), |r, c| m[(indices[r], indices[c])]);
    Ok(hermitian_eigen(&block)?.values[0])
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub params: Vec<f64>,
    pub energy: f64,
    pub fidelity: f64,
}

/// `n` evenly spaced points covering `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Simulates the compiled ansatz at every grid point.
pub fn energy_scan(
    spec: &AnsatzSpec,
    h: &PauliSum,
    grid: &[Vec<f64>],
    noise: &NoiseModel,
) -> Result<Vec<ScanPoint>> {
    if grid.is_empty() {
        return Err(Error::Dimension("empty scan grid".into()));
    }
    let circuit = spec.build()?;
    let exact = ground_state(h)?;
    grid.iter()
        .map(|params| {
            let rho = run_circuit(&circuit, params, noise, None)?;
            Ok(ScanPoint {
                params: params.clone(),
                energy: rho.expectation(h)?,
                fidelity: exact.fidelity(&rho)?,
            })
        })
        .collect()
}

/// Point with the lowest energy (first on ties).
pub fn scan_minimum(table: &[ScanPoint]) -> Option<&ScanPoint> {
    table
        .iter()
        .reduce(|best, p| if p.energy < best.energy { p } else { best })
}
