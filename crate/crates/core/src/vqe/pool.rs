use num_complex::Complex64;

use crate::circuit::{singlet_double, singlet_single, Generator};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::PauliSum;
use crate::sim::DensityMatrix;

fn same_up_to_sign(a: &PauliSum, b: &PauliSum) -> bool {
    let close = |x: &PauliSum, y: &PauliSum| {
        x.sub(y)
            .map(|d| d.coefficient_norm_sqr() < 1e-20)
            .unwrap_or(false)
    };
    close(a, b) || close(a, &b.scale(Complex64::new(-1.0, 0.0)))
}

/// Singlet-adapted singles and doubles for a closed-shell reference with
/// `n_occupied` occupied and `n_virtual` virtual spin orbitals (block spin
/// ordering, register of `n_occupied + n_virtual` qubits).
///
/// Singles come first (occupied-major), then doubles over `i <= j`,
/// `a <= b`, including both spin couplings when `i < j` and `a < b`.
/// Generators equal up to sign are kept once.
pub fn build_pool(n_occupied: usize, n_virtual: usize) -> Result<Vec<Generator>> {
    if n_virtual == 0 {
        return Err(Error::Model("no virtual orbitals to excite into".into()));
    }
    if n_occupied == 0 {
        return Err(Error::Model("no occupied orbitals to excite from".into()));
    }
    if !n_occupied.is_multiple_of(2) || !n_virtual.is_multiple_of(2) {
        return Err(Error::Model(format!(
            "singlet pool needs paired spin orbitals, got {n_occupied} occupied and {n_virtual} virtual"
        )));
    }
    let n_spatial = (n_occupied + n_virtual) / 2;
    crate::check_dense(2 * n_spatial)?;
    let occ: Vec<usize> = (0..n_occupied / 2).collect();
    let virt: Vec<usize> = (n_occupied / 2..n_spatial).collect();

    let mut candidates: Vec<(String, PauliSum)> = Vec::new();
    for &i in &occ {
        for &a in &virt {
            candidates.push((format!("S({i}->{a})"), singlet_single(i, a, n_spatial)?));
        }
    }
    for (x, &i) in occ.iter().enumerate() {
        for &j in &occ[x..] {
            for (y, &a) in virt.iter().enumerate() {
                for &b in &virt[y..] {
                    let mut couplings = vec![(a, b)];
                    if i < j && a < b {
                        couplings.push((b, a));
                    }
                    for (p, q) in couplings {
                        // cancelling spin sums simply contribute nothing
                        if let Ok(op) = singlet_double(i, j, p, q, n_spatial) {
                            candidates.push((format!("D({i},{j}->{p},{q})"), op));
                        }
                    }
                }
            }
        }
    }

    let mut pool: Vec<Generator> = Vec::new();
    for (id, operator) in candidates {
        if !pool.iter().any(|g| same_up_to_sign(&g.operator, &operator)) {
            pool.push(Generator { id, operator });
        }
    }
    if pool.is_empty() {
        return Err(Error::Model("operator pool is empty".into()));
    }
    Ok(pool)
}

/// Dense commutators `[H, A_k]` for repeated gradient evaluation.
pub struct PoolGradients {
    commutators: Vec<CMatrix>,
}

impl PoolGradients {
    pub fn new(h: &PauliSum, pool: &[Generator]) -> Result<Self> {
        let hm = h.to_matrix()?;
        let commutators = pool
            .iter()
            .map(|g| {
                if g.operator.n_qubits() != h.n_qubits() {
                    return Err(Error::Dimension(format!(
                        "generator {} acts on {} qubits, Hamiltonian on {}",
                        g.id,
                        g.operator.n_qubits(),
                        h.n_qubits()
                    )));
                }
                Ok(hm.commutator(&g.operator.to_matrix()?))
            })
            .collect::<Result<_>>()?;
        Ok(Self { commutators })
    }

    /// `g_k = Tr(rho [H, A_k])`, the energy slope of appending `exp(theta A_k)`.
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        self.commutators
            .iter()
            .map(|c| rho.expectation_dense(c))
            .collect()
    }
}

pub fn pool_gradients(rho: &DensityMatrix, h: &PauliSum, pool: &[Generator]) -> Result<Vec<f64>> {
    PoolGradients::new(h, pool)?.evaluate(rho)
}
