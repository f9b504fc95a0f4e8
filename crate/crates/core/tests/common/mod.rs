#![allow(dead_code)]

use noisyvqe::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Expectation of every bundled Hamiltonian word in the UCCD state, as
/// `(word, constant, sin, cos)` so that
/// `<P(theta)> = constant + sin * sin(theta) + cos * cos(theta)`.
pub const UCCD_COLUMN: [(&str, f64, f64, f64); 27] = [
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

pub fn column_expectation(row: usize, theta: f64) -> f64 {
    let (_, k, s, co) = UCCD_COLUMN[row];
    k + s * theta.sin() + co * theta.cos()
}

/// `(constant, A, B)` with `E(theta) = constant + A sin(theta) + B cos(theta)`
/// from the bundled coefficients and the expectation column.
pub fn closed_form_parts() -> (f64, f64, f64) {
    let h = noisyvqe::io::bundled_nah();
    UCCD_COLUMN.iter().fold((0.0, 0.0, 0.0), |(k0, a0, b0), (w, k, s, co)| {
        let c = h.coefficient_of(w).unwrap().re;
        (k0 + c * k, a0 + c * s, b0 + c * co)
    })
}

pub fn closed_form_energy(theta: f64) -> f64 {
    let (k, a, b) = closed_form_parts();
    k + a * theta.sin() + b * theta.cos()
}

pub fn closed_form_derivative(theta: f64) -> f64 {
    let (_, a, b) = closed_form_parts();
    a * theta.cos() - b * theta.sin()
}
