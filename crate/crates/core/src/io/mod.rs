//! Hamiltonian and sweep-manifest text formats, and the bundled NaH model.

mod hamiltonian;
mod manifest;

pub use hamiltonian::{bundled_nah, bundled_nah_file, HamiltonianFile, BUNDLED_NAH_TEXT};
pub use manifest::{HamiltonianEntry, HamiltonianSource, SweepCell, SweepManifest};
