//! VQE and ADAPT-VQE orchestration.

mod adapt;
mod pool;
mod run;

pub use adapt::{run_adapt, AdaptConfig, AdaptIteration, AdaptResult, GradientNorm};
pub use pool::{build_pool, pool_gradients, PoolGradients};
pub use run::{evaluate_parameters, run_vqe, run_vqe_with, VqeResult};
