//! Transportation problem with market choice (TMC) and capacitated facility
//! location (CFL): exact integer solvers, the reductions between them, and
//! solution translation back to the source problem.
//!
//! ```
//! use tmcfl::model::Instance;
//! use tmcfl::reductions::{tmc_to_cfl, translate, Mode};
//! use tmcfl::solvers::{exact_cfl, ENUMERATION_LIMIT};
//!
//! let inst = Instance::tmc(&[5], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
//! let (reduced, cert) = tmc_to_cfl(&inst, Mode::Metric).unwrap();
//! let sol = exact_cfl(&reduced, ENUMERATION_LIMIT).unwrap();
//! let back = translate(&cert, &reduced, &sol).unwrap();
//! assert_eq!(back.objective, 5);
//! ```

pub mod harness;
pub mod model;
pub mod reductions;
pub mod solvers;
pub mod transport;

pub use model::{evaluate, verify, Instance, Kind, Solution};
pub use reductions::{reduce, translate, Mode, ReductionCertificate};
