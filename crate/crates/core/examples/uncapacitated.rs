//! UTMC to UFL, solved with the greedy star heuristic.

use tmcfl::harness::{generate_metric_instance, GenParams};
use tmcfl::model::Kind;
use tmcfl::reductions::{translate, utmc_to_ufl};
use tmcfl::solvers::{exact_tmc, greedy_ufl, ENUMERATION_LIMIT};

fn main() {
    let inst = generate_metric_instance(&GenParams::new(Kind::Utmc, 3, 5, 3)).unwrap();
    let (reduced, cert) = utmc_to_ufl(&inst).unwrap();
    let greedy = greedy_ufl(&reduced).unwrap();
    let back = translate(&cert, &reduced, &greedy).unwrap();
    let opt = exact_tmc(&inst, ENUMERATION_LIMIT).unwrap().objective;
    println!(
        "greedy on ufl {}, translated {}, optimum {}",
        greedy.objective, back.objective, opt
    );
}
