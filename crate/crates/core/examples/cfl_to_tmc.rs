//! Reduce CFL to TMC: one dummy client per facility, serving it means closing it.

use tmcfl::model::{instance_upper_bound, Instance};
use tmcfl::reductions::{cfl_to_tmc, translate, Mode};
use tmcfl::solvers::{exact_cfl, exact_tmc, ENUMERATION_LIMIT};

fn main() {
    let inst = Instance::cfl(&[(4, 3), (4, 1)], &[2, 3], vec![vec![1, 4], vec![3, 1]]).unwrap();
    println!("upper bound {}", instance_upper_bound(&inst).unwrap());

    let (reduced, cert) = cfl_to_tmc(&inst, Mode::General).unwrap();
    let sol = exact_tmc(&reduced, ENUMERATION_LIMIT).unwrap();
    let back = translate(&cert, &reduced, &sol).unwrap();
    println!(
        "tmc optimum {}, translated {} with open {:?}",
        sol.objective, back.objective, back.open
    );
    println!(
        "direct cfl optimum {}",
        exact_cfl(&inst, ENUMERATION_LIMIT).unwrap().objective
    );
}
