//! Reduce a TMC instance to CFL, solve the CFL side exactly and translate back.

use tmcfl::model::Instance;
use tmcfl::reductions::{tmc_to_cfl, translate, Mode};
use tmcfl::solvers::{exact_cfl, exact_tmc, ENUMERATION_LIMIT};

fn main() {
    // one facility of capacity 5; clients (demand, penalty)
    let inst = Instance::tmc(&[5], &[(3, 10), (4, 2)], vec![vec![1, 3]])
        .unwrap()
        .claim_metric(true)
        .unwrap();

    for mode in [Mode::Metric, Mode::General] {
        let (reduced, cert) = tmc_to_cfl(&inst, mode).unwrap();
        let sol = exact_cfl(&reduced, ENUMERATION_LIMIT).unwrap();
        let back = translate(&cert, &reduced, &sol).unwrap();
        println!(
            "{mode}: {} facilities, cfl optimum {}, translated {} (unserved {:?})",
            reduced.m(),
            sol.objective,
            back.objective,
            back.unserved
        );
    }
    println!(
        "direct tmc optimum {}",
        exact_tmc(&inst, ENUMERATION_LIMIT).unwrap().objective
    );
}
