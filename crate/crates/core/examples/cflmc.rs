//! Facility location with market choice, reduced to plain CFL.

use tmcfl::model::Instance;
use tmcfl::reductions::{cflmc_to_cfl, translate, Mode};
use tmcfl::solvers::{exact_cfl, exact_cflmc, CFLMC_ENUMERATION_LIMIT, ENUMERATION_LIMIT};

fn main() {
    let inst = Instance::cflmc(
        &[(3, 2), (5, 6)],
        &[(2, 9), (3, 1), (2, 4)],
        vec![vec![1, 2, 2], vec![2, 1, 1]],
    )
    .unwrap();
    let (reduced, cert) = cflmc_to_cfl(&inst, Mode::General).unwrap();
    let sol = exact_cfl(&reduced, ENUMERATION_LIMIT).unwrap();
    let back = translate(&cert, &reduced, &sol).unwrap();
    println!(
        "translated {} (open {:?}, unserved {:?}); direct optimum {}",
        back.objective,
        back.open,
        back.unserved,
        exact_cflmc(&inst, CFLMC_ENUMERATION_LIMIT)
            .unwrap()
            .objective
    );
}
