//! Normalizing a reduced solution so every open dummy serves its own client.

use std::collections::BTreeSet;

use tmcfl::model::{Instance, Solution};
use tmcfl::reductions::{normalize_dummy_service, tmc_to_cfl, Mode};

fn main() {
    let inst = Instance::tmc(&[2, 2], &[(2, 9), (2, 9)], vec![vec![1, 3], vec![3, 1]]).unwrap();
    let (reduced, cert) = tmc_to_cfl(&inst, Mode::General).unwrap();
    println!("reduced costs {:?}", reduced.costs());

    // dummy 2 belongs to client 0 but serves client 1 instead
    let mut x = vec![vec![0; 2]; 4];
    x[0][0] = 1;
    x[2][1] = 2;
    x[1][0] = 1;
    let sol = Solution::from_flow_matrix(&x, BTreeSet::new(), [0, 1, 2].into())
        .evaluated(&reduced)
        .unwrap();
    let normalized = normalize_dummy_service(&reduced, &sol, &cert).unwrap();
    for step in &normalized.steps {
        println!("{}", serde_json::to_string(step).unwrap());
    }
    println!(
        "objective {} -> {}",
        sol.objective, normalized.solution.objective
    );
}
