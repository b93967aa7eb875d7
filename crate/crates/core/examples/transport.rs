//! Minimum-cost transportation with integral flows.

use tmcfl::transport::{max_value_transport, min_cost_transport};

fn main() {
    let supplies = [4, 0, 4];
    let demands = [2, 2, 3];
    let costs = vec![vec![4, 0, 2], vec![0, 0, 0], vec![1, 3, 4]];

    let cheapest = min_cost_transport(&supplies, &demands, &costs).unwrap();
    println!("min cost {}", cheapest.total_cost);
    for (i, row) in cheapest.flows.iter().enumerate() {
        println!("  facility {i} ships {row:?}");
    }
    let dearest = max_value_transport(&supplies, &demands, &costs).unwrap();
    println!("max value {dearest}");

    let short = min_cost_transport(&[1], &[2], &[vec![1]]).unwrap();
    println!("demand above supply feasible: {}", short.feasible);
}
