//! Seeded instance generation and random feasible solutions.

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use tmcfl::harness::{
    generate_general_instance, generate_metric_instance, sample_feasible_solution, GenParams,
};
use tmcfl::model::{check_metric, Kind};

fn main() {
    let mut params = GenParams::new(Kind::Cfl, 3, 4, 17);
    params.caps.capacity = 20;
    let metric = generate_metric_instance(&params).unwrap();
    println!("metric: {}", check_metric(metric.costs()));
    print!("{}", metric.to_json());

    let general = generate_general_instance(&GenParams::new(Kind::Tmc, 2, 3, 17)).unwrap();
    let mut rng = SplitMix64::seed_from_u64(1);
    let sol = sample_feasible_solution(&general, &mut rng).unwrap();
    print!("{}", sol.to_json());
}
