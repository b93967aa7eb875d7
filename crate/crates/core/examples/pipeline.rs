//! TMC heuristic pipeline: reduce, local search on CFL, translate back.

use tmcfl::harness::{generate_metric_instance, GenParams};
use tmcfl::model::Kind;
use tmcfl::reductions::Mode;
use tmcfl::solvers::{approx_tmc_pipeline, exact_tmc, Heuristic, SolverParams, ENUMERATION_LIMIT};

fn main() {
    let params = SolverParams::default();
    for seed in 0..5 {
        let mut gen = GenParams::new(Kind::Tmc, 4, 6, seed);
        gen.grid = 6;
        let inst = generate_metric_instance(&gen).unwrap();
        let run =
            approx_tmc_pipeline(&inst, Mode::Metric, Heuristic::LocalSearch, &params).unwrap();
        let opt = exact_tmc(&inst, ENUMERATION_LIMIT).unwrap().objective;
        println!(
            "seed {seed}: heuristic {} translated {} optimum {opt}",
            run.heuristic_solution.objective, run.solution.objective
        );
    }
}
