use serde::{Deserialize, Serialize};

use crate::model::{Instance, Kind, Solution};
use crate::reductions::{self, Mode, ReductionCertificate};

use super::{greedy_ufl, local_search_cfl, SolverError, SolverParams};

/// Facility location heuristic plugged into the reduction pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heuristic {
    LocalSearch,
    /// Only for UTMC in metric mode, whose reduction yields UFL.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineRun {
    pub reduced: Instance,
    pub certificate: ReductionCertificate,
    /// Heuristic solution of the reduced instance.
    pub heuristic_solution: Solution,
    /// Translated solution of the original instance.
    pub solution: Solution,
}

/// Reduce a TMC/UTMC instance to facility location, solve it heuristically
/// and translate the result back.
///
/// The translated value never exceeds the heuristic's value on the reduced
/// instance. No approximation ratio is guaranteed: the heuristics are generic
/// stand-ins.
pub fn approx_tmc_pipeline(
    inst: &Instance,
    mode: Mode,
    heuristic: Heuristic,
    params: &SolverParams,
) -> Result<PipelineRun, SolverError> {
    let (reduced, certificate) = match (inst.kind(), mode) {
        (Kind::Tmc, _) => reductions::tmc_to_cfl(inst, mode)?,
        (Kind::Utmc, Mode::Metric) => reductions::utmc_to_ufl(inst)?,
        (Kind::Utmc, Mode::General) => reductions::tmc_to_cfl(&inst.relabel(Kind::Tmc)?, mode)?,
        (found, _) => {
            return Err(SolverError::WrongKind {
                expected: "tmc or utmc",
                found,
            })
        }
    };
    let heuristic_solution = match heuristic {
        Heuristic::LocalSearch => local_search_cfl(&reduced, params)?,
        Heuristic::Greedy => greedy_ufl(&reduced)?,
    };
    let solution = reductions::translate(&certificate, &reduced, &heuristic_solution)?;
    Ok(PipelineRun {
        reduced,
        certificate,
        heuristic_solution,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify;
    use crate::solvers::{exact_tmc, ENUMERATION_LIMIT};

    #[test]
    fn t1_pipeline_finds_optimum() {
        let inst = Instance::tmc(&[5], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
        for mode in [Mode::Metric, Mode::General] {
            let run = approx_tmc_pipeline(
                &inst,
                mode,
                Heuristic::LocalSearch,
                &SolverParams::default(),
            )
            .unwrap();
            assert!(verify(&inst, &run.solution).ok);
            assert_eq!(run.solution.objective, 5);
            assert!(run.solution.objective <= run.heuristic_solution.objective);
        }
    }

    #[test]
    fn zero_penalties_cost_nothing() {
        let inst = Instance::tmc(&[5, 1], &[(3, 0), (4, 0)], vec![vec![1, 3], vec![2, 2]]).unwrap();
        let run = approx_tmc_pipeline(
            &inst,
            Mode::General,
            Heuristic::LocalSearch,
            &SolverParams::default(),
        )
        .unwrap();
        assert_eq!(run.solution.objective, 0);
    }

    #[test]
    fn utmc_with_greedy() {
        let inst = Instance::utmc(&[7], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
        let run = approx_tmc_pipeline(
            &inst,
            Mode::Metric,
            Heuristic::Greedy,
            &SolverParams::default(),
        )
        .unwrap();
        assert!(verify(&inst, &run.solution).ok);
        let opt = exact_tmc(&inst, ENUMERATION_LIMIT).unwrap().objective;
        assert!(run.solution.objective >= opt);
        assert!(run.solution.objective <= run.heuristic_solution.objective);

        assert!(matches!(
            approx_tmc_pipeline(
                &inst,
                Mode::General,
                Heuristic::Greedy,
                &SolverParams::default()
            ),
            Err(SolverError::WrongKind { .. })
        ));
    }
}
