//! Back-translation of reduced-instance solutions.

use std::collections::BTreeSet;

use crate::model::{evaluate, Client, Facility, Instance, Kind, Solution};
use crate::transport::{min_cost_transport, residual_transport};

use super::normalize::{normalize_dummy_clients, normalize_dummy_service};
use super::{Direction, Mode, ReductionCertificate, ReductionError};

/// Rebuild the source instance from a reduced instance and its certificate.
pub fn source_instance(
    cert: &ReductionCertificate,
    reduced: &Instance,
) -> Result<Instance, ReductionError> {
    cert.validate_against(reduced)?;
    let (m, n) = cert.source_dims();
    let direction = cert.direction();
    let kind = direction.source_kind();
    let metric = cert.mode() == Mode::Metric;
    let inst = if direction.adds_facilities() {
        let facilities = (0..m)
            .map(|i| Facility {
                capacity: reduced.capacity(i),
                opening_cost: kind.has_opening_costs().then(|| reduced.opening_cost(i)),
            })
            .collect();
        let clients = (0..n)
            .map(|j| Client {
                demand: reduced.demand(j),
                penalty: Some(reduced.opening_cost(m + j)),
            })
            .collect();
        let costs = reduced.costs()[..m].to_vec();
        Instance::new(kind, facilities, clients, costs, metric)?
    } else {
        let facilities = (0..m)
            .map(|i| Facility {
                capacity: reduced.capacity(i),
                opening_cost: Some(reduced.penalty(n + i)),
            })
            .collect();
        let clients = (0..n)
            .map(|j| Client {
                demand: reduced.demand(j),
                penalty: None,
            })
            .collect();
        let costs = reduced
            .costs()
            .iter()
            .map(|row| row[..n].to_vec())
            .collect();
        Instance::new(Kind::Cfl, facilities, clients, costs, metric)?
    };
    Ok(inst)
}

fn internal(context: &'static str) -> impl Fn(crate::model::ValidationReport) -> ReductionError {
    move |r| ReductionError::Internal(format!("{context}: {r}"))
}

/// Translate a solution of a dummy-facility gadget back to its source
/// (TMC, UTMC or CFLMC).
///
/// The solution is normalized, clients whose dummy is open become unserved,
/// and the remaining clients are served by an optimal transportation flow
/// over the original facilities. The result never costs more than `sol`.
pub fn translate_cfl_solution_to_tmc(
    cert: &ReductionCertificate,
    reduced: &Instance,
    sol: &Solution,
) -> Result<Solution, ReductionError> {
    if !cert.direction().adds_facilities() {
        return Err(ReductionError::CertificateMismatch(
            "expected a dummy-facility certificate".into(),
        ));
    }
    let normalized = normalize_dummy_service(reduced, sol, cert)?;
    let source = source_instance(cert, reduced)?;
    let (m, n) = cert.source_dims();
    let open = &normalized.solution.open;

    let no_originals = m == 0;
    let unserved: BTreeSet<usize> = (0..n)
        .filter(|&j| source.demand(j) > 0)
        .filter(|&j| no_originals || open.contains(&(m + j)))
        .collect();
    let original_open: BTreeSet<usize> = if source.kind().has_opening_costs() {
        open.iter().copied().filter(|&i| i < m).collect()
    } else {
        BTreeSet::new()
    };
    let fixed = Solution {
        unserved,
        open: original_open,
        ..Default::default()
    };
    let completion = residual_transport(&source, &fixed)
        .map_err(|e| ReductionError::Internal(format!("residual after normalization: {e}")))?;
    Solution::from_flow_matrix(&completion.flows, fixed.unserved, fixed.open)
        .evaluated(&source)
        .map_err(internal("translated solution"))
}

/// Translate a TMC solution of the dummy-client gadget back to CFL.
///
/// A solution worth at least the instance upper bound leaves some original
/// client unserved; it is replaced by the all-open optimal transportation
/// solution, which is worth strictly less. Otherwise facilities whose dummy
/// is unserved are opened and the original clients are re-served optimally
/// from them.
pub fn translate_tmc_solution_to_cfl(
    cert: &ReductionCertificate,
    reduced: &Instance,
    sol: &Solution,
) -> Result<Solution, ReductionError> {
    if cert.direction() != Direction::CflToTmc {
        return Err(ReductionError::CertificateMismatch(
            "expected a cfl-to-tmc certificate".into(),
        ));
    }
    let value = evaluate(reduced, sol).map_err(ReductionError::InfeasibleSolution)?;
    let source = source_instance(cert, reduced)?;
    let (m, n) = cert.source_dims();
    let iub = cert.iub().ok_or_else(|| {
        ReductionError::CertificateMismatch("missing instance upper bound".into())
    })?;

    if value >= iub {
        let all_open: BTreeSet<usize> = (0..m).collect();
        let fallback = min_cost_transport(&source.capacities(), &source.demands(), source.costs())?;
        if !fallback.feasible {
            return Err(ReductionError::Internal(
                "source instance is infeasible".into(),
            ));
        }
        return Solution::from_flow_matrix(&fallback.flows, BTreeSet::new(), all_open)
            .evaluated(&source)
            .map_err(internal("fallback solution"));
    }

    let normalized = normalize_dummy_clients(reduced, sol, cert)?;
    let open: BTreeSet<usize> = (0..m)
        .filter(|&i| normalized.solution.unserved.contains(&(n + i)))
        .collect();
    let fixed = Solution {
        open,
        ..Default::default()
    };
    let completion = residual_transport(&source, &fixed)
        .map_err(|e| ReductionError::Internal(format!("residual after normalization: {e}")))?;
    Solution::from_flow_matrix(&completion.flows, BTreeSet::new(), fixed.open)
        .evaluated(&source)
        .map_err(internal("translated solution"))
}

/// Translate with the translator matching the certificate's direction.
pub fn translate(
    cert: &ReductionCertificate,
    reduced: &Instance,
    sol: &Solution,
) -> Result<Solution, ReductionError> {
    match cert.direction() {
        Direction::CflToTmc => translate_tmc_solution_to_cfl(cert, reduced, sol),
        _ => translate_cfl_solution_to_tmc(cert, reduced, sol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{cfl_to_tmc, tmc_to_cfl};

    fn t1() -> Instance {
        Instance::tmc(&[5], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap()
    }

    #[test]
    fn source_round_trip() {
        let (red, cert) = tmc_to_cfl(&t1(), Mode::General).unwrap();
        assert_eq!(source_instance(&cert, &red).unwrap(), t1());
        let cfl = Instance::cfl(&[(5, 3), (2, 1)], &[3, 2], vec![vec![1, 2], vec![2, 1]]).unwrap();
        let (red, cert) = cfl_to_tmc(&cfl, Mode::General).unwrap();
        assert_eq!(source_instance(&cert, &red).unwrap(), cfl);
    }

    #[test]
    fn optimal_reduced_t1_translates_to_five() {
        let (red, cert) = tmc_to_cfl(&t1(), Mode::Metric).unwrap();
        let sol = Solution {
            flows: vec![(0, 0, 3).into(), (2, 1, 4).into()],
            open: [0, 2].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        assert_eq!(sol.objective, 5);
        let back = translate(&cert, &red, &sol).unwrap();
        assert_eq!(back.objective, 5);
        assert_eq!(back.unserved, [1].into());
    }

    #[test]
    fn all_dummies_open_means_all_unserved() {
        let (red, cert) = tmc_to_cfl(&t1(), Mode::Metric).unwrap();
        let sol = Solution {
            flows: vec![(1, 0, 3).into(), (2, 1, 4).into()],
            open: [1, 2].into(),
            ..Default::default()
        };
        let back = translate(&cert, &red, &sol).unwrap();
        assert_eq!(back.unserved, [0, 1].into());
        assert_eq!(back.objective, 12);
        assert!(back.flows.is_empty());
    }

    #[test]
    fn unserved_original_client_triggers_fallback() {
        let cfl = Instance::cfl(&[(5, 3)], &[3, 2], vec![vec![1, 2]]).unwrap();
        let (red, cert) = cfl_to_tmc(&cfl, Mode::Metric).unwrap();
        // serve the dummy, drop the first real client
        let sol = Solution {
            flows: vec![(0, 2, 5).into()],
            unserved: [0, 1].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        assert!(sol.objective >= cert.iub().unwrap());
        let back = translate(&cert, &red, &sol).unwrap();
        assert_eq!(back.open, [0].into());
        assert_eq!(back.objective, 10);
        assert!(back.objective < cert.iub().unwrap());
    }

    #[test]
    fn all_dummies_unserved_maps_directly() {
        let cfl = Instance::cfl(&[(5, 3)], &[3, 2], vec![vec![1, 2]]).unwrap();
        let (red, cert) = cfl_to_tmc(&cfl, Mode::Metric).unwrap();
        let sol = Solution {
            flows: vec![(0, 0, 3).into(), (0, 1, 2).into()],
            unserved: [2].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        let back = translate(&cert, &red, &sol).unwrap();
        assert_eq!(back.open, [0].into());
        assert_eq!(back.objective, sol.objective);
    }
}
