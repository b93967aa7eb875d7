//! Normalization of reduced-instance solutions so that every active dummy
//! is served by (or serves) its own counterpart only.
//!
//! The workhorse is the flow swap on a 2x2 cycle: with `i0` the facility that
//! should serve `j0`, `i1` another facility serving `j0`, and `j1` another
//! client served by `i0`, move `a = min(x[i0][j1], x[i1][j0])` units so that
//! `x[i0][j0]` and `x[i1][j1]` grow by `a` while `x[i0][j1]` and `x[i1][j0]`
//! shrink by `a`. Every facility ships and every client receives the same
//! amount as before. The cost changes by
//! `a * (c[i0][j0] + c[i1][j1] - c[i0][j1] - c[i1][j0])`, which is never
//! positive on the gadgets because `c[i0][j0] = 0` and the cross costs obey
//! the four-point inequality (or equal the maximum unit cost).

use serde::Serialize;

use crate::model::{evaluate, Instance, Solution};

use super::{Direction, ReductionCertificate, ReductionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum NormalizeStep {
    /// A facility with zero opening cost was opened.
    OpenFree { facility: usize },
    /// Raise `(i0, j0)` and `(i1, j1)`, lower `(i0, j1)` and `(i1, j0)`.
    Swap {
        i0: usize,
        i1: usize,
        j0: usize,
        j1: usize,
        amount: i64,
    },
    /// Spare capacity of `facility` replaces shipments from `from` to `client`.
    TakeOver {
        facility: usize,
        client: usize,
        from: usize,
        amount: i64,
    },
    /// Shipment to `client` moved from facility `from` to facility `to`.
    Reroute {
        from: usize,
        to: usize,
        client: usize,
        amount: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub solution: Solution,
    pub steps: Vec<NormalizeStep>,
}

struct FlowTable {
    x: Vec<Vec<i64>>,
}

impl FlowTable {
    fn shipped(&self, i: usize) -> i64 {
        self.x[i].iter().sum()
    }

    fn lowest_other_supplier(&self, client: usize, except: usize) -> Option<usize> {
        (0..self.x.len()).find(|&i| i != except && self.x[i][client] > 0)
    }

    fn lowest_other_client(&self, facility: usize, except: usize) -> Option<usize> {
        (0..self.x[facility].len()).find(|&j| j != except && self.x[facility][j] > 0)
    }

    /// Make facility `i0` deliver the full `need` of client `j0`.
    fn fill_own(
        &mut self,
        i0: usize,
        j0: usize,
        need: i64,
        capacity: i64,
        steps: &mut Vec<NormalizeStep>,
    ) -> Result<(), ReductionError> {
        while self.x[i0][j0] < need {
            let i1 = self.lowest_other_supplier(j0, i0).ok_or_else(|| {
                ReductionError::Internal(format!("client {j0} is short but has no other supplier"))
            })?;
            match self.lowest_other_client(i0, j0) {
                Some(j1) => {
                    let amount = self.x[i0][j1].min(self.x[i1][j0]);
                    self.x[i0][j0] += amount;
                    self.x[i1][j1] += amount;
                    self.x[i0][j1] -= amount;
                    self.x[i1][j0] -= amount;
                    steps.push(NormalizeStep::Swap {
                        i0,
                        i1,
                        j0,
                        j1,
                        amount,
                    });
                }
                None => {
                    let slack = capacity - self.shipped(i0);
                    let amount = (need - self.x[i0][j0]).min(self.x[i1][j0]).min(slack);
                    if amount <= 0 {
                        return Err(ReductionError::Internal(format!(
                            "facility {i0} has no spare capacity for client {j0}"
                        )));
                    }
                    self.x[i0][j0] += amount;
                    self.x[i1][j0] -= amount;
                    steps.push(NormalizeStep::TakeOver {
                        facility: i0,
                        client: j0,
                        from: i1,
                        amount,
                    });
                }
            }
        }
        Ok(())
    }
}

fn feasible_value(reduced: &Instance, sol: &Solution) -> Result<i64, ReductionError> {
    evaluate(reduced, sol).map_err(ReductionError::InfeasibleSolution)
}

/// Normalize a feasible solution of a dummy-facility gadget (TMC to CFL,
/// UTMC to UFL, CFLMC to CFL).
///
/// Afterwards every zero-cost facility is open and every open dummy fully
/// serves its own client. For the uncapacitated gadget, shipments from a
/// dummy to foreign clients are also moved to the original facility that
/// realizes the dummy's cross cost. The objective never increases.
pub fn normalize_dummy_service(
    reduced: &Instance,
    sol: &Solution,
    cert: &ReductionCertificate,
) -> Result<Normalized, ReductionError> {
    cert.validate_against(reduced)?;
    if !cert.direction().adds_facilities() {
        return Err(ReductionError::CertificateMismatch(
            "dummy facility normalization needs a facility gadget".into(),
        ));
    }
    feasible_value(reduced, sol)?;
    let (m, _) = cert.source_dims();
    let mut table = FlowTable {
        x: sol.flow_matrix(reduced.m(), reduced.n()),
    };
    let mut open = sol.open.clone();
    let mut steps = Vec::new();

    for i in 0..reduced.m() {
        if reduced.opening_cost(i) == 0 && open.insert(i) {
            steps.push(NormalizeStep::OpenFree { facility: i });
        }
    }

    for &(dummy, client) in cert.dummy_map() {
        if !open.contains(&dummy) {
            continue;
        }
        table.fill_own(
            dummy,
            client,
            reduced.demand(client),
            reduced.capacity(dummy),
            &mut steps,
        )?;
    }

    if cert.direction() == Direction::UtmcToUfl && m > 0 {
        for &(dummy, own) in cert.dummy_map() {
            for j in 0..reduced.n() {
                let amount = table.x[dummy][j];
                if j == own || amount == 0 {
                    continue;
                }
                let to = (0..m)
                    .min_by_key(|&i| (reduced.cost(i, j) + reduced.cost(i, own), i))
                    .expect("m > 0");
                table.x[dummy][j] = 0;
                table.x[to][j] += amount;
                open.insert(to);
                steps.push(NormalizeStep::Reroute {
                    from: dummy,
                    to,
                    client: j,
                    amount,
                });
            }
        }
    }

    let solution = Solution::from_flow_matrix(&table.x, sol.unserved.clone(), open)
        .evaluated(reduced)
        .map_err(|r| ReductionError::Internal(format!("normalization broke feasibility: {r}")))?;
    Ok(Normalized { solution, steps })
}

/// Normalize a feasible solution of the dummy-client gadget (CFL to TMC):
/// every served dummy client is served entirely by its own facility.
pub fn normalize_dummy_clients(
    reduced: &Instance,
    sol: &Solution,
    cert: &ReductionCertificate,
) -> Result<Normalized, ReductionError> {
    cert.validate_against(reduced)?;
    if cert.direction() != Direction::CflToTmc {
        return Err(ReductionError::CertificateMismatch(
            "dummy client normalization needs the cfl-to-tmc gadget".into(),
        ));
    }
    feasible_value(reduced, sol)?;
    let mut table = FlowTable {
        x: sol.flow_matrix(reduced.m(), reduced.n()),
    };
    let mut steps = Vec::new();
    for &(dummy, facility) in cert.dummy_map() {
        let need = reduced.demand(dummy);
        if need == 0 || sol.unserved.contains(&dummy) {
            continue;
        }
        table.fill_own(
            facility,
            dummy,
            need,
            reduced.capacity(facility),
            &mut steps,
        )?;
    }
    let solution = Solution::from_flow_matrix(&table.x, sol.unserved.clone(), sol.open.clone())
        .evaluated(reduced)
        .map_err(|r| ReductionError::Internal(format!("normalization broke feasibility: {r}")))?;
    Ok(Normalized { solution, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Flow;
    use crate::reductions::{tmc_to_cfl, Mode};

    /// Two originals, two clients of demand 2; client 0 dummy at index 2.
    fn two_by_two() -> (Instance, ReductionCertificate) {
        let inst = Instance::tmc(&[2, 2], &[(2, 9), (2, 9)], vec![vec![1, 2], vec![2, 1]]).unwrap();
        tmc_to_cfl(&inst, Mode::Metric).unwrap()
    }

    #[test]
    fn nothing_to_do_is_identity() {
        let (red, cert) = two_by_two();
        let sol = Solution {
            flows: vec![Flow::from((0, 0, 2)), Flow::from((1, 1, 2))],
            open: [0, 1].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        let out = normalize_dummy_service(&red, &sol, &cert).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(out.solution, sol);
    }

    #[test]
    fn unit_swap_on_crossed_flows() {
        let (red, cert) = two_by_two();
        // dummy 2 (client 0) ships one unit to client 1 and one to client 0;
        // facility 1 covers the rest of client 0.
        let sol = Solution {
            flows: vec![
                (2, 0, 1).into(),
                (2, 1, 1).into(),
                (1, 0, 1).into(),
                (1, 1, 1).into(),
            ],
            open: [0, 1, 2].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        let out = normalize_dummy_service(&red, &sol, &cert).unwrap();
        assert_eq!(
            out.steps,
            vec![NormalizeStep::Swap {
                i0: 2,
                i1: 1,
                j0: 0,
                j1: 1,
                amount: 1
            }]
        );
        let c = |i, j| red.cost(i, j);
        let delta = c(2, 1) + c(1, 0) - c(2, 0) - c(1, 1);
        assert!(delta >= 0);
        assert_eq!(sol.objective - out.solution.objective, delta);
        assert_eq!(out.solution.shipped(4), sol.shipped(4));
        assert_eq!(out.solution.received(2), sol.received(2));
    }

    #[test]
    fn idle_dummy_takes_over_its_client() {
        let (red, cert) = two_by_two();
        let sol = Solution {
            flows: vec![(0, 0, 2).into(), (1, 1, 2).into()],
            open: [0, 1, 2].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        let out = normalize_dummy_service(&red, &sol, &cert).unwrap();
        assert_eq!(
            out.steps,
            vec![NormalizeStep::TakeOver {
                facility: 2,
                client: 0,
                from: 0,
                amount: 2
            }]
        );
        assert_eq!(out.solution.flow_matrix(4, 2)[2], vec![2, 0]);
        assert!(out.solution.objective <= sol.objective);
    }

    #[test]
    fn opens_free_facilities() {
        let (red, cert) = two_by_two();
        let sol = Solution {
            flows: vec![(2, 0, 2).into(), (3, 1, 2).into()],
            open: [2, 3].into(),
            ..Default::default()
        }
        .evaluated(&red)
        .unwrap();
        let out = normalize_dummy_service(&red, &sol, &cert).unwrap();
        assert_eq!(
            out.steps,
            vec![
                NormalizeStep::OpenFree { facility: 0 },
                NormalizeStep::OpenFree { facility: 1 }
            ]
        );
        assert_eq!(out.solution.objective, sol.objective);
    }

    #[test]
    fn infeasible_input_is_rejected() {
        let (red, cert) = two_by_two();
        let sol = Solution {
            flows: vec![(0, 0, 1).into()],
            open: [0].into(),
            ..Default::default()
        };
        assert!(matches!(
            normalize_dummy_service(&red, &sol, &cert),
            Err(ReductionError::InfeasibleSolution(_))
        ));
    }
}
