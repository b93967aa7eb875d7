use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::model::{feasible_cfl, Instance, Kind, Solution};
use crate::transport::min_cost_transport;

use super::SolverError;

/// Default cap on the enumerated side of an instance.
pub const ENUMERATION_LIMIT: usize = 16;
/// Cap on both sides when enumerating open sets and unserved sets together.
pub const CFLMC_ENUMERATION_LIMIT: usize = 10;

fn members(mask: u64, len: usize) -> Vec<usize> {
    (0..len).filter(|&k| mask >> k & 1 == 1).collect()
}

/// Smaller value first, then fewer members, then lexicographically smaller
/// member list.
fn better(a: (i64, &[usize]), b: (i64, &[usize])) -> bool {
    match a.0.cmp(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => (a.1.len(), a.1) < (b.1.len(), b.1),
    }
}

fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<(), SolverError> {
    if size > limit || size >= 63 {
        return Err(SolverError::TooLarge { what, size, limit });
    }
    Ok(())
}

struct Best {
    value: i64,
    key: Vec<usize>,
    secondary: Vec<usize>,
    flows: Vec<Vec<i64>>,
}

fn keep(
    best: &mut Option<Best>,
    value: i64,
    key: Vec<usize>,
    secondary: Vec<usize>,
    flows: Vec<Vec<i64>>,
) {
    let replace = match best {
        None => true,
        Some(b) => {
            better((value, &key), (b.value, &b.key))
                || (value == b.value
                    && key == b.key
                    && (secondary.len(), &secondary) < (b.secondary.len(), &b.secondary))
        }
    };
    if replace {
        *best = Some(Best {
            value,
            key,
            secondary,
            flows,
        });
    }
}

/// Optimal TMC/UTMC solution by enumerating every unserved set.
pub fn exact_tmc(inst: &Instance, limit: usize) -> Result<Solution, SolverError> {
    if !matches!(inst.kind(), Kind::Tmc | Kind::Utmc) {
        return Err(SolverError::WrongKind {
            expected: "tmc or utmc",
            found: inst.kind(),
        });
    }
    let n = inst.n();
    check_limit("client", n, limit)?;
    let capacities = inst.capacities();
    let positive: u64 = (0..n)
        .filter(|&j| inst.demand(j) > 0)
        .fold(0, |acc, j| acc | 1 << j);

    let mut best: Option<Best> = None;
    for mask in 0..(1u64 << n) {
        if mask & !positive != 0 {
            continue;
        }
        let demands: Vec<i64> = (0..n)
            .map(|j| {
                if mask >> j & 1 == 1 {
                    0
                } else {
                    inst.demand(j)
                }
            })
            .collect();
        let t = min_cost_transport(&capacities, &demands, inst.costs())?;
        if !t.feasible {
            continue;
        }
        let unserved = members(mask, n);
        let value = unserved.iter().map(|&j| inst.penalty(j)).sum::<i64>() + t.total_cost;
        keep(&mut best, value, unserved, Vec::new(), t.flows);
    }
    let best = best.expect("leaving every client unserved is feasible");
    Solution::from_flow_matrix(&best.flows, best.key.into_iter().collect(), BTreeSet::new())
        .evaluated(inst)
        .map_err(SolverError::Invalid)
}

/// Optimal CFL/UFL solution by enumerating every open set.
pub fn exact_cfl(inst: &Instance, limit: usize) -> Result<Solution, SolverError> {
    if !matches!(inst.kind(), Kind::Cfl | Kind::Ufl) {
        return Err(SolverError::WrongKind {
            expected: "cfl or ufl",
            found: inst.kind(),
        });
    }
    let m = inst.m();
    check_limit("facility", m, limit)?;
    if !feasible_cfl(inst)? {
        return Err(SolverError::Infeasible {
            demand: inst.total_demand(),
            supply: inst.total_supply(),
        });
    }
    let demands = inst.demands();
    let total_demand = inst.total_demand();

    let mut best: Option<Best> = None;
    for mask in 0..(1u64 << m) {
        let supplies: Vec<i64> = (0..m)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    inst.capacity(i)
                } else {
                    0
                }
            })
            .collect();
        if supplies.iter().sum::<i64>() < total_demand {
            continue;
        }
        let t = min_cost_transport(&supplies, &demands, inst.costs())?;
        let open = members(mask, m);
        let value = open.iter().map(|&i| inst.opening_cost(i)).sum::<i64>() + t.total_cost;
        keep(&mut best, value, open, Vec::new(), t.flows);
    }
    let best = best.expect("opening everything is feasible");
    Solution::from_flow_matrix(&best.flows, BTreeSet::new(), best.key.into_iter().collect())
        .evaluated(inst)
        .map_err(SolverError::Invalid)
}

/// Optimal CFLMC solution by enumerating open sets and unserved sets.
pub fn exact_cflmc(inst: &Instance, limit: usize) -> Result<Solution, SolverError> {
    if inst.kind() != Kind::Cflmc {
        return Err(SolverError::WrongKind {
            expected: "cflmc",
            found: inst.kind(),
        });
    }
    let (m, n) = (inst.m(), inst.n());
    check_limit("facility", m, limit)?;
    check_limit("client", n, limit)?;
    let positive: u64 = (0..n)
        .filter(|&j| inst.demand(j) > 0)
        .fold(0, |acc, j| acc | 1 << j);

    let mut best: Option<Best> = None;
    for open_mask in 0..(1u64 << m) {
        let supplies: Vec<i64> = (0..m)
            .map(|i| {
                if open_mask >> i & 1 == 1 {
                    inst.capacity(i)
                } else {
                    0
                }
            })
            .collect();
        let supply: i64 = supplies.iter().sum();
        let open = members(open_mask, m);
        let opening: i64 = open.iter().map(|&i| inst.opening_cost(i)).sum();
        for un_mask in 0..(1u64 << n) {
            if un_mask & !positive != 0 {
                continue;
            }
            let demands: Vec<i64> = (0..n)
                .map(|j| {
                    if un_mask >> j & 1 == 1 {
                        0
                    } else {
                        inst.demand(j)
                    }
                })
                .collect();
            if demands.iter().sum::<i64>() > supply {
                continue;
            }
            let t = min_cost_transport(&supplies, &demands, inst.costs())?;
            let unserved = members(un_mask, n);
            let value =
                opening + unserved.iter().map(|&j| inst.penalty(j)).sum::<i64>() + t.total_cost;
            keep(&mut best, value, open.clone(), unserved, t.flows);
        }
    }
    let best = best.expect("opening nothing and serving nobody is feasible");
    Solution::from_flow_matrix(
        &best.flows,
        best.secondary.into_iter().collect(),
        best.key.into_iter().collect(),
    )
    .evaluated(inst)
    .map_err(SolverError::Invalid)
}

/// Exact oracle matching the instance kind.
pub fn exact(inst: &Instance, limit: usize) -> Result<Solution, SolverError> {
    match inst.kind() {
        Kind::Tmc | Kind::Utmc => exact_tmc(inst, limit),
        Kind::Cfl | Kind::Ufl => exact_cfl(inst, limit),
        Kind::Cflmc => exact_cflmc(inst, limit.min(CFLMC_ENUMERATION_LIMIT)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Instance {
        Instance::tmc(&[5], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap()
    }

    #[test]
    fn t1_optimum() {
        let sol = exact_tmc(&t1(), ENUMERATION_LIMIT).unwrap();
        assert_eq!(sol.objective, 5);
        assert_eq!(sol.unserved, [1].into());
    }

    #[test]
    fn zero_penalties_leave_everyone_unserved() {
        let inst = Instance::tmc(&[5], &[(3, 0), (4, 0)], vec![vec![1, 3]]).unwrap();
        let sol = exact_tmc(&inst, ENUMERATION_LIMIT).unwrap();
        assert_eq!(sol.objective, 0);
        assert_eq!(sol.unserved, [0, 1].into());
    }

    #[test]
    fn single_client_serve_or_pay() {
        // serving costs 2 * 3 = 6
        let cheap = Instance::tmc(&[4], &[(2, 5)], vec![vec![3]]).unwrap();
        assert_eq!(exact_tmc(&cheap, 16).unwrap().unserved, [0].into());
        let dear = Instance::tmc(&[4], &[(2, 7)], vec![vec![3]]).unwrap();
        let sol = exact_tmc(&dear, 16).unwrap();
        assert!(sol.unserved.is_empty());
        assert_eq!(sol.objective, 6);
    }

    #[test]
    fn set_cover_embedding() {
        // universe {0,1,2}; subsets {0,1}, {1,2}, {2}
        let costs = vec![vec![0, 0, 2], vec![2, 0, 0], vec![2, 2, 0]];
        let inst = Instance::ufl(&[(3, 1), (3, 1), (3, 1)], &[1, 1, 1], costs).unwrap();
        let sol = exact_cfl(&inst, 16).unwrap();
        assert_eq!(sol.objective, 2);
        assert_eq!(sol.open, [0, 1].into());
    }

    #[test]
    fn free_facilities_give_transport_optimum() {
        let inst = Instance::cfl(&[(5, 0), (5, 0)], &[3, 4], vec![vec![1, 9], vec![9, 1]]).unwrap();
        assert_eq!(exact_cfl(&inst, 16).unwrap().objective, 7);
    }

    #[test]
    fn cflmc_mixed_instance() {
        let inst = Instance::cflmc(&[(5, 2)], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
        let sol = exact_cflmc(&inst, 10).unwrap();
        assert_eq!(sol.objective, 7);
        assert_eq!(sol.open, [0].into());
        assert_eq!(sol.unserved, [1].into());
    }

    #[test]
    fn limits_and_kinds() {
        assert!(matches!(
            exact_tmc(&t1(), 1),
            Err(SolverError::TooLarge { .. })
        ));
        assert!(matches!(
            exact_cfl(&t1(), 16),
            Err(SolverError::WrongKind { .. })
        ));
        let infeasible = Instance::cfl(&[(1, 0)], &[2], vec![vec![1]]).unwrap();
        assert!(matches!(
            exact_cfl(&infeasible, 16),
            Err(SolverError::Infeasible { .. })
        ));
    }
}
