use std::collections::BTreeSet;

use crate::model::{Instance, Kind, Solution};

use super::SolverError;

/// Ratio `num / den` compared exactly.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    fn less_than(self, other: Ratio) -> bool {
        self.num * other.den < other.num * self.den
    }
}

/// Greedy star selection for UFL.
///
/// Each round picks the facility and the prefix of its unassigned clients
/// (sorted by demand-weighted connection cost) with the smallest average
/// cost, counting the opening cost only if the facility is still closed.
/// Once every client is assigned, each client is moved to its cheapest open
/// facility.
pub fn greedy_ufl(inst: &Instance) -> Result<Solution, SolverError> {
    if inst.kind() != Kind::Ufl {
        return Err(SolverError::WrongKind {
            expected: "ufl",
            found: inst.kind(),
        });
    }
    let (m, n) = (inst.m(), inst.n());
    if m == 0 && n > 0 {
        return Err(SolverError::Infeasible {
            demand: inst.total_demand(),
            supply: 0,
        });
    }
    let connection = |i: usize, j: usize| inst.cost(i, j) as i128 * inst.demand(j) as i128;

    let mut open = vec![false; m];
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut remaining = n;
    while remaining > 0 {
        let mut best: Option<(Ratio, usize, usize, Vec<usize>)> = None;
        for i in 0..m {
            let mut pending: Vec<usize> = (0..n).filter(|&j| assigned[j].is_none()).collect();
            pending.sort_by_key(|&j| (connection(i, j), j));
            let fixed = if open[i] {
                0
            } else {
                inst.opening_cost(i) as i128
            };
            let mut sum = fixed;
            for (k, &j) in pending.iter().enumerate() {
                sum += connection(i, j);
                let size = k + 1;
                let ratio = Ratio {
                    num: sum,
                    den: size as i128,
                };
                // strictly better ratio wins; on ties the larger star wins
                let take = match &best {
                    None => true,
                    Some((b, _, bsize, _)) => {
                        ratio.less_than(*b) || (!b.less_than(ratio) && size > *bsize)
                    }
                };
                if take {
                    best = Some((ratio, i, size, pending[..size].to_vec()));
                }
            }
        }
        let (_, i, _, star) = best.expect("some facility exists");
        open[i] = true;
        for j in star {
            assigned[j] = Some(i);
            remaining -= 1;
        }
    }

    let mut x = vec![vec![0i64; n]; m];
    for j in 0..n {
        let target = (0..m)
            .filter(|&i| open[i])
            .min_by_key(|&i| (inst.cost(i, j), i))
            .or(assigned[j])
            .expect("every client assigned");
        x[target][j] = inst.demand(j);
    }
    let open_set: BTreeSet<usize> = (0..m).filter(|&i| open[i]).collect();
    Solution::from_flow_matrix(&x, BTreeSet::new(), open_set)
        .evaluated(inst)
        .map_err(SolverError::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_facility_serves_everyone() {
        let inst = Instance::ufl(&[(5, 5)], &[2, 3], vec![vec![1, 2]]).unwrap();
        let sol = greedy_ufl(&inst).unwrap();
        assert_eq!(sol.open, [0].into());
        assert_eq!(sol.objective, 5 + 2 + 6);
    }

    #[test]
    fn free_facilities_give_nearest_assignment() {
        let costs = vec![vec![1, 4, 2], vec![3, 1, 2], vec![2, 2, 1]];
        let inst = Instance::ufl(&[(6, 0), (6, 0), (6, 0)], &[1, 2, 3], costs.clone()).unwrap();
        let sol = greedy_ufl(&inst).unwrap();
        let nearest: i64 = (0..3)
            .map(|j| (0..3).map(|i| costs[i][j]).min().unwrap() * inst.demand(j))
            .sum();
        assert_eq!(sol.objective, nearest);
    }

    #[test]
    fn set_cover_embedding_picks_a_cover() {
        // universe {0,1,2}; subsets {0,1}, {1,2}, {2}
        let costs = vec![vec![0, 0, 2], vec![2, 0, 0], vec![2, 2, 0]];
        let inst = Instance::ufl(&[3, 3, 3].map(|c| (c, 1)), &[1, 1, 1], costs).unwrap();
        let sol = greedy_ufl(&inst).unwrap();
        assert_eq!(sol.objective, 2);
    }

    #[test]
    fn rejects_capacitated_kind() {
        let inst = Instance::cfl(&[(5, 1)], &[2], vec![vec![1]]).unwrap();
        assert!(matches!(
            greedy_ufl(&inst),
            Err(SolverError::WrongKind { .. })
        ));
    }
}
