//! Exact capacitated transportation problem.
//!
//! Successive shortest augmenting paths on the bipartite network
//! `source -> facility -> client -> sink`, with Johnson potentials so every
//! Dijkstra pass runs on non-negative reduced costs. Vertices are scanned in
//! index order and a label is only replaced on strict improvement, which makes
//! the returned optimal flow deterministic.

use thiserror::Error;

use crate::model::{Instance, Solution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransportError {
    #[error(
        "cost matrix is {rows}x{cols} but there are {supplies} supplies and {demands} demands"
    )]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        supplies: usize,
        demands: usize,
    },
    #[error("negative {what} at index {index}")]
    Negative { what: &'static str, index: usize },
    #[error("total demand {demand} exceeds total supply {supply}")]
    Infeasible { demand: i64, supply: i64 },
    #[error("fixed partial solution is inconsistent: {0}")]
    InvalidFixed(String),
    #[error("residual transportation problem is infeasible: demand {demand}, supply {supply}")]
    ResidualInfeasible { demand: i64, supply: i64 },
    #[error("integer overflow in transportation costs")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResult {
    pub feasible: bool,
    /// `m x n`; all zero when infeasible.
    pub flows: Vec<Vec<i64>>,
    pub total_cost: i64,
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

struct Network {
    adj: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> (usize, usize) {
        let fwd = self.adj[from].len();
        let rev = self.adj[to].len();
        self.adj[from].push(Arc { to, rev, cap, cost });
        self.adj[to].push(Arc {
            to: from,
            rev: fwd,
            cap: 0,
            cost: -cost,
        });
        (from, fwd)
    }

    /// Push up to `amount` units from `source` to `sink`; returns units sent.
    fn successive_shortest_paths(&mut self, source: usize, sink: usize, amount: i64) -> i64 {
        let nodes = self.adj.len();
        let mut potential = vec![0i64; nodes];
        let mut sent = 0;
        while sent < amount {
            let mut dist = vec![i64::MAX; nodes];
            let mut pred: Vec<Option<(usize, usize)>> = vec![None; nodes];
            let mut done = vec![false; nodes];
            dist[source] = 0;
            loop {
                let mut u = None;
                for v in 0..nodes {
                    if !done[v] && dist[v] != i64::MAX && u.is_none_or(|b: usize| dist[v] < dist[b])
                    {
                        u = Some(v);
                    }
                }
                let Some(u) = u else { break };
                done[u] = true;
                for (k, arc) in self.adj[u].iter().enumerate() {
                    if arc.cap == 0 || done[arc.to] {
                        continue;
                    }
                    let reduced = arc.cost + potential[u] - potential[arc.to];
                    debug_assert!(reduced >= 0, "negative reduced cost");
                    let cand = dist[u] + reduced;
                    if cand < dist[arc.to] {
                        dist[arc.to] = cand;
                        pred[arc.to] = Some((u, k));
                    }
                }
            }
            if dist[sink] == i64::MAX {
                break;
            }
            for v in 0..nodes {
                if dist[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut bottleneck = amount - sent;
            let mut v = sink;
            while let Some((u, k)) = pred[v] {
                bottleneck = bottleneck.min(self.adj[u][k].cap);
                v = u;
            }
            let mut v = sink;
            while let Some((u, k)) = pred[v] {
                let rev = self.adj[u][k].rev;
                self.adj[u][k].cap -= bottleneck;
                self.adj[v][rev].cap += bottleneck;
                v = u;
            }
            sent += bottleneck;
        }
        sent
    }
}

fn check_inputs(
    supplies: &[i64],
    demands: &[i64],
    costs: &[Vec<i64>],
) -> Result<(), TransportError> {
    let mismatch = || TransportError::DimensionMismatch {
        rows: costs.len(),
        cols: costs.first().map_or(0, Vec::len),
        supplies: supplies.len(),
        demands: demands.len(),
    };
    if costs.len() != supplies.len() || costs.iter().any(|r| r.len() != demands.len()) {
        return Err(mismatch());
    }
    if let Some(index) = supplies.iter().position(|&s| s < 0) {
        return Err(TransportError::Negative {
            what: "supply",
            index,
        });
    }
    if let Some(index) = demands.iter().position(|&d| d < 0) {
        return Err(TransportError::Negative {
            what: "demand",
            index,
        });
    }
    if let Some(index) = costs.iter().flatten().position(|&c| c < 0) {
        return Err(TransportError::Negative {
            what: "cost",
            index,
        });
    }
    Ok(())
}

fn total(values: &[i64]) -> Result<i64, TransportError> {
    values
        .iter()
        .try_fold(0i64, |acc, &v| acc.checked_add(v))
        .ok_or(TransportError::Overflow)
}

/// Minimum-cost flow shipping every demand within the supplies.
///
/// Returns `feasible = false` (and no flow) when total demand exceeds total
/// supply.
pub fn min_cost_transport(
    supplies: &[i64],
    demands: &[i64],
    costs: &[Vec<i64>],
) -> Result<TransportResult, TransportError> {
    check_inputs(supplies, demands, costs)?;
    let (m, n) = (supplies.len(), demands.len());
    let demand = total(demands)?;
    let supply = total(supplies)?;
    if demand > supply {
        return Ok(TransportResult {
            feasible: false,
            flows: vec![vec![0; n]; m],
            total_cost: 0,
        });
    }
    // Path lengths and the objective are bounded by max cost times
    // max(total demand, number of arcs on a simple path).
    let max_cost = costs.iter().flatten().copied().max().unwrap_or(0);
    let span = demand.max(2 * (m + n) as i64 + 2);
    max_cost.checked_mul(span).ok_or(TransportError::Overflow)?;

    let source = m + n;
    let sink = m + n + 1;
    let mut net = Network::new(m + n + 2);
    for (i, &s) in supplies.iter().enumerate() {
        net.add_arc(source, i, s, 0);
    }
    let mut handles = vec![vec![(0, 0); n]; m];
    for i in 0..m {
        for j in 0..n {
            handles[i][j] = net.add_arc(i, m + j, demands[j], costs[i][j]);
        }
    }
    for (j, &d) in demands.iter().enumerate() {
        net.add_arc(m + j, sink, d, 0);
    }
    let sent = net.successive_shortest_paths(source, sink, demand);
    debug_assert_eq!(sent, demand);

    let mut flows = vec![vec![0; n]; m];
    let mut total_cost = 0i64;
    for i in 0..m {
        for j in 0..n {
            let (u, k) = handles[i][j];
            let x = demands[j] - net.adj[u][k].cap;
            flows[i][j] = x;
            total_cost += x * costs[i][j];
        }
    }
    Ok(TransportResult {
        feasible: true,
        flows,
        total_cost,
    })
}

/// Maximum total cost over flows serving all demand, by cost complementation.
pub fn max_value_transport(
    supplies: &[i64],
    demands: &[i64],
    costs: &[Vec<i64>],
) -> Result<i64, TransportError> {
    check_inputs(supplies, demands, costs)?;
    let demand = total(demands)?;
    let supply = total(supplies)?;
    if demand > supply {
        return Err(TransportError::Infeasible { demand, supply });
    }
    let ceiling = costs.iter().flatten().copied().max().unwrap_or(0);
    let complemented: Vec<Vec<i64>> = costs
        .iter()
        .map(|row| row.iter().map(|&c| ceiling - c).collect())
        .collect();
    let min = min_cost_transport(supplies, demands, &complemented)?;
    let bound = ceiling
        .checked_mul(demand)
        .ok_or(TransportError::Overflow)?;
    Ok(bound - min.total_cost)
}

/// Optimal completion of a partial solution.
///
/// Remaining supplies are capacities minus fixed shipments; for kinds with
/// opening costs only facilities in `fixed.open` may ship. Remaining demands
/// are unmet demands of clients not flagged unserved. The returned flows are
/// the additional shipments only.
pub fn residual_transport(
    inst: &Instance,
    fixed: &Solution,
) -> Result<TransportResult, TransportError> {
    let (m, n) = (inst.m(), inst.n());
    if let Some(f) = fixed
        .flows
        .iter()
        .find(|f| f.facility >= m || f.client >= n || f.amount < 0)
    {
        return Err(TransportError::InvalidFixed(format!(
            "flow ({}, {}, {}) is out of range or negative",
            f.facility, f.client, f.amount
        )));
    }
    let shipped = fixed.shipped(m);
    let received = fixed.received(n);
    let restrict = inst.kind().has_opening_costs();
    let mut supplies = Vec::with_capacity(m);
    for i in 0..m {
        let left = inst.capacity(i) - shipped[i];
        if left < 0 {
            return Err(TransportError::InvalidFixed(format!(
                "facility {i} ships {} over capacity {}",
                shipped[i],
                inst.capacity(i)
            )));
        }
        if restrict && !fixed.open.contains(&i) {
            if shipped[i] > 0 {
                return Err(TransportError::InvalidFixed(format!(
                    "closed facility {i} ships"
                )));
            }
            supplies.push(0);
        } else {
            supplies.push(left);
        }
    }
    let mut demands = Vec::with_capacity(n);
    for j in 0..n {
        if fixed.unserved.contains(&j) {
            if received[j] > 0 {
                return Err(TransportError::InvalidFixed(format!(
                    "unserved client {j} receives flow"
                )));
            }
            demands.push(0);
        } else {
            let left = inst.demand(j) - received[j];
            if left < 0 {
                return Err(TransportError::InvalidFixed(format!(
                    "client {j} is over-served"
                )));
            }
            demands.push(left);
        }
    }
    let result = min_cost_transport(&supplies, &demands, inst.costs())?;
    if !result.feasible {
        return Err(TransportError::ResidualInfeasible {
            demand: demands.iter().sum(),
            supply: supplies.iter().sum(),
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Flow;

    #[test]
    fn diagonal_example() {
        let r = min_cost_transport(&[5, 5], &[3, 4], &[vec![1, 9], vec![9, 1]]).unwrap();
        assert!(r.feasible);
        assert_eq!(r.total_cost, 7);
        assert_eq!(r.flows, vec![vec![3, 0], vec![0, 4]]);
    }

    #[test]
    fn zero_demand() {
        let r = min_cost_transport(&[2, 3], &[0, 0], &[vec![4, 4], vec![1, 1]]).unwrap();
        assert!(r.feasible);
        assert_eq!(r.total_cost, 0);
        assert!(r.flows.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn infeasible_when_demand_exceeds_supply() {
        let r = min_cost_transport(&[2], &[3], &[vec![1]]).unwrap();
        assert!(!r.feasible);
        assert!(matches!(
            max_value_transport(&[2], &[3], &[vec![1]]),
            Err(TransportError::Infeasible { .. })
        ));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            min_cost_transport(&[1, 1], &[1], &[vec![1]]),
            Err(TransportError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn capacity_forces_expensive_route() {
        // client needs 4, cheap facility only has 1
        let r = min_cost_transport(&[1, 10], &[4], &[vec![1], vec![5]]).unwrap();
        assert_eq!(r.total_cost, 1 + 3 * 5);
    }

    #[test]
    fn needs_reverse_arcs() {
        // greedy on the first client would block the second one
        let r = min_cost_transport(&[1, 1], &[1, 1], &[vec![1, 2], vec![2, 100]]).unwrap();
        assert_eq!(r.total_cost, 4);
        assert_eq!(r.flows, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn max_value_examples() {
        assert_eq!(max_value_transport(&[5], &[2], &[vec![4]]), Ok(8));
        assert_eq!(
            max_value_transport(&[2, 2], &[2], &[vec![1], vec![3]]),
            Ok(6)
        );
        assert_eq!(
            max_value_transport(&[3, 4], &[2, 3], &[vec![6, 6], vec![6, 6]]),
            Ok(30)
        );
    }

    fn t1_reduced() -> Instance {
        // facilities: original, dummy of client 0, dummy of client 1
        Instance::cfl(
            &[(5, 0), (3, 10), (4, 2)],
            &[3, 4],
            vec![vec![1, 3], vec![0, 4], vec![4, 0]],
        )
        .unwrap()
    }

    #[test]
    fn residual_after_fixed_dummy() {
        let fixed = Solution {
            flows: vec![Flow::from((2, 1, 4))],
            open: [0, 2].into(),
            ..Default::default()
        };
        let r = residual_transport(&t1_reduced(), &fixed).unwrap();
        assert_eq!(r.total_cost, 3);
        assert_eq!(r.flows[0], vec![3, 0]);
    }

    #[test]
    fn residual_of_complete_and_empty() {
        let inst = Instance::tmc(&[5, 5], &[(3, 9), (4, 9)], vec![vec![1, 9], vec![9, 1]]).unwrap();
        let empty = residual_transport(&inst, &Solution::default()).unwrap();
        let direct = min_cost_transport(&[5, 5], &[3, 4], inst.costs()).unwrap();
        assert_eq!(empty, direct);

        let complete =
            Solution::from_flow_matrix(&direct.flows, Default::default(), Default::default());
        let rest = residual_transport(&inst, &complete).unwrap();
        assert_eq!(rest.total_cost, 0);
        assert!(rest.flows.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn residual_detects_infeasibility() {
        let fixed = Solution {
            open: [1].into(),
            ..Default::default()
        };
        assert!(matches!(
            residual_transport(&t1_reduced(), &fixed),
            Err(TransportError::ResidualInfeasible { .. })
        ));
    }
}
