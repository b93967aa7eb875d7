use std::collections::{BTreeSet, HashMap};

use crate::model::{feasible_cfl, Instance, Kind, Solution};
use crate::transport::{min_cost_transport, TransportResult};

use super::{SolverError, SolverParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Open(usize),
    Close(usize),
    Swap { close: usize, open: usize },
}

struct Evaluator<'a> {
    inst: &'a Instance,
    demands: Vec<i64>,
    cache: HashMap<Vec<bool>, Option<(i64, TransportResult)>>,
}

impl<'a> Evaluator<'a> {
    /// Opening costs plus optimal transport from the open set, `None` when
    /// the open set cannot cover demand.
    fn value(&mut self, open: &[bool]) -> Result<Option<i64>, SolverError> {
        if let Some(hit) = self.cache.get(open) {
            return Ok(hit.as_ref().map(|(v, _)| *v));
        }
        let supplies: Vec<i64> = open
            .iter()
            .enumerate()
            .map(|(i, &o)| if o { self.inst.capacity(i) } else { 0 })
            .collect();
        let t = min_cost_transport(&supplies, &self.demands, self.inst.costs())?;
        let entry = t.feasible.then(|| {
            let opening: i64 = (0..open.len())
                .filter(|&i| open[i])
                .map(|i| self.inst.opening_cost(i))
                .sum();
            (opening + t.total_cost, t)
        });
        let value = entry.as_ref().map(|(v, _)| *v);
        self.cache.insert(open.to_vec(), entry);
        Ok(value)
    }

    fn flows(&self, open: &[bool]) -> &TransportResult {
        &self.cache[open].as_ref().expect("evaluated feasible set").1
    }
}

fn apply(open: &mut [bool], mv: Move) {
    match mv {
        Move::Open(i) => open[i] = true,
        Move::Close(i) => open[i] = false,
        Move::Swap { close, open: o } => {
            open[close] = false;
            open[o] = true;
        }
    }
}

/// Local search like [`local_search_cfl`], also returning the objective
/// after the start and after every accepted move.
pub fn local_search_cfl_with_history(
    inst: &Instance,
    params: &SolverParams,
) -> Result<(Solution, Vec<i64>), SolverError> {
    if !matches!(inst.kind(), Kind::Cfl | Kind::Ufl) {
        return Err(SolverError::WrongKind {
            expected: "cfl or ufl",
            found: inst.kind(),
        });
    }
    if !feasible_cfl(inst)? {
        return Err(SolverError::Infeasible {
            demand: inst.total_demand(),
            supply: inst.total_supply(),
        });
    }
    let m = inst.m();
    let mut eval = Evaluator {
        inst,
        demands: inst.demands(),
        cache: HashMap::new(),
    };
    let mut open = vec![true; m];
    let mut current = eval.value(&open)?.expect("all-open is feasible");
    let mut history = vec![current];
    let hood = params.neighborhood;

    for _ in 0..params.max_iterations.max(1) {
        let mut moves = Vec::new();
        if hood.opens() {
            moves.extend((0..m).filter(|&i| !open[i]).map(Move::Open));
        }
        if hood.closes() {
            moves.extend((0..m).filter(|&i| open[i]).map(Move::Close));
        }
        if hood.swaps() {
            for close in (0..m).filter(|&i| open[i]) {
                for o in (0..m).filter(|&i| !open[i]) {
                    moves.push(Move::Swap { close, open: o });
                }
            }
        }
        let mut best: Option<(i64, Move)> = None;
        for mv in moves {
            let mut candidate = open.clone();
            apply(&mut candidate, mv);
            if let Some(v) = eval.value(&candidate)? {
                if v < current && best.is_none_or(|(b, _)| v < b) {
                    best = Some((v, mv));
                }
            }
        }
        match best {
            Some((v, mv)) => {
                apply(&mut open, mv);
                current = v;
                history.push(v);
            }
            None => break,
        }
    }

    let flows = &eval.flows(&open).flows;
    let open_set: BTreeSet<usize> = (0..m).filter(|&i| open[i]).collect();
    let sol = Solution::from_flow_matrix(flows, BTreeSet::new(), open_set)
        .evaluated(inst)
        .map_err(SolverError::Invalid)?;
    debug_assert_eq!(sol.objective, current);
    Ok((sol, history))
}

/// Best-improvement local search over open/close/swap moves, starting from
/// every facility open. Each candidate open set is priced by an exact
/// transportation solve.
pub fn local_search_cfl(inst: &Instance, params: &SolverParams) -> Result<Solution, SolverError> {
    local_search_cfl_with_history(inst, params).map(|(sol, _)| sol)
}
