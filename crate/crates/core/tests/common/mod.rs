#![allow(dead_code)]

use std::collections::BTreeSet;

use tmcfl::harness::{
    generate_general_instance, generate_metric_instance, GenParams, HarnessError, ValueCaps,
};
use tmcfl::model::{Instance, Kind, Solution};

/// Calls `visit` with every integer flow matrix that ships exactly
/// `demands[j]` to each client and at most `caps[i]` from each facility.
pub fn for_each_flow(caps: &[i64], demands: &[i64], visit: &mut dyn FnMut(&[Vec<i64>])) {
    let (m, n) = (caps.len(), demands.len());
    if m == 0 {
        if demands.iter().all(|&d| d == 0) {
            visit(&[]);
        }
        return;
    }
    let mut x = vec![vec![0i64; n]; m];
    let mut spare = caps.to_vec();
    fill(
        0,
        0,
        demands.first().copied().unwrap_or(0),
        demands,
        &mut spare,
        &mut x,
        visit,
    );
}

fn fill(
    j: usize,
    i: usize,
    left: i64,
    demands: &[i64],
    spare: &mut [i64],
    x: &mut [Vec<i64>],
    visit: &mut dyn FnMut(&[Vec<i64>]),
) {
    let (m, n) = (spare.len(), demands.len());
    if j == n {
        visit(x);
        return;
    }
    if i + 1 == m {
        if left <= spare[i] {
            x[i][j] = left;
            spare[i] -= left;
            let next = demands.get(j + 1).copied().unwrap_or(0);
            fill(j + 1, 0, next, demands, spare, x, visit);
            spare[i] += left;
            x[i][j] = 0;
        }
        return;
    }
    for a in 0..=left.min(spare[i]) {
        x[i][j] = a;
        spare[i] -= a;
        fill(j, i + 1, left - a, demands, spare, x, visit);
        spare[i] += a;
    }
    x[i][j] = 0;
}

fn flow_cost(x: &[Vec<i64>], costs: &[Vec<i64>]) -> i64 {
    x.iter()
        .zip(costs)
        .map(|(row, c)| row.iter().zip(c).map(|(a, b)| a * b).sum::<i64>())
        .sum()
}

/// Cheapest flow by full enumeration, `None` if no flow exists.
pub fn brute_transport(caps: &[i64], demands: &[i64], costs: &[Vec<i64>]) -> Option<i64> {
    let mut best: Option<i64> = None;
    for_each_flow(caps, demands, &mut |x| {
        let v = flow_cost(x, costs);
        best = Some(best.map_or(v, |b| b.min(v)));
    });
    best
}

fn subsets(len: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << len).map(move |mask| (0..len).map(|k| mask >> k & 1 == 1).collect())
}

/// Optimum over every unserved set and open set the instance kind allows.
pub fn brute_optimum(inst: &Instance) -> Option<i64> {
    let (m, n) = (inst.m(), inst.n());
    let kind = inst.kind();
    let unserved_choices: Vec<Vec<bool>> = if kind.has_penalties() {
        subsets(n).collect()
    } else {
        vec![vec![false; n]]
    };
    let open_choices: Vec<Vec<bool>> = if kind.has_opening_costs() {
        subsets(m).collect()
    } else {
        vec![vec![true; m]]
    };
    let mut best: Option<i64> = None;
    for unserved in &unserved_choices {
        let demands: Vec<i64> = (0..n)
            .map(|j| if unserved[j] { 0 } else { inst.demand(j) })
            .collect();
        let penalty: i64 = (0..n)
            .filter(|&j| unserved[j])
            .map(|j| inst.penalty(j))
            .sum();
        for open in &open_choices {
            let caps: Vec<i64> = (0..m)
                .map(|i| if open[i] { inst.capacity(i) } else { 0 })
                .collect();
            let opening: i64 = (0..m)
                .filter(|&i| open[i] && kind.has_opening_costs())
                .map(|i| inst.opening_cost(i))
                .sum();
            if let Some(t) = brute_transport(&caps, &demands, inst.costs()) {
                let v = t + penalty + opening;
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
    }
    best
}

/// Every CFL/UFL solution: each open set with every integer flow that
/// only uses open facilities.
pub fn for_each_cfl_solution(inst: &Instance, visit: &mut dyn FnMut(Solution)) {
    let m = inst.m();
    for open in subsets(m) {
        let caps: Vec<i64> = (0..m)
            .map(|i| if open[i] { inst.capacity(i) } else { 0 })
            .collect();
        let open_set: BTreeSet<usize> = (0..m).filter(|&i| open[i]).collect();
        for_each_flow(&caps, &inst.demands(), &mut |x| {
            visit(Solution::from_flow_matrix(
                x,
                BTreeSet::new(),
                open_set.clone(),
            ));
        });
    }
}

/// Small instance family: m, n in 1..=3 cycling with the seed, all
/// values at most 5.
pub fn small_params(kind: Kind, seed: u64) -> GenParams {
    GenParams {
        kind,
        m: 1 + (seed % 3) as usize,
        n: 1 + (seed / 3 % 3) as usize,
        grid: 2,
        caps: ValueCaps {
            capacity: 5,
            demand: 5,
            penalty: 5,
            opening_cost: 5,
            cost: 5,
        },
        seed,
    }
}

/// First `count` instances of the small family that the generator can
/// produce within the caps, with the number of skipped seeds.
pub fn corpus(kind: Kind, metric: bool, count: usize) -> (Vec<Instance>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    let mut seed = 0;
    while out.len() < count {
        let params = small_params(kind, seed);
        let generated = if metric {
            generate_metric_instance(&params)
        } else {
            generate_general_instance(&params)
        };
        match generated {
            Ok(inst) => out.push(inst),
            Err(HarnessError::ImpossibleCaps(_)) => skipped += 1,
            Err(e) => panic!("generator failed for seed {seed}: {e}"),
        }
        seed += 1;
    }
    (out, skipped)
}
