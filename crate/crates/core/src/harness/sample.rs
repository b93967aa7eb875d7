use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{Instance, Solution};

/// Random feasible (not necessarily good) solution of any instance.
///
/// Unserved clients and open facilities are drawn at random, repaired until
/// the open capacity covers the served demand, and each served client's
/// demand is split in random chunks over facilities with spare capacity.
/// Returns `None` only for facility location instances that are infeasible.
pub fn sample_feasible_solution<R: Rng>(inst: &Instance, rng: &mut R) -> Option<Solution> {
    let (m, n) = (inst.m(), inst.n());
    let kind = inst.kind();

    let mut unserved: BTreeSet<usize> = BTreeSet::new();
    if kind.has_penalties() {
        for j in 0..n {
            if inst.demand(j) > 0 && rng.gen_ratio(1, 3) {
                unserved.insert(j);
            }
        }
    }
    let mut open: BTreeSet<usize> = BTreeSet::new();
    if kind.has_opening_costs() {
        for i in 0..m {
            if rng.gen_bool(0.5) {
                open.insert(i);
            }
        }
    }
    let usable = |open: &BTreeSet<usize>| -> i64 {
        (0..m)
            .filter(|i| !kind.has_opening_costs() || open.contains(i))
            .map(|i| inst.capacity(i))
            .sum()
    };
    let served_demand = |unserved: &BTreeSet<usize>| -> i64 {
        (0..n)
            .filter(|j| !unserved.contains(j))
            .map(|j| inst.demand(j))
            .sum()
    };

    while usable(&open) < served_demand(&unserved) {
        let closed: Vec<usize> = if kind.has_opening_costs() {
            (0..m).filter(|i| !open.contains(i)).collect()
        } else {
            Vec::new()
        };
        if let Some(&i) = closed.choose(rng) {
            open.insert(i);
            continue;
        }
        if !kind.has_penalties() {
            return None;
        }
        let served: Vec<usize> = (0..n)
            .filter(|&j| inst.demand(j) > 0 && !unserved.contains(&j))
            .collect();
        let &j = served.choose(rng).expect("positive served demand remains");
        unserved.insert(j);
    }

    let mut spare: Vec<i64> = (0..m)
        .map(|i| {
            if !kind.has_opening_costs() || open.contains(&i) {
                inst.capacity(i)
            } else {
                0
            }
        })
        .collect();
    let mut x = vec![vec![0i64; n]; m];
    let mut order: Vec<usize> = (0..n).filter(|j| !unserved.contains(j)).collect();
    order.shuffle(rng);
    for j in order {
        let mut left = inst.demand(j);
        while left > 0 {
            let candidates: Vec<usize> = (0..m).filter(|&i| spare[i] > 0).collect();
            let &i = candidates
                .choose(rng)
                .expect("spare capacity covers demand");
            let amount = rng.gen_range(1..=left.min(spare[i]));
            x[i][j] += amount;
            spare[i] -= amount;
            left -= amount;
        }
    }
    let sol = Solution::from_flow_matrix(&x, unserved, open)
        .evaluated(inst)
        .expect("sampled solution is feasible");
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate_general_instance, GenParams};
    use crate::model::{verify, Kind};
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    #[test]
    fn samples_are_feasible_for_every_kind() {
        let mut rng = SplitMix64::seed_from_u64(5);
        for kind in [Kind::Tmc, Kind::Cfl, Kind::Ufl, Kind::Utmc, Kind::Cflmc] {
            for seed in 0..20 {
                let mut p = GenParams::new(kind, 3, 3, seed);
                p.caps.capacity = 20;
                let inst = generate_general_instance(&p).unwrap();
                let sol = sample_feasible_solution(&inst, &mut rng).unwrap();
                assert!(verify(&inst, &sol).ok, "{kind} seed {seed}");
            }
        }
    }
}
