use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::model::{Client, Facility, Instance, Kind};

use super::HarnessError;

/// Inclusive upper bounds for sampled values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueCaps {
    pub capacity: i64,
    pub demand: i64,
    pub penalty: i64,
    pub opening_cost: i64,
    /// Unit cost bound for general (non-metric) instances.
    #[serde(default)]
    pub cost: i64,
}

impl Default for ValueCaps {
    fn default() -> Self {
        ValueCaps {
            capacity: 5,
            demand: 5,
            penalty: 5,
            opening_cost: 5,
            cost: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub kind: Kind,
    pub m: usize,
    pub n: usize,
    /// Points are sampled from `[0, grid]^2`.
    pub grid: i64,
    pub caps: ValueCaps,
    pub seed: u64,
}

impl GenParams {
    pub fn new(kind: Kind, m: usize, n: usize, seed: u64) -> Self {
        GenParams {
            kind,
            m,
            n,
            grid: 2,
            caps: ValueCaps::default(),
            seed,
        }
    }

    fn validate(&self) -> Result<(), HarnessError> {
        let c = &self.caps;
        if [c.capacity, c.demand, c.penalty, c.opening_cost, c.cost]
            .iter()
            .any(|&v| v < 0)
        {
            return Err(HarnessError::InvalidParams(
                "value caps must be non-negative".into(),
            ));
        }
        if self.grid < 1 {
            return Err(HarnessError::InvalidParams(
                "grid must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

struct Sampled {
    facilities: Vec<Facility>,
    clients: Vec<Client>,
}

/// Facility attributes first, then client attributes, in index order.
fn sample_attributes(params: &GenParams, rng: &mut SplitMix64) -> Sampled {
    let kind = params.kind;
    let caps = &params.caps;
    let facilities = (0..params.m)
        .map(|_| {
            let capacity = rng.gen_range(0..=caps.capacity);
            let opening_cost = kind
                .has_opening_costs()
                .then(|| rng.gen_range(0..=caps.opening_cost));
            Facility {
                capacity,
                opening_cost,
            }
        })
        .collect();
    let clients = (0..params.n)
        .map(|_| {
            let demand = rng.gen_range(0..=caps.demand);
            let penalty = kind
                .has_penalties()
                .then(|| rng.gen_range(0..=caps.penalty));
            Client { demand, penalty }
        })
        .collect();
    Sampled {
        facilities,
        clients,
    }
}

/// Uncapacitated kinds get capacity = total demand; capacitated facility
/// location kinds get the last facility scaled up to cover total demand.
fn enforce_capacities(params: &GenParams, sampled: &mut Sampled) -> Result<(), HarnessError> {
    let demand: i64 = sampled.clients.iter().map(|c| c.demand).sum();
    if params.kind.is_uncapacitated() {
        for f in &mut sampled.facilities {
            f.capacity = demand;
        }
        return Ok(());
    }
    if !params.kind.has_opening_costs() {
        return Ok(());
    }
    let supply: i64 = sampled.facilities.iter().map(|f| f.capacity).sum();
    if supply >= demand {
        return Ok(());
    }
    let deficit = demand - supply;
    let Some(last) = sampled.facilities.last_mut() else {
        return Err(HarnessError::ImpossibleCaps(format!(
            "no facility can cover total demand {demand}"
        )));
    };
    last.capacity += deficit;
    if last.capacity > params.caps.capacity {
        return Err(HarnessError::ImpossibleCaps(format!(
            "covering total demand {demand} needs capacity {} above the cap {}",
            last.capacity, params.caps.capacity
        )));
    }
    Ok(())
}

/// Facilities and clients at integer grid points, unit cost = L1 distance.
pub fn generate_metric_instance(params: &GenParams) -> Result<Instance, HarnessError> {
    params.validate()?;
    let mut rng = SplitMix64::seed_from_u64(params.seed);
    let grid = params.grid;
    let point = |rng: &mut SplitMix64| (rng.gen_range(0..=grid), rng.gen_range(0..=grid));
    let fac_points: Vec<(i64, i64)> = (0..params.m).map(|_| point(&mut rng)).collect();
    let cli_points: Vec<(i64, i64)> = (0..params.n).map(|_| point(&mut rng)).collect();
    let mut sampled = sample_attributes(params, &mut rng);
    enforce_capacities(params, &mut sampled)?;
    let costs = fac_points
        .iter()
        .map(|a| {
            cli_points
                .iter()
                .map(|b| (a.0 - b.0).abs() + (a.1 - b.1).abs())
                .collect()
        })
        .collect();
    Ok(Instance::new(
        params.kind,
        sampled.facilities,
        sampled.clients,
        costs,
        true,
    )?)
}

/// Independent uniform unit costs in `[0, caps.cost]`.
pub fn generate_general_instance(params: &GenParams) -> Result<Instance, HarnessError> {
    params.validate()?;
    let mut rng = SplitMix64::seed_from_u64(params.seed);
    let mut sampled = sample_attributes(params, &mut rng);
    enforce_capacities(params, &mut sampled)?;
    let costs = (0..params.m)
        .map(|_| {
            (0..params.n)
                .map(|_| rng.gen_range(0..=params.caps.cost))
                .collect()
        })
        .collect();
    Ok(Instance::new(
        params.kind,
        sampled.facilities,
        sampled.clients,
        costs,
        false,
    )?)
}
