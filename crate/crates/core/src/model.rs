//! Instances, solutions, validation and objective evaluation.
//!
//! All quantities are non-negative 64-bit integers. Construction validates
//! every instance once; afterwards an [`Instance`] is immutable, so that
//! reduction certificates can safely refer to its indices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::transport::{self, TransportError};

/// Problem variant an instance encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Transportation problem with market choice.
    Tmc,
    /// Capacitated facility location.
    Cfl,
    /// Uncapacitated facility location.
    Ufl,
    /// Uncapacitated transportation problem with market choice.
    Utmc,
    /// Capacitated facility location with market choice.
    Cflmc,
}

impl Kind {
    /// Clients carry a penalty and may be left unserved.
    pub fn has_penalties(self) -> bool {
        matches!(self, Kind::Tmc | Kind::Utmc | Kind::Cflmc)
    }

    /// Facilities carry an opening cost and must be opened to ship.
    pub fn has_opening_costs(self) -> bool {
        matches!(self, Kind::Cfl | Kind::Ufl | Kind::Cflmc)
    }

    pub fn is_uncapacitated(self) -> bool {
        matches!(self, Kind::Ufl | Kind::Utmc)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Tmc => "tmc",
            Kind::Cfl => "cfl",
            Kind::Ufl => "ufl",
            Kind::Utmc => "utmc",
            Kind::Cflmc => "cflmc",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Facility {
    pub capacity: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opening_cost: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Client {
    pub demand: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalty: Option<i64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("{what} must be non-negative, got {value}")]
    Negative { what: String, value: i64 },
    #[error("cost matrix has {rows} rows but there are {facilities} facilities")]
    RowCount { rows: usize, facilities: usize },
    #[error("cost row {row} has {len} entries but there are {clients} clients")]
    RowLength {
        row: usize,
        len: usize,
        clients: usize,
    },
    #[error("{what} {index} of a {kind} instance must have `{field}`")]
    MissingField {
        kind: Kind,
        what: &'static str,
        index: usize,
        field: &'static str,
    },
    #[error("{what} {index} of a {kind} instance must not have `{field}`")]
    UnexpectedField {
        kind: Kind,
        what: &'static str,
        index: usize,
        field: &'static str,
    },
    #[error("facility {facility} has capacity {capacity} below the total demand {total} of an uncapacitated instance")]
    NotUncapacitated {
        facility: usize,
        capacity: i64,
        total: i64,
    },
    #[error("cost matrix violates the four-point triangle inequality")]
    NotMetric,
    #[error("operation expects {expected}, got a {found} instance")]
    WrongKind { expected: &'static str, found: Kind },
    #[error("total demand {demand} exceeds total supply {supply}")]
    Infeasible { demand: i64, supply: i64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// A validated problem instance.
///
/// `costs[i][j]` is the per-unit cost of shipping from facility `i` to
/// client `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    kind: Kind,
    facilities: Vec<Facility>,
    clients: Vec<Client>,
    costs: Vec<Vec<i64>>,
    metric: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: Kind,
    facilities: Vec<Facility>,
    clients: Vec<Client>,
    costs: Vec<Vec<i64>>,
    #[serde(default)]
    metric: bool,
}

impl TryFrom<RawInstance> for Instance {
    type Error = ModelError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        Instance::new(raw.kind, raw.facilities, raw.clients, raw.costs, raw.metric)
    }
}

fn non_negative(what: impl FnOnce() -> String, value: i64) -> Result<(), ModelError> {
    if value < 0 {
        Err(ModelError::Negative {
            what: what(),
            value,
        })
    } else {
        Ok(())
    }
}

fn checked_sum(
    values: impl IntoIterator<Item = i64>,
    what: &'static str,
) -> Result<i64, ModelError> {
    values
        .into_iter()
        .try_fold(0i64, |acc, v| acc.checked_add(v))
        .ok_or(ModelError::Overflow(what))
}

impl Instance {
    pub fn new(
        kind: Kind,
        facilities: Vec<Facility>,
        clients: Vec<Client>,
        costs: Vec<Vec<i64>>,
        metric: bool,
    ) -> Result<Self, ModelError> {
        if costs.len() != facilities.len() {
            return Err(ModelError::RowCount {
                rows: costs.len(),
                facilities: facilities.len(),
            });
        }
        for (row, entries) in costs.iter().enumerate() {
            if entries.len() != clients.len() {
                return Err(ModelError::RowLength {
                    row,
                    len: entries.len(),
                    clients: clients.len(),
                });
            }
            for (col, &c) in entries.iter().enumerate() {
                non_negative(|| format!("cost[{row}][{col}]"), c)?;
            }
        }
        for (index, f) in facilities.iter().enumerate() {
            non_negative(|| format!("capacity of facility {index}"), f.capacity)?;
            match (kind.has_opening_costs(), f.opening_cost) {
                (true, None) => {
                    return Err(ModelError::MissingField {
                        kind,
                        what: "facility",
                        index,
                        field: "opening_cost",
                    })
                }
                (false, Some(_)) => {
                    return Err(ModelError::UnexpectedField {
                        kind,
                        what: "facility",
                        index,
                        field: "opening_cost",
                    })
                }
                (_, Some(cost)) => {
                    non_negative(|| format!("opening cost of facility {index}"), cost)?
                }
                (false, None) => {}
            }
        }
        for (index, c) in clients.iter().enumerate() {
            non_negative(|| format!("demand of client {index}"), c.demand)?;
            match (kind.has_penalties(), c.penalty) {
                (true, None) => {
                    return Err(ModelError::MissingField {
                        kind,
                        what: "client",
                        index,
                        field: "penalty",
                    })
                }
                (false, Some(_)) => {
                    return Err(ModelError::UnexpectedField {
                        kind,
                        what: "client",
                        index,
                        field: "penalty",
                    })
                }
                (_, Some(r)) => non_negative(|| format!("penalty of client {index}"), r)?,
                (false, None) => {}
            }
        }

        let total_demand = checked_sum(clients.iter().map(|c| c.demand), "total demand")?;
        checked_sum(facilities.iter().map(|f| f.capacity), "total supply")?;
        checked_sum(clients.iter().filter_map(|c| c.penalty), "total penalty")?;
        checked_sum(
            facilities.iter().filter_map(|f| f.opening_cost),
            "total opening cost",
        )?;
        let max_cost = costs.iter().flatten().copied().max().unwrap_or(0);
        max_cost
            .checked_mul(total_demand)
            .ok_or(ModelError::Overflow("maximum transportation cost"))?;

        if kind.is_uncapacitated() {
            if let Some((facility, f)) = facilities
                .iter()
                .enumerate()
                .find(|(_, f)| f.capacity < total_demand)
            {
                return Err(ModelError::NotUncapacitated {
                    facility,
                    capacity: f.capacity,
                    total: total_demand,
                });
            }
        }
        if metric && !check_metric(&costs) {
            return Err(ModelError::NotMetric);
        }

        Ok(Instance {
            kind,
            facilities,
            clients,
            costs,
            metric,
        })
    }

    /// TMC instance from capacities and `(demand, penalty)` pairs.
    pub fn tmc(
        capacities: &[i64],
        clients: &[(i64, i64)],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::with_penalties(Kind::Tmc, capacities, clients, costs)
    }

    /// UTMC instance; every capacity must cover the total demand.
    pub fn utmc(
        capacities: &[i64],
        clients: &[(i64, i64)],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::with_penalties(Kind::Utmc, capacities, clients, costs)
    }

    /// CFL instance from `(capacity, opening_cost)` pairs and demands.
    pub fn cfl(
        facilities: &[(i64, i64)],
        demands: &[i64],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::with_opening_costs(Kind::Cfl, facilities, demands, costs)
    }

    pub fn ufl(
        facilities: &[(i64, i64)],
        demands: &[i64],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::with_opening_costs(Kind::Ufl, facilities, demands, costs)
    }

    /// CFLMC instance from `(capacity, opening_cost)` and `(demand, penalty)` pairs.
    pub fn cflmc(
        facilities: &[(i64, i64)],
        clients: &[(i64, i64)],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::new(
            Kind::Cflmc,
            facilities
                .iter()
                .map(|&(capacity, f)| Facility {
                    capacity,
                    opening_cost: Some(f),
                })
                .collect(),
            clients
                .iter()
                .map(|&(demand, r)| Client {
                    demand,
                    penalty: Some(r),
                })
                .collect(),
            costs,
            false,
        )
    }

    fn with_penalties(
        kind: Kind,
        capacities: &[i64],
        clients: &[(i64, i64)],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::new(
            kind,
            capacities
                .iter()
                .map(|&capacity| Facility {
                    capacity,
                    opening_cost: None,
                })
                .collect(),
            clients
                .iter()
                .map(|&(demand, r)| Client {
                    demand,
                    penalty: Some(r),
                })
                .collect(),
            costs,
            false,
        )
    }

    fn with_opening_costs(
        kind: Kind,
        facilities: &[(i64, i64)],
        demands: &[i64],
        costs: Vec<Vec<i64>>,
    ) -> Result<Self, ModelError> {
        Self::new(
            kind,
            facilities
                .iter()
                .map(|&(capacity, f)| Facility {
                    capacity,
                    opening_cost: Some(f),
                })
                .collect(),
            demands
                .iter()
                .map(|&demand| Client {
                    demand,
                    penalty: None,
                })
                .collect(),
            costs,
            false,
        )
    }

    /// Copy of this instance with the metric claim set (and verified).
    pub fn claim_metric(mut self, metric: bool) -> Result<Self, ModelError> {
        if metric && !check_metric(&self.costs) {
            return Err(ModelError::NotMetric);
        }
        self.metric = metric;
        Ok(self)
    }

    /// Reinterpret the same data under another kind, revalidating it.
    pub fn relabel(&self, kind: Kind) -> Result<Self, ModelError> {
        Self::new(
            kind,
            self.facilities.clone(),
            self.clients.clone(),
            self.costs.clone(),
            self.metric,
        )
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn facilities(&self) -> &[Facility] {
        &self.facilities
    }

    pub fn clients(&self) -> &[Client] {
        &self.clients
    }

    pub fn costs(&self) -> &[Vec<i64>] {
        &self.costs
    }

    pub fn cost(&self, facility: usize, client: usize) -> i64 {
        self.costs[facility][client]
    }

    /// Number of facilities.
    pub fn m(&self) -> usize {
        self.facilities.len()
    }

    /// Number of clients.
    pub fn n(&self) -> usize {
        self.clients.len()
    }

    pub fn is_metric_claimed(&self) -> bool {
        self.metric
    }

    pub fn capacity(&self, facility: usize) -> i64 {
        self.facilities[facility].capacity
    }

    pub fn demand(&self, client: usize) -> i64 {
        self.clients[client].demand
    }

    /// Penalty of a client, zero for kinds without penalties.
    pub fn penalty(&self, client: usize) -> i64 {
        self.clients[client].penalty.unwrap_or(0)
    }

    /// Opening cost of a facility, zero for kinds without opening costs.
    pub fn opening_cost(&self, facility: usize) -> i64 {
        self.facilities[facility].opening_cost.unwrap_or(0)
    }

    pub fn capacities(&self) -> Vec<i64> {
        self.facilities.iter().map(|f| f.capacity).collect()
    }

    pub fn demands(&self) -> Vec<i64> {
        self.clients.iter().map(|c| c.demand).collect()
    }

    pub fn total_demand(&self) -> i64 {
        self.clients.iter().map(|c| c.demand).sum()
    }

    pub fn total_supply(&self) -> i64 {
        self.facilities.iter().map(|f| f.capacity).sum()
    }

    /// Largest unit cost, zero for an empty matrix.
    pub fn max_unit_cost(&self) -> i64 {
        self.costs.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))
    }
}

/// One shipment `(facility, client, amount)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize, i64)", into = "(usize, usize, i64)")]
pub struct Flow {
    pub facility: usize,
    pub client: usize,
    pub amount: i64,
}

impl From<(usize, usize, i64)> for Flow {
    fn from((facility, client, amount): (usize, usize, i64)) -> Self {
        Flow {
            facility,
            client,
            amount,
        }
    }
}

impl From<Flow> for (usize, usize, i64) {
    fn from(f: Flow) -> Self {
        (f.facility, f.client, f.amount)
    }
}

/// A candidate solution of any kind.
///
/// `unserved` is only meaningful for kinds with penalties and `open` only for
/// kinds with opening costs; [`evaluate`] rejects the other combinations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawSolution")]
pub struct Solution {
    pub flows: Vec<Flow>,
    pub unserved: BTreeSet<usize>,
    pub open: BTreeSet<usize>,
    pub objective: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolution {
    flows: Vec<Flow>,
    #[serde(default)]
    unserved: BTreeSet<usize>,
    #[serde(default)]
    open: BTreeSet<usize>,
    objective: i64,
}

impl TryFrom<RawSolution> for Solution {
    type Error = ModelError;

    fn try_from(raw: RawSolution) -> Result<Self, Self::Error> {
        for f in &raw.flows {
            non_negative(
                || format!("flow amount ({}, {})", f.facility, f.client),
                f.amount,
            )?;
        }
        non_negative(|| "objective".to_string(), raw.objective)?;
        Ok(Solution {
            flows: raw.flows,
            unserved: raw.unserved,
            open: raw.open,
            objective: raw.objective,
        })
    }
}

impl Solution {
    /// Build from a dense flow matrix; zero entries are dropped.
    pub fn from_flow_matrix(
        matrix: &[Vec<i64>],
        unserved: BTreeSet<usize>,
        open: BTreeSet<usize>,
    ) -> Self {
        let flows = matrix
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(move |(j, &amount)| Flow {
                        facility: i,
                        client: j,
                        amount,
                    })
            })
            .collect();
        Solution {
            flows,
            unserved,
            open,
            objective: 0,
        }
    }

    /// Dense `m x n` flow matrix. Out-of-range flows are ignored.
    pub fn flow_matrix(&self, m: usize, n: usize) -> Vec<Vec<i64>> {
        let mut x = vec![vec![0; n]; m];
        for f in &self.flows {
            if f.facility < m && f.client < n {
                x[f.facility][f.client] += f.amount;
            }
        }
        x
    }

    pub fn shipped(&self, m: usize) -> Vec<i64> {
        let mut out = vec![0; m];
        for f in self.flows.iter().filter(|f| f.facility < m) {
            out[f.facility] += f.amount;
        }
        out
    }

    pub fn received(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for f in self.flows.iter().filter(|f| f.client < n) {
            out[f.client] += f.amount;
        }
        out
    }

    /// Evaluate against `inst` and store the objective.
    pub fn evaluated(mut self, inst: &Instance) -> Result<Self, ValidationReport> {
        self.objective = evaluate(inst, &self)?;
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    IndexOutOfRange,
    NonPositiveFlow,
    DuplicateFlow,
    CapacityExceeded,
    ClientUnderServed,
    ClientOverServed,
    UnservedReceivesFlow,
    ZeroDemandUnserved,
    FlowFromClosedFacility,
    UnservedNotAllowed,
    OpenNotAllowed,
    ObjectiveMismatch,
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{:?}: {}", v.code, v.detail)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Four-point triangle inequality
/// `c[i0][j0] <= c[i0][j1] + c[i1][j1] + c[i1][j0]` over all quadruples.
pub fn check_metric(costs: &[Vec<i64>]) -> bool {
    let m = costs.len();
    for i0 in 0..m {
        for i1 in 0..m {
            for (j0, &c00) in costs[i0].iter().enumerate() {
                for j1 in 0..costs[i0].len() {
                    let bound =
                        costs[i0][j1] as i128 + costs[i1][j1] as i128 + costs[i1][j0] as i128;
                    if c00 as i128 > bound {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Total demand fits in total supply. Linear time.
pub fn feasible_cfl(inst: &Instance) -> Result<bool, ModelError> {
    if !inst.kind().has_opening_costs() {
        return Err(ModelError::WrongKind {
            expected: "a facility location instance (cfl, ufl or cflmc)",
            found: inst.kind(),
        });
    }
    Ok(inst.total_demand() <= inst.total_supply())
}

/// Objective value of `sol`, or every violated solution invariant.
///
/// The stored `objective` field is not consulted; see [`verify`].
pub fn evaluate(inst: &Instance, sol: &Solution) -> Result<i64, ValidationReport> {
    let (m, n) = (inst.m(), inst.n());
    let kind = inst.kind();
    let mut violations = Vec::new();
    let mut push = |code, detail: String| violations.push(Violation { code, detail });

    let mut seen = BTreeSet::new();
    let mut shipped = vec![0i64; m];
    let mut received = vec![0i64; n];
    let mut transport: i64 = 0;
    let mut overflow = false;
    for f in &sol.flows {
        if f.facility >= m || f.client >= n {
            push(
                ViolationCode::IndexOutOfRange,
                format!("flow ({}, {}) outside {m}x{n}", f.facility, f.client),
            );
            continue;
        }
        if f.amount <= 0 {
            push(
                ViolationCode::NonPositiveFlow,
                format!(
                    "flow ({}, {}) has amount {}",
                    f.facility, f.client, f.amount
                ),
            );
        }
        if !seen.insert((f.facility, f.client)) {
            push(
                ViolationCode::DuplicateFlow,
                format!("flow ({}, {}) listed twice", f.facility, f.client),
            );
        }
        shipped[f.facility] += f.amount;
        received[f.client] += f.amount;
        match inst
            .cost(f.facility, f.client)
            .checked_mul(f.amount)
            .and_then(|c| transport.checked_add(c))
        {
            Some(t) => transport = t,
            None => overflow = true,
        }
    }

    for &j in &sol.unserved {
        if j >= n {
            push(
                ViolationCode::IndexOutOfRange,
                format!("unserved client {j} out of range"),
            );
        }
    }
    for &i in &sol.open {
        if i >= m {
            push(
                ViolationCode::IndexOutOfRange,
                format!("open facility {i} out of range"),
            );
        }
    }
    if !kind.has_penalties() && !sol.unserved.is_empty() {
        push(
            ViolationCode::UnservedNotAllowed,
            format!("{kind} instances must serve every client"),
        );
    }
    if !kind.has_opening_costs() && !sol.open.is_empty() {
        push(
            ViolationCode::OpenNotAllowed,
            format!("{kind} instances have no opening decisions"),
        );
    }

    for j in 0..n {
        let d = inst.demand(j);
        if sol.unserved.contains(&j) {
            if d == 0 {
                push(
                    ViolationCode::ZeroDemandUnserved,
                    format!("client {j} has zero demand and counts as served"),
                );
            }
            if received[j] != 0 {
                push(
                    ViolationCode::UnservedReceivesFlow,
                    format!("client {j} is unserved but receives {}", received[j]),
                );
            }
        } else if received[j] < d {
            push(
                ViolationCode::ClientUnderServed,
                format!("client {j} receives {} of demand {d}", received[j]),
            );
        } else if received[j] > d {
            push(
                ViolationCode::ClientOverServed,
                format!("client {j} receives {} of demand {d}", received[j]),
            );
        }
    }
    for i in 0..m {
        if shipped[i] > inst.capacity(i) {
            push(
                ViolationCode::CapacityExceeded,
                format!(
                    "facility {i} ships {} over capacity {}",
                    shipped[i],
                    inst.capacity(i)
                ),
            );
        }
        if kind.has_opening_costs() && shipped[i] > 0 && !sol.open.contains(&i) {
            push(
                ViolationCode::FlowFromClosedFacility,
                format!("facility {i} ships {} while closed", shipped[i]),
            );
        }
    }

    let penalties = sol
        .unserved
        .iter()
        .filter(|&&j| j < n)
        .try_fold(0i64, |acc, &j| acc.checked_add(inst.penalty(j)));
    let openings = sol
        .open
        .iter()
        .filter(|&&i| i < m)
        .try_fold(0i64, |acc, &i| acc.checked_add(inst.opening_cost(i)));
    let total = match (overflow, penalties, openings) {
        (false, Some(p), Some(o)) => transport.checked_add(p).and_then(|t| t.checked_add(o)),
        _ => None,
    };
    if total.is_none() {
        push(
            ViolationCode::Overflow,
            "objective overflows i64".to_string(),
        );
    }

    if violations.is_empty() {
        Ok(total.expect("checked above"))
    } else {
        Err(ValidationReport::from_violations(violations))
    }
}

/// Full check: every solution invariant plus the stored objective.
pub fn verify(inst: &Instance, sol: &Solution) -> ValidationReport {
    match evaluate(inst, sol) {
        Ok(value) if value == sol.objective => ValidationReport::from_violations(Vec::new()),
        Ok(value) => ValidationReport::from_violations(vec![Violation {
            code: ViolationCode::ObjectiveMismatch,
            detail: format!(
                "stored objective {} but evaluates to {value}",
                sol.objective
            ),
        }]),
        Err(report) => report,
    }
}

/// Strict upper bound on the objective of any fully-served solution:
/// all opening costs, plus the most expensive way to ship all demand with
/// every facility open, plus one.
pub fn instance_upper_bound(inst: &Instance) -> Result<i64, ModelError> {
    if !inst.kind().has_opening_costs() {
        return Err(ModelError::WrongKind {
            expected: "a facility location instance (cfl, ufl or cflmc)",
            found: inst.kind(),
        });
    }
    if !feasible_cfl(inst)? {
        return Err(ModelError::Infeasible {
            demand: inst.total_demand(),
            supply: inst.total_supply(),
        });
    }
    let openings = checked_sum((0..inst.m()).map(|i| inst.opening_cost(i)), "opening costs")?;
    let max_transport =
        transport::max_value_transport(&inst.capacities(), &inst.demands(), inst.costs())?;
    openings
        .checked_add(max_transport)
        .and_then(|v| v.checked_add(1))
        .ok_or(ModelError::Overflow("instance upper bound"))
}
