//! Forward constructions.

use crate::model::{self, check_metric, Client, Facility, Instance, Kind};

use super::{Direction, Mode, ReductionCertificate, ReductionError};

fn expect_kind(inst: &Instance, direction: Direction) -> Result<(), ReductionError> {
    let expected = direction.source_kind();
    if inst.kind() != expected {
        return Err(ReductionError::WrongKind {
            direction,
            expected,
            found: inst.kind(),
        });
    }
    Ok(())
}

fn require_metric(inst: &Instance, mode: Mode) -> Result<(), ReductionError> {
    if mode == Mode::Metric && !check_metric(inst.costs()) {
        return Err(ReductionError::NotMetric);
    }
    Ok(())
}

/// Cost from the dummy facility of client `own` to client `other`.
///
/// Metric: cheapest detour `other -> i0 -> own` through an original facility.
/// `empty_range` is used when there are no original facilities.
fn dummy_facility_cost(
    inst: &Instance,
    mode: Mode,
    own: usize,
    other: usize,
    empty_range: i64,
) -> i64 {
    if own == other {
        return 0;
    }
    match mode {
        Mode::General => inst.max_unit_cost(),
        Mode::Metric => (0..inst.m())
            .map(|i0| inst.cost(i0, other) + inst.cost(i0, own))
            .min()
            .unwrap_or(empty_range),
    }
}

/// Cost from facility `from` to the dummy client of facility `own`.
fn dummy_client_cost(inst: &Instance, mode: Mode, from: usize, own: usize) -> i64 {
    if from == own {
        return 0;
    }
    match mode {
        Mode::General => inst.max_unit_cost(),
        Mode::Metric => (0..inst.n())
            .map(|j0| inst.cost(from, j0) + inst.cost(own, j0))
            .min()
            .unwrap_or(0),
    }
}

/// Shared construction for the three dummy-facility gadgets.
fn facility_gadget(
    inst: &Instance,
    direction: Direction,
    mode: Mode,
) -> Result<(Instance, ReductionCertificate), ReductionError> {
    let (m, n) = (inst.m(), inst.n());
    let total_demand = inst.total_demand();
    // With no original facility to detour through, a foreign dummy must
    // never be cheaper than paying the penalty; only the uncapacitated gadget
    // can ship to foreign clients at all.
    let empty_range = match direction {
        Direction::UtmcToUfl => (0..n).map(|j| inst.penalty(j)).max().unwrap_or(0) + 1,
        _ => 0,
    };

    let mut facilities: Vec<Facility> = inst
        .facilities()
        .iter()
        .enumerate()
        .map(|(i, f)| Facility {
            capacity: f.capacity,
            opening_cost: Some(match direction {
                Direction::CflmcToCfl => inst.opening_cost(i),
                _ => 0,
            }),
        })
        .collect();
    let mut costs: Vec<Vec<i64>> = inst.costs().to_vec();
    for j in 0..n {
        let capacity = match direction {
            Direction::UtmcToUfl => total_demand,
            _ => inst.demand(j),
        };
        facilities.push(Facility {
            capacity,
            opening_cost: Some(inst.penalty(j)),
        });
        costs.push(
            (0..n)
                .map(|other| dummy_facility_cost(inst, mode, j, other, empty_range))
                .collect(),
        );
    }
    let clients = inst
        .clients()
        .iter()
        .map(|c| Client {
            demand: c.demand,
            penalty: None,
        })
        .collect();
    let reduced = Instance::new(
        direction.target_kind(),
        facilities,
        clients,
        costs,
        mode == Mode::Metric,
    )?;
    let cert = ReductionCertificate::new(direction, mode, (m, n), None);
    Ok((reduced, cert))
}

/// TMC to CFL: original facilities open for free, one dummy facility per
/// client with opening cost = penalty and capacity = demand.
pub fn tmc_to_cfl(
    inst: &Instance,
    mode: Mode,
) -> Result<(Instance, ReductionCertificate), ReductionError> {
    expect_kind(inst, Direction::TmcToCfl)?;
    require_metric(inst, mode)?;
    facility_gadget(inst, Direction::TmcToCfl, mode)
}

/// UTMC to UFL (metric only): as [`tmc_to_cfl`] with uncapacitated dummies.
pub fn utmc_to_ufl(inst: &Instance) -> Result<(Instance, ReductionCertificate), ReductionError> {
    expect_kind(inst, Direction::UtmcToUfl)?;
    require_metric(inst, Mode::Metric)?;
    facility_gadget(inst, Direction::UtmcToUfl, Mode::Metric)
}

/// CFLMC to CFL: as [`tmc_to_cfl`] but original facilities keep their
/// opening costs.
pub fn cflmc_to_cfl(
    inst: &Instance,
    mode: Mode,
) -> Result<(Instance, ReductionCertificate), ReductionError> {
    expect_kind(inst, Direction::CflmcToCfl)?;
    require_metric(inst, mode)?;
    facility_gadget(inst, Direction::CflmcToCfl, mode)
}

/// CFL to TMC: one dummy client per facility with demand = capacity and
/// penalty = opening cost; original clients get the instance upper bound as
/// penalty. The facility is open exactly when its dummy is left unserved.
pub fn cfl_to_tmc(
    inst: &Instance,
    mode: Mode,
) -> Result<(Instance, ReductionCertificate), ReductionError> {
    expect_kind(inst, Direction::CflToTmc)?;
    if !model::feasible_cfl(inst)? {
        return Err(ReductionError::Infeasible {
            demand: inst.total_demand(),
            supply: inst.total_supply(),
        });
    }
    require_metric(inst, mode)?;
    let iub = model::instance_upper_bound(inst)?;
    let (m, n) = (inst.m(), inst.n());

    let facilities = inst
        .facilities()
        .iter()
        .map(|f| Facility {
            capacity: f.capacity,
            opening_cost: None,
        })
        .collect();
    let mut clients: Vec<Client> = inst
        .clients()
        .iter()
        .map(|c| Client {
            demand: c.demand,
            penalty: Some(iub),
        })
        .collect();
    clients.extend(inst.facilities().iter().enumerate().map(|(i, f)| Client {
        demand: f.capacity,
        penalty: Some(inst.opening_cost(i)),
    }));
    let costs = (0..m)
        .map(|i| {
            let mut row = inst.costs()[i].clone();
            row.extend((0..m).map(|own| dummy_client_cost(inst, mode, i, own)));
            row
        })
        .collect();
    let reduced = Instance::new(Kind::Tmc, facilities, clients, costs, mode == Mode::Metric)?;
    let cert = ReductionCertificate::new(Direction::CflToTmc, mode, (m, n), Some(iub));
    Ok((reduced, cert))
}

/// Pick the reduction matching the instance kind.
///
/// UTMC in general mode is reduced as a plain TMC instance, and UFL as a
/// plain CFL instance.
pub fn reduce(
    inst: &Instance,
    mode: Mode,
) -> Result<(Instance, ReductionCertificate), ReductionError> {
    match (inst.kind(), mode) {
        (Kind::Tmc, _) => tmc_to_cfl(inst, mode),
        (Kind::Utmc, Mode::Metric) => utmc_to_ufl(inst),
        (Kind::Utmc, Mode::General) => tmc_to_cfl(&inst.relabel(Kind::Tmc)?, mode),
        (Kind::Cfl, _) => cfl_to_tmc(inst, mode),
        (Kind::Ufl, _) => cfl_to_tmc(&inst.relabel(Kind::Cfl)?, mode),
        (Kind::Cflmc, _) => cflmc_to_cfl(inst, mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Instance {
        Instance::tmc(&[5], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap()
    }

    #[test]
    fn t1_metric_gadget() {
        let (red, cert) = tmc_to_cfl(&t1(), Mode::Metric).unwrap();
        assert_eq!(red.kind(), Kind::Cfl);
        assert_eq!((red.m(), red.n()), (3, 2));
        assert_eq!(red.opening_cost(0), 0);
        assert_eq!((red.opening_cost(1), red.capacity(1)), (10, 3));
        assert_eq!((red.opening_cost(2), red.capacity(2)), (2, 4));
        assert_eq!(red.costs()[1], vec![0, 4]);
        assert_eq!(red.costs()[2], vec![4, 0]);
        assert!(red.is_metric_claimed());
        assert_eq!(cert.dummy_map(), &[(1, 0), (2, 1)]);
        cert.validate_against(&red).unwrap();
    }

    #[test]
    fn t1_general_gadget_uses_max_cost() {
        let (red, _) = tmc_to_cfl(&t1(), Mode::General).unwrap();
        assert_eq!(red.costs()[1], vec![0, 3]);
        assert_eq!(red.costs()[2], vec![3, 0]);
        assert_eq!(red.max_unit_cost(), t1().max_unit_cost());
    }

    #[test]
    fn metric_mode_rejects_non_metric_input() {
        let inst =
            Instance::tmc(&[1, 1], &[(1, 1), (1, 1)], vec![vec![0, 10], vec![0, 0]]).unwrap();
        assert_eq!(
            tmc_to_cfl(&inst, Mode::Metric).unwrap_err(),
            ReductionError::NotMetric
        );
        assert!(tmc_to_cfl(&inst, Mode::General).is_ok());
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let cfl = Instance::cfl(&[(5, 3)], &[2], vec![vec![4]]).unwrap();
        assert!(matches!(
            tmc_to_cfl(&cfl, Mode::General),
            Err(ReductionError::WrongKind { .. })
        ));
        assert!(matches!(
            cfl_to_tmc(&t1(), Mode::General),
            Err(ReductionError::WrongKind { .. })
        ));
    }

    #[test]
    fn cfl_to_tmc_single_facility() {
        let inst = Instance::cfl(&[(5, 3)], &[3, 2], vec![vec![1, 2]]).unwrap();
        let (red, cert) = cfl_to_tmc(&inst, Mode::Metric).unwrap();
        assert_eq!(cert.iub(), Some(11));
        assert_eq!((red.m(), red.n()), (1, 3));
        assert_eq!(red.penalty(0), 11);
        assert_eq!(red.penalty(1), 11);
        assert_eq!((red.demand(2), red.penalty(2)), (5, 3));
        assert_eq!(red.costs()[0], vec![1, 2, 0]);
        cert.validate_against(&red).unwrap();
    }

    #[test]
    fn cfl_to_tmc_rejects_infeasible() {
        let inst = Instance::cfl(&[(1, 3)], &[3], vec![vec![1]]).unwrap();
        assert!(matches!(
            cfl_to_tmc(&inst, Mode::General),
            Err(ReductionError::Infeasible { .. })
        ));
    }

    #[test]
    fn utmc_dummies_are_uncapacitated() {
        let inst = Instance::utmc(&[7], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
        let (red, _) = utmc_to_ufl(&inst).unwrap();
        assert_eq!(red.kind(), Kind::Ufl);
        assert_eq!(red.capacities(), vec![7, 7, 7]);
    }

    #[test]
    fn cflmc_with_free_facilities_matches_tmc_gadget() {
        let mixed = Instance::cflmc(&[(5, 0)], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
        let (a, _) = cflmc_to_cfl(&mixed, Mode::Metric).unwrap();
        let (b, _) = tmc_to_cfl(&t1(), Mode::Metric).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cflmc_keeps_opening_costs() {
        let mixed = Instance::cflmc(&[(5, 2)], &[(3, 10), (4, 2)], vec![vec![1, 3]]).unwrap();
        let (red, _) = cflmc_to_cfl(&mixed, Mode::General).unwrap();
        assert_eq!(red.opening_cost(0), 2);
    }

    #[test]
    fn empty_source_sides() {
        let no_fac = Instance::tmc(&[], &[(2, 3), (1, 1)], vec![]).unwrap();
        let (red, _) = tmc_to_cfl(&no_fac, Mode::Metric).unwrap();
        assert_eq!(red.costs(), &[vec![0, 0], vec![0, 0]]);

        let no_fac_u = Instance::utmc(&[], &[(2, 3), (1, 1)], vec![]).unwrap();
        let (red, _) = utmc_to_ufl(&no_fac_u).unwrap();
        assert_eq!(red.costs(), &[vec![0, 4], vec![4, 0]]);
        assert!(check_metric(red.costs()));

        let no_cli = Instance::cfl(&[(2, 5)], &[], vec![vec![]]).unwrap();
        let (red, cert) = cfl_to_tmc(&no_cli, Mode::Metric).unwrap();
        assert_eq!(red.n(), 1);
        assert_eq!(cert.iub(), Some(6));
    }
}
