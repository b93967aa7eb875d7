use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{verify, Instance, Kind};
use crate::reductions::Mode;
use crate::solvers::{approx_tmc_pipeline, exact_tmc, Heuristic, SolverParams, ENUMERATION_LIMIT};

use super::{
    generate_general_instance, generate_metric_instance, GenParams, HarnessError, ValueCaps,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Metric,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedRange {
    pub start: u64,
    pub count: u64,
}

fn default_grid() -> i64 {
    4
}

fn default_limit() -> usize {
    ENUMERATION_LIMIT
}

fn default_heuristic() -> Heuristic {
    Heuristic::LocalSearch
}

/// One family of generated TMC or UTMC instances run through the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub name: String,
    pub kind: Kind,
    pub generator: Generator,
    pub mode: Mode,
    pub m: usize,
    pub n: usize,
    #[serde(default = "default_grid")]
    pub grid: i64,
    #[serde(default)]
    pub caps: ValueCaps,
    pub seeds: SeedRange,
    #[serde(default = "default_heuristic")]
    pub heuristic: Heuristic,
    #[serde(default)]
    pub solver: SolverParams,
    /// Oracle enumeration cap on the number of clients.
    #[serde(default = "default_limit")]
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default)]
    pub suites: Vec<SuiteConfig>,
    /// Wall-clock timings make reports differ between runs.
    #[serde(default)]
    pub record_timings: bool,
}

impl BenchConfig {
    pub fn from_json(s: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(s).map_err(|e| HarnessError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub id: String,
    pub suite: String,
    pub seed: u64,
    /// `None` when the instance exceeds the oracle limit.
    pub oracle: Option<i64>,
    pub heuristic: i64,
    pub translated: i64,
    /// `translated / oracle`; `None` without an oracle value or when the
    /// oracle is 0 and the translated value is not.
    pub ratio: Option<f64>,
    pub dominance_ok: bool,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_us: Option<u64>,
}

impl BenchRow {
    fn failure(&self) -> Option<String> {
        if !self.verified {
            return Some("translated solution fails verification".into());
        }
        if !self.dominance_ok {
            return Some(format!(
                "translated value {} exceeds heuristic value {}",
                self.translated, self.heuristic
            ));
        }
        match self.oracle {
            Some(opt) if self.translated < opt => Some(format!(
                "translated value {} below the optimum {opt}",
                self.translated
            )),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub instances: usize,
    pub with_oracle: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    /// Rows with optimum 0 but a positive translated value.
    pub unbounded_ratios: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub aggregate: Aggregate,
}

/// An instance whose row violated an invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Offender {
    pub id: String,
    pub detail: String,
    pub instance: Instance,
}

struct Job<'a> {
    suite: &'a SuiteConfig,
    seed: u64,
}

fn run_job(job: &Job, record_timings: bool) -> Result<(BenchRow, Option<Offender>), HarnessError> {
    let suite = job.suite;
    let params = GenParams {
        kind: suite.kind,
        m: suite.m,
        n: suite.n,
        grid: suite.grid,
        caps: suite.caps,
        seed: job.seed,
    };
    let inst = match suite.generator {
        Generator::Metric => generate_metric_instance(&params)?,
        Generator::General => generate_general_instance(&params)?,
    };
    let id = format!("{}-{}", suite.name, job.seed);
    let start = Instant::now();
    let run = approx_tmc_pipeline(&inst, suite.mode, suite.heuristic, &suite.solver)?;
    let elapsed = start.elapsed();
    let oracle = if inst.n() <= suite.limit {
        Some(exact_tmc(&inst, suite.limit)?.objective)
    } else {
        None
    };
    let heuristic = run.heuristic_solution.objective;
    let translated = run.solution.objective;
    let ratio = match oracle {
        Some(0) if translated == 0 => Some(1.0),
        Some(opt) if opt > 0 => Some(translated as f64 / opt as f64),
        _ => None,
    };
    let row = BenchRow {
        id: id.clone(),
        suite: suite.name.clone(),
        seed: job.seed,
        oracle,
        heuristic,
        translated,
        ratio,
        dominance_ok: translated <= heuristic,
        verified: verify(&inst, &run.solution).ok,
        wall_time_us: record_timings.then_some(elapsed.as_micros() as u64),
    };
    let offender = row.failure().map(|detail| Offender {
        id,
        detail,
        instance: inst,
    });
    Ok((row, offender))
}

/// Failed bench: the full report plus every offending instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchFailure {
    pub report: BenchReport,
    pub offenders: Vec<Offender>,
}

/// Run every suite. Rows are computed in parallel and assembled in suite
/// order, then seed order.
pub fn bench_run(config: &BenchConfig) -> Result<Result<BenchReport, BenchFailure>, HarnessError> {
    let jobs: Vec<Job> = config
        .suites
        .iter()
        .flat_map(|suite| {
            (0..suite.seeds.count).map(move |k| Job {
                suite,
                seed: suite.seeds.start + k,
            })
        })
        .collect();
    let results: Vec<(BenchRow, Option<Offender>)> = jobs
        .par_iter()
        .map(|job| run_job(job, config.record_timings))
        .collect::<Result<_, _>>()?;
    let (rows, offenders): (Vec<BenchRow>, Vec<Option<Offender>>) = results.into_iter().unzip();
    let offenders: Vec<Offender> = offenders.into_iter().flatten().collect();

    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let aggregate = Aggregate {
        instances: rows.len(),
        with_oracle: rows.iter().filter(|r| r.oracle.is_some()).count(),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        unbounded_ratios: rows
            .iter()
            .filter(|r| r.oracle == Some(0) && r.translated > 0)
            .count(),
        failures: offenders.len(),
    };
    let report = BenchReport { rows, aggregate };
    if offenders.is_empty() {
        Ok(Ok(report))
    } else {
        Ok(Err(BenchFailure { report, offenders }))
    }
}

#[derive(Serialize)]
struct AggregateLine<'a> {
    aggregate: &'a Aggregate,
}

impl BenchReport {
    /// One JSON object per row, then one line holding the aggregate.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("row serializes"));
            out.push('\n');
        }
        let agg = AggregateLine {
            aggregate: &self.aggregate,
        };
        out.push_str(&serde_json::to_string(&agg).expect("aggregate serializes"));
        out.push('\n');
        out
    }

    pub fn render_table(&self) -> String {
        let timed = self.rows.iter().any(|r| r.wall_time_us.is_some());
        let mut lines: Vec<Vec<String>> = Vec::new();
        let mut header: Vec<String> = [
            "id",
            "seed",
            "oracle",
            "heuristic",
            "translated",
            "ratio",
            "ok",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        if timed {
            header.push("time_us".into());
        }
        lines.push(header);
        for r in &self.rows {
            let mut line = vec![
                r.id.clone(),
                r.seed.to_string(),
                r.oracle.map_or("n/a".into(), |v| v.to_string()),
                r.heuristic.to_string(),
                r.translated.to_string(),
                r.ratio.map_or("n/a".into(), |v| format!("{v:.4}")),
                if r.failure().is_none() { "yes" } else { "no" }.into(),
            ];
            if timed {
                line.push(r.wall_time_us.map_or(String::new(), |t| t.to_string()));
            }
            lines.push(line);
        }
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in &lines {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:<w$}"))
                .collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
        }
        let a = &self.aggregate;
        let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |v| format!("{v:.4}"));
        writeln!(
            out,
            "instances {}  with oracle {}  max ratio {}  mean ratio {}  unbounded {}  failures {}",
            a.instances,
            a.with_oracle,
            fmt(a.max_ratio),
            fmt(a.mean_ratio),
            a.unbounded_ratios,
            a.failures
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suite(name: &str, n: usize, count: u64) -> SuiteConfig {
        SuiteConfig {
            name: name.into(),
            kind: Kind::Tmc,
            generator: Generator::Metric,
            mode: Mode::Metric,
            m: 2,
            n,
            grid: 4,
            caps: ValueCaps::default(),
            seeds: SeedRange { start: 0, count },
            heuristic: Heuristic::LocalSearch,
            solver: SolverParams::default(),
            limit: 3,
        }
    }

    #[test]
    fn empty_suite_gives_empty_report() {
        let report = bench_run(&BenchConfig::from_json("{}").unwrap())
            .unwrap()
            .unwrap();
        assert!(report.rows.is_empty());
        assert_eq!(report.aggregate.instances, 0);
        assert_eq!(report.aggregate.max_ratio, None);
    }

    #[test]
    fn small_suite_passes_and_is_reproducible() {
        let config = BenchConfig {
            suites: vec![suite("small", 3, 20)],
            record_timings: false,
        };
        let a = bench_run(&config).unwrap().unwrap();
        let b = bench_run(&config).unwrap().unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert_eq!(a.rows.len(), 20);
        assert!(a.rows.iter().all(|r| r.ratio.is_none_or(|x| x >= 1.0)));
        assert!(a.rows.iter().all(|r| r.dominance_ok && r.verified));
    }

    #[test]
    fn oversized_instance_has_no_oracle() {
        let config = BenchConfig {
            suites: vec![suite("big", 4, 1)],
            record_timings: true,
        };
        let report = bench_run(&config).unwrap().unwrap();
        assert_eq!(report.rows[0].oracle, None);
        assert!(report.rows[0].wall_time_us.is_some());
        assert!(report.render_table().contains("n/a"));
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(BenchConfig::from_json(r#"{"suites": [], "extra": 1}"#).is_err());
    }
}
