//! Cost and coefficient-growth measurements over a seeded integer corpus.
//!
//! Every configured size gets `trials_per_size` matrices with entries
//! uniform in `[-entry_bound, entry_bound]`. Matrix number `t` of the size
//! at position `s` in `sizes` comes from corpus stream
//! `s * trials_per_size + t` (see [`crate::corpus`]). Each requested method
//! runs on every matrix, and all methods must agree on the determinant.
//!
//! Report format (comma-separated, one header row):
//!
//! ```text
//! method,n,trial,mults,subs,divs,max_bits_level_1,...,max_bits_level_K,digest
//! ```
//!
//! `K` is the largest order in the report minus 2. Level columns hold the
//! largest bit length among a condensed matrix's entries, in execution
//! order. They are empty for oracle methods and past the last level.
//! `digest` is the determinant's canonical text.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condense::{det_condensation_observed, CondenseError, CondenseOptions, OpCounts};
use crate::corpus::CorpusRng;
use crate::matrix::Matrix;
use crate::oracle::{
    det_bareiss_observed, det_cofactor_counted, det_gauss_rational_counted, OracleError,
    COFACTOR_MAX_ORDER,
};
use crate::par::{self, Execution};
use crate::scalar::{bit_length, Integer, Rational, Scalar, ScalarKind};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid bench config: {0}")]
    Config(String),
    #[error("{method} cannot run at order {n}")]
    Incompatible { method: Method, n: usize },
    #[error(
        "methods disagree on n={n} trial={trial}: {first}={first_digest} but {other}={other_digest}"
    )]
    Disagreement {
        n: usize,
        trial: usize,
        first: Method,
        first_digest: String,
        other: Method,
        other_digest: String,
    },
    #[error(transparent)]
    Condense(#[from] CondenseError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("no integer condensation records")]
    NoIntegerCondensationRecords,
    #[error("report line {line}: {message}")]
    Report { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Condensation,
    Bareiss,
    GaussRational,
    Cofactor,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Condensation => "condensation",
            Method::Bareiss => "bareiss",
            Method::GaussRational => "gauss-rational",
            Method::Cofactor => "cofactor",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "condensation" => Ok(Method::Condensation),
            "bareiss" => Ok(Method::Bareiss),
            "gauss-rational" => Ok(Method::GaussRational),
            "cofactor" => Ok(Method::Cofactor),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials_per_size: usize,
    pub entry_bound: u64,
    pub seed: u64,
    pub methods: Vec<Method>,
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        let cfg: BenchConfig =
            toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.methods.is_empty() {
            return Err(BenchError::Config("methods must not be empty".into()));
        }
        let mut seen = self.methods.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.methods.len() {
            return Err(BenchError::Config("methods listed more than once".into()));
        }
        if self.entry_bound == 0 {
            return Err(BenchError::Config("entry_bound must be positive".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n == 0) {
            return Err(BenchError::Config(format!(
                "size {n} is not a matrix order"
            )));
        }
        if self.methods.contains(&Method::Cofactor) {
            if let Some(&n) = self.sizes.iter().find(|&&n| n > COFACTOR_MAX_ORDER) {
                return Err(BenchError::Incompatible {
                    method: Method::Cofactor,
                    n,
                });
            }
        }
        Ok(())
    }

    /// The integer corpus as `(n, trial, matrix)`, in report order.
    pub fn corpus(&self) -> Vec<(usize, usize, Matrix<Integer>)> {
        let total = self.sizes.len() * self.trials_per_size;
        let mut streams = CorpusRng::streams(self.seed, total).into_iter();
        let mut out = Vec::with_capacity(total);
        for &n in &self.sizes {
            for trial in 0..self.trials_per_size {
                let mut rng = streams.next().expect("one stream per matrix");
                out.push((n, trial, rng.integer_matrix(n, self.entry_bound)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub method: Method,
    pub n: usize,
    pub trial: usize,
    pub scalar_kind: ScalarKind,
    /// Measured, never asserted on.
    pub wall_time_ns: u64,
    pub multiplications: u64,
    pub subtractions: u64,
    pub divisions: u64,
    /// Condensation only: largest entry bit length of each condensed matrix.
    pub max_bit_length_per_level: Vec<u64>,
    pub result_digest: String,
}

fn max_bits(entries: &[Integer]) -> u64 {
    entries.iter().map(bit_length).max().unwrap_or(0)
}

fn run_method(
    method: Method,
    n: usize,
    trial: usize,
    m: &Matrix<Integer>,
) -> Result<BenchRecord, BenchError> {
    let start = Instant::now();
    let mut levels = Vec::new();
    let (digest, counts, kind): (String, OpCounts, ScalarKind) = match method {
        Method::Condensation => {
            let opts = CondenseOptions {
                record_trace: false,
                ..Default::default()
            };
            let r = det_condensation_observed(m, opts, |step| {
                levels.push(max_bits(step.condensed.entries()));
            })?;
            (r.value.to_text(), r.op_counts, ScalarKind::Integer)
        }
        Method::Bareiss => {
            let (v, c) = det_bareiss_observed(m, |_, _| {})?;
            (v.to_text(), c, ScalarKind::Integer)
        }
        Method::Cofactor => {
            if n > COFACTOR_MAX_ORDER {
                return Err(BenchError::Incompatible { method, n });
            }
            let (v, c) = det_cofactor_counted(m)?;
            (v.to_text(), c, ScalarKind::Integer)
        }
        Method::GaussRational => {
            let q: Matrix<Rational> = m.map(Rational::from_integer);
            let (v, c) = det_gauss_rational_counted(&q)?;
            (v.to_text(), c, ScalarKind::Rational)
        }
    };
    let wall_time_ns = u64::try_from(start.elapsed().as_nanos()).unwrap_or(u64::MAX);
    Ok(BenchRecord {
        method,
        n,
        trial,
        scalar_kind: kind,
        wall_time_ns,
        multiplications: counts.multiplications,
        subtractions: counts.subtractions,
        divisions: counts.divisions,
        max_bit_length_per_level: levels,
        result_digest: digest,
    })
}

fn run_job(
    methods: &[Method],
    n: usize,
    trial: usize,
    m: &Matrix<Integer>,
) -> Result<Vec<BenchRecord>, BenchError> {
    let records = methods
        .iter()
        .map(|&method| run_method(method, n, trial, m))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((first, rest)) = records.split_first() {
        if let Some(bad) = rest.iter().find(|r| r.result_digest != first.result_digest) {
            return Err(BenchError::Disagreement {
                n,
                trial,
                first: first.method,
                first_digest: first.result_digest.clone(),
                other: bad.method,
                other_digest: bad.result_digest.clone(),
            });
        }
    }
    Ok(records)
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    run_bench_with(cfg, Execution::default())
}

/// Runs the corpus with trials distributed according to `exec`. Records
/// come back in corpus order regardless of the execution mode.
pub fn run_bench_with(cfg: &BenchConfig, exec: Execution) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let corpus = cfg.corpus();
    let results = par::map(exec, &corpus, |(n, trial, m)| {
        run_job(&cfg.methods, *n, *trial, m)
    });
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    /// 1-based condensation level.
    pub level: usize,
    pub median_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// Median bit lengths for order `n`, in level order.
    pub fn medians(&self, n: usize) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.n == n)
            .map(|r| r.median_bits)
            .collect()
    }

    pub fn to_delimited(&self) -> String {
        let mut out = String::from("n,level,median_bits\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.level, r.median_bits));
        }
        out
    }
}

/// Per-order, per-level median of the integer condensation bit lengths.
/// Even-sized samples report the lower median.
pub fn growth_report(records: &[BenchRecord]) -> Result<GrowthTable, BenchError> {
    let mut by_n: BTreeMap<usize, Vec<&BenchRecord>> = BTreeMap::new();
    for r in records
        .iter()
        .filter(|r| r.method == Method::Condensation && r.scalar_kind == ScalarKind::Integer)
    {
        by_n.entry(r.n).or_default().push(r);
    }
    if by_n.is_empty() {
        return Err(BenchError::NoIntegerCondensationRecords);
    }
    let mut rows = Vec::new();
    for (n, recs) in by_n {
        let depth = recs
            .iter()
            .map(|r| r.max_bit_length_per_level.len())
            .max()
            .unwrap_or(0);
        for level in 1..=depth {
            let mut sample: Vec<u64> = recs
                .iter()
                .filter_map(|r| r.max_bit_length_per_level.get(level - 1).copied())
                .collect();
            sample.sort_unstable();
            rows.push(GrowthRow {
                n,
                level,
                median_bits: sample[(sample.len() - 1) / 2],
            });
        }
    }
    Ok(GrowthTable { rows })
}

/// Largest entry bit length in the Bareiss working matrix after each
/// elimination stage.
pub fn bareiss_stage_bits(m: &Matrix<Integer>) -> Result<Vec<u64>, BenchError> {
    let mut bits = Vec::new();
    det_bareiss_observed(m, |_, entries| bits.push(max_bits(entries)))?;
    Ok(bits)
}

/// Upper bound on the bit length of any minor of `m`. Uses
/// `ceil(log2(prod_i max(1, |row_i|))) + 1`, from Hadamard's inequality.
pub fn hadamard_bit_bound(m: &Matrix<Integer>) -> u64 {
    let log2: f64 = m
        .row_iter()
        .map(|row| {
            let sq: f64 = row.iter().map(|x| x.to_f64().powi(2)).sum();
            0.5 * sq.max(1.0).log2()
        })
        .sum();
    log2.ceil() as u64 + 1
}

/// Number of `max_bits_level_*` columns for a set of records.
pub fn report_level_columns(records: &[BenchRecord]) -> usize {
    records
        .iter()
        .map(|r| r.n.saturating_sub(2))
        .max()
        .unwrap_or(0)
}

pub fn report_header(levels: usize) -> String {
    let mut cols: Vec<String> = ["method", "n", "trial", "mults", "subs", "divs"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    cols.extend((1..=levels).map(|i| format!("max_bits_level_{i}")));
    cols.push("digest".into());
    cols.join(",")
}

pub fn write_report(records: &[BenchRecord]) -> String {
    let levels = report_level_columns(records);
    let mut out = report_header(levels);
    out.push('\n');
    for r in records {
        let mut fields = vec![
            r.method.name().to_string(),
            r.n.to_string(),
            r.trial.to_string(),
            r.multiplications.to_string(),
            r.subtractions.to_string(),
            r.divisions.to_string(),
        ];
        fields.extend((0..levels).map(|i| {
            r.max_bit_length_per_level
                .get(i)
                .map(u64::to_string)
                .unwrap_or_default()
        }));
        fields.push(r.result_digest.clone());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub method: Method,
    pub n: usize,
    pub trial: usize,
    pub mults: u64,
    pub subs: u64,
    pub divs: u64,
    pub max_bits: Vec<u64>,
    pub digest: String,
}

/// Parses and validates a report written by [`write_report`].
pub fn parse_report(text: &str) -> Result<Vec<ReportRow>, BenchError> {
    let err = |line: usize, message: String| BenchError::Report { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header".into()))?;
    let width = header.split(',').count();
    if width < 7 {
        return Err(err(1, format!("header has {width} columns")));
    }
    let levels = width - 7;
    if header != report_header(levels) {
        return Err(err(1, format!("unexpected header `{header}`")));
    }
    let mut rows = Vec::new();
    for (line, text) in lines {
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != width {
            return Err(err(
                line,
                format!("{} fields, expected {width}", fields.len()),
            ));
        }
        let num = |idx: usize| -> Result<u64, BenchError> {
            fields[idx].parse::<u64>().map_err(|_| {
                err(
                    line,
                    format!("column {} is not a count: `{}`", idx + 1, fields[idx]),
                )
            })
        };
        let method: Method = fields[0].parse().map_err(|e: String| err(line, e))?;
        let mut max_bits = Vec::new();
        let mut ended = false;
        for (idx, field) in fields.iter().enumerate().skip(6).take(levels) {
            if field.is_empty() {
                ended = true;
            } else if ended {
                return Err(err(line, "level columns have a gap".into()));
            } else {
                max_bits.push(num(idx)?);
            }
        }
        let n = num(1)? as usize;
        if max_bits.len() > n.saturating_sub(2) {
            return Err(err(
                line,
                format!("{} levels for order {n}", max_bits.len()),
            ));
        }
        if method != Method::Condensation && !max_bits.is_empty() {
            return Err(err(line, format!("{method} rows carry no level data")));
        }
        let digest = fields[width - 1];
        if digest.is_empty() {
            return Err(err(line, "empty digest".into()));
        }
        rows.push(ReportRow {
            method,
            n,
            trial: num(2)? as usize,
            mults: num(3)?,
            subs: num(4)?,
            divs: num(5)?,
            max_bits,
            digest: digest.to_string(),
        });
    }
    Ok(rows)
}
