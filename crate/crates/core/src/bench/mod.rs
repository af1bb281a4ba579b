//! Instance generators and a wall-clock measurement harness.

mod generate;

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::sync::atomic::AtomicBool;
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;
use crate::semantics::{self, Budget, SemanticsKind};

pub use generate::{GeneratorSpec, Model, MAX_GENERATED_ARGS};

#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub id: String,
    pub af: Arc<ArgumentationFramework>,
}

impl BenchInstance {
    /// Commas and whitespace in `id` are replaced so records never need
    /// CSV quoting.
    pub fn new(id: impl Into<String>, af: ArgumentationFramework) -> Self {
        let id = id
            .into()
            .chars()
            .map(|c| {
                if c == ',' || c == '"' || c.is_whitespace() {
                    '_'
                } else {
                    c
                }
            })
            .collect();
        BenchInstance {
            id,
            af: Arc::new(af),
        }
    }

    pub fn generated(spec: &GeneratorSpec) -> Self {
        Self::new(spec.instance_id(), spec.generate())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Solved,
    Timeout,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance_id: String,
    #[serde(serialize_with = "serialize_kind")]
    pub kind: SemanticsKind,
    pub status: Status,
    #[serde(serialize_with = "serialize_ms")]
    pub time_ms: f64,
    /// Present iff the status is [`Status::Solved`].
    pub ext_count: Option<usize>,
    pub n_args: usize,
    pub n_attacks: usize,
}

fn serialize_kind<S: serde::Serializer>(kind: &SemanticsKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(kind.tag())
}

fn serialize_ms<S: serde::Serializer>(ms: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{ms:.3}"))
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub timeout_ms: u64,
    pub workers: usize,
    /// Node budget per (instance, semantics) call.
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            timeout_ms: 60_000,
            workers: 1,
            budget: Budget::DEFAULT_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindSummary {
    pub kind: SemanticsKind,
    pub instances: usize,
    pub solved: usize,
    /// Median over all instances, unsolved ones counted at the timeout.
    pub median_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub timeout_ms: u64,
    pub kinds: Vec<KindSummary>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<5} {:>9} {:>9} {:>12}",
            "kind", "instances", "solved", "median_ms"
        )?;
        for k in &self.kinds {
            let median = k.median_ms.map_or("-".to_owned(), |m| format!("{m:.3}"));
            writeln!(
                f,
                "{:<5} {:>9} {:>9} {:>12}",
                k.kind.tag(),
                k.instances,
                k.solved,
                median
            )?;
        }
        Ok(())
    }
}

/// Median of `values`; the mean of the two middle values for even lengths.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    })
}

pub fn summarize(records: &[BenchRecord], timeout_ms: u64) -> Summary {
    let mut kinds: Vec<SemanticsKind> = records.iter().map(|r| r.kind).collect();
    kinds.sort();
    kinds.dedup();
    let kinds = kinds
        .into_iter()
        .map(|kind| {
            let times: Vec<f64> = records
                .iter()
                .filter(|r| r.kind == kind)
                .map(|r| match r.status {
                    Status::Solved => r.time_ms,
                    Status::Timeout | Status::Unknown => timeout_ms as f64,
                })
                .collect();
            KindSummary {
                kind,
                instances: times.len(),
                solved: records
                    .iter()
                    .filter(|r| r.kind == kind && r.status == Status::Solved)
                    .count(),
                median_ms: median(&times),
            }
        })
        .collect();
    Summary { timeout_ms, kinds }
}

fn measure(instance: &BenchInstance, kind: SemanticsKind, config: &SuiteConfig) -> BenchRecord {
    let mut record = BenchRecord {
        instance_id: instance.id.clone(),
        kind,
        status: Status::Timeout,
        time_ms: config.timeout_ms as f64,
        ext_count: None,
        n_args: instance.af.len(),
        n_attacks: instance.af.num_attacks(),
    };
    if config.timeout_ms == 0 {
        return record;
    }
    let timeout = Duration::from_millis(config.timeout_ms);
    let cancel = Arc::new(AtomicBool::new(false));
    let (tx, rx) = mpsc::channel();
    let af = Arc::clone(&instance.af);
    let mut budget = Budget::new(config.budget).with_cancel(Arc::clone(&cancel));
    let start = Instant::now();
    let solver = thread::spawn(move || {
        let outcome = semantics::enumerate(&af, kind, &mut budget).map(|exts| exts.len());
        let _ = tx.send(outcome);
    });
    match rx.recv_timeout(timeout) {
        Ok(outcome) => {
            let elapsed = start.elapsed();
            match outcome {
                Ok(count) if elapsed < timeout => {
                    record.status = Status::Solved;
                    record.time_ms = elapsed.as_secs_f64() * 1000.0;
                    record.ext_count = Some(count);
                }
                Ok(_) | Err(Error::Cancelled) => {}
                Err(_) => {
                    record.status = Status::Unknown;
                    record.time_ms = elapsed.as_secs_f64() * 1000.0;
                }
            }
        }
        Err(_) => cancel.store(true, std::sync::atomic::Ordering::Relaxed),
    }
    let _ = solver.join();
    record
}

/// Measures every `(instance, kind)` pair with `config.workers` threads.
/// Records come back sorted by instance id, then semantics.
pub fn run_records(
    instances: &[BenchInstance],
    kinds: &[SemanticsKind],
    config: &SuiteConfig,
) -> Vec<BenchRecord> {
    let jobs: VecDeque<(usize, SemanticsKind)> = (0..instances.len())
        .flat_map(|i| kinds.iter().map(move |&k| (i, k)))
        .collect();
    let jobs = Mutex::new(jobs);
    let records = Mutex::new(Vec::new());
    thread::scope(|scope| {
        for _ in 0..config.workers.max(1) {
            scope.spawn(|| loop {
                let Some((i, kind)) = jobs.lock().unwrap().pop_front() else {
                    break;
                };
                let record = measure(&instances[i], kind, config);
                records.lock().unwrap().push(record);
            });
        }
    });
    let mut records = records.into_inner().unwrap();
    records.sort_by(|a, b| (&a.instance_id, a.kind).cmp(&(&b.instance_id, b.kind)));
    records
}

pub fn write_csv(records: &[BenchRecord], out: impl std::io::Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for record in records {
        writer.serialize(record)?;
    }
    if records.is_empty() {
        writer.write_record([
            "instance_id",
            "kind",
            "status",
            "time_ms",
            "ext_count",
            "n_args",
            "n_attacks",
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Runs the suite, writes one CSV row per record to `out_csv` and returns
/// the per-semantics summary.
pub fn run_suite(
    instances: &[BenchInstance],
    kinds: &[SemanticsKind],
    config: &SuiteConfig,
    out_csv: &Path,
) -> Result<Summary> {
    let records = run_records(instances, kinds, config);
    let file = std::fs::File::create(out_csv).map_err(|source| Error::File {
        path: out_csv.to_owned(),
        source,
    })?;
    write_csv(&records, std::io::BufWriter::new(file))?;
    Ok(summarize(&records, config.timeout_ms))
}
