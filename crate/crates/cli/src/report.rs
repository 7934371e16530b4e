use serde::Serialize;
use serde_json::{json, Value};

use legdet::identities::{Status, VerificationRecord};

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Identity,
    Decomposition,
    Products,
    Section3,
}

/// One row of a report, whatever produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub kind: Kind,
    pub family: Option<String>,
    pub p: u64,
    pub status: String,
    pub computed: String,
    pub expected: String,
    pub detail: Option<String>,
    pub ms: u64,
    #[serde(skip)]
    pub family_rank: usize,
}

impl Record {
    pub fn from_identity(r: &VerificationRecord) -> Self {
        let show = |p: &Option<legdet::MultilinearPoly>| {
            p.as_ref().map(|p| p.to_string()).unwrap_or_default()
        };
        Record {
            kind: Kind::Identity,
            family: Some(r.family.tag().to_string()),
            p: r.p.value(),
            status: r.status.as_str().to_string(),
            computed: show(&r.computed),
            expected: show(&r.expected),
            detail: r.detail.clone(),
            ms: r.elapsed_ms,
            family_rank: r.family as usize,
        }
    }

    pub fn cyclotomic(
        kind: Kind,
        p: u64,
        status: Status,
        computed: String,
        expected: String,
        detail: Option<String>,
        ms: u64,
    ) -> Self {
        Record {
            kind,
            family: None,
            p,
            status: status.as_str().to_string(),
            computed,
            expected,
            detail,
            ms,
            family_rank: 0,
        }
    }

    fn sort_key(&self) -> (Kind, usize, u64) {
        (self.kind, self.family_rank, self.p)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub version: &'static str,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub total_ms: u64,
}

impl Report {
    pub fn new(config: &RunConfig, mut records: Vec<Record>, total_ms: u64) -> Self {
        records.sort_by_key(Record::sort_key);
        let mut summary = Summary::default();
        for r in &records {
            match r.status.as_str() {
                "pass" => summary.pass += 1,
                "fail" => summary.fail += 1,
                _ => summary.skipped += 1,
            }
        }
        let mut report = Report {
            version: env!("CARGO_PKG_VERSION"),
            config: config_echo(config),
            records,
            summary,
            total_ms,
        };
        if config.canonical {
            report.zero_timings();
        }
        report
    }

    pub fn zero_timings(&mut self) {
        self.total_ms = 0;
        for r in &mut self.records {
            r.ms = 0;
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = json!({
            "version": self.version,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "total_ms": self.total_ms,
        });
        let mut s = serde_json::to_string_pretty(&value).expect("report is plain data");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        write_csv(&self.records)
    }
}

pub fn write_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// The parts of the configuration that determine the report contents.
fn config_echo(c: &RunConfig) -> Value {
    json!({
        "families": c.families.iter().map(|f| f.tag()).collect::<Vec<_>>(),
        "primes": format!("{}:{}", c.prime_lo, c.prime_hi),
        "mod4": c.residue_filter.map(|m| m.as_u8()),
        "decomposition_primes": c.decomposition_primes.iter().map(|p| p.value()).collect::<Vec<_>>(),
        "x_samples": c.x_samples.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}
