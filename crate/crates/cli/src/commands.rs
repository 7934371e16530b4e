use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use legdet::cyclotomic::{verify_decomposition, verify_product_identities, CycloReport};
use legdet::identities::{verify_range, verify_section3, Family, Status};
use legdet::quadfield::{class_number_imag, quad_constants};
use legdet::{Error, Mod4, OddPrime, Rational};

use crate::args::{ConstantsArgs, Format, GoldenArgs, VerifyArgs};
use crate::config::{parse_mod4, parse_range, RunConfig};
use crate::report::{write_csv, Kind, Record, Report};
use crate::CliError;

#[derive(Debug, Clone, Copy)]
enum Task {
    Decomposition(OddPrime),
    Products(OddPrime),
    Section3(OddPrime),
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))
}

/// Runs every selected check and assembles the sorted report.
pub fn run_verify(config: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let primes = config.primes()?;
    let mut tasks = Vec::new();
    for &p in &config.decomposition_primes {
        tasks.push(Task::Decomposition(p));
        tasks.push(Task::Products(p));
    }
    if config.families.contains(&Family::OnePlus) {
        tasks.extend(
            primes
                .iter()
                .filter(|p| p.residue_class() == Mod4::Three)
                .map(|&p| Task::Section3(p)),
        );
    }

    let pool = thread_pool(config.jobs)?;
    let (identity, cyclo) = pool.install(|| {
        rayon::join(
            || verify_range(&config.families, &primes),
            || {
                tasks
                    .par_iter()
                    .map(|&t| run_task(t, &config.x_samples))
                    .collect::<Vec<_>>()
            },
        )
    });

    let mut records: Vec<Record> = identity.iter().map(Record::from_identity).collect();
    records.extend(cyclo);
    Ok(Report::new(
        config,
        records,
        start.elapsed().as_millis() as u64,
    ))
}

fn run_task(task: Task, xs: &[Rational]) -> Record {
    let start = Instant::now();
    let ms = |s: Instant| s.elapsed().as_millis() as u64;
    match task {
        Task::Decomposition(p) => {
            let out = verify_decomposition(p, xs);
            cyclo_record(Kind::Decomposition, p, out, ms(start))
        }
        Task::Products(p) => {
            let out = verify_product_identities(p);
            cyclo_record(Kind::Products, p, out, ms(start))
        }
        Task::Section3(p) if p.value() == 3 => Record::cyclotomic(
            Kind::Section3,
            3,
            Status::Skipped,
            String::new(),
            String::new(),
            Some("argument requires p > 3".into()),
            0,
        ),
        Task::Section3(p) => match verify_section3(p) {
            Ok(report) => {
                let join = |f: &dyn Fn(&legdet::identities::PipelineCheck) -> String| {
                    report.checks.iter().map(f).collect::<Vec<_>>().join("; ")
                };
                let computed = join(&|c| format!("{}: {}", c.label, c.computed));
                let expected = join(&|c| format!("{}: {}", c.label, c.expected));
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.label.as_str())
                    .collect();
                let status = if failed.is_empty() {
                    Status::Pass
                } else {
                    Status::Fail
                };
                let detail = (!failed.is_empty()).then(|| format!("failed: {}", failed.join(", ")));
                Record::cyclotomic(
                    Kind::Section3,
                    p.value(),
                    status,
                    computed,
                    expected,
                    detail,
                    ms(start),
                )
            }
            Err(e) => error_record(Kind::Section3, p, e, ms(start)),
        },
    }
}

fn cyclo_record(kind: Kind, p: OddPrime, out: legdet::Result<CycloReport>, ms: u64) -> Record {
    match out {
        Ok(report) => {
            let total = report.checks.len();
            let passed = report.checks.iter().filter(|c| c.passed).count();
            let status = if report.passed() {
                Status::Pass
            } else {
                Status::Fail
            };
            let detail = report.first_failure().map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.label),
                None => c.label.clone(),
            });
            Record::cyclotomic(
                kind,
                p.value(),
                status,
                format!("{passed}/{total} checks hold"),
                format!("{total}/{total} checks hold"),
                detail,
                ms,
            )
        }
        Err(e) => error_record(kind, p, e, ms),
    }
}

fn error_record(kind: Kind, p: OddPrime, e: Error, ms: u64) -> Record {
    Record::cyclotomic(
        kind,
        p.value(),
        Status::Fail,
        String::new(),
        String::new(),
        Some(e.to_string()),
        ms,
    )
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.to_csv(),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let config = RunConfig::from_args(args)?;
    let report = run_verify(&config)?;
    let text = render(&report, config.format)?;
    emit(config.output_path.as_deref(), &text)?;
    let s = report.summary;
    eprintln!(
        "pass {}, fail {}, skipped {} in {} ms",
        s.pass, s.fail, s.skipped, report.total_ms
    );
    Ok(report.exit_code())
}

/// Writes to `path` through a temporary file in the same directory, so a
/// failed run leaves nothing behind. Without a path, writes to stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| CliError::Io(format!("stdout: {e}")));
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantsRow {
    pub p: u64,
    pub mod4: u8,
    /// Fundamental unit as `a+b√p`, for p ≡ 1 (mod 4).
    pub unit: Option<String>,
    /// `h_p` for p ≡ 1 (mod 4), `h(-p)` otherwise.
    pub class_number: Option<u64>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub a_primed: Option<String>,
    pub b_primed: Option<String>,
}

pub fn constants_row(p: OddPrime) -> Result<ConstantsRow, CliError> {
    let mut row = ConstantsRow {
        p: p.value(),
        mod4: p.residue_class().as_u8(),
        unit: None,
        class_number: None,
        a: None,
        b: None,
        a_primed: None,
        b_primed: None,
    };
    let internal = |e: Error| CliError::Internal(format!("p = {p}: {e}"));
    if p.is_one_mod_4() {
        let c = quad_constants(p).map_err(internal)?;
        row.unit = Some(c.unit.to_string());
        row.class_number = Some(c.class_number);
        row.a = Some(c.plain.0.to_string());
        row.b = Some(c.plain.1.to_string());
        row.a_primed = Some(c.primed.0.to_string());
        row.b_primed = Some(c.primed.1.to_string());
    } else {
        row.class_number = match class_number_imag(p) {
            Ok(h) => Some(h),
            Err(Error::ExcludedPrime(_)) => None,
            Err(e) => return Err(internal(e)),
        };
    }
    Ok(row)
}

pub fn cmd_constants(args: &ConstantsArgs) -> Result<i32, CliError> {
    let (lo, hi) = parse_range(&args.primes)?;
    let filter = parse_mod4(args.mod4)?;
    let primes =
        legdet::numtheory::primes_in(lo, hi, filter).map_err(|e| CliError::Usage(e.to_string()))?;
    let rows = primes
        .par_iter()
        .map(|&p| constants_row(p))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows are plain data");
            s.push('\n');
            s
        }
        Format::Csv => write_csv(&rows)?,
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

/// Lines of unified diff shown on a golden mismatch.
const DIFF_LINES: usize = 60;

pub fn cmd_golden(args: &GoldenArgs) -> Result<i32, CliError> {
    let raw = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.config.display())))?;
    let mut verify: VerifyArgs = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.config.display())))?;
    verify.jobs = args.jobs;
    verify.canonical = true;
    verify.format = Format::Json;
    let config = RunConfig::from_args(&verify)?;
    let fresh = run_verify(&config)?.to_json();

    if args.bless {
        emit(Some(&args.golden), &fresh)?;
        eprintln!("wrote {}", args.golden.display());
        return Ok(0);
    }
    let golden = std::fs::read_to_string(&args.golden)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.golden.display())))?;
    if golden == fresh {
        eprintln!("golden file matches");
        return Ok(0);
    }
    let diff = similar::TextDiff::from_lines(&golden, &fresh);
    let text = diff
        .unified_diff()
        .context_radius(2)
        .header("golden", "fresh")
        .to_string();
    let changed = diff
        .iter_all_changes()
        .filter(|c| c.tag() != similar::ChangeTag::Equal)
        .count();
    eprintln!("golden file differs ({changed} changed lines)");
    for line in text.lines().take(DIFF_LINES) {
        eprintln!("{line}");
    }
    if text.lines().count() > DIFF_LINES {
        eprintln!("...");
    }
    Ok(1)
}
