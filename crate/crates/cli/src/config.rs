use std::path::PathBuf;

use legdet::identities::Family;
use legdet::numtheory::primes_in;
use legdet::{Mod4, OddPrime, Rational};

use crate::args::{Format, VerifyArgs};
use crate::CliError;

/// Cyclotomic checks are dense in degree p - 1; sweeps stop here unless
/// primes are listed explicitly.
pub const CYCLOTOMIC_DEFAULT_CAP: u64 = 61;

/// A validated `verify` request.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub families: Vec<Family>,
    pub prime_lo: u64,
    pub prime_hi: u64,
    pub residue_filter: Option<Mod4>,
    pub decomposition_primes: Vec<OddPrime>,
    pub x_samples: Vec<Rational>,
    pub jobs: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub canonical: bool,
}

impl RunConfig {
    pub fn from_args(args: &VerifyArgs) -> Result<Self, CliError> {
        let all = args.family.trim() == "all";
        let families = parse_families(&args.family)?;
        let (prime_lo, prime_hi) = parse_range(&args.primes)?;
        let residue_filter = parse_mod4(args.mod4)?;
        let x_samples = parse_rationals(&args.x_samples)?;
        let jobs = resolve_jobs(args.jobs)?;

        let decomposition_primes = match &args.decomp_primes {
            Some(list) => parse_decomposition_primes(list)?,
            None if all && residue_filter != Some(Mod4::Three) => {
                let hi = prime_hi.min(CYCLOTOMIC_DEFAULT_CAP);
                if prime_lo > hi {
                    vec![]
                } else {
                    primes_in(prime_lo, hi, Some(Mod4::One)).map_err(usage)?
                }
            }
            None => vec![],
        };
        if !decomposition_primes.is_empty() && x_samples.is_empty() {
            return Err(CliError::Usage("--x-samples must not be empty".into()));
        }

        Ok(RunConfig {
            families,
            prime_lo,
            prime_hi,
            residue_filter,
            decomposition_primes,
            x_samples,
            jobs,
            output_path: args.out.clone(),
            format: args.format,
            canonical: args.canonical,
        })
    }

    pub fn primes(&self) -> Result<Vec<OddPrime>, CliError> {
        primes_in(self.prime_lo, self.prime_hi, self.residue_filter).map_err(usage)
    }
}

fn usage(e: legdet::Error) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn parse_families(s: &str) -> Result<Vec<Family>, CliError> {
    if s.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    let mut out: Vec<Family> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Family>().map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("expected a range lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 3 || lo > hi {
        return Err(CliError::Usage(format!(
            "range {lo}:{hi} must satisfy 3 <= lo <= hi"
        )));
    }
    if hi >= legdet::numtheory::PRIME_BOUND {
        return Err(CliError::Usage(format!("upper bound {hi} is too large")));
    }
    Ok((lo, hi))
}

pub fn parse_mod4(m: Option<u8>) -> Result<Option<Mod4>, CliError> {
    m.map(|r| {
        Mod4::from_u8(r).ok_or_else(|| CliError::Usage(format!("--mod4 must be 1 or 3, got {r}")))
    })
    .transpose()
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("not a rational number: {t:?}")))
        })
        .collect()
}

fn parse_decomposition_primes(s: &str) -> Result<Vec<OddPrime>, CliError> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let n: u64 = t
            .parse()
            .map_err(|_| CliError::Usage(format!("not an integer: {t:?}")))?;
        let p = OddPrime::new(n)
            .and_then(|p| p.require(Mod4::One))
            .map_err(usage)?;
        out.push(p);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn resolve_jobs(jobs: Option<usize>) -> Result<usize, CliError> {
    match jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}
