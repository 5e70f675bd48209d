//! `ssp`: censuses of superspecial curves and verification suites.
//!
//! Exit status 0 on success, 1 on a usage error, 2 when a result disagrees
//! with its reference value (or any other failure during the run).

mod checkpoint;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ssp_core::census::{self, Census, HOWE_COUNTS};
use ssp_core::formulas::{eichler_h, genus2_count};
use ssp_core::par::{ChunkLog, NoLog, ScanConfig};
use ssp_core::{algebra, Error};

use checkpoint::FileLog;
use report::Referee;

#[derive(Parser)]
#[command(name = "ssp", version, about = "Superspecial curve censuses over small finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Elliptic,
    Genus2,
    HoweA,
    HoweB,
    Hyper4,
    #[value(name = "canonical4-f5")]
    Canonical4F5,
    Trigonal5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Exec {
    /// Worker threads.
    #[arg(long, env = "SSP_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Scan indices per chunk.
    #[arg(long, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    chunk_size: u64,
    /// Seed for the randomised root finding.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Exec {
    fn config(&self) -> ScanConfig {
        ScanConfig { jobs: self.jobs as usize, chunk_size: self.chunk_size }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one census and write its report.
    Census {
        #[arg(long)]
        family: Family,
        #[arg(short, long)]
        p: u64,
        #[command(flatten)]
        exec: Exec,
        /// Chunk log to resume from and append to (scanned families only).
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Report file; stdout if absent.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Allow `p` outside the family's supported range.
        #[arg(long)]
        stretch: bool,
        /// Record the wall-clock time (makes the report run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        #[arg(long)]
        pmax: Option<u64>,
        #[command(flatten)]
        exec: Exec,
    },
}

enum Fail {
    Usage(String),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Argument(_) | Error::UnsupportedCharacteristic(_) | Error::UnsupportedInvariants(_) | Error::NotComparable(_) => {
                Fail::Usage(e.to_string())
            }
            _ => Fail::Check(e.to_string()),
        }
    }
}

/// Contract range and stretch range of `p`.
fn ranges(f: Family) -> (Vec<u64>, (u64, u64)) {
    let span = |a: u64, b: u64| (a..=b).filter(|&p| algebra::is_prime(p)).collect::<Vec<_>>();
    match f {
        Family::Elliptic => (span(2, 199), (2, 2003)),
        Family::Genus2 => (span(5, census::genus2::GENUS2_MAX_P), (5, census::genus2::GENUS2_STRETCH_MAX_P)),
        Family::HoweA => (span(11, 23), (7, 31)),
        Family::HoweB => (span(11, 53), (7, 199)),
        Family::Hyper4 => (vec![11, 13], (5, 19)),
        Family::Canonical4F5 => (vec![5], (5, 5)),
        Family::Trigonal5 => (vec![11], (11, 11)),
    }
}

fn check_p(f: Family, p: u64, stretch: bool) -> Result<(), Fail> {
    let (contract, (lo, hi)) = ranges(f);
    let ok = if stretch { (lo..=hi).contains(&p) && algebra::is_prime(p) } else { contract.contains(&p) };
    if ok {
        return Ok(());
    }
    let what = if stretch { format!("a prime in {lo}..={hi}") } else { format!("one of {contract:?} (or --stretch)") };
    Err(Fail::Usage(format!("{} needs p {what}, got {p}", family_tag(f))))
}

fn referee(f: Family, p: u64) -> Result<Referee, Fail> {
    let r = |name: &str, v: u64| Referee { formula: Some(name.into()), value: Some(v) };
    Ok(match (f, p) {
        (Family::Elliptic, _) => r("eichler_h", eichler_h(p)?),
        (Family::Genus2, _) => r("genus2_count", genus2_count(p)?),
        (Family::HoweA | Family::HoweB, _) => match HOWE_COUNTS.iter().find(|e| e.0 == p) {
            Some(&(_, n)) => r("howe_table", n as u64),
            None => Referee { formula: None, value: None },
        },
        (Family::Hyper4, 11 | 13) => r("hyper4_reference", 0),
        (Family::Hyper4, 17) => r("hyper4_reference", 5),
        (Family::Hyper4, 19) => r("hyper4_reference", 12),
        (Family::Canonical4F5, _) => r("canonical4_f5_reference", 7),
        (Family::Trigonal5, _) => r("trigonal5_reference", 4),
        _ => Referee { formula: None, value: None },
    })
}

fn run_census(f: Family, p: u64, cfg: &ScanConfig, log: &mut dyn ChunkLog) -> Result<Census, Fail> {
    Ok(match f {
        Family::Elliptic => census::census_elliptic(p)?.census(p),
        Family::Genus2 => census::census_genus2_upto(p, census::genus2::GENUS2_STRETCH_MAX_P)?,
        Family::HoweA => census::census_howe_a(p)?.census,
        Family::HoweB => census::census_howe_b_upto(p, 199)?.census,
        Family::Hyper4 => census::census_hyper_g4(p, cfg, log)?,
        Family::Canonical4F5 => {
            let c = census::census_canonical_g4_f5(cfg, log)?;
            if c.geometric_classes != 1 {
                return Err(Fail::Check(format!("{} geometric classes, expected 1", c.geometric_classes)));
            }
            c.census
        }
        Family::Trigonal5 => {
            let r = census::verify_trigonal_f11()?;
            if !(r.families_pass() && r.pairwise_distinct() && r.one_geometric_class()) {
                return Err(Fail::Check(format!("trigonal checks failed: {r:?}")));
            }
            r.census()?
        }
    })
}

fn family_tag(f: Family) -> String {
    f.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn census_cmd(
    family: Family,
    p: u64,
    exec: &Exec,
    checkpoint: Option<PathBuf>,
    output: Option<PathBuf>,
    format: Format,
    stretch: bool,
    timing: bool,
) -> Result<(), Fail> {
    check_p(family, p, stretch)?;
    algebra::set_default_seed(exec.seed);
    let cfg = exec.config();
    let chunked = matches!(family, Family::Hyper4 | Family::Canonical4F5);
    let mut log: Box<dyn ChunkLog> = match &checkpoint {
        Some(path) if chunked => Box::new(FileLog::open(path, &family_tag(family), p, cfg.chunk_size)?),
        Some(_) => return Err(Fail::Usage(format!("{} is not a chunked scan; --checkpoint does not apply", family_tag(family)))),
        None => Box::new(NoLog),
    };
    let t0 = Instant::now();
    let c = run_census(family, p, &cfg, log.as_mut())?;
    let ms = timing.then(|| t0.elapsed().as_millis() as u64);
    let rf = referee(family, p)?;
    let bytes = match format {
        Format::Json => report::json(&c, &rf, ms, exec.seed),
        Format::Csv => report::csv(&c, &rf, ms, exec.seed),
    };
    match output {
        Some(path) => report::write_atomic(&path, &bytes).map_err(|e| Fail::Check(format!("{}: {e}", path.display())))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| Fail::Check(e.to_string()))?;
        }
    }
    match rf.value {
        Some(v) if v != c.count() as u64 => Err(Fail::Check(format!("{} classes, reference {v}", c.count()))),
        _ => Ok(()),
    }
}

fn verify_cmd(suite: verify::Suite, pmax: Option<u64>, exec: &Exec) -> Result<(), Fail> {
    algebra::set_default_seed(exec.seed);
    let checks = verify::run(suite, pmax, &exec.config())?;
    let mut failed = 0;
    for c in &checks {
        println!("{} {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.ok);
    }
    if failed > 0 {
        return Err(Fail::Check(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let res = match cli.cmd {
        Cmd::Census { family, p, exec, checkpoint, output, format, stretch, timing } => {
            census_cmd(family, p, &exec, checkpoint, output, format, stretch, timing)
        }
        Cmd::Verify { suite, pmax, exec } => verify_cmd(suite, pmax, &exec),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("ssp: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Check(m)) => {
            eprintln!("ssp: {m}");
            ExitCode::from(2)
        }
    }
}
