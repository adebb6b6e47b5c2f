//! Command-line front end for `belyi-core`.
//!
//! Every subcommand produces a report: a JSON document with sorted keys
//! holding the schema and tool versions, an echo of the configuration, and
//! the operation's payload. Reports depend only on the configuration, so
//! they are byte-identical across runs and `--jobs` values.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | corpus mismatch |
//! | 2 | domain error, bad flags, or a map rejected by `belyi check` |
//! | 3 | resource limit (degree, size or exponent cap) |
//! | 4 | I/O failure |
//! | 5 | unsupported input (non-rational critical values in `belyi make`) |

pub mod args;
pub mod corpus;
pub mod payload;

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use belyi_core::belyi::{certify, euler_characteristic, fiber_count_on_u, make_belyi, Certification, MarkedSet};
use belyi_core::exact::{parse_rational, Integer};
use belyi_core::heights::{check_abc, check_abc_approx, height, radical, scan_triples, AbcTriple, ProjPoint2};
use belyi_core::siegel::{enumerate_s_integral, siegel_audit, AffineCurve, SSet};
use belyi_core::upoly::parse_ratfunc;
use belyi_core::Error;
use clap::Parser;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub use args::{Cli, Command, Format};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_UNSUPPORTED: i32 = 5;

/// Result of one command before anything is written.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    /// Full report (without timing); `None` when the command failed early.
    pub report: Option<Value>,
    /// CSV rendering, when the command has one.
    pub csv: Option<String>,
    /// Message for the diagnostic stream.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn failure(exit_code: i32, msg: String) -> Self {
        Self { exit_code, report: None, csv: None, diagnostic: Some(msg) }
    }
}

pub fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_DOMAIN,
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
    }
}

fn parse_int(s: &str, what: &str) -> belyi_core::Result<Integer> {
    s.trim()
        .parse()
        .map_err(|_| Error::Domain(format!("{what} must be an integer, got {s:?}")))
}

fn report(config: Value, payload: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "config": config,
        "payload": payload,
    })
}

/// Config echo; `--jobs`, `--out` and `--timing` are left out because they
/// do not affect the payload.
fn config_echo(cmd: &Command) -> Value {
    use args::{AbcCmd, BelyiCmd, SiegelCmd};
    match cmd {
        Command::Belyi(BelyiCmd::Make { map, marked }) => json!({"command": "belyi make", "map": map, "marked": marked}),
        Command::Belyi(BelyiCmd::Check { map }) => json!({"command": "belyi check", "map": map}),
        Command::Abc(AbcCmd::Scan { cmax, top }) => json!({"command": "abc scan", "cmax": cmax, "top": top}),
        Command::Abc(AbcCmd::Check { a, b, eps, rho, c_log }) => {
            json!({"command": "abc check", "a": a, "b": b, "eps": eps, "c": rho, "c_log": c_log})
        }
        Command::Height { point } => json!({"command": "height", "point": point}),
        Command::Radical { point } => json!({"command": "radical", "point": point}),
        Command::Siegel(SiegelCmd::Enumerate { infty, s, bound }) => {
            json!({"command": "siegel enumerate", "infty": infty, "s": s, "bound": bound})
        }
        Command::Siegel(SiegelCmd::Audit { map, infty, s, eps, bound }) => {
            json!({"command": "siegel audit", "map": map, "infty": infty, "s": s, "eps": eps, "bound": bound})
        }
        Command::Corpus(_) => json!({"command": "corpus run"}),
    }
}

/// Runs a compute subcommand; `jobs` sizes the worker pool.
pub fn execute(cmd: &Command, jobs: usize) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return Outcome::failure(EXIT_RESOURCE, format!("thread pool: {e}")),
    };
    let config = config_echo(cmd);
    match pool.install(|| compute(cmd, jobs)) {
        Ok((code, payload, csv, diagnostic)) => Outcome {
            exit_code: code,
            report: Some(report(config, payload)),
            csv,
            diagnostic,
        },
        Err(e) => Outcome::failure(exit_code_of(&e), e.to_string()),
    }
}

type Computed = (i32, Value, Option<String>, Option<String>);

fn compute(cmd: &Command, jobs: usize) -> belyi_core::Result<Computed> {
    use args::{AbcCmd, BelyiCmd, SiegelCmd};
    let ok = |v: Value| Ok((EXIT_OK, v, None, None));
    match cmd {
        Command::Belyi(BelyiCmd::Check { map }) => match certify(&parse_ratfunc(map)?)? {
            Certification::Certified(c) => ok(payload::belyi_certified(&c)),
            Certification::Rejected(r) => Ok((EXIT_DOMAIN, payload::belyi_rejected(&r), None, Some(r.to_string()))),
        },
        Command::Belyi(BelyiCmd::Make { map, marked }) => {
            let marked = MarkedSet::parse(marked)?;
            let b = make_belyi(&parse_ratfunc(map)?, &marked)?;
            let count = fiber_count_on_u(&b.certificate, &marked)?;
            ok(payload::belyi_make(&b, count, euler_characteristic(&marked)))
        }
        Command::Abc(AbcCmd::Scan { cmax, top }) => {
            let s = scan_triples(*cmax, *top, jobs)?;
            Ok((EXIT_OK, payload::abc_scan(&s), Some(payload::abc_scan_csv(&s)), None))
        }
        Command::Abc(AbcCmd::Check { a, b, eps, rho, c_log }) => {
            let t = AbcTriple::new(parse_int(a, "a")?, parse_int(b, "b")?)?;
            match c_log {
                Some(c) => {
                    let e = parse_rational(eps)?.to_f64().unwrap_or(f64::NAN);
                    ok(payload::abc_check_approx(&check_abc_approx(&t, e, *c)?))
                }
                None => {
                    let rho = parse_rational(rho.as_deref().unwrap_or("1"))?;
                    ok(payload::abc_check(&check_abc(&t, &parse_rational(eps)?, &rho)?))
                }
            }
        }
        Command::Height { point } => {
            let p = ProjPoint2::parse(point)?;
            ok(payload::height(p.coords(), &height(&p)))
        }
        Command::Radical { point } => {
            let p = ProjPoint2::parse(point)?;
            ok(payload::radical(p.coords(), &radical(&p)?))
        }
        Command::Siegel(SiegelCmd::Enumerate { infty, s, bound }) => {
            let curve = AffineCurve::parse(infty)?;
            let s = SSet::parse(s)?;
            let pts = enumerate_s_integral(&curve, &s, *bound)?;
            ok(payload::siegel_enumerate(&curve, &s, *bound, &pts))
        }
        Command::Siegel(SiegelCmd::Audit { map, infty, s, eps, bound }) => {
            let rep = siegel_audit(
                &parse_ratfunc(map)?,
                &AffineCurve::parse(infty)?,
                &SSet::parse(s)?,
                &parse_rational(eps)?,
                *bound,
            )?;
            ok(payload::siegel_audit(&rep))
        }
        Command::Corpus(_) => unreachable!("handled by the corpus runner"),
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parses `argv`, runs it and writes the results; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    let jobs = cli.common.jobs.unwrap_or_else(default_jobs);
    if jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return EXIT_DOMAIN;
    }
    if let Command::Corpus(args::CorpusCmd::Run { path, bless }) = &cli.command {
        return corpus::run(path, *bless, jobs);
    }
    let format = cli.common.format.unwrap_or_else(|| match &cli.common.out {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => Format::Csv,
        _ => Format::Json,
    });
    let start = Instant::now();
    let outcome = execute(&cli.command, jobs);
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("error: {msg}");
    }
    let Some(mut report) = outcome.report else {
        return outcome.exit_code;
    };
    let text = match format {
        Format::Json => {
            if cli.common.timing {
                report["timing"] = json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1e3});
            }
            render(&report)
        }
        Format::Csv => match outcome.csv {
            Some(csv) => csv,
            None => {
                eprintln!("error: CSV output is only available for `abc scan`");
                return EXIT_DOMAIN;
            }
        },
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, text.as_bytes()) {
                eprintln!("error: writing {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => {
            if let Err(e) = std::io::stdout().write_all(text.as_bytes()) {
                eprintln!("error: writing stdout: {e}");
                return EXIT_IO;
            }
        }
    }
    outcome.exit_code
}
