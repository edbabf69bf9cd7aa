//! `lncert`: exact certificates for logarithm inequalities.
//!
//! Exit codes: 0 certified, 1 refuted, 2 undecided at the working precision,
//! 3 usage or domain error.

mod config;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lncert_core::cert::{
    certify_e_paper, certify_pi_e, certify_power, e_enclosure, euler_limit_demo, gamma_enclosure_certificate,
    gamma_sequences, geometric_identity, verify_gamma_sandwich, EulerSequence, PowerBase,
};
use lncert_core::exact::Interval;
use lncert_core::figures::{self, FigureSpec};
use lncert_core::ln::ln_enclosure_with;
use lncert_core::{Certificate, Error, Rational, Verdict};

use config::{CliConfig, OutputMode, Source, MAX_BISECTIONS_ENV};

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "lncert", version, about = "Exact certificates for logarithm inequalities")]
struct Cli {
    /// Print certificates and results as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Target enclosure width (p/q or decimal).
    #[arg(long, global = true, value_parser = rational)]
    eps: Option<Rational>,

    /// Retries stop once the working width would fall below this.
    #[arg(long, global = true, value_parser = rational)]
    floor: Option<Rational>,

    /// Bisection cap for a single ln enclosure.
    #[arg(long, global = true)]
    max_bisections: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enclose ln(b/a).
    LnBound {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        b: Rational,
    },
    /// Certify 27/10 < e < 11/4, or refine an enclosure of e to --eps.
    CertifyE {
        #[arg(long)]
        paper: bool,
    },
    /// Certify b^a < a^b for e <= a < b. `a` may be `e`.
    Power { a: String, b: String },
    /// Certify pi^e < e^pi from an enclosure of pi.
    PiE {
        #[arg(long, value_parser = rational)]
        pi_lo: Option<Rational>,
        #[arg(long, value_parser = rational)]
        pi_hi: Option<Rational>,
    },
    /// Enclose gamma_n, A_n, Gamma_n and gamma; optionally run the sandwich checks.
    Gamma {
        n: u64,
        #[arg(long)]
        verify_up_to: Option<u64>,
    },
    /// Euler-limit sandwich table.
    EulerLimit {
        /// identity, square, sqrt-like or ratios:R1,R2,...
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: u64,
    },
    /// Geometric series identity with exact tail.
    Geom {
        #[arg(value_parser = rational)]
        r: Rational,
        m: u32,
    },
    /// Render one figure as SVG.
    Figure {
        /// figNN, a number, or a kind such as partition-lower-e.
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render every numbered figure.
    Figures {
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Replay a certificate read from a JSON file.
    Check { file: PathBuf },
}

/// A failure reported as one `Code: detail` line.
struct Failure {
    code: String,
    detail: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::PreconditionRefuted(_) | Error::Replay(_) => 1,
            Error::Precision(_) => 2,
            _ => 3,
        };
        Failure {
            code: e.code().to_string(),
            detail: e.detail(),
            exit,
        }
    }
}

fn usage(detail: impl Into<String>) -> Failure {
    Failure {
        code: "UsageError".to_string(),
        detail: detail.into(),
        exit: 3,
    }
}

fn verdict_exit(v: Verdict) -> u8 {
    match v {
        Verdict::Certified => 0,
        Verdict::Refuted => 1,
        Verdict::Undecided => 2,
    }
}

/// Refuted outranks undecided, which outranks certified.
fn worst(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes
        .into_iter()
        .max_by_key(|c| match c {
            0 => 0,
            2 => 1,
            _ => 2,
        })
        .unwrap_or(0)
}

struct Out {
    cfg: CliConfig,
    stdout: std::io::StdoutLock<'static>,
}

impl Out {
    fn json(&mut self, v: &Value) {
        let _ = writeln!(self.stdout, "{v}");
    }

    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.stdout, "{}", s.as_ref());
    }

    fn human(&self) -> bool {
        self.cfg.output_mode == OutputMode::Human
    }

    fn certificate(&mut self, cert: Certificate) -> u8 {
        let cert = self.cfg.stamp(cert);
        if self.human() {
            self.line(format!("{:?}: {}", cert.claim_kind, cert.statement));
            for (k, v) in &cert.totals {
                self.line(format!("  {k} = {}", num(v)));
            }
            self.line(format!(
                "  terms: {}, partitions: {}",
                cert.terms.len(),
                cert.partitions.len()
            ));
            self.line(format!("  verdict: {:?}", cert.verdict));
        } else {
            let _ = writeln!(self.stdout, "{}", cert.to_json());
        }
        verdict_exit(cert.verdict)
    }
}

fn interval_json(i: &Interval) -> Value {
    json!({ "lo": i.lo().canonical(), "hi": i.hi().canonical() })
}

/// Exact when short, otherwise a 15-digit decimal.
fn num(x: &Rational) -> String {
    let exact = x.to_string();
    if exact.len() <= 24 {
        exact
    } else {
        format!("~{}", x.to_decimal(15))
    }
}

fn show(i: &Interval) -> String {
    format!("[{}, {}]", num(i.lo()), num(i.hi()))
}

fn parse_base(s: &str) -> Result<PowerBase, Failure> {
    if s.eq_ignore_ascii_case("e") {
        return Ok(PowerBase::E);
    }
    Ok(PowerBase::Rational(s.parse()?))
}

fn run(cli: Cli, out: &mut Out) -> Result<u8, Failure> {
    let policy = out.cfg.policy();
    let eps = out.cfg.eps.clone();
    match cli.command {
        Command::LnBound { a, b } => {
            if !a.is_positive() || !b.is_positive() {
                return Err(Error::Domain(format!("need a, b > 0, got a = {a}, b = {b}")).into());
            }
            let x = &b / &a;
            let i = ln_enclosure_with(&x, &eps, &policy.ln)?;
            if out.human() {
                out.line(format!("ln({b}) - ln({a}) in {}", show(&i)));
                out.line(format!("  width {}", i.width().to_decimal(15)));
            } else {
                let mut v = json!({
                    "quantity": format!("ln({b}) - ln({a})"),
                    "x": x.canonical(),
                    "enclosure": interval_json(&i),
                    "width": i.width().canonical(),
                });
                v["config"] = json!(out.cfg.provenance());
                out.json(&v);
            }
            Ok(0)
        }
        Command::CertifyE { paper } => {
            if paper || cli.eps.is_none() {
                let (upper, lower) = certify_e_paper();
                let codes = [out.certificate(upper), out.certificate(lower)];
                if out.human() {
                    out.line("27/10 < e < 11/4");
                }
                Ok(worst(codes))
            } else {
                let e = e_enclosure(&eps, &policy)?;
                if out.human() {
                    out.line(format!("e in {}", show(&e.interval)));
                }
                Ok(out.certificate(e.certificate()))
            }
        }
        Command::Power { a, b } => {
            let a = parse_base(&a)?;
            let b: Rational = b.parse()?;
            Ok(out.certificate(certify_power(&a, &b, &eps, &policy)?))
        }
        Command::PiE { pi_lo, pi_hi } => {
            if let Some(lo) = pi_lo {
                out.cfg.pi_lo = lo;
            }
            if let Some(hi) = pi_hi {
                out.cfg.pi_hi = hi;
            }
            out.cfg.validate().map_err(|e| usage(e.0))?;
            let pi = out.cfg.pi();
            Ok(out.certificate(certify_pi_e(&pi, &eps, &policy)?))
        }
        Command::Gamma { n, verify_up_to } => {
            let t = gamma_sequences(n, &eps, &policy)?;
            let enclosure = gamma_enclosure_certificate(n, &eps, &policy)?;
            if out.human() {
                out.line(format!("n = {n}"));
                out.line(format!("  gamma_n = H_n - ln n       in {}", show(&t.gamma_n)));
                out.line(format!("  A_n     = H_n - ln(n+1)    in {}", show(&t.a_n)));
                out.line(format!("  Gamma_n = H_n - ln(n+1/2)  in {}", show(&t.big_gamma_n)));
            } else {
                out.json(&json!({
                    "n": n,
                    "gamma_n": interval_json(&t.gamma_n),
                    "a_n": interval_json(&t.a_n),
                    "big_gamma_n": interval_json(&t.big_gamma_n),
                }));
            }
            let lower = enclosure.total("lower").cloned();
            let mut codes = vec![out.certificate(enclosure)];
            if out.human() {
                if let Some(lo) = lower {
                    let half = Rational::frac(1, 2);
                    out.line(format!(
                        "  gamma in [1/2, 1): {}",
                        if codes[0] == 0 { "certified" } else { "not certified" }
                    ));
                    out.line(format!(
                        "  gamma > 1/2 strictly: {}",
                        if lo > half { "certified" } else { "not shown at this n" }
                    ));
                }
            }
            if let Some(n_max) = verify_up_to {
                let report = verify_gamma_sandwich(n_max, &eps, &policy)?;
                if out.human() {
                    out.line(format!("sandwich checks for n <= {n_max}:"));
                    for c in &report.checks {
                        out.line(format!("  ({}) {}: {}/{}", c.id, c.description, c.passed, c.tested));
                    }
                    out.line(format!("  gamma_1 = 1 exactly: {}", report.gamma_1_exact));
                    for f in &report.failures {
                        out.line(format!("  FAILED ({}) at n = {}", f.check, f.n));
                    }
                } else {
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| json!({ "id": c.id, "description": c.description, "tested": c.tested, "passed": c.passed }))
                        .collect();
                    let failures: Vec<Value> = report
                        .failures
                        .iter()
                        .map(|f| json!({ "check": f.check, "n": f.n }))
                        .collect();
                    out.json(&json!({
                        "n_max": n_max,
                        "checks": checks,
                        "failures": failures,
                        "gamma_1_exact": report.gamma_1_exact,
                        "all_passed": report.all_passed(),
                    }));
                }
                let passed = report.all_passed();
                codes.push(out.certificate(report.certificate()?));
                if !passed {
                    codes.push(1);
                }
            }
            Ok(worst(codes))
        }
        Command::EulerLimit { seq, n } => {
            let seq: EulerSequence = seq.parse()?;
            let table = euler_limit_demo(&seq, n, &eps, &policy)?;
            let refuted = table.rows.iter().any(|r| r.inside == Some(false));
            let undecided = seq == EulerSequence::Identity && table.rows.iter().any(|r| r.inside.is_none());
            if out.human() {
                out.line(format!("sequence {} up to n = {}", table.sequence, table.n_max));
                out.line(format!(
                    "{:>10}  {:>18}  {:>18}  {:>22}  inside",
                    "n", "lower", "upper", "gap"
                ));
                for r in &table.rows {
                    let inside = match r.inside {
                        Some(true) => "yes",
                        Some(false) => "NO",
                        None => "-",
                    };
                    out.line(format!(
                        "{:>10}  {:>18}  {:>18}  {:>22}  {inside}",
                        r.n,
                        r.lower.to_decimal(15),
                        r.upper.to_decimal(15),
                        r.gap.to_decimal(20)
                    ));
                }
            } else {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "ratio": r.ratio.canonical(),
                            "lower": r.lower.canonical(),
                            "upper": r.upper.canonical(),
                            "gap": r.gap.canonical(),
                            "inside": r.inside,
                        })
                    })
                    .collect();
                out.json(&json!({
                    "sequence": table.sequence.to_string(),
                    "n_max": table.n_max,
                    "rows": rows,
                    "config": out.cfg.provenance(),
                }));
            }
            Ok(if refuted {
                1
            } else if undecided {
                2
            } else {
                0
            })
        }
        Command::Geom { r, m } => Ok(out.certificate(geometric_identity(&r, m)?)),
        Command::Figure { name, output } => {
            let spec = FigureSpec::by_name(&name)?;
            let doc = figures::render(&spec)?;
            match output {
                Some(path) => fs::write(&path, doc.as_str()).map_err(|source| Error::Write { path, source })?,
                None => {
                    let _ = out.stdout.write_all(doc.as_str().as_bytes());
                }
            }
            Ok(0)
        }
        Command::Figures { out_dir } => {
            let names = figures::render_all(&out_dir)?;
            if out.human() {
                for n in &names {
                    out.line(out_dir.join(n).display().to_string());
                }
            } else {
                out.json(&json!({ "out_dir": out_dir.display().to_string(), "files": names }));
            }
            Ok(0)
        }
        Command::Check { file } => {
            let text = fs::read_to_string(&file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            let cert = Certificate::from_json(&text)?;
            cert.replay()?;
            if out.human() {
                out.line(format!("replayed {} terms: {:?}", cert.terms.len(), cert.verdict));
            } else {
                out.json(&json!({ "replayed": true, "verdict": cert.verdict }));
            }
            Ok(verdict_exit(cert.verdict))
        }
    }
}

fn configure(cli: &Cli) -> Result<CliConfig, Failure> {
    let mut cfg = CliConfig::default();
    if let Some(e) = &cli.eps {
        cfg.eps = e.clone();
    }
    if let Some(f) = &cli.floor {
        cfg.refinement_floor = f.clone();
    }
    if let Some(m) = cli.max_bisections {
        cfg.max_bisections = m;
        cfg.max_bisections_source = Source::Flag;
    }
    if cli.json {
        cfg.output_mode = OutputMode::Json;
    }
    cfg.apply_env(std::env::var(MAX_BISECTIONS_ENV).ok())
        .map_err(|e| usage(e.0))?;
    cfg.validate().map_err(|e| usage(e.0))?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("UsageError: {}", first.trim_start_matches("error: "));
            return ExitCode::from(3);
        }
    };
    let result = configure(&cli).and_then(|cfg| {
        let mut out = Out {
            cfg,
            stdout: std::io::stdout().lock(),
        };
        run(cli, &mut out)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}: {}", f.code, f.detail.replace('\n', " "));
            ExitCode::from(f.exit)
        }
    }
}
