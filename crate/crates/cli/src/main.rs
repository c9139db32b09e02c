use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::Serialize;

use ultineq_core::cfinite::CauchyProblem;
use ultineq_core::decide::{decide_equality, decide_ultimate_inequality, DecideOptions, HaltRule, Outcome, Verdict};
use ultineq_core::forge::{forge_equal_named, make_boundary_family, BoundaryKind};
use ultineq_core::instance::{InstanceFile, RealSpec};
use ultineq_core::poly::find_roots;
use ultineq_core::vandermonde::g_function;
use ultineq_core::{ComplexBall, Dyadic, PolyError, Round};

#[derive(Parser)]
#[command(name = "ultineq", version, about = "Certified eventual-inequality and equality decisions for C-finite functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a property of the pair in an instance file.
    Decide {
        subject: Subject,
        file: PathBuf,
        #[arg(long, default_value_t = 40)]
        fuel: u32,
        #[arg(long = "max-prec", default_value_t = 1 << 16)]
        max_prec: i64,
        /// Write one JSON record per outer iteration to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print certified enclosures of the characteristic roots.
    Roots {
        file: PathBuf,
        #[arg(short = 'p', long = "prec", default_value_t = 53)]
        prec: i64,
        /// Use the second problem of the file.
        #[arg(long)]
        second: bool,
    },
    /// Evaluate the leading-coefficient numerator at the dominant root.
    Coeff {
        file: PathBuf,
        #[arg(long)]
        m1: usize,
        #[arg(short = 'p', long = "prec", default_value_t = 53)]
        prec: i64,
        #[arg(long)]
        second: bool,
    },
    /// Perturb a nearly equal pair into an exactly equal one.
    Forge {
        what: ForgeWhat,
        file: PathBuf,
        #[arg(long)]
        eps: String,
        /// Precision used to round named inputs.
        #[arg(long, default_value_t = 128)]
        prec: i64,
    },
    /// Time the inequality decider over a parametrised family.
    Bench {
        #[arg(long)]
        family: String,
        /// Inclusive range `a..b`.
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 60)]
        fuel: u32,
        #[arg(long, value_enum, default_value_t = Member::Yes)]
        member: Member,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Subject {
    UltimateIneq,
    Equality,
}

#[derive(Clone, Copy, ValueEnum)]
enum ForgeWhat {
    Equal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Member {
    Yes,
    No,
    Boundary,
}

#[derive(Serialize)]
struct RunReport {
    verdict: Outcome,
    fuel_used: u32,
    final_precision: i64,
    halted_by: Option<HaltRule>,
    wall_ms: f64,
}

fn load(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceFile::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn pick(file: &InstanceFile, second: bool) -> Result<CauchyProblem> {
    let (p, q) = file.problems()?;
    Ok(if second { q } else { p })
}

fn exit_for(o: Outcome) -> u8 {
    match o {
        Outcome::True => 0,
        Outcome::False => 1,
        Outcome::Exhausted => 2,
    }
}

fn run_decide(subject: Subject, file: &Path, fuel: u32, max_prec: i64, trace: Option<&Path>) -> Result<u8> {
    let (p, q) = load(file)?.problems()?;
    let opts = DecideOptions {
        fuel,
        max_prec,
        record_trace: trace.is_some(),
    };
    let start = Instant::now();
    let v: Verdict = match subject {
        Subject::UltimateIneq => decide_ultimate_inequality(&p, &q, &opts)?,
        Subject::Equality => decide_equality(&p, &q, &opts)?,
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    if let (Some(path), Some(t)) = (trace, &v.trace) {
        let mut out = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        for rec in &t.iterations {
            writeln!(out, "{}", serde_json::to_string(rec)?)?;
        }
    }
    let report = RunReport {
        verdict: v.outcome,
        fuel_used: v.fuel_used,
        final_precision: v.final_precision,
        halted_by: v.halted_by,
        wall_ms,
    };
    println!("{}", serde_json::to_string(&report)?);
    Ok(exit_for(v.outcome))
}

fn certified_roots(p: &CauchyProblem, prec: i64) -> Result<Vec<ComplexBall>> {
    let mut cp = (p.order() as i64 + 1) * (prec + 16) + 64;
    for _ in 0..8 {
        match find_roots(&p.char_poly(cp), prec) {
            Ok(list) => return Ok(list.roots),
            Err(PolyError::PrecisionExhausted(_)) => cp *= 2,
            Err(e) => return Err(e.into()),
        }
    }
    bail!("roots not certified at precision {prec}; retry with -p {}", prec * 2)
}

fn run_roots(file: &Path, prec: i64, second: bool) -> Result<u8> {
    let p = pick(&load(file)?, second)?;
    for r in certified_roots(&p, prec)? {
        println!("{r}");
    }
    Ok(0)
}

fn run_coeff(file: &Path, m1: usize, prec: i64, second: bool) -> Result<u8> {
    let p = pick(&load(file)?, second)?;
    let n = p.order();
    if m1 == 0 || m1 > n {
        bail!("--m1 must lie in 1..={n}");
    }
    let mut roots = certified_roots(&p, prec)?;
    roots.sort_by(|a, b| b.re().cmp(a.re()));
    let mut args = vec![roots[0].clone()];
    args.extend(roots[m1..].iter().cloned());
    let g = g_function(m1, n, &args, &p.init_balls(prec + 32)).with_prec(prec);
    let adjusted = if (n - m1) % 2 == 0 { g.clone() } else { g.neg() };
    println!("dominant root: {}", roots[0]);
    println!("G: {g}");
    println!("sign-adjusted: {adjusted}");
    Ok(0)
}

fn parse_eps(s: &str) -> Result<Dyadic> {
    match s.parse::<RealSpec>().map_err(|e| anyhow!(e))? {
        RealSpec::Rational(r) if r.is_positive() => Ok(Dyadic::from_rational(&r, 256, Round::Down)),
        _ => bail!("--eps must be a positive rational"),
    }
}

fn run_forge(file: &Path, eps: &str, prec: i64) -> Result<u8> {
    let (p, q) = load(file)?.problems()?;
    let eps = parse_eps(eps)?;
    let out = forge_equal_named(&p, &q, &eps, prec)?;
    let forged = InstanceFile::from_rooted(&out.p, &out.q);
    println!("{}", forged.to_json());
    eprintln!(
        "shared roots {}; distances {:.3e}, {:.3e}; bound {:.3e}",
        out.shared,
        out.dist_p.to_f64(),
        out.dist_q.to_f64(),
        out.budget.bound.to_f64()
    );
    Ok(0)
}

fn parse_range(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("expected a range `a..b`, got `{s}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn run_bench(family: &str, k: &str, fuel: u32, member: Member) -> Result<u8> {
    let kind = BoundaryKind::parse(family).ok_or_else(|| {
        let names: Vec<_> = BoundaryKind::ALL.iter().map(|k| k.name()).collect();
        anyhow!("unknown family `{family}`; expected one of {}", names.join(", "))
    })?;
    let (a, b) = parse_range(k)?;
    let fam = make_boundary_family(kind);
    let opts = DecideOptions::with_fuel(fuel);
    println!("k,iterations,precision,wall_ms,outcome");
    for k in a..=b {
        let m = fam.member(k);
        let pair = match member {
            Member::Yes => m.yes,
            Member::No => m.no,
            Member::Boundary => m.boundary,
        };
        let start = Instant::now();
        let v = decide_ultimate_inequality(&pair.f.to_cauchy(), &pair.g.to_cauchy(), &opts)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let outcome = serde_json::to_value(v.outcome)?;
        println!(
            "{k},{},{},{ms:.3},{}",
            v.fuel_used,
            v.final_precision,
            outcome.as_str().unwrap_or("?")
        );
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Decide {
            subject,
            file,
            fuel,
            max_prec,
            trace,
        } => run_decide(subject, &file, fuel, max_prec, trace.as_deref()),
        Cmd::Roots { file, prec, second } => run_roots(&file, prec, second),
        Cmd::Coeff { file, m1, prec, second } => run_coeff(&file, m1, prec, second),
        Cmd::Forge { what: ForgeWhat::Equal, file, eps, prec } => run_forge(&file, &eps, prec),
        Cmd::Bench { family, k, fuel, member } => run_bench(&family, &k, fuel, member),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
