use clap::{Args, Parser, Subcommand};
use g2core::arith::{factor, parse_factors};
use g2core::config::Config;
use g2core::construct::{
    check_input, construct_genus2, verify_certificate, verify_fixture_with, ConstructFailure, CurveCertificate,
    FixtureParams,
};
use g2core::elliptic::EllipticCurve;
use g2core::ff::PrimeField;
use g2core::gluing::{glue2, glue3, Genus2Curve};
use g2core::quadratic_cm::{class_polynomial, format_int_poly, ClassPolyCache};
use g2core::weil::{central_weil, enumerate_realizations, minimal_delta};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Factorizations are computed automatically below this bound.
const AUTO_FACTOR_BITS: u64 = 96;
const FACTOR_BUDGET: u64 = 1 << 24;

#[derive(Parser)]
#[command(name = "g2", version, about = "Genus-2 curves with a prescribed number of points")]
struct Cli {
    /// PRNG seed (overrides G2_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Class polynomial cache directory (overrides G2_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a curve with exactly N points and print its certificate.
    Construct {
        n: String,
        /// p1^e1,p2^e2,... (required when N >= 2^96).
        #[arg(long)]
        factors: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        discriminant_budget: Option<u64>,
    },
    /// Weil polynomial queries.
    Weil {
        #[command(subcommand)]
        cmd: WeilCmd,
    },
    /// Smallest field discriminant among realizations of N.
    DeltaMin { n: i128 },
    /// Hilbert class polynomial of a discriminant.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        d: i64,
    },
    /// Glue along 2-torsion.
    Glue2(GlueArgs),
    /// Glue along 3-torsion.
    Glue3(GlueArgs),
    /// Check a certificate file.
    Verify { file: PathBuf },
    /// Check the 10^2013-point curve (slow).
    #[command(name = "verify-2013")]
    Verify2013 {
        /// Acknowledge the long running time.
        #[arg(long)]
        slow: bool,
        /// Exponents of 5, 4w+1 and w+1 in nu, for small-scale runs.
        #[arg(long, value_delimiter = ',')]
        exponents: Option<Vec<u32>>,
        /// Index of the root of u^3 + u + 1.
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
}

#[derive(Subcommand)]
enum WeilCmd {
    /// All (q, a, b) with f(1) = N, as CSV.
    Enum { n: i128 },
    /// The recipe polynomial for N in the central interval of a prime q.
    Central { q: i128, n: i128 },
}

#[derive(Args)]
struct GlueArgs {
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    e1: String,
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    e2: String,
    #[arg(short)]
    p: String,
}

/// Usage errors exit with 1, rejected inputs or certificates with 2.
enum Fail {
    Usage(String),
    Rejected(String),
}

type Outcome = Result<(), Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("json"));
}

fn parse_uint(s: &str, what: &str) -> Result<BigUint, Fail> {
    s.trim().parse().map_err(|_| usage(format!("{what}: not a non-negative integer: {s:?}")))
}

fn parse_curve(field: &std::sync::Arc<PrimeField>, s: &str) -> Result<EllipticCurve, Fail> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!("expected A,B, got {s:?}")));
    }
    let a: BigInt = parts[0].trim().parse().map_err(|_| usage(format!("bad A in {s:?}")))?;
    let b: BigInt = parts[1].trim().parse().map_err(|_| usage(format!("bad B in {s:?}")))?;
    EllipticCurve::from_ints(field, &a, &b).map_err(|e| usage(format!("{s}: {e}")))
}

fn curve_json(c: &Genus2Curve) -> Value {
    json!({
        "t": c.t().value().to_string(),
        "f_coeffs": c.coeff_values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

fn cmd_construct(
    cfg: &Config,
    n: &str,
    factors: Option<&str>,
    out: Option<&PathBuf>,
) -> Outcome {
    let n = parse_uint(n, "N")?;
    if let Err(e) = check_input(&n) {
        return Err(usage(e.to_string()));
    }
    let factors = match factors {
        Some(text) => parse_factors(text, &n).map_err(|e| usage(e.to_string()))?,
        None if n.bits() < AUTO_FACTOR_BITS => factor(&n, FACTOR_BUDGET).map_err(|e| Fail::Rejected(e.to_string()))?,
        None => return Err(usage("N >= 2^96: pass --factors")),
    };
    let cert = construct_genus2(&n, &factors, cfg, cfg.prng_seed).map_err(|e| match e {
        ConstructFailure::InputRejected(m) | ConstructFailure::BadFactorization(m) => usage(m),
        e => Fail::Rejected(e.to_string()),
    })?;
    let text = cert.to_json_pretty();
    match out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n")).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            log::info!("certificate written to {}", path.display());
        }
        None => emit(&text),
    }
    Ok(())
}

fn cmd_weil(cmd: &WeilCmd, seed: u64) -> Outcome {
    match cmd {
        WeilCmd::Enum { n } => {
            if *n < 1 {
                return Err(usage("N must be positive"));
            }
            let mut out = std::io::stdout().lock();
            let mut rows = vec!["q,a,b,ordinary,irreducible,seed".to_string()];
            rows.extend(enumerate_realizations(*n, None).iter().map(|r| {
                format!("{},{},{},{},{},{seed}", r.weil.q, r.weil.a, r.weil.b, r.ordinary, r.irreducible)
            }));
            for row in rows {
                // a closed pipe just ends the listing
                if writeln!(out, "{row}").is_err() {
                    break;
                }
            }
        }
        WeilCmd::Central { q, n } => {
            let w = central_weil(*q, *n).map_err(|e| usage(format!("{}: {e}", e.code())))?;
            print_json(&json!({
                "q": q.to_string(),
                "N": n.to_string(),
                "a": w.a.to_string(),
                "b": w.b.to_string(),
                "f": format_int_poly(&w.coeffs_low_first(), "x"),
                "seed": seed,
            }));
        }
    }
    Ok(())
}

fn cmd_delta_min(n: i128, seed: u64) -> Outcome {
    if n < 1 {
        return Err(usage("N must be positive"));
    }
    let rec = minimal_delta(n, FACTOR_BUDGET).map_err(|e| Fail::Rejected(format!("{}: {e}", e.code())))?;
    let reals: Vec<Value> = rec
        .realizations
        .iter()
        .map(|r| {
            json!({
                "q": r.weil.q.to_string(),
                "a": r.weil.a.to_string(),
                "b": r.weil.b.to_string(),
                "ordinary": r.ordinary,
                "irreducible": r.irreducible,
                "poly_discriminant": r.poly_discriminant.to_string(),
                "field_discriminant": r.field_discriminant.as_ref().map(|d| d.to_string()),
            })
        })
        .collect();
    print_json(&json!({
        "N": n.to_string(),
        "delta": rec.delta.to_string(),
        "has_reducible": rec.has_reducible,
        "realizations": reals,
        "seed": seed,
    }));
    Ok(())
}

fn cmd_glue(args: &GlueArgs, three: bool, seed: u64) -> Outcome {
    let p = parse_uint(&args.p, "p")?;
    let field = PrimeField::new(p).map_err(|e| usage(e.to_string()))?;
    let e1 = parse_curve(&field, &args.e1)?;
    let e2 = parse_curve(&field, &args.e2)?;
    let curves = if three { glue3(&e1, &e2) } else { glue2(&e1, &e2) }
        .map_err(|e| usage(format!("{}: {e}", e.code())))?;
    print_json(&json!({
        "p": field.p().to_string(),
        "method": if three { "3-torsion" } else { "2-torsion" },
        "curves": curves.iter().map(curve_json).collect::<Vec<_>>(),
        "seed": seed,
    }));
    Ok(())
}

fn cmd_verify(file: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let cert = CurveCertificate::from_json(&text).map_err(|e| Fail::Rejected(format!("parse: {e}")))?;
    verify_certificate(&cert).map_err(|r| Fail::Rejected(format!("rejected at {r}")))?;
    print_json(&json!({
        "valid": true,
        "N": cert.n.0.to_string(),
        "p": cert.p.0.to_string(),
        "seed": cert.construction_log.seed,
    }));
    Ok(())
}

fn cmd_verify_2013(slow: bool, exponents: Option<&[u32]>, root: usize, seed: u64) -> Outcome {
    let params = match exponents {
        Some(&[five, four, one]) => FixtureParams { five, four, one },
        Some(_) => return Err(usage("--exponents takes three values")),
        None => FixtureParams::FULL,
    };
    if params == FixtureParams::FULL && !slow {
        return Err(usage("the full check takes minutes; pass --slow to run it"));
    }
    let r = verify_fixture_with(params, root, seed).map_err(|e| Fail::Rejected(e.to_string()))?;
    print_json(&json!({
        "N": r.n.to_string(),
        "p": r.p.to_string(),
        "digits": r.digits,
        "u": r.u.value().to_string(),
        "curve": curve_json(&r.curve),
        "ordinary": {"A": r.ordinary.a().value().to_string(), "B": r.ordinary.b().value().to_string()},
        "supersingular": {"A": r.supersingular.a().value().to_string(), "B": r.supersingular.b().value().to_string()},
        "certificate": {
            "order": r.certificate.order.to_string(),
            "lcm": r.certificate.lcm.to_string(),
            "witnesses": r.certificate.witnesses.iter()
                .map(|(x, y, o)| [x.to_string(), y.to_string(), o.to_string()]).collect::<Vec<_>>(),
        },
        "count": r.count.as_ref().map(|c| c.to_string()),
        "point_count": r.point_count().to_string(),
        "seed": seed,
    }));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut cfg = Config::from_env();
    if let Some(s) = cli.seed {
        cfg.prng_seed = s;
    }
    if cli.cache_dir.is_some() {
        cfg.cache_dir = cli.cache_dir.clone();
    }
    cfg.parallelism = cli.threads;
    if cfg.parallelism > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build_global();
    }
    let seed = cfg.prng_seed;
    eprintln!("seed={seed}");

    let res = match &cli.cmd {
        Cmd::Construct { n, factors, out, discriminant_budget } => {
            if let Some(b) = discriminant_budget {
                cfg.discriminant_budget = *b;
            }
            cmd_construct(&cfg, n, factors.as_deref(), out.as_ref())
        }
        Cmd::Weil { cmd } => cmd_weil(cmd, seed),
        Cmd::DeltaMin { n } => cmd_delta_min(*n, seed),
        Cmd::Hilbert { d } => {
            let cache = cfg.cache_dir.as_deref().map(ClassPolyCache::open);
            match class_polynomial(*d, cache.as_ref()) {
                Ok(h) => {
                    emit(&format_int_poly(&h, "x"));
                    Ok(())
                }
                Err(e) => Err(usage(format!("{}: {e}", e.code()))),
            }
        }
        Cmd::Glue2(a) => cmd_glue(a, false, seed),
        Cmd::Glue3(a) => cmd_glue(a, true, seed),
        Cmd::Verify { file } => cmd_verify(file),
        Cmd::Verify2013 { slow, exponents, root } => cmd_verify_2013(*slow, exponents.as_deref(), *root, seed),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Rejected(m)) => {
            eprintln!("failed: {m}");
            ExitCode::from(2)
        }
    }
}
