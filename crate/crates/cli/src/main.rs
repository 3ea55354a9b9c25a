//! `subconvex`: batch experiments on subconvex sets, emitting CSV.
//!
//! Exit status is 0 on success, 1 when a computation fails (the error class
//! is printed on stderr) and 2 for usage errors.

mod ladder;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use subconvex::arith::{self, ArithKind};
use subconvex::equidist::{self, DEFAULT_M_MAX};
use subconvex::moments::{self, DEFAULT_GRID_FACTOR};
use subconvex::phase::{Coeff, PolyCoeffs};
use subconvex::real::RealSpec;
use subconvex::sets::{self, SetExpr};
use subconvex::weyl::{self, DEFAULT_EPSILON};

use crate::ladder::{Ladder, RealList};
use crate::output::{emit, fmt_sig, verify_manifest, Table, Verification};

#[derive(Parser, Debug)]
#[command(name = "subconvex", version, about = "Numerical experiments on subconvex L^p-sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Out {
    /// Write the CSV here and a key=value manifest to PATH.manifest;
    /// without it the CSV goes to stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element counts A(N) and densities A(N)/N along a ladder.
    SetReport {
        #[arg(long)]
        set: SetExpr,
        #[arg(long)]
        ladder: Ladder,
        #[command(flatten)]
        out: Out,
    },
    /// Continuous moments I_p(N) along a ladder.
    MomentScan {
        #[arg(long)]
        set: SetExpr,
        /// Comma-separated exponents.
        #[arg(long)]
        p: RealList,
        #[arg(long)]
        ladder: Ladder,
        /// Grid points per unit of N, rounded up to a power of two.
        #[arg(long, default_value_t = DEFAULT_GRID_FACTOR)]
        grid_factor: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Discrete moments S_p(N; q) over a ladder of moduli.
    DiscreteMoment {
        #[arg(long)]
        set: SetExpr,
        #[arg(long)]
        p: f64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        q_ladder: Ladder,
        #[command(flatten)]
        out: Out,
    },
    /// Restricted Weyl sum of α·n^k against its bound envelope.
    WeylScan {
        #[arg(long, default_value = "naturals")]
        set: SetExpr,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        p: f64,
        /// Leading coefficient α.
        #[arg(long)]
        alpha: RealSpec,
        #[arg(long = "N")]
        n: Ladder,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Star discrepancy of {ψ(a_n)} over a ladder of sequence lengths.
    Equidist {
        #[arg(long)]
        set: SetExpr,
        /// Coefficients α_0 … α_k.
        #[arg(long)]
        poly: PolyCoeffs,
        #[arg(long)]
        m_ladder: Ladder,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: u32,
        /// Also write the Weyl-criterion statistics to this CSV.
        #[arg(long, value_name = "PATH")]
        weyl_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Restricted average of an arithmetic function and its Hölder bound.
    ArithAvg {
        /// mobius | mangoldt | tau | char:Q:T | mobius-phase:K:REAL | mangoldt-phase:K:REAL
        #[arg(long = "fn")]
        func: ArithKind,
        #[arg(long)]
        set: SetExpr,
        #[arg(long = "N")]
        n: Ladder,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_FACTOR)]
        grid_factor: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Re-hash the CSV named in a manifest and compare.
    VerifyManifest { manifest: PathBuf },
}

enum Failure {
    Compute(subconvex::Error),
    Io(std::io::Error),
    Mismatch { expected: String, actual: String },
}

impl From<subconvex::Error> for Failure {
    fn from(e: subconvex::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Manifest = Vec<(String, String)>;

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn int(v: impl Into<u64>) -> String {
    v.into().to_string()
}

fn set_report(set: &SetExpr, ladder: &Ladder) -> Result<Vec<u8>, Failure> {
    let mut t = Table::new(&["set_expr", "N", "count", "density"]);
    let expr = set.to_string();
    for pt in sets::count_ladder(set, ladder.points())? {
        t.row(&[expr.clone(), int(pt.n), int(pt.count), fmt_sig(pt.density)]);
    }
    Ok(t.into_bytes())
}

fn moment_scan(set: &SetExpr, ps: &[f64], ladder: &Ladder, grid_factor: u64) -> Result<Vec<u8>, Failure> {
    let mut ps = ps.to_vec();
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    let rows = moments::moment_ladder(set, &ps, ladder.points(), grid_factor)?;
    let mut t = Table::new(&["set_expr", "p", "N", "M", "value", "refinement_delta", "ratio_to_bound"]);
    let expr = set.to_string();
    for per_p in rows {
        for e in per_p {
            t.row(&[
                expr.clone(),
                fmt_sig(e.p),
                int(e.n),
                int(e.grid_size as u64),
                fmt_sig(e.value),
                fmt_sig(e.refinement_delta),
                fmt_sig(e.ratio_to_bound()),
            ]);
        }
    }
    Ok(t.into_bytes())
}

fn discrete_moment(set: &SetExpr, p: f64, n: u64, qs: &Ladder) -> Result<Vec<u8>, Failure> {
    let slice = sets::materialize(set, n)?;
    let mut t = Table::new(&["set_expr", "p", "N", "q", "value", "ratio_to_bound"]);
    let expr = set.to_string();
    for d in moments::discrete_moment_screen(&slice, p, qs.points())? {
        t.row(&[expr.clone(), fmt_sig(d.p), int(d.n), int(d.q), fmt_sig(d.value), fmt_sig(d.ratio)]);
    }
    Ok(t.into_bytes())
}

fn weyl_scan(set: &SetExpr, degree: u32, p: f64, alpha: &RealSpec, ns: &Ladder, epsilon: f64) -> Result<Vec<u8>, Failure> {
    let poly = PolyCoeffs::monomial(degree as usize, Coeff::Real(alpha.clone()))?;
    let mut t = Table::new(&[
        "set_expr", "k", "p", "N", "a", "q", "epsilon", "omega", "envelope", "observed_abs", "ratio",
    ]);
    let expr = set.to_string();
    let top = if set.is_prefix_consistent() {
        Some(sets::materialize(set, *ns.points().last().unwrap())?)
    } else {
        None
    };
    for &n in ns.points() {
        let slice = match &top {
            Some(s) => s.prefix(n)?,
            None => sets::materialize(set, n)?,
        };
        let r = weyl::weyl_screen(&slice, &poly, p, epsilon)?;
        t.row(&[
            expr.clone(),
            r.k.to_string(),
            fmt_sig(r.p),
            int(r.n),
            r.approx.a.to_string(),
            int(r.approx.q),
            fmt_sig(r.epsilon),
            fmt_sig(r.omega),
            fmt_sig(r.envelope),
            fmt_sig(r.observed_abs),
            fmt_sig(r.ratio),
        ]);
    }
    Ok(t.into_bytes())
}

fn equidist(set: &SetExpr, poly: &PolyCoeffs, ms: &Ladder, mmax: u32) -> Result<(Vec<u8>, Vec<u8>), Failure> {
    let lengths: Vec<usize> = ms.points().iter().map(|&m| m as usize).collect();
    let reports = equidist::equidist_experiment(set, poly, &lengths, mmax)?;
    let (expr, poly_text) = (set.to_string(), poly.to_string());
    let mut d = Table::new(&["set_expr", "poly", "M", "star_discrepancy"]);
    let mut w = Table::new(&["set_expr", "poly", "M", "m", "weyl_stat"]);
    for r in &reports {
        d.row(&[expr.clone(), poly_text.clone(), int(r.m as u64), fmt_sig(r.star_discrepancy)]);
        for &(m, s) in &r.weyl_stats {
            w.row(&[expr.clone(), poly_text.clone(), int(r.m as u64), int(m), fmt_sig(s)]);
        }
    }
    Ok((d.into_bytes(), w.into_bytes()))
}

fn arith_avg(func: &ArithKind, set: &SetExpr, ns: &Ladder, p: f64, grid_factor: u64) -> Result<Vec<u8>, Failure> {
    let mut t = Table::new(&[
        "fn", "set_expr", "N", "p", "restricted_avg_abs", "hf_sup", "hf_l2", "bound_rhs", "ratio",
    ]);
    let (fname, expr) = (func.to_string(), set.to_string());
    for &n in ns.points() {
        let f = arith::sieve(func, n)?;
        let slice = sets::materialize(set, n)?;
        let grid = subconvex::fft::default_grid(n, grid_factor.max(DEFAULT_GRID_FACTOR));
        let r = arith::arith_screen(&f, &slice, p, grid)?;
        t.row(&[
            fname.clone(),
            expr.clone(),
            int(r.n),
            fmt_sig(r.p),
            fmt_sig(r.restricted_avg_abs),
            fmt_sig(r.hf_sup),
            fmt_sig(r.hf_l2),
            fmt_sig(r.bound_rhs),
            fmt_sig(r.ratio),
        ]);
    }
    Ok(t.into_bytes())
}

fn run(cmd: Command) -> Result<(), Failure> {
    let start = Instant::now();
    let version = kv("tool_version", env!("CARGO_PKG_VERSION"));
    let (name, bytes, out, mut manifest): (&str, Vec<u8>, Option<PathBuf>, Manifest) = match cmd {
        Command::SetReport { set, ladder, out } => (
            "set-report",
            set_report(&set, &ladder)?,
            out.out,
            vec![kv("flag.set", &set), kv("flag.ladder", &ladder), kv("set_expr", &set), kv("ladder", &ladder)],
        ),
        Command::MomentScan { set, p, ladder, grid_factor, out } => {
            let ps = p.0;
            let p_text = ps.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            (
                "moment-scan",
                moment_scan(&set, &ps, &ladder, grid_factor)?,
                out.out,
                vec![
                    kv("flag.set", &set),
                    kv("flag.p", &p_text),
                    kv("flag.ladder", &ladder),
                    kv("flag.grid-factor", grid_factor),
                    kv("set_expr", &set),
                    kv("ladder", &ladder),
                ],
            )
        }
        Command::DiscreteMoment { set, p, n, q_ladder, out } => (
            "discrete-moment",
            discrete_moment(&set, p, n, &q_ladder)?,
            out.out,
            vec![
                kv("flag.set", &set),
                kv("flag.p", p),
                kv("flag.N", n),
                kv("flag.q-ladder", &q_ladder),
                kv("set_expr", &set),
                kv("ladder", &q_ladder),
            ],
        ),
        Command::WeylScan { set, degree, p, alpha, n, epsilon, out } => (
            "weyl-scan",
            weyl_scan(&set, degree, p, &alpha, &n, epsilon)?,
            out.out,
            vec![
                kv("flag.set", &set),
                kv("flag.degree", degree),
                kv("flag.p", p),
                kv("flag.alpha", &alpha),
                kv("flag.N", &n),
                kv("flag.epsilon", epsilon),
                kv("set_expr", &set),
                kv("ladder", &n),
            ],
        ),
        Command::Equidist { set, poly, m_ladder, mmax, weyl_out, out } => {
            let (d, w) = equidist(&set, &poly, &m_ladder, mmax)?;
            let mut manifest = vec![
                kv("flag.set", &set),
                kv("flag.poly", &poly),
                kv("flag.m-ladder", &m_ladder),
                kv("flag.mmax", mmax),
                kv("set_expr", &set),
                kv("ladder", &m_ladder),
            ];
            if let Some(path) = &weyl_out {
                let mut wm = manifest.clone();
                wm.extend([kv("subcommand", "equidist"), version.clone()]);
                wm.push(kv("wall_clock_seconds", fmt_sig(start.elapsed().as_secs_f64())));
                emit(Some(path), &w, &wm)?;
                manifest.push(kv("weyl_out", path.display()));
            }
            ("equidist", d, out.out, manifest)
        }
        Command::ArithAvg { func, set, n, p, grid_factor, out } => (
            "arith-avg",
            arith_avg(&func, &set, &n, p, grid_factor)?,
            out.out,
            vec![
                kv("flag.fn", &func),
                kv("flag.set", &set),
                kv("flag.N", &n),
                kv("flag.p", p),
                kv("flag.grid-factor", grid_factor),
                kv("set_expr", &set),
                kv("ladder", &n),
            ],
        ),
        Command::VerifyManifest { manifest } => {
            return match verify_manifest(&manifest)? {
                Verification::Match => {
                    println!("ok {}", manifest.display());
                    Ok(())
                }
                Verification::Mismatch { expected, actual } => Err(Failure::Mismatch { expected, actual }),
            };
        }
    };
    manifest.insert(0, kv("subcommand", name));
    manifest.push(version);
    manifest.push(kv("wall_clock_seconds", fmt_sig(start.elapsed().as_secs_f64())));
    emit(out.as_deref().map(Path::new), &bytes, &manifest)?;
    Ok(())
}

fn configure_threads() -> Result<(), String> {
    let Ok(text) = std::env::var("SUBCONVEX_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SUBCONVEX_THREADS must be a positive integer, got {text:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Compute(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: Io: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch { expected, actual }) => {
            eprintln!("error: ManifestMismatch: expected sha256 {expected}, found {actual}");
            ExitCode::from(1)
        }
    }
}
