//! The `conegeom` binary: cone-measure divergences, affine surface areas, surface
//! bodies, and the verification suite, from the command line.
//!
//! Every computed quantity is emitted as one JSON object per line on stdout;
//! tables and CSV plot data are side channels. Runs are deterministic for a
//! fixed seed: records are byte-identical unless `--timings` is set.

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use conegeom::affine::{self, PParameter};
use conegeom::body::descriptor::{parse_body, BodyDescriptor};
use conegeom::divergence::{self, ExtendedValue, Order, Pairing};
use conegeom::oracle;
use conegeom::record::ComputationRecord;
use conegeom::surface::{self, BoundaryWeight, KlVariant, SurfaceOptions, WeightSpec};
use conegeom::verify::{self, Suite};
use conegeom::{Body, Error, QuadSettings};
use sha2::{Digest, Sha256};
use std::io::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "conegeom",
    version,
    about = "Rényi divergences of cone measures and L_p-affine surface areas of convex bodies"
)]
struct Cli {
    /// relative quadrature tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// RNG seed for Monte Carlo rules
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// include wall-times in records (breaks byte-for-byte determinism)
    #[arg(long, global = true)]
    timings: bool,
    /// run single-threaded
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// L_p-affine surface areas of a body
    Asp(AspArgs),
    /// Rényi divergences of the cone measures of a body and its polar
    Renyi(RenyiArgs),
    /// mixed divergences / mixed p-affine surface areas of several bodies
    Mixed(MixedArgs),
    /// the Ω and A invariants, with an optional p-limit diagnostic
    Omega(OmegaArgs),
    /// surface-body volumes, quotients and the extrapolated limit
    SurfaceBody(SurfaceArgs),
    /// closed-form oracles (l_r Gamma formulas, volumes, the disk law)
    Oracle(OracleArgs),
    /// run acceptance criteria; exit 1 on any failure
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AspArgs {
    /// body descriptor file (JSON)
    #[arg(long)]
    body: PathBuf,
    /// comma-separated list: finite reals, +inf, -inf, -n+, -n-
    #[arg(long, value_delimiter = ',')]
    p: Vec<String>,
}

#[derive(Args)]
struct RenyiArgs {
    #[arg(long)]
    body: PathBuf,
    /// comma-separated orders (reals; 1 is KL; inf/-inf allowed)
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<String>,
    /// direction: PQ or QP
    #[arg(long, default_value = "QP")]
    dir: String,
}

#[derive(Args)]
struct MixedArgs {
    /// body descriptor files (repeat n times for dimension n)
    #[arg(long = "body", required = true)]
    bodies: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "")]
    alpha: Vec<String>,
    /// also compute mixed p-affine surface areas at these p
    #[arg(long, value_delimiter = ',', default_value = "")]
    p: Vec<String>,
    #[arg(long, default_value = "QP")]
    dir: String,
}

#[derive(Args)]
struct OmegaArgs {
    #[arg(long)]
    body: PathBuf,
    /// increasing p list for the limit diagnostic
    #[arg(long = "p-list", value_delimiter = ',', default_value = "")]
    p_list: Vec<String>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    body: PathBuf,
    /// const[:c] | fp:<p> | fqp | fpq | fpq-printed | mixed:<p>
    #[arg(long, default_value = "const")]
    weight: String,
    /// geometric grid start:ratio:count (ratio <= 1/2)
    #[arg(long = "s-grid", default_value = "1e-1:0.5:8")]
    s_grid: String,
    /// write s,volume,quotient rows as CSV
    #[arg(long = "plot-out")]
    plot_out: Option<PathBuf>,
    /// bodies of the mixed weight (exactly n files)
    #[arg(long = "mixed-body")]
    mixed_bodies: Vec<PathBuf>,
    /// boundary cells (default 2^14)
    #[arg(long)]
    cells: Option<usize>,
    /// starting direction count (doubled until stable)
    #[arg(long)]
    directions: Option<usize>,
    /// also extrapolate the illumination surface body
    #[arg(long)]
    illumination: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// lr-renyi | lr-volume | disk-law
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value = "QP")]
    dir: String,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// all | identities | oracle | surface | polytope | balls
    #[arg(long, default_value = "all")]
    suite: String,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            classify_exit(&err)
        }
    });
}

/// exit 2 for invalid input, 3 for non-convergence
fn classify_exit(err: &anyhow::Error) -> i32 {
    if let Some(e) = err.downcast_ref::<Error>() {
        match e {
            Error::NonConvergence(_) => 3,
            _ => 2,
        }
    } else {
        2
    }
}

struct Ctx {
    st: QuadSettings,
    timings: bool,
}

impl Ctx {
    fn emit(&self, rec: &mut ComputationRecord, started: std::time::Instant) {
        if self.timings {
            rec.wall_time = Some(started.elapsed().as_secs_f64());
        }
        println!("{}", serde_json::to_string(rec).expect("record serializes"));
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let mut st = QuadSettings::default();
    if let Some(t) = cli.tol {
        st.rtol = t;
    }
    if let Some(s) = cli.seed {
        st.seed = s;
    }
    if cli.sequential {
        conegeom::par::set_parallel(false);
    }
    let ctx = Ctx {
        st,
        timings: cli.timings,
    };
    match cli.command {
        Command::Asp(args) => cmd_asp(&ctx, args),
        Command::Renyi(args) => cmd_renyi(&ctx, args),
        Command::Mixed(args) => cmd_mixed(&ctx, args),
        Command::Omega(args) => cmd_omega(&ctx, args),
        Command::SurfaceBody(args) => cmd_surface(&ctx, args),
        Command::Oracle(args) => cmd_oracle(&ctx, args),
        Command::Verify(args) => cmd_verify(&ctx, args),
    }
}

fn load_body(path: &PathBuf) -> anyhow::Result<(Body, String)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading body descriptor {}", path.display()))?;
    let desc: BodyDescriptor = serde_json::from_str(&text)
        .map_err(|e| Error::Descriptor(e.to_string()))
        .context("parsing body descriptor")?;
    let body = parse_body(&desc)?;
    // serde_json maps are sorted, so reserializing the parsed descriptor is
    // a canonical form
    let canon = serde_json::to_string(&desc)?;
    let digest = hex::encode(Sha256::digest(canon.as_bytes()));
    Ok((body, digest[..16].to_string()))
}

fn parse_dir(s: &str) -> anyhow::Result<Pairing> {
    match s {
        "PQ" | "pq" => Ok(Pairing::PQ),
        "QP" | "qp" => Ok(Pairing::QP),
        other => Err(Error::InvalidArgument(format!(
            "direction must be PQ or QP, got {other}"
        )))?,
    }
}

fn parse_alpha(s: &str) -> anyhow::Result<Order> {
    let a = match s {
        "inf" | "+inf" => f64::INFINITY,
        "-inf" => f64::NEG_INFINITY,
        other => other
            .parse::<f64>()
            .map_err(|_| Error::InvalidArgument(format!("bad alpha '{other}'")))?,
    };
    Ok(Order::from_alpha(a))
}

fn parse_p(s: &str, n: usize) -> anyhow::Result<PParameter> {
    Ok(match s {
        "+inf" | "inf" => PParameter::PlusInf,
        "-inf" => PParameter::MinusInf,
        "-n+" => PParameter::AtMinusNRight,
        "-n-" => PParameter::AtMinusNLeft,
        other => {
            let p = other
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad p '{other}'")))?;
            PParameter::finite(p, n)?
        }
    })
}

fn params(pairs: &[(&str, serde_json::Value)]) -> serde_json::Map<String, serde_json::Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn cmd_asp(ctx: &Ctx, args: AspArgs) -> anyhow::Result<i32> {
    let (body, digest) = load_body(&args.body)?;
    for ps in &args.p {
        let started = std::time::Instant::now();
        let param = parse_p(ps, body.dim())?;
        let val = affine::as_p(&body, param, &ctx.st)?;
        let mut rec = ComputationRecord::new(
            "asp",
            &digest,
            params(&[("p", serde_json::json!(ps))]),
            &val,
            0.0,
        );
        ctx.emit(&mut rec, started);
    }
    Ok(0)
}

fn cmd_renyi(ctx: &Ctx, args: RenyiArgs) -> anyhow::Result<i32> {
    let (body, digest) = load_body(&args.body)?;
    let dir = parse_dir(&args.dir)?;
    for astr in &args.alpha {
        let started = std::time::Instant::now();
        let order = parse_alpha(astr)?;
        let val = divergence::renyi(&body, order, dir, &ctx.st)?;
        let mut rec = ComputationRecord::new(
            "renyi",
            &digest,
            params(&[
                ("alpha", serde_json::json!(astr)),
                ("dir", serde_json::json!(args.dir)),
            ]),
            &val,
            0.0,
        );
        ctx.emit(&mut rec, started);
    }
    Ok(0)
}

fn cmd_mixed(ctx: &Ctx, args: MixedArgs) -> anyhow::Result<i32> {
    let mut bodies = Vec::new();
    let mut digests = Vec::new();
    for p in &args.bodies {
        let (b, d) = load_body(p)?;
        bodies.push(b);
        digests.push(d);
    }
    let digest = digests.join("+");
    let dir = parse_dir(&args.dir)?;
    for astr in args.alpha.iter().filter(|s| !s.is_empty()) {
        let started = std::time::Instant::now();
        let alpha: f64 = astr
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad alpha '{astr}'")))?;
        let val = divergence::mixed_renyi(&bodies, alpha, dir, &ctx.st)?;
        let mut rec = ComputationRecord::new(
            "mixed-renyi",
            &digest,
            params(&[
                ("alpha", serde_json::json!(alpha)),
                ("dir", serde_json::json!(args.dir)),
            ]),
            &val,
            0.0,
        );
        ctx.emit(&mut rec, started);
    }
    for pstr in args.p.iter().filter(|s| !s.is_empty()) {
        let started = std::time::Instant::now();
        let param = parse_p(pstr, bodies.first().map(|b| b.dim()).unwrap_or(2))?;
        let val = affine::mixed_as_p(&bodies, param, &ctx.st)?;
        let mut rec = ComputationRecord::new(
            "mixed-asp",
            &digest,
            params(&[("p", serde_json::json!(pstr))]),
            &val,
            0.0,
        );
        ctx.emit(&mut rec, started);
    }
    Ok(0)
}

fn cmd_omega(ctx: &Ctx, args: OmegaArgs) -> anyhow::Result<i32> {
    let (body, digest) = load_body(&args.body)?;
    let started = std::time::Instant::now();
    let o = affine::omega(&body, &ctx.st)?;
    let mut rec = ComputationRecord::new(
        "omega",
        &digest,
        params(&[("invariant", serde_json::json!("omega"))]),
        &ExtendedValue::finite(o.omega),
        0.0,
    );
    ctx.emit(&mut rec, started);
    let started = std::time::Instant::now();
    let mut rec = ComputationRecord::new(
        "omega",
        &digest,
        params(&[("invariant", serde_json::json!("A"))]),
        &ExtendedValue::finite(o.cal_a),
        0.0,
    );
    ctx.emit(&mut rec, started);
    let ps: Vec<f64> = args
        .p_list
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidArgument("bad p-list".into()))?;
    if !ps.is_empty() {
        let started = std::time::Instant::now();
        let resid = affine::omega_limit_diagnostic(&body, &ps, &ctx.st)?;
        for (p, r) in ps.iter().zip(resid) {
            let mut rec = ComputationRecord::new(
                "omega-limit-diagnostic",
                &digest,
                params(&[("p", serde_json::json!(p))]),
                &ExtendedValue::finite(r),
                0.0,
            );
            ctx.emit(&mut rec, started);
        }
    }
    Ok(0)
}

fn parse_weight(
    body: &Body,
    spec: &str,
    mixed_bodies: &[PathBuf],
) -> anyhow::Result<BoundaryWeight> {
    let ws = if spec == "const" {
        WeightSpec::Const(1.0)
    } else if let Some(c) = spec.strip_prefix("const:") {
        WeightSpec::Const(
            c.parse()
                .map_err(|_| Error::InvalidArgument(format!("bad const weight '{c}'")))?,
        )
    } else if let Some(p) = spec.strip_prefix("fp:") {
        WeightSpec::FP {
            p: p.parse()
                .map_err(|_| Error::InvalidArgument(format!("bad fp weight '{p}'")))?,
        }
    } else if spec == "fqp" {
        WeightSpec::FKl {
            variant: KlVariant::Qp,
        }
    } else if spec == "fpq" {
        WeightSpec::FKl {
            variant: KlVariant::PqCorrected,
        }
    } else if spec == "fpq-printed" {
        WeightSpec::FKl {
            variant: KlVariant::PqPrinted,
        }
    } else if let Some(p) = spec.strip_prefix("mixed:") {
        let p: f64 = p
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad mixed weight '{p}'")))?;
        let bodies = mixed_bodies
            .iter()
            .map(|f| Ok(load_body(f)?.0))
            .collect::<anyhow::Result<Vec<_>>>()?;
        if bodies.is_empty() {
            Err(Error::InvalidArgument(
                "mixed weight needs --mixed-body files".into(),
            ))?;
        }
        WeightSpec::Mixed { bodies, p }
    } else {
        Err(Error::InvalidArgument(format!(
            "unknown weight '{spec}' (const[:c]|fp:<p>|fqp|fpq|fpq-printed|mixed:<p>)"
        )))?
    };
    Ok(BoundaryWeight::new(body, ws)?)
}

fn parse_s_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        Err(Error::InvalidArgument(format!(
            "s-grid must be start:ratio:count, got '{spec}'"
        )))?;
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidArgument("bad s-grid start".into()))?;
    let ratio: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidArgument("bad s-grid ratio".into()))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Error::InvalidArgument("bad s-grid count".into()))?;
    if !(start > 0.0) || !(ratio > 0.0 && ratio <= 0.5) || count < 3 {
        Err(Error::InvalidArgument(
            "s-grid needs start > 0, 0 < ratio <= 1/2, count >= 3".into(),
        ))?;
    }
    Ok((0..count).map(|j| start * ratio.powi(j as i32)).collect())
}

fn cmd_surface(ctx: &Ctx, args: SurfaceArgs) -> anyhow::Result<i32> {
    let (body, digest) = load_body(&args.body)?;
    let weight = parse_weight(&body, &args.weight, &args.mixed_bodies)?;
    let grid = parse_s_grid(&args.s_grid)?;
    let mut opts = SurfaceOptions {
        illumination: args.illumination,
        ..Default::default()
    };
    if let Some(c) = args.cells {
        opts.boundary_cells = c;
    }
    if let Some(d) = args.directions {
        opts.directions = d;
    }
    let started = std::time::Instant::now();
    let res = surface::limit_quotient(&body, &weight, &grid, &opts)?;
    for (i, &s) in res.s_grid.iter().enumerate() {
        let mut rec = ComputationRecord::new(
            "surface-body",
            &digest,
            params(&[
                ("weight", serde_json::json!(args.weight)),
                ("s", serde_json::json!(s)),
                ("volume", serde_json::json!(res.volumes[i])),
            ]),
            &ExtendedValue::finite(res.quotients[i]),
            0.0,
        );
        ctx.emit(&mut rec, started);
    }
    let mut summary = ComputationRecord::new(
        "surface-body-limit",
        &digest,
        params(&[
            ("weight", serde_json::json!(args.weight)),
            ("c_n", serde_json::json!(res.c_n)),
            ("beta", serde_json::json!(res.beta)),
            ("rhs_integral", serde_json::json!(res.rhs_integral)),
            ("directions", serde_json::json!(res.directions_used)),
            ("monotone", serde_json::json!(res.monotone)),
            (
                "illumination_limit",
                serde_json::json!(res.illumination_limit),
            ),
        ]),
        &ExtendedValue::finite(res.limit),
        0.0,
    );
    ctx.emit(&mut summary, started);
    if let Some(path) = &args.plot_out {
        let mut f =
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        writeln!(f, "s,volume,quotient")?;
        for (i, &s) in res.s_grid.iter().enumerate() {
            writeln!(f, "{},{},{}", s, res.volumes[i], res.quotients[i])?;
        }
    }
    if !res.monotone {
        eprintln!("warning: quotients are not monotone; extrapolation may be ill-conditioned");
    }
    Ok(0)
}

fn cmd_oracle(ctx: &Ctx, args: OracleArgs) -> anyhow::Result<i32> {
    let started = std::time::Instant::now();
    match args.kind.as_str() {
        "lr-renyi" => {
            let r = args.r.ok_or(Error::InvalidArgument("need --r".into()))?;
            let alpha = args
                .alpha
                .ok_or(Error::InvalidArgument("need --alpha".into()))?;
            let dir = match parse_dir(&args.dir)? {
                Pairing::PQ => oracle::LrDirection::PQ,
                Pairing::QP => oracle::LrDirection::QP,
            };
            let res = oracle::lr_renyi_closed_form(args.n, r, alpha, dir)?;
            let val = if res.value.is_finite() {
                ExtendedValue::finite(res.value)
            } else {
                ExtendedValue::infinite(res.value, divergence::Reason::Nonintegrable)
            };
            let mut rec = ComputationRecord::new(
                "oracle",
                "-",
                params(&[
                    ("kind", serde_json::json!("lr-renyi")),
                    ("n", serde_json::json!(args.n)),
                    ("r", serde_json::json!(r)),
                    ("alpha", serde_json::json!(alpha)),
                    ("dir", serde_json::json!(args.dir)),
                ]),
                &val,
                0.0,
            );
            ctx.emit(&mut rec, started);
        }
        "lr-volume" => {
            let r = args.r.ok_or(Error::InvalidArgument("need --r".into()))?;
            let v = oracle::lr_volume(args.n, r)?;
            let mut rec = ComputationRecord::new(
                "oracle",
                "-",
                params(&[
                    ("kind", serde_json::json!("lr-volume")),
                    ("n", serde_json::json!(args.n)),
                    ("r", serde_json::json!(r)),
                ]),
                &ExtendedValue::finite(v),
                0.0,
            );
            ctx.emit(&mut rec, started);
        }
        "disk-law" => {
            let rho = args
                .rho
                .ok_or(Error::InvalidArgument("need --rho".into()))?;
            let s = args.s.ok_or(Error::InvalidArgument("need --s".into()))?;
            let law = oracle::disk_surface_body_law(rho, s)?;
            let mut rec = ComputationRecord::new(
                "oracle",
                "-",
                params(&[
                    ("kind", serde_json::json!("disk-law")),
                    ("rho", serde_json::json!(rho)),
                    ("s", serde_json::json!(s)),
                    ("radius", serde_json::json!(law.radius)),
                ]),
                &ExtendedValue::finite(law.area_deficit),
                0.0,
            );
            ctx.emit(&mut rec, started);
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown oracle kind '{other}'"
        )))?,
    }
    Ok(0)
}

fn cmd_verify(ctx: &Ctx, args: VerifyArgs) -> anyhow::Result<i32> {
    let suite = Suite::parse(&args.suite)?;
    let reports = verify::run_suite(suite, &ctx.st)?;
    let mut all = true;
    println!(
        "{:<6} {:<3} {:<36} {:>9} {:>8}",
        "status", "id", "criterion", "worst", "time"
    );
    for rep in &reports {
        let worst = rep
            .checks
            .iter()
            .filter(|c| !c.informational)
            .map(|c| c.value / c.tolerance)
            .fold(0.0f64, f64::max);
        println!(
            "{:<6} {:<3} {:<36} {:>9.2e} {:>7.1}s",
            if rep.passed { "PASS" } else { "FAIL" },
            rep.id,
            rep.name,
            worst,
            rep.seconds
        );
        for c in &rep.checks {
            if !c.passed {
                println!("   FAIL {}: {:.3e} > {:.1e}", c.label, c.value, c.tolerance);
            } else if c.informational {
                println!("   INFO {}: {:.3e}", c.label, c.value);
            }
        }
        all &= rep.passed;
    }
    Ok(if all { 0 } else { 1 })
}
