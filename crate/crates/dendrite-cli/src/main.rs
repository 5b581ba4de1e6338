//! Command-line front end: every verification run and render as a
//! subcommand, producing deterministic JSON/CSV/SVG artifacts.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage or
//! configuration error. Parameter precedence is flags over config file over
//! defaults; randomized commands require an explicit `--seed`.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dendrite::dynamics::{
    connecting_point, mixing_threshold, mixing_window, verify_omega_equals_dr, Cylinder,
    TimedWitness,
};
use dendrite::geometry::{build_net_d_truncated, build_net_dr, render_svg, RenderStyle, Scene};
use dendrite::hyperspace::{arc_profile, lemma_trials};
use dendrite::interval::{
    eventual_period, separation_construct, separation_verify, DensityParams, OmegaSample,
    SeparationClass,
};
use dendrite::itinerary::{apply_f, special_point, Itinerary};
use dendrite::rational::{abs_diff, fmt_rat, parse_rat, Rat};
use dendrite::report::{json_rat, to_json_string};
use dendrite::suite;
use serde_json::json;
use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "dendrite",
    version,
    about = "Exact symbolic dynamics on the universal dendrite"
)]
struct Cli {
    /// Flat `key = value` config file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OmegaParams {
    /// Scale parameter r in `(0,1]`.
    #[arg(long)]
    r: Option<String>,
    /// Burn-in iterations before the orbit tail.
    #[arg(long)]
    skip: Option<u64>,
    /// Orbit tail length.
    #[arg(long)]
    length: Option<u64>,
    /// Net sampling step.
    #[arg(long)]
    eps: Option<String>,
    /// Largest sampled beam index J.
    #[arg(long = "branch-cutoff")]
    branch_cutoff: Option<u32>,
    /// Truncation tolerance for lazy itineraries.
    #[arg(long = "tail-tol")]
    tail_tol: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print an orbit prefix of an itinerary, exactly.
    Iterate {
        /// Itinerary, e.g. `(3,7/10)` or `(0,*gamma[1,1])`.
        itinerary: String,
        /// Number of map applications; prints n+1 states.
        #[arg(short, long)]
        n: Option<u64>,
    },
    /// Hausdorff residual between the special orbit tail and the D_r net.
    VerifyOmega {
        #[command(flatten)]
        params: OmegaParams,
        /// Pass/fail residual tolerance.
        #[arg(long)]
        tol: Option<String>,
    },
    /// Pairwise Hausdorff matrix of D_r nets over a grid, as CSV.
    ArcProfile {
        /// Comma-separated grid of r values in `[0,1]`.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long = "branch-cutoff")]
        branch_cutoff: Option<u32>,
    },
    /// Verified connecting point between two cylinders, plus a mixing window.
    Transitivity {
        /// Source cylinder, e.g. `(1|1/4,3/4)` or `(0,1/2,3|1/8,1/2)`.
        source: String,
        /// Target cylinder.
        target: String,
        #[arg(long)]
        window: Option<u64>,
    },
    /// Verified hitting times for every n in a window.
    Mixing {
        source: String,
        target: String,
        /// First prescribed hitting time; defaults to the threshold.
        #[arg(long = "n-min")]
        n_min: Option<u64>,
        #[arg(long)]
        window: Option<u64>,
    },
    /// Tent-map separator construction and sample classification.
    TentSeparation {
        /// Window half-width around the separated point.
        #[arg(long)]
        delta: Option<String>,
        /// RNG seed for the dense-orbit searches (required).
        #[arg(long)]
        seed: u64,
        /// Number of sampled periodic orbits to classify.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Exhaustive finite-space closure-lemma trials and boundary witnesses.
    Lemmas {
        #[arg(long)]
        trials: Option<u64>,
        /// RNG seed (required).
        #[arg(long)]
        seed: u64,
    },
    /// Render nets and orbit overlays as deterministic SVG.
    Render {
        /// Comma-separated r values; each adds a D_r net.
        #[arg(long = "net-dr")]
        net_dr: Option<String>,
        /// Orbit overlay "itinerary:steps", e.g. `(0,*gamma[1,1]):50`.
        #[arg(long)]
        orbit: Option<String>,
        /// Adds a truncated-dendrite net of this star depth.
        #[arg(long)]
        depth: Option<u32>,
        /// Dyadic level cutoff for the truncated net.
        #[arg(long = "level-cutoff")]
        level_cutoff: Option<u32>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long = "branch-cutoff")]
        branch_cutoff: Option<u32>,
    },
    /// Run the full verification battery.
    Suite,
}

/// Flat `key = value` configuration, lowest-precedence parameter source.
struct Ctx {
    cfg: HashMap<String, String>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn load(path: &Option<PathBuf>, out: Option<PathBuf>) -> Result<Ctx> {
        let mut cfg = HashMap::new();
        if let Some(p) = path {
            let text = fs::read_to_string(p)
                .with_context(|| format!("cannot read config {}", p.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| anyhow!("config line {} is not key = value", lineno + 1))?;
                cfg.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Ctx { cfg, out })
    }

    fn rat(&self, cli: &Option<String>, key: &str, default: &str) -> Result<Rat> {
        let text = cli
            .clone()
            .or_else(|| self.cfg.get(key).cloned())
            .unwrap_or_else(|| default.to_string());
        parse_rat(&text).map_err(|e| anyhow!("parameter {key}: {e}"))
    }

    fn num<T: FromStr + Copy>(&self, cli: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.cfg.get(key) {
            None => Ok(default),
            Some(text) => text.parse().map_err(|e| anyhow!("parameter {key}: {e}")),
        }
    }

    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(p) => {
                fs::write(p, content).with_context(|| format!("cannot write {}", p.display()))?
            }
            None => print!("{content}"),
        }
        Ok(())
    }
}

fn parse_grid(ctx: &Ctx, cli: &Option<String>, default: &str) -> Result<Vec<Rat>> {
    let text = cli
        .clone()
        .or_else(|| ctx.cfg.get("grid").cloned())
        .unwrap_or_else(|| default.to_string());
    text.split(',')
        .map(|t| parse_rat(t.trim()).map_err(|e| anyhow!("grid entry `{t}`: {e}")))
        .collect()
}

fn cmd_iterate(ctx: &Ctx, itinerary: &str, n: Option<u64>) -> Result<u8> {
    let start: Itinerary = itinerary.parse().map_err(|e| anyhow!("itinerary: {e}"))?;
    let n = ctx.num(n, "n", 10u64)?;
    let mut lines = String::new();
    let mut cur = start;
    for _ in 0..=n {
        lines.push_str(&cur.to_string());
        lines.push('\n');
        cur = apply_f(&cur);
    }
    ctx.emit(&lines)?;
    Ok(0)
}

fn cmd_verify_omega(ctx: &Ctx, p: &OmegaParams, tol: &Option<String>) -> Result<u8> {
    let r = ctx.rat(&p.r, "r", "1/2")?;
    if !num_positive(&r) || r > parse_rat("1").unwrap() {
        bail!("r must lie in (0,1], got {}", fmt_rat(&r));
    }
    let skip = ctx.num(p.skip, "skip", 1000u64)?;
    let length = ctx.num(p.length, "length", 20_000u64)?;
    let eps = ctx.rat(&p.eps, "eps", "1/64")?;
    let branch_cutoff = ctx.num(p.branch_cutoff, "branch-cutoff", 16u32)?;
    let tail_tol = ctx.rat(&p.tail_tol, "tail-tol", "1/256")?;
    let tol = ctx.rat(tol, "tol", "1/16")?;
    let residual = verify_omega_equals_dr(&r, skip, length, &eps, branch_cutoff, &tail_tol)?;
    let verified = residual <= tol;
    let report = json!({
        "seed": special_point(&r)?.to_string(),
        "params": {
            "r": json_rat(&r),
            "skip": skip,
            "length": length,
            "eps": json_rat(&eps),
            "branch_cutoff": branch_cutoff,
            "tail_tol": json_rat(&tail_tol),
            "tolerance": json_rat(&tol),
        },
        "residual": json_rat(&residual),
        "verified": verified,
    });
    ctx.emit(&to_json_string(&report))?;
    Ok(if verified { 0 } else { 1 })
}

fn cmd_arc_profile(
    ctx: &Ctx,
    grid: &Option<String>,
    eps: &Option<String>,
    branch_cutoff: Option<u32>,
) -> Result<u8> {
    let grid = parse_grid(ctx, grid, "0,1/8,1/4,3/8,1/2,5/8,3/4,7/8,1")?;
    let eps = ctx.rat(eps, "eps", "1/64")?;
    let branch_cutoff = ctx.num(branch_cutoff, "branch-cutoff", 16u32)?;
    let profile = arc_profile(&grid, &eps, branch_cutoff)?;
    ctx.emit(&profile.to_csv())?;
    // The check: entries stray from |r_i - r_j| by at most the resolutions.
    let mut ok = true;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let expected = abs_diff(&grid[i], &grid[j]);
            let err = abs_diff(&profile.matrix[i][j], &expected);
            if err > &profile.resolutions[i] + &profile.resolutions[j] {
                ok = false;
                eprintln!(
                    "arc-profile: H({},{}) deviates by {}",
                    fmt_rat(&grid[i]),
                    fmt_rat(&grid[j]),
                    fmt_rat(&err)
                );
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_transitivity(ctx: &Ctx, source: &str, target: &str, window: Option<u64>) -> Result<u8> {
    let u = Cylinder::parse(source).map_err(|e| anyhow!("source cylinder: {e}"))?;
    let v = Cylinder::parse(target).map_err(|e| anyhow!("target cylinder: {e}"))?;
    let window = ctx.num(window, "window", 5u64)?;
    let w = connecting_point(&u, &v)?;
    let threshold = mixing_threshold(&u);
    let mixing = mixing_window(&u, &v, threshold, window)?;
    let witness_list: Vec<serde_json::Value> = mixing
        .witnesses
        .iter()
        .map(|tw| match tw {
            TimedWitness::Verified(w) => json!({
                "n": w.n,
                "z": w.z.to_string(),
                "verified": true,
            }),
            TimedWitness::Unreachable { n, reason } => json!({
                "n": n,
                "unreachable": reason,
            }),
        })
        .collect();
    let verified = mixing.unreachable == 0;
    let report = json!({
        "source": u.to_string_compact(),
        "target": v.to_string_compact(),
        "connecting": { "z": w.z.to_string(), "n": w.n },
        "mixing_threshold": threshold,
        "witness_list": witness_list,
        "verified": verified,
    });
    ctx.emit(&to_json_string(&report))?;
    Ok(if verified { 0 } else { 1 })
}

fn cmd_mixing(
    ctx: &Ctx,
    source: &str,
    target: &str,
    n_min: Option<u64>,
    window: Option<u64>,
) -> Result<u8> {
    let u = Cylinder::parse(source).map_err(|e| anyhow!("source cylinder: {e}"))?;
    let v = Cylinder::parse(target).map_err(|e| anyhow!("target cylinder: {e}"))?;
    let threshold = mixing_threshold(&u);
    let n_min = ctx.num(n_min, "n-min", threshold)?;
    let window = ctx.num(window, "window", 10u64)?;
    let report = mixing_window(&u, &v, n_min, window)?;
    let witness_list: Vec<serde_json::Value> = report
        .witnesses
        .iter()
        .map(|tw| match tw {
            TimedWitness::Verified(w) => json!({
                "n": w.n,
                "z": w.z.to_string(),
                "verified": true,
            }),
            TimedWitness::Unreachable { n, reason } => json!({
                "n": n,
                "unreachable": reason,
            }),
        })
        .collect();
    let out = json!({
        "source": u.to_string_compact(),
        "target": v.to_string_compact(),
        "threshold": threshold,
        "n_min": n_min,
        "window": window,
        "verified_count": report.verified,
        "unreachable_count": report.unreachable,
        "witness_list": witness_list,
    });
    ctx.emit(&to_json_string(&out))?;
    // Times below the threshold are honest reports, not failures.
    Ok(0)
}

fn cmd_tent_separation(
    ctx: &Ctx,
    delta: &Option<String>,
    seed: u64,
    samples: Option<u64>,
) -> Result<u8> {
    let delta = ctx.rat(delta, "delta", "1/20")?;
    let samples = ctx.num(samples, "samples", 20u64)?;
    let a = OmegaSample::exact("fixed[2/3]", vec![parse_rat("2/3").unwrap()]);
    let b = OmegaSample::exact(
        "cycle[2/5,4/5]",
        vec![parse_rat("2/5").unwrap(), parse_rat("4/5").unwrap()],
    );
    let density = DensityParams {
        delta: parse_rat("1/32").unwrap(),
        orbit_len: 6000,
        seeds: 24,
        rng_seed: seed,
    };
    let sep = separation_construct(&a, &b, &delta, &density)?;
    // Classify sampled eventual cycles of seeded rationals.
    let mut sampled = Vec::new();
    let mut k = 0u64;
    while (sampled.len() as u64) < samples {
        k += 1;
        let q = 3 + (seed.wrapping_mul(7919).wrapping_add(k * 104_729) % 397);
        let p = 1 + (seed.wrapping_add(k * 31_337) % (q - 1));
        let x = parse_rat(&format!("{p}/{q}")).unwrap();
        let orbit = eventual_period(&x, q + 10).map_err(|e| anyhow!("{e}"))?;
        sampled.push(OmegaSample::exact(
            format!("omega[{}]", fmt_rat(&x)),
            orbit.cycle,
        ));
    }
    let verify = separation_verify(&sep, &sampled);
    let classification: Vec<serde_json::Value> = verify
        .classifications
        .iter()
        .map(|(label, class)| {
            json!({
                "label": label,
                "class": match class {
                    SeparationClass::InU => "U",
                    SeparationClass::InV => "V",
                    SeparationClass::Margin => "margin",
                },
            })
        })
        .collect();
    let classified = verify.in_u + verify.in_v;
    let ok = classified * 20 >= sampled.len() * 19;
    let report = json!({
        "p": json_rat(&sep.p),
        "delta": json_rat(&sep.delta),
        "r1": json_rat(&sep.cut_points[0]),
        "r2": json_rat(&sep.cut_points[1]),
        "window": [json_rat(&sep.window.0), json_rat(&sep.window.1)],
        "u_members": sep
            .u_members
            .iter()
            .map(|i| sep.components[*i].describe())
            .collect::<Vec<_>>(),
        "classification": classification,
        "counts": { "U": verify.in_u, "V": verify.in_v, "margin": verify.margin },
    });
    ctx.emit(&to_json_string(&report))?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_lemmas(ctx: &Ctx, trials: Option<u64>, seed: u64) -> Result<u8> {
    let trials = ctx.num(trials, "trials", 100u64)?;
    let report = lemma_trials(trials, seed)?;
    let ok = report.failures.is_empty();
    ctx.emit(&to_json_string(&report.to_json()))?;
    Ok(if ok { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    ctx: &Ctx,
    net_dr: &Option<String>,
    orbit: &Option<String>,
    depth: Option<u32>,
    level_cutoff: Option<u32>,
    eps: &Option<String>,
    branch_cutoff: Option<u32>,
) -> Result<u8> {
    let eps = ctx.rat(eps, "eps", "1/32")?;
    let branch_cutoff = ctx.num(branch_cutoff, "branch-cutoff", 8u32)?;
    let mut scene = Scene::default();
    if let Some(list) = net_dr.clone().or_else(|| ctx.cfg.get("net-dr").cloned()) {
        for token in list.split(',') {
            let r = parse_rat(token.trim()).map_err(|e| anyhow!("net-dr entry `{token}`: {e}"))?;
            scene.nets.push(build_net_dr(&r, &eps, branch_cutoff)?);
        }
    }
    if let Some(depth) = ctx.num(depth, "depth", 0u32).map(Some)?.filter(|d| *d > 0) {
        let level_cutoff = ctx.num(level_cutoff, "level-cutoff", 2u32)?;
        scene.nets.push(build_net_d_truncated(
            depth,
            branch_cutoff,
            level_cutoff,
            &eps,
        )?);
    }
    if let Some(spec) = orbit.clone().or_else(|| ctx.cfg.get("orbit").cloned()) {
        let (it_text, steps) = spec
            .rsplit_once(':')
            .ok_or_else(|| anyhow!("orbit spec must be itinerary:steps"))?;
        let start: Itinerary = it_text
            .parse()
            .map_err(|e| anyhow!("orbit itinerary: {e}"))?;
        let steps: usize = steps.parse().map_err(|e| anyhow!("orbit steps: {e}"))?;
        let mut pts = Vec::with_capacity(steps);
        let mut cur = start;
        for _ in 0..steps {
            pts.push(cur.clone());
            cur = apply_f(&cur);
        }
        scene.orbits.push((spec.clone(), pts));
    }
    if scene.nets.is_empty() && scene.orbits.is_empty() {
        // Default scene: the unit star with a short special orbit.
        scene
            .nets
            .push(build_net_dr(&parse_rat("1").unwrap(), &eps, branch_cutoff)?);
    }
    ctx.emit(&render_svg(&scene, &RenderStyle::default()))?;
    Ok(0)
}

fn cmd_suite(ctx: &Ctx) -> Result<u8> {
    let results = suite::run_all();
    let mut lines = String::new();
    let mut ok = true;
    for r in &results {
        lines.push_str(&r.line());
        lines.push('\n');
        ok &= r.passed;
    }
    ctx.emit(&lines)?;
    Ok(if ok { 0 } else { 1 })
}

fn num_positive(r: &Rat) -> bool {
    *r > Rat::new(0.into(), 1.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match Ctx::load(&cli.config, cli.out.clone()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Iterate { itinerary, n } => cmd_iterate(&ctx, itinerary, *n),
        Command::VerifyOmega { params, tol } => cmd_verify_omega(&ctx, params, tol),
        Command::ArcProfile {
            grid,
            eps,
            branch_cutoff,
        } => cmd_arc_profile(&ctx, grid, eps, *branch_cutoff),
        Command::Transitivity {
            source,
            target,
            window,
        } => cmd_transitivity(&ctx, source, target, *window),
        Command::Mixing {
            source,
            target,
            n_min,
            window,
        } => cmd_mixing(&ctx, source, target, *n_min, *window),
        Command::TentSeparation {
            delta,
            seed,
            samples,
        } => cmd_tent_separation(&ctx, delta, *seed, *samples),
        Command::Lemmas { trials, seed } => cmd_lemmas(&ctx, *trials, *seed),
        Command::Render {
            net_dr,
            orbit,
            depth,
            level_cutoff,
            eps,
            branch_cutoff,
        } => cmd_render(
            &ctx,
            net_dr,
            orbit,
            *depth,
            *level_cutoff,
            eps,
            *branch_cutoff,
        ),
        Command::Suite => cmd_suite(&ctx),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
