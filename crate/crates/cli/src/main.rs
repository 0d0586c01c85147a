//! Command-line front end: one subcommand per verification family.
//!
//! Every run writes a JSON envelope (manifest, pass flag, body digest, body)
//! to `--out` (or stdout), plus CSV and plot tables where defined. The exit
//! code is 0 when every checked invariant holds, 2 when one fails and 1 on
//! usage or runtime errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gamma_points::census::{run_census, CensusReport};
use gamma_points::contour::{count_check, max_deviation, w_sample, CountCheck};
use gamma_points::curve::{
    bp_condition, calibrate_lambda, default_sweep, dimension_bound, eval_exact, fit_curve, omega,
    point_set_height, select_parameters, BPParameters, Point, PointSet,
};
use gamma_points::gamma::{gamma, radial_growth_check, reciprocal_gamma, DEFAULT_GROWTH_C};
use gamma_points::grid::{build_grid_unchecked, compute_r0, verify_grid};
use gamma_points::precision::{parse_rational, RealBall};
use gamma_points::report::{
    emit_plot_data, CountRow, CountSweep, Envelope, PlotKind, PlotSource, RunManifest,
};
use gamma_points::zero_lemma::{
    extremal_polynomial, random_suite, tightness_polynomial, vanishing_order, verify_zero_lemma,
    BivarPolynomial,
};
use gamma_points::{ComplexBall, Error as CoreError, PrecisionContext};

#[derive(Parser)]
#[command(
    name = "gamma-points",
    version,
    about = "Certified experiments with 1/Gamma"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Directory for JSON/CSV/plot outputs (JSON goes to stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: number of cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Starting working precision in bits
    #[arg(long, global = true, default_value_t = 256)]
    bits: u32,
    /// Precision cap for escalation
    #[arg(
        long,
        global = true,
        env = "GAMMA_POINTS_MAX_BITS",
        default_value_t = 4096
    )]
    max_bits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate 1/Gamma and Gamma at a point
    Eval {
        /// Real part (decimal or p/q)
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Imaginary part (decimal or p/q)
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        im: String,
    },
    /// Count solutions of 1/Gamma(z) = w in -X <= Re z <= 1, |Im z| <= 1
    CountRect {
        /// Real part of w
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        w: f64,
        /// Imaginary part of w
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        w_im: f64,
        /// Left extent(s) X of the rectangle
        #[arg(long = "X", value_delimiter = ',', required = true)]
        x: Vec<f64>,
        /// Use this many sample points in |w| <= r0 instead of a single w
        #[arg(long)]
        grid: Option<usize>,
        /// Compare every count with the certified Newton-seed oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Count zeros of P(z, 1/Gamma(z)) in |z| <= R
    CountDisk {
        /// Polynomial JSON file
        #[arg(long)]
        poly: PathBuf,
        #[arg(long = "R")]
        r: f64,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
    },
    /// Build and verify interpolation grids
    Grid {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<usize>,
    },
    /// Check the zero bound for one polynomial or a suite
    Zerolemma {
        /// Polynomial JSON file
        #[arg(long, conflicts_with = "suite")]
        poly: Option<PathBuf>,
        #[arg(long = "R", default_value_t = 10.5)]
        r: f64,
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 5)]
        max_l: usize,
        #[arg(long, default_value_t = 20.0)]
        max_r: f64,
    },
    /// Construct polynomials with a high-order zero of P(z, 1/Gamma(z)) at 0
    Extremal {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<usize>,
    },
    /// Classify rationals in [n-1, n] with denominator <= D
    Census {
        #[arg(long)]
        n: u64,
        #[arg(long = "D")]
        d: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Minimal degree of a curve through a point set
    Omega {
        /// CSV with columns x_num,x_den,y_num,y_den
        #[arg(long)]
        points: PathBuf,
    },
    /// Check (AZ)^T > (4T)^(96d^2/T) (M+1)^(16d) H^(48d^2)
    BpCheck {
        #[arg(long)]
        d: u64,
        #[arg(long = "T")]
        t: u64,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "Z")]
        z: String,
        #[arg(long = "M")]
        m: String,
        #[arg(long = "H")]
        h: String,
    },
    /// Select (Z, T, M) from (n, d, H, lambda, c) and check the inequality
    BpSelect {
        #[arg(long, required_unless_present = "calibrate")]
        n: Option<u64>,
        #[arg(long, required_unless_present = "calibrate")]
        d: Option<u64>,
        #[arg(long = "H", required_unless_present = "calibrate")]
        h: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Find the smallest lambda = 2^k passing the standard sweep
        #[arg(long)]
        calibrate: bool,
    },
    /// Sample log|1/Gamma| on |z| = R against c R log R
    Growth {
        #[arg(long = "R")]
        r: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_GROWTH_C)]
        c: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Random,
    Tightness,
}

/// Result of one subcommand: the JSON envelope plus extra files.
struct Outcome {
    envelope: Envelope,
    files: Vec<(String, String)>,
    summary: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    let ctx = PrecisionContext::new(g.bits, g.max_bits, 2)?;
    let started = now();
    let mut outcome = dispatch(&cli.command, &ctx)?;
    outcome.envelope.manifest.started = Some(started);
    outcome.envelope.manifest.finished = Some(now());
    let pass = outcome.envelope.pass;
    let name = outcome.envelope.manifest.subcommand.clone();
    match &g.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            write(
                dir,
                &format!("{name}.json"),
                &outcome.envelope.to_json_pretty(),
            )?;
            for (file, content) in &outcome.files {
                write(dir, file, content)?;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{}", outcome.envelope.to_json_pretty()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e).context("writing to stdout");
                }
            }
        }
    }
    eprintln!(
        "{name}: {} [{}]",
        outcome.summary,
        if pass { "pass" } else { "FAIL" }
    );
    Ok(pass)
}

fn write(dir: &Path, file: &str, content: &str) -> Result<()> {
    let path = dir.join(file);
    std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn manifest(name: &str, seed: u64, ctx: &PrecisionContext) -> RunManifest {
    RunManifest::new(name, seed, ctx.bits, ctx.max_bits)
}

fn rational_arg(s: &str, what: &str) -> Result<num_rational::BigRational> {
    parse_rational(s).ok_or_else(|| anyhow!("{what}: cannot parse {s:?} as a decimal or p/q"))
}

fn outcome(m: RunManifest, body: &impl Serialize, pass: bool, summary: String) -> Result<Outcome> {
    Ok(Outcome {
        envelope: Envelope::new(m, body, pass)?,
        files: Vec::new(),
        summary,
    })
}

fn read_poly(path: &Path) -> Result<BivarPolynomial> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(BivarPolynomial::from_json(&text)?)
}

fn dispatch(cmd: &Command, ctx: &PrecisionContext) -> Result<Outcome> {
    match cmd {
        Command::Eval { z, im } => {
            let (re, imq) = (rational_arg(z, "--z")?, rational_arg(im, "--im")?);
            let prec = ctx.max_bits + 64;
            let zb = ComplexBall::from_parts(
                &RealBall::from_rational(&re, prec),
                &RealBall::from_rational(&imq, prec),
            );
            let g = reciprocal_gamma(&zb, ctx)?;
            let gam = match gamma(&zb, ctx) {
                Ok(v) => Some(v),
                Err(CoreError::Pole(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let summary = match &gam {
                Some(v) => format!("Gamma(z) ~ {:?} at {} bits", v.value.to_f64_pair(), v.bits),
                None => "pole of Gamma".to_string(),
            };
            let body = json!({
                "z": { "re": z, "im": im },
                "reciprocal_gamma": g,
                "gamma": gam,
                "pole": gam.is_none(),
            });
            outcome(
                manifest("eval", 0, ctx).param("z", z).param("im", im),
                &body,
                true,
                summary,
            )
        }
        Command::CountRect {
            w,
            w_im,
            x,
            grid,
            oracle,
        } => {
            let r0 = compute_r0(ctx);
            let ws = match grid {
                Some(n) => w_sample(*n, r0.r0),
                None => vec![(*w, *w_im)],
            };
            let mut checks: Vec<CountCheck> = Vec::new();
            for &wv in &ws {
                for &xv in x {
                    checks.push(count_check(wv, xv, *oracle, ctx)?);
                }
            }
            let small = |c: &CountCheck| c.w.0.hypot(c.w.1) <= r0.r0;
            let within = checks
                .iter()
                .filter(|c| small(c))
                .all(|c| c.deviation <= 3.0);
            let matches = checks.iter().all(|c| c.oracle_matches);
            let pairs: Vec<(f64, i64)> = checks.iter().map(|c| (c.x, c.count)).collect();
            let body = json!({
                "r0": r0.r0,
                "checks": checks,
                "max_deviation": max_deviation(&pairs),
                "deviation_within_3": within,
                "oracle_all_match": matches,
            });
            let sweep = CountSweep {
                w: ws[0],
                rows: checks
                    .iter()
                    .map(|c| CountRow {
                        x: c.x,
                        count: c.count,
                    })
                    .collect(),
            };
            let m = manifest("count-rect", 0, ctx)
                .param("w", [w, w_im])
                .param("X", x)
                .param("grid", grid)
                .param("oracle", oracle);
            let mut o = outcome(
                m,
                &body,
                within && matches,
                format!(
                    "{} counts, max |count - X| = {}",
                    checks.len(),
                    max_deviation(&pairs)
                ),
            )?;
            o.files.push((
                "count_vs_X.dat".into(),
                emit_plot_data(&PlotSource::Counts(&sweep), PlotKind::CountVsX)?,
            ));
            Ok(o)
        }
        Command::CountDisk { poly, r, c } => {
            let p = read_poly(poly)?;
            let rep = verify_zero_lemma(&p, *r, *c, ctx)?;
            let body = json!({ "polynomial": p, "report": rep });
            let m = manifest("count-disk", 0, ctx)
                .param("poly", p.to_json())
                .param("R", r)
                .param("c", c);
            let summary = format!(
                "{} zeros in |z| <= {} (bound {:.2})",
                rep.count, rep.r_used, rep.bound
            );
            outcome(m, &body, rep.pass, summary)
        }
        Command::Grid { l } => {
            let mut items = Vec::new();
            let mut pass = true;
            for &lv in l {
                let cert = build_grid_unchecked(lv, ctx)?;
                let ver = verify_grid(&cert, ctx);
                pass &= ver.pass && cert.all_pass();
                items.push(json!({ "certificate": cert, "verification": ver }));
            }
            let summary = format!("{} grid(s) checked", items.len());
            outcome(
                manifest("grid", 0, ctx).param("L", l),
                &json!({ "grids": items }),
                pass,
                summary,
            )
        }
        Command::Zerolemma {
            poly,
            r,
            suite,
            count,
            seed,
            c,
            max_l,
            max_r,
        } => match (poly, suite) {
            (Some(path), _) => {
                let p = read_poly(path)?;
                let rep = verify_zero_lemma(&p, *r, *c, ctx)?;
                let m = manifest("zerolemma", 0, ctx)
                    .param("poly", p.to_json())
                    .param("R", r)
                    .param("c", c);
                let summary = format!("{} zeros, bound {:.2}", rep.count, rep.bound);
                outcome(
                    m,
                    &json!({ "polynomial": p, "report": rep }),
                    rep.pass,
                    summary,
                )
            }
            (None, Some(Suite::Random)) => {
                let rep = random_suite(*count, *seed, *c, *max_l, *max_r, ctx)?;
                let m = manifest("zerolemma", *seed, ctx)
                    .param("suite", "random")
                    .param("count", count)
                    .param("c", c)
                    .param("max_l", max_l)
                    .param("max_r", max_r);
                let summary = format!(
                    "{} instances, max calibrated c = {:.4}",
                    rep.instances.len(),
                    rep.max_calibrated_c
                );
                let plot = emit_plot_data(&PlotSource::Suite(&rep), PlotKind::BoundVsCount)?;
                let mut o = outcome(m, &rep, rep.pass, summary)?;
                o.files.push(("bound_vs_count.dat".into(), plot));
                Ok(o)
            }
            (None, Some(Suite::Tightness)) => {
                let rs: Vec<f64> = [2.5, 10.5, 19.5]
                    .into_iter()
                    .filter(|v| *v <= *max_r)
                    .collect();
                let mut rows = Vec::new();
                let mut pass = true;
                for l in 1..=*max_l {
                    for &rv in &rs {
                        let rep = verify_zero_lemma(&tightness_polynomial(l), rv, *c, ctx)?;
                        let expected = (l as i64) * (rv.floor() as i64 + 1);
                        let ok = rep.count == expected && rep.pass;
                        pass &= ok;
                        rows.push(json!({ "L": l, "R": rv, "count": rep.count, "expected": expected, "bound": rep.bound, "pass": ok }));
                    }
                }
                let m = manifest("zerolemma", 0, ctx)
                    .param("suite", "tightness")
                    .param("c", c)
                    .param("max_l", max_l)
                    .param("max_r", max_r);
                let summary = format!("{} powers of w checked", rows.len());
                outcome(m, &json!({ "instances": rows }), pass, summary)
            }
            (None, None) => bail!("zerolemma needs --poly FILE or --suite random|tightness"),
        },
        Command::Extremal { l } => {
            let mut items = Vec::new();
            let mut pass = true;
            for &lv in l {
                let p = extremal_polynomial(lv, ctx)?;
                let v = vanishing_order(&p, ctx)?;
                let required = lv * lv + 2 * lv;
                let ok = v.order >= required;
                pass &= ok;
                items.push(json!({ "L": lv, "polynomial": p, "vanishing_order": v, "required": required, "pass": ok }));
            }
            let summary = format!("{} construction(s)", items.len());
            outcome(
                manifest("extremal", 0, ctx).param("L", l),
                &json!({ "results": items }),
                pass,
                summary,
            )
        }
        Command::Census { n, d, c } => {
            let rep: CensusReport = run_census(*n, *d, *c, ctx)?;
            let m = manifest("census", 0, ctx)
                .param("n", n)
                .param("D", d)
                .param("c", c);
            let summary = format!(
                "{} points: N = {}, N' = {}, undecided = {}",
                rep.points,
                rep.n_gamma,
                rep.n_reciprocal,
                rep.undecided.len()
            );
            let csv = rep.to_csv();
            let plot = emit_plot_data(&PlotSource::Census(&rep), PlotKind::CensusScatter)?;
            let mut o = outcome(m, &rep, rep.pass(), summary)?;
            o.files.push(("census.csv".into(), csv));
            o.files.push(("census_scatter.dat".into(), plot));
            Ok(o)
        }
        Command::Omega { points } => {
            let text = std::fs::read_to_string(points)
                .with_context(|| format!("reading {}", points.display()))?;
            let s = PointSet::from_csv(&text)?;
            let w = omega(&s)?;
            let curve = fit_curve(&s, w)?.ok_or_else(|| anyhow!("no curve of degree {w}"))?;
            let residuals_zero = s.points.iter().all(|p| match p {
                Point::Exact(x, y) => eval_exact(&curve, x, y)
                    .is_some_and(|v| v == num_rational::BigRational::from_integer(0.into())),
                Point::Ball(..) => false,
            });
            let bound = dimension_bound(s.len());
            let body = json!({
                "points": s.len(),
                "omega": w,
                "dimension_bound": bound,
                "curve": curve,
                "residuals_zero": residuals_zero,
                "height": point_set_height(&s)?.to_string(),
            });
            let m = manifest("omega", 0, ctx).param("points", points.display().to_string());
            outcome(
                m,
                &body,
                residuals_zero && w <= bound,
                format!("omega = {w} for {} points", s.len()),
            )
        }
        Command::BpCheck { d, t, a, z, m, h } => {
            let prec = 256;
            let ball = |s: &str, what: &str| -> Result<RealBall> {
                Ok(RealBall::from_rational(&rational_arg(s, what)?, prec))
            };
            let p = BPParameters::new(
                *d,
                *t,
                ball(a, "--A")?,
                ball(z, "--Z")?,
                ball(m, "--M")?,
                ball(h, "--H")?,
            )?;
            let check = bp_condition(&p)?;
            let man = manifest("bp-check", 0, ctx)
                .param("d", d)
                .param("T", t)
                .param("A", a)
                .param("Z", z)
                .param("M", m)
                .param("H", h);
            let summary = format!(
                "lhs {:.4} vs rhs {:.4}",
                check.lhs_log_f64, check.rhs_log_f64
            );
            outcome(
                man,
                &json!({ "params": p, "check": check }),
                check.holds,
                summary,
            )
        }
        Command::BpSelect {
            n,
            d,
            h,
            lambda,
            c,
            calibrate,
        } => {
            if *calibrate {
                let cal = calibrate_lambda(&default_sweep(), *c, 40)?;
                let m = manifest("bp-select", 0, ctx)
                    .param("calibrate", true)
                    .param("c", c);
                let summary = format!(
                    "lambda0 = {} over {} sweep points",
                    cal.lambda0,
                    cal.points.len()
                );
                return outcome(m, &cal, cal.pass, summary);
            }
            let (n, d, h) = (n.unwrap(), d.unwrap(), h.unwrap());
            let sel = select_parameters(n, d, h, *lambda, *c)?;
            let check = bp_condition(&sel.params)?;
            let m = manifest("bp-select", 0, ctx)
                .param("n", n)
                .param("d", d)
                .param("H", h)
                .param("lambda", lambda)
                .param("c", c);
            let summary = format!("Z = {:.4}, T = {}", sel.params.z.to_f64(), sel.params.t);
            outcome(
                m,
                &json!({ "selected": sel, "check": check }),
                check.holds,
                summary,
            )
        }
        Command::Growth { r, samples, c } => {
            let g = radial_growth_check(*r, *samples, *c, ctx)?;
            let m = manifest("growth", 0, ctx)
                .param("R", r)
                .param("samples", samples)
                .param("c", c);
            let summary = format!(
                "max log|G| = {:.4}, bound {:.4}",
                g.max_log_modulus, g.bound_log
            );
            let pass = g.pass;
            outcome(m, &g, pass, summary)
        }
    }
}
