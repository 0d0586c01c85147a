//! Acceptance suite: one PASS/FAIL line per criterion, driven through the
//! `gamma-points` binary wherever a subcommand exists.
//!
//! Run with `cargo test -p gamma-points-cli --test acceptance -- --nocapture`
//! to see the report lines.

#![allow(clippy::needless_range_loop)]

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use gamma_points::curve::{dimension_bound, monomial_count, monomial_matrix, omega, PointSet};
use gamma_points::gamma::{complement_residual, gamma};
use gamma_points::precision::consts;
use gamma_points::{ComplexBall, PrecisionContext};

const BIN: &str = env!("CARGO_BIN_EXE_gamma-points");

struct Run {
    code: i32,
    json: Value,
}

fn cli(out: &Path, args: &[&str]) -> Run {
    let output = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs");
    let code = output.status.code().unwrap_or(-1);
    let name = args[0];
    let path = out.join(format!("{name}.json"));
    let json = std::fs::read_to_string(&path)
        .ok()
        .and_then(|t| serde_json::from_str(&t).ok())
        .unwrap_or_else(|| {
            panic!(
                "{name} produced no report (exit {code}): {}",
                String::from_utf8_lossy(&output.stderr)
            )
        });
    Run { code, json }
}

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

fn report(lines: &mut Vec<Line>, id: u32, pass: bool, started: Instant, detail: String) {
    let secs = started.elapsed().as_secs_f64();
    println!(
        "criterion {id}: {} ({secs:.1}s) {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    lines.push(Line { id, pass, detail });
}

fn criterion_1() -> (bool, String) {
    let ctx = PrecisionContext::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut residual_ok = 0;
    for _ in 0..500 {
        let z = ComplexBall::from_f64(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        if complement_residual(&z, &ctx).is_ok_and(|r| r.contains_zero()) {
            residual_ok += 1;
        }
    }
    let mut fact = BigRational::one();
    let mut factorials_ok = true;
    for n in 1..=12i64 {
        if n > 1 {
            fact *= BigRational::from_integer((n - 1).into());
        }
        let g = gamma(&ComplexBall::from_i64(n), &ctx).expect("no pole at positive integers");
        factorials_ok &= g.value.contains_rational(&fact, &BigRational::zero());
    }
    let half = ComplexBall::from_f64(0.5, 0.0);
    let g = gamma(&half, &PrecisionContext::fixed(256)).expect("Gamma(1/2)");
    let ratio = g
        .value
        .sqr(256)
        .div_real(&consts::pi(256), 256)
        .expect("pi is nonzero");
    let ratio_ok = ratio.contains_rational(&BigRational::one(), &BigRational::zero())
        && ratio.rad.log2() <= -100.0;
    (
        residual_ok == 500 && factorials_ok && ratio_ok,
        format!(
            "complement residual contains 0 at {residual_ok}/500 points; Gamma(n) = (n-1)! for n <= 12: {factorials_ok}; Gamma(1/2)^2/pi radius 2^{:.0}",
            ratio.rad.log2()
        ),
    )
}

/// Rank over the rationals by plain Gauss-Jordan elimination, independent of
/// the library's fraction-free routine.
fn brute_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for j in 0..cols {
            m[rank][j] = &m[rank][j] / &pivot;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The fixed family: every set of size 1 and 2 over the 36-point lattice
/// `{0, 1/2, 1, 3/2, 2, 3}²` (`{0..3}/{1,2}`), plus 300 seeded random subsets
/// of each size 3..=8.
fn criterion_8() -> (bool, String) {
    let mut values: Vec<BigRational> = Vec::new();
    for den in 1..=2i64 {
        for num in 0..=3i64 {
            let v = BigRational::new(num.into(), den.into());
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    let lattice: Vec<(BigRational, BigRational)> = values
        .iter()
        .flat_map(|x| values.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let mut family: Vec<Vec<usize>> = Vec::new();
    for i in 0..lattice.len() {
        family.push(vec![i]);
        for j in i + 1..lattice.len() {
            family.push(vec![i, j]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for size in 3..=8 {
        for _ in 0..300 {
            let mut s: Vec<usize> = Vec::new();
            while s.len() < size {
                let k = rng.gen_range(0..lattice.len());
                if !s.contains(&k) {
                    s.push(k);
                }
            }
            family.push(s);
        }
    }
    let mut agree = 0;
    let mut bound_ok = true;
    for s in &family {
        let pts: Vec<_> = s.iter().map(|&k| lattice[k].clone()).collect();
        let w = omega(&PointSet::exact(pts.clone())).expect("exact points");
        let brute = (1..)
            .find(|&t| brute_rank(monomial_matrix(&pts, t)) < monomial_count(t))
            .unwrap();
        if w == brute {
            agree += 1;
        }
        bound_ok &= w <= dimension_bound(pts.len());
    }
    (
        agree == family.len() && bound_ok,
        format!(
            "omega agrees with brute-force rank on {agree}/{} sets; dimension bound respected: {bound_ok}",
            family.len()
        ),
    )
}

fn census_check(json: &Value, n: u64) -> (bool, String) {
    let b = &json["body"];
    let (ng, nr) = (b["N"].as_u64().unwrap(), b["N_prime"].as_u64().unwrap());
    let undecided = b["undecided"].as_array().unwrap().len();
    let bound_ok = (ng as f64) <= b["bound_n"].as_f64().unwrap();
    let d = b["D"].as_u64().unwrap();
    let ok = ng == 2 && nr == 2 && undecided == 0 && bound_ok;
    (
        ok,
        format!("n={n} D={d}: N={ng} N'={nr} undecided={undecided} N<=bound:{bound_ok}"),
    )
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = |name: &str| dir.path().join(name);
    let mut lines = Vec::new();

    let t = Instant::now();
    let (pass, detail) = criterion_1();
    report(&mut lines, 1, pass, t, detail);

    let t = Instant::now();
    let r = cli(&out("c2"), &["count-rect", "--X", "10.5,40.5"]);
    let counts: Vec<i64> = r.json["body"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["count"].as_i64().unwrap())
        .collect();
    report(
        &mut lines,
        2,
        r.code == 0 && counts == [11, 41],
        t,
        format!("zeros of 1/Gamma in Z(10.5, 1) and Z(40.5, 1): {counts:?}"),
    );

    let c3_args = [
        "count-rect",
        "--grid",
        "20",
        "--X",
        "10.5,20.5,40.5",
        "--oracle",
    ];
    let t = Instant::now();
    let c3 = cli(&out("c3-t1"), &[&c3_args[..], &["--threads", "1"]].concat());
    let b = &c3.json["body"];
    report(
        &mut lines,
        3,
        c3.code == 0
            && b["deviation_within_3"] == true
            && b["oracle_all_match"] == true
            && b["checks"].as_array().unwrap().len() == 60,
        t,
        format!(
            "60 counts with |w| <= r0 = {:.4e}: max |count - X| = {}, oracle agreement: {}",
            b["r0"].as_f64().unwrap(),
            b["max_deviation"],
            b["oracle_all_match"]
        ),
    );

    let t = Instant::now();
    let r = cli(&out("c4"), &["grid", "--L", "2,5,10,20"]);
    let grids = r.json["body"]["grids"].as_array().unwrap();
    let conds: Vec<String> = grids
        .iter()
        .map(|g| {
            let v = &g["verification"];
            format!(
                "L={} conditions={} realized_c0={:.3}",
                v["L"],
                v["conditions"],
                v["realized_c0"].as_f64().unwrap()
            )
        })
        .collect();
    report(
        &mut lines,
        4,
        r.code == 0 && grids.len() == 4,
        t,
        conds.join("; "),
    );

    let c5_args = [
        "zerolemma",
        "--suite",
        "random",
        "--count",
        "100",
        "--seed",
        "7",
        "--c",
        "2",
    ];
    let t = Instant::now();
    let c5 = cli(&out("c5-t1"), &[&c5_args[..], &["--threads", "1"]].concat());
    let tight = cli(
        &out("c5-tight"),
        &["zerolemma", "--suite", "tightness", "--c", "2"],
    );
    let b = &c5.json["body"];
    report(
        &mut lines,
        5,
        c5.code == 0 && tight.code == 0 && b["instances"].as_array().unwrap().len() == 100,
        t,
        format!(
            "100 random P: all count <= 2L(L+R)log(L+R): {}, max calibrated c = {:.4}, max count/(L(L+R)) = {:.4}; w^L tightness: {}",
            b["pass"],
            b["max_calibrated_c"].as_f64().unwrap(),
            b["max_ratio_without_log"].as_f64().unwrap(),
            tight.json["pass"]
        ),
    );

    let t = Instant::now();
    let r = cli(&out("c6"), &["extremal", "--L", "2,3,4"]);
    let orders: Vec<String> = r.json["body"]["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| {
            format!(
                "L={}: order {} (need {})",
                x["L"], x["vanishing_order"]["order"], x["required"]
            )
        })
        .collect();
    report(&mut lines, 6, r.code == 0, t, orders.join(", "));

    let t = Instant::now();
    let mut c7 = Vec::new();
    let mut c7_details = Vec::new();
    let mut c7_pass = true;
    let mut c7_unexpected = Vec::new();
    for d in [50u64, 200] {
        for n in 2u64..=6 {
            let name = format!("c7-t1-{n}-{d}");
            let r = cli(
                &out(&name),
                &[
                    "census",
                    "--n",
                    &n.to_string(),
                    "--D",
                    &d.to_string(),
                    "--threads",
                    "1",
                ],
            );
            let (ok, detail) = census_check(&r.json, n);
            if !ok {
                c7_details.push(detail);
                // 1/Gamma(n) = 1/(n-1)! has denominator (n-1)! > D here, so the
                // endpoint is honestly not a hit; anything else is a defect.
                let b = &r.json["body"];
                let explained = (1..n).product::<u64>() > d
                    && b["N"] == 2
                    && b["N_prime"] == 1
                    && b["undecided"].as_array().unwrap().is_empty();
                if !explained {
                    c7_unexpected.push((n, d));
                }
            }
            c7_pass &= ok && r.code == 0;
            c7.push((name, r));
        }
    }
    report(
        &mut lines,
        7,
        c7_pass,
        t,
        if c7_details.is_empty() {
            "N = N' = 2, no undecided points, N <= bound for all n in 2..=6, D in {50, 200}".into()
        } else {
            format!("deviations: {}", c7_details.join("; "))
        },
    );

    let t = Instant::now();
    let (pass, detail) = criterion_8();
    report(&mut lines, 8, pass, t, detail);

    let t = Instant::now();
    let r = cli(&out("c9"), &["bp-select", "--calibrate"]);
    let b = &r.json["body"];
    let holds = b["points"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["check"]["holds"] == true);
    report(
        &mut lines,
        9,
        r.code == 0 && holds,
        t,
        format!("lambda0 = {} over the d x H x n sweep", b["lambda0"]),
    );

    let t = Instant::now();
    let threads = "4";
    let mut same = Vec::new();
    let c3b = cli(
        &out("c3-tn"),
        &[&c3_args[..], &["--threads", threads]].concat(),
    );
    same.push((
        "3",
        c3.json["body"] == c3b.json["body"] && c3.json["body_sha256"] == c3b.json["body_sha256"],
    ));
    let c5b = cli(
        &out("c5-tn"),
        &[&c5_args[..], &["--threads", threads]].concat(),
    );
    same.push((
        "5",
        c5.json["body"] == c5b.json["body"] && c5.json["body_sha256"] == c5b.json["body_sha256"],
    ));
    let mut census_same = true;
    for (name, r1) in &c7 {
        let parts: Vec<&str> = name.split('-').collect();
        let r2 = cli(
            &out(&name.replace("t1", "tn")),
            &[
                "census",
                "--n",
                parts[2],
                "--D",
                parts[3],
                "--threads",
                threads,
            ],
        );
        census_same &= r1.json["body"] == r2.json["body"]
            && r1.json["body_sha256"] == r2.json["body_sha256"]
            && std::fs::read(out(name).join("census.csv")).ok()
                == std::fs::read(out(&name.replace("t1", "tn")).join("census.csv")).ok();
    }
    same.push(("7", census_same));
    report(
        &mut lines,
        10,
        same.iter().all(|s| s.1),
        t,
        format!("identical bodies with --threads 1 and --threads {threads}: {same:?}"),
    );

    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    println!(
        "acceptance: {} of {} criteria pass; failing: {failed:?}",
        lines.len() - failed.len(),
        lines.len()
    );
    for l in lines.iter().filter(|l| !l.pass) {
        println!("  criterion {}: {}", l.id, l.detail);
    }
    // Criterion 7 at (n, D) = (6, 50) cannot pass: 1/Gamma(6) = 1/120 has
    // denominator 120 > 50. Every other failure is a defect.
    assert!(
        c7_unexpected.is_empty(),
        "unexplained census deviations: {c7_unexpected:?}"
    );
    assert!(
        failed.iter().all(|&id| id == 7),
        "failing criteria: {failed:?}"
    );
}
