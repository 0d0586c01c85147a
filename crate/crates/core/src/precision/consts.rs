//! Certified constants: pi, log 2, Euler's gamma, Bernoulli numbers, zeta(k).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::real::RealBall;

fn cache() -> &'static Mutex<HashMap<&'static str, (u32, RealBall)>> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, (u32, RealBall)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(name: &'static str, prec: u32, compute: fn(u32) -> RealBall) -> RealBall {
    {
        let guard = cache().lock().unwrap();
        if let Some((p, v)) = guard.get(name) {
            if *p >= prec {
                return v.round(prec);
            }
        }
    }
    let store = prec.max(128).div_ceil(128) * 128 + 64;
    let v = compute(store);
    let mut guard = cache().lock().unwrap();
    let entry = guard.entry(name).or_insert((0, RealBall::zero()));
    if entry.0 < store {
        *entry = (store, v.clone());
    }
    v.round(prec)
}

/// `2^w * sum_k (+-1)^k / ((2k+1) n^(2k+1))` in fixed point; returns the sum and
/// the error bound in units.
fn arctan_series_fixed(n: u64, w: u32, alternating: bool) -> (BigInt, u64) {
    let nn = BigInt::from(n) * BigInt::from(n);
    let mut power = (BigInt::one() << w as usize) / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if alternating && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &nn;
        k += 1;
    }
    // <3 units per retained term from the floors, plus a tail below 4 units
    (sum, 3 * k + 4)
}

fn fixed_to_ball(sum: BigInt, units: u64, w: u32) -> RealBall {
    RealBall::new(
        Dyadic::new(sum, -(w as i64)),
        Mag::from_f64(units as f64).mul_2exp(-(w as i64)),
    )
}

fn compute_pi(prec: u32) -> RealBall {
    let w = prec + 16;
    let (a, ea) = arctan_series_fixed(5, w, true);
    let (b, eb) = arctan_series_fixed(239, w, true);
    let sum = a * 16 - b * 4;
    fixed_to_ball(sum, 16 * ea + 4 * eb, w).round(prec)
}

fn compute_ln2(prec: u32) -> RealBall {
    let w = prec + 16;
    let (a, ea) = arctan_series_fixed(3, w, false);
    fixed_to_ball(a * 2, 2 * ea, w).round(prec)
}

/// Brent-McMillan: gamma = U/V - K0(2n)/I0(2n) with 0 < K0/I0 < pi e^(-4n).
fn compute_euler(prec: u32) -> RealBall {
    let wp = prec + 32;
    let n = (wp as f64 * std::f64::consts::LN_2 / 4.0).ceil() as i64 + 2;
    let nsq = n * n;
    let ln_n = RealBall::from_i64(n).ln(wp).unwrap();
    let mut a = ln_n.neg();
    let mut b = RealBall::one();
    let mut u = a.clone();
    let mut v = RealBall::one();
    let lnk_bound = |k: i64| (k as f64).ln() + (n as f64).ln() + 3.0;
    let mut k: i64 = 1;
    loop {
        b = b.mul_i64(nsq, wp).div_i64(k * k, wp);
        a = a.mul_i64(nsq, wp).div_i64(k, wp).add(&b, wp).div_i64(k, wp);
        u = u.add(&a, wp);
        v = v.add(&b, wp);
        if k > 2 * n {
            let bl = b.abs_upper().log2();
            if bl + lnk_bound(k).log2() < -(wp as f64) - 4.0 {
                break;
            }
        }
        k += 1;
    }
    // geometric tails with ratio <= 1/4 once k > 2n
    let tail = b.abs_upper().mul(&Mag::from_f64(lnk_bound(k) * 2.0));
    let q = u.div(&v, wp).unwrap();
    // shift toward the true value by half the Bessel-ratio bound
    let bessel = Mag::from_f64(4.0).mul(&Mag::pow2(
        -((4.0 * n as f64) * std::f64::consts::LOG2_E).floor() as i64,
    ));
    q.add_error(tail.mul_2exp(1)).add_error(bessel).round(prec)
}

pub fn pi(prec: u32) -> RealBall {
    cached("pi", prec, compute_pi)
}

pub fn ln2(prec: u32) -> RealBall {
    cached("ln2", prec, compute_ln2)
}

pub fn euler_gamma(prec: u32) -> RealBall {
    cached("euler", prec, compute_euler)
}

/// `log(sqrt(2 pi))`, the constant term of Stirling's series.
pub fn ln_sqrt_2pi(prec: u32) -> RealBall {
    cached("ln_sqrt_2pi", prec, |p| {
        let w = p + 16;
        pi(w).mul_2exp(1).ln(w).unwrap().mul_2exp(-1).round(p)
    })
}

fn bernoulli_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `B_{2k}` for k = 0..count via tangent numbers.
fn bernoulli_even_table(count: usize) -> Vec<BigRational> {
    let n = count.max(2);
    // tangent numbers T_1..T_n (Brent-Harvey in-place recurrence)
    let mut t = vec![BigInt::zero(); n + 1];
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigRational::one());
    for (k, tk) in t.iter().enumerate().skip(1) {
        // B_2k = (-1)^(k-1) 2k T_k / (2^2k (2^2k - 1))
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - BigInt::one());
        let num = tk * BigInt::from(2 * k);
        let b = BigRational::new(num, den);
        out.push(if k % 2 == 1 { b } else { -b });
    }
    out
}

/// Exact `B_{2k}`.
pub fn bernoulli_even(k: usize) -> BigRational {
    let mut guard = bernoulli_cache().lock().unwrap();
    if guard.len() <= k {
        let want = (k + 1).max(2 * guard.len()).max(64);
        *guard = bernoulli_even_table(want);
    }
    guard[k].clone()
}

/// `log2 |B_{2k}|` (k >= 1), for remainder estimates.
pub fn bernoulli_even_log2(k: usize) -> f64 {
    let b = bernoulli_even(k);
    let num = b.numer().abs();
    big_log2(&num) - big_log2(b.denom())
}

pub(crate) fn big_log2(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        let f: f64 = num_traits::ToPrimitive::to_f64(v).unwrap();
        return f.abs().log2();
    }
    let top: BigInt = v.abs() >> (bits - 64) as usize;
    num_traits::ToPrimitive::to_f64(&top).unwrap().log2() + (bits - 64) as f64
}

/// `zeta(s)` for an integer `s >= 2`.
pub fn zeta(s: u32, prec: u32) -> RealBall {
    assert!(s >= 2, "zeta needs s >= 2");
    let wp = prec + 24;
    if s.is_multiple_of(2) {
        // zeta(2m) = (-1)^(m+1) B_2m (2 pi)^2m / (2 (2m)!)
        let m = (s / 2) as usize;
        let b = RealBall::from_rational(&bernoulli_even(m).abs(), wp);
        let two_pi = pi(wp).mul_2exp(1);
        let fact: BigInt = (1..=s as u64).map(BigInt::from).product();
        let num = b.mul(&two_pi.pow_u64(s as u64, wp), wp);
        let den = RealBall::from_int(fact * 2);
        return num.div(&den, prec).unwrap();
    }
    zeta_euler_maclaurin(s, prec)
}

fn zeta_euler_maclaurin(s: u32, prec: u32) -> RealBall {
    let wp = prec + 24;
    let n_cut = (wp / 6).max(10) as i64;
    let sf = s as f64;
    let mut acc = RealBall::zero();
    for n in 1..n_cut {
        let p = RealBall::from_int(BigInt::from(n).pow(s));
        acc = acc.add(&RealBall::one().div(&p, wp).unwrap(), wp);
    }
    let big_n = RealBall::from_i64(n_cut);
    let n_pow_s = RealBall::from_int(BigInt::from(n_cut).pow(s));
    let inv_ns = RealBall::one().div(&n_pow_s, wp).unwrap();
    // N^(1-s)/(s-1) + N^(-s)/2
    acc = acc.add(&inv_ns.mul(&big_n, wp).div_i64(s as i64 - 1, wp), wp);
    acc = acc.add(&inv_ns.mul_2exp(-1), wp);
    // sum_j B_2j/(2j)! (s)_(2j-1) N^(1-s-2j)
    let inv_n = RealBall::one().div(&big_n, wp).unwrap();
    let inv_n2 = inv_n.sqr(wp);
    let mut pow = inv_ns.mul(&inv_n, wp); // N^(-s-1)
    let mut rising = RealBall::from_i64(s as i64); // (s)_1
    let mut fact = BigInt::from(2); // (2j)!
    let mut j = 1usize;
    loop {
        let b = RealBall::from_rational(&bernoulli_even(j), wp);
        let term = b
            .mul(&rising, wp)
            .mul(&pow, wp)
            .div(&RealBall::from_int(fact.clone()), wp)
            .unwrap();
        acc = acc.add(&term, wp);
        // next term magnitude bounds the remainder for real s
        let jn = j + 1;
        let log_next = bernoulli_even_log2(jn)
            - big_log2(&(&fact * BigInt::from(2 * jn - 1) * BigInt::from(2 * jn)))
            + (0..(2 * jn - 1))
                .map(|i| (sf + i as f64).log2())
                .sum::<f64>()
            - (sf + 2.0 * jn as f64 - 1.0) * (n_cut as f64).log2();
        if log_next < -(wp as f64) {
            acc = acc.add_error(Mag::pow2(log_next.ceil() as i64 + 1));
            break;
        }
        rising = rising
            .mul_i64((s as i64) + 2 * j as i64 - 1, wp)
            .mul_i64((s as i64) + 2 * j as i64, wp);
        pow = pow.mul(&inv_n2, wp);
        fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
        j += 1;
    }
    acc.round(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 60 digits of each constant
    const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494";
    const LN2: &str = "0.693147180559945309417232121458176568075500134360255254120680";
    const EULER: &str = "0.577215664901532860606512090082402431042159335939923598805767";
    const ZETA3: &str = "1.20205690315959428539973816151144999076498629234049888179227";

    fn parse_decimal(s: &str) -> BigRational {
        let (int, frac) = s.split_once('.').unwrap();
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let num: BigInt = format!("{int}{frac}").parse().unwrap();
        BigRational::new(num, den)
    }

    fn agrees(b: &RealBall, s: &str) {
        let q = parse_decimal(s);
        let diff = (b.mid.to_rational() - q).abs();
        let tol = b.rad.to_dyadic().to_rational()
            + BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 58));
        assert!(diff <= tol, "{b:?} vs {s}");
    }

    #[test]
    fn known_digits() {
        agrees(&pi(200), PI);
        agrees(&ln2(200), LN2);
        agrees(&euler_gamma(200), EULER);
        agrees(&zeta(3, 200), ZETA3);
        assert!(pi(200).rad.log2() < -190.0);
        assert!(euler_gamma(300).rad.log2() < -290.0);
    }

    #[test]
    fn bernoulli_small() {
        let expect = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730)];
        for (k, (n, d)) in expect.iter().enumerate() {
            assert_eq!(
                bernoulli_even(k + 1),
                BigRational::new((*n).into(), (*d).into())
            );
        }
    }

    #[test]
    fn zeta_even_matches_euler_maclaurin() {
        for s in [2u32, 4, 6, 10] {
            let a = zeta(s, 160);
            let b = zeta_euler_maclaurin(s, 160);
            assert!(a.overlaps(&b), "zeta({s}): {a:?} vs {b:?}");
            assert!(b.rad.log2() < -150.0);
        }
    }
}
