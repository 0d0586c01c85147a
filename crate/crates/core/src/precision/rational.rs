//! Best rational approximation with bounded denominator and rational heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::complex::ComplexBall;
use super::mag::Mag;
use super::real::RealBall;

const GAP_BITS: u32 = 96;

/// Best approximation to the (real) midpoint of `x` among fractions with
/// denominator at most `qmax`, plus a ball enclosing `|y - p/q|` for every
/// `y` in `x`. Ties go to the smaller denominator, then the smaller `|p|`.
///
/// The imaginary part of `x` is ignored; callers pass real balls.
pub fn best_rational_approx(x: &ComplexBall, qmax: u64) -> (BigRational, RealBall) {
    best_rational_approx_real(&x.real_part(), qmax)
}

/// [`best_rational_approx`] for a real ball.
pub fn best_rational_approx_real(x: &RealBall, qmax: u64) -> (BigRational, RealBall) {
    assert!(qmax >= 1, "qmax must be positive");
    let target = x.mid.to_rational();
    let best = best_rational_for(&target, &BigInt::from(qmax));
    let diff = (&target - &best).abs();
    let gap = RealBall::from_rational(&diff, GAP_BITS).add_error(x.rad);
    (best, gap)
}

/// Exact best approximation of a rational `x` with denominator `<= qmax`.
///
/// The two Farey neighbours of `x` of order `qmax` are the last continued
/// fraction convergent with admissible denominator and the largest admissible
/// semiconvergent after it; the answer is the closer of the two.
pub fn best_rational_for(x: &BigRational, qmax: &BigInt) -> BigRational {
    let one = BigInt::from(1);
    let zero = BigInt::zero();
    // (h_{k-2}, k_{k-2}), (h_{k-1}, k_{k-1})
    let (mut h2, mut k2) = (zero.clone(), one.clone());
    let (mut h1, mut k1) = (one.clone(), zero.clone());
    let mut rem = x.clone();
    loop {
        let a = rem.floor().to_integer();
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if &k > qmax {
            // k1 <= qmax here, and k1 >= 1 after the first step (a0's denominator is 1)
            let t = (qmax - &k2).div_floor(&k1);
            let semi = BigRational::new(&t * &h1 + &h2, &t * &k1 + &k2);
            let conv = BigRational::new(h1, k1);
            return closer(x, conv, semi);
        }
        let frac = &rem - BigRational::from_integer(a);
        if frac.is_zero() {
            return BigRational::new(h, k);
        }
        rem = frac.recip();
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
    }
}

fn closer(x: &BigRational, a: BigRational, b: BigRational) -> BigRational {
    let da = (x - &a).abs();
    let db = (x - &b).abs();
    match da.cmp(&db) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            let ka = (a.denom(), a.numer().abs());
            let kb = (b.denom(), b.numer().abs());
            if (ka.0, &ka.1) <= (kb.0, &kb.1) {
                a
            } else {
                b
            }
        }
    }
}

/// Parse `"p/q"`, an integer, or a decimal such as `-1.25e-3` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let v = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if neg { -v } else { v })
}

/// Non-logarithmic height `max(|p|, q)` of a reduced fraction.
pub fn height(q: &BigRational) -> BigInt {
    let p = q.numer().abs();
    if &p > q.denom() {
        p
    } else {
        q.denom().clone()
    }
}

/// Lower bound of the gap, zero when the ball reaches the rational.
pub fn gap_lower(gap: &RealBall) -> Mag {
    gap.abs_lower()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::consts::pi;

    fn brute(x: &BigRational, qmax: i64) -> BigRational {
        let mut best: Option<(BigRational, BigRational)> = None;
        for q in 1..=qmax {
            let qb = BigInt::from(q);
            let centre = (x * BigRational::from_integer(qb.clone()))
                .floor()
                .to_integer();
            for p in [&centre - 1, centre.clone(), &centre + 1, &centre + 2] {
                if p.gcd(&qb) != BigInt::from(1) {
                    continue;
                }
                let r = BigRational::new(p, qb.clone());
                let d = (x - &r).abs();
                let better = match &best {
                    None => true,
                    Some((bd, br)) => {
                        d < *bd
                            || (d == *bd
                                && (r.denom(), r.numer().abs()) < (br.denom(), br.numer().abs()))
                    }
                };
                if better {
                    best = Some((d, r));
                }
            }
        }
        best.unwrap().1
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parsing() {
        let q = |p: i64, d: i64| BigRational::new(p.into(), d.into());
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("-0.125"), Some(q(-1, 8)));
        assert_eq!(parse_rational("2.5e2"), Some(q(250, 1)));
        assert_eq!(parse_rational("1e-2"), Some(q(1, 100)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert!(
            parse_rational("1/0").is_none()
                && parse_rational("abc").is_none()
                && parse_rational("-").is_none()
        );
    }

    #[test]
    fn exact_third() {
        let x = RealBall::from_rational(&q(1, 3), 200);
        let (r, gap) = best_rational_approx_real(&x, 10);
        assert_eq!(r, q(1, 3));
        assert!(gap.contains_zero());
    }

    #[test]
    fn pi_examples() {
        let x = ComplexBall::from_real(&pi(128));
        let (r, gap) = best_rational_approx(&x, 100);
        assert_eq!(r, q(311, 99));
        assert!((gap.to_f64() - 1.79e-4).abs() < 1e-6);
        let (r, gap) = best_rational_approx(&x, 120);
        assert_eq!(r, q(355, 113));
        assert!((gap.to_f64() - 2.67e-7).abs() < 1e-8);
    }

    #[test]
    fn agrees_with_brute_force_on_grid() {
        for i in 0..=1000i64 {
            let x = q(i * 7 + 3, 7001);
            for qmax in [1, 2, 3, 7, 13, 29, 50] {
                assert_eq!(
                    best_rational_for(&x, &BigInt::from(qmax)),
                    brute(&x, qmax),
                    "{x} {qmax}"
                );
            }
        }
    }

    #[test]
    fn ties_prefer_small_denominator() {
        // 1/2 lies midway between 0/1 and 1/1
        assert_eq!(best_rational_for(&q(1, 2), &BigInt::from(1)), q(0, 1));
        assert_eq!(
            best_rational_for(&q(-7, 4), &BigInt::from(3)),
            brute(&q(-7, 4), 3)
        );
        assert_eq!(height(&q(-7, 3)), BigInt::from(7));
        assert_eq!(height(&q(2, 9)), BigInt::from(9));
    }
}
