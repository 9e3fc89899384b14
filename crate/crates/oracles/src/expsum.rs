//! Exponential sums by enumeration, inverses by search.

use crate::arith::gcd;
use std::f64::consts::TAU;

fn inverse_by_search(h: u64, c: u64) -> u64 {
    (1..=c).find(|x| (h * x) % c == 1 % c).expect("unit")
}

fn reduce(a: i64, c: u64) -> u64 {
    a.rem_euclid(c as i64) as u64
}

/// `S(k, n; c) = sum_{h mod c, (h,c)=1} cos(2 pi (k h + n hbar)/c)` (the sum is real).
pub fn kloosterman(k: i64, n: i64, c: u64) -> f64 {
    assert!(c > 0);
    let (k, n) = (reduce(k, c), reduce(n, c));
    let mut s = 0.0;
    for h in 1..=c {
        if gcd(h, c) != 1 {
            continue;
        }
        let hb = inverse_by_search(h % c, c);
        let arg = ((k * h + n * hb) % c) as f64 / c as f64;
        s += (TAU * arg).cos();
    }
    s
}

/// `c_r(n) = sum_{h mod r, (h,r)=1} cos(2 pi h n / r)`.
pub fn ramanujan(n: i64, r: u64) -> f64 {
    let n = reduce(n, r);
    (1..=r).filter(|&h| gcd(h, r) == 1).map(|h| (TAU * ((h * n) % r) as f64 / r as f64).cos()).sum()
}

/// `sum_{b <= B} sum_{x mod b, (x,b)=1} |sum_m a_m e(xm/b)|^2`.
pub fn farey_lhs(start: u64, re: &[f64], im: &[f64], big_b: u64) -> f64 {
    let mut total = 0.0;
    for b in 1..=big_b {
        for x in 0..b {
            if gcd(x, b) != 1 {
                continue;
            }
            let (mut sr, mut si) = (0.0, 0.0);
            for (j, (ar, ai)) in re.iter().zip(im).enumerate() {
                let m = start + j as u64;
                let th = TAU * ((x * m) % b) as f64 / b as f64;
                let (s, c) = th.sin_cos();
                sr += ar * c - ai * s;
                si += ar * s + ai * c;
            }
            total += sr * sr + si * si;
        }
    }
    total
}
