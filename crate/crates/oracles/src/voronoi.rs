//! Plain summation of `N^{-1/2} sum_n A(n) S(k,n;r) w_3(n/N) e(un/(rT))`.

use crate::expsum::kloosterman;
use crate::weights::eta;
use crate::C64;
use std::f64::consts::TAU;

pub fn w3(x: f64) -> f64 {
    if x <= 1.0 || x >= 2.0 {
        return 0.0;
    }
    eta(2.0 * x - 1.5) * eta(4.5 - 2.0 * x) / x.sqrt()
}

/// `coeff(n)` supplies `A(l, n)`.
pub fn twisted_sum(coeff: &dyn Fn(u64) -> f64, big_n: u64, k: i64, r: u64, u: f64, t: f64) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for n in big_n..=2 * big_n {
        let w = w3(n as f64 / big_n as f64);
        if w == 0.0 {
            continue;
        }
        let kl = kloosterman(k, n as i64, r);
        s += C64::from_polar(coeff(n) * kl * w, TAU * u * n as f64 / (r as f64 * t));
    }
    s / (big_n as f64).sqrt()
}
