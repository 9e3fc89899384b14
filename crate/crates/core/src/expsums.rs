//! Complete exponential sums: Kloosterman, Ramanujan, the `V_d` sums and the
//! Poisson-dual identity
//!
//! `sum_{a mod r} V_{-a}(m,n;r) e(ak/r) = S(k,m;r) S(k,n;r)`,
//!
//! plus the series `sigma(m,n) = sum_r r^{-2} S(0,m;r) S(0,n;r)`.

use crate::arith::{character_table, divisor_count, euler_phi, gcd, gcd_i, inv_mod, lcm, mobius, KahanSum};
use crate::{invalid, Complex64, Result};

/// Units modulo `r` with their inverses, and the character table `e(j/r)`.
#[derive(Clone, Debug)]
pub struct ExpSumCache {
    r: u64,
    units: Vec<(u64, u64)>,
    /// `inv[x]` for units, `u64::MAX` otherwise.
    inv: Vec<u64>,
    table: Vec<Complex64>,
}

impl ExpSumCache {
    pub fn new(r: u64) -> Result<Self> {
        if r == 0 {
            return invalid("modulus 0");
        }
        let mut inv = vec![u64::MAX; r as usize];
        let mut units = Vec::new();
        for x in 0..r {
            if gcd(x, r) == 1 {
                let y = inv_mod(x as i64, r)?;
                inv[x as usize] = y;
                units.push((x, y));
            }
        }
        Ok(Self { r, units, inv, table: character_table(r) })
    }

    pub fn modulus(&self) -> u64 {
        self.r
    }

    pub fn units(&self) -> &[(u64, u64)] {
        &self.units
    }

    fn red(&self, a: i64) -> u64 {
        a.rem_euclid(self.r as i64) as u64
    }

    /// `e(a/r)` by table lookup.
    pub fn ch(&self, a: i64) -> Complex64 {
        self.table[self.red(a) as usize]
    }

    pub fn kloosterman(&self, k: i64, n: i64) -> Complex64 {
        let (k, n, r) = (self.red(k), self.red(n), self.r);
        self.units
            .iter()
            .map(|&(x, xb)| self.table[((k * x + n * xb) % r) as usize])
            .collect::<KahanSum>()
            .value()
    }

    pub fn v_sum(&self, d: i64, m: i64, n: i64) -> Complex64 {
        let r = self.r;
        let (d, m, n) = (self.red(d), self.red(m), self.red(n));
        let mut acc = KahanSum::new();
        for s in 0..r {
            let sb = self.inv[s as usize];
            let ds = (d + s) % r;
            let dsb = self.inv[ds as usize];
            if sb == u64::MAX || dsb == u64::MAX {
                continue;
            }
            acc.add(self.table[((m * sb + (r - n) * dsb) % r) as usize]);
        }
        acc.value()
    }

    /// `d(r) (k,n,r)^{1/2} r^{1/2} - |S(k,n;r)|`.
    pub fn weil_margin(&self, k: i64, n: i64) -> f64 {
        let g = gcd(gcd_i(k, n), self.r) as f64;
        divisor_count(self.r) as f64 * g.sqrt() * (self.r as f64).sqrt() - self.kloosterman(k, n).norm()
    }

    /// `|sum_a V_{-a}(m,n) e(ak/r) - S(k,m) S(k,n)|`.
    pub fn poisson_residual(&self, k: i64, m: i64, n: i64) -> f64 {
        let lhs: KahanSum = (0..self.r as i64).map(|a| self.v_sum(-a, m, n) * self.ch(a * k)).collect();
        (lhs.value() - self.kloosterman(k, m) * self.kloosterman(k, n)).norm()
    }

    /// Largest Poisson residual over all `(k, m, n) mod r`.
    ///
    /// Builds every `V_d(m,n)` and `S(k,m)` once, so the sweep costs `O(r^4)`.
    pub fn poisson_max_residual(&self) -> f64 {
        let r = self.r as usize;
        let s_tab: Vec<Complex64> =
            (0..r * r).map(|i| self.kloosterman((i / r) as i64, (i % r) as i64)).collect();
        let mut worst: f64 = 0.0;
        let mut v = vec![Complex64::new(0.0, 0.0); r];
        for m in 0..r {
            for n in 0..r {
                for (a, va) in v.iter_mut().enumerate() {
                    *va = self.v_sum(-(a as i64), m as i64, n as i64);
                }
                for k in 0..r {
                    let lhs: KahanSum = (0..r).map(|a| v[a] * self.table[(a * k) % r]).collect();
                    let rhs = s_tab[k * r + m] * s_tab[k * r + n];
                    worst = worst.max((lhs.value() - rhs).norm());
                }
            }
        }
        worst
    }
}

/// Complete Kloosterman sum `S(k,n;c)`.
pub fn kloosterman(k: i64, n: i64, c: u64) -> Result<Complex64> {
    Ok(ExpSumCache::new(c)?.kloosterman(k, n))
}

/// Ramanujan sum `c_r(n) = S(0,n;r)` by von Sterneck's formula
/// `mu(r/g) phi(r) / phi(r/g)`, `g = (n, r)`.
pub fn ramanujan(n: i64, r: u64) -> Result<f64> {
    if r == 0 {
        return invalid("modulus 0");
    }
    let g = gcd_i(n, r as i64);
    let q = r / g;
    Ok(mobius(q)? as f64 * (euler_phi(r) / euler_phi(q)) as f64)
}

pub fn v_sum(d: i64, m: i64, n: i64, r: u64) -> Result<Complex64> {
    Ok(ExpSumCache::new(r)?.v_sum(d, m, n))
}

pub fn poisson_identity_residual(k: i64, m: i64, n: i64, r: u64) -> Result<f64> {
    Ok(ExpSumCache::new(r)?.poisson_residual(k, m, n))
}

/// Partial sum of `sigma(m, n)` with a rigorous bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaPartial {
    pub value: f64,
    /// Upper bound for `sum_{r > r_max} (m,r)(n,r)/r^2`, which dominates the tail.
    pub tail_bound: f64,
}

pub fn sigma_pair(m: u64, n: u64, r_max: u64) -> Result<SigmaPartial> {
    if m == 0 || n == 0 || r_max == 0 {
        return invalid("sigma_pair needs positive m, n, r_max");
    }
    // Terms shrink like r^-2, so accumulate from the small end with compensation.
    let mut acc = KahanSum::new();
    for r in 1..=r_max {
        let v = ramanujan(m as i64, r)? * ramanujan(n as i64, r)? / (r as f64 * r as f64);
        acc.add(Complex64::new(v, 0.0));
    }
    Ok(SigmaPartial { value: acc.value().re, tail_bound: gcd_tail_bound(m, n, r_max) })
}

/// `sum_{r > R} (m,r)(n,r) / r^2` bounded above via `(m,r) = sum_{d | (m,r)} phi(d)`:
/// the sum equals `sum_{d1|m, d2|n} phi(d1) phi(d2) L^-2 sum_{j > R/L} j^-2`, `L = lcm(d1,d2)`,
/// and `sum_{j > J} j^-2 <= 1/J` (or `pi^2/6` when `J = 0`).
pub fn gcd_tail_bound(m: u64, n: u64, r_max: u64) -> f64 {
    let dm = crate::arith::divisors(m);
    let dn = crate::arith::divisors(n);
    let mut s = 0.0;
    for &d1 in &dm {
        for &d2 in &dn {
            let l = lcm(d1, d2);
            let j = r_max / l;
            let tail = if j == 0 { std::f64::consts::PI.powi(2) / 6.0 } else { 1.0 / j as f64 };
            s += (euler_phi(d1) * euler_phi(d2)) as f64 / (l as f64 * l as f64) * tail;
        }
    }
    s
}

/// `d(c) (k,n,c)^{1/2} c^{1/2} - |S(k,n;c)|`.
pub fn weil_margin(k: i64, n: i64, c: u64) -> Result<f64> {
    Ok(ExpSumCache::new(c)?.weil_margin(k, n))
}

/// `sum_{1 <= k <= r} |S(0,k;r)|^2 / k`.
pub fn ramanujan_weighted_second_moment(r: u64) -> Result<f64> {
    let mut s = 0.0;
    for k in 1..=r {
        let c = ramanujan(k as i64, r)?;
        s += c * c / k as f64;
    }
    Ok(s)
}
