//! Long-range coefficients by DFT on low horocycles, and the Petersson norm.

use crate::hejhal::{pullback, solve, truncation, Parity};
use crate::kbessel::KBessel;
use std::f64::consts::PI;

pub struct Form {
    pub r: f64,
    pub parity: Parity,
    pub kb: KBessel,
    /// Accurate low coefficients, `c[0] = c(1) = 1`.
    pub low: Vec<f64>,
}

impl Form {
    pub fn new(r: f64, parity: Parity) -> Self {
        let kb = KBessel::new(r);
        let low = solve(&kb, parity, 0.3, truncation(&kb, 0.3, 1e-16)).expect("singular system");
        Self { r, parity, kb, low }
    }

    /// `sum_l c(l) sqrt(y) K(2 pi l y) cs(2 pi l x)`, valid for `y >= sqrt(3)/2`.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let mut s = 0.0;
        for (i, c) in self.low.iter().enumerate() {
            let l = (i + 1) as f64;
            let k = self.kb.eval(2.0 * PI * l * y);
            if k.abs() < 1e-18 && 2.0 * PI * l * y > self.r {
                break;
            }
            s += c * k * self.parity.cs(2.0 * PI * l * x);
        }
        s * y.sqrt()
    }

    /// Coefficients `c(1..=n_max)` combined over several low heights by least squares.
    pub fn coefficients(&self, n_max: usize) -> Vec<f64> {
        let y0 = 0.6 * self.r / (2.0 * PI * n_max as f64);
        let mut num = vec![0.0; n_max];
        let mut den = vec![0.0; n_max];
        for j in 0..4 {
            let y = y0 * (1.0 + 0.17 * j as f64);
            let m_y = truncation(&self.kb, y, 1e-17);
            let q = (m_y + n_max) / 2 + 64;
            let mut d = vec![0.0; n_max];
            for m in 1..=q {
                let x = (m as f64 - 0.5) / (2.0 * q as f64);
                let (xs, ys) = pullback(x, y);
                let u = self.value(xs, ys);
                // Rotate e(n x) incrementally; re-seed periodically to bound drift.
                let step = (2.0 * PI * x).sin_cos();
                let (mut sn, mut cn) = (0.0f64, 1.0f64);
                for (i, dn) in d.iter_mut().enumerate() {
                    if i % 64 == 0 {
                        let a = 2.0 * PI * i as f64 * x;
                        sn = a.sin();
                        cn = a.cos();
                    }
                    let (s2, c2) = (sn * step.1 + cn * step.0, cn * step.1 - sn * step.0);
                    sn = s2;
                    cn = c2;
                    *dn += u * match self.parity {
                        Parity::Even => cn,
                        Parity::Odd => sn,
                    };
                }
            }
            for n in 1..=n_max {
                let k = y.sqrt() * self.kb.eval(2.0 * PI * n as f64 * y);
                num[n - 1] += 2.0 * d[n - 1] / q as f64 * k;
                den[n - 1] += k * k;
            }
        }
        num.iter().zip(&den).map(|(a, b)| a / b).collect()
    }

    /// `int_F U^2 dx dy / y^2` for `U` normalised by `c(1) = 1`.
    pub fn norm2(&self) -> f64 {
        let (gx, gw) = gauss_legendre(48);
        // y >= 1: Parseval in x.
        let mut upper = 0.0;
        for (i, c) in self.low.iter().enumerate() {
            let l = (i + 1) as f64;
            // int_1^inf K(2 pi l y)^2 dy / y, split into unit panels until negligible.
            let mut a = 1.0;
            loop {
                let mut p = 0.0;
                for (t, w) in gx.iter().zip(&gw) {
                    let y = a + 0.5 * (t + 1.0);
                    let k = self.kb.eval(2.0 * PI * l * y);
                    p += 0.5 * w * k * k / y;
                }
                upper += 0.5 * c * c * p;
                a += 1.0;
                if p.abs() < 1e-20 || a > 200.0 {
                    break;
                }
            }
        }
        // sqrt(1 - x^2) <= y <= 1, |x| <= 1/2.
        let mut lower = 0.0;
        for (tx, wx) in gx.iter().zip(&gw) {
            let x = 0.25 * (tx + 1.0);
            let y_lo = (1.0 - x * x).sqrt();
            let h = 1.0 - y_lo;
            let mut inner = 0.0;
            for (ty, wy) in gx.iter().zip(&gw) {
                let y = y_lo + 0.5 * h * (ty + 1.0);
                let u = self.value(x, y);
                inner += 0.5 * h * wy * u * u / (y * y);
            }
            lower += 0.25 * wx * inner;
        }
        upper + 2.0 * lower
    }

    /// Harmonic weight `|rho(1)|^2 / cosh(pi r)` of the L2-normalised form.
    pub fn alpha(&self) -> f64 {
        // u = 2 rho(1) e^{-pi r/2} U, so |rho(1)|^2 = e^{pi r} / (4 |U|^2).
        let ratio = 2.0 / (1.0 + (-2.0 * PI * self.r).exp());
        ratio / (4.0 * self.norm2())
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                let dp = {
                    let (mut p0, mut p1) = (1.0, z);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    n as f64 * (z * p1 - p0) / (z * z - 1.0)
                };
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                break;
            }
        }
    }
    (x, w)
}
