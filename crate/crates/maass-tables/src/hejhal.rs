//! Hejhal's collocation method for even/odd Hecke-Maass cusp forms on SL2(Z).

use crate::kbessel::KBessel;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn cs(self, t: f64) -> f64 {
        match self {
            Parity::Even => t.cos(),
            Parity::Odd => t.sin(),
        }
    }
}

/// Moves `x + iy` into the standard fundamental domain.
pub fn pullback(mut x: f64, mut y: f64) -> (f64, f64) {
    loop {
        x -= x.round();
        let n = x * x + y * y;
        if n < 1.0 - 1e-15 {
            x = -x / n;
            y /= n;
        } else {
            return (x, y);
        }
    }
}

/// Smallest `m` such that `K(2 pi n y) < eps` for all `n >= m`.
pub fn truncation(kb: &KBessel, y: f64, eps: f64) -> usize {
    let mut n = ((kb.order() / (2.0 * PI * y)).ceil() as usize).max(1);
    while kb.eval(2.0 * PI * n as f64 * y).abs() >= eps {
        n += 1;
    }
    n
}

/// Solves for `c(2..=m)` with `c(1) = 1`, sampling on the horocycle at height `y`.
pub fn solve(kb: &KBessel, parity: Parity, y: f64, m: usize) -> Option<Vec<f64>> {
    let q = m + 10;
    let pts: Vec<(f64, f64, f64)> = (1..=q)
        .map(|j| {
            let x = (j as f64 - 0.5) / (2.0 * q as f64);
            let (xs, ys) = pullback(x, y);
            (x, xs, ys)
        })
        .collect();
    let mut v = DMatrix::<f64>::zeros(m, m);
    for l in 1..=m {
        let lf = l as f64;
        let col: Vec<f64> = pts
            .iter()
            .map(|&(_, xs, ys)| ys.sqrt() * kb.eval(2.0 * PI * lf * ys) * parity.cs(2.0 * PI * lf * xs))
            .collect();
        for n in 1..=m {
            let nf = n as f64;
            let s: f64 = pts.iter().zip(&col).map(|(p, c)| c * parity.cs(2.0 * PI * nf * p.0)).sum();
            v[(n - 1, l - 1)] = 2.0 * s / q as f64;
        }
        v[(l - 1, l - 1)] -= y.sqrt() * kb.eval(2.0 * PI * lf * y);
    }
    let a = v.view((1, 1), (m - 1, m - 1)).into_owned();
    let b = DVector::from_iterator(m - 1, (1..m).map(|n| -v[(n, 0)]));
    let x = a.lu().solve(&b)?;
    let mut c = vec![1.0];
    c.extend(x.iter());
    Some(c)
}

pub struct Probe {
    pub y: [f64; 2],
    pub eps: f64,
}

impl Probe {
    /// Differences `c_{y1}(k) - c_{y2}(k)` for k = 2, 3, 4.
    pub fn defect(&self, r: f64, parity: Parity) -> Option<[f64; 3]> {
        let kb = KBessel::new(r);
        let c: Vec<Vec<f64>> = self
            .y
            .iter()
            .map(|&y| solve(&kb, parity, y, truncation(&kb, y, self.eps)))
            .collect::<Option<_>>()?;
        Some([c[0][1] - c[1][1], c[0][2] - c[1][2], c[0][3] - c[1][3]])
    }
}

/// Refines a sign change of the first defect component inside `[a, b]`.
pub fn refine(p: &Probe, parity: Parity, mut a: f64, mut b: f64) -> Option<f64> {
    let f = |r: f64| p.defect(r, parity).map(|d| d[0]);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa.signum() == fb.signum() {
        return None;
    }
    // Illinois variant of regula falsi; robust and superlinear.
    let mut side = 0;
    for _ in 0..100 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c)?;
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() < 1e-13 || fc == 0.0 {
            return Some(c);
        }
    }
    Some(0.5 * (a + b))
}
