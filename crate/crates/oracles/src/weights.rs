//! `W_{A,B}(x) = int_0^inf t^{-2} eta(|x| t/A) e^{-1/t} e(-|x| t/B) dt` from its
//! definition, and its Fourier transform by tabulation and dense quadrature.

use crate::quad::{legendre_rule, panels, uniform_edges};
use crate::C64;
use std::f64::consts::TAU;

pub fn eta(t: f64) -> f64 {
    if t <= 0.5 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / (2.0 * t - 1.0)).exp();
        let b = (-1.0 / (2.0 - 2.0 * t)).exp();
        a / (a + b)
    }
}

fn e(x: f64) -> C64 {
    C64::from_polar(1.0, TAU * x)
}

pub struct WOracle {
    a: f64,
    b: f64,
    head: (Vec<f64>, Vec<f64>),
}

impl WOracle {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b != 0.0);
        Self { a, b, head: legendre_rule(16) }
    }

    /// `W(x)`. The `eta` transition `[A/(2|x|), A/|x|]` is integrated on the real
    /// line; beyond it the path turns to `t = A/|x| - i sgn(B) tau`, where
    /// `e(-|x| t/B)` decays like `exp(-2 pi |x| tau/|B|)`.
    pub fn w(&self, x: f64) -> C64 {
        let x = x.abs();
        if x == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let c = x / self.b;
        let (t0, t1) = (self.a / (2.0 * x), self.a / x);
        let f = |t: C64| t.powi(-2) * (-1.0 / t).exp();
        let head = panels(|t| f(C64::new(t, 0.0)) * eta(x * t / self.a) * e(-c * t), &uniform_edges(t0, t1, 24), &self.head);
        let sg = self.b.signum();
        let rate = TAU * c.abs();
        let tau_max = (40.0 / rate).max(t1);
        let mut edges = vec![0.0];
        let mut tau = t1 / 64.0;
        while tau < tau_max {
            edges.push(tau);
            tau *= 2f64.powf(1.0 / 6.0);
        }
        edges.push(tau_max);
        let ec = e(-c * t1);
        let tail = panels(
            |tau| {
                let t = C64::new(t1, -sg * tau);
                f(t) * ec * (-rate * tau).exp()
            },
            &edges,
            &self.head,
        );
        head + C64::new(0.0, -sg) * tail
    }
}

/// `W^(u) = int W(x) e(-ux) dx = 2 int_0^inf W(x) cos(2 pi u x) dx`, with `W`
/// tabulated once on nodes resolving frequencies up to `u_max`.
pub struct WTransform {
    nodes: Vec<(f64, C64)>,
    pub x_max: f64,
}

impl WTransform {
    pub fn new(a: f64, b: f64, u_max: f64) -> Self {
        let w = WOracle::new(a, b);
        // Truncate once |W| has fallen 15 orders below its running maximum.
        let mut peak: f64 = 0.0;
        let mut x_max = a;
        let mut x = a / 8.0;
        loop {
            let v = w.w(x).norm();
            peak = peak.max(v);
            if x > 4.0 * (a + b.abs()) && v < 1e-15 * peak {
                x_max = x_max.max(x);
                break;
            }
            x *= 1.25;
        }
        let rule = legendre_rule(64);
        let mut edges = vec![0.0];
        let mut g = a / 1024.0;
        while g < a {
            edges.push(g);
            g *= 2.0;
        }
        let width = (8.0 / u_max).min(a);
        let n = ((x_max - a) / width).ceil().max(1.0) as usize;
        edges.extend(uniform_edges(a, x_max, n));
        let mut nodes = Vec::with_capacity(edges.len() * 64);
        for e in edges.windows(2) {
            let (h, m) = (0.5 * (e[1] - e[0]), 0.5 * (e[1] + e[0]));
            for (z, wt) in rule.0.iter().zip(&rule.1) {
                let xx = m + h * z;
                nodes.push((xx, w.w(xx) * (wt * h)));
            }
        }
        Self { nodes, x_max }
    }

    pub fn hat(&self, u: f64) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for (x, wv) in &self.nodes {
            s += wv * (TAU * u * x).cos();
        }
        2.0 * s
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
