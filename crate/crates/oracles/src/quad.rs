//! Fixed dense Gauss-Legendre rules, nodes by Newton iteration on the
//! three-term recurrence.

use crate::C64;

/// Nodes and weights on `[-1, 1]`.
pub fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite rule over the given panel boundaries.
pub fn panels<F: FnMut(f64) -> C64>(mut f: F, edges: &[f64], rule: &(Vec<f64>, Vec<f64>)) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for e in edges.windows(2) {
        let (a, b) = (e[0], e[1]);
        let (h, m) = (0.5 * (b - a), 0.5 * (b + a));
        let mut p = C64::new(0.0, 0.0);
        for (z, w) in rule.0.iter().zip(&rule.1) {
            p += f(m + h * z) * *w;
        }
        s += p * h;
    }
    s
}

/// `n` equal panels on `[a, b]`.
pub fn uniform_edges(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_and_exp() {
        let r = legendre_rule(12);
        assert!((r.1.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let v = panels(|x| C64::new(x.powi(22), 0.0), &[0.0, 1.0], &r);
        assert!((v.re - 1.0 / 23.0).abs() < 1e-14);
        let e = panels(|x| C64::new(x.exp(), 0.0), &uniform_edges(0.0, 3.0, 5), &r);
        assert!((e.re - (3f64.exp() - 1.0)).abs() < 1e-12);
    }
}
