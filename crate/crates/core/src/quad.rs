//! Quadrature: Gauss-Legendre rules, composite panels, and adaptive
//! Gauss-Kronrod (7/15) for complex integrands.

use crate::{Complex64, Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`, cached.
pub fn gauss_legendre(n: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let rule = Arc::new(compute_gl(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
}

fn compute_gl(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, z);
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite Gauss-Legendre over `[a, b]` with `panels` equal panels of `n` nodes.
pub fn composite<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, panels: usize, n: usize) -> Complex64 {
    let rule = gauss_legendre(n);
    let h = (b - a) / panels as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mut ps = Complex64::new(0.0, 0.0);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            ps += f(lo + 0.5 * h * (x + 1.0)) * *w;
        }
        s += ps * (0.5 * h);
    }
    s
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Adaptive Gauss-Kronrod to absolute tolerance `tol`, bisecting at most `max_intervals` times.
pub fn adaptive<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64, max_intervals: usize) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut total_err = e;
    let mut count = 1;
    while total_err > tol {
        if count >= max_intervals {
            return Err(Error::NonConvergent(format!(
                "error estimate {total_err:.3e} > {tol:.3e} after {count} intervals on [{a}, {b}]"
            )));
        }
        let (i, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, err) = intervals.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        total_err += e1 + e2 - err;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
        count += 1;
        if (hi - lo).abs() < 1e-14 * (1.0 + lo.abs()) {
            return Err(Error::NonConvergent(format!("interval collapse near {mid}")));
        }
    }
    // Sum small-to-large for stability.
    intervals.sort_by(|x, y| x.2.norm().total_cmp(&y.2.norm()));
    Ok(intervals.iter().map(|x| x.2).sum())
}

/// Adaptive integration over `[a, inf)` of an integrand that decays at least
/// exponentially; panels of width `scale` doubling until a panel contributes
/// less than `tol * 1e-3`.
pub fn adaptive_tail<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, scale: f64, tol: f64) -> Result<Complex64> {
    let mut s = Complex64::new(0.0, 0.0);
    let mut lo = a;
    let mut w = scale;
    let mut quiet = 0;
    for _ in 0..200 {
        let p = adaptive(&mut f, lo, lo + w, tol * 0.05, 2000)?;
        s += p;
        lo += w;
        if p.norm() < tol * 1e-3 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(s);
            }
        } else {
            quiet = 0;
        }
        w *= 1.5;
    }
    Err(Error::NonConvergent(format!("tail integral from {a} did not settle")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        for n in [2usize, 5, 10, 24] {
            let (x, w) = &*gauss_legendre(n);
            for deg in 0..2 * n {
                let got: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn adaptive_oscillatory() {
        let v = adaptive(|x| Complex64::new(0.0, 50.0 * x).exp(), 0.0, 1.0, 1e-12, 1000).unwrap();
        let want = (Complex64::new(0.0, 50.0).exp() - 1.0) / Complex64::new(0.0, 50.0);
        assert!((v - want).norm() < 1e-11);
    }

    #[test]
    fn tail_of_exponential() {
        let v = adaptive_tail(|x| Complex64::new((-x).exp(), 0.0), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - 1.0).abs() < 1e-11);
    }
}
