//! The twisted GL(3) sum `C(k, l, r, u, T)`, the phase geometry of the
//! leading Voronoi transform, and the negligibility sweep.
//!
//! `C = N^{-1/2} sum_n A(l, n) S(k, n; r) w_3(n/N) e(un/(rT))`.

use crate::coeffs::GL3Coefficients;
use crate::expsums::ExpSumCache;
use crate::quad::adaptive;
use crate::weights::w3;
use crate::{arith, invalid, Complex64, Error, Result};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VoronoiParams {
    pub k: i64,
    pub l: u64,
    pub r: u64,
    pub u: f64,
    pub t: f64,
    pub n: u64,
    pub x: f64,
}

/// `ln(2 + T)`.
fn log_factor(t: f64) -> f64 {
    (2.0 + t).ln()
}

/// `X = (N/l)^{1/3} / ln(2 + T)`.
pub fn x_cut(t: f64, l: u64, n: u64) -> f64 {
    (n as f64 / l as f64).cbrt() / log_factor(t)
}

/// Largest `N` allowed for given `T`, `l`: `T^{3/2} ln(2+T) / l^2`.
pub fn n_window(t: f64, l: u64) -> f64 {
    t.powf(1.5) * log_factor(t) / (l * l) as f64
}

impl VoronoiParams {
    pub fn new(k: i64, l: u64, r: u64, u: f64, t: f64, n: u64, x: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) || n == 0 || l == 0 || r == 0 {
            return invalid("T, N, l, r must be positive");
        }
        let lf = log_factor(t);
        if !((r as f64) < x) {
            return invalid(format!("need r < X, got r = {r}, X = {x}"));
        }
        if !(u.abs() <= 1.0 / lf) {
            return invalid(format!("need |u| <= 1/ln(2+T) = {}, got {u}", 1.0 / lf));
        }
        if k == 0 || (k.unsigned_abs() as f64) > r as f64 * lf {
            return invalid(format!("need 0 < |k| <= r ln(2+T), got k = {k}"));
        }
        if n as f64 > n_window(t, l) {
            return invalid(format!("N = {n} exceeds T^(3/2) ln(2+T)/l^2 = {:.1}", n_window(t, l)));
        }
        Ok(Self { k, l, r, u, t, n, x })
    }
}

/// Window on `[1, 2]` applied as `w(n/N)`.
pub type Window<'a> = &'a (dyn Fn(f64) -> f64 + Sync);

/// The default window `w_3`.
pub fn default_window() -> Window<'static> {
    &w3
}

fn check_range(p: &VoronoiParams, a: &GL3Coefficients) -> Result<()> {
    let (m_max, n_max) = a.range();
    if p.l > m_max {
        return Err(Error::Range { need: p.l, have: m_max });
    }
    if 2 * p.n > n_max {
        return Err(Error::Range { need: 2 * p.n, have: n_max });
    }
    Ok(())
}

/// `(C, trivial)` with `trivial = N^{-1/2} sum |A(l,n) S(k,n;r) w(n/N)|`.
fn c_sum_with_trivial(p: &VoronoiParams, a: &GL3Coefficients, w: Window, cache: &ExpSumCache) -> Result<(Complex64, f64)> {
    check_range(p, a)?;
    let nf = p.n as f64;
    let rt = p.r as f64 * p.t;
    let mut acc = arith::KahanSum::new();
    let mut triv = 0.0;
    for n in p.n..=2 * p.n {
        let wv = w(n as f64 / nf);
        if wv == 0.0 {
            continue;
        }
        let term = a.a(p.l, n)? * cache.kloosterman(p.k, n as i64) * wv;
        triv += term.norm();
        acc.add(term * arith::e(p.u * n as f64 / rt));
    }
    let s = nf.sqrt();
    Ok((acc.value() / s, triv / s))
}

/// `C(k, l, r, u, T)` by direct summation.
pub fn c_sum(p: &VoronoiParams, a: &GL3Coefficients, w: Window) -> Result<Complex64> {
    let cache = ExpSumCache::new(p.r)?;
    Ok(c_sum_with_trivial(p, a, w, &cache)?.0)
}

/// `y_0 = x^{1/2} (rT)^{3/2} / (N |u|^{3/2})`.
pub fn stationary_point(x: f64, p: &VoronoiParams) -> Result<f64> {
    if p.u == 0.0 {
        return invalid("u = 0: the phase is monotone, no stationary point");
    }
    if !(x > 0.0) {
        return invalid("x must be positive");
    }
    let rt = p.r as f64 * p.t;
    Ok(x.sqrt() * rt.powf(1.5) / (p.n as f64 * p.u.abs().powf(1.5)))
}

/// `f(y) = uyN/(rT) + 3 (xyN)^{1/3}`.
pub fn phase(y: f64, x: f64, p: &VoronoiParams) -> f64 {
    let nf = p.n as f64;
    p.u * y * nf / (p.r as f64 * p.t) + 3.0 * (x * y * nf).cbrt()
}

/// `f'(y) = uN/(rT) + (Nx)^{1/3} y^{-2/3}`.
pub fn phase_deriv(y: f64, x: f64, p: &VoronoiParams) -> f64 {
    let nf = p.n as f64;
    p.u * nf / (p.r as f64 * p.t) + (nf * x).cbrt() * y.powf(-2.0 / 3.0)
}

/// Relative tolerance of [`phase_integral`].
pub const PHASE_TOL: f64 = 1e-11;

/// `(Nx)^{2/3} int w(y) y^{-1/3} e(f(y)) dy` over the window support `[1, 2]`.
pub fn phase_integral(x: f64, p: &VoronoiParams, w: Window) -> Result<Complex64> {
    let nf = p.n as f64;
    if !(x * nf >= log_factor(p.t)) {
        return invalid(format!("need xN >= ln(2+T), got xN = {}", x * nf));
    }
    let scale = (nf * x).powf(2.0 / 3.0);
    // Panels short enough that each carries a bounded number of oscillations.
    let fmax = phase_deriv(1.0, x, p).abs().max(phase_deriv(2.0, x, p).abs()) + 1.0;
    let panels = (fmax * 2.0).ceil().max(4.0) as usize;
    let h = 1.0 / panels as f64;
    let g = |y: f64| w(y) * y.powf(-1.0 / 3.0) * arith::e(phase(y, x, p));
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let lo = 1.0 + i as f64 * h;
        s += adaptive(g, lo, lo + h, PHASE_TOL / panels as f64, 200)?;
    }
    Ok(scale * s)
}

/// Minimum of `|f'|` over `[1, 2]`.
pub fn phase_deriv_min(x: f64, p: &VoronoiParams) -> f64 {
    let (a, b) = (phase_deriv(1.0, x, p), phase_deriv(2.0, x, p));
    if a.signum() != b.signum() {
        0.0
    } else {
        a.abs().min(b.abs())
    }
}

/// `|f''(y)| = (2/3) (Nx)^{1/3} y^{-5/3}`.
pub fn phase_second_deriv(y: f64, x: f64, p: &VoronoiParams) -> f64 {
    2.0 / 3.0 * (p.n as f64 * x).cbrt() * y.powf(-5.0 / 3.0)
}

/// `x` at which `y_0 = 1`: `N^2 |u|^3 / (rT)^3`.
pub fn x_for_unit_stationary(p: &VoronoiParams) -> f64 {
    let rt = p.r as f64 * p.t;
    (p.n as f64).powi(2) * p.u.abs().powi(3) / rt.powi(3)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VoronoiCell {
    pub r: u64,
    pub k: i64,
    pub u: f64,
    pub c_re: f64,
    pub c_im: f64,
    pub trivial: f64,
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReachBound {
    pub r: u64,
    /// Upper bound on `m_1^2 m_2` from `x <~ N^2 |u|^3/(rT)^3` and `x = m_2 m_1^2/(r^3 l)`.
    pub m1sq_m2_max: f64,
    /// `x N` at the smallest non-empty dual term, `x = 1/(r^3 l)`.
    pub min_xn: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegligibilityReport {
    pub t: f64,
    pub l: u64,
    pub n: u64,
    pub x: f64,
    pub cells: Vec<VoronoiCell>,
    pub max_normalized: f64,
    pub reach: Vec<ReachBound>,
    pub max_reach: f64,
}

/// Points in the `u` grid over `[-1/ln(2+T), 1/ln(2+T)]`.
pub const U_GRID: usize = 41;

/// Sweep over `r < X`, `0 < |k| <= r ln(2+T)`, and the `u` grid.
pub fn negligibility_report_with_x(t: f64, l: u64, n: u64, a: &GL3Coefficients, x: f64, w: Window) -> Result<NegligibilityReport> {
    if n as f64 > n_window(t, l) {
        return invalid(format!("N = {n} exceeds T^(3/2) ln(2+T)/l^2"));
    }
    let lf = log_factor(t);
    let umax = 1.0 / lf;
    let rs: Vec<u64> = (1..).take_while(|&r| (r as f64) < x).collect();
    let mut jobs = Vec::new();
    for &r in &rs {
        let kmax = (r as f64 * lf).floor() as i64;
        for k in (-kmax..=kmax).filter(|&k| k != 0) {
            jobs.push((r, k));
        }
    }
    let caches: Vec<ExpSumCache> = rs.iter().map(|&r| ExpSumCache::new(r)).collect::<Result<_>>()?;
    let cells: Vec<Vec<VoronoiCell>> = jobs
        .par_iter()
        .map(|&(r, k)| {
            let cache = &caches[r as usize - 1];
            (0..U_GRID)
                .map(|i| {
                    let u = -umax + 2.0 * umax * i as f64 / (U_GRID - 1) as f64;
                    let p = VoronoiParams::new(k, l, r, u, t, n, x)?;
                    let (c, trivial) = c_sum_with_trivial(&p, a, w, cache)?;
                    let normalized = if trivial > 0.0 { c.norm() / trivial } else { 0.0 };
                    Ok(VoronoiCell { r, k, u, c_re: c.re, c_im: c.im, trivial, normalized })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let cells: Vec<VoronoiCell> = cells.into_iter().flatten().collect();
    let max_normalized = cells.iter().map(|c| c.normalized).fold(0.0, f64::max);
    let nf = n as f64;
    let reach: Vec<ReachBound> = rs
        .iter()
        .map(|&r| {
            let rt = r as f64 * t;
            let x_max = nf * nf * umax.powi(3) / rt.powi(3);
            let r3l = (r * r * r * l) as f64;
            ReachBound { r, m1sq_m2_max: x_max * r3l, min_xn: nf / r3l }
        })
        .collect();
    let max_reach = reach.iter().map(|b| b.m1sq_m2_max).fold(0.0, f64::max);
    Ok(NegligibilityReport { t, l, n, x, cells, max_normalized, reach, max_reach })
}

/// [`negligibility_report_with_x`] at `X = (N/l)^{1/3}/ln(2+T)` with the `w_3` window.
pub fn negligibility_report(t: f64, l: u64, n: u64, a: &GL3Coefficients) -> Result<NegligibilityReport> {
    negligibility_report_with_x(t, l, n, a, x_cut(t, l, n), default_window())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{bundled_dataset_path, load_dataset};

    fn sym2() -> GL3Coefficients {
        let ds = load_dataset(bundled_dataset_path()).unwrap();
        GL3Coefficients::sym_square(&ds.forms()[0], 2, 4000).unwrap()
    }

    fn params(k: i64, r: u64, u: f64) -> VoronoiParams {
        VoronoiParams::new(k, 1, r, u, 200.0, 2000, x_cut(200.0, 1, 2000)).unwrap()
    }

    #[test]
    fn invariants_enforced() {
        let x = x_cut(200.0, 1, 2000);
        assert!(VoronoiParams::new(0, 1, 1, 0.0, 200.0, 2000, x).is_err());
        assert!(VoronoiParams::new(1, 1, 3, 0.0, 200.0, 2000, x).is_err());
        assert!(VoronoiParams::new(1, 1, 1, 0.5, 200.0, 2000, x).is_err());
        assert!(VoronoiParams::new(6, 1, 1, 0.0, 200.0, 2000, x).is_err());
        assert!(VoronoiParams::new(1, 1, 1, 0.0, 200.0, 20000, 30.0).is_err());
        assert!(VoronoiParams::new(5, 1, 1, 0.1, 200.0, 2000, x).is_ok());
    }

    #[test]
    fn c_sum_zero_window_and_range() {
        let a = sym2();
        let zero = |_: f64| 0.0;
        assert_eq!(c_sum(&params(1, 1, 0.1), &a, &zero).unwrap(), Complex64::new(0.0, 0.0));
        let short = GL3Coefficients::d3(1, 3000).unwrap();
        assert!(matches!(c_sum(&params(1, 1, 0.1), &short, default_window()), Err(Error::Range { .. })));
    }

    #[test]
    fn c_sum_r1_plain_sum() {
        let a = sym2();
        let p = params(2, 1, -0.13);
        let got = c_sum(&p, &a, default_window()).unwrap();
        let mut want = Complex64::new(0.0, 0.0);
        for n in 2000..=4000u64 {
            let y = n as f64 / 2000.0;
            want += a.a(1, n).unwrap() * w3(y) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * -0.13 * n as f64 / 200.0);
        }
        want /= 2000f64.sqrt();
        assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()));
    }

    #[test]
    fn c_sum_u_reflection_conjugates() {
        // Real A and real Kloosterman sums: u -> -u conjugates C. (k -> -k does not:
        // S(-k, n; r) = S(k, -n; r) differs from S(k, n; r) in general.)
        let a = sym2();
        let x = x_cut(200.0, 1, 2000);
        for (k, r, u) in [(3, 2, 0.11), (-5, 2, 0.07), (1, 1, 0.18)] {
            let p = VoronoiParams::new(k, 1, r, u, 200.0, 2000, x).unwrap();
            let q = VoronoiParams { u: -u, ..p };
            let (c1, c2) = (c_sum(&p, &a, default_window()).unwrap(), c_sum(&q, &a, default_window()).unwrap());
            assert!((c1 - c2.conj()).norm() < 1e-12 * (1.0 + c1.norm()));
        }
    }

    #[test]
    fn trivial_bound_holds() {
        let a = sym2();
        let cache = ExpSumCache::new(2).unwrap();
        for k in [-7, -1, 1, 4, 10] {
            let p = VoronoiParams::new(k, 2, 2, 0.05, 200.0, 2000, x_cut(200.0, 2, 2000) + 1.0).unwrap();
            let (c, triv) = c_sum_with_trivial(&p, &a, default_window(), &cache).unwrap();
            assert!(c.norm() <= triv * (1.0 + 1e-12));
        }
    }

    #[test]
    fn stationary_point_examples() {
        let p = params(1, 1, -0.12);
        let x = x_for_unit_stationary(&p);
        assert!((stationary_point(x, &p).unwrap() - 1.0).abs() < 1e-12);
        let y1 = stationary_point(0.3, &p).unwrap();
        let y4 = stationary_point(1.2, &p).unwrap();
        assert!((y4 / y1 - 2.0).abs() < 1e-12);
        // f'(y_0) = 0 for u < 0.
        for x in [1e-3, 0.05, x] {
            let y0 = stationary_point(x, &p).unwrap();
            let scale = (p.n as f64 * x).cbrt() * y0.powf(-2.0 / 3.0);
            assert!(phase_deriv(y0, x, &p).abs() < 1e-12 * scale);
        }
        assert!(stationary_point(1.0, &params(1, 1, 0.0)).is_err());
    }

    #[test]
    fn phase_integral_validity_window() {
        let p = params(1, 1, -0.1);
        assert!(phase_integral(1e-4, &p, default_window()).is_err());
    }

    #[test]
    fn phase_integral_decays_away_from_stationarity() {
        // u < 0 with y_0 pushed below the support as x shrinks: |I| decreases.
        let p = params(1, 1, -0.15);
        let x1 = x_for_unit_stationary(&p);
        let mut prev = f64::INFINITY;
        for j in 1..8 {
            let x = x1 / 4f64.powi(j) * 0.5;
            if x * 2000.0 < log_factor(200.0) {
                break;
            }
            let v = phase_integral(x, &p, default_window()).unwrap().norm() / (2000.0 * x).powf(2.0 / 3.0);
            assert!(v < prev, "{j} {v} {prev}");
            prev = v;
        }
    }

    #[test]
    fn phase_integral_van_der_corput_scale() {
        let p = params(1, 1, -0.15);
        let x = x_for_unit_stationary(&p) * 1.5f64.powi(2);
        let y0 = stationary_point(x, &p).unwrap();
        assert!((1.0..=2.0).contains(&y0));
        let i = phase_integral(x, &p, default_window()).unwrap().norm() / (2000.0 * x).powf(2.0 / 3.0);
        let lead = w3(y0) * y0.powf(-1.0 / 3.0) / phase_second_deriv(y0, x, &p).sqrt();
        assert!(i > lead / 5.0 && i < lead * 5.0, "{i} {lead}");
    }

    #[test]
    fn report_examples() {
        let a = sym2();
        let rep = negligibility_report(200.0, 1, 2000, &a).unwrap();
        assert!(!rep.cells.is_empty());
        assert!(rep.max_reach < 1.0);
        let half = negligibility_report_with_x(200.0, 1, 2000, &a, rep.x / 2.0, default_window()).unwrap();
        assert!(half.max_normalized <= rep.max_normalized);
        assert!(half.cells.iter().all(|c| rep.cells.contains(c)));
    }
}
