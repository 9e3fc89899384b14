//! The weight `W_{A,B}(x) = int_0^inf t^-2 eta(|x|t/A) e^{-1/t} e(-|x|t/B) dt`,
//! its Fourier transform, inversion, decay, and the Cauchy-kernel identity
//! `exp(-2 pi |x|) = (1/pi) int e(xv) / (1 + v^2) dv`.
//!
//! Transform convention: `W^(u) = int W(x) e(-ux) dx`, `W(x) = int W^(u) e(ux) du`.
//!
//! Both `W` and the closed-form transform are integrals of
//! `eta(s) * (analytic in Re s > 0) * e(-cs)` over `s >= 1/2`. Past the point
//! where `eta = 1` the contour is rotated onto `s = s0 - i sgn(c) tau`, where
//! the integrand decays like `exp(-2 pi |c| tau)`.

use crate::quad::{adaptive, adaptive_tail, composite, gauss_legendre};
use crate::{arith, invalid, Complex64, Error, Result};
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

/// Smooth step: 0 on `t <= 1/2`, 1 on `t >= 1`,
/// `eta(t) = s(2t-1) / (s(2t-1) + s(2-2t))` with `s(t) = exp(-1/t)` in between.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SmoothCutoff;

impl SmoothCutoff {
    pub fn eta(&self, t: f64) -> f64 {
        eta(t)
    }
}

pub fn eta(t: f64) -> f64 {
    if t <= 0.5 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / (2.0 * t - 1.0)).exp();
    let b = (-1.0 / (2.0 - 2.0 * t)).exp();
    a / (a + b)
}

/// `w_2(x) = eta(2(x-1) + 1/2) eta(2(2-x) + 1/2)`: supported on `[1, 2]`, 1 on `[5/4, 7/4]`.
pub fn w2(x: f64) -> f64 {
    eta(2.0 * (x - 1.0) + 0.5) * eta(2.0 * (2.0 - x) + 0.5)
}

/// `w_3(x) = x^{-1/2} w_2(x)`.
pub fn w3(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        w2(x) / x.sqrt()
    }
}

/// Number of terms of the large-`u` expansion of the transform kernel.
const SERIES_TERMS: usize = 12;
/// Scaled frequency `2 pi u'` above which the series is used.
const SERIES_BETA: f64 = 40.0;

#[derive(Clone, Debug)]
pub struct WeightParams {
    a: f64,
    b: f64,
    cutoff: SmoothCutoff,
    moments: OnceLock<Vec<Complex64>>,
}

impl PartialEq for WeightParams {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl WeightParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || b == 0.0 || !b.is_finite() {
            return invalid(format!("need A > 0 and B != 0, got A = {a}, B = {b}"));
        }
        Ok(Self { a, b, cutoff: SmoothCutoff, moments: OnceLock::new() })
    }

    /// `A = r / (2 pi sin d)`, `B = r^2 / (2 pi k sin d)` with `d = 1/(2T)`.
    pub fn from_rkt(r: f64, k: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) || k == 0.0 || !(r > 0.0) {
            return invalid("need r > 0, k != 0, T > 0");
        }
        let sd = (1.0 / (2.0 * t)).sin();
        Self::new(r / (TAU * sd), r * r / (TAU * k * sd))
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn cutoff(&self) -> SmoothCutoff {
        self.cutoff
    }

    /// `M_n = int eta(t) t^{-2n} e(-ct) dt`, `c = A/B`, for `n = 1..=SERIES_TERMS`.
    fn moments(&self) -> &[Complex64] {
        self.moments.get_or_init(|| {
            (1..=SERIES_TERMS as i32)
                .map(|n| eta_integral(self.a / self.b, |s| s.powi(-2 * n), 1e-14 * 4f64.powi(n)).expect("moment converges"))
                .collect()
        })
    }
}

/// `int_{1/2}^inf eta(s) g(s) e(-cs) ds` for `g` analytic in `Re s > 0` and bounded there.
fn eta_integral<G: Fn(Complex64) -> Complex64>(c: f64, g: G, tol: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let head = adaptive(|s| g(one * s) * eta(s) * arith::e(-c * s), 0.5, 1.0, tol * 0.5, 4000)?;
    let sg = c.signum();
    let dir = Complex64::new(0.0, -sg);
    // e(-c (1 - i sg tau)) = e(-c) exp(-2 pi |c| tau)
    let ec = arith::e(-c);
    let scale = (1.0 / (TAU * c.abs())).min(1e6);
    let tail = adaptive_tail(
        |tau| {
            let s = Complex64::new(1.0, -sg * tau);
            g(s) * ec * (-TAU * c.abs() * tau).exp()
        },
        0.0,
        scale.max(0.25),
        tol * 0.5,
    )?;
    Ok(head + dir * tail)
}

/// `W_{A,B}(x)` to absolute accuracy `tol`. `W(0) = 0`.
pub fn w_ab(x: f64, p: &WeightParams, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return invalid("tol must be positive");
    }
    let ax = x.abs();
    if ax == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // s = |x| t:  W = |x| int_{A/2}^inf s^-2 eta(s/A) e^{-|x|/s} e(-s/B) ds.
    // With s = A q this is |x|/A int eta(q) q^-2 e^{-|x|/(Aq)} e(-(A/B) q) dq.
    let lam = ax / p.a;
    let v = eta_integral(p.a / p.b, |q| (-lam / q).exp() / (q * q), tol / (lam + 1e-300))?;
    Ok(v * lam)
}

/// `k(z) = (1 - z^2) / (1 + z^2)^2`.
fn kernel(z: Complex64) -> Complex64 {
    let z2 = z * z;
    (1.0 - z2) / ((1.0 + z2) * (1.0 + z2))
}

/// `(1/A) W^(u/A) = 2 int_0^inf eta(t) e(-At/B) k(2 pi u t) dt` at scaled frequency `u`.
pub fn w_hat_scaled(u: f64, p: &WeightParams, tol: f64) -> Result<Complex64> {
    let beta = TAU * u.abs();
    if beta >= SERIES_BETA {
        // k(z) = sum_{n>=1} (-1)^n (2n-1) z^{-2n} for |z| > 1; |beta t| >= 20 here.
        let m = p.moments();
        let mut s = Complex64::new(0.0, 0.0);
        let ib2 = 1.0 / (beta * beta);
        let mut pw = ib2;
        for (i, mn) in m.iter().enumerate() {
            let n = (i + 1) as f64;
            let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
            s += mn * (sign * (2.0 * n - 1.0) * pw);
            pw *= ib2;
        }
        return Ok(2.0 * s);
    }
    Ok(2.0 * eta_integral(p.a / p.b, |t| kernel(t * beta), tol * 0.5)?)
}

/// Closed-form transform `W^_{A,B}(u)`.
pub fn w_ab_hat_closed(u: f64, p: &WeightParams, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return invalid("tol must be positive");
    }
    Ok(w_hat_scaled(p.a * u, p, tol / p.a)? * p.a)
}

/// `min(1/|u|, (|B|/A) / (1 + u^2))`: the envelope of `(1/A) W^(u/A)`.
pub fn hat_envelope(u: f64, p: &WeightParams) -> f64 {
    let a = if u == 0.0 { f64::INFINITY } else { 1.0 / u.abs() };
    a.min(p.b.abs() / p.a / (1.0 + u * u))
}

/// `(1 + (A + |x|)/|B|)^{-K}`.
pub fn decay_profile(x: f64, p: &WeightParams, k: u32) -> f64 {
    (1.0 + (p.a + x.abs()) / p.b.abs()).powi(-(k as i32))
}

/// `C_K (1 + (A+|x|)/|B|)^{-K} - |W(x)|` with the frozen constants.
pub fn decay_margin(x: f64, p: &WeightParams, k: u32) -> Result<f64> {
    if k > 4 {
        return invalid("K must be <= 4");
    }
    let c = crate::calib::C_DECAY[k as usize];
    Ok(c * decay_profile(x, p, k) - w_ab(x, p, 1e-12)?.norm())
}

/// Tabulated inversion `int_{-U}^{U} W^(u) e(ux) du` for one parameter pair.
///
/// Below the series threshold `W^` is tabulated on Gauss nodes fine enough
/// for `|x| <= x_max`; above it the convergent series is used.
pub struct Inverter {
    p: WeightParams,
    x_max: f64,
    u_cut: f64,
    u0: f64,
    nodes: Vec<(f64, f64, Complex64)>,
}

const INV_NODES: usize = 12;

impl Inverter {
    pub fn new(p: &WeightParams, x_max: f64, u_cut: f64) -> Result<Self> {
        let u0 = (SERIES_BETA / TAU / p.a).min(u_cut);
        let width = (1.0 / (4.0 * x_max.max(1.0 / p.a))).min(u0 / 8.0);
        let panels = (u0 / width).ceil() as usize;
        let h = u0 / panels as f64;
        let rule = gauss_legendre(INV_NODES);
        let mut nodes = Vec::with_capacity(panels * INV_NODES);
        for k in 0..panels {
            for (z, w) in rule.0.iter().zip(&rule.1) {
                let u = k as f64 * h + 0.5 * h * (z + 1.0);
                nodes.push((u, 0.5 * h * w, w_ab_hat_closed(u, p, 1e-13)?));
            }
        }
        Ok(Self { p: p.clone(), x_max, u_cut, u0, nodes })
    }

    /// Bound on `|int_{|u| > U} W^(u) e(ux) du|` from the series coefficients.
    pub fn tail_bound(&self, x: f64) -> f64 {
        let p = &self.p;
        // W^(u) = sum_n g_n u^{-2n}, g_n = 2 A (-1)^n (2n-1) M_n / (2 pi A)^{2n}.
        let m = p.moments();
        let mut nonosc = 0.0;
        let mut osc = 0.0;
        for (i, mn) in m.iter().enumerate() {
            let n = (i + 1) as i32;
            let g = 2.0 * p.a * (2 * n - 1) as f64 * mn.norm() / (TAU * p.a).powi(2 * n);
            nonosc += 2.0 * g * self.u_cut.powi(1 - 2 * n) / (2 * n - 1) as f64;
            osc += g * self.u_cut.powi(-2 * n);
        }
        if x == 0.0 {
            nonosc
        } else {
            nonosc.min(2.0 * osc / (PI * x.abs()))
        }
    }

    /// `int_{-U}^{U} W^(u) e(ux) du = 2 int_0^U W^(u) cos(2 pi u x) du`.
    pub fn invert(&self, x: f64) -> Result<Complex64> {
        if x.abs() > self.x_max * (1.0 + 1e-12) {
            return invalid(format!("|x| = {} beyond tabulated range {}", x.abs(), self.x_max));
        }
        let mut s = Complex64::new(0.0, 0.0);
        for &(u, w, v) in &self.nodes {
            s += v * (w * (TAU * u * x).cos());
        }
        if self.u_cut > self.u0 {
            let p = &self.p;
            let rule = gauss_legendre(INV_NODES);
            let osc = if x == 0.0 { f64::INFINITY } else { 1.0 / (4.0 * x.abs()) };
            let mut lo = self.u0;
            while lo < self.u_cut {
                let hi = (lo + osc.min(lo / 4.0)).min(self.u_cut);
                let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
                for (z, w) in rule.0.iter().zip(&rule.1) {
                    let u = m + h * z;
                    s += w_hat_scaled(p.a * u, p, 1.0)? * (p.a * h * w * (TAU * u * x).cos());
                }
                lo = hi;
            }
        }
        Ok(2.0 * s)
    }

    /// `|W(x) - int_{-U}^{U} W^ e(ux) du|`, erroring if the tail bound exceeds `tol`.
    pub fn residual(&self, x: f64, tol: f64) -> Result<f64> {
        let tb = self.tail_bound(x);
        if tb > tol {
            return Err(Error::Truncation(format!("tail bound {tb:.3e} > {tol:.3e} at u_cut = {}", self.u_cut)));
        }
        Ok((w_ab(x, &self.p, 1e-12)? - self.invert(x)?).norm())
    }
}

/// Tolerance on the inversion residual: `1e-5 (1 + |W|)`.
pub const INVERSION_TOL: f64 = 1e-5;

/// `|W(x) - int_{-U}^{U} W^(u) e(ux) du|`.
pub fn w_inversion_residual(x: f64, p: &WeightParams, u_cut: f64) -> Result<f64> {
    let inv = Inverter::new(p, x.abs().max(p.a), u_cut)?;
    inv.residual(x, INVERSION_TOL)
}

/// Smallest power-of-two multiple of `1/A` whose tail bound at `x` is below `tol`.
pub fn auto_u_cut(x: f64, p: &WeightParams, tol: f64) -> f64 {
    let mut u = 8.0 / p.a;
    loop {
        let inv = Inverter { p: p.clone(), x_max: 1.0, u_cut: u, u0: 0.0, nodes: vec![] };
        if inv.tail_bound(x) <= tol || u > 1e9 {
            return u;
        }
        u *= 2.0;
    }
}

/// `|exp(-2 pi |x|) - (1/pi) int_{-V}^{V} e(xv) / (1 + v^2) dv|`.
pub fn cauchy_kernel_residual(x: f64, v_cut: f64) -> Result<f64> {
    if !(v_cut >= 1.0) {
        return invalid("v_cut must be >= 1");
    }
    let width = (1.0 / (4.0 * x.abs().max(1e-9))).clamp(1e-3, 0.5);
    let panels = (v_cut / width).ceil() as usize;
    let s = composite(|v| Complex64::new((TAU * x * v).cos() / (1.0 + v * v), 0.0), 0.0, v_cut, panels, 12);
    Ok(((-TAU * x.abs()).exp() - 2.0 / PI * s.re).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eta_examples() {
        assert_eq!(eta(0.4), 0.0);
        assert_eq!(eta(1.3), 1.0);
        let v = eta(0.75);
        assert!((v - 0.5).abs() < 1e-15);
        let t: f64 = 0.6;
        let (a, b) = ((-1.0 / (2.0 * t - 1.0)).exp(), (-1.0 / (2.0 - 2.0 * t)).exp());
        assert_eq!(eta(t), a / (a + b));
        for i in 0..100 {
            let t = 0.5 + i as f64 / 200.0;
            assert!(eta(t + 0.005) >= eta(t));
        }
    }

    #[test]
    fn parameter_map() {
        let p = WeightParams::from_rkt(3.0, 2.0, 10.0).unwrap();
        let sd = (0.05f64).sin();
        assert!((p.a() - 3.0 / (TAU * sd)).abs() < 1e-12);
        assert!((p.b() - 9.0 / (TAU * 2.0 * sd)).abs() < 1e-12);
        assert!((p.a() / p.b() - 2.0 / 3.0).abs() < 1e-14);
    }

    /// Direct quadrature of the defining integral with no contour rotation.
    fn direct_w(x: f64, a: f64, b: f64) -> Complex64 {
        // t in [A/(2|x|), T1], integrand t^-2 (...), plus Abel-regularised tail
        // int_{T1}^inf t^-2 e^{-1/t} e(-ct) dt approximated by two integrations by parts.
        let ax = x.abs();
        let c = ax / b;
        let t0 = a / (2.0 * ax);
        let t1 = 400.0_f64.max(a / ax);
        let f = |t: f64| arith::e(-c * t) * ((-1.0 / t).exp() * eta(ax * t / a) / (t * t));
        let head = adaptive(f, t0, t1, 1e-13, 200_000).unwrap();
        let g = |t: f64| (-1.0 / t).exp() / (t * t);
        let dg = |t: f64| (-1.0 / t).exp() * (1.0 / t.powi(4) - 2.0 / t.powi(3));
        let w = Complex64::new(0.0, -TAU * c);
        let tail = -(arith::e(-c * t1) * g(t1)) / w + arith::e(-c * t1) * dg(t1) / (w * w);
        head + tail
    }

    #[test]
    fn w_matches_direct_quadrature() {
        for &(x, a, b) in &[(0.7, 1.0, 1.0), (3.0, 4.0, 1.0), (2.0, 1.0, -4.0), (12.0, 4.0, 16.0)] {
            let p = WeightParams::new(a, b).unwrap();
            let got = w_ab(x, &p, 1e-12).unwrap();
            let want = direct_w(x, a, b);
            assert!((got - want).norm() < 1e-7, "{x} {a} {b}: {got} {want}");
        }
    }

    #[test]
    fn w_basic_symmetries() {
        let p = WeightParams::new(2.0, 3.0).unwrap();
        let q = WeightParams::new(2.0, -3.0).unwrap();
        assert_eq!(w_ab(0.0, &p, 1e-10).unwrap(), Complex64::new(0.0, 0.0));
        for x in [0.3, 1.0, 5.0] {
            let a = w_ab(x, &p, 1e-12).unwrap();
            assert_eq!(a, w_ab(-x, &p, 1e-12).unwrap());
            assert!((w_ab(x, &q, 1e-12).unwrap() - a.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn hat_at_zero() {
        let p = WeightParams::new(3.0, 2.0).unwrap();
        let got = w_ab_hat_closed(0.0, &p, 1e-12).unwrap();
        let want = eta_integral(1.5, |_| Complex64::new(1.0, 0.0), 1e-13).unwrap() * 6.0;
        assert!((got - want).norm() < 1e-11);
    }

    #[test]
    fn series_matches_quadrature_at_threshold() {
        for &(a, b) in &[(1.0, 1.0), (4.0, -1.0), (1.0, 16.0)] {
            let p = WeightParams::new(a, b).unwrap();
            let u = SERIES_BETA / TAU * 1.0001;
            let s = w_hat_scaled(u, &p, 1e-13).unwrap();
            let q = 2.0 * eta_integral(a / b, |t| kernel(t * TAU * u), 1e-14).unwrap();
            assert!((s - q).norm() < 1e-12 * q.norm().max(1e-3), "{a} {b}: {s} {q}");
        }
    }

    #[test]
    fn cauchy_examples() {
        let r0 = cauchy_kernel_residual(0.0, 1e4).unwrap();
        assert!(r0 <= 2.0 / (PI * 1e4));
        let r1 = cauchy_kernel_residual(1.0, 1e4).unwrap();
        assert!(r1 <= 2.0 / (PI * 1e4));
        let mut prev = f64::INFINITY;
        for v in [1.0, 10.0, 100.0, 1000.0] {
            let r = cauchy_kernel_residual(0.0, v).unwrap();
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn inversion_at_zero_converges_linearly() {
        let p = WeightParams::new(1.0, 1.0).unwrap();
        let u = auto_u_cut(0.0, &p, 1e-5);
        let r1 = w_inversion_residual(0.0, &p, u).unwrap();
        assert!(r1 <= 1e-5);
        let r2 = Inverter::new(&p, 1.0, 2.0 * u).unwrap().invert(0.0).unwrap().norm();
        assert!(r2 <= 0.5 * r1 * 1.05, "{r1} {r2}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn w_even_and_conjugate(x in 0.01f64..20.0, a in 0.5f64..8.0, b in 0.5f64..8.0) {
            let p = WeightParams::new(a, b).unwrap();
            let q = WeightParams::new(a, -b).unwrap();
            let w = w_ab(x, &p, 1e-11).unwrap();
            prop_assert_eq!(w, w_ab(-x, &p, 1e-11).unwrap());
            prop_assert!((w_ab(x, &q, 1e-11).unwrap() - w.conj()).norm() < 1e-10);
        }
    }
}
