//! Gamma factors, the approximate functional equation and its weights.
//!
//! `gamma(s) = pi^{-c s} prod_i Gamma((s + mu_i)/2)`. The AFE at `s0`:
//!
//! `L(s0) = sum a(n) n^{-s0} V(n/Y) + eps * g*(1-s0)/g(s0) * sum b(n) n^{-(1-s0)} V*(nY)`
//!
//! with `V(y) = (1/2 pi i) int_(3) y^{-s} g(s0+s)/g(s0) G(s) ds/s`.

use crate::coeffs::GL3Coefficients;
use crate::special::ln_gamma;
use crate::{invalid, Complex64, Error, Result};
use std::f64::consts::PI;

/// GL(3) type parameters and derived shifts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GL3Spectral {
    pub nu1: Complex64,
    pub nu2: Complex64,
}

impl GL3Spectral {
    pub fn new(nu1: Complex64, nu2: Complex64) -> Self {
        Self { nu1, nu2 }
    }

    /// `nu1 = nu2 = 1/3`: all shifts vanish and `L(phi, s) = zeta(s)^3`.
    pub fn eisenstein_d3() -> Self {
        let t = Complex64::new(1.0 / 3.0, 0.0);
        Self { nu1: t, nu2: t }
    }

    pub fn alpha(&self) -> Complex64 {
        -self.nu1 - 2.0 * self.nu2 + 1.0
    }

    pub fn beta(&self) -> Complex64 {
        -self.nu1 + self.nu2
    }

    pub fn gamma(&self) -> Complex64 {
        2.0 * self.nu1 + self.nu2 - 1.0
    }

    pub fn shifts(&self) -> [Complex64; 3] {
        [self.alpha(), self.beta(), self.gamma()]
    }

    pub fn dual(&self) -> Self {
        Self { nu1: self.nu2, nu2: self.nu1 }
    }

    /// `pi^{-3s/2} Gamma((s-gamma)/2) Gamma((s-beta)/2) Gamma((s-alpha)/2)`.
    pub fn gamma_data(&self) -> GammaData {
        GammaData { c: 1.5, mu: vec![-self.gamma(), -self.beta(), -self.alpha()] }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaData {
    pub c: f64,
    pub mu: Vec<Complex64>,
}

impl GammaData {
    pub fn new(c: f64, mu: Vec<Complex64>) -> Result<Self> {
        if ![2, 3, 6].contains(&mu.len()) {
            return invalid(format!("gamma data of degree {} not supported", mu.len()));
        }
        Ok(Self { c, mu })
    }

    pub fn degree(&self) -> usize {
        self.mu.len()
    }

    pub fn conj(&self) -> Self {
        Self { c: self.c, mu: self.mu.iter().map(|m| m.conj()).collect() }
    }
}

/// Minimum distance of `(s + mu)/2` to a pole before [`Error::Pole`] is raised.
pub const POLE_DISTANCE: f64 = 1e-8;

pub fn ln_gamma_factor(s: Complex64, g: &GammaData) -> Result<Complex64> {
    let mut acc = Complex64::new(-g.c * PI.ln(), 0.0) * s;
    for m in &g.mu {
        let z = (s + m) / 2.0;
        if z.re < 0.5 {
            let k = z.re.round();
            if k <= 0.0 && Complex64::new(z.re - k, z.im).norm() < POLE_DISTANCE {
                return Err(Error::Pole(format!("Gamma argument {z} at a pole")));
            }
        }
        acc += ln_gamma(z);
    }
    Ok(acc)
}

pub fn gamma_factor(s: Complex64, g: &GammaData) -> Result<Complex64> {
    Ok(ln_gamma_factor(s, g)?.exp())
}

/// `G(s) = exp(s^2 / w^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mollifier {
    pub width: f64,
}

impl Mollifier {
    pub fn new(width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return invalid("mollifier width must be positive");
        }
        Ok(Self { width })
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (s * s / (self.width * self.width)).exp()
    }
}

impl Default for Mollifier {
    fn default() -> Self {
        Self { width: 1.0 }
    }
}

/// Width used by the moment and Y-invariance pipelines; keeps AFE lengths
/// within the tabulated coefficient range.
pub const PIPELINE_WIDTH: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AFEConfig {
    pub mollifier: Mollifier,
    pub y: f64,
    pub epsilon: Complex64,
}

impl AFEConfig {
    pub fn new(mollifier: Mollifier, y: f64, epsilon: Complex64) -> Result<Self> {
        if !(y > 0.0) {
            return invalid("Y must be positive");
        }
        if (epsilon.norm() - 1.0).abs() > 1e-12 {
            return invalid(format!("root number {epsilon} is not unimodular"));
        }
        Ok(Self { mollifier, y, epsilon })
    }

    pub fn pipeline(epsilon: f64) -> Self {
        Self { mollifier: Mollifier { width: PIPELINE_WIDTH }, y: 1.0, epsilon: Complex64::new(epsilon, 0.0) }
    }

    pub fn with_y(self, y: f64) -> Self {
        Self { y, ..self }
    }
}

impl Default for AFEConfig {
    fn default() -> Self {
        Self { mollifier: Mollifier::default(), y: 1.0, epsilon: Complex64::new(1.0, 0.0) }
    }
}

/// Gamma data depending on a spectral parameter `t`: shifts `a_i + i kappa_i t`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaFamily {
    pub c: f64,
    pub fixed: Vec<Complex64>,
    pub kappa: Vec<i8>,
}

impl GammaFamily {
    /// `pi^{-s} Gamma((s + d + it)/2) Gamma((s + d - it)/2)`, `d = 1` for odd forms.
    pub fn gl2(odd: bool) -> Self {
        let d = Complex64::new(if odd { 1.0 } else { 0.0 }, 0.0);
        Self { c: 1.0, fixed: vec![d, d], kappa: vec![1, -1] }
    }

    /// `pi^{-3s} prod_{+-} prod_i Gamma((s + d +- it - alpha_i)/2)`.
    pub fn rankin(phi: &GL3Spectral, odd: bool) -> Self {
        let d = if odd { 1.0 } else { 0.0 };
        let mut fixed = Vec::with_capacity(6);
        let mut kappa = Vec::with_capacity(6);
        for k in [-1i8, 1] {
            for a in phi.shifts() {
                fixed.push(d - a);
                kappa.push(k);
            }
        }
        Self { c: 3.0, fixed, kappa }
    }

    pub fn data(&self, t: f64) -> GammaData {
        let mu = self.fixed.iter().zip(&self.kappa).map(|(a, &k)| a + Complex64::new(0.0, k as f64 * t)).collect();
        GammaData { c: self.c, mu }
    }

    /// Number of factors whose argument grows with `t` at `s0 = 1/2 + it`.
    pub fn growing(&self) -> usize {
        self.kappa.iter().filter(|&&k| k > -1).count()
    }

    /// `h(s) = lim_{t -> inf} G(s) g(s0+s)/g(s0) t^{-m s/2}` at `s0 = 1/2 + it`.
    pub fn stirling_limit(&self, s: Complex64, m: &Mollifier) -> Complex64 {
        let mut acc = Complex64::new(-self.c * PI.ln(), 0.0) * s;
        for (a, &k) in self.fixed.iter().zip(&self.kappa) {
            if k == -1 {
                let z = (a + 0.5) / 2.0;
                acc += ln_gamma(z + s / 2.0) - ln_gamma(z);
            } else {
                // Gamma(z + i(1+k)t/2 + s/2)/Gamma(z + i(1+k)t/2) ~ (i(1+k)t/2)^{s/2}
                let w = Complex64::new(0.0, (1 + k) as f64 / 2.0);
                acc += s / 2.0 * w.ln();
            }
        }
        acc.exp() * m.eval(s)
    }
}

/// `|G(s) g(s0+s)/g(s0) / t^{3s/2} - h(s)|` at `s0 = 1/2 + it`, with `t^{m s/2}`
/// for the number `m` of growing factors (`m = 3` in the Rankin-Selberg case).
pub fn stirling_ratio_residual(s: Complex64, t: f64, fam: &GammaFamily, cfg: &AFEConfig) -> Result<f64> {
    if !(s.re > 0.0) || t < 10.0 {
        return invalid("need Re s > 0 and t >= 10");
    }
    let g = fam.data(t);
    let s0 = Complex64::new(0.5, t);
    let m = fam.growing() as f64;
    let lhs = (ln_gamma_factor(s0 + s, &g)? - ln_gamma_factor(s0, &g)? - s * (m / 2.0) * t.ln()).exp()
        * cfg.mollifier.eval(s);
    Ok((lhs - fam.stirling_limit(s, &cfg.mollifier)).norm())
}

/// Relative size below which the contour integrand is treated as zero.
const CONTOUR_TOL: f64 = 1e-17;

#[derive(Clone, Debug)]
struct Contour {
    sigma: f64,
    residue: bool,
    nodes: Vec<(Complex64, Complex64)>,
    l1: f64,
}

/// The weight `V(y)` for fixed `s0` and gamma data, pretabulated on two contours.
#[derive(Clone, Debug)]
pub struct VWeight {
    right: Contour,
    left: Option<Contour>,
}

impl VWeight {
    pub fn new(s0: Complex64, g: &GammaData, m: &Mollifier) -> Result<Self> {
        Self::with_height_factor(s0, g, m, 1.0)
    }

    /// As [`VWeight::new`] with the truncation height scaled by `hf >= 1`.
    pub fn with_height_factor(s0: Complex64, g: &GammaData, m: &Mollifier, hf: f64) -> Result<Self> {
        let base = ln_gamma_factor(s0, g)?;
        let min_re = g.mu.iter().map(|mu| (s0 + mu).re).fold(f64::INFINITY, f64::min);
        if min_re <= 0.0 {
            return Err(Error::Pole(format!("Re(s0 + mu) = {min_re} leaves no pole-free strip")));
        }
        let right = Self::contour(3.0, false, base, s0, g, m, hf, 3.0f64.min(3.0 + min_re))?;
        let sl = -0.5 * min_re.min(0.5);
        let left = Self::contour(sl, true, base, s0, g, m, hf, (-sl).min(min_re + sl)).ok();
        Ok(Self { right, left })
    }

    #[allow(clippy::too_many_arguments)]
    fn contour(sigma: f64, residue: bool, base: Complex64, s0: Complex64, g: &GammaData, m: &Mollifier, hf: f64, dist: f64) -> Result<Contour> {
        let f = |u: f64| -> Result<Complex64> {
            let s = Complex64::new(sigma, u);
            Ok((ln_gamma_factor(s0 + s, g)? - base).exp() * m.eval(s) / s)
        };
        // Each Gamma factor can grow at most like exp(pi |u| / 4) relative to
        // the Gaussian; beyond u_crit the integrand is decreasing.
        let u_crit = PI * g.degree() as f64 * m.width * m.width / 8.0 + 1.0;
        let peak = f(0.0)?.norm().max(f(-2.0 * s0.im)?.norm());
        let mut hgt: f64 = 2.0;
        let mut run_max = peak;
        loop {
            let a = f(hgt)?.norm().max(f(-hgt)?.norm());
            run_max = run_max.max(a);
            if hgt > u_crit && a < CONTOUR_TOL * run_max {
                break;
            }
            if hgt > 1e4 {
                return Err(Error::Truncation(format!("contour height exceeded 1e4 at sigma = {sigma}")));
            }
            hgt += 1.0;
        }
        hgt *= hf;
        let step = 2.0 * PI * dist.min(1.0) / 42.0;
        let n = (hgt / step).ceil() as i64;
        let step = hgt / n as f64;
        let mut nodes = Vec::with_capacity(2 * n as usize + 1);
        let mut l1 = 0.0;
        for k in -n..=n {
            let u = k as f64 * step;
            let w = f(u)? * (step / (2.0 * PI));
            l1 += w.norm();
            nodes.push((Complex64::new(sigma, u), w));
        }
        Ok(Contour { sigma, residue, nodes, l1 })
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        let ly = y.ln();
        let c = match &self.left {
            Some(l) if (-l.sigma * ly).exp() * l.l1 < (-self.right.sigma * ly).exp() * self.right.l1 => l,
            _ => &self.right,
        };
        let mut acc = Complex64::new(if c.residue { 1.0 } else { 0.0 }, 0.0);
        for &(s, w) in &c.nodes {
            acc += w * (-s * ly).exp();
        }
        acc
    }

    /// Smallest `y` on a `2^{1/4}` grid beyond which `|V| < tol` up to `1e15`.
    pub fn decay_length(&self, tol: f64) -> f64 {
        let mut last_big = 1e-6;
        let mut y = 1e-6;
        while y < 1e15 {
            if self.eval(y).norm() >= tol {
                last_big = y;
            }
            y *= 2f64.powf(0.25);
        }
        last_big * 2f64.powf(0.25)
    }
}

/// `V_{1/2+it}(y)` for gamma data `g`.
pub fn afe_weight_v(y: f64, t: f64, g: &GammaData, cfg: &AFEConfig) -> Result<Complex64> {
    if !(y > 0.0) || !(t > 0.0) {
        return invalid("need y > 0 and t > 0");
    }
    Ok(VWeight::new(Complex64::new(0.5, t), g, &cfg.mollifier)?.eval(y))
}

/// Threshold below which AFE terms are dropped.
pub const AFE_WEIGHT_TOL: f64 = 1e-10;

pub type CoeffFn<'a> = &'a dyn Fn(u64) -> Result<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AfeValue {
    pub value: Complex64,
    pub len_first: u64,
    pub len_second: u64,
}

/// `L(1/2 + it)` by the AFE. `coeffs` and `dual` give the Dirichlet coefficients
/// of `L` and of the dual; `g`, `g_dual` their gamma data.
pub fn afe_value(coeffs: CoeffFn, dual: CoeffFn, t: f64, g: &GammaData, g_dual: &GammaData, cfg: &AFEConfig, length_cap: u64) -> Result<AfeValue> {
    let s0 = Complex64::new(0.5, t);
    let s1 = Complex64::new(0.5, -t);
    let v = VWeight::new(s0, g, &cfg.mollifier)?;
    let vd = VWeight::new(s1, g_dual, &cfg.mollifier)?;
    let n1 = (v.decay_length(AFE_WEIGHT_TOL) * cfg.y).ceil() as u64;
    let n2 = (vd.decay_length(AFE_WEIGHT_TOL) / cfg.y).ceil() as u64;
    let need = n1.max(n2);
    if need > length_cap {
        return Err(Error::Range { need, have: length_cap });
    }
    let mut first = crate::arith::KahanSum::new();
    for n in 1..=n1 {
        let ln = (n as f64).ln();
        first.add(coeffs(n)? * (-s0 * ln).exp() * v.eval(n as f64 / cfg.y));
    }
    let mut second = crate::arith::KahanSum::new();
    for n in 1..=n2 {
        let ln = (n as f64).ln();
        second.add(dual(n)? * (-s1 * ln).exp() * vd.eval(n as f64 * cfg.y));
    }
    let ratio = (ln_gamma_factor(s1, g_dual)? - ln_gamma_factor(s0, g)?).exp();
    Ok(AfeValue { value: first.value() + cfg.epsilon * ratio * second.value(), len_first: n1, len_second: n2 })
}

/// `sum_{m^2 k = n} lambda(k) A(m, k)`: the `n`-th coefficient of `L(u x phi, s)`.
pub fn rankin_coeff(n: u64, lambda: &dyn Fn(u64) -> Result<f64>, a: &GL3Coefficients) -> Result<Complex64> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut m = 1u64;
    while m * m <= n {
        if n.is_multiple_of(m * m) {
            let k = n / (m * m);
            acc += a.a(m, k)? * lambda(k)?;
        }
        m += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::zeta;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eisenstein_shifts_vanish() {
        for x in GL3Spectral::eisenstein_d3().shifts() {
            assert!(x.norm() < 1e-15);
        }
    }

    #[test]
    fn dual_shifts_are_negated_originals() {
        let s = GL3Spectral::new(c(0.3, 0.7), c(0.45, -0.3));
        let d = s.dual();
        assert!((d.alpha() + s.gamma()).norm() < 1e-15);
        assert!((d.beta() + s.beta()).norm() < 1e-15);
        assert!((d.gamma() + s.alpha()).norm() < 1e-15);
    }

    #[test]
    fn gamma_factor_examples() {
        let g = GammaData::new(0.5, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        // pi^{-1/4} Gamma(1/4) Gamma(3/4) = pi^{-1/4} pi sqrt 2
        let v = gamma_factor(c(0.5, 0.0), &g).unwrap();
        assert!((v.re - PI.powf(0.75) * 2f64.sqrt()).abs() < 1e-13);
        assert!(gamma_factor(c(0.0, 0.0), &g).is_err());
        let g3 = GL3Spectral::new(c(0.2, 0.5), c(0.1, -0.3)).gamma_data();
        let s = c(0.7, 2.0);
        let a = gamma_factor(s.conj(), &g3.conj()).unwrap();
        let b = gamma_factor(s, &g3).unwrap().conj();
        assert!((a - b).norm() < 1e-13 * b.norm());
        assert!(GammaData::new(1.0, vec![c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn d3_functional_equation() {
        // Lambda(s) = pi^{-3s/2} Gamma(s/2)^3 zeta(s)^3 is invariant under s -> 1-s.
        let g = GL3Spectral::eisenstein_d3().gamma_data();
        let gd = GL3Spectral::eisenstein_d3().dual().gamma_data();
        for s in [c(0.3, 2.0), c(2.0, 0.5), c(-0.5, 7.0)] {
            let lhs = gamma_factor(s, &g).unwrap() * zeta(s).powi(3);
            let rhs = gamma_factor(1.0 - s, &gd).unwrap() * zeta(1.0 - s).powi(3);
            assert!((lhs - rhs).norm() < 1e-11 * lhs.norm(), "{s}: {lhs} {rhs}");
        }
    }

    #[test]
    fn stirling_limit_at_zero_is_one() {
        let fam = GammaFamily::rankin(&GL3Spectral::eisenstein_d3(), false);
        let h = fam.stirling_limit(c(1e-12, 0.0), &Mollifier::default());
        assert!((h - 1.0).norm() < 1e-10);
    }

    #[test]
    fn stirling_residual_decays_like_inverse_t() {
        let fam = GammaFamily::rankin(&GL3Spectral::eisenstein_d3(), true);
        let cfg = AFEConfig::default();
        let r: Vec<f64> = [50.0, 100.0, 200.0, 400.0]
            .iter()
            .map(|&t| stirling_ratio_residual(c(1.0, 0.0), t, &fam, &cfg).unwrap())
            .collect();
        for w in r.windows(2) {
            let q = w[0] / w[1];
            assert!((1.5..=2.5).contains(&q), "{r:?}");
        }
    }

    #[test]
    fn even_first_order_term_vanishes_at_one() {
        // The three growing factors contribute 3s(s-1)/(8it) at first order.
        let fam = GammaFamily::rankin(&GL3Spectral::new(c(0.3, 0.2), c(0.35, -0.1)), false);
        let cfg = AFEConfig::default();
        let r100 = stirling_ratio_residual(c(1.0, 0.0), 100.0, &fam, &cfg).unwrap();
        let r200 = stirling_ratio_residual(c(1.0, 0.0), 200.0, &fam, &cfg).unwrap();
        assert!((r100 / r200 - 4.0).abs() < 0.1, "{}", r100 / r200);
        let q = stirling_ratio_residual(c(2.0, 0.0), 100.0, &fam, &cfg).unwrap()
            / stirling_ratio_residual(c(2.0, 0.0), 200.0, &fam, &cfg).unwrap();
        assert!((q - 2.0).abs() < 0.1, "{q}");
    }

    #[test]
    fn v_reference_values() {
        // Reference values from arbitrary-precision quadrature of the defining integral.
        let t = 100.0f64;
        let g = GammaFamily::rankin(&GL3Spectral::eisenstein_d3(), false).data(t);
        let cfg = AFEConfig::default();
        let small = afe_weight_v(1e-3 * t.powf(1.5), t, &g, &cfg).unwrap();
        assert!((small - c(0.18588019398007186, 0.27305566531108967)).norm() < 1e-9, "{small}");
        let large = afe_weight_v(1e3 * t.powf(1.5), t, &g, &cfg).unwrap();
        assert!(large.norm() <= 1e-6, "{large}");
        // V -> 1 once y is small against the effective conductor t^{3/2} / pi^3.
        let tiny = afe_weight_v(1e-3 * t.powf(1.5) / PI.powi(3) / 1e3, t, &g, &cfg).unwrap();
        assert!((tiny - 1.0).norm() <= 0.1, "{tiny}");
    }

    #[test]
    fn v_height_doubling() {
        let t = 30.0;
        let g = GammaFamily::rankin(&GL3Spectral::eisenstein_d3(), false).data(t);
        let m = Mollifier::default();
        let s0 = c(0.5, t);
        let a = VWeight::new(s0, &g, &m).unwrap();
        let b = VWeight::with_height_factor(s0, &g, &m, 2.0).unwrap();
        for y in [0.01, 1.0, 30.0, 300.0, 1e4] {
            assert!((a.eval(y) - b.eval(y)).norm() < 1e-9, "{y}");
        }
    }

    #[test]
    fn contours_agree() {
        // Both contours are valid for every y; compare where neither cancels badly.
        let g = GammaFamily::gl2(false).data(20.0);
        let v = VWeight::new(c(0.5, 20.0), &g, &Mollifier::new(3.0).unwrap()).unwrap();
        let l = v.left.as_ref().unwrap();
        for y in [0.5, 1.0, 2.0, 5.0] {
            let ly: f64 = f64::ln(y);
            let r: Complex64 = v.right.nodes.iter().map(|&(s, w)| w * (-s * ly).exp()).sum();
            let lv: Complex64 = 1.0 + l.nodes.iter().map(|&(s, w)| w * (-s * ly).exp()).sum::<Complex64>();
            assert!((r - lv).norm() < 1e-10, "{y}: {r} {lv}");
        }
    }

    #[test]
    fn afe_zeta_squared() {
        // L(s) = zeta(s)^2 has gamma data pi^{-s} Gamma(s/2)^2 and root number 1.
        // Its coefficients are d(n); the AFE must reproduce zeta(1/2+it)^2 for any Y.
        let g = GammaData::new(1.0, vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d = |n: u64| Ok(Complex64::new(crate::arith::divisor_count(n) as f64, 0.0));
        let t = 15.0;
        let want = zeta(c(0.5, t)).powi(2);
        for y in [0.5, 1.0, 2.0] {
            let cfg = AFEConfig::new(Mollifier::new(2.0).unwrap(), y, c(1.0, 0.0)).unwrap();
            let got = afe_value(&d, &d, t, &g, &g, &cfg, 100_000).unwrap();
            assert!((got.value - want).norm() < 1e-8 * want.norm().max(1.0), "{y}: {} {want}", got.value);
        }
    }

    #[test]
    fn afe_reports_range() {
        let g = GammaData::new(1.0, vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let one = |_: u64| Ok(Complex64::new(1.0, 0.0));
        let e = afe_value(&one, &one, 15.0, &g, &g, &AFEConfig::default(), 10).unwrap_err();
        assert!(matches!(e, Error::Range { .. }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn shift_sum_vanishes(a in -2.0f64..2.0, b in -2.0f64..2.0, x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let s = GL3Spectral::new(c(a, b), c(x, y));
            prop_assert!((s.alpha() + s.beta() + s.gamma()).norm() < 1e-14);
        }
    }
}
