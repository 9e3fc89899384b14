//! Spectral sums over the Hecke-Maass basis and the continuous spectrum,
//! their majorants, and the second and sixth moment pipelines.
//!
//! `S(A) = sum_j w(t_j) |rho_j(1)|^2 |sum a_n lambda_j(n) n^{it_j}|^2`, with
//! `|rho_j(1)|^2 = alpha_j cosh(pi t_j)`.
//!
//! `T(A) = (1/pi) int w(t) cosh(pi t) |zeta(1+2it)|^{-2} |sum a_n sigma_{2it}(n)|^2 dt`,
//! the Eisenstein contribution in the same normalisation (`sigma_{2it}(n) = eta_t(n) n^{it}`).

use crate::afe::{afe_value, rankin_coeff, AFEConfig, GL3Spectral, GammaFamily};
use crate::coeffs::{GL2Form, GL3Coefficients, GL3Model, Parity, SpectralDataset};
use crate::expsums::ExpSumCache;
use crate::quad::gauss_legendre;
use crate::sieve::{loglog_slope, Sequence};
use crate::special::zeta;
use crate::weights::w2;
use crate::{arith, invalid, Complex64, Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalysisWindow {
    t: f64,
}

impl AnalysisWindow {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 1.0 / PI) || !t.is_finite() {
            return invalid(format!("window T = {t} must exceed 1/pi"));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `delta = 1/(2T)`.
    pub fn delta(&self) -> f64 {
        0.5 / self.t
    }

    /// `ln(2 + T)`, the concrete stand-in for `T^eps` in ranges.
    pub fn log_factor(&self) -> f64 {
        (2.0 + self.t).ln()
    }
}

/// `w(t) = 2 sinh((pi - 1/T) t) / sinh(2 pi t)`.
pub fn harmonic_weight(t: f64, win: &AnalysisWindow) -> f64 {
    let t = t.abs();
    let k = PI - 1.0 / win.t;
    if t < 1e-3 {
        if t == 0.0 {
            return k / PI;
        }
        return 2.0 * (k * t).sinh() / (2.0 * PI * t).sinh();
    }
    let a = (-2.0 * k * t).exp();
    let b = (-4.0 * PI * t).exp();
    2.0 * (-(PI + 1.0 / win.t) * t).exp() * (1.0 - a) / (1.0 - b)
}

/// `w(t) cosh(pi t)`, finite for all `t` and `~ exp(-|t|/T)`.
pub fn weight_cosh(t: f64, win: &AnalysisWindow) -> f64 {
    let t = t.abs();
    let k = PI - 1.0 / win.t;
    if t < 1e-3 {
        if t == 0.0 {
            return k / PI;
        }
        return 2.0 * (k * t).sinh() / (2.0 * PI * t).sinh() * (PI * t).cosh();
    }
    let a = (-2.0 * k * t).exp();
    let b = (-4.0 * PI * t).exp();
    let c = (-2.0 * PI * t).exp();
    (-t / win.t).exp() * (1.0 - a) * (1.0 + c) / (1.0 - b)
}

/// `|w(t) e^{pi t + t/T}/2 - 1|` and its bound `1.1 (e^{-2(pi-1/T)t} + e^{-4 pi t})`.
pub fn weight_comparability(t: f64, win: &AnalysisWindow) -> (f64, f64) {
    let k = PI - 1.0 / win.t;
    let a = (-2.0 * k * t).exp();
    let b = (-4.0 * PI * t).exp();
    let lhs = ((1.0 - a) / (1.0 - b) - 1.0).abs();
    (lhs, 1.1 * (a + b))
}

fn form_sum(seq: &Sequence, f: &GL2Form) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, a) in seq.iter() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc += a * f.lambda(n)? * Complex64::from_polar(1.0, f.t * (n as f64).ln());
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscreteSum {
    pub value: f64,
    /// Weyl-law estimate of the contribution of forms beyond the dataset range.
    pub tail_estimate: f64,
}

/// Relative tail budget for [`s_discrete`].
pub const S_TAIL_BUDGET: f64 = 1e-12;

/// `S(A)` over the dataset with a tail estimate, without enforcing completeness.
pub fn s_discrete_with_tail(ds: &SpectralDataset, seq: &Sequence, win: &AnalysisWindow) -> Result<DiscreteSum> {
    let forms = ds.forms();
    let terms: Vec<(f64, f64)> = forms
        .par_iter()
        .map(|f| Ok((f.t, f.alpha * form_sum(seq, f)?.norm_sqr())))
        .collect::<Result<_>>()?;
    let value: f64 = terms.iter().map(|(t, v)| weight_cosh(*t, win) * v).sum();
    let tc = ds.t_max_complete();
    let recent: Vec<f64> = terms.iter().filter(|(t, _)| *t > tc - 10.0).map(|x| x.1).collect();
    let mean = if recent.is_empty() { 0.0 } else { recent.iter().sum::<f64>() / recent.len() as f64 };
    // Weyl density t/6: int_{tc}^inf (t/6) e^{-t/T} dt = (T/6)(tc + T) e^{-tc/T}.
    let tw = win.t;
    let tail_estimate = mean * tw / 6.0 * (tc + tw) * (-tc / tw).exp();
    Ok(DiscreteSum { value, tail_estimate })
}

/// `S(A)`; errors when the estimated tail exceeds `S_TAIL_BUDGET` of the value.
pub fn s_discrete(ds: &SpectralDataset, seq: &Sequence, win: &AnalysisWindow) -> Result<f64> {
    let s = s_discrete_with_tail(ds, seq, win)?;
    if s.tail_estimate > S_TAIL_BUDGET * s.value {
        return Err(Error::Completeness(format!(
            "estimated tail {:.3e} beyond t = {} exceeds {:.0e} of S = {:.3e}",
            s.tail_estimate,
            ds.t_max_complete(),
            S_TAIL_BUDGET,
            s.value
        )));
    }
    Ok(s.value)
}

/// `sum a_n sigma_{2it}(n)`.
fn eisenstein_sum(divs: &[(Complex64, Vec<f64>)], t: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, ds) in divs {
        let s: Complex64 = ds.iter().map(|&ld| Complex64::from_polar(1.0, 2.0 * t * ld)).sum();
        acc += a * s;
    }
    acc
}

/// Relative tail budget for [`t_continuous`].
pub const T_TAIL_BUDGET: f64 = 1e-12;

/// Integrand of `T(A)` at `t`.
fn t_integrand(divs: &[(Complex64, Vec<f64>)], t: f64, win: &AnalysisWindow) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let z = zeta(Complex64::new(1.0, 2.0 * t));
    weight_cosh(t, win) / z.norm_sqr() * eisenstein_sum(divs, t).norm_sqr() / PI
}

/// `T(A)` integrated over `|t| <= t_cut`.
pub fn t_continuous(seq: &Sequence, win: &AnalysisWindow, t_cut: f64) -> Result<f64> {
    if !(t_cut > 0.0) {
        return invalid("t_cut must be positive");
    }
    let divs: Vec<(Complex64, Vec<f64>)> = seq
        .iter()
        .filter(|(_, a)| *a != Complex64::new(0.0, 0.0))
        .map(|(n, a)| (a, arith::divisors(n).iter().map(|&d| (d as f64).ln()).collect()))
        .collect();
    if divs.is_empty() {
        return Ok(0.0);
    }
    let lmax = (seq.end() as f64).ln().max(1.0);
    let width = (0.5 / lmax).min(0.25);
    let panels = (t_cut / width).ceil() as usize;
    let h = t_cut / panels as f64;
    let rule = gauss_legendre(16);
    let total: f64 = (0..panels)
        .into_par_iter()
        .map(|k| {
            let mut s = 0.0;
            for (z, w) in rule.0.iter().zip(&rule.1) {
                let t = k as f64 * h + 0.5 * h * (z + 1.0);
                s += w * (t_integrand(&divs, t, win) + t_integrand(&divs, -t, win));
            }
            0.5 * h * s
        })
        .sum();
    // The integrand decays like exp(-|t|/T) times a slowly varying factor.
    let edge = (0..8)
        .map(|i| {
            let t = t_cut - i as f64 * 0.125;
            t_integrand(&divs, t, win) + t_integrand(&divs, -t, win)
        })
        .fold(0.0, f64::max);
    let tail = edge * win.t;
    if tail > T_TAIL_BUDGET * total {
        return Err(Error::Truncation(format!("tail estimate {tail:.3e} at t_cut = {t_cut} exceeds {T_TAIL_BUDGET:.0e} of {total:.3e}")));
    }
    Ok(total)
}

/// `t_cut` with `exp(-t_cut/T)` below the tail budget, with margin for the
/// slowly varying factors.
pub fn default_t_cut(win: &AnalysisWindow) -> f64 {
    win.t * 36.0 + 20.0
}

/// `T sum_{r<X} (1/r) sum_{0<|k|<=r ln(2+T)} (1/|k|) int_{-U}^{U} |sum a_n S(k,n;r) e(un/(rT))|^2 du`.
pub fn s1_bound_rhs(seq: &Sequence, x: f64, win: &AnalysisWindow, u_cut: f64) -> Result<f64> {
    if !(x >= 1.0 && x <= win.t) {
        return invalid(format!("need 1 <= X <= T, got X = {x}"));
    }
    if !(u_cut > 0.0) {
        return invalid("u_cut must be positive");
    }
    let tw = win.t;
    let lf = win.log_factor();
    let mut total = 0.0;
    let mut r = 1u64;
    while (r as f64) < x {
        let cache = ExpSumCache::new(r)?;
        let kmax = (r as f64 * lf).floor() as i64;
        let mut inner = 0.0;
        for k in (-kmax..=kmax).filter(|&k| k != 0) {
            let b: Vec<Complex64> = seq.iter().map(|(n, a)| a * cache.kloosterman(k, n as i64)).collect();
            // int_{-U}^{U} e(uh/(rT)) du
            let kern = |h: i64| -> f64 {
                if h == 0 {
                    2.0 * u_cut
                } else {
                    let c = h as f64 / (r as f64 * tw);
                    (2.0 * PI * u_cut * c).sin() / (PI * c)
                }
            };
            let mut q = 0.0;
            for h in 0..b.len() {
                let mut rh = Complex64::new(0.0, 0.0);
                for i in 0..b.len() - h {
                    rh += b[i + h] * b[i].conj();
                }
                q += if h == 0 { rh.re * kern(0) } else { 2.0 * rh.re * kern(h as i64) };
            }
            inner += q / k.unsigned_abs() as f64;
        }
        total += inner / r as f64;
        r += 1;
    }
    Ok(tw * total.max(0.0))
}

/// Default `u` window `1/ln(2+T)`.
pub fn default_u_cut(win: &AnalysisWindow) -> f64 {
    1.0 / win.log_factor()
}

/// `(T^2 + T^{3/2} N^{1/2} + N^{5/4}) (NT)^{0.01} ||A||^2`.
pub fn luo_bound(n: u64, win: &AnalysisWindow, norm2: f64) -> f64 {
    let (t, n) = (win.t, n as f64);
    (t * t + t.powf(1.5) * n.sqrt() + n.powf(1.25)) * (n * t).powf(0.01) * norm2
}

/// `(T^2 + NT/X + N^{3/2}/T) N^{0.01} ||A||^2`, the error envelope of the s1 reduction.
pub fn s1_error_envelope(n: u64, x: f64, win: &AnalysisWindow, norm2: f64) -> f64 {
    let (t, n) = (win.t, n as f64);
    (t * t + n * t / x + n.powf(1.5) / t) * n.powf(0.01) * norm2
}

fn weighted_square_sum(forms: &[GL2Form], win: &AnalysisWindow, f: impl Fn(&GL2Form) -> Result<Complex64> + Sync) -> Result<f64> {
    let v: Vec<f64> = forms.par_iter().map(|g| Ok(weight_cosh(g.t, win) * g.alpha * f(g)?.norm_sqr())).collect::<Result<_>>()?;
    Ok(v.iter().sum())
}

/// `RHS - H` for the Cauchy-Schwarz split of `H` by the GL(3) index `l`.
pub fn h_l_decomposition_residual(ds: &SpectralDataset, phi: &GL3Coefficients, p: u64, win: &AnalysisWindow) -> Result<f64> {
    if p < 2 {
        return invalid("P must be at least 2");
    }
    let forms = ds.forms();
    let pf = p as f64;
    let h = weighted_square_sum(forms, win, |f| {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in p + 1..=2 * p {
            let c = rankin_coeff(n, &|k| f.lambda(k), phi)?;
            acc += c * w2(n as f64 / pf) * (-Complex64::new(0.5, f.t) * (n as f64).ln()).exp();
        }
        Ok(acc)
    })?;
    let mut rhs = 0.0;
    let mut l = 1u64;
    while (l * l) as f64 <= 2.0 * pf {
        let nl = pf / (l * l) as f64;
        let lo = (nl.floor() as u64) + 1;
        let hi = (2.0 * nl).floor() as u64;
        let hl = weighted_square_sum(forms, win, |f| {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in lo..=hi {
                let a = phi.a(l, n)?;
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                acc += a * f.lambda(n)? * w2(n as f64 / nl) * (-Complex64::new(0.5, f.t) * (n as f64).ln()).exp();
            }
            Ok(acc)
        })?;
        rhs += hl / l as f64;
        l += 1;
    }
    Ok(pf.ln() * rhs - h)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormContribution {
    pub t: f64,
    pub parity: Parity,
    /// `|L|^k` for the moment's power `k`.
    pub value: f64,
    pub abs_l: f64,
    /// Convexity scale `t^{3/4}` (second moment) or `t^{1/4}` (GL(2) values).
    pub convexity: f64,
    /// Termwise absolute bound on `|L|` from the AFE.
    pub trivial: f64,
    pub afe_length: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub t_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub counts: Vec<usize>,
    pub fitted_exponent: Option<f64>,
    pub reference_exponent: f64,
    pub contributions: Vec<FormContribution>,
}

/// Minimum number of forms below `T` for a grid point to enter the exponent fit.
pub const FIT_MIN_FORMS: usize = 5;

fn build_report(t_grid: &[f64], contributions: Vec<FormContribution>, reference: f64) -> MomentReport {
    let mut values = Vec::with_capacity(t_grid.len());
    let mut counts = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let sel: Vec<&FormContribution> = contributions.iter().filter(|c| c.t <= t).collect();
        values.push(sel.iter().map(|c| c.value).sum());
        counts.push(sel.len());
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        t_grid.iter().zip(&values).zip(&counts).filter(|(_, &c)| c >= FIT_MIN_FORMS).map(|((t, v), _)| (*t, *v)).unzip();
    let fitted_exponent = if xs.len() >= 2 { loglog_slope(&xs, &ys) } else { None };
    MomentReport { t_grid: t_grid.to_vec(), values, counts, fitted_exponent, reference_exponent: reference, contributions }
}

fn root_number(parity: Parity, power: i32) -> f64 {
    match parity {
        Parity::Even => 1.0,
        Parity::Odd => (-1f64).powi(power),
    }
}

/// Default cap on AFE lengths, tied to the bundled coefficient range.
pub const LENGTH_CAP: u64 = 4000;

/// `L(u, 1/2 + it_u)` by the GL(2) AFE, root number from the parity.
pub fn gl2_special_value(f: &GL2Form, cfg: &AFEConfig) -> Result<(Complex64, f64, u64)> {
    let g = GammaFamily::gl2(f.parity == Parity::Odd).data(f.t);
    let lam = |n: u64| f.lambda(n).map(|x| Complex64::new(x, 0.0));
    let cfg = AFEConfig { epsilon: Complex64::new(root_number(f.parity, 1), 0.0) * cfg.epsilon, ..*cfg };
    let v = afe_value(&lam, &lam, f.t, &g, &g, &cfg, f.n_max().min(LENGTH_CAP))?;
    let abs = |n: u64| f.lambda(n).map(|x| Complex64::new(x.abs(), 0.0));
    let triv = afe_value(&abs, &abs, 0.0_f64.max(f.t), &g, &g, &AFEConfig { epsilon: Complex64::new(1.0, 0.0), ..cfg }, f.n_max());
    let trivial = triv.map(|_| trivial_bound(f, &cfg, v.len_first, v.len_second)).unwrap_or(f64::INFINITY);
    Ok((v.value, trivial, v.len_first.max(v.len_second)))
}

fn trivial_bound(f: &GL2Form, _cfg: &AFEConfig, n1: u64, n2: u64) -> f64 {
    // |V| <= 1 + small on the summation range; bound by sum |lambda(n)| n^{-1/2} with a factor 2.
    let s = |m: u64| (1..=m).map(|n| f.lambda(n).unwrap_or(0.0).abs() / (n as f64).sqrt()).sum::<f64>();
    2.0 * (s(n1) + s(n2))
}

/// `|L(u_j x phi, 1/2 + it_j)|^2` summed over `t_j <= T`, for the self-dual `d3` model
/// (where `L(u x phi, s) = L(u, s)^3` and the root number is `eps_u^3`).
pub fn second_moment(ds: &SpectralDataset, phi: &GL3Coefficients, t: f64, cfg: &AFEConfig) -> Result<MomentReport> {
    if *phi.model() != GL3Model::D3Eisenstein {
        return invalid("second moment needs a model with known root number (d3 Eisenstein)");
    }
    let forms = ds.up_to(t)?;
    let contributions: Vec<FormContribution> = forms
        .par_iter()
        .map(|f| {
            let fam = GammaFamily::rankin(&GL3Spectral::eisenstein_d3(), f.parity == Parity::Odd);
            let g = fam.data(f.t);
            let coeff = |n: u64| rankin_coeff(n, &|k| f.lambda(k), phi);
            let eps = Complex64::new(root_number(f.parity, 3), 0.0) * cfg.epsilon;
            let c = AFEConfig { epsilon: eps, ..*cfg };
            let v = afe_value(&coeff, &coeff, f.t, &g, &g, &c, LENGTH_CAP.min(phi.range().1))?;
            let abs_coeff = |n: u64| coeff(n).map(|z| Complex64::new(z.norm(), 0.0));
            let mut trivial = 0.0;
            for n in 1..=v.len_first.max(v.len_second) {
                trivial += 2.0 * abs_coeff(n)?.re / (n as f64).sqrt();
            }
            Ok(FormContribution {
                t: f.t,
                parity: f.parity,
                value: v.value.norm_sqr(),
                abs_l: v.value.norm(),
                convexity: f.t.powf(0.75),
                trivial,
                afe_length: v.len_first.max(v.len_second),
            })
        })
        .collect::<Result<_>>()?;
    let mut contributions = contributions;
    contributions.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(build_report(&[t], contributions, 2.0))
}

/// `|L(u_j, 1/2 + it_j)|^6` accumulated over `t_j <= T` for each `T` in the grid.
pub fn sixth_moment(ds: &SpectralDataset, t_grid: &[f64], cfg: &AFEConfig) -> Result<MomentReport> {
    if t_grid.is_empty() {
        return invalid("empty T grid");
    }
    let tmax = t_grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let forms = ds.up_to(tmax)?;
    let mut contributions: Vec<FormContribution> = forms
        .par_iter()
        .map(|f| {
            let (v, trivial, len) = gl2_special_value(f, cfg)?;
            Ok(FormContribution {
                t: f.t,
                parity: f.parity,
                value: v.norm().powi(6),
                abs_l: v.norm(),
                convexity: f.t.powf(0.25),
                trivial,
                afe_length: len,
            })
        })
        .collect::<Result<_>>()?;
    contributions.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(build_report(t_grid, contributions, 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::load_dataset;
    use crate::coeffs::bundled_dataset_path;
    use std::sync::OnceLock;

    fn dataset() -> &'static SpectralDataset {
        static DS: OnceLock<SpectralDataset> = OnceLock::new();
        DS.get_or_init(|| load_dataset(bundled_dataset_path()).unwrap())
    }

    fn toy() -> SpectralDataset {
        let forms: Vec<GL2Form> = dataset().forms().iter().take(12).cloned().collect();
        SpectralDataset::new(forms, 20.0).unwrap()
    }

    #[test]
    fn weight_examples() {
        let win = AnalysisWindow::new(10.0).unwrap();
        for t in [0.0, 1e-6, 0.5, 3.0, 40.0] {
            assert!(harmonic_weight(t, &win) > 0.0 || t > 300.0);
        }
        let direct = |t: f64| 2.0 * ((PI - 0.1) * t).sinh() / (2.0 * PI * t).sinh();
        for t in [0.01, 0.5, 2.0, 10.0] {
            assert!((harmonic_weight(t, &win) - direct(t)).abs() < 1e-14 * direct(t).max(1e-300) * 10.0);
            assert!((weight_cosh(t, &win) - direct(t) * (PI * t).cosh()).abs() < 1e-13);
        }
        let big = AnalysisWindow::new(100.0).unwrap();
        let w = harmonic_weight(200.0, &big);
        assert!(w.is_finite() && w > 0.0);
        for t in (1..=1000).map(|k| k as f64) {
            for win in [win, big] {
                let (l, r) = weight_comparability(t, &win);
                assert!(l <= r, "{t}");
            }
        }
        assert!(AnalysisWindow::new(0.2).is_err());
    }

    #[test]
    fn s_discrete_single_n_matches_loop() {
        let ds = toy();
        let win = AnalysisWindow::new(10.0).unwrap();
        let seq = Sequence::new(7, vec![Complex64::new(0.6, -0.2)]).unwrap();
        let got = s_discrete_with_tail(&ds, &seq, &win).unwrap().value;
        let mut want = 0.0;
        for f in ds.forms() {
            let rho2 = f.alpha * (PI * f.t).cosh();
            want += harmonic_weight(f.t, &win) * rho2 * 0.4 * f.lambda(7).unwrap().powi(2);
        }
        assert!((got - want).abs() < 1e-12 * want);
        let zero = Sequence::new(1, vec![Complex64::new(0.0, 0.0); 3]).unwrap();
        assert_eq!(s_discrete_with_tail(&ds, &zero, &win).unwrap().value, 0.0);
    }

    #[test]
    fn s_discrete_monotone_in_forms_and_quadratic() {
        let win = AnalysisWindow::new(10.0).unwrap();
        let seq = Sequence::random(20, 20, 3, 0).unwrap();
        let all = dataset().forms().to_vec();
        let mut prev = 0.0;
        for k in 1..=all.len() {
            let ds = SpectralDataset::new(all[..k].to_vec(), 40.0).unwrap();
            let v = s_discrete_with_tail(&ds, &seq, &win).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
        let c = Complex64::new(1.5, -2.0);
        let ds = dataset();
        let a = s_discrete_with_tail(ds, &seq, &win).unwrap().value;
        let b = s_discrete_with_tail(ds, &seq.scaled(c), &win).unwrap().value;
        assert!((b - c.norm_sqr() * a).abs() < 1e-10 * b);
    }

    #[test]
    fn s_discrete_reports_incomplete_range() {
        let win = AnalysisWindow::new(10.0).unwrap();
        let seq = Sequence::random(20, 20, 3, 1).unwrap();
        assert!(matches!(s_discrete(dataset(), &seq, &win), Err(Error::Completeness(_))));
        let narrow = AnalysisWindow::new(0.5).unwrap();
        assert!(s_discrete(dataset(), &seq, &narrow).is_ok());
    }

    #[test]
    fn t_continuous_basics() {
        let win = AnalysisWindow::new(10.0).unwrap();
        let zero = Sequence::new(5, vec![Complex64::new(0.0, 0.0); 4]).unwrap();
        assert_eq!(t_continuous(&zero, &win, 100.0).unwrap(), 0.0);
        let seq = Sequence::random(10, 8, 9, 0).unwrap();
        let tc = default_t_cut(&win);
        let a = t_continuous(&seq, &win, tc).unwrap();
        let b = t_continuous(&seq.scaled(Complex64::new(0.0, 3.0)), &win, tc).unwrap();
        assert!((b - 9.0 * a).abs() < 1e-10 * b);
        assert!(matches!(t_continuous(&seq, &win, 5.0), Err(Error::Truncation(_))));
    }

    #[test]
    fn t_continuous_r1_lower_bound() {
        // Constant sequence: T(A) >= 0.01 T |sum a_n|^2.
        let win = AnalysisWindow::new(10.0).unwrap();
        let seq = Sequence::from_real(10, &[1.0; 10]).unwrap();
        let v = t_continuous(&seq, &win, default_t_cut(&win)).unwrap();
        assert!(v >= 0.01 * 10.0 * 100.0, "{v}");
    }

    #[test]
    fn s1_bound_basics() {
        let win = AnalysisWindow::new(10.0).unwrap();
        let seq = Sequence::random(20, 20, 4, 0).unwrap();
        let u = default_u_cut(&win);
        let a = s1_bound_rhs(&seq, 1.5, &win, u).unwrap();
        let b = s1_bound_rhs(&seq.scaled(Complex64::new(2.0, 0.0)), 1.5, &win, u).unwrap();
        assert!((b - 4.0 * a).abs() < 1e-10 * b);
        // r = 1 only: T sum_k (1/|k|) int |sum a_n e(un/T)|^2 du, by direct quadrature in u.
        let kmax = win.log_factor().floor() as i64;
        let direct_int = crate::quad::composite(
            |v| {
                let s: Complex64 = seq.iter().map(|(n, a)| a * arith::e(v * n as f64 / 10.0)).sum();
                Complex64::new(s.norm_sqr(), 0.0)
            },
            -u,
            u,
            64,
            16,
        )
        .re;
        let hk: f64 = (1..=kmax).map(|k| 2.0 / k as f64).sum();
        let want = 10.0 * hk * direct_int;
        assert!((a - want).abs() < 1e-10 * want, "{a} {want}");
        let zero = Sequence::new(20, vec![Complex64::new(0.0, 0.0); 5]).unwrap();
        assert_eq!(s1_bound_rhs(&zero, 3.0, &win, u).unwrap(), 0.0);
        assert!(s1_bound_rhs(&seq, 11.0, &win, u).is_err());
    }

    #[test]
    fn luo_examples() {
        let t = 100.0;
        let win = AnalysisWindow::new(t).unwrap();
        let n = (t * t) as u64;
        let v = luo_bound(n, &win, 1.0) / (n as f64 * t).powf(0.01);
        assert!((v / t.powf(2.5) - (2.0 + t.powf(-0.5))).abs() < 1e-9);
        let n = 1000u64;
        let v = luo_bound(n, &win, 1.0) / (n as f64 * t).powf(0.01);
        assert!(v > t.powf(2.25) && v < 3.0 * t.powf(2.25));
        let v1 = luo_bound(1, &win, 1.0);
        assert!(v1 >= t * t && v1 < 1.2 * t * t);
    }

    #[test]
    fn h_decomposition_nonnegative() {
        let ds = toy();
        let win = AnalysisWindow::new(10.0).unwrap();
        let phi = GL3Coefficients::d3(40, 400).unwrap();
        let r = h_l_decomposition_residual(&ds, &phi, 200, &win).unwrap();
        assert!(r >= 0.0, "{r}");
    }

    #[test]
    fn h_decomposition_single_l() {
        let ds = toy();
        let win = AnalysisWindow::new(10.0).unwrap();
        let d3 = GL3Coefficients::d3(1, 400).unwrap();
        let mut table = std::collections::HashMap::new();
        for l in 1..=20u64 {
            for n in 1..=400u64 {
                let v = if l == 1 { d3.a(1, n).unwrap() } else { Complex64::new(0.0, 0.0) };
                table.insert((l, n), v);
            }
        }
        let phi = GL3Coefficients::from_table(table).unwrap();
        let r = h_l_decomposition_residual(&ds, &phi, 200, &win).unwrap();
        // With only l = 1 both sides carry the same sum: residual = (log P - 1) H.
        let h_only = h_l_decomposition_residual(&ds, &phi, 200, &win).unwrap();
        assert!(r >= 0.0 && (r - h_only).abs() < 1e-12 * r.abs().max(1.0));
        let h = r / ((200f64).ln() - 1.0);
        assert!(h > 0.0);
    }

    #[test]
    fn sixth_moment_report() {
        let cfg = AFEConfig::pipeline(1.0);
        let r = sixth_moment(dataset(), &[10.0, 15.0, 20.0], &cfg).unwrap();
        for w in r.values.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(r.values.iter().all(|v| *v >= 0.0));
        let single = sixth_moment(dataset(), &[20.0], &cfg).unwrap();
        assert!(single.fitted_exponent.is_none());
        let below = sixth_moment(dataset(), &[5.0], &cfg).unwrap();
        assert_eq!(below.values, vec![0.0]);
        assert!(sixth_moment(dataset(), &[50.0], &cfg).is_err());
    }

    #[test]
    fn rankin_value_is_cube_of_gl2_value() {
        // L(u x E_d3, s) = L(u, s)^3: degree-6 and degree-2 AFEs must agree.
        let cfg = AFEConfig::pipeline(1.0);
        let phi = GL3Coefficients::d3(70, LENGTH_CAP).unwrap();
        let r = second_moment(dataset(), &phi, 14.5, &cfg).unwrap();
        assert_eq!(r.contributions.len(), 4);
        for c in &r.contributions {
            let f = dataset().forms().iter().find(|f| f.t == c.t).unwrap();
            let (l2, _, _) = gl2_special_value(f, &cfg).unwrap();
            assert!((c.abs_l - l2.norm().powi(3)).abs() < 1e-8 * c.abs_l.max(0.1), "{} {} {}", c.t, c.abs_l, l2.norm().powi(3));
            assert!(c.value <= 1e3 * c.t.powf(1.5));
        }
    }
}
