//! Large sieve inequalities for Farey fractions:
//!
//! * classical: `sum_{b<=B} sum*_{x mod b} |sum_m a_m e(xm/b)|^2 <= (B^2 + M) |a|^2`;
//! * oscillatory: the same integrated against `e(t f(m))` over `|t| <= T`,
//!   bounded by `(B^2 T + X) |a|^2` up to an absolute constant, `X = sup 1/|f'|`.

use crate::arith::{character_table, gcd};
use crate::expsums::ramanujan;
use crate::quad::gauss_legendre;
use crate::report::case_rng;
use crate::{arith, invalid, Complex64, Error, Result};
use rand::Rng;
use std::f64::consts::TAU;
use std::sync::Arc;

/// Finite sequence `a_m`, `m in [start, start + len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    start: u64,
    values: Vec<Complex64>,
    norm2: f64,
}

impl Sequence {
    pub fn new(start: u64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("sequence must have length >= 1");
        }
        if start == 0 {
            return invalid("sequence start must be positive");
        }
        let norm2 = values.iter().map(|v| v.norm_sqr()).sum();
        Ok(Self { start, values, norm2 })
    }

    pub fn from_real(start: u64, values: &[f64]) -> Result<Self> {
        Self::new(start, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Entries uniform in the unit square, drawn from stream `(seed, case)`.
    pub fn random(start: u64, len: usize, seed: u64, case: u64) -> Result<Self> {
        let mut rng = case_rng(seed, case);
        let v = (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        Self::new(start, v)
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// One past the last index.
    pub fn end(&self) -> u64 {
        self.start + self.values.len() as u64
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn norm2(&self) -> f64 {
        self.norm2
    }

    /// `(index, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| (self.start + i as u64, *v))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new(self.start, self.values.iter().map(|v| v * c).collect()).unwrap()
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A phase `f` with nonvanishing derivative on `[lo, hi]`.
#[derive(Clone)]
pub struct PhaseFunction {
    f: RealFn,
    df: RealFn,
    lo: f64,
    hi: f64,
    x_sup: f64,
    label: String,
}

impl std::fmt::Debug for PhaseFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "PhaseFunction({} on [{}, {}])", self.label, self.lo, self.hi)
    }
}

impl PhaseFunction {
    /// Validates `f'` by sampling `samples` interior points plus both endpoints.
    pub fn new(label: &str, f: RealFn, df: RealFn, lo: f64, hi: f64, samples: usize) -> Result<Self> {
        if !(hi > lo) {
            return invalid("phase domain must have hi > lo");
        }
        let n = samples.max(2);
        let mut sign = 0.0;
        let mut x_sup: f64 = 0.0;
        for i in 0..=n {
            let y = lo + (hi - lo) * i as f64 / n as f64;
            let d = df(y);
            if d == 0.0 || !d.is_finite() || (sign != 0.0 && d.signum() != sign) {
                return invalid(format!("phase {label}: f' vanishes or changes sign near {y}"));
            }
            sign = d.signum();
            x_sup = x_sup.max(1.0 / d.abs());
        }
        Ok(Self { f, df, lo, hi, x_sup, label: label.into() })
    }

    fn for_seq(label: &str, f: RealFn, df: RealFn, seq: &Sequence) -> Result<Self> {
        Self::new(label, f, df, seq.start() as f64, seq.end() as f64, 10 * seq.len())
    }

    /// `f(y) = y`, so `X = 1`.
    pub fn linear(seq: &Sequence) -> Result<Self> {
        Self::for_seq("linear", Arc::new(|y| y), Arc::new(|_| 1.0), seq)
    }

    /// `f(y) = log(y) / 2 pi`, so `X = 2 pi (N + M)`.
    pub fn log_over_2pi(seq: &Sequence) -> Result<Self> {
        Self::for_seq("log/2pi", Arc::new(|y: f64| y.ln() / TAU), Arc::new(|y| 1.0 / (TAU * y)), seq)
    }

    /// `f(y) = y^{1/3}`, so `X = 3 (N + M)^{2/3}`.
    pub fn cube_root(seq: &Sequence) -> Result<Self> {
        Self::for_seq("cube-root", Arc::new(|y: f64| y.cbrt()), Arc::new(|y: f64| y.powf(-2.0 / 3.0) / 3.0), seq)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        let (f, df) = (self.f.clone(), self.df.clone());
        Self::new(
            &format!("{c}*{}", self.label),
            Arc::new(move |y| c * f(y)),
            Arc::new(move |y| c * df(y)),
            self.lo,
            self.hi,
            16,
        )
    }

    pub fn eval(&self, y: f64) -> f64 {
        (self.f)(y)
    }

    pub fn deriv(&self, y: f64) -> f64 {
        (self.df)(y)
    }

    /// `X = sup 1/|f'|` over the sampled domain.
    pub fn x_sup(&self) -> f64 {
        self.x_sup
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

/// `sum_{b<=B} sum*_{x mod b} |sum_m a_m e(xm/b)|^2`, by residue-class folding.
pub fn farey_lhs(seq: &Sequence, big_b: u64) -> Result<f64> {
    if big_b == 0 {
        return invalid("B must be >= 1");
    }
    let mut total = 0.0;
    for b in 1..=big_b {
        let mut folded = vec![Complex64::new(0.0, 0.0); b as usize];
        for (m, v) in seq.iter() {
            folded[(m % b) as usize] += v;
        }
        let tab = character_table(b);
        for x in 0..b {
            if gcd(x, b) != 1 {
                continue;
            }
            let s: Complex64 = folded.iter().enumerate().map(|(j, a)| a * tab[(x as usize * j) % b as usize]).sum();
            total += s.norm_sqr();
        }
    }
    Ok(total)
}

pub fn classical_ratio(seq: &Sequence, big_b: u64) -> Result<f64> {
    if seq.norm2() == 0.0 {
        return invalid("zero sequence");
    }
    let m = seq.len() as f64;
    Ok(farey_lhs(seq, big_b)? / ((big_b * big_b) as f64 + m) / seq.norm2())
}

/// Spread `max f - min f` over the support: the fastest frequency of the integrand.
fn phase_spread(seq: &Sequence, f: &PhaseFunction) -> f64 {
    let vals: Vec<f64> = seq.iter().map(|(m, _)| f.eval(m as f64)).collect();
    let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
    let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
    hi - lo
}

/// Largest step accepted by [`oscillatory_lhs`].
pub fn max_step(seq: &Sequence, f: &PhaseFunction) -> f64 {
    let d = phase_spread(seq, f);
    if d > 0.0 {
        0.1 / d
    } else {
        f64::INFINITY
    }
}

/// `int_{-T}^{T} sum_{b<=B} sum*_x |sum_m a_m e(xm/b + t f(m))|^2 dt`.
///
/// Composite 10-point Gauss-Legendre in `t` with panels of width `4 * step`.
/// The inner Farey sum is evaluated as the Hermitian form
/// `sum_{m,n} v_m conj(v_n) R(m - n)`, `R(h) = sum_{b<=B} c_b(h)`.
pub fn oscillatory_lhs(seq: &Sequence, big_b: u64, t: f64, f: &PhaseFunction, step: f64) -> Result<f64> {
    if big_b == 0 || !(t > 0.0) || !(step > 0.0) {
        return invalid("need B >= 1, T > 0, step > 0");
    }
    let limit = max_step(seq, f);
    if step > limit {
        return Err(Error::UnderResolved { step, limit });
    }
    let m = seq.len();
    let r: Vec<f64> = (0..m)
        .map(|h| (1..=big_b).map(|b| ramanujan(h as i64, b).unwrap()).sum())
        .collect();
    // Phases relative to the first index; a common rotation leaves |.|^2 unchanged.
    let f0 = f.eval(seq.start() as f64);
    let rel: Vec<f64> = seq.iter().map(|(k, _)| f.eval(k as f64) - f0).collect();
    let panels = ((2.0 * t) / (4.0 * step)).ceil().max(1.0) as usize;
    let h = 2.0 * t / panels as f64;
    let rule = gauss_legendre(10);
    let a = seq.values();
    let mut v = vec![Complex64::new(0.0, 0.0); m];
    let mut total = 0.0;
    for p in 0..panels {
        let lo = -t + p as f64 * h;
        let mut ps = 0.0;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let tt = lo + 0.5 * h * (x + 1.0);
            for i in 0..m {
                v[i] = a[i] * arith::e(tt * rel[i]);
            }
            let mut q = 0.0;
            for i in 0..m {
                q += v[i].norm_sqr() * r[0];
                for j in 0..i {
                    q += 2.0 * (v[i] * v[j].conj()).re * r[i - j];
                }
            }
            ps += w * q;
        }
        total += 0.5 * h * ps;
    }
    Ok(total)
}

/// `oscillatory_lhs / ((B^2 T + X) |a|^2)` at the default resolution.
pub fn oscillatory_ratio(seq: &Sequence, big_b: u64, t: f64, f: &PhaseFunction) -> Result<f64> {
    if seq.norm2() == 0.0 {
        return invalid("zero sequence");
    }
    let step = max_step(seq, f).min(t / 4.0);
    let lhs = oscillatory_lhs(seq, big_b, t, f, step)?;
    Ok(lhs / (((big_b * big_b) as f64) * t + f.x_sup()) / seq.norm2())
}

/// Phase families used by the sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    Linear,
    Log,
    CubeRoot,
}

impl PhaseKind {
    pub const ALL: [PhaseKind; 3] = [PhaseKind::Linear, PhaseKind::Log, PhaseKind::CubeRoot];

    pub fn build(self, seq: &Sequence) -> Result<PhaseFunction> {
        match self {
            PhaseKind::Linear => PhaseFunction::linear(seq),
            PhaseKind::Log => PhaseFunction::log_over_2pi(seq),
            PhaseKind::CubeRoot => PhaseFunction::cube_root(seq),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PhaseKind::Linear => "linear",
            PhaseKind::Log => "log",
            PhaseKind::CubeRoot => "cube-root",
        }
    }
}

/// One randomized sieve instance.
#[derive(Clone, Debug)]
pub struct SieveCase {
    pub case: u64,
    pub seq: Sequence,
    pub big_b: u64,
    pub t: f64,
    pub phase: PhaseKind,
}

/// Instance `case` of the randomized sweep: `B, M <= 25`, `N <= 200`,
/// `T in {1, 4, 16}`, phases cycling through linear/log/cube-root.
pub fn sweep_case(seed: u64, case: u64) -> SieveCase {
    let mut rng = case_rng(seed, case);
    let big_b = rng.gen_range(1..=25u64);
    let m = rng.gen_range(1..=25usize);
    let n = rng.gen_range(1..=200u64);
    let t = [1.0, 4.0, 16.0][rng.gen_range(0..3usize)];
    let phase = PhaseKind::ALL[(case % 3) as usize];
    let seq = Sequence::random(n, m, seed, case + (1 << 40)).unwrap();
    SieveCase { case, seq, big_b, t, phase }
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Moduli bounds for [`b_growth_exponent`]; below 4 a handful of fractions
/// make the fit depend on individual character sums.
pub const GROWTH_B: [u64; 4] = [4, 8, 16, 32];

/// Growth exponent in `B` of the oscillatory LHS summed over `seqs`, which must
/// share one support so that `(T, X)` stays fixed.
pub fn b_growth_exponent(seqs: &[Sequence], t: f64, phase: PhaseKind) -> Result<f64> {
    let first = seqs.first().ok_or_else(|| Error::InvalidArgument("no sequences".into()))?;
    if seqs.iter().any(|s| s.start() != first.start() || s.len() != first.len()) {
        return invalid("sequences must share one support");
    }
    let mut lhs = vec![0.0; GROWTH_B.len()];
    for seq in seqs {
        let f = phase.build(seq)?;
        let step = max_step(seq, &f).min(t / 4.0);
        for (acc, &b) in lhs.iter_mut().zip(&GROWTH_B) {
            *acc += oscillatory_lhs(seq, b, t, &f, step)?;
        }
    }
    let x: Vec<f64> = GROWTH_B.iter().map(|&b| b as f64).collect();
    loglog_slope(&x, &lhs).ok_or_else(|| Error::InvalidArgument("degenerate fit".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn brute_farey(seq: &Sequence, b_max: u64) -> f64 {
        let mut s = 0.0;
        for b in 1..=b_max {
            for x in 0..b {
                if gcd(x, b) == 1 {
                    let z: Complex64 =
                        seq.iter().map(|(m, a)| a * Complex64::from_polar(1.0, TAU * (x * m) as f64 / b as f64)).sum();
                    s += z.norm_sqr();
                }
            }
        }
        s
    }

    /// Exact `t`-integral: `sum a_m conj(a_n) R(m-n) sin(2 pi T d)/(pi d)`, `d = f(m)-f(n)`.
    fn exact_oscillatory(seq: &Sequence, b_max: u64, t: f64, f: &PhaseFunction) -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (m, a) in seq.iter() {
            for (n, b) in seq.iter() {
                let r: f64 = (1..=b_max).map(|q| ramanujan(m as i64 - n as i64, q).unwrap()).sum();
                let d = f.eval(m as f64) - f.eval(n as f64);
                let k = if d == 0.0 { 2.0 * t } else { (TAU * t * d).sin() / (std::f64::consts::PI * d) };
                s += a * b.conj() * r * k;
            }
        }
        s.re
    }

    #[test]
    fn farey_examples() {
        let seq = Sequence::random(17, 12, 1, 0).unwrap();
        let total: Complex64 = seq.values().iter().sum();
        assert!((farey_lhs(&seq, 1).unwrap() - total.norm_sqr()).abs() < 1e-12);
        let unit = Sequence::from_real(5, &[1.0]).unwrap();
        let count: u64 = (1..=9).map(crate::arith::euler_phi).sum();
        assert!((farey_lhs(&unit, 9).unwrap() - count as f64).abs() < 1e-9);
        let s10 = Sequence::random(40, 20, 3, 9).unwrap();
        let (a, b) = (farey_lhs(&s10, 10).unwrap(), brute_farey(&s10, 10));
        assert!((a - b).abs() <= 1e-9 * b);
    }

    #[test]
    fn classical_examples() {
        let ones = Sequence::from_real(1, &[1.0; 10]).unwrap();
        assert!((classical_ratio(&ones, 1).unwrap() - 100.0 / 110.0).abs() < 1e-12);
        let unit = Sequence::from_real(3, &[1.0]).unwrap();
        for b in 1..=25u64 {
            let count: u64 = (1..=b).map(crate::arith::euler_phi).sum();
            let r = classical_ratio(&unit, b).unwrap();
            assert!(r <= count as f64 / (b * b + 1) as f64 + 1e-12 && r < 1.0);
        }
        assert!(classical_ratio(&Sequence::from_real(1, &[0.0, 0.0]).unwrap(), 3).is_err());
    }

    #[test]
    fn oscillatory_matches_exact_kernel() {
        let seq = Sequence::random(30, 9, 5, 1).unwrap();
        for f in [PhaseFunction::linear(&seq).unwrap(), PhaseFunction::log_over_2pi(&seq).unwrap(), PhaseFunction::cube_root(&seq).unwrap()] {
            for (b, t) in [(1u64, 1.0), (4, 4.0), (7, 16.0)] {
                let got = oscillatory_lhs(&seq, b, t, &f, max_step(&seq, &f).min(t / 4.0)).unwrap();
                let want = exact_oscillatory(&seq, b, t, &f);
                assert!((got - want).abs() <= 1e-8 * want.abs().max(1.0), "{} {b} {t}: {got} {want}", f.label());
            }
        }
    }

    #[test]
    fn small_window_limit() {
        let seq = Sequence::random(10, 6, 2, 2).unwrap();
        let f = PhaseFunction::linear(&seq).unwrap();
        let t = 1e-6;
        let got = oscillatory_lhs(&seq, 5, t, &f, t).unwrap();
        assert!((got / (2.0 * t) / farey_lhs(&seq, 5).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn degenerate_single_term() {
        let seq = Sequence::from_real(50, &[2.0]).unwrap();
        let f = PhaseFunction::cube_root(&seq).unwrap();
        let count: u64 = (1..=6).map(crate::arith::euler_phi).sum();
        let got = oscillatory_lhs(&seq, 6, 3.0, &f, 1.0).unwrap();
        assert!((got - 4.0 * count as f64 * 6.0).abs() < 1e-9);
    }

    #[test]
    fn change_of_variables() {
        let seq = Sequence::random(20, 8, 4, 4).unwrap();
        let f = PhaseFunction::log_over_2pi(&seq).unwrap();
        let t = 4.0;
        let ft = f.scaled(t).unwrap();
        let a = oscillatory_lhs(&seq, 3, t, &f, max_step(&seq, &f).min(1.0)).unwrap();
        let b = oscillatory_lhs(&seq, 3, 1.0, &ft, max_step(&seq, &ft).min(0.25)).unwrap();
        assert!((a - t * b).abs() < 1e-9 * a);
    }

    #[test]
    fn under_resolution_is_an_error() {
        let seq = Sequence::random(20, 8, 4, 4).unwrap();
        let f = PhaseFunction::linear(&seq).unwrap();
        assert!(matches!(oscillatory_lhs(&seq, 2, 1.0, &f, 1.0), Err(Error::UnderResolved { .. })));
    }

    #[test]
    fn phase_validation_and_x() {
        let seq = Sequence::random(100, 20, 1, 1).unwrap();
        assert_eq!(PhaseFunction::linear(&seq).unwrap().x_sup(), 1.0);
        let x = PhaseFunction::log_over_2pi(&seq).unwrap().x_sup();
        assert!((x - TAU * 120.0).abs() < 1e-9);
        let x = PhaseFunction::cube_root(&seq).unwrap().x_sup();
        assert!((x - 3.0 * 120f64.powf(2.0 / 3.0)).abs() < 1e-9);
        let bad = PhaseFunction::new("quad", Arc::new(|y| (y - 110.0).powi(2)), Arc::new(|y| 2.0 * (y - 110.0)), 100.0, 120.0, 200);
        assert!(bad.is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn farey_phase_invariant(seed in 0u64..1000, theta in 0.0f64..TAU, b in 1u64..12) {
            let seq = Sequence::random(7, 11, seed, 0).unwrap();
            let rot = seq.scaled(Complex64::from_polar(1.0, theta));
            let (x, y) = (farey_lhs(&seq, b).unwrap(), farey_lhs(&rot, b).unwrap());
            prop_assert!((x - y).abs() <= 1e-9 * x);
        }

        #[test]
        fn classical_bound_holds(seed in 0u64..10_000) {
            let case = sweep_case(seed, 0);
            prop_assert!(classical_ratio(&case.seq, case.big_b).unwrap() <= 1.0);
        }
    }

    #[test]
    fn slope_of_power_law() {
        let x = [2.0, 4.0, 8.0, 16.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(1.7)).collect();
        assert!((loglog_slope(&x, &y).unwrap() - 1.7).abs() < 1e-12);
        let _ = c(0.0);
    }
}
