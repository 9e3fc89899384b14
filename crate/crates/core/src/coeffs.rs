//! Coefficient providers: GL(2) Hecke-Maass datasets, GL(3) coefficient
//! models, and the cube identity
//! `L(s)^3 = sum_{a,b} mu(a) d3(b) (ab)^{-2s} sum_n d3(n) lambda(an) (an)^{-s}`.

use crate::arith::{self, divisors, factorize, gcd, mobius};
use crate::sieve::Sequence;
use crate::weights::w2;
use crate::{invalid, Complex64, Error, Result};
use serde::Deserialize;
use std::collections::HashMap;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Tolerance for dataset Hecke relations.
pub const HECKE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct GL2Form {
    pub t: f64,
    pub parity: Parity,
    /// `|rho(1)|^2 / cosh(pi t)`.
    pub alpha: f64,
    lambda: Vec<f64>,
}

impl GL2Form {
    pub fn new(t: f64, parity: Parity, alpha: f64, lambda: Vec<f64>) -> Result<Self> {
        if !(t > 0.0) || !(alpha > 0.0) {
            return Err(Error::Dataset(format!("need t > 0 and alpha > 0 (t = {t}, alpha = {alpha})")));
        }
        match lambda.first() {
            None => return Err(Error::Dataset(format!("form t = {t}: empty eigenvalue list"))),
            Some(&l1) if (l1 - 1.0).abs() > 1e-12 => {
                return Err(Error::Dataset(format!("form t = {t}: lambda(1) = {l1}, expected 1")))
            }
            _ => {}
        }
        if let Some(bad) = lambda.iter().position(|x| !x.is_finite()) {
            return Err(Error::Dataset(format!("form t = {t}: lambda({}) not finite", bad + 1)));
        }
        Ok(Self { t, parity, alpha, lambda })
    }

    pub fn n_max(&self) -> u64 {
        self.lambda.len() as u64
    }

    pub fn lambda(&self, n: u64) -> Result<f64> {
        if n == 0 || n > self.n_max() {
            return Err(Error::Range { need: n, have: self.n_max() });
        }
        Ok(self.lambda[n as usize - 1])
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    /// `lambda(p^k)` from `lambda(p)` by `lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1})`.
    pub fn lambda_prime_power(&self, p: u64, k: u32) -> Result<f64> {
        let lp = self.lambda(p)?;
        let (mut prev, mut cur) = (1.0, lp);
        if k == 0 {
            return Ok(1.0);
        }
        for _ in 1..k {
            let next = lp * cur - prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Worst `|lambda(m)lambda(n) - sum_{d|(m,n)} lambda(mn/d^2)|` over `mn <= n_max`.
    pub fn hecke_defect(&self) -> (f64, u64, u64) {
        let n_max = self.n_max();
        let mut worst = (0.0, 1, 1);
        let mut m = 2;
        while m * m <= n_max {
            for n in m..=n_max / m {
                let g = gcd(m, n);
                let rhs: f64 = if g == 1 {
                    self.lambda[(m * n - 1) as usize]
                } else {
                    divisors(g).iter().map(|d| self.lambda[(m * n / (d * d) - 1) as usize]).sum()
                };
                let err = (self.lambda[(m - 1) as usize] * self.lambda[(n - 1) as usize] - rhs).abs();
                if err > worst.0 {
                    worst = (err, m, n);
                }
            }
            m += 1;
        }
        worst
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDataset {
    forms: Vec<GL2Form>,
    t_max_complete: f64,
    n_max: u64,
    pub warnings: Vec<String>,
}

#[derive(Deserialize)]
struct Header {
    t_max_complete: f64,
    n_max: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormRecord {
    t: f64,
    parity: Parity,
    alpha: Option<f64>,
    lambda: Vec<f64>,
}

impl SpectralDataset {
    /// Validates ordering, uniform `n_max` and the Hecke relations.
    pub fn new(forms: Vec<GL2Form>, t_max_complete: f64) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Dataset("empty form list".into()));
        };
        let n_max = first.n_max();
        for w in forms.windows(2) {
            if !(w[1].t >= w[0].t) {
                return Err(Error::Dataset(format!("t list not monotone at t = {}", w[1].t)));
            }
        }
        for f in &forms {
            if f.n_max() != n_max {
                return Err(Error::Dataset(format!("form t = {} has {} eigenvalues, expected {n_max}", f.t, f.n_max())));
            }
            let (err, m, n) = f.hecke_defect();
            if err > HECKE_TOL {
                return Err(Error::Dataset(format!("form t = {}: Hecke relation fails at (m, n) = ({m}, {n}) by {err:.3e}", f.t)));
            }
        }
        Ok(Self { forms, t_max_complete, n_max, warnings: vec![] })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| Error::Dataset("missing header line".into()))?;
        let header: Header = serde_json::from_str(head).map_err(|e| Error::Dataset(format!("header: {e}")))?;
        let mut forms = Vec::new();
        let mut warnings = Vec::new();
        for (i, line) in lines {
            let r: FormRecord = serde_json::from_str(line).map_err(|e| Error::Dataset(format!("line {}: {e}", i + 1)))?;
            if r.lambda.len() as u64 != header.n_max {
                return Err(Error::Dataset(format!("line {}: {} eigenvalues, header says {}", i + 1, r.lambda.len(), header.n_max)));
            }
            let alpha = r.alpha.unwrap_or_else(|| {
                warnings.push(format!("form t = {}: alpha missing, using 1", r.t));
                1.0
            });
            forms.push(GL2Form::new(r.t, r.parity, alpha, r.lambda)?);
        }
        let mut ds = Self::new(forms, header.t_max_complete)?;
        ds.warnings = warnings;
        Ok(ds)
    }

    pub fn forms(&self) -> &[GL2Form] {
        &self.forms
    }

    pub fn t_max_complete(&self) -> f64 {
        self.t_max_complete
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Forms with `t <= t_max`, refusing ranges past the declared completeness.
    pub fn up_to(&self, t_max: f64) -> Result<Vec<&GL2Form>> {
        if t_max > self.t_max_complete {
            return Err(Error::Completeness(format!("requested t <= {t_max}, dataset complete only to {}", self.t_max_complete)));
        }
        Ok(self.forms.iter().filter(|f| f.t <= t_max).collect())
    }

    pub fn with_parity(&self, p: Parity) -> impl Iterator<Item = &GL2Form> {
        self.forms.iter().filter(move |f| f.parity == p)
    }
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<SpectralDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    SpectralDataset::parse(&text)
}

/// Path of the bundled dataset inside the source tree.
pub fn bundled_dataset_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/maass.jsonl")
}

#[derive(Clone, Debug, PartialEq)]
pub enum GL3Model {
    /// Minimal-parabolic Eisenstein series: `L(phi, s) = zeta(s)^3`.
    D3Eisenstein,
    /// Symmetric-square lift of a GL(2) form.
    SymSquare { t: f64 },
    FileTable,
}

/// GL(3) Hecke coefficients `A(m, n)` for `m <= m_max`, `n <= n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct GL3Coefficients {
    model: GL3Model,
    m_max: u64,
    n_max: u64,
    /// `A(1, n)`, index `n - 1`, for `n <= max(m_max, n_max)`; unused for tables.
    row: Vec<Complex64>,
    table: HashMap<(u64, u64), Complex64>,
}

impl GL3Coefficients {
    pub fn d3(m_max: u64, n_max: u64) -> Result<Self> {
        let len = m_max.max(n_max);
        let row = (1..=len).map(|n| arith::d3(n).map(|v| Complex64::new(v as f64, 0.0))).collect::<Result<_>>()?;
        Ok(Self { model: GL3Model::D3Eisenstein, m_max, n_max, row, table: HashMap::new() })
    }

    /// `A(1, n) = sum_{d^2 k = n} lambda(k^2)`, built multiplicatively from `lambda(p)`.
    pub fn sym_square(form: &GL2Form, m_max: u64, n_max: u64) -> Result<Self> {
        let len = m_max.max(n_max);
        if len > form.n_max() {
            return Err(Error::Range { need: len, have: form.n_max() });
        }
        let mut row = Vec::with_capacity(len as usize);
        for n in 1..=len {
            let mut v = 1.0;
            for (p, k) in factorize(n) {
                let mut s = 0.0;
                let mut j = 0;
                while 2 * j <= k {
                    s += form.lambda_prime_power(p, 2 * (k - 2 * j))?;
                    j += 1;
                }
                v *= s;
            }
            row.push(Complex64::new(v, 0.0));
        }
        Ok(Self { model: GL3Model::SymSquare { t: form.t }, m_max, n_max, row, table: HashMap::new() })
    }

    /// Explicit table; must contain `(1, 1) -> 1`.
    pub fn from_table(entries: HashMap<(u64, u64), Complex64>) -> Result<Self> {
        match entries.get(&(1, 1)) {
            Some(v) if (v - 1.0).norm() < 1e-12 => {}
            _ => return invalid("table must have A(1,1) = 1"),
        }
        let m_max = entries.keys().map(|k| k.0).max().unwrap_or(1);
        let n_max = entries.keys().map(|k| k.1).max().unwrap_or(1);
        Ok(Self { model: GL3Model::FileTable, m_max, n_max, row: vec![], table: entries })
    }

    pub fn model(&self) -> &GL3Model {
        &self.model
    }

    pub fn range(&self) -> (u64, u64) {
        (self.m_max, self.n_max)
    }

    /// `A(m, n) = sum_{d | (m,n)} mu(d) A(m/d, 1) A(1, n/d)` for the self-dual models.
    pub fn a(&self, m: u64, n: u64) -> Result<Complex64> {
        if m == 0 || n == 0 {
            return invalid("indices must be positive");
        }
        if m > self.m_max {
            return Err(Error::Range { need: m, have: self.m_max });
        }
        if n > self.n_max {
            return Err(Error::Range { need: n, have: self.n_max });
        }
        if self.model == GL3Model::FileTable {
            return self.table.get(&(m, n)).copied().ok_or(Error::Range { need: m.max(n), have: 0 });
        }
        let g = gcd(m, n);
        if g == 1 {
            return Ok(self.row[m as usize - 1] * self.row[n as usize - 1]);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for d in divisors(g) {
            let mu = mobius(d)?;
            if mu != 0 {
                acc += self.row[(m / d) as usize - 1] * self.row[(n / d) as usize - 1] * mu as f64;
            }
        }
        Ok(acc)
    }
}

/// `hecke_A` as a free function.
pub fn hecke_a(m: u64, n: u64, c: &GL3Coefficients) -> Result<Complex64> {
    c.a(m, n)
}

pub type LambdaFn<'a> = &'a dyn Fn(u64) -> Result<f64>;

/// Dirichlet coefficients `k <= n` of both sides of the cube identity.
pub fn cube_coefficients(lambda: LambdaFn, n: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    let lam: Vec<f64> = (1..=n).map(lambda).collect::<Result<_>>()?;
    let conv = |a: &[f64], b: &[f64]| {
        let mut c = vec![0.0; a.len()];
        for i in 1..=a.len() {
            for j in 1..=a.len() / i {
                c[i * j - 1] += a[i - 1] * b[j - 1];
            }
        }
        c
    };
    let lhs = conv(&conv(&lam, &lam), &lam);
    let mut rhs = vec![0.0; n as usize];
    let d3: Vec<f64> = (1..=n).map(|k| arith::d3(k).map(|v| v as f64)).collect::<Result<_>>()?;
    let mut a = 1u64;
    while a * a * a <= n {
        let mu = mobius(a)? as f64;
        if mu != 0.0 {
            let mut b = 1u64;
            while a * a * a * b * b <= n {
                let base = a * a * a * b * b;
                for m in 1..=n / base {
                    rhs[(base * m - 1) as usize] += mu * d3[b as usize - 1] * d3[m as usize - 1] * lam[(a * m - 1) as usize];
                }
                b += 1;
            }
        }
        a += 1;
    }
    Ok((lhs, rhs))
}

/// `|(sum_{n <= n_cap} lambda(n) n^{-s})^3 - RHS|`, the right side truncated to
/// Dirichlet index `a^3 b^2 n <= n_cap`.
pub fn cube_identity_residual(lambda: LambdaFn, s: Complex64, n_cap: u64) -> Result<f64> {
    if n_cap == 0 {
        return invalid("n_cap must be positive");
    }
    let mut l = Complex64::new(0.0, 0.0);
    for n in 1..=n_cap {
        l += lambda(n)? * (-s * (n as f64).ln()).exp();
    }
    let (_, rhs) = cube_coefficients(lambda, n_cap)?;
    let r: Complex64 = rhs.iter().enumerate().map(|(k, c)| c * (-s * ((k + 1) as f64).ln()).exp()).sum();
    Ok((l * l * l - r).norm())
}

/// Tail bound `50 / n_cap` for the series-level residual at `Re s = 2`.
pub fn cube_tail_bound(n_cap: u64) -> f64 {
    50.0 / n_cap as f64
}

/// `a_n = n^{-1/2} w_2(n/N) d3(n/a)` for `a | n`, else 0, on `(N, 2N]`.
pub fn sixth_coeff_sequence(a: u64, big_n: u64) -> Result<Sequence> {
    if a == 0 || big_n == 0 {
        return invalid("a and N must be positive");
    }
    let mut vals = Vec::with_capacity(big_n as usize);
    for n in big_n + 1..=2 * big_n {
        let v = if n % a == 0 { (n as f64).powf(-0.5) * w2(n as f64 / big_n as f64) * arith::d3(n / a)? as f64 } else { 0.0 };
        vals.push(Complex64::new(v, 0.0));
    }
    Sequence::new(big_n + 1, vals)
}
