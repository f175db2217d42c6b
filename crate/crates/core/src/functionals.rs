//! The functionals under study: Chebyshev `T`, the Pompeiu–Chebyshev family
//! `P`, `P_hat`, `P_hat_h` (plain and weighted), the Hardy–Chebyshev block,
//! and the special means that appear in their bounds.
//!
//! Each functional with a known double-integral representation is computed in
//! both forms; the discrepancy between the two is recorded so identity checks
//! can be run anywhere a value is produced.

use crate::error::{Error, Result};
use crate::expr::{Expr, ParamEnv};
use crate::quad::{
    integrate1d, integrate2d, integrate_fn, scan_values, Interval, QuadConfig,
};

/// Value of a functional, in product form and (when available) in
/// double-integral form.
#[derive(Debug, Clone, Copy)]
pub struct FunctionalValue {
    pub product_form: f64,
    pub double_form: Option<f64>,
    pub discrepancy: f64,
}

impl FunctionalValue {
    fn product_only(v: f64) -> Self {
        Self {
            product_form: v,
            double_form: None,
            discrepancy: 0.0,
        }
    }

    fn with_double(product: f64, double: f64) -> Self {
        Self {
            product_form: product,
            double_form: Some(double),
            discrepancy: (product - double).abs(),
        }
    }
}

fn int(f: &Expr, iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<f64> {
    Ok(integrate1d(f, iv, env, cfg)?.value)
}

fn int_prod(fs: &[&Expr], iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<f64> {
    let g = |x: f64| -> Result<f64> {
        let mut v = 1.0;
        for f in fs {
            v *= f.eval(x, env)?;
        }
        Ok(v)
    };
    Ok(integrate_fn(&g, iv, cfg)?.value)
}

/// Chebyshev functional: mean of the product minus product of the means.
pub fn chebyshev_t(
    f: &Expr,
    g: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<FunctionalValue> {
    let w = iv.width();
    let fg = int_prod(&[f, g], iv, env, cfg)?;
    let fi = int(f, iv, env, cfg)?;
    let gi = int(g, iv, env, cfg)?;
    Ok(FunctionalValue::product_only(fg / w - fi * gi / (w * w)))
}

/// Pompeiu–Chebyshev functional
/// `P(f,g) = int f g - 3/(b^3-a^3) * (int x f)(int x g)`; requires `a > 0`.
pub fn pompeiu_p(f: &Expr, g: &Expr, iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<f64> {
    iv.require_positive()?;
    let ell = Expr::var();
    let fg = int_prod(&[f, g], iv, env, cfg)?;
    let xf = int_prod(&[&ell, f], iv, env, cfg)?;
    let xg = int_prod(&[&ell, g], iv, env, cfg)?;
    let (a, b) = (iv.a(), iv.b());
    Ok(fg - 3.0 / (b.powi(3) - a.powi(3)) * xf * xg)
}

/// Normalized variant `P_hat(f,g) = int x^2 int f g - (int x f)(int x g)`,
/// together with its kernel form
/// `1/2 double-int (t f(x) - x f(t)) (t g(x) - x g(t))`.
pub fn pompeiu_phat(
    f: &Expr,
    g: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<FunctionalValue> {
    let ell = Expr::var();
    general_phat_h(f, g, &ell, iv, env, cfg)
}

/// Generalized functional
/// `P_hat_h(f,g) = int h^2 int f g - (int f h)(int h g)` with its
/// double-integral representation.
pub fn general_phat_h(
    f: &Expr,
    g: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<FunctionalValue> {
    let product = phat_h_product(f, g, h, iv, env, cfg)?;
    let double = phat_h_double(f, g, h, iv, env, cfg)?;
    Ok(FunctionalValue::with_double(product, double))
}

pub(crate) fn phat_h_product(
    f: &Expr,
    g: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    let hh = int_prod(&[h, h], iv, env, cfg)?;
    let fg = int_prod(&[f, g], iv, env, cfg)?;
    let fh = int_prod(&[f, h], iv, env, cfg)?;
    let hg = int_prod(&[h, g], iv, env, cfg)?;
    Ok(hh * fg - fh * hg)
}

pub(crate) fn phat_h_double(
    f: &Expr,
    g: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    let k = |x: f64, t: f64| -> Result<f64> {
        let (fx, ft) = (f.eval(x, env)?, f.eval(t, env)?);
        let (gx, gt) = (g.eval(x, env)?, g.eval(t, env)?);
        let (hx, ht) = (h.eval(x, env)?, h.eval(t, env)?);
        Ok((hx * ft - ht * fx) * (hx * gt - ht * gx))
    };
    Ok(0.5 * integrate2d(&k, iv, cfg)?.value)
}

/// Weighted generalization with positive weight `w`.
pub fn weighted_phat_h(
    f: &Expr,
    g: &Expr,
    h: &Expr,
    w: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<FunctionalValue> {
    for (x, v) in scan_values(&|x| w.eval(x, env), iv, 1025)? {
        if v <= 0.0 {
            return Err(Error::Precondition(format!(
                "weight must be positive on the interval; w({x}) = {v}"
            )));
        }
    }
    let whh = int_prod(&[w, h, h], iv, env, cfg)?;
    let wfg = int_prod(&[w, f, g], iv, env, cfg)?;
    let whg = int_prod(&[w, h, g], iv, env, cfg)?;
    let whf = int_prod(&[w, h, f], iv, env, cfg)?;
    let product = whh * wfg - whg * whf;

    let k = |x1: f64, x2: f64| -> Result<f64> {
        let (f1, f2) = (f.eval(x1, env)?, f.eval(x2, env)?);
        let (g1, g2) = (g.eval(x1, env)?, g.eval(x2, env)?);
        let (h1, h2) = (h.eval(x1, env)?, h.eval(x2, env)?);
        let (w1, w2) = (w.eval(x1, env)?, w.eval(x2, env)?);
        Ok(w1 * w2 * (h1 * f2 - h2 * f1) * (h1 * g2 - h2 * g1))
    };
    let double = 0.5 * integrate2d(&k, iv, cfg)?.value;
    Ok(FunctionalValue::with_double(product, double))
}

/// Cached antiderivative `F(x) = int_lo^x phi` backed by a 257-node prefix
/// table with adaptive local correction, so repeated evaluations stay cheap.
pub struct Antiderivative {
    phi: Expr,
    env: ParamEnv,
    cfg: QuadConfig,
    lo: f64,
    step: f64,
    prefix: Vec<f64>,
}

impl Antiderivative {
    const NODES: usize = 257;

    pub fn new(phi: &Expr, lo: f64, hi: f64, env: &ParamEnv, cfg: &QuadConfig) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::Interval(format!(
                "antiderivative table needs hi > lo, got [{lo}, {hi}]"
            )));
        }
        let step = (hi - lo) / (Self::NODES - 1) as f64;
        let mut prefix = Vec::with_capacity(Self::NODES);
        prefix.push(0.0);
        let mut acc = 0.0;
        for i in 1..Self::NODES {
            let a = lo + step * (i - 1) as f64;
            let b = lo + step * i as f64;
            let cell = Interval::new(a, b)?;
            acc += integrate1d(phi, cell, env, cfg)?.value;
            prefix.push(acc);
        }
        Ok(Self {
            phi: phi.clone(),
            env: env.clone(),
            cfg: *cfg,
            lo,
            step,
            prefix,
        })
    }

    /// `F(x)` for `x` inside the tabulated range.
    pub fn value(&self, x: f64) -> Result<f64> {
        let hi = self.lo + self.step * (self.prefix.len() - 1) as f64;
        if x < self.lo - 1e-12 || x > hi + 1e-12 {
            return Err(Error::Domain(format!(
                "antiderivative queried at {x} outside [{}, {hi}]",
                self.lo
            )));
        }
        let x = x.clamp(self.lo, hi);
        let idx = (((x - self.lo) / self.step) as usize).min(self.prefix.len() - 1);
        let node = self.lo + self.step * idx as f64;
        let base = self.prefix[idx];
        let delta = x - node;
        if delta.abs() < 1e-14 {
            return Ok(base);
        }
        let tail = if delta > 0.0 {
            integrate1d(&self.phi, Interval::new(node, x)?, &self.env, &self.cfg)?.value
        } else {
            -integrate1d(&self.phi, Interval::new(x, node)?, &self.env, &self.cfg)?.value
        };
        Ok(base + tail)
    }
}

/// Hardy–Chebyshev functional
/// `H(F, 1/t) = (b-a) int F(t)/t - (ln b - ln a) int F` with
/// `F(x) = int_a^x phi`; requires `a > 0`.
pub fn hardy_h(phi: &Expr, iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<f64> {
    iv.require_positive()?;
    let f = Antiderivative::new(phi, iv.a(), iv.b(), env, cfg)?;
    let int_f_over_t = integrate_fn(&|t| Ok(f.value(t)? / t), iv, cfg)?.value;
    let int_f = integrate_fn(&|t| f.value(t), iv, cfg)?.value;
    Ok(iv.width() * int_f_over_t - (iv.b().ln() - iv.a().ln()) * int_f)
}

/// Power variant
/// `H(F^p, 1/t^p) = (b-a) int (F/t)^p - 1/(p-1) * (a b^p - b a^p)/(a^p b^p) * int F^p`
/// for `p > 1` and non-negative `phi`.
pub fn hardy_hp(phi: &Expr, p: f64, iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<f64> {
    iv.require_positive()?;
    if !(p > 1.0) {
        return Err(Error::Precondition(format!("requires p > 1, got {p}")));
    }
    for (x, v) in scan_values(&|x| phi.eval(x, env), iv, 1025)? {
        if v < -1e-12 {
            return Err(Error::Precondition(format!(
                "requires non-negative phi; phi({x}) = {v}"
            )));
        }
    }
    let f = Antiderivative::new(phi, iv.a(), iv.b(), env, cfg)?;
    let int_ratio_p = integrate_fn(&|t| Ok((f.value(t)?.max(0.0) / t).powf(p)), iv, cfg)?.value;
    let int_fp = integrate_fn(&|t| Ok(f.value(t)?.max(0.0).powf(p)), iv, cfg)?.value;
    let (a, b) = (iv.a(), iv.b());
    let coef = (a * b.powf(p) - b * a.powf(p)) / (a.powf(p) * b.powf(p));
    Ok(iv.width() * int_ratio_p - coef / (p - 1.0) * int_fp)
}

/// Generalized Hardy–Chebyshev functional
/// `H_h(F, 1/t) = int h^2 int F/t - (int h F)(int h/t)`; requires `a > 0`.
pub fn hardy_h_h(
    phi: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    iv.require_positive()?;
    let f = Antiderivative::new(phi, iv.a(), iv.b(), env, cfg)?;
    let hh = int_prod(&[h, h], iv, env, cfg)?;
    let f_over_t = integrate_fn(&|t| Ok(f.value(t)? / t), iv, cfg)?.value;
    let hf = integrate_fn(&|t| Ok(h.eval(t, env)? * f.value(t)?), iv, cfg)?.value;
    let h_over_t = integrate_fn(&|t| Ok(h.eval(t, env)? / t), iv, cfg)?.value;
    Ok(hh * f_over_t - hf * h_over_t)
}

/// Cesàro average `Phi_a(x) = 1/(x-a) int_a^x phi` with the removable
/// singularity at `x = a` filled by `phi(a)`.
pub struct CesaroAverage {
    table: Antiderivative,
    base: f64,
    anchor: f64,
    phi_at_anchor: f64,
}

impl CesaroAverage {
    pub fn new(phi: &Expr, anchor: f64, hi: f64, env: &ParamEnv, cfg: &QuadConfig) -> Result<Self> {
        if !(hi > 0.0 && anchor >= 0.0 && anchor < hi) {
            return Err(Error::Precondition(format!(
                "Cesaro average needs 0 <= a < b, got a = {anchor}, b = {hi}"
            )));
        }
        let table = Antiderivative::new(phi, 0.0, hi, env, cfg)?;
        let base = table.value(anchor)?;
        let phi_at_anchor = phi.eval(anchor, env)?;
        Ok(Self {
            table,
            base,
            anchor,
            phi_at_anchor,
        })
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let d = x - self.anchor;
        if d.abs() < 1e-8 {
            return Ok(self.phi_at_anchor);
        }
        Ok((self.table.value(x)? - self.base) / d)
    }
}

/// Variance-type Hardy functional
/// `T(Phi_a, Phi_a) = 1/b int_0^b Phi_a^2 - (1/b int_0^b Phi_a)^2`
/// for `b > a >= 0`.
pub fn hardy_phi_functional(
    phi: &Expr,
    a: f64,
    b: f64,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    if !(b > a && a >= 0.0) {
        return Err(Error::Precondition(format!(
            "requires b > a >= 0, got a = {a}, b = {b}"
        )));
    }
    let avg = CesaroAverage::new(phi, a, b, env, cfg)?;
    let iv = Interval::new(0.0, b)?;
    let m2 = integrate_fn(&|x| Ok(avg.value(x)?.powi(2)), iv, cfg)?.value;
    let m1 = integrate_fn(&|x| avg.value(x), iv, cfg)?.value;
    Ok(m2 / b - (m1 / b).powi(2))
}

/// Monotonicity classes selected when checking the sign of the
/// Hardy–Chebyshev functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardyDirection {
    /// `phi >= 0`: the antiderivative increases while `1/t` decreases, so the
    /// functional is non-positive.
    NonPositive,
    /// `phi <= 0`: both factors decrease, so the functional is non-negative.
    NonNegative,
    /// `phi` changes sign; no direction is implied.
    Unclassified,
}

#[derive(Debug, Clone, Copy)]
pub struct HardyDirectionReport {
    pub value: f64,
    pub direction: HardyDirection,
    /// Sign check in the direction selected by the classifier.
    pub selected_holds: bool,
    /// Result of the `>= 0` comparison, retained for reference alongside the
    /// classifier-selected direction.
    pub as_printed_nonnegative: bool,
}

/// Evaluates the Hardy–Chebyshev functional and checks its sign against the
/// direction chosen by classifying the monotonicity of the two factors.
pub fn hardy_h_directional(
    phi: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<HardyDirectionReport> {
    let value = hardy_h(phi, iv, env, cfg)?;
    let vals = scan_values(&|x| phi.eval(x, env), iv, 1025)?;
    let mut has_pos = false;
    let mut has_neg = false;
    for (_, v) in vals {
        if v > 1e-12 {
            has_pos = true;
        }
        if v < -1e-12 {
            has_neg = true;
        }
    }
    let direction = match (has_pos, has_neg) {
        (true, false) => HardyDirection::NonPositive,
        (false, true) => HardyDirection::NonNegative,
        (false, false) => HardyDirection::NonPositive, // phi == 0: value is 0
        (true, true) => HardyDirection::Unclassified,
    };
    let tol = 1e-9 * (1.0 + value.abs());
    let selected_holds = match direction {
        HardyDirection::NonPositive => value <= tol,
        HardyDirection::NonNegative => value >= -tol,
        HardyDirection::Unclassified => true,
    };
    Ok(HardyDirectionReport {
        value,
        direction,
        selected_holds,
        as_printed_nonnegative: value >= -tol,
    })
}

/// Closed forms of the derivative-weighted functional evaluated at
/// `(f, 1/f)` and `(f, f)`, cross-checked against the generic evaluation.
pub fn ramified_fprime_closed_forms(
    f: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    for (x, v) in scan_values(&|x| f.eval(x, env), iv, 1025)? {
        if v <= 0.0 {
            return Err(Error::Precondition(format!(
                "requires f > 0 on the interval; f({x}) = {v}"
            )));
        }
    }
    let (a, b) = (iv.a(), iv.b());
    let fa = f.eval(a, env)?;
    let fb = f.eval(b, env)?;
    if (fb - fa).abs() <= 1e-12 * (1.0 + fa.abs() + fb.abs()) {
        return Err(Error::Precondition(
            "requires f(b) distinct from f(a)".into(),
        ));
    }
    let fp = f.differentiate();
    let int_fp2 = int_prod(&[&fp, &fp], iv, env, cfg)?;
    let sq_gap = fb * fb - fa * fa;

    let first = iv.width() * int_fp2 - 0.5 * sq_gap * (fb.ln() - fa.ln());
    // Conventional form with the boundary factor f^2(b) - f^2(a); the exact
    // identity replaces that factor by the integral of f^2, which is what the
    // cross-check below uses.
    let second = sq_gap * int_fp2 - 0.25 * sq_gap * sq_gap;
    let int_f2 = int_prod(&[f, f], iv, env, cfg)?;
    let second_exact = int_f2 * int_fp2 - 0.25 * sq_gap * sq_gap;

    // cross-check the closed forms against the generic functional
    let recip = crate::expr::binary(crate::expr::BinOp::Div, Expr::constant(1.0), f.clone());
    let generic1 = phat_h_product(f, &recip, &fp, iv, env, cfg)?;
    let generic2 = phat_h_product(f, f, &fp, iv, env, cfg)?;
    let tol1 = 1e-7 * (1.0 + first.abs());
    let tol2 = 1e-7 * (1.0 + second_exact.abs());
    if (first - generic1).abs() > tol1 {
        return Err(Error::Identity(format!(
            "closed form {first} disagrees with generic evaluation {generic1}"
        )));
    }
    if (second_exact - generic2).abs() > tol2 {
        return Err(Error::Identity(format!(
            "closed form {second_exact} disagrees with generic evaluation {generic2}"
        )));
    }
    Ok((first, second))
}

/// Special means of two positive numbers `b >= a > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Means {
    a: f64,
    b: f64,
}

impl Means {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b >= a) {
            return Err(Error::Precondition(format!(
                "means require b >= a > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn arithmetic(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// `L(a,b) = (b-a)/(ln b - ln a)` with `L(a,a) = a`.
    pub fn logarithmic(&self) -> f64 {
        if self.b == self.a {
            return self.a;
        }
        let d = self.b - self.a;
        d / (d / self.a).ln_1p()
    }

    /// Generalized logarithmic mean
    /// `L_s = [(b^(s+1) - a^(s+1)) / ((s+1)(b-a))]^(1/s)`, `s` outside `{-1, 0}`.
    pub fn generalized_log(&self, s: f64) -> Result<f64> {
        if !s.is_finite() || s.abs() < 1e-12 || (s + 1.0).abs() < 1e-12 {
            return Err(Error::Precondition(format!(
                "generalized logarithmic mean undefined for s = {s}"
            )));
        }
        if self.b == self.a {
            return Ok(self.a);
        }
        let num = self.b.powf(s + 1.0) - self.a.powf(s + 1.0);
        let den = (s + 1.0) * (self.b - self.a);
        Ok((num / den).powf(1.0 / s))
    }

    /// Mean with the shifted exponent pattern
    /// `[(b^(p-1) - a^(p-1)) / ((p-1)(b-a))]^(1/p)` used by the power Hardy
    /// bound; exposed separately from [`Means::generalized_log`], whose
    /// exponents differ.
    pub fn hardy_log(&self, p: f64) -> Result<f64> {
        if !(p > 1.0) {
            return Err(Error::Precondition(format!(
                "requires p > 1, got {p}"
            )));
        }
        if self.b == self.a {
            return Ok(self.a.powf((p - 2.0) / p));
        }
        let num = self.b.powf(p - 1.0) - self.a.powf(p - 1.0);
        let den = (p - 1.0) * (self.b - self.a);
        Ok((num / den).powf(1.0 / p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::LN_2;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn env() -> ParamEnv {
        ParamEnv::new()
    }

    fn e(text: &str) -> Expr {
        parse(text).unwrap()
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn chebyshev_t_examples() {
        let one = e("1");
        let x = e("x");
        let v = chebyshev_t(&one, &one, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!(v.product_form.abs() <= 1e-12);

        let v = chebyshev_t(&x, &x, iv(0.0, 1.0), &env(), &cfg()).unwrap();
        assert!((v.product_form - 1.0 / 12.0).abs() <= 1e-11);

        let v = chebyshev_t(&x, &e("-x"), iv(0.0, 1.0), &env(), &cfg()).unwrap();
        assert!((v.product_form + 1.0 / 12.0).abs() <= 1e-11);
    }

    #[test]
    fn pompeiu_p_examples() {
        let x = e("x");
        let v = pompeiu_p(&x, &x, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!(v.abs() <= 1e-10, "P(l, l) should annihilate, got {v}");

        let one = e("1");
        let v = pompeiu_p(&one, &one, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!((v - 1.0 / 28.0).abs() <= 1e-11, "got {v}");

        assert!(pompeiu_p(&x, &x, iv(-1.0, 2.0), &env(), &cfg()).is_err());
    }

    #[test]
    fn phat_scaling_relation() {
        // P_hat = (b^3 - a^3)/3 * P on random polynomial inputs
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let c: [f64; 4] = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let f = e(&format!("{} + {}*x + {}*x^2", c[0], c[1], c[2]));
            let g = e(&format!("{} + {}*x", c[3], c[0]));
            let r = iv(1.0, 2.5);
            let phat = pompeiu_phat(&f, &g, r, &env(), &cfg()).unwrap().product_form;
            let p = pompeiu_p(&f, &g, r, &env(), &cfg()).unwrap();
            let scale = (r.b().powi(3) - r.a().powi(3)) / 3.0;
            assert!(
                (phat - scale * p).abs() <= 1e-9 * (1.0 + phat.abs()),
                "phat {phat} vs scaled {p}"
            );
        }
    }

    #[test]
    fn phat_examples() {
        // f = g = c*x - 1 yields (b-a)^4/12 regardless of c
        for c in [0.5, 1.0, 3.0] {
            let f = e(&format!("{c}*x - 1"));
            let v = pompeiu_phat(&f, &f, iv(1.0, 2.0), &env(), &cfg()).unwrap();
            assert!((v.product_form - 1.0 / 12.0).abs() <= 1e-9, "c={c}");
            assert!((v.double_form.unwrap() - 1.0 / 12.0).abs() <= 1e-8, "c={c}");
        }
        let x = e("x");
        let v = pompeiu_phat(&x, &x, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!(v.product_form.abs() <= 1e-9);
        let one = e("1");
        let v = pompeiu_phat(&one, &one, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!((v.product_form - 1.0 / 12.0).abs() <= 1e-10);
    }

    #[test]
    fn general_phat_h_reductions() {
        let f = e("x^2 - x");
        let g = e("1 + 0.5*x");
        let r = iv(1.0, 2.0);
        // h = 1 reduces to (b-a) T(f,g)
        let one = e("1");
        let v = general_phat_h(&f, &g, &one, r, &env(), &cfg()).unwrap();
        let t = chebyshev_t(&f, &g, r, &env(), &cfg()).unwrap();
        assert!((v.product_form - r.width() * t.product_form).abs() <= 1e-9);

        // f = h annihilates
        let v = general_phat_h(&f, &g, &f, r, &env(), &cfg()).unwrap();
        assert!(v.product_form.abs() <= 1e-9);

        // h = x reduces to pompeiu_phat
        let x = e("x");
        let v = general_phat_h(&f, &g, &x, r, &env(), &cfg()).unwrap();
        let w = pompeiu_phat(&f, &g, r, &env(), &cfg()).unwrap();
        assert!((v.product_form - w.product_form).abs() <= 1e-10);
    }

    #[test]
    fn phat_h_identity_discrepancy_small() {
        let f = e("exp(0.3*x)");
        let g = e("x^2 + 0.25");
        let h = e("1 + x");
        let v = general_phat_h(&f, &g, &h, iv(0.6, 2.1), &env(), &cfg()).unwrap();
        assert!(
            v.discrepancy <= 1e-7 * (1.0 + v.product_form.abs()),
            "discrepancy {}",
            v.discrepancy
        );
    }

    #[test]
    fn weighted_examples() {
        let x = e("x");
        let one = e("1");
        let r = iv(1.0, 2.0);
        // w = x, h = 1, f = g = x: 13/72 by the antiderivative oracle
        let v = weighted_phat_h(&x, &x, &one, &x, r, &env(), &cfg()).unwrap();
        assert!((v.product_form - 13.0 / 72.0).abs() <= 1e-10, "got {}", v.product_form);
        assert!(v.discrepancy <= 1e-7 * (1.0 + v.product_form.abs()));

        // unit weight reduces to the unweighted functional
        let f = e("x^2 - 0.3*x");
        let g = e("2 - x");
        let h = e("0.5 + x");
        let vw = weighted_phat_h(&f, &g, &h, &one, r, &env(), &cfg()).unwrap();
        let v = general_phat_h(&f, &g, &h, r, &env(), &cfg()).unwrap();
        assert!((vw.product_form - v.product_form).abs() <= 1e-10);

        // f = h annihilates
        let vz = weighted_phat_h(&h, &g, &h, &x, r, &env(), &cfg()).unwrap();
        assert!(vz.product_form.abs() <= 1e-9);

        // nonpositive weight rejected
        assert!(weighted_phat_h(&f, &g, &h, &e("x - 1.5"), r, &env(), &cfg()).is_err());
    }

    #[test]
    fn hardy_h_oracle() {
        let one = e("1");
        let v = hardy_h(&one, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        let exact = (1.0 - LN_2) - LN_2 / 2.0;
        assert!((v - exact).abs() <= 1e-9, "got {v}, want {exact}");

        let zero = e("0");
        let v = hardy_h(&zero, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!(v.abs() <= 1e-12);
    }

    #[test]
    fn hardy_direction_matches_classifier() {
        let report = hardy_h_directional(&e("1"), iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert_eq!(report.direction, HardyDirection::NonPositive);
        assert!(report.selected_holds);
        assert!(!report.as_printed_nonnegative);
    }

    #[test]
    fn hardy_hp_oracle() {
        // phi = 1, p = 2 on [1,2]: 4/3 - 2 ln 2 by the antiderivative oracle
        let one = e("1");
        let v = hardy_hp(&one, 2.0, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        let exact = 4.0 / 3.0 - 2.0 * LN_2;
        assert!((v - exact).abs() <= 1e-9, "got {v}, want {exact}");

        let zero = e("0");
        let v = hardy_hp(&zero, 2.0, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!(v.abs() <= 1e-12);

        // p = 1 rejected
        assert!(hardy_hp(&one, 1.0, iv(1.0, 2.0), &env(), &cfg()).is_err());
        // negative phi rejected
        assert!(hardy_hp(&e("-1"), 2.0, iv(1.0, 2.0), &env(), &cfg()).is_err());
    }

    #[test]
    fn hardy_h_h_oracle() {
        let one = e("1");
        let x = e("x");
        let r = iv(1.0, 2.0);
        // h = 1 equals hardy_h
        let v = hardy_h_h(&one, &one, r, &env(), &cfg()).unwrap();
        let base = hardy_h(&one, r, &env(), &cfg()).unwrap();
        assert!((v - base).abs() <= 1e-9);

        // h = x, phi = 1: 3/2 - 7/3 ln 2 by the antiderivative oracle
        let v = hardy_h_h(&one, &x, r, &env(), &cfg()).unwrap();
        let exact = 1.5 - 7.0 / 3.0 * LN_2;
        assert!((v - exact).abs() <= 1e-9, "got {v}, want {exact}");

        let zero = e("0");
        assert!(hardy_h_h(&zero, &x, r, &env(), &cfg()).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn hardy_phi_functional_oracle() {
        // constant phi: the average is constant, variance 0
        let v = hardy_phi_functional(&e("3"), 0.0, 1.0, &env(), &cfg()).unwrap();
        assert!(v.abs() <= 1e-10, "got {v}");

        // phi = x: average x/2, variance 1/48
        let v = hardy_phi_functional(&e("x"), 0.0, 1.0, &env(), &cfg()).unwrap();
        assert!((v - 1.0 / 48.0).abs() <= 1e-9, "got {v}");

        let v = hardy_phi_functional(&e("0"), 0.0, 1.0, &env(), &cfg()).unwrap();
        assert!(v.abs() <= 1e-12);

        assert!(hardy_phi_functional(&e("x"), 1.0, 0.5, &env(), &cfg()).is_err());
    }

    #[test]
    fn ramified_closed_forms_oracle() {
        let x = e("x");
        let (first, second) = ramified_fprime_closed_forms(&x, iv(1.0, 2.0), &env(), &cfg()).unwrap();
        assert!((first - (1.0 - 1.5 * LN_2)).abs() <= 1e-9, "got {first}");
        assert!((second - 0.75).abs() <= 1e-9, "got {second}");

        // constant f rejected: f(b) = f(a)
        assert!(ramified_fprime_closed_forms(&e("2"), iv(1.0, 2.0), &env(), &cfg()).is_err());
        // sign condition
        assert!(ramified_fprime_closed_forms(&e("x - 1.5"), iv(1.0, 2.0), &env(), &cfg()).is_err());
    }

    #[test]
    fn means_examples() {
        let m = Means::new(1.0, 2.0).unwrap();
        assert!((m.logarithmic() - 1.0 / LN_2).abs() <= 1e-14);
        let m13 = Means::new(1.0, 3.0).unwrap();
        assert_eq!(m13.arithmetic(), 2.0);

        // continuity at b -> a
        let a = 1.3;
        let m = Means::new(a, a + 1e-8).unwrap();
        assert!((m.logarithmic() - a).abs() <= 1e-8);
        let exact = Means::new(a, a).unwrap();
        assert_eq!(exact.logarithmic(), a);

        // s in {-1, 0} rejected
        let m = Means::new(1.0, 2.0).unwrap();
        assert!(m.generalized_log(0.0).is_err());
        assert!(m.generalized_log(-1.0).is_err());
        // L_1 is the arithmetic mean of a, b... of squares: check against direct formula
        let v = m.generalized_log(1.0).unwrap();
        assert!((v - (2.0f64.powi(2) - 1.0) / 2.0).abs() <= 1e-12);
        // the power-Hardy variant at p = 2 equals L_2-style expression
        let v = m.hardy_log(2.0).unwrap();
        assert!((v - 1.0f64).abs() <= 1e-12, "got {v}");
    }

    #[test]
    fn phat_symmetry_and_bilinearity() {
        let mut rng = StdRng::seed_from_u64(23);
        let r = iv(0.8, 2.2);
        for _ in 0..6 {
            let f = e(&format!("{} + {}*x + {}*x^2", rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)));
            let g = e(&format!("{} + {}*x", rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)));
            let h = e(&format!("{} + {}*x", rng.gen_range(0.5..1.5), rng.gen_range(0.0..1.0)));
            let fg = phat_h_product(&f, &g, &h, r, &env(), &cfg()).unwrap();
            let gf = phat_h_product(&g, &f, &h, r, &env(), &cfg()).unwrap();
            assert!((fg - gf).abs() <= 1e-8 * (1.0 + fg.abs()));

            let (alpha, beta) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let f2 = e(&format!("{} - x", rng.gen_range(-1.0..1.0)));
            let combo = e(&format!("{alpha}*({f}) + {beta}*({f2})"));
            let lhs = phat_h_product(&combo, &g, &h, r, &env(), &cfg()).unwrap();
            let rhs = alpha * fg + beta * phat_h_product(&f2, &g, &h, r, &env(), &cfg()).unwrap();
            assert!((lhs - rhs).abs() <= 1e-8 * (1.0 + lhs.abs()));

            // nonnegativity on the diagonal and annihilation at f = h
            let ff = phat_h_product(&f, &f, &h, r, &env(), &cfg()).unwrap();
            assert!(ff >= -1e-9 * (1.0 + ff.abs()));
            let hh = phat_h_product(&h, &g, &h, r, &env(), &cfg()).unwrap();
            assert!(hh.abs() <= 1e-9 * (1.0 + hh.abs()).max(1.0));
        }
    }
}
