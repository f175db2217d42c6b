//! Adaptive numerical integration and norms.
//!
//! The 1D integrator uses an embedded 7/15 Gauss–Kronrod pair per panel with
//! recursive bisection; panel error budgets are proportional to panel width
//! so the accepted-panel errors sum to the requested tolerance. Panels are
//! accumulated left to right, so results are bit-stable for a fixed
//! configuration. 2D integrals are iterated 1D integrals with a relaxed
//! outer tolerance.

use crate::error::{Error, Result};
use crate::expr::{Expr, ParamEnv};

/// Integration interval `[a, b]` with `b > a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Interval(format!("endpoints must be finite, got [{a}, {b}]")));
        }
        if b <= a {
            return Err(Error::Interval(format!("requires b > a, got [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// True when the interval lies strictly right of zero.
    pub fn is_positive(&self) -> bool {
        self.a > 0.0
    }

    /// Many results assume `b > a > 0`; this enforces it.
    pub fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "interval [{}, {}] must satisfy b > a > 0",
                self.a, self.b
            )))
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// Tolerances and budget for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol <= 0.0 || self.rel_tol <= 0.0 || self.max_subdivisions == 0 {
            return Err(Error::Config(
                "quadrature tolerances must be positive and max_subdivisions >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Configuration for the outer loop of an iterated 2D integral.
    fn relaxed_outer(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: self.abs_tol.max(1e-8),
            rel_tol: self.rel_tol.max(1e-8),
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// Integral value with an error estimate and the number of accepted panels.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub subdivisions: usize,
}

// 15-point Kronrod abscissae (positive half, descending) with the embedded
// 7-point Gauss rule at indices 1, 3, 5 and the centre.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    value: f64,
    err: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;

    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();

    for j in 0..3 {
        let idx = 2 * j + 1;
        let dx = half * XGK[idx];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[idx] = f1;
        fv2[idx] = f2;
        let fsum = f1 + f2;
        resg += WG[j] * fsum;
        resk += WGK[idx] * fsum;
        resabs += WGK[idx] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let idx = 2 * j;
        if idx == 7 {
            continue;
        }
        let dx = half * XGK[idx];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[idx] = f1;
        fv2[idx] = f2;
        resk += WGK[idx] * (f1 + f2);
        resabs += WGK[idx] * (f1.abs() + f2.abs());
    }

    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let err = rescale_error((resk - resg) * half, resabs, resasc);
    Ok(Panel { value, err })
}

/// Adaptive integration of a closure over `[iv.a, iv.b]`.
pub fn integrate_fn<F>(f: &F, iv: Interval, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    cfg.validate()?;
    let root = gk15(f, iv.a, iv.b)?;
    let tol = cfg.abs_tol.max(cfg.rel_tol * root.value.abs());
    if root.err <= tol {
        return Ok(QuadResult {
            value: root.value,
            err_estimate: root.err,
            subdivisions: 1,
        });
    }
    let width = iv.width();
    let tol_density = tol / width;
    let min_width = width * 1e-13;

    struct State<'a, F: ?Sized> {
        f: &'a F,
        tol_density: f64,
        min_width: f64,
        budget: usize,
        used: usize,
        sum: f64,
        err_sum: f64,
        leaves: usize,
    }

    fn descend<F>(st: &mut State<'_, F>, a: f64, b: f64) -> Result<()>
    where
        F: Fn(f64) -> Result<f64> + ?Sized,
    {
        let panel = gk15(st.f, a, b)?;
        let w = b - a;
        if panel.err <= st.tol_density * w {
            st.sum += panel.value;
            st.err_sum += panel.err;
            st.leaves += 1;
            return Ok(());
        }
        if w <= st.min_width {
            return Err(Error::Domain(format!(
                "integrand not resolvable near [{a}, {b}] (possible singularity)"
            )));
        }
        st.used += 1;
        if st.used > st.budget {
            return Err(Error::NonConvergence(st.budget));
        }
        let mid = 0.5 * (a + b);
        descend(st, a, mid)?;
        descend(st, mid, b)
    }

    let mut st = State {
        f,
        tol_density,
        min_width,
        budget: cfg.max_subdivisions,
        used: 0,
        sum: 0.0,
        err_sum: 0.0,
        leaves: 0,
    };
    descend(&mut st, iv.a, iv.b)?;
    Ok(QuadResult {
        value: st.sum,
        err_estimate: st.err_sum,
        subdivisions: st.leaves,
    })
}

/// Adaptive integration of an expression.
pub fn integrate1d(f: &Expr, iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<QuadResult> {
    integrate_fn(&|x| f.eval(x, env), iv, cfg)
}

/// Iterated 2D integration of `k(x, t)` over `iv x iv`. The outer pass runs
/// at a tolerance no tighter than 1e-8; the inner pass uses `cfg` as given.
pub fn integrate2d<K>(k: &K, iv: Interval, cfg: &QuadConfig) -> Result<QuadResult>
where
    K: Fn(f64, f64) -> Result<f64> + ?Sized,
{
    let inner_cfg = *cfg;
    let outer_cfg = cfg.relaxed_outer();
    let outer = |x: f64| -> Result<f64> {
        Ok(integrate_fn(&|t| k(x, t), iv, &inner_cfg)?.value)
    };
    integrate_fn(&outer, iv, &outer_cfg)
}

/// `(integral of |f|^p)^(1/p)` for `p >= 1`.
pub fn lp_norm(f: &Expr, p: f64, iv: Interval, env: &ParamEnv, cfg: &QuadConfig) -> Result<f64> {
    lp_norm_fn(&|x| f.eval(x, env), p, iv, cfg)
}

pub fn lp_norm_fn<F>(f: &F, p: f64, iv: Interval, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Precondition(format!("L^p norm requires finite p >= 1, got {p}")));
    }
    let int = integrate_fn(&|x| Ok(f(x)?.abs().powf(p)), iv, cfg)?;
    Ok(int.value.max(0.0).powf(1.0 / p))
}

const SUP_SCAN_POINTS: usize = 4097;

/// Essential supremum of `|f|` over the interval: dense scan followed by
/// golden-section refinement around the leading local maxima.
pub fn sup_norm(f: &Expr, iv: Interval, env: &ParamEnv) -> Result<f64> {
    sup_norm_fn(&|x| f.eval(x, env), iv)
}

pub fn sup_norm_fn<F>(f: &F, iv: Interval) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let n = SUP_SCAN_POINTS;
    let mut xs = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    for i in 0..n {
        let x = iv.a + iv.width() * i as f64 / (n - 1) as f64;
        xs.push(x);
        vs.push(f(x)?.abs());
    }
    let mut best = 0.0f64;
    for &v in &vs {
        best = best.max(v);
    }
    debug_assert!(vs.iter().all(|v| best >= *v));

    // indices of interior local maxima plus the two endpoints
    let mut candidates: Vec<usize> = vec![0, n - 1];
    for i in 1..n - 1 {
        if vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] {
            candidates.push(i);
        }
    }
    candidates.sort_by(|&i, &j| vs[j].partial_cmp(&vs[i]).unwrap());
    candidates.truncate(8);

    for &i in &candidates {
        let lo = if i == 0 { xs[0] } else { xs[i - 1] };
        let hi = if i == n - 1 { xs[n - 1] } else { xs[i + 1] };
        let refined = golden_max(&|x| Ok(f(x)?.abs()), lo, hi, 1e-10)?;
        best = best.max(refined);
    }
    Ok(best)
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
pub(crate) fn golden_max<F>(f: &F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(fc.max(fd))
}

/// Values of `f` on an `n`-point equispaced grid including both endpoints.
pub fn scan_values<F>(f: &F, iv: Interval, n: usize) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = iv.a + iv.width() * i as f64 / (n - 1) as f64;
        out.push((x, f(x)?));
    }
    Ok(out)
}

/// Minimum and maximum of an expression over a 1025-point scan.
pub fn scan_min_max(f: &Expr, iv: Interval, env: &ParamEnv) -> Result<(f64, f64)> {
    let vals = scan_values(&|x| f.eval(x, env), iv, 1025)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (_, v) in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn env() -> ParamEnv {
        ParamEnv::new()
    }

    fn default_cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn polynomial_calibration() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let r = integrate1d(&parse("x^2").unwrap(), iv, &env(), &default_cfg()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() <= 1e-12, "got {}", r.value);
        assert!(r.err_estimate <= 1e-10f64.max(1e-10 * r.value.abs()));
    }

    #[test]
    fn log_integrand() {
        let iv = Interval::new(1.0, 2.0).unwrap();
        let r = integrate1d(&parse("1 - 1/x").unwrap(), iv, &env(), &default_cfg()).unwrap();
        let exact = 1.0 - std::f64::consts::LN_2;
        assert!((r.value - exact).abs() <= 1e-12);
    }

    #[test]
    fn kink_integrand_converges() {
        // |x - 0.3| has an exact antiderivative
        let iv = Interval::new(0.0, 1.0).unwrap();
        let r = integrate1d(&parse("abs(x - 0.3)").unwrap(), iv, &env(), &default_cfg()).unwrap();
        let exact = 0.5 * (0.3f64.powi(2) + 0.7f64.powi(2));
        assert!((r.value - exact).abs() <= 1e-10, "got {}", r.value);
        assert!(r.subdivisions > 1);
    }

    #[test]
    fn non_convergence_reported() {
        let cfg = QuadConfig {
            abs_tol: 1e-300,
            rel_tol: 1e-300,
            max_subdivisions: 4,
            ..Default::default()
        };
        let iv = Interval::new(0.0, 1.0).unwrap();
        let res = integrate1d(&parse("exp(sin(7*x))").unwrap(), iv, &env(), &cfg);
        assert!(matches!(res, Err(Error::NonConvergence(_))));
    }

    #[test]
    fn two_dimensional_kernels() {
        let iv = Interval::new(1.0, 2.0).unwrap();
        let cfg = default_cfg();
        let r = integrate2d(&|x, t| Ok((x - t) * (x - t)), iv, &cfg).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() <= 1e-9, "got {}", r.value);

        let r = integrate2d(&|x, t| Ok(x - t), iv, &cfg).unwrap();
        assert!(r.value.abs() <= 1e-8);

        let iv01 = Interval::new(0.0, 1.0).unwrap();
        let r = integrate2d(&|x, t| Ok(x * t), iv01, &cfg).unwrap();
        assert!((r.value - 0.25).abs() <= 1e-9);
    }

    #[test]
    fn fubini_consistency() {
        let iv = Interval::new(0.5, 2.0).unwrap();
        let cfg = default_cfg();
        let k = |x: f64, t: f64| Ok((x * t).sin() + x * x * t);
        let a = integrate2d(&k, iv, &cfg).unwrap().value;
        let swapped = |x: f64, t: f64| k(t, x);
        let b = integrate2d(&swapped, iv, &cfg).unwrap().value;
        assert!((a - b).abs() <= 1e-7 * (1.0 + a.abs()));
    }

    #[test]
    fn lp_norm_examples() {
        let cfg = default_cfg();
        let iv = Interval::new(1.0, 2.0).unwrap();
        // constant 1 on [a,b]: (b-a)^(1/p)
        for p in [1.0, 2.0, 3.5] {
            let v = lp_norm(&parse("1").unwrap(), p, iv, &env(), &cfg).unwrap();
            assert!((v - 1.0f64.powf(1.0 / p)).abs() <= 1e-10);
        }
        let v = lp_norm(&parse("-1").unwrap(), 2.0, iv, &env(), &cfg).unwrap();
        assert!((v - 1.0).abs() <= 1e-10);
        let iv01 = Interval::new(0.0, 1.0).unwrap();
        let v = lp_norm(&parse("x").unwrap(), 2.0, iv01, &env(), &cfg).unwrap();
        assert!((v - 1.0 / 3.0f64.sqrt()).abs() <= 1e-10);
        assert!(lp_norm(&parse("x").unwrap(), 0.5, iv01, &env(), &cfg).is_err());
    }

    #[test]
    fn sup_norm_examples() {
        let iv01 = Interval::new(0.0, 1.0).unwrap();
        let v = sup_norm(&parse("x^2 - x").unwrap(), iv01, &env()).unwrap();
        assert!((v - 0.25).abs() <= 1e-10, "got {v}");

        let v = sup_norm(&parse("-1").unwrap(), iv01, &env()).unwrap();
        assert!((v - 1.0).abs() <= 1e-12);

        let iv = Interval::new(-1.0, 1.0).unwrap();
        let v = sup_norm(&parse("x").unwrap(), iv, &env()).unwrap();
        assert!((v - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn norm_monotone_in_p_on_short_intervals() {
        let iv = Interval::new(1.0, 1.9).unwrap();
        let cfg = default_cfg();
        let f = parse("x^2 - 2*x + 0.3").unwrap();
        let ps = [1.0, 1.5, 2.0, 3.0, 5.0];
        let mut prev = 0.0;
        for p in ps {
            let v = lp_norm(&f, p, iv, &env(), &cfg).unwrap();
            assert!(v + 1e-8 >= prev, "p={p}: {v} < {prev}");
            prev = v;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn linearity(coefs_f in proptest::array::uniform4(-2.0f64..2.0),
                     coefs_g in proptest::array::uniform4(-2.0f64..2.0),
                     alpha in -3.0f64..3.0,
                     beta in -3.0f64..3.0) {
            let poly = |c: [f64; 4]| {
                parse(&format!("{} + {}*x + {}*x^2 + {}*x^3", c[0], c[1], c[2], c[3])).unwrap()
            };
            let f = poly(coefs_f);
            let g = poly(coefs_g);
            let combo = parse(&format!("{alpha}*({f}) + {beta}*({g})")).unwrap();
            let iv = Interval::new(0.25, 1.75).unwrap();
            let cfg = QuadConfig::default();
            let e = ParamEnv::new();
            let lhs = integrate1d(&combo, iv, &e, &cfg).unwrap().value;
            let rhs = alpha * integrate1d(&f, iv, &e, &cfg).unwrap().value
                + beta * integrate1d(&g, iv, &e, &cfg).unwrap().value;
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn sup_norm_dominates_scan_points() {
        let mut rng = StdRng::seed_from_u64(7);
        let iv = Interval::new(-1.0, 2.0).unwrap();
        for _ in 0..5 {
            let c: f64 = rng.gen_range(-2.0..2.0);
            let f = parse(&format!("sin({c}*x) + 0.5*x")).unwrap();
            let sup = sup_norm(&f, iv, &env()).unwrap();
            for i in 0..257 {
                let x = iv.a() + iv.width() * i as f64 / 256.0;
                assert!(sup >= f.eval(x, &env()).unwrap().abs() - 1e-12);
            }
        }
    }
}
