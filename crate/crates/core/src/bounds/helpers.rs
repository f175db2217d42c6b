//! Shared machinery for catalog entries: precondition bookkeeping, verified
//! range/ratio/Hölder data and the functional evaluations every entry needs.

use super::{BoundContext, HolderBounds, PreconditionCheck, RangeBounds};
use crate::error::{Error, Result};
use crate::expr::{pompeiu_deviation, Expr, ParamEnv};
use crate::functionals::{phat_h_double, phat_h_product};
use crate::quad::{
    integrate2d, integrate_fn, lp_norm, scan_min_max, sup_norm, Interval, QuadConfig,
};

/// Accumulates precondition outcomes for a report.
pub(crate) struct Pre {
    checks: Vec<PreconditionCheck>,
    ok: bool,
}

impl Pre {
    pub fn new() -> Self {
        Self {
            checks: Vec::new(),
            ok: true,
        }
    }

    pub fn require(&mut self, name: &str, satisfied: bool, detail: String) -> bool {
        self.checks.push(PreconditionCheck {
            name: name.to_string(),
            satisfied,
            detail,
        });
        self.ok &= satisfied;
        satisfied
    }

    pub fn fail(&mut self, name: &str, detail: String) {
        self.require(name, false, detail);
    }

    /// Satisfied, informational entry.
    pub fn info(&mut self, name: &str, detail: String) {
        self.require(name, true, detail);
    }

    pub fn ok(&self) -> bool {
        self.ok
    }

    pub fn into_checks(self) -> Vec<PreconditionCheck> {
        self.checks
    }
}

pub(crate) fn ell() -> Expr {
    Expr::var()
}

/// `b > a > 0` check.
pub(crate) fn positive_interval(pre: &mut Pre, iv: Interval) -> bool {
    pre.require(
        "positive interval",
        iv.is_positive(),
        format!("[{}, {}] must satisfy b > a > 0", iv.a(), iv.b()),
    )
}

const VERIFY_SCAN: f64 = 1e-12;

fn verify_pair(
    pre: &mut Pre,
    name: &str,
    expr: &Expr,
    lo: f64,
    hi: f64,
    iv: Interval,
    env: &ParamEnv,
) -> bool {
    match scan_min_max(expr, iv, env) {
        Ok((mn, mx)) => {
            let tol = VERIFY_SCAN * (1.0 + mn.abs().max(mx.abs()));
            let ok = lo <= mn + tol && mx <= hi + tol;
            pre.require(
                name,
                ok,
                format!("supplied [{lo}, {hi}] vs scanned range [{mn}, {mx}]"),
            )
        }
        Err(e) => {
            pre.fail(name, format!("scan failed: {e}"));
            false
        }
    }
}

/// Range bounds for `f` and `g`: caller-supplied values are verified against
/// a 1025-point scan; missing values are computed from the same scan.
pub(crate) fn resolve_range(pre: &mut Pre, ctx: &BoundContext) -> Option<RangeBounds> {
    if let Some(r) = ctx.range {
        let okf = verify_pair(pre, "range bounds for f", &ctx.f, r.f_lo, r.f_hi, ctx.iv, &ctx.env);
        let okg = verify_pair(pre, "range bounds for g", &ctx.g, r.g_lo, r.g_hi, ctx.iv, &ctx.env);
        if okf && okg {
            return Some(r);
        }
        return None;
    }
    let (f_lo, f_hi) = match scan_min_max(&ctx.f, ctx.iv, &ctx.env) {
        Ok(p) => p,
        Err(e) => {
            pre.fail("range bounds for f", format!("scan failed: {e}"));
            return None;
        }
    };
    let (g_lo, g_hi) = match scan_min_max(&ctx.g, ctx.iv, &ctx.env) {
        Ok(p) => p,
        Err(e) => {
            pre.fail("range bounds for g", format!("scan failed: {e}"));
            return None;
        }
    };
    pre.info(
        "range bounds",
        format!("auto-computed by scan: f in [{f_lo}, {f_hi}], g in [{g_lo}, {g_hi}]"),
    );
    Some(RangeBounds {
        f_lo,
        f_hi,
        g_lo,
        g_hi,
    })
}

/// Pointwise ratio bounds `m h <= f <= M h` and `n h <= g <= N h` with
/// `m, n > 0`, from the scanned extrema of `f/h` and `g/h`.
pub(crate) fn resolve_ratio(pre: &mut Pre, ctx: &BoundContext, h: &Expr) -> Option<RangeBounds> {
    let ratio_f = crate::expr::binary(crate::expr::BinOp::Div, ctx.f.clone(), h.clone());
    let ratio_g = crate::expr::binary(crate::expr::BinOp::Div, ctx.g.clone(), h.clone());
    if let Some(r) = ctx.ratio {
        let okf = verify_pair(pre, "ratio bounds for f/h", &ratio_f, r.f_lo, r.f_hi, ctx.iv, &ctx.env);
        let okg = verify_pair(pre, "ratio bounds for g/h", &ratio_g, r.g_lo, r.g_hi, ctx.iv, &ctx.env);
        if !(okf && okg) {
            return None;
        }
        check_ratio_positive(pre, &r);
        return pre.ok().then_some(r);
    }
    let f_pair = scan_min_max(&ratio_f, ctx.iv, &ctx.env);
    let g_pair = scan_min_max(&ratio_g, ctx.iv, &ctx.env);
    match (f_pair, g_pair) {
        (Ok((m, mm)), Ok((n, nn))) => {
            pre.info(
                "pointwise ratio bounds",
                format!("auto-computed: f/h in [{m}, {mm}], g/h in [{n}, {nn}]"),
            );
            let r = RangeBounds {
                f_lo: m,
                f_hi: mm,
                g_lo: n,
                g_hi: nn,
            };
            check_ratio_positive(pre, &r);
            pre.ok().then_some(r)
        }
        (Err(e), _) | (_, Err(e)) => {
            pre.fail("pointwise ratio bounds", format!("ratio scan failed: {e}"));
            None
        }
    }
}

fn check_ratio_positive(pre: &mut Pre, r: &RangeBounds) {
    pre.require(
        "pointwise ratio bounds",
        r.f_lo > 0.0 && r.g_lo > 0.0,
        format!(
            "requires M >= m > 0 and N >= n > 0; got m = {}, n = {}",
            r.f_lo, r.g_lo
        ),
    );
}

const HOLDER_GRID: usize = 257;

/// Smallest constant `H` with `|u(x_i) - u(x_j)| <= H |x_i - x_j|^p` over the
/// sample grid; an estimate of the true Hölder constant for smooth `u`.
pub(crate) fn estimate_holder<F>(u: &F, p: f64, iv: Interval) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let mut xs = Vec::with_capacity(HOLDER_GRID);
    let mut vs = Vec::with_capacity(HOLDER_GRID);
    for i in 0..HOLDER_GRID {
        let x = iv.a() + iv.width() * i as f64 / (HOLDER_GRID - 1) as f64;
        xs.push(x);
        vs.push(u(x)?);
    }
    let mut best = 0.0f64;
    for i in 0..HOLDER_GRID {
        for j in (i + 1)..HOLDER_GRID {
            let quot = (vs[i] - vs[j]).abs() / (xs[i] - xs[j]).abs().powf(p);
            best = best.max(quot);
        }
    }
    Ok(best)
}

pub(crate) enum HolderSide {
    /// data for `f/h` (order p) and `g/h` (order q)
    OverH,
    /// data for `h/f` (order p) and `h/g` (order q)
    HOver,
}

/// Hölder data for the CBS entries; estimated from a pair grid when not
/// supplied. Orders must lie in (0, 1].
pub(crate) fn resolve_holder(
    pre: &mut Pre,
    ctx: &BoundContext,
    h: &Expr,
    side: HolderSide,
) -> Option<HolderBounds> {
    let (p, q) = match ctx.holder {
        Some(hb) => (hb.p, hb.q),
        None => (1.0, 1.0),
    };
    if !pre.require(
        "Hoelder orders",
        p > 0.0 && p <= 1.0 && q > 0.0 && q <= 1.0,
        format!("orders must lie in (0, 1]; got p = {p}, q = {q}"),
    ) {
        return None;
    }
    if let Some(hb) = ctx.holder {
        if hb.h1 > 0.0 && hb.h2 > 0.0 {
            pre.info(
                "Hoelder data",
                format!("supplied: H1 = {}, p = {}, H2 = {}, q = {}", hb.h1, hb.p, hb.h2, hb.q),
            );
            return Some(hb);
        }
    }
    let env = &ctx.env;
    type RatioFn<'a> = Box<dyn Fn(f64) -> Result<f64> + 'a>;
    let (uf, ug): (RatioFn<'_>, RatioFn<'_>) = match side {
        HolderSide::OverH => (
            Box::new(move |x| Ok(ctx.f.eval(x, env)? / nonzero(h.eval(x, env)?)?)),
            Box::new(move |x| Ok(ctx.g.eval(x, env)? / nonzero(h.eval(x, env)?)?)),
        ),
        HolderSide::HOver => (
            Box::new(move |x| Ok(h.eval(x, env)? / nonzero(ctx.f.eval(x, env)?)?)),
            Box::new(move |x| Ok(h.eval(x, env)? / nonzero(ctx.g.eval(x, env)?)?)),
        ),
    };
    match (estimate_holder(&*uf, p, ctx.iv), estimate_holder(&*ug, q, ctx.iv)) {
        (Ok(h1), Ok(h2)) => {
            pre.info(
                "Hoelder data",
                format!("estimated from a {HOLDER_GRID}^2 pair grid: H1 = {h1}, H2 = {h2}"),
            );
            Some(HolderBounds { h1, p, h2, q })
        }
        (Err(e), _) | (_, Err(e)) => {
            pre.fail("Hoelder data", format!("estimation failed: {e}"));
            None
        }
    }
}

fn nonzero(v: f64) -> Result<f64> {
    if v == 0.0 {
        Err(Error::Domain("ratio denominator vanishes".into()))
    } else {
        Ok(v)
    }
}

/// Conjugate exponent pair with `1/p + 1/q = 1`; defaults to `(3, 3/2)`.
pub(crate) fn conjugate_exponents(
    pre: &mut Pre,
    ctx: &BoundContext,
    forbid_two: bool,
) -> Option<(f64, f64)> {
    let (p, q) = ctx.exponents.unwrap_or((3.0, 1.5));
    let conj = p > 1.0 && q > 1.0 && (1.0 / p + 1.0 / q - 1.0).abs() <= 1e-9;
    if !pre.require(
        "conjugate exponents",
        conj,
        format!("need p, q > 1 with 1/p + 1/q = 1; got p = {p}, q = {q}"),
    ) {
        return None;
    }
    if forbid_two
        && !pre.require(
            "exponents away from 2",
            (p - 2.0).abs() > 1e-9 && (q - 2.0).abs() > 1e-9,
            format!("this bound excludes p = q = 2; got p = {p}, q = {q}"),
        )
    {
        return None;
    }
    Some((p, q))
}

/// Single exponent `p > 1` (first slot of the pair; defaults to 2).
pub(crate) fn single_exponent(pre: &mut Pre, ctx: &BoundContext) -> Option<f64> {
    let p = ctx.exponents.map(|(p, _)| p).unwrap_or(2.0);
    pre.require(
        "exponent p > 1",
        p > 1.0 && p.is_finite(),
        format!("got p = {p}"),
    )
    .then_some(p)
}

pub(crate) enum DevNorm {
    Inf,
    L(f64),
}

/// Norm of the Pompeiu deviation `f - x f'`.
pub(crate) fn deviation_norm(
    f: &Expr,
    norm: DevNorm,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    let dev = pompeiu_deviation(f);
    match norm {
        DevNorm::Inf => sup_norm(&dev, iv, env),
        DevNorm::L(p) => lp_norm(&dev, p, iv, env, cfg),
    }
}

/// |P_hat(f, g)| via the double-integral form (the form the proofs bound).
pub(crate) fn phat_abs_double(ctx: &BoundContext) -> Result<f64> {
    Ok(phat_h_double(&ctx.f, &ctx.g, &ell(), ctx.iv, &ctx.env, &ctx.quad)?.abs())
}

pub(crate) fn phat_h_abs_double(ctx: &BoundContext, h: &Expr) -> Result<f64> {
    Ok(phat_h_double(&ctx.f, &ctx.g, h, ctx.iv, &ctx.env, &ctx.quad)?.abs())
}

/// |P_hat(u, u)| via the product form (used inside right-hand sides).
pub(crate) fn phat_self_product(
    u: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    Ok(phat_h_product(u, u, &ell(), iv, env, cfg)?.abs())
}

pub(crate) fn phat_h_self_product(
    u: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    Ok(phat_h_product(u, u, h, iv, env, cfg)?.abs())
}

/// |T(f, g)|.
pub(crate) fn t_abs(ctx: &BoundContext) -> Result<f64> {
    Ok(
        crate::functionals::chebyshev_t(&ctx.f, &ctx.g, ctx.iv, &ctx.env, &ctx.quad)?
            .product_form
            .abs(),
    )
}

/// |P(f, g)| for the unnormalized Pompeiu–Chebyshev functional.
pub(crate) fn p_abs(ctx: &BoundContext) -> Result<f64> {
    Ok(crate::functionals::pompeiu_p(&ctx.f, &ctx.g, ctx.iv, &ctx.env, &ctx.quad)?.abs())
}

/// The recurring bracket `2 (b^3-a^3)(b-a)(G^2+g^2) - 3 G g (b^2-a^2)^2`
/// built from the range of `g`.
pub(crate) fn gamma_bracket(iv: Interval, g_lo: f64, g_hi: f64) -> f64 {
    let (a, b) = (iv.a(), iv.b());
    2.0 * (b.powi(3) - a.powi(3)) * (b - a) * (g_hi * g_hi + g_lo * g_lo)
        - 3.0 * g_hi * g_lo * (b * b - a * a).powi(2)
}

/// Magnitude of the two products whose difference forms `P_hat_h`; used to
/// normalize sign checks so cancellation does not defeat a fixed tolerance.
pub(crate) fn phat_cancellation_scale(
    f: &Expr,
    g: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<f64> {
    let hh = integrate_fn(&|x| Ok(h.eval(x, env)?.powi(2)), iv, cfg)?.value;
    let fg = integrate_fn(&|x| Ok(f.eval(x, env)? * g.eval(x, env)?), iv, cfg)?.value;
    let fh = integrate_fn(&|x| Ok(f.eval(x, env)? * h.eval(x, env)?), iv, cfg)?.value;
    let hg = integrate_fn(&|x| Ok(h.eval(x, env)? * g.eval(x, env)?), iv, cfg)?.value;
    Ok(1.0 + (hh * fg).abs() + (fh * hg).abs())
}

/// Double integral of `w(x, t) |t g(x) - x g(t)|` for a kernel weight `w`.
pub(crate) fn kernel_weighted_g<W>(ctx: &BoundContext, w: W) -> Result<f64>
where
    W: Fn(f64, f64) -> f64,
{
    let env = &ctx.env;
    let g = &ctx.g;
    let k = |x: f64, t: f64| -> Result<f64> {
        let gv = t * g.eval(x, env)? - x * g.eval(t, env)?;
        Ok(w(x, t) * gv.abs())
    };
    Ok(integrate2d(&k, ctx.iv, &ctx.quad)?.value)
}

/// `f` strictly positive on a 1025-point scan.
pub(crate) fn require_positive_fn(
    pre: &mut Pre,
    name: &str,
    f: &Expr,
    iv: Interval,
    env: &ParamEnv,
) -> bool {
    match scan_min_max(f, iv, env) {
        Ok((mn, _)) => pre.require(name, mn > 0.0, format!("scanned minimum {mn}")),
        Err(e) => {
            pre.fail(name, format!("scan failed: {e}"));
            false
        }
    }
}

/// `f` nowhere zero on a 1025-point scan (no zero value, no sign change).
pub(crate) fn require_nonzero_fn(
    pre: &mut Pre,
    name: &str,
    f: &Expr,
    iv: Interval,
    env: &ParamEnv,
) -> bool {
    match scan_min_max(f, iv, env) {
        Ok((mn, mx)) => pre.require(
            name,
            mn > 0.0 || mx < 0.0,
            format!("scanned range [{mn}, {mx}] must exclude 0"),
        ),
        Err(e) => {
            pre.fail(name, format!("scan failed: {e}"));
            false
        }
    }
}
