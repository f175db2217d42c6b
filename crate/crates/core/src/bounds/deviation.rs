//! Bounds driven by norms of the Pompeiu deviation `f - x f'`.

use super::helpers::*;
use super::{BoundContext, EntryResult};
use crate::error::Result;
use crate::quad::{integrate2d, integrate_fn, Interval, QuadConfig};

pub(super) fn pachpatte(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = p_abs(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let factor = 1.0 - 0.75 * (a + b).powi(2) / (a * a + a * b + b * b);
    let rhs = (b - a) * factor * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

fn pecaric_kernel_integral<A>(
    ctx: &BoundContext,
    of: &crate::expr::Expr,
    a_fn: &A,
) -> Result<f64>
where
    A: Fn(f64) -> f64,
{
    let env = &ctx.env;
    let f = |x: f64| -> Result<f64> { Ok(x * of.eval(x, env)?.abs() * a_fn(x)) };
    Ok(integrate_fn(&f, ctx.iv, &ctx.quad)?.value)
}

fn pecaric_rhs<A>(ctx: &BoundContext, norm_p: Option<f64>, front: f64, a_fn: A) -> Result<f64>
where
    A: Fn(f64) -> f64,
{
    let (nf, ng) = match norm_p {
        Some(p) => (
            deviation_norm(&ctx.f, DevNorm::L(p), ctx.iv, &ctx.env, &ctx.quad)?,
            deviation_norm(&ctx.g, DevNorm::L(p), ctx.iv, &ctx.env, &ctx.quad)?,
        ),
        None => (
            deviation_norm(&ctx.f, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?,
            deviation_norm(&ctx.g, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?,
        ),
    };
    let ig = pecaric_kernel_integral(ctx, &ctx.g, &a_fn)?;
    let ifx = pecaric_kernel_integral(ctx, &ctx.f, &a_fn)?;
    Ok(front * (nf * ig + ng * ifx))
}

pub(super) fn pecaric_ungar_inf(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = p_abs(ctx)?;
    let front = 1.0 / (b * b - a * a);
    let rhs = pecaric_rhs(ctx, None, front, |x| {
        x + (a * a + b * b) / (2.0 * x) - (a + b)
    })?;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn pecaric_ungar_1(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = p_abs(ctx)?;
    let front = (b - a) / (b * b - a * a);
    let rhs = pecaric_rhs(ctx, Some(1.0), front, |x| 1.0 / a + b / (x * x))?;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn pecaric_ungar_2(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = p_abs(ctx)?;
    let front = (b - a).sqrt() / (b * b - a * a);
    let rhs = pecaric_rhs(ctx, Some(2.0), front, |x| {
        let ta = (3.0 * (x / a).ln() + (a / x).powi(3) - 1.0).max(0.0);
        let tb = (3.0 * (x / b).ln() + (b / x).powi(3) - 1.0).max(0.0);
        (ta.sqrt() + tb.sqrt()) / 3.0
    })?;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn dragomir_linf(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let rhs = ctx.iv.width().powi(4) / 12.0 * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

/// `M_r(a,b) = double-int |x^r / t^(r-1) - t^r / x^(r-1)|`.
fn m_r(r: f64, iv: Interval, cfg: &QuadConfig) -> Result<f64> {
    let k = |x: f64, t: f64| -> Result<f64> {
        Ok((x.powf(r) / t.powf(r - 1.0) - t.powf(r) / x.powf(r - 1.0)).abs())
    };
    Ok(integrate2d(&k, iv, cfg)?.value)
}

pub(super) fn dragomir_lpq(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let exps = conjugate_exponents(&mut pre, ctx, true);
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let (p, q) = exps.unwrap();
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(p), ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::L(q), ctx.iv, &ctx.env, &ctx.quad)?;
    let mp = m_r(p, ctx.iv, &ctx.quad)?;
    let mq = m_r(q, ctx.iv, &ctx.quad)?;
    let denom = 2.0 * (2.0 * p - 1.0).powf(1.0 / p) * (2.0 * q - 1.0).powf(1.0 / q);
    let rhs = mp.powf(1.0 / p) * mq.powf(1.0 / q) / denom * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn dragomir_l2(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let bracket = (a.powi(3) + b.powi(3)) * (b / a).ln() - 2.0 / 3.0 * (b.powi(3) - a.powi(3));
    let rhs = nf * ng * bracket / 9.0;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn dragomir_l1(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(1.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::L(1.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let rhs = (b - a).powi(2) / (6.0 * a) * (a + 2.0 * b) * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn sec3_inf(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let kernel = kernel_weighted_g(ctx, |x, t| (x - t).abs())?;
    let rhs = 0.5 * nf * kernel;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn sec3_lp(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let exps = conjugate_exponents(&mut pre, ctx, false);
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let (p, q) = exps.unwrap();
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(p), ctx.iv, &ctx.env, &ctx.quad)?;
    let kernel = kernel_weighted_g(ctx, |x, t| {
        (x.powf(q) / t.powf(q - 1.0) - t.powf(q) / x.powf(q - 1.0))
            .abs()
            .powf(1.0 / q)
    })?;
    let rhs = 0.5 * (1.0 / (2.0 * q - 1.0)).powf(1.0 / q) * nf * kernel;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn sec3_l1(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(1.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let kernel = kernel_weighted_g(ctx, |x, t| x.max(t) / x.min(t))?;
    let rhs = 0.5 * nf * kernel;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

fn nonneg_g_bracket(pre: &mut Pre, ctx: &BoundContext) -> Option<f64> {
    let range = resolve_range(pre, ctx)?;
    if !pre.require(
        "g lower bound non-negative",
        range.g_lo >= 0.0,
        format!("gamma = {}", range.g_lo),
    ) {
        return None;
    }
    Some(gamma_bracket(ctx.iv, range.g_lo, range.g_hi))
}

/// The displayed form omits the square root on the bracket that the
/// derivation carries; the bound is implemented with the root (see the
/// composed form it must dominate).
pub(super) fn sec3_inf_range(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let bracket = nonneg_g_bracket(&mut pre, ctx);
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let rhs = ctx.iv.width().powi(2) / 12.0 * nf * bracket.unwrap().max(0.0).sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn sec3_inf_l1(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::Inf, ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::L(1.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let c = b * b * a - (a.powi(3) + 8.0 * b.powi(3)) / 9.0 + 2.0 / 3.0 * b.powi(3) * (b / a).ln();
    let rhs = 0.5 * c * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn sec3_l1_range(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let bracket = nonneg_g_bracket(&mut pre, ctx);
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(1.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let lead = ((2.0 * b.powi(3) + a.powi(3) - 3.0 * a * b * b) / a).sqrt() / (6.0 * 2.0f64.sqrt());
    let rhs = lead * nf * bracket.unwrap().max(0.0).sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}
