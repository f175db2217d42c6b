//! Classical bounds on the Chebyshev functional `T(f, g)`.

use super::helpers::*;
use super::{BoundContext, EntryResult};
use crate::quad::{lp_norm, sup_norm};

pub(super) fn cheb_deriv_inf(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    let fp = ctx.f.differentiate();
    let gp = ctx.g.differentiate();
    let nf = sup_norm(&fp, ctx.iv, &ctx.env)?;
    let ng = sup_norm(&gp, ctx.iv, &ctx.env)?;
    pre.info(
        "derivatives bounded",
        format!("||f'||_inf = {nf}, ||g'||_inf = {ng}"),
    );
    let lhs = t_abs(ctx)?;
    let rhs = ctx.iv.width().powi(2) / 12.0 * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn gruss_classic(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    let range = resolve_range(&mut pre, ctx);
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let lhs = t_abs(ctx)?;
    let rhs = 0.25 * (r.f_hi - r.f_lo) * (r.g_hi - r.g_lo);
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn lupas_l2(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    let fp = ctx.f.differentiate();
    let gp = ctx.g.differentiate();
    let nf = lp_norm(&fp, 2.0, ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = lp_norm(&gp, 2.0, ctx.iv, &ctx.env, &ctx.quad)?;
    pre.info(
        "derivatives square-integrable",
        format!("||f'||_2 = {nf}, ||g'||_2 = {ng}"),
    );
    let lhs = t_abs(ctx)?;
    let rhs = ctx.iv.width() / std::f64::consts::PI.powi(2) * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

/// Range of `f` paired with the derivative bound of `g`. The source states
/// this with an undefined symbol for the derivative factor; the reading
/// consistent with its hypothesis `g' bounded` is used.
pub(super) fn ostrowski_mixed(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    let range = resolve_range(&mut pre, ctx);
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let gp = ctx.g.differentiate();
    let ng = sup_norm(&gp, ctx.iv, &ctx.env)?;
    pre.info("g' bounded", format!("||g'||_inf = {ng}"));
    let lhs = t_abs(ctx)?;
    let rhs = ctx.iv.width() / 8.0 * (r.f_hi - r.f_lo) * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}
