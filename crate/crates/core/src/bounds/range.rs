//! Range-based and Cauchy–Schwarz-route bounds on `P_hat(f, g)`.

use super::helpers::*;
use super::{BoundContext, EntryResult};

pub(super) fn pre_gruss(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let lhs = phat_abs_double(ctx)?;
    let pf = phat_self_product(&ctx.f, ctx.iv, &ctx.env, &ctx.quad)?;
    let pg = phat_self_product(&ctx.g, ctx.iv, &ctx.env, &ctx.quad)?;
    let rhs = (pf * pg).sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn range_product(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let range = resolve_range(&mut pre, ctx);
    if let Some(r) = range {
        pre.require(
            "non-negative lower bounds",
            r.f_lo >= 0.0 && r.g_lo >= 0.0,
            format!("phi = {}, gamma = {}", r.f_lo, r.g_lo),
        );
    }
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let rhs = 0.5 * (b - a).powi(2) * (b * r.f_hi - a * r.f_lo) * (b * r.g_hi - a * r.g_lo);
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn range_mixed(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let range = resolve_range(&mut pre, ctx);
    if let Some(r) = range {
        pre.require(
            "g lower bound non-negative",
            r.g_lo >= 0.0,
            format!("gamma = {}", r.g_lo),
        );
    }
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let pf = phat_self_product(&ctx.f, ctx.iv, &ctx.env, &ctx.quad)?;
    let rhs = (b - a) * (b * r.g_hi - a * r.g_lo) / 2.0f64.sqrt() * pf.sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn four_case(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    pre.require(
        "f distinct from g",
        ctx.f != ctx.g,
        "the substitution degenerates for two identical functions".into(),
    );
    let range = resolve_range(&mut pre, ctx);
    if let Some(r) = range {
        let cross = r.f_lo * r.g_hi - r.f_hi * r.g_lo;
        pre.require(
            "cross-range non-degenerate",
            cross.abs() > 1e-12,
            format!("phi Gamma - Phi gamma = {cross}"),
        );
    }
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let (phi, cap_phi, gamma, cap_gamma) = (r.f_lo, r.f_hi, r.g_lo, r.g_hi);
    let sg = cap_gamma * a - gamma * b;
    let sf = cap_phi * a - phi * b;
    let gamma_sq = cap_gamma * cap_gamma - gamma * gamma;
    let phi_sq = cap_phi * cap_phi - phi * phi;
    let g_pair = (cap_gamma * b - gamma * a).powi(2) + (cap_gamma * a - gamma * b).powi(2);
    let f_pair = (cap_phi * b - phi * a).powi(2) + (cap_phi * a - phi * b).powi(2);
    let b2a2 = b * b - a * a;
    let (case, rhs) = match (sg >= 0.0, sf >= 0.0) {
        (true, true) => ("Ga - gb >= 0, Fa - fb >= 0", b2a2.powi(2) * gamma_sq * phi_sq / 8.0),
        (true, false) => ("Ga - gb >= 0, Fa - fb < 0", b2a2 * gamma_sq * f_pair / 8.0),
        (false, true) => ("Ga - gb < 0, Fa - fb >= 0", b2a2 * phi_sq * g_pair / 8.0),
        (false, false) => ("Ga - gb < 0, Fa - fb < 0", g_pair * f_pair / 8.0),
    };
    pre.info(
        "selected case",
        format!("{case} (Ga - gb = {sg}, Fa - fb = {sf})"),
    );
    let lhs = phat_abs_double(ctx)?;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn thm_2_6(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let range = resolve_range(&mut pre, ctx);
    if let Some(r) = range {
        pre.require(
            "g lower bound non-negative",
            r.g_lo >= 0.0,
            format!("gamma = {}", r.g_lo),
        );
    }
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let lhs = phat_abs_double(ctx)?;
    let pf = phat_self_product(&ctx.f, ctx.iv, &ctx.env, &ctx.quad)?;
    let bracket = gamma_bracket(ctx.iv, r.g_lo, r.g_hi).max(0.0);
    let rhs = pf.sqrt() * bracket.sqrt() / (2.0 * 3.0f64.sqrt());
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn milo_l2_bound(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let pi2 = std::f64::consts::PI.powi(2);
    let rhs = 2.0 / (9.0 * pi2) * b * b / a.powi(6) * (b.powi(3) - a.powi(3)).powi(2) * (b - a)
        * nf
        * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn cor_l2_g(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let pg = phat_self_product(&ctx.g, ctx.iv, &ctx.env, &ctx.quad)?;
    let pi = std::f64::consts::PI;
    let rhs = 2.0f64.sqrt() / (3.0 * pi) * b / a.powi(3)
        * (b.powi(3) - a.powi(3))
        * (b - a).sqrt()
        * nf
        * pg.sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn cor_l2_range(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let range = resolve_range(&mut pre, ctx);
    if let Some(r) = range {
        pre.require(
            "g lower bound non-negative",
            r.g_lo >= 0.0,
            format!("gamma = {}", r.g_lo),
        );
    }
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let pi = std::f64::consts::PI;
    let rhs = b / (3.0 * pi * a.powi(3))
        * (b - a)
        * (b * r.g_hi - a * r.g_lo)
        * (b.powi(3) - a.powi(3))
        * nf;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn improved_l2(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let ng = deviation_norm(&ctx.g, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let pi2 = std::f64::consts::PI.powi(2);
    let rhs = 7.0 / (162.0 * pi2) / a.powi(6) * (b.powi(9) - a.powi(9)) * nf * ng;
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn improved_l2_g(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    if !positive_interval(&mut pre, ctx.iv) {
        return Ok((pre.into_checks(), None, None));
    }
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let pg = phat_self_product(&ctx.g, ctx.iv, &ctx.env, &ctx.quad)?;
    let pi = std::f64::consts::PI;
    let rhs = 7.0f64.sqrt() / (9.0 * 2.0f64.sqrt() * pi) / a.powi(3)
        * (b.powi(9) - a.powi(9)).sqrt()
        * nf
        * pg.sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}

pub(super) fn improved_l2_range(ctx: &BoundContext) -> EntryResult {
    let mut pre = Pre::new();
    positive_interval(&mut pre, ctx.iv);
    let range = resolve_range(&mut pre, ctx);
    if let Some(r) = range {
        pre.require(
            "g lower bound non-negative",
            r.g_lo >= 0.0,
            format!("gamma = {}", r.g_lo),
        );
    }
    if !pre.ok() {
        return Ok((pre.into_checks(), None, None));
    }
    let r = range.unwrap();
    let (a, b) = (ctx.iv.a(), ctx.iv.b());
    let lhs = phat_abs_double(ctx)?;
    let nf = deviation_norm(&ctx.f, DevNorm::L(2.0), ctx.iv, &ctx.env, &ctx.quad)?;
    let bracket = gamma_bracket(ctx.iv, r.g_lo, r.g_hi).max(0.0);
    let pi = std::f64::consts::PI;
    let rhs = 7.0f64.sqrt() / (18.0 * 6.0f64.sqrt() * pi) / a.powi(3)
        * (b.powi(9) - a.powi(9)).sqrt()
        * nf
        * bracket.sqrt();
    Ok((pre.into_checks(), Some(lhs), Some(rhs)))
}
