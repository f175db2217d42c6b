//! Declarative catalog of theorem bounds.
//!
//! Every entry takes a [`BoundContext`], checks its preconditions (verifying
//! any caller-supplied constants against the actual functions by dense scan),
//! computes the left- and right-hand sides and reports slack. Bound ids are a
//! stable public contract; see [`list_bounds`].

mod aux;
mod cbs;
mod deviation;
mod gruss;
mod hardy;
mod helpers;
mod range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Expr, ParamEnv};
use crate::mvt::{h_monotonicity, HMonotonicity};
use crate::quad::{Interval, QuadConfig};

pub(crate) use helpers::Pre;

/// Outcome of a bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Holds,
    Violated,
    PreconditionFailed,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PreconditionCheck {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

/// Per-bound evaluation record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub id: String,
    pub preconditions: Vec<PreconditionCheck>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub ratio: Option<f64>,
    pub status: BoundStatus,
}

impl BoundReport {
    /// `holds` requires every precondition and `lhs <= rhs + 1e-7 (1 + |rhs|)`.
    fn assemble(id: &str, pre: Vec<PreconditionCheck>, lhs: Option<f64>, rhs: Option<f64>) -> Self {
        let pre_ok = pre.iter().all(|c| c.satisfied);
        let (status, slack, ratio) = match (pre_ok, lhs, rhs) {
            (false, ..) => (BoundStatus::PreconditionFailed, None, None),
            (true, Some(l), Some(r)) => {
                let tol = 1e-7 * (1.0 + r.abs());
                let status = if l <= r + tol {
                    BoundStatus::Holds
                } else {
                    BoundStatus::Violated
                };
                let ratio = if r > 0.0 { Some(l / r) } else { None };
                (status, Some(r - l), ratio)
            }
            // evaluation did not produce both sides; treat as precondition failure
            (true, ..) => (BoundStatus::PreconditionFailed, None, None),
        };
        BoundReport {
            id: id.to_string(),
            preconditions: pre,
            lhs,
            rhs,
            slack,
            ratio,
            status,
        }
    }
}

/// Range data an entry may draw from the context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeBounds {
    /// Lower/upper bounds for `f` (often written phi, Phi).
    pub f_lo: f64,
    pub f_hi: f64,
    /// Lower/upper bounds for `g` (often written gamma, Gamma).
    pub g_lo: f64,
    pub g_hi: f64,
}

/// Hölder data: `|u(x) - u(y)| <= H |x - y|^p` for the relevant ratio on the
/// f side (`h1`, `p`) and the g side (`h2`, `q`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderBounds {
    pub h1: f64,
    pub p: f64,
    pub h2: f64,
    pub q: f64,
}

/// Everything a bound evaluation may need. Optional data that an entry
/// requires but the caller did not supply is computed from the functions by
/// scan and flagged as such in the report.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub f: Expr,
    pub g: Expr,
    pub h: Option<Expr>,
    pub iv: Interval,
    pub env: ParamEnv,
    pub range: Option<RangeBounds>,
    /// Pointwise ratio bounds `m h <= f <= M h`, `n h <= g <= N h`
    /// (fields f_lo/f_hi/g_lo/g_hi read as m/M/n/N).
    pub ratio: Option<RangeBounds>,
    pub holder: Option<HolderBounds>,
    /// Conjugate exponent pair `(p, q)` for the L^p-flavoured entries.
    pub exponents: Option<(f64, f64)>,
    pub quad: QuadConfig,
}

impl BoundContext {
    pub fn new(f: Expr, g: Expr, iv: Interval) -> Self {
        Self {
            f,
            g,
            h: None,
            iv,
            env: ParamEnv::new(),
            range: None,
            ratio: None,
            holder: None,
            exponents: None,
            quad: QuadConfig::default(),
        }
    }

    pub fn with_h(mut self, h: Expr) -> Self {
        self.h = Some(h);
        self
    }

    pub fn with_env(mut self, env: ParamEnv) -> Self {
        self.env = env;
        self
    }

    pub fn with_range(mut self, range: RangeBounds) -> Self {
        self.range = Some(range);
        self
    }

    pub fn with_ratio(mut self, ratio: RangeBounds) -> Self {
        self.ratio = Some(ratio);
        self
    }

    pub fn with_holder(mut self, holder: HolderBounds) -> Self {
        self.holder = Some(holder);
        self
    }

    pub fn with_exponents(mut self, p: f64, q: f64) -> Self {
        self.exponents = Some((p, q));
        self
    }

    pub fn with_quad(mut self, quad: QuadConfig) -> Self {
        self.quad = quad;
        self
    }
}

/// How an entry consumes the `exponents` field; used by the suite runner to
/// draw suitable values when none are supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentUse {
    None,
    /// conjugate pair p, q > 1
    Conjugate,
    /// conjugate pair with p and q both away from 2
    ConjugateNotTwo,
    /// single exponent p > 1 read from the pair's first slot
    SingleGreaterOne,
    /// Hölder orders in (0, 1] (read from the holder data)
    HolderOrders,
}

/// Catalog metadata for one bound.
#[derive(Debug, Clone, Copy)]
pub struct BoundInfo {
    pub id: &'static str,
    pub theorem: &'static str,
    pub requires: &'static [&'static str],
    pub needs_h: bool,
    pub exponents: ExponentUse,
}

type EntryResult = Result<(Vec<PreconditionCheck>, Option<f64>, Option<f64>)>;
type EntryFn = fn(&BoundContext) -> EntryResult;

pub(crate) struct Entry {
    pub info: BoundInfo,
    pub eval: EntryFn,
}

fn catalog() -> &'static [Entry] {
    use ExponentUse::*;
    macro_rules! entry {
        ($id:literal, $thm:literal, [$($req:literal),*], $needs_h:expr, $exp:expr, $f:path) => {
            Entry {
                info: BoundInfo {
                    id: $id,
                    theorem: $thm,
                    requires: &[$($req),*],
                    needs_h: $needs_h,
                    exponents: $exp,
                },
                eval: $f,
            }
        };
    }
    static CATALOG: std::sync::OnceLock<Vec<Entry>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| {
        vec![
            // classical Chebyshev-functional bounds
            entry!("cheb_deriv_inf", "Chebyshev bound: |T| <= (b-a)^2/12 ||f'||_inf ||g'||_inf",
                ["derivatives bounded"], false, None, gruss::cheb_deriv_inf),
            entry!("gruss_classic", "Gruss bound: |T| <= 1/4 (F-f)(G-g) from ranges",
                ["range bounds for f and g"], false, None, gruss::gruss_classic),
            entry!("lupas_l2", "Lupas bound: |T| <= (b-a)/pi^2 ||f'||_2 ||g'||_2",
                ["derivatives square-integrable"], false, None, gruss::lupas_l2),
            entry!("ostrowski_mixed", "mixed bound: |T| <= 1/8 (b-a)(F-f) ||g'||_inf",
                ["range bounds for f", "g' bounded"], false, None, gruss::ostrowski_mixed),
            // deviation-driven bounds on the Pompeiu-Chebyshev functionals
            entry!("pachpatte", "|P| via the sup norms of the Pompeiu deviations",
                ["positive interval"], false, None, deviation::pachpatte),
            entry!("pecaric_ungar_inf", "|P| kernel bound, sup-norm case",
                ["positive interval"], false, None, deviation::pecaric_ungar_inf),
            entry!("pecaric_ungar_1", "|P| kernel bound, L^1 case",
                ["positive interval"], false, None, deviation::pecaric_ungar_1),
            entry!("pecaric_ungar_2", "|P| kernel bound, L^2 case",
                ["positive interval"], false, None, deviation::pecaric_ungar_2),
            entry!("dragomir_linf", "|P_hat| <= (b-a)^4/12 ||f-xf'||_inf ||g-xg'||_inf (sharp)",
                ["positive interval"], false, None, deviation::dragomir_linf),
            entry!("dragomir_lpq", "|P_hat| <= M_p^(1/p) M_q^(1/q)/(2(2p-1)^(1/p)(2q-1)^(1/q)) ||dev f||_p ||dev g||_q",
                ["positive interval", "conjugate exponents away from 2"], false, ConjugateNotTwo,
                deviation::dragomir_lpq),
            entry!("dragomir_l2", "|P_hat| <= 1/9 [(a^3+b^3) ln(b/a) - 2/3 (b^3-a^3)] ||dev f||_2 ||dev g||_2",
                ["positive interval"], false, None, deviation::dragomir_l2),
            entry!("dragomir_l1", "|P_hat| <= (b-a)^2 (a+2b)/(6a) ||dev f||_1 ||dev g||_1",
                ["positive interval"], false, None, deviation::dragomir_l1),
            entry!("sec3_inf", "|P_hat| <= 1/2 ||dev f||_inf double-int |x-t| |t g(x) - x g(t)|",
                ["positive interval"], false, None, deviation::sec3_inf),
            entry!("sec3_lp", "|P_hat| kernel bound with the L^p deviation of f",
                ["positive interval", "conjugate exponents"], false, Conjugate, deviation::sec3_lp),
            entry!("sec3_l1", "|P_hat| <= 1/2 ||dev f||_1 double-int (max/min) |t g(x) - x g(t)|",
                ["positive interval"], false, None, deviation::sec3_l1),
            entry!("sec3_inf_range", "|P_hat| <= (b-a)^2/12 ||dev f||_inf bracket(g)^(1/2)",
                ["positive interval", "range bounds for g", "g lower bound non-negative"], false,
                None, deviation::sec3_inf_range),
            entry!("sec3_inf_l1", "|P_hat| <= 1/2 C(a,b) ||dev f||_inf ||dev g||_1",
                ["positive interval"], false, None, deviation::sec3_inf_l1),
            entry!("sec3_l1_range", "|P_hat| <= ((2b^3+a^3-3ab^2)/a)^(1/2)/(6 sqrt 2) ||dev f||_1 bracket(g)^(1/2)",
                ["positive interval", "range bounds for g", "g lower bound non-negative"], false,
                None, deviation::sec3_l1_range),
            // range-based bounds
            entry!("pre_gruss", "|P_hat(f,g)| <= |P_hat(f,f)|^(1/2) |P_hat(g,g)|^(1/2) (sharp)",
                ["positive interval"], false, None, range::pre_gruss),
            entry!("range_product", "|P_hat| <= 1/2 (b-a)^2 (b F - a f)(b G - a g)",
                ["positive interval", "range bounds for f and g", "non-negative lower bounds"],
                false, None, range::range_product),
            entry!("range_mixed", "|P_hat| <= (b-a)(b G - a g)/sqrt(2) |P_hat(f,f)|^(1/2)",
                ["positive interval", "range bounds for g", "g lower bound non-negative"], false,
                None, range::range_mixed),
            entry!("four_case", "|P_hat| by the sign-split box integral of |y z|",
                ["positive interval", "range bounds for f and g", "cross-range non-degenerate",
                 "f distinct from g"], false, None, range::four_case),
            entry!("thm_2_6", "|P_hat| <= |P_hat(f,f)|^(1/2) bracket(g)^(1/2) / (2 sqrt 3)",
                ["positive interval", "range bounds for g", "g lower bound non-negative"], false,
                None, range::thm_2_6),
            entry!("milo_l2_bound", "|P_hat| <= 2 b^2 (b^3-a^3)^2 (b-a)/(9 pi^2 a^6) ||dev f||_2 ||dev g||_2",
                ["positive interval"], false, None, range::milo_l2_bound),
            entry!("cor_l2_g", "|P_hat| <= sqrt(2) b (b^3-a^3) (b-a)^(1/2)/(3 pi a^3) ||dev f||_2 |P_hat(g,g)|^(1/2)",
                ["positive interval"], false, None, range::cor_l2_g),
            entry!("cor_l2_range", "|P_hat| <= b (b-a)(b G - a g)(b^3-a^3)/(3 pi a^3) ||dev f||_2",
                ["positive interval", "range bounds for g", "g lower bound non-negative"], false,
                None, range::cor_l2_range),
            entry!("improved_l2", "|P_hat| <= 7 (b^9-a^9)/(162 pi^2 a^6) ||dev f||_2 ||dev g||_2",
                ["positive interval"], false, None, range::improved_l2),
            entry!("improved_l2_g", "|P_hat| <= sqrt(7) (b^9-a^9)^(1/2)/(9 sqrt(2) pi a^3) ||dev f||_2 |P_hat(g,g)|^(1/2)",
                ["positive interval"], false, None, range::improved_l2_g),
            entry!("improved_l2_range", "|P_hat| <= sqrt(7) (b^9-a^9)^(1/2)/(18 sqrt(6) pi a^3) ||dev f||_2 bracket(g)^(1/2)",
                ["positive interval", "range bounds for g", "g lower bound non-negative"], false,
                None, range::improved_l2_range),
            // reverse Cauchy-Bunyakovsky-Schwarz bounds
            entry!("gen_pre_gruss", "|P_hat_h(f,g)| <= |P_hat_h(f,f)|^(1/2) |P_hat_h(g,g)|^(1/2) (sharp)",
                [], true, None, cbs::gen_pre_gruss),
            entry!("cbs_holder_h", "|P_hat_h| <= H1 H2 (b-a)^(p+q+2)/sqrt(...) ||h||_inf^4, f/h and g/h Hoelder",
                ["h non-zero", "Hoelder data"], true, HolderOrders, cbs::cbs_holder_h),
            entry!("cbs_holder_x", "h = x corollary of cbs_holder_h with ||x||_inf^4 = b^4",
                ["positive interval", "Hoelder data"], false, HolderOrders, cbs::cbs_holder_x),
            entry!("cbs_holder_fg", "|P_hat_h| <= H1 H2 (b-a)^(p+q+2)/sqrt(...) ||f||_inf^2 ||g||_inf^2, h/f and h/g Hoelder",
                ["f and g non-zero", "Hoelder data"], true, HolderOrders, cbs::cbs_holder_fg),
            entry!("cbs_pointwise", "|P_hat_h| <= (M-m)(N-n)/(4 sqrt(mM nN)) |int h f| |int h g|",
                ["h non-negative", "pointwise ratio bounds"], true, None, cbs::cbs_pointwise),
            entry!("barnett_reverse", "P_hat_h(f,f) <= H^2 (b-a)^(2p+2)/((2p+1)(2p+2)) ||h||_inf^4",
                ["h non-zero", "Hoelder data for f/h"], true, HolderOrders, cbs::barnett_reverse),
            entry!("barnett_pointwise", "P_hat_h(f,f) <= (M-m)^2/(4 m M) (int h f)^2",
                ["h non-negative", "pointwise ratio bounds"], true, None, cbs::barnett_pointwise),
            // Hardy block
            entry!("hardy_cheb_bounds", "|T(F, 1/t)| <= (b-a)^2/(12 a^2) ||phi||_inf for F = int phi",
                ["positive interval"], false, None, hardy::hardy_cheb_bounds),
            entry!("hardy_cheb_pre", "|T(F, 1/t)| <= |1/(ab) - 1/L^2|^(1/2) T(F,F)^(1/2)",
                ["positive interval"], false, None, hardy::hardy_cheb_pre),
            entry!("hardy_p_bounds", "|T(F^p, t^-p)| <= (b-a)^(p+1) p^2 a^-(p+1)/12 ||phi||_inf^p",
                ["positive interval", "phi non-negative", "exponent p > 1"], false,
                SingleGreaterOne, hardy::hardy_p_bounds),
            entry!("hardy_p_pre", "|T(F^p, t^-p)| <= T(t^-p, t^-p)^(1/2) T(F^p, F^p)^(1/2)",
                ["positive interval", "phi non-negative", "exponent p > 1"], false,
                SingleGreaterOne, hardy::hardy_p_pre),
            entry!("hardy_convex", "|T(Phi0, Phi0)| <= b pq sin(pi/p) sin(pi/q)/(4 pi^2 ...) ||Phi0'||_p ||Phi0'||_q",
                ["lower endpoint 0", "average convex", "average derivative positive",
                 "conjugate exponents"], false, Conjugate, hardy::hardy_convex),
            entry!("hardy_convex_half", "centred L^p/L^q bounds on the Cesaro average of phi",
                ["lower endpoint 0", "average convex", "average derivative positive",
                 "conjugate exponents"], false, Conjugate, hardy::hardy_convex_half),
            // standalone auxiliary inequalities and sign checks
            entry!("milo_standalone", "weighted Wirtinger-type bound with weight s^2, checked on an eta grid",
                ["positive interval"], false, None, aux::milo_standalone),
            entry!("alomari_y1", "int |f - f(xi)|^p <= C(p) [(b-a)/2 + |xi - mid|]^p int (f')^p over a xi grid",
                ["derivative positive", "exponent p > 1"], false, SingleGreaterOne, aux::alomari_y1),
            entry!("positivity", "sign of P_hat_h under matching generalized monotonicity classes",
                ["h non-negative", "classes classifiable"], true, None, aux::positivity_entry),
            entry!("ramified_derivative_set", "signs of P_hat_h(f, f'') for h in {1, x, 1/f, f'}",
                ["positive interval", "f positive", "classes classifiable"], false, None,
                aux::ramified_derivative_set),
        ]
    })
}

/// Stable catalog summary: id, statement and precondition names per entry.
pub fn list_bounds() -> Vec<BoundInfo> {
    catalog().iter().map(|e| e.info).collect()
}

pub(crate) fn find_entry(id: &str) -> Result<&'static Entry> {
    if id == "pecaric_ungar" {
        return Err(Error::OutOfScope {
            id: id.into(),
            reason: "only the sup-norm, L^1 and L^2 special cases are implemented \
                     (pecaric_ungar_inf, pecaric_ungar_1, pecaric_ungar_2)"
                .into(),
        });
    }
    catalog()
        .iter()
        .find(|e| e.info.id == id)
        .ok_or_else(|| Error::UnknownBound(id.to_string()))
}

/// Evaluates the catalog entry `id` in the given context.
pub fn evaluate_bound(id: &str, ctx: &BoundContext) -> Result<BoundReport> {
    let entry = find_entry(id)?;
    if entry.info.needs_h && ctx.h.is_none() {
        return Err(Error::Config(format!(
            "bound `{id}` needs an h function in the context"
        )));
    }
    let (pre, lhs, rhs) = (entry.eval)(ctx)?;
    Ok(BoundReport::assemble(id, pre, lhs, rhs))
}

/// Classifies the generalized monotonicity of `f` and `g` with respect to a
/// non-negative `h` and checks the implied sign of the functional: same class
/// means non-negative, opposite classes mean non-positive.
pub fn check_positivity(
    f: &Expr,
    g: &Expr,
    h: &Expr,
    iv: Interval,
    env: &ParamEnv,
    cfg: &QuadConfig,
) -> Result<BoundReport> {
    let mut pre = Pre::new();
    let class_f = match h_monotonicity(f, h, iv, env) {
        Ok(c) => {
            pre.info("h non-negative", "verified by grid scan".into());
            Some(c)
        }
        Err(Error::Precondition(msg)) => {
            pre.fail("h non-negative", msg);
            None
        }
        Err(e) => return Err(e),
    };
    let mut lhs = None;
    let rhs = Some(0.0);
    if let Some(cf) = class_f {
        let cg = h_monotonicity(g, h, iv, env)?;
        pre.info("class of f", format!("{cf}"));
        pre.info("class of g", format!("{cg}"));
        match (cf, cg) {
            (HMonotonicity::Neither, _) | (_, HMonotonicity::Neither) => {
                pre.fail(
                    "classes classifiable",
                    "a function is neither h-increasing nor h-decreasing".into(),
                );
            }
            (a, b) => {
                let value = crate::functionals::phat_h_product(f, g, h, iv, env, cfg)?;
                let scale = helpers::phat_cancellation_scale(f, g, h, iv, env, cfg)?;
                // normalized so the fixed report tolerance is scale-aware
                let signed = if a == b { -value } else { value };
                lhs = Some(signed / scale);
                pre.info(
                    "expected sign",
                    if a == b {
                        format!("same class: functional {value} expected >= 0")
                    } else {
                        format!("opposite classes: functional {value} expected <= 0")
                    },
                );
            }
        }
    }
    Ok(BoundReport::assemble(
        "positivity",
        pre.into_checks(),
        lhs,
        rhs,
    ))
}

#[cfg(test)]
mod tests;
