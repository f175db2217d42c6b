//! Mean-value point solvers for the Pompeiu and Boggio theorems,
//! admissibility checks for `(h, [a,b])` pairs, and the generalized
//! monotonicity classifier.

use crate::error::{Error, Result};
use crate::expr::{Expr, ParamEnv};
use crate::quad::{golden_max, Interval};

const SCAN_POINTS: usize = 4097;
const ROOT_PANELS: usize = 1024;

/// Roots of a mean-value equation together with their residuals.
///
/// When the residual function vanishes everywhere on the scan (a linear
/// family turns the equation into an identity), `all_solutions` is set and
/// the root list is empty.
#[derive(Debug, Clone)]
pub struct MvtSolution {
    pub xi_roots: Vec<f64>,
    pub residuals: Vec<f64>,
    pub lhs_value: f64,
    pub all_solutions: bool,
    pub warnings: Vec<String>,
}

/// Generalized monotonicity class of `f` with respect to a non-negative `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HMonotonicity {
    HIncreasing,
    HDecreasing,
    Neither,
}

impl std::fmt::Display for HMonotonicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HMonotonicity::HIncreasing => "h-increasing",
            HMonotonicity::HDecreasing => "h-decreasing",
            HMonotonicity::Neither => "neither",
        };
        write!(f, "{s}")
    }
}

/// True when neither `h` nor `h'` vanishes anywhere on the interval,
/// checked on a dense scan with local refinement around near-zeros.
pub fn admissible(h: &Expr, iv: Interval, env: &ParamEnv) -> Result<bool> {
    let hp = h.differentiate();
    Ok(no_zero(h, iv, env)? && no_zero(&hp, iv, env)?)
}

fn no_zero(f: &Expr, iv: Interval, env: &ParamEnv) -> Result<bool> {
    let n = SCAN_POINTS;
    let mut prev: Option<f64> = None;
    let mut vals = Vec::with_capacity(n);
    let mut scale = 0.0f64;
    for i in 0..n {
        let x = iv.a() + iv.width() * i as f64 / (n - 1) as f64;
        let v = f.eval(x, env)?;
        scale = scale.max(v.abs());
        if v.abs() < 1e-12 {
            return Ok(false);
        }
        if let Some(p) = prev {
            if p * v < 0.0 {
                return Ok(false);
            }
        }
        prev = Some(v);
        vals.push((x, v));
    }
    // refine around near-zeros to catch dips between scan nodes
    let near = 1e-6 * scale.max(1.0);
    for i in 0..n {
        if vals[i].1.abs() < near {
            let lo = vals[i.saturating_sub(1)].0;
            let hi = vals[(i + 1).min(n - 1)].0;
            if hi > lo {
                let min_abs = -golden_max(&|x| Ok(-f.eval(x, env)?.abs()), lo, hi, 1e-12)?;
                if min_abs < 1e-12 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Solves the Pompeiu mean-value equation
/// `(x1 f(x2) - x2 f(x1))/(x1 - x2) = f(xi) - xi f'(xi)` for `xi` between
/// `x1` and `x2`.
pub fn pompeiu_xi(f: &Expr, x1: f64, x2: f64, env: &ParamEnv) -> Result<MvtSolution> {
    if x1 == x2 {
        return Err(Error::Precondition("requires x1 distinct from x2".into()));
    }
    let lhs = (x1 * f.eval(x2, env)? - x2 * f.eval(x1, env)?) / (x1 - x2);
    let dev = crate::expr::pompeiu_deviation(f);
    let mut warnings = Vec::new();
    let (lo, hi) = (x1.min(x2), x1.max(x2));
    if lo <= 0.0 && 0.0 <= hi {
        warnings.push(
            "interval contains 0: the classical hypothesis is violated, \
             solving under the revised statement"
                .to_string(),
        );
    }
    solve(&|xi| Ok(dev.eval(xi, env)? - lhs), lo, hi, lhs, warnings)
}

/// Solves the Boggio mean-value equation
/// `(h(x1) f(x2) - h(x2) f(x1))/(h(x1) - h(x2)) = f(xi) - h(xi)/h'(xi) f'(xi)`.
pub fn boggio_xi(f: &Expr, h: &Expr, x1: f64, x2: f64, env: &ParamEnv) -> Result<MvtSolution> {
    if x1 == x2 {
        return Err(Error::Precondition("requires x1 distinct from x2".into()));
    }
    let h1 = h.eval(x1, env)?;
    let h2 = h.eval(x2, env)?;
    if (h1 - h2).abs() <= 1e-14 * (1.0 + h1.abs() + h2.abs()) {
        return Err(Error::Precondition(format!(
            "requires h(x1) distinct from h(x2); got h(x1) = {h1}, h(x2) = {h2}"
        )));
    }
    let lhs = (h1 * f.eval(x2, env)? - h2 * f.eval(x1, env)?) / (h1 - h2);
    let (lo, hi) = (x1.min(x2), x1.max(x2));
    let mut warnings = Vec::new();
    if !admissible(h, Interval::new(lo, hi)?, env)? {
        warnings.push("h or h' has a zero on the interval; roots may be missed".to_string());
    }
    let fp = f.differentiate();
    let hp = h.differentiate();
    let residual = |xi: f64| -> Result<f64> {
        let hpv = hp.eval(xi, env)?;
        if hpv == 0.0 {
            return Err(Error::Domain(format!("h'({xi}) = 0 in the Boggio equation")));
        }
        Ok(f.eval(xi, env)? - h.eval(xi, env)? / hpv * fp.eval(xi, env)? - lhs)
    };
    solve(&residual, lo, hi, lhs, warnings)
}

fn solve<F>(residual: &F, lo: f64, hi: f64, lhs: f64, warnings: Vec<String>) -> Result<MvtSolution>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let n = ROOT_PANELS + 1;
    let mut nodes: Vec<(f64, Option<f64>)> = Vec::with_capacity(n);
    let mut max_abs = 0.0f64;
    let mut any_ok = false;
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        match residual(x) {
            Ok(v) => {
                max_abs = max_abs.max(v.abs());
                any_ok = true;
                nodes.push((x, Some(v)));
            }
            Err(_) => nodes.push((x, None)),
        }
    }
    if !any_ok {
        return Err(Error::Domain(
            "mean-value residual not evaluable anywhere on the interval".into(),
        ));
    }
    let scale = 1.0 + lhs.abs();
    if max_abs <= 1e-12 * scale {
        return Ok(MvtSolution {
            xi_roots: Vec::new(),
            residuals: Vec::new(),
            lhs_value: lhs,
            all_solutions: true,
            warnings,
        });
    }

    let mut roots = Vec::new();
    for w in nodes.windows(2) {
        let ((xa, va), (xb, vb)) = (w[0], w[1]);
        let (va, vb) = match (va, vb) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        if va == 0.0 {
            roots.push((xa, 0.0));
            continue;
        }
        if va * vb < 0.0 {
            if let Ok((x, r)) = refine(residual, xa, va, xb, vb) {
                roots.push((x, r));
            }
        }
    }
    // endpoint value can be an exact root
    if let (x, Some(v)) = nodes[n - 1] {
        if v == 0.0 {
            roots.push((x, 0.0));
        }
    }

    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut dedup: Vec<(f64, f64)> = Vec::new();
    let merge_tol = 1e-9 * (hi - lo);
    for (x, r) in roots {
        // keep roots strictly interior
        if x - lo <= merge_tol || hi - x <= merge_tol {
            continue;
        }
        match dedup.last() {
            Some(&(px, _)) if (x - px).abs() <= merge_tol => {}
            _ => dedup.push((x, r)),
        }
    }

    Ok(MvtSolution {
        xi_roots: dedup.iter().map(|p| p.0).collect(),
        residuals: dedup.iter().map(|p| p.1).collect(),
        lhs_value: lhs,
        all_solutions: false,
        warnings,
    })
}

/// Hybrid bisection/secant refinement of a bracketed sign change.
fn refine<F>(residual: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    for _ in 0..200 {
        if (b - a).abs() <= 1e-12 {
            break;
        }
        // secant candidate, falling back to bisection when it leaves the bracket
        let mut x = if fb != fa {
            b - fb * (b - a) / (fb - fa)
        } else {
            0.5 * (a + b)
        };
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        let fx = match residual(x) {
            Ok(v) => v,
            Err(_) => {
                // retreat to plain bisection on evaluation trouble
                let m = 0.5 * (a + b);
                residual(m)?
            }
        };
        if fx == 0.0 {
            return Ok((x, 0.0));
        }
        if fa * fx < 0.0 {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, residual(x)?))
}

const MONO_GRID: usize = 129;

/// Classifies `f` as h-increasing or h-decreasing by the sign of
/// `h(x) f(t) - h(t) f(x)` over the grid restricted to `t >= x`.
/// The identically-zero case classifies as h-increasing.
pub fn h_monotonicity(f: &Expr, h: &Expr, iv: Interval, env: &ParamEnv) -> Result<HMonotonicity> {
    let n = MONO_GRID;
    let mut fs = Vec::with_capacity(n);
    let mut hs = Vec::with_capacity(n);
    let mut h_scale = 0.0f64;
    for i in 0..n {
        let x = iv.a() + iv.width() * i as f64 / (n - 1) as f64;
        let hv = h.eval(x, env)?;
        h_scale = h_scale.max(hv.abs());
        fs.push(f.eval(x, env)?);
        hs.push(hv);
    }
    for (i, &hv) in hs.iter().enumerate() {
        if hv < -1e-12 * h_scale.max(1.0) {
            let x = iv.a() + iv.width() * i as f64 / (n - 1) as f64;
            return Err(Error::Precondition(format!(
                "h must be non-negative; h({x}) = {hv}"
            )));
        }
    }

    let mut min_s = f64::INFINITY;
    let mut max_s = f64::NEG_INFINITY;
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in i..n {
            // s = h(x) f(t) - h(t) f(x) with x = node i, t = node j >= x
            let s = hs[i] * fs[j] - hs[j] * fs[i];
            min_s = min_s.min(s);
            max_s = max_s.max(s);
            scale = scale.max(s.abs());
        }
    }
    let tol = 1e-12 * scale.max(1.0);
    if min_s >= -tol {
        Ok(HMonotonicity::HIncreasing)
    } else if max_s <= tol {
        Ok(HMonotonicity::HDecreasing)
    } else {
        Ok(HMonotonicity::Neither)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

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
    fn admissibility_examples() {
        assert!(admissible(&e("x^2-4*x+4"), iv(-1.0, 1.0), &env()).unwrap());
        assert!(!admissible(&e("x"), iv(-1.0, 1.0), &env()).unwrap());
        assert!(admissible(&e("x"), iv(1.0, 2.0), &env()).unwrap());
        // h' vanishes inside even though h does not
        assert!(!admissible(&e("x^2 + 1"), iv(-1.0, 1.0), &env()).unwrap());
    }

    #[test]
    fn pompeiu_root_for_square() {
        let sol = pompeiu_xi(&e("x^2"), 1.0, 2.0, &env()).unwrap();
        assert_eq!(sol.xi_roots.len(), 1);
        assert!((sol.lhs_value + 2.0).abs() < 1e-14);
        assert!((sol.xi_roots[0] - 2.0f64.sqrt()).abs() <= 1e-10);
        assert!(sol.residuals[0].abs() <= 1e-10 * (1.0 + sol.lhs_value.abs()));
        assert!(!sol.all_solutions);
    }

    #[test]
    fn linear_families_solve_identically() {
        let envc = ParamEnv::new().with("c", 2.0);
        let f = e("c*x");
        let sol = pompeiu_xi(&f, 1.0, 2.0, &envc).unwrap();
        assert!(sol.all_solutions);
        assert!(sol.xi_roots.is_empty());

        let f = e("c*x - 1");
        let sol = pompeiu_xi(&f, 1.0, 2.0, &envc).unwrap();
        assert!(sol.all_solutions);
        assert!((sol.lhs_value + 1.0).abs() <= 1e-14);
    }

    #[test]
    fn boggio_worked_example() {
        // f = x, h = x^2 - 4x + 4 on [-1, 1]: secant value 5/4, root 1/2
        let sol = boggio_xi(&e("x"), &e("x^2-4*x+4"), -1.0, 1.0, &env()).unwrap();
        assert!((sol.lhs_value - 1.25).abs() <= 1e-14);
        assert_eq!(sol.xi_roots.len(), 1);
        assert!((sol.xi_roots[0] - 0.5).abs() <= 1e-10, "xi = {}", sol.xi_roots[0]);
        assert!(sol.residuals[0].abs() <= 1e-10 * (1.0 + sol.lhs_value.abs()));
    }

    #[test]
    fn boggio_power_weight() {
        // h = x^2, f = x on [1,2]: xi/2 = 2/3 so xi = 4/3
        let sol = boggio_xi(&e("x"), &e("x^2"), 1.0, 2.0, &env()).unwrap();
        assert!((sol.lhs_value - 2.0 / 3.0).abs() <= 1e-14);
        assert_eq!(sol.xi_roots.len(), 1);
        assert!((sol.xi_roots[0] - 4.0 / 3.0).abs() <= 1e-10);
    }

    #[test]
    fn boggio_with_identity_weight_matches_pompeiu() {
        let cases: Vec<(Expr, f64, f64)> = vec![
            (e("x^2"), 1.0, 2.0),
            (e("x^2"), 0.5, 3.0),
            (e("x^3"), 1.0, 2.0),
            (e("exp(x)"), 0.5, 1.5),
            (e("1/x"), 1.0, 3.0),
            (e("x^2 + 3*x"), 1.0, 4.0),
            (e("ln(x)"), 1.0, 3.0),
            (e("x^2 - x"), 2.0, 5.0),
            (e("sqrt(x)"), 1.0, 4.0),
            (e("x^3 - x"), 1.5, 2.5),
            (e("exp(-x)"), 1.0, 2.0),
            (e("x^2"), 2.0, 2.5),
            (e("x*ln(x)"), 1.5, 3.0),
            (e("x^4"), 1.0, 1.5),
            (e("2*x^2 - 1"), 1.0, 2.0),
            (e("x + 1/x"), 0.5, 2.0),
            (e("x^2 + 0.1*x^3"), 1.0, 2.0),
            (e("3 - x^2"), 0.5, 1.2),
            (e("exp(0.5*x)"), 1.0, 3.0),
            (e("x^2 + sin(x)"), 1.0, 2.0),
        ];
        let h = e("x");
        for (f, x1, x2) in cases {
            let a = pompeiu_xi(&f, x1, x2, &env()).unwrap();
            let b = boggio_xi(&f, &h, x1, x2, &env()).unwrap();
            assert_eq!(a.xi_roots.len(), b.xi_roots.len(), "{f}: root count");
            for (ra, rb) in a.xi_roots.iter().zip(&b.xi_roots) {
                assert!((ra - rb).abs() <= 1e-10, "{f}: {ra} vs {rb}");
            }
        }
    }

    #[test]
    fn boggio_rejects_equal_weight_values() {
        // h symmetric about 1.5 has h(1) = h(2)
        let res = boggio_xi(&e("x"), &e("(x-1.5)^2"), 1.0, 2.0, &env());
        assert!(matches!(res, Err(Error::Precondition(_))));
    }

    #[test]
    fn monotonicity_classification() {
        // h = 1 reduces to ordinary monotonicity
        assert_eq!(
            h_monotonicity(&e("x"), &e("1"), iv(0.0, 1.0), &env()).unwrap(),
            HMonotonicity::HIncreasing
        );
        assert_eq!(
            h_monotonicity(&e("-x"), &e("1"), iv(0.0, 1.0), &env()).unwrap(),
            HMonotonicity::HDecreasing
        );
        // h = x, f = x^2: f/h = x increasing
        assert_eq!(
            h_monotonicity(&e("x^2"), &e("x"), iv(1.0, 2.0), &env()).unwrap(),
            HMonotonicity::HIncreasing
        );
        // f = h degenerates to zero and classifies as increasing
        assert_eq!(
            h_monotonicity(&e("x"), &e("x"), iv(1.0, 2.0), &env()).unwrap(),
            HMonotonicity::HIncreasing
        );
        // mixed class
        assert_eq!(
            h_monotonicity(&e("sin(3*x)"), &e("1"), iv(0.0, 3.0), &env()).unwrap(),
            HMonotonicity::Neither
        );
        // negative h rejected
        assert!(h_monotonicity(&e("x"), &e("-1"), iv(0.0, 1.0), &env()).is_err());
    }
}
