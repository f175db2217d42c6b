//! Single-variable expression DSL: parsing, evaluation and symbolic
//! differentiation.
//!
//! Expressions are trees over one free variable `x` plus named scalar
//! parameters. They are immutable after construction and safe to share
//! between threads.

mod parser;

pub use parser::parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Unary operations. `Sign` is produced by differentiation of `abs`
/// (with `sign(0) = 0`) and is also accepted by the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Abs,
    Sign,
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Abs => "abs",
            UnaryOp::Sign => "sign",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Expression AST over one free variable `x` and named parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Param(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

/// Map from parameter name to value. Names are unique by construction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamEnv {
    map: BTreeMap<String, f64>,
}

impl ParamEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.map.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.map.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.map.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl FromIterator<(String, f64)> for ParamEnv {
    fn from_iter<T: IntoIterator<Item = (String, f64)>>(iter: T) -> Self {
        Self {
            map: iter.into_iter().collect(),
        }
    }
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn param(name: &str) -> Expr {
        Expr::Param(name.to_string())
    }

    /// Evaluate at `x` with all parameters bound in `env`.
    pub fn eval(&self, x: f64, env: &ParamEnv) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Param(name) => env
                .get(name)
                .ok_or_else(|| Error::UnboundParam(name.clone()))?,
            Expr::Unary(op, a) => {
                let u = a.eval(x, env)?;
                match op {
                    UnaryOp::Neg => -u,
                    UnaryOp::Abs => u.abs(),
                    UnaryOp::Sign => sign(u),
                    UnaryOp::Exp => u.exp(),
                    UnaryOp::Ln => {
                        if u <= 0.0 {
                            return Err(Error::Domain(format!("ln of non-positive value {u}")));
                        }
                        u.ln()
                    }
                    UnaryOp::Sin => u.sin(),
                    UnaryOp::Cos => u.cos(),
                    UnaryOp::Sqrt => {
                        if u < 0.0 {
                            return Err(Error::Domain(format!("sqrt of negative value {u}")));
                        }
                        u.sqrt()
                    }
                }
            }
            Expr::Binary(op, a, b) => {
                let l = a.eval(x, env)?;
                let r = b.eval(x, env)?;
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => {
                        if r == 0.0 {
                            return Err(Error::Domain("division by zero".into()));
                        }
                        l / r
                    }
                    BinOp::Pow => eval_pow(l, r)?,
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("non-finite result ({v})")))
        }
    }

    /// Symbolic derivative with respect to `x`. Constant subtrees are folded;
    /// `abs` differentiates to `sign` (undefined at the kink, `sign(0) = 0`).
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Param(_) => Expr::Const(0.0),
            Expr::Var => Expr::Const(1.0),
            Expr::Unary(op, a) => {
                let da = a.differentiate();
                match op {
                    UnaryOp::Neg => neg(da),
                    UnaryOp::Abs => mul(unary(UnaryOp::Sign, (**a).clone()), da),
                    UnaryOp::Sign => Expr::Const(0.0),
                    UnaryOp::Exp => mul(unary(UnaryOp::Exp, (**a).clone()), da),
                    UnaryOp::Ln => div(da, (**a).clone()),
                    UnaryOp::Sin => mul(unary(UnaryOp::Cos, (**a).clone()), da),
                    UnaryOp::Cos => neg(mul(unary(UnaryOp::Sin, (**a).clone()), da)),
                    UnaryOp::Sqrt => div(
                        da,
                        mul(Expr::Const(2.0), unary(UnaryOp::Sqrt, (**a).clone())),
                    ),
                }
            }
            Expr::Binary(op, a, b) => {
                let (a, b) = (&**a, &**b);
                let da = a.differentiate();
                let db = b.differentiate();
                match op {
                    BinOp::Add => add(da, db),
                    BinOp::Sub => sub(da, db),
                    BinOp::Mul => add(mul(da, b.clone()), mul(a.clone(), db)),
                    BinOp::Div => div(
                        sub(mul(da, b.clone()), mul(a.clone(), db)),
                        mul(b.clone(), b.clone()),
                    ),
                    BinOp::Pow => match b {
                        // d a^n = n a^(n-1) a'
                        Expr::Const(n) => mul(
                            mul(Expr::Const(*n), pow(a.clone(), Expr::Const(n - 1.0))),
                            da,
                        ),
                        // d a^b = a^b (b' ln a + b a'/a), requires a > 0 at evaluation
                        _ => mul(
                            pow(a.clone(), b.clone()),
                            add(
                                mul(db, unary(UnaryOp::Ln, a.clone())),
                                mul(b.clone(), div(da, a.clone())),
                            ),
                        ),
                    },
                }
            }
        }
    }

    /// Names of all parameters appearing in the tree.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Param(name) => out.push(name.clone()),
            Expr::Unary(_, a) => a.collect_params(out),
            Expr::Binary(_, a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            _ => {}
        }
    }

    /// Replace every parameter with its value from `env`, folding constants.
    /// Parameters missing from `env` are left in place.
    pub fn bind(&self, env: &ParamEnv) -> Expr {
        match self {
            Expr::Param(name) => match env.get(name) {
                Some(v) => Expr::Const(v),
                None => self.clone(),
            },
            Expr::Unary(op, a) => unary(*op, a.bind(env)),
            Expr::Binary(op, a, b) => binary(*op, a.bind(env), b.bind(env)),
            other => other.clone(),
        }
    }
}

fn eval_pow(base: f64, exp: f64) -> Result<f64> {
    if base > 0.0 {
        Ok(base.powf(exp))
    } else if base == 0.0 {
        if exp > 0.0 {
            Ok(0.0)
        } else if exp == 0.0 {
            Ok(1.0)
        } else {
            Err(Error::Domain("0 raised to a negative power".into()))
        }
    } else {
        // negative base: only integer exponents are defined
        if exp.fract() == 0.0 && exp.abs() < 1e15 {
            Ok(base.powf(exp))
        } else {
            Err(Error::Domain(format!(
                "negative base {base} with non-integer exponent {exp}"
            )))
        }
    }
}

// Smart constructors with constant folding. Folding is skipped whenever the
// folded value would be non-finite or outside the operation's domain.

pub(crate) fn unary(op: UnaryOp, a: Expr) -> Expr {
    if let Expr::Const(v) = a {
        let folded = match op {
            UnaryOp::Neg => Some(-v),
            UnaryOp::Abs => Some(v.abs()),
            UnaryOp::Sign => Some(sign(v)),
            UnaryOp::Exp => Some(v.exp()),
            UnaryOp::Ln => (v > 0.0).then(|| v.ln()),
            UnaryOp::Sin => Some(v.sin()),
            UnaryOp::Cos => Some(v.cos()),
            UnaryOp::Sqrt => (v >= 0.0).then(|| v.sqrt()),
        };
        if let Some(f) = folded {
            if f.is_finite() {
                return Expr::Const(f);
            }
        }
    }
    if op == UnaryOp::Neg {
        if let Expr::Unary(UnaryOp::Neg, inner) = a {
            return *inner;
        }
    }
    Expr::Unary(op, Box::new(a))
}

pub(crate) fn binary(op: BinOp, a: Expr, b: Expr) -> Expr {
    match op {
        BinOp::Add => add(a, b),
        BinOp::Sub => sub(a, b),
        BinOp::Mul => mul(a, b),
        BinOp::Div => div(a, b),
        BinOp::Pow => pow(a, b),
    }
}

fn is_const(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Const(c) if *c == v)
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        let s = x + y;
        if s.is_finite() {
            return Expr::Const(s);
        }
    }
    if is_const(&a, 0.0) {
        return b;
    }
    if is_const(&b, 0.0) {
        return a;
    }
    Expr::Binary(BinOp::Add, Box::new(a), Box::new(b))
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        let s = x - y;
        if s.is_finite() {
            return Expr::Const(s);
        }
    }
    if is_const(&b, 0.0) {
        return a;
    }
    if is_const(&a, 0.0) {
        return neg(b);
    }
    Expr::Binary(BinOp::Sub, Box::new(a), Box::new(b))
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        let s = x * y;
        if s.is_finite() {
            return Expr::Const(s);
        }
    }
    if is_const(&a, 0.0) || is_const(&b, 0.0) {
        return Expr::Const(0.0);
    }
    if is_const(&a, 1.0) {
        return b;
    }
    if is_const(&b, 1.0) {
        return a;
    }
    Expr::Binary(BinOp::Mul, Box::new(a), Box::new(b))
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        if *y != 0.0 {
            let s = x / y;
            if s.is_finite() {
                return Expr::Const(s);
            }
        }
    }
    if is_const(&b, 1.0) {
        return a;
    }
    if is_const(&a, 0.0) {
        return Expr::Const(0.0);
    }
    Expr::Binary(BinOp::Div, Box::new(a), Box::new(b))
}

pub(crate) fn pow(a: Expr, b: Expr) -> Expr {
    if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
        if let Ok(s) = eval_pow(*x, *y) {
            if s.is_finite() {
                return Expr::Const(s);
            }
        }
    }
    if is_const(&b, 1.0) {
        return a;
    }
    if is_const(&b, 0.0) {
        return Expr::Const(1.0);
    }
    Expr::Binary(BinOp::Pow, Box::new(a), Box::new(b))
}

pub(crate) fn neg(a: Expr) -> Expr {
    unary(UnaryOp::Neg, a)
}

/// The Pompeiu deviation `f - x f'`, the quantity whose norms drive the
/// deviation-based bounds on the Pompeiu–Chebyshev functional.
pub fn pompeiu_deviation(f: &Expr) -> Expr {
    sub(f.clone(), mul(Expr::Var, f.differentiate()))
}

/// The Boggio deviation `h f' - f h'`. With `h(x) = x` this equals the
/// negated Pompeiu deviation.
pub fn boggio_deviation(f: &Expr, h: &Expr) -> Expr {
    sub(
        mul(h.clone(), f.differentiate()),
        mul(f.clone(), h.differentiate()),
    )
}

impl fmt::Display for Expr {
    /// Fully parenthesized form; parsing the output reproduces the value of
    /// the expression exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Var => write!(f, "x"),
            Expr::Param(name) => write!(f, "{name}"),
            Expr::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Expr::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

#[cfg(test)]
mod tests;
