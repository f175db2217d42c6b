use super::*;
use crate::error::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn eval_str(text: &str, x: f64) -> f64 {
    parse(text).unwrap().eval(x, &ParamEnv::new()).unwrap()
}

#[test]
fn parse_and_evaluate_basics() {
    assert_eq!(eval_str("x^2 - 4*x + 4", 0.0), 4.0);
    assert_eq!(eval_str("x^2-4*x+4", 0.5), 2.25);
    assert_eq!(eval_str("ln(x)", 1.0), 0.0);
    assert_eq!(eval_str("abs(x)", -3.0), 3.0);

    let env = ParamEnv::new().with("c", 3.0);
    let e = parse("c*x - 1").unwrap();
    assert_eq!(e.eval(1.0, &env).unwrap(), 2.0);
}

#[test]
fn precedence_and_associativity() {
    // ^ binds tighter than unary minus, unary minus tighter than *
    assert_eq!(eval_str("-x^2", 3.0), -9.0);
    assert_eq!(eval_str("-2*3", 0.0), -6.0);
    assert_eq!(eval_str("2^-2", 0.0), 0.25);
    // right-associative power: 2^(3^2) = 512
    assert_eq!(eval_str("2^3^2", 0.0), 512.0);
    assert_eq!(eval_str("2*x+1", 2.0), 5.0);
}

#[test]
fn division_by_zero_is_a_domain_error() {
    let e = parse("1/x").unwrap();
    assert!(matches!(
        e.eval(0.0, &ParamEnv::new()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn domain_errors() {
    assert!(parse("ln(x)")
        .unwrap()
        .eval(-1.0, &ParamEnv::new())
        .is_err());
    assert!(parse("sqrt(x)")
        .unwrap()
        .eval(-0.5, &ParamEnv::new())
        .is_err());
    // non-integer power of a negative base
    assert!(parse("x^0.5").unwrap().eval(-2.0, &ParamEnv::new()).is_err());
    // 0^negative
    assert!(parse("x^-1").unwrap().eval(0.0, &ParamEnv::new()).is_err());
}

#[test]
fn parse_errors_carry_offsets() {
    match parse("1 + ") {
        Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
        other => panic!("expected parse error, got {other:?}"),
    }
    match parse("foo(x)") {
        Err(Error::UnknownFunction { offset, name }) => {
            assert_eq!(offset, 0);
            assert_eq!(name, "foo");
        }
        other => panic!("expected unknown function, got {other:?}"),
    }
    assert!(parse("(1 + 2").is_err());
    assert!(parse("1 2").is_err());
}

#[test]
fn unbound_parameter_is_reported() {
    let e = parse("c*x").unwrap();
    assert!(matches!(
        e.eval(1.0, &ParamEnv::new()),
        Err(Error::UnboundParam(n)) if n == "c"
    ));
}

#[test]
fn derivative_examples() {
    let env = ParamEnv::new().with("c", 2.5);
    let d = parse("x^2-4*x+4").unwrap().differentiate();
    for x in [-1.0, 0.0, 0.5, 2.0, 3.7] {
        assert_eq!(d.eval(x, &env).unwrap(), 2.0 * x - 4.0);
    }
    let d = parse("c*x - 1").unwrap().differentiate();
    assert_eq!(d.eval(10.0, &env).unwrap(), 2.5);
    let d = parse("ln(x)").unwrap().differentiate();
    assert_eq!(d.eval(2.0, &env).unwrap(), 0.5);
}

#[test]
fn pompeiu_deviation_examples() {
    let env = ParamEnv::new().with("c", 4.0);
    // f = c*x - 1 has deviation identically -1
    let dev = pompeiu_deviation(&parse("c*x - 1").unwrap());
    for i in 0..=16 {
        let x = 1.0 + i as f64 / 16.0;
        assert!((dev.eval(x, &env).unwrap() + 1.0).abs() < 1e-15);
    }
    // f = x has deviation 0
    let dev = pompeiu_deviation(&parse("x").unwrap());
    assert_eq!(dev.eval(3.0, &env).unwrap(), 0.0);
    // f = x^2 has deviation -x^2
    let dev = pompeiu_deviation(&parse("x^2").unwrap());
    for x in [0.5, 1.0, 2.0] {
        assert!((dev.eval(x, &env).unwrap() + x * x).abs() < 1e-15);
    }
}

#[test]
fn boggio_deviation_examples() {
    let env = ParamEnv::new();
    let f = parse("x^3 - x").unwrap();
    // f = h gives 0 by antisymmetry
    let dev = boggio_deviation(&f, &f);
    for x in [0.3, 1.1, 2.9] {
        assert!(dev.eval(x, &env).unwrap().abs() < 1e-12);
    }
    // h(x) = x specializes to the negated Pompeiu deviation
    let h = parse("x").unwrap();
    let dev_b = boggio_deviation(&f, &h);
    let dev_p = pompeiu_deviation(&f);
    for i in 0..64 {
        let x = -2.0 + 4.0 * (i as f64 + 0.5) / 64.0;
        let b = dev_b.eval(x, &env).unwrap();
        let p = dev_p.eval(x, &env).unwrap();
        assert!((b + p).abs() <= 1e-12 * (1.0 + p.abs()), "x={x} b={b} p={p}");
    }
    // f = x, h = x^2-4x+4 gives 4 - x^2
    let dev = boggio_deviation(&parse("x").unwrap(), &parse("x^2-4*x+4").unwrap());
    for x in [-1.0, 0.0, 0.5, 1.0] {
        let v = dev.eval(x, &env).unwrap();
        assert!((v - (4.0 - x * x)).abs() < 1e-14, "x={x} v={v}");
    }
}

/// Expression corpus with an interval on which each is smooth.
pub(crate) fn corpus() -> Vec<(&'static str, f64, f64)> {
    vec![
        ("x^2 - 4*x + 4", -2.0, 2.0),
        ("c*x - 1", 0.5, 3.0),
        ("ln(x)", 0.5, 3.0),
        ("exp(x)", -2.0, 2.0),
        ("sin(x)*cos(x)", -3.0, 3.0),
        ("sqrt(x + 2)", -1.5, 4.0),
        ("1/x", 0.4, 3.0),
        ("x^3 - 2*x^2 + 0.5*x", -2.0, 2.0),
        ("exp(-x^2)", -2.0, 2.0),
        ("x*ln(x)", 0.3, 4.0),
        ("sin(x^2)", -2.0, 2.0),
        ("abs(x) + x^2", 0.1, 2.0),
        ("(x + 1)/(x^2 + 1)", -3.0, 3.0),
        ("x^1.5", 0.2, 5.0),
        ("exp(0.5*x)*sin(x)", -2.0, 2.0),
        ("c*exp(x) + x^2", -1.0, 1.0),
    ]
}

#[test]
fn derivative_matches_central_differences() {
    let env = ParamEnv::new().with("c", 1.7);
    let h = 1e-6;
    for (text, lo, hi) in corpus() {
        let e = parse(text).unwrap();
        let d = e.differentiate();
        for i in 0..64 {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / 64.0;
            let sym = d.eval(x, &env).unwrap();
            let fd = (e.eval(x + h, &env).unwrap() - e.eval(x - h, &env).unwrap()) / (2.0 * h);
            assert!(
                (sym - fd).abs() <= 1e-6 * (1.0 + sym.abs()),
                "{text} at x={x}: symbolic {sym} vs central {fd}"
            );
        }
    }
}

fn random_expr(rng: &mut StdRng, depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0u8..4) {
            0 => Expr::Const(rng.gen_range(-3.0..3.0)),
            1 | 2 => Expr::Var,
            _ => Expr::Param("c".into()),
        };
    }
    match rng.gen_range(0u8..10) {
        0 => add(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        1 => sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        2 | 3 => mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        // denominator kept away from zero
        4 => div(
            random_expr(rng, depth - 1),
            add(
                Expr::Const(2.5),
                unary(UnaryOp::Cos, random_expr(rng, depth - 1)),
            ),
        ),
        5 => pow(
            random_expr(rng, depth - 1),
            Expr::Const(rng.gen_range(0i32..4) as f64),
        ),
        6 => unary(UnaryOp::Neg, random_expr(rng, depth - 1)),
        7 => unary(UnaryOp::Abs, random_expr(rng, depth - 1)),
        8 => unary(UnaryOp::Sin, random_expr(rng, depth - 1)),
        _ => unary(UnaryOp::Cos, random_expr(rng, depth - 1)),
    }
}

#[test]
fn print_parse_round_trip_is_exact() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let env = ParamEnv::new().with("c", -0.75);
    for _ in 0..100 {
        let e = random_expr(&mut rng, 4);
        let text = e.to_string();
        let back = parse(&text).unwrap_or_else(|err| panic!("reparse of `{text}` failed: {err}"));
        for i in 0..32 {
            let x = -2.0 + 4.0 * i as f64 / 31.0;
            let a = e.eval(x, &env).unwrap();
            let b = back.eval(x, &env).unwrap();
            assert!(
                a == b || (a.is_nan() && b.is_nan()),
                "`{text}` differs at x={x}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn constant_folding_in_derivatives() {
    // d/dx (c*x - 1) should fold to the bare parameter
    let d = parse("c*x - 1").unwrap().differentiate();
    assert_eq!(d, Expr::Param("c".into()));
    let d = parse("3*x").unwrap().differentiate();
    assert_eq!(d, Expr::Const(3.0));
}
