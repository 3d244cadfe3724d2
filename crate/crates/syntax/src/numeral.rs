use crate::expr::Expr;

fn one() -> Expr {
    Expr::constant("1")
}

fn plus(a: Expr, b: Expr) -> Expr {
    Expr::app("+", vec![a, b])
}

fn times(a: Expr, b: Expr) -> Expr {
    Expr::app("*", vec![a, b])
}

/// Documented bound on the fitted slope of `length(numeral(n))` against `log2 n`.
///
/// Each binary digit costs `·(1+1)`, six tokens, plus `+1` when it is set and
/// a pair of parentheses when the doubled operand is a sum: ten at worst.
pub const NUMERAL_LENGTH_CONSTANT: f64 = 10.0;

/// Closed term for `n` built by doubling and adding one, most significant bit first.
///
/// 0 through 3 are `0`, `1`, `1+1`, `1+1+1`; larger values are
/// `numeral(n/2)·(1+1)` followed by `+1` when `n` is odd.
pub fn numeral(n: u64) -> Expr {
    match n {
        0 => Expr::constant("0"),
        1 => one(),
        2 => plus(one(), one()),
        3 => plus(plus(one(), one()), one()),
        _ => {
            let two = plus(one(), one());
            let doubled = times(numeral(n / 2), two);
            if n % 2 == 1 {
                plus(doubled, one())
            } else {
                doubled
            }
        }
    }
}
