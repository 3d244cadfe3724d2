use lnc_languages::ListCodec;
use lnc_syntax::Expr;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A domain element: a natural number or a quoted expression.
///
/// Naturals that fit in a `u64` are always stored as `Nat`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Nat(u64),
    Big(BigUint),
    Syn(Expr),
}

impl Value {
    pub fn from_big(b: BigUint) -> Value {
        match b.to_u64() {
            Some(n) => Value::Nat(n),
            None => Value::Big(b),
        }
    }

    pub fn to_big(&self) -> Option<BigUint> {
        match self {
            Value::Nat(n) => Some(BigUint::from(*n)),
            Value::Big(b) => Some(b.clone()),
            Value::Syn(_) => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Value::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_number(&self) -> bool {
        !matches!(self, Value::Syn(_))
    }

    pub fn bits(&self) -> u64 {
        match self {
            Value::Nat(n) => u64::from(64 - n.leading_zeros()),
            Value::Big(b) => b.bits(),
            Value::Syn(_) => 0,
        }
    }

    /// The number a value stands for, coding quotations with `codec`.
    pub fn numeric(&self, codec: &ListCodec) -> Option<Value> {
        match self {
            Value::Syn(e) => codec.encode_expr(e).ok().map(Value::from_big),
            v => Some(v.clone()),
        }
    }

    pub fn succ(&self) -> Option<Value> {
        add(self, &Value::Nat(1))
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Nat(n)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Big(b) => write!(f, "{b}"),
            Value::Syn(e) => write!(f, "⌜{e}⌝"),
        }
    }
}

pub fn compare(a: &Value, b: &Value) -> Option<Ordering> {
    match (a, b) {
        (Value::Nat(x), Value::Nat(y)) => Some(x.cmp(y)),
        (Value::Syn(_), _) | (_, Value::Syn(_)) => None,
        _ => Some(a.to_big()?.cmp(&b.to_big()?)),
    }
}

pub fn add(a: &Value, b: &Value) -> Option<Value> {
    match (a, b) {
        (Value::Nat(x), Value::Nat(y)) => Some(match x.checked_add(*y) {
            Some(s) => Value::Nat(s),
            None => Value::Big(BigUint::from(*x) + *y),
        }),
        _ => Some(Value::from_big(a.to_big()? + b.to_big()?)),
    }
}

pub fn mul(a: &Value, b: &Value) -> Option<Value> {
    match (a, b) {
        (Value::Nat(x), Value::Nat(y)) => Some(match x.checked_mul(*y) {
            Some(s) => Value::Nat(s),
            None => Value::Big(BigUint::from(*x) * *y),
        }),
        _ => Some(Value::from_big(a.to_big()? * b.to_big()?)),
    }
}

/// Upper bound on the bit size of `a^b`, or `None` if it does not fit a `u64`.
pub fn pow_bits(a: &Value, b: &Value) -> Option<u64> {
    let base = a.to_big()?;
    if base.is_zero() || base.is_one() {
        return Some(1);
    }
    let e = b.to_big()?.to_u64()?;
    base.bits().checked_mul(e)
}

pub fn pow(a: &Value, b: &Value) -> Option<Value> {
    let base = a.to_big()?;
    if base.is_zero() {
        return Some(Value::Nat(u64::from(b.to_big()?.is_zero())));
    }
    if base.is_one() {
        return Some(Value::Nat(1));
    }
    let e = b.to_big()?.to_u32()?;
    Some(Value::from_big(base.pow(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let m = Value::Nat(u64::MAX);
        let s = add(&m, &Value::Nat(1)).unwrap();
        assert!(matches!(s, Value::Big(_)));
        assert_eq!(s.to_string(), "18446744073709551616");
        assert_eq!(compare(&s, &m), Some(Ordering::Greater));
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&Value::Nat(0), &Value::Nat(0)), Some(Value::Nat(1)));
        assert_eq!(pow(&Value::Nat(2), &Value::Nat(10)), Some(Value::Nat(1024)));
        assert_eq!(pow_bits(&Value::Nat(2), &Value::Nat(100)), Some(200));
    }

    fn normalized(v: &Value) -> bool {
        !matches!(v, Value::Big(b) if b.to_u64().is_some())
    }

    proptest::proptest! {
        #[test]
        fn arithmetic_matches_bigint(x in proptest::num::u64::ANY, y in proptest::num::u64::ANY) {
            let (a, b) = (Value::Nat(x), Value::Nat(y));
            let s = add(&a, &b).unwrap();
            let p = mul(&a, &b).unwrap();
            proptest::prop_assert_eq!(s.to_big().unwrap(), BigUint::from(x) + y);
            proptest::prop_assert_eq!(p.to_big().unwrap(), BigUint::from(x) * y);
            proptest::prop_assert!(normalized(&s) && normalized(&p));
            proptest::prop_assert_eq!(compare(&s, &a), Some(if y == 0 { Ordering::Equal } else { Ordering::Greater }));
        }
    }
}
