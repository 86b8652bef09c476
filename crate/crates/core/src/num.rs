//! Scalars that stay exact when the input is rational and fall back to `f64`
//! otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Relative tolerance used when at least one operand is a float.
pub const FLOAT_TOL: f64 = 1e-12;

/// A scalar that is either an exact rational (with a cached `f64` image) or a float.
#[derive(Clone, Debug)]
pub enum Num {
    Exact(BigRational, f64),
    Float(f64),
}

pub fn q_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator: divide via scaled integers.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Num {
    pub fn exact(q: BigRational) -> Self {
        let f = q_to_f64(&q);
        Num::Exact(q, f)
    }

    pub fn int(v: i64) -> Self {
        Num::exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Num::exact(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn float(v: f64) -> Self {
        Num::Float(v)
    }

    pub fn zero() -> Self {
        Num::int(0)
    }

    pub fn one() -> Self {
        Num::int(1)
    }

    #[inline]
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(_, f) => *f,
            Num::Float(f) => *f,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(..))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Num::Exact(q, _) => Some(q),
            Num::Float(_) => None,
        }
    }

    /// Exact rational image; floats convert through their binary value.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Num::Exact(q, _) => q.clone(),
            Num::Float(f) => BigRational::from_float(*f).unwrap_or_else(BigRational::zero),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Num::Exact(q, _) => q.is_zero(),
            Num::Float(f) => *f == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Num::Exact(q, _) => q.is_positive(),
            Num::Float(f) => *f > 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Num::Exact(q, _) => q.is_negative(),
            Num::Float(f) => *f < 0.0,
        }
    }

    pub fn abs(&self) -> Num {
        match self {
            Num::Exact(q, _) => Num::exact(q.abs()),
            Num::Float(f) => Num::Float(f.abs()),
        }
    }

    pub fn recip(&self) -> Num {
        match self {
            Num::Exact(q, _) => Num::exact(q.recip()),
            Num::Float(f) => Num::Float(1.0 / f),
        }
    }

    /// Equality with exact comparison for rationals and a relative tolerance otherwise.
    pub fn approx_eq(&self, other: &Num) -> bool {
        match (self, other) {
            (Num::Exact(a, _), Num::Exact(b, _)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                (a - b).abs() <= FLOAT_TOL * 1f64.max(a.abs()).max(b.abs())
            }
        }
    }

    /// Total order by value (exact when both sides are exact).
    pub fn cmp_value(&self, other: &Num) -> Ordering {
        match (self, other) {
            (Num::Exact(a, _), Num::Exact(b, _)) => a.cmp(b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        match self {
            Num::Exact(q, _) => q.ceil().to_integer(),
            Num::Float(f) => BigInt::from(f.ceil() as i64),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait<&Num> for &Num {
            type Output = Num;
            fn $method(self, rhs: &Num) -> Num {
                match (self, rhs) {
                    (Num::Exact(a, _), Num::Exact(b, _)) => Num::exact(a $op b),
                    _ => Num::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl std::ops::$trait<Num> for Num {
            type Output = Num;
            fn $method(self, rhs: Num) -> Num {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl std::ops::Neg for &Num {
    type Output = Num;
    fn neg(self) -> Num {
        match self {
            Num::Exact(q, _) => Num::exact(-q),
            Num::Float(f) => Num::Float(-f),
        }
    }
}

/// Structural equality: same representation and same value. Use
/// [`Num::approx_eq`] for the tolerance-aware comparison.
impl PartialEq for Num {
    fn eq(&self, other: &Num) -> bool {
        match (self, other) {
            (Num::Exact(a, _), Num::Exact(b, _)) => a == b,
            (Num::Float(a), Num::Float(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl From<i64> for Num {
    fn from(v: i64) -> Self {
        Num::int(v)
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num::Float(v)
    }
}

impl From<BigRational> for Num {
    fn from(q: BigRational) -> Self {
        Num::exact(q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseNumError(pub String);

impl fmt::Display for ParseNumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a number: `{}`", self.0)
    }
}

impl std::error::Error for ParseNumError {}

/// Integers and `p/q` parse exactly; anything with a decimal point or exponent is a float.
impl FromStr for Num {
    type Err = ParseNumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseNumError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if t.contains(['.', 'e', 'E']) {
            let v: f64 = t.parse().map_err(|_| err())?;
            if !v.is_finite() {
                return Err(err());
            }
            return Ok(Num::Float(v));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Num::exact(BigRational::new(n, d)));
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(Num::exact(BigRational::from_integer(n)))
    }
}

/// Exact values print as `p` or `p/q`; floats use the shortest round-trip form
/// and always carry a decimal point or exponent so they re-parse as floats.
impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(q, _) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Num::Float(v) => write!(f, "{v:?}"),
        }
    }
}

/// Lexicographic comparison of exponent vectors by value.
pub fn cmp_lex(a: &[Num], b: &[Num]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x.approx_eq(y) {
            continue;
        }
        return x.cmp_value(y);
    }
    a.len().cmp(&b.len())
}

/// Component-wise tolerance-aware equality of vectors.
pub fn vec_approx_eq(a: &[Num], b: &[Num]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kinds() {
        assert!("3".parse::<Num>().unwrap().is_exact());
        assert!("-3/6".parse::<Num>().unwrap().approx_eq(&Num::ratio(-1, 2)));
        assert!(!"0.6705".parse::<Num>().unwrap().is_exact());
        assert!("1e-3".parse::<Num>().is_ok());
        assert!("1/0".parse::<Num>().is_err());
        assert!("inf".parse::<Num>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["2", "-7/3", "0.6705", "2.0", "1e-7", "-0.8429"] {
            let n: Num = s.parse().unwrap();
            let back: Num = n.to_string().parse().unwrap();
            assert_eq!(n, back, "{s}");
        }
    }

    #[test]
    fn mixed_arithmetic_degrades_to_float() {
        let a = Num::ratio(1, 3);
        assert!((&a + &a).is_exact());
        assert!(!(&a + &Num::Float(0.5)).is_exact());
    }

    #[test]
    fn tolerance_only_for_floats() {
        assert!(Num::Float(1.0).approx_eq(&Num::Float(1.0 + 1e-14)));
        assert!(!Num::ratio(1, 3).approx_eq(&Num::ratio(10_000_000_000_000_001, 30_000_000_000_000_000)));
    }
}
