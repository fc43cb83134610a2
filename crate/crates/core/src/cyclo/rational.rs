//! Exact rationals with an `i64` fast path that spills into `BigRational`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A reduced fraction with positive denominator. Zero is `0/1`.
///
/// Values whose parts fit in `i64` (excluding `i64::MIN`) are always stored
/// as `Small`, so structural equality is value equality. Build values through
/// the constructors, not the variants.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    /// `(numerator, denominator)` when both fit in an `i64`.
    pub(crate) fn as_small(&self) -> Option<(i64, i64)> {
        match self {
            Rational::Small(a, b) => Some((*a, *b)),
            Rational::Big(_) => None,
        }
    }

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(v: i64) -> Self {
        if v == i64::MIN {
            return Self::from_i128(v as i128, 1);
        }
        Rational::Small(v, 1)
    }

    /// Builds `num/den`, reducing. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    pub(crate) fn from_i128(num: i128, den: i128) -> Self {
        if den == 1 {
            if let Ok(a) = i64::try_from(num) {
                if a != i64::MIN {
                    return Rational::Small(a, 1);
                }
            }
        }
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rational::Small(a, b),
            _ => Rational::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new keeps values reduced with a positive denominator.
        if let (Some(a), Some(b)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if a != i64::MIN {
                return Rational::Small(a, b);
            }
        }
        Rational::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(a, _) => BigInt::from(*a),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, b) => BigInt::from(*b),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(a, _) => *a < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(a, b) => Some(Self::from_i128(*b as i128, *a as i128)),
            Rational::Big(r) => Some(Self::from_big(r.recip())),
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(0, _), _) => o.clone(),
            (_, Rational::Small(0, _)) => self.clone(),
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) if s != i64::MIN => Rational::Small(s, 1),
                _ => Self::from_i128(*a as i128 + *c as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Self::ZERO,
            (Rational::Small(1, 1), _) => o.clone(),
            (_, Rational::Small(1, 1)) => self.clone(),
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) if p != i64::MIN => Rational::Small(p, 1),
                _ => Self::from_i128(*a as i128 * *c as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * c, b * d)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            Rational::Small(a, b) => Rational::Small(-a, *b),
            Rational::Big(r) => Self::from_big(-(**r).clone()),
        }
    }

    /// Decimal strings for numerator and denominator.
    pub fn to_string_pair(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }

    /// Parses decimal numerator and denominator strings.
    pub fn parse_pair(num: &str, den: &str) -> Option<Self> {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigints(n, d))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Rational::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(a, 1) => write!(f, "{a}"),
            Rational::Small(a, b) => write!(f, "{a}/{b}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl From<&Rational> for BigRational {
    fn from(r: &Rational) -> Self {
        r.to_big()
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        self.add_ref(o)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        self.add_ref(&o.neg_ref())
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        self.mul_ref(o)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        self.add_ref(&o)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self.add_ref(&o.neg_ref())
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        self.mul_ref(&o)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, o: &Rational) {
        *self = self.add_ref(&o.neg_ref());
    }
}
