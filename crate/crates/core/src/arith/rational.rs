use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::parse_rational;
use super::{parse_error, ArithError, Field};

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        self.recip()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn parse(s: &str) -> Result<Self, ArithError> {
        parse_rational(s.trim()).ok_or_else(|| parse_error(s, "expected an integer or a/b"))
    }

    /// Scales to coprime integers with a positive first entry.
    fn normalize_vector(entries: &mut [Self]) {
        let mut den = BigInt::one();
        for e in entries.iter().filter(|e| !e.is_zero()) {
            den = den.lcm(e.denom());
        }
        let mut num = BigInt::zero();
        for e in entries.iter().filter(|e| !e.is_zero()) {
            num = num.gcd(&(e.numer() * (&den / e.denom())));
        }
        if num.is_zero() {
            return;
        }
        if entries.iter().find(|e| !e.is_zero()).unwrap().is_negative() {
            num = -num;
        }
        let scale = BigRational::new(den, num);
        for e in entries.iter_mut() {
            if !e.is_zero() {
                *e = &*e * &scale;
            }
        }
    }
}
