//! Rational functions in `q` over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{format_laurent, laurent_to_zpoly, parse_laurent};
use super::{parse_error, ArithError, Field, QField, Regime, ZPoly};

/// `q^shift * num / den` with `num, den` in `Z[q]`.
///
/// Canonical form: `num(0) != 0`, `den(0) > 0`, `num` and `den` coprime in
/// `Q[q]`, and the integer contents of `num` and `den` coprime. Zero is
/// `num = 0, den = 1, shift = 0`. Under these rules two values are equal iff
/// their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn from_poly(p: ZPoly) -> Self {
        Self::from_parts(0, p, ZPoly::one())
    }

    /// Builds `q^shift * num / den` and brings it to canonical form.
    pub fn from_parts(shift: i64, num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let mut shift = shift;
        let vn = num.valuation();
        let vd = den.valuation();
        let mut num = num.shr(vn);
        let mut den = den.shr(vd);
        shift += vn as i64 - vd as i64;
        if !den.is_constant() && !num.is_constant() {
            let g = ZPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.div_scalar(&g);
            den = den.div_scalar(&g);
        }
        if den.constant_term().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { shift, num, den }
    }

    /// The monomial `c * q^k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        Self::from_parts(
            k,
            ZPoly::constant(c.numer().clone()),
            ZPoly::constant(c.denom().clone()),
        )
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a rational point, or `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let ev = |p: &ZPoly| {
            let mut acc = BigRational::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * x + BigRational::from_integer(c.clone());
            }
            acc
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return None;
        }
        if x.is_zero() && self.shift < 0 && !self.num.is_zero() {
            return None;
        }
        let xs = if self.shift >= 0 {
            num_traits::pow(x.clone(), self.shift as usize)
        } else {
            num_traits::pow(x.clone(), (-self.shift) as usize).recip()
        };
        Some(xs * ev(&self.num) / d)
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.num.shl((self.shift - s) as usize);
        let b = other.num.shl((other.shift - s) as usize);
        if self.den == other.den {
            return Self::from_parts(s, a.add(&b), self.den.clone());
        }
        if self.den.is_constant() && other.den.is_constant() {
            let da = self.den.constant_term();
            let db = other.den.constant_term();
            let l = da.lcm(&db);
            let num = a.scale(&(&l / &da)).add(&b.scale(&(&l / &db)));
            return Self::from_parts(s, num, ZPoly::constant(l));
        }
        let num = a.mul(&other.den).add(&b.mul(&self.den));
        Self::from_parts(s, num, self.den.mul(&other.den))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            // product of polynomials with nonzero constant terms: already canonical
            // up to the (trivially coprime) unit denominator
            return RatFunc {
                shift,
                num: self.num.mul(&other.num),
                den: ZPoly::one(),
            };
        }
        // cross-cancel before multiplying to keep degrees down
        let g1 = cancel_gcd(&self.num, &other.den);
        let g2 = cancel_gcd(&other.num, &self.den);
        let (n1, d2) = (self.num.div_exact(&g1), other.den.div_exact(&g1));
        let (n2, d1) = (other.num.div_exact(&g2), self.den.div_exact(&g2));
        Self::from_parts(shift, n1.mul(&n2), d1.mul(&d2))
    }

    fn neg_ref(&self) -> Self {
        RatFunc {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn terms(p: &ZPoly, shift: i64, scale: &BigInt) -> Vec<(i64, BigRational)> {
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (shift + i as i64, BigRational::new(c.clone(), scale.clone())))
            .collect()
    }
}

fn cancel_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_constant() || b.is_constant() {
        ZPoly::one()
    } else {
        ZPoly::gcd(a, b)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            shift: 0,
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc {
            shift: 0,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.constant_term().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc {
            shift: -self.shift,
            num,
            den,
        }
    }

    fn parse(s: &str) -> Result<Self, ArithError> {
        s.parse()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_poly(ZPoly::constant(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::monomial(BigRational::new(num.into(), den.into()), 0)
    }

    /// Scales a vector so every entry is a polynomial in `q` and the entries
    /// share no common polynomial or integer factor.
    fn normalize_vector(entries: &mut [Self]) {
        let nonzero: Vec<&RatFunc> = entries.iter().filter(|e| !e.is_zero()).collect();
        if nonzero.is_empty() {
            return;
        }
        let smin = nonzero.iter().map(|e| e.shift).min().unwrap();
        // lcm of denominators, split into integer and primitive parts
        let mut int_lcm = BigInt::one();
        let mut poly_lcm = ZPoly::one();
        for e in &nonzero {
            int_lcm = int_lcm.lcm(&e.den.content());
            if !e.den.is_constant() {
                let pd = e.den.primitive();
                let g = ZPoly::gcd(&poly_lcm, &pd);
                poly_lcm = poly_lcm.mul(&pd.div_exact(&g));
            }
        }
        let lcm = poly_lcm.scale(&int_lcm);
        let polys: Vec<Option<ZPoly>> = entries
            .iter()
            .map(|e| {
                if e.is_zero() {
                    None
                } else {
                    let p = e.num.mul(&lcm.div_exact(&e.den));
                    Some(p.shl((e.shift - smin) as usize))
                }
            })
            .collect();
        let mut g = ZPoly::zero();
        let mut content = BigInt::zero();
        for p in polys.iter().flatten() {
            if !g.is_one() {
                g = if g.is_zero() { p.primitive() } else { ZPoly::gcd(&g, p) };
            }
        }
        let reduced: Vec<Option<ZPoly>> = polys
            .into_iter()
            .map(|p| p.map(|p| if g.is_one() { p } else { p.div_exact(&g) }))
            .collect();
        for p in reduced.iter().flatten() {
            content = content.gcd(&p.content());
        }
        let first_sign_neg = reduced
            .iter()
            .flatten()
            .next()
            .map(|p| p.lead().unwrap().is_negative())
            .unwrap_or(false);
        if first_sign_neg {
            content = -content;
        }
        for (e, p) in entries.iter_mut().zip(reduced) {
            if let Some(p) = p {
                *e = RatFunc::from_poly(p.div_scalar(&content));
            }
        }
    }
}

impl QField for RatFunc {
    fn qpow(regime: Regime, k: i64) -> Result<Self, ArithError> {
        match regime {
            Regime::Generic => Ok(RatFunc {
                shift: k,
                num: ZPoly::one(),
                den: ZPoly::one(),
            }),
            other => Err(ArithError::RegimeMismatch(format!(
                "rational functions cannot represent q in regime {other}"
            ))),
        }
    }

    fn regime_hint(&self) -> Option<Regime> {
        Some(Regime::Generic)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &'a RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> $trait<&'b RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &'b RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc, b: &RatFunc| a.add_ref(b));
forward_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.mul_ref(b));
forward_binop!(Div, div, |a: &RatFunc, b: &RatFunc| a.mul_ref(&b.inv()));

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

/// Prints `N` or `(N)/(D)` where `D` has constant term 1 and both sides are
/// Laurent polynomials with rational coefficients, e.g. `(1+q^2)/(1-q^3)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let d0 = self.den.constant_term();
        let num = format_laurent(&Self::terms(&self.num, self.shift, &d0));
        if self.den.is_constant() {
            f.write_str(&num)
        } else {
            let den = format_laurent(&Self::terms(&self.den, 0, &d0));
            write!(f, "({num})/({den})")
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFunc {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, ArithError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (n, d) = match t.strip_prefix('(').and_then(|r| r.split_once(")/(")) {
            Some((n, rest)) => {
                let d = rest
                    .strip_suffix(')')
                    .ok_or_else(|| parse_error(s, "unbalanced parentheses"))?;
                (n.to_string(), Some(d.to_string()))
            }
            None => (t.clone(), None),
        };
        let side = |expr: &str| -> Result<RatFunc, ArithError> {
            let (p, shift, d) = laurent_to_zpoly(&parse_laurent(expr)?);
            Ok(RatFunc::from_parts(shift, p, ZPoly::constant(d)))
        };
        let num = side(&n).map_err(|_| parse_error(s, "bad numerator"))?;
        match d {
            None => Ok(num),
            Some(d) => {
                let den = side(&d).map_err(|_| parse_error(s, "bad denominator"))?;
                if den.is_zero() {
                    return Err(parse_error(s, "zero denominator"));
                }
                Ok(num / den)
            }
        }
    }
}
