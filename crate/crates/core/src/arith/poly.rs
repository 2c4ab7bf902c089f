//! Dense univariate polynomials over the integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_error, ArithError};

/// A polynomial in `q` with integer coefficients, lowest degree first.
///
/// The coefficient vector never has trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Multiplies by `q^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Divides by `q^k`; the low coefficients must vanish.
    pub fn shr(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        ZPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *a += b;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a -= b;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide each of them.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lb = b.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let shift = top - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[shift + j] -= &lr * bc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::from_coeffs(r)
    }

    /// Exact quotient `self / b` in `Z[q]`. Panics if the division is not exact.
    pub fn div_exact(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        if db == 0 {
            return self.div_scalar(&b.coeffs[0]);
        }
        let da = self.degree().unwrap();
        assert!(da >= db, "inexact polynomial division");
        let lb = b.lead().unwrap();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &qk * bc;
            }
            quot[k] = qk;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        Self::from_coeffs(quot)
    }

    /// Primitive gcd over `Q[q]`, normalized to positive leading coefficient.
    ///
    /// Returns the zero polynomial only if both inputs are zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (mut x, mut y) = if a.coeffs.len() >= b.coeffs.len() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !y.is_zero() {
            if y.is_constant() {
                return Self::one();
            }
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive();
        }
        x.primitive()
    }

    /// Value at an integer point.
    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, BigRational::from_integer(c.clone())))
            .collect();
        f.write_str(&format_laurent(&terms))
    }
}

/// Formats `sum c_e q^e` in ascending exponent order, e.g. `1-q^-2+3/2*q`.
pub(crate) fn format_laurent(terms: &[(i64, BigRational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let coeff = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        match (*e, abs.is_one()) {
            (0, _) => out.push_str(&coeff),
            (1, true) => out.push('q'),
            (e, true) => out.push_str(&format!("q^{e}")),
            (1, false) => out.push_str(&format!("{coeff}*q")),
            (e, false) => out.push_str(&format!("{coeff}*q^{e}")),
        }
    }
    out
}

/// Parses the output of [`format_laurent`] (and a little more: spaces, explicit
/// `^1`, repeated exponents) into sorted `(exponent, coefficient)` pairs.
pub(crate) fn parse_laurent(input: &str) -> Result<Vec<(i64, BigRational)>, ArithError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_error(input, "empty expression"));
    }
    let bytes = s.as_bytes();
    let mut terms: Vec<(i64, BigRational)> = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = BigRational::one();
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(parse_error(input, "expected '+' or '-' between terms"));
        }
        // term ends at the next '+'/'-' that does not follow '^'
        let start = pos;
        while pos < bytes.len() {
            let ch = bytes[pos];
            if (ch == b'+' || ch == b'-') && pos > start && bytes[pos - 1] != b'^' {
                break;
            }
            pos += 1;
        }
        let term = &s[start..pos];
        let (coeff_part, exp) = match term.find('q') {
            None => (term, 0i64),
            Some(qi) => {
                let rest = &term[qi + 1..];
                let exp = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<i64>()
                        .map_err(|_| parse_error(input, format!("bad exponent {e:?}")))?
                } else {
                    return Err(parse_error(input, format!("bad term {term:?}")));
                };
                let c = term[..qi].strip_suffix('*').unwrap_or(&term[..qi]);
                (c, exp)
            }
        };
        let coeff = if coeff_part.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coeff_part).ok_or_else(|| parse_error(input, "bad coefficient"))?
        };
        terms.push((exp, sign * coeff));
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(i64, BigRational)> = Vec::new();
    for (e, c) in terms {
        match merged.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => merged.push((e, c)),
        }
    }
    merged.retain(|(_, c)| !c.is_zero());
    Ok(merged)
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = n.parse::<BigInt>().ok()?;
            let d = d.parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
    }
}

/// Clears denominators of a Laurent polynomial: returns `(p, shift, d)` with
/// `sum c_e q^e = q^shift * p / d`, `p(0) != 0`, `d > 0`.
pub(crate) fn laurent_to_zpoly(terms: &[(i64, BigRational)]) -> (ZPoly, i64, BigInt) {
    if terms.is_empty() {
        return (ZPoly::zero(), 0, BigInt::one());
    }
    let low = terms.iter().map(|t| t.0).min().unwrap();
    let high = terms.iter().map(|t| t.0).max().unwrap();
    let mut den = BigInt::one();
    for (_, c) in terms {
        den = den.lcm(c.denom());
    }
    let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
    for (e, c) in terms {
        coeffs[(e - low) as usize] += c.numer() * (&den / c.denom());
    }
    (ZPoly::from_coeffs(coeffs), low, den)
}

impl PartialOrd for ZPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn gcd_of_products() {
        // (1+q)(1-q+q^2) and (1+q)(2+q)
        let a = p(&[1, 1]).mul(&p(&[1, -1, 1]));
        let b = p(&[1, 1]).mul(&p(&[2, 1]));
        assert_eq!(ZPoly::gcd(&a, &b), p(&[1, 1]));
        assert_eq!(ZPoly::gcd(&p(&[1, 0, 1]), &p(&[1, 1])), ZPoly::one());
    }

    #[test]
    fn exact_division() {
        let a = p(&[2, 3, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), p(&[2, 1]));
    }

    #[test]
    fn laurent_round_trip() {
        let terms = parse_laurent("1-q^-2+3/2*q^3").unwrap();
        assert_eq!(format_laurent(&terms), "-q^-2+1+3/2*q^3");
        assert_eq!(parse_laurent("q").unwrap().len(), 1);
        assert!(parse_laurent("q^").is_err());
    }
}
