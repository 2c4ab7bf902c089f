//! The cyclotomic fields `Q[q]/Phi_l(q)`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{format_laurent, parse_laurent};
use super::{parse_error, ArithError, Field, QField, Regime, ZPoly};

/// The `l`-th cyclotomic polynomial (cached).
pub fn cyclotomic_polynomial(l: u32) -> Arc<ZPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ZPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&l) {
        return p.clone();
    }
    assert!(l >= 1, "cyclotomic polynomial of order 0");
    // q^l - 1 = prod_{d | l} Phi_d
    let mut p = ZPoly::monomial(BigInt::one(), l as usize).sub(&ZPoly::one());
    for d in 1..l {
        if l % d == 0 {
            p = p.div_exact(&cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(l, p.clone());
    p
}

/// An element of `Q[q]/Phi_l(q)`, stored as its remainder of degree `< phi(l)`.
///
/// `l == 0` marks a rational constant not yet bound to any order; such values
/// combine with elements of every order. Combining two different nonzero
/// orders is a configuration error and panics.
#[derive(Clone)]
pub struct Cyclotomic {
    l: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// Reduces an arbitrary polynomial (lowest degree first) modulo `Phi_l`.
    pub fn from_coeffs(l: u32, mut coeffs: Vec<BigRational>) -> Self {
        if l != 0 {
            let phi = cyclotomic_polynomial(l);
            let n = phi.degree().unwrap();
            // Phi_l is monic: eliminate from the top down
            while coeffs.len() > n {
                let top = coeffs.pop().unwrap();
                if top.is_zero() {
                    continue;
                }
                let base = coeffs.len() - n;
                for (j, pc) in phi.coeffs()[..n].iter().enumerate() {
                    if !pc.is_zero() {
                        coeffs[base + j] -= &top * BigRational::from_integer(pc.clone());
                    }
                }
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Cyclotomic { l, coeffs }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn joint_order(&self, other: &Self) -> u32 {
        match (self.l, other.l) {
            (0, b) => b,
            (a, 0) => a,
            (a, b) if a == b => a,
            (a, b) => panic!("scalar regime mismatch: Phi_{a} vs Phi_{b}"),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let l = self.joint_order(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::from_coeffs(l, coeffs)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let l = self.joint_order(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Cyclotomic { l, coeffs: vec![] };
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(l, coeffs)
    }

    fn neg_ref(&self) -> Self {
        Cyclotomic {
            l: self.l,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Quotient and remainder over `Q[q]`; `b` must be nonzero.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    let lb = b[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &r[k + db] / &lb;
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &c * bc;
            }
        }
        quot[k] = c;
    }
    r.truncate(db);
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    (quot, r)
}

fn poly_sub_mul(a: &[BigRational], b: &[BigRational], c: &[BigRational]) -> Vec<BigRational> {
    // a - b*c
    let mut out = a.to_vec();
    if !b.is_empty() && !c.is_empty() {
        let n = b.len() + c.len() - 1;
        if out.len() < n {
            out.resize(n, BigRational::zero());
        }
        for (i, x) in b.iter().enumerate() {
            for (j, y) in c.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.l == other.l || self.is_constant() || self.l == 0 || other.l == 0)
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic { l: 0, coeffs: vec![] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.is_constant() {
            return Cyclotomic {
                l: self.l,
                coeffs: vec![self.coeffs[0].recip()],
            };
        }
        // extended Euclid: s*a + t*Phi = 1, track s only
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.l)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (quot, rem) = divmod(&r0, &r1);
            let s2 = poly_sub_mul(&s0, &quot, &s1);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_l is irreducible, so the last remainder is a nonzero constant
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Self::from_coeffs(self.l, s)
    }

    fn parse(s: &str) -> Result<Self, ArithError> {
        s.parse()
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(BigRational::new(num.into(), den.into()))
    }
}

impl QField for Cyclotomic {
    fn qpow(regime: Regime, k: i64) -> Result<Self, ArithError> {
        let l = match regime {
            Regime::RootOfUnity { l } => l,
            Regime::Generic => {
                return Err(ArithError::RegimeMismatch(
                    "cyclotomic scalars need a root-of-unity regime".into(),
                ))
            }
        };
        Regime::root_of_unity(l)?;
        let e = k.rem_euclid(l as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        let mut x = Self::from_coeffs(l, coeffs);
        x.l = l;
        Ok(x)
    }

    fn regime_hint(&self) -> Option<Regime> {
        (self.l != 0).then_some(Regime::RootOfUnity { l: self.l })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> $trait<&'b Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'b Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.add_ref(b));
forward_binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.mul_ref(b));
forward_binop!(Div, div, |a: &Cyclotomic, b: &Cyclotomic| a.mul_ref(&b.inv()));

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

/// Highest degree first, e.g. `-q-1 mod Phi_3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect();
        f.write_str(&format_laurent(&terms))?;
        if self.l != 0 {
            write!(f, " mod Phi_{}", self.l)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, ArithError> {
        let (expr, l) = match s.rsplit_once("mod") {
            Some((e, m)) => {
                let l = m
                    .trim()
                    .strip_prefix("Phi_")
                    .and_then(|x| x.parse::<u32>().ok())
                    .ok_or_else(|| parse_error(s, "expected 'mod Phi_<l>'"))?;
                Regime::root_of_unity(l)?;
                (e, l)
            }
            None => (s, 0),
        };
        let terms = parse_laurent(expr)?;
        if l == 0 && terms.iter().any(|(e, _)| *e != 0) {
            return Err(parse_error(s, "powers of q need 'mod Phi_<l>'"));
        }
        let mut acc = Cyclotomic { l, coeffs: vec![] };
        for (e, c) in terms {
            let term = if e == 0 {
                Cyclotomic { l, coeffs: vec![c] }
            } else {
                Self::qpow(Regime::RootOfUnity { l }, e)? * Self::constant(c)
            };
            acc = acc + term;
        }
        acc.l = l;
        Ok(acc)
    }
}
