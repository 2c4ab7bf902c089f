//! The q-commuting graded algebra on the positive roots, its free module of
//! rank `dim L(lambda)`, the Koszul complex with the quantum exterior algebra,
//! and the explicit contracting homotopy.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use super::{Block, Direction, GradedComplex};
use crate::arith::{ArithError, QField, QPowers, Regime, SparseMatrix};
use crate::cartan::{weyl_dim, Root, RootSystem, WeightSpec};

/// Root data of the associated graded algebra: `F_i F_j = Q_ij F_j F_i`
/// with `Q_ij = q^{(beta_i,beta_j)}` for `i < j`.
#[derive(Debug, Clone)]
pub struct GrAlgebraSpec<F> {
    pub roots: Vec<Root>,
    /// `(beta_i, beta_j)`.
    pub pairing: Vec<Vec<i64>>,
    /// Rank of the free module, `dim L(lambda)`.
    pub r: usize,
    pub lambda: String,
    q: QPowers<F>,
}

impl<F: QField> GrAlgebraSpec<F> {
    pub fn n(&self) -> usize {
        self.roots.len()
    }

    pub fn regime(&self) -> Regime {
        self.q.regime()
    }

    /// Exponent of `Q_ij`; `Q_ji = Q_ij^{-1}` and `Q_ii = 1`.
    pub fn q_exp(&self, i: usize, j: usize) -> i64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.pairing[i][j],
            std::cmp::Ordering::Greater => -self.pairing[j][i],
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn q_coeff(&self, i: usize, j: usize) -> F {
        self.q.get(self.q_exp(i, j))
    }

    pub fn qpow(&self, e: i64) -> F {
        self.q.get(e)
    }

    /// `F_{beta_t} . (F^alpha (x) v)`: the new exponent vector and coefficient,
    /// or `None` when `F^l = 0` kills it.
    pub fn act(&self, t: usize, alpha: &[u32]) -> Option<(Vec<u32>, F)> {
        if let Some(l) = self.regime().order() {
            if alpha[t] + 1 >= l {
                return None;
            }
        }
        let e: i64 = (0..t).map(|s| -(alpha[s] as i64) * self.pairing[s][t]).sum();
        let mut a = alpha.to_vec();
        a[t] += 1;
        Some((a, self.q.get(e)))
    }

    fn exponent_cap(&self) -> Option<u32> {
        self.regime().order().map(|l| l - 1)
    }
}

/// The graded algebra and module for a fixed convex order.
pub fn gr_algebra<F: QField>(rs: &RootSystem, lambda: &WeightSpec, regime: Regime) -> Result<GrAlgebraSpec<F>, ArithError> {
    let n = rs.len();
    let pairing = (0..n).map(|i| (0..n).map(|j| rs.pairing(i, j)).collect()).collect::<Vec<Vec<i64>>>();
    let radius = 4 * (pairing.iter().flatten().map(|x: &i64| x.abs()).max().unwrap_or(1) + 1) * 8;
    Ok(GrAlgebraSpec {
        roots: rs.roots().to_vec(),
        pairing,
        r: weyl_dim(rs.datum(), lambda) as usize,
        lambda: lambda.label(),
        q: QPowers::new(regime, radius)?,
    })
}

/// `F^alpha v_k (x) F^beta` with `beta` a 0/1 vector (a wedge monomial).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub v: usize,
    pub alpha: Vec<u32>,
    pub beta: Vec<u8>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.beta.iter().map(|&b| b as usize).sum()
    }

    pub fn key(&self) -> KoszulKey {
        KoszulKey {
            v: self.v,
            gamma: self.alpha.iter().zip(&self.beta).map(|(a, b)| a + *b as u32).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = self.beta.iter().map(|x| x.to_string()).collect();
        write!(f, "F^({})v{} (x) E^({})", a.join(","), self.v + 1, b.join(","))
    }
}

/// Block key: module generator and total exponent `alpha + beta`, both preserved by `d` and `h`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KoszulKey {
    pub v: usize,
    pub gamma: Vec<u32>,
}

impl fmt::Display for KoszulKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gamma.iter().map(|x| x.to_string()).collect();
        write!(f, "v{}:{}", self.v + 1, g.join(","))
    }
}

pub type KoszulElement<F> = BTreeMap<Monomial, F>;

/// `(Omega(alpha,beta,i), omega(alpha,beta,i))`, with `i` zero-based.
pub fn omega_coeffs<F: QField>(spec: &GrAlgebraSpec<F>, alpha: &[u32], beta: &[u8], i: usize) -> (F, F) {
    let big = big_omega(spec, alpha, beta, i);
    let small = if beta[i] == 1 || alpha[i] == 0 {
        F::zero()
    } else {
        let mut a = alpha.to_vec();
        let mut b = beta.to_vec();
        a[i] -= 1;
        b[i] = 1;
        big_omega(spec, &a, &b, i).inv()
    };
    (big, small)
}

fn big_omega<F: QField>(spec: &GrAlgebraSpec<F>, alpha: &[u32], beta: &[u8], i: usize) -> F {
    if beta[i] == 0 || spec.exponent_cap() == Some(alpha[i]) {
        return F::zero();
    }
    let before: u32 = beta[..i].iter().map(|&b| b as u32).sum();
    let e: i64 = (i + 1..spec.n()).map(|s| beta[s] as i64 * spec.q_exp(i, s)).sum::<i64>()
        - (0..i).map(|p| alpha[p] as i64 * spec.q_exp(p, i)).sum::<i64>();
    let x = spec.qpow(e);
    if before % 2 == 0 {
        x
    } else {
        -x
    }
}

/// Number of root coordinates where `alpha + beta` is nonzero (mod `l` at a root of unity).
pub fn norm<F: QField>(spec: &GrAlgebraSpec<F>, m: &Monomial) -> usize {
    let l = spec.regime().order();
    m.alpha
        .iter()
        .zip(&m.beta)
        .filter(|(a, b)| {
            let g = **a + **b as u32;
            match l {
                Some(l) => g % l != 0,
                None => g != 0,
            }
        })
        .count()
}

/// The Koszul differential on an element.
pub fn koszul_d<F: QField>(spec: &GrAlgebraSpec<F>, x: &KoszulElement<F>) -> KoszulElement<F> {
    let mut out = KoszulElement::new();
    for (m, c) in x {
        for i in 0..spec.n() {
            let om = big_omega(spec, &m.alpha, &m.beta, i);
            if om.is_zero() {
                continue;
            }
            let mut t = m.clone();
            t.alpha[i] += 1;
            t.beta[i] = 0;
            accumulate(&mut out, t, om * c);
        }
    }
    out
}

fn accumulate<F: QField>(x: &mut KoszulElement<F>, m: Monomial, c: F) {
    use std::collections::btree_map::Entry;
    match x.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("monomial {0} has ||alpha+beta|| = 0 and lies outside the domain of h")]
    Degenerate(String),
}

/// `h(F^alpha (x) F^beta) = 1/||alpha+beta|| sum_i omega(alpha,beta,i) F^{alpha-[i]} (x) F^{beta+[i]}`.
pub fn wambst_homotopy<F: QField>(spec: &GrAlgebraSpec<F>, x: &KoszulElement<F>) -> Result<KoszulElement<F>, HomotopyError> {
    let mut out = KoszulElement::new();
    for (m, c) in x {
        let nrm = norm(spec, m);
        if nrm == 0 {
            return Err(HomotopyError::Degenerate(m.to_string()));
        }
        let scale = c.clone() * &F::from_i64(nrm as i64).inv();
        for i in 0..spec.n() {
            let (_, w) = omega_coeffs(spec, &m.alpha, &m.beta, i);
            if w.is_zero() {
                continue;
            }
            let mut t = m.clone();
            t.alpha[i] -= 1;
            t.beta[i] = 1;
            accumulate(&mut out, t, w * &scale);
        }
    }
    Ok(out)
}

/// Monomials of one block, per homological degree, in sorted order.
#[derive(Debug, Clone)]
pub struct KoszulBlock {
    pub terms: Vec<Vec<Monomial>>,
}

#[derive(Debug, Clone)]
pub struct KoszulComplex<F> {
    pub spec: GrAlgebraSpec<F>,
    pub pbw_degree_max: u32,
    pub complex: GradedComplex<F, KoszulKey>,
    pub monomials: BTreeMap<KoszulKey, KoszulBlock>,
}

fn block_monomials(n: usize, key: &KoszulKey, cap: Option<u32>) -> KoszulBlock {
    let mut terms = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        let beta: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
        if beta.iter().zip(&key.gamma).any(|(b, g)| *b as u32 > *g) {
            continue;
        }
        let alpha: Vec<u32> = key.gamma.iter().zip(&beta).map(|(g, b)| g - *b as u32).collect();
        if cap.is_some_and(|c| alpha.iter().any(|a| *a > c)) {
            continue;
        }
        let m = Monomial {
            v: key.v,
            alpha,
            beta,
        };
        terms[m.degree()].push(m);
    }
    for t in &mut terms {
        t.sort();
    }
    KoszulBlock { terms }
}

fn gammas(n: usize, total_max: u32, cap: Option<u32>) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cap: Option<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let hi = cap.map_or(left, |c| c.min(left));
        for x in 0..=hi {
            cur[i] = x;
            rec(i + 1, left - x, cap, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, total_max, cap, &mut cur, &mut out);
    out
}

impl<F: QField> KoszulComplex<F> {
    pub fn block(&self, key: &KoszulKey) -> Option<&KoszulBlock> {
        self.monomials.get(key)
    }

    /// Coordinates of a basis vector as an element.
    pub fn element(&self, key: &KoszulKey, n: usize, coords: &[(usize, F)]) -> KoszulElement<F> {
        let terms = &self.monomials[key].terms[n];
        coords.iter().map(|(i, c)| (terms[*i].clone(), c.clone())).collect()
    }

    /// Splits into the blocks whose every coordinate of `alpha + beta` is `0`
    /// or `l` (one monomial each, zero differentials) and the rest.
    fn partition(self, l: u32) -> (KoszulComplex<F>, KoszulComplex<F>) {
        let special = |k: &KoszulKey| k.gamma.iter().all(|g| *g == 0 || *g == l);
        let mut s = KoszulComplex {
            spec: self.spec.clone(),
            pbw_degree_max: self.pbw_degree_max,
            complex: GradedComplex::new("koszul-s-part", Direction::Homological),
            monomials: BTreeMap::new(),
        };
        let mut r = KoszulComplex {
            spec: self.spec,
            pbw_degree_max: self.pbw_degree_max,
            complex: GradedComplex::new("koszul-r-part", Direction::Homological),
            monomials: BTreeMap::new(),
        };
        for (k, b) in self.complex.blocks {
            let target = if special(&k) { &mut s } else { &mut r };
            target.monomials.insert(k.clone(), self.monomials[&k].clone());
            target.complex.blocks.insert(k, b);
        }
        (s, r)
    }
}

/// Koszul complex `gr M (x) Lambda_q^k`, blocks with `|alpha + beta| <= pbw_degree_max`.
pub fn koszul_complex<F: QField>(spec: &GrAlgebraSpec<F>, pbw_degree_max: u32) -> KoszulComplex<F> {
    let n = spec.n();
    let cap = spec.exponent_cap().map(|c| c + 1);
    let keys: Vec<KoszulKey> = (0..spec.r)
        .flat_map(|v| gammas(n, pbw_degree_max, cap).into_iter().map(move |gamma| KoszulKey { v, gamma }))
        .collect();
    let built: Vec<(KoszulKey, KoszulBlock, Block<F>)> = keys
        .par_iter()
        .filter_map(|key| {
            let mb = block_monomials(n, key, spec.exponent_cap());
            if mb.terms.iter().all(Vec::is_empty) {
                return None;
            }
            let maps = (1..=n)
                .map(|p| {
                    let mut entries = Vec::new();
                    for (col, m) in mb.terms[p].iter().enumerate() {
                        let x: KoszulElement<F> = [(m.clone(), F::one())].into_iter().collect();
                        for (t, c) in koszul_d(spec, &x) {
                            let row = mb.terms[p - 1].binary_search(&t).expect("d stays in the block");
                            entries.push((row, col, c));
                        }
                    }
                    SparseMatrix::from_triplets(mb.terms[p - 1].len(), mb.terms[p].len(), entries)
                })
                .collect();
            let block = Block {
                dims: mb.terms.iter().map(Vec::len).collect(),
                maps,
                bounded: true,
            };
            Some((key.clone(), mb, block))
        })
        .collect();
    let mut complex = GradedComplex::new("koszul", Direction::Homological);
    let mut monomials = BTreeMap::new();
    for (k, mb, b) in built {
        monomials.insert(k.clone(), mb);
        complex.blocks.insert(k, b);
    }
    KoszulComplex {
        spec: spec.clone(),
        pbw_degree_max,
        complex,
        monomials,
    }
}

/// Root-of-unity splitting `K = S (+) R`.
pub fn koszul_split_root_of_unity<F: QField>(
    spec: &GrAlgebraSpec<F>,
    pbw_degree_max: u32,
) -> Result<(KoszulComplex<F>, KoszulComplex<F>), ArithError> {
    let l = spec
        .regime()
        .order()
        .ok_or_else(|| ArithError::RegimeMismatch("the splitting needs a root of unity".into()))?;
    Ok(koszul_complex(spec, pbw_degree_max).partition(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Cyclotomic, RatFunc};
    use num_rational::BigRational;
    use num_traits::One;
    use crate::cartan::CartanDatum;
    use crate::homology::homology_ranks;

    fn sl3_spec() -> GrAlgebraSpec<RatFunc> {
        let d = CartanDatum::sl(3);
        let rs = RootSystem::new(&d, Some(&[1, 2, 1])).unwrap();
        let l = WeightSpec::new(&d, vec![1, 0]).unwrap();
        gr_algebra(&rs, &l, Regime::Generic).unwrap()
    }

    #[test]
    fn sl3_relations_and_action() {
        let s = sl3_spec();
        assert_eq!(s.roots, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(s.q_coeff(0, 1), RatFunc::monomial(BigRational::from_integer(1.into()), 1));
        let (a, c) = s.act(1, &[1, 0, 0]).unwrap();
        assert_eq!(a, vec![1, 1, 0]);
        assert_eq!(c, RatFunc::monomial(BigRational::from_integer(1.into()), -1));
    }

    #[test]
    fn differential_and_homotopy() {
        let s = sl3_spec();
        let v = Monomial {
            v: 0,
            alpha: vec![0, 0, 0],
            beta: vec![1, 0, 0],
        };
        let x: KoszulElement<RatFunc> = [(v, RatFunc::one())].into_iter().collect();
        let dx = koszul_d(&s, &x);
        assert_eq!(dx.len(), 1);
        assert!(dx.values().all(|c| *c == RatFunc::one()));
        let k = koszul_complex(&s, 3);
        k.complex.verify_square_zero().unwrap();
        let h = homology_ranks(&k.complex, 3);
        assert_eq!(h.total(0), 3);
        assert_eq!(h.total(1) + h.total(2) + h.total(3), 0);
        let zero = Monomial {
            v: 0,
            alpha: vec![0; 3],
            beta: vec![0; 3],
        };
        let z: KoszulElement<RatFunc> = [(zero, RatFunc::one())].into_iter().collect();
        assert!(wambst_homotopy(&s, &z).is_err());
    }

    #[test]
    fn sl2_root_of_unity_split() {
        let d = CartanDatum::sl(2);
        let rs = RootSystem::new(&d, None).unwrap();
        let l = WeightSpec::new(&d, vec![1]).unwrap();
        let spec: GrAlgebraSpec<Cyclotomic> = gr_algebra(&rs, &l, Regime::RootOfUnity { l: 3 }).unwrap();
        let (sp, rp) = koszul_split_root_of_unity(&spec, 4).unwrap();
        let hs = homology_ranks(&sp.complex, 1);
        assert_eq!((hs.total(0), hs.total(1)), (2, 2));
        assert!(sp.complex.blocks.values().all(|b| b.maps.iter().all(|m| m.is_zero())));
        let hr = homology_ranks(&rp.complex, 1);
        assert_eq!(hr.total(0) + hr.total(1), 0);
    }
}
