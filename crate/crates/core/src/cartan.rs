//! Cartan data, finite root systems, convex orders and classical oracles
//! (Weyl dimension, Freudenthal multiplicities, Kostant partitions).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

/// A root or a weight difference, in simple-root coordinates.
pub type Root = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotCartan(String),
    #[error("matrix (d_i c_ij) is not symmetric for d = {0:?}")]
    NotSymmetrizable(Vec<i64>),
    #[error("not of finite type: root {0} exceeds the height bound")]
    NotFinite(String),
    #[error("invalid reduced word {word:?}: {reason}")]
    BadWord { word: Vec<usize>, reason: String },
    #[error("invalid weight {c:?}: {reason}")]
    BadWeight { c: Vec<i64>, reason: String },
}

/// A symmetrizable Cartan matrix `C` with symmetrizer `d`: `(d_i c_ij)` is symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl CartanDatum {
    pub fn new(c: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, CartanError> {
        let n = c.len();
        if n == 0 {
            return Err(CartanError::NotCartan("empty matrix".into()));
        }
        if c.iter().any(|r| r.len() != n) {
            return Err(CartanError::NotCartan("matrix is not square".into()));
        }
        if d.len() != n {
            return Err(CartanError::NotCartan(format!(
                "symmetrizer has length {} but rank is {n}",
                d.len()
            )));
        }
        if d.iter().any(|&x| x <= 0) {
            return Err(CartanError::NotCartan(format!(
                "symmetrizer entries must be positive, got {d:?}"
            )));
        }
        for i in 0..n {
            if c[i][i] != 2 {
                return Err(CartanError::NotCartan(format!("c[{i}][{i}] = {} != 2", c[i][i])));
            }
            for j in 0..n {
                if i != j && c[i][j] > 0 {
                    return Err(CartanError::NotCartan(format!("c[{i}][{j}] = {} > 0", c[i][j])));
                }
                if (c[i][j] == 0) != (c[j][i] == 0) {
                    return Err(CartanError::NotCartan(format!(
                        "c[{i}][{j}] and c[{j}][{i}] must vanish together"
                    )));
                }
                if d[i] * c[i][j] != d[j] * c[j][i] {
                    return Err(CartanError::NotSymmetrizable(d.clone()));
                }
            }
        }
        Ok(CartanDatum { c, d })
    }

    /// Type A_{n-1}, the Cartan datum of sl_n.
    pub fn sl(n: usize) -> Self {
        assert!(n >= 2, "sl_n needs n >= 2");
        let r = n - 1;
        let c = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanDatum::new(c, vec![1; r]).unwrap()
    }

    /// Type B_2 with `alpha_1` short.
    pub fn b2() -> Self {
        CartanDatum::new(vec![vec![2, -2], vec![-1, 2]], vec![1, 2]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// `(alpha_i, alpha_j) = d_i c_ij`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.c[i][j]
    }

    /// Symmetric bilinear form on root coordinates.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.a(i, j) * y[j];
            }
        }
        s
    }

    /// `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Root {
        let coroot: i64 = (0..self.rank()).map(|j| self.c[i][j] * beta[j]).sum();
        let mut out = beta.to_vec();
        out[i] -= coroot;
        out
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        r
    }
}

/// Dominant integral weight given by `c_i = (lambda, alpha_i^vee)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSpec {
    c: Vec<i64>,
}

impl WeightSpec {
    pub fn new(datum: &CartanDatum, c: Vec<i64>) -> Result<Self, CartanError> {
        if c.len() != datum.rank() {
            return Err(CartanError::BadWeight {
                reason: format!("expected {} coordinates", datum.rank()),
                c,
            });
        }
        if c.iter().any(|&x| x < 0) {
            return Err(CartanError::BadWeight {
                reason: "not dominant: coordinates must be nonnegative".into(),
                c,
            });
        }
        Ok(WeightSpec { c })
    }

    /// Checks `|(lambda, alpha_i)| < l`.
    pub fn check_root_of_unity(&self, datum: &CartanDatum, l: u32) -> Result<(), CartanError> {
        let m = self.m(datum);
        if m.iter().any(|&x| x.abs() >= l as i64) {
            return Err(CartanError::BadWeight {
                c: self.c.clone(),
                reason: format!("(lambda, alpha_i) = {m:?} must stay below l = {l}"),
            });
        }
        Ok(())
    }

    pub fn zero(datum: &CartanDatum) -> Self {
        WeightSpec {
            c: vec![0; datum.rank()],
        }
    }

    pub fn coweights(&self) -> &[i64] {
        &self.c
    }

    /// `m_i = (lambda, alpha_i) = d_i c_i`.
    pub fn m(&self, datum: &CartanDatum) -> Vec<i64> {
        self.c.iter().zip(datum.symmetrizer()).map(|(c, d)| c * d).collect()
    }

    /// `(lambda, beta)` for `beta` in root coordinates.
    pub fn pair_root(&self, datum: &CartanDatum, beta: &[i64]) -> i64 {
        self.m(datum).iter().zip(beta).map(|(m, b)| m * b).sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        WeightSpec {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    /// Compact label used in reports, e.g. `[1,0]`.
    pub fn label(&self) -> String {
        format!("{:?}", self.c).replace(' ', "")
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

/// All positive roots, sorted by height and then lexicographically.
pub fn positive_roots(datum: &CartanDatum) -> Result<Vec<Root>, CartanError> {
    let n = datum.rank();
    let bound = 6 * n as i64;
    let mut seen: BTreeSet<Root> = BTreeSet::new();
    let mut frontier: Vec<Root> = (0..n).map(|i| datum.simple_root(i)).collect();
    seen.extend(frontier.iter().cloned());
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            let r = datum.reflect(i, &beta);
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && !seen.contains(&r) {
                if height(&r) > bound {
                    return Err(CartanError::NotFinite(format!("{r:?}")));
                }
                seen.insert(r.clone());
                frontier.push(r);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().collect();
    roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
    Ok(roots)
}

fn is_positive(r: &[i64]) -> bool {
    r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0)
}

/// Applies `s_{w_1} ... s_{w_k}` (rightmost first) to `beta`; `word` is 1-based.
fn apply_word(datum: &CartanDatum, word: &[usize], beta: &[i64]) -> Root {
    let mut v = beta.to_vec();
    for &i in word.iter().rev() {
        v = datum.reflect(i - 1, &v);
    }
    v
}

/// Lexicographically least reduced word (1-based) of the longest Weyl element.
pub fn default_reduced_word(datum: &CartanDatum) -> Result<Vec<usize>, CartanError> {
    let n_roots = positive_roots(datum)?.len();
    let mut word: Vec<usize> = Vec::new();
    while word.len() < n_roots {
        // w s_i is longer than w iff w(alpha_i) > 0
        let next = (1..=datum.rank())
            .find(|&i| is_positive(&apply_word(datum, &word, &datum.simple_root(i - 1))))
            .expect("w has an ascent unless it is the longest element");
        word.push(next);
    }
    Ok(word)
}

/// `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` for a reduced word of `w_0`.
pub fn convex_order(datum: &CartanDatum, word: &[usize]) -> Result<Vec<Root>, CartanError> {
    let roots = positive_roots(datum)?;
    let bad = |reason: String| CartanError::BadWord {
        word: word.to_vec(),
        reason,
    };
    if word.len() != roots.len() {
        return Err(bad(format!(
            "length {} but the longest element has length {}",
            word.len(),
            roots.len()
        )));
    }
    if let Some(&i) = word.iter().find(|&&i| i == 0 || i > datum.rank()) {
        return Err(bad(format!("letter {i} is not a simple index")));
    }
    let mut out: Vec<Root> = Vec::new();
    for k in 0..word.len() {
        let beta = apply_word(datum, &word[..k], &datum.simple_root(word[k] - 1));
        if !is_positive(&beta) {
            return Err(bad(format!("produces the negative root {beta:?}")));
        }
        if out.contains(&beta) {
            return Err(bad(format!("produces the root {beta:?} twice")));
        }
        out.push(beta);
    }
    Ok(out)
}

/// Whenever `beta_i + beta_j` (i < j) is a root, it sits strictly between them.
pub fn is_convex(order: &[Root]) -> bool {
    let pos: HashMap<&Root, usize> = order.iter().enumerate().map(|(i, r)| (r, i)).collect();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            let s: Root = order[i].iter().zip(&order[j]).map(|(a, b)| a + b).collect();
            if let Some(&k) = pos.get(&s) {
                if !(i < k && k < j) {
                    return false;
                }
            }
        }
    }
    true
}

/// A root system together with a convex order `beta_1, ..., beta_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    datum: CartanDatum,
    word: Vec<usize>,
    order: Vec<Root>,
}

impl RootSystem {
    /// Uses the default reduced word when `word` is `None`.
    pub fn new(datum: &CartanDatum, word: Option<&[usize]>) -> Result<Self, CartanError> {
        let word = match word {
            Some(w) => w.to_vec(),
            None => default_reduced_word(datum)?,
        };
        let order = convex_order(datum, &word)?;
        Ok(RootSystem {
            datum: datum.clone(),
            word,
            order,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn roots(&self) -> &[Root] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `(beta_i, beta_j)`, 0-based.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.datum.pairing(&self.order[i], &self.order[j])
    }
}

/// Dimension of the irreducible module of highest weight `lambda`.
pub fn weyl_dim(datum: &CartanDatum, lambda: &WeightSpec) -> u64 {
    let roots = positive_roots(datum).expect("finite type");
    let m = lambda.m(datum);
    let d = datum.symmetrizer();
    let mut acc = BigRational::one();
    for beta in &roots {
        let num: i64 = beta.iter().enumerate().map(|(i, b)| b * (m[i] + d[i])).sum();
        let den: i64 = beta.iter().enumerate().map(|(i, b)| b * d[i]).sum();
        acc *= BigRational::new(num.into(), den.into());
    }
    assert!(acc.is_integer());
    acc.to_integer().to_u64().unwrap()
}

/// Weight multiplicities of the irreducible module of highest weight `lambda`,
/// keyed by `gamma` with weight `lambda - gamma`, via Freudenthal's recursion.
pub fn weyl_character(datum: &CartanDatum, lambda: &WeightSpec) -> BTreeMap<Root, u64> {
    let roots = positive_roots(datum).expect("finite type");
    let n = datum.rank();
    let m = lambda.m(datum);
    let d = datum.symmetrizer();
    let mut mult: BTreeMap<Root, u64> = BTreeMap::new();
    mult.insert(vec![0; n], 1);
    let mut level: Vec<Root> = vec![vec![0; n]];
    while !level.is_empty() {
        let mut candidates: BTreeSet<Root> = BTreeSet::new();
        for g in &level {
            for i in 0..n {
                let mut h = g.clone();
                h[i] += 1;
                candidates.insert(h);
            }
        }
        let mut next = Vec::new();
        for g in candidates {
            let lr_g: i64 = (0..n).map(|i| g[i] * (m[i] + d[i])).sum();
            let denom = 2 * lr_g - datum.pairing(&g, &g);
            if denom <= 0 {
                continue;
            }
            let mut rhs: i64 = 0;
            for alpha in &roots {
                let lam_alpha: i64 = (0..n).map(|i| alpha[i] * m[i]).sum();
                let mut j = 1;
                loop {
                    let shifted: Root = (0..n).map(|i| g[i] - j * alpha[i]).collect();
                    if shifted.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&mu) = mult.get(&shifted) {
                        // (lambda - shifted, alpha)
                        let pair = lam_alpha - datum.pairing(&shifted, alpha);
                        rhs += mu as i64 * pair;
                    }
                    j += 1;
                }
            }
            let num = 2 * rhs;
            assert_eq!(num % denom, 0, "Freudenthal recursion is not integral");
            let v = num / denom;
            if v > 0 {
                mult.insert(g.clone(), v as u64);
                next.push(g);
            }
        }
        level = next;
    }
    mult
}

/// Number of ways to write `gamma` as an N-combination of positive roots.
pub fn kostant_partition_count(datum: &CartanDatum, gamma: &[i64]) -> u64 {
    let roots = positive_roots(datum).expect("finite type");
    let mut memo: HashMap<(usize, Root), u64> = HashMap::new();
    kostant_rec(&roots, 0, gamma.to_vec(), &mut memo)
}

fn kostant_rec(roots: &[Root], k: usize, gamma: Root, memo: &mut HashMap<(usize, Root), u64>) -> u64 {
    if gamma.iter().all(|&x| x == 0) {
        return 1;
    }
    if k == roots.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(k, gamma.clone())) {
        return v;
    }
    let mut total = 0;
    let mut g = gamma.clone();
    loop {
        total += kostant_rec(roots, k + 1, g.clone(), memo);
        for (x, r) in g.iter_mut().zip(&roots[k]) {
            *x -= r;
        }
        if g.iter().any(|&x| x < 0) {
            break;
        }
    }
    memo.insert((k, gamma), total);
    total
}
