//! Words, the diagonal braiding, braid group actions and quantum shuffles.
//!
//! Permutations are position maps in one-line notation (0-based): applying `w`
//! to a word moves the letter at position `j` to position `w[j]`.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::arith::{ArithError, QField, QPowers, Regime, SparseMatrix};
use crate::cartan::{CartanDatum, WeightSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator sigma_{gen} needs words of length at least {needed}, got {len}")]
    PositionOutOfRange { gen: usize, needed: usize, len: usize },
    #[error("permutation of size {perm} applied to a word of length {len}")]
    SizeMismatch { perm: usize, len: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
}

/// A letter: `F(i)` (0-based simple index) or the extra letter `v_lambda`.
///
/// The derived order is `F(0) < F(1) < ... < V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    F(u8),
    V,
}

impl Letter {
    /// Index into braiding tables: `F(i) -> i`, `V -> rank`.
    pub fn index(self, rank: usize) -> usize {
        match self {
            Letter::F(i) => i as usize,
            Letter::V => rank,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::F(i) => write!(f, "F{}", i + 1),
            Letter::V => write!(f, "v"),
        }
    }
}

/// A finite sequence of letters; words compare lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    /// `F_{i_1} ... F_{i_k}` from 1-based indices; `0` stands for `v_lambda`.
    pub fn simple(indices: &[usize]) -> Self {
        Word(
            indices
                .iter()
                .map(|&i| if i == 0 { Letter::V } else { Letter::F((i - 1) as u8) })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn content(&self, rank: usize) -> Content {
        let mut c = Content::zero(rank);
        for l in &self.0 {
            match l {
                Letter::F(i) => c.c[*i as usize] += 1,
                Letter::V => c.k += 1,
            }
        }
        c
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn split(&self, p: usize) -> (Word, Word) {
        (
            Word::from_letters(&self.0[..p]),
            Word::from_letters(&self.0[p..]),
        )
    }

    pub fn ends_with_v(&self) -> bool {
        self.0.last() == Some(&Letter::V)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Letter multiplicities: `c[i]` copies of `F_{i+1}` and `k` copies of `v_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Content {
    pub c: Vec<u32>,
    pub k: u32,
}

impl Content {
    pub fn new(c: Vec<u32>, k: u32) -> Self {
        Content { c, k }
    }

    pub fn zero(rank: usize) -> Self {
        Content { c: vec![0; rank], k: 0 }
    }

    pub fn length(&self) -> u32 {
        self.c.iter().sum::<u32>() + self.k
    }

    /// Number of simple letters.
    pub fn f_length(&self) -> u32 {
        self.c.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn add(&self, other: &Content) -> Content {
        Content {
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
            k: self.k + other.k,
        }
    }

    /// `self - other`, or `None` if some multiplicity would go negative.
    pub fn checked_sub(&self, other: &Content) -> Option<Content> {
        let mut c = Vec::with_capacity(self.c.len());
        for (a, b) in self.c.iter().zip(&other.c) {
            c.push(a.checked_sub(*b)?);
        }
        Some(Content {
            c,
            k: self.k.checked_sub(other.k)?,
        })
    }

    pub fn of_letter(rank: usize, l: Letter) -> Content {
        let mut c = Content::zero(rank);
        match l {
            Letter::F(i) => c.c[i as usize] = 1,
            Letter::V => c.k = 1,
        }
        c
    }

    /// All contents with `k` copies of `v_lambda` and between `min_len` and
    /// `max_len` simple letters, ordered by simple length then lexicographically.
    pub fn enumerate(rank: usize, k: u32, min_len: u32, max_len: u32) -> Vec<Content> {
        let mut out = Vec::new();
        for t in min_len..=max_len {
            let mut buf = vec![0u32; rank];
            compositions(rank, t, 0, &mut buf, &mut |c| out.push(Content::new(c.to_vec(), k)));
        }
        out
    }

    /// Content key `c1,...,cn;k`.
    pub fn key(&self) -> String {
        let cs: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        format!("{};{}", cs.join(","), self.k)
    }

    pub fn parse_key(s: &str) -> Option<Content> {
        let (cs, k) = s.split_once(';')?;
        let c = if cs.is_empty() {
            Vec::new()
        } else {
            cs.split(',').map(|x| x.trim().parse().ok()).collect::<Option<Vec<u32>>>()?
        };
        Some(Content::new(c, k.trim().parse().ok()?))
    }

    /// All words with this content, in lexicographic order.
    pub fn words(&self) -> Vec<Word> {
        let mut counts: Vec<(Letter, u32)> = self
            .c
            .iter()
            .enumerate()
            .map(|(i, &m)| (Letter::F(i as u8), m))
            .collect();
        counts.push((Letter::V, self.k));
        let total = self.length() as usize;
        let mut out = Vec::new();
        let mut cur: SmallVec<[Letter; 8]> = SmallVec::new();
        multiset_words(&mut counts, total, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn compositions(rank: usize, total: u32, pos: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == rank {
        buf[pos] = total;
        f(buf);
        return;
    }
    if rank == 0 {
        if total == 0 {
            f(buf);
        }
        return;
    }
    for x in 0..=total {
        buf[pos] = x;
        compositions(rank, total - x, pos + 1, buf, f);
    }
}

fn multiset_words(
    counts: &mut [(Letter, u32)],
    remaining: usize,
    cur: &mut SmallVec<[Letter; 8]>,
    out: &mut Vec<Word>,
) {
    if remaining == 0 {
        out.push(Word(cur.clone()));
        return;
    }
    for i in 0..counts.len() {
        if counts[i].1 > 0 {
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            multiset_words(counts, remaining - 1, cur, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
}

/// The diagonal braiding on `V` (letters `F_i`) extended by `v_lambda`:
/// `sigma(a (x) b) = q^{e(a,b)} b (x) a`.
#[derive(Debug, Clone)]
pub struct Braiding<F> {
    rank: usize,
    exps: Vec<Vec<i64>>,
    q: QPowers<F>,
}

impl<F: QField> Braiding<F> {
    /// `e(F_i,F_j) = (alpha_i,alpha_j)`, `e(F_i,v) = e(v,F_i) = -(lambda,alpha_i)`,
    /// `e(v,v) = 2`. With `lambda = None` only the `F` letters are meaningful.
    pub fn new(datum: &CartanDatum, lambda: Option<&WeightSpec>, regime: Regime) -> Result<Self, ArithError> {
        let n = datum.rank();
        let m = lambda.map(|l| l.m(datum)).unwrap_or_else(|| vec![0; n]);
        let mut exps = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                exps[i][j] = datum.a(i, j);
            }
            exps[i][n] = -m[i];
            exps[n][i] = -m[i];
        }
        exps[n][n] = 2;
        let radius = exps.iter().flatten().map(|e| e.abs()).max().unwrap_or(2) * 16;
        Ok(Braiding {
            rank: n,
            exps,
            q: QPowers::new(regime, radius)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn regime(&self) -> Regime {
        self.q.regime()
    }

    pub fn exponent(&self, a: Letter, b: Letter) -> i64 {
        self.exps[a.index(self.rank)][b.index(self.rank)]
    }

    pub fn coeff(&self, a: Letter, b: Letter) -> F {
        self.q.get(self.exponent(a, b))
    }

    pub fn qpow(&self, k: i64) -> F {
        self.q.get(k)
    }

    /// Exponent of `q` in `T_w` applied to `word`: the sum of `e(a, b)` over
    /// pairs (`a` left of `b`) whose order `w` reverses.
    pub fn matsumoto_exponent(&self, perm: &[usize], word: &Word) -> i64 {
        let l = word.letters();
        let mut e = 0;
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                if perm[i] > perm[j] {
                    e += self.exponent(l[i], l[j]);
                }
            }
        }
        e
    }
}

/// Apply a permutation to the letters of a word (no coefficient).
pub fn permute_word(perm: &[usize], word: &Word) -> Word {
    let mut out: SmallVec<[Letter; 8]> = SmallVec::from_elem(Letter::V, word.len());
    for (j, &l) in word.letters().iter().enumerate() {
        out[perm[j]] = l;
    }
    Word(out)
}

fn check_perm(perm: &[usize]) -> Result<(), BraidError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(BraidError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A reduced expression for `perm` as 1-based generator indices, listed in the
/// order they are applied (first applied first), found by bubble sort.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut cur = perm.to_vec();
    let mut out = Vec::new();
    // peel off right descents: w = w' s_i whenever w(i) > w(i+1)
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
        cur.swap(i, i + 1);
        out.push(i + 1);
    }
    out
}

/// Sparse linear combination of words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: QField> Default for LinComb<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: QField> LinComb<F> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, F::one())
    }

    pub fn term(w: Word, c: F) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<F>, c: &F) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone() * c);
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    /// Common content of all terms, or `None` if empty or mixed.
    pub fn content(&self, rank: usize) -> Option<Content> {
        let mut it = self.terms.keys().map(|w| w.content(rank));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut x = Self::zero();
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    }
}

impl<F: QField> fmt::Display for LinComb<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<F: QField> Braiding<F> {
    /// `sigma_gen` (1-based) acting on positions `gen, gen+1`.
    pub fn apply_sigma(&self, x: &LinComb<F>, gen: usize) -> Result<LinComb<F>, BraidError> {
        let mut out = LinComb::zero();
        for (w, c) in x.iter() {
            if gen == 0 || gen + 1 > w.len() {
                return Err(BraidError::PositionOutOfRange {
                    gen,
                    needed: gen + 1,
                    len: w.len(),
                });
            }
            let (a, b) = (w.0[gen - 1], w.0[gen]);
            let mut nw = w.clone();
            nw.0.swap(gen - 1, gen);
            out.add_term(nw, c.clone() * &self.coeff(a, b));
        }
        Ok(out)
    }

    /// `T_w` along the bubble-sort reduced expression of `perm`.
    pub fn matsumoto_action(&self, perm: &[usize], x: &LinComb<F>) -> Result<LinComb<F>, BraidError> {
        check_perm(perm)?;
        if let Some((w, _)) = x.iter().find(|(w, _)| w.len() != perm.len()) {
            return Err(BraidError::SizeMismatch {
                perm: perm.len(),
                len: w.len(),
            });
        }
        self.apply_generators(&reduced_word(perm), x)
    }

    /// Applies generators in the listed order (first listed acts first).
    pub fn apply_generators(&self, gens: &[usize], x: &LinComb<F>) -> Result<LinComb<F>, BraidError> {
        let mut cur = x.clone();
        for &g in gens {
            cur = self.apply_sigma(&cur, g)?;
        }
        Ok(cur)
    }

    /// `x * (a)`: insert the letter `a` at every position.
    pub fn shuffle_letter_exps(&self, w: &Word, a: Letter, mut f: impl FnMut(Word, i64)) {
        let l = w.letters();
        let mut e = 0;
        for p in (0..=l.len()).rev() {
            let mut nw: SmallVec<[Letter; 8]> = SmallVec::with_capacity(l.len() + 1);
            nw.extend_from_slice(&l[..p]);
            nw.push(a);
            nw.extend_from_slice(&l[p..]);
            f(Word(nw), e);
            if p > 0 {
                e += self.exponent(l[p - 1], a);
            }
        }
    }

    /// Total symmetrization `Sigma_n` of a single word, computed as the
    /// iterated shuffle product of its letters.
    pub fn symmetrize_word(&self, w: &Word) -> LinComb<F> {
        let mut cur: BTreeMap<Word, BTreeMap<i64, i64>> = BTreeMap::new();
        cur.insert(Word::empty(), BTreeMap::from([(0, 1)]));
        // coefficients are kept as integer Laurent polynomials in q until the end
        for &a in w.letters() {
            let mut next: BTreeMap<Word, BTreeMap<i64, i64>> = BTreeMap::new();
            for (u, poly) in &cur {
                self.shuffle_letter_exps(u, a, |nw, e| {
                    let slot = next.entry(nw).or_default();
                    for (k, c) in poly {
                        *slot.entry(k + e).or_insert(0) += c;
                    }
                });
            }
            cur = next;
        }
        self.laurent_map_to_lincomb(cur)
    }

    fn laurent_map_to_lincomb(&self, m: BTreeMap<Word, BTreeMap<i64, i64>>) -> LinComb<F> {
        let mut out = LinComb::zero();
        for (w, poly) in m {
            let mut c = F::zero();
            for (k, n) in poly {
                if n != 0 {
                    c = c + self.qpow(k) * &F::from_i64(n);
                }
            }
            out.add_term(w, c);
        }
        out
    }

    /// Matrix of `Sigma_n` on the words of one content in lexicographic order
    /// (column `j` is the image of word `j`).
    pub fn total_symmetrizer(&self, c: &Content) -> SparseMatrix<F> {
        let words = c.words();
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut entries = Vec::new();
        for (j, w) in words.iter().enumerate() {
            for (u, x) in self.symmetrize_word(w).iter() {
                entries.push((index[u], j, x.clone()));
            }
        }
        SparseMatrix::from_triplets(words.len(), words.len(), entries)
    }

    pub fn symmetrize(&self, x: &LinComb<F>) -> LinComb<F> {
        let mut out = LinComb::zero();
        for (w, c) in x.iter() {
            out.add_scaled(&self.symmetrize_word(w), c);
        }
        out
    }

    /// Shuffle product of two words: the sum over all interleavings, each
    /// weighted by `q^{e(a,b)}` for every letter `b` of `v` that passes a letter
    /// `a` of `u`.
    pub fn shuffle_words(&self, u: &Word, v: &Word) -> LinComb<F> {
        let mut acc: BTreeMap<Word, BTreeMap<i64, i64>> = BTreeMap::new();
        let mut buf: SmallVec<[Letter; 8]> = SmallVec::new();
        self.shuffle_rec(u.letters(), v.letters(), 0, &mut buf, &mut acc);
        self.laurent_map_to_lincomb(acc)
    }

    fn shuffle_rec(
        &self,
        u: &[Letter],
        v: &[Letter],
        e: i64,
        buf: &mut SmallVec<[Letter; 8]>,
        acc: &mut BTreeMap<Word, BTreeMap<i64, i64>>,
    ) {
        if u.is_empty() || v.is_empty() {
            let mut w = buf.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *acc.entry(Word(w)).or_default().entry(e).or_insert(0) += 1;
            return;
        }
        buf.push(u[0]);
        self.shuffle_rec(&u[1..], v, e, buf, acc);
        buf.pop();
        let cross: i64 = u.iter().map(|&a| self.exponent(a, v[0])).sum();
        buf.push(v[0]);
        self.shuffle_rec(u, &v[1..], e + cross, buf, acc);
        buf.pop();
    }

    pub fn shuffle_product(&self, x: &LinComb<F>, y: &LinComb<F>) -> LinComb<F> {
        let mut out = LinComb::zero();
        for (u, cu) in x.iter() {
            for (v, cv) in y.iter() {
                out.add_scaled(&self.shuffle_words(u, v), &(cu.clone() * cv));
            }
        }
        out
    }
}

/// The `(p, n-p)` deconcatenation components of every term.
pub fn deconcat_split<F: QField>(x: &LinComb<F>, p: usize) -> Vec<(Word, Word, F)> {
    x.iter()
        .filter(|(w, _)| p <= w.len())
        .map(|(w, c)| {
            let (a, b) = w.split(p);
            (a, b, c.clone())
        })
        .collect()
}

/// The paper's `(p, r)`-shuffles as position maps: `w^{-1}` is increasing on
/// `0..p` and on `p..p+r`. Listed in lexicographic order of `w^{-1}`.
pub fn enumerate_shuffles(p: usize, r: usize) -> Vec<Vec<usize>> {
    let n = p + r;
    let mut out = Vec::new();
    // w^{-1} lists the first block's letters (an increasing subset) then the rest
    let mut chosen = Vec::with_capacity(p);
    subsets(n, p, 0, &mut chosen, &mut |set| {
        let mut inv = Vec::with_capacity(n);
        inv.extend_from_slice(set);
        inv.extend((0..n).filter(|i| !set.contains(i)));
        let mut w = vec![0; n];
        for (pos, &src) in inv.iter().enumerate() {
            w[src] = pos;
        }
        out.push(w);
    });
    out
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFunc;

    fn sl3() -> Braiding<RatFunc> {
        Braiding::new(&CartanDatum::sl(3), None, Regime::Generic).unwrap()
    }

    fn q(k: i64) -> RatFunc {
        RatFunc::qpow(Regime::Generic, k).unwrap()
    }

    #[test]
    fn braiding_coefficients() {
        let d = CartanDatum::sl(2);
        let lam = WeightSpec::new(&d, vec![1]).unwrap();
        let b: Braiding<RatFunc> = Braiding::new(&d, Some(&lam), Regime::Generic).unwrap();
        assert_eq!(b.coeff(Letter::F(0), Letter::F(0)), q(2));
        assert_eq!(b.coeff(Letter::V, Letter::V), q(2));
        assert_eq!(b.coeff(Letter::F(0), Letter::V), q(-1));
    }

    #[test]
    fn sigma_and_matsumoto() {
        let b = sl3();
        let x = LinComb::word(Word::simple(&[1, 2]));
        let y = b.apply_sigma(&x, 1).unwrap();
        assert_eq!(y, LinComb::term(Word::simple(&[2, 1]), q(-1)));
        assert_eq!(b.matsumoto_action(&[1, 0], &x).unwrap(), y);
        assert!(b.apply_sigma(&x, 2).is_err());
        assert!(b.apply_sigma(&LinComb::zero(), 1).unwrap().is_zero());
        let s2: Braiding<RatFunc> = Braiding::new(&CartanDatum::sl(2), None, Regime::Generic).unwrap();
        let w = LinComb::word(Word::simple(&[1, 1, 1]));
        assert_eq!(s2.matsumoto_action(&[2, 1, 0], &w).unwrap(), w.scale(&q(6)));
        assert!(b.matsumoto_action(&[0, 1, 2], &x).is_err());
    }

    #[test]
    fn shuffles() {
        assert_eq!(enumerate_shuffles(2, 2).len(), 6);
        assert_eq!(enumerate_shuffles(0, 3), vec![vec![0, 1, 2]]);
        let b = sl3();
        let p = b.shuffle_words(&Word::simple(&[1]), &Word::simple(&[2]));
        let mut expect = LinComb::word(Word::simple(&[1, 2]));
        expect.add_term(Word::simple(&[2, 1]), q(-1));
        assert_eq!(p, expect);
        let u = Word::simple(&[1, 2]);
        assert_eq!(b.shuffle_words(&u, &Word::empty()), LinComb::word(u));
    }

    #[test]
    fn words_in_lex_order() {
        let ws = Content::new(vec![2, 1], 0).words();
        assert_eq!(ws, vec![Word::simple(&[1, 1, 2]), Word::simple(&[1, 2, 1]), Word::simple(&[2, 1, 1])]);
        assert_eq!(Content::new(vec![1], 1).words(), vec![Word::simple(&[1, 0]), Word::simple(&[0, 1])]);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(Content::enumerate(2, 0, 0, 2).len(), 1 + 2 + 3);
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        for p in all_permutations(4) {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(reduced_word(&p).len(), inv);
        }
    }
}
