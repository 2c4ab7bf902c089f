//! Tensor terms `M_k(C_0) (x) S(D_1) (x) ... (x) S(D_n)` shared by the
//! coHochschild and bar complexes, and the coHochschild differential.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Block, ContentKey, Direction, GradedComplex};
use crate::arith::{QField, SparseMatrix};
use crate::bimodule::BasisStore;
use crate::braid::Content;

/// One tensor product of graded pieces, occupying `offset..offset + size`
/// in its degree. `parts[0]` is the coefficient piece, the rest are pieces of `S(V)`.
#[derive(Debug, Clone)]
pub struct Segment {
    pub parts: Vec<Content>,
    pub dims: Vec<usize>,
    pub offset: usize,
    pub size: usize,
}

impl Segment {
    pub fn flat(&self, idx: &[usize]) -> usize {
        let mut f = 0;
        for (i, d) in idx.iter().zip(&self.dims) {
            f = f * d + i;
        }
        self.offset + f
    }

    pub fn unflat(&self, mut f: usize) -> Vec<usize> {
        f -= self.offset;
        let mut idx = vec![0; self.dims.len()];
        for p in (0..self.dims.len()).rev() {
            idx[p] = f % self.dims[p];
            f /= self.dims[p];
        }
        idx
    }

    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size).map(move |f| self.unflat(f + self.offset))
    }
}

/// Bases of the tensor terms of one content block, degrees `0..=n_top`.
#[derive(Debug, Clone)]
pub struct TensorTerms {
    pub content: Content,
    pub normalized: bool,
    pub degrees: Vec<Vec<Segment>>,
    index: Vec<HashMap<Vec<Content>, usize>>,
}

impl TensorTerms {
    /// With `normalized`, every `S(V)` factor has positive length; otherwise
    /// factors of length zero (the unit) are allowed.
    pub fn new<F: QField>(store: &BasisStore<F>, content: &Content, n_top: usize, normalized: bool) -> Self {
        let rank = store.rank();
        let f_part = Content::new(content.c.clone(), 0);
        let subs: Vec<Content> = Content::enumerate(rank, 0, 0, f_part.f_length())
            .into_iter()
            .filter(|d| f_part.checked_sub(d).is_some())
            .filter(|d| !normalized || !d.is_zero())
            .collect();
        let mut degrees = Vec::new();
        let mut index = Vec::new();
        for n in 0..=n_top {
            let mut segs = Vec::new();
            let mut idx = HashMap::new();
            let mut offset = 0;
            let mut seqs: Vec<Vec<Content>> = Vec::new();
            sequences(&subs, &f_part, n, &mut Vec::new(), &mut seqs);
            for seq in seqs {
                let total = seq.iter().fold(Content::zero(rank), |a, d| a.add(d));
                let c0 = content.checked_sub(&total).unwrap();
                let mut parts = vec![c0];
                parts.extend(seq);
                let dims: Vec<usize> = parts.iter().map(|p| store.dim(p)).collect();
                let size: usize = dims.iter().product();
                if size == 0 {
                    continue;
                }
                idx.insert(parts.clone(), segs.len());
                segs.push(Segment {
                    parts,
                    dims,
                    offset,
                    size,
                });
                offset += size;
            }
            degrees.push(segs);
            index.push(idx);
        }
        TensorTerms {
            content: content.clone(),
            normalized,
            degrees,
            index,
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees[n].iter().map(|s| s.size).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.degrees.len()).map(|n| self.dim(n)).collect()
    }

    pub fn segment(&self, n: usize, parts: &[Content]) -> Option<&Segment> {
        self.index.get(n)?.get(parts).map(|&i| &self.degrees[n][i])
    }

    /// Whether no terms exist above the stored degrees.
    pub fn bounded(&self) -> bool {
        self.normalized && self.degrees.len() > self.content.f_length() as usize
    }
}

fn sequences(subs: &[Content], budget: &Content, n: usize, cur: &mut Vec<Content>, out: &mut Vec<Vec<Content>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for d in subs {
        if let Some(rest) = budget.checked_sub(d) {
            cur.push(d.clone());
            sequences(subs, &rest, n - 1, cur, out);
            cur.pop();
        }
    }
}

fn sign<F: QField>(n: usize) -> F {
    if n % 2 == 0 {
        F::one()
    } else {
        -F::one()
    }
}

/// Ordered splits `d = a + b` (simple-letter contents), with both sides
/// nonzero when `proper`.
pub(super) fn splits(rank: usize, d: &Content, proper: bool) -> Vec<(Content, Content)> {
    Content::enumerate(rank, 0, 0, d.f_length())
        .into_iter()
        .filter_map(|a| Some((a.clone(), d.checked_sub(&a)?)))
        .filter(|(a, b)| !proper || (!a.is_zero() && !b.is_zero()))
        .collect()
}

/// Coboundary `C^n -> C^{n+1}` of one content block.
fn coboundary<F: QField>(store: &BasisStore<F>, terms: &TensorTerms, n: usize) -> SparseMatrix<F> {
    let rank = store.rank();
    let proper = terms.normalized;
    let mut entries: Vec<(usize, usize, F)> = Vec::new();
    for seg in &terms.degrees[n] {
        let c0 = &seg.parts[0];
        // coaction on the coefficient: split off a right factor of S(V)
        let f0 = Content::new(c0.c.clone(), 0);
        for right in Content::enumerate(rank, 0, 0, f0.f_length()) {
            if proper && right.is_zero() {
                continue;
            }
            let Some(left) = c0.checked_sub(&right) else { continue };
            let mut parts = vec![left.clone(), right.clone()];
            parts.extend_from_slice(&seg.parts[1..]);
            let Some(tgt) = terms.segment(n + 1, &parts) else { continue };
            let table = store.split_table(&left, &right);
            for idx in seg.indices() {
                let col = seg.flat(&idx);
                for (l1, l2, x) in &table[idx[0]] {
                    let mut t = vec![*l1, *l2];
                    t.extend_from_slice(&idx[1..]);
                    entries.push((tgt.flat(&t), col, x.clone()));
                }
            }
        }
        // coproducts of the S(V) factors
        for i in 1..=n {
            let s: F = sign(i);
            for (a, b) in splits(rank, &seg.parts[i], proper) {
                let mut parts = seg.parts[..i].to_vec();
                parts.push(a.clone());
                parts.push(b.clone());
                parts.extend_from_slice(&seg.parts[i + 1..]);
                let Some(tgt) = terms.segment(n + 1, &parts) else { continue };
                let table = store.split_table(&a, &b);
                for idx in seg.indices() {
                    let col = seg.flat(&idx);
                    for (l1, l2, x) in &table[idx[i]] {
                        let mut t = idx[..i].to_vec();
                        t.push(*l1);
                        t.push(*l2);
                        t.extend_from_slice(&idx[i + 1..]);
                        entries.push((tgt.flat(&t), col, s.clone() * x));
                    }
                }
            }
        }
        // trivial left coaction: m (x) c (x) 1, degenerate after normalization
        if !proper {
            let s: F = sign(n + 1);
            let mut parts = seg.parts.clone();
            parts.push(Content::zero(rank));
            if let Some(tgt) = terms.segment(n + 1, &parts) {
                for idx in seg.indices() {
                    let mut t = idx.clone();
                    t.push(0);
                    entries.push((tgt.flat(&t), seg.flat(&idx), s.clone()));
                }
            }
        }
    }
    SparseMatrix::from_triplets(terms.dim(n + 1), terms.dim(n), entries)
}

fn build<F: QField>(
    store: &BasisStore<F>,
    k: u32,
    t_max: u32,
    n_top: usize,
    normalized: bool,
) -> GradedComplex<F, ContentKey> {
    let contents = Content::enumerate(store.rank(), k, 0, t_max);
    let mut pieces: Vec<Content> = contents.clone();
    pieces.extend(Content::enumerate(store.rank(), 0, 0, t_max));
    store.prefill(&pieces);
    let blocks: Vec<(ContentKey, Block<F>)> = contents
        .par_iter()
        .map(|c| {
            let terms = TensorTerms::new(store, c, n_top, normalized);
            let maps = (0..n_top).map(|n| coboundary(store, &terms, n)).collect();
            let block = Block {
                dims: terms.dims(),
                maps,
                bounded: terms.bounded(),
            };
            (ContentKey(c.clone()), block)
        })
        .collect();
    let kind = if normalized { "cohochschild" } else { "cohochschild-unnormalized" };
    let mut cx = GradedComplex::new(kind, Direction::Cohomological);
    cx.blocks.extend(blocks);
    cx
}

/// The normalized coHochschild complex of `S(V)` with coefficients in `M_k`,
/// one block per content with at most `t_max` simple letters. Terms are built
/// through degree `n_max + 1` so homology is exact through `n_max`.
pub fn cohochschild_complex<F: QField>(
    store: &BasisStore<F>,
    k: u32,
    t_max: u32,
    n_max: usize,
) -> GradedComplex<F, ContentKey> {
    build(store, k, t_max, n_max + 1, true)
}

/// The same complex without discarding unit factors; finite only because of
/// the degree cutoff.
pub fn unnormalized_cohochschild_complex<F: QField>(
    store: &BasisStore<F>,
    k: u32,
    t_max: u32,
    n_max: usize,
) -> GradedComplex<F, ContentKey> {
    build(store, k, t_max, n_max + 1, false)
}
