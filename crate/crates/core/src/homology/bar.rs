//! Normalized Hochschild (bar) complex of `S(V)` with coefficients in `M_k`:
//! the left action is the shuffle product, the right action is the counit.

use rayon::prelude::*;

use super::cobar::TensorTerms;
use super::{Block, ContentKey, Direction, GradedComplex};
use crate::arith::{QField, SparseMatrix};
use crate::bimodule::BasisStore;
use crate::braid::Content;

/// `d: C_{p} -> C_{p-1}` where
/// `d(m (x) a_1..a_p) = sum_{i<p} (-1)^i m (x) ..(a_i a_{i+1}).. + (-1)^p (a_p m) (x) a_1..a_{p-1}`.
fn boundary<F: QField>(store: &BasisStore<F>, terms: &TensorTerms, p: usize) -> SparseMatrix<F> {
    let mut entries: Vec<(usize, usize, F)> = Vec::new();
    for seg in &terms.degrees[p] {
        for i in 1..p {
            let s = if i % 2 == 0 { F::one() } else { -F::one() };
            let (a, b) = (&seg.parts[i], &seg.parts[i + 1]);
            let mut parts = seg.parts[..i].to_vec();
            parts.push(a.add(b));
            parts.extend_from_slice(&seg.parts[i + 2..]);
            let Some(tgt) = terms.segment(p - 1, &parts) else { continue };
            let table = store.product_table(a, b);
            for idx in seg.indices() {
                let col = seg.flat(&idx);
                for (l, x) in &table[idx[i]][idx[i + 1]] {
                    let mut t = idx[..i].to_vec();
                    t.push(*l);
                    t.extend_from_slice(&idx[i + 2..]);
                    entries.push((tgt.flat(&t), col, s.clone() * x));
                }
            }
        }
        let s = if p % 2 == 0 { F::one() } else { -F::one() };
        let (m, a) = (&seg.parts[0], &seg.parts[p]);
        let mut parts = vec![a.add(m)];
        parts.extend_from_slice(&seg.parts[1..p]);
        let Some(tgt) = terms.segment(p - 1, &parts) else { continue };
        let table = store.product_table(a, m);
        for idx in seg.indices() {
            let col = seg.flat(&idx);
            for (l, x) in &table[idx[p]][idx[0]] {
                let mut t = vec![*l];
                t.extend_from_slice(&idx[1..p]);
                entries.push((tgt.flat(&t), col, s.clone() * x));
            }
        }
    }
    SparseMatrix::from_triplets(terms.dim(p - 1), terms.dim(p), entries)
}

/// Blocks per content with at most `t_max` simple letters, terms through
/// degree `n_max + 1`.
pub fn bar_complex<F: QField>(store: &BasisStore<F>, k: u32, t_max: u32, n_max: usize) -> GradedComplex<F, ContentKey> {
    let n_top = n_max + 1;
    let contents = Content::enumerate(store.rank(), k, 0, t_max);
    let mut pieces = contents.clone();
    pieces.extend(Content::enumerate(store.rank(), 0, 0, t_max));
    store.prefill(&pieces);
    let blocks: Vec<(ContentKey, Block<F>)> = contents
        .par_iter()
        .map(|c| {
            let terms = TensorTerms::new(store, c, n_top, true);
            let maps = (1..=n_top).map(|p| boundary(store, &terms, p)).collect();
            let block = Block {
                dims: terms.dims(),
                maps,
                bounded: terms.bounded(),
            };
            (ContentKey(c.clone()), block)
        })
        .collect();
    let mut cx = GradedComplex::new("bar", Direction::Homological);
    cx.blocks.extend(blocks);
    cx
}
