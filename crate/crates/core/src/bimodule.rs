//! Graded pieces of the quantum shuffle algebra `S(V)` and of the layers
//! `M_k` of `S(W)`, with coproduct/coaction and product structure constants.
//!
//! Everything is organized by [`Content`]: a content with `k` copies of
//! `v_lambda` indexes a graded piece of `M_k` (for `k = 0`, of `S(V)` itself).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{canonical_sparse, ArithError, CoordinateMap, QField, Regime, SparseMatrix, SparseVec};
use crate::braid::{Braiding, Content, LinComb, Letter, Word};
use crate::cartan::{weyl_character, CartanDatum, WeightSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleError {
    #[error("{0}")]
    Arith(#[from] ArithError),
    #[error("content {0} has v_lambda letters but no weight was given")]
    MissingLambda(String),
    #[error("element is not in the span of the basis of {0}")]
    NotInSpan(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
}

/// A basis of one graded piece: the symmetrizations of the lexicographically
/// first words whose symmetrizations are independent.
#[derive(Debug, Clone)]
pub struct ComponentBasis<F> {
    content: Content,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    pivot_words: Vec<usize>,
    coords: CoordinateMap<F>,
}

impl<F: QField> ComponentBasis<F> {
    fn assemble(content: Content, words: Vec<Word>, pivot_words: Vec<usize>, vectors: Vec<SparseVec<F>>) -> Option<Self> {
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let coords = CoordinateMap::new(words.len(), vectors)?;
        Some(ComponentBasis {
            content,
            words,
            index,
            pivot_words,
            coords,
        })
    }

    pub fn content(&self) -> &Content {
        &self.content
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// All words of the content, in lexicographic order (the ambient basis).
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Indices (into [`Self::words`]) of the words whose symmetrizations form the basis.
    pub fn pivot_words(&self) -> &[usize] {
        &self.pivot_words
    }

    /// Basis vector `j` in word coordinates.
    pub fn vector(&self, j: usize) -> &SparseVec<F> {
        &self.coords.basis()[j]
    }

    pub fn vectors(&self) -> &[SparseVec<F>] {
        self.coords.basis()
    }

    pub fn coordinate_map(&self) -> &CoordinateMap<F> {
        &self.coords
    }

    pub fn element(&self, j: usize) -> LinComb<F> {
        self.to_lincomb(self.vector(j))
    }

    pub fn to_lincomb(&self, v: &[(usize, F)]) -> LinComb<F> {
        LinComb::from_terms(v.iter().map(|(i, c)| (self.words[*i].clone(), c.clone())))
    }

    /// Word coordinates of a combination of words of this content.
    pub fn to_sparse(&self, x: &LinComb<F>) -> Option<SparseVec<F>> {
        let mut v = Vec::with_capacity(x.len());
        for (w, c) in x.iter() {
            v.push((self.word_index(w)?, c.clone()));
        }
        Some(canonical_sparse(v))
    }

    /// Coordinates of `x` in this basis, or `None` if `x` is not in the span.
    pub fn coords_of(&self, x: &LinComb<F>) -> Option<Vec<F>> {
        if x.is_zero() {
            return Some(vec![F::zero(); self.dim()]);
        }
        self.coords.coords_checked(&self.to_sparse(x)?)
    }

    /// Combination of basis vectors, as a vector in word coordinates.
    pub fn combine(&self, coeffs: &[F]) -> SparseVec<F> {
        self.coords.combine(coeffs)
    }
}

/// A basis as written to and read from an external cache.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredBasis {
    pub content: String,
    pub pivot_words: Vec<String>,
    /// One entry per basis vector: `(word, scalar)` pairs in canonical string form.
    pub vectors: Vec<Vec<(String, String)>>,
}

/// External persistence for component bases. Implementations must be
/// idempotent: storing the same key twice stores the same value.
pub trait BasisCache: Send + Sync {
    fn load(&self, content: &Content) -> Option<StoredBasis>;
    fn store(&self, content: &Content, basis: &StoredBasis);
    /// Called when a loaded entry fails validation and is recomputed.
    fn report_invalid(&self, content: &Content, reason: &str);
}

/// Deconcatenation structure constants: for basis vector `j` of the source,
/// the list of `(l1, l2, c)` with `Delta_{left,right}(b_j) = sum c b'_{l1} (x) b''_{l2}`.
pub type SplitTable<F> = Vec<Vec<(usize, usize, F)>>;

/// Product structure constants: `table[i][j]` = coordinates of `a_i * b_j`.
pub type ProductTable<F> = Vec<Vec<SparseVec<F>>>;

/// Lazily built, shared bases and structure constants for one braiding.
pub struct BasisStore<F: QField> {
    datum: CartanDatum,
    lambda: Option<WeightSpec>,
    braiding: Braiding<F>,
    bases: RwLock<HashMap<Content, Arc<ComponentBasis<F>>>>,
    splits: RwLock<HashMap<(Content, Content), Arc<SplitTable<F>>>>,
    products: RwLock<HashMap<(Content, Content), Arc<ProductTable<F>>>>,
    cache: Option<Arc<dyn BasisCache>>,
}

impl<F: QField> BasisStore<F> {
    pub fn new(datum: &CartanDatum, lambda: Option<&WeightSpec>, regime: Regime) -> Result<Self, BimoduleError> {
        Ok(BasisStore {
            datum: datum.clone(),
            lambda: lambda.cloned(),
            braiding: Braiding::new(datum, lambda, regime)?,
            bases: RwLock::new(HashMap::new()),
            splits: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
            cache: None,
        })
    }

    pub fn with_cache(mut self, cache: Arc<dyn BasisCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn lambda(&self) -> Option<&WeightSpec> {
        self.lambda.as_ref()
    }

    pub fn braiding(&self) -> &Braiding<F> {
        &self.braiding
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn regime(&self) -> Regime {
        self.braiding.regime()
    }

    pub fn dim(&self, c: &Content) -> usize {
        self.basis(c).dim()
    }

    /// Basis of the graded piece of the given content (built on first use).
    pub fn basis(&self, c: &Content) -> Arc<ComponentBasis<F>> {
        if let Some(b) = self.bases.read().unwrap().get(c) {
            return b.clone();
        }
        assert!(
            c.k == 0 || self.lambda.is_some(),
            "content {c} needs a weight"
        );
        let b = Arc::new(self.load_or_build(c));
        self.bases
            .write()
            .unwrap()
            .entry(c.clone())
            .or_insert(b)
            .clone()
    }

    /// Builds all bases for the given contents, smaller lengths first, in parallel.
    pub fn prefill(&self, contents: &[Content]) {
        let mut by_len: BTreeMap<u32, Vec<&Content>> = BTreeMap::new();
        for c in contents {
            by_len.entry(c.length()).or_default().push(c);
        }
        for (_, level) in by_len {
            level.par_iter().for_each(|c| {
                self.basis(c);
            });
        }
    }

    fn load_or_build(&self, c: &Content) -> ComponentBasis<F> {
        if let Some(cache) = &self.cache {
            if let Some(stored) = cache.load(c) {
                match self.validate_stored(c, &stored) {
                    Ok(b) => return b,
                    Err(reason) => cache.report_invalid(c, &reason),
                }
            }
        }
        let b = self.build(c);
        if let Some(cache) = &self.cache {
            cache.store(c, &self.to_stored(&b));
        }
        b
    }

    fn build(&self, c: &Content) -> ComponentBasis<F> {
        let words = c.words();
        if c.is_zero() {
            return ComponentBasis::assemble(c.clone(), words, vec![0], vec![vec![(0, F::one())]]).unwrap();
        }
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        // Sigma(u a) = Sigma(u) * (a): candidates are pivot words of c - a followed by a
        let mut letters: Vec<Letter> = (0..self.rank()).map(|i| Letter::F(i as u8)).collect();
        letters.push(Letter::V);
        let mut candidates: Vec<(Word, SparseVec<F>)> = Vec::new();
        for a in letters {
            let Some(prev) = c.checked_sub(&Content::of_letter(self.rank(), a)) else {
                continue;
            };
            let pb = self.basis(&prev);
            for (j, &pw) in pb.pivot_words().iter().enumerate() {
                let mut word = pb.words()[pw].clone();
                word.0.push(a);
                let mut acc: Vec<(usize, F)> = Vec::new();
                for (wi, coeff) in pb.vector(j) {
                    self.braiding.shuffle_letter_exps(&pb.words()[*wi], a, |nw, e| {
                        acc.push((index[&nw], coeff.clone() * &self.braiding.qpow(e)));
                    });
                }
                candidates.push((word, canonical_sparse(acc)));
            }
        }
        candidates.sort_by(|x, y| x.0.cmp(&y.0));
        let cols = SparseMatrix::from_rows(words.len(), candidates.iter().map(|x| x.1.clone()).collect()).transpose();
        let chosen = cols.echelon().pivot_columns();
        let pivot_words = chosen.iter().map(|&i| index[&candidates[i].0]).collect();
        let vectors = chosen.iter().map(|&i| candidates[i].1.clone()).collect();
        ComponentBasis::assemble(c.clone(), words, pivot_words, vectors).expect("pivot columns are independent")
    }

    fn to_stored(&self, b: &ComponentBasis<F>) -> StoredBasis {
        StoredBasis {
            content: b.content().key(),
            pivot_words: b.pivot_words().iter().map(|&i| b.words()[i].to_string()).collect(),
            vectors: b
                .vectors()
                .iter()
                .map(|v| v.iter().map(|(i, x)| (b.words()[*i].to_string(), x.to_string())).collect())
                .collect(),
        }
    }

    /// Accepts a cached basis only if every vector is exactly the
    /// symmetrization of its pivot word and the vectors are independent.
    fn validate_stored(&self, c: &Content, s: &StoredBasis) -> Result<ComponentBasis<F>, String> {
        if s.content != c.key() {
            return Err(format!("entry is for content {}", s.content));
        }
        if s.pivot_words.len() != s.vectors.len() {
            return Err("pivot word count does not match vector count".into());
        }
        let words = c.words();
        let by_name: HashMap<String, usize> = words.iter().enumerate().map(|(i, w)| (w.to_string(), i)).collect();
        let mut pivots = Vec::new();
        let mut vectors = Vec::new();
        for (pw, v) in s.pivot_words.iter().zip(&s.vectors) {
            let pi = *by_name.get(pw).ok_or_else(|| format!("unknown word {pw}"))?;
            let mut vec = Vec::new();
            for (w, x) in v {
                let wi = *by_name.get(w).ok_or_else(|| format!("unknown word {w}"))?;
                vec.push((wi, F::parse(x).map_err(|e| e.to_string())?));
            }
            let vec = canonical_sparse(vec);
            let sym = self.braiding.symmetrize_word(&words[pi]);
            let expect: SparseVec<F> = canonical_sparse(sym.iter().map(|(w, x)| (by_name[&w.to_string()], x.clone())).collect());
            if expect != vec {
                return Err(format!("vector for {pw} is not the symmetrization of its pivot word"));
            }
            pivots.push(pi);
            vectors.push(vec);
        }
        ComponentBasis::assemble(c.clone(), words, pivots, vectors).ok_or_else(|| "vectors are dependent".into())
    }

    /// Deconcatenation constants from `left + right` into `left (x) right`.
    pub fn split_table(&self, left: &Content, right: &Content) -> Arc<SplitTable<F>> {
        let key = (left.clone(), right.clone());
        if let Some(t) = self.splits.read().unwrap().get(&key) {
            return t.clone();
        }
        let t = Arc::new(self.compute_split(left, right));
        self.splits.write().unwrap().entry(key).or_insert(t).clone()
    }

    fn compute_split(&self, left: &Content, right: &Content) -> SplitTable<F> {
        let src = self.basis(&left.add(right));
        let lb = self.basis(left);
        let rb = self.basis(right);
        let (lr, rr) = (lb.coordinate_map().pivot_rows(), rb.coordinate_map().pivot_rows());
        let (li, ri) = (lb.coordinate_map().inverse(), rb.coordinate_map().inverse());
        // position of each concatenated pivot-row word inside the source word list
        let cat: Vec<Vec<usize>> = lr
            .iter()
            .map(|&u| {
                rr.iter()
                    .map(|&w| src.word_index(&lb.words()[u].concat(&rb.words()[w])).unwrap())
                    .collect()
            })
            .collect();
        let mut out = Vec::with_capacity(src.dim());
        for j in 0..src.dim() {
            let v = src.vector(j);
            let lookup: HashMap<usize, &F> = v.iter().map(|(i, x)| (*i, x)).collect();
            // X[u][w] = b_j[u w], then Inv_left X Inv_right^T
            let x: Vec<Vec<Option<&F>>> = cat
                .iter()
                .map(|row| row.iter().map(|i| lookup.get(i).copied()).collect())
                .collect();
            let mut tmp: Vec<Vec<F>> = vec![vec![F::zero(); rr.len()]; lr.len()];
            for (l1, inv_row) in li.iter().enumerate() {
                for (u, a) in inv_row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (w, xv) in x[u].iter().enumerate() {
                        if let Some(xv) = xv {
                            tmp[l1][w] = tmp[l1][w].clone() + a.clone() * *xv;
                        }
                    }
                }
            }
            let mut entries = Vec::new();
            for (l1, trow) in tmp.iter().enumerate() {
                for (l2, inv_row) in ri.iter().enumerate() {
                    let mut s = F::zero();
                    for (w, b) in inv_row.iter().enumerate() {
                        if !b.is_zero() && !trow[w].is_zero() {
                            s = s + b.clone() * &trow[w];
                        }
                    }
                    if !s.is_zero() {
                        entries.push((l1, l2, s));
                    }
                }
            }
            out.push(entries);
        }
        out
    }

    /// Product constants `a_i * b_j` for bases of `left` and `right`, in the
    /// basis of `left + right`.
    pub fn product_table(&self, left: &Content, right: &Content) -> Arc<ProductTable<F>> {
        let key = (left.clone(), right.clone());
        if let Some(t) = self.products.read().unwrap().get(&key) {
            return t.clone();
        }
        let lb = self.basis(left);
        let rb = self.basis(right);
        let tb = self.basis(&left.add(right));
        let t: ProductTable<F> = (0..lb.dim())
            .map(|i| {
                let a = lb.element(i);
                (0..rb.dim())
                    .map(|j| {
                        let p = self.braiding.shuffle_product(&a, &rb.element(j));
                        let v = tb.to_sparse(&p).expect("product has the target content");
                        let c = tb.coordinate_map().coords(&v);
                        c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let t = Arc::new(t);
        self.products.write().unwrap().entry(key).or_insert(t).clone()
    }

    /// The reduced right coaction of a homogeneous element of `M_k`: every
    /// deconcatenation component whose right factor is a nonempty word in the
    /// `F` letters, as pairs `(m, c)` with `c` a basis element of `S(V)`.
    pub fn reduced_right_coaction(&self, x: &LinComb<F>) -> Result<Vec<(LinComb<F>, LinComb<F>)>, BimoduleError> {
        if x.is_zero() {
            return Ok(Vec::new());
        }
        let c = x.content(self.rank()).ok_or(BimoduleError::Inhomogeneous)?;
        let mut out = Vec::new();
        for right in Content::enumerate(self.rank(), 0, 1, c.f_length()) {
            let Some(left) = c.checked_sub(&right) else {
                continue;
            };
            let lb = self.basis(&left);
            let rb = self.basis(&right);
            let p = left.length() as usize;
            // tensor component as a (left word, right word) -> coefficient map
            let mut comp: BTreeMap<(usize, usize), F> = BTreeMap::new();
            for (w, coeff) in x.iter() {
                let (u, v) = w.split(p);
                if let (Some(ui), Some(vi)) = (lb.word_index(&u), rb.word_index(&v)) {
                    comp.insert((ui, vi), coeff.clone());
                }
            }
            if comp.is_empty() {
                continue;
            }
            let not_in_span = || BimoduleError::NotInSpan(format!("{left} (x) {right}"));
            // expand in the right basis first: for each left word, coordinates on the right
            let mut by_right: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); rb.dim()];
            let mut rows: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
            for ((ui, vi), f) in comp {
                rows.entry(ui).or_default().push((vi, f));
            }
            for (ui, r) in rows {
                let coords = rb.coordinate_map().coords_checked(&r).ok_or_else(not_in_span)?;
                for (l2, f) in coords.into_iter().enumerate() {
                    if !f.is_zero() {
                        by_right[l2].insert(ui, f);
                    }
                }
            }
            for (l2, col) in by_right.into_iter().enumerate() {
                if col.is_empty() {
                    continue;
                }
                let v: SparseVec<F> = col.into_iter().collect();
                lb.coordinate_map().coords_checked(&v).ok_or_else(not_in_span)?;
                out.push((lb.to_lincomb(&v), rb.element(l2)));
            }
        }
        Ok(out)
    }

    /// Kernel of the symmetrizer on a content block with no `v_lambda` letters.
    pub fn serre_kernel(&self, c: &Content) -> Vec<LinComb<F>> {
        assert_eq!(c.k, 0, "Serre kernels live in S(V)");
        let words = c.words();
        let m = self.braiding.total_symmetrizer(c);
        m.rank_kernel_image()
            .kernel
            .iter()
            .map(|v| LinComb::from_terms(v.iter().map(|(i, x)| (words[*i].clone(), x.clone()))))
            .collect()
    }
}

/// Contents with `k` copies of `v_lambda` and at most `t_max` simple letters.
pub fn contents_up_to(rank: usize, k: u32, t_max: u32) -> Vec<Content> {
    Content::enumerate(rank, k, 0, t_max)
}

/// Dimensions of all graded pieces with `k` copies of `v_lambda` and at most
/// `t_max` simple letters.
pub fn graded_dimension_table<F: QField>(store: &BasisStore<F>, k: u32, t_max: u32) -> BTreeMap<Content, usize> {
    let contents = contents_up_to(store.rank(), k, t_max);
    store.prefill(&contents);
    contents.into_iter().map(|c| (c.clone(), store.dim(&c))).collect()
}

/// Right coinvariants of `M_k`, per content, as vectors in word coordinates.
#[derive(Debug, Clone)]
pub struct CoinvariantBasis<F> {
    pub k: u32,
    pub t_max: u32,
    pub per_content: BTreeMap<Content, Vec<LinComb<F>>>,
}

impl<F: QField> CoinvariantBasis<F> {
    pub fn dims(&self) -> BTreeMap<Content, usize> {
        self.per_content.iter().map(|(c, v)| (c.clone(), v.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.per_content.values().map(Vec::len).sum()
    }
}

/// Matrix of the reduced right coaction on `M_k(c)`: columns are basis
/// vectors, rows run over all `(left, right)` basis pairs with a nonempty
/// right factor in `S(V)`.
pub fn coaction_matrix<F: QField>(store: &BasisStore<F>, c: &Content) -> SparseMatrix<F> {
    let dim = store.dim(c);
    let mut rows: Vec<(usize, usize, F)> = Vec::new();
    let mut offset = 0;
    for right in Content::enumerate(store.rank(), 0, 1, c.f_length()) {
        let Some(left) = c.checked_sub(&right) else {
            continue;
        };
        let (dl, dr) = (store.dim(&left), store.dim(&right));
        if dl == 0 || dr == 0 {
            continue;
        }
        let t = store.split_table(&left, &right);
        for (j, entries) in t.iter().enumerate() {
            for (l1, l2, x) in entries {
                rows.push((offset + l1 * dr + l2, j, x.clone()));
            }
        }
        offset += dl * dr;
    }
    SparseMatrix::from_triplets(offset, dim, rows)
}

/// Right coinvariants of `M_k` for all contents with at most `t_max` simple letters.
pub fn coinvariants<F: QField>(store: &BasisStore<F>, k: u32, t_max: u32) -> CoinvariantBasis<F> {
    let contents = contents_up_to(store.rank(), k, t_max);
    store.prefill(&contents);
    let results: Vec<(Content, Vec<LinComb<F>>)> = contents
        .par_iter()
        .map(|c| {
            let b = store.basis(c);
            let kernel = coaction_matrix(store, c).rank_kernel_image().kernel;
            let elems = kernel
                .iter()
                .map(|v| {
                    let coeffs = dense(v, b.dim());
                    b.to_lincomb(&b.combine(&coeffs))
                })
                .collect();
            (c.clone(), elems)
        })
        .collect();
    CoinvariantBasis {
        k,
        t_max,
        per_content: results.into_iter().collect(),
    }
}

pub(crate) fn dense<F: QField>(v: &[(usize, F)], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// The multiplication map from pairs of `M_1` coinvariants to `M_2`, per content.
#[derive(Debug, Clone)]
pub struct Degree2Map<F> {
    pub t_max: u32,
    /// Per content of `M_2`: columns are products `x * y` of coinvariant basis
    /// pairs, rows are the words of the content.
    pub matrices: BTreeMap<Content, SparseMatrix<F>>,
    /// Per content of `M_2`: (domain dim, image dim, `M_2` coinvariant dim).
    pub per_content: BTreeMap<Content, (usize, usize, usize)>,
    /// Set when `t_max` cannot hold all weights of `L(lambda) (x) L(lambda)`.
    pub truncation_warning: Option<String>,
}

impl<F> Degree2Map<F> {
    pub fn kernel_dim(&self) -> usize {
        self.per_content.values().map(|(d, i, _)| d - i).sum()
    }

    pub fn image_dim(&self) -> usize {
        self.per_content.values().map(|(_, i, _)| i).sum()
    }

    pub fn domain_dim(&self) -> usize {
        self.per_content.values().map(|(d, _, _)| d).sum()
    }

    pub fn target_dim(&self) -> usize {
        self.per_content.values().map(|(_, _, t)| t).sum()
    }

    pub fn surjective(&self) -> bool {
        self.per_content.values().all(|(_, i, t)| i == t)
    }
}

/// Products `x * y` of `M_1` coinvariants, compared with `M_2` coinvariants.
pub fn degree2_mult_map<F: QField>(store: &BasisStore<F>, t_max: u32) -> Degree2Map<F> {
    let co1 = coinvariants(store, 1, t_max);
    let co2 = coinvariants(store, 2, t_max);
    let datum = store.datum().clone();
    let lambda = store.lambda().expect("degree-2 map needs a weight").clone();
    let needed: u32 = 2 * weyl_character(&datum, &lambda)
        .keys()
        .map(|g| g.iter().sum::<i64>() as u32)
        .max()
        .unwrap_or(0);
    let truncation_warning = (t_max < needed).then(|| {
        format!("t_max = {t_max} is below {needed}, the largest simple length of a weight of L(lambda) (x) L(lambda)")
    });
    let rank = store.rank();
    let results: Vec<(Content, SparseMatrix<F>, (usize, usize, usize))> = co2
        .per_content
        .par_iter()
        .map(|(c, target)| {
            let b = store.basis(c);
            let mut cols: Vec<SparseVec<F>> = Vec::new();
            for (c1, xs) in &co1.per_content {
                let Some(rest) = c.checked_sub(c1) else { continue };
                let Some(ys) = co1.per_content.get(&rest) else { continue };
                for x in xs {
                    for y in ys {
                        let p = store.braiding().shuffle_product(x, y);
                        debug_assert!(p.is_zero() || p.content(rank).as_ref() == Some(c));
                        let v = b.to_sparse(&p).expect("product lands in M_2");
                        cols.push(v);
                    }
                }
            }
            let n = cols.len();
            let m = SparseMatrix::from_rows(b.words().len(), cols).transpose();
            let image = m.rank();
            (c.clone(), m, (n, image, target.len()))
        })
        .collect();
    let mut matrices = BTreeMap::new();
    let mut per_content = BTreeMap::new();
    for (c, m, dims) in results {
        matrices.insert(c.clone(), m);
        per_content.insert(c, dims);
    }
    Degree2Map {
        t_max,
        matrices,
        per_content,
        truncation_warning,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Cyclotomic, RatFunc};

    fn sl2_store(c: i64) -> BasisStore<RatFunc> {
        let d = CartanDatum::sl(2);
        let l = WeightSpec::new(&d, vec![c]).unwrap();
        BasisStore::new(&d, Some(&l), Regime::Generic).unwrap()
    }

    #[test]
    fn sl2_dimensions() {
        let s = sl2_store(1);
        for m in 0..5 {
            assert_eq!(s.dim(&Content::new(vec![m], 0)), 1);
        }
        assert_eq!(s.dim(&Content::new(vec![1], 1)), 2);
        let d = CartanDatum::sl(2);
        let r: BasisStore<Cyclotomic> = BasisStore::new(&d, None, Regime::RootOfUnity { l: 3 }).unwrap();
        assert_eq!(r.dim(&Content::new(vec![2], 0)), 1);
        assert_eq!(r.dim(&Content::new(vec![3], 0)), 0);
    }

    #[test]
    fn sl3_serre() {
        let d = CartanDatum::sl(3);
        let s: BasisStore<RatFunc> = BasisStore::new(&d, None, Regime::Generic).unwrap();
        assert_eq!(s.dim(&Content::new(vec![1, 1], 0)), 2);
        assert_eq!(s.dim(&Content::new(vec![2, 1], 0)), 2);
        assert_eq!(s.serre_kernel(&Content::new(vec![2, 1], 0)).len(), 1);
        assert!(s.serre_kernel(&Content::new(vec![1, 1], 0)).is_empty());
    }

    #[test]
    fn coaction_examples() {
        let s = sl2_store(1);
        let v = LinComb::word(Word::simple(&[0]));
        assert!(s.reduced_right_coaction(&v).unwrap().is_empty());
        let fv = LinComb::word(Word::simple(&[1, 0]));
        assert!(s.reduced_right_coaction(&fv).unwrap().is_empty());
        let vf = LinComb::word(Word::simple(&[0, 1]));
        let parts = s.reduced_right_coaction(&vf).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], (LinComb::word(Word::simple(&[0])), LinComb::word(Word::simple(&[1]))));
    }

    #[test]
    fn sl2_coinvariants() {
        let s = sl2_store(1);
        let co = coinvariants(&s, 1, 3);
        let dims: Vec<usize> = co.dims().values().copied().collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
    }
}
