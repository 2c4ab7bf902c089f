//! Content-graded chain complexes and their exact homology.

mod bar;
mod cobar;
mod koszul;

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};

use rayon::prelude::*;

use crate::arith::{Field, Regime, SparseMatrix};

pub use bar::bar_complex;
pub use cobar::{cohochschild_complex, unnormalized_cohochschild_complex, TensorTerms};
pub use koszul::{
    gr_algebra, koszul_complex, koszul_d, koszul_split_root_of_unity, omega_coeffs, wambst_homotopy, GrAlgebraSpec, KoszulBlock,
    KoszulComplex, KoszulElement, KoszulKey, Monomial, HomotopyError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `d` lowers the degree.
    Homological,
    /// `delta` raises the degree.
    Cohomological,
}

/// One block of a complex. `maps[n]` connects degrees `n` and `n + 1`: it is
/// `C^n -> C^{n+1}` for cohomological complexes and `C_{n+1} -> C_n` for
/// homological ones.
#[derive(Debug, Clone)]
pub struct Block<F> {
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMatrix<F>>,
    /// True when the block has no terms beyond the last stored degree.
    pub bounded: bool,
}

impl<F: Field> Block<F> {
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// Highest degree whose homology is determined by the stored terms.
    pub fn exact_through(&self) -> usize {
        if self.bounded {
            self.top()
        } else {
            self.top().saturating_sub(1)
        }
    }

    fn check_shapes(&self, dir: Direction) -> Result<(), String> {
        if self.maps.len() + 1 != self.dims.len() && !(self.dims.is_empty() && self.maps.is_empty()) {
            return Err(format!("{} maps for {} terms", self.maps.len(), self.dims.len()));
        }
        for (n, m) in self.maps.iter().enumerate() {
            let (src, dst) = match dir {
                Direction::Cohomological => (self.dims[n], self.dims[n + 1]),
                Direction::Homological => (self.dims[n + 1], self.dims[n]),
            };
            if m.ncols() != src || m.nrows() != dst {
                return Err(format!("map at degree {n} has shape {}x{}, expected {dst}x{src}", m.nrows(), m.ncols()));
            }
        }
        Ok(())
    }
}

/// A chain complex split into independent blocks.
#[derive(Debug, Clone)]
pub struct GradedComplex<F, K: Ord> {
    pub kind: String,
    pub direction: Direction,
    pub blocks: BTreeMap<K, Block<F>>,
}

impl<F: Field, K: Ord + Clone + Display + Send + Sync> GradedComplex<F, K> {
    pub fn new(kind: &str, direction: Direction) -> Self {
        GradedComplex {
            kind: kind.to_string(),
            direction,
            blocks: BTreeMap::new(),
        }
    }

    /// Checks matrix shapes and that consecutive differentials compose to zero.
    pub fn verify_square_zero(&self) -> Result<(), String> {
        let items: Vec<(&K, &Block<F>)> = self.blocks.iter().collect();
        items.par_iter().try_for_each(|(k, b)| {
            b.check_shapes(self.direction).map_err(|e| format!("block {k}: {e}"))?;
            for n in 0..b.maps.len().saturating_sub(1) {
                let comp = match self.direction {
                    Direction::Cohomological => b.maps[n + 1].mul(&b.maps[n]),
                    Direction::Homological => b.maps[n].mul(&b.maps[n + 1]),
                };
                if !comp.is_zero() {
                    return Err(format!("block {k}: differential squares to nonzero at degree {n}"));
                }
            }
            Ok(())
        })
    }

    pub fn term_dims(&self) -> BTreeMap<(usize, K), usize> {
        let mut out = BTreeMap::new();
        for (k, b) in &self.blocks {
            for (n, d) in b.dims.iter().enumerate() {
                out.insert((n, k.clone()), *d);
            }
        }
        out
    }
}

/// Per-degree, per-block homology dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport<K: Ord> {
    pub kind: String,
    pub regime: Option<Regime>,
    pub lambda: Option<String>,
    pub t_max: Option<u32>,
    pub dims: BTreeMap<(usize, K), usize>,
    /// Blocks whose homology is only known up to a degree below the requested one.
    pub incomplete: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> HomologyReport<K> {
    pub fn total(&self, n: usize) -> usize {
        self.dims.iter().filter(|((m, _), _)| *m == n).map(|(_, d)| d).sum()
    }

    pub fn at(&self, n: usize, key: &K) -> usize {
        self.dims.get(&(n, key.clone())).copied().unwrap_or(0)
    }

    /// Totals per degree, summing blocks with the same image under `f`.
    pub fn grouped<G: Ord>(&self, f: impl Fn(&K) -> G) -> BTreeMap<(usize, G), usize> {
        let mut out = BTreeMap::new();
        for ((n, k), d) in &self.dims {
            *out.entry((*n, f(k))).or_insert(0) += d;
        }
        out
    }

    pub fn with_metadata(mut self, regime: Regime, lambda: Option<String>, t_max: Option<u32>) -> Self {
        self.regime = Some(regime);
        self.lambda = lambda;
        self.t_max = t_max;
        self
    }
}

/// Exact homology dimensions (`dim ker - dim im`) of every block, up to degree `n_max`.
pub fn homology_ranks<F: Field, K: Ord + Clone + Display + Send + Sync>(
    cx: &GradedComplex<F, K>,
    n_max: usize,
) -> HomologyReport<K> {
    let jobs: Vec<(&K, usize)> = cx
        .blocks
        .iter()
        .flat_map(|(k, b)| (0..b.maps.len()).map(move |n| (k, n)))
        .collect();
    let ranks: BTreeMap<(K, usize), usize> = jobs
        .par_iter()
        .map(|(k, n)| (((*k).clone(), *n), cx.blocks[*k].maps[*n].rank()))
        .collect();
    let mut dims = BTreeMap::new();
    let mut incomplete = BTreeMap::new();
    for (k, b) in &cx.blocks {
        let upto = b.exact_through().min(n_max);
        if b.exact_through() < n_max {
            incomplete.insert(k.clone(), b.exact_through());
        }
        if b.dims.is_empty() {
            continue;
        }
        for n in 0..=upto {
            let r = |m: usize| ranks.get(&(k.clone(), m)).copied().unwrap_or(0);
            // maps[n] joins n and n+1; maps[n-1] joins n-1 and n
            let lower = if n > 0 { r(n - 1) } else { 0 };
            let upper = r(n);
            dims.insert((n, k.clone()), b.dims[n] - lower - upper);
        }
    }
    HomologyReport {
        kind: cx.kind.clone(),
        regime: None,
        lambda: None,
        t_max: None,
        dims,
        incomplete,
    }
}

/// Block key for complexes graded by a content and nothing else.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContentKey(pub crate::braid::Content);

impl Display for ContentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.key())
    }
}
