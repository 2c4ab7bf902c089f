//! Exact sparse matrices and fraction-free row elimination.

use std::collections::BTreeMap;

use super::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Row-major sparse matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<F>>,
}

/// Sorts by index, merges duplicates, drops zeros.
pub fn canonical_sparse<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// `a*x + b*y` for sparse vectors.
pub fn sparse_axpby<F: Field>(a: &F, x: &[(usize, F)], b: &F, y: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a.clone() * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b.clone() * &y[j].1));
            j += 1;
        } else {
            let v = a.clone() * &x[i].1 + b.clone() * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize_sparse<F: Field>(v: &mut SparseVec<F>) {
    let mut vals: Vec<F> = v.iter().map(|e| e.1.clone()).collect();
    F::normalize_vector(&mut vals);
    for (e, x) in v.iter_mut().zip(vals) {
        e.1 = x;
    }
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    /// Builds from (possibly unsorted, duplicated) row entries.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, F)>>) -> Self {
        let rows: Vec<SparseVec<F>> = rows.into_iter().map(canonical_sparse).collect();
        assert!(
            rows.iter().flatten().all(|e| e.0 < ncols),
            "column index out of range"
        );
        SparseMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); nrows];
        for (r, c, x) in entries {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) out of range");
            rows[r].push((c, x));
        }
        Self::from_rows(ncols, rows)
    }

    pub fn from_dense(ncols: usize, dense: &[Vec<F>]) -> Self {
        let rows = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols);
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            nrows: dense.len(),
            ncols,
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![F::zero(); self.ncols];
                for (j, x) in r {
                    d[*j] = x.clone();
                }
                d
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec<F>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                rows[*j].push((i, x.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, F> = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        let t = a.clone() * b;
                        match acc.get_mut(j) {
                            Some(v) => *v = v.clone() + t,
                            None => {
                                acc.insert(*j, t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|e| !e.1.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|(j, _)| !v[*j].is_zero())
                    .fold(F::zero(), |acc, (j, x)| acc + x.clone() * &v[*j])
            })
            .collect()
    }

    pub fn mul_sparse_vec(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let dense_idx: BTreeMap<usize, &F> = v.iter().map(|(i, x)| (*i, x)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let mut acc = F::zero();
                for (j, x) in r {
                    if let Some(y) = dense_idx.get(j) {
                        acc = acc + x.clone() * *y;
                    }
                }
                (!acc.is_zero()).then_some((i, acc))
            })
            .collect()
    }

    /// Row echelon form by fraction-free elimination.
    ///
    /// Columns are scanned left to right; among the rows whose first nonzero
    /// entry sits in the current column, the one with the lowest original index
    /// becomes the pivot. Every updated row is rescaled with
    /// [`Field::normalize_vector`] to keep coefficients small.
    pub fn echelon(&self) -> Echelon<F> {
        let mut buckets: BTreeMap<usize, Vec<(usize, SparseVec<F>)>> = BTreeMap::new();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(&(lead, _)) = r.first() {
                let mut r = r.clone();
                normalize_sparse(&mut r);
                buckets.entry(lead).or_default().push((i, r));
            }
        }
        let mut pivots = Vec::new();
        while let Some((col, mut group)) = buckets.pop_first() {
            group.sort_by_key(|e| e.0);
            let mut it = group.into_iter();
            let (_, prow) = it.next().unwrap();
            let a = prow[0].1.clone();
            for (i, r) in it {
                let b = -r[0].1.clone();
                let mut nr = sparse_axpby(&a, &r[1..], &b, &prow[1..]);
                if let Some(&(lead, _)) = nr.first() {
                    normalize_sparse(&mut nr);
                    buckets.entry(lead).or_default().push((i, nr));
                }
            }
            pivots.push((col, prow));
        }
        Echelon {
            ncols: self.ncols,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn rank_kernel_image(&self) -> RankKernelImage<F> {
        let e = self.echelon();
        RankKernelImage {
            rank: e.rank(),
            kernel: e.kernel(),
            image_pivots: e.pivot_columns(),
        }
    }
}

/// Output of [`SparseMatrix::rank_kernel_image`].
#[derive(Clone, Debug)]
pub struct RankKernelImage<F> {
    pub rank: usize,
    /// Basis of the null space, one sparse column vector per free column.
    pub kernel: Vec<SparseVec<F>>,
    /// Columns of the matrix forming a basis of its image.
    pub image_pivots: Vec<usize>,
}

/// A row echelon form: pivot rows in increasing pivot-column order.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivots: Vec<(usize, SparseVec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.0).collect()
    }

    pub fn pivot_rows(&self) -> &[(usize, SparseVec<F>)] {
        &self.pivots
    }

    /// Null space basis by back-substitution, one vector per free column,
    /// with that free column's entry set before normalization.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v: BTreeMap<usize, F> = BTreeMap::new();
            v.insert(f, F::one());
            for (c, row) in self.pivots.iter().rev().filter(|p| p.0 < f) {
                let mut s = F::zero();
                for (j, x) in &row[1..] {
                    if let Some(y) = v.get(j) {
                        s = s + x.clone() * y;
                    }
                }
                if !s.is_zero() {
                    v.insert(*c, -(s / row[0].1.clone()));
                }
            }
            let mut sv: SparseVec<F> = v.into_iter().collect();
            normalize_sparse(&mut sv);
            out.push(sv);
        }
        out
    }
}

/// Coordinates with respect to a linearly independent family of vectors.
///
/// Picks coordinate rows `R` where the family restricts to an invertible
/// square matrix and stores that inverse, so coordinates of a vector in the
/// span cost one small matrix-vector product.
#[derive(Clone, Debug)]
pub struct CoordinateMap<F> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
    rows: Vec<usize>,
    inv: Vec<Vec<F>>,
}

impl<F: Field> CoordinateMap<F> {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(ambient: usize, basis: Vec<SparseVec<F>>) -> Option<Self> {
        let dim = basis.len();
        let bt = SparseMatrix::from_rows(ambient, basis.clone());
        let rows = bt.echelon().pivot_columns();
        if rows.len() != dim {
            return None;
        }
        let square: Vec<Vec<F>> = rows
            .iter()
            .map(|&r| (0..dim).map(|b| bt.get(b, r)).collect())
            .collect();
        let inv = dense_inverse(square).expect("restriction to pivot rows is invertible");
        Some(CoordinateMap {
            ambient,
            basis,
            rows,
            inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    /// The ambient coordinates used to read off coordinates.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.rows
    }

    /// `inv[a][b]`: coefficient of ambient coordinate `pivot_rows()[b]` in coordinate `a`.
    pub fn inverse(&self) -> &[Vec<F>] {
        &self.inv
    }

    /// Coordinates of `v`, assuming `v` lies in the span.
    pub fn coords(&self, v: &[(usize, F)]) -> Vec<F> {
        let restricted: Vec<F> = {
            let mut out = vec![F::zero(); self.rows.len()];
            let mut k = 0;
            for (i, x) in v {
                while k < self.rows.len() && self.rows[k] < *i {
                    k += 1;
                }
                if k < self.rows.len() && self.rows[k] == *i {
                    out[k] = x.clone();
                }
            }
            out
        };
        self.inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&restricted)
                    .filter(|(_, y)| !y.is_zero())
                    .fold(F::zero(), |acc, (a, y)| acc + a.clone() * y)
            })
            .collect()
    }

    /// Coordinates of `v`, or `None` if `v` is not in the span.
    pub fn coords_checked(&self, v: &[(usize, F)]) -> Option<Vec<F>> {
        let x = self.coords(v);
        let mut acc: Vec<(usize, F)> = Vec::new();
        for (b, c) in self.basis.iter().zip(&x) {
            if !c.is_zero() {
                acc.extend(b.iter().map(|(i, y)| (*i, y.clone() * c)));
            }
        }
        let back = canonical_sparse(acc);
        (back.as_slice() == v).then_some(x)
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[F]) -> SparseVec<F> {
        let mut acc: Vec<(usize, F)> = Vec::new();
        for (b, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc.extend(b.iter().map(|(i, y)| (*i, y.clone() * c)));
            }
        }
        canonical_sparse(acc)
    }
}

/// Gauss-Jordan inverse of a square matrix; `None` if singular.
pub fn dense_inverse<F: Field>(mut a: Vec<Vec<F>>) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pinv = a[col][col].inv();
        for j in 0..n {
            if !a[col][j].is_zero() {
                a[col][j] = a[col][j].clone() * &pinv;
            }
            if !inv[col][j].is_zero() {
                inv[col][j] = inv[col][j].clone() * &pinv;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    a[r][j] = a[r][j].clone() - f.clone() * &a[col][j];
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = inv[r][j].clone() - f.clone() * &inv[col][j];
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> SparseMatrix<BigRational> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_i64(x)).collect())
            .collect();
        SparseMatrix::from_dense(ncols, &dense)
    }

    #[test]
    fn repeated_row() {
        let r = m(&[&[1, 1], &[1, 1]]).rank_kernel_image();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.len(), 1);
        assert_eq!(r.image_pivots, vec![0]);
    }

    #[test]
    fn empty_matrix() {
        let r = SparseMatrix::<BigRational>::zeros(0, 0).rank_kernel_image();
        assert_eq!(r.rank, 0);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let r = a.rank_kernel_image();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel.len(), 2);
        for v in &r.kernel {
            assert!(a.mul_sparse_vec(v).is_empty());
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = vec![
            vec![(0, BigRational::from_i64(1)), (2, BigRational::from_i64(1))],
            vec![(1, BigRational::from_i64(2)), (2, BigRational::from_i64(3))],
        ];
        let cm = CoordinateMap::new(3, basis).unwrap();
        let v = cm.combine(&[BigRational::from_i64(5), BigRational::from_ratio(1, 2)]);
        assert_eq!(
            cm.coords_checked(&v).unwrap(),
            vec![BigRational::from_i64(5), BigRational::from_ratio(1, 2)]
        );
        assert!(cm.coords_checked(&[(0, BigRational::from_i64(1))]).is_none());
    }
}
