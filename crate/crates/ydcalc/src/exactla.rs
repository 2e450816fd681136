//! Exact sparse linear algebra over `ThetaScalar`: echelon forms, rank, kernels,
//! solving, and Kronecker composition on tensor powers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{ScalarContext, ThetaScalar};

/// Default hard cap on materialised matrix dimension.
pub const DEFAULT_CAP: usize = 4096;

/// Sparse vector: sorted `(index, value)` pairs, no stored zeros.
pub type SparseVec = Vec<(usize, ThetaScalar)>;

/// Σ cᵢ·vᵢ as a sparse vector.
pub fn lincomb<'a, I>(terms: I) -> SparseVec
where
    I: IntoIterator<Item = (&'a ThetaScalar, &'a SparseVec)>,
{
    let mut acc: BTreeMap<usize, ThetaScalar> = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (k, x) in v {
            let t = c * x;
            match acc.get_mut(k) {
                Some(e) => *e = &*e + &t,
                None => {
                    acc.insert(*k, t);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Accumulate into a map-backed vector; used by the tensor engines.
pub fn acc_add(acc: &mut BTreeMap<usize, ThetaScalar>, k: usize, v: ThetaScalar) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(e) => {
            *e = &*e + &v;
            if e.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, v);
        }
    }
}

pub fn from_map(acc: BTreeMap<usize, ThetaScalar>) -> SparseVec {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn vec_scale(v: &SparseVec, c: &ThetaScalar) -> SparseVec {
    if c.is_zero() {
        return vec![];
    }
    v.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

pub fn vec_sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&b[j].1));
            j += 1;
        } else {
            let d = &a[i].1 - &b[j].1;
            if !d.is_zero() {
                out.push((a[i].0, d));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn vec_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let nb: SparseVec = b.iter().map(|(k, v)| (*k, -v)).collect();
    vec_sub(a, &nb)
}

pub fn vec_get(v: &SparseVec, k: usize) -> Option<&ThetaScalar> {
    v.binary_search_by_key(&k, |e| e.0).ok().map(|i| &v[i].1)
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![vec![]; rows] }
    }

    pub fn identity(ctx: &ScalarContext, n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, ctx.one())]).collect() }
    }

    /// Build from rows; entries are sorted and zeros dropped.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut acc = BTreeMap::new();
                for (k, v) in r {
                    assert!(k < cols, "column {k} out of range {cols}");
                    acc_add(&mut acc, k, v);
                }
                from_map(acc)
            })
            .collect::<Vec<_>>();
        SparseMatrix { rows: data.len(), cols, data }
    }

    /// Build from (row, col, value) triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, t: impl IntoIterator<Item = (usize, usize, ThetaScalar)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, ThetaScalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in t {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            acc_add(&mut acc[r], c, v);
        }
        SparseMatrix { rows, cols, data: acc.into_iter().map(from_map).collect() }
    }

    pub fn from_dense(ctx: &ScalarContext, m: &[Vec<ThetaScalar>]) -> Self {
        let cols = m.first().map_or(0, |r| r.len());
        let _ = ctx;
        Self::from_rows(cols, m.iter().map(|r| r.iter().cloned().enumerate().collect()).collect())
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&ThetaScalar> {
        vec_get(&self.data[r], c)
    }

    pub fn entry(&self, ctx: &ScalarContext, r: usize, c: usize) -> ThetaScalar {
        self.get(r, c).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![vec![]; self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data: t }
    }

    /// Matrix product self·o.
    pub fn mul(&self, o: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let data = self
            .data
            .iter()
            .map(|row| lincomb(row.iter().map(|(k, c)| (c, &o.data[*k]))))
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: o.cols, data })
    }

    /// M·v for a column vector v.
    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = vec![];
        for (r, row) in self.data.iter().enumerate() {
            let (mut i, mut j) = (0, 0);
            let mut acc: Option<ThetaScalar> = None;
            while i < row.len() && j < v.len() {
                match row[i].0.cmp(&v[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let t = &row[i].1 * &v[j].1;
                        acc = Some(match acc {
                            Some(a) => &a + &t,
                            None => t,
                        });
                        i += 1;
                        j += 1;
                    }
                }
            }
            if let Some(a) = acc {
                if !a.is_zero() {
                    out.push((r, a));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape("add: shapes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| vec_add(a, b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape("sub: shapes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| vec_sub(a, b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &ThetaScalar) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| vec_scale(r, c)).collect() }
    }

    /// Kronecker product a ⊗ b, indices (i·rows_b + k, j·cols_b + l).
    pub fn kron(&self, b: &SparseMatrix) -> SparseMatrix {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &b.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        let v = va * vb;
                        if !v.is_zero() {
                            row.push((ca * b.cols + cb, v));
                        }
                    }
                }
                data.push(row);
            }
        }
        SparseMatrix { rows, cols, data }
    }

    /// Exact rank.
    pub fn rank(&self) -> Result<usize> {
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r.clone())?;
        }
        Ok(e.rank())
    }

    /// Basis of {v : M v = 0}.
    pub fn kernel_basis(&self, ctx: &ScalarContext) -> Result<KernelBasis> {
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r.clone())?;
        }
        Ok(KernelBasis { vectors: e.kernel(ctx) })
    }

    /// Some x with M x = b, or None when inconsistent.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        // rows [M | b], pivots restricted to the first `cols` columns
        let n = self.cols;
        let mut e = Echelon::with_pivot_limit(n + 1, n);
        let bmap: BTreeMap<usize, ThetaScalar> = b.iter().cloned().collect();
        for (r, row) in self.data.iter().enumerate() {
            let mut v = row.clone();
            if let Some(x) = bmap.get(&r) {
                v.push((n, x.clone()));
            }
            if !e.insert(v)? && e.inconsistent {
                return Ok(None);
            }
        }
        for (r, _) in &bmap {
            if *r >= self.rows {
                return Err(Error::Shape("rhs longer than matrix".into()));
            }
        }
        let mut x = vec![];
        for (row, &pc) in e.rows.iter().zip(&e.pivots) {
            if let Some(v) = vec_get(row, n) {
                x.push((pc, v.clone()));
            }
        }
        x.sort_by_key(|t| t.0);
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, ctx: &ScalarContext) -> Result<Option<SparseMatrix>> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut e = Echelon::with_pivot_limit(2 * n, n);
        for (r, row) in self.data.iter().enumerate() {
            let mut v = row.clone();
            v.push((n + r, ctx.one()));
            e.insert(v)?;
        }
        if e.rank() < n || e.inconsistent {
            return Ok(None);
        }
        let mut out = vec![vec![]; n];
        for (row, &pc) in e.rows.iter().zip(&e.pivots) {
            out[pc] = row.iter().filter(|(k, _)| *k >= n).map(|(k, v)| (k - n, v.clone())).collect();
        }
        Ok(Some(SparseMatrix { rows: n, cols: n, data: out }))
    }

    /// Dense rendering with canonical scalar text (for reports).
    pub fn to_text_rows(&self, ctx: &ScalarContext) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.entry(ctx, r, c).to_text()).collect()).collect()
    }
}

/// Kernel basis of a matrix.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub vectors: Vec<SparseVec>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// id^{⊗(j−1)} ⊗ c ⊗ id^{⊗(n−j−1)} on V^{⊗n}, for c on V⊗V and 1 ≤ j ≤ n−1.
pub fn compose_on_tensor_slot(c: &SparseMatrix, d: usize, n: usize, j: usize, cap: usize) -> Result<SparseMatrix> {
    if c.rows != d * d || c.cols != d * d {
        return Err(Error::Shape(format!("braiding must be {0}x{0}", d * d)));
    }
    if j == 0 || j >= n {
        return Err(Error::OutOfRange { what: format!("tensor slot (n = {n})"), index: j });
    }
    let size = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::CapExceeded { what: format!("V^⊗{n}"), needed: size, cap });
    }
    let left = d.pow((j - 1) as u32);
    let right = d.pow((n - j - 1) as u32);
    let mut data = Vec::with_capacity(size);
    for l in 0..left {
        for m in 0..d * d {
            for r in 0..right {
                let row = c.row(m).iter().map(|(k, v)| ((l * d * d + k) * right + r, v.clone())).collect();
                data.push(row);
            }
        }
    }
    Ok(SparseMatrix { rows: size, cols: size, data })
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a pivot column holding 1 where all other stored rows vanish.
/// Pivots may sit anywhere (not necessarily the leading entry); the choice prefers
/// θ-free entries of small support to keep fill-in down.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ncols: usize,
    pivot_limit: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    col_pivot: BTreeMap<usize, usize>,
    /// Set when a row reduced to something supported only beyond the pivot limit.
    pub inconsistent: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self::with_pivot_limit(ncols, ncols)
    }

    pub fn with_pivot_limit(ncols: usize, pivot_limit: usize) -> Self {
        Echelon { ncols, pivot_limit, rows: vec![], pivots: vec![], col_pivot: BTreeMap::new(), inconsistent: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v modulo the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(ThetaScalar, usize)> = v
            .iter()
            .filter_map(|(k, x)| self.col_pivot.get(k).map(|&r| (x.clone(), r)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let comb = lincomb(hits.iter().map(|(x, r)| (x, &self.rows[*r])));
        vec_sub(v, &comb)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a row; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> Result<bool> {
        let r = self.reduce(&v);
        if r.is_empty() {
            return Ok(false);
        }
        let mut best: Option<(bool, usize, usize, usize)> = None;
        let mut saw_candidate = false;
        for (idx, (k, x)) in r.iter().enumerate() {
            if *k >= self.pivot_limit {
                continue;
            }
            saw_candidate = true;
            if !x.is_unit() {
                continue;
            }
            let key = (!x.is_cyclotomic(), x.support(), *k, idx);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        let Some((_, _, col, idx)) = best else {
            if saw_candidate {
                return Err(Error::NonInvertiblePivot(r[0].0));
            }
            self.inconsistent = true;
            return Ok(false);
        };
        let inv = r[idx].1.try_inv()?;
        let r = vec_scale(&r, &inv);
        for row in self.rows.iter_mut() {
            if let Some(x) = vec_get(row, col).cloned() {
                *row = vec_sub(row, &vec_scale(&r, &x));
            }
        }
        self.col_pivot.insert(col, self.rows.len());
        self.rows.push(r);
        self.pivots.push(col);
        Ok(true)
    }

    /// Coordinates of v in terms of the stored rows, if v lies in their span.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<(usize, ThetaScalar)>> {
        let mut out: Vec<(usize, ThetaScalar)> = v
            .iter()
            .filter_map(|(k, x)| self.col_pivot.get(k).map(|&r| (r, x.clone())))
            .collect();
        if !self.reduce(v).is_empty() {
            return None;
        }
        out.sort_by_key(|t| t.0);
        Some(out)
    }

    /// Kernel of the row space: one vector per non-pivot column (below the pivot limit).
    pub fn kernel(&self, ctx: &ScalarContext) -> Vec<SparseVec> {
        let mut out = vec![];
        for f in 0..self.pivot_limit {
            if self.col_pivot.contains_key(&f) {
                continue;
            }
            let mut v = vec![(f, ctx.one())];
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if let Some(x) = vec_get(row, f) {
                    v.push((pc, -x));
                }
            }
            v.sort_by_key(|t| t.0);
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScalarContext {
        ScalarContext::new(2).unwrap()
    }

    #[test]
    fn identity_and_zero_rank() {
        let k = ctx();
        assert_eq!(SparseMatrix::identity(&k, 5).rank().unwrap(), 5);
        assert_eq!(SparseMatrix::zeros(4, 3).rank().unwrap(), 0);
        assert!(SparseMatrix::identity(&k, 3).kernel_basis(&k).unwrap().vectors.is_empty());
    }

    #[test]
    fn one_dim_symmetrizer_is_zero() {
        // Ω₂ = 1 + (−1) for an odd one-dimensional object.
        let k = ctx();
        let m = SparseMatrix::from_triplets(1, 1, [(0, 0, &k.one() + &k.int(-1))]);
        assert_eq!(m.rank().unwrap(), 0);
    }

    #[test]
    fn outer_product_kernel() {
        let k = ScalarContext::new(3).unwrap();
        let u = [k.xi(), k.int(2), k.theta()];
        let w = [k.one(), k.xi_pow(4), k.ratio(1, 3)];
        let m = SparseMatrix::from_triplets(3, 3, (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (i, j, &u[i] * &w[j])));
        assert_eq!(m.rank().unwrap(), 1);
        let kb = m.kernel_basis(&k).unwrap();
        assert_eq!(kb.dim(), 2);
        for v in &kb.vectors {
            assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let k = ScalarContext::new(3).unwrap();
        let m = SparseMatrix::from_triplets(2, 2, [(0, 0, k.xi()), (0, 1, k.one()), (1, 1, k.theta())]);
        let inv = m.inverse(&k).unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), SparseMatrix::identity(&k, 2));
        let b = vec![(0, k.one()), (1, k.int(2))];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let sing = SparseMatrix::from_triplets(2, 2, [(0, 0, k.one()), (1, 0, k.one())]);
        assert!(sing.solve(&vec![(0, k.one())]).unwrap().is_none());
        assert!(sing.inverse(&k).unwrap().is_none());
    }

    #[test]
    fn tensor_slots() {
        let k = ctx();
        let c = SparseMatrix::from_triplets(4, 4, (0..4).map(|i| (i, 3 - i, k.xi_pow(i as i64))));
        assert_eq!(compose_on_tensor_slot(&c, 2, 2, 1, DEFAULT_CAP).unwrap(), c);
        let id = SparseMatrix::identity(&k, 4);
        assert_eq!(compose_on_tensor_slot(&id, 2, 3, 1, DEFAULT_CAP).unwrap(), SparseMatrix::identity(&k, 8));
        assert_eq!(compose_on_tensor_slot(&c, 2, 3, 1, DEFAULT_CAP).unwrap(), c.kron(&SparseMatrix::identity(&k, 2)));
        assert_eq!(compose_on_tensor_slot(&c, 2, 3, 2, DEFAULT_CAP).unwrap(), SparseMatrix::identity(&k, 2).kron(&c));
        assert!(compose_on_tensor_slot(&c, 2, 3, 3, DEFAULT_CAP).is_err());
        assert!(matches!(compose_on_tensor_slot(&c, 2, 13, 1, DEFAULT_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn zero_divisor_pivot_is_reported() {
        let k = ctx();
        let z = &(&k.one() + &k.xi()) - &k.theta();
        let m = SparseMatrix::from_triplets(1, 1, [(0, 0, z)]);
        assert!(matches!(m.rank(), Err(Error::NonInvertiblePivot(0))));
    }
}
