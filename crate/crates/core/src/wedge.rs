//! The tropical Grassmann algebra `∧V`.
//!
//! `∧V` is the symmetric algebra on `V` with the squares of the basis
//! vectors set to zero, so `∧^d V` is free on the `e_I` with `|I| = d` and
//! the product is commutative: `e_I ∧ e_J = e_{I∪J}` when `I` and `J` are
//! disjoint and zero otherwise. Coefficients of a wedge of vectors are
//! permanents of submatrices.
//!
//! A [`Tensor`] doubles as an element of `∧^d V^∨` in the `x_I` basis; the
//! quotient module code uses it that way.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linmod::Vector;
use crate::plucker;
use crate::semiring::{Boolean, Semifield};
use crate::subset::{combinations, sub_subsets, Subset, MAX_RANK};

/// A homogeneous element of `∧^d V`, stored sparsely without zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor<S> {
    n: usize,
    degree: usize,
    entries: BTreeMap<Subset, S>,
}

impl<S: Semifield> Tensor<S> {
    /// The zero tensor. Degrees above `n` are allowed and stay zero.
    pub fn zero(n: usize, degree: usize) -> Self {
        assert!(n <= MAX_RANK, "ambient rank {n} exceeds {MAX_RANK}");
        Tensor {
            n,
            degree,
            entries: BTreeMap::new(),
        }
    }

    /// The degree-0 unit, neutral for `∧`.
    pub fn unit(n: usize) -> Self {
        let mut t = Self::zero(n, 0);
        t.entries.insert(Subset::EMPTY, S::one());
        t
    }

    /// `e_I`.
    pub fn basis(n: usize, index: Subset) -> Result<Self> {
        Self::from_entries(n, index.len(), [(index, S::one())])
    }

    /// `Σ_{|K| = k} e_K`, the uniform tensor.
    pub fn uniform(n: usize, k: usize) -> Self {
        let mut t = Self::zero(n, k);
        for index in combinations(n, k) {
            t.entries.insert(index, S::one());
        }
        t
    }

    /// Sum of `e_I` over the given indices with coefficient one.
    pub fn indicator<I>(n: usize, degree: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        Self::from_entries(n, degree, indices.into_iter().map(|i| (i, S::one())))
    }

    /// Builds a tensor, validating every index and dropping zero values.
    /// Repeated indices are summed.
    pub fn from_entries<I>(n: usize, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, S)>,
    {
        if n > MAX_RANK {
            return Err(Error::DegreeOutOfRange { degree: n, n: MAX_RANK });
        }
        let full = Subset::full(n);
        let mut t = Self::zero(n, degree);
        for (index, value) in entries {
            if index.len() != degree || !index.is_subset_of(full) {
                return Err(Error::InvalidSubset(format!(
                    "{{{index}}} is not a {degree}-subset of [{n}]"
                )));
            }
            t.accumulate(index, &value);
        }
        Ok(t)
    }

    fn accumulate(&mut self, index: Subset, value: &S) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(index) {
            btree_map::Entry::Vacant(e) => {
                e.insert(value.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(value);
                e.insert(v);
            }
        }
    }

    /// A vector as a degree-1 tensor.
    pub fn from_vector(v: &Vector<S>) -> Self {
        let n = v.len();
        let mut t = Self::zero(n, 1);
        for (i, x) in v.entries().iter().enumerate() {
            t.accumulate(Subset::singleton(i + 1), x);
        }
        t
    }

    /// Dense coordinates of a degree-1 tensor.
    pub fn to_vector(&self) -> Result<Vector<S>> {
        if self.degree != 1 {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree,
                n: self.n,
            });
        }
        Ok(Vector::new(
            (1..=self.n).map(|i| self.value(Subset::singleton(i))).collect(),
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: Subset) -> Option<&S> {
        self.entries.get(&index)
    }

    /// Coefficient at `index`, zero when absent.
    pub fn value(&self, index: Subset) -> S {
        self.entries.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_nonzero_at(&self, index: Subset) -> bool {
        self.entries.contains_key(&index)
    }

    /// Nonzero coordinates in lexicographic index order.
    pub fn iter(&self) -> btree_map::Iter<'_, Subset, S> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (&index, value) in &other.entries {
            out.accumulate(index, value);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (&index, value) in &self.entries {
            out.accumulate(index, &value.mul(s));
        }
        out
    }

    /// Same tensor with the coordinate at `index` replaced.
    pub fn with_value(&self, index: Subset, value: S) -> Result<Self> {
        if index.len() != self.degree || !index.is_subset_of(Subset::full(self.n)) {
            return Err(Error::InvalidSubset(format!("{{{index}}}")));
        }
        let mut out = self.clone();
        out.entries.remove(&index);
        out.accumulate(index, &value);
        Ok(out)
    }

    /// Sets the coordinate at `index` to zero.
    pub fn remove(&mut self, index: Subset) -> Option<S> {
        self.entries.remove(&index)
    }

    /// Coordinate-wise image under a scalar map (e.g. `B ⊂ T`).
    pub fn map<T: Semifield>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        let mut out = Tensor::zero(self.n, self.degree);
        for (&index, value) in &self.entries {
            out.accumulate(index, &f(value));
        }
        out
    }

    /// Relabel the ground set: element `i` goes to `perm[i - 1]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut out = Self::zero(self.n, self.degree);
        for (&index, value) in &self.entries {
            let image: Vec<usize> = index.iter().map(|i| perm[i - 1]).collect();
            out.accumulate(Subset::from_elements(self.n, &image)?, value);
        }
        Ok(out)
    }

    /// Representative of the projective class: the lexicographically least
    /// support index carries coefficient one. Zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.entries.values().next().and_then(S::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.degree == other.degree && self.normalized() == other.normalized()
    }
}

/// `a ∧ b`: `(a∧b)_K = Σ_{I ⊔ J = K} a_I b_J`.
pub fn wedge<S: Semifield>(a: &Tensor<S>, b: &Tensor<S>) -> Result<Tensor<S>> {
    a.check_ambient(b)?;
    let mut out = Tensor::zero(a.n, a.degree + b.degree);
    for (&i, x) in &a.entries {
        for (&j, y) in &b.entries {
            if i.is_disjoint(j) {
                out.accumulate(i.union(j), &x.mul(y));
            }
        }
    }
    Ok(out)
}

/// `v_1 ∧ ... ∧ v_d` as an iterated product; the empty list gives the unit.
pub fn wedge_vectors<S: Semifield>(n: usize, vectors: &[Vector<S>]) -> Result<Tensor<S>> {
    let mut acc = Tensor::unit(n);
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        acc = wedge(&acc, &Tensor::from_vector(v))?;
    }
    Ok(acc)
}

/// A dense rectangular matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Semifield> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: alloc::vec![S::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based entry.
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector<S>> {
        (0..self.rows).map(|r| Vector::new(self.row(r).to_vec())).collect()
    }
}

/// Tropical permanent `Σ_σ Π_i m[i, σ(i)]`.
pub fn permanent<S: Semifield>(m: &Matrix<S>) -> Result<S> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(column_permanent(m, &cols))
}

/// Permanent of the square submatrix on all rows and the given columns.
///
/// Dynamic programming over column subsets: `best[mask]` is the permanent of
/// the first `|mask|` rows restricted to the columns in `mask`.
fn column_permanent<S: Semifield>(m: &Matrix<S>, cols: &[usize]) -> S {
    let k = cols.len();
    debug_assert_eq!(k, m.rows);
    if k == 0 {
        return S::one();
    }
    let mut best = alloc::vec![S::zero(); 1 << k];
    best[0] = S::one();
    for mask in 1usize..1 << k {
        let row = mask.count_ones() as usize - 1;
        let mut acc = S::zero();
        let mut rest = mask;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = &best[mask & !(1 << j)];
            if !prev.is_zero() {
                acc = acc.add(&prev.mul(m.get(row, cols[j])));
            }
        }
        best[mask] = acc;
    }
    best[(1 << k) - 1].clone()
}

/// The vector of maximal minors of a `d × n` matrix, as a `d`-tensor.
pub fn maximal_minors<S: Semifield>(m: &Matrix<S>) -> Result<Tensor<S>> {
    let (d, n) = (m.rows, m.cols);
    if d > n || n > MAX_RANK {
        return Err(Error::DegreeOutOfRange { degree: d, n });
    }
    let mut out = Tensor::zero(n, d);
    for index in combinations(n, d) {
        let cols: Vec<usize> = index.iter().map(|i| i - 1).collect();
        out.accumulate(index, &column_permanent(m, &cols));
    }
    Ok(out)
}

/// Whether `m` is a factorization of `w`, i.e. its maximal minors are `w`.
pub fn verify_factorization<S: Semifield>(w: &Tensor<S>, m: &Matrix<S>) -> Result<bool> {
    Ok(maximal_minors(m)? == *w)
}

/// `★`: `e_I ↦ x_{I^c}`, read back as a tensor of degree `n - d`.
pub fn hodge_star<S: Semifield>(w: &Tensor<S>) -> Tensor<S> {
    let n = w.n;
    let mut out = Tensor::zero(n, n.saturating_sub(w.degree));
    for (&index, value) in &w.entries {
        out.entries.insert(index.complement(n), value.clone());
    }
    out
}

/// Elongation to degree `target`: `w'_J = Σ_{I ⊂ J} w_I`, cross-checked
/// against `w ∧ Σ_{|K| = target - d} e_K`.
pub fn elongate<S: Semifield>(w: &Tensor<S>, target: usize) -> Result<Tensor<S>> {
    if target < w.degree || target > w.n {
        return Err(Error::DegreeOutOfRange {
            degree: target,
            n: w.n,
        });
    }
    let mut direct = Tensor::zero(w.n, target);
    for j in combinations(w.n, target) {
        let mut acc = S::zero();
        for (&i, value) in &w.entries {
            if i.is_subset_of(j) {
                acc = acc.add(value);
            }
        }
        direct.accumulate(j, &acc);
    }
    let via_wedge = wedge(w, &Tensor::uniform(w.n, target - w.degree))?;
    if via_wedge != direct {
        return Err(Error::Inconsistency(format!(
            "elongation formulas disagree at degree {target}"
        )));
    }
    Ok(direct)
}

/// Tropical Plücker vector of the stable sum `L_{w1} ⊕_st L_{w2}`, which is
/// `w1 ∧ w2`. Both inputs must be Plücker vectors and the product nonzero.
pub fn stable_sum<S: Semifield>(w1: &Tensor<S>, w2: &Tensor<S>) -> Result<Tensor<S>> {
    for w in [w1, w2] {
        if !plucker::is_plucker(w)?.is_plucker {
            return Err(Error::NotPlucker);
        }
    }
    let product = wedge(w1, w2)?;
    if product.is_zero() {
        return Err(Error::UndefinedStableSum);
    }
    Ok(product)
}

/// Searches for a `d × n` Boolean matrix whose maximal minors are `w`.
///
/// Rows are enumerated as bit masks in non-decreasing order (the wedge is
/// commutative), restricted to non-loop columns. After each row the partial
/// wedge must only contain independent sets of `w`, since every partial
/// transversal extends to one of the full matrix. `cap` bounds the number of
/// search nodes; exceeding it is an error, never a wrong answer. The first
/// factorization in lexicographic candidate order is returned.
pub fn decompose_boolean(w: &Tensor<Boolean>, cap: usize) -> Result<Option<Matrix<Boolean>>> {
    let (n, d) = (w.n, w.degree);
    if d > n {
        return Ok(w.is_zero().then(|| Matrix::zero(d, n)));
    }
    if w.is_zero() {
        return Ok(Some(Matrix::zero(d, n)));
    }
    let allowed = w.support().fold(0u64, |acc, i| acc | i.bits());
    let mut independent = BTreeSet::new();
    for basis in w.support() {
        independent.extend(sub_subsets(basis).map(Subset::bits));
    }
    let target: Vec<u64> = w.support().map(Subset::bits).collect::<BTreeSet<_>>().into_iter().collect();

    let mut search = Decompose {
        d,
        allowed,
        independent,
        target,
        rows: Vec::with_capacity(d),
        nodes: 0,
        cap,
    };
    let start: Vec<u64> = alloc::vec![0];
    if !search.extend(&start, 1)? {
        return Ok(None);
    }
    let mut m = Matrix::zero(d, n);
    for (r, &row) in search.rows.iter().enumerate() {
        for c in Subset::from_bits(row) {
            m.set(r, c - 1, Boolean::ONE);
        }
    }
    if !verify_factorization(w, &m)? {
        return Err(Error::Inconsistency("decomposition search returned a non-factor".into()));
    }
    Ok(Some(m))
}

struct Decompose {
    d: usize,
    allowed: u64,
    independent: BTreeSet<u64>,
    target: Vec<u64>,
    rows: Vec<u64>,
    nodes: usize,
    cap: usize,
}

impl Decompose {
    /// `partial` is the sorted support of the wedge of the rows so far.
    fn extend(&mut self, partial: &[u64], min_row: u64) -> Result<bool> {
        if self.rows.len() == self.d {
            return Ok(partial == self.target.as_slice());
        }
        let mut row = min_row & self.allowed;
        if row < min_row {
            row = next_submask(row, self.allowed);
        }
        while row != 0 && row >= min_row {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::ResourceCap {
                    what: "decomposition search nodes",
                    cap: self.cap,
                });
            }
            let mut next = BTreeSet::new();
            let mut ok = true;
            'outer: for &k in partial {
                let mut rest = row & !k;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    let grown = k | bit;
                    if !self.independent.contains(&grown) {
                        ok = false;
                        break 'outer;
                    }
                    next.insert(grown);
                }
            }
            if ok && !next.is_empty() {
                let next: Vec<u64> = next.into_iter().collect();
                self.rows.push(row);
                if self.extend(&next, row)? {
                    return Ok(true);
                }
                self.rows.pop();
            }
            row = next_submask(row, self.allowed);
        }
        Ok(false)
    }
}

/// Smallest submask of `allowed` strictly greater than `cur`, or 0.
fn next_submask(cur: u64, allowed: u64) -> u64 {
    let next = (cur | !allowed).wrapping_add(1) & allowed;
    if next <= cur {
        0
    } else {
        next
    }
}
