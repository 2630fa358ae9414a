//! Exact linear algebra over the two-element field.
//!
//! Vectors and matrices are stored sparsely: a vector is the sorted list of
//! coordinates holding 1, a matrix is a list of such columns. Every chain
//! group and boundary operator in the crate is expressed with these two
//! types, and every homology question reduces to [`Gf2Matrix::rank`],
//! [`Gf2Matrix::solve`] or [`ColumnEchelon::contains`].
//!
//! Elimination is column-oriented: each column is reduced against earlier
//! columns by pivoting on its last (largest) nonzero row index. On boundary
//! matrices with sorted cell order this produces far less fill-in than
//! pivoting on the first index.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("expected length {expected}, found {found}")]
    DimensionError { expected: usize, found: usize },
    #[error("index {index} is not below {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
}

impl Gf2Error {
    pub fn name(&self) -> &'static str {
        match self {
            Gf2Error::DimensionError { .. } => "DimensionError",
            Gf2Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        }
    }
}

/// Symmetric difference of two strictly increasing index lists.
fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A vector over Z/2, stored as the sorted set of coordinates equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    support: Vec<usize>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            support: Vec::new(),
        }
    }

    pub fn unit(len: usize, index: usize) -> Result<Self, Gf2Error> {
        Self::from_support(len, [index])
    }

    /// Builds a vector from the coordinates holding 1. Repeated indices are
    /// treated as a set, not summed; see [`Gf2Vector::from_chain`] for
    /// the summing variant.
    pub fn from_support<I>(len: usize, support: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut support: Vec<usize> = support.into_iter().collect();
        if let Some(&index) = support.iter().find(|&&i| i >= len) {
            return Err(Gf2Error::IndexOutOfRange { index, bound: len });
        }
        support.sort_unstable();
        support.dedup();
        Ok(Gf2Vector { len, support })
    }

    /// Sums unit vectors mod 2: an index listed twice cancels.
    pub fn from_chain<I>(len: usize, terms: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut terms: Vec<usize> = terms.into_iter().collect();
        if let Some(&index) = terms.iter().find(|&&i| i >= len) {
            return Err(Gf2Error::IndexOutOfRange { index, bound: len });
        }
        terms.sort_unstable();
        let mut support = Vec::with_capacity(terms.len());
        for t in terms {
            if support.last() == Some(&t) {
                support.pop();
            } else {
                support.push(t);
            }
        }
        Ok(Gf2Vector { len, support })
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut len = 0;
        let mut support = Vec::new();
        for (i, bit) in bits.into_iter().enumerate() {
            if bit {
                support.push(i);
            }
            len = i + 1;
        }
        Gf2Vector { len, support }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn get(&self, index: usize) -> bool {
        self.support.binary_search(&index).is_ok()
    }

    /// Flips one coordinate. Panics if `index >= len`.
    pub fn toggle(&mut self, index: usize) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        match self.support.binary_search(&index) {
            Ok(pos) => {
                self.support.remove(pos);
            }
            Err(pos) => self.support.insert(pos, index),
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.len];
        for &i in &self.support {
            bits[i] = true;
        }
        bits
    }

    pub fn checked_add(&self, other: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::DimensionError {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(Gf2Vector {
            len: self.len,
            support: xor_sorted(&self.support, &other.support),
        })
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        let (mut i, mut j, mut parity) = (0, 0, false);
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    parity = !parity;
                    i += 1;
                    j += 1;
                }
            }
        }
        parity
    }
}

impl Add for &Gf2Vector {
    type Output = Gf2Vector;

    /// Panics on length mismatch; use [`Gf2Vector::checked_add`] otherwise.
    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        self.checked_add(rhs).expect("Gf2Vector length mismatch")
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 64 {
            let bits: String = self
                .to_bits()
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            write!(f, "Gf2Vector[{bits}]")
        } else {
            write!(f, "Gf2Vector(len={}, support={:?})", self.len, self.support)
        }
    }
}

/// A sparse matrix over Z/2, stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<usize>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Builds a matrix from the set of positions holding 1.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut columns = vec![Vec::new(); cols];
        for (r, c) in entries {
            if r >= rows {
                return Err(Gf2Error::IndexOutOfRange {
                    index: r,
                    bound: rows,
                });
            }
            if c >= cols {
                return Err(Gf2Error::IndexOutOfRange {
                    index: c,
                    bound: cols,
                });
            }
            columns[c].push(r);
        }
        for col in &mut columns {
            col.sort_unstable();
            col.dedup();
        }
        Ok(Gf2Matrix {
            rows,
            cols,
            columns,
        })
    }

    pub fn from_columns(rows: usize, columns: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for c in columns {
            if c.len != rows {
                return Err(Gf2Error::DimensionError {
                    expected: rows,
                    found: c.len,
                });
            }
            out.push(c.support);
        }
        Ok(Gf2Matrix {
            rows,
            cols,
            columns: out,
        })
    }

    /// Dense row-major constructor, convenient for small literals.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v & 1 == 1 {
                    columns[j].push(i);
                }
            }
        }
        Gf2Matrix {
            rows: rows.len(),
            cols: ncols,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sorted row indices of the nonzero entries in column `j`.
    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn column_vector(&self, j: usize) -> Gf2Vector {
        Gf2Vector {
            len: self.rows,
            support: self.columns[j].clone(),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].binary_search(&row).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&r| (r, c)))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &r in col {
                columns[r].push(c);
            }
        }
        Gf2Matrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// Appends a column; its length must equal the row count.
    pub fn push_column(&mut self, column: &Gf2Vector) -> Result<(), Gf2Error> {
        if column.len != self.rows {
            return Err(Gf2Error::DimensionError {
                expected: self.rows,
                found: column.len,
            });
        }
        self.columns.push(column.support.clone());
        self.cols += 1;
        Ok(())
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if x.len != self.cols {
            return Err(Gf2Error::DimensionError {
                expected: self.cols,
                found: x.len,
            });
        }
        let terms = x
            .support
            .iter()
            .flat_map(|&c| self.columns[c].iter().copied());
        Gf2Vector::from_chain(self.rows, terms)
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if rhs.rows != self.cols {
            return Err(Gf2Error::DimensionError {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let terms = col.iter().flat_map(|&c| self.columns[c].iter().copied());
                Gf2Vector::from_chain(self.rows, terms).map(|v| v.support)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Gf2Matrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    /// Column echelon form without recording column combinations.
    pub fn echelon(&self) -> ColumnEchelon {
        ColumnEchelon::build(self, false, None)
    }

    /// Untracked echelon form that skips the columns flagged in `skip`.
    ///
    /// The caller guarantees that every skipped column lies in the span of
    /// the columns before it, so the rank is unchanged. Boundary matrices use
    /// this for clearing: a pivot row of a reduced `∂ₖ₊₁` column marks a
    /// `∂ₖ` column that is known to reduce to zero.
    pub fn echelon_skipping(&self, skip: &[bool]) -> ColumnEchelon {
        assert_eq!(skip.len(), self.cols, "one flag per column");
        ColumnEchelon::build(self, false, Some(skip))
    }

    /// Column echelon form that also records, for every reduced column, the
    /// set of original columns summing to it. Needed by `solve` and
    /// `kernel_basis`.
    pub fn echelon_tracked(&self) -> ColumnEchelon {
        ColumnEchelon::build(self, true, None)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Returns some `x` with `self * x = b`, or `None` if `b` is not in the
    /// column space.
    pub fn solve(&self, b: &Gf2Vector) -> Result<Option<Gf2Vector>, Gf2Error> {
        if b.len != self.rows {
            return Err(Gf2Error::DimensionError {
                expected: self.rows,
                found: b.len,
            });
        }
        Ok(self.echelon_tracked().solve(b))
    }

    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        self.echelon_tracked().kernel_basis()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows <= 16 && self.cols <= 64 {
            writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
            for r in 0..self.rows {
                let line: String = (0..self.cols)
                    .map(|c| if self.get(r, c) { '1' } else { '.' })
                    .collect();
                writeln!(f, "  {line}")?;
            }
            write!(f, "]")
        } else {
            write!(
                f,
                "Gf2Matrix {}x{} ({} nonzeros)",
                self.rows,
                self.cols,
                self.nnz()
            )
        }
    }
}

const NO_PIVOT: usize = usize::MAX;

/// Result of reducing the columns of a matrix.
///
/// Every nonzero reduced column has a distinct pivot (its largest row
/// index), so membership in the column space is decided by repeatedly
/// cancelling the pivot entry of a candidate vector.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    rows: usize,
    cols: usize,
    pivot_of_row: Vec<usize>,
    reduced: Vec<Vec<usize>>,
    /// Original column index that produced each reduced column.
    origin: Vec<usize>,
    /// Present only when built with tracking; parallel to `reduced`.
    combos: Option<Vec<Vec<usize>>>,
    kernel: Vec<Vec<usize>>,
}

impl ColumnEchelon {
    fn build(m: &Gf2Matrix, track: bool, skip: Option<&[bool]>) -> Self {
        let mut pivot_of_row = vec![NO_PIVOT; m.rows];
        let mut reduced: Vec<Vec<usize>> = Vec::new();
        let mut origin = Vec::new();
        let mut combos: Vec<Vec<usize>> = Vec::new();
        let mut kernel = Vec::new();

        for (j, original) in m.columns.iter().enumerate() {
            if skip.is_some_and(|s| s[j]) {
                continue;
            }
            let mut col = original.clone();
            let mut combo = if track { vec![j] } else { Vec::new() };
            loop {
                let Some(&lead) = col.last() else {
                    if track {
                        kernel.push(combo);
                    }
                    break;
                };
                let k = pivot_of_row[lead];
                if k == NO_PIVOT {
                    pivot_of_row[lead] = reduced.len();
                    reduced.push(col);
                    origin.push(j);
                    if track {
                        combos.push(combo);
                    }
                    break;
                }
                col = xor_sorted(&col, &reduced[k]);
                if track {
                    combo = xor_sorted(&combo, &combos[k]);
                }
            }
        }

        ColumnEchelon {
            rows: m.rows,
            cols: m.cols,
            pivot_of_row,
            reduced,
            origin,
            combos: track.then_some(combos),
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Indices of the original columns that are independent of all columns
    /// before them, in increasing order.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.origin
    }

    /// Rows holding the pivot of some reduced column.
    pub fn pivot_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.reduced
            .iter()
            .map(|c| *c.last().expect("reduced columns are nonzero"))
    }

    /// Reduces `v` against the pivots, returning the residual and (when
    /// tracking) the original columns used.
    fn reduce(&self, v: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut col = v.to_vec();
        let mut combo = Vec::new();
        while let Some(&lead) = col.last() {
            let k = self.pivot_of_row[lead];
            if k == NO_PIVOT {
                break;
            }
            col = xor_sorted(&col, &self.reduced[k]);
            if let Some(combos) = &self.combos {
                combo = xor_sorted(&combo, &combos[k]);
            }
        }
        (col, combo)
    }

    /// Whether `v` lies in the column space. Panics on length mismatch.
    pub fn contains(&self, v: &Gf2Vector) -> bool {
        assert_eq!(v.len, self.rows, "vector length must equal row count");
        self.reduce(&v.support).0.is_empty()
    }

    /// Requires a tracked echelon; panics otherwise.
    pub fn solve(&self, b: &Gf2Vector) -> Option<Gf2Vector> {
        assert_eq!(b.len, self.rows, "vector length must equal row count");
        assert!(self.combos.is_some(), "solve needs a tracked echelon");
        let (residual, mut combo) = self.reduce(&b.support);
        if !residual.is_empty() {
            return None;
        }
        combo.sort_unstable();
        Some(Gf2Vector {
            len: self.cols,
            support: combo,
        })
    }

    /// Requires a tracked echelon; panics otherwise.
    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        assert!(
            self.combos.is_some(),
            "kernel_basis needs a tracked echelon"
        );
        self.kernel
            .iter()
            .map(|k| Gf2Vector {
                len: self.cols,
                support: k.clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Columns as bitmasks over at most 64 rows.
    fn masks(m: &Gf2Matrix) -> Vec<u64> {
        assert!(m.rows() <= 64);
        (0..m.cols())
            .map(|j| m.column(j).iter().fold(0u64, |acc, &r| acc | (1 << r)))
            .collect()
    }

    fn combo_mask(cols: &[u64], subset: u32) -> u64 {
        cols.iter()
            .enumerate()
            .filter(|(j, _)| subset >> j & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }

    /// Size of the column span by enumerating all 2^cols combinations.
    fn span_size_oracle(m: &Gf2Matrix) -> usize {
        let cols = masks(m);
        let mut seen = std::collections::HashSet::new();
        for s in 0..(1u32 << cols.len()) {
            seen.insert(combo_mask(&cols, s));
        }
        seen.len()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, entries: usize) -> Gf2Matrix {
        let e: Vec<_> = (0..entries)
            .map(|_| (rng.gen_range(0..rows), rng.gen_range(0..cols)))
            .collect();
        Gf2Matrix::from_entries(rows, cols, e).unwrap()
    }

    fn vec_mask(v: &Gf2Vector) -> u64 {
        v.support().iter().fold(0, |acc, &i| acc | (1 << i))
    }

    #[test]
    fn rank_of_identity_and_ones() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::from_rows(&[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn rank_random_6x8_matches_span_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(6008);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 6, 8, 20);
            let span = span_size_oracle(&m);
            assert_eq!(1usize << m.rank(), span);
        }
    }

    #[test]
    fn solve_identity_and_zero() {
        let b = Gf2Vector::from_support(4, [0, 2, 3]).unwrap();
        assert_eq!(Gf2Matrix::identity(4).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Gf2Matrix::zeros(4, 3).solve(&b).unwrap(), None);
        let err = Gf2Matrix::identity(3).solve(&b).unwrap_err();
        assert_eq!(err.name(), "DimensionError");
    }

    #[test]
    fn solve_random_4x6_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(4006);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 4, 6, 10);
            let cols = masks(&m);
            for target in 0..16u64 {
                let b =
                    Gf2Vector::from_support(4, (0..4).filter(|i| target >> i & 1 == 1)).unwrap();
                let exists = (0..64u32).any(|s| combo_mask(&cols, s) == target);
                match m.solve(&b).unwrap() {
                    Some(x) => {
                        assert!(exists);
                        assert_eq!(m.mul_vec(&x).unwrap(), b);
                    }
                    None => assert!(!exists),
                }
            }
        }
    }

    #[test]
    fn kernel_small_cases() {
        assert!(Gf2Matrix::identity(5).kernel_basis().is_empty());
        let k = Gf2Matrix::from_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![Gf2Vector::from_bits([true, true])]);
    }

    #[test]
    fn kernel_random_5x7_matches_null_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5007);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 5, 7, 9);
            let cols = masks(&m);
            let null: Vec<u32> = (0..128u32).filter(|&s| combo_mask(&cols, s) == 0).collect();
            let basis = m.kernel_basis();
            assert_eq!(1usize << basis.len(), null.len());
            // span of the basis equals the enumerated null space
            let bmasks: Vec<u64> = basis.iter().map(vec_mask).collect();
            let mut spanned: Vec<u32> = (0..(1u32 << bmasks.len()))
                .map(|s| combo_mask(&bmasks, s) as u32)
                .collect();
            spanned.sort_unstable();
            spanned.dedup();
            assert_eq!(spanned, null);
        }
    }

    #[test]
    fn empty_matrices() {
        let m = Gf2Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
        let m = Gf2Matrix::zeros(3, 0);
        assert_eq!(m.rank(), 0);
        assert_eq!(
            m.solve(&Gf2Vector::zeros(3)).unwrap(),
            Some(Gf2Vector::zeros(0))
        );
        let b = Gf2Vector::unit(3, 1).unwrap();
        assert_eq!(m.solve(&b).unwrap(), None);
    }

    #[test]
    fn from_chain_cancels_pairs() {
        let v = Gf2Vector::from_chain(5, [1, 3, 1, 4, 4, 4]).unwrap();
        assert_eq!(v.support(), &[3, 4]);
        assert!(Gf2Vector::from_chain(2, [2]).is_err());
    }

    #[test]
    fn echelon_contains_agrees_with_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let m = random_matrix(&mut rng, 10, 6, 14);
        let ech = m.echelon();
        for t in 0..1024u32 {
            let b = Gf2Vector::from_support(10, (0..10).filter(|i| t >> i & 1 == 1)).unwrap();
            assert_eq!(ech.contains(&b), m.solve(&b).unwrap().is_some());
        }
    }

    #[test]
    fn large_grid_incidence_rank() {
        // vertex-edge incidence of a 320x320 grid graph: ~1e5 rows,
        // ~2e5 columns, ~4e5 nonzeros; a connected graph has rank V - 1
        let n = 320;
        let id = |x: usize, y: usize| x * n + y;
        let mut e = Vec::new();
        let mut col = 0;
        for x in 0..n {
            for y in 0..n {
                if x + 1 < n {
                    e.extend([(id(x, y), col), (id(x + 1, y), col)]);
                    col += 1;
                }
                if y + 1 < n {
                    e.extend([(id(x, y), col), (id(x, y + 1), col)]);
                    col += 1;
                }
            }
        }
        let m = Gf2Matrix::from_entries(n * n, col, e).unwrap();
        assert_eq!(m.rank(), n * n - 1);
    }

    fn arb_matrix() -> impl Strategy<Value = Gf2Matrix> {
        (0usize..9, 0usize..13).prop_flat_map(|(rows, cols)| {
            let cells = rows * cols;
            proptest::collection::vec(any::<bool>(), cells).prop_map(move |bits| {
                let e = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| (i / cols.max(1), i % cols.max(1)));
                Gf2Matrix::from_entries(rows, cols, e).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.cols(), m.rank() + k.len());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
        }

        #[test]
        fn solve_is_exact_or_exhaustively_impossible(m in arb_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = Gf2Vector::from_bits((0..m.rows()).map(|_| rng.gen_bool(0.5)));
            match m.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
                None => {
                    let cols = masks(&m);
                    let target = vec_mask(&b);
                    prop_assert!((0..(1u32 << cols.len())).all(|s| combo_mask(&cols, s) != target));
                }
            }
        }
    }
}
