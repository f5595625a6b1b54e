//! Exact sparse integer linear algebra: Smith invariant factors, integer
//! left kernels, row echelon forms and determinants.
//!
//! Every routine first runs on checked `i64` arithmetic and transparently
//! restarts on `BigInt` if an intermediate value overflows, so results are
//! always exact.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

/// Integer scalar with overflow-aware arithmetic.
pub trait ZScalar: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering;
    fn is_unit(&self) -> bool;
    /// `self - q * other`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    /// Quotient rounding toward negative infinity.
    fn div_floor(&self, other: &Self) -> Self;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn exact_div(&self, other: &Self) -> Self;
}

impl ZScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn div_floor(&self, other: &Self) -> Self {
        Integer::div_floor(self, other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl ZScalar for BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn div_floor(&self, other: &Self) -> Self {
        Integer::div_floor(self, other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Marker for an `i64` overflow; the caller retries on `BigInt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Sparse row: `(column, value)` pairs sorted by column, no zeros stored.
pub type SparseRow<T> = Vec<(usize, T)>;

/// `a - q * b` on sparse rows.
fn row_sub_mul<T: ZScalar>(a: &SparseRow<T>, q: &T, b: &SparseRow<T>) -> Result<SparseRow<T>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = T::zero().sub_mul(q, &b[j].1).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = a[i].1.sub_mul(q, &b[j].1).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn entry<T: ZScalar>(row: &SparseRow<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow<i64>>,
}

impl ZMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let sparse = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, *v))
                    .collect()
            })
            .collect();
        Self {
            nrows: rows.len(),
            ncols,
            rows: sparse,
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseRow<i64>>) -> Self {
        let rows: Vec<SparseRow<i64>> = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                r.retain(|e| e.1 != 0);
                debug_assert!(r.iter().all(|e| e.0 < ncols));
                r
            })
            .collect();
        Self {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| vec![(i, 1)]).collect())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow<i64>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        entry(&self.rows[r], c).copied().unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.ncols];
                for (c, v) in r {
                    d[*c] = *v;
                }
                d
            })
            .collect()
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = std::collections::BTreeMap::<usize, i64>::new();
                for (k, a) in r {
                    for (c, b) in &other.rows[*k] {
                        *acc.entry(*c).or_insert(0) += a * b;
                    }
                }
                acc.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        ZMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Row vector times matrix, in arbitrary precision.
    pub fn left_apply(&self, x: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc = std::collections::BTreeMap::<usize, BigInt>::new();
        for (r, a) in x {
            for (c, b) in &self.rows[*r] {
                *acc.entry(*c).or_insert_with(BigInt::zero) += a * BigInt::from(*b);
            }
        }
        acc.into_iter().filter(|e| !e.1.is_zero()).collect()
    }
}

/// Runs an `i64` attempt and falls back to `BigInt` on overflow.
fn with_fallback<R>(
    small: impl FnOnce() -> Result<R, Overflow>,
    big: impl FnOnce() -> Result<R, Overflow>,
) -> R {
    match small() {
        Ok(r) => r,
        Err(Overflow) => big().expect("arbitrary precision cannot overflow"),
    }
}

fn lift<T: ZScalar>(m: &ZMatrix) -> Vec<SparseRow<T>> {
    m.rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, T::from_i64(*v))).collect())
        .collect()
}

/// Invariant factors `d_1 | d_2 | … | d_r` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one (torsion coefficients).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form invariant factors by sparse elimination.
///
/// Pivots are chosen with minimal absolute value (units first, ties broken by
/// Markowitz cost). The matrix is reduced to a diagonal, which is then put in
/// divisibility order by gcd/lcm exchanges.
pub fn smith_normal_form(m: &ZMatrix) -> SnfResult {
    let diag = with_fallback(
        || diagonalize::<i64>(lift(m), m.ncols).map(|d| d.iter().map(ZScalar::to_big).collect()),
        || diagonalize::<BigInt>(lift(m), m.ncols),
    );
    SnfResult {
        factors: normalize_diagonal(diag),
    }
}

pub fn rank(m: &ZMatrix) -> usize {
    smith_normal_form(m).rank()
}

struct ColIndex {
    cols: Vec<BTreeSet<usize>>,
}

impl ColIndex {
    fn new<T>(rows: &[SparseRow<T>], ncols: usize) -> Self {
        let mut cols = vec![BTreeSet::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                cols[*c].insert(i);
            }
        }
        Self { cols }
    }

    fn replace<T>(&mut self, row: usize, old: &SparseRow<T>, new: &SparseRow<T>) {
        for (c, _) in old {
            self.cols[*c].remove(&row);
        }
        for (c, _) in new {
            self.cols[*c].insert(row);
        }
    }
}

fn pick_pivot<T: ZScalar>(rows: &[SparseRow<T>], active: &[bool], idx: &ColIndex) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in rows.iter().enumerate() {
        if !active[i] {
            continue;
        }
        for (c, v) in r {
            let cost = (r.len() - 1) * (idx.cols[*c].len() - 1);
            let better = match best {
                None => true,
                Some((bi, bc, bcost)) => {
                    let bv = entry(&rows[bi], bc).expect("pivot entry");
                    match v.abs_cmp(bv) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => cost < bcost,
                        std::cmp::Ordering::Greater => false,
                    }
                }
            };
            if better {
                best = Some((i, *c, cost));
                if v.is_unit() && cost == 0 {
                    return Some((i, *c));
                }
            }
        }
    }
    best.map(|(i, c, _)| (i, c))
}

fn diagonalize<T: ZScalar>(mut rows: Vec<SparseRow<T>>, ncols: usize) -> Result<Vec<T>, Overflow> {
    let mut idx = ColIndex::new(&rows, ncols);
    let mut active = vec![true; rows.len()];
    let mut diag = Vec::new();
    while let Some((mut r, mut c)) = pick_pivot(&rows, &active, &idx) {
        loop {
            let p = entry(&rows[r], c).expect("pivot").clone();
            // Clear column c in every other row.
            let others: Vec<usize> = idx.cols[c].iter().copied().filter(|&i| i != r).collect();
            let mut smaller: Option<(usize, T)> = None;
            for i in others {
                let a = entry(&rows[i], c).expect("indexed entry").clone();
                let q = a.div_floor(&p);
                let new = row_sub_mul(&rows[i], &q, &rows[r])?;
                idx.replace(i, &rows[i], &new);
                rows[i] = new;
                if let Some(rem) = entry(&rows[i], c) {
                    if smaller.as_ref().is_none_or(|(_, s)| rem.abs_cmp(s).is_lt()) {
                        smaller = Some((i, rem.clone()));
                    }
                }
            }
            if let Some((i, _)) = smaller {
                r = i;
                continue;
            }
            // Column c is now zero outside row r, so column operations only
            // touch row r itself.
            let mut new_row: SparseRow<T> = Vec::with_capacity(rows[r].len());
            let mut smaller_col: Option<(usize, T)> = None;
            for (j, a) in &rows[r] {
                if *j == c {
                    new_row.push((*j, a.clone()));
                    continue;
                }
                let q = a.div_floor(&p);
                let rem = a.sub_mul(&q, &p).ok_or(Overflow)?;
                if !rem.is_zero() {
                    if smaller_col.as_ref().is_none_or(|(_, s)| rem.abs_cmp(s).is_lt()) {
                        smaller_col = Some((*j, rem.clone()));
                    }
                    new_row.push((*j, rem));
                }
            }
            idx.replace(r, &rows[r], &new_row);
            rows[r] = new_row;
            if let Some((j, _)) = smaller_col {
                c = j;
                continue;
            }
            diag.push(p);
            active[r] = false;
            let old = std::mem::take(&mut rows[r]);
            idx.replace(r, &old, &Vec::new());
            break;
        }
    }
    Ok(diag)
}

fn normalize_diagonal<T: ZScalar>(diag: Vec<T>) -> Vec<BigInt> {
    let mut ones = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diag {
        let d = d.to_big().abs();
        if d.is_one() {
            ones += 1;
        } else {
            rest.push(d);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = vec![BigInt::one(); ones];
    for d in rest {
        if d.is_one() {
            out.insert(0, d);
        } else {
            out.push(d);
        }
    }
    out
}

/// A ℤ-basis of the left kernel `{x : x·M = 0}`, one sparse row per basis
/// vector (indexed by the rows of `M`).
pub fn left_kernel(m: &ZMatrix) -> Vec<SparseRow<BigInt>> {
    with_fallback(|| left_kernel_impl::<i64>(m), || left_kernel_impl::<BigInt>(m))
}

fn left_kernel_impl<T: ZScalar>(m: &ZMatrix) -> Result<Vec<SparseRow<BigInt>>, Overflow> {
    let mut rows: Vec<SparseRow<T>> = lift(m);
    let mut track: Vec<SparseRow<T>> = (0..m.nrows).map(|i| vec![(i, T::from_i64(1))]).collect();
    let mut idx = ColIndex::new(&rows, m.ncols);
    let mut active = vec![true; m.nrows];
    for c in 0..m.ncols {
        loop {
            let holders: Vec<usize> = idx.cols[c].iter().copied().filter(|&i| active[i]).collect();
            if holders.is_empty() {
                break;
            }
            let r = *holders
                .iter()
                .min_by(|&&a, &&b| {
                    let va = entry(&rows[a], c).expect("entry");
                    let vb = entry(&rows[b], c).expect("entry");
                    va.abs_cmp(vb)
                        .then(rows[a].len().cmp(&rows[b].len()))
                        .then(track[a].len().cmp(&track[b].len()))
                })
                .expect("non-empty");
            if holders.len() == 1 {
                active[r] = false;
                break;
            }
            let p = entry(&rows[r], c).expect("pivot").clone();
            for &i in holders.iter().filter(|&&i| i != r) {
                let a = entry(&rows[i], c).expect("entry").clone();
                let q = a.div_floor(&p);
                let new = row_sub_mul(&rows[i], &q, &rows[r])?;
                idx.replace(i, &rows[i], &new);
                rows[i] = new;
                track[i] = row_sub_mul(&track[i], &q, &track[r])?;
            }
        }
    }
    Ok((0..m.nrows)
        .filter(|&i| active[i])
        .map(|i| {
            debug_assert!(rows[i].is_empty());
            track[i].iter().map(|(c, v)| (*c, v.to_big())).collect()
        })
        .collect())
}

/// Row echelon form of a set of integer rows spanning the same ℤ-lattice.
/// Returns the non-zero echelon rows and their pivot columns.
pub fn row_echelon(rows: &[SparseRow<BigInt>], ncols: usize) -> (Vec<SparseRow<BigInt>>, Vec<usize>) {
    let mut rows: Vec<SparseRow<BigInt>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        loop {
            let holders: Vec<usize> = (0..rows.len())
                .filter(|&i| rows[i].first().is_some_and(|e| e.0 == c))
                .collect();
            if holders.is_empty() {
                break;
            }
            let r = *holders
                .iter()
                .min_by(|&&a, &&b| rows[a][0].1.abs_cmp(&rows[b][0].1))
                .expect("non-empty");
            if holders.len() == 1 {
                let mut row = rows.swap_remove(r);
                if row[0].1.is_negative() {
                    for e in row.iter_mut() {
                        e.1 = -e.1.clone();
                    }
                }
                out.push(row);
                pivots.push(c);
                break;
            }
            let p = rows[r][0].1.clone();
            for &i in holders.iter().filter(|&&i| i != r) {
                let q = ZScalar::div_floor(&rows[i][0].1, &p);
                rows[i] = row_sub_mul(&rows[i], &q, &rows[r]).expect("bigint");
            }
            rows.retain(|row| !row.is_empty());
        }
    }
    (out, pivots)
}

/// Coordinates of `target` in the lattice spanned by echelon rows, or `None`
/// if `target` is not an integer combination of them.
pub fn solve_in_echelon(
    echelon: &[SparseRow<BigInt>],
    pivots: &[usize],
    target: &SparseRow<BigInt>,
) -> Option<Vec<BigInt>> {
    let mut rest = target.clone();
    let mut coords = Vec::with_capacity(echelon.len());
    for (row, &pc) in echelon.iter().zip(pivots) {
        let v = entry(&rest, pc).cloned().unwrap_or_else(BigInt::zero);
        let p = &row[0].1;
        if !(&v % p).is_zero() {
            return None;
        }
        let q = &v / p;
        if !q.is_zero() {
            rest = row_sub_mul(&rest, &q, row).expect("bigint");
        }
        coords.push(q);
    }
    rest.is_empty().then_some(coords)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Determinant of a small `i64` matrix, exact.
pub fn determinant_i64(m: &[Vec<i64>]) -> BigInt {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|v| BigInt::from(*v)).collect())
        .collect();
    determinant(&big)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&ZMatrix::from_dense(m))
            .factors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    /// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
    /// where D_k is the gcd of all k×k minors.
    fn brute_force_factors(m: &[Vec<i64>]) -> Vec<i64> {
        use itertools::Itertools;
        let rows = m.len();
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rs in (0..rows).combinations(k) {
                for cs in (0..cols).combinations(k) {
                    let minor: Vec<Vec<i64>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                    g = g.gcd(&determinant_i64(&minor));
                }
            }
            if g.is_zero() {
                break;
            }
            out.push((&g / &prev).to_i64().unwrap());
            prev = g;
        }
        out
    }

    #[test]
    fn snf_examples() {
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(brute_force_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert!(factors(&[vec![0, 0], vec![0, 0]]).is_empty());
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn bigint_fallback_is_exact() {
        let big = i64::MAX / 3;
        let m = ZMatrix::from_dense(&[vec![big, big - 1], vec![big - 1, big - 7]]);
        let snf = smith_normal_form(&m);
        let det = determinant_i64(&m.to_dense());
        let prod: BigInt = snf.factors.iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant_i64(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant_i64(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]), BigInt::from(4));
        assert_eq!(determinant_i64(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn kernel_of_hollow_triangle_boundary() {
        // edges ab, ac, bc over vertices a, b, c
        let d1 = ZMatrix::from_dense(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        let k = left_kernel(&d1);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = {
            let mut d = vec![0; 3];
            for (c, x) in &k[0] {
                d[*c] = x.to_i64().unwrap();
            }
            d
        };
        assert!(v == vec![1, -1, 1] || v == vec![-1, 1, -1]);
    }

    #[test]
    fn echelon_solve() {
        let rows: Vec<SparseRow<BigInt>> = vec![
            vec![(0, BigInt::from(2)), (1, BigInt::from(1))],
            vec![(0, BigInt::from(1)), (2, BigInt::from(1))],
        ];
        let (ech, piv) = row_echelon(&rows, 3);
        assert_eq!(ech.len(), 2);
        let target: SparseRow<BigInt> = vec![(0, BigInt::from(3)), (1, BigInt::from(1)), (2, BigInt::from(1))];
        let coords = solve_in_echelon(&ech, &piv, &target).unwrap();
        assert_eq!(coords.len(), 2);
        let outside: SparseRow<BigInt> = vec![(1, BigInt::from(1))];
        assert!(solve_in_echelon(&ech, &piv, &outside).is_none());
    }

    proptest! {
        #[test]
        fn snf_matches_determinantal_divisors(
            m in proptest::collection::vec(proptest::collection::vec(-4i64..5, 3), 1..4)
        ) {
            prop_assert_eq!(factors(&m), brute_force_factors(&m));
        }

        #[test]
        fn left_kernel_vectors_annihilate(
            m in proptest::collection::vec(proptest::collection::vec(-3i64..4, 3), 1..6)
        ) {
            let zm = ZMatrix::from_dense(&m);
            let k = left_kernel(&zm);
            prop_assert_eq!(k.len(), m.len() - rank(&zm));
            for v in &k {
                prop_assert!(zm.left_apply(v).is_empty());
            }
        }
    }
}
