//! Exact rational affine subspaces in reduced row echelon form, so that two
//! systems describing the same subspace compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Affine subspace `{x ∈ ℝ^d : A x = b}` stored as the reduced row echelon
/// form of `[A | b]`. An inconsistent system is stored as the single row
/// `[0 … 0 | 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    ambient: usize,
    rows: Vec<Vec<Q>>,
}

impl Flat {
    /// Intersection of the affine hyperplanes `a·x = b`.
    pub fn affine(ambient: usize, eqs: Vec<(Vec<Q>, Q)>) -> Self {
        let rows = eqs
            .into_iter()
            .map(|(mut a, b)| {
                assert_eq!(a.len(), ambient, "equation length");
                a.push(b);
                a
            })
            .collect();
        Self::from_augmented(ambient, rows)
    }

    /// Intersection of the linear hyperplanes `a·x = 0`.
    pub fn linear(ambient: usize, eqs: Vec<Vec<Q>>) -> Self {
        Self::affine(ambient, eqs.into_iter().map(|a| (a, Q::zero())).collect())
    }

    pub fn whole(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
        }
    }

    fn from_augmented(ambient: usize, rows: Vec<Vec<Q>>) -> Self {
        let rows = rref(rows, ambient + 1);
        if rows.iter().any(|r| r[..ambient].iter().all(Zero::is_zero)) {
            let mut bad = vec![Q::zero(); ambient + 1];
            bad[ambient] = Q::one();
            return Self {
                ambient,
                rows: vec![bad],
            };
        }
        Self { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Rows of the reduced augmented system.
    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.len() == 1 && self.rows[0][..self.ambient].iter().all(Zero::is_zero)
    }

    pub fn is_linear(&self) -> bool {
        self.rows.iter().all(|r| r[self.ambient].is_zero())
    }

    /// `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        (!self.is_empty()).then(|| self.ambient - self.rows.len())
    }

    pub fn intersect(&self, other: &Flat) -> Flat {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::from_augmented(self.ambient, rows)
    }

    pub fn with_equation(&self, a: &[Q], b: &Q) -> Flat {
        let mut row = a.to_vec();
        row.push(b.clone());
        let mut rows = self.rows.clone();
        rows.push(row);
        Self::from_augmented(self.ambient, rows)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Flat) -> bool {
        other.is_empty() || &self.intersect(other) == other
    }

    /// Whether `self` lies inside the hyperplane `a·x = b`.
    pub fn inside_hyperplane(&self, a: &[Q], b: &Q) -> bool {
        self.is_empty() || &self.with_equation(a, b) == self
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        !self.is_empty()
            && self.rows.iter().all(|r| {
                let lhs: Q = r[..self.ambient].iter().zip(x).map(|(a, b)| a * b).sum();
                lhs == r[self.ambient]
            })
    }

    /// Linear equations `a·x = 0` cutting out the direction space.
    pub fn direction_equations(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|r| r[..self.ambient].to_vec()).collect()
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        if self.rows.is_empty() {
            return write!(f, "R^{}", self.ambient);
        }
        let eqs: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let mut s = String::new();
                for (i, c) in r[..self.ambient].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let sign = if c.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
                    let mag = c.abs();
                    if mag.is_one() {
                        s.push_str(&format!("{sign}x{}", i + 1));
                    } else {
                        s.push_str(&format!("{sign}{mag}x{}", i + 1));
                    }
                }
                format!("{s}={}", r[self.ambient])
            })
            .collect();
        write!(f, "{{{}}}", eqs.join(", "))
    }
}

/// Reduced row echelon form with zero rows dropped.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let red = rref(aug, 2 * n);
    if red.len() < n || (0..n).any(|i| !red[i][i].is_one()) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The primitive integer vector on the ray through `v`.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_equality() {
        let a = Flat::linear(3, vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]]);
        let b = Flat::linear(3, vec![vec![q(2), q(0), q(-2)], vec![q(1), q(-1), q(0)]]);
        assert_eq!(a, b);
        assert_eq!(a.dimension(), Some(1));
        assert!(Flat::whole(3).contains(&a));
        assert!(!a.contains(&Flat::whole(3)));
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let f = Flat::affine(2, vec![(vec![q(1), q(0)], q(1)), (vec![q(1), q(0)], q(2))]);
        assert!(f.is_empty());
        assert_eq!(f.dimension(), None);
        let g = Flat::affine(2, vec![(vec![q(1), q(1)], q(3))]);
        assert!(g.contains_point(&[q(1), q(2)]));
        assert_eq!(g.dimension(), Some(1));
        assert!(!g.is_linear());
    }

    #[test]
    fn inverse_and_primitive() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        let v = vec![Q::new(2.into(), 3.into()), Q::new((-4).into(), 9.into())];
        assert_eq!(primitive(&v), vec![BigInt::from(3), BigInt::from(-2)]);
    }

    #[test]
    fn display() {
        let a = Flat::linear(3, vec![vec![q(1), q(-1), q(0)]]);
        assert_eq!(a.to_string(), "{x1-x2=0}");
        assert_eq!(Flat::whole(2).to_string(), "R^2");
    }
}
