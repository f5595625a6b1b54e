//! Permutations and signed permutations in one-line notation. A signed
//! permutation `(ω, ε)` is written with an apostrophe on the barred letters,
//! e.g. `2' 3 1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partition::SignedElement;

/// One-line permutations of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    (1..=n).permutations(n).collect()
}

pub fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len() + 1];
    w.iter().all(|&x| x >= 1 && x <= w.len() && !std::mem::replace(&mut seen[x], true))
}

/// `(σω)(i) = σ(ω(i))`.
pub fn compose(sigma: &[usize], omega: &[usize]) -> Vec<usize> {
    omega.iter().map(|&x| sigma[x - 1]).collect()
}

pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &x) in sigma.iter().enumerate() {
        inv[x - 1] = i + 1;
    }
    inv
}

pub fn format_permutation(w: &[usize]) -> String {
    w.iter().map(usize::to_string).join(" ")
}

pub fn parse_permutation(s: &str) -> Result<Vec<usize>> {
    let w = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad letter `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if !is_permutation(&w) {
        return Err(Error::Parse(format!("`{s}` is not a permutation")));
    }
    Ok(w)
}

/// Positions `i` (1-based) with `ω(i) > ω(j)` for every `j > i`.
pub fn right_to_left_maxima(omega: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut best = 0;
    for i in (0..omega.len()).rev() {
        if omega[i] > best {
            best = omega[i];
            out.push(i + 1);
        }
    }
    out.reverse();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    omega: Vec<usize>,
    epsilon: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(omega: Vec<usize>, epsilon: Vec<i8>) -> Result<Self> {
        if !is_permutation(&omega) {
            return Err(Error::InvalidParameters(format!("{omega:?} is not a permutation")));
        }
        if epsilon.len() != omega.len() || epsilon.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidParameters(format!("bad sign vector {epsilon:?}")));
        }
        Ok(Self { omega, epsilon })
    }

    pub fn unsigned(omega: Vec<usize>) -> Result<Self> {
        let n = omega.len();
        Self::new(omega, vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn epsilon(&self) -> &[i8] {
        &self.epsilon
    }

    /// Letter at 1-based position `i`.
    pub fn letter(&self, i: usize) -> SignedElement {
        SignedElement::new(self.omega[i - 1], self.epsilon[i - 1])
    }

    pub fn bars(&self) -> usize {
        self.epsilon.iter().filter(|&&e| e < 0).count()
    }

    /// Member of the even-bar subgroup `D_n`.
    pub fn is_even(&self) -> bool {
        self.bars().is_multiple_of(2)
    }

    /// `(ω, ε′)` where `ε′` differs from `ε` in the first sign only.
    pub fn flip_first(&self) -> Self {
        let mut epsilon = self.epsilon.clone();
        if let Some(e) = epsilon.first_mut() {
            *e = -*e;
        }
        Self {
            omega: self.omega.clone(),
            epsilon,
        }
    }

    /// Right-to-left maxima positions of `ω`, all of which are unbarred.
    pub fn rlm_unbarred(&self) -> bool {
        right_to_left_maxima(&self.omega)
            .into_iter()
            .all(|i| self.epsilon[i - 1] > 0)
    }

    /// Every signed permutation of `[n]`: permutations in lexicographic
    /// order, sign vectors in binary order with `+` first.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::with_capacity((1 << n) * (1..=n).product::<usize>());
        for omega in all_permutations(n) {
            for mask in 0u32..(1 << n) {
                let epsilon = (0..n).map(|i| if mask & (1 << (n - 1 - i)) != 0 { -1 } else { 1 }).collect();
                out.push(SignedPermutation {
                    omega: omega.clone(),
                    epsilon,
                });
            }
        }
        out
    }

    pub fn all_even(n: usize) -> Vec<SignedPermutation> {
        Self::all(n).into_iter().filter(Self::is_even).collect()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = (1..=self.n()).map(|i| self.letter(i).to_string()).join(" ");
        f.write_str(&s)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse::<SignedElement>)
            .collect::<Result<Vec<_>>>()?;
        let omega = letters.iter().map(|e| e.value).collect();
        let epsilon = letters.iter().map(SignedElement::sign).collect();
        SignedPermutation::new(omega, epsilon).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rlm_examples() {
        assert_eq!(right_to_left_maxima(&[1, 2, 3, 4]), vec![4]);
        assert_eq!(right_to_left_maxima(&[4, 3, 2, 1]), vec![1, 2, 3, 4]);
        assert_eq!(right_to_left_maxima(&[3, 5, 4, 2, 1]), vec![2, 3, 4, 5]);
    }

    #[test]
    fn signed_text() {
        let w: SignedPermutation = "2' 3 1".parse().unwrap();
        assert_eq!(w.omega(), &[2, 3, 1]);
        assert_eq!(w.epsilon(), &[-1, 1, 1]);
        assert_eq!(w.to_string(), "2' 3 1");
        assert!(w.rlm_unbarred());
        assert!(!w.is_even());
        assert_eq!(w.flip_first().to_string(), "2 3 1");
        assert!("1 1".parse::<SignedPermutation>().is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(SignedPermutation::all(3).len(), 48);
        assert_eq!(SignedPermutation::all_even(3).len(), 24);
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn composition() {
        let sigma = vec![2, 1, 3, 4];
        assert_eq!(compose(&sigma, &[3, 1, 2, 4]), vec![3, 2, 1, 4]);
        assert_eq!(compose(&inverse(&sigma), &compose(&sigma, &[3, 1, 2, 4])), vec![3, 1, 2, 4]);
    }
}
