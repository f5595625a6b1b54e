//! Finite posets with canonical string labels.
//!
//! Elements are always stored in lexicographic label order, so every
//! enumeration (chains, Möbius rows, isomorphism witnesses) is reproducible.
//! The full order relation is kept as a dense bit table; the cover relation is
//! its transitive reduction.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;

#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    height: Vec<usize>,
    topo: Vec<usize>,
}

/// Strictly increasing sequence of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetChain(pub Vec<usize>);

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &self.covers)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from labelled items and a comparison predicate.
    ///
    /// Labels must be unique. The predicate is validated to be a partial
    /// order (reflexive, antisymmetric, transitive).
    pub fn from_relation<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        for w in order.windows(2) {
            if labels[w[0]] == labels[w[1]] {
                return Err(Error::NotAPartialOrder(format!(
                    "duplicate label `{}`",
                    labels[w[0]]
                )));
            }
        }
        let mut table = vec![false; n * n];
        for (i, &oi) in order.iter().enumerate() {
            for (j, &oj) in order.iter().enumerate() {
                table[i * n + j] = i == j || leq(oi, oj);
            }
        }
        let sorted: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        Self::from_table(sorted, table)
    }

    /// Builds a poset from a list of cover pairs given by label.
    pub fn from_covers(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let mut labels = labels;
        labels.sort();
        let n = labels.len();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n {
            return Err(Error::NotAPartialOrder("duplicate label".into()));
        }
        let mut table = vec![false; n * n];
        for i in 0..n {
            table[i * n + i] = true;
        }
        for (a, b) in covers {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            table[ia * n + ib] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if table[i * n + k] {
                    for j in 0..n {
                        if table[k * n + j] {
                            table[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_table(labels, table)
    }

    fn from_table(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` are mutually comparable",
                        labels[i], labels[j]
                    )));
                }
                if leq[i * n + j] {
                    for k in 0..n {
                        if leq[j * n + k] && !leq[i * n + k] {
                            return Err(Error::NotAPartialOrder(format!(
                                "not transitive at `{}` <= `{}` <= `{}`",
                                labels[i], labels[j], labels[k]
                            )));
                        }
                    }
                }
            }
        }
        let below: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| leq[i * n + j]).count())
            .collect();
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&i| (below[i], i));

        let mut covers = Vec::new();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !leq[i * n + j] {
                    continue;
                }
                let implied = (0..n)
                    .any(|k| k != i && k != j && leq[i * n + k] && leq[k * n + j]);
                if !implied {
                    covers.push((i, j));
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        let mut height = vec![0usize; n];
        for &j in &topo {
            height[j] = down[j].iter().map(|&i| height[i] + 1).max().unwrap_or(0);
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(Self {
            labels,
            index,
            leq,
            covers,
            up,
            down,
            height,
            topo,
        })
    }

    pub fn empty() -> Self {
        Self::from_table(Vec::new(), Vec::new()).expect("empty poset")
    }

    /// Antichain on the given labels.
    pub fn antichain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self::from_relation(labels, |a, b| a == b)
    }

    /// Chain `l_0 < l_1 < ... ` in the order given.
    pub fn chain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self::from_relation(labels, |a, b| a <= b)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// A linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// Length of the longest chain ending at `i`.
    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    pub fn is_graded(&self) -> bool {
        let covers_ok = self
            .covers
            .iter()
            .all(|&(a, b)| self.height[b] == self.height[a] + 1);
        let tops: Vec<usize> = self
            .maximal_elements()
            .into_iter()
            .map(|m| self.height[m])
            .collect();
        covers_ok && tops.windows(2).all(|w| w[0] == w[1])
    }

    /// Rank function, when the poset is graded.
    pub fn rank(&self, i: usize) -> Option<usize> {
        self.is_graded().then(|| self.height[i])
    }

    /// Recomputes the transitive reduction from the stored order relation.
    pub fn recompute_covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Induced subposet on the given element indices.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let labels: Vec<String> = elements.iter().map(|&i| self.labels[i].clone()).collect();
        Poset::from_relation(labels, |a, b| self.leq(elements[a], elements[b]))
            .expect("induced subposet of a poset is a poset")
    }

    /// Induced subposet on the elements carrying the given labels.
    pub fn induced_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Poset> {
        let idx = labels
            .iter()
            .map(|l| self.require(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.induced(&idx))
    }

    /// Whether `other` (by labels) sits inside `self` with the induced order.
    pub fn contains_induced(&self, other: &Poset) -> bool {
        let map: Option<Vec<usize>> = other.labels.iter().map(|l| self.index_of(l)).collect();
        let Some(map) = map else { return false };
        (0..other.len()).all(|a| (0..other.len()).all(|b| other.leq(a, b) == self.leq(map[a], map[b])))
    }

    /// Induced subposet on `{z : x <= z <= y}`.
    pub fn closed_interval(&self, x: usize, y: usize) -> Result<Poset> {
        if !self.leq(x, y) {
            return Err(Error::NotComparable(
                self.labels[x].clone(),
                self.labels[y].clone(),
            ));
        }
        let elems: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect();
        Ok(self.induced(&elems))
    }

    /// Elements strictly below `x`.
    pub fn lower_set_strict(&self, x: usize) -> Poset {
        let elems: Vec<usize> = (0..self.len()).filter(|&z| self.lt(z, x)).collect();
        self.induced(&elems)
    }

    /// All inclusion-maximal chains, in lexicographic order of index vectors.
    pub fn maximal_chains(&self) -> Vec<PosetChain> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for m in self.minimal_elements() {
            stack.push(m);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out.sort();
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<PosetChain>) {
        let last = *stack.last().expect("non-empty stack");
        if self.up[last].is_empty() {
            out.push(PosetChain(stack.clone()));
            return;
        }
        for &next in &self.up[last] {
            stack.push(next);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }

    /// Order complex: the simplicial complex of all chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let facets = self
            .maximal_chains()
            .into_iter()
            .map(|c| c.0.into_iter().map(|i| i as u32).collect())
            .collect();
        SimplicialComplex::from_facets(self.labels.clone(), facets)
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(a, z) && self.leq(b, z))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&z| upper.iter().all(|&w| self.leq(z, w)))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&z| self.leq(z, a) && self.leq(z, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&z| lower.iter().all(|&w| self.leq(w, z)))
    }

    /// `μ(x, ·)` over every element (zero where `x` is not below).
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        mobius_row(self, x)
    }

    /// Every pair has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    /// Rank and degree invariants used to prune the isomorphism search.
    fn signatures(&self) -> Vec<[usize; 6]> {
        let n = self.len();
        let mut depth = vec![0usize; n];
        for &i in self.topo.iter().rev() {
            depth[i] = self.up[i].iter().map(|&j| depth[j] + 1).max().unwrap_or(0);
        }
        (0..n)
            .map(|i| {
                let below = (0..n).filter(|&z| self.leq(z, i)).count();
                let above = (0..n).filter(|&z| self.leq(i, z)).count();
                [
                    self.height[i],
                    depth[i],
                    self.down[i].len(),
                    self.up[i].len(),
                    below,
                    above,
                ]
            })
            .collect()
    }

    /// Order isomorphism search. Returns a witness `w` with
    /// `self[i] ↦ other[w[i]]` when one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig_p = self.signatures();
        let sig_q = other.signatures();
        let mut sp = sig_p.clone();
        let mut sq = sig_q.clone();
        sp.sort();
        sq.sort();
        if sp != sq {
            return None;
        }
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| sig_q[j] == sig_p[i]).collect())
            .collect();
        let order = self.topo.clone();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.iso_extend(other, &order, 0, &candidates, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn iso_extend(
        &self,
        other: &Poset,
        order: &[usize],
        pos: usize,
        candidates: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for &c in &candidates[i] {
            if used[c] {
                continue;
            }
            let consistent = order[..pos].iter().all(|&j| {
                self.leq(j, i) == other.leq(map[j], c) && self.leq(i, j) == other.leq(c, map[j])
            });
            if !consistent {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if self.iso_extend(other, order, pos + 1, candidates, map, used) {
                return true;
            }
            used[c] = false;
            map[i] = usize::MAX;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }
}

/// A poset with a distinguished bottom `0̂` and top `1̂`.
#[derive(Clone, Debug)]
pub struct BoundedPoset {
    poset: Poset,
    bottom: usize,
    top: usize,
    mobius_bottom: OnceLock<Vec<i64>>,
}

impl BoundedPoset {
    /// Wraps a poset that already has a unique minimum and maximum.
    pub fn new(poset: Poset) -> Result<Self> {
        let mins = poset.minimal_elements();
        let maxs = poset.maximal_elements();
        if mins.len() != 1 || maxs.len() != 1 {
            return Err(Error::NotAPartialOrder(format!(
                "expected unique bottom and top, found {} minimal and {} maximal elements",
                mins.len(),
                maxs.len()
            )));
        }
        Ok(Self {
            poset,
            bottom: mins[0],
            top: maxs[0],
            mobius_bottom: OnceLock::new(),
        })
    }

    /// `P̂ = P ⊎ {0̂, 1̂}` with fresh labels.
    pub fn adjoin_bounds(p: &Poset) -> Self {
        let fresh = |base: &str| {
            let mut l = base.to_string();
            while p.index_of(&l).is_some() {
                l.push('\'');
            }
            l
        };
        let bot = fresh("\u{22a5}");
        let top = fresh("\u{22a4}");
        let mut labels = p.labels().to_vec();
        let nb = labels.len();
        labels.push(bot);
        labels.push(top);
        let poset = Poset::from_relation(labels, |a, b| {
            a == nb || b == nb + 1 || (a < nb && b < nb && p.leq(a, b))
        })
        .expect("adjoining bounds preserves the order");
        Self::new(poset).expect("fresh bounds are unique")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `P̄ = P ∖ {0̂, 1̂}`.
    pub fn proper_part(&self) -> Result<Poset> {
        if self.bottom == self.top {
            return Err(Error::DegenerateBounds);
        }
        let elems: Vec<usize> = (0..self.len())
            .filter(|&i| i != self.bottom && i != self.top)
            .collect();
        Ok(self.poset.induced(&elems))
    }

    /// Möbius function `μ(x, y)`.
    pub fn moebius(&self, x: usize, y: usize) -> Result<i64> {
        if !self.poset.leq(x, y) {
            return Err(Error::NotComparable(
                self.poset.label(x).to_string(),
                self.poset.label(y).to_string(),
            ));
        }
        if x == self.bottom {
            return Ok(self.mobius_from_bottom()[y]);
        }
        Ok(mobius_row(&self.poset, x)[y])
    }

    /// `μ(0̂, ·)` over every element, computed once.
    pub fn mobius_from_bottom(&self) -> &[i64] {
        self.mobius_bottom
            .get_or_init(|| mobius_row(&self.poset, self.bottom))
    }

    pub fn mobius_bottom_top(&self) -> i64 {
        self.mobius_from_bottom()[self.top]
    }
}

fn mobius_row(p: &Poset, x: usize) -> Vec<i64> {
    let n = p.len();
    let mut mu = vec![0i64; n];
    for &y in p.linear_extension() {
        if !p.leq(x, y) {
            continue;
        }
        if y == x {
            mu[y] = 1;
            continue;
        }
        let s: i64 = (0..n)
            .filter(|&z| z != y && p.leq(x, z) && p.leq(z, y))
            .map(|z| mu[z])
            .sum();
        mu[y] = -s;
    }
    mu
}

/// The Boolean lattice `2^[m]`; labels are subsets such as `{1,3}`.
pub fn boolean_lattice(m: usize) -> BoundedPoset {
    let masks: Vec<u32> = (0..(1u32 << m)).collect();
    let labels = masks.iter().map(|&s| subset_label(s, m)).collect();
    let poset = Poset::from_relation(labels, |a, b| masks[a] & !masks[b] == 0)
        .expect("subset order");
    BoundedPoset::new(poset).expect("Boolean lattice is bounded")
}

pub(crate) fn subset_label(mask: u32, m: usize) -> String {
    let items: Vec<String> = (0..m)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Parses a label produced by [`boolean_lattice`] back into a bit mask.
pub(crate) fn parse_subset_label(label: &str) -> Option<u32> {
    let inner = label.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(0);
    }
    inner.split(',').try_fold(0u32, |acc, t| {
        let v: u32 = t.parse().ok()?;
        (v >= 1).then(|| acc | (1 << (v - 1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        BoundedPoset::adjoin_bounds(&Poset::antichain(["a", "b"]).unwrap())
            .poset()
            .clone()
    }

    #[test]
    fn adjoin_bounds_on_empty_gives_two_chain() {
        let b = BoundedPoset::adjoin_bounds(&Poset::empty());
        assert_eq!(b.len(), 2);
        assert!(b.poset().lt(b.bottom(), b.top()));
        assert!(b.poset().is_isomorphic(&Poset::chain(["x", "y"]).unwrap()));
    }

    #[test]
    fn adjoin_bounds_on_antichain_gives_diamond() {
        let d = diamond();
        assert_eq!(d.len(), 4);
        assert!(d.is_isomorphic(boolean_lattice(2).poset()));
    }

    #[test]
    fn proper_part_cases() {
        let two = BoundedPoset::new(Poset::chain(["x", "y"]).unwrap()).unwrap();
        assert!(two.proper_part().unwrap().is_empty());
        let b2 = boolean_lattice(2).proper_part().unwrap();
        assert_eq!(b2.len(), 2);
        assert!(b2.covers().is_empty());
        let one = BoundedPoset::new(Poset::chain(["x"]).unwrap()).unwrap();
        assert_eq!(one.proper_part().unwrap_err(), Error::DegenerateBounds);
    }

    #[test]
    fn moebius_basics() {
        let b = boolean_lattice(3);
        assert_eq!(b.moebius(b.bottom(), b.bottom()).unwrap(), 1);
        assert_eq!(b.mobius_bottom_top(), -1);
        let x = b.poset().require("{1}").unwrap();
        let y = b.poset().require("{2}").unwrap();
        assert!(matches!(b.moebius(x, y), Err(Error::NotComparable(..))));
        let top = b.top();
        assert_eq!(b.moebius(x, top).unwrap(), 1);
    }

    #[test]
    fn chains_of_boolean_proper_part() {
        let p = boolean_lattice(3).proper_part().unwrap();
        assert_eq!(p.maximal_chains().len(), 6);
        let c = p.order_complex();
        assert_eq!(c.num_vertices(), 6);
        assert_eq!(c.faces(1).len(), 6);
        let two = Poset::chain(["a", "b"]).unwrap();
        assert_eq!(two.maximal_chains(), vec![PosetChain(vec![0, 1])]);
        let anti = Poset::antichain(["a", "b"]).unwrap().order_complex();
        assert_eq!(anti.dimension(), 0);
        assert_eq!(anti.faces(0).len(), 2);
    }

    #[test]
    fn closed_interval_cases() {
        let b = boolean_lattice(3);
        let p = b.poset();
        let x = p.require("{1}").unwrap();
        assert_eq!(p.closed_interval(x, x).unwrap().len(), 1);
        let lo = p.require("{}").unwrap();
        let hi = p.require("{1,2}").unwrap();
        let iv = p.closed_interval(lo, hi).unwrap();
        assert!(iv.is_isomorphic(boolean_lattice(2).poset()));
        let y = p.require("{2}").unwrap();
        assert!(p.closed_interval(x, y).is_err());
    }

    #[test]
    fn isomorphism_cases() {
        let d = diamond();
        let w = d.isomorphism(&d).unwrap();
        assert_eq!(w, (0..d.len()).collect::<Vec<_>>());
        let chain4 = Poset::chain(["a", "b", "c", "d"]).unwrap();
        assert!(!d.is_isomorphic(&chain4));
    }

    #[test]
    fn rejects_non_orders() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(Poset::from_relation(labels.clone(), |_, _| true).is_err());
        let dup = vec!["a".to_string(), "a".to_string()];
        assert!(Poset::from_relation(dup, |a, b| a == b).is_err());
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let b = boolean_lattice(3);
        let p = b.poset();
        assert_eq!(p.covers().len(), 12);
        let mut again = p.recompute_covers();
        again.sort();
        let mut stored = p.covers().to_vec();
        stored.sort();
        assert_eq!(again, stored);
        let rebuilt = Poset::from_covers(
            p.labels().to_vec(),
            &p.covers()
                .iter()
                .map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(rebuilt.covers(), p.covers());
    }

    #[test]
    fn subset_labels_round_trip() {
        for m in 0..5 {
            for mask in 0..(1u32 << m) {
                assert_eq!(parse_subset_label(&subset_label(mask, m)), Some(mask));
            }
        }
    }
}
