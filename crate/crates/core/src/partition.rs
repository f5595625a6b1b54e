//! Set partitions, signed partitions and the partition lattices built from
//! them: `Π_n`, the signed lattice `Π_n^B`, its subposets `Π_n^D` and
//! `Π_n^DB(T)`, and the interpolating `Π_n(T)`.
//!
//! Text format: blocks separated by `|`, elements by spaces, a trailing
//! apostrophe for a barred element. Signed partitions list the zero block
//! first, e.g. `0 5 7 | 1 2' 9 | 3 4' 6' 8`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::homology::SimplicialComplex;
use crate::poset::{BoundedPoset, Poset};

/// Partition of `[n]` with blocks sorted internally and ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        for b in &mut blocks {
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidParameters(format!(
                        "element {x} repeated or outside [1, {n}]"
                    )));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidParameters(format!("blocks do not cover [1, {n}]")));
        }
        blocks.sort();
        Ok(Self { n, blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn one_block(n: usize) -> Self {
        Self {
            n,
            blocks: if n == 0 { vec![] } else { vec![(1..=n).collect()] },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    pub fn block_containing(&self, x: usize) -> Option<&[usize]> {
        self.blocks.iter().find(|b| b.contains(&x)).map(Vec::as_slice)
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &SetPartition) -> bool {
        let mut owner = vec![0usize; self.n + 1];
        for (i, b) in other.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = i;
            }
        }
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| owner[x] == owner[b[0]]))
    }

    /// Image under a permutation of the ground set (`sigma[i - 1]` is the
    /// image of `i`).
    pub fn relabel(&self, sigma: &[usize]) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| sigma[x - 1]).collect())
            .collect();
        SetPartition::new(self.n, blocks).expect("relabelling by a permutation")
    }

    /// Every partition of `[n]`, via restricted growth strings.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn go(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            let n = rgs.len();
            if i == n {
                let nb = if n == 0 { 0 } else { max + 1 };
                let mut blocks = vec![Vec::new(); nb];
                for (x, &b) in rgs.iter().enumerate() {
                    blocks[b].push(x + 1);
                }
                out.push(SetPartition { n, blocks });
                return;
            }
            let limit = if i == 0 { 0 } else { max + 1 };
            for b in 0..=limit {
                rgs[i] = b;
                go(i + 1, max.max(b), rgs, out);
            }
        }
        go(0, 0, &mut rgs, &mut out);
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block = part
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad element `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if block.is_empty() {
                return Err(Error::Parse(format!("empty block in `{s}`")));
            }
            blocks.push(block);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Element of `[n]` with an optional bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedElement {
    pub value: usize,
    pub barred: bool,
}

impl SignedElement {
    pub fn new(value: usize, sign: i8) -> Self {
        Self {
            value,
            barred: sign < 0,
        }
    }

    pub fn plain(value: usize) -> Self {
        Self { value, barred: false }
    }

    pub fn sign(&self) -> i8 {
        if self.barred {
            -1
        } else {
            1
        }
    }

    pub fn flipped(&self) -> Self {
        Self {
            value: self.value,
            barred: !self.barred,
        }
    }
}

impl fmt::Display for SignedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.barred { "'" } else { "" })
    }
}

impl FromStr for SignedElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, barred) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value = digits
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad signed element `{s}`")))?;
        Ok(Self { value, barred })
    }
}

/// Flips every bar of a block. The result is not re-canonicalized.
pub fn bar_block(b: &[SignedElement]) -> Vec<SignedElement> {
    b.iter().map(SignedElement::flipped).collect()
}

/// Removes every bar of a block.
pub fn unbar_block(b: &[SignedElement]) -> Vec<SignedElement> {
    b.iter().map(|e| SignedElement::plain(e.value)).collect()
}

/// Sorts by value and bars or unbars the whole block so that its minimum is
/// unbarred.
fn canonical_block(mut b: Vec<SignedElement>) -> Vec<SignedElement> {
    b.sort_by_key(|e| e.value);
    if b.first().is_some_and(|e| e.barred) {
        bar_block(&b)
    } else {
        b
    }
}

/// Signed partition of `{0, 1, …, n}`: an unbarred zero block containing 0
/// and signed blocks whose minima are unbarred.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPartition {
    n: usize,
    zero: Vec<usize>,
    blocks: Vec<Vec<SignedElement>>,
}

impl SignedPartition {
    /// Canonicalizes the blocks; `zero` may omit 0 and any bars in it are
    /// meaningless by construction.
    pub fn new(n: usize, zero: Vec<usize>, blocks: Vec<Vec<SignedElement>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut zero: Vec<usize> = zero.into_iter().filter(|&x| x != 0).collect();
        zero.sort_unstable();
        let mut check = |x: usize| -> Result<()> {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidParameters(format!(
                    "element {x} repeated or outside [1, {n}]"
                )));
            }
            seen[x] = true;
            Ok(())
        };
        for &x in &zero {
            check(x)?;
        }
        let mut blocks: Vec<Vec<SignedElement>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(canonical_block)
            .collect();
        for b in &blocks {
            for e in b {
                check(e.value)?;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidParameters(format!("blocks do not cover [1, {n}]")));
        }
        blocks.sort();
        zero.insert(0, 0);
        Ok(Self { n, zero, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero block, including 0.
    pub fn zero_block(&self) -> &[usize] {
        &self.zero
    }

    pub fn signed_blocks(&self) -> &[Vec<SignedElement>] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    /// `π ≤ τ`: the zero block of `π` lies in the zero block of `τ`, and each
    /// signed block `b` of `π` has `b` or `b̄` inside a signed block of `τ`, or
    /// its unbarred form inside the zero block of `τ`.
    pub fn leq(&self, other: &SignedPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        // Location of each value in `other`: None for the zero block, else
        // (block, barred).
        let mut loc: Vec<Option<(usize, bool)>> = vec![None; self.n + 1];
        for (i, b) in other.blocks.iter().enumerate() {
            for e in b {
                loc[e.value] = Some((i, e.barred));
            }
        }
        if self.zero[1..].iter().any(|&x| loc[x].is_some()) {
            return false;
        }
        self.blocks.iter().all(|b| {
            if b.iter().all(|e| loc[e.value].is_none()) {
                return true;
            }
            let Some((blk, bar0)) = loc[b[0].value] else {
                return false;
            };
            let flip = bar0 != b[0].barred;
            b.iter().all(|e| loc[e.value] == Some((blk, e.barred ^ flip)))
        })
    }

    /// Image under a signed permutation of `[n]`: `sigma[i - 1]` is the image
    /// of `i`.
    pub fn relabel(&self, sigma: &[SignedElement]) -> SignedPartition {
        let zero = self.zero[1..].iter().map(|&x| sigma[x - 1].value).collect();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| {
                        let s = sigma[e.value - 1];
                        SignedElement {
                            value: s.value,
                            barred: s.barred ^ e.barred,
                        }
                    })
                    .collect()
            })
            .collect();
        SignedPartition::new(self.n, zero, blocks).expect("relabelling by a signed permutation")
    }

    /// Every canonical signed partition of `{0, …, n}`.
    pub fn all(n: usize) -> Vec<SignedPartition> {
        let mut out = Vec::new();
        for zmask in 0u32..(1 << n) {
            let zero: Vec<usize> = (1..=n).filter(|&i| zmask & (1 << (i - 1)) != 0).collect();
            let rest: Vec<usize> = (1..=n).filter(|&i| zmask & (1 << (i - 1)) == 0).collect();
            for p in SetPartition::all(rest.len()) {
                let blocks: Vec<Vec<usize>> = p
                    .blocks()
                    .iter()
                    .map(|b| b.iter().map(|&k| rest[k - 1]).collect())
                    .collect();
                let free: usize = blocks.iter().map(|b| b.len() - 1).sum();
                for bars in 0u32..(1 << free) {
                    let mut bit = 0;
                    let signed = blocks
                        .iter()
                        .map(|b| {
                            b.iter()
                                .enumerate()
                                .map(|(k, &v)| {
                                    let barred = k > 0 && {
                                        let on = bars & (1 << bit) != 0;
                                        bit += 1;
                                        on
                                    };
                                    SignedElement { value: v, barred }
                                })
                                .collect()
                        })
                        .collect();
                    out.push(SignedPartition::new(n, zero.clone(), signed).expect("valid by construction"));
                }
            }
        }
        out
    }
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.zero.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")];
        for b in &self.blocks {
            parts.push(b.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
        }
        write!(f, "{}", parts.join(" | "))
    }
}

impl FromStr for SignedPartition {
    type Err = Error;

    /// Parses the text form; the zero block must come first and `n` is the
    /// largest element present.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('|');
        let zero = parts
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad zero-block element `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if zero.first() != Some(&0) {
            return Err(Error::Parse(format!("`{s}` must start with the zero block")));
        }
        let blocks = parts
            .map(|p| {
                let b = p.split_whitespace().map(str::parse).collect::<Result<Vec<SignedElement>>>()?;
                if b.is_empty() {
                    return Err(Error::Parse(format!("empty block in `{s}`")));
                }
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        let n = zero
            .iter()
            .copied()
            .chain(blocks.iter().flatten().map(|e| e.value))
            .max()
            .unwrap_or(0);
        SignedPartition::new(n, zero, blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    A,
    B,
    D,
    DB,
    AT,
}

impl FamilyKind {
    pub fn is_signed(self) -> bool {
        matches!(self, FamilyKind::B | FamilyKind::D | FamilyKind::DB)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::A => "A",
            FamilyKind::B => "B",
            FamilyKind::D => "D",
            FamilyKind::DB => "DB",
            FamilyKind::AT => "AT",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(FamilyKind::A),
            "B" => Ok(FamilyKind::B),
            "D" => Ok(FamilyKind::D),
            "DB" => Ok(FamilyKind::DB),
            "AT" => Ok(FamilyKind::AT),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// A validated family instance: kind, `n` and the subset `T` (empty unless
/// the kind is `DB` or `AT`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub t: Vec<usize>,
}

impl LatticeFamily {
    pub fn new(kind: FamilyKind, n: usize, t: &[usize]) -> Result<Self> {
        let mut t = t.to_vec();
        t.sort_unstable();
        t.dedup();
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match kind {
            FamilyKind::A | FamilyKind::B if n < 1 => return bad(format!("{kind} needs n >= 1")),
            FamilyKind::D | FamilyKind::DB | FamilyKind::AT if n < 2 => {
                return bad(format!("{kind} needs n >= 2"))
            }
            _ => {}
        }
        match kind {
            FamilyKind::A | FamilyKind::B | FamilyKind::D if !t.is_empty() => {
                return bad(format!("{kind} takes no subset T"))
            }
            FamilyKind::DB if t.iter().any(|&x| x == 0 || x > n) => {
                return bad(format!("T must be a subset of [1, {n}]"))
            }
            FamilyKind::AT if t.is_empty() => return bad("AT needs a nonempty T".into()),
            FamilyKind::AT if t.iter().any(|&x| x == 0 || x >= n) => {
                return bad(format!("T must be a subset of [1, {}]", n - 1))
            }
            _ => {}
        }
        Ok(Self { kind, n, t })
    }

    pub fn a(n: usize) -> Result<Self> {
        Self::new(FamilyKind::A, n, &[])
    }

    pub fn b(n: usize) -> Result<Self> {
        Self::new(FamilyKind::B, n, &[])
    }

    pub fn d(n: usize) -> Result<Self> {
        Self::new(FamilyKind::D, n, &[])
    }

    pub fn db(n: usize, t: &[usize]) -> Result<Self> {
        Self::new(FamilyKind::DB, n, t)
    }

    pub fn at(n: usize, t: &[usize]) -> Result<Self> {
        Self::new(FamilyKind::AT, n, t)
    }

    pub fn in_t(&self, x: usize) -> bool {
        self.t.binary_search(&x).is_ok()
    }

    /// Short identifier such as `DB(3;T=1,2)`.
    pub fn id(&self) -> String {
        match self.kind {
            FamilyKind::DB | FamilyKind::AT => format!(
                "{}({};T={})",
                self.kind,
                self.n,
                self.t.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            ),
            _ => format!("{}({})", self.kind, self.n),
        }
    }

    /// Degree of the only non-vanishing reduced homology of the proper part.
    pub fn top_degree(&self) -> isize {
        match self.kind {
            FamilyKind::A | FamilyKind::AT => self.n as isize - 3,
            _ => self.n as isize - 2,
        }
    }

    /// Membership of a partition in this family's lattice.
    pub fn contains(&self, e: &PartitionElement) -> bool {
        match (self.kind, e) {
            (FamilyKind::A, PartitionElement::Set(p)) => p.n() == self.n,
            (FamilyKind::AT, PartitionElement::Set(p)) => {
                p.n() == self.n && {
                    let b = p.block_containing(self.n).expect("n is covered");
                    b.len() == 1 || b.iter().any(|&x| self.in_t(x))
                }
            }
            (FamilyKind::B, PartitionElement::Signed(p)) => p.n() == self.n,
            (FamilyKind::D, PartitionElement::Signed(p)) => p.n() == self.n && p.zero_block().len() != 2,
            (FamilyKind::DB, PartitionElement::Signed(p)) => {
                p.n() == self.n && (p.zero_block().len() != 2 || self.in_t(p.zero_block()[1]))
            }
            _ => false,
        }
    }
}

impl fmt::Display for LatticeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// An element of one of the partition lattices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionElement {
    Set(SetPartition),
    Signed(SignedPartition),
}

impl PartitionElement {
    pub fn leq(&self, other: &PartitionElement) -> bool {
        match (self, other) {
            (PartitionElement::Set(a), PartitionElement::Set(b)) => a.leq(b),
            (PartitionElement::Signed(a), PartitionElement::Signed(b)) => a.leq(b),
            _ => false,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            PartitionElement::Set(p) => p.rank(),
            PartitionElement::Signed(p) => p.rank(),
        }
    }
}

impl fmt::Display for PartitionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionElement::Set(p) => p.fmt(f),
            PartitionElement::Signed(p) => p.fmt(f),
        }
    }
}

impl From<SetPartition> for PartitionElement {
    fn from(p: SetPartition) -> Self {
        PartitionElement::Set(p)
    }
}

impl From<SignedPartition> for PartitionElement {
    fn from(p: SignedPartition) -> Self {
        PartitionElement::Signed(p)
    }
}

/// Largest `n` for which the lattice property is checked while building.
const LATTICE_CHECK_MAX_N: usize = 4;

/// A partition lattice: the bounded poset together with the partition
/// behind every element (indexed like the poset).
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    family: LatticeFamily,
    lattice: BoundedPoset,
    elements: Vec<PartitionElement>,
    by_element: HashMap<PartitionElement, usize>,
}

impl PartitionLattice {
    pub fn build(family: &LatticeFamily) -> Self {
        let candidates: Vec<PartitionElement> = if family.kind.is_signed() {
            SignedPartition::all(family.n).into_iter().map(Into::into).collect()
        } else {
            SetPartition::all(family.n).into_iter().map(Into::into).collect()
        };
        let elems: Vec<PartitionElement> = candidates.into_iter().filter(|e| family.contains(e)).collect();
        let labels = elems.iter().map(ToString::to_string).collect();
        let poset = Poset::from_relation(labels, |i, j| elems[i].leq(&elems[j])).expect("refinement is a partial order");
        let mut elements = vec![None; elems.len()];
        for e in elems {
            let i = poset.index_of(&e.to_string()).expect("label present");
            elements[i] = Some(e);
        }
        let elements: Vec<PartitionElement> = elements.into_iter().map(|e| e.expect("filled")).collect();
        if family.n <= LATTICE_CHECK_MAX_N {
            assert!(poset.is_lattice(), "{} is not a lattice", family.id());
        }
        let lattice = BoundedPoset::new(poset).expect("partition lattices are bounded");
        let by_element = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Self {
            family: family.clone(),
            lattice,
            elements,
            by_element,
        }
    }

    pub fn family(&self) -> &LatticeFamily {
        &self.family
    }

    pub fn bounded(&self) -> &BoundedPoset {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        self.lattice.poset()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartitionElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartitionElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &PartitionElement) -> Option<usize> {
        self.by_element.get(e).copied()
    }

    pub fn moebius_bottom_top(&self) -> i64 {
        self.lattice.mobius_bottom_top()
    }

    /// Order complex of the proper part.
    pub fn proper_part_complex(&self) -> SimplicialComplex {
        match self.lattice.proper_part() {
            Ok(p) => p.order_complex(),
            // One-element lattice: the proper part is not defined; use the
            // void complex so callers see no homology.
            Err(_) => SimplicialComplex::from_facets(Vec::new(), Vec::new()),
        }
    }

    /// Number of elements of each rank, from 0̂ upwards.
    pub fn rank_profile(&self) -> Vec<usize> {
        let top = self.elements[self.lattice.top()].rank();
        let mut out = vec![0; top + 1];
        for e in &self.elements {
            out[e.rank()] += 1;
        }
        out
    }
}

pub fn build_pi(n: usize) -> Result<PartitionLattice> {
    Ok(PartitionLattice::build(&LatticeFamily::a(n)?))
}

pub fn build_pib(n: usize) -> Result<PartitionLattice> {
    Ok(PartitionLattice::build(&LatticeFamily::b(n)?))
}

pub fn build_pid(n: usize) -> Result<PartitionLattice> {
    Ok(PartitionLattice::build(&LatticeFamily::d(n)?))
}

pub fn build_pidb(n: usize, t: &[usize]) -> Result<PartitionLattice> {
    Ok(PartitionLattice::build(&LatticeFamily::db(n, t)?))
}

pub fn build_piat(n: usize, t: &[usize]) -> Result<PartitionLattice> {
    Ok(PartitionLattice::build(&LatticeFamily::at(n, t)?))
}

fn unit(n: usize, i: usize, c: i64) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i - 1] = BigRational::from_integer(c.into());
    v
}

fn difference(n: usize, a: (usize, i64), b: (usize, i64)) -> Vec<BigRational> {
    let mut v = unit(n, a.0, a.1);
    v[b.0 - 1] -= BigRational::from_integer(b.1.into());
    v
}

/// The subspace `ℓ_π`, intersected with `K = {Σ x_i = 0}` for the unsigned
/// families.
pub fn partition_to_subspace(e: &PartitionElement) -> Flat {
    match e {
        PartitionElement::Set(p) => {
            let n = p.n();
            let mut eqs = vec![vec![BigRational::one(); n]];
            for b in p.blocks() {
                for w in b.windows(2) {
                    eqs.push(difference(n, (w[0], 1), (w[1], 1)));
                }
            }
            Flat::linear(n, eqs)
        }
        PartitionElement::Signed(p) => {
            let n = p.n();
            let mut eqs: Vec<Vec<BigRational>> = p.zero_block()[1..].iter().map(|&x| unit(n, x, 1)).collect();
            for b in p.signed_blocks() {
                for w in b.windows(2) {
                    eqs.push(difference(
                        n,
                        (w[0].value, w[0].sign() as i64),
                        (w[1].value, w[1].sign() as i64),
                    ));
                }
            }
            Flat::linear(n, eqs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn bell_numbers_and_ranks() {
        assert_eq!(build_pi(1).unwrap().len(), 1);
        assert_eq!(build_pi(3).unwrap().len(), 5);
        let p4 = build_pi(4).unwrap();
        assert_eq!(p4.len(), 15);
        assert_eq!(p4.rank_profile(), vec![1, 6, 7, 1]);
        for (i, e) in p4.elements().iter().enumerate() {
            assert_eq!(p4.poset().rank(i), Some(e.rank()));
        }
        assert_eq!(p4.moebius_bottom_top(), -6);
    }

    #[test]
    fn bar_and_unbar_are_raw() {
        let b: Vec<SignedElement> = "3 4' 6' 8".split(' ').map(|t| t.parse().unwrap()).collect();
        let show = |v: &[SignedElement]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        assert_eq!(show(&bar_block(&b)), "3' 4 6 8'");
        assert_eq!(show(&unbar_block(&b)), "3 4 6 8");
        assert_eq!(bar_block(&bar_block(&b)), b);
    }

    #[test]
    fn signed_order_examples() {
        let pi = sp("0 5 7 | 1 2' 9 | 3 4' 6' 8");
        assert!(pi.leq(&sp("0 5 7 | 1 2' 9 3 4' 6' 8")));
        assert!(pi.leq(&sp("0 5 7 | 1 2' 9 3' 4 6 8'")));
        assert!(pi.leq(&sp("0 5 7 3 4 6 8 | 1 2' 9")));
        assert!(!pi.leq(&sp("0 5 7 | 1 2 9 3 4' 6' 8")));
        assert!(!sp("0 5 7 | 1 2' 9 3 4' 6' 8").leq(&pi));
        // The zero block may only grow.
        assert!(!sp("0 1 | 2").leq(&sp("0 | 1 2")));
    }

    #[test]
    fn text_round_trip_and_canonical_form() {
        let p = sp("0 7 5 | 9 2 1' | 8 3' 4 6");
        assert_eq!(p.to_string(), "0 5 7 | 1 2' 9' | 3 4' 6' 8'");
        assert_eq!(sp(&p.to_string()), p);
        let q: SetPartition = "3 | 2 1 | 4".parse().unwrap();
        assert_eq!(q.to_string(), "1 2 | 3 | 4");
        assert!("0 1 | 1".parse::<SignedPartition>().is_err());
        assert!("1 | 2".parse::<SignedPartition>().is_err());
    }

    #[test]
    fn signed_lattice_sizes() {
        let b1 = build_pib(1).unwrap();
        let labels: Vec<&str> = b1.poset().labels().iter().map(String::as_str).collect();
        assert_eq!(labels, vec!["0 1", "0 | 1"]);
        let b2 = build_pib(2).unwrap();
        assert_eq!(b2.len(), 6);
        assert_eq!(b2.moebius_bottom_top().abs(), 3);
        let b3 = build_pib(3).unwrap();
        assert_eq!(b3.len(), 24);
        assert_eq!(b3.moebius_bottom_top().abs(), 15);
        assert_eq!(build_pib(4).unwrap().len(), 116);
        assert_eq!(build_pid(4).unwrap().len(), 72);
    }

    #[test]
    fn d_excludes_size_two_zero_blocks() {
        let d2 = build_pid(2).unwrap();
        assert!(d2.index_of(&sp("0 1 | 2").into()).is_none());
        assert!(d2.index_of(&sp("0 2 | 1").into()).is_none());
        assert!(d2.index_of(&sp("0 1 2").into()).is_some());
    }

    #[test]
    fn interpolating_endpoints() {
        for n in 2..=3 {
            let all: Vec<usize> = (1..=n).collect();
            let d = build_pid(n).unwrap();
            let db0 = build_pidb(n, &[]).unwrap();
            assert_eq!(d.poset().labels(), db0.poset().labels());
            let b = build_pib(n).unwrap();
            let dbn = build_pidb(n, &all).unwrap();
            assert_eq!(b.poset().labels(), dbn.poset().labels());
        }
        let at = build_piat(4, &[1, 2, 3]).unwrap();
        assert_eq!(at.poset().labels(), build_pi(4).unwrap().poset().labels());
    }

    #[test]
    fn family_validation() {
        assert!(LatticeFamily::at(4, &[]).is_err());
        assert!(LatticeFamily::at(4, &[4]).is_err());
        assert!(LatticeFamily::db(3, &[4]).is_err());
        assert!(LatticeFamily::new(FamilyKind::A, 3, &[1]).is_err());
        assert!(LatticeFamily::d(1).is_err());
        assert_eq!(LatticeFamily::db(3, &[2, 1]).unwrap().id(), "DB(3;T=1,2)");
    }

    #[test]
    fn subspace_examples() {
        let q = |v: i64| BigRational::from_integer(v.into());
        let a = partition_to_subspace(&"1 2 | 3".parse::<SetPartition>().unwrap().into());
        assert_eq!(a, Flat::linear(3, vec![vec![q(1), q(-1), q(0)], vec![q(1), q(1), q(1)]]));
        assert_eq!(a.dimension(), Some(1));
        let b = partition_to_subspace(&sp("0 1 | 2 3'").into());
        assert_eq!(b, Flat::linear(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(1)]]));
        let c = partition_to_subspace(&sp("0 | 1 2' | 3").into());
        assert_eq!(c, Flat::linear(3, vec![vec![q(1), q(1), q(0)]]));
    }

    #[test]
    fn signed_relabel() {
        let p = sp("0 1 | 2 3'");
        let sigma = [SignedElement::new(3, 1), SignedElement::new(1, -1), SignedElement::new(2, 1)];
        assert_eq!(p.relabel(&sigma).to_string(), "0 3 | 1 2");
    }
}
