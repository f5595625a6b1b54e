//! Simplicial chain complexes over ℤ, reduced homology, fundamental cycles of
//! spherical subcomplexes and basis certificates for top homology.
//!
//! Simplices are oriented by increasing vertex index; vertex indices follow the
//! lexicographic order of the vertex labels. The reduced chain complex always
//! contains the empty simplex in dimension -1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{boolean_lattice, parse_subset_label, Poset};
use crate::zmatrix::{self, SparseRow, ZMatrix};

/// Sorted list of vertex indices.
pub type Simplex = Vec<u32>;

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    index: HashMap<String, u32>,
    facets: Vec<Simplex>,
    /// `faces[k + 1]` holds the k-simplices in lexicographic order.
    faces: Vec<Vec<Simplex>>,
    face_index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Closes the given facets under taking subsets.
    pub fn from_facets(labels: Vec<String>, facets: Vec<Simplex>) -> Self {
        let mut facets: Vec<Simplex> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        facets.sort();
        facets.dedup();
        let top = facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut layers: Vec<std::collections::BTreeSet<Simplex>> = vec![Default::default(); top + 1];
        layers[0].insert(Vec::new());
        for f in &facets {
            for (k, layer) in layers.iter_mut().enumerate().take(f.len() + 1).skip(1) {
                layer.extend(f.iter().copied().combinations(k));
            }
        }
        let faces: Vec<Vec<Simplex>> = layers.into_iter().map(|s| s.into_iter().collect()).collect();
        let face_index = faces
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        Self {
            labels,
            index,
            facets,
            faces,
            face_index,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_of(&self, label: &str) -> Option<u32> {
        self.index.get(label).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.faces.get(1).map(Vec::len).unwrap_or(0)
    }

    /// Top dimension; -1 for the complex whose only face is the empty simplex.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 2
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    /// Faces of dimension `k` (`k = -1` gives the empty simplex).
    pub fn faces(&self, k: isize) -> &[Simplex] {
        if k < -1 || k > self.dimension() {
            return &[];
        }
        &self.faces[(k + 1) as usize]
    }

    pub fn face_position(&self, s: &[u32]) -> Option<usize> {
        let k = s.len();
        self.face_index.get(k)?.get(s).copied()
    }

    pub fn contains_face(&self, s: &[u32]) -> bool {
        self.face_position(s).is_some()
    }

    /// Boundary map `∂_k : C_k → C_{k-1}` of the reduced chain complex.
    ///
    /// Rows index k-faces and columns index (k-1)-faces; entry `(σ, τ)` is
    /// `(-1)^i` when `τ` is `σ` with its i-th vertex removed. For `k = 0` this
    /// is the augmentation map onto the empty simplex.
    pub fn boundary_matrix(&self, k: isize) -> ZMatrix {
        let rows_faces = self.faces(k);
        let ncols = if k >= 0 { self.faces(k - 1).len() } else { 0 };
        let layer = (k.max(0)) as usize;
        let rows = rows_faces
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        let col = self.face_index[layer][&t];
                        (col, if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        ZMatrix::from_rows(ncols, rows)
    }

    /// Rank and torsion coefficients of `H̃_k(Δ; ℤ)`.
    pub fn reduced_betti(&self, k: isize) -> Result<Betti> {
        let top = self.dimension();
        if k < -1 || k > top {
            return Err(Error::DimensionOutOfRange { dim: k, top });
        }
        let ck = self.faces(k).len();
        let rank_k = zmatrix::rank(&self.boundary_matrix(k));
        let snf_up = zmatrix::smith_normal_form(&self.boundary_matrix(k + 1));
        Ok(Betti {
            rank: ck - rank_k - snf_up.rank(),
            torsion: snf_up.torsion(),
        })
    }

    /// Reduced Betti data in every dimension from -1 to the top.
    pub fn all_reduced_betti(&self) -> Vec<(isize, Betti)> {
        let dims: Vec<isize> = (-1..=self.dimension()).collect();
        crate::parallel::map(&dims, |&k| (k, self.reduced_betti(k).expect("dimension in range")))
    }

    /// ℤ-basis of the top cycle group `ker ∂_top`.
    pub fn top_cycle_basis(&self) -> Vec<ChainVector> {
        let top = self.dimension();
        let faces = self.faces(top);
        zmatrix::left_kernel(&self.boundary_matrix(top))
            .into_iter()
            .map(|v| ChainVector::from_sparse(top, faces, &v).expect("kernel vector fits"))
            .collect()
    }

    /// The fundamental cycle when `H̃_top` has rank one.
    ///
    /// The generator is primitive and its sign is fixed by making the
    /// coefficient of the lexicographically least facet in its support `+1`.
    pub fn fundamental_cycle_top(&self) -> Result<ChainVector> {
        let basis = self.top_cycle_basis();
        if basis.len() != 1 {
            return Err(Error::RankNotOne(basis.len()));
        }
        Ok(basis.into_iter().next().expect("one vector").normalized())
    }

    pub fn boundary_of(&self, chain: &ChainVector) -> ChainVector {
        let mut terms: BTreeMap<Simplex, i64> = BTreeMap::new();
        for (s, c) in &chain.terms {
            if s.is_empty() {
                continue;
            }
            for i in 0..s.len() {
                let mut t = s.clone();
                t.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                *terms.entry(t).or_insert(0) += sign * c;
            }
        }
        terms.retain(|_, c| *c != 0);
        ChainVector {
            dimension: chain.dimension - 1,
            terms,
        }
    }

    /// Whether every simplex of `chain` is a face here and `∂chain = 0`.
    pub fn is_cycle(&self, chain: &ChainVector) -> bool {
        chain.terms.keys().all(|s| self.contains_face(s)) && self.boundary_of(chain).is_zero()
    }

    pub fn describe(&self, s: &[u32]) -> String {
        let parts: Vec<&str> = s.iter().map(|&v| self.labels[v as usize].as_str()).collect();
        format!("[{}]", parts.join(" < "))
    }
}

/// Reduced Betti number with torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Betti {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Integer chain: oriented simplices of one dimension with non-zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainVector {
    pub dimension: isize,
    pub terms: BTreeMap<Simplex, i64>,
}

impl ChainVector {
    pub fn zero(dimension: isize) -> Self {
        Self {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_sparse(dimension: isize, faces: &[Simplex], v: &SparseRow<BigInt>) -> Result<Self> {
        let terms = v
            .iter()
            .map(|(i, c)| Ok((faces[*i].clone(), c.to_i64().ok_or(Error::CoefficientOverflow)?)))
            .collect::<Result<_>>()?;
        Ok(Self { dimension, terms })
    }

    /// Coordinates against the faces of the given dimension of `c`.
    pub fn to_sparse(&self, c: &SimplicialComplex) -> Option<SparseRow<BigInt>> {
        let mut row: SparseRow<BigInt> = self
            .terms
            .iter()
            .map(|(s, v)| Some((c.face_position(s)?, BigInt::from(*v))))
            .collect::<Option<_>>()?;
        row.sort_by_key(|e| e.0);
        Some(row)
    }

    /// `⟨ρ, F⟩`.
    pub fn coefficient(&self, s: &[u32]) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, s: Simplex, c: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.terms.keys()
    }

    pub fn negated(&self) -> Self {
        Self {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    /// Same chain with the sign chosen so the least simplex has a positive
    /// coefficient.
    pub fn normalized(self) -> Self {
        match self.terms.values().next() {
            Some(c) if *c < 0 => self.negated(),
            _ => self,
        }
    }

    pub fn all_unit_coefficients(&self) -> bool {
        self.terms.values().all(|c| *c == 1 || *c == -1)
    }

    /// `Some(±1)` if `other = ±self`.
    pub fn sign_relative_to(&self, other: &ChainVector) -> Option<i64> {
        if self == other {
            Some(1)
        } else if *self == other.negated() {
            Some(-1)
        } else {
            None
        }
    }

    /// Transports the chain to another complex through a vertex relabelling,
    /// re-orienting every simplex.
    pub fn relabel<F>(&self, from: &SimplicialComplex, to: &SimplicialComplex, map: F) -> Result<ChainVector>
    where
        F: Fn(&str) -> Option<String>,
    {
        let mut out = ChainVector::zero(self.dimension);
        for (s, c) in &self.terms {
            let mut image = Vec::with_capacity(s.len());
            for &v in s {
                let l = from.labels()[v as usize].as_str();
                let m = map(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
                image.push(to.vertex_of(&m).ok_or(Error::UnknownLabel(m))?);
            }
            let (sorted, sign) = sort_with_sign(image);
            if !to.contains_face(&sorted) {
                return Err(Error::MissingChain(to.describe(&sorted)));
            }
            out.add_term(sorted, sign * c);
        }
        Ok(out)
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| format!("{c:+}{s:?}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Sorts vertex indices, returning the sign of the sorting permutation.
pub fn sort_with_sign(mut v: Vec<u32>) -> (Vec<u32>, i64) {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (v, sign)
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Fundamental cycle of the proper part of a Boolean subposet.
///
/// `b` must be isomorphic to `2^[m]`. With atoms `a_1, …, a_m`, the result is
/// the sum over permutations `σ` of `sgn(σ)` times the chain
/// `a_σ(1) < a_σ(1) ∨ a_σ(2) < ⋯` (the `m-1` proper joins), expressed as
/// oriented simplices of `ambient`, whose vertices are looked up by label.
pub fn boolean_cycle_formula(b: &Poset, ambient: &SimplicialComplex) -> Result<ChainVector> {
    let n = b.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotBoolean(format!("{n} elements is not a power of two")));
    }
    let m = n.trailing_zeros() as usize;
    let boolean = boolean_lattice(m);
    let witness = b
        .isomorphism(boolean.poset())
        .ok_or_else(|| Error::NotBoolean(format!("no isomorphism with 2^[{m}]")))?;
    let mut by_mask = vec![usize::MAX; n];
    for (i, &w) in witness.iter().enumerate() {
        let mask = parse_subset_label(boolean.poset().label(w)).expect("subset label");
        by_mask[mask as usize] = i;
    }
    let mut out = ChainVector::zero(m as isize - 2);
    for perm in (0..m).permutations(m) {
        let mut mask = 0u32;
        let mut vertices = Vec::with_capacity(m.saturating_sub(1));
        for &atom in perm.iter().take(m.saturating_sub(1)) {
            mask |= 1 << atom;
            let label = b.label(by_mask[mask as usize]);
            let v = ambient
                .vertex_of(label)
                .ok_or_else(|| Error::MissingChain(label.to_string()))?;
            vertices.push(v);
        }
        let (simplex, sort_sign) = sort_with_sign(vertices);
        if !ambient.contains_face(&simplex) {
            return Err(Error::MissingChain(ambient.describe(&simplex)));
        }
        out.add_term(simplex, permutation_sign(&perm) * sort_sign);
    }
    Ok(out)
}

/// Outcome of the facet certificate: the `t × t` matrix
/// `(⟨ρ_i, F_j⟩)` and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCertificate {
    pub facets: Vec<Simplex>,
    pub determinant: BigInt,
    pub strategy: FacetStrategy,
}

impl FacetCertificate {
    pub fn passed(&self) -> bool {
        self.determinant.abs().is_one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetStrategy {
    Given,
    Greedy,
    Triangular,
    Exhaustive,
    Failed,
}

fn coefficient_matrix(cycles: &[ChainVector], facets: &[Simplex]) -> Vec<Vec<BigInt>> {
    cycles
        .iter()
        .map(|c| facets.iter().map(|f| BigInt::from(c.coefficient(f))).collect())
        .collect()
}

fn check_cycles(complex: &SimplicialComplex, cycles: &[ChainVector]) -> Result<()> {
    let top = complex.dimension();
    for (i, c) in cycles.iter().enumerate() {
        if c.dimension != top || !complex.is_cycle(c) {
            return Err(Error::NotACycle(i));
        }
    }
    Ok(())
}

/// Determinant of `(⟨ρ_i, F_j⟩)` for caller-supplied facets. The certificate
/// passes iff the determinant is `±1`.
pub fn verify_basis_certificate(
    complex: &SimplicialComplex,
    cycles: &[ChainVector],
    facets: &[Simplex],
) -> Result<FacetCertificate> {
    if cycles.len() != facets.len() {
        return Err(Error::SizeMismatch(cycles.len(), facets.len()));
    }
    check_cycles(complex, cycles)?;
    Ok(FacetCertificate {
        facets: facets.to_vec(),
        determinant: zmatrix::determinant(&coefficient_matrix(cycles, facets)),
        strategy: FacetStrategy::Given,
    })
}

/// Node budget of the exhaustive facet search.
const EXHAUSTIVE_BUDGET: usize = 200_000;

/// Chooses facets for the certificate and evaluates it.
///
/// Strategies, in order: greedy (each cycle takes its least unused facet);
/// triangular peeling (repeatedly take a cycle owning a facet no other
/// remaining cycle touches, which yields a triangular matrix with unit
/// diagonal whenever such an ordering exists); bounded exhaustive search.
pub fn certify_basis(complex: &SimplicialComplex, cycles: &[ChainVector]) -> Result<FacetCertificate> {
    check_cycles(complex, cycles)?;
    let greedy = greedy_facets(cycles);
    if let Some(f) = &greedy {
        let det = zmatrix::determinant(&coefficient_matrix(cycles, f));
        if det.abs().is_one() {
            return Ok(FacetCertificate {
                facets: f.clone(),
                determinant: det,
                strategy: FacetStrategy::Greedy,
            });
        }
    }
    if let Some(f) = triangular_facets(cycles) {
        let det = zmatrix::determinant(&coefficient_matrix(cycles, &f));
        if det.abs().is_one() {
            return Ok(FacetCertificate {
                facets: f,
                determinant: det,
                strategy: FacetStrategy::Triangular,
            });
        }
    }
    if let Some((f, det)) = exhaustive_facets(cycles) {
        return Ok(FacetCertificate {
            facets: f,
            determinant: det,
            strategy: FacetStrategy::Exhaustive,
        });
    }
    let facets = greedy.unwrap_or_default();
    let determinant = if facets.len() == cycles.len() {
        zmatrix::determinant(&coefficient_matrix(cycles, &facets))
    } else {
        BigInt::zero()
    };
    Ok(FacetCertificate {
        facets,
        determinant,
        strategy: FacetStrategy::Failed,
    })
}

fn greedy_facets(cycles: &[ChainVector]) -> Option<Vec<Simplex>> {
    let mut used = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(cycles.len());
    for c in cycles {
        let f = c.support().find(|s| !used.contains(*s))?.clone();
        used.insert(f.clone());
        out.push(f);
    }
    Some(out)
}

fn triangular_facets(cycles: &[ChainVector]) -> Option<Vec<Simplex>> {
    let t = cycles.len();
    let mut owners: BTreeMap<&Simplex, usize> = BTreeMap::new();
    for c in cycles {
        for s in c.support() {
            *owners.entry(s).or_insert(0) += 1;
        }
    }
    let mut remaining: Vec<bool> = vec![true; t];
    let mut chosen: Vec<Option<Simplex>> = vec![None; t];
    for _ in 0..t {
        let pick = (0..t).filter(|&i| remaining[i]).find_map(|i| {
            cycles[i]
                .terms
                .iter()
                .find(|(s, c)| owners[s] == 1 && c.abs() == 1)
                .map(|(s, _)| (i, s.clone()))
        })?;
        let (i, s) = pick;
        remaining[i] = false;
        for f in cycles[i].support() {
            *owners.get_mut(f).expect("counted") -= 1;
        }
        chosen[i] = Some(s);
    }
    chosen.into_iter().collect()
}

fn exhaustive_facets(cycles: &[ChainVector]) -> Option<(Vec<Simplex>, BigInt)> {
    let supports: Vec<Vec<&Simplex>> = cycles.iter().map(|c| c.support().collect()).collect();
    let mut chosen: Vec<Simplex> = Vec::with_capacity(cycles.len());
    let mut budget = EXHAUSTIVE_BUDGET;
    fn go(
        i: usize,
        cycles: &[ChainVector],
        supports: &[Vec<&Simplex>],
        chosen: &mut Vec<Simplex>,
        budget: &mut usize,
    ) -> Option<BigInt> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if i == cycles.len() {
            let det = zmatrix::determinant(&coefficient_matrix(cycles, chosen));
            return det.abs().is_one().then_some(det);
        }
        for s in &supports[i] {
            if chosen.contains(s) {
                continue;
            }
            chosen.push((*s).clone());
            if let Some(d) = go(i + 1, cycles, supports, chosen, budget) {
                return Some(d);
            }
            chosen.pop();
        }
        None
    }
    let det = go(0, cycles, &supports, &mut chosen, &mut budget)?;
    Some((chosen, det))
}

/// Whether the cycles form a ℤ-basis of `ker ∂_top`.
///
/// A ℤ-basis of the kernel is computed by integer elimination, brought to
/// echelon form, and each cycle is expressed in it; the cycles are a basis iff
/// the count matches and the change-of-basis matrix has determinant `±1`.
pub fn verify_unimodular_spanning(complex: &SimplicialComplex, cycles: &[ChainVector]) -> Result<bool> {
    check_cycles(complex, cycles)?;
    let top = complex.dimension();
    let ncols = complex.faces(top).len();
    let kernel = zmatrix::left_kernel(&complex.boundary_matrix(top));
    if kernel.len() != cycles.len() {
        return Ok(false);
    }
    let (echelon, pivots) = zmatrix::row_echelon(&kernel, ncols);
    let mut change = Vec::with_capacity(cycles.len());
    for c in cycles {
        let row = c.to_sparse(complex).expect("cycle faces checked");
        match zmatrix::solve_in_echelon(&echelon, &pivots, &row) {
            Some(coords) => change.push(coords),
            None => return Ok(false),
        }
    }
    Ok(zmatrix::determinant(&change).abs().is_one())
}
