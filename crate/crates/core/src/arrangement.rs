//! Exact rational hyperplane arrangements for the partition-lattice families:
//! intersection lattices, simplicial regions with extreme rays, genericity of
//! a slicing hyperplane, bounded regions, the face-to-flat map and the
//! geometric verification of the splitting bases.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flat::{self, dot, q, Flat, Q};
use crate::homology::{ChainVector, SimplicialComplex};
use crate::parallel;
use crate::partition::{partition_to_subspace, FamilyKind, LatticeFamily, PartitionLattice};
use crate::poset::{BoundedPoset, Poset};
use crate::report::CertificateReport;
use crate::splitting::{self, all_indices, basis_index_set, BasisIndex};

/// Affine hyperplane `normal · x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Q>,
    pub offset: Q,
}

impl Hyperplane {
    pub fn linear(normal: Vec<Q>) -> Self {
        assert!(normal.iter().any(|c| !c.is_zero()), "zero normal");
        Self {
            normal,
            offset: Q::zero(),
        }
    }

    pub fn flat(&self) -> Flat {
        Flat::affine(self.normal.len(), vec![(self.normal.clone(), self.offset.clone())])
    }
}

/// Hyperplanes restricted to an ambient affine subspace `space` of `ℝ^d`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    space: Flat,
    hyperplanes: Vec<Hyperplane>,
    flats: Vec<Flat>,
}

impl Arrangement {
    /// Drops hyperplanes that coincide, after restriction to `space`, with an
    /// earlier one. Hyperplanes containing `space` or missing it are rejected.
    pub fn new(space: Flat, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        let mut flats = Vec::new();
        for h in hyperplanes {
            let f = space.intersect(&h.flat());
            if f.is_empty() || f == space {
                return Err(Error::InvalidParameters(format!(
                    "hyperplane {} does not cut the ambient space in codimension one",
                    h.flat()
                )));
            }
            if seen.insert(f.clone()) {
                kept.push(h);
                flats.push(f);
            }
        }
        Ok(Self {
            space,
            hyperplanes: kept,
            flats,
        })
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn space(&self) -> &Flat {
        &self.space
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Restrictions of the hyperplanes to the ambient space.
    pub fn hyperplane_flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn center(&self) -> Flat {
        self.flats.iter().fold(self.space.clone(), |acc, f| acc.intersect(f))
    }

    pub fn is_central(&self) -> bool {
        !self.center().is_empty()
    }

    /// Central with a single point as common intersection.
    pub fn is_essential(&self) -> bool {
        self.center().dimension() == Some(0)
    }

    /// The arrangement induced on the affine hyperplane `v·x = c`.
    /// Hyperplanes parallel to the slice are dropped; when the slice is a
    /// single point that is all of them.
    pub fn slice(&self, v: &[Q], c: &Q) -> Result<Arrangement> {
        let space = self.space.with_equation(v, c);
        let meeting = self
            .hyperplanes
            .iter()
            .filter(|h| !space.intersect(&h.flat()).is_empty())
            .cloned()
            .collect();
        Arrangement::new(space, meeting)
    }
}

fn e(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i - 1] = q(1);
    v
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    for &(i, c) in terms {
        v[i - 1] += q(c);
    }
    v
}

/// `K = {x : x_1 + ⋯ + x_n = 0}`.
pub fn sum_zero_space(n: usize) -> Flat {
    Flat::linear(n, vec![vec![q(1); n]])
}

/// The arrangement whose intersection lattice is the family's partition
/// lattice. Type `A` and `Π_n(T)` live in `K`, which also makes `A_n(T)`
/// essential.
pub fn coxeter_arrangement(family: &LatticeFamily) -> Result<Arrangement> {
    let n = family.n;
    let mut hs = Vec::new();
    match family.kind {
        FamilyKind::A => {
            for i in 1..=n {
                for j in i + 1..=n {
                    hs.push(Hyperplane::linear(combo(n, &[(i, 1), (j, -1)])));
                }
            }
            Arrangement::new(sum_zero_space(n), hs)
        }
        FamilyKind::AT => {
            for i in 1..n {
                for j in i + 1..n {
                    hs.push(Hyperplane::linear(combo(n, &[(i, 1), (j, -1)])));
                }
            }
            for &i in &family.t {
                hs.push(Hyperplane::linear(combo(n, &[(n, 1), (i, -1)])));
            }
            Arrangement::new(sum_zero_space(n), hs)
        }
        FamilyKind::B | FamilyKind::D | FamilyKind::DB => {
            for i in 1..=n {
                for j in i + 1..=n {
                    hs.push(Hyperplane::linear(combo(n, &[(i, 1), (j, -1)])));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    hs.push(Hyperplane::linear(combo(n, &[(i, 1), (j, 1)])));
                }
            }
            for i in 1..=n {
                let keep = match family.kind {
                    FamilyKind::B => true,
                    FamilyKind::D => false,
                    _ => family.in_t(i),
                };
                if keep {
                    hs.push(Hyperplane::linear(e(n, i)));
                }
            }
            Arrangement::new(Flat::whole(n), hs)
        }
    }
}

/// Intersection poset ordered by reverse inclusion, with the flats indexed
/// like the poset. Bounded when the arrangement is central.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    flats: Vec<Flat>,
    index: HashMap<Flat, usize>,
    poset: Poset,
    bottom: usize,
    bounded: Option<BoundedPoset>,
}

impl IntersectionLattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn index_of(&self, f: &Flat) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn bounded(&self) -> Option<&BoundedPoset> {
        self.bounded.as_ref()
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// `Σ_x μ(0̂, x)` over every element.
    pub fn moebius_sum(&self) -> i64 {
        self.poset.mobius_from(self.bottom).iter().sum()
    }
}

/// All non-empty intersections of subfamilies, by closure from the ambient
/// space. Flats are compared through the hyperplanes containing them.
pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let hs = a.hyperplane_flats();
    let mut flats = vec![a.space().clone()];
    let mut seen: HashSet<Flat> = flats.iter().cloned().collect();
    let mut i = 0;
    while i < flats.len() {
        let x = flats[i].clone();
        for h in hs {
            let y = x.intersect(h);
            if !y.is_empty() && y != x && seen.insert(y.clone()) {
                flats.push(y);
            }
        }
        i += 1;
    }
    let support: Vec<Vec<bool>> = parallel::map(&flats, |x| hs.iter().map(|h| h.contains(x)).collect());
    let labels: Vec<String> = flats.iter().map(ToString::to_string).collect();
    let poset = Poset::from_relation(labels, |i, j| {
        support[i].iter().zip(&support[j]).all(|(a, b)| !a || *b)
    })
    .expect("reverse inclusion is a partial order");
    let mut ordered = vec![None; flats.len()];
    for f in flats {
        let k = poset.index_of(&f.to_string()).expect("label present");
        ordered[k] = Some(f);
    }
    let flats: Vec<Flat> = ordered.into_iter().map(|f| f.expect("filled")).collect();
    let index = flats.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect::<HashMap<_, _>>();
    let bottom = index[a.space()];
    let bounded = BoundedPoset::new(poset.clone()).ok();
    IntersectionLattice {
        flats,
        index,
        poset,
        bottom,
        bounded,
    }
}

/// A simplicial region `{x ∈ space : f_i(x) > 0}` with its extreme rays;
/// `rays[j]` lies on every wall except wall `j`.
#[derive(Clone, Debug)]
pub struct Region {
    pub label: BasisIndex,
    pub walls: Vec<Vec<Q>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl Region {
    pub fn ray_q(&self, j: usize) -> Vec<Q> {
        self.rays[j].iter().map(|x| Q::from_integer(x.clone())).collect()
    }

    /// Sum of the rays: a point of the open region.
    pub fn interior_point(&self) -> Vec<Q> {
        let d = self.rays.first().map(Vec::len).unwrap_or(0);
        let mut p = vec![Q::zero(); d];
        for j in 0..self.rays.len() {
            for (a, b) in p.iter_mut().zip(self.ray_q(j)) {
                *a += b;
            }
        }
        p
    }
}

fn wall_forms(family: &LatticeFamily, label: &BasisIndex) -> Result<Vec<Vec<Q>>> {
    let n = family.n;
    let bad = |msg: String| Err(Error::InvalidParameters(msg));
    match (family.kind, label) {
        (FamilyKind::A, BasisIndex::Perm(w)) => {
            if w.len() != n {
                return bad(format!("{label} has the wrong length"));
            }
            Ok((0..n - 1).map(|i| combo(n, &[(w[i + 1], 1), (w[i], -1)])).collect())
        }
        (FamilyKind::B | FamilyKind::DB, BasisIndex::Signed(w)) => {
            if w.n() != n {
                return bad(format!("{label} has the wrong length"));
            }
            if family.kind == FamilyKind::DB && !family.in_t(w.omega()[0]) {
                return bad(format!("{label} does not start in T"));
            }
            let om = w.omega();
            let ep = w.epsilon();
            let mut out = vec![combo(n, &[(om[0], ep[0] as i64)])];
            for i in 0..n - 1 {
                out.push(combo(n, &[(om[i + 1], ep[i + 1] as i64), (om[i], -(ep[i] as i64))]));
            }
            Ok(out)
        }
        (FamilyKind::D | FamilyKind::DB, BasisIndex::Tilde(w)) => {
            if w.n() != n || n < 2 || !w.is_even() {
                return bad(format!("{label} is not an element of D_{n}"));
            }
            if family.kind == FamilyKind::DB && family.in_t(w.omega()[0]) {
                return bad(format!("{label} starts in T"));
            }
            let om = w.omega();
            let ep = w.epsilon();
            let mut out = vec![
                combo(n, &[(om[1], ep[1] as i64), (om[0], -1)]),
                combo(n, &[(om[1], ep[1] as i64), (om[0], 1)]),
            ];
            for i in 1..n - 1 {
                out.push(combo(n, &[(om[i + 1], ep[i + 1] as i64), (om[i], -(ep[i] as i64))]));
            }
            Ok(out)
        }
        _ => bad(format!("{label} does not label a region of {}", family.id())),
    }
}

/// The region labelled by a group element, with exact extreme rays read off
/// the inverse of the square constraint matrix (walls plus the equations of
/// the ambient space).
pub fn region_for(family: &LatticeFamily, label: &BasisIndex) -> Result<Region> {
    let walls = wall_forms(family, label)?;
    let n = family.n;
    let mut m = walls.clone();
    if family.kind == FamilyKind::A {
        m.push(vec![q(1); n]);
    }
    let inv = flat::inverse(&m).ok_or_else(|| Error::SingularConstraints(label.to_string()))?;
    let rays = (0..walls.len())
        .map(|j| flat::primitive(&inv.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
        .collect();
    Ok(Region {
        label: label.clone(),
        walls,
        rays,
    })
}

/// Every region of the family's arrangement, labelled combinatorially.
pub fn all_regions(family: &LatticeFamily) -> Result<Vec<Region>> {
    if family.kind == FamilyKind::AT {
        return Err(Error::InvalidParameters("regions are only labelled for A, B, D and DB".into()));
    }
    parallel::map(&all_indices(family), |l| region_for(family, l))
        .into_iter()
        .collect()
}

/// The slicing vector used when none is given: `(-1, …, -1, n-1)` for type A
/// and `(1, 2, 4, …, 2^{n-1})` otherwise.
pub fn default_vector(family: &LatticeFamily) -> Result<Vec<i64>> {
    let n = family.n;
    match family.kind {
        FamilyKind::A => Ok((1..=n).map(|i| if i == n { n as i64 - 1 } else { -1 }).collect()),
        FamilyKind::B | FamilyKind::D | FamilyKind::DB => Ok((0..n).map(|i| 1i64 << i).collect()),
        FamilyKind::AT => Err(Error::InvalidParameters("no slicing vector is defined for AT".into())),
    }
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Genericity of the hyperplane through `v` normal to `v`, decided over
/// every flat of positive dimension and over the lines only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genericity {
    pub all_flats: bool,
    pub lines_only: bool,
    /// A flat of positive dimension inside `v^⊥`, if any.
    pub witness: Option<String>,
}

pub fn genericity(lattice: &IntersectionLattice, v: &[Q]) -> Genericity {
    let zero = Q::zero();
    let mut all_flats = v.iter().any(|c| !c.is_zero());
    let mut lines_only = all_flats;
    let mut witness = None;
    for f in lattice.flats() {
        let d = f.dimension().unwrap_or(0);
        if d >= 1 && f.inside_hyperplane(v, &zero) {
            all_flats = false;
            if d == 1 {
                lines_only = false;
            }
            witness.get_or_insert_with(|| f.to_string());
        }
    }
    Genericity {
        all_flats,
        lines_only,
        witness,
    }
}

/// No flat of positive dimension lies in `v^⊥`.
pub fn is_generic(a: &Arrangement, v: &[Q]) -> bool {
    genericity(&intersection_lattice(a), v).all_flats
}

/// Whether the region meets the slice `v·x = c > 0` in a nonempty bounded
/// set, decided by the signs of `v` on the extreme rays.
pub fn bounded_slice_test(r: &Region, v: &[Q]) -> Result<bool> {
    let mut all_positive = true;
    for j in 0..r.rays.len() {
        let d = dot(v, &r.ray_q(j));
        if d.is_zero() {
            return Err(Error::GenericityViolated {
                region: r.label.to_string(),
                ray: format!("{:?}", r.rays[j].iter().map(ToString::to_string).collect::<Vec<_>>()),
            });
        }
        all_positive &= d.is_positive();
    }
    Ok(all_positive)
}

/// Labels of the regions with a nonempty bounded slice.
pub fn bounded_regions(family: &LatticeFamily, v: &[Q]) -> Result<Vec<BasisIndex>> {
    let a = coxeter_arrangement(family)?;
    if !is_generic(&a, v) {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        return Err(Error::NotGeneric(format!("({})", shown.join(", "))));
    }
    let regions = all_regions(family)?;
    let flags = parallel::map(&regions, |r| bounded_slice_test(r, v));
    let mut out = Vec::new();
    for (r, f) in regions.iter().zip(flags) {
        if f? {
            out.push(r.label.clone());
        }
    }
    Ok(out)
}

/// Image of the face poset of the closed region under the face-to-span map:
/// indices into `lattice` of the flats cut out by every subset of walls.
pub fn z_map_region(r: &Region, a: &Arrangement, lattice: &IntersectionLattice) -> Result<Vec<usize>> {
    let k = r.walls.len();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << k) {
        let eqs: Vec<(Vec<Q>, Q)> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (r.walls[i].clone(), Q::zero()))
            .collect();
        let f = a.space().intersect(&Flat::affine(a.ambient(), eqs));
        let i = lattice.index_of(&f).ok_or_else(|| Error::UnknownLabel(f.to_string()))?;
        out.insert(i);
    }
    Ok(out.into_iter().collect())
}

/// The map from flats to partitions, `ℓ_π ↦ π`, as lattice indices.
/// Fails unless it is an order isomorphism.
pub fn gamma(lattice: &IntersectionLattice, partitions: &PartitionLattice) -> Result<Vec<usize>> {
    if lattice.len() != partitions.len() {
        return Err(Error::InvalidParameters(format!(
            "{} flats against {} partitions",
            lattice.len(),
            partitions.len()
        )));
    }
    let mut map = vec![usize::MAX; lattice.len()];
    for (p, e) in partitions.elements().iter().enumerate() {
        let f = partition_to_subspace(e);
        let i = lattice.index_of(&f).ok_or_else(|| Error::UnknownLabel(format!("{e} -> {f}")))?;
        if map[i] != usize::MAX {
            return Err(Error::InvalidParameters(format!("two partitions give the flat {f}")));
        }
        map[i] = p;
    }
    let lp = lattice.poset();
    let pp = partitions.poset();
    for x in 0..lattice.len() {
        for y in 0..lattice.len() {
            if lp.leq(x, y) != pp.leq(map[x], map[y]) {
                return Err(Error::NotComparable(lp.label(x).into(), lp.label(y).into()));
            }
        }
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZaslavskyReport {
    pub bounded: usize,
    pub slice_moebius_sum: i64,
    pub moebius_bottom_top: i64,
    /// `X ↦ X ∩ H` is an order isomorphism from `L_A ∖ {1̂}` onto the slice
    /// lattice.
    pub slice_isomorphic: bool,
    pub regions: usize,
    pub region_moebius_sum: i64,
}

impl ZaslavskyReport {
    pub fn passed(&self) -> bool {
        let b = self.bounded as i64;
        self.slice_isomorphic
            && b == self.slice_moebius_sum.abs()
            && b == self.moebius_bottom_top.abs()
            && self.regions as i64 == self.region_moebius_sum
    }
}

/// Counts bounded regions of the slice two ways: by the ray test and by the
/// Möbius function of the slice's intersection poset.
pub fn zaslavsky_check(family: &LatticeFamily, v: &[Q]) -> Result<ZaslavskyReport> {
    let a = coxeter_arrangement(family)?;
    let lattice = intersection_lattice(&a);
    let bounded_poset = lattice
        .bounded()
        .ok_or_else(|| Error::InvalidParameters("arrangement is not central".into()))?;
    let bounded = bounded_regions(family, v)?.len();
    let c = dot(v, v);
    let slice = a.slice(v, &c)?;
    let slice_lattice = intersection_lattice(&slice);

    let top = bounded_poset.top();
    let hyper = Flat::affine(a.ambient(), vec![(v.to_vec(), c)]);
    let mut image = vec![usize::MAX; lattice.len()];
    let mut ok = slice_lattice.len() + 1 == lattice.len();
    for (i, x) in lattice.flats().iter().enumerate() {
        if i == top {
            continue;
        }
        let y = x.intersect(&hyper);
        match slice_lattice.index_of(&y) {
            Some(j) if y.dimension().map(|d| d + 1) == x.dimension() => image[i] = j,
            _ => ok = false,
        }
    }
    if ok {
        let lp = lattice.poset();
        let sp = slice_lattice.poset();
        let rest: Vec<usize> = (0..lattice.len()).filter(|&i| i != top).collect();
        ok = rest.iter().map(|&i| image[i]).collect::<BTreeSet<_>>().len() == rest.len()
            && rest
                .iter()
                .all(|&x| rest.iter().all(|&y| lp.leq(x, y) == sp.leq(image[x], image[y])));
    }
    let mu = bounded_poset.mobius_from_bottom();
    Ok(ZaslavskyReport {
        bounded,
        slice_moebius_sum: slice_lattice.moebius_sum(),
        moebius_bottom_top: bounded_poset.mobius_bottom_top(),
        slice_isomorphic: ok,
        regions: all_indices(family).len(),
        region_moebius_sum: mu.iter().map(|m| m.abs()).sum(),
    })
}

/// Checks the combinatorial region labelling: every interior point avoids
/// all hyperplanes, the walls are hyperplanes of the arrangement, and the
/// sign vectors of the interior points are distinct.
pub fn regions_are_chambers(a: &Arrangement, regions: &[Region]) -> bool {
    let flats: HashSet<&Flat> = a.hyperplane_flats().iter().collect();
    let mut signs = HashSet::new();
    for r in regions {
        let p = r.interior_point();
        if !a.space().contains_point(&p) {
            return false;
        }
        for w in &r.walls {
            let f = a.space().intersect(&Flat::linear(a.ambient(), vec![w.clone()]));
            if !flats.contains(&f) || !dot(w, &p).is_positive() {
                return false;
            }
        }
        let s: Option<Vec<bool>> = a
            .hyperplanes()
            .iter()
            .map(|h| {
                let d = dot(&h.normal, &p) - &h.offset;
                (!d.is_zero()).then(|| d.is_positive())
            })
            .collect();
        match s {
            Some(s) => {
                if !signs.insert(s) {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

/// End-to-end geometric construction of the basis: bounded regions, their
/// face posets mapped into the intersection lattice, the fundamental cycles
/// of those subposets carried to the partition lattice, and both basis
/// certificates. Also compares the result with the splitting cycles.
pub fn verify_region_basis(family: &LatticeFamily, vector: &[i64]) -> Result<CertificateReport> {
    let start = Instant::now();
    if family.kind == FamilyKind::AT {
        return Err(Error::InvalidParameters("no slicing vector is defined for AT".into()));
    }
    if vector.len() != family.n {
        return Err(Error::InvalidParameters(format!(
            "vector has {} entries, expected {}",
            vector.len(),
            family.n
        )));
    }
    let v = to_q(vector);
    let mut report = CertificateReport::new(format!("regions {}", family.id()), family);
    report.vector = Some(vector.to_vec());

    let a = coxeter_arrangement(family)?;
    let lattice = intersection_lattice(&a);
    report.counts.elements = lattice.len();
    report.check(
        "essential",
        a.is_essential(),
        format!("{} hyperplanes, center {}", a.len(), a.center()),
    );
    let g = genericity(&lattice, &v);
    report.check(
        "generic",
        g.all_flats,
        g.witness.clone().map_or("no flat lies in v-perp".to_string(), |w| format!("{w} lies in v-perp")),
    );
    report.check(
        "genericity-shortcut-agrees",
        g.all_flats == g.lines_only,
        format!("all flats {}, lines only {}", g.all_flats, g.lines_only),
    );
    if !g.all_flats {
        report.millis = start.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let partitions = PartitionLattice::build(family);
    let gamma_map = match gamma(&lattice, &partitions) {
        Ok(m) => {
            report.check("gamma-isomorphism", true, format!("{} flats", lattice.len()));
            m
        }
        Err(e) => {
            report.check("gamma-isomorphism", false, e.to_string());
            report.millis = start.elapsed().as_millis() as u64;
            return Ok(report);
        }
    };

    let regions = all_regions(family)?;
    report.check(
        "regions-are-chambers",
        regions_are_chambers(&a, &regions),
        format!("{} labelled regions", regions.len()),
    );
    let flags = parallel::map(&regions, |r| bounded_slice_test(r, &v))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let bounded: Vec<&Region> = regions.iter().zip(&flags).filter(|(_, f)| **f).map(|(r, _)| r).collect();
    let predicate: BTreeSet<BasisIndex> = basis_index_set(family).into_iter().collect();
    let geometric: BTreeSet<BasisIndex> = bounded.iter().map(|r| r.label.clone()).collect();
    report.check(
        "bounded-matches-predicate",
        predicate == geometric,
        format!(
            "{} bounded of {}, predicate set {}, symmetric difference {}",
            geometric.len(),
            regions.len(),
            predicate.len(),
            predicate.symmetric_difference(&geometric).count()
        ),
    );
    let z = zaslavsky_check(family, &v)?;
    report.check(
        "zaslavsky",
        z.passed(),
        format!(
            "bounded {}, slice mobius sum {}, mu(0,1) {}, slice lattice isomorphic {}, regions {} = {}",
            z.bounded, z.slice_moebius_sum, z.moebius_bottom_top, z.slice_isomorphic, z.regions, z.region_moebius_sum
        ),
    );

    let bl = lattice.bounded().expect("central arrangement");
    let flat_complex = bl.proper_part()?.order_complex();
    let part_complex = partitions.proper_part_complex();
    report.counts.chains = flat_complex.facets().len();
    let (concentrated, rank, detail) = splitting::homology_concentration(&part_complex, family.top_degree());
    report.counts.rank = rank;
    report.check("homology-concentrated", concentrated, detail);
    report.counts.basis = bounded.len();

    let label_map: HashMap<&str, &str> = (0..lattice.len())
        .map(|i| (lattice.poset().label(i), partitions.poset().label(gamma_map[i])))
        .collect();
    let built = parallel::map(&bounded, |r| -> Result<(ChainVector, bool, bool)> {
        let face_flats = z_map_region(r, &a, &lattice)?;
        let sub = lattice.poset().induced(&face_flats);
        let m = r.walls.len();
        let boolean = sub.len() == 1 << m && sub.is_isomorphic(crate::poset::boolean_lattice(m).poset());
        let cycle = region_cycle(&sub, &flat_complex)?;
        let carried = cycle
            .relabel(&flat_complex, &part_complex, |l| label_map.get(l).map(|s| s.to_string()))?
            .normalized();
        let split = splitting::splitting_subposet(&partitions, &r.label)?;
        let rho = splitting::rho_cycle(&split, &part_complex)?;
        Ok((carried.clone(), boolean, carried.sign_relative_to(&rho).is_some()))
    });
    let mut cycles = Vec::new();
    let (mut boolean, mut matching) = (0, 0);
    let mut errors = Vec::new();
    for (r, b) in bounded.iter().zip(built) {
        match b {
            Ok((c, bo, m)) => {
                cycles.push(c);
                boolean += bo as usize;
                matching += m as usize;
            }
            Err(e) => errors.push(format!("{}: {e}", r.label)),
        }
    }
    if !errors.is_empty() {
        report.check("region-cycles", false, errors.join("; "));
        report.millis = start.elapsed().as_millis() as u64;
        return Ok(report);
    }
    report.check(
        "face-posets-boolean",
        boolean == bounded.len(),
        format!("{boolean}/{} face posets are Boolean", bounded.len()),
    );
    report.check(
        "matches-splitting-cycles",
        matching == bounded.len(),
        format!("{matching}/{} region cycles equal the splitting cycle up to sign", bounded.len()),
    );
    splitting::certify_into(&mut report, &part_complex, &cycles, rank);
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Kernel generator for the proper part of a face poset, inside the order
/// complex of the proper part of the intersection lattice.
fn region_cycle(sub: &Poset, ambient: &SimplicialComplex) -> Result<ChainVector> {
    let local = BoundedPoset::new(sub.clone())?.proper_part()?.order_complex();
    let z = local.fundamental_cycle_top()?;
    z.relabel(&local, ambient, |l| Some(l.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{build_pi, build_pib};
    use crate::permutation::SignedPermutation;

    fn qv(v: &[i64]) -> Vec<Q> {
        to_q(v)
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(coxeter_arrangement(&LatticeFamily::a(3).unwrap()).unwrap().len(), 3);
        assert_eq!(coxeter_arrangement(&LatticeFamily::b(3).unwrap()).unwrap().len(), 9);
        assert_eq!(coxeter_arrangement(&LatticeFamily::db(3, &[1]).unwrap()).unwrap().len(), 7);
        let at = coxeter_arrangement(&LatticeFamily::at(4, &[1]).unwrap()).unwrap();
        assert_eq!(at.len(), 4);
        assert!(at.is_essential());
    }

    #[test]
    fn lattices_match_partitions() {
        let l = intersection_lattice(&coxeter_arrangement(&LatticeFamily::a(3).unwrap()).unwrap());
        assert_eq!(l.len(), 5);
        assert!(l.poset().is_isomorphic(build_pi(3).unwrap().poset()));
        let b2 = LatticeFamily::b(2).unwrap();
        let l = intersection_lattice(&coxeter_arrangement(&b2).unwrap());
        assert!(gamma(&l, &build_pib(2).unwrap()).is_ok());
    }

    #[test]
    fn single_hyperplane() {
        let a = Arrangement::new(Flat::whole(2), vec![Hyperplane::linear(qv(&[1, 0]))]).unwrap();
        let l = intersection_lattice(&a);
        assert_eq!(l.len(), 2);
        assert!(!a.is_essential());
    }

    #[test]
    fn ray_examples() {
        let a3 = LatticeFamily::a(3).unwrap();
        let r = region_for(&a3, &BasisIndex::Perm(vec![1, 2, 3])).unwrap();
        let rays: Vec<Vec<BigInt>> = vec![
            [-2, 1, 1].iter().map(|&x| BigInt::from(x)).collect(),
            [-1, -1, 2].iter().map(|&x| BigInt::from(x)).collect(),
        ];
        assert_eq!(r.rays, rays);
        let b2 = LatticeFamily::b(2).unwrap();
        let r = region_for(&b2, &BasisIndex::Signed("1 2".parse().unwrap())).unwrap();
        let rays: Vec<Vec<BigInt>> = vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]];
        assert_eq!(r.rays, rays);
    }

    #[test]
    fn tilde_region_is_split_by_first_coordinate() {
        let d3 = LatticeFamily::d(3).unwrap();
        let b3 = LatticeFamily::b(3).unwrap();
        let w: SignedPermutation = "2 3' 1'".parse().unwrap();
        let tilde = region_for(&d3, &BasisIndex::Tilde(w.clone())).unwrap();
        let halves = [
            region_for(&b3, &BasisIndex::Signed(w.clone())).unwrap(),
            region_for(&b3, &BasisIndex::Signed(w.flip_first())).unwrap(),
        ];
        // Each half's rays are nonnegative combinations inside the tilde
        // region, and their interior points land on opposite sides of x_2 = 0.
        for h in &halves {
            let p = h.interior_point();
            assert!(tilde.walls.iter().all(|f| dot(f, &p).is_positive()));
        }
        let s0 = halves[0].interior_point()[1].is_positive();
        let s1 = halves[1].interior_point()[1].is_positive();
        assert_ne!(s0, s1);
    }

    #[test]
    fn genericity_examples() {
        let a3 = LatticeFamily::a(3).unwrap();
        assert!(is_generic(&coxeter_arrangement(&a3).unwrap(), &qv(&[-1, -1, 2])));
        let b3 = LatticeFamily::b(3).unwrap();
        assert!(is_generic(&coxeter_arrangement(&b3).unwrap(), &qv(&[1, 2, 4])));
        let b2 = LatticeFamily::b(2).unwrap();
        let a = coxeter_arrangement(&b2).unwrap();
        let g = genericity(&intersection_lattice(&a), &qv(&[1, 1]));
        assert!(!g.all_flats && !g.lines_only);
        assert!(matches!(bounded_regions(&b2, &qv(&[1, 1])), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn bounded_slice_examples() {
        let a4 = LatticeFamily::a(4).unwrap();
        let v = qv(&[-1, -1, -1, 3]);
        let test = |w: &[usize]| bounded_slice_test(&region_for(&a4, &BasisIndex::Perm(w.to_vec())).unwrap(), &v).unwrap();
        assert!(test(&[1, 2, 3, 4]));
        assert!(!test(&[1, 2, 4, 3]));
        let b3 = LatticeFamily::b(3).unwrap();
        let r = region_for(&b3, &BasisIndex::Signed("2' 3 1".parse().unwrap())).unwrap();
        assert!(bounded_slice_test(&r, &qv(&[1, 2, 4])).unwrap());
        // Orthogonal rays are reported, not silently classified.
        let r = region_for(&b3, &BasisIndex::Signed("1 2 3".parse().unwrap())).unwrap();
        assert!(matches!(
            bounded_slice_test(&r, &qv(&[0, 0, 0])),
            Err(Error::GenericityViolated { .. })
        ));
    }

    #[test]
    fn zaslavsky_small() {
        let a4 = LatticeFamily::a(4).unwrap();
        let z = zaslavsky_check(&a4, &qv(&[-1, -1, -1, 3])).unwrap();
        assert_eq!(z.bounded, 6);
        assert!(z.passed(), "{z:?}");
        let d3 = LatticeFamily::d(3).unwrap();
        let z = zaslavsky_check(&d3, &qv(&[1, 2, 4])).unwrap();
        assert_eq!(z.bounded, 6);
        assert!(z.passed(), "{z:?}");
    }

    #[test]
    fn z_map_gives_splitting_subposet() {
        let a4 = LatticeFamily::a(4).unwrap();
        let a = coxeter_arrangement(&a4).unwrap();
        let l = intersection_lattice(&a);
        let parts = build_pi(4).unwrap();
        let g = gamma(&l, &parts).unwrap();
        let r = region_for(&a4, &BasisIndex::Perm(vec![3, 1, 2, 4])).unwrap();
        let mut image: Vec<usize> = z_map_region(&r, &a, &l).unwrap().into_iter().map(|i| g[i]).collect();
        image.sort_unstable();
        let split = splitting::splitting_subposet_a(&parts, &[3, 1, 2, 4]).unwrap();
        assert_eq!(image, split.indices);
    }

    #[test]
    fn region_basis_small() {
        for (fam, v) in [
            (LatticeFamily::a(3).unwrap(), vec![-1, -1, 2]),
            (LatticeFamily::a(4).unwrap(), vec![-1, -1, -1, 3]),
            (LatticeFamily::b(2).unwrap(), vec![1, 2]),
            (LatticeFamily::d(3).unwrap(), vec![1, 2, 4]),
        ] {
            let r = verify_region_basis(&fam, &v).unwrap();
            assert!(r.passed(), "{}: {:?}", fam.id(), r.failures().collect::<Vec<_>>());
        }
    }
}
