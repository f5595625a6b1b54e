//! Splitting subposets of the partition lattices, their fundamental cycles,
//! the basis index sets and the end-to-end basis verification.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::homology::{self, boolean_cycle_formula, ChainVector, SimplicialComplex};
use crate::parallel;
use crate::partition::{
    FamilyKind, LatticeFamily, PartitionElement, PartitionLattice, SetPartition, SignedElement, SignedPartition,
};
use crate::permutation::{all_permutations, compose, format_permutation, inverse, SignedPermutation};
use crate::poset::{BoundedPoset, Poset};
use crate::report::CertificateReport;

fn check_positions(s: &[usize], lo: usize, hi: usize) -> Result<()> {
    if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&i| i < lo || i > hi) {
        return Err(Error::InvalidParameters(format!(
            "split positions {s:?} must increase strictly within [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Splits `ω` after each position in `S ⊆ [n-1]`.
pub fn split_permutation(omega: &[usize], s: &[usize]) -> Result<SetPartition> {
    let n = omega.len();
    check_positions(s, 1, n.saturating_sub(1))?;
    let mut cuts = s.to_vec();
    cuts.push(n);
    let mut start = 0;
    let blocks = cuts
        .into_iter()
        .map(|end| {
            let b = omega[start..end].to_vec();
            start = end;
            b
        })
        .collect();
    SetPartition::new(n, blocks)
}

/// Splits `(ω, ε)` at `S ⊆ {0, …, n-1}`: the letters before the first cut
/// join the zero block (bars dropped); each later segment becomes a signed
/// block, taken up to an overall bar.
pub fn split_signed(w: &SignedPermutation, s: &[usize]) -> Result<SignedPartition> {
    let n = w.n();
    if n == 0 {
        return SignedPartition::new(0, vec![], vec![]);
    }
    check_positions(s, 0, n - 1)?;
    let first = s.first().copied().unwrap_or(n);
    let zero = w.omega()[..first].to_vec();
    let mut cuts: Vec<usize> = s.iter().copied().skip(1).collect();
    cuts.push(n);
    let mut start = first;
    let mut blocks = Vec::new();
    for end in cuts {
        blocks.push((start + 1..=end).map(|i| w.letter(i)).collect::<Vec<SignedElement>>());
        start = end;
    }
    SignedPartition::new(n, zero, blocks)
}

fn subsets(range: std::ops::Range<usize>) -> impl Iterator<Item = Vec<usize>> {
    let items: Vec<usize> = range.collect();
    (0u64..(1 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &x)| x)
            .collect()
    })
}

/// A splitting subposet, as element indices into its ambient lattice and as
/// the induced poset.
#[derive(Clone, Debug)]
pub struct SplittingSubposet {
    pub indices: Vec<usize>,
    pub poset: Poset,
}

impl SplittingSubposet {
    fn from_elements(lattice: &PartitionLattice, elements: Vec<PartitionElement>) -> Result<Self> {
        let set: BTreeSet<usize> = elements
            .iter()
            .map(|e| lattice.index_of(e).ok_or_else(|| Error::UnknownLabel(e.to_string())))
            .collect::<Result<_>>()?;
        let indices: Vec<usize> = set.into_iter().collect();
        let poset = lattice.poset().induced(&indices);
        Ok(Self { indices, poset })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Whether the subposet is isomorphic to `2^[m]`.
    pub fn is_boolean(&self, m: usize) -> bool {
        self.poset.len() == 1 << m && self.poset.is_isomorphic(crate::poset::boolean_lattice(m).poset())
    }
}

/// `Π_ω`: all splits of `ω`, inside `Π_n` or `Π_n(T)`.
pub fn splitting_subposet_a(lattice: &PartitionLattice, omega: &[usize]) -> Result<SplittingSubposet> {
    let n = omega.len();
    let elements = subsets(1..n)
        .map(|s| split_permutation(omega, &s).map(Into::into))
        .collect::<Result<Vec<_>>>()?;
    SplittingSubposet::from_elements(lattice, elements)
}

/// `Π_{ω,ε}`: all splits of `(ω, ε)`.
pub fn splitting_subposet_b(lattice: &PartitionLattice, w: &SignedPermutation) -> Result<SplittingSubposet> {
    let elements = subsets(0..w.n())
        .map(|s| split_signed(w, &s).map(Into::into))
        .collect::<Result<Vec<_>>>()?;
    SplittingSubposet::from_elements(lattice, elements)
}

/// `Π̃_{ω,ε}`: splits of `(ω, ε)` and of `(ω, ε′)` at subsets whose least
/// element is not 1.
pub fn splitting_subposet_d(lattice: &PartitionLattice, w: &SignedPermutation) -> Result<SplittingSubposet> {
    if !w.is_even() {
        return Err(Error::InvalidParameters(format!("{w} has an odd number of bars")));
    }
    let w2 = w.flip_first();
    let mut elements = Vec::new();
    for s in subsets(0..w.n()).filter(|s| s.first() != Some(&1)) {
        elements.push(split_signed(w, &s)?.into());
        elements.push(split_signed(&w2, &s)?.into());
    }
    SplittingSubposet::from_elements(lattice, elements)
}

/// Index of a splitting cycle: `ρ_ω`, `ρ_{ω,ε}` or `ρ̃_{ω,ε}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Perm(Vec<usize>),
    Signed(SignedPermutation),
    Tilde(SignedPermutation),
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Perm(w) => f.write_str(&format_permutation(w)),
            BasisIndex::Signed(w) => write!(f, "{w}"),
            BasisIndex::Tilde(w) => write!(f, "~{w}"),
        }
    }
}

/// The index set of the splitting basis theorem for the family, in a fixed
/// order. For `DB` the `ρ` indices precede the `ρ̃` ones.
pub fn basis_index_set(family: &LatticeFamily) -> Vec<BasisIndex> {
    let n = family.n;
    match family.kind {
        FamilyKind::A => all_permutations(n)
            .into_iter()
            .filter(|w| w[n - 1] == n)
            .map(BasisIndex::Perm)
            .collect(),
        FamilyKind::AT => all_permutations(n)
            .into_iter()
            .filter(|w| w[n - 1] == n && family.in_t(w[n - 2]))
            .map(BasisIndex::Perm)
            .collect(),
        FamilyKind::B => SignedPermutation::all(n)
            .into_iter()
            .filter(SignedPermutation::rlm_unbarred)
            .map(BasisIndex::Signed)
            .collect(),
        FamilyKind::D => SignedPermutation::all_even(n)
            .into_iter()
            .filter(|w| w.omega()[0] != n && w.rlm_unbarred())
            .map(BasisIndex::Tilde)
            .collect(),
        FamilyKind::DB => {
            let b = SignedPermutation::all(n)
                .into_iter()
                .filter(|w| family.in_t(w.omega()[0]) && w.rlm_unbarred())
                .map(BasisIndex::Signed);
            let d = SignedPermutation::all_even(n)
                .into_iter()
                .filter(|w| !family.in_t(w.omega()[0]) && w.omega()[0] != n && w.rlm_unbarred())
                .map(BasisIndex::Tilde);
            b.chain(d).collect()
        }
    }
}

/// Every splitting cycle the family's lattice contains: all of `S_n` for
/// `A`, all of `B_n` for `B`, all of `D_n` for `D`, the region-indexed
/// cycles for `DB`, and the permutations whose splits stay inside `Π_n(T)`
/// for `AT`.
pub fn all_indices(family: &LatticeFamily) -> Vec<BasisIndex> {
    let n = family.n;
    match family.kind {
        FamilyKind::A => all_permutations(n).into_iter().map(BasisIndex::Perm).collect(),
        FamilyKind::AT => {
            let lattice = PartitionLattice::build(family);
            all_permutations(n)
                .into_iter()
                .filter(|w| splitting_subposet_a(&lattice, w).is_ok())
                .map(BasisIndex::Perm)
                .collect()
        }
        FamilyKind::B => SignedPermutation::all(n).into_iter().map(BasisIndex::Signed).collect(),
        FamilyKind::D => SignedPermutation::all_even(n).into_iter().map(BasisIndex::Tilde).collect(),
        FamilyKind::DB => {
            let b = SignedPermutation::all(n)
                .into_iter()
                .filter(|w| family.in_t(w.omega()[0]))
                .map(BasisIndex::Signed);
            let d = SignedPermutation::all_even(n)
                .into_iter()
                .filter(|w| !family.in_t(w.omega()[0]))
                .map(BasisIndex::Tilde);
            b.chain(d).collect()
        }
    }
}

/// Closed-form rank of the top homology of the proper part.
pub fn expected_rank(family: &LatticeFamily) -> u64 {
    let n = family.n as u64;
    let fact = |k: u64| (1..=k).product::<u64>();
    let odd = |k: u64| (1..=k).map(|i| 2 * i - 1).product::<u64>();
    let t = family.t.len() as u64;
    match family.kind {
        FamilyKind::A => fact(n - 1),
        FamilyKind::B => odd(n),
        FamilyKind::D => odd(n - 1) * (n - 1),
        FamilyKind::DB => odd(n - 1) * (t + n - 1),
        FamilyKind::AT => fact(n - 2) * t,
    }
}

pub fn splitting_subposet(lattice: &PartitionLattice, index: &BasisIndex) -> Result<SplittingSubposet> {
    match index {
        BasisIndex::Perm(w) => splitting_subposet_a(lattice, w),
        BasisIndex::Signed(w) => splitting_subposet_b(lattice, w),
        BasisIndex::Tilde(w) => splitting_subposet_d(lattice, w),
    }
}

/// Fundamental cycle of the proper part of a Boolean splitting subposet,
/// written in the order complex of the ambient proper part and signed so its
/// least simplex has coefficient `+1`.
pub fn rho_cycle(sub: &SplittingSubposet, ambient: &SimplicialComplex) -> Result<ChainVector> {
    Ok(boolean_cycle_formula(&sub.poset, ambient)?.normalized())
}

/// Independent oracle: the kernel generator of the subposet's own proper
/// part, transported into the ambient complex.
pub fn kernel_cycle(sub: &SplittingSubposet, ambient: &SimplicialComplex) -> Result<ChainVector> {
    let bounded = BoundedPoset::new(sub.poset.clone())?;
    let local = bounded.proper_part()?.order_complex();
    let z = local.fundamental_cycle_top()?;
    Ok(z.relabel(&local, ambient, |l| Some(l.to_string()))?.normalized())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IndexChoice {
    #[default]
    Theorem,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub indices: IndexChoice,
    /// Flip the sign of one coefficient of the given cycle before the
    /// certificates run (mutation testing).
    pub flip_sign_in: Option<usize>,
}

/// A cycle with the outcome of the per-cycle checks.
#[derive(Clone, Debug)]
pub struct BuiltCycle {
    pub index: BasisIndex,
    pub chain: ChainVector,
    pub boolean: bool,
    pub kernel_agrees: bool,
}

pub fn build_cycle(lattice: &PartitionLattice, ambient: &SimplicialComplex, index: &BasisIndex) -> Result<BuiltCycle> {
    let sub = splitting_subposet(lattice, index)?;
    let m = match index {
        BasisIndex::Perm(w) => w.len() - 1,
        BasisIndex::Signed(w) | BasisIndex::Tilde(w) => w.n(),
    };
    let boolean = sub.is_boolean(m);
    let chain = rho_cycle(&sub, ambient)?;
    let kernel_agrees = kernel_cycle(&sub, ambient)?.sign_relative_to(&chain).is_some();
    Ok(BuiltCycle {
        index: index.clone(),
        chain,
        boolean,
        kernel_agrees,
    })
}

/// Homology of the proper part: reduced Betti data must vanish outside
/// `degree` and be free there. Returns (pass, rank in `degree`, detail).
pub fn homology_concentration(complex: &SimplicialComplex, degree: isize) -> (bool, usize, String) {
    let mut pass = complex.dimension() == degree;
    let mut rank = 0;
    let mut parts = Vec::new();
    for (k, b) in complex.all_reduced_betti() {
        if k == degree {
            rank = b.rank;
        } else if b.rank != 0 {
            pass = false;
        }
        if !b.torsion.is_empty() {
            pass = false;
        }
        let torsion = if b.torsion.is_empty() {
            String::new()
        } else {
            format!("+torsion{:?}", b.torsion.iter().map(ToString::to_string).collect::<Vec<_>>())
        };
        parts.push(format!("H{k}={}{torsion}", b.rank));
    }
    (pass, rank, parts.join(" "))
}

/// Runs both certificates on a cycle set and records the outcome.
pub(crate) fn certify_into(
    report: &mut CertificateReport,
    complex: &SimplicialComplex,
    cycles: &[ChainVector],
    rank: usize,
) {
    report.check(
        "basis-size",
        cycles.len() == rank,
        format!("{} cycles, top rank {rank}", cycles.len()),
    );
    let broken: Vec<usize> = (0..cycles.len()).filter(|&i| !complex.is_cycle(&cycles[i])).collect();
    report.check(
        "cycles",
        broken.is_empty(),
        if broken.is_empty() {
            format!("all {} chains are cycles", cycles.len())
        } else {
            format!("not cycles: {broken:?}")
        },
    );
    if !broken.is_empty() {
        report.check("facet-certificate", false, "skipped: input is not a set of cycles");
        report.check("unimodular-spanning", false, "skipped: input is not a set of cycles");
        return;
    }
    let cert_pass = if cycles.len() == rank {
        match homology::certify_basis(complex, cycles) {
            Ok(cert) => {
                report.determinant = Some(cert.determinant.to_string());
                let pass = cert.passed();
                report.check(
                    "facet-certificate",
                    pass,
                    format!("det {} via {:?} facet choice", cert.determinant, cert.strategy),
                );
                pass
            }
            Err(e) => {
                report.check("facet-certificate", false, e.to_string());
                false
            }
        }
    } else {
        report.check(
            "facet-certificate",
            false,
            format!("{} cycles cannot pair with {rank} facets", cycles.len()),
        );
        false
    };
    let span = homology::verify_unimodular_spanning(complex, cycles).unwrap_or(false);
    report.check(
        "unimodular-spanning",
        span,
        if span {
            "change of basis to a kernel basis has det ±1".to_string()
        } else {
            "cycles do not form a Z-basis of the top cycle group".to_string()
        },
    );
    report.check(
        "certificates-agree",
        cert_pass == span,
        format!("facet certificate {cert_pass}, unimodular spanning {span}"),
    );
}

/// Builds the lattice and all indexed splitting cycles, then checks that
/// they form a basis of the top homology of the proper part.
pub fn verify_splitting_basis(family: &LatticeFamily, opts: VerifyOptions) -> Result<CertificateReport> {
    let start = Instant::now();
    if family.kind == FamilyKind::A && family.n < 2 {
        return Err(Error::InvalidParameters("A needs n >= 2 for a proper part".into()));
    }
    let lattice = PartitionLattice::build(family);
    let complex = lattice.proper_part_complex();
    let mut report = CertificateReport::new(format!("basis {}", family.id()), family);
    report.counts.elements = lattice.len();
    report.counts.chains = complex.facets().len();

    let (concentrated, rank, detail) = homology_concentration(&complex, family.top_degree());
    report.counts.rank = rank;
    report.check("homology-concentrated", concentrated, detail);
    let mu = lattice.moebius_bottom_top().unsigned_abs() as usize;
    report.check("moebius-rank", mu == rank, format!("|mu(0,1)| = {mu}, top rank {rank}"));
    let expected = expected_rank(family) as usize;
    report.check("closed-form-rank", expected == rank, format!("closed form {expected}, top rank {rank}"));

    let indices = match opts.indices {
        IndexChoice::Theorem => basis_index_set(family),
        IndexChoice::All => all_indices(family),
    };
    report.counts.basis = indices.len();
    let built = parallel::map(&indices, |idx| build_cycle(&lattice, &complex, idx));
    let mut cycles = Vec::with_capacity(built.len());
    let mut errors = Vec::new();
    let (mut boolean, mut agree) = (0, 0);
    for (idx, b) in indices.iter().zip(built) {
        match b {
            Ok(b) => {
                boolean += b.boolean as usize;
                agree += b.kernel_agrees as usize;
                cycles.push(b.chain);
            }
            Err(e) => errors.push(format!("{idx}: {e}")),
        }
    }
    if !errors.is_empty() {
        report.check("splitting-cycles", false, errors.join("; "));
        report.millis = start.elapsed().as_millis() as u64;
        return Ok(report);
    }
    report.check(
        "boolean-subposets",
        boolean == indices.len(),
        format!("{boolean}/{} splitting subposets are Boolean", indices.len()),
    );
    report.check(
        "formula-matches-kernel",
        agree == indices.len(),
        format!("{agree}/{} formula cycles equal the kernel generator up to sign", indices.len()),
    );
    if let Some(k) = opts.flip_sign_in {
        if let Some(c) = cycles.get_mut(k) {
            if let Some(v) = c.terms.values_mut().next() {
                *v = -*v;
            }
        }
    }
    certify_into(&mut report, &complex, &cycles, rank);
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Permutations `σ` of `[n]` fixing `n` and stabilizing `T`, i.e. the group
/// `S_T × S_{[n-1]∖T}`.
pub fn stabilizer_group(n: usize, t: &[usize]) -> Vec<Vec<usize>> {
    all_permutations(n)
        .into_iter()
        .filter(|s| s[n - 1] == n && (1..n).all(|i| t.contains(&i) == t.contains(&s[i - 1])))
        .collect()
}

/// Relabels every partition of a type A cycle by `σ`.
pub fn act(sigma: &[usize], chain: &ChainVector, complex: &SimplicialComplex) -> Result<ChainVector> {
    chain.relabel(complex, complex, |label| {
        let p: SetPartition = label.parse().ok()?;
        Some(p.relabel(sigma).to_string())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub n: usize,
    pub t: Vec<usize>,
    pub group_order: usize,
    pub orbits: Vec<Vec<Vec<usize>>>,
    pub expected_orbits: usize,
    /// Every orbit has size `|T|!·(n-1-|T|)!`.
    pub regular: bool,
    /// `σρ_ω = ±ρ_{σω}` for every group element and index.
    pub action_permutes_cycles: bool,
    /// `σ⁻¹(σρ_ω) = ρ_ω` for every group element and index.
    pub inverse_restores: bool,
}

impl OrbitReport {
    pub fn passed(&self) -> bool {
        self.orbits.len() == self.expected_orbits && self.regular && self.action_permutes_cycles && self.inverse_restores
    }
}

/// Orbits of `S_T × S_{[n-1]∖T}` on the `Π_n(T)` splitting basis, with the
/// action checked on the cycles themselves.
pub fn orbit_report(n: usize, t: &[usize]) -> Result<OrbitReport> {
    let family = LatticeFamily::at(n, t)?;
    let lattice = PartitionLattice::build(&family);
    let complex = lattice.proper_part_complex();
    let group = stabilizer_group(n, &family.t);
    let index: Vec<Vec<usize>> = basis_index_set(&family)
        .into_iter()
        .map(|i| match i {
            BasisIndex::Perm(w) => w,
            _ => unreachable!("type A indices"),
        })
        .collect();
    let cycles: Vec<ChainVector> = parallel::map(&index, |w| {
        let sub = splitting_subposet_a(&lattice, w)?;
        rho_cycle(&sub, &complex)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let position = |w: &[usize]| index.iter().position(|x| x == w);

    let checks = parallel::map(&group, |sigma| -> Result<(bool, bool)> {
        let inv = inverse(sigma);
        let mut permutes = true;
        let mut restores = true;
        for (w, rho) in index.iter().zip(&cycles) {
            let moved = act(sigma, rho, &complex)?;
            let target = position(&compose(sigma, w));
            permutes &= target.is_some_and(|j| moved.sign_relative_to(&cycles[j]).is_some());
            restores &= act(&inv, &moved, &complex)? == *rho;
        }
        Ok((permutes, restores))
    });
    let mut action_permutes_cycles = true;
    let mut inverse_restores = true;
    for c in checks {
        let (p, r) = c?;
        action_permutes_cycles &= p;
        inverse_restores &= r;
    }

    let mut seen = vec![false; index.len()];
    let mut orbits = Vec::new();
    for i in 0..index.len() {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = group.iter().map(|s| compose(s, &index[i])).collect();
        for w in &orbit {
            if let Some(j) = position(w) {
                seen[j] = true;
            }
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    let regular = orbits.iter().all(|o| o.len() == group.len());
    Ok(OrbitReport {
        n,
        t: family.t.clone(),
        group_order: group.len(),
        orbits,
        expected_orbits: binomial(n - 2, family.t.len() - 1),
        regular,
        action_permutes_cycles,
        inverse_restores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{build_pi, build_pib, build_pid};

    fn perm(s: &str) -> Vec<usize> {
        s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    }

    #[test]
    fn type_a_splits() {
        let w = perm("3124");
        assert_eq!(split_permutation(&w, &[]).unwrap().to_string(), "1 2 3 4");
        assert_eq!(split_permutation(&w, &[1, 3]).unwrap().to_string(), "1 2 | 3 | 4");
        assert_eq!(split_permutation(&w, &[2]).unwrap().to_string(), "1 3 | 2 4");
        assert!(split_permutation(&w, &[0]).is_err());
        assert!(split_permutation(&w, &[2, 1]).is_err());
    }

    #[test]
    fn signed_splits() {
        let w: SignedPermutation = "3' 5 6 1' 8 7 4' 2".parse().unwrap();
        assert_eq!(split_signed(&w, &[2, 5]).unwrap().to_string(), "0 3 5 | 1 6' 8' | 2 4' 7");
        assert_eq!(split_signed(&w, &[]).unwrap().to_string(), "0 1 2 3 4 5 6 7 8");
        let v: SignedPermutation = "2' 3 1".parse().unwrap();
        assert_eq!(split_signed(&v, &[0, 1]).unwrap().to_string(), "0 | 1 3 | 2");
    }

    #[test]
    fn small_splitting_subposets_are_boolean() {
        let p4 = build_pi(4).unwrap();
        let s = splitting_subposet_a(&p4, &perm("3124")).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.is_boolean(3));
        let b3 = build_pib(3).unwrap();
        let s = splitting_subposet_b(&b3, &"2' 3 1".parse().unwrap()).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.is_boolean(3));
        let d2 = build_pid(2).unwrap();
        let s = splitting_subposet_d(&d2, &"1 2".parse().unwrap()).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.is_boolean(2));
    }

    #[test]
    fn rho_examples() {
        let p4 = build_pi(4).unwrap();
        let complex = p4.proper_part_complex();
        let sub = splitting_subposet_a(&p4, &perm("3124")).unwrap();
        let rho = rho_cycle(&sub, &complex).unwrap();
        assert_eq!(rho.len(), 6);
        assert!(rho.all_unit_coefficients());
        assert!(complex.is_cycle(&rho));
        assert_eq!(kernel_cycle(&sub, &complex).unwrap(), rho);
        let b3 = build_pib(3).unwrap();
        let cb = b3.proper_part_complex();
        let sub = splitting_subposet_b(&b3, &"2' 3 1".parse().unwrap()).unwrap();
        assert_eq!(rho_cycle(&sub, &cb).unwrap().len(), 6);
    }

    #[test]
    fn index_set_examples() {
        let a4 = basis_index_set(&LatticeFamily::a(4).unwrap());
        assert_eq!(a4.len(), 6);
        let b2: Vec<String> = basis_index_set(&LatticeFamily::b(2).unwrap()).iter().map(ToString::to_string).collect();
        assert_eq!(b2, vec!["1 2", "1' 2", "2 1"]);
        assert_eq!(basis_index_set(&LatticeFamily::d(3).unwrap()).len(), 6);
        let db = basis_index_set(&LatticeFamily::db(3, &[1]).unwrap());
        assert_eq!(db.len(), 9);
        assert!(db.iter().any(|i| matches!(i, BasisIndex::Tilde(_))));
    }

    #[test]
    fn small_bases_verify() {
        for family in [
            LatticeFamily::a(2).unwrap(),
            LatticeFamily::a(3).unwrap(),
            LatticeFamily::a(4).unwrap(),
            LatticeFamily::b(1).unwrap(),
            LatticeFamily::b(2).unwrap(),
            LatticeFamily::d(2).unwrap(),
            LatticeFamily::db(2, &[1]).unwrap(),
            LatticeFamily::at(3, &[1]).unwrap(),
        ] {
            let r = verify_splitting_basis(&family, VerifyOptions::default()).unwrap();
            assert!(r.passed(), "{}: {:?}", family.id(), r.checks);
            assert_eq!(r.counts.basis as u64, expected_rank(&family));
        }
    }

    #[test]
    fn overcomplete_and_faulty_sets_fail() {
        let b2 = LatticeFamily::b(2).unwrap();
        let all = verify_splitting_basis(&b2, VerifyOptions { indices: IndexChoice::All, flip_sign_in: None }).unwrap();
        assert_eq!(all.counts.basis, 8);
        assert!(!all.passed());
        let a4 = LatticeFamily::a(4).unwrap();
        let faulty = verify_splitting_basis(&a4, VerifyOptions { indices: IndexChoice::Theorem, flip_sign_in: Some(0) }).unwrap();
        assert!(!faulty.passed());
    }

    #[test]
    fn orbit_examples() {
        let r = orbit_report(4, &[2]).unwrap();
        assert_eq!((r.orbits.len(), r.group_order), (1, 2));
        assert!(r.passed());
        let r = orbit_report(4, &[1, 2]).unwrap();
        assert_eq!(r.orbits.len(), 2);
        assert!(r.passed());
    }

    #[test]
    fn act_on_transposition() {
        let fam = LatticeFamily::at(4, &[1, 2]).unwrap();
        let lattice = PartitionLattice::build(&fam);
        let complex = lattice.proper_part_complex();
        let rho = |w: &[usize]| rho_cycle(&splitting_subposet_a(&lattice, w).unwrap(), &complex).unwrap();
        let moved = act(&[2, 1, 3, 4], &rho(&perm("3124")), &complex).unwrap();
        assert!(moved.sign_relative_to(&rho(&perm("3214"))).is_some());
        let same = act(&[1, 2, 3, 4], &rho(&perm("3124")), &complex).unwrap();
        assert_eq!(same, rho(&perm("3124")));
    }
}
