use std::collections::BTreeSet;

use splitbasis::arrangement::{
    all_regions, bounded_regions, bounded_slice_test, coxeter_arrangement, default_vector, gamma, genericity,
    intersection_lattice, regions_are_chambers, to_q, verify_region_basis, zaslavsky_check,
};
use splitbasis::splitting::{basis_index_set, BasisIndex};
use splitbasis::{Error, LatticeFamily, PartitionLattice};

fn subsets(max: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << max))
        .map(|m| (1..=max).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect()
}

fn families_up_to_four() -> Vec<LatticeFamily> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push(LatticeFamily::a(n).unwrap());
    }
    for n in 1..=4 {
        out.push(LatticeFamily::b(n).unwrap());
    }
    for n in 2..=4 {
        out.push(LatticeFamily::d(n).unwrap());
    }
    for n in 2..=3 {
        for t in subsets(n) {
            out.push(LatticeFamily::db(n, &t).unwrap());
        }
    }
    for t in [vec![], vec![1], vec![2, 4], vec![1, 2, 3, 4]] {
        out.push(LatticeFamily::db(4, &t).unwrap());
    }
    for n in 3..=4 {
        for t in subsets(n - 1).into_iter().skip(1) {
            out.push(LatticeFamily::at(n, &t).unwrap());
        }
    }
    out
}

#[test]
fn intersection_lattices_are_partition_lattices() {
    for f in families_up_to_four() {
        let a = coxeter_arrangement(&f).unwrap();
        let lattice = intersection_lattice(&a);
        let partitions = PartitionLattice::build(&f);
        assert!(gamma(&lattice, &partitions).is_ok(), "{}", f.id());
        assert!(a.is_essential(), "{}", f.id());
    }
}

#[test]
fn region_counts_are_group_orders() {
    let fact = |n: usize| (1..=n).product::<usize>();
    for n in 2..=4 {
        let a = LatticeFamily::a(n).unwrap();
        assert_eq!(all_regions(&a).unwrap().len(), fact(n));
        let b = LatticeFamily::b(n).unwrap();
        assert_eq!(all_regions(&b).unwrap().len(), (1 << n) * fact(n));
        let d = LatticeFamily::d(n).unwrap();
        assert_eq!(all_regions(&d).unwrap().len(), (1 << (n - 1)) * fact(n));
        for f in [a, b, d] {
            let regions = all_regions(&f).unwrap();
            assert!(regions_are_chambers(&coxeter_arrangement(&f).unwrap(), &regions), "{}", f.id());
        }
    }
}

#[test]
fn interpolating_region_counts() {
    let lattice_sum = |f: &LatticeFamily| {
        let l = intersection_lattice(&coxeter_arrangement(f).unwrap());
        l.bounded().unwrap().mobius_from_bottom().iter().map(|m| m.abs()).sum::<i64>()
    };
    for t in subsets(3) {
        let f = LatticeFamily::db(3, &t).unwrap();
        let regions = all_regions(&f).unwrap();
        assert_eq!(regions.len() as i64, lattice_sum(&f), "{}", f.id());
        assert!(regions_are_chambers(&coxeter_arrangement(&f).unwrap(), &regions));
    }
}

#[test]
fn zaslavsky_holds_up_to_four() {
    for f in families_up_to_four() {
        if f.kind == splitbasis::FamilyKind::AT || f.n == 5 {
            continue;
        }
        let v = to_q(&default_vector(&f).unwrap());
        let z = zaslavsky_check(&f, &v).unwrap();
        assert!(z.passed(), "{}: {z:?}", f.id());
    }
}

#[test]
fn bounded_regions_are_the_index_sets() {
    for f in families_up_to_four() {
        if f.kind == splitbasis::FamilyKind::AT || f.n == 5 {
            continue;
        }
        let v = to_q(&default_vector(&f).unwrap());
        let bounded: BTreeSet<BasisIndex> = bounded_regions(&f, &v).unwrap().into_iter().collect();
        let expected: BTreeSet<BasisIndex> = basis_index_set(&f).into_iter().collect();
        assert_eq!(bounded, expected, "{}", f.id());
    }
}

#[test]
fn genericity_shortcut_agrees_on_small_vectors() {
    for f in [
        LatticeFamily::a(4).unwrap(),
        LatticeFamily::b(3).unwrap(),
        LatticeFamily::d(3).unwrap(),
        LatticeFamily::db(3, &[2]).unwrap(),
    ] {
        let lattice = intersection_lattice(&coxeter_arrangement(&f).unwrap());
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    let mut v = vec![a, b, c];
                    if f.n == 4 {
                        v = vec![a, b, c, -(a + b + c)];
                    }
                    let g = genericity(&lattice, &to_q(&v));
                    assert_eq!(g.all_flats, g.lines_only, "{} {v:?}", f.id());
                }
            }
        }
    }
}

#[test]
fn non_generic_vectors_are_rejected() {
    let b = LatticeFamily::b(3).unwrap();
    let v = to_q(&[1, 1, 4]);
    assert!(matches!(bounded_regions(&b, &v), Err(Error::NotGeneric(_))));
    let zero_ray = all_regions(&b)
        .unwrap()
        .iter()
        .map(|r| bounded_slice_test(r, &v))
        .find(|r| r.is_err());
    assert!(matches!(zero_ray, Some(Err(Error::GenericityViolated { .. }))));
    let report = verify_region_basis(&b, &[1, 1, 4]).unwrap();
    assert!(!report.passed());
}

#[test]
fn worked_geometric_examples() {
    for (f, v, cycles) in [
        (LatticeFamily::a(4).unwrap(), vec![-1, -1, -1, 3], 6),
        (LatticeFamily::b(3).unwrap(), vec![1, 2, 4], 15),
        (LatticeFamily::db(3, &[1]).unwrap(), vec![1, 2, 4], 9),
    ] {
        let r = verify_region_basis(&f, &v).unwrap();
        assert!(r.passed(), "{}: {:?}", f.id(), r.failures().collect::<Vec<_>>());
        assert_eq!(r.counts.basis, cycles);
    }
    let labels = bounded_regions(&LatticeFamily::db(3, &[1]).unwrap(), &to_q(&[1, 2, 4])).unwrap();
    assert!(labels.iter().any(|l| matches!(l, BasisIndex::Signed(_))));
    assert!(labels.iter().any(|l| matches!(l, BasisIndex::Tilde(_))));
}
