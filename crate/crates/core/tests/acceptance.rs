//! Acceptance matrix. Prints one PASS/FAIL line per criterion and fails the
//! target if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use splitbasis::arrangement::{default_vector, verify_region_basis};
use splitbasis::parallel;
use splitbasis::splitting::{orbit_report, verify_splitting_basis, VerifyOptions};
use splitbasis::{CertificateReport, LatticeFamily};

fn nonempty_subsets(max: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << max))
        .map(|m| (1..=max).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect()
}

fn all_subsets(max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    out.extend(nonempty_subsets(max));
    out
}

fn check_named(r: &CertificateReport, name: &str) -> bool {
    r.checks.iter().any(|c| c.name == name && c.pass)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn basis_rows(families: &[(LatticeFamily, usize)]) -> (Vec<CertificateReport>, Outcome) {
    let reports = parallel::map(families, |(f, _)| {
        verify_splitting_basis(f, VerifyOptions::default()).expect("valid family")
    });
    let mut pass = true;
    let mut parts = Vec::new();
    for ((f, expected), r) in families.iter().zip(&reports) {
        let ok = r.passed() && r.counts.basis == *expected && r.counts.rank == *expected;
        pass &= ok;
        parts.push(format!("{}={}{}", f.id(), r.counts.basis, if ok { "" } else { "!" }));
        if !ok {
            for c in r.failures() {
                parts.push(format!("[{}: {}]", c.name, c.detail));
            }
        }
    }
    (reports, Outcome { pass, detail: parts.join(" ") })
}

fn line(n: usize, title: &str, o: &Outcome, secs: f64) {
    println!(
        "criterion {n:>2} {}: {title} ({:.1}s) {}",
        if o.pass { "PASS" } else { "FAIL" },
        secs,
        o.detail
    );
}

fn main() -> ExitCode {
    let mut all = Vec::new();
    let mut outcomes = Vec::new();

    let t = Instant::now();
    let (r, o) = basis_rows(&[
        (LatticeFamily::a(3).unwrap(), 2),
        (LatticeFamily::a(4).unwrap(), 6),
        (LatticeFamily::a(5).unwrap(), 24),
    ]);
    line(1, "type A splitting basis, n = 3..5", &o, t.elapsed().as_secs_f64());
    all.extend(r);
    outcomes.push(o.pass);

    let t = Instant::now();
    let (r, o) = basis_rows(&[
        (LatticeFamily::b(2).unwrap(), 3),
        (LatticeFamily::b(3).unwrap(), 15),
        (LatticeFamily::b(4).unwrap(), 105),
    ]);
    line(2, "type B splitting basis, n = 2..4", &o, t.elapsed().as_secs_f64());
    all.extend(r);
    outcomes.push(o.pass);

    let t = Instant::now();
    let (r, o) = basis_rows(&[(LatticeFamily::d(3).unwrap(), 6), (LatticeFamily::d(4).unwrap(), 45)]);
    line(3, "type D splitting basis, n = 3, 4", &o, t.elapsed().as_secs_f64());
    all.extend(r);
    outcomes.push(o.pass);

    let t = Instant::now();
    let rows: Vec<(LatticeFamily, usize)> = all_subsets(3)
        .into_iter()
        .map(|s| {
            let k = s.len();
            (LatticeFamily::db(3, &s).unwrap(), (k + 2) * 3)
        })
        .collect();
    let (r, o) = basis_rows(&rows);
    line(4, "interpolating DB basis, n = 3, every T", &o, t.elapsed().as_secs_f64());
    all.extend(r);
    outcomes.push(o.pass);

    let t = Instant::now();
    let mut rows = Vec::new();
    for n in [4usize, 5] {
        for s in nonempty_subsets(n - 1) {
            let fact: usize = (1..=n - 2).product();
            rows.push((LatticeFamily::at(n, &s).unwrap(), fact * s.len()));
        }
    }
    let (r, o) = basis_rows(&rows);
    line(5, "Pi_n(T) basis, n = 4, 5, every nonempty T", &o, t.elapsed().as_secs_f64());
    all.extend(r);
    outcomes.push(o.pass);

    let t = Instant::now();
    let mut geo = Vec::new();
    for n in 2..=5 {
        geo.push(LatticeFamily::a(n).unwrap());
    }
    for n in 2..=3 {
        geo.push(LatticeFamily::b(n).unwrap());
        geo.push(LatticeFamily::d(n).unwrap());
    }
    for s in all_subsets(3) {
        geo.push(LatticeFamily::db(3, &s).unwrap());
    }
    let geo_reports = parallel::map(&geo, |f| {
        verify_region_basis(f, &default_vector(f).unwrap()).expect("valid family")
    });
    let mut pass6 = true;
    let mut parts = Vec::new();
    for (f, r) in geo.iter().zip(&geo_reports) {
        let ok = r.checks.iter().filter(|c| c.name != "zaslavsky").all(|c| c.pass)
            && check_named(r, "bounded-matches-predicate")
            && check_named(r, "matches-splitting-cycles");
        pass6 &= ok;
        parts.push(format!("{}:{}{}", f.id(), r.counts.basis, if ok { "" } else { "!" }));
        if !ok {
            for c in r.failures() {
                parts.push(format!("[{}: {}]", c.name, c.detail));
            }
        }
    }
    let o = Outcome { pass: pass6, detail: parts.join(" ") };
    line(6, "bounded regions equal the predicate sets; region cycles equal splitting cycles", &o, t.elapsed().as_secs_f64());
    outcomes.push(o.pass);

    let bad: Vec<String> = geo
        .iter()
        .zip(&geo_reports)
        .filter(|(_, r)| !check_named(r, "zaslavsky"))
        .map(|(f, _)| f.id())
        .collect();
    let o = Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} instances", geo.len())
        } else {
            format!("failing: {}", bad.join(", "))
        },
    };
    line(7, "Zaslavsky count of bounded regions", &o, 0.0);
    outcomes.push(o.pass);
    all.extend(geo_reports);

    let bad: Vec<String> = all
        .iter()
        .filter(|r| !check_named(r, "homology-concentrated"))
        .map(|r| r.instance.clone())
        .collect();
    let o = Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} lattices", all.len())
        } else {
            format!("failing: {}", bad.join(", "))
        },
    };
    line(8, "reduced homology vanishes below the top and is free", &o, 0.0);
    outcomes.push(o.pass);

    let t = Instant::now();
    let mut rows = Vec::new();
    for n in [4usize, 5] {
        for s in nonempty_subsets(n - 1) {
            rows.push((n, s));
        }
    }
    let orbit = parallel::map(&rows, |(n, s)| orbit_report(*n, s).expect("valid"));
    let mut pass9 = true;
    let mut parts = Vec::new();
    for ((n, s), r) in rows.iter().zip(&orbit) {
        pass9 &= r.passed();
        parts.push(format!(
            "n={n},T={s:?}:{}/{}{}",
            r.orbits.len(),
            r.expected_orbits,
            if r.passed() { "" } else { "!" }
        ));
    }
    let o = Outcome { pass: pass9, detail: parts.join(" ") };
    line(9, "regular orbits of S_T x S_([n-1]-T) on the Pi_n(T) basis", &o, t.elapsed().as_secs_f64());
    outcomes.push(o.pass);

    let bad: Vec<String> = all
        .iter()
        .filter(|r| {
            let formula = r.instance.starts_with("regions") || check_named(r, "formula-matches-kernel");
            !(formula && check_named(r, "certificates-agree"))
        })
        .map(|r| r.instance.clone())
        .collect();
    let o = Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} instances", all.len())
        } else {
            format!("failing: {}", bad.join(", "))
        },
    };
    line(10, "formula cycles equal kernel generators; the two certificates agree", &o, 0.0);
    outcomes.push(o.pass);

    let passed = outcomes.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
