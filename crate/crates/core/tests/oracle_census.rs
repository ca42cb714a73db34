use std::time::Instant;

use qgp_core::catalog::{make, oracle_comparison, Params};
use qgp_core::oracle::{numeric_census, NumericCurve, OracleSettings};

fn count(name: &str, n: u32, seed: u64, starts: usize) -> usize {
    let entry = make(name, &Params::new()).unwrap();
    let c = NumericCurve::from_form(entry.curve.form());
    let t = Instant::now();
    let s = OracleSettings {
        starts,
        seed,
        ..OracleSettings::default()
    };
    let r = numeric_census(&c, n, &s);
    println!(
        "{name} n={n} seed={seed}: {} centres, {}/{} converged, radius {:.1e}, {:.2?}",
        r.count,
        r.converged,
        r.starts,
        r.worst_cluster_radius,
        t.elapsed()
    );
    r.count
}

#[test]
fn fermat_involution_centres() {
    for seed in 1..=3 {
        assert_eq!(count("fermat_quartic", 2, seed, 2000), 15);
    }
}

#[test]
fn hessian_order_three_centres() {
    for seed in 1..=3 {
        assert_eq!(count("hessian_sextic", 3, seed, 2000), 12);
    }
}

#[test]
fn klein_involution_centres() {
    for seed in 1..=3 {
        assert_eq!(count("quartic_klein", 2, seed, 2000), 21);
    }
}

#[test]
fn catalog_counts_agree() {
    let settings = OracleSettings {
        starts: 2000,
        seed: 1,
        ..OracleSettings::default()
    };
    for entry in qgp_core::catalog::expected_table().unwrap() {
        let (report, _) = qgp_core::catalog::verify(&entry).unwrap();
        for c in oracle_comparison(&entry, &report, &settings) {
            assert!(
                c.agrees(),
                "{} n={}: exact {} numeric {}",
                entry.label(),
                c.n,
                c.exact,
                c.numeric
            );
        }
    }
}
