use qgp_core::catalog::{expected_table, verify};

#[test]
fn every_catalog_entry_meets_its_expectations() {
    for entry in expected_table().unwrap() {
        let t = std::time::Instant::now();
        let (report, checks) = verify(&entry).unwrap_or_else(|e| panic!("{}: {e}", entry.label()));
        eprintln!(
            "{} {:?} {:.1}s",
            entry.label(),
            report.delta_prime,
            t.elapsed().as_secs_f64()
        );
        for c in &checks {
            assert!(
                c.passed,
                "{}: {} failed ({})",
                entry.label(),
                c.name,
                c.detail
            );
        }
    }
}
