use bindinfo::bounds::{check_bounds, random_batch, Inequality};
use bindinfo::processes::{giant_bit_process, independent_uniform, known_state, modulo_process};
use bindinfo::SubsetMask;

#[test]
fn all_seven_hold_on_ten_thousand_samples() {
    for n in [2, 3, 4] {
        for k in [2, 3] {
            let rows = random_batch(n, k, 10_000, 2024).unwrap();
            let failures: Vec<u64> = rows
                .iter()
                .filter(|r| !r.report.all_satisfied())
                .map(|r| r.seed)
                .collect();
            assert!(failures.is_empty(), "N={n} K={k}: seeds {failures:?}");
            let worst = rows
                .iter()
                .flat_map(|r| r.report.margins())
                .fold(f64::INFINITY, f64::min);
            assert!(worst >= -1e-9, "N={n} K={k}: {worst}");
        }
    }
}

#[test]
fn every_theorem_bound_has_a_tight_canonical_process() {
    for n in 2..=6 {
        let tables = [
            known_state(n, 2, &vec![0; n].into()).unwrap(),
            giant_bit_process(n, SubsetMask::full(n)).unwrap(),
            modulo_process(n, 2, 0).unwrap(),
            independent_uniform(n, 2).unwrap(),
        ];
        let reports: Vec<_> = tables.iter().map(|t| check_bounds(t).unwrap()).collect();
        for which in Inequality::ALL.into_iter().filter(|i| i.is_theorem()) {
            let tight = reports.iter().any(|r| r.record(which).margin.abs() < 1e-9);
            assert!(tight, "{} has no tight witness at N={n}", which.label());
        }
    }
}
