use whcenter::exponents::{design_perturbation, DesignOptions};
use whcenter::melnikov::{count_zeros, m1_series, SeriesOptions, ZeroScan};
use whcenter::poly::int;
use whcenter::whsys::{family, FamilyParams};

fn check(n: u32, c: i64, targets: &[f64], lo: f64, hi: f64) {
    let m = family(&FamilyParams::new(n, int(c)).unwrap()).unwrap();
    let d = design_perturbation(&m, targets, &DesignOptions::default()).unwrap();
    let s = m1_series(&m, &d.perturbation, &SeriesOptions::default()).unwrap();
    assert_eq!(s, d.series);
    let r = count_zeros(&s, lo, hi, &ZeroScan::default()).unwrap();
    assert_eq!(r.zeros.len(), targets.len(), "{:?}", r.zeros);
    for (z, t) in r.zeros.iter().zip(targets) {
        assert!((z.h - t).abs() <= 1e-9 * t, "zero {} vs target {t}", z.h);
    }
}

#[test]
fn two_zeros_n1() {
    check(1, -1, &[1.0, 2.0], 0.1, 20.0);
}

#[test]
fn no_targets_gives_single_term() {
    check(1, -1, &[], 0.1, 20.0);
}

#[test]
fn nine_zeros_n2() {
    let t: Vec<f64> = (1..=9).map(|k| k as f64).collect();
    check(2, -2, &t, 0.5, 20.0);
}
