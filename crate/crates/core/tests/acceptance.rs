//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::time::{Duration, Instant};

use whcenter::exponents::{
    degree_form_lower, degree_form_upper, design_perturbation, family_set, general_bound, general_set,
    DesignOptions,
};
use whcenter::melnikov::{count_zeros, m1_series, Perturbation, SeriesOptions, ZeroScan};
use whcenter::poly::{int, rat, Poly2, Rational};
use whcenter::properties::{run_suite, SuiteOptions};
use whcenter::shoot::{conjugation_check, first_order_check, ShootOptions, Shooter};
use whcenter::whsys::{
    andreev_monodromy, check_inverse_integrating_factor, construct_center, family, Branch, CenterSpec,
    FamilyParams, PlanarSystem, WeightSignature,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn params(n: u32, c: &Rational) -> FamilyParams {
    FamilyParams::new(n, c.clone()).unwrap()
}

fn c_grid() -> Vec<Rational> {
    vec![rat(-1, 2), int(-1), int(-5)]
}

fn symbolic_construction() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=3u32 {
        for c in c_grid() {
            let e = 2 * n;
            let f = Poly2::y() + Poly2::monomial(e, 0, int(1));
            let g = Poly2::monomial(2 * e - 1, 0, int(2 * n as i64) * &c);
            let v = Poly2::from_terms([(0, 2, int(1)), (e, 1, int(1)), (2 * e, 0, -c.clone())]);
            let fam = family(&params(n, &c)).unwrap();
            let spec = CenterSpec {
                h1: Poly2::from_terms([(0, 1, int(1)), (e, 0, rat(1, 2))]),
                h2: Poly2::monomial(e, 0, rat(1, 2)),
                h2_scale_sq: int(-1) - int(4) * &c,
                sigma_a: int(1),
                sigma_t: int(1),
            };
            let built = construct_center(&spec).unwrap();
            for (route, m) in [("family", &fam), ("construct", &built)] {
                let ok = m.f == f && m.g == g && m.v_poly == v && check_inverse_integrating_factor(m);
                if !ok {
                    bad.push(format!("{route}(n={n}, c={c})"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("18 models, mismatches {:?}", bad))
}

fn monodromy() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=3u32 {
        for c in c_grid() {
            let m = family(&params(n, &c)).unwrap();
            let r = andreev_monodromy(&m.system()).unwrap();
            let disc = int(4 * (n * n) as i64) * (int(1) + int(4) * &c);
            if !(r.branch == Branch::A && r.discriminant.as_ref() == Some(&disc) && r.monodromic) {
                bad.push(format!("n={n} c={c}: {:?} {:?}", r.branch, r.discriminant));
            }
        }
    }
    let centre = PlanarSystem::new(Poly2::y(), Poly2::monomial(3, 0, int(-1)));
    let saddle = PlanarSystem::new(Poly2::y(), Poly2::monomial(3, 0, int(1)));
    let rc = andreev_monodromy(&centre).unwrap();
    let rs = andreev_monodromy(&saddle).unwrap();
    let controls = rc.monodromic && !rs.monodromic;
    outcome(
        bad.is_empty() && controls,
        format!("family grid mismatches {:?}; y'=-x^3 monodromic {}, y'=x^3 monodromic {}", bad, rc.monodromic, rs.monodromic),
    )
}

fn property_suite() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (n, c) in [(1u32, int(-1)), (2, int(-2))] {
        let m = family(&params(n, &c)).unwrap();
        let r = run_suite(&m, &SuiteOptions::default()).unwrap();
        pass &= r.all_pass();
        for ch in &r.checks {
            lines.push(format!(
                "n={n} {}: worst {:.2e} tol {:.0e} {}",
                ch.name,
                ch.worst,
                ch.tolerance,
                if ch.pass { "ok" } else { "FAIL" }
            ));
        }
    }
    outcome(pass, lines.join("; "))
}

fn combinatorics() -> Outcome {
    let mut bad = Vec::new();
    let sig = WeightSignature::normalized(int(1), int(2), int(1)).unwrap();
    for d in 0..=20u32 {
        let r = general_set(d, &sig);
        let du = d as usize;
        // brute-force count of the index box
        let mut count = 0;
        for i in -1..=d as i64 {
            for j in 0..=d as i64 + 1 {
                if (0..=d as i64).contains(&(i + j)) {
                    count += 1;
                }
            }
        }
        if r.cardinality != (du + 1) * (du + 4) / 2 || r.cardinality != count || general_bound(d) != count - 1 {
            bad.push(format!("d={d}"));
        }
    }
    for n in 1..=8u32 {
        let r = family_set(n);
        let nn = n as usize;
        let d = 4 * n - 1;
        let ok = r.cardinality == 2 * nn * (2 * nn + 1)
            && r.repeated == nn * (nn + 1)
            && r.distinct_exponents == nn * (3 * nn + 1)
            && r.upper_bound_zeros == nn * (3 * nn + 1) - 1
            && r.lower_bound_zeros == Some(nn * (2 * nn + 1) - 1)
            && degree_form_upper(d) == int((nn * (3 * nn + 1) - 1) as i64)
            && degree_form_lower(d) == int((nn * (2 * nn + 1) - 1) as i64)
            && r.nonzero_independent;
        if !ok {
            bad.push(format!("n={n}"));
        }
    }
    outcome(bad.is_empty(), format!("d<=20, n<=8, mismatches {:?}", bad))
}

fn lower_bound_realization() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let m = family(&params(1, &int(-1))).unwrap();
    let targets = [1.0, 2.0];
    let d = design_perturbation(&m, &targets, &DesignOptions::default()).unwrap();
    let z = count_zeros(&d.series, 0.1, 20.0, &ZeroScan::default()).unwrap();
    let zeros_ok = z.zeros.len() == 2
        && z.zeros.iter().zip(&targets).all(|(a, t)| (a.h - t).abs() <= 1e-9 * t);
    pass &= zeros_ok;
    notes.push(format!(
        "n=1 zeros {:?}",
        z.zeros.iter().map(|x| x.h).collect::<Vec<_>>()
    ));
    let sh = Shooter::new(&m, &d.perturbation, ShootOptions::default()).unwrap();
    let r = sh.find_limit_cycles(0.3, 3.0, 1e-3, &targets).unwrap();
    let cycles_ok = r.cycles.len() == 2
        && r.cycles.iter().zip(&targets).all(|(c, t)| (c.h_star - t).abs() <= 0.05 * t);
    pass &= cycles_ok;
    notes.push(format!(
        "n=1 cycles h* {:?}",
        r.cycles.iter().map(|c| c.h_star).collect::<Vec<_>>()
    ));

    let m2 = family(&params(2, &int(-2))).unwrap();
    let t2: Vec<f64> = (1..=9).map(f64::from).collect();
    let d2 = design_perturbation(&m2, &t2, &DesignOptions::default()).unwrap();
    let z2 = count_zeros(&d2.series, 0.5, 20.0, &ZeroScan::default()).unwrap();
    let ok2 = z2.zeros.len() == 9 && z2.zeros.iter().zip(&t2).all(|(a, t)| (a.h - t).abs() <= 1e-9 * t);
    pass &= ok2;
    let worst = z2
        .zeros
        .iter()
        .zip(&t2)
        .map(|(a, t)| (a.h - t).abs() / t)
        .fold(0.0, f64::max);
    notes.push(format!("n=2 series zeros {} worst rel {:.1e}", z2.zeros.len(), worst));
    let sh2 = Shooter::new(&m2, &d2.perturbation, ShootOptions::default()).unwrap();
    let r2 = sh2.find_limit_cycles(0.3, 3.0, 1e-3, &t2).unwrap();
    notes.push(format!(
        "n=2 shooting (not gated) cycles {} h* {:?}",
        r2.cycles.len(),
        r2.cycles.iter().map(|c| c.h_star).collect::<Vec<_>>()
    ));
    outcome(pass, notes.join("; "))
}

fn first_order_law() -> Outcome {
    let m = family(&params(1, &int(-1))).unwrap();
    let d = design_perturbation(&m, &[1.0, 2.0], &DesignOptions::default()).unwrap();
    let sh = Shooter::new(&m, &d.perturbation, ShootOptions::default()).unwrap();
    let xs = Shooter::log_grid(0.3, 3.0, 512);
    let fo = first_order_check(&sh, &d.series, &m, &xs, &[1e-3, 5e-4, 2.5e-4], 0.01).unwrap();
    let rich_ok = fo.max_ratio_deviation <= 0.05;
    let halving: Vec<f64> = fo.scaled_residuals.windows(2).map(|w| w[0] / w[1]).collect();
    let halving_ok = halving.iter().all(|r| (0.9..=1.1).contains(r));

    let single = Perturbation::new(Poly2::y(), Poly2::zero());
    let cx = [0.5, 0.8, 1.0, 1.3];
    let cj = conjugation_check(&m, &single, &cx, 1e-4, 2.0, ShootOptions::default()).unwrap();
    let conj_ok = cj.max_deviation <= 0.05;

    let m1 = m1_series(&m, &d.perturbation, &SeriesOptions::default()).unwrap();
    let same_series = m1 == d.series;
    outcome(
        rich_ok && halving_ok && conj_ok && same_series,
        format!(
            "Richardson max dev {:.2e} ({} of {} points unresolved); residual/eps halving ratios {:?}; kappa fit {:.6} vs {:.6}; conjugation rho=2 l={} max dev {:.2e}",
            fo.max_ratio_deviation,
            fo.unresolved_points,
            xs.len(),
            halving,
            fo.kappa_fit,
            fo.kappa_predicted,
            cj.ell,
            cj.max_deviation
        ),
    )
}

fn headline_counts() -> Outcome {
    let r = family_set(1);
    let upper = r.upper_bound_zeros;
    let lower = r.lower_bound_zeros.unwrap_or(0);
    let general = general_bound(3);
    let sig = WeightSignature::normalized(int(1), int(2), int(1)).unwrap();
    let from_set = general_set(3, &sig).upper_bound_zeros;
    outcome(
        upper == 3 && lower == 2 && general == 13 && from_set == 13,
        format!("n=1 upper {upper} lower {lower}; d=3 general {general} (set {from_set})"),
    )
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Duration)> = vec![
        ("1 symbolic construction", symbolic_construction, Duration::from_secs(1)),
        ("2 monodromy", monodromy, Duration::from_secs(1)),
        ("3 property suite", property_suite, Duration::from_secs(120)),
        ("4 combinatorics", combinatorics, Duration::from_secs(1)),
        ("5 lower-bound realization", lower_bound_realization, Duration::from_secs(600)),
        ("6 first-order law", first_order_law, Duration::from_secs(300)),
        ("7 headline counts", headline_counts, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let t0 = Instant::now();
        let o = run();
        let el = t0.elapsed();
        let pass = o.pass && el <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} [{:.3}s / {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
