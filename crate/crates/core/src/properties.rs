//! Property suite for the family: dilatation of `H`, scaling, parity and sign
//! of the monomial integrals, agreement of the two quadrature routes, and the
//! exponent bookkeeping of the reduced index set.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exponents::family_set;
use crate::melnikov::{integral, integral_param, scaling_exponent, MonomialIntegralId, QuadOptions};
use crate::oval::HEvaluator;
use crate::whsys::CenterModel;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub cases: usize,
    /// Worst measured value: a relative error, a ratio to a noise scale, or
    /// a signed margin, depending on the check.
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub n: u32,
    pub c: String,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn table(&self) -> String {
        let mut s = format!("{:<22} {:>6} {:>12} {:>10}  result\n", "check", "cases", "worst", "tol");
        for c in &self.checks {
            s.push_str(&format!(
                "{:<22} {:>6} {:>12.3e} {:>10.1e}  {}  {}\n",
                c.name,
                c.cases,
                c.worst,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" },
                c.detail
            ));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub rhos: Vec<f64>,
    pub levels: Vec<f64>,
    pub quad: QuadOptions,
    pub scaling_tol: f64,
    pub parity_tol: f64,
    pub route_tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            rhos: vec![0.5, 2.0, 3.0],
            levels: vec![0.25, 1.0, 4.0],
            quad: QuadOptions::default(),
            scaling_tol: 1e-7,
            parity_tol: 1e-10,
            route_tol: 1e-8,
        }
    }
}

/// All `(kind, i, j)` with `i + j <= 4n - 1`.
fn ids_in_range(n: u32) -> Vec<MonomialIntegralId> {
    let top = 4 * n - 1;
    let mut v = Vec::new();
    for i in 0..=top {
        for j in 0..=top - i {
            v.push(MonomialIntegralId::i(i, j));
            v.push(MonomialIntegralId::j(i, j));
        }
    }
    v
}

fn check(name: &str, cases: usize, worst: f64, tolerance: f64, pass: bool, detail: String) -> PropertyCheck {
    PropertyCheck {
        name: name.into(),
        cases,
        worst,
        tolerance,
        pass,
        detail,
    }
}

pub fn run_suite(model: &CenterModel, opts: &SuiteOptions) -> Result<PropertyReport> {
    let params = model.require_family()?.clone();
    let n = params.n;
    let ev = HEvaluator::new(model);
    let sig = &model.signature;
    let (al, be) = (sig.alpha_f64(), sig.beta_f64());
    let hw = 2.0 * model.sigma_a_f64() * crate::poly::rational_to_f64(&model.delta);
    let mut checks = Vec::new();

    // H(rho^alpha x, rho^beta y) = rho^{2 a delta} H(x, y)
    let pts = [(1.0, 0.0), (0.3, -0.7), (-1.2, 0.4), (0.0, 1.0), (2.0, 5.0)];
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for &rho in &opts.rhos {
        for &(x, y) in &pts {
            let lhs = ev.eval(rho.powf(al) * x, rho.powf(be) * y)?;
            let rhs = rho.powf(hw) * ev.eval(x, y)?;
            worst = worst.max((lhs / rhs - 1.0).abs());
            cases += 1;
        }
    }
    checks.push(check("H dilatation", cases, worst, 1e-12, worst <= 1e-12, String::new()));

    let ids = ids_in_range(n);
    let unit: Vec<_> = ids
        .par_iter()
        .map(|&id| integral(model, id, 1.0, &opts.quad))
        .collect::<Result<_>>()?;
    let val = |id: MonomialIntegralId| unit[ids.iter().position(|&k| k == id).unwrap()];

    // I(rho^{4n} h) = rho^{4n e} I(h), on every id that does not vanish.
    let live: Vec<MonomialIntegralId> = ids.iter().copied().filter(|id| !id.vanishes_by_parity()).collect();
    let jobs: Vec<(MonomialIntegralId, f64)> =
        live.iter().flat_map(|&id| opts.rhos.iter().map(move |&r| (id, r))).collect();
    let errs: Vec<(f64, MonomialIntegralId, f64)> = jobs
        .par_iter()
        .map(|&(id, rho)| {
            let e = scaling_exponent(id, n).to_f64().unwrap_or(f64::NAN);
            let k = rho.powf(4.0 * n as f64);
            let scaled = integral(model, id, k, &opts.quad)?.value;
            let base = val(id).value;
            let expect = k.powf(e) * base;
            Ok(((scaled - expect).abs() / expect.abs(), id, rho))
        })
        .collect::<Result<_>>()?;
    let (worst, wid, wr) = errs
        .iter()
        .copied()
        .fold((0.0, live[0], 1.0), |a, b| if b.0 > a.0 { b } else { a });
    checks.push(check(
        "integral scaling",
        errs.len(),
        worst,
        opts.scaling_tol,
        worst <= opts.scaling_tol,
        format!("worst at {wid}, rho = {wr}"),
    ));

    // Vanishing integrals against the same monomial under the other kind.
    let mut worst: f64 = 0.0;
    let mut witness = None;
    let mut cases = 0;
    for &id in ids.iter().filter(|id| id.vanishes_by_parity()) {
        let r = val(id).value.abs() / val(id.counterpart()).value.abs();
        cases += 1;
        if r >= worst {
            worst = r;
            witness = Some(id);
        }
    }
    checks.push(check(
        "parity",
        cases,
        worst,
        opts.parity_tol,
        worst <= opts.parity_tol,
        witness.map(|w| format!("worst at {w}")).unwrap_or_default(),
    ));

    // I_{2k, 2l+1} > 0 and J_{2k+1, 2l} < 0 at every sampled level.
    let signed: Vec<MonomialIntegralId> = ids
        .iter()
        .copied()
        .filter(|id| match id.kind() {
            crate::melnikov::Kind::I => id.1 % 2 == 0 && id.2 % 2 == 1,
            crate::melnikov::Kind::J => id.1 % 2 == 1 && id.2 % 2 == 0,
        })
        .collect();
    let jobs: Vec<(MonomialIntegralId, f64)> =
        signed.iter().flat_map(|&id| opts.levels.iter().map(move |&h| (id, h))).collect();
    let margins: Vec<f64> = jobs
        .par_iter()
        .map(|&(id, h)| {
            let v = integral(model, id, h, &opts.quad)?;
            let s = match id.kind() {
                crate::melnikov::Kind::I => 1.0,
                crate::melnikov::Kind::J => -1.0,
            };
            Ok(s * v.value / v.abs_value)
        })
        .collect::<Result<_>>()?;
    let worst = margins.iter().copied().fold(f64::INFINITY, f64::min);
    checks.push(check(
        "sign",
        margins.len(),
        worst,
        0.0,
        worst > 0.0,
        "smallest signed value / abs integral".into(),
    ));

    // Orbit flow against the closed-form parameterization.
    let odd_j: Vec<MonomialIntegralId> = signed
        .iter()
        .copied()
        .filter(|id| id.kind() == crate::melnikov::Kind::I)
        .collect();
    let errs: Vec<f64> = odd_j
        .par_iter()
        .map(|&id| {
            let p = integral_param(&params, id, 1.0)?;
            let o = val(id).value;
            Ok((o - p).abs() / p.abs())
        })
        .collect::<Result<_>>()?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    checks.push(check(
        "route agreement",
        errs.len(),
        worst,
        opts.route_tol,
        worst <= opts.route_tol,
        "I_{2k,2l+1}(1)".into(),
    ));

    // J_{i,j} and I_{i-1,j+1} share an exponent for odd i.
    let mut ok = true;
    let mut cases = 0;
    for id in ids.iter().filter(|id| id.kind() == crate::melnikov::Kind::J && id.1 % 2 == 1) {
        cases += 1;
        ok &= scaling_exponent(*id, n) == scaling_exponent(MonomialIntegralId::i(id.1 - 1, id.2 + 1), n);
    }
    checks.push(check(
        "exponent redundancy",
        cases,
        if ok { 0.0 } else { 1.0 },
        0.0,
        ok,
        "exact rational comparison".into(),
    ));

    let fs = family_set(n);
    let nn = n as usize;
    let ok = fs.cardinality == 2 * nn * (2 * nn + 1)
        && fs.repeated == nn * (nn + 1)
        && fs.distinct_exponents == nn * (3 * nn + 1)
        && fs.nonzero_independent;
    checks.push(check(
        "index set counts",
        fs.cardinality,
        if ok { 0.0 } else { 1.0 },
        0.0,
        ok,
        format!(
            "size {} repeated {} distinct {}",
            fs.cardinality, fs.repeated, fs.distinct_exponents
        ),
    ));

    Ok(PropertyReport {
        n,
        c: crate::poly::format_rational(&params.c),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::whsys::{family, FamilyParams};

    #[test]
    fn suite_passes_n1() {
        let m = family(&FamilyParams::new(1, int(-1)).unwrap()).unwrap();
        let r = run_suite(&m, &SuiteOptions::default()).unwrap();
        print!("{}", r.table());
        assert!(r.all_pass());
    }
}
