//! Poincaré return map of the perturbed system on the positive `x`-axis,
//! limit-cycle localization, and the first-order and dilatation checks that
//! tie measured displacements to the Melnikov function.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::melnikov::{MelnikovSeries, Perturbation};
use crate::ode::Dop853;
use crate::oval::{circulate, trace_oval, FieldEval, HEvaluator, TraceOptions};
use crate::poly::{rational_to_f64, EvalPoly};
use crate::whsys::CenterModel;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReturnMapSample {
    pub x0: f64,
    pub x1: f64,
    pub flight_time: f64,
    pub epsilon: f64,
}

impl ReturnMapSample {
    pub fn displacement(&self) -> f64 {
        self.x1 - self.x0
    }
}

pub fn samples_to_csv(samples: &[ReturnMapSample]) -> String {
    let mut s = String::from("x0,x1,displacement,flight_time\n");
    for r in samples {
        s.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.x0,
            r.x1,
            r.displacement(),
            r.flight_time
        ));
    }
    s
}

#[derive(Clone, Copy, Debug)]
pub struct ShootOptions {
    pub tol: f64,
    pub grid: usize,
    pub bisection_tol: f64,
    /// Displacements below `noise_floor * x0` count as zero.
    pub noise_floor: f64,
    /// Give up after this many unperturbed periods.
    pub max_periods: f64,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            grid: 512,
            bisection_tol: 1e-10,
            noise_floor: 1e-10,
            max_periods: 10.0,
        }
    }
}

/// Everything needed to evaluate return maps of one perturbed model.
pub struct Shooter {
    field: FieldEval,
    p: EvalPoly,
    q: EvalPoly,
    pub h: HEvaluator,
    alpha: f64,
    omega: f64,
    unit_period: f64,
    pub opts: ShootOptions,
}

impl Shooter {
    pub fn new(model: &CenterModel, pert: &Perturbation, opts: ShootOptions) -> Result<Self> {
        let h = HEvaluator::new(model);
        let tr = trace_oval(model, h.unit_level(), &TraceOptions::default())?;
        Ok(Self {
            field: FieldEval::new(model)?,
            p: EvalPoly::new(&pert.p),
            q: EvalPoly::new(&pert.q),
            alpha: model.signature.alpha_f64(),
            omega: rational_to_f64(&model.signature.omega),
            unit_period: tr.period,
            h,
            opts,
        })
    }

    /// Unperturbed period of the orbit through `(x0, 0)`, from the dilatation.
    pub fn period(&self, x0: f64) -> f64 {
        self.unit_period * x0.powf(-self.omega / self.alpha)
    }

    /// First return to `{y = 0, x > 0}` of the orbit from `(x0, 0)` under
    /// `x' = f + eps Q, y' = g - eps P`.
    pub fn return_map(&self, x0: f64, eps: f64) -> Result<ReturnMapSample> {
        if !(x0 > 0.0) {
            return Err(Error::InvalidArgument("x0 must be positive".into()));
        }
        let ts = self.field.time_sign;
        let solver = Dop853::with_tolerances(self.opts.tol, self.opts.tol);
        let t_max = self.opts.max_periods * self.period(x0);
        let circ = circulate(
            |_, s, ds| {
                let (fx, gy) = self.field.eval(s[0], s[1]);
                ds[0] = fx + ts * eps * self.q.eval(s[0], s[1]);
                ds[1] = gy - ts * eps * self.p.eval(s[0], s[1]);
            },
            &[x0, 0.0],
            &solver,
            t_max,
            1e6 * (1.0 + x0),
            false,
        )?;
        Ok(ReturnMapSample {
            x0,
            x1: circ.end[0],
            flight_time: circ.t_return,
            epsilon: eps,
        })
    }

    pub fn log_grid(x_lo: f64, x_hi: f64, m: usize) -> Vec<f64> {
        let (a, b) = (x_lo.ln(), x_hi.ln());
        (0..m)
            .map(|k| match k {
                0 => x_lo,
                k if k == m - 1 => x_hi,
                k => (a + (b - a) * k as f64 / (m - 1) as f64).exp(),
            })
            .collect()
    }

    /// Return maps over a grid, evaluated in parallel and kept in grid order.
    pub fn sample_grid(&self, xs: &[f64], eps: f64) -> Vec<Result<ReturnMapSample>> {
        xs.par_iter().map(|&x| self.return_map(x, eps)).collect()
    }

    fn sign(&self, s: &ReturnMapSample) -> i8 {
        let d = s.displacement();
        if d.abs() < self.opts.noise_floor * s.x0 {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Scans the displacement on a log-uniform grid, brackets sign changes
    /// and refines them by bisection.
    pub fn find_limit_cycles(
        &self,
        x_lo: f64,
        x_hi: f64,
        eps: f64,
        m1_zeros: &[f64],
    ) -> Result<LimitCycleReport> {
        if !(x_lo > 0.0 && x_hi > x_lo) {
            return Err(Error::InvalidArgument("need 0 < x_lo < x_hi".into()));
        }
        let xs = Self::log_grid(x_lo, x_hi, self.opts.grid.max(2));
        let results = self.sample_grid(&xs, eps);
        let mut samples = Vec::new();
        let mut failures = Vec::new();
        for (x, r) in xs.iter().zip(results) {
            match r {
                Ok(s) => samples.push(s),
                Err(e) => failures.push(SampleFailure {
                    x0: *x,
                    reason: e.to_string(),
                }),
            }
        }
        let signed: Vec<(&ReturnMapSample, i8)> = samples
            .iter()
            .map(|s| (s, self.sign(s)))
            .filter(|(_, g)| *g != 0)
            .collect();
        let brackets: Vec<(f64, f64, i8)> = signed
            .windows(2)
            .filter(|w| w[0].1 != w[1].1)
            .map(|w| (w[0].0.x0, w[1].0.x0, w[0].1))
            .collect();
        let refined: Vec<Result<LimitCycle>> = brackets
            .par_iter()
            .map(|&(a, b, sa)| self.refine(a, b, sa, eps))
            .collect();
        let mut cycles = Vec::new();
        for r in refined {
            match r {
                Ok(c) => cycles.push(c),
                Err(e) => failures.push(SampleFailure {
                    x0: f64::NAN,
                    reason: e.to_string(),
                }),
            }
        }
        cycles.sort_by(|a, b| a.x_star.total_cmp(&b.x_star));
        let matched = cycles
            .iter()
            .filter_map(|c| {
                m1_zeros
                    .iter()
                    .map(|&z| (z, (c.h_star - z).abs() / z))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
            })
            .map(|(h_zero, rel_diff)| ZeroMatch { h_zero, rel_diff })
            .collect();
        Ok(LimitCycleReport {
            cycles,
            epsilon: eps,
            matched_m1_zeros: matched,
            samples,
            failures,
        })
    }

    fn refine(&self, mut a: f64, mut b: f64, sa: i8, eps: f64) -> Result<LimitCycle> {
        let left = sa;
        for _ in 0..200 {
            if b - a <= self.opts.bisection_tol * a {
                break;
            }
            let mid = 0.5 * (a + b);
            let s = self.return_map(mid, eps)?;
            let g = self.sign(&s);
            if g == 0 {
                a = mid;
                b = mid;
                break;
            }
            if g == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        let x_star = 0.5 * (a + b);
        let stability = match left {
            1 => Stability::Attracting,
            -1 => Stability::Repelling,
            _ => Stability::Undetermined,
        };
        Ok(LimitCycle {
            x_star,
            h_star: self.h.eval(x_star, 0.0)?,
            stability,
        })
    }

    /// `(Pi_eps(x) - x) / eps` at each grid point.
    pub fn profile(&self, xs: &[f64], eps: f64) -> Result<Vec<f64>> {
        self.sample_grid(xs, eps)
            .into_iter()
            .map(|r| r.map(|s| s.displacement() / eps))
            .collect()
    }

    /// First-order prediction `kappa * x * M1(H(x, 0))` with
    /// `kappa = -alpha / (a delta)`.
    pub fn first_order(&self, model: &CenterModel, series: &MelnikovSeries, x: f64) -> Result<f64> {
        let kappa = predicted_kappa(model);
        Ok(kappa * x * series.evaluate(self.h.eval(x, 0.0)?))
    }
}

/// Section-coordinate factor relating displacement to `M1`:
/// `Pi(x) - x = kappa * eps * x * M1(H(x, 0)) + O(eps^2)`.
pub fn predicted_kappa(model: &CenterModel) -> f64 {
    -model.signature.alpha_f64() / (model.sigma_a_f64() * rational_to_f64(&model.delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Attracting,
    Repelling,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitCycle {
    pub x_star: f64,
    pub h_star: f64,
    pub stability: Stability,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroMatch {
    pub h_zero: f64,
    pub rel_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleFailure {
    pub x0: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitCycleReport {
    pub cycles: Vec<LimitCycle>,
    pub epsilon: f64,
    pub matched_m1_zeros: Vec<ZeroMatch>,
    #[serde(skip)]
    pub samples: Vec<ReturnMapSample>,
    pub failures: Vec<SampleFailure>,
}

/// Richardson-style check of `(Pi_eps(x) - x)/eps` over a sequence of
/// halving `eps`.
#[derive(Clone, Debug, Serialize)]
pub struct FirstOrderReport {
    pub epsilons: Vec<f64>,
    pub xs: Vec<f64>,
    pub profiles: Vec<Vec<f64>>,
    /// Largest `|p_{k+1}(x) / p_k(x) - 1|` over the resolved grid points.
    pub max_ratio_deviation: f64,
    /// Grid points where the profile is below `resolve_fraction * max |p|`
    /// and the pointwise ratio is not meaningful.
    pub unresolved_points: usize,
    /// `kappa` fitted by least squares against `x M1(H(x, 0))` on the
    /// Richardson-extrapolated profile.
    pub kappa_fit: f64,
    pub kappa_predicted: f64,
    /// `max_x |p_k - kappa_fit x M1| / eps_k` per `eps`.
    pub scaled_residuals: Vec<f64>,
}

pub fn first_order_check(
    shooter: &Shooter,
    series: &MelnikovSeries,
    model: &CenterModel,
    xs: &[f64],
    epsilons: &[f64],
    resolve_fraction: f64,
) -> Result<FirstOrderReport> {
    if epsilons.len() < 2 {
        return Err(Error::InvalidArgument("need at least two epsilons".into()));
    }
    let profiles: Vec<Vec<f64>> = epsilons
        .iter()
        .map(|&e| shooter.profile(xs, e))
        .collect::<Result<_>>()?;
    let scale = profiles
        .iter()
        .flatten()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let mut dev: f64 = 0.0;
    let mut unresolved = 0;
    for k in 0..xs.len() {
        let resolved = profiles.iter().all(|p| p[k].abs() >= resolve_fraction * scale);
        if !resolved {
            unresolved += 1;
            continue;
        }
        for w in profiles.windows(2) {
            dev = dev.max((w[1][k] / w[0][k] - 1.0).abs());
        }
    }
    // p(eps) = p0 + eps p1: extrapolate from the two smallest epsilons.
    let m = profiles.len();
    let (ea, eb) = (epsilons[m - 2], epsilons[m - 1]);
    let basis: Vec<f64> = xs
        .iter()
        .map(|&x| Ok(x * series.evaluate(shooter.h.eval(x, 0.0)?)))
        .collect::<Result<_>>()?;
    let p0: Vec<f64> = (0..xs.len())
        .map(|k| (ea * profiles[m - 1][k] - eb * profiles[m - 2][k]) / (ea - eb))
        .collect();
    let num: f64 = p0.iter().zip(&basis).map(|(p, b)| p * b).sum();
    let den: f64 = basis.iter().map(|b| b * b).sum();
    let kappa_fit = if den > 0.0 { num / den } else { 0.0 };
    let scaled_residuals = profiles
        .iter()
        .zip(epsilons)
        .map(|(p, &e)| {
            p.iter()
                .zip(&basis)
                .map(|(v, b)| (v - kappa_fit * b).abs())
                .fold(0.0, f64::max)
                / e
        })
        .collect();
    Ok(FirstOrderReport {
        epsilons: epsilons.to_vec(),
        xs: xs.to_vec(),
        profiles,
        max_ratio_deviation: dev,
        unresolved_points: unresolved,
        kappa_fit,
        kappa_predicted: predicted_kappa(model),
        scaled_residuals,
    })
}

/// Dilatation conjugation `Pi_eps = phi^{-1} o Pi_{eps rho^l} o phi` for a
/// perturbation made of one weight-homogeneous monomial.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    pub rho: f64,
    pub ell: f64,
    pub xs: Vec<f64>,
    /// `D_eps(x) / (rho^{-alpha} D_{eps rho^l}(rho^alpha x))` per point.
    pub ratios: Vec<f64>,
    pub max_deviation: f64,
}

/// Weight `l` with `Pi_eps` conjugate to `Pi_{eps rho^l}`, for a single
/// monomial in `P` (or `Q`).
pub fn conjugation_exponent(model: &CenterModel, pert: &Perturbation) -> Result<f64> {
    let s = &model.signature;
    let (a, b, w) = (s.alpha_f64(), s.beta_f64(), s.omega_f64());
    let mut ells = Vec::new();
    for (i, j, _) in pert.p.terms() {
        ells.push(w + b - a * i as f64 - b * j as f64);
    }
    for (i, j, _) in pert.q.terms() {
        ells.push(w + a - a * i as f64 - b * j as f64);
    }
    match ells.first() {
        Some(&l) if ells.iter().all(|&m| m == l) => Ok(l),
        _ => Err(Error::InvalidArgument(
            "conjugation check needs a weight-homogeneous perturbation".into(),
        )),
    }
}

pub fn conjugation_check(
    model: &CenterModel,
    pert: &Perturbation,
    xs: &[f64],
    eps: f64,
    rho: f64,
    opts: ShootOptions,
) -> Result<ConjugationReport> {
    let ell = conjugation_exponent(model, pert)?;
    let alpha = model.signature.alpha_f64();
    let sh = Shooter::new(model, pert, opts)?;
    let ra = rho.powf(alpha);
    let eps2 = eps * rho.powf(ell);
    let ratios: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            let d1 = sh.return_map(x, eps)?.displacement();
            let d2 = sh.return_map(ra * x, eps2)?.displacement() / ra;
            Ok(d1 / d2)
        })
        .collect::<Result<_>>()?;
    let max_deviation = ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    Ok(ConjugationReport {
        rho,
        ell,
        xs: xs.to_vec(),
        ratios,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Poly2};
    use crate::whsys::{family, FamilyParams};

    fn fam() -> CenterModel {
        family(&FamilyParams::new(1, int(-1)).unwrap()).unwrap()
    }

    #[test]
    fn identity_at_zero_epsilon() {
        let m = fam();
        let pert = Perturbation::new(Poly2::y(), Poly2::zero());
        let sh = Shooter::new(&m, &pert, ShootOptions::default()).unwrap();
        for x in [0.3, 1.0, 3.0] {
            let s = sh.return_map(x, 0.0).unwrap();
            assert!((s.x1 - x).abs() < 1e-10, "{x}: {}", s.x1 - x);
        }
        let mut opts = ShootOptions::default();
        opts.grid = 32;
        let sh = Shooter::new(&m, &pert, opts).unwrap();
        let r = sh.find_limit_cycles(0.3, 3.0, 0.0, &[]).unwrap();
        assert!(r.cycles.is_empty());
    }

    #[test]
    fn conjugation_exponent_for_y() {
        let m = fam();
        let pert = Perturbation::new(Poly2::y(), Poly2::zero());
        assert_eq!(conjugation_exponent(&m, &pert).unwrap(), 1.0);
    }

    #[test]
    fn displacement_matches_first_order_law() {
        let m = fam();
        let pert = Perturbation::new(Poly2::y(), Poly2::zero());
        let series =
            crate::melnikov::m1_series(&m, &pert, &crate::melnikov::SeriesOptions::default()).unwrap();
        let sh = Shooter::new(&m, &pert, ShootOptions::default()).unwrap();
        let eps = 1e-5;
        let x = 1.2;
        let d = sh.return_map(x, eps).unwrap().displacement() / eps;
        let pred = sh.first_order(&m, &series, x).unwrap();
        assert!((d / pred - 1.0).abs() < 1e-3, "{d} vs {pred}");
    }
}
