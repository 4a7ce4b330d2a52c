//! The first integral `H = r^{2a} exp(-2b theta)` of a constructed center,
//! tracing of its ovals by flowing the vector field, and the closed-form
//! oval parameterization of the nilpotent family.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{DenseStep, Dop853};
use crate::poly::{rational_to_f64, EvalPoly};
use crate::whsys::{CenterModel, FamilyParams};

/// Float evaluator of `H` and of the non-polynomial inverse integrating
/// factor `V = (1/2) r^{2(1-a)} exp(2b theta)`.
#[derive(Clone, Debug)]
pub struct HEvaluator {
    h1: EvalPoly,
    h2: EvalPoly,
    h2_scale: f64,
    pub a: f64,
    pub b: f64,
    /// `alpha / (2 a delta)`: `x_plus(h) = (h / H(1,0))^{this}`.
    section_exponent: f64,
    h_unit: f64,
}

impl HEvaluator {
    pub fn new(model: &CenterModel) -> Self {
        let mut ev = Self {
            h1: EvalPoly::new(&model.h1),
            h2: EvalPoly::new(&model.h2),
            h2_scale: rational_to_f64(&model.h2_scale_sq).sqrt(),
            a: model.sigma_a_f64(),
            b: model.sigma_b_f64(),
            section_exponent: model.signature.alpha_f64()
                / (2.0 * model.sigma_a_f64() * rational_to_f64(&model.delta)),
            h_unit: 0.0,
        };
        ev.h_unit = ev.eval(1.0, 0.0).expect("(1, 0) is not the origin");
        ev
    }

    fn polar(&self, x: f64, y: f64) -> (f64, f64) {
        let u = self.h1.eval(x, y);
        let v = self.h2_scale * self.h2.eval(x, y);
        (u.hypot(v), v.atan2(u))
    }

    /// `H(x, y)`; fails at the origin.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if x == 0.0 && y == 0.0 {
            return Err(Error::OriginSingular);
        }
        let (r, theta) = self.polar(x, y);
        if r == 0.0 {
            return Err(Error::OriginSingular);
        }
        Ok((2.0 * self.a * r.ln() - 2.0 * self.b * theta).exp())
    }

    /// Continuous inverse integrating factor with `2 H V = h1^2 + h2^2`.
    pub fn v_cont(&self, x: f64, y: f64) -> Result<f64> {
        if x == 0.0 && y == 0.0 {
            return Err(Error::OriginSingular);
        }
        let (r, theta) = self.polar(x, y);
        Ok(0.5 * (2.0 * (1.0 - self.a) * r.ln() + 2.0 * self.b * theta).exp())
    }

    /// `H(1, 0)`, the level whose oval passes through `(1, 0)`.
    pub fn unit_level(&self) -> f64 {
        self.h_unit
    }

    /// Section point `x > 0` with `H(x, 0) = h`: closed-form seed from the
    /// dilatation, polished by a bracketed root solve.
    pub fn x_plus(&self, h: f64) -> Result<f64> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::RootBracketFailure(h));
        }
        let seed = (h / self.h_unit).powf(self.section_exponent);
        if !(seed > 0.0) || !seed.is_finite() {
            return Err(Error::RootBracketFailure(h));
        }
        let ln_h = h.ln();
        let g = |x: f64| -> f64 {
            match self.eval(x, 0.0) {
                Ok(v) => v.ln() - ln_h,
                Err(_) => f64::NAN,
            }
        };
        let g0 = g(seed);
        if g0 == 0.0 {
            return Ok(seed);
        }
        let (mut lo, mut hi) = (seed, seed);
        let (mut glo, mut ghi) = (g0, g0);
        let mut k = 0;
        while glo.signum() == ghi.signum() {
            k += 1;
            if k > 60 || !glo.is_finite() || !ghi.is_finite() {
                return Err(Error::RootBracketFailure(h));
            }
            let f = 1.0 + 1e-12 * 4f64.powi(k);
            lo = seed / f;
            hi = seed * f;
            glo = g(lo);
            ghi = g(hi);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let gm = g(mid);
            if gm == 0.0 {
                return Ok(mid);
            }
            if gm.signum() == glo.signum() {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// One full turn of an orbit from the positive `x`-axis back to it.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub t_return: f64,
    pub end: Vec<f64>,
    pub x_minus: Option<f64>,
    pub y_minus: Option<f64>,
    pub y_plus: Option<f64>,
    pub steps: Vec<DenseStep>,
}

/// Integrates `rhs` (with `x, y` in components 0 and 1) from a point on the
/// positive `x`-axis, following the clockwise turn `y < 0, x < 0, y > 0`,
/// until the next crossing of `{y = 0, x > 0}`.
pub fn circulate<F>(
    rhs: F,
    y0: &[f64],
    solver: &Dop853,
    t_max: f64,
    bound: f64,
    keep_steps: bool,
) -> Result<Circuit>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let x0 = y0[0];
    let mut x_minus = None;
    let mut y_minus = None;
    let mut y_plus = None;
    let mut ret: Option<(f64, Vec<f64>)> = None;
    let mut steps = Vec::new();
    let mut escaped = false;
    let outcome = solver.integrate(rhs, 0.0, y0, t_max, |s| {
        let a = s.start();
        let b = s.end();
        if keep_steps {
            steps.push(s.clone());
        }
        if b[0].abs() > bound || b[1].abs() > bound {
            escaped = true;
            return ControlFlow::Break(());
        }
        let tol = 1e-15 * s.t1().max(1.0);
        if a[0] > 0.0 && b[0] <= 0.0 && y_minus.is_none() {
            let t = s.locate_root(0, s.t0, s.t1(), tol);
            y_minus = Some(s.component(1, t));
        }
        if a[1] < 0.0 && b[1] >= 0.0 && x_minus.is_none() && b[0] < 0.0 {
            let t = s.locate_root(1, s.t0, s.t1(), tol);
            x_minus = Some(s.component(0, t));
        }
        if a[0] < 0.0 && b[0] >= 0.0 && x_minus.is_some() && y_plus.is_none() {
            let t = s.locate_root(0, s.t0, s.t1(), tol);
            y_plus = Some(s.component(1, t));
        }
        if a[1] > 0.0 && b[1] <= 0.0 && x_minus.is_some() && b[0] > 0.0 {
            let t = s.locate_root(1, s.t0, s.t1(), tol);
            ret = Some((t, s.state(t)));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    match outcome {
        Err(Error::Integrator(msg)) => {
            return Err(Error::NoReturn {
                x0,
                reason: msg,
            })
        }
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    if escaped {
        return Err(Error::NoReturn {
            x0,
            reason: "orbit left the working region".into(),
        });
    }
    match ret {
        Some((t, mut end)) => {
            end[1] = 0.0;
            Ok(Circuit {
                t_return: t,
                end,
                x_minus,
                y_minus,
                y_plus,
                steps,
            })
        }
        None => Err(Error::NoReturn {
            x0,
            reason: format!("no return to the section before t = {t_max}"),
        }),
    }
}

/// Float form of the model's vector field, with the time direction chosen so
/// that orbits run clockwise.
#[derive(Clone, Debug)]
pub struct FieldEval {
    pub f: EvalPoly,
    pub g: EvalPoly,
    /// `+1` if the model's own time runs clockwise, `-1` otherwise.
    pub time_sign: f64,
}

impl FieldEval {
    pub fn new(model: &CenterModel) -> Result<Self> {
        let f = EvalPoly::new(&model.f);
        let g = EvalPoly::new(&model.g);
        let gv = g.eval(1.0, 0.0);
        if gv == 0.0 {
            return Err(Error::HypothesisViolation(
                "vector field is tangent to the section at (1, 0)".into(),
            ));
        }
        let time_sign = if gv < 0.0 { 1.0 } else { -1.0 };
        Ok(Self { f, g, time_sign })
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.time_sign * self.f.eval(x, y), self.time_sign * self.g.eval(x, y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug)]
pub struct OvalTrace {
    pub h: f64,
    pub samples: Vec<TraceSample>,
    pub period: f64,
    pub x_plus: f64,
    pub x_minus: f64,
    pub y_plus: f64,
    pub y_minus: f64,
    /// `max |H - h| / h` over the samples.
    pub max_h_drift: f64,
    /// Distance between the return point and the start.
    pub closure_miss: f64,
    pub time_sign: f64,
    pub steps: Vec<DenseStep>,
}

impl OvalTrace {
    /// Dense-output point at trace time `t`.
    pub fn point_at(&self, t: f64) -> (f64, f64) {
        let idx = self
            .steps
            .partition_point(|s| s.t1() < t)
            .min(self.steps.len() - 1);
        let s = &self.steps[idx];
        (s.component(0, t), s.component(1, t))
    }

    /// Signed area enclosed by the trace (negative for clockwise).
    pub fn signed_area(&self) -> f64 {
        let pts = &self.samples;
        let mut a = 0.0;
        for k in 0..pts.len() {
            let p = pts[k];
            let q = pts[(k + 1) % pts.len()];
            a += p.x * q.y - q.x * p.y;
        }
        0.5 * a
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TraceOptions {
    pub tol: f64,
    /// Dense-output sub-samples per accepted step.
    pub substeps: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            substeps: 1,
        }
    }
}

/// Traces the oval `{H = h}` clockwise from `(x_plus(h), 0)`.
pub fn trace_oval(model: &CenterModel, h: f64, opts: &TraceOptions) -> Result<OvalTrace> {
    let ev = HEvaluator::new(model);
    let field = FieldEval::new(model)?;
    let x_plus = ev.x_plus(h)?;
    let solver = Dop853::with_tolerances(opts.tol, opts.tol);
    // A generous bound on time; the oval closes long before this.
    let t_max = 1e6 * (1.0 + x_plus.abs());
    let bound = 1e6 * (1.0 + x_plus.abs() + h.abs());
    let circ = circulate(
        |_, s, ds| {
            let (fx, gy) = field.eval(s[0], s[1]);
            ds[0] = fx;
            ds[1] = gy;
        },
        &[x_plus, 0.0],
        &solver,
        t_max,
        bound,
        true,
    )?;
    let miss = (circ.end[0] - x_plus).abs();
    let allowed = 100.0 * opts.tol * x_plus.max(1.0);
    if miss > allowed {
        return Err(Error::NonClosure { miss, allowed });
    }
    let mut samples = vec![TraceSample {
        t: 0.0,
        x: x_plus,
        y: 0.0,
    }];
    let sub = opts.substeps.max(1);
    for s in &circ.steps {
        for q in 1..=sub {
            let t = s.t0 + s.h * q as f64 / sub as f64;
            if t >= circ.t_return {
                break;
            }
            samples.push(TraceSample {
                t,
                x: s.component(0, t),
                y: s.component(1, t),
            });
        }
    }
    samples.push(TraceSample {
        t: circ.t_return,
        x: circ.end[0],
        y: 0.0,
    });
    let mut drift: f64 = 0.0;
    for p in &samples {
        drift = drift.max((ev.eval(p.x, p.y)? - h).abs() / h);
    }
    let missing = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| Error::NoReturn {
            x0: x_plus,
            reason: format!("no {what} crossing recorded"),
        })
    };
    Ok(OvalTrace {
        h,
        period: circ.t_return,
        x_plus,
        x_minus: missing(circ.x_minus, "negative x-axis")?,
        y_plus: missing(circ.y_plus, "positive y-axis")?,
        y_minus: missing(circ.y_minus, "negative y-axis")?,
        max_h_drift: drift,
        closure_miss: miss,
        time_sign: field.time_sign,
        samples,
        steps: circ.steps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Family-specific constants of the oval parameterization.
#[derive(Clone, Copy, Debug)]
pub struct FamilyParam {
    pub n: u32,
    pub c: f64,
    pub s: f64,
}

impl FamilyParam {
    pub fn new(p: &FamilyParams) -> Self {
        Self {
            n: p.n,
            c: p.c_f64(),
            s: p.s(),
        }
    }

    /// `ln x_plus(tau)` given `ln |z|^2` and `arg z` for `z = tau + mu_plus`.
    fn ln_x(&self, ln_h: f64, ln_z2: f64, arg: f64) -> f64 {
        let n4 = 4.0 * self.n as f64;
        ln_h / n4 - ln_z2 / n4 + arg / (2.0 * self.n as f64 * self.s)
    }

    fn direct(&self, tau: f64) -> (f64, f64) {
        let re = tau + 0.5;
        let im = 0.5 * self.s;
        ((re * re + im * im).ln(), im.atan2(re))
    }

    /// Same as [`Self::direct`] for `tau = 1/w`, accurate for tiny `w`.
    fn inverse(&self, w: f64) -> (f64, f64, f64) {
        let q = 1.0 + w - self.c * w * w;
        let ln_z2 = -2.0 * w.abs().ln() + q.ln();
        let arg = (0.5 * self.s * w.abs()).atan2(w.signum() + 0.5 * w.abs());
        (ln_z2, arg, q)
    }
}

/// Point of the oval `{H = h}` of the family at parameter `tau` on the given
/// half (`x > 0` for `Plus`).
pub fn param_point(params: &FamilyParams, h: f64, tau: f64, side: Side) -> (f64, f64) {
    let fp = FamilyParam::new(params);
    let (ln_z2, arg) = if tau.abs() <= 1.0 {
        fp.direct(tau)
    } else {
        let (l, a, _) = fp.inverse(1.0 / tau);
        (l, a)
    };
    let xp = fp.ln_x(h.ln(), ln_z2, arg).exp();
    (side.sign() * xp, tau * xp.powi(2 * fp.n as i32))
}

/// Integrand, in the compactified variable `u` with `tau = tan u`, of the
/// closed-oval integral of `x^i y^j / V dx` (`kind_j = false`) or `dy`
/// (`kind_j = true`), both halves summed with clockwise orientation.
/// `dl`, `dr` are the distances of `u` to `-pi/2` and `pi/2`.
pub(crate) fn param_integrand(
    fp: &FamilyParam,
    kind_j: bool,
    i: u32,
    j: u32,
    ln_h: f64,
    u: f64,
    dl: f64,
    dr: f64,
) -> f64 {
    let n = fp.n as f64;
    // Halves: the plus half runs tau: +inf -> -inf, the minus half -inf -> +inf.
    let odd_i = i % 2 == 1;
    if kind_j != odd_i {
        return 0.0;
    }
    let two_n = 2 * fp.n as i64;
    let e = if kind_j {
        i as i64 + two_n * j as i64 + two_n - 2 * two_n
    } else {
        i as i64 + 1 + two_n * j as i64 - 2 * two_n
    } as f64;
    if u.abs() <= std::f64::consts::FRAC_PI_4 {
        let tau = u.tan();
        let (ln_z2, arg) = fp.direct(tau);
        let lx = fp.ln_x(ln_h, ln_z2, arg);
        let base = (e * lx - 2.0 * ln_z2).exp() * tau.powi(j as i32) * (1.0 + tau * tau);
        if kind_j {
            2.0 * fp.c * base
        } else {
            base * (tau + 1.0) / n
        }
    } else {
        let d = if u > 0.0 { dr } else { dl };
        let w = u.signum() * d.tan();
        let (ln_z2, arg, q) = fp.inverse(w);
        let lx = fp.ln_x(ln_h, ln_z2, arg);
        let lw = w.abs().ln();
        let ws = w.signum();
        if kind_j {
            // tau^j (1 + tau^2) / |z|^4 = w^{2-j} (1 + w^2) / q^2
            let p = 2 - j as i64;
            let sign = if p.rem_euclid(2) == 1 { ws } else { 1.0 };
            let mag = (e * lx + p as f64 * lw + (1.0 + w * w).ln() - 2.0 * q.ln()).exp();
            2.0 * fp.c * sign * mag
        } else {
            // tau^j (tau + 1)(1 + tau^2) / |z|^4 = w^{1-j} (1 + w)(1 + w^2) / q^2
            let p = 1 - j as i64;
            let sign = if p.rem_euclid(2) == 1 { ws } else { 1.0 };
            let mag = (e * lx + p as f64 * lw + (1.0 + w * w).ln() - 2.0 * q.ln()).exp();
            sign * mag * (1.0 + w) / n
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat, Poly2};
    use crate::whsys::{construct_center, family, CenterSpec};

    fn fam(n: u32, c: i64) -> CenterModel {
        family(&FamilyParams::new(n, int(c)).unwrap()).unwrap()
    }

    #[test]
    fn hamiltonian_h_at_unit_point() {
        let spec = CenterSpec {
            h1: Poly2::y(),
            h2: Poly2::monomial(2, 0, int(1)),
            h2_scale_sq: int(1),
            sigma_a: rat(1, 2),
            sigma_t: int(0),
        };
        let m = construct_center(&spec).unwrap();
        let ev = HEvaluator::new(&m);
        assert!((ev.eval(1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(ev.eval(0.0, 0.0), Err(Error::OriginSingular));
    }

    #[test]
    fn family_h_on_positive_axis() {
        let ev = HEvaluator::new(&fam(1, -1));
        let k = (-2.0 * std::f64::consts::PI / (3.0 * 3f64.sqrt())).exp();
        for x in [0.5f64, 1.0, 1.7] {
            let want = x.powi(4) * k;
            assert!((ev.eval(x, 0.0).unwrap() - want).abs() < 1e-14 * want);
        }
        let xp = ev.x_plus(1.0).unwrap();
        assert!((xp - 1.352966911).abs() < 1e-8, "{xp}");
    }

    #[test]
    fn dilatation_scaling_of_h() {
        let ev = HEvaluator::new(&fam(2, -2));
        let (x, y) = (0.7, -0.3);
        let h = ev.eval(x, y).unwrap();
        for rho in [0.5f64, 2.0, 3.0] {
            let hs = ev.eval(rho * x, rho.powi(4) * y).unwrap();
            assert!((hs - rho.powi(8) * h).abs() < 1e-13 * hs);
        }
    }

    #[test]
    fn trace_closes_and_conserves() {
        let m = fam(1, -1);
        let ev = HEvaluator::new(&m);
        let h = ev.unit_level();
        let tr = trace_oval(&m, h, &TraceOptions::default()).unwrap();
        assert!((tr.x_plus - 1.0).abs() < 1e-14);
        assert!(tr.closure_miss < 1e-9);
        assert!(tr.max_h_drift < 1e-9, "{}", tr.max_h_drift);
        assert!((tr.x_minus + tr.x_plus).abs() < 1e-9);
        assert!(tr.signed_area() < 0.0);
        assert!(tr.y_plus > 0.0 && tr.y_minus < 0.0);
    }

    #[test]
    fn param_points_lie_on_level() {
        let p = FamilyParams::new(1, int(-1)).unwrap();
        let ev = HEvaluator::new(&family(&p).unwrap());
        for &tau in &[-1e6, -3.0, -0.5, 0.0, 0.25, 2.0, 1e6] {
            for side in [Side::Plus, Side::Minus] {
                let (x, y) = param_point(&p, 1.0, tau, side);
                let hv = ev.eval(x, y).unwrap();
                assert!((hv - 1.0).abs() < 1e-9, "tau {tau}: {hv}");
            }
        }
        let (x0, y0) = param_point(&p, 1.0, 0.0, Side::Plus);
        assert_eq!(y0, 0.0);
        assert!((x0 - ev.x_plus(1.0).unwrap()).abs() < 1e-9);
    }
}
