//! Tanh-sinh (double exponential) quadrature for integrands with integrable
//! endpoint singularities.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct TanhSinh {
    pub tol: f64,
    pub max_level: u32,
    pub t_max: f64,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_level: 12,
            t_max: 6.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub level: u32,
}

impl TanhSinh {
    /// Integrates `f` over `(a, b)`. The integrand receives the abscissa and
    /// its distances to `a` and `b`, computed without cancellation, so that it
    /// can evaluate singular factors accurately close to the ends.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<Estimate>
    where
        F: FnMut(f64, f64, f64) -> f64,
    {
        let half = 0.5 * (b - a);
        let mut eval = |t: f64| -> f64 {
            let u = FRAC_PI_2 * t.sinh();
            let cu = u.cosh();
            let w = FRAC_PI_2 * t.cosh() / (cu * cu);
            // 1 - tanh|u| = exp(-|u|) / cosh(u)
            let comp = (-u.abs()).exp() / cu;
            let d = half * comp;
            if d <= 0.0 || w == 0.0 {
                return 0.0;
            }
            let (x, dl, dr) = if u >= 0.0 {
                (b - d, 2.0 * half - d, d)
            } else {
                (a + d, d, 2.0 * half - d)
            };
            let v = f(x.clamp(a.min(b), a.max(b)), dl, dr);
            if v.is_finite() {
                half * w * v
            } else {
                f64::NAN
            }
        };

        let mut h = 1.0;
        let mut sum = eval(0.0);
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > self.t_max {
                break;
            }
            sum += eval(t) + eval(-t);
            k += 1;
        }
        let mut prev = sum * h;
        if !prev.is_finite() {
            return Err(Error::Integrator("non-finite integrand in quadrature".into()));
        }
        for level in 1..=self.max_level {
            h *= 0.5;
            let mut k = 1;
            loop {
                let t = k as f64 * h;
                if t > self.t_max {
                    break;
                }
                sum += eval(t) + eval(-t);
                k += 2;
            }
            let cur = sum * h;
            if !cur.is_finite() {
                return Err(Error::Integrator("non-finite integrand in quadrature".into()));
            }
            let err = (cur - prev).abs();
            if level >= 3 && err <= self.tol * cur.abs().max(f64::MIN_POSITIVE) {
                return Ok(Estimate {
                    value: cur,
                    error: err,
                    level,
                });
            }
            prev = cur;
        }
        Err(Error::Integrator(format!(
            "tanh-sinh did not converge after {} levels",
            self.max_level
        )))
    }
}
