//! Weight-homogeneous planar systems: weight detection, the center
//! construction from a pair `(h1, h2)`, the nilpotent family
//! `x' = y + x^{2n}, y' = 2nc x^{4n-1}`, and Andreev's monodromy test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    format_rational, int, opt_rational_str, rat, rational_str, rational_to_f64, series_solve_implicit,
    EvalPoly, Poly2, Rational,
};

/// Normalized weights `(alpha, beta, omega)`: `f(r^a x, r^b y) = r^{w+a} f`,
/// `g(r^a x, r^b y) = r^{w+b} g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSignature {
    pub alpha: Rational,
    pub beta: Rational,
    pub omega: Rational,
}

impl WeightSignature {
    /// Scales `(alpha, beta)` to coprime positive integers.
    pub fn normalized(alpha: Rational, beta: Rational, omega: Rational) -> Result<Self> {
        if alpha.is_zero() || beta.is_zero() || alpha.is_positive() != beta.is_positive() {
            return Err(Error::DegenerateWeights);
        }
        let sign = if alpha.is_negative() { int(-1) } else { int(1) };
        let (alpha, beta, omega) = (&alpha * &sign, &beta * &sign, &omega * &sign);
        let l = alpha.denom().lcm(beta.denom());
        let a = alpha.numer() * (&l / alpha.denom());
        let b = beta.numer() * (&l / beta.denom());
        let g = a.gcd(&b);
        let k = Rational::new(l, g);
        Ok(Self {
            alpha: &alpha * &k,
            beta: &beta * &k,
            omega: &omega * &k,
        })
    }

    pub fn alpha_f64(&self) -> f64 {
        rational_to_f64(&self.alpha)
    }

    pub fn beta_f64(&self) -> f64 {
        rational_to_f64(&self.beta)
    }

    pub fn omega_f64(&self) -> f64 {
        rational_to_f64(&self.omega)
    }
}

impl Serialize for WeightSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.alpha, &self.beta, &self.omega]
            .iter()
            .map(|r| format_rational(r))
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightSignature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.len() != 3 {
            return Err(serde::de::Error::custom("signature must have three entries"));
        }
        let p = |s: &str| crate::poly::parse_rational(s).map_err(serde::de::Error::custom);
        Ok(Self {
            alpha: p(&v[0])?,
            beta: p(&v[1])?,
            omega: p(&v[2])?,
        })
    }
}

/// Result of [`detect_weights`]: the signature together with the
/// commensurability witness `alpha / beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDetection {
    pub signature: WeightSignature,
    #[serde(with = "rational_str")]
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarSystem {
    pub f: Poly2,
    pub g: Poly2,
}

impl PlanarSystem {
    pub fn new(f: Poly2, g: Poly2) -> Self {
        Self { f, g }
    }

    pub fn divergence(&self) -> Poly2 {
        self.f.partial_x() + self.g.partial_y()
    }
}

/// Nilpotent family parameters; `c < -1/4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: u32,
    #[serde(with = "rational_str")]
    pub c: Rational,
}

impl FamilyParams {
    pub fn new(n: u32, c: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if c >= rat(-1, 4) {
            return Err(Error::InvalidC(format_rational(&c)));
        }
        Ok(Self { n, c })
    }

    /// `s^2 = -1 - 4c`, rational.
    pub fn s_squared(&self) -> Rational {
        int(-1) - int(4) * &self.c
    }

    pub fn s(&self) -> f64 {
        rational_to_f64(&self.s_squared()).sqrt()
    }

    pub fn c_f64(&self) -> f64 {
        rational_to_f64(&self.c)
    }

    /// `mu_plus = (1 + i s)/2` as `(re, im)`.
    pub fn mu_plus(&self) -> (f64, f64) {
        (0.5, 0.5 * self.s())
    }

    pub fn mu_minus(&self) -> (f64, f64) {
        (0.5, -0.5 * self.s())
    }
}

/// Input of [`construct_center`]. The actual second function is
/// `h2 = sqrt(h2_scale_sq) * h2_hat` and `sigma = a + i b` with
/// `b = t / sqrt(h2_scale_sq)`, so that the constructed system stays rational
/// when the square root is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSpec {
    pub h1: Poly2,
    pub h2: Poly2,
    #[serde(with = "rational_str", default = "one_rational")]
    pub h2_scale_sq: Rational,
    #[serde(with = "rational_str")]
    pub sigma_a: Rational,
    #[serde(with = "rational_str", default = "zero_rational")]
    pub sigma_t: Rational,
}

fn one_rational() -> Rational {
    Rational::one()
}

fn zero_rational() -> Rational {
    Rational::zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterModel {
    pub h1: Poly2,
    /// Normalized second function; the true `h2` is `sqrt(h2_scale_sq) * h2`.
    pub h2: Poly2,
    #[serde(with = "rational_str")]
    pub h2_scale_sq: Rational,
    #[serde(with = "rational_str")]
    pub sigma_a: Rational,
    #[serde(with = "rational_str")]
    pub sigma_t: Rational,
    pub f: Poly2,
    pub g: Poly2,
    pub v_poly: Poly2,
    pub signature: WeightSignature,
    /// Weighted degree shared by `h1` and `h2`.
    #[serde(with = "rational_str")]
    pub delta: Rational,
    pub family: Option<FamilyParams>,
}

impl CenterModel {
    pub fn system(&self) -> PlanarSystem {
        PlanarSystem::new(self.f.clone(), self.g.clone())
    }

    pub fn sigma_a_f64(&self) -> f64 {
        rational_to_f64(&self.sigma_a)
    }

    /// Imaginary part of sigma.
    pub fn sigma_b_f64(&self) -> f64 {
        let s = rational_to_f64(&self.h2_scale_sq).sqrt();
        rational_to_f64(&self.sigma_t) / s
    }

    pub fn require_family(&self) -> Result<&FamilyParams> {
        self.family.as_ref().ok_or(Error::NotFamilyModel)
    }
}

/// Rational null space of a matrix given by rows, as basis vectors.
fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&k| !m[k][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][col];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for k in 0..m.len() {
            if k != r && !m[k][col].is_zero() {
                let factor = m[k][col].clone();
                for c2 in 0..ncols {
                    let sub = &factor * &m[r][c2];
                    m[k][c2] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][fc].clone();
            }
            v
        })
        .collect()
}

fn ri(k: u32) -> Rational {
    int(k as i64)
}

/// Finds the weight signature of `x' = f, y' = g` from the monomial
/// constraints `(i-1) alpha + j beta = omega` on `f` and
/// `i alpha + (j-1) beta = omega` on `g`.
pub fn detect_weights(sys: &PlanarSystem) -> Result<WeightDetection> {
    if sys.f.is_zero() && sys.g.is_zero() {
        return Err(Error::InvalidArgument("system is identically zero".into()));
    }
    let mut rows = Vec::new();
    for (i, j, _) in sys.f.terms() {
        rows.push(vec![ri(i) - int(1), ri(j), int(-1)]);
    }
    for (i, j, _) in sys.g.terms() {
        rows.push(vec![ri(i), ri(j) - int(1), int(-1)]);
    }
    let basis = null_space(&rows, 3);
    match basis.len() {
        0 => Err(Error::NotWeightHomogeneous),
        1 => {
            let v = &basis[0];
            let signature = WeightSignature::normalized(v[0].clone(), v[1].clone(), v[2].clone())?;
            let ratio = &signature.alpha / &signature.beta;
            Ok(WeightDetection { signature, ratio })
        }
        k => Err(Error::AmbiguousWeights(k)),
    }
}

/// Common weights `(alpha, beta, delta)` of `h1` and `h2`.
fn detect_pair_weights(h1: &Poly2, h2: &Poly2) -> Result<(Rational, Rational, Rational)> {
    if h1.is_zero() || h2.is_zero() {
        return Err(Error::HypothesisViolation("h1 and h2 must both be nonzero".into()));
    }
    let rows: Vec<Vec<Rational>> = h1
        .terms()
        .chain(h2.terms())
        .map(|(i, j, _)| vec![ri(i), ri(j), int(-1)])
        .collect();
    let basis = null_space(&rows, 3);
    match basis.len() {
        0 => Err(Error::NotWeightHomogeneous),
        1 => {
            let v = &basis[0];
            let sig = WeightSignature::normalized(v[0].clone(), v[1].clone(), v[2].clone())?;
            if !sig.omega.is_positive() {
                return Err(Error::HypothesisViolation(
                    "h1 and h2 must have positive weighted degree".into(),
                ));
            }
            Ok((sig.alpha, sig.beta, sig.omega))
        }
        k => Err(Error::AmbiguousWeights(k)),
    }
}

/// Points on the boundary of `[-1, 1]^2`, which meets every orbit of the
/// weighted dilatation exactly once.
fn weight_sphere_point(s: f64) -> (f64, f64) {
    let s = s.rem_euclid(8.0);
    match s {
        s if s < 2.0 => (1.0, -1.0 + s),
        s if s < 4.0 => (1.0 - (s - 2.0), 1.0),
        s if s < 6.0 => (-1.0, 1.0 - (s - 4.0)),
        s => (-1.0 + (s - 6.0), -1.0),
    }
}

const SPHERE_SAMPLES: usize = 4096;

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..80 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    f(0.5 * (a + b))
}

/// Sampling falsifier for `h2 >= 0` and for `h1 = h2 = 0` only at the origin.
fn check_hypotheses(h1: &Poly2, h2: &Poly2, scale_sq: &Rational) -> Result<()> {
    if !scale_sq.is_positive() {
        return Err(Error::HypothesisViolation("h2 scale must be positive".into()));
    }
    let e1 = EvalPoly::new(h1);
    let e2 = EvalPoly::new(h2);
    let sc = rational_to_f64(scale_sq).sqrt();
    let step = 8.0 / SPHERE_SAMPLES as f64;
    let at = |s: f64| {
        let (x, y) = weight_sphere_point(s);
        (e1.eval(x, y), sc * e2.eval(x, y))
    };
    let vals: Vec<(f64, f64)> = (0..SPHERE_SAMPLES).map(|k| at(k as f64 * step)).collect();
    let mag = vals
        .iter()
        .map(|(a, b)| a.abs().max(b.abs()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = 1e-12 * mag;
    for (k, &(_, v2)) in vals.iter().enumerate() {
        if v2 < -tol {
            let (x, y) = weight_sphere_point(k as f64 * step);
            return Err(Error::HypothesisViolation(format!(
                "h2 is negative at ({x}, {y})"
            )));
        }
    }
    let norm = |s: f64| {
        let (a, b) = at(s);
        (a * a + b * b).sqrt()
    };
    let h2v = |s: f64| at(s).1;
    for k in 0..SPHERE_SAMPLES {
        let prev = vals[(k + SPHERE_SAMPLES - 1) % SPHERE_SAMPLES];
        let cur = vals[k];
        let next = vals[(k + 1) % SPHERE_SAMPLES];
        let n = |p: (f64, f64)| (p.0 * p.0 + p.1 * p.1).sqrt();
        let s = k as f64 * step;
        if n(cur) <= n(prev) && n(cur) <= n(next) && n(cur) < 1e-3 * mag {
            let m = golden_min(norm, s - step, s + step);
            if m <= 1e-9 * mag {
                let (x, y) = weight_sphere_point(s);
                return Err(Error::HypothesisViolation(format!(
                    "h1 and h2 vanish simultaneously near ({x}, {y})"
                )));
            }
        }
        if cur.1 <= prev.1 && cur.1 <= next.1 && cur.1 < 1e-3 * mag {
            let m = golden_min(h2v, s - step, s + step);
            if m < -tol {
                let (x, y) = weight_sphere_point(s);
                return Err(Error::HypothesisViolation(format!(
                    "h2 is negative near ({x}, {y})"
                )));
            }
        }
    }
    Ok(())
}

/// Builds the center `x' = H_y V, y' = -H_x V` with `H = (h1+ih2)^s (h1-ih2)^{conj s}`,
/// expanded as an exact polynomial system.
pub fn construct_center(spec: &CenterSpec) -> Result<CenterModel> {
    if spec.sigma_a.is_zero() {
        return Err(Error::ZeroSigmaReal);
    }
    let (alpha, beta, delta) = detect_pair_weights(&spec.h1, &spec.h2)?;
    check_hypotheses(&spec.h1, &spec.h2, &spec.h2_scale_sq)?;

    let (h1, h2, k) = (&spec.h1, &spec.h2, &spec.h2_scale_sq);
    let (a, t) = (&spec.sigma_a, &spec.sigma_t);
    let (h1x, h1y, h2x, h2y) = (h1.partial_x(), h1.partial_y(), h2.partial_x(), h2.partial_y());
    let sym = |d1: &Poly2, d2: &Poly2| (h1 * d1) + (h2 * d2).scale(k);
    let skew = |d1: &Poly2, d2: &Poly2| (h1 * d2) - (h2 * d1);
    let f = sym(&h1y, &h2y).scale(a) - skew(&h1y, &h2y).scale(t);
    let g = skew(&h1x, &h2x).scale(t) - sym(&h1x, &h2x).scale(a);
    let v_poly = (h1 * h1) + (h2 * h2).scale(k);
    let omega = int(2) * &delta - &alpha - &beta;
    let signature = WeightSignature {
        alpha,
        beta,
        omega,
    };
    Ok(CenterModel {
        h1: h1.clone(),
        h2: h2.clone(),
        h2_scale_sq: k.clone(),
        sigma_a: a.clone(),
        sigma_t: t.clone(),
        f,
        g,
        v_poly,
        signature,
        delta,
        family: None,
    })
}

/// The family `x' = y + x^{2n}, y' = 2nc x^{4n-1}` as a constructed center
/// with `h1 = y + x^{2n}/2`, `h2 = (s/2) x^{2n}`, `sigma = 1 + i/s`.
pub fn family(params: &FamilyParams) -> Result<CenterModel> {
    let p = FamilyParams::new(params.n, params.c.clone())?;
    let e = 2 * p.n;
    let h1 = Poly2::from_terms([(0, 1, int(1)), (e, 0, rat(1, 2))]);
    let h2 = Poly2::monomial(e, 0, rat(1, 2));
    let spec = CenterSpec {
        h1,
        h2,
        h2_scale_sq: p.s_squared(),
        sigma_a: int(1),
        sigma_t: int(1),
    };
    let mut model = construct_center(&spec)?;
    model.family = Some(p);
    Ok(model)
}

/// The family system written down directly, used to cross-check [`family`].
pub fn family_system(params: &FamilyParams) -> PlanarSystem {
    let n = params.n;
    let f = Poly2::from_terms([(0, 1, int(1)), (2 * n, 0, int(1))]);
    let g = Poly2::monomial(4 * n - 1, 0, int(2 * n as i64) * &params.c);
    PlanarSystem::new(f, g)
}

/// Exact check of `f V_x + g V_y = V (f_x + g_y)` with `V = v_poly`.
pub fn check_inverse_integrating_factor(model: &CenterModel) -> bool {
    let v = &model.v_poly;
    let lhs = (&model.f * &v.partial_x()) + (&model.g * &v.partial_y());
    let rhs = v * &model.system().divergence();
    lhs == rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    A,
    B,
    C,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyReport {
    #[serde(with = "rational_str")]
    pub alpha1: Rational,
    pub k1: usize,
    #[serde(with = "opt_rational_str")]
    pub alpha2: Option<Rational>,
    pub k2: Option<usize>,
    pub delta_identically_zero: bool,
    /// `alpha2^2 + 4 alpha1 (k2 + 1)` when `alpha2` exists.
    #[serde(with = "opt_rational_str")]
    pub discriminant: Option<Rational>,
    pub branch: Branch,
    pub monodromic: bool,
    pub truncation_order: usize,
}

const MAX_ANDREEV_ORDER: usize = 128;

/// Andreev's monodromy test for `x' = y + F, y' = G` with `F, G` of order >= 2.
pub fn andreev_monodromy(sys: &PlanarSystem) -> Result<MonodromyReport> {
    andreev_monodromy_with_order(sys, None)
}

pub fn andreev_monodromy_with_order(sys: &PlanarSystem, order: Option<usize>) -> Result<MonodromyReport> {
    if sys.f.coeff(0, 1) != Rational::one() {
        return Err(Error::NotNormalForm("linear part of x' must be exactly y".into()));
    }
    let big_f = &sys.f - &Poly2::y();
    let big_g = sys.g.clone();
    for (name, p) in [("F", &big_f), ("G", &big_g)] {
        if let Some(d) = p.order() {
            if d < 2 {
                return Err(Error::NotNormalForm(format!("{name} has a term of degree {d}")));
            }
        }
    }
    if big_g.is_zero() {
        return Err(Error::NonIsolatedSingularity);
    }
    let div = big_f.partial_x() + big_g.partial_y();
    // With F independent of y, phi = -F(x) is a polynomial and the
    // truncated series below are exact once the order covers their degree.
    let y_free = big_f.terms().all(|(_, j, _)| j == 0);
    let max_deg = big_f.degree().unwrap_or(0).max(big_g.degree().unwrap_or(0)) as usize;
    let mut order = order.unwrap_or_else(|| (8 * max_deg.div_ceil(4)).max(8));
    loop {
        let phi = series_solve_implicit(&big_f, order)?;
        let xi = big_g.compose_series(&phi);
        let delta = div.compose_series(&phi);
        let exact_through = if y_free {
            let dphi = big_f.degree().unwrap_or(0) as usize;
            max_deg.saturating_mul(dphi.max(1))
        } else {
            usize::MAX
        };
        let exact = y_free && order >= exact_through;
        let xi_lead = xi.leading_term().map(|(k, c)| (k, c.clone()));
        let delta_zero_proven = div.is_zero() || (exact && delta.is_zero());
        let delta_lead = delta.leading_term().map(|(k, c)| (k, c.clone()));
        match (xi_lead, delta_lead, delta_zero_proven) {
            (Some((k1, a1)), d, proven) if d.is_some() || proven => {
                return Ok(classify(k1, a1, d, proven, order));
            }
            (None, _, _) if exact => return Err(Error::NonIsolatedSingularity),
            _ => {
                if order >= MAX_ANDREEV_ORDER {
                    return Err(Error::TruncationInconclusive(order));
                }
                order = (order * 2).min(MAX_ANDREEV_ORDER);
            }
        }
    }
}

fn classify(
    k1: usize,
    alpha1: Rational,
    delta_lead: Option<(usize, Rational)>,
    delta_zero: bool,
    order: usize,
) -> MonodromyReport {
    let (alpha2, k2) = match &delta_lead {
        Some((k, c)) if !delta_zero => (Some(c.clone()), Some(*k)),
        _ => (None, None),
    };
    let discriminant = match (&alpha2, k2) {
        (Some(a2), Some(k2)) => Some(a2 * a2 + int(4) * &alpha1 * ri(k2 as u32 + 1)),
        _ => None,
    };
    let branch = if delta_zero {
        Branch::C
    } else {
        let k2 = k2.expect("delta has a leading term");
        if k1 < 2 * k2 + 1 {
            Branch::B
        } else if k1 == 2 * k2 + 1 && discriminant.as_ref().is_some_and(|d| d.is_negative()) {
            Branch::A
        } else {
            Branch::None
        }
    };
    let monodromic = alpha1.is_negative() && k1 % 2 == 1 && branch != Branch::None;
    MonodromyReport {
        alpha1,
        k1,
        alpha2,
        k2,
        delta_identically_zero: delta_zero,
        discriminant,
        branch,
        monodromic,
        truncation_order: order,
    }
}

/// Nonnegative integer power of a rational, for closed-form comparisons.
pub fn rational_pow(r: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

/// Integer value of a rational with denominator one.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.denom() == &BigInt::one() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, i64, i64)]) -> Poly2 {
        Poly2::from_terms(terms.iter().map(|&(i, j, n, d)| (i, j, rat(n, d))))
    }

    fn sig(a: i64, b: i64, w: i64) -> WeightSignature {
        WeightSignature {
            alpha: int(a),
            beta: int(b),
            omega: int(w),
        }
    }

    #[test]
    fn weights_of_examples() {
        let s = PlanarSystem::new(p(&[(0, 1, 1, 1), (2, 0, 1, 1)]), p(&[(3, 0, -2, 1)]));
        assert_eq!(detect_weights(&s).unwrap().signature, sig(1, 2, 1));
        let s = PlanarSystem::new(p(&[(0, 1, 1, 1)]), p(&[(1, 0, -1, 1)]));
        assert_eq!(detect_weights(&s).unwrap().signature, sig(1, 1, 0));
        let s = PlanarSystem::new(p(&[(0, 1, 1, 1), (4, 0, 1, 1)]), p(&[(7, 0, -8, 1)]));
        assert_eq!(detect_weights(&s).unwrap().signature, sig(1, 4, 3));
    }

    #[test]
    fn weight_failures() {
        let s = PlanarSystem::new(p(&[(0, 1, 1, 1), (2, 0, 1, 1), (3, 0, 1, 1)]), p(&[(3, 0, -2, 1)]));
        assert_eq!(detect_weights(&s), Err(Error::NotWeightHomogeneous));
        let s = PlanarSystem::new(p(&[(0, 1, 1, 1)]), Poly2::zero());
        assert_eq!(detect_weights(&s), Err(Error::AmbiguousWeights(2)));
        // x' = x^2 y^2 solving alpha + 2 beta = omega; with y' = y^3 x^0: 2 beta = omega,
        // so alpha = 0.
        let s = PlanarSystem::new(p(&[(2, 2, 1, 1)]), p(&[(0, 3, 1, 1)]));
        assert_eq!(detect_weights(&s), Err(Error::DegenerateWeights));
    }

    #[test]
    fn family_n1_matches_direct_system() {
        let fp = FamilyParams::new(1, int(-1)).unwrap();
        let m = family(&fp).unwrap();
        assert_eq!(m.system(), family_system(&fp));
        assert_eq!(m.v_poly, p(&[(0, 2, 1, 1), (2, 1, 1, 1), (4, 0, 1, 1)]));
        assert_eq!(m.signature, sig(1, 2, 1));
        assert!(check_inverse_integrating_factor(&m));
    }

    #[test]
    fn family_examples() {
        let m = family(&FamilyParams::new(1, rat(-1, 2)).unwrap()).unwrap();
        assert_eq!(m.g, p(&[(3, 0, -1, 1)]));
        let m = family(&FamilyParams::new(3, int(-5)).unwrap()).unwrap();
        assert_eq!(m.f, p(&[(0, 1, 1, 1), (6, 0, 1, 1)]));
        assert_eq!(m.g, p(&[(11, 0, -30, 1)]));
        let m = family(&FamilyParams::new(2, int(-2)).unwrap()).unwrap();
        assert_eq!(m.g, p(&[(7, 0, -8, 1)]));
        assert!(check_inverse_integrating_factor(&m));
        assert_eq!(
            FamilyParams::new(1, rat(-1, 4)).unwrap_err(),
            Error::InvalidC("-1/4".into())
        );
    }

    #[test]
    fn unshifted_h1_does_not_reproduce_family() {
        // h1 = y + x^2 with the same h2 and sigma gives x' = y + (3/2) x^2.
        let spec = CenterSpec {
            h1: p(&[(0, 1, 1, 1), (2, 0, 1, 1)]),
            h2: p(&[(2, 0, 1, 2)]),
            h2_scale_sq: int(3),
            sigma_a: int(1),
            sigma_t: int(1),
        };
        let m = construct_center(&spec).unwrap();
        assert_eq!(m.f, p(&[(0, 1, 1, 1), (2, 0, 3, 2)]));
    }

    #[test]
    fn hamiltonian_like_case() {
        let spec = CenterSpec {
            h1: Poly2::y(),
            h2: p(&[(2, 0, 1, 1)]),
            h2_scale_sq: int(1),
            sigma_a: rat(1, 2),
            sigma_t: int(0),
        };
        let m = construct_center(&spec).unwrap();
        assert_eq!(m.f, p(&[(0, 1, 1, 2)]));
        assert_eq!(m.g, p(&[(3, 0, -1, 1)]));
        assert!(check_inverse_integrating_factor(&m));
        assert_eq!(detect_weights(&m.system()).unwrap().signature, m.signature);
    }

    #[test]
    fn hypothesis_violations() {
        // h2 = x^2 - y changes sign.
        let spec = CenterSpec {
            h1: Poly2::y(),
            h2: p(&[(2, 0, 1, 1), (0, 1, -1, 1)]),
            h2_scale_sq: int(1),
            sigma_a: int(1),
            sigma_t: int(0),
        };
        assert!(matches!(construct_center(&spec), Err(Error::HypothesisViolation(_))));
        // h1 = x^2 - y^2, h2 = (x - y)^2 vanish together along x = y.
        let spec = CenterSpec {
            h1: p(&[(2, 0, 1, 1), (0, 2, -1, 1)]),
            h2: p(&[(2, 0, 1, 1), (1, 1, -2, 1), (0, 2, 1, 1)]),
            h2_scale_sq: int(1),
            sigma_a: int(1),
            sigma_t: int(0),
        };
        assert!(matches!(construct_center(&spec), Err(Error::HypothesisViolation(_))));
        let spec = CenterSpec {
            h1: Poly2::y(),
            h2: p(&[(2, 0, 1, 1)]),
            h2_scale_sq: int(1),
            sigma_a: int(0),
            sigma_t: int(1),
        };
        assert_eq!(construct_center(&spec), Err(Error::ZeroSigmaReal));
    }

    #[test]
    fn andreev_family_branch_a() {
        let m = family(&FamilyParams::new(1, int(-1)).unwrap()).unwrap();
        let r = andreev_monodromy(&m.system()).unwrap();
        assert_eq!((r.alpha1.clone(), r.k1), (int(-2), 3));
        assert_eq!((r.alpha2.clone(), r.k2), (Some(int(2)), Some(1)));
        assert_eq!(r.discriminant, Some(int(-12)));
        assert_eq!(r.branch, Branch::A);
        assert!(r.monodromic);
    }

    #[test]
    fn andreev_cubic_controls() {
        let s = PlanarSystem::new(Poly2::y(), p(&[(3, 0, -1, 1)]));
        let r = andreev_monodromy(&s).unwrap();
        assert!(r.delta_identically_zero);
        assert_eq!(r.branch, Branch::C);
        assert!(r.monodromic);
        let s = PlanarSystem::new(Poly2::y(), p(&[(3, 0, 1, 1)]));
        let r = andreev_monodromy(&s).unwrap();
        assert!(!r.monodromic);
        let s = PlanarSystem::new(p(&[(0, 1, 2, 1)]), p(&[(3, 0, 1, 1)]));
        assert!(matches!(andreev_monodromy(&s), Err(Error::NotNormalForm(_))));
    }

    #[test]
    fn andreev_with_implicit_series() {
        // F = x y depends on y; phi = 0, xi = G(x, 0) = -x^3, Delta = y + G_y = 0 + 0 ...
        // F_x = y, so Delta(x) = phi(x) = 0 through every order: inconclusive.
        let s = PlanarSystem::new(p(&[(0, 1, 1, 1), (1, 1, 1, 1)]), p(&[(3, 0, -1, 1)]));
        assert_eq!(andreev_monodromy(&s), Err(Error::TruncationInconclusive(128)));
    }
}
