//! Monomial integrals `I_ij(h) = \oint x^i y^j / V dx` and
//! `J_ij(h) = \oint x^i y^j / V dy` over the ovals of a center, and the first
//! Melnikov function as a finite sum `sum c_m h^{e_m}`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::ode::Dop853;
use crate::oval::{circulate, param_integrand, FamilyParam, FieldEval, HEvaluator};
use crate::poly::{rat, rational_str, EvalPoly, Poly2, Rational};
use crate::quad::TanhSinh;
use crate::whsys::{CenterModel, FamilyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    I,
    J,
}

impl Kind {
    pub fn other(self) -> Kind {
        match self {
            Kind::I => Kind::J,
            Kind::J => Kind::I,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::I => write!(f, "I"),
            Kind::J => write!(f, "J"),
        }
    }
}

/// `(kind, i, j)`, serialized as `["I", i, j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonomialIntegralId(pub Kind, pub u32, pub u32);

impl MonomialIntegralId {
    pub fn i(i: u32, j: u32) -> Self {
        Self(Kind::I, i, j)
    }

    pub fn j(i: u32, j: u32) -> Self {
        Self(Kind::J, i, j)
    }

    pub fn kind(&self) -> Kind {
        self.0
    }

    /// The same monomial against the other differential.
    pub fn counterpart(&self) -> Self {
        Self(self.0.other(), self.1, self.2)
    }

    /// Whether the integral vanishes identically by the `x -> -x` symmetry of
    /// the family (odd `i` for `I`, even `i` for `J`).
    pub fn vanishes_by_parity(&self) -> bool {
        match self.0 {
            Kind::I => self.1 % 2 == 1,
            Kind::J => self.1 % 2 == 0,
        }
    }
}

impl fmt::Display for MonomialIntegralId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.0, self.1, self.2)
    }
}

/// Exponent `e` with `I_ij(h) = h^e I_ij(1)` on the family of index `n`.
pub fn scaling_exponent(id: MonomialIntegralId, n: u32) -> Rational {
    let (i, j, n) = (id.1 as i64, id.2 as i64, n as i64);
    match id.0 {
        Kind::I => rat(i + 1 + 2 * n * j - 4 * n, 4 * n),
        Kind::J => rat(i + 2 * n * (j + 1) - 4 * n, 4 * n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralValue {
    pub value: f64,
    /// `\oint |x^i y^j / V| |dx|` (or `|dy|`), the natural noise scale.
    pub abs_value: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub tol: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { tol: 1e-12 }
    }
}

fn powi_u(x: f64, e: u32) -> f64 {
    x.powi(e as i32)
}

/// Evaluates the integral by flowing the system once around the oval with the
/// integrand appended to the state.
pub fn integral(
    model: &CenterModel,
    id: MonomialIntegralId,
    h: f64,
    opts: &QuadOptions,
) -> Result<IntegralValue> {
    let ev = HEvaluator::new(model);
    let field = FieldEval::new(model)?;
    let v = EvalPoly::new(&model.v_poly);
    let x_plus = ev.x_plus(h)?;
    let solver = Dop853::with_tolerances(opts.tol, opts.tol);
    let MonomialIntegralId(kind, i, j) = id;
    let circ = circulate(
        |_, s, ds| {
            let (fx, gy) = field.eval(s[0], s[1]);
            ds[0] = fx;
            ds[1] = gy;
            let m = powi_u(s[0], i) * powi_u(s[1], j) / v.eval(s[0], s[1]);
            let d = match kind {
                Kind::I => fx,
                Kind::J => gy,
            };
            ds[2] = m * d;
            ds[3] = (m * d).abs();
        },
        &[x_plus, 0.0, 0.0, 0.0],
        &solver,
        1e6 * (1.0 + x_plus),
        1e6 * (1.0 + x_plus + h),
        false,
    )?;
    Ok(IntegralValue {
        value: circ.end[2],
        abs_value: circ.end[3],
    })
}

/// Independent route for the family: tanh-sinh quadrature over the
/// closed-form parameterization of both half-ovals.
pub fn integral_param(params: &FamilyParams, id: MonomialIntegralId, h: f64) -> Result<f64> {
    let fp = FamilyParam::new(params);
    let ln_h = h.ln();
    let kind_j = id.0 == Kind::J;
    if id.vanishes_by_parity() {
        return Ok(0.0);
    }
    let q = TanhSinh::default();
    let half = std::f64::consts::FRAC_PI_2;
    let e = q.integrate(
        |u, dl, dr| param_integrand(&fp, kind_j, id.1, id.2, ln_h, u, dl, dr),
        -half,
        half,
    )?;
    Ok(e.value)
}

/// Values at `h = 1` recovered from the calibration level by the scaling law.
/// Each integral runs on its own flow, so a value depends only on `(id, h)`.
pub fn unit_values(
    model: &CenterModel,
    ids: &[MonomialIntegralId],
    calibration_h: f64,
    opts: &QuadOptions,
) -> Result<Vec<IntegralValue>> {
    let n = model.require_family()?.n;
    ids.par_iter()
        .map(|&id| {
            let v = integral(model, id, calibration_h, opts)?;
            let e = scaling_exponent(id, n).to_f64().expect("small exponent");
            let k = calibration_h.powf(-e);
            Ok(IntegralValue {
                value: v.value * k,
                abs_value: v.abs_value * k,
            })
        })
        .collect()
}

/// Default calibration level: the oval through `(1, 0)`.
pub fn default_calibration_h(model: &CenterModel) -> f64 {
    HEvaluator::new(model).unit_level()
}

/// Perturbation `x' = f + eps Q, y' = g - eps P`. Coefficients are exact
/// rationals so that designed coefficients survive serialization bit for bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    #[serde(rename = "P")]
    pub p: Poly2,
    #[serde(rename = "Q")]
    pub q: Poly2,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    1e-3
}

impl Perturbation {
    pub fn new(p: Poly2, q: Poly2) -> Self {
        Self {
            p,
            q,
            epsilon: default_epsilon(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().unwrap_or(0).max(self.q.degree().unwrap_or(0))
    }

    /// Contributing integrals with their weights, in `(kind, i, j)` order.
    pub fn contributions(&self) -> Vec<(MonomialIntegralId, Rational)> {
        let mut out: Vec<(MonomialIntegralId, Rational)> = self
            .p
            .terms()
            .map(|(i, j, c)| (MonomialIntegralId::i(i, j), c.clone()))
            .chain(
                self.q
                    .terms()
                    .map(|(i, j, c)| (MonomialIntegralId::j(i, j), c.clone())),
            )
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub exponent: Rational,
    pub coefficient: Dd,
    pub from: Vec<MonomialIntegralId>,
}

/// `M1(h) = sum_m c_m h^{e_m}` with exact exponents in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct MelnikovSeries {
    pub n: u32,
    pub terms: Vec<SeriesTerm>,
}

#[derive(Serialize, Deserialize)]
struct SeriesTermJson {
    #[serde(with = "rational_str")]
    exponent: Rational,
    coefficient: f64,
    coefficient_lo: f64,
    from: Vec<MonomialIntegralId>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    n: u32,
    terms: Vec<SeriesTermJson>,
}

impl Serialize for MelnikovSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| SeriesTermJson {
                    exponent: t.exponent.clone(),
                    coefficient: t.coefficient.hi,
                    coefficient_lo: t.coefficient.lo,
                    from: t.from.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MelnikovSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        Ok(Self {
            n: j.n,
            terms: j
                .terms
                .into_iter()
                .map(|t| SeriesTerm {
                    exponent: t.exponent,
                    coefficient: Dd {
                        hi: t.coefficient,
                        lo: t.coefficient_lo,
                    },
                    from: t.from,
                })
                .collect(),
        })
    }
}

impl MelnikovSeries {
    /// Builds a series from `(exponent, coefficient)` pairs, merging equal
    /// exponents exactly.
    pub fn from_terms(n: u32, terms: Vec<(Rational, Dd)>) -> Self {
        let mut merged: BTreeMap<Rational, Dd> = BTreeMap::new();
        for (e, c) in terms {
            let slot = merged.entry(e).or_insert(Dd::ZERO);
            *slot = *slot + c;
        }
        Self {
            n,
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exponent, coefficient)| SeriesTerm {
                    exponent,
                    coefficient,
                    from: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `sum c_m exp(e_m ln h)` in ascending exponent order.
    pub fn evaluate(&self, h: f64) -> f64 {
        let lh = h.ln();
        self.terms
            .iter()
            .map(|t| t.coefficient.to_f64() * (t.exponent.to_f64().unwrap() * lh).exp())
            .sum()
    }

    fn common_denominator(&self) -> u32 {
        self.terms
            .iter()
            .fold(1u64, |l, t| l.lcm(&t.exponent.denom().to_u64().expect("small denominator")))
            as u32
    }

    /// Double-double evaluation through `r = h^{1/L}`, `L` the common
    /// exponent denominator, and integer powers of `r`.
    pub fn evaluate_dd(&self, h: f64) -> Dd {
        self.eval_parts_dd(h).0
    }

    /// `(M1(h), sum |c_m| h^{e_m})`.
    fn eval_parts_dd(&self, h: f64) -> (Dd, Dd) {
        if self.terms.is_empty() {
            return (Dd::ZERO, Dd::ZERO);
        }
        let l = self.common_denominator();
        let r = Dd::new(h).root(l);
        let mut sum = Dd::ZERO;
        let mut abs = Dd::ZERO;
        for t in &self.terms {
            let k = (&t.exponent * Rational::from_integer(l.into()))
                .to_integer()
                .to_i32()
                .expect("exponent fits");
            let p = r.powi(k);
            sum = sum + t.coefficient * p;
            abs = abs + t.coefficient.abs() * p;
        }
        (sum, abs)
    }

    /// Number of sign changes in the coefficient sequence, the
    /// Descartes-type bound on positive zeros.
    pub fn sign_changes(&self) -> usize {
        self.terms
            .windows(2)
            .filter(|w| w[0].coefficient.signum() != w[1].coefficient.signum())
            .count()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SeriesOptions {
    pub calibration_h: Option<f64>,
    pub quad: QuadOptions,
    /// Terms below `rel_threshold * max |c|` are dropped.
    pub rel_threshold: f64,
    /// Terms below `noise_threshold * sum |weight| * abs_value` are dropped.
    pub noise_threshold: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            calibration_h: None,
            quad: QuadOptions::default(),
            rel_threshold: 1e-14,
            noise_threshold: 1e-10,
        }
    }
}

/// Assembles `M1(h) = sum alpha_ij I_ij(h) + beta_ij J_ij(h)` for a family
/// model, with `P` contributing `I` integrals and `Q` contributing `J`.
pub fn m1_series(model: &CenterModel, pert: &Perturbation, opts: &SeriesOptions) -> Result<MelnikovSeries> {
    let n = model.require_family()?.n;
    let h_cal = opts.calibration_h.unwrap_or_else(|| default_calibration_h(model));
    if !(h_cal > 0.0) {
        return Err(Error::InvalidArgument("calibration level must be positive".into()));
    }
    let contrib = pert.contributions();
    let ids: Vec<MonomialIntegralId> = contrib.iter().map(|c| c.0).collect();
    let values = unit_values(model, &ids, h_cal, &opts.quad)?;
    series_from_values(n, &contrib, &values, opts)
}

/// Series assembly from precomputed unit values, shared with the designer.
pub fn series_from_values(
    n: u32,
    contrib: &[(MonomialIntegralId, Rational)],
    values: &[IntegralValue],
    opts: &SeriesOptions,
) -> Result<MelnikovSeries> {
    struct Acc {
        c: Dd,
        noise: f64,
        from: Vec<MonomialIntegralId>,
    }
    let mut acc: BTreeMap<Rational, Acc> = BTreeMap::new();
    for ((id, w), v) in contrib.iter().zip(values) {
        let e = scaling_exponent(*id, n);
        let wd = Dd::from_rational(w);
        let slot = acc.entry(e).or_insert(Acc {
            c: Dd::ZERO,
            noise: 0.0,
            from: Vec::new(),
        });
        slot.c = slot.c + wd * Dd::new(v.value);
        slot.noise += wd.to_f64().abs() * v.abs_value;
        slot.from.push(*id);
    }
    let max = acc.values().map(|a| a.c.to_f64().abs()).fold(0.0, f64::max);
    let terms = acc
        .into_iter()
        .filter(|(_, a)| {
            let c = a.c.to_f64().abs();
            c > opts.noise_threshold * a.noise && c >= opts.rel_threshold * max && c > 0.0
        })
        .map(|(exponent, a)| SeriesTerm {
            exponent,
            coefficient: a.c,
            from: a.from,
        })
        .collect();
    Ok(MelnikovSeries { n, terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroInfo {
    pub h: f64,
    /// Bisection converged to the requested tolerance.
    pub refined: bool,
    /// Possible tangential zero without sign change.
    pub caveat: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub zeros: Vec<ZeroInfo>,
    /// Near-zero dips without a sign change.
    pub suspects: Vec<ZeroInfo>,
    /// `#terms - 1`.
    pub descartes_bound: usize,
    pub sign_changes: usize,
}

impl ZeroReport {
    pub fn to_csv(&self) -> String {
        let mut all: Vec<ZeroInfo> = self.zeros.iter().chain(&self.suspects).copied().collect();
        all.sort_by(|a, b| a.h.total_cmp(&b.h));
        let mut s = String::from("h_zero,refined,caveat\n");
        for z in all {
            s.push_str(&format!("{:.16e},{},{}\n", z.h, z.refined, z.caveat));
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ZeroScan {
    pub grid: usize,
    pub rel_tol: f64,
    pub dip: f64,
}

impl Default for ZeroScan {
    fn default() -> Self {
        Self {
            grid: 4096,
            rel_tol: 1e-12,
            dip: 1e-9,
        }
    }
}

/// Sign-change scan of `M1` on a log-uniform grid over `[h_lo, h_hi]` with
/// bisection refinement.
pub fn count_zeros(series: &MelnikovSeries, h_lo: f64, h_hi: f64, scan: &ZeroScan) -> Result<ZeroReport> {
    if !(h_lo > 0.0 && h_hi > h_lo) {
        return Err(Error::InvalidArgument("need 0 < h_lo < h_hi".into()));
    }
    let descartes_bound = series.len().saturating_sub(1);
    let mut report = ZeroReport {
        zeros: Vec::new(),
        suspects: Vec::new(),
        descartes_bound,
        sign_changes: series.sign_changes(),
    };
    if series.len() <= 1 {
        return Ok(report);
    }
    let m = scan.grid.max(2);
    let (la, lb) = (h_lo.ln(), h_hi.ln());
    let hs: Vec<f64> = (0..m)
        .map(|k| {
            if k == 0 {
                h_lo
            } else if k == m - 1 {
                h_hi
            } else {
                (la + (lb - la) * k as f64 / (m - 1) as f64).exp()
            }
        })
        .collect();
    let vals: Vec<(Dd, Dd)> = hs.iter().map(|&h| series.eval_parts_dd(h)).collect();
    let sgn = |d: Dd| d.signum();
    for k in 0..m - 1 {
        let (a, b) = (sgn(vals[k].0), sgn(vals[k + 1].0));
        if a == 0.0 {
            report.zeros.push(ZeroInfo {
                h: hs[k],
                refined: true,
                caveat: false,
            });
            continue;
        }
        if b != 0.0 && a != b {
            let (mut lo, mut hi) = (hs[k], hs[k + 1]);
            let mut refined = false;
            for _ in 0..200 {
                if hi - lo <= scan.rel_tol * lo {
                    refined = true;
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    refined = true;
                    break;
                }
                let s = sgn(series.evaluate_dd(mid));
                if s == 0.0 {
                    lo = mid;
                    hi = mid;
                    refined = true;
                    break;
                }
                if s == a {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            report.zeros.push(ZeroInfo {
                h: 0.5 * (lo + hi),
                refined,
                caveat: false,
            });
        }
    }
    if sgn(vals[m - 1].0) == 0.0 {
        report.zeros.push(ZeroInfo {
            h: hs[m - 1],
            refined: true,
            caveat: false,
        });
    }
    // Relative magnitude |M1| / sum |c_m| h^{e_m}; dips without a sign change.
    let rel: Vec<f64> = vals
        .iter()
        .map(|(v, a)| if a.is_zero() { 0.0 } else { (v.abs() / *a).to_f64() })
        .collect();
    for k in 1..m - 1 {
        let same = sgn(vals[k - 1].0) == sgn(vals[k].0) && sgn(vals[k].0) == sgn(vals[k + 1].0);
        if same && rel[k] <= rel[k - 1] && rel[k] <= rel[k + 1] && rel[k] < scan.dip {
            report.suspects.push(ZeroInfo {
                h: hs[k],
                refined: false,
                caveat: true,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::whsys::family;

    fn fam(n: u32, c: i64) -> (FamilyParams, CenterModel) {
        let p = FamilyParams::new(n, int(c)).unwrap();
        let m = family(&p).unwrap();
        (p, m)
    }

    #[test]
    fn exponents_by_formula() {
        assert_eq!(scaling_exponent(MonomialIntegralId::i(0, 1), 1), rat(-1, 4));
        assert_eq!(scaling_exponent(MonomialIntegralId::i(2, 1), 1), rat(1, 4));
        assert_eq!(scaling_exponent(MonomialIntegralId::j(1, 0), 1), rat(-1, 4));
        for n in 1..5 {
            for i in (1..4 * n).step_by(2) {
                for j in 0..4 * n {
                    assert_eq!(
                        scaling_exponent(MonomialIntegralId::j(i, j), n),
                        scaling_exponent(MonomialIntegralId::i(i - 1, j + 1), n)
                    );
                }
            }
        }
    }

    #[test]
    fn unit_integral_against_reference_routes() {
        let (p, m) = fam(1, -1);
        let q = QuadOptions::default();
        let orbit = integral(&m, MonomialIntegralId::i(0, 1), 1.0, &q).unwrap();
        let param = integral_param(&p, MonomialIntegralId::i(0, 1), 1.0).unwrap();
        assert!(orbit.value > 0.0);
        assert!((orbit.value - param).abs() < 1e-9 * param, "{} vs {}", orbit.value, param);
        let j = integral(&m, MonomialIntegralId::j(1, 0), 1.0, &q).unwrap();
        let jp = integral_param(&p, MonomialIntegralId::j(1, 0), 1.0).unwrap();
        assert!(j.value < 0.0);
        assert!((j.value - jp).abs() < 1e-9 * jp.abs(), "{} vs {}", j.value, jp);
    }

    #[test]
    fn parity_zeros() {
        let (_, m) = fam(1, -1);
        let q = QuadOptions::default();
        let i10 = integral(&m, MonomialIntegralId::i(1, 0), 1.0, &q).unwrap();
        let j10 = integral(&m, MonomialIntegralId::j(1, 0), 1.0, &q).unwrap();
        assert!(i10.value.abs() <= 1e-10 * j10.value.abs());
        let j00 = integral(&m, MonomialIntegralId::j(0, 0), 1.0, &q).unwrap();
        let i00 = integral(&m, MonomialIntegralId::i(0, 0), 1.0, &q).unwrap();
        assert!(j00.value.abs() <= 1e-10 * i00.value.abs());
    }

    #[test]
    fn series_examples() {
        let (_, m) = fam(1, -1);
        let o = SeriesOptions::default();
        let s = m1_series(&m, &Perturbation::new(Poly2::y(), Poly2::zero()), &o).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms[0].exponent, rat(-1, 4));
        assert!(s.terms[0].coefficient.to_f64() > 0.0);
        let s = m1_series(&m, &Perturbation::new(Poly2::x(), Poly2::zero()), &o).unwrap();
        assert!(s.is_empty());
        let s = m1_series(&m, &Perturbation::new(Poly2::zero(), Poly2::x()), &o).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.terms[0].exponent, rat(-1, 4));
        assert!(s.terms[0].coefficient.to_f64() < 0.0);
    }

    #[test]
    fn evaluation_and_zero_count() {
        let empty = MelnikovSeries::from_terms(1, vec![]);
        assert_eq!(empty.evaluate(3.0), 0.0);
        let one = MelnikovSeries::from_terms(1, vec![(rat(-1, 4), Dd::ONE)]);
        assert!((one.evaluate(16.0) - 0.5).abs() < 1e-15);
        assert!((one.evaluate_dd(16.0) - Dd::new(0.5)).to_f64().abs() < 1e-30);
        let r = count_zeros(&one, 0.1, 10.0, &ZeroScan::default()).unwrap();
        assert!(r.zeros.is_empty());
        let two = MelnikovSeries::from_terms(1, vec![(rat(-1, 4), Dd::ONE), (rat(1, 4), -Dd::ONE)]);
        let r = count_zeros(&two, 0.1, 10.0, &ZeroScan::default()).unwrap();
        assert_eq!(r.zeros.len(), 1);
        assert!((r.zeros[0].h - 1.0).abs() < 1e-12);
        assert_eq!(r.descartes_bound, 1);
    }

    #[test]
    fn series_json_round_trip() {
        let s = MelnikovSeries {
            n: 1,
            terms: vec![SeriesTerm {
                exponent: rat(-1, 4),
                coefficient: Dd { hi: 1.5, lo: 1e-20 },
                from: vec![MonomialIntegralId::i(0, 1)],
            }],
        };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"n":1,"terms":[{"exponent":"-1/4","coefficient":1.5,"coefficient_lo":1e-20,"from":[["I",0,1]]}]}"#
        );
        let back: MelnikovSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
