//! Index sets of monomial integrals, their exponent lattices and zero
//! bounds, and the design of perturbations whose Melnikov function has
//! prescribed zeros.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::melnikov::{
    default_calibration_h, scaling_exponent, series_from_values, unit_values, IntegralValue,
    MelnikovSeries, MonomialIntegralId, Perturbation, QuadOptions, SeriesOptions,
};
use crate::poly::{int, rat, Poly2, Rational};
use crate::whsys::{CenterModel, WeightSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    General,
    Family,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSetReport {
    pub kind: SetKind,
    /// `d` for the general set, `n` for the family.
    pub parameter: u32,
    pub indices: Vec<(i64, i64)>,
    #[serde(with = "rational_vec")]
    pub exponents: Vec<Rational>,
    pub cardinality: usize,
    pub distinct_exponents: usize,
    pub repeated: usize,
    /// `cardinality - 1` for the general set, `distinct - 1` for the family.
    pub upper_bound_zeros: usize,
    /// `distinct - 1`: the bound after merging equal exponents.
    pub merged_upper_bound_zeros: usize,
    pub lower_bound_zeros: Option<usize>,
    /// Family only: pairs `((i, j), (i', j'))` with equal exponents.
    pub duplicate_pairs: Vec<((i64, i64), (i64, i64))>,
    /// Family only: the classes `(2k, 2l + 1)` with nonvanishing integrals.
    pub nonzero_subset: Vec<(i64, i64)>,
    #[serde(with = "rational_vec")]
    pub nonzero_exponents: Vec<Rational>,
    /// Exponents of the nonzero subset are pairwise distinct.
    pub nonzero_independent: bool,
}

mod rational_vec {
    use serde::Serializer;

    use crate::poly::{format_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }
}

fn distinct_count(exps: &[Rational]) -> usize {
    let mut v = exps.to_vec();
    v.sort();
    v.dedup();
    v.len()
}

/// The set `{(i, j): -1 <= i <= d, 0 <= j <= d + 1, 0 <= i + j <= d}` with
/// exponents `(alpha i + beta j) / alpha`.
pub fn general_set(d: u32, sig: &WeightSignature) -> IndexSetReport {
    let d = d as i64;
    let mut indices = Vec::new();
    for i in -1..=d {
        for j in 0..=d + 1 {
            if i + j >= 0 && i + j <= d {
                indices.push((i, j));
            }
        }
    }
    let exponents: Vec<Rational> = indices
        .iter()
        .map(|&(i, j)| (&sig.alpha * int(i) + &sig.beta * int(j)) / &sig.alpha)
        .collect();
    let cardinality = indices.len();
    let distinct = distinct_count(&exponents);
    IndexSetReport {
        kind: SetKind::General,
        parameter: d as u32,
        indices,
        exponents,
        cardinality,
        distinct_exponents: distinct,
        repeated: cardinality - distinct,
        upper_bound_zeros: cardinality - 1,
        merged_upper_bound_zeros: distinct - 1,
        lower_bound_zeros: None,
        duplicate_pairs: Vec::new(),
        nonzero_subset: Vec::new(),
        nonzero_exponents: Vec::new(),
        nonzero_independent: false,
    }
}

/// The reduced family set `{(i, j): i even, 0 <= i, j, i + j <= 4n - 1}`
/// with exponents of `I_ij`.
pub fn family_set(n: u32) -> IndexSetReport {
    let top = 4 * n as i64 - 1;
    let mut indices = Vec::new();
    for i in (0..=top).step_by(2) {
        for j in 0..=top - i {
            indices.push((i, j));
        }
    }
    let exp = |(i, j): (i64, i64)| scaling_exponent(MonomialIntegralId::i(i as u32, j as u32), n);
    let exponents: Vec<Rational> = indices.iter().map(|&p| exp(p)).collect();
    let cardinality = indices.len();
    let distinct = distinct_count(&exponents);

    let mut by_exp: BTreeMap<Rational, Vec<(i64, i64)>> = BTreeMap::new();
    for (&p, e) in indices.iter().zip(&exponents) {
        by_exp.entry(e.clone()).or_default().push(p);
    }
    let mut duplicate_pairs = Vec::new();
    for group in by_exp.values() {
        for a in 0..group.len() {
            for b in a + 1..group.len() {
                let (p, q) = (group[a], group[b]);
                let (hi, lo) = if p.0 > q.0 { (p, q) } else { (q, p) };
                duplicate_pairs.push((hi, lo));
            }
        }
    }
    duplicate_pairs.sort();

    let nonzero_subset: Vec<(i64, i64)> = indices.iter().copied().filter(|&(_, j)| j % 2 == 1).collect();
    let nonzero_exponents: Vec<Rational> = nonzero_subset.iter().map(|&p| exp(p)).collect();
    let nonzero_independent = distinct_count(&nonzero_exponents) == nonzero_exponents.len();
    let nn = n as usize;
    IndexSetReport {
        kind: SetKind::Family,
        parameter: n,
        indices,
        exponents,
        cardinality,
        distinct_exponents: distinct,
        repeated: cardinality - distinct,
        upper_bound_zeros: distinct - 1,
        merged_upper_bound_zeros: distinct - 1,
        lower_bound_zeros: Some(nn * (2 * nn + 1) - 1),
        duplicate_pairs,
        nonzero_subset,
        nonzero_exponents,
        nonzero_independent,
    }
}

/// `(d + 1)(3d + 7)/16 - 1`, the upper bound written in the degree `d = 4n - 1`.
pub fn degree_form_upper(d: u32) -> Rational {
    let d = d as i64;
    rat((d + 1) * (3 * d + 7), 16) - int(1)
}

/// `(d + 1)(d + 3)/8 - 1`, the lower bound written in the degree `d = 4n - 1`.
pub fn degree_form_lower(d: u32) -> Rational {
    let d = d as i64;
    rat((d + 1) * (d + 3), 8) - int(1)
}

/// `(d + 1)(d + 4)/2 - 1`.
pub fn general_bound(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 4) / 2 - 1
}

#[derive(Clone, Debug)]
pub struct Design {
    pub perturbation: Perturbation,
    pub ids: Vec<MonomialIntegralId>,
    pub exponents: Vec<Rational>,
    /// Kernel vector, largest-magnitude entry `+1`.
    pub kernel: Vec<Dd>,
    pub unit_values: Vec<IntegralValue>,
    pub calibration_h: f64,
    /// Relative residual of the kernel solve.
    pub residual: f64,
    pub series: MelnikovSeries,
}

#[derive(Clone, Copy, Debug)]
pub struct DesignOptions {
    pub calibration_h: Option<f64>,
    pub quad: QuadOptions,
    pub max_residual: f64,
    pub max_decades: f64,
}

impl Default for DesignOptions {
    fn default() -> Self {
        Self {
            calibration_h: None,
            quad: QuadOptions::default(),
            max_residual: 1e-8,
            max_decades: 6.0,
        }
    }
}

/// `h^e` in double-double through `h^{1/L}`.
fn dd_power(h: f64, e: &Rational, l: u32) -> Dd {
    let k = (e * Rational::from_integer(l.into()))
        .to_integer()
        .to_i32()
        .expect("exponent fits");
    Dd::new(h).root(l).powi(k)
}

/// One-dimensional kernel of a `k x (k + 1)` matrix by Gaussian elimination
/// with full pivoting; `None` if the rank is deficient.
fn kernel_vector(a: &[Vec<Dd>]) -> Option<Vec<Dd>> {
    let rows = a.len();
    let cols = rows + 1;
    let mut m: Vec<Vec<Dd>> = a.to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let scale = m
        .iter()
        .flatten()
        .map(|v| v.abs().to_f64())
        .fold(0.0, f64::max);
    for r in 0..rows {
        let mut best = (r, r, 0.0);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (j, v) in row.iter().enumerate().skip(r) {
                let av = v.abs().to_f64();
                if av > best.2 {
                    best = (i, j, av);
                }
            }
        }
        if best.2 <= 1e-28 * scale {
            return None;
        }
        m.swap(r, best.0);
        for row in m.iter_mut() {
            row.swap(r, best.1);
        }
        perm.swap(r, best.1);
        let piv = m[r][r];
        for i in r + 1..rows {
            let f = m[i][r] / piv;
            if f.is_zero() {
                continue;
            }
            for j in r..cols {
                let sub = f * m[r][j];
                m[i][j] = m[i][j] - sub;
            }
        }
    }
    // Free variable is the last permuted column.
    let mut z = vec![Dd::ZERO; cols];
    z[rows] = Dd::ONE;
    for r in (0..rows).rev() {
        let mut acc = Dd::ZERO;
        for j in r + 1..cols {
            acc = acc + m[r][j] * z[j];
        }
        z[r] = -(acc / m[r][r]);
    }
    let mut out = vec![Dd::ZERO; cols];
    for (k, &p) in perm.iter().enumerate() {
        out[p] = z[k];
    }
    Some(out)
}

/// Chooses coefficients for the monomials `x^{2k} y^{2l+1}` in `P` (with
/// `Q = 0`) such that the first Melnikov function vanishes at every target.
pub fn design_perturbation(model: &CenterModel, targets: &[f64], opts: &DesignOptions) -> Result<Design> {
    let n = model.require_family()?.n;
    let nn = n as usize;
    let max = nn * (2 * nn + 1) - 1;
    if targets.len() > max {
        return Err(Error::TooManyTargets {
            given: targets.len(),
            max,
        });
    }
    if targets.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidTargets);
    }
    let mut sorted = targets.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidTargets);
    }
    if let (Some(lo), Some(hi)) = (sorted.first(), sorted.last()) {
        let decades = (hi / lo).log10();
        if decades > opts.max_decades {
            return Err(Error::IllConditioned(format!(
                "targets span {decades:.2} decades (limit {})",
                opts.max_decades
            )));
        }
    }

    let set = family_set(n);
    let mut chosen: Vec<(Rational, (i64, i64))> = set
        .nonzero_subset
        .iter()
        .zip(&set.nonzero_exponents)
        .map(|(&p, e)| (e.clone(), p))
        .collect();
    chosen.sort();
    chosen.truncate(targets.len() + 1);
    let ids: Vec<MonomialIntegralId> = chosen
        .iter()
        .map(|(_, (i, j))| MonomialIntegralId::i(*i as u32, *j as u32))
        .collect();
    let exponents: Vec<Rational> = chosen.iter().map(|(e, _)| e.clone()).collect();

    let l = exponents
        .iter()
        .fold(1u64, |acc, e| acc.lcm(&e.denom().to_u64().expect("small denominator"))) as u32;
    let e_min = exponents[0].clone();
    let a: Vec<Vec<Dd>> = targets
        .iter()
        .map(|&h| exponents.iter().map(|e| dd_power(h, &(e - &e_min), l)).collect())
        .collect();
    let mut kernel = if targets.is_empty() {
        vec![Dd::ONE]
    } else {
        kernel_vector(&a).ok_or_else(|| Error::IllConditioned("rank-deficient Vandermonde matrix".into()))?
    };
    let (mut big, mut idx) = (0.0, 0);
    for (k, v) in kernel.iter().enumerate() {
        if v.abs().to_f64() > big {
            big = v.abs().to_f64();
            idx = k;
        }
    }
    let norm = kernel[idx];
    for v in kernel.iter_mut() {
        *v = *v / norm;
    }
    let mut residual: f64 = 0.0;
    for row in &a {
        let mut s = Dd::ZERO;
        let mut w = Dd::ZERO;
        for (x, c) in row.iter().zip(&kernel) {
            s = s + *x * *c;
            w = w + (*x * *c).abs();
        }
        if !w.is_zero() {
            residual = residual.max((s.abs() / w).to_f64());
        }
    }
    if residual > opts.max_residual {
        return Err(Error::IllConditioned(format!("kernel residual {residual:e}")));
    }

    let h_cal = opts.calibration_h.unwrap_or_else(|| default_calibration_h(model));
    let values = unit_values(model, &ids, h_cal, &opts.quad)?;
    let mut p = Poly2::zero();
    let mut contrib = Vec::with_capacity(ids.len());
    for ((id, c), v) in ids.iter().zip(&kernel).zip(&values) {
        let alpha = (*c / Dd::new(v.value)).to_rational();
        p.add_term(id.1, id.2, alpha.clone());
        contrib.push((*id, alpha));
    }
    let perturbation = Perturbation::new(p, Poly2::zero());
    let series = series_from_values(
        n,
        &contrib,
        &values,
        &SeriesOptions {
            calibration_h: Some(h_cal),
            quad: opts.quad,
            ..SeriesOptions::default()
        },
    )?;
    Ok(Design {
        perturbation,
        ids,
        exponents,
        kernel,
        unit_values: values,
        calibration_h: h_cal,
        residual,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(a: i64, b: i64, w: i64) -> WeightSignature {
        WeightSignature {
            alpha: int(a),
            beta: int(b),
            omega: int(w),
        }
    }

    #[test]
    fn general_set_examples() {
        let r = general_set(3, &sig(1, 2, 1));
        assert_eq!(r.cardinality, 14);
        assert_eq!(r.upper_bound_zeros, 13);
        let r0 = general_set(0, &sig(3, 5, 1));
        assert_eq!(r0.indices, vec![(-1, 1), (0, 0)]);
        assert_eq!(r0.upper_bound_zeros, 1);
    }

    #[test]
    fn family_examples() {
        let r = family_set(1);
        assert_eq!(
            (r.cardinality, r.repeated, r.distinct_exponents, r.upper_bound_zeros, r.lower_bound_zeros),
            (6, 2, 4, 3, Some(2))
        );
        assert_eq!(r.nonzero_subset, vec![(0, 1), (0, 3), (2, 1)]);
        assert_eq!(r.nonzero_exponents, vec![rat(-1, 4), rat(3, 4), rat(1, 4)]);
        assert!(r.nonzero_independent);
        let r = family_set(2);
        assert_eq!(
            (r.cardinality, r.repeated, r.distinct_exponents, r.upper_bound_zeros, r.lower_bound_zeros),
            (20, 6, 14, 13, Some(9))
        );
        assert_eq!(degree_form_upper(3), int(3));
        assert_eq!(degree_form_lower(3), int(2));
    }

    #[test]
    fn kernel_of_small_vandermonde() {
        // rows (1, 1, 1) and (1, 2, 4): kernel proportional to (2, -3, 1)
        let a = vec![
            vec![Dd::new(1.0), Dd::new(1.0), Dd::new(1.0)],
            vec![Dd::new(1.0), Dd::new(2.0), Dd::new(4.0)],
        ];
        let k = kernel_vector(&a).unwrap();
        let r = k[0] / k[2];
        let s = k[1] / k[2];
        assert!((r - Dd::new(2.0)).to_f64().abs() < 1e-30);
        assert!((s + Dd::new(3.0)).to_f64().abs() < 1e-30);
    }

    #[test]
    fn design_rejects_bad_targets() {
        let m = crate::whsys::family(&crate::whsys::FamilyParams::new(1, int(-1)).unwrap()).unwrap();
        let o = DesignOptions::default();
        assert_eq!(
            design_perturbation(&m, &[1.0, 2.0, 3.0], &o).unwrap_err(),
            Error::TooManyTargets { given: 3, max: 2 }
        );
        assert_eq!(design_perturbation(&m, &[1.0, 1.0], &o).unwrap_err(), Error::InvalidTargets);
        assert_eq!(design_perturbation(&m, &[-1.0], &o).unwrap_err(), Error::InvalidTargets);
        assert!(matches!(
            design_perturbation(&m, &[1e-4, 1e4], &o),
            Err(Error::IllConditioned(_))
        ));
    }
}
