//! Exact sparse bivariate polynomials and truncated univariate power series
//! over arbitrary-precision rationals.
//!
//! Term storage is a `BTreeMap` keyed by `(i, j)`, the exponents of `x` and
//! `y`, so iteration (and therefore float evaluation) always runs in
//! lexicographic order. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal points and exponents are rejected so that
/// exact inputs are never silently rounded.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let ok = |part: &str| {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) {
        return Err(bad());
    }
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Always renders `p/q` with `q >= 1`, e.g. `"3/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators or denominators: go through the quotient.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Serde adapter storing a `Rational` as its `"p/q"` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod opt_rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(de::Error::custom))
            .transpose()
    }
}

/// Sparse polynomial in `x`, `y` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Adds `c x^i y^j`, dropping the entry if it cancels.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Lowest total degree among the stored terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(Rational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(i, _, _)| i > 0)
                .map(|(i, j, c)| (i - 1, j, c * int(i as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(_, j, _)| j > 0)
                .map(|(i, j, c)| (i, j - 1, c * int(j as i64))),
        )
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(i, j, _)| i + j == d)
                .map(|(i, j, c)| (i, j, c.clone())),
        )
    }

    /// `p(-x, y)`.
    pub fn reflect_x(&self) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| {
            let c = if i % 2 == 1 { -c.clone() } else { c.clone() };
            (i, j, c)
        }))
    }

    /// Weighted degree `delta` with `alpha*i + beta*j = delta` on every term,
    /// or `None` if the polynomial is not weight-homogeneous for `(alpha, beta)`.
    /// The zero polynomial has no weighted degree.
    pub fn weighted_degree(&self, alpha: &Rational, beta: &Rational) -> Option<Rational> {
        let mut deg: Option<Rational> = None;
        for (i, j, _) in self.terms() {
            let d = alpha * int(i as i64) + beta * int(j as i64);
            match &deg {
                None => deg = Some(d),
                Some(prev) if *prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, j, c) in self.terms() {
            acc += c * pow_rat(x, i) * pow_rat(y, j);
        }
        acc
    }

    /// Double-precision evaluation (nested Horner in lexicographic term order).
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        EvalPoly::new(self).eval(x, y)
    }

    /// `sum c x^i phi(x)^j`, truncated to the order of `phi`.
    pub fn compose_series(&self, phi: &PowerSeries1) -> PowerSeries1 {
        let order = phi.order();
        let max_j = self.terms().map(|(_, j, _)| j).max().unwrap_or(0);
        let mut powers = vec![PowerSeries1::one(order)];
        for k in 1..=max_j as usize {
            let next = powers[k - 1].mul(phi);
            powers.push(next);
        }
        let mut out = PowerSeries1::zero(order);
        for (i, j, c) in self.terms() {
            let shifted = powers[j as usize].shift(i as usize).scale(c);
            out = out.add(&shifted);
        }
        out
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            if !unit || (i == 0 && j == 0) {
                write!(f, "{}", abs)?;
            }
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("y".to_string()),
                _ => mono.push(format!("y^{j}")),
            }
            if !mono.is_empty() {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: Poly2) -> Poly2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for Poly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (i, j, c) in self.terms() {
            seq.serialize_element(&(i, j, format_rational(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(u32, u32, String)>::deserialize(d)?;
        let mut p = Poly2::zero();
        for (i, j, c) in raw {
            let c = parse_rational(&c).map_err(de::Error::custom)?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}

/// Float image of a `Poly2`, pre-grouped for nested Horner evaluation.
#[derive(Clone, Debug, Default)]
pub struct EvalPoly {
    // (i, [(j, c)]) ascending in i, inner ascending in j
    rows: Vec<(u32, Vec<(u32, f64)>)>,
}

impl EvalPoly {
    pub fn new(p: &Poly2) -> Self {
        let mut rows: Vec<(u32, Vec<(u32, f64)>)> = Vec::new();
        for (i, j, c) in p.terms() {
            let c = rational_to_f64(c);
            match rows.last_mut() {
                Some((ri, row)) if *ri == i => row.push((j, c)),
                _ => rows.push((i, vec![(j, c)])),
            }
        }
        Self { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        let mut prev: Option<u32> = None;
        for (i, row) in self.rows.iter().rev() {
            if let Some(p) = prev {
                acc *= x.powi((p - i) as i32);
            }
            acc += horner(row, y);
            prev = Some(*i);
        }
        match prev {
            Some(p) if p > 0 => acc * x.powi(p as i32),
            _ => acc,
        }
    }
}

fn horner(row: &[(u32, f64)], y: f64) -> f64 {
    let mut acc = 0.0;
    let mut prev: Option<u32> = None;
    for &(j, c) in row.iter().rev() {
        if let Some(p) = prev {
            acc *= y.powi((p - j) as i32);
        }
        acc += c;
        prev = Some(j);
    }
    match prev {
        Some(p) if p > 0 => acc * y.powi(p as i32),
        _ => acc,
    }
}

/// Truncated power series `sum_{k=0}^{order} a_k x^k` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries1 {
    coeffs: Vec<Rational>,
}

impl PowerSeries1 {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from leading coefficients, zero-padding or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest-degree nonzero term `(k, a_k)`.
    pub fn leading_term(&self) -> Option<(usize, &Rational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (a_k, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (b_k, b) in rhs.coeffs.iter().enumerate().take(order + 1 - a_k) {
                if !b.is_zero() {
                    out[a_k + b_k] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplies by `x^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if idx + k <= order {
                out[idx + k] = c.clone();
            }
        }
        Self { coeffs: out }
    }
}

/// Solves `y + F(x, y) = 0` for `y = phi(x)` with `phi(0) = 0` as a series
/// truncated at `order`, by the fixed-point iteration `phi <- -F(x, phi)`.
///
/// Because every term of `F` has total degree at least two, each pass fixes
/// at least one further coefficient, so at most `order + 1` passes are needed.
pub fn series_solve_implicit(f: &Poly2, order: usize) -> Result<PowerSeries1> {
    if order == 0 {
        return Err(Error::InvalidArgument("truncation order must be positive".into()));
    }
    if let Some(d) = f.order() {
        if d < 2 {
            return Err(Error::LowOrderTerm(d));
        }
    }
    let mut phi = PowerSeries1::zero(order);
    for _ in 0..=order + 1 {
        let next = f.compose_series(&phi).neg();
        if next == phi {
            return Ok(phi);
        }
        phi = next;
    }
    Ok(phi)
}
