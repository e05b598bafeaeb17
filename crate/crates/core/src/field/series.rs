use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldError, Magnitude, MagnitudeClass};
use crate::coeff::{Coefficient, Sign};

/// Exponent of `ε`.
pub type Exponent = Ratio<i64>;

/// How far a series is known: every coefficient below the bound is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Validity {
    /// Known up to (excluding) `ε^q`; the value is `Σ ... + O(ε^q)`.
    Order(Exponent),
    /// No truncation error.
    Exact,
}

impl Validity {
    fn shift(self, by: Exponent) -> Self {
        match self {
            Validity::Order(q) => Validity::Order(q + by),
            Validity::Exact => Validity::Exact,
        }
    }

    fn admits(self, e: Exponent) -> bool {
        match self {
            Validity::Order(q) => e < q,
            Validity::Exact => true,
        }
    }

    pub fn order(self) -> Option<Exponent> {
        match self {
            Validity::Order(q) => Some(q),
            Validity::Exact => None,
        }
    }

    pub fn is_exact(self) -> bool {
        self == Validity::Exact
    }
}

/// Truncation budget of a computation context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    /// Global truncation order `K`: no stored exponent reaches it.
    pub order: i64,
    /// Exponent denominators stay at most `2^sqrt_depth`.
    pub sqrt_depth: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            order: 16,
            sqrt_depth: 8,
        }
    }
}

impl Precision {
    pub fn new(order: i64, sqrt_depth: u32) -> Self {
        Precision { order, sqrt_depth }
    }

    pub fn with_order(order: i64) -> Self {
        Precision {
            order,
            ..Precision::default()
        }
    }

    pub fn doubled(self) -> Self {
        Precision {
            order: self.order * 2,
            ..self
        }
    }

    fn min(self, o: Self) -> Self {
        Precision {
            order: self.order.min(o.order),
            sqrt_depth: self.sqrt_depth.min(o.sqrt_depth),
        }
    }

    fn cap(self) -> Exponent {
        Exponent::from_integer(self.order)
    }

    fn max_denominator(self) -> i64 {
        1i64 << self.sqrt_depth.min(62)
    }
}

/// A truncated generalized power series `Σ c_q ε^q + O(ε^ω)`.
///
/// Stored terms have strictly increasing exponents below the validity bound
/// and nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Series<C> {
    terms: Vec<(Exponent, C)>,
    validity: Validity,
    prec: Precision,
}

impl<C: Coefficient> Series<C> {
    /// Builds a normalized series: coefficients are summed per exponent, zeros
    /// dropped, and anything at or past the global order is cut off.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Exponent, C)>,
        validity: Validity,
        prec: Precision,
    ) -> Result<Self, FieldError> {
        let mut map: BTreeMap<Exponent, C> = BTreeMap::new();
        for (e, c) in terms {
            if *e.denom() > prec.max_denominator() {
                return Err(FieldError::SqrtDepthExceeded);
            }
            match map.remove(&e) {
                Some(old) => {
                    map.insert(e, old + c);
                }
                None => {
                    map.insert(e, c);
                }
            }
        }
        Ok(Self::build(map, validity, prec))
    }

    fn build(map: BTreeMap<Exponent, C>, validity: Validity, prec: Precision) -> Self {
        let mut validity = validity;
        let cap = prec.cap();
        let mut terms = Vec::with_capacity(map.len());
        for (e, c) in map {
            if !validity.admits(e) {
                break;
            }
            if e >= cap {
                validity = validity.min(Validity::Order(cap));
                break;
            }
            if c.sign() != Sign::Zero {
                terms.push((e, c));
            }
        }
        Series {
            terms,
            validity,
            prec,
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Series {
            terms: Vec::new(),
            validity: Validity::Exact,
            prec,
        }
    }

    pub fn constant(c: C, prec: Precision) -> Self {
        Self::build(BTreeMap::from([(Exponent::zero(), c)]), Validity::Exact, prec)
    }

    pub fn from_integer(n: i64, prec: Precision) -> Self {
        Self::constant(C::from_integer(n), prec)
    }

    pub fn ratio(n: i64, d: i64, prec: Precision) -> Self {
        Self::constant(C::from_rational(BigRational::new(n.into(), d.into())), prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_integer(1, prec)
    }

    /// The distinguished positive infinitesimal.
    pub fn epsilon(prec: Precision) -> Self {
        Self::build(BTreeMap::from([(Exponent::one(), C::one())]), Validity::Exact, prec)
    }

    /// `c * ε^e`.
    pub fn monomial(c: C, e: Exponent, prec: Precision) -> Result<Self, FieldError> {
        Self::from_terms([(e, c)], Validity::Exact, prec)
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.validity.is_exact()
    }

    pub fn leading(&self) -> Option<(Exponent, &C)> {
        self.terms.first().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, e: Exponent) -> Option<&C> {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(&e))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// True when no coefficient below the validity bound is nonzero.
    pub fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value is `O(ε^order)`: no stored terms and validity at
    /// least `order`.
    pub fn vanishes_below(&self, order: i64) -> bool {
        self.terms.is_empty() && self.validity >= Validity::Order(Exponent::from_integer(order))
    }

    /// True when `self - other` has no stored terms below its validity.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self - other).vanishes()
    }

    /// Re-truncates to another context.
    pub fn with_precision(&self, prec: Precision) -> Self {
        Self::build(
            self.terms.iter().cloned().collect(),
            self.validity,
            prec,
        )
    }

    /// Lower bound on the exponents this value can have: the valuation, or
    /// the validity for an unresolved zero. `Exact` marks the exact zero.
    fn low_bound(&self) -> Validity {
        match self.terms.first() {
            Some((e, _)) => Validity::Order(*e),
            None => self.validity,
        }
    }

    pub fn valuation(&self) -> Result<Exponent, FieldError> {
        match self.terms.first() {
            Some((e, _)) => Ok(*e),
            None if self.is_exact() => Err(FieldError::ZeroHasNoValuation),
            None => Err(FieldError::IndeterminateZero),
        }
    }

    pub fn sign(&self) -> Result<Sign, FieldError> {
        match self.terms.first() {
            Some((_, c)) => Ok(c.sign()),
            None if self.is_exact() => Ok(Sign::Zero),
            None => Err(FieldError::IndeterminateZero),
        }
    }

    pub fn abs(&self) -> Result<Self, FieldError> {
        Ok(if self.sign()? == Sign::Negative {
            -self
        } else {
            self.clone()
        })
    }

    /// Order comparison: the sign of the leading coefficient of `self - other`.
    pub fn cmp_series(&self, other: &Self) -> Result<Ordering, FieldError> {
        Ok(match (self - other).sign()? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn classify(&self) -> Result<Magnitude, FieldError> {
        let Some((e, c)) = self.terms.first() else {
            return if self.is_exact() {
                Ok(Magnitude {
                    class: MagnitudeClass::Infinitesimal,
                    sign: Sign::Zero,
                })
            } else {
                Err(FieldError::IndeterminateZero)
            };
        };
        let class = match e.cmp(&Exponent::zero()) {
            Ordering::Less => MagnitudeClass::Infinite,
            Ordering::Equal => MagnitudeClass::AppreciableLimited,
            Ordering::Greater => MagnitudeClass::Infinitesimal,
        };
        Ok(Magnitude {
            class,
            sign: c.sign(),
        })
    }

    /// The unique standard number infinitely close to a limited value.
    pub fn standard_part(&self) -> Result<C, FieldError> {
        if self.classify()?.is_infinite() {
            return Err(FieldError::InfinitePart);
        }
        if let Some(c) = self.coefficient(Exponent::zero()) {
            return Ok(c.clone());
        }
        if self.validity > Validity::Order(Exponent::zero()) {
            Ok(C::zero())
        } else {
            Err(FieldError::IndeterminateZero)
        }
    }

    fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        Self::build(
            self.terms.iter().map(|(e, c)| (*e, f(c))).collect(),
            self.validity,
            self.prec,
        )
    }

    /// Product with a coefficient.
    pub fn scale(&self, c: &C) -> Self {
        if c.sign() == Sign::Zero {
            return Self::zero(self.prec);
        }
        self.map_coefficients(|x| x.clone() * c.clone())
    }

    /// Exact product with `ε^e`. Terms pushed past the global order are dropped.
    pub fn shift(&self, e: Exponent) -> Result<Self, FieldError> {
        Self::from_terms(
            self.terms.iter().map(|(x, c)| (*x + e, c.clone())),
            self.validity.shift(e),
            self.prec,
        )
    }

    fn add_impl(&self, o: &Self, negate: bool) -> Self {
        let prec = self.prec.min(o.prec);
        let validity = self.validity.min(o.validity);
        let mut map: BTreeMap<Exponent, C> = BTreeMap::new();
        for (e, c) in &self.terms {
            if validity.admits(*e) {
                map.insert(*e, c.clone());
            }
        }
        for (e, c) in &o.terms {
            if !validity.admits(*e) {
                continue;
            }
            let c = if negate { -c.clone() } else { c.clone() };
            match map.remove(e) {
                Some(old) => map.insert(*e, old + c),
                None => map.insert(*e, c),
            };
        }
        Self::build(map, validity, prec)
    }

    /// Product truncated below `cap`; exact when no term had to be dropped.
    fn mul_capped(&self, o: &Self, prec: Precision, cap: Exponent) -> Self {
        let (lx, ly) = (self.low_bound(), o.low_bound());
        if lx.is_exact() || ly.is_exact() {
            // one factor is exactly zero
            return Self::zero(prec);
        }
        let (vx, vy) = (lx.order().unwrap(), ly.order().unwrap());
        let mut validity = self.validity.shift(vy).min(o.validity.shift(vx));
        let mut map: BTreeMap<Exponent, Vec<C>> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = *e1 + *e2;
                if !validity.admits(e) {
                    continue;
                }
                if e >= cap {
                    validity = validity.min(Validity::Order(cap));
                    continue;
                }
                map.entry(e).or_default().push(c1.clone() * c2.clone());
            }
        }
        let summed = map
            .into_iter()
            .filter(|(e, _)| validity.admits(*e))
            .map(|(e, parts)| (e, balanced_sum(parts)))
            .collect();
        Self::build_uncapped(summed, validity, prec)
    }

    /// Like `build`, for callers that already enforced their own cap.
    fn build_uncapped(map: BTreeMap<Exponent, C>, validity: Validity, prec: Precision) -> Self {
        let terms = map
            .into_iter()
            .filter(|(e, c)| validity.admits(*e) && c.sign() != Sign::Zero)
            .collect();
        Series {
            terms,
            validity,
            prec,
        }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        self.mul_capped(o, prec, prec.cap())
    }

    /// Splits a nonzero value as `c ε^v (1 + u)` with `u` of positive valuation.
    /// `u` carries the relative validity `ω - v`.
    fn split_leading(&self) -> Result<(C, Exponent, Self), FieldError> {
        let (v, c) = match self.terms.first() {
            Some((e, c)) => (*e, c.clone()),
            None if self.is_exact() => return Err(FieldError::InversionOfZero),
            None => return Err(FieldError::IndeterminateZero),
        };
        let mut rest = Vec::with_capacity(self.terms.len().saturating_sub(1));
        for (e, x) in &self.terms[1..] {
            rest.push((*e - v, x.checked_div(&c)?));
        }
        let u = Series {
            terms: rest,
            validity: self.validity.shift(-v),
            prec: self.prec,
        };
        Ok((c, v, u))
    }

    /// Exponents below `cap` that are finite sums of exponents of `u`,
    /// including 0, ascending: the support of any power series in `u`.
    fn exponent_semigroup(u: &Self, cap: Exponent) -> Vec<Exponent> {
        let gens: Vec<Exponent> = u.terms.iter().map(|(e, _)| *e).filter(|e| *e < cap).collect();
        let mut seen = BTreeSet::from([Exponent::zero()]);
        let mut todo = vec![Exponent::zero()];
        while let Some(g) = todo.pop() {
            for e in &gens {
                let n = g + *e;
                if n < cap && seen.insert(n) {
                    todo.push(n);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Coefficients of `f(u)` for `f = 1/(1+u)` or `f = √(1+u)`, by the
    /// recurrences `t = 1 - u t` and `2s = 1 + u - (s - 1)²`, over the
    /// exponents below `cap`.
    fn unit_expansion(u: &Self, cap: Exponent, root: bool) -> BTreeMap<Exponent, C> {
        let mut out: BTreeMap<Exponent, C> = BTreeMap::from([(Exponent::zero(), C::one())]);
        let half = C::from_rational(BigRational::new(1.into(), 2.into()));
        for g in Self::exponent_semigroup(u, cap).into_iter().skip(1) {
            let mut parts = Vec::new();
            if root {
                for (a, sa) in out.range(..g).skip(1) {
                    if let Some(sb) = out.get(&(g - *a)) {
                        parts.push(sa.clone() * sb.clone());
                    }
                }
                let cross = balanced_sum(parts);
                let ug = u.coefficient(g).cloned().unwrap_or_else(C::zero);
                let sg = (ug - cross) * half.clone();
                if sg.sign() != Sign::Zero {
                    out.insert(g, sg);
                }
            } else {
                for (a, ua) in u.terms.iter().take_while(|(a, _)| *a <= g) {
                    if let Some(tb) = out.get(&(g - *a)) {
                        parts.push(ua.clone() * tb.clone());
                    }
                }
                let tg = -balanced_sum(parts);
                if tg.sign() != Sign::Zero {
                    out.insert(g, tg);
                }
            }
        }
        out
    }

    /// Multiplicative inverse: invert the leading term and expand
    /// `1/(1+u)` for the remainder.
    pub fn inv(&self) -> Result<Self, FieldError> {
        let (c, v, u) = self.split_leading()?;
        let prec = self.prec;
        // result is valid below min(ω - 2v, K); relative to ε^{-v}, that is:
        let rel = u.relative_validity(prec.cap() + v);
        let cap = rel.order().unwrap_or_else(|| prec.cap() + v);
        let s = Self::build_uncapped(Self::unit_expansion(&u, cap, false), rel, prec);
        let inv_c = C::one().checked_div(&c)?;
        s.scale(&inv_c).shift(-v)
    }

    /// Validity of an expansion in `u`: exact only when `u` is exactly zero.
    fn relative_validity(&self, cap: Exponent) -> Validity {
        if self.terms.is_empty() && self.is_exact() {
            Validity::Exact
        } else {
            self.validity.min(Validity::Order(cap))
        }
    }

    fn truncate_rel(self, rel: Validity) -> Self {
        let validity = self.validity.min(rel);
        Series {
            terms: self
                .terms
                .into_iter()
                .filter(|(e, _)| validity.admits(*e))
                .collect(),
            validity,
            prec: self.prec,
        }
    }

    /// Adds an `O(ε^order)` error term.
    pub fn truncated_at(&self, order: Exponent) -> Self {
        self.clone().truncate_rel(Validity::Order(order))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self * &o.inv()?)
    }

    /// Square root of a nonnegative value via the binomial series of
    /// `(1 + u)^{1/2}`.
    pub fn sqrt(&self) -> Result<Self, FieldError> {
        if self.terms.is_empty() {
            return if self.is_exact() {
                Ok(self.clone())
            } else {
                Err(FieldError::IndeterminateZero)
            };
        }
        let (c, v, u) = self.split_leading()?;
        if c.sign() == Sign::Negative {
            return Err(FieldError::NegativeRadicand);
        }
        let prec = self.prec;
        let half_v = v / 2;
        if *half_v.denom() > prec.max_denominator() {
            return Err(FieldError::SqrtDepthExceeded);
        }
        let rel = u.relative_validity(prec.cap() - half_v);
        let cap = rel.order().unwrap_or_else(|| prec.cap() - half_v);
        let sum = Self::build_uncapped(Self::unit_expansion(&u, cap, true), rel, prec);
        let root_c = c.checked_sqrt()?;
        sum.scale(&root_c).shift(half_v)
    }

    /// Integer power; negative exponents go through [`Series::inv`].
    pub fn powi(&self, n: i64) -> Result<Self, FieldError> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Series::one(self.prec);
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

fn balanced_sum<C: Coefficient>(mut parts: Vec<C>) -> C {
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap_or_else(C::zero)
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<C: Coefficient> $tr<&Series<C>> for &Series<C> {
            type Output = Series<C>;
            fn $method(self, rhs: &Series<C>) -> Series<C> {
                $body(self, rhs)
            }
        }
        impl<C: Coefficient> $tr<Series<C>> for Series<C> {
            type Output = Series<C>;
            fn $method(self, rhs: Series<C>) -> Series<C> {
                $body(&self, &rhs)
            }
        }
        impl<C: Coefficient> $tr<&Series<C>> for Series<C> {
            type Output = Series<C>;
            fn $method(self, rhs: &Series<C>) -> Series<C> {
                $body(&self, rhs)
            }
        }
        impl<C: Coefficient> $tr<Series<C>> for &Series<C> {
            type Output = Series<C>;
            fn $method(self, rhs: Series<C>) -> Series<C> {
                $body(self, &rhs)
            }
        }
    };
}

series_binop!(Add, add, |a: &Series<C>, b: &Series<C>| a.add_impl(b, false));
series_binop!(Sub, sub, |a: &Series<C>, b: &Series<C>| a.add_impl(b, true));
series_binop!(Mul, mul, |a: &Series<C>, b: &Series<C>| a.mul_impl(b));

impl<C: Coefficient> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            validity: self.validity,
            prec: self.prec,
        }
    }
}

impl<C: Coefficient> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        -&self
    }
}

fn fmt_exponent(e: &Exponent) -> String {
    if e.is_one() {
        "e".to_string()
    } else if e.is_integer() && !e.is_negative() {
        format!("e^{}", e.numer())
    } else if e.is_integer() {
        format!("e^({})", e.numer())
    } else {
        format!("e^({}/{})", e.numer(), e.denom())
    }
}

fn fmt_rational_abs(q: &BigRational) -> String {
    let q = q.abs();
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    /// Canonical text form, e.g. `3 + 2*e^(1/2) - e^2 (O(e^16))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.sign() == Sign::Negative;
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = match c.as_rational() {
                Some(q) => {
                    let mag = fmt_rational_abs(&q);
                    if e.is_zero() {
                        mag
                    } else if q.abs().is_one() {
                        fmt_exponent(e)
                    } else {
                        format!("{mag}*{}", fmt_exponent(e))
                    }
                }
                None => {
                    let mag = if negative { -c.clone() } else { c.clone() };
                    if e.is_zero() {
                        mag.to_string()
                    } else {
                        format!("{mag}*{}", fmt_exponent(e))
                    }
                }
            };
            write!(f, "{body}")?;
        }
        if let Validity::Order(q) = self.validity {
            write!(f, " (O({}))", fmt_exponent(&q))?;
        }
        Ok(())
    }
}

impl<C: Coefficient> Series<C> {
    /// Standard part rendered to `f64`, for plotting.
    pub fn standard_f64(&self) -> Result<f64, FieldError>
    where
        C: ToF64,
    {
        Ok(self.standard_part()?.approx_f64())
    }
}

/// Decimal rendering of a coefficient.
pub trait ToF64 {
    fn approx_f64(&self) -> f64;
}

impl ToF64 for crate::coeff::ConstructibleReal {
    fn approx_f64(&self) -> f64 {
        self.to_f64()
    }
}

impl ToF64 for BigRational {
    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}
