//! Constructible reals as shared expression DAGs with an exact sign oracle.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Enclosure;
use super::quad::{log2_sum, QuadSum};
use super::{CoeffError, Sign};

const START_PRECISION: u64 = 64;

#[derive(Debug)]
enum Kind {
    /// Element of a multiquadratic field, including plain rationals.
    Const(QuadSum),
    Add(ConstructibleReal, ConstructibleReal),
    Sub(ConstructibleReal, ConstructibleReal),
    Mul(ConstructibleReal, ConstructibleReal),
    Div(ConstructibleReal, ConstructibleReal),
    Neg(ConstructibleReal),
    Sqrt(ConstructibleReal),
}

#[derive(Debug)]
struct Node {
    kind: Kind,
    /// log2 upper bounds `(u, l)` on conjugates of the algebraic-integer
    /// numerator and denominator of the value.
    log_u: f64,
    log_l: f64,
    /// Tightest enclosure computed so far. Entries are only ever replaced by
    /// higher-precision ones.
    cache: RwLock<Option<Arc<Enclosure>>>,
}

/// An exact real number obtained from rationals by `+ - * /` and square roots.
///
/// Values inside a multiquadratic field over the rationals are kept in a
/// canonical form, so most arithmetic folds to a constant. Everything else is
/// an expression DAG whose sign is decided by interval refinement, with zero
/// certified by a root-separation bound.
#[derive(Clone, Debug)]
pub struct ConstructibleReal(Arc<Node>);

impl ConstructibleReal {
    fn from_kind(kind: Kind) -> Self {
        let (log_u, log_l) = match &kind {
            Kind::Const(q) => q.log_bounds(),
            Kind::Add(a, b) | Kind::Sub(a, b) => (
                log2_sum(a.0.log_u + b.0.log_l, a.0.log_l + b.0.log_u),
                a.0.log_l + b.0.log_l,
            ),
            Kind::Mul(a, b) => (a.0.log_u + b.0.log_u, a.0.log_l + b.0.log_l),
            Kind::Div(a, b) => (a.0.log_u + b.0.log_l, a.0.log_l + b.0.log_u),
            Kind::Neg(a) => (a.0.log_u, a.0.log_l),
            Kind::Sqrt(a) => (a.0.log_u / 2.0, a.0.log_l / 2.0),
        };
        ConstructibleReal(Arc::new(Node {
            kind,
            log_u: log_u.max(0.0),
            log_l: log_l.max(0.0),
            cache: RwLock::new(None),
        }))
    }

    fn constant(q: QuadSum) -> Self {
        Self::from_kind(Kind::Const(q))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::constant(QuadSum::rational(q))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    fn as_const(&self) -> Option<&QuadSum> {
        match &self.0.kind {
            Kind::Const(q) => Some(q),
            _ => None,
        }
    }

    /// The value as a rational, if it is syntactically one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_const().and_then(QuadSum::as_rational)
    }

    /// True when the value is held in closed multiquadratic form (no DAG).
    pub fn is_folded(&self) -> bool {
        self.as_const().is_some()
    }

    fn is_literal_zero(&self) -> bool {
        self.as_const().is_some_and(QuadSum::is_zero)
    }

    fn is_literal_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn neg_ref(&self) -> Self {
        match &self.0.kind {
            Kind::Const(q) => Self::constant(q.neg()),
            Kind::Neg(a) => a.clone(),
            _ => Self::from_kind(Kind::Neg(self.clone())),
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Self::constant(a.add(b));
        }
        if self.is_literal_zero() {
            return o.clone();
        }
        if o.is_literal_zero() {
            return self.clone();
        }
        Self::from_kind(Kind::Add(self.clone(), o.clone()))
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Self::constant(a.sub(b));
        }
        if o.is_literal_zero() {
            return self.clone();
        }
        if self.is_literal_zero() {
            return o.neg_ref();
        }
        Self::from_kind(Kind::Sub(self.clone(), o.clone()))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Self::constant(a.mul(b));
        }
        if self.is_literal_zero() || o.is_literal_zero() {
            return Self::zero();
        }
        if self.is_literal_one() {
            return o.clone();
        }
        if o.is_literal_one() {
            return self.clone();
        }
        Self::from_kind(Kind::Mul(self.clone(), o.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, CoeffError> {
        if o.sign() == Sign::Zero {
            return Err(CoeffError::DivisionByZero);
        }
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            let inv = b.inv().ok_or(CoeffError::DivisionByZero)?;
            return Ok(Self::constant(a.mul(&inv)));
        }
        if self.is_literal_zero() {
            return Ok(Self::zero());
        }
        if o.is_literal_one() {
            return Ok(self.clone());
        }
        Ok(Self::from_kind(Kind::Div(self.clone(), o.clone())))
    }

    pub fn recip(&self) -> Result<Self, CoeffError> {
        Self::one().checked_div(self)
    }

    pub fn checked_sqrt(&self) -> Result<Self, CoeffError> {
        match self.sign() {
            Sign::Negative => return Err(CoeffError::NegativeRadicand),
            Sign::Zero => return Ok(Self::zero()),
            Sign::Positive => {}
        }
        if let Some(c) = self.as_const() {
            let root = match c.as_rational() {
                Some(q) => QuadSum::sqrt_rational(&q),
                None => c.sqrt_denested(),
            };
            if let Some(r) = root {
                return Ok(Self::constant(r));
            }
        }
        Ok(Self::from_kind(Kind::Sqrt(self.clone())))
    }

    /// Nodes reachable from `self` in post-order (children before parents),
    /// each listed once.
    fn post_order(&self) -> Vec<ConstructibleReal> {
        let mut seen: HashSet<*const Node> = HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<(ConstructibleReal, bool)> = vec![(self.clone(), false)];
        while let Some((n, expanded)) = stack.pop() {
            let ptr = Arc::as_ptr(&n.0);
            if expanded {
                out.push(n);
                continue;
            }
            if !seen.insert(ptr) {
                continue;
            }
            stack.push((n.clone(), true));
            match &n.0.kind {
                Kind::Const(_) => {}
                Kind::Add(a, b) | Kind::Sub(a, b) | Kind::Mul(a, b) | Kind::Div(a, b) => {
                    stack.push((b.clone(), false));
                    stack.push((a.clone(), false));
                }
                Kind::Neg(a) | Kind::Sqrt(a) => stack.push((a.clone(), false)),
            }
        }
        out
    }

    fn cached_at(&self, prec: u64) -> Option<Enclosure> {
        let guard = self.0.cache.read().expect("enclosure cache poisoned");
        guard
            .as_ref()
            .filter(|e| e.prec >= prec)
            .map(|e| e.at_precision(prec))
    }

    fn store(&self, e: &Enclosure) {
        let mut guard = self.0.cache.write().expect("enclosure cache poisoned");
        if guard.as_ref().is_none_or(|old| old.prec < e.prec) {
            *guard = Some(Arc::new(e.clone()));
        }
    }

    /// Enclosure of the value at absolute precision `prec`, or `None` when a
    /// divisor could not yet be separated from zero at this precision.
    fn enclosure_at(&self, prec: u64) -> Option<Enclosure> {
        if let Some(e) = self.cached_at(prec) {
            return Some(e);
        }
        let nodes = self.post_order();
        let mut memo: HashMap<*const Node, Option<Enclosure>> = HashMap::with_capacity(nodes.len());
        for n in &nodes {
            let get = |c: &ConstructibleReal, memo: &HashMap<*const Node, Option<Enclosure>>| {
                memo.get(&Arc::as_ptr(&c.0)).cloned().flatten()
            };
            let value = if let Some(e) = n.cached_at(prec) {
                Some(e)
            } else {
                let v = match &n.0.kind {
                    Kind::Const(q) => Some(q.enclosure(prec)),
                    Kind::Add(a, b) => get(a, &memo).zip(get(b, &memo)).map(|(x, y)| x.add(&y)),
                    Kind::Sub(a, b) => get(a, &memo).zip(get(b, &memo)).map(|(x, y)| x.sub(&y)),
                    Kind::Mul(a, b) => get(a, &memo).zip(get(b, &memo)).map(|(x, y)| x.mul(&y)),
                    Kind::Div(a, b) => get(a, &memo)
                        .zip(get(b, &memo))
                        .and_then(|(x, y)| x.div(&y)),
                    Kind::Neg(a) => get(a, &memo).map(|x| x.neg()),
                    Kind::Sqrt(a) => get(a, &memo).map(|x| x.sqrt()),
                };
                if let Some(e) = &v {
                    n.store(e);
                }
                v
            };
            memo.insert(Arc::as_ptr(&n.0), value);
        }
        memo.remove(&Arc::as_ptr(&self.0)).flatten()
    }

    /// log2 of the reciprocal separation bound: a nonzero value of this
    /// expression has absolute value at least `2^-bits`.
    pub fn separation_bits(&self) -> f64 {
        let nodes = self.post_order();
        let mut primes: BTreeSet<u64> = BTreeSet::new();
        let mut radicals = 0u32;
        for n in &nodes {
            match &n.0.kind {
                Kind::Const(q) => primes.extend(q.primes()),
                Kind::Sqrt(_) => radicals += 1,
                _ => {}
            }
        }
        let degree_log2 = f64::from(radicals) + primes.len() as f64;
        let degree = degree_log2.exp2();
        (degree - 1.0) * self.0.log_u + self.0.log_l + 1.0
    }

    pub fn sign(&self) -> Sign {
        if let Some(q) = self.as_const() {
            return q.sign();
        }
        let mut sep: Option<f64> = None;
        let mut prec = START_PRECISION;
        loop {
            if let Some(e) = self.enclosure_at(prec) {
                if e.lo.is_positive() {
                    return Sign::Positive;
                }
                if e.hi.is_negative() {
                    return Sign::Negative;
                }
                if e.lo.is_zero() && e.hi.is_zero() {
                    return Sign::Zero;
                }
                let bits = *sep.get_or_insert_with(|| self.separation_bits());
                // |value| <= width * 2^-prec < 2^-bits
                let width_bits = e.width().bits() as f64;
                if (prec as f64) - width_bits > bits {
                    return Sign::Zero;
                }
            }
            prec *= 2;
        }
    }

    /// A rational interval containing the value with width at most `width`.
    pub fn approx(&self, width: &BigRational) -> (BigRational, BigRational) {
        assert!(width.is_positive(), "approximation width must be positive");
        let mut prec = START_PRECISION;
        loop {
            if let Some(e) = self.enclosure_at(prec) {
                let (lo, hi) = (e.lo_rational(), e.hi_rational());
                if &(&hi - &lo) <= width {
                    return (lo, hi);
                }
            }
            prec *= 2;
        }
    }

    /// Midpoint of an enclosure of width `2^-40`, for rendering.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let w = BigRational::new(BigInt::one(), BigInt::one() << 40);
        let (lo, hi) = self.approx(&w);
        ((lo + hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Number of distinct DAG nodes; a folded constant counts as one.
    pub fn node_count(&self) -> usize {
        self.post_order().len()
    }

    /// Exact equality of values, decided by the sign of the difference.
    pub fn equals(&self, o: &Self) -> bool {
        self.sub_ref(o).sign() == Sign::Zero
    }
}

impl fmt::Display for ConstructibleReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Const(q) => {
                let needs_paren = q.as_rational().is_some_and(|r| r.is_negative());
                if needs_paren {
                    write!(f, "({q})")
                } else {
                    write!(f, "{q}")
                }
            }
            Kind::Add(a, b) => write!(f, "({a} + {b})"),
            Kind::Sub(a, b) => write!(f, "({a} - {b})"),
            Kind::Mul(a, b) => write!(f, "({a} * {b})"),
            Kind::Div(a, b) => write!(f, "({a} / {b})"),
            Kind::Neg(a) => write!(f, "(-{a})"),
            Kind::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

impl PartialEq for ConstructibleReal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<i64> for ConstructibleReal {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for ConstructibleReal {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&ConstructibleReal> for &ConstructibleReal {
            type Output = ConstructibleReal;
            fn $method(self, rhs: &ConstructibleReal) -> ConstructibleReal {
                self.$inner(rhs)
            }
        }
        impl $tr for ConstructibleReal {
            type Output = ConstructibleReal;
            fn $method(self, rhs: ConstructibleReal) -> ConstructibleReal {
                self.$inner(&rhs)
            }
        }
        impl $tr<ConstructibleReal> for &ConstructibleReal {
            type Output = ConstructibleReal;
            fn $method(self, rhs: ConstructibleReal) -> ConstructibleReal {
                self.$inner(&rhs)
            }
        }
        impl $tr<&ConstructibleReal> for ConstructibleReal {
            type Output = ConstructibleReal;
            fn $method(self, rhs: &ConstructibleReal) -> ConstructibleReal {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for ConstructibleReal {
    type Output = ConstructibleReal;
    /// Panics on a zero divisor; use [`ConstructibleReal::checked_div`] otherwise.
    fn div(self, rhs: ConstructibleReal) -> ConstructibleReal {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Neg for ConstructibleReal {
    type Output = ConstructibleReal;
    fn neg(self) -> ConstructibleReal {
        self.neg_ref()
    }
}

impl Neg for &ConstructibleReal {
    type Output = ConstructibleReal;
    fn neg(self) -> ConstructibleReal {
        self.neg_ref()
    }
}

impl Zero for ConstructibleReal {
    fn zero() -> Self {
        ConstructibleReal::zero()
    }
    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }
}

impl One for ConstructibleReal {
    fn one() -> Self {
        ConstructibleReal::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ConstructibleReal {
        ConstructibleReal::from_integer(n)
    }

    fn sqrt(x: &ConstructibleReal) -> ConstructibleReal {
        x.checked_sqrt().unwrap()
    }

    #[test]
    fn rational_folding() {
        let x = ConstructibleReal::ratio(1, 3) + ConstructibleReal::ratio(2, 3);
        assert_eq!(x.as_rational(), Some(BigRational::one()));
        assert!(x.is_folded());
    }

    #[test]
    fn sqrt_identities() {
        let s2 = sqrt(&int(2));
        let s8 = sqrt(&int(8));
        assert_eq!((&s2 * &s8 - int(4)).sign(), Sign::Zero);
        assert_eq!((&s2 + &s8 - &s2 * &int(3)).sign(), Sign::Zero);
        assert_eq!((sqrt(&int(4)) - int(2)).sign(), Sign::Zero);
        assert_eq!((&s2 * &s2 - int(2)).sign(), Sign::Zero);
        assert_eq!((&s2 + int(0)).as_rational(), None);
    }

    #[test]
    fn nested_radical_squares_back() {
        let inner = int(1) + sqrt(&int(2));
        let r = sqrt(&inner);
        assert!(!r.is_folded());
        assert_eq!((&r * &r - inner).sign(), Sign::Zero);
    }

    #[test]
    fn denested_radical_is_certified_zero() {
        // sqrt(3 + 2 sqrt 2) = 1 + sqrt 2
        let s2 = sqrt(&int(2));
        let r = sqrt(&(int(3) + int(2) * s2.clone()));
        assert_eq!((r - int(1) - s2).sign(), Sign::Zero);
    }

    #[test]
    fn sign_of_close_values() {
        let s2 = sqrt(&int(2));
        assert_eq!((s2.clone() - ConstructibleReal::ratio(707, 500)).sign(), Sign::Positive);
        assert_eq!((ConstructibleReal::ratio(707, 500) - s2).sign(), Sign::Negative);
        assert_eq!(int(0).sign(), Sign::Zero);
        // sqrt(1 + sqrt 2) - 1.5537739740300373 (slightly below)
        let r = sqrt(&(int(1) + sqrt(&int(2))));
        let lo = ConstructibleReal::ratio(15_537_739_740, 10_000_000_000);
        assert_eq!((r - lo).sign(), Sign::Positive);
    }

    #[test]
    fn errors() {
        assert_eq!(int(-1).checked_sqrt().unwrap_err(), CoeffError::NegativeRadicand);
        let s2 = sqrt(&int(2));
        let zero = &s2 * &s2 - int(2);
        assert_eq!(int(1).checked_div(&zero).unwrap_err(), CoeffError::DivisionByZero);
    }

    #[test]
    fn approximation_width_and_containment() {
        let w = BigRational::new(1.into(), 1_000_000.into());
        let (lo, hi) = sqrt(&int(2)).approx(&w);
        assert!(&hi - &lo <= w);
        let two = BigRational::from_integer(2.into());
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        let w3 = BigRational::new(1.into(), 1000.into());
        let (lo, hi) = ConstructibleReal::ratio(1, 3).approx(&w3);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo <= third && third <= hi);
    }

    #[test]
    fn display_is_parenthesized() {
        let x = ConstructibleReal::ratio(1, 3) + sqrt(&int(2));
        assert_eq!(x.to_string(), "(1/3 + sqrt(2))");
        let r = sqrt(&(int(1) + sqrt(&int(2))));
        assert_eq!((r + int(1)).to_string(), "(sqrt((1 + sqrt(2))) + 1)");
    }

    #[test]
    fn cache_only_narrows() {
        let r = sqrt(&(int(1) + sqrt(&int(2))));
        r.sign();
        let first = r.0.cache.read().unwrap().as_ref().unwrap().prec;
        let w = BigRational::new(1.into(), BigInt::one() << 300);
        r.approx(&w);
        let second = r.0.cache.read().unwrap().as_ref().unwrap().prec;
        assert!(second > first);
        r.approx(&BigRational::new(1.into(), 2.into()));
        assert_eq!(r.0.cache.read().unwrap().as_ref().unwrap().prec, second);
    }
}
