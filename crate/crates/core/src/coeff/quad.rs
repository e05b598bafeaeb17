//! Canonical form for elements of multiquadratic fields `Q(sqrt(p1), ..., sqrt(pk))`.
//!
//! An element is stored as `sum q_m * sqrt(m)` over squarefree radicands `m`,
//! each kept as its sorted list of prime factors. Square roots of distinct
//! squarefree integers are linearly independent over the rationals, so this
//! form is canonical: the element is zero iff the map is empty.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use malachite_base::num::arithmetic::traits::Sign as _;
use malachite_base::num::logic::traits::SignificantBits;
use malachite_nz::natural::Natural;
use malachite_q::Rational;
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::Enclosure;
use super::Sign;

/// Sorted distinct primes; the empty list stands for 1.
pub type Radicand = Vec<u64>;

/// Coefficients use malachite rationals, whose gcd is much faster than
/// num-bigint's on the long numerators that series arithmetic produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSum {
    terms: BTreeMap<Radicand, Rational>,
}

fn natural_from(n: &BigUint) -> Natural {
    Natural::from_limbs_asc(&n.to_u64_digits())
}

fn biguint_from(n: &Natural) -> BigUint {
    let digits: Vec<u32> = n
        .to_limbs_asc()
        .into_iter()
        .flat_map(|l| [l as u32, (l >> 32) as u32])
        .collect();
    BigUint::new(digits)
}

fn to_fast(q: &BigRational) -> Rational {
    Rational::from_sign_and_naturals(
        !q.is_negative(),
        natural_from(q.numer().magnitude()),
        natural_from(q.denom().magnitude()),
    )
}

fn to_big(q: &Rational) -> BigRational {
    let sign = if *q < 0u32 { BigSign::Minus } else { BigSign::Plus };
    BigRational::new_raw(
        BigInt::from_biguint(sign, biguint_from(q.numerator_ref())),
        BigInt::from(biguint_from(q.denominator_ref())),
    )
}

/// Exact rational square root, if there is one.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

fn is_positive(q: &Rational) -> bool {
    q.sign() == std::cmp::Ordering::Greater
}

/// Splits `n` into `s^2 * m` with `m` squarefree, returning `(s, primes of m)`.
///
/// Gives up (returns `None`) when `n` cannot be fully factored or has a prime
/// factor above `u64::MAX`.
pub fn square_free_split(n: &BigUint) -> Option<(BigUint, Radicand)> {
    if n.is_zero() {
        return Some((BigUint::zero(), Vec::new()));
    }
    let (found, rest) = num_prime::nt_funcs::factors(n.clone(), None);
    if rest.is_some_and(|r| !r.is_empty()) {
        return None;
    }
    let mut square = BigUint::one();
    let mut primes = Vec::new();
    for (p, k) in found {
        square *= p.pow(k as u32 / 2);
        if k % 2 == 1 {
            primes.push(p.to_u64()?);
        }
    }
    Some((square, primes))
}

fn merge(a: &Radicand, b: &Radicand) -> (Radicand, Natural) {
    let mut out = Vec::new();
    let mut common = Natural::from(1u32);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            common *= Natural::from(a[i]);
            i += 1;
            j += 1;
        }
    }
    (out, common)
}

fn radicand_value(r: &Radicand) -> BigUint {
    r.iter().fold(BigUint::one(), |acc, &p| acc * p)
}

fn log2_radicand(r: &Radicand) -> f64 {
    r.iter().map(|&p| (p as f64).log2() + 1e-9).sum()
}

impl QuadSum {
    pub fn zero() -> Self {
        QuadSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), to_fast(&q));
        }
        QuadSum { terms }
    }

    /// Exact square root of a nonnegative rational, if its radicand can be factored.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        debug_assert!(!q.is_negative());
        let n = (q.numer() * q.denom()).to_biguint()?;
        let (s, primes) = square_free_split(&n)?;
        let coeff = BigRational::new(BigInt::from(s), q.denom().clone());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(primes, to_fast(&coeff));
        }
        Some(QuadSum { terms })
    }

    /// Square root of a positive `a + b*sqrt(m)` with rational `a`, `b`, when
    /// it denests: `a^2 - b^2 m = d^2` gives
    /// `sqrt((a + d)/2) + sign(b) sqrt((a - d)/2)`.
    pub fn sqrt_denested(&self) -> Option<Self> {
        if self.terms.len() != 2 {
            return None;
        }
        let a = to_big(self.terms.get(&Vec::new())?);
        let (k, b) = self.terms.iter().find(|(k, _)| !k.is_empty())?;
        let b = to_big(b);
        let m = BigRational::from_integer(radicand_value(k).into());
        let disc = &a * &a - &b * &b * m;
        let d = rational_sqrt(&disc)?;
        let two = BigRational::from_integer(2.into());
        let x = QuadSum::sqrt_rational(&((&a + &d) / &two))?;
        let y = QuadSum::sqrt_rational(&((&a - &d) / &two))?;
        Some(if b.is_positive() { x.add(&y) } else { x.sub(&y) })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).map(to_big),
            _ => None,
        }
    }

    pub fn primes(&self) -> BTreeSet<u64> {
        self.terms.keys().flatten().copied().collect()
    }

    fn insert(&mut self, key: Radicand, c: Rational) {
        if c == 0u32 {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s == 0u32 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        QuadSum {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(k.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = QuadSum::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let (k, common) = merge(k1, k2);
                let mut c = c1 * c2;
                if common != 1 {
                    c *= Rational::from(common);
                }
                out.insert(k, c);
            }
        }
        out
    }

    /// Multiplicative inverse by successive conjugation; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(QuadSum::rational(q.recip()));
        }
        let p = *self.terms.keys().flatten().max().expect("irrational term");
        // self = free + with_p * sqrt(p)
        let mut conj = QuadSum::zero();
        for (k, c) in &self.terms {
            if k.contains(&p) {
                conj.insert(k.clone(), -c);
            } else {
                conj.insert(k.clone(), c.clone());
            }
        }
        let norm = self.mul(&conj);
        debug_assert!(!norm.primes().contains(&p));
        Some(conj.mul(&norm.inv()?))
    }

    pub fn enclosure(&self, prec: u64) -> Enclosure {
        let mut acc = Enclosure::point_rational(&BigRational::zero(), prec);
        for (k, c) in &self.terms {
            let c = to_big(c);
            let e = if k.is_empty() {
                Enclosure::point_rational(&c, prec)
            } else {
                Enclosure::sqrt_uint(&radicand_value(k), prec).scale(&c)
            };
            acc = acc.add(&e);
        }
        acc
    }

    pub fn sign(&self) -> Sign {
        let mut pos = false;
        let mut neg = false;
        for c in self.terms.values() {
            if is_positive(c) {
                pos = true;
            } else {
                neg = true;
            }
        }
        match (pos, neg) {
            (false, false) => return Sign::Zero,
            (true, false) => return Sign::Positive,
            (false, true) => return Sign::Negative,
            _ => {}
        }
        if self.terms.len() == 2 {
            // a*sqrt(m) + b*sqrt(n) with opposite signs: compare squares.
            let mut it = self.terms.iter();
            let (k1, c1) = it.next().unwrap();
            let (k2, c2) = it.next().unwrap();
            let s1 = c1 * c1 * Rational::from(natural_from(&radicand_value(k1)));
            let s2 = c2 * c2 * Rational::from(natural_from(&radicand_value(k2)));
            let dominant = if s1 > s2 { c1 } else { c2 };
            return if is_positive(dominant) {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }
        let mut prec = 64;
        loop {
            let e = self.enclosure(prec);
            if e.lo.is_positive() {
                return Sign::Positive;
            }
            if e.hi.is_negative() {
                return Sign::Negative;
            }
            prec *= 2;
        }
    }

    /// `(log2 u, log2 l)` for the algebraic-integer quotient bound of this value.
    pub fn log_bounds(&self) -> (f64, f64) {
        let mut acc: Option<(f64, f64)> = None;
        for (k, c) in &self.terms {
            let lu = c.numerator_ref().significant_bits() as f64 + log2_radicand(k) / 2.0;
            let ll = c.denominator_ref().significant_bits() as f64;
            acc = Some(match acc {
                None => (lu, ll),
                Some((u1, l1)) => (log2_sum(u1 + ll, l1 + lu), l1 + ll),
            });
        }
        acc.unwrap_or((0.0, 0.0))
    }
}

/// Upper bound on `log2(2^a + 2^b)`.
pub(crate) fn log2_sum(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2() + 1e-9
}

fn fmt_term(k: &Radicand, c: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if k.is_empty() {
        return write!(f, "{c}");
    }
    let m = radicand_value(k);
    if *c == 1u32 {
        write!(f, "sqrt({m})")
    } else if *c == -1i32 {
        write!(f, "-sqrt({m})")
    } else if *c.denominator_ref() == 1u32 {
        write!(f, "{c}*sqrt({m})")
    } else {
        write!(f, "({c})*sqrt({m})")
    }
}

impl fmt::Display for QuadSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => write!(f, "0"),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                fmt_term(k, c, f)
            }
            _ => {
                write!(f, "(")?;
                for (i, (k, c)) in self.terms.iter().enumerate() {
                    if i > 0 {
                        if *c < 0u32 {
                            write!(f, " - ")?;
                            fmt_term(k, &-c, f)?;
                            continue;
                        }
                        write!(f, " + ")?;
                    }
                    fmt_term(k, c, f)?;
                }
                write!(f, ")")
            }
        }
    }
}
