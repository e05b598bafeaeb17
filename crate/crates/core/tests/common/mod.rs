//! Shared generators and oracles for the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semieuclid::{ConstructibleReal, Exponent, FieldError, Precision, SeriesNumber, Sign, Validity};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn cr(n: i64) -> ConstructibleReal {
    ConstructibleReal::from_integer(n)
}

pub fn sqrt(x: &ConstructibleReal) -> ConstructibleReal {
    x.checked_sqrt().unwrap()
}

/// Constructible expression tree, kept separately so that an independent
/// oracle can evaluate it.
#[derive(Clone, Debug)]
pub enum Expr {
    Rat(i64, i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `sqrt(x^2 + k)` with `k >= 0`, always defined.
    Sqrt(Box<Expr>, i64),
}

impl Expr {
    /// `None` when a divisor is exactly zero.
    pub fn build(&self) -> Option<ConstructibleReal> {
        Some(match self {
            Expr::Rat(n, d) => ConstructibleReal::ratio(*n, *d),
            Expr::Add(a, b) => a.build()? + b.build()?,
            Expr::Sub(a, b) => a.build()? - b.build()?,
            Expr::Mul(a, b) => a.build()? * b.build()?,
            Expr::Div(a, b) => a.build()?.checked_div(&b.build()?).ok()?,
            Expr::Sqrt(a, k) => {
                let x = a.build()?;
                (&x * &x + cr(*k)).checked_sqrt().expect("nonnegative radicand")
            }
        })
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Rat(..) => 1,
            Expr::Sqrt(a, _) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

pub fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Expr::Rat(n, d));
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(a.into(), b.into())),
            (inner, 0i64..=5).prop_map(|(a, k)| Expr::Sqrt(a.into(), k)),
        ]
    })
}

/// Seeded random expression of bounded depth.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return Expr::Rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
    }
    let mut sub = || Box::new(random_expr(rng, depth - 1));
    let (a, b) = (sub(), sub());
    match rng.gen_range(0..5) {
        0 => Expr::Add(a, b),
        1 => Expr::Sub(a, b),
        2 => Expr::Mul(a, b),
        3 => Expr::Div(a, b),
        _ => Expr::Sqrt(a, rng.gen_range(0..=5)),
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational interval with endpoints on the grid `2^-bits`.
#[derive(Clone, Debug)]
pub struct Iv {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn grid(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits)
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let g = grid(bits);
    BigRational::new((x * &g).floor().to_integer(), g.to_integer())
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let g = grid(bits);
    BigRational::new((x * &g).ceil().to_integer(), g.to_integer())
}

impl Iv {
    fn new(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        Iv {
            lo: round_down(&lo, bits),
            hi: round_up(&hi, bits),
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn meets(&self, lo: &BigRational, hi: &BigRational) -> bool {
        &self.lo <= hi && lo <= &self.hi
    }
}

fn sqrt_floor(x: &BigRational, bits: u32) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let scaled = (x * grid(2 * bits)).floor().to_integer();
    BigRational::new(scaled.sqrt(), BigInt::one() << bits)
}

fn sqrt_ceil(x: &BigRational, bits: u32) -> BigRational {
    let scaled = (x * grid(2 * bits)).ceil().to_integer();
    let r = scaled.sqrt();
    let r = if &r * &r == scaled { r } else { r + 1 };
    BigRational::new(r, BigInt::one() << bits)
}

/// Interval evaluation with outward rounding at `bits` fractional bits.
/// `None` when a divisor's interval contains zero.
pub fn oracle(e: &Expr, bits: u32) -> Option<Iv> {
    Some(match e {
        Expr::Rat(n, d) => Iv::new(q(*n, *d), q(*n, *d), bits),
        Expr::Add(a, b) => {
            let (a, b) = (oracle(a, bits)?, oracle(b, bits)?);
            Iv::new(&a.lo + &b.lo, &a.hi + &b.hi, bits)
        }
        Expr::Sub(a, b) => {
            let (a, b) = (oracle(a, bits)?, oracle(b, bits)?);
            Iv::new(&a.lo - &b.hi, &a.hi - &b.lo, bits)
        }
        Expr::Mul(a, b) => mul(&oracle(a, bits)?, &oracle(b, bits)?, bits),
        Expr::Div(a, b) => {
            let b = oracle(b, bits)?;
            if b.contains_zero() {
                return None;
            }
            let r = Iv::new(b.hi.recip(), b.lo.recip(), bits);
            mul(&oracle(a, bits)?, &r, bits)
        }
        Expr::Sqrt(a, k) => {
            let a = oracle(a, bits)?;
            let sq = mul(&a, &a, bits);
            let lo = if a.contains_zero() { BigRational::zero() } else { sq.lo };
            let k = q(*k, 1);
            Iv::new(sqrt_floor(&(lo + &k), bits), sqrt_ceil(&(sq.hi + &k), bits), bits)
        }
    })
}

fn mul(a: &Iv, b: &Iv, bits: u32) -> Iv {
    let ps = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = ps.iter().min().unwrap().clone();
    let hi = ps.iter().max().unwrap().clone();
    Iv::new(lo, hi, bits)
}

/// Algebraic identities whose value is exactly zero.
pub fn engineered_zeros() -> Vec<(&'static str, ConstructibleReal)> {
    let s = |n: i64| sqrt(&cr(n));
    let (s2, s3, s5, s6) = (s(2), s(3), s(5), s(6));
    let phi = (cr(1) + &s5) * ConstructibleReal::ratio(1, 2);
    let plus = sqrt(&(&s2 + cr(1)));
    let minus = sqrt(&(&s2 - cr(1)));
    vec![
        ("sqrt2*sqrt8 - 4", &s2 * &s(8) - cr(4)),
        ("sqrt2 + sqrt8 - 3 sqrt2", &s2 + &s(8) - cr(3) * &s2),
        ("sqrt3^2 - 3", &s3 * &s3 - cr(3)),
        ("sqrt(3 + 2 sqrt2) - 1 - sqrt2", sqrt(&(cr(3) + cr(2) * &s2)) - cr(1) - &s2),
        ("sqrt(5 + 2 sqrt6) - sqrt2 - sqrt3", sqrt(&(cr(5) + cr(2) * &s6)) - &s2 - &s3),
        ("(sqrt2 + sqrt3)^2 - 5 - 2 sqrt6", (&s2 + &s3) * (&s2 + &s3) - cr(5) - cr(2) * &s6),
        ("1/(sqrt2 - 1) - sqrt2 - 1", cr(1) / (&s2 - cr(1)) - &s2 - cr(1)),
        ("sqrt12 - 2 sqrt3", s(12) - cr(2) * &s3),
        ("sqrt(1 + sqrt2)^2 - 1 - sqrt2", &plus * &plus - cr(1) - &s2),
        ("sqrt(7 + 4 sqrt3) - 2 - sqrt3", sqrt(&(cr(7) + cr(4) * &s3)) - cr(2) - &s3),
        ("phi^2 - phi - 1", &phi * &phi - &phi - cr(1)),
        ("sqrt2*sqrt3 - sqrt6", &s2 * &s3 - &s6),
        ("sqrt(1/2) - sqrt2/2", sqrt(&ConstructibleReal::ratio(1, 2)) - &s2 * ConstructibleReal::ratio(1, 2)),
        ("(1 + sqrt2)(1 - sqrt2) + 1", (cr(1) + &s2) * (cr(1) - &s2) + cr(1)),
        ("sqrt(sqrt16) - 2", sqrt(&s(16)) - cr(2)),
        ("sqrt(6 - 2 sqrt5) - sqrt5 + 1", sqrt(&(cr(6) - cr(2) * &s5)) - &s5 + cr(1)),
        ("sqrt50 - 5 sqrt2", s(50) - cr(5) * &s2),
        (
            "(sqrt2 + sqrt3 + sqrt5)(sqrt2 + sqrt3 - sqrt5) - 2 sqrt6",
            (&s2 + &s3 + &s5) * (&s2 + &s3 - &s5) - cr(2) * &s6,
        ),
        ("sqrt(11 + 6 sqrt2) - 3 - sqrt2", sqrt(&(cr(11) + cr(6) * &s2)) - cr(3) - &s2),
        ("sqrt(sqrt2 + 1) sqrt(sqrt2 - 1) - 1", &plus * &minus - cr(1)),
    ]
}

pub const EXPONENTS: [(i64, i64); 9] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];

pub fn prec() -> Precision {
    Precision::default()
}

/// A series from `(exponent index, numerator, denominator, with sqrt 2)`
/// tuples, exact.
pub fn series_from(spec: &[(usize, i64, i64, bool)], prec: Precision) -> SeriesNumber {
    let root2 = sqrt(&cr(2));
    let terms: Vec<_> = spec
        .iter()
        .map(|&(i, n, d, r)| {
            let (en, ed) = EXPONENTS[i % EXPONENTS.len()];
            let mut c = ConstructibleReal::ratio(n, d);
            if r {
                c = c * &root2;
            }
            (Exponent::new(en, ed), c)
        })
        .collect();
    SeriesNumber::from_terms(terms, Validity::Exact, prec).unwrap()
}

pub fn series_strategy() -> impl Strategy<Value = SeriesNumber> {
    prop::collection::vec((0usize..EXPONENTS.len(), -6i64..=6, 1i64..=4, prop::bool::weighted(0.2)), 0..4)
        .prop_map(|spec| series_from(&spec, prec()))
}

/// Limited series: exponents `>= 0`.
pub fn limited_strategy() -> impl Strategy<Value = SeriesNumber> {
    prop::collection::vec((3usize..EXPONENTS.len(), -6i64..=6, 1i64..=4, prop::bool::weighted(0.2)), 0..4)
        .prop_map(|spec| series_from(&spec, prec()))
}

/// Infinitesimal series: exponents `> 0`.
pub fn infinitesimal_strategy() -> impl Strategy<Value = SeriesNumber> {
    prop::collection::vec((4usize..EXPONENTS.len(), -6i64..=6, 1i64..=4, prop::bool::weighted(0.2)), 0..4)
        .prop_map(|spec| series_from(&spec, prec()))
}

pub fn random_series(rng: &mut ChaCha8Rng, prec: Precision) -> SeriesNumber {
    let n = rng.gen_range(1..=4);
    let spec: Vec<_> = (0..n)
        .map(|_| {
            (
                rng.gen_range(0..EXPONENTS.len()),
                rng.gen_range(-6..=6),
                rng.gen_range(1..=4),
                rng.gen_bool(0.2),
            )
        })
        .collect();
    series_from(&spec, prec)
}

/// Zero through `O(ε^K)`.
pub fn zero_below_k(s: &SeriesNumber) -> bool {
    s.vanishes_below(s.precision().order)
}

/// Proptest settings with a fixed seed, so runs are reproducible.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5e31),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Taylor coefficients of tan at 0 from `tan' = 1 + tan^2`.
pub fn tan_taylor(n: usize) -> Vec<BigRational> {
    let mut a = vec![BigRational::zero(); n + 1];
    for k in 0..n {
        let mut s: BigRational = (0..=k).map(|i| &a[i] * &a[k - i]).sum();
        if k == 0 {
            s += BigRational::one();
        }
        a[k + 1] = s / BigRational::from_integer((k as i64 + 1).into());
    }
    a
}

/// Some derived value built from the field operations.
pub fn derived(x: &SeriesNumber, y: &SeriesNumber) -> Result<SeriesNumber, FieldError> {
    let one = SeriesNumber::one(x.precision());
    let e = SeriesNumber::epsilon(x.precision());
    let den = &(x * x) + &one;
    let root = (&(y * y) + &(&one + &e)).sqrt()?;
    Ok(&(x * &den.inv()?) + &(&root * y))
}
