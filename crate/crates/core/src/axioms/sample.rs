use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::ConstructibleReal;
use crate::field::{Exponent, Precision, Validity};
use crate::geom::Point;
use crate::SeriesNumber;

/// Seeded source of small exact values.
pub(crate) struct Sampler {
    rng: ChaCha8Rng,
    prec: Precision,
}

impl Sampler {
    pub(crate) fn new(seed: u64, stream: u64, prec: Precision) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng, prec }
    }

    pub(crate) fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `p/q` with `|p| <= bound`, `1 <= q <= den`.
    pub(crate) fn rational(&mut self, bound: i64, den: i64) -> BigRational {
        let p = self.rng.gen_range(-bound..=bound);
        let q = self.rng.gen_range(1..=den);
        BigRational::new(p.into(), q.into())
    }

    pub(crate) fn positive_rational(&mut self, bound: i64, den: i64) -> BigRational {
        let p = self.rng.gen_range(1..=bound);
        let q = self.rng.gen_range(1..=den);
        BigRational::new(p.into(), q.into())
    }

    /// `Σ c_i ε^i` over the given exponents, with rational `c_i`.
    pub(crate) fn series(&mut self, exponents: &[i64], bound: i64, den: i64) -> SeriesNumber {
        let terms: Vec<_> = exponents
            .iter()
            .map(|&e| {
                (
                    Exponent::from_integer(e),
                    ConstructibleReal::from_rational(self.rational(bound, den)),
                )
            })
            .collect();
        SeriesNumber::from_terms(terms, Validity::Exact, self.prec).expect("integer exponents")
    }

    /// `r0 + r1 ε + r2 ε^2`.
    pub(crate) fn limited(&mut self) -> SeriesNumber {
        self.series(&[0, 1, 2], 12, 6)
    }

    /// `r1 ε + r2 ε^2`.
    pub(crate) fn infinitesimal(&mut self) -> SeriesNumber {
        self.series(&[1, 2], 12, 6)
    }

    pub(crate) fn point(&mut self) -> Point {
        Point::new(self.limited(), self.limited())
    }

    /// A limited point whose coordinates also carry square roots of small
    /// integers.
    pub(crate) fn radical_point(&mut self) -> Point {
        const ROOTS: [i64; 3] = [2, 3, 5];
        let coord = |s: &mut Self| {
            let k = ROOTS[s.index(ROOTS.len())];
            let root = ConstructibleReal::from_integer(k)
                .checked_sqrt()
                .expect("positive");
            let c = ConstructibleReal::from_rational(s.rational(6, 4)) * root;
            s.limited() + SeriesNumber::constant(c, s.prec)
        };
        let x = coord(self);
        let y = coord(self);
        Point::new(x, y)
    }
}
