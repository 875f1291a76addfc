//! Seeded random inputs for the randomized identity checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::rational::{rat, HalfInt, Rational, Weight};
use crate::superfn::{Parity, SuperFn};
use crate::symbol::Symbol;

pub const DEFAULT_MAX_DEGREE: usize = 6;

/// Generator of small exact test inputs.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub max_degree: usize,
}

impl Sampler {
    pub fn new(seed: u64, max_degree: usize) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_degree,
        }
    }

    /// Numerator in [-9, 9], denominator in [1, 6].
    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=6))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != rat(0, 1) {
                return r;
            }
        }
    }

    pub fn weight(&mut self) -> Weight {
        self.rational()
    }

    /// Polynomial of degree at most `max_degree`; about half the coefficients are zero.
    pub fn poly(&mut self) -> Poly {
        let deg = self.rng.gen_range(0..=self.max_degree);
        let coeffs = (0..=deg)
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    self.rational()
                } else {
                    rat(0, 1)
                }
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Random superfunction, restricted to one parity if asked.
    pub fn superfn(&mut self, parity: Option<Parity>) -> SuperFn {
        let even = parity != Some(Parity::Odd);
        let odd = parity != Some(Parity::Even);
        let pick = |on: bool, s: &mut Self| if on { s.poly() } else { Poly::zero() };
        let f0 = pick(even, self);
        let f1 = pick(odd, self);
        let f2 = pick(odd, self);
        let f12 = pick(even, self);
        SuperFn::new(f0, f1, f2, f12)
    }

    pub fn parity(&mut self) -> Parity {
        if self.rng.gen_bool(0.5) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Homogeneous symbol of degree `k`.
    pub fn symbol(&mut self, k: HalfInt, delta: &Weight, parity: Parity) -> Symbol {
        let f1 = self.superfn(Some(parity));
        let f2 = if k == HalfInt::ZERO {
            SuperFn::zero()
        } else {
            self.superfn(Some(parity))
        };
        Symbol::new(k, delta.clone(), f1, f2).expect("f2 vanishes at degree 0")
    }

    pub fn gen_range(&mut self, range: std::ops::RangeInclusive<i64>) -> i64 {
        self.rng.gen_range(range)
    }
}
