//! Superfunctions on S^{1|2}: the Grassmann algebra generated by two odd
//! coordinates `t1`, `t2` over polynomials in the even coordinate `x`.
//!
//! An element is stored as `f0 + t1*f1 + t2*f2 + t1*t2*f12`. Odd derivatives
//! act from the left, so `d/dt2 (t1 t2) = -t1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rational::{fmt_rational, int, Rational};

/// Z/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

impl Parity {
    pub fn from_bit(bit: u32) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    /// `(-1)^self`.
    pub fn sign(self) -> Rational {
        match self {
            Parity::Even => int(1),
            Parity::Odd => int(-1),
        }
    }

    /// `(-1)^(self * other)`.
    pub fn sign_with(self, other: Parity) -> Rational {
        Parity::from_bit(self.bit() * other.bit()).sign()
    }
}

/// Coordinate directions for partial derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    X,
    Theta1,
    Theta2,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuperFn {
    pub f0: Poly,
    pub f1: Poly,
    pub f2: Poly,
    pub f12: Poly,
}

impl SuperFn {
    pub fn new(f0: Poly, f1: Poly, f2: Poly, f12: Poly) -> Self {
        SuperFn { f0, f1, f2, f12 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        SuperFn {
            f0: Poly::constant(c),
            ..Self::default()
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        SuperFn {
            f0: p,
            ..Self::default()
        }
    }

    /// `c * x^n * t1^a * t2^b` with `a, b` in {0, 1}.
    pub fn monomial(c: Rational, n: usize, t1: bool, t2: bool) -> Self {
        let p = Poly::monomial(c, n);
        let mut out = SuperFn::zero();
        match (t1, t2) {
            (false, false) => out.f0 = p,
            (true, false) => out.f1 = p,
            (false, true) => out.f2 = p,
            (true, true) => out.f12 = p,
        }
        out
    }

    pub fn x() -> Self {
        Self::monomial(int(1), 1, false, false)
    }

    pub fn theta1() -> Self {
        Self::monomial(int(1), 0, true, false)
    }

    pub fn theta2() -> Self {
        Self::monomial(int(1), 0, false, true)
    }

    pub fn theta(i: u8) -> Self {
        match i {
            1 => Self::theta1(),
            2 => Self::theta2(),
            _ => panic!("odd coordinate index must be 1 or 2, got {i}"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f1.is_zero() && self.f2.is_zero() && self.f12.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> SuperFn {
        SuperFn {
            f0: self.f0.scale(c),
            f1: self.f1.scale(c),
            f2: self.f2.scale(c),
            f12: self.f12.scale(c),
        }
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> SuperFn {
        SuperFn {
            f0: f(&self.f0),
            f1: f(&self.f1),
            f2: f(&self.f2),
            f12: f(&self.f12),
        }
    }

    /// `(even, odd)` with `even + odd == self`.
    pub fn parity_split(&self) -> (SuperFn, SuperFn) {
        let even = SuperFn {
            f0: self.f0.clone(),
            f12: self.f12.clone(),
            ..SuperFn::default()
        };
        let odd = SuperFn {
            f1: self.f1.clone(),
            f2: self.f2.clone(),
            ..SuperFn::default()
        };
        (even, odd)
    }

    /// Parity of a homogeneous element; zero counts as even, mixed elements give `None`.
    pub fn parity(&self) -> Option<Parity> {
        let has_even = !self.f0.is_zero() || !self.f12.is_zero();
        let has_odd = !self.f1.is_zero() || !self.f2.is_zero();
        match (has_even, has_odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    /// Nonzero homogeneous pieces with their parities.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, SuperFn)> {
        let (even, odd) = self.parity_split();
        let mut parts = Vec::with_capacity(2);
        if !even.is_zero() {
            parts.push((Parity::Even, even));
        }
        if !odd.is_zero() {
            parts.push((Parity::Odd, odd));
        }
        parts
    }

    pub fn derive(&self, dir: Dir) -> SuperFn {
        match dir {
            Dir::X => self.map(Poly::derivative),
            // d/dt1 (t1 f1 + t1 t2 f12) = f1 + t2 f12
            Dir::Theta1 => SuperFn {
                f0: self.f1.clone(),
                f2: self.f12.clone(),
                ..SuperFn::default()
            },
            // d/dt2 (t2 f2 + t1 t2 f12) = f2 - t1 f12
            Dir::Theta2 => SuperFn {
                f0: self.f2.clone(),
                f1: -&self.f12,
                ..SuperFn::default()
            },
        }
    }

    /// `x`-derivative.
    pub fn dx(&self) -> SuperFn {
        self.derive(Dir::X)
    }

    /// Contact derivative `Dbar_i = d/dt_i - t_i d/dx`.
    pub fn dbar(&self, i: u8) -> SuperFn {
        let dir = match i {
            1 => Dir::Theta1,
            2 => Dir::Theta2,
            _ => panic!("contact derivative index must be 1 or 2, got {i}"),
        };
        &self.derive(dir) - &(&SuperFn::theta(i) * &self.dx())
    }

    /// Total number of stored rational coefficients, a rough size measure.
    pub fn len(&self) -> usize {
        self.f0.coeffs().len() + self.f1.coeffs().len() + self.f2.coeffs().len() + self.f12.coeffs().len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Highest power of `x` present in any component.
    pub fn x_degree(&self) -> Option<usize> {
        [&self.f0, &self.f1, &self.f2, &self.f12]
            .iter()
            .filter_map(|p| p.degree())
            .max()
    }
}

impl Add for &SuperFn {
    type Output = SuperFn;
    fn add(self, rhs: &SuperFn) -> SuperFn {
        SuperFn {
            f0: &self.f0 + &rhs.f0,
            f1: &self.f1 + &rhs.f1,
            f2: &self.f2 + &rhs.f2,
            f12: &self.f12 + &rhs.f12,
        }
    }
}

impl Add for SuperFn {
    type Output = SuperFn;
    fn add(self, rhs: SuperFn) -> SuperFn {
        &self + &rhs
    }
}

impl AddAssign<&SuperFn> for SuperFn {
    fn add_assign(&mut self, rhs: &SuperFn) {
        *self = &*self + rhs;
    }
}

impl Sub for &SuperFn {
    type Output = SuperFn;
    fn sub(self, rhs: &SuperFn) -> SuperFn {
        SuperFn {
            f0: &self.f0 - &rhs.f0,
            f1: &self.f1 - &rhs.f1,
            f2: &self.f2 - &rhs.f2,
            f12: &self.f12 - &rhs.f12,
        }
    }
}

impl Sub for SuperFn {
    type Output = SuperFn;
    fn sub(self, rhs: SuperFn) -> SuperFn {
        &self - &rhs
    }
}

impl Neg for &SuperFn {
    type Output = SuperFn;
    fn neg(self) -> SuperFn {
        self.map(|p| -p)
    }
}

impl Neg for SuperFn {
    type Output = SuperFn;
    fn neg(self) -> SuperFn {
        -&self
    }
}

/// Grassmann product: `t_i t_i = 0`, `t2 t1 = -t1 t2`.
impl Mul for &SuperFn {
    type Output = SuperFn;
    fn mul(self, b: &SuperFn) -> SuperFn {
        let a = self;
        SuperFn {
            f0: &a.f0 * &b.f0,
            f1: &(&a.f0 * &b.f1) + &(&a.f1 * &b.f0),
            f2: &(&a.f0 * &b.f2) + &(&a.f2 * &b.f0),
            f12: &(&(&(&a.f0 * &b.f12) + &(&a.f12 * &b.f0)) + &(&a.f1 * &b.f2))
                - &(&a.f2 * &b.f1),
        }
    }
}

impl Mul for SuperFn {
    type Output = SuperFn;
    fn mul(self, rhs: SuperFn) -> SuperFn {
        &self * &rhs
    }
}

/// Prints in the grammar accepted by [`crate::parse::parse_superfn`].
impl fmt::Display for SuperFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let parts: [(&Poly, &str); 4] = [
            (&self.f0, ""),
            (&self.f1, "t1"),
            (&self.f2, "t2"),
            (&self.f12, "t1*t2"),
        ];
        for (poly, theta) in parts {
            for (n, c) in poly.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let mag = c.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                first = false;
                let mut factors: Vec<String> = Vec::new();
                if !mag.is_one() || (n == 0 && theta.is_empty()) {
                    factors.push(fmt_rational(&mag));
                }
                match n {
                    0 => {}
                    1 => factors.push("x".into()),
                    _ => factors.push(format!("x^{n}")),
                }
                if !theta.is_empty() {
                    factors.push(theta.into());
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t1() -> SuperFn {
        SuperFn::theta1()
    }
    fn t2() -> SuperFn {
        SuperFn::theta2()
    }
    fn x() -> SuperFn {
        SuperFn::x()
    }

    #[test]
    fn generator_products() {
        let t12 = SuperFn::monomial(int(1), 0, true, true);
        assert_eq!(&t1() * &t2(), t12);
        assert_eq!(&t1() * &t1(), SuperFn::zero());
        assert_eq!(&t2() * &t1(), -&t12);
    }

    #[test]
    fn square_of_x_plus_theta() {
        // (x + t1)^2 = x^2 + 2 x t1, since x and t1 commute and t1^2 = 0
        let a = &x() + &t1();
        let expected = &SuperFn::monomial(int(1), 2, false, false)
            + &SuperFn::monomial(int(2), 1, true, false);
        assert_eq!(&a * &a, expected);
    }

    #[test]
    fn left_derivatives() {
        let t12 = &t1() * &t2();
        assert_eq!(t12.derive(Dir::Theta1), t2());
        assert_eq!(t12.derive(Dir::Theta2), -&t1());
        assert_eq!(x().derive(Dir::X), SuperFn::one());
        let g = &SuperFn::monomial(int(3), 2, false, false) + &t12;
        assert_eq!(g.derive(Dir::X), SuperFn::monomial(int(6), 1, false, false));
    }

    #[test]
    fn dbar_examples() {
        assert_eq!(x().dbar(1), -&t1());
        assert_eq!((&x() * &t1()).dbar(1), x());
    }

    #[test]
    fn parity_split_examples() {
        let (e, o) = (&x() + &t1()).parity_split();
        assert_eq!((e, o), (x(), t1()));
        let t12 = &t1() * &t2();
        assert_eq!(t12.parity_split(), (t12.clone(), SuperFn::zero()));
        assert_eq!(SuperFn::zero().parity_split(), (SuperFn::zero(), SuperFn::zero()));
        assert_eq!((&x() + &t1()).parity(), None);
        assert_eq!(t1().parity(), Some(Parity::Odd));
    }

    #[test]
    fn display() {
        let f = &(&SuperFn::monomial(int(1), 2, true, false) + &SuperFn::monomial(rat(3, 2), 0, false, true))
            - &SuperFn::monomial(int(1), 0, true, true);
        assert_eq!(f.to_string(), "x^2*t1 + 3/2*t2 - t1*t2");
        assert_eq!(SuperFn::zero().to_string(), "0");
        assert_eq!(SuperFn::constant(rat(-1, 2)).to_string(), "-1/2");
    }
}
