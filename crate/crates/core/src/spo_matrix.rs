//! Matrix realization of spo(2|2) inside gl(2|2) and its projective embedding
//! into vector fields on S^{1|2}.
//!
//! Rows and columns 0, 1 are even, 2, 3 are odd. Membership is
//! `A^st G + G A = 0` with `G = diag(J, I)`, `J = [[0, -1], [1, 0]]`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::contact::{Generator, VectorField};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::superfn::{Parity, SuperFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpoMatrix {
    pub entries: [[Rational; 4]; 4],
}

fn index_parity(i: usize) -> Parity {
    if i < 2 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl SpoMatrix {
    pub fn zero() -> Self {
        SpoMatrix {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = int(1);
        }
        m
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        SpoMatrix {
            entries: rows.map(|r| r.map(int)),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SpoMatrix {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| &self.entries[i][j] * c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// `(A1^t, -A3^t; A2^t, A4^t)`.
    pub fn supertranspose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let v = self.entries[j][i].clone();
                // the lower-left odd block of A ends up negated in the upper-right
                out.entries[i][j] = if i < 2 && j >= 2 { -v } else { v };
            }
        }
        out
    }

    /// `tr(A1) - tr(A4)`.
    pub fn supertrace(&self) -> Rational {
        &self.entries[0][0] + &self.entries[1][1] - &self.entries[2][2] - &self.entries[3][3]
    }

    /// `diag(J, I)`.
    pub fn form() -> Self {
        Self::from_ints([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    }

    /// Splits into block-diagonal (even) and block-off-diagonal (odd) parts.
    pub fn parity_split(&self) -> (SpoMatrix, SpoMatrix) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                if index_parity(i) == index_parity(j) {
                    even.entries[i][j] = self.entries[i][j].clone();
                } else {
                    odd.entries[i][j] = self.entries[i][j].clone();
                }
            }
        }
        (even, odd)
    }

    /// Super commutator, extended bilinearly.
    pub fn bracket(&self, other: &SpoMatrix) -> SpoMatrix {
        let (ae, ao) = self.parity_split();
        let (be, bo) = other.parity_split();
        let mut out = Self::zero();
        for (pa, a) in [(Parity::Even, &ae), (Parity::Odd, &ao)] {
            for (pb, b) in [(Parity::Even, &be), (Parity::Odd, &bo)] {
                let ab = a * b;
                let ba = b * a;
                out = &out + &(&ab - &ba.scale(&pa.sign_with(pb)));
            }
        }
        out
    }

    /// The eight listed basis matrices of spo(2|2), in order.
    pub fn basis() -> [SpoMatrix; 8] {
        [
            Self::from_ints([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
            Self::from_ints([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
            Self::from_ints([[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
            Self::from_ints([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
            Self::from_ints([[0, 0, 1, 0], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]),
            Self::from_ints([[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0]]),
            Self::from_ints([[0, 0, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0], [0, 0, 0, 0]]),
            Self::from_ints([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [-1, 0, 0, 0]]),
        ]
    }

    /// Matrix realizing the Hamiltonian field of `g`, i.e. `projective_embed(m) = X_g`.
    pub fn of_generator(g: Generator) -> SpoMatrix {
        let (idx, factor) = GENERATOR_TABLE
            .iter()
            .find(|(gen, _, _)| *gen == g)
            .map(|(_, idx, factor)| (*idx, factor))
            .expect("every generator has a matrix");
        Self::basis()[idx].scale(&rat(1, *factor))
    }
}

/// `projective_embed(basis[idx]) = factor * X_g`.
pub const GENERATOR_TABLE: [(Generator, usize, i64); 8] = [
    (Generator::X, 0, 2),
    (Generator::X2, 1, 1),
    (Generator::One, 2, -1),
    (Generator::Theta12, 3, 2),
    (Generator::XTheta1, 4, -2),
    (Generator::XTheta2, 5, -2),
    (Generator::Theta1, 6, 2),
    (Generator::Theta2, 7, 2),
];

impl Add for &SpoMatrix {
    type Output = SpoMatrix;
    fn add(self, rhs: &SpoMatrix) -> SpoMatrix {
        SpoMatrix {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| &self.entries[i][j] + &rhs.entries[i][j])),
        }
    }
}

impl Sub for &SpoMatrix {
    type Output = SpoMatrix;
    fn sub(self, rhs: &SpoMatrix) -> SpoMatrix {
        SpoMatrix {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| &self.entries[i][j] - &rhs.entries[i][j])),
        }
    }
}

impl Mul for &SpoMatrix {
    type Output = SpoMatrix;
    fn mul(self, rhs: &SpoMatrix) -> SpoMatrix {
        SpoMatrix {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..4).fold(Rational::zero(), |acc, k| acc + &self.entries[i][k] * &rhs.entries[k][j])
                })
            }),
        }
    }
}

impl fmt::Display for SpoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(crate::rational::fmt_rational).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn spo_member(a: &SpoMatrix) -> bool {
    let g = SpoMatrix::form();
    (&(&a.supertranspose() * &g) + &(&g * a)).is_zero()
}

/// `K(A, B) = 2 str(AB)`, defined on spo(2|2) only.
pub fn kform(a: &SpoMatrix, b: &SpoMatrix) -> Result<Rational> {
    if !spo_member(a) || !spo_member(b) {
        return Err(Error::NotSpoMember);
    }
    Ok((a * b).supertrace() * int(2))
}

/// Sends `A` to the vector field of its class in pgl(2|2).
///
/// Writing `[A] = [[0, xi], [v, B]]` (after removing the scalar part
/// `A[0][0] * I`) with coordinates `y1 = x, y2 = t1, y3 = t2`, the image is
/// `-sum v^i d_i - sum (-1)^{|j|(|i|+|j|)} B^i_j y^j d_i + sum (-1)^{|j|} xi_j y^j y^i d_i`.
pub fn projective_embed(a: &SpoMatrix) -> Result<VectorField> {
    if !spo_member(a) {
        return Err(Error::NotSpoMember);
    }
    let shift = a.entries[0][0].clone();
    let coords = [SuperFn::x(), SuperFn::theta1(), SuperFn::theta2()];
    let parity = |i: usize| index_parity(i + 1);
    let mut comps: [SuperFn; 3] = std::array::from_fn(|_| SuperFn::zero());
    for (i, comp) in comps.iter_mut().enumerate() {
        let row = i + 1;
        *comp = -&SuperFn::constant(a.entries[row][0].clone());
        for j in 0..3 {
            let col = j + 1;
            let mut b = a.entries[row][col].clone();
            if row == col {
                b -= &shift;
            }
            let s = parity(j).sign_with(parity(i) + parity(j));
            *comp = &*comp - &coords[j].scale(&(s * b));
            let xi = &a.entries[0][col] * parity(j).sign();
            *comp = &*comp + &(&coords[j] * &coords[i]).scale(&xi);
        }
    }
    let [ax, b1, b2] = comps;
    Ok(VectorField::new(ax, b1, b2))
}
