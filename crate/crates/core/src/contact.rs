//! Vector fields on S^{1|2}, contact Hamiltonian fields and the contact bracket.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::rational::{rat, Rational};
use crate::superfn::{Dir, Parity, SuperFn};

/// The derivation `a d/dx + b1 d/dt1 + b2 d/dt2`, coefficients on the left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorField {
    pub a: SuperFn,
    pub b1: SuperFn,
    pub b2: SuperFn,
}

impl VectorField {
    pub fn new(a: SuperFn, b1: SuperFn, b2: SuperFn) -> Self {
        VectorField { a, b1, b2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dx() -> Self {
        VectorField {
            a: SuperFn::one(),
            ..Self::default()
        }
    }

    pub fn dtheta(i: u8) -> Self {
        match i {
            1 => VectorField {
                b1: SuperFn::one(),
                ..Self::default()
            },
            2 => VectorField {
                b2: SuperFn::one(),
                ..Self::default()
            },
            _ => panic!("odd coordinate index must be 1 or 2, got {i}"),
        }
    }

    /// `Dbar_i = d/dt_i - t_i d/dx`.
    pub fn dbar(i: u8) -> Self {
        let mut v = Self::dtheta(i);
        v.a = -SuperFn::theta(i);
        v
    }

    /// `g * Dbar_i` as a vector field.
    fn times_dbar(g: &SuperFn, i: u8) -> Self {
        let d = Self::dbar(i);
        VectorField {
            a: g * &d.a,
            b1: g * &d.b1,
            b2: g * &d.b2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b1.is_zero() && self.b2.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            a: self.a.scale(c),
            b1: self.b1.scale(c),
            b2: self.b2.scale(c),
        }
    }

    /// Splits into (even, odd) fields. An even field has even `a` and odd `b_i`.
    pub fn parity_split(&self) -> (VectorField, VectorField) {
        let (ae, ao) = self.a.parity_split();
        let (b1e, b1o) = self.b1.parity_split();
        let (b2e, b2o) = self.b2.parity_split();
        (
            VectorField { a: ae, b1: b1o, b2: b2o },
            VectorField { a: ao, b1: b1e, b2: b2e },
        )
    }

    pub fn homogeneous_parts(&self) -> Vec<(Parity, VectorField)> {
        let (even, odd) = self.parity_split();
        let mut out = Vec::with_capacity(2);
        if !even.is_zero() {
            out.push((Parity::Even, even));
        }
        if !odd.is_zero() {
            out.push((Parity::Odd, odd));
        }
        out
    }

    pub fn parity(&self) -> Option<Parity> {
        match self.homogeneous_parts().as_slice() {
            [] => Some(Parity::Even),
            [(p, _)] => Some(*p),
            _ => None,
        }
    }

    /// Applies the derivation to `f`.
    pub fn apply(&self, f: &SuperFn) -> SuperFn {
        let mut out = &self.a * &f.derive(Dir::X);
        out += &(&self.b1 * &f.derive(Dir::Theta1));
        out += &(&self.b2 * &f.derive(Dir::Theta2));
        out
    }

    /// Super commutator `XY - (-1)^{|X||Y|} YX`, extended bilinearly to mixed fields.
    ///
    /// A derivation is fixed by its values on the coordinates, so each component
    /// is the commutator evaluated on `x`, `t1` or `t2`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let mut out = VectorField::zero();
        for (px, x) in self.homogeneous_parts() {
            for (py, y) in other.homogeneous_parts() {
                let s = px.sign_with(py);
                let comp = |xc: &SuperFn, yc: &SuperFn| &x.apply(yc) - &y.apply(xc).scale(&s);
                out = &out
                    + &VectorField {
                        a: comp(&x.a, &y.a),
                        b1: comp(&x.b1, &y.b1),
                        b2: comp(&x.b2, &y.b2),
                    };
            }
        }
        out
    }

    /// Whether the field preserves the distribution spanned by `Dbar_1`, `Dbar_2`.
    ///
    /// `[X, Dbar_i] = psi Dbar_1 + phi Dbar_2` forces `psi`, `phi` to be the
    /// odd-direction components; the field is contact iff what remains along
    /// `d/dx` then vanishes.
    pub fn is_contact(&self) -> bool {
        (1..=2u8).all(|i| {
            let z = self.bracket(&VectorField::dbar(i));
            let residual = &(&z.a + &(&z.b1 * &SuperFn::theta1())) + &(&z.b2 * &SuperFn::theta2());
            residual.is_zero()
        })
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            a: &self.a + &rhs.a,
            b1: &self.b1 + &rhs.b1,
            b2: &self.b2 + &rhs.b2,
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            a: &self.a - &rhs.a,
            b1: &self.b1 - &rhs.b1,
            b2: &self.b2 - &rhs.b2,
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            a: -&self.a,
            b1: -&self.b1,
            b2: -&self.b2,
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dx + ({})*dt1 + ({})*dt2", self.a, self.b1, self.b2)
    }
}

/// `X_f = f d/dx - (-1)^{|f|} 1/2 (Dbar_1(f) Dbar_1 + Dbar_2(f) Dbar_2)`.
pub fn hamiltonian_field(f: &SuperFn) -> VectorField {
    let mut out = VectorField::zero();
    for (p, g) in f.homogeneous_parts() {
        let c = -p.sign() * rat(1, 2);
        let mut x = &VectorField::times_dbar(&g.dbar(1), 1) + &VectorField::times_dbar(&g.dbar(2), 2);
        x = x.scale(&c);
        x.a = &x.a + &g;
        out = &out + &x;
    }
    out
}

/// `{f, g} = f g' - f' g - (-1)^{|f|} 1/2 (Dbar_1 f Dbar_1 g + Dbar_2 f Dbar_2 g)`.
pub fn contact_bracket(f: &SuperFn, g: &SuperFn) -> SuperFn {
    let mut out = SuperFn::zero();
    for (p, h) in f.homogeneous_parts() {
        let lin = &(&h * &g.dx()) - &(&h.dx() * g);
        let dd = &(&h.dbar(1) * &g.dbar(1)) + &(&h.dbar(2) * &g.dbar(2));
        out += &(&lin - &dd.scale(&(p.sign() * rat(1, 2))));
    }
    out
}

/// The eight contact Hamiltonians spanning spo(2|2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    One,
    X,
    Theta1,
    Theta2,
    Theta12,
    X2,
    XTheta1,
    XTheta2,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::One,
        Generator::X,
        Generator::Theta1,
        Generator::Theta2,
        Generator::Theta12,
        Generator::X2,
        Generator::XTheta1,
        Generator::XTheta2,
    ];

    pub const QUADRATIC: [Generator; 3] = [Generator::X2, Generator::XTheta1, Generator::XTheta2];

    pub fn hamiltonian(self) -> SuperFn {
        let one = rat(1, 1);
        match self {
            Generator::One => SuperFn::one(),
            Generator::X => SuperFn::x(),
            Generator::Theta1 => SuperFn::theta1(),
            Generator::Theta2 => SuperFn::theta2(),
            Generator::Theta12 => SuperFn::monomial(one, 0, true, true),
            Generator::X2 => SuperFn::monomial(one, 2, false, false),
            Generator::XTheta1 => SuperFn::monomial(one, 1, true, false),
            Generator::XTheta2 => SuperFn::monomial(one, 1, false, true),
        }
    }

    pub fn field(self) -> VectorField {
        hamiltonian_field(&self.hamiltonian())
    }

    /// Member of the affine subalgebra spanned by `1, x, t1, t2, t1 t2`.
    pub fn is_affine(self) -> bool {
        !Self::QUADRATIC.contains(&self)
    }

    pub fn parity(self) -> Parity {
        match self {
            Generator::One | Generator::X | Generator::X2 | Generator::Theta12 => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::One => "1",
            Generator::X => "x",
            Generator::Theta1 => "t1",
            Generator::Theta2 => "t2",
            Generator::Theta12 => "t1*t2",
            Generator::X2 => "x^2",
            Generator::XTheta1 => "x*t1",
            Generator::XTheta2 => "x*t2",
        }
    }

    /// Recognizes a Hamiltonian that equals one of the generators exactly.
    pub fn from_hamiltonian(f: &SuperFn) -> Option<Generator> {
        Self::ALL.into_iter().find(|g| g.hamiltonian() == *f)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
