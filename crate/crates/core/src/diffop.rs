//! Weighted densities and differential operators between them.
//!
//! Operators are kept in the normal form `sum a_{l,m,n} dx^l Dbar_1^m Dbar_2^n`
//! with `m, n` in {0, 1} and the coefficient on the left. Composition reorders
//! with `Dbar_i a = Dbar_i(a) + (-1)^{|a|} a Dbar_i`, `dx a = a' + a dx`,
//! `Dbar_i^2 = -dx` and `Dbar_2 Dbar_1 = -Dbar_1 Dbar_2`.

use std::collections::BTreeMap;
use std::fmt;

use crate::contact::hamiltonian_field;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, HalfInt, Rational, Weight};
use crate::superfn::{Parity, SuperFn};

/// The monomial `dx^l Dbar_1^m Dbar_2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub l: u32,
    pub m: u8,
    pub n: u8,
}

impl Mono {
    pub const ID: Mono = Mono { l: 0, m: 0, n: 0 };

    pub fn new(l: u32, m: u8, n: u8) -> Self {
        assert!(m <= 1 && n <= 1, "Dbar exponents are 0 or 1 in normal form");
        Mono { l, m, n }
    }

    /// Filtration order `l + m/2 + n/2`.
    pub fn order(self) -> HalfInt {
        HalfInt(2 * self.l + self.m as u32 + self.n as u32)
    }

    /// Parity contributed by the `Dbar` factors.
    pub fn parity(self) -> Parity {
        Parity::from_bit((self.m + self.n) as u32)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.l {
            0 => {}
            1 => parts.push("dx".to_string()),
            l => parts.push(format!("dx^{l}")),
        }
        if self.m == 1 {
            parts.push("D1".into());
        }
        if self.n == 1 {
            parts.push("D2".into());
        }
        if parts.is_empty() {
            parts.push("Id".into());
        }
        f.write_str(&parts.join("*"))
    }
}

/// A differential operator from `lambda`-densities to `mu`-densities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    pub lambda: Weight,
    pub mu: Weight,
    terms: BTreeMap<Mono, SuperFn>,
}

impl DiffOp {
    pub fn zero(lambda: Weight, mu: Weight) -> Self {
        DiffOp {
            lambda,
            mu,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(lambda: Weight, mu: Weight, terms: impl IntoIterator<Item = (Mono, SuperFn)>) -> Self {
        let mut op = Self::zero(lambda, mu);
        for (mono, c) in terms {
            op.add_term(mono, &c);
        }
        op
    }

    /// `c * dx^l Dbar_1^m Dbar_2^n`.
    pub fn monomial(lambda: Weight, mu: Weight, mono: Mono, c: SuperFn) -> Self {
        Self::from_terms(lambda, mu, [(mono, c)])
    }

    /// Left multiplication by `f` as an operator on `F_lambda`.
    pub fn multiplication(f: SuperFn, lambda: Weight) -> Self {
        Self::monomial(lambda.clone(), lambda, Mono::ID, f)
    }

    pub fn identity(lambda: Weight) -> Self {
        Self::multiplication(SuperFn::one(), lambda)
    }

    pub fn terms(&self) -> &BTreeMap<Mono, SuperFn> {
        &self.terms
    }

    pub fn coeff(&self, mono: Mono) -> SuperFn {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: Mono, c: &SuperFn) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn delta(&self) -> Weight {
        &self.mu - &self.lambda
    }

    /// Same operator, relabelled weights.
    pub fn with_weights(mut self, lambda: Weight, mu: Weight) -> Self {
        self.lambda = lambda;
        self.mu = mu;
        self
    }

    fn map_coeffs(&self, f: impl Fn(&SuperFn) -> SuperFn) -> Self {
        Self::from_terms(
            self.lambda.clone(),
            self.mu.clone(),
            self.terms.iter().map(|(k, c)| (*k, f(c))),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|a| a.scale(c))
    }

    /// Multiplies every coefficient on the left by `f`.
    pub fn left_mul(&self, f: &SuperFn) -> Self {
        self.map_coeffs(|a| f * a)
    }

    /// Sum, keeping the weights of `self`.
    pub fn add(&self, other: &DiffOp) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(*mono, c);
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Filtration order; the zero operator has order 0.
    pub fn order(&self) -> HalfInt {
        self.terms.keys().map(|m| m.order()).max().unwrap_or(HalfInt::ZERO)
    }

    /// Splits by operator parity: coefficient parity plus the number of `Dbar` factors.
    pub fn parity_split(&self) -> (DiffOp, DiffOp) {
        let mut even = Self::zero(self.lambda.clone(), self.mu.clone());
        let mut odd = even.clone();
        for (mono, c) in &self.terms {
            for (p, part) in c.homogeneous_parts() {
                match p + mono.parity() {
                    Parity::Even => even.add_term(*mono, &part),
                    Parity::Odd => odd.add_term(*mono, &part),
                }
            }
        }
        (even, odd)
    }

    pub fn homogeneous_parts(&self) -> Vec<(Parity, DiffOp)> {
        let (even, odd) = self.parity_split();
        [(Parity::Even, even), (Parity::Odd, odd)]
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect()
    }

    /// `dx o self`.
    fn pre_dx(&self) -> Self {
        let mut out = Self::zero(self.lambda.clone(), self.mu.clone());
        for (mono, c) in &self.terms {
            out.add_term(*mono, &c.dx());
            out.add_term(Mono { l: mono.l + 1, ..*mono }, c);
        }
        out
    }

    /// `Dbar_i o self`.
    fn pre_dbar(&self, i: u8) -> Self {
        let mut out = Self::zero(self.lambda.clone(), self.mu.clone());
        for (mono, c) in &self.terms {
            out.add_term(*mono, &c.dbar(i));
            for (p, part) in c.homogeneous_parts() {
                let (sign, next) = dbar_times_mono(i, *mono);
                out.add_term(next, &part.scale(&(p.sign() * sign)));
            }
        }
        out
    }

    /// Normal-ordered composition `self o other`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.lambda != other.mu {
            return Err(Error::WeightMismatch {
                expected: fmt_rational(&self.lambda),
                found: fmt_rational(&other.mu),
            });
        }
        let mut out = Self::zero(other.lambda.clone(), self.mu.clone());
        for (mono, a) in &self.terms {
            let mut acc = other.clone();
            if mono.n == 1 {
                acc = acc.pre_dbar(2);
            }
            if mono.m == 1 {
                acc = acc.pre_dbar(1);
            }
            for _ in 0..mono.l {
                acc = acc.pre_dx();
            }
            for (m, c) in &acc.terms {
                out.add_term(*m, &(a * c));
            }
        }
        Ok(out)
    }

    /// Applies the operator to a density.
    pub fn apply(&self, f: &SuperFn) -> SuperFn {
        let mut out = SuperFn::zero();
        for (mono, a) in &self.terms {
            let mut g = f.clone();
            if mono.n == 1 {
                g = g.dbar(2);
            }
            if mono.m == 1 {
                g = g.dbar(1);
            }
            for _ in 0..mono.l {
                g = g.dx();
            }
            out += &(a * &g);
        }
        out
    }
}

/// `Dbar_i o dx^l Dbar_1^m Dbar_2^n = sign * (normal monomial)`.
fn dbar_times_mono(i: u8, mono: Mono) -> (Rational, Mono) {
    match (i, mono.m, mono.n) {
        (1, 0, _) => (int(1), Mono { m: 1, ..mono }),
        (1, 1, _) => (int(-1), Mono { l: mono.l + 1, m: 0, ..mono }),
        (2, m, 0) => (Parity::from_bit(m as u32).sign(), Mono { n: 1, ..mono }),
        (2, m, 1) => (-Parity::from_bit(m as u32).sign(), Mono { l: mono.l + 1, n: 0, ..mono }),
        _ => unreachable!("Dbar index is 1 or 2"),
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(mono, c)| format!("({c})*{mono}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `L^lambda_{X_f} = X_f + lambda f'` as an operator on `F_lambda`.
pub fn lie_density_op(f: &SuperFn, lambda: &Weight) -> DiffOp {
    let x = hamiltonian_field(f);
    // X_f = a dx + b1 d/dt1 + b2 d/dt2 with b_i = -(-1)^{|f|}/2 Dbar_i(f);
    // in contact form that is f dx + b1 Dbar_1 + b2 Dbar_2.
    let mut op = DiffOp::zero(lambda.clone(), lambda.clone());
    op.add_term(Mono::new(1, 0, 0), f);
    op.add_term(Mono::new(0, 1, 0), &x.b1);
    op.add_term(Mono::new(0, 0, 1), &x.b2);
    op.add_term(Mono::ID, &f.dx().scale(lambda));
    op
}

/// `L^lambda_{X_f} F = X_f(F) + lambda f' F`.
pub fn lie_density(f: &SuperFn, lambda: &Weight, density: &SuperFn) -> SuperFn {
    &hamiltonian_field(f).apply(density) + &(&f.dx() * density).scale(lambda)
}

/// Lie derivative of an operator: `L^mu_{X_f} o D - (-1)^{|f||D|} D o L^lambda_{X_f}`.
pub fn lie_op(f: &SuperFn, d: &DiffOp) -> DiffOp {
    let mut out = DiffOp::zero(d.lambda.clone(), d.mu.clone());
    for (pf, g) in f.homogeneous_parts() {
        let left = lie_density_op(&g, &d.mu);
        let right = lie_density_op(&g, &d.lambda);
        for (pd, part) in d.homogeneous_parts() {
            let lhs = left.compose(&part).expect("weights match by construction");
            let rhs = part.compose(&right).expect("weights match by construction");
            out = out.add(&lhs.sub(&rhs.scale(&pf.sign_with(pd))));
        }
    }
    out
}

/// Super commutator of two operators on the same density module.
pub fn op_bracket(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    let mut out = DiffOp::zero(b.lambda.clone(), a.mu.clone());
    for (pa, x) in a.homogeneous_parts() {
        for (pb, y) in b.homogeneous_parts() {
            let xy = x.compose(&y)?;
            let yx = y.compose(&x)?;
            out = out.add(&xy.sub(&yx.scale(&pa.sign_with(pb))));
        }
    }
    Ok(out)
}
