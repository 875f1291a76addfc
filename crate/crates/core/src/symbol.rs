//! Symbols of degree `k` as density pairs, the affine quantization map and the
//! defect map `gamma(X_f) = calL_{X_f} - L_{X_f}` together with its closed form.
//!
//! Degree-`k` symbols are pairs `(F1, F2)`. For integer `k` they stand for
//! `F1 dx^k + F2 dx^{k-1} Dbar_1 Dbar_2`, for half-integer `k` for
//! `F1 dx^{k-1/2} Dbar_1 + F2 dx^{k-1/2} Dbar_2`. At `k = 0` only `F1` exists.

use std::collections::BTreeMap;
use std::fmt;

use crate::contact::Generator;
use crate::diffop::{lie_density, lie_op, DiffOp, Mono};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, rat, HalfInt, Rational, Weight};
use crate::superfn::{Parity, SuperFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub k: HalfInt,
    pub delta: Weight,
    pub f1: SuperFn,
    pub f2: SuperFn,
}

impl Symbol {
    pub fn new(k: HalfInt, delta: Weight, f1: SuperFn, f2: SuperFn) -> Result<Self> {
        if k == HalfInt::ZERO && !f2.is_zero() {
            return Err(Error::Invalid("a degree-0 symbol has no second component".into()));
        }
        Ok(Symbol { k, delta, f1, f2 })
    }

    pub fn zero(k: HalfInt, delta: Weight) -> Self {
        Symbol {
            k,
            delta,
            f1: SuperFn::zero(),
            f2: SuperFn::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Symbol {
            f1: self.f1.scale(c),
            f2: self.f2.scale(c),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Symbol) -> Self {
        debug_assert_eq!(self.k, other.k);
        Symbol {
            f1: &self.f1 + &other.f1,
            f2: &self.f2 + &other.f2,
            ..self.clone()
        }
    }

    /// Even part has both components even, odd part both odd.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, Symbol)> {
        let (e1, o1) = self.f1.parity_split();
        let (e2, o2) = self.f2.parity_split();
        let even = Symbol { f1: e1, f2: e2, ..self.clone() };
        let odd = Symbol { f1: o1, f2: o2, ..self.clone() };
        [(Parity::Even, even), (Parity::Odd, odd)]
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    pub fn parity(&self) -> Option<Parity> {
        match self.homogeneous_parts().as_slice() {
            [] => Some(Parity::Even),
            [(p, _)] => Some(*p),
            _ => None,
        }
    }

    pub fn graded(&self) -> GradedSymbol {
        let mut g = GradedSymbol::zero(self.delta.clone());
        g.add_symbol(self);
        g
    }

    /// The (component 1, component 2) monomials for degree `k`.
    fn monos(k: HalfInt) -> (Mono, Option<Mono>) {
        let j = k.floor();
        if k.is_integer() {
            if j == 0 {
                (Mono::ID, None)
            } else {
                (Mono::new(j, 0, 0), Some(Mono::new(j - 1, 1, 1)))
            }
        } else {
            (Mono::new(j, 1, 0), Some(Mono::new(j, 0, 1)))
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[k={}] ({}, {})", self.k, self.f1, self.f2)
    }
}

/// Finite sum of symbols of different degrees sharing one `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSymbol {
    pub delta: Weight,
    parts: BTreeMap<HalfInt, Symbol>,
}

impl GradedSymbol {
    pub fn zero(delta: Weight) -> Self {
        GradedSymbol {
            delta,
            parts: BTreeMap::new(),
        }
    }

    pub fn parts(&self) -> &BTreeMap<HalfInt, Symbol> {
        &self.parts
    }

    pub fn get(&self, k: HalfInt) -> Symbol {
        self.parts
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Symbol::zero(k, self.delta.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Highest degree present.
    pub fn top_degree(&self) -> Option<HalfInt> {
        self.parts.keys().next_back().copied()
    }

    pub fn add_symbol(&mut self, s: &Symbol) {
        if s.is_zero() {
            return;
        }
        let sum = match self.parts.get(&s.k) {
            Some(prev) => prev.add(s),
            None => Symbol {
                delta: self.delta.clone(),
                ..s.clone()
            },
        };
        if sum.is_zero() {
            self.parts.remove(&s.k);
        } else {
            self.parts.insert(s.k, sum);
        }
    }

    pub fn add(&self, other: &GradedSymbol) -> Self {
        let mut out = self.clone();
        for s in other.parts.values() {
            out.add_symbol(s);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = GradedSymbol::zero(self.delta.clone());
        for s in self.parts.values() {
            out.add_symbol(&s.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &GradedSymbol) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.parts.values()
    }
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0 (delta={})", fmt_rational(&self.delta));
        }
        let parts: Vec<String> = self.parts.values().rev().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Affine quantization of a single-degree symbol; weights `(lambda, lambda + delta)`.
pub fn q_aff(s: &Symbol, lambda: &Weight) -> DiffOp {
    let mu = lambda + &s.delta;
    let mut op = DiffOp::zero(lambda.clone(), mu);
    let (m1, m2) = Symbol::monos(s.k);
    op.add_term(m1, &s.f1);
    if let Some(m2) = m2 {
        op.add_term(m2, &s.f2);
    }
    op
}

pub fn q_aff_graded(g: &GradedSymbol, lambda: &Weight) -> DiffOp {
    let mut op = DiffOp::zero(lambda.clone(), lambda + &g.delta);
    for s in g.symbols() {
        op = op.add(&q_aff(s, lambda));
    }
    op
}

/// Inverse of the affine quantization: reads each normal-form term as a symbol component.
pub fn q_aff_inv(d: &DiffOp) -> GradedSymbol {
    let delta = d.delta();
    let mut g = GradedSymbol::zero(delta.clone());
    for (mono, c) in d.terms() {
        let (k, first) = match (mono.m, mono.n) {
            (0, 0) => (HalfInt::from_int(mono.l), true),
            (1, 1) => (HalfInt::from_int(mono.l + 1), false),
            (1, 0) => (HalfInt(2 * mono.l + 1), true),
            _ => (HalfInt(2 * mono.l + 1), false),
        };
        let mut s = Symbol::zero(k, delta.clone());
        if first {
            s.f1 = c.clone();
        } else {
            s.f2 = c.clone();
        }
        g.add_symbol(&s);
    }
    g
}

/// Principal symbol of degree `k`; fails when `order(D) > k`.
pub fn principal_symbol(d: &DiffOp, k: HalfInt) -> Result<Symbol> {
    let order = d.order();
    if order > k {
        return Err(Error::OrderExceeds { order, k });
    }
    let (m1, m2) = Symbol::monos(k);
    Ok(Symbol {
        k,
        delta: d.delta(),
        f1: d.coeff(m1),
        f2: m2.map(|m| d.coeff(m)).unwrap_or_default(),
    })
}

/// Action `L_{X_f}` of a contact field on symbols of degree `k`.
pub fn lie_symbol(f: &SuperFn, s: &Symbol) -> Symbol {
    let w = &s.delta - &s.k.to_rational();
    let mut f1 = lie_density(f, &w, &s.f1);
    let mut f2 = lie_density(f, &w, &s.f2);
    if !s.k.is_integer() {
        let g = f.dbar(2).dbar(1).scale(&rat(1, 2));
        f1 = &f1 - &(&g * &s.f2);
        f2 = &f2 + &(&g * &s.f1);
    }
    Symbol { f1, f2, ..s.clone() }
}

pub fn lie_symbol_graded(f: &SuperFn, g: &GradedSymbol) -> GradedSymbol {
    let mut out = GradedSymbol::zero(g.delta.clone());
    for s in g.symbols() {
        out.add_symbol(&lie_symbol(f, s));
    }
    out
}

/// The action carried over from operators: `Q_aff^{-1} o calL_{X_f} o Q_aff`.
pub fn lie_symbol_transported(f: &SuperFn, g: &GradedSymbol, lambda: &Weight) -> GradedSymbol {
    q_aff_inv(&lie_op(f, &q_aff_graded(g, lambda)))
}

/// `gamma(X_f) S`, computed at operator level.
pub fn gamma(f: &SuperFn, s: &Symbol, lambda: &Weight) -> GradedSymbol {
    lie_symbol_transported(f, &s.graded(), lambda).sub(&lie_symbol(f, s).graded())
}

/// Closed-form `gamma(X_f) S` for the quadratic Hamiltonians `x^2`, `x t1`, `x t2`.
pub fn gamma_closed_form(f: &SuperFn, s: &Symbol, lambda: &Weight) -> Result<GradedSymbol> {
    if Generator::from_hamiltonian(f).is_none_or(|g| g.is_affine()) {
        return Err(Error::NotQuadratic(f.to_string()));
    }
    let pf = f.parity().expect("generators are homogeneous");
    let fp = f.dx();
    let fpp = fp.dx();
    let d1 = fp.dbar(1);
    let d2 = fp.dbar(2);
    let half = rat(1, 2);
    let mut out = GradedSymbol::zero(s.delta.clone());
    if s.k == HalfInt::ZERO {
        return Ok(out);
    }
    let k = s.k.to_rational();
    let upper = s.k.checked_sub(HalfInt::HALF).expect("k > 0");
    let lower = s.k.checked_sub(HalfInt(2));
    for (p_s, part) in s.homogeneous_parts() {
        let sign = (pf + p_s).sign();
        let (f1, f2) = (&part.f1, &part.f2);
        if s.k.is_integer() {
            let a = &k * &half;
            let b = &a + lambda;
            let c1 = &(&d1 * f1).scale(&a) + &(&d2 * f2).scale(&b);
            let c2 = &(&d2 * f1).scale(&a) - &(&d1 * f2).scale(&b);
            out.add_symbol(&Symbol {
                k: upper,
                delta: s.delta.clone(),
                f1: c1.scale(&sign),
                f2: c2.scale(&sign),
            });
            if let Some(lower) = lower {
                let km1 = &k - int(1);
                let e1 = -(&k * (&km1 * &half + lambda));
                let e2 = -(&km1 * (&k * &half + lambda));
                out.add_symbol(&Symbol {
                    k: lower,
                    delta: s.delta.clone(),
                    f1: (&fpp * f1).scale(&e1),
                    f2: (&fpp * f2).scale(&e2),
                });
            }
        } else {
            let j = &k - &half;
            let a = &j * &half;
            let b = &a + lambda;
            let c1 = (&(&d1 * f1) + &(&d2 * f2)).scale(&b);
            let c2 = &(&d2 * f1).scale(&a) - &(&d1 * f2).scale(&a);
            out.add_symbol(&Symbol {
                k: upper,
                delta: s.delta.clone(),
                f1: c1.scale(&-sign.clone()),
                f2: c2.scale(&-sign),
            });
            if let Some(lower) = lower {
                let e = &j * (-&a - lambda);
                out.add_symbol(&Symbol {
                    k: lower,
                    delta: s.delta.clone(),
                    f1: (&fpp * f1).scale(&e),
                    f2: (&fpp * f2).scale(&e),
                });
            }
        }
    }
    Ok(out)
}

/// Closed form of `N = calC - C` on a single-degree symbol.
pub fn n_closed_form(s: &Symbol, lambda: &Weight) -> GradedSymbol {
    let mut out = GradedSymbol::zero(s.delta.clone());
    if s.k == HalfInt::ZERO {
        return out;
    }
    let half = rat(1, 2);
    let k = s.k.to_rational();
    let upper = s.k.checked_sub(HalfInt::HALF).expect("k > 0");
    let lower = s.k.checked_sub(HalfInt(2));
    for (p_s, part) in s.homogeneous_parts() {
        let sign = p_s.sign();
        let (f1, f2) = (&part.f1, &part.f2);
        if s.k.is_integer() {
            let a = &k * &half;
            let b = &a + lambda;
            let c1 = &f1.dbar(1).scale(&a) + &f2.dbar(2).scale(&b);
            let c2 = &f1.dbar(2).scale(&a) - &f2.dbar(1).scale(&b);
            out.add_symbol(&Symbol {
                k: upper,
                delta: s.delta.clone(),
                f1: c1.scale(&-sign.clone()),
                f2: c2.scale(&-sign),
            });
            if let Some(lower) = lower {
                let km1 = &k - int(1);
                let e1 = int(2) * &k * (&km1 * &half + lambda);
                let e2 = int(2) * &km1 * (&a + lambda);
                out.add_symbol(&Symbol {
                    k: lower,
                    delta: s.delta.clone(),
                    f1: f1.dx().scale(&e1),
                    f2: f2.dx().scale(&e2),
                });
            }
        } else {
            let j = &k - &half;
            let a = &j * &half;
            let b = &a + lambda;
            let c1 = (&f1.dbar(1) + &f2.dbar(2)).scale(&b);
            let c2 = (&f1.dbar(2) - &f2.dbar(1)).scale(&a);
            out.add_symbol(&Symbol {
                k: upper,
                delta: s.delta.clone(),
                f1: c1.scale(&sign),
                f2: c2.scale(&sign),
            });
            if let Some(lower) = lower {
                let e = int(2) * &j * &b;
                out.add_symbol(&Symbol {
                    k: lower,
                    delta: s.delta.clone(),
                    f1: f1.dx().scale(&e),
                    f2: f2.dx().scale(&e),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::lie_op;
    use crate::random::Sampler;

    fn degrees() -> impl Iterator<Item = HalfInt> {
        (0..=6).map(HalfInt)
    }

    #[test]
    fn q_aff_examples() {
        let lam = int(0);
        let s = Symbol::new(HalfInt(2), int(0), SuperFn::x(), SuperFn::zero()).unwrap();
        assert_eq!(
            q_aff(&s, &lam),
            DiffOp::monomial(int(0), int(0), Mono::new(1, 0, 0), SuperFn::x())
        );
        let s = Symbol::new(HalfInt(1), int(0), SuperFn::theta1(), SuperFn::one()).unwrap();
        let expected = DiffOp::from_terms(
            int(0),
            int(0),
            [(Mono::new(0, 1, 0), SuperFn::theta1()), (Mono::new(0, 0, 1), SuperFn::one())],
        );
        assert_eq!(q_aff(&s, &lam), expected);
        let s = Symbol::new(HalfInt(4), int(0), SuperFn::zero(), SuperFn::one()).unwrap();
        assert_eq!(
            q_aff(&s, &lam),
            DiffOp::monomial(int(0), int(0), Mono::new(1, 1, 1), SuperFn::one())
        );
        assert!(Symbol::new(HalfInt(0), int(0), SuperFn::one(), SuperFn::one()).is_err());
    }

    #[test]
    fn q_aff_inv_examples() {
        let d = DiffOp::from_terms(
            int(0),
            int(1),
            [(Mono::new(1, 0, 0), SuperFn::x()), (Mono::new(0, 1, 0), SuperFn::theta1())],
        );
        let g = q_aff_inv(&d);
        assert_eq!(g.delta, int(1));
        assert_eq!(g.get(HalfInt(2)).f1, SuperFn::x());
        assert_eq!(g.get(HalfInt(1)).f1, SuperFn::theta1());
        assert!(g.get(HalfInt(1)).f2.is_zero());

        let d1 = DiffOp::monomial(int(0), int(0), Mono::new(0, 1, 0), SuperFn::one());
        let g = q_aff_inv(&d1.compose(&d1).unwrap());
        assert_eq!(g.parts().len(), 1);
        assert_eq!(g.get(HalfInt(2)).f1, SuperFn::constant(int(-1)));
    }

    #[test]
    fn q_aff_round_trip() {
        let mut rng = Sampler::new(7, 4);
        for k in degrees() {
            let delta = rng.weight();
            let s = rng.symbol(k, &delta, rng_parity(k));
            let lam = rng.weight();
            assert_eq!(q_aff_inv(&q_aff(&s, &lam)), s.graded());
        }
    }

    fn rng_parity(k: HalfInt) -> Parity {
        Parity::from_bit(k.twice())
    }

    #[test]
    fn principal_symbol_examples() {
        let z = int(0);
        let d = DiffOp::from_terms(
            z.clone(),
            z.clone(),
            [(Mono::new(1, 0, 0), SuperFn::x()), (Mono::ID, SuperFn::one())],
        );
        let s = principal_symbol(&d, HalfInt(2)).unwrap();
        assert_eq!((s.f1, s.f2), (SuperFn::x(), SuperFn::zero()));
        let d = DiffOp::from_terms(
            z.clone(),
            z.clone(),
            [(Mono::new(0, 1, 0), SuperFn::theta1()), (Mono::new(0, 0, 1), SuperFn::one())],
        );
        let s = principal_symbol(&d, HalfInt(1)).unwrap();
        assert_eq!((s.f1, s.f2), (SuperFn::theta1(), SuperFn::one()));
        let d = DiffOp::monomial(z.clone(), z.clone(), Mono::new(1, 1, 1), SuperFn::one());
        let s = principal_symbol(&d, HalfInt(4)).unwrap();
        assert_eq!((s.f1, s.f2), (SuperFn::zero(), SuperFn::one()));
        assert!(matches!(
            principal_symbol(&d, HalfInt(3)),
            Err(Error::OrderExceeds { .. })
        ));
    }

    #[test]
    fn lie_symbol_examples() {
        let mut rng = Sampler::new(3, 3);
        let delta = rng.weight();
        let s = rng.symbol(HalfInt(2), &delta, Parity::Even);
        let out = lie_symbol(&SuperFn::one(), &s);
        assert_eq!((out.f1, out.f2), (s.f1.dx(), s.f2.dx()));

        let t12 = Generator::Theta12.hamiltonian();
        let s = Symbol::new(HalfInt(1), delta.clone(), SuperFn::one(), SuperFn::zero()).unwrap();
        let out = lie_symbol(&t12, &s);
        assert_eq!((out.f1, out.f2), (SuperFn::zero(), SuperFn::constant(rat(-1, 2))));
    }

    #[test]
    fn principal_symbol_is_equivariant() {
        let mut rng = Sampler::new(11, 3);
        for k in degrees() {
            for g in Generator::ALL {
                let (lam, delta) = (rng.weight(), rng.weight());
                let p = rng.parity();
                let s = rng.symbol(k, &delta, p);
                let d = q_aff(&s, &lam);
                let lhs = principal_symbol(&lie_op(&g.hamiltonian(), &d), k).unwrap();
                assert_eq!(lhs, lie_symbol(&g.hamiltonian(), &s), "k={k} f={g} parity={p:?}");
            }
        }
    }

    #[test]
    fn gamma_vanishes_on_affine_subalgebra() {
        let mut rng = Sampler::new(5, 3);
        for k in degrees() {
            for g in Generator::ALL.into_iter().filter(|g| g.is_affine()) {
                let (lam, delta) = (rng.weight(), rng.weight());
                let p = rng.parity();
                let s = rng.symbol(k, &delta, p);
                assert!(gamma(&g.hamiltonian(), &s, &lam).is_zero(), "k={k} f={g}");
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let lam = rat(2, 5);
        let x2 = Generator::X2.hamiltonian();
        let s = Symbol::new(HalfInt(2), int(0), SuperFn::one(), SuperFn::zero()).unwrap();
        let g = gamma(&x2, &s, &lam);
        let half = g.get(HalfInt(1));
        assert_eq!((half.f1, half.f2), (-SuperFn::theta1(), -SuperFn::theta2()));
        let zero = g.get(HalfInt(0));
        assert_eq!(zero.f1, SuperFn::constant(int(-2) * &lam));
        assert_eq!(g.parts().len(), 2);
        assert_eq!(gamma_closed_form(&x2, &s, &lam).unwrap(), g);
        assert!(gamma_closed_form(&x2, &s, &int(0)).unwrap().get(HalfInt(0)).is_zero());

        let s = Symbol::new(HalfInt(0), int(0), SuperFn::constant(rat(3, 4)), SuperFn::zero()).unwrap();
        assert!(gamma(&x2, &s, &lam).is_zero());
        assert!(matches!(
            gamma_closed_form(&SuperFn::x(), &s, &lam),
            Err(Error::NotQuadratic(_))
        ));
    }

    #[test]
    fn gamma_matches_closed_form() {
        let mut rng = Sampler::new(17, 3);
        for k in degrees() {
            for g in Generator::QUADRATIC {
                for p in [Parity::Even, Parity::Odd] {
                    let (lam, delta) = (rng.weight(), rng.weight());
                    let s = rng.symbol(k, &delta, p);
                    let f = g.hamiltonian();
                    let direct = gamma(&f, &s, &lam);
                    assert_eq!(gamma_closed_form(&f, &s, &lam).unwrap(), direct, "k={k} f={g} {p:?}");
                    if let Some(top) = direct.top_degree() {
                        assert!(top < k && top.twice() + 2 >= k.twice());
                    }
                }
            }
        }
    }

    #[test]
    fn n_closed_form_examples() {
        let s = Symbol::new(HalfInt(2), int(0), SuperFn::x(), SuperFn::zero()).unwrap();
        let n = n_closed_form(&s, &int(1));
        let h = n.get(HalfInt(1));
        assert_eq!(
            (h.f1, h.f2),
            (SuperFn::theta1().scale(&rat(1, 2)), SuperFn::theta2().scale(&rat(1, 2)))
        );
        assert_eq!(n.get(HalfInt(0)).f1, SuperFn::constant(int(2)));
        let s = Symbol::new(HalfInt(0), int(0), SuperFn::x(), SuperFn::zero()).unwrap();
        assert!(n_closed_form(&s, &int(1)).is_zero());
    }
}
