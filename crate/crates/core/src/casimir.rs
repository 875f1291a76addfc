//! Quadratic Casimir operators of spo(2|2) acting on symbols, and their
//! eigenvalues.

use std::collections::BTreeSet;

use crate::contact::Generator;
use crate::rational::{int, rat, HalfInt, Rational, Weight};
use crate::spo_matrix::{kform, SpoMatrix};
use crate::symbol::{lie_symbol_graded, lie_symbol_transported, GradedSymbol, Symbol};

/// Which representation the Casimir is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rep {
    /// The symbol action `L`.
    L,
    /// The operator action carried to symbols by the affine quantization.
    CalL,
}

/// One summand `factor * beta(dual) beta(primal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirTerm {
    pub factor: Rational,
    pub dual: Generator,
    pub primal: Generator,
}

/// The ordered expansion of the Casimir element over K-dual bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirSpec {
    pub terms: Vec<CasimirTerm>,
}

impl Default for CasimirSpec {
    fn default() -> Self {
        use Generator::*;
        let term = |factor: Rational, dual, primal| CasimirTerm { factor, dual, primal };
        CasimirSpec {
            terms: vec![
                term(rat(-1, 2), X2, One),
                term(int(-1), XTheta1, Theta1),
                term(int(-1), XTheta2, Theta2),
                term(int(1), X, X),
                term(int(1), Theta12, Theta12),
                term(int(1), Theta1, XTheta1),
                term(int(1), Theta2, XTheta2),
                term(rat(-1, 2), One, X2),
            ],
        }
    }
}

impl CasimirSpec {
    /// `K(u_i, u_j^*)` for every ordered pair of primal and dual basis elements.
    pub fn duality_matrix(&self) -> Vec<Vec<Rational>> {
        self.terms
            .iter()
            .map(|ti| {
                let u = SpoMatrix::of_generator(ti.primal);
                self.terms
                    .iter()
                    .map(|tj| {
                        let dual = SpoMatrix::of_generator(tj.dual).scale(&tj.factor);
                        kform(&u, &dual).expect("generator matrices lie in spo(2|2)")
                    })
                    .collect()
            })
            .collect()
    }

    /// Applies the Casimir element in the chosen representation.
    pub fn apply(&self, g: &GradedSymbol, lambda: &Weight, rep: Rep) -> GradedSymbol {
        let act = |gen: Generator, s: &GradedSymbol| match rep {
            Rep::L => lie_symbol_graded(&gen.hamiltonian(), s),
            Rep::CalL => lie_symbol_transported(&gen.hamiltonian(), s, lambda),
        };
        let mut out = GradedSymbol::zero(g.delta.clone());
        for t in &self.terms {
            let inner = act(t.primal, g);
            out = out.add(&act(t.dual, &inner).scale(&t.factor));
        }
        out
    }
}

/// Casimir of `rep` applied to a single-degree symbol.
pub fn casimir(s: &Symbol, lambda: &Weight, rep: Rep) -> GradedSymbol {
    CasimirSpec::default().apply(&s.graded(), lambda, rep)
}

pub fn casimir_graded(g: &GradedSymbol, lambda: &Weight, rep: Rep) -> GradedSymbol {
    CasimirSpec::default().apply(g, lambda, rep)
}

/// Eigenvalue of `C` on degree-`k` symbols: `(delta - k)^2`, minus `1/4` for half-integer `k`.
pub fn alpha(k: HalfInt, delta: &Weight) -> Rational {
    let d = delta - k.to_rational();
    let sq = &d * &d;
    if k.is_integer() {
        sq
    } else {
        sq - rat(1, 4)
    }
}

/// Critical values of `delta` with both degrees at most `k_max`, from the three closed families.
pub fn critical_values(k_max: HalfInt) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for k in k_max.steps_up_to() {
        for l in (0..k.twice()).map(HalfInt) {
            let (kr, lr) = (k.to_rational(), l.to_rational());
            let diff = &kr - &lr;
            let sq = &kr * &kr - &lr * &lr;
            let value = match (k.is_integer(), l.is_integer()) {
                (true, true) => (&kr + &lr) * rat(1, 2),
                (true, false) => (sq + rat(1, 4)) / (int(2) * diff),
                (false, true) => (sq - rat(1, 4)) / (int(2) * diff),
                // two half-integers: alpha_k = alpha_l reduces to the integer family
                (false, false) => (&kr + &lr) * rat(1, 2),
            };
            out.insert(value);
        }
    }
    out
}

/// Critical values found by solving `alpha_k = alpha_l` pairwise, independently of the families.
pub fn critical_values_brute_force(k_max: HalfInt) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for k in k_max.steps_up_to() {
        for l in (0..k.twice()).map(HalfInt) {
            // alpha_k - alpha_l is linear in delta: evaluate at 0 and 1.
            let at = |d: &Rational| alpha(k, d) - alpha(l, d);
            let c0 = at(&int(0));
            let slope = at(&int(1)) - &c0;
            if slope != int(0) {
                out.insert(-c0 / slope);
            }
        }
    }
    out
}

pub fn is_critical(delta: &Weight, k_max: HalfInt) -> bool {
    critical_values(k_max).contains(delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::superfn::{Parity, SuperFn};
    use crate::symbol::n_closed_form;

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(HalfInt(2), &int(0)), int(1));
        assert_eq!(alpha(HalfInt(1), &int(0)), int(0));
        let d = rat(5, 7);
        assert_eq!(alpha(HalfInt(0), &d), &d * &d);
    }

    #[test]
    fn duality() {
        let m = CasimirSpec::default().duality_matrix();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, int(if i == j { 1 } else { 0 }), "({i},{j})");
            }
        }
    }

    #[test]
    fn casimir_examples() {
        let s = Symbol::new(HalfInt(2), rat(1, 3), SuperFn::x(), SuperFn::zero()).unwrap();
        assert_eq!(casimir(&s, &int(0), Rep::L), s.scale(&rat(4, 9)).graded());
        let mut rng = Sampler::new(1, 3);
        let s = rng.symbol(HalfInt(1), &rat(1, 2), Parity::Odd);
        assert_eq!(casimir(&s, &int(0), Rep::L), s.scale(&rat(-1, 4)).graded());
    }

    #[test]
    fn casimir_eigenvalue_law() {
        let mut rng = Sampler::new(2, 3);
        for k in (0..=6).map(HalfInt) {
            for p in [Parity::Even, Parity::Odd] {
                let (lam, delta) = (rng.weight(), rng.weight());
                let s = rng.symbol(k, &delta, p);
                assert_eq!(casimir(&s, &lam, Rep::L), s.scale(&alpha(k, &delta)).graded(), "k={k} {p:?}");
            }
        }
    }

    #[test]
    fn n_operator_matches_casimir_difference() {
        let mut rng = Sampler::new(4, 3);
        for k in (0..=6).map(HalfInt) {
            for p in [Parity::Even, Parity::Odd] {
                let (lam, delta) = (rng.weight(), rng.weight());
                let s = rng.symbol(k, &delta, p);
                let diff = casimir(&s, &lam, Rep::CalL).sub(&casimir(&s, &lam, Rep::L));
                assert_eq!(diff, n_closed_form(&s, &lam), "k={k} {p:?}");
            }
        }
    }

    #[test]
    fn critical_families_match_brute_force() {
        for k in (1..=8).map(HalfInt) {
            assert_eq!(critical_values(k), critical_values_brute_force(k), "K_max={k}");
        }
        let c = critical_values(HalfInt(2));
        for v in [rat(1, 2), int(1), int(0)] {
            assert!(c.contains(&v));
        }
    }
}
