//! The equivariant quantization: an iterative Casimir-eigenvector solver, the
//! explicit coefficient formulas, and an exact equivariance checker.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::casimir::{alpha, casimir_graded, Rep};
use crate::contact::Generator;
use crate::diffop::{lie_op, DiffOp};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, HalfInt, Rational, Weight};
use crate::random::Sampler;
use crate::superfn::{Parity, SuperFn};
use crate::symbol::{lie_symbol, principal_symbol, q_aff, q_aff_graded, GradedSymbol, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Unique,
    NoSolution,
    Ambiguous,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unique => "Unique",
            Status::NoSolution => "NoSolution",
            Status::Ambiguous => "Ambiguous",
        })
    }
}

/// One solved degree of the eigenvector system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotDiagnostic {
    pub degree: HalfInt,
    /// `alpha_degree - alpha_k`.
    pub pivot: Rational,
    pub rhs_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantizationResult {
    pub status: Status,
    pub operator: Option<DiffOp>,
    pub graded: Option<GradedSymbol>,
    pub diagnostics: Vec<PivotDiagnostic>,
}

impl QuantizationResult {
    pub fn is_unique(&self) -> bool {
        self.status == Status::Unique
    }
}

/// `N = calC - C` computed from the two Casimir operators.
fn n_operator(g: &GradedSymbol, lambda: &Weight) -> GradedSymbol {
    casimir_graded(g, lambda, Rep::CalL).sub(&casimir_graded(g, lambda, Rep::L))
}

/// Builds the `alpha_k` eigenvector of `calC` whose top-degree part is `s`,
/// one degree at a time, dividing by `alpha_{k-l} - alpha_k`.
///
/// A vanishing pivot with a nonzero right-hand side gives `NoSolution`; with
/// a zero right-hand side the component is set to zero and the result is
/// `Ambiguous`.
pub fn quantize_iterative(s: &Symbol, lambda: &Weight) -> QuantizationResult {
    let k = s.k;
    let alpha_k = alpha(k, &s.delta);
    let mut hat = s.graded();
    let mut n_images: Vec<GradedSymbol> = vec![n_operator(&s.graded(), lambda)];
    let mut diagnostics = Vec::new();
    let mut status = Status::Unique;
    for degree in (0..k.twice()).rev().map(HalfInt) {
        // contributions come from the two degrees just above
        let rhs = n_images
            .iter()
            .rev()
            .take(2)
            .fold(Symbol::zero(degree, s.delta.clone()), |acc, n| acc.add(&n.get(degree)))
            .scale(&int(-1));
        let pivot = alpha(degree, &s.delta) - &alpha_k;
        let rhs_zero = rhs.is_zero();
        diagnostics.push(PivotDiagnostic {
            degree,
            pivot: pivot.clone(),
            rhs_zero,
        });
        let component = if pivot.is_zero() {
            if !rhs_zero {
                return QuantizationResult {
                    status: Status::NoSolution,
                    operator: None,
                    graded: None,
                    diagnostics,
                };
            }
            status = Status::Ambiguous;
            Symbol::zero(degree, s.delta.clone())
        } else {
            rhs.scale(&(int(1) / &pivot))
        };
        debug_assert_eq!(
            casimir_graded(&component.graded(), lambda, Rep::L),
            component.scale(&alpha(degree, &s.delta)).graded(),
            "C acts on degree {degree} as a scalar"
        );
        hat.add_symbol(&component);
        n_images.push(n_operator(&component.graded(), lambda));
    }
    QuantizationResult {
        status,
        operator: Some(q_aff_graded(&hat, lambda)),
        graded: Some(hat),
        diagnostics,
    }
}

/// `A_j = -j`.
fn coeff_a(j: u32) -> Rational {
    -int(j as i64)
}

/// `B_j = -(j + 2 lambda)`.
fn coeff_b(j: u32, lambda: &Weight) -> Rational {
    -(int(j as i64) + int(2) * lambda)
}

/// Coefficients of the explicit formulas for one symbol degree `k`.
struct Coefficients<'a> {
    k: HalfInt,
    delta: &'a Weight,
    lambda: &'a Weight,
}

impl Coefficients<'_> {
    fn alpha_gap(&self, i: HalfInt) -> Rational {
        alpha(self.k, self.delta) - alpha(self.k.checked_sub(i).expect("i <= k"), self.delta)
    }

    fn divide(&self, num: Rational, den: Rational, name: &str, l: HalfInt) -> Result<Rational> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator {
                coefficient: format!("{name}_{l}"),
                degree: self.k.checked_sub(l).expect("l <= k"),
            });
        }
        Ok(num / den)
    }

    /// `prod_{i=1}^{n} (alpha_k - alpha_{k-i})`.
    fn gap_product(&self, n: u32) -> Rational {
        (1..=n).map(|i| self.alpha_gap(HalfInt::from_int(i))).product()
    }

    /// `prod A_j B_j` over the integer degrees `j` in `js`.
    fn ab_product(&self, js: impl Iterator<Item = u32>) -> Rational {
        js.map(|j| coeff_a(j) * coeff_b(j, self.lambda)).product()
    }

    fn half_gap(&self) -> Rational {
        int(2) * self.alpha_gap(HalfInt::HALF)
    }

    /// `(C_l, D_l)`, primed when `k` is a half-integer; `l` is a positive integer.
    fn c_d(&self, l: u32) -> Result<(Rational, Rational)> {
        let kk = self.k.floor();
        let num = if self.k.is_integer() {
            self.ab_product((1..l).map(|i| kk - i))
        } else {
            // A_{k-1/2-i} B_{k-1/2-i}, i = 0..l-1
            self.ab_product((0..l).map(|i| kk - i))
        };
        let den = self.gap_product(l);
        let lh = HalfInt::from_int(l);
        let c = self.divide(num.clone(), den.clone(), "C", lh)?;
        let d = self.divide(-int(l as i64) * num, self.half_gap() * den, "D", lh)?;
        Ok((c, d))
    }

    /// `E_l` (primed for half-integer `k`); `l` is a half-integer.
    fn e(&self, l: HalfInt) -> Result<Rational> {
        let kk = self.k.floor();
        let j = l.floor(); // l - 1/2
        let num = if self.k.is_integer() {
            self.ab_product((1..=j).map(|i| kk - i))
        } else {
            // i = 0 ..= l - 3/2
            self.ab_product((0..j).map(|i| kk - i))
        };
        let den = self.half_gap() * self.gap_product(j);
        self.divide(num, den, "E", l)
    }
}

fn dx_pow(f: &SuperFn, n: u32) -> SuperFn {
    (0..n).fold(f.clone(), |g, _| g.dx())
}

fn d1d2(f: &SuperFn) -> SuperFn {
    f.dbar(2).dbar(1)
}

/// Lower-degree components from the explicit coefficient formulas, for a homogeneous symbol.
fn closed_form_homogeneous(s: &Symbol, parity: Parity, lambda: &Weight) -> Result<GradedSymbol> {
    let k = s.k;
    let co = Coefficients {
        k,
        delta: &s.delta,
        lambda,
    };
    let kk = k.floor();
    let (f1, f2) = (&s.f1, &s.f2);
    // (-1)^{|S|} for integer k, (-1)^{|S|+1} for half-integer k
    let half_step_sign = if k.is_integer() { parity.sign() } else { parity.flip().sign() };
    let mut out = s.graded();
    for l in (1..=k.twice()).map(HalfInt) {
        let degree = k.checked_sub(l).expect("l <= k");
        let j = l.floor();
        let (c1, c2) = if l.is_integer() {
            let (c, d) = co.c_d(j)?;
            let (p1, p2) = (dx_pow(f1, j), dx_pow(f2, j));
            let (q1, q2) = (d1d2(&dx_pow(f1, j - 1)), d1d2(&dx_pow(f2, j - 1)));
            if k.is_integer() {
                let (ak, bk) = (coeff_a(kk), coeff_b(kk, lambda));
                let (akl, bkl) = (coeff_a(kk - j), coeff_b(kk - j, lambda));
                let c1 = &p1.scale(&(&c * &ak * &bkl)) + &(&p1.scale(&(&ak * &bkl)) - &q2.scale(&(&bk * &bkl))).scale(&d);
                let c2 = &p2.scale(&(&c * &akl * &bk)) + &(&q1.scale(&(&ak * &akl)) + &p2.scale(&(&akl * &bk))).scale(&d);
                (c1, c2)
            } else {
                let c1 = &p1.scale(&c) + &(&p1 - &q2).scale(&d);
                let c2 = &p2.scale(&c) + &(&q1 + &p2).scale(&d);
                (c1, c2)
            }
        } else {
            let e = co.e(l)? * &half_step_sign;
            let (p1, p2) = (dx_pow(f1, j), dx_pow(f2, j));
            let (top1, top2, bot1, bot2) = if k.is_integer() {
                let (ak, bk) = (coeff_a(kk), coeff_b(kk, lambda));
                (ak.clone(), bk.clone(), ak, bk)
            } else {
                let m = degree.floor();
                let (a, b) = (coeff_a(m), coeff_b(m, lambda));
                (b.clone(), b, a.clone(), a)
            };
            let c1 = &p1.dbar(1).scale(&top1) + &p2.dbar(2).scale(&top2);
            let c2 = &p1.dbar(2).scale(&bot1) - &p2.dbar(1).scale(&bot2);
            (c1.scale(&e), c2.scale(&e))
        };
        let c2 = if degree == HalfInt::ZERO {
            debug_assert!(c2.is_zero(), "no second component at degree 0");
            SuperFn::zero()
        } else {
            c2
        };
        out.add_symbol(&Symbol {
            k: degree,
            delta: s.delta.clone(),
            f1: c1,
            f2: c2,
        });
    }
    Ok(out)
}

/// Quantization from the explicit coefficient formulas. Defined whenever the
/// coefficients it needs have nonzero denominators.
pub fn quantize_closed_form(s: &Symbol, lambda: &Weight) -> Result<QuantizationResult> {
    let mut hat = GradedSymbol::zero(s.delta.clone());
    let parts = s.homogeneous_parts();
    if parts.is_empty() {
        // the zero symbol still has to pass the denominator checks
        closed_form_homogeneous(s, Parity::Even, lambda)?;
    }
    for (p, part) in parts {
        hat = hat.add(&closed_form_homogeneous(&part, p, lambda)?);
    }
    Ok(QuantizationResult {
        status: Status::Unique,
        operator: Some(q_aff_graded(&hat, lambda)),
        graded: Some(hat),
        diagnostics: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Iterative,
    ClosedForm,
    /// The affine map alone, which is not equivariant; kept as a negative control.
    Affine,
}

/// Quantizes with the chosen method. `Affine` always reports `Unique`.
pub fn quantize(s: &Symbol, lambda: &Weight, method: Method) -> Result<QuantizationResult> {
    match method {
        Method::Iterative => Ok(quantize_iterative(s, lambda)),
        Method::ClosedForm => quantize_closed_form(s, lambda),
        Method::Affine => Ok(QuantizationResult {
            status: Status::Unique,
            operator: Some(q_aff(s, lambda)),
            graded: Some(s.graded()),
            diagnostics: Vec::new(),
        }),
    }
}

/// A symbol where `calL_{X_f} Q(S) != Q(L_{X_f} S)`.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub generator: Generator,
    pub symbol: Symbol,
    /// `calL_{X_f} Q(S) - Q(L_{X_f} S)`.
    pub difference: DiffOp,
}

#[derive(Clone, Debug, Default)]
pub struct EquivarianceReport {
    /// Per generator: number of trials checked and counterexamples found.
    pub per_generator: Vec<(Generator, usize, Vec<Counterexample>)>,
    /// Trials skipped because the quantization was not defined.
    pub errors: Vec<String>,
    /// Trials whose principal symbol was not preserved.
    pub symbol_failures: usize,
}

impl EquivarianceReport {
    pub fn passed_generators(&self) -> usize {
        self.per_generator.iter().filter(|(_, _, bad)| bad.is_empty()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.errors.is_empty()
            && self.symbol_failures == 0
            && self.passed_generators() == self.per_generator.len()
    }
}

impl fmt::Display for EquivarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.all_passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {}/{} generators", self.passed_generators(), self.per_generator.len())?;
        for (g, trials, bad) in &self.per_generator {
            writeln!(f, "  X_{{{g}}}: {}/{trials} trials equivariant", trials - bad.len())?;
            for c in bad.iter().take(1) {
                writeln!(f, "    symbol {}", c.symbol)?;
                writeln!(f, "    difference {}", c.difference)?;
            }
        }
        if self.symbol_failures > 0 {
            writeln!(f, "  principal symbol not preserved in {} trials", self.symbol_failures)?;
        }
        for e in &self.errors {
            writeln!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

/// Checks one symbol against one generator; `Ok(None)` when equivariant.
pub fn check_equivariance(
    g: Generator,
    s: &Symbol,
    lambda: &Weight,
    method: Method,
) -> Result<Option<Counterexample>> {
    let f = g.hamiltonian();
    let q = quantize(s, lambda, method)?;
    let op = q
        .operator
        .ok_or_else(|| Error::Invalid(format!("quantization status {}", q.status)))?;
    let lhs = lie_op(&f, &op);
    let moved = lie_symbol(&f, s);
    let rhs = quantize(&moved, lambda, method)?
        .operator
        .ok_or_else(|| Error::Invalid("quantization of the transformed symbol failed".into()))?;
    let difference = lhs.sub(&rhs);
    Ok((!difference.is_zero()).then(|| Counterexample {
        generator: g,
        symbol: s.clone(),
        difference,
    }))
}

/// Randomized exact check of `calL_{X_f} o Q = Q o L_{X_f}` for all eight generators.
pub fn verify_equivariance(
    lambda: &Weight,
    delta: &Weight,
    k: HalfInt,
    trials: usize,
    seed: u64,
    max_degree: usize,
    method: Method,
) -> EquivarianceReport {
    let mut sampler = Sampler::new(seed, max_degree);
    let symbols: Vec<Symbol> = (0..trials)
        .map(|_| {
            let p = sampler.parity();
            sampler.symbol(k, delta, p)
        })
        .collect();
    let symbol_failures = symbols
        .par_iter()
        .filter(|s| match quantize(s, lambda, method) {
            Ok(QuantizationResult { operator: Some(op), .. }) => {
                principal_symbol(&op, k).map(|p| p != **s).unwrap_or(true)
            }
            _ => false,
        })
        .count();
    let mut report = EquivarianceReport {
        symbol_failures,
        ..EquivarianceReport::default()
    };
    for g in Generator::ALL {
        let outcomes: Vec<Result<Option<Counterexample>>> = symbols
            .par_iter()
            .map(|s| check_equivariance(g, s, lambda, method))
            .collect();
        let mut bad = Vec::new();
        for o in outcomes {
            match o {
                Ok(Some(c)) => bad.push(c),
                Ok(None) => {}
                Err(e) => report.errors.push(format!("X_{{{g}}}: {e}")),
            }
        }
        report.per_generator.push((g, trials, bad));
    }
    report
}

pub(crate) fn describe_pivot(d: &PivotDiagnostic) -> String {
    format!(
        "degree {}: pivot {}, rhs {}",
        d.degree,
        fmt_rational(&d.pivot),
        if d.rhs_zero { "zero" } else { "nonzero" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::Mono;
    use crate::rational::rat;

    fn sym(k2: u32, delta: Rational, f1: SuperFn, f2: SuperFn) -> Symbol {
        Symbol::new(HalfInt(k2), delta, f1, f2).unwrap()
    }

    fn half_step_value() -> DiffOp {
        DiffOp::from_terms(
            int(0),
            rat(1, 3),
            [
                (Mono::new(1, 0, 0), SuperFn::x()),
                (Mono::new(0, 1, 0), SuperFn::theta1().scale(&rat(3, 4))),
                (Mono::new(0, 0, 1), SuperFn::theta2().scale(&rat(3, 4))),
            ],
        )
    }

    #[test]
    fn degree_one_at_one_third() {
        let s = sym(2, rat(1, 3), SuperFn::x(), SuperFn::zero());
        let it = quantize_iterative(&s, &int(0));
        assert_eq!(it.status, Status::Unique);
        assert_eq!(it.operator.as_ref(), Some(&half_step_value()));
        let cf = quantize_closed_form(&s, &int(0)).unwrap();
        assert_eq!(cf.operator, it.operator);
    }

    #[test]
    fn degree_half_is_affine() {
        // degree 0 carries only F1: the S_0 correction is a multiplication
        let s = sym(1, rat(2, 5), SuperFn::theta1(), SuperFn::one());
        let it = quantize_iterative(&s, &rat(1, 3));
        let cf = quantize_closed_form(&s, &rat(1, 3)).unwrap();
        assert_eq!(it.status, Status::Unique);
        assert_eq!(it.operator, cf.operator);
        assert_eq!(principal_symbol(it.operator.as_ref().unwrap(), HalfInt(1)).unwrap(), s);
    }

    #[test]
    fn methods_agree_on_random_symbols() {
        let mut rng = Sampler::new(11, 3);
        for k2 in 1..=5 {
            let k = HalfInt(k2);
            let (lambda, delta) = (rat(2, 7), rat(-3, 11));
            let p = rng.parity();
            let s = rng.symbol(k, &delta, p);
            let it = quantize_iterative(&s, &lambda);
            let cf = quantize_closed_form(&s, &lambda).unwrap();
            assert_eq!(it.status, Status::Unique);
            assert_eq!(it.graded, cf.graded, "k = {k}");
        }
    }

    #[test]
    fn no_solution_at_delta_k() {
        let s = Sampler::new(3, 4).symbol(HalfInt(2), &rat(1, 2), Parity::Odd);
        let r = quantize_iterative(&s, &rat(1, 3));
        assert_eq!(r.status, Status::NoSolution);
        assert!(r.operator.is_none());
        let last = r.diagnostics.last().unwrap();
        assert!(last.pivot.is_zero() && !last.rhs_zero);
    }

    #[test]
    fn delta_k_minus_half_at_lambda_zero_is_ambiguous() {
        // B_0 = -2 lambda removes the right-hand side at degree 0
        let s = Sampler::new(3, 4).symbol(HalfInt(2), &rat(1, 2), Parity::Even);
        let r = quantize_iterative(&s, &int(0));
        assert_eq!(r.status, Status::Ambiguous);
        assert!(r.diagnostics.last().unwrap().rhs_zero);
    }

    #[test]
    fn closed_form_reports_denominator() {
        let s = sym(4, int(2), SuperFn::x(), SuperFn::one());
        match quantize_closed_form(&s, &int(0)) {
            Err(Error::ZeroDenominator { coefficient, degree }) => {
                assert_eq!(coefficient, "E_1/2");
                assert_eq!(degree, HalfInt(3));
            }
            other => panic!("expected a zero denominator, got {other:?}"),
        }
    }

    #[test]
    fn continuity_value() {
        // alpha_2 = alpha_{1/2} at delta = 4/3; no closed-form denominator vanishes
        let (lambda, delta) = (rat(1, 5), rat(4, 3));
        let mut rng = Sampler::new(5, 3);
        let s = rng.symbol(HalfInt(4), &delta, Parity::Odd);
        assert_ne!(quantize_iterative(&s, &lambda).status, Status::Unique);
        let report = verify_equivariance(&lambda, &delta, HalfInt(4), 2, 5, 2, Method::ClosedForm);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn equivariance_and_negative_control() {
        let (lambda, delta) = (int(0), rat(1, 3));
        let ok = verify_equivariance(&lambda, &delta, HalfInt(2), 3, 1, 3, Method::Iterative);
        assert!(ok.all_passed(), "{ok}");
        let s = sym(2, delta.clone(), SuperFn::x(), SuperFn::zero());
        let bad = check_equivariance(Generator::X2, &s, &lambda, Method::Affine).unwrap();
        assert!(bad.is_some());
        for g in Generator::ALL.into_iter().filter(|g| g.is_affine()) {
            assert!(check_equivariance(g, &s, &lambda, Method::Affine).unwrap().is_none());
        }
    }

    #[test]
    fn pivot_description() {
        let d = PivotDiagnostic {
            degree: HalfInt(1),
            pivot: rat(-2, 3),
            rhs_zero: false,
        };
        assert_eq!(describe_pivot(&d), "degree 1/2: pivot -2/3, rhs nonzero");
    }
}
