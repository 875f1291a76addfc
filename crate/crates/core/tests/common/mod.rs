//! Identity checks shared by the integration suites.
#![allow(dead_code)]

use superquant::diffop::{lie_density_op, op_bracket};
use superquant::rational::{int, rat};
use superquant::spo_matrix::SpoMatrix;
use superquant::{contact_bracket, hamiltonian_field, projective_embed, DiffOp, Generator, Mono, SuperFn};

pub fn op(l: u32, m: u8, n: u8, c: SuperFn) -> DiffOp {
    DiffOp::monomial(int(0), int(0), Mono::new(l, m, n), c)
}

fn vf(f: &SuperFn) -> DiffOp {
    lie_density_op(f, &int(0))
}

fn bracket(a: &DiffOp, b: &DiffOp) -> DiffOp {
    op_bracket(a, b).expect("same density module")
}

/// `[X_f, dx^k]` against its expansion in `f'`, `f''` and `Dbar_i(f')`.
pub fn commutator_dx_power(f: &SuperFn, k: u32) -> bool {
    let kr = int(k as i64);
    let fp = f.dx();
    let sign = f.parity().expect("homogeneous").sign();
    let half = rat(1, 2) * &kr * sign;
    let rhs = op(k, 0, 0, fp.scale(&-kr.clone()))
        .add(&op(k - 1, 1, 0, fp.dbar(1).scale(&half)))
        .add(&op(k - 1, 0, 1, fp.dbar(2).scale(&half)))
        .add(&op(k - 1, 0, 0, fp.dx().scale(&(-&kr * int(k as i64 - 1) / int(2)))));
    bracket(&vf(f), &op(k, 0, 0, SuperFn::one())) == rhs
}

/// `[X_f, Dbar_i]`.
pub fn commutator_dbar(f: &SuperFn, i: u8) -> bool {
    let d12 = f.dbar(2).dbar(1).scale(&rat(1, 2));
    let fp = f.dx().scale(&rat(-1, 2));
    let rhs = if i == 1 {
        op(0, 1, 0, fp).add(&op(0, 0, 1, d12))
    } else {
        op(0, 0, 1, fp).add(&op(0, 1, 0, -d12))
    };
    let dbar = if i == 1 { op(0, 1, 0, SuperFn::one()) } else { op(0, 0, 1, SuperFn::one()) };
    bracket(&vf(f), &dbar) == rhs
}

/// `[dx^k, f] = k f' dx^{k-1} + k(k-1)/2 f'' dx^{k-2}`, exact for `f''' = 0`.
pub fn commutator_multiplication(f: &SuperFn, k: u32) -> bool {
    let kr = int(k as i64);
    let mut rhs = op(k - 1, 0, 0, f.dx().scale(&kr));
    if k >= 2 {
        rhs = rhs.add(&op(k - 2, 0, 0, f.dx().dx().scale(&(&kr * int(k as i64 - 1) / int(2)))));
    }
    bracket(&op(k, 0, 0, SuperFn::one()), &op(0, 0, 0, f.clone())) == rhs
}

/// All four commutator identities for every generator and `1 <= k <= k_max`.
pub fn commutator_identities(k_max: u32) -> Vec<String> {
    let mut failures = Vec::new();
    for g in Generator::ALL {
        let f = g.hamiltonian();
        for k in 1..=k_max {
            if !commutator_dx_power(&f, k) {
                failures.push(format!("[X_{g}, dx^{k}]"));
            }
            if !commutator_multiplication(&f, k) {
                failures.push(format!("[dx^{k}, {g}]"));
            }
        }
        for i in [1, 2] {
            if !commutator_dbar(&f, i) {
                failures.push(format!("[X_{g}, Dbar_{i}]"));
            }
        }
    }
    failures
}

/// Pairs `(f, g)` of generators where `X_{f,g} != [X_f, X_g]`.
pub fn bracket_homomorphism_failures() -> Vec<(Generator, Generator)> {
    let mut out = Vec::new();
    for f in Generator::ALL {
        for g in Generator::ALL {
            let lhs = hamiltonian_field(&contact_bracket(&f.hamiltonian(), &g.hamiltonian()));
            let rhs = f.field().bracket(&g.field());
            if lhs != rhs {
                out.push((f, g));
            }
        }
    }
    out
}

/// `Dbar_i^2 = -dx` and `Dbar_1 Dbar_2 + Dbar_2 Dbar_1 = 0` as operators.
pub fn dbar_relations() -> bool {
    let d1 = op(0, 1, 0, SuperFn::one());
    let d2 = op(0, 0, 1, SuperFn::one());
    let minus_dx = op(1, 0, 0, -SuperFn::one());
    let c = |a: &DiffOp, b: &DiffOp| a.compose(b).expect("weights");
    c(&d1, &d1) == minus_dx && c(&d2, &d2) == minus_dx && c(&d1, &d2).add(&c(&d2, &d1)).is_zero()
}

/// The projective images of the eight basis matrices, as listed scalar multiples of `X_g`.
pub fn embedding_images() -> Vec<String> {
    use Generator::*;
    let expected = [
        (X, 2),
        (X2, 1),
        (One, -1),
        (Theta12, 2),
        (XTheta1, -2),
        (XTheta2, -2),
        (Theta1, 2),
        (Theta2, 2),
    ];
    let mut failures = Vec::new();
    for (i, (m, (g, c))) in SpoMatrix::basis().iter().zip(expected).enumerate() {
        match projective_embed(m) {
            Ok(v) if v == g.field().scale(&int(c)) => {}
            Ok(v) => failures.push(format!("basis {i}: got {v}")),
            Err(e) => failures.push(format!("basis {i}: {e}")),
        }
    }
    failures
}
