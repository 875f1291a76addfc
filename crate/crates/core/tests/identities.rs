mod common;

use superquant::diffop::{lie_density_op, op_bracket};
use superquant::quantize::{check_equivariance, Method};
use superquant::random::Sampler;
use superquant::rational::{int, rat};
use superquant::spo_matrix::SpoMatrix;
use superquant::{
    contact_bracket, lie_op, principal_symbol, projective_embed, DiffOp, Generator, HalfInt, Mono, Parity,
};

#[test]
fn commutators_with_derivatives() {
    let failures = common::commutator_identities(5);
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn contact_bracket_is_a_homomorphism() {
    assert!(common::bracket_homomorphism_failures().is_empty());
}

#[test]
fn dbar_relations() {
    assert!(common::dbar_relations());
}

#[test]
fn embedding_images() {
    let failures = common::embedding_images();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn embedding_respects_brackets() {
    let basis = SpoMatrix::basis();
    for a in &basis {
        for b in &basis {
            let lhs = projective_embed(&a.bracket(b)).unwrap();
            let rhs = projective_embed(a).unwrap().bracket(&projective_embed(b).unwrap());
            assert_eq!(lhs, rhs, "[{a}, {b}]");
        }
    }
}

#[test]
fn density_action_is_a_homomorphism() {
    for lambda in [int(0), rat(1, 2), rat(-5, 3)] {
        for f in Generator::ALL {
            for g in Generator::ALL {
                let (hf, hg) = (f.hamiltonian(), g.hamiltonian());
                let lhs = lie_density_op(&contact_bracket(&hf, &hg), &lambda);
                let rhs = op_bracket(&lie_density_op(&hf, &lambda), &lie_density_op(&hg, &lambda)).unwrap();
                assert_eq!(lhs, rhs, "lambda = {lambda}, ({f}, {g})");
            }
        }
    }
}

fn random_op(rng: &mut Sampler, lambda: &superquant::Weight, mu: &superquant::Weight, max_l: u32) -> DiffOp {
    let mut terms = Vec::new();
    for l in 0..=max_l {
        for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            if rng.gen_range(0..=2) > 0 {
                terms.push((Mono::new(l, m, n), rng.superfn(None)));
            }
        }
    }
    DiffOp::from_terms(lambda.clone(), mu.clone(), terms)
}

#[test]
fn composition_is_associative_and_acts() {
    let mut rng = Sampler::new(17, 3);
    for _ in 0..10 {
        let w: Vec<_> = (0..4).map(|_| rng.weight()).collect();
        let c = random_op(&mut rng, &w[0], &w[1], 2);
        let b = random_op(&mut rng, &w[1], &w[2], 2);
        let a = random_op(&mut rng, &w[2], &w[3], 1);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        let f = rng.superfn(None);
        assert_eq!(a.compose(&b).unwrap().apply(&f), a.apply(&b.apply(&f)));
    }
}

#[test]
fn composition_rejects_mismatched_weights() {
    let a = DiffOp::identity(int(1));
    let b = DiffOp::identity(int(2));
    assert!(a.compose(&b).is_err());
}

#[test]
fn lie_derivative_preserves_order_and_symbol() {
    let mut rng = Sampler::new(23, 3);
    for _ in 0..4 {
        let (lambda, mu) = (rng.weight(), rng.weight());
        let d = random_op(&mut rng, &lambda, &mu, 4);
        let order = d.order();
        for g in Generator::ALL {
            let moved = lie_op(&g.hamiltonian(), &d);
            assert!(moved.is_zero() || moved.order() <= order);
            let lhs = principal_symbol(&moved, order).unwrap();
            let rhs = superquant::lie_symbol(&g.hamiltonian(), &principal_symbol(&d, order).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn quantization_is_equivariant_for_half_integer_degree() {
    let mut rng = Sampler::new(31, 3);
    let (lambda, delta) = (rat(-2, 9), rat(5, 7));
    for k2 in [1, 3, 5] {
        let s = rng.symbol(HalfInt(k2), &delta, Parity::Odd);
        for g in Generator::ALL {
            for method in [Method::Iterative, Method::ClosedForm] {
                assert!(check_equivariance(g, &s, &lambda, method).unwrap().is_none(), "{g} {method:?} k={}", HalfInt(k2));
            }
        }
    }
}

#[test]
fn affine_generators_commute_with_affine_quantization() {
    let mut rng = Sampler::new(3, 4);
    let s = rng.symbol(HalfInt(4), &rat(1, 3), Parity::Even);
    for g in Generator::ALL {
        let bad = check_equivariance(g, &s, &int(1), Method::Affine).unwrap();
        assert_eq!(bad.is_none(), g.is_affine(), "{g}");
    }
}
