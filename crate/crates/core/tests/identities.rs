//! Exhaustive identities on small Grassmannians.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qkgr::invariants::{gw_dual, gw_sheaf, sym3, two_point_dual, SpecialGw};
use qkgr::k0_oracle::{k0_constant, k0_product};
use qkgr::pieri::{lenart_coeff, quantum_pieri};
use qkgr::qh_oracle::{is_positive, qh_star};
use qkgr::verify::{check_assoc, check_deg0, check_signs, run_suite, Suite, SuiteOptions};
use qkgr::{GrassCtx, Partition, QKElement, QkRing};

fn p(rows: &[i64]) -> Partition {
    Partition::new(rows).unwrap()
}

fn grassmannians(max_n: usize) -> Vec<GrassCtx> {
    (2..=max_n)
        .flat_map(|n| (1..n).map(move |m| GrassCtx::new(m, n).unwrap()))
        .collect()
}

/// Every partition of weight at most `w`.
fn partitions_up_to(w: usize) -> Vec<Partition> {
    GrassCtx::new(w, 2 * w)
        .unwrap()
        .partitions()
        .into_iter()
        .filter(|p| p.weight() <= w)
        .collect()
}

#[test]
fn lenart_matches_grothendieck_products() {
    let shapes = partitions_up_to(6);
    for i in 1..=3usize {
        for lambda in shapes.iter().filter(|l| l.weight() + i <= 6) {
            // six variables and weight six capture every nu below
            let oracle = k0_product(&Partition::from_rows([i]), lambda, 6, 6).unwrap();
            for nu in &shapes {
                let want = oracle.get(nu).cloned().unwrap_or_default();
                assert_eq!(
                    lenart_coeff(i as i64, lambda, nu),
                    want,
                    "i={i} lambda={lambda} nu={nu}"
                );
            }
        }
    }
}

#[test]
fn lenart_weight_bound_and_sign() {
    let shapes = partitions_up_to(6);
    for i in 1..=4i64 {
        for lambda in &shapes {
            for nu in &shapes {
                let c = lenart_coeff(i, lambda, nu);
                let e = nu.weight() as i64 - lambda.weight() as i64 - i;
                if e < 0 {
                    assert!(c.is_zero());
                } else if e % 2 == 1 {
                    assert!(!c.is_positive(), "i={i} lambda={lambda} nu={nu}");
                } else {
                    assert!(!c.is_negative(), "i={i} lambda={lambda} nu={nu}");
                }
            }
        }
    }
}

#[test]
fn grothendieck_constants_are_stable_and_alternate() {
    let shapes = partitions_up_to(3);
    for lambda in &shapes {
        for mu in &shapes {
            let n = (lambda.len() + mu.len()).max(1);
            let cap = lambda.weight() + mu.weight() + 2;
            let small = k0_product(lambda, mu, n, cap).unwrap();
            let large = k0_product(lambda, mu, n + 1, cap).unwrap();
            let fits: BTreeMap<_, _> = large
                .iter()
                .filter(|(nu, _)| nu.len() <= n)
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect();
            assert_eq!(small, fits, "lambda={lambda} mu={mu}");
            for (nu, c) in &large {
                let e = nu.weight() - lambda.weight() - mu.weight();
                assert_eq!(
                    c.is_negative(),
                    e % 2 == 1,
                    "lambda={lambda} mu={mu} nu={nu}"
                );
                assert_eq!(k0_constant(lambda, mu, nu).unwrap(), *c);
            }
        }
    }
}

#[test]
fn deg0_agreement_up_to_n8() {
    for ctx in grassmannians(8).into_iter().filter(|c| c.n() >= 7) {
        let report = check_deg0(&QkRing::new(ctx), 20, 11).unwrap();
        assert!(report.pass, "{report}");
    }
}

#[test]
fn quantum_part_needs_full_length() {
    for ctx in grassmannians(6) {
        for lambda in ctx.partitions().iter().filter(|l| l.len() < ctx.m()) {
            for i in 1..=ctx.k() as i64 {
                let prod = quantum_pieri(&ctx, i, lambda).unwrap();
                assert_eq!(
                    prod.max_q_degree().unwrap_or(0),
                    0,
                    "{ctx} i={i} lambda={lambda}"
                );
            }
        }
    }
}

#[test]
fn giambelli_reproduces_classes_classically() {
    for ctx in grassmannians(7) {
        let ring = QkRing::new(ctx);
        let unit = ring.schubert(&Partition::empty()).unwrap();
        for lambda in ctx.partitions() {
            let expr = ring.giambelli_expr(&lambda).unwrap();
            assert!(expr.depth() <= ctx.k() * ctx.m());
            let at_zero = ring.apply(&expr, &unit).unwrap().classical_part();
            assert_eq!(at_zero, ring.schubert(&lambda).unwrap(), "{ctx} {lambda}");
        }
    }
}

#[test]
fn recurrence_and_degree_zero_layer() {
    for ctx in grassmannians(6) {
        let ring = QkRing::new(ctx);
        let all = ctx.partitions();
        for lambda in &all {
            for mu in &all {
                let prod = ring.star(lambda, mu).unwrap();
                for nu in &all {
                    assert_eq!(
                        gw_dual(&ring, lambda, mu, nu, 0).unwrap(),
                        prod.coefficient(nu, 0)
                    );
                    for d in 1..=ctx.m() as u32 {
                        let mut correction = BigInt::zero();
                        for kappa in &all {
                            for e in 1..=d {
                                if two_point_dual(&ctx, kappa, nu, e).unwrap() == 1 {
                                    correction += prod.coefficient(kappa, d - e);
                                }
                            }
                        }
                        assert_eq!(
                            prod.coefficient(nu, d),
                            gw_dual(&ring, lambda, mu, nu, d).unwrap() - correction,
                            "{ctx} {lambda} {mu} {nu} d={d}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn two_point_invariants_are_three_point_with_unit() {
    for ctx in grassmannians(6) {
        let ring = QkRing::new(ctx);
        let all = ctx.partitions();
        for lambda in &all {
            for nu in &all {
                for d in 0..=ctx.m() as u32 + 1 {
                    assert_eq!(
                        gw_dual(&ring, lambda, &Partition::empty(), nu, d).unwrap(),
                        BigInt::from(two_point_dual(&ctx, lambda, nu, d).unwrap())
                    );
                }
            }
        }
    }
}

#[test]
fn sheaf_invariants_stabilize_at_one() {
    for ctx in grassmannians(6) {
        let ring = QkRing::new(ctx);
        let all = ctx.partitions();
        for lambda in &all {
            let d = (ctx.m() + lambda.len()) as u32;
            for mu in &all {
                for nu in &all {
                    for extra in 0..2 {
                        assert_eq!(
                            gw_sheaf(&ring, lambda, mu, nu, d + extra).unwrap(),
                            BigInt::from(1)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn sym3_is_symmetric_and_reads_structure_constants() {
    for ctx in grassmannians(5) {
        let ring = QkRing::new(ctx);
        let all = ctx.partitions();
        for a in &all {
            for b in &all {
                for c in &all {
                    let s = sym3(&ring, a, b, c).unwrap();
                    let dual = ctx.dual(c).unwrap();
                    for d in 0..=ctx.m() as u32 + 1 {
                        assert_eq!(s.coeff(d), ring.structure_constant(a, b, &dual, d).unwrap());
                    }
                    for perm in [[b, a, c], [c, b, a], [a, c, b], [b, c, a], [c, a, b]] {
                        assert_eq!(sym3(&ring, perm[0], perm[1], perm[2]).unwrap(), s);
                    }
                }
            }
        }
    }
}

#[test]
fn special_invariants_on_gr26_and_gr36() {
    for (m, n) in [(2, 6), (3, 6), (4, 6)] {
        let ctx = GrassCtx::new(m, n).unwrap();
        let ring = QkRing::new(ctx);
        let special = SpecialGw::new(ctx);
        let all = ctx.partitions();
        for d in 1..=4u32 {
            for lambda in all.iter().filter(|l| l.len() <= d as usize) {
                for mu in &all {
                    for nu in &all {
                        assert_eq!(
                            special.compute(lambda, mu, nu, d).unwrap(),
                            gw_sheaf(&ring, lambda, mu, nu, d).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn quantum_cohomology_oracle_is_a_positive_graded_ring() {
    for ctx in grassmannians(6) {
        let all = ctx.partitions();
        for a in &all {
            for b in &all {
                let ab = qh_star(&ctx, a, b).unwrap();
                assert!(is_positive(&ab));
                assert_eq!(ab, qh_star(&ctx, b, a).unwrap());
                for (nu, d, _) in ab.flat_terms() {
                    assert_eq!(nu.weight() + ctx.n() * d as usize, a.weight() + b.weight());
                }
            }
        }
    }
    // associativity on Gr(2,5)
    let ctx = GrassCtx::new(2, 5).unwrap();
    let all = ctx.partitions();
    let times = |x: &QKElement, nu: &Partition| {
        let mut out = QKElement::zero(ctx);
        for (kappa, poly) in x.terms() {
            out = out
                .try_add(&qh_star(&ctx, kappa, nu).unwrap().scale(poly))
                .unwrap();
        }
        out
    };
    for a in &all {
        for b in &all {
            for c in &all {
                let left = times(&qh_star(&ctx, a, b).unwrap(), c);
                let right = times(&qh_star(&ctx, b, c).unwrap(), a);
                assert_eq!(left, right, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let ctx = GrassCtx::new(3, 6).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let ring = QkRing::new(ctx);
            let opts = SuiteOptions {
                samples: Some(30),
                seed: 5,
                special_max_degree: 2,
            };
            Suite::ALL
                .iter()
                .map(|s| run_suite(&ring, *s, &opts).unwrap().to_json())
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn first_violation_is_minimal() {
    // a corrupted product table must be reported at its smallest input
    let ctx = GrassCtx::new(2, 4).unwrap();
    let ring = QkRing::new(ctx);
    let wrong = QKElement::parse_text(ctx, "O[2,1] + 3*q").unwrap();
    ring.preload(&p(&[1]), &p(&[2]), wrong.clone()).unwrap();
    ring.preload(&p(&[2]), &p(&[1]), wrong).unwrap();
    ring.preload(
        &p(&[2, 2]),
        &p(&[2, 2]),
        QKElement::parse_text(ctx, "-q^2").unwrap(),
    )
    .unwrap();
    let report = check_signs(&ring).unwrap();
    assert!(!report.pass);
    assert_eq!(
        report.first_violation().unwrap().inputs,
        "lambda=(1) mu=(2) nu=() d=1"
    );
    assert!(check_assoc(&ring, None, 0).unwrap().violations.len() > 1);
}

#[test]
fn degree_zero_two_point_sheaf_is_euler_characteristic() {
    for ctx in grassmannians(7) {
        let ring = QkRing::new(ctx);
        let all = ctx.partitions();
        for kappa in &all {
            for nu in &all {
                let chi = ring.star(kappa, nu).unwrap().classical_part().chi_q().coeff(0);
                let brion = qkgr::invariants::two_point_sheaf(&ctx, kappa, nu, 0).unwrap();
                assert_eq!(chi, BigInt::from(brion), "{ctx} {kappa} {nu}");
            }
        }
    }
}
