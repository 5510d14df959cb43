use qka::freegroup::{parse_word, KnotSpec, Word};
use qka::numerics::{dist, Ctx, MatC};
use qka::representations::*;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rand_chacha::ChaCha8Rng;

fn all_params(ctx: &Ctx, u: &rug::Complex) -> Vec<RepParams> {
    let mut v = vec![
        RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: 1 }),
        RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: -1 }),
    ];
    for a in 1..=3 {
        for k in 0..a {
            v.push(RepParams::new(KnotSpec::Torus { a }, u.clone(), Branch::Torus { k }));
        }
    }
    for (a, b) in [(1, 6), (1, 7), (1, 8), (2, 10), (2, 12)] {
        let knot = KnotSpec::IteratedTorus { a, b };
        for j in 0..b {
            v.push(RepParams::new(knot, u.clone(), Branch::AN { j }));
        }
        for k in 0..a {
            v.push(RepParams::new(knot, u.clone(), Branch::NA { k }));
            let c = 2 * b + 1 - 4 * (2 * a + 1);
            for h in 0..c {
                if 2 * h + 1 != c {
                    v.push(RepParams::new(knot, u.clone(), Branch::NN { k, h }));
                }
            }
        }
    }
    let _ = ctx;
    v
}

#[test]
fn relators_hold_and_determinants_are_one() {
    let ctx = Ctx::default();
    for u in [ctx.c(0.2, 0.1), ctx.c(-0.31, 0.05), ctx.real(0.45)] {
        for p in all_params(&ctx, &u) {
            let rep = build_representation(&ctx, &p).unwrap();
            for g in &rep.presentation.generators {
                let d = rep.image(g).unwrap().det();
                assert!(dist(&d, &ctx.one()) < 1e-20, "{p:?} det {g}");
            }
            let r = rep.relator_residual().unwrap();
            assert!(r < 1e-20, "{:?} {:?} residual {r:e}", p.knot, p.branch);
        }
    }
}

#[test]
fn longitude_word_matches_closed_form() {
    let ctx = Ctx::default();
    for u in [ctx.c(0.2, 0.1), ctx.real(0.37)] {
        for p in all_params(&ctx, &u) {
            let rep = build_representation(&ctx, &p).unwrap();
            let by_word = evaluate_word(&rep, &rep.presentation.longitude).unwrap();
            let closed = longitude_closed_form(&ctx, &p).unwrap();
            let err = by_word.dist(&closed) / closed.norm();
            assert!(err < 1e-20, "{:?} {:?}: {err:e}", p.knot, p.branch);
        }
    }
}

#[test]
fn fig8_longitude_entry_is_ell() {
    let ctx = Ctx::default();
    let u = ctx.real(0.21);
    let rep = build_representation(&ctx, &RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: 1 })).unwrap();
    let l = evaluate_word(&rep, &rep.presentation.longitude).unwrap();
    assert!(dist(l.get(0, 0), &fig8_ell(&u, 1)) < 1e-60);
}

#[test]
fn torus_longitude_matches_printed_matrix() {
    let ctx = Ctx::default();
    let u = ctx.c(0.3, -0.2);
    for a in 1..=3 {
        let p = RepParams::new(KnotSpec::Torus { a }, u.clone(), Branch::Torus { k: 0 });
        let rep = build_representation(&ctx, &p).unwrap();
        let l = evaluate_word(&rep, &rep.presentation.longitude).unwrap();
        let n = (2 * a + 1) as u32;
        let nu = u.clone() * n;
        assert!(dist(l.get(0, 0), &-(-nu.clone()).exp()) < 1e-60);
        assert!(dist(l.get(1, 1), &-nu.clone().exp()) < 1e-60);
        assert!(dist(l.get(0, 1), &(nu.sinh() / (u.clone() / 2u32).sinh())) < 1e-60);
    }
}

#[test]
fn meridian_commutes_with_longitude() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let u = ctx.c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.3..0.3));
        for p in all_params(&ctx, &u) {
            let rep = build_representation(&ctx, &p).unwrap();
            let m = evaluate_word(&rep, &rep.presentation.meridian).unwrap();
            let l = evaluate_word(&rep, &rep.presentation.longitude).unwrap();
            let comm = m.mul(&l).sub(&l.mul(&m));
            assert!(comm.norm() < 1e-20 * (1.0 + l.norm()), "{:?}", p.branch);
        }
    }
}

#[test]
fn an_restricted_to_companion_is_abelian() {
    let ctx = Ctx::default();
    let u = ctx.c(0.25, 0.1);
    let knot = KnotSpec::IteratedTorus { a: 1, b: 6 };
    for j in 0..6 {
        let rep = build_representation(&ctx, &RepParams::new(knot, u.clone(), Branch::AN { j })).unwrap();
        let x = rep.image("x").unwrap();
        let y = rep.image("y").unwrap();
        assert!(x.mul(y).dist(&y.mul(x)) < 1e-60);
        let lc = evaluate_word(&rep, &companion_longitude_word(&rep.params).unwrap()).unwrap();
        assert!(lc.dist(&MatC::identity(&ctx, 2)) < 1e-40);
    }
}

#[test]
fn na_companion_longitude_matches_closed_form() {
    let ctx = Ctx::default();
    let u = ctx.c(0.25, 0.1);
    for (a, b) in [(1, 6), (2, 10)] {
        for k in 0..a {
            let p = RepParams::new(KnotSpec::IteratedTorus { a, b }, u.clone(), Branch::NA { k });
            let rep = build_representation(&ctx, &p).unwrap();
            let lc = evaluate_word(&rep, &companion_longitude_word(&p).unwrap()).unwrap();
            assert!(lc.dist(&na_companion_longitude_closed_form(&ctx, &p).unwrap()) < 1e-40);
        }
    }
}

#[test]
fn nn_companion_longitude_trace() {
    let ctx = Ctx::default();
    let u = ctx.c(0.2, 0.1);
    let (a, b) = (1, 8);
    for h in [0, 1, 3, 4] {
        let p = RepParams::new(KnotSpec::IteratedTorus { a, b }, u.clone(), Branch::NN { k: 0, h });
        let rep = build_representation(&ctx, &p).unwrap();
        let lc = evaluate_word(&rep, &companion_longitude_word(&p).unwrap()).unwrap();
        let w3 = p.omega3(&ctx).unwrap();
        let n = 2 * (2 * a + 1);
        let w = w3.clone().pow(n as i32);
        let expect = -(w.clone() + w.recip());
        assert!(dist(&lc.trace(), &expect) < 1e-40);
    }
}

#[test]
fn root_conditions() {
    let ctx = Ctx::default();
    let u = ctx.real(0.1);
    let knot = KnotSpec::IteratedTorus { a: 2, b: 12 };
    let p = RepParams::new(knot, u.clone(), Branch::NN { k: 1, h: 3 });
    let m1 = ctx.int(-1);
    assert!(dist(&p.omega1(&ctx).unwrap().pow(5), &m1) < 1e-60);
    assert!(dist(&p.omega3(&ctx).unwrap().pow(p.gamma() as i32), &m1) < 1e-60);
    let p = RepParams::new(knot, u, Branch::AN { j: 7 });
    assert!(dist(&p.omega2(&ctx).unwrap().pow(25), &m1) < 1e-60);
}

#[test]
fn word_evaluation_is_a_homomorphism() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 7 }, ctx.c(0.2, 0.3), Branch::NN { k: 0, h: 0 });
    let rep = build_representation(&ctx, &p).unwrap();
    let gens = ["x", "y", "p", "q"];
    let random_word = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..6);
        Word::from_syllables((0..n).map(|_| (gens[rng.gen_range(0..4)].to_string(), rng.gen_range(-3..=3))))
    };
    for _ in 0..100 {
        let w1 = random_word(&mut rng);
        let w2 = random_word(&mut rng);
        let lhs = evaluate_word(&rep, &w1.mul(&w2)).unwrap();
        let rhs = evaluate_word(&rep, &w1).unwrap().mul(&evaluate_word(&rep, &w2).unwrap());
        assert!(lhs.dist(&rhs) < 1e-50 * (1.0 + rhs.norm()));
    }
    assert!(evaluate_word(&rep, &Word::empty()).unwrap().dist(&MatC::identity(&ctx, 2)) == 0.0);
    assert!(evaluate_word(&rep, &parse_word("z").unwrap()).is_err());
}
