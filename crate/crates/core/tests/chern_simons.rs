use qka::chern_simons::{self as cs, CSClass, CSValue};
use qka::freegroup::KnotSpec;
use qka::numerics::{abs, dist, Ctx};
use qka::representations::{Branch, RepParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Float};

fn class(ctx: &Ctx, s: (f64, f64), t: (f64, f64), z: (f64, f64)) -> CSClass {
    CSClass::new(ctx.c(s.0, s.1), ctx.c(t.0, t.1), ctx.c(z.0, z.1)).unwrap()
}

fn same(ctx: &Ctx, a: &CSClass, b: &CSClass) -> bool {
    let _ = ctx;
    dist(&a.s, &b.s) < 1e-30 && dist(&a.t, &b.t) < 1e-30 && abs(&(a.z.clone() / &b.z - 1u32)) < 1e-25
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normalize_is_invariant_under_moves(
        sr in -3.0..3.0f64, si in -0.5..0.5f64, tr in -3.0..3.0f64, ti in -0.5..0.5f64,
        zr in 0.2..2.0f64, zi in -1.0..1.0f64, n in -3i64..3, m in -3i64..3, flip in any::<bool>(),
    ) {
        let ctx = Ctx::default();
        let c = class(&ctx, (sr, si), (tr, ti), (zr, zi));
        let mut moved = c.shift_s(&ctx, n).shift_t(&ctx, m);
        if flip {
            moved = moved.negate();
        }
        let a = c.normalize(&ctx);
        let b = moved.normalize(&ctx);
        prop_assert!(same(&ctx, &a, &b), "{:?} vs {:?}", a, b);
        prop_assert!(c.equivalent(&ctx, &moved, 1e-20));
    }

    #[test]
    fn normalize_is_idempotent(
        sr in -3.0..3.0f64, si in -0.5..0.5f64, tr in -3.0..3.0f64, ti in -0.5..0.5f64,
        zr in 0.2..2.0f64, zi in -1.0..1.0f64,
    ) {
        let ctx = Ctx::default();
        let a = class(&ctx, (sr, si), (tr, ti), (zr, zi)).normalize(&ctx);
        prop_assert!(same(&ctx, &a, &a.normalize(&ctx)));
    }

    #[test]
    fn cs_value_is_defined_mod_pi2(x in -5.0..5.0f64, y in -5.0..5.0f64, k in -20i64..20) {
        let ctx = Ctx::default();
        let a = CSValue::new(ctx.c(x, y));
        let b = CSValue::new(ctx.c(x, y) + ctx.pi().square() * ctx.real(k as f64));
        prop_assert!(a.eq_mod_pi2(&ctx, &b, 1e-9));
        let c = CSValue::new(ctx.c(x + 0.1, y));
        prop_assert!(!a.eq_mod_pi2(&ctx, &c, 1e-9));
    }
}

#[test]
fn distinct_classes_are_not_equivalent() {
    let ctx = Ctx::default();
    let a = class(&ctx, (0.1, 0.0), (0.2, 0.0), (1.0, 0.0));
    let b = class(&ctx, (0.1, 0.0), (0.2, 0.0), (1.0, 0.1));
    assert!(!a.equivalent(&ctx, &b, 1e-12));
    assert!(CSClass::new(ctx.one(), ctx.one(), ctx.zero()).is_err());
}

#[test]
fn torus_closed_form_example() {
    let ctx = Ctx::default();
    let p = RepParams::new(KnotSpec::Torus { a: 1 }, ctx.real(0.4), Branch::Torus { k: 0 });
    let (c, v) = cs::cs_closed_form(&ctx, &p, -4.0).unwrap();
    let expect = ctx.ipi() * ctx.real(0.4) * (-2) + ctx.pi().square() / 6u32;
    assert!(dist(&c.value, &expect) < 1e-60);
    let v_expect = ctx.real(-2.4) - ctx.ipi() * 8u32;
    assert!(dist(&v, &v_expect) < 1e-15);
}

#[test]
fn nn_and_an_at_zero() {
    let ctx = Ctx::default();
    let knot = KnotSpec::IteratedTorus { a: 1, b: 6 };
    // at (1,6) the only ω₃ is -1, which does not give a representation
    let p = RepParams::new(knot, ctx.zero(), Branch::NN { k: 0, h: 0 });
    assert!(matches!(cs::cs_closed_form(&ctx, &p, 0.0), Err(qka::Error::BranchPoint(_))));
    let p = RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 7 }, ctx.zero(), Branch::NN { k: 0, h: 0 });
    for n in [-4.0, 0.0, 7.0] {
        let (c, _) = cs::cs_closed_form(&ctx, &p, n).unwrap();
        let expect = ctx.pi().square() / 3u32;
        assert!(dist(&c.value, &expect) < 1e-60);
    }
    for j in 0..6 {
        let p = RepParams::new(knot, ctx.zero(), Branch::AN { j });
        let (c1, _) = cs::cs_closed_form(&ctx, &p, -2.0).unwrap();
        let (c2, _) = cs::cs_closed_form(&ctx, &p, 5.0).unwrap();
        let expect = ctx.pi().square() * ((2 * j + 1) * (2 * j + 1)) / 26u32;
        assert!(dist(&c1.value, &expect) < 1e-60 && dist(&c2.value, &expect) < 1e-60);
    }
}

#[test]
fn figure_eight_has_no_closed_form_here() {
    let ctx = Ctx::default();
    let p = RepParams::new(KnotSpec::FigureEight, ctx.real(0.1), Branch::Sign { s: 1 });
    assert!(matches!(cs::cs_closed_form(&ctx, &p, 0.0), Err(qka::Error::Unsupported(_))));
}

#[test]
fn kirk_klassen_linear_path() {
    // u_t = t, v_t = c·t + d: ∫(u v' - v u') = -d, ratio e^{-id/2π}
    let ctx = Ctx::default();
    let (c, d) = (ctx.c(0.3, -1.1), ctx.c(0.7, 2.0));
    let r = cs::kirk_klassen_ratio(
        &ctx,
        |t: &Float| {
            let u = Complex::with_val(ctx.prec, t);
            (u.clone(), c.clone() * &u + &d)
        },
        1e-25,
    )
    .unwrap();
    let expect = (-(d.clone()) * ctx.i() / (ctx.pi() * 2u32)).exp();
    assert!(dist(&r.ratio, &expect) < 1e-25);
}

#[test]
fn kirk_klassen_matches_closed_forms() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..4 {
        let u = ctx.c(rng.gen_range(0.05..0.35), rng.gen_range(-0.2..0.2));
        let ps = [
            RepParams::new(KnotSpec::Torus { a: 1 }, u.clone(), Branch::Torus { k: 0 }),
            RepParams::new(KnotSpec::Torus { a: 2 }, u.clone(), Branch::Torus { k: 1 }),
            RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 6 }, u.clone(), Branch::AN { j: rng.gen_range(0..6) }),
            RepParams::new(KnotSpec::IteratedTorus { a: 2, b: 10 }, u.clone(), Branch::NA { k: rng.gen_range(0..2) }),
        ];
        for p in ps {
            for branch in [-3, 1, 5] {
                let k = cs::kk_path_check(&ctx, &p, branch, 1e-20).unwrap();
                assert!(k.ratio_rel_err < 1e-6, "{:?} l={branch}", p.branch);
                assert!(k.cs_residual < 1e-6, "{:?} l={branch}", p.branch);
            }
        }
    }
}

#[test]
fn kirk_klassen_rejects_non_integral_start() {
    let ctx = Ctx::default();
    let p = RepParams::new(KnotSpec::Torus { a: 1 }, ctx.real(0.2), Branch::Torus { k: 0 });
    assert!(matches!(cs::kk_path_check(&ctx, &p, 2, 1e-20), Err(qka::Error::Hypothesis(_))));
}

#[test]
fn figure_eight_potential_at_zero() {
    let ctx = Ctx::default();
    let f = cs::fig8_potential(&ctx, &ctx.zero()).unwrap();
    assert!(dist(&f.phi, &(-(ctx.ipi() / 3u32))) < 1e-60);
    assert!(f.s.real().to_f64().abs() < 1e-60);
    assert!((f.s.imag().to_f64() - 2.029883212819307).abs() < 1e-9);
    assert!(dist(&f.s, &(ctx.i() * cs::fig8_volume(&ctx))) < 1e-60);
}

#[test]
fn figure_eight_derivative_matches_finite_difference() {
    let ctx = Ctx::default();
    let h = 1e-6;
    for u in [0.05, 0.1, 0.2, 0.3] {
        let f = cs::fig8_potential(&ctx, &ctx.real(u)).unwrap();
        let fd = (cs::fig8_s(&ctx, &ctx.real(u + h)) - cs::fig8_s(&ctx, &ctx.real(u - h))) / ctx.real(2.0 * h);
        assert!(dist(&fd, &f.ds_du) < 1e-6, "u={u}");
        assert!(dist(&f.v, &(fd * 2u32 - ctx.ipi() * 2u32)) < 1e-8);
        // e^{dS/du} is a longitude eigenvalue
        let ell = f.ds_du.clone().exp();
        let ev = qka::representations::fig8_ell(&ctx.real(u), -1);
        assert!(dist(&ell, &ev) < 1e-40 || dist(&ell, &ev.recip()) < 1e-40);
    }
    let z = ctx.c(0.1, 0.05);
    let f = cs::fig8_potential(&ctx, &z).unwrap();
    let hc = ctx.real(1e-6);
    let fd = (cs::fig8_s(&ctx, &(z.clone() + &hc)) - cs::fig8_s(&ctx, &(z.clone() - &hc))) / (hc * 2u32);
    assert!(dist(&fd, &f.ds_du) < 1e-6);
}

#[test]
fn figure_eight_cs_routes() {
    // the integral route and S - πiu - uv/4 differ by the fixed offset -πiu/2
    let ctx = Ctx::default();
    for u in [0.0, 0.1, 0.25, -0.15] {
        let f = cs::fig8_potential(&ctx, &ctx.real(u)).unwrap();
        let offset = f.cs_from_s.clone() - &f.cs + ctx.ipi() * ctx.real(u) / 2u32;
        assert!(abs(&offset) < 1e-30, "u={u}");
    }
    assert!(matches!(cs::fig8_potential(&ctx, &ctx.real(0.5)), Err(qka::Error::BranchPoint(_))));
}

#[test]
fn quadratic_exponent_derivatives() {
    use qka::asymptotics as asy;
    let ctx = Ctx::default();
    let h = 1e-6;
    let xi = ctx.c(0.2, 6.3);
    let hc = ctx.real(h);
    let fdiff = |f: &dyn Fn(&Complex) -> Complex| (f(&(xi.clone() + &hc)) - f(&(xi.clone() - &hc))) / ctx.real(2.0 * h);
    assert!(dist(&fdiff(&|x| asy::s_torus(&ctx, 2, 1, x)), &asy::ds_torus(&ctx, 2, 1, &xi)) < 1e-6);
    assert!(dist(&fdiff(&|x| asy::s1(&ctx, 1, 6, 2, x, asy::Variant::Canonical)), &asy::ds1(&ctx, 1, 6, 2, &xi)) < 1e-6);
    assert!(dist(&fdiff(&|x| asy::s2(&ctx, 1, 6, 0, x)), &asy::ds2(&ctx, 1, 6, 0, &xi)) < 1e-6);
    assert!(dist(&fdiff(&|x| asy::s3(&ctx, 1, 7, 1, 0, x)), &asy::ds3(&ctx, 1, 7, 1, 0, &xi)) < 1e-6);
}

#[test]
fn printed_v_formulas() {
    let ctx = Ctx::default();
    let u = ctx.c(0.17, 0.04);
    let p = RepParams::new(KnotSpec::Torus { a: 2 }, u.clone(), Branch::Torus { k: 1 });
    let m = cs::cs_matches_s(&ctx, &p).unwrap();
    let expect = -(u.clone() * 10u32) - ctx.ipi() * (4 * (5 - 1));
    assert!(dist(&m.v, &expect) < 1e-60);
    let p = RepParams::new(KnotSpec::IteratedTorus { a: 2, b: 10 }, u.clone(), Branch::NA { k: 1 });
    let m = cs::cs_matches_s(&ctx, &p).unwrap();
    let expect = -(u.clone() * 40u32) - ctx.ipi() * (2 * (40 - 4 - 1));
    assert!(dist(&m.v, &expect) < 1e-60);
    assert_eq!(m.branch, -17.5);
}

#[test]
fn cs_matches_exponent_for_all_families() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10 {
        let u = ctx.c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
        let ps = [
            RepParams::new(KnotSpec::Torus { a: 2 }, u.clone(), Branch::Torus { k: rng.gen_range(0..2) }),
            RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 6 }, u.clone(), Branch::AN { j: rng.gen_range(0..6) }),
            RepParams::new(KnotSpec::IteratedTorus { a: 2, b: 10 }, u.clone(), Branch::NA { k: rng.gen_range(0..2) }),
            RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 8 }, u.clone(), Branch::NN { k: 0, h: [0, 1, 3, 4][rng.gen_range(0..4)] }),
        ];
        for p in ps {
            let m = cs::cs_matches_s(&ctx, &p).unwrap();
            assert!(m.residual <= 1e-20, "{} {:?}: {:e}", m.family, m.indices, m.residual);
            assert!(m.v_residual <= 1e-20);
        }
    }
}
