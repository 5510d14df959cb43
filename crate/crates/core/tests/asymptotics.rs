use std::f64::consts::PI;

use qka::asymptotics::{self, Family, Variant};
use qka::freegroup::KnotSpec;
use qka::numerics::{abs, contour_angle, dist, log2_abs, re, rel_err, Ctx, Strip};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;

#[test]
fn torus_exponent_example() {
    let ctx = Ctx::default();
    let xi = ctx.c(1.0, 1.0);
    let w = ctx.ipi() - xi.clone() * 3u32;
    let expect = -(w.square() / 6u32);
    assert!(rel_err(&asymptotics::s_torus(&ctx, 1, 0, &xi), &expect) < 1e-70);
    // by hand: (πi - 3 - 3i)² = 9 - (π-3)² - 6(π-3)i
    let (re_w, im_w) = (-3.0, PI - 3.0);
    let s = asymptotics::s_torus(&ctx, 1, 0, &xi);
    assert!((s.real().to_f64() + (re_w * re_w - im_w * im_w) / 6.0).abs() < 1e-14);
    assert!((s.imag().to_f64() + 2.0 * re_w * im_w / 6.0).abs() < 1e-14);
}

#[test]
fn family2_exponent_example() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10 {
        let xi = ctx.c(rng.gen_range(0.1..2.0), rng.gen_range(0.0..2.0));
        let k = rng.gen_range(-5..5i64);
        let o = 2 * k + 1;
        let expect = xi.clone() * ctx.ipi() * (2 * o) - xi.clone().square() * 6u32 + ctx.pi().square() * (o * o) / 6u32;
        assert!(dist(&asymptotics::s2(&ctx, 1, 6, k, &xi), &expect) < 1e-60);
    }
}

#[test]
fn tau_values() {
    let ctx = Ctx::default();
    assert!(rel_err(&asymptotics::tau_torus(&ctx, 1, 0), &ctx.int(2).sqrt()) < 1e-70);
    for (l, m) in [(0, 0), (3, 1), (-2, 4)] {
        let t = asymptotics::tau3(&ctx, 1, 6, l, m);
        let s = ((2 * m + 1) as f64 * PI / 3.0).sin();
        let sign = if (l + m).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        assert!((t.real().to_f64() - sign * 4.0 / 3f64.sqrt() * s).abs() < 1e-14);
    }
}

fn fd(f: impl Fn(&Complex) -> Complex, ctx: &Ctx, xi: &Complex) -> Complex {
    let h = ctx.real(1e-20);
    (f(&(xi.clone() + &h)) - f(&(xi.clone() - &h))) / (h * 2u32)
}

#[test]
fn exponent_derivatives_match_finite_differences() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let xi = ctx.c(rng.gen_range(0.1..2.0), rng.gen_range(0.0..2.0));
        let (a, b) = [(1, 6), (2, 10)][rng.gen_range(0..2)];
        let (k, l, m) = (rng.gen_range(-4..4), rng.gen_range(-4..4), rng.gen_range(-4..4));
        let checks = [
            (fd(|x| asymptotics::s_torus(&ctx, a, k, x), &ctx, &xi), asymptotics::ds_torus(&ctx, a, k, &xi)),
            (fd(|x| asymptotics::s1(&ctx, a, b, k, x, Variant::Canonical), &ctx, &xi), asymptotics::ds1(&ctx, a, b, k, &xi)),
            (fd(|x| asymptotics::s2(&ctx, a, b, k, x), &ctx, &xi), asymptotics::ds2(&ctx, a, b, k, &xi)),
            (fd(|x| asymptotics::s3(&ctx, a, b, l, m, x), &ctx, &xi), asymptotics::ds3(&ctx, a, b, l, m, &xi)),
        ];
        for (i, (num, exact)) in checks.iter().enumerate() {
            assert!(dist(num, exact) < 1e-30, "exponent {i}");
        }
    }
}

/// ∫ e^{-Nζ²/H} dζ along ζ = r e^{iφ} by the trapezoid rule in f64.
fn gaussian_quadrature(h: (f64, f64), n: f64, phi: f64) -> (f64, f64) {
    let (hr, hi) = h;
    let hn = hr * hr + hi * hi;
    let (qr, qi) = (hr / hn, -hi / hn);
    let (cr, ci) = ((2.0 * phi).cos(), (2.0 * phi).sin());
    // exponent -N r² (1/H) e^{2iφ}
    let (er, ei) = (qr * cr - qi * ci, qr * ci + qi * cr);
    let step = 1e-4;
    let mut acc = (0.0, 0.0);
    let mut r = -3.0;
    while r <= 3.0 {
        let mag = (-n * r * r * er).exp();
        let ang = -n * r * r * ei;
        acc.0 += mag * ang.cos() * step;
        acc.1 += mag * ang.sin() * step;
        r += step;
    }
    (acc.0 * phi.cos() - acc.1 * phi.sin(), acc.0 * phi.sin() + acc.1 * phi.cos())
}

#[test]
fn saddle_gaussian_matches_quadrature() {
    let ctx = Ctx::default();
    for phi in [0.0, 0.3, -0.4] {
        let h = ctx.c(2.0, 1.0);
        let v = asymptotics::saddle_gaussian(&ctx, &h, &ctx.one(), 50.0, phi).unwrap();
        let (qr, qi) = gaussian_quadrature((2.0, 1.0), 50.0, phi);
        let q = ctx.c(qr, qi);
        assert!(abs(&(v / q - 1u32)) < 1e-6, "phi={phi}");
    }
}

#[test]
fn saddle_gaussian_rejects_divergent_direction() {
    let ctx = Ctx::default();
    assert!(asymptotics::saddle_gaussian(&ctx, &ctx.real(-1.0), &ctx.one(), 10.0, 0.0).is_err());
    assert!(asymptotics::saddle_gaussian(&ctx, &ctx.one(), &ctx.one(), 10.0, 1.2).is_err());
}

/// Odd n in |n| <= 10⁴ with nπi strictly inside the strip, by scanning.
fn brute_force(strip_shift: (f64, f64), phi: f64) -> Vec<i64> {
    let w = strip_shift.1 * phi.cos() - strip_shift.0 * phi.sin();
    let eps = 1e-9 * strip_shift.0.hypot(strip_shift.1);
    let (lo, hi) = (w.min(0.0), w.max(0.0));
    (-10_000..=10_000)
        .filter(|n: &i64| n.rem_euclid(2) == 1)
        .filter(|&n| {
            let c = n as f64 * PI * phi.cos();
            c > lo + eps && c < hi - eps
        })
        .collect()
}

#[test]
fn strip_indices_match_brute_force() {
    let ctx = Ctx::default();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        let xi = ctx.c(rng.gen_range(-3.0..3.0), rng.gen_range(0.0..4.0));
        if re(&xi).abs() < 1e-3 {
            continue;
        }
        let scale: i32 = [3, 13, 21, 7][rng.gen_range(0..4)];
        let phi = contour_angle(&xi);
        let shift = xi.clone() * scale;
        let (inside, _) = asymptotics::odd_multiples_in(&ctx, &Strip::new(phi, shift.clone())).unwrap();
        let expect = brute_force((re(&shift), shift.imag().to_f64()), phi);
        assert_eq!(inside, expect, "xi={xi} scale={scale}");
    }
}

#[test]
fn near_imaginary_xi_leaves_only_the_leading_term() {
    let ctx = Ctx::default();
    let xi = ctx.c(1e-3, 0.5);
    let ex = asymptotics::torus_terms(&ctx, 1, &xi, 100).unwrap();
    assert!(ex.terms.is_empty());
    let approx = asymptotics::approximate(&ctx, &KnotSpec::Torus { a: 1 }, &xi, 100).unwrap();
    assert_eq!(approx, ex.leading);
    let it = asymptotics::iterated_terms(&ctx, 1, 6, &ctx.c(1e-3, 0.05), 100, Variant::Canonical).unwrap();
    assert!(it.terms.is_empty());
    assert_eq!(it.total(), it.leading);
}

#[test]
fn family_index_rules() {
    let ctx = Ctx::default();
    let xi = ctx.c(1.0, 1.0);
    let ex = asymptotics::iterated_terms(&ctx, 1, 6, &xi, 100, Variant::Canonical).unwrap();
    for t in &ex.terms {
        match t.family {
            Family::Iterated2 => assert_ne!((2 * t.indices[0] + 1).rem_euclid(3), 0),
            Family::Iterated3 => assert_ne!((2 * t.indices[1] + 1).rem_euclid(3), 0),
            _ => {}
        }
    }
    assert!(ex.terms.iter().any(|t| t.family == Family::Iterated1));
    assert!(ex.terms.iter().any(|t| t.family == Family::Iterated2));
}

#[test]
fn magnitude_follows_real_part_of_exponent() {
    let ctx = Ctx::default();
    let xi = ctx.c(1.0, 1.0);
    let gap = |n: u64| -> Vec<f64> {
        let ex = asymptotics::iterated_terms(&ctx, 1, 6, &xi, n, Variant::Canonical).unwrap();
        ex.terms.iter().map(|t| ln_abs(&t.contribution) - n as f64 * re(&(t.s.clone() / &xi))).collect()
    };
    let g100 = gap(100);
    for n in [200u64, 400, 800] {
        let gn = gap(n);
        let log_growth = (n as f64 / 100.0).ln();
        for (a, b) in g100.iter().zip(&gn) {
            assert!((b - a).abs() <= log_growth * 1.0001 + 1e-9);
        }
    }
}

#[test]
fn dominance_ordering() {
    let ctx = Ctx::default();
    for (k, xi) in [
        (KnotSpec::IteratedTorus { a: 1, b: 6 }, ctx.c(1.0, 1.0)),
        (KnotSpec::IteratedTorus { a: 2, b: 10 }, ctx.c(0.7, 1.5)),
        (KnotSpec::Torus { a: 3 }, ctx.c(1.5, 2.0)),
    ] {
        for n in [100u64, 400] {
            let ex = asymptotics::expansion(&ctx, &k, &xi, n, Variant::Canonical).unwrap();
            let keys: Vec<(f64, f64)> = ex
                .terms
                .iter()
                .map(|t| (re(&(t.s.clone() / &xi)), ln_abs(&t.contribution)))
                .collect();
            for x in &keys {
                for y in &keys {
                    if x.0 - y.0 > 0.05 {
                        assert!(x.1 > y.1, "{} N={n}: {x:?} vs {y:?}", k.name());
                    }
                }
            }
            let best = ex.terms.iter().max_by(|a, b| re(&(a.s.clone() / &xi)).partial_cmp(&re(&(b.s.clone() / &xi))).unwrap());
            if let (Some(best), Some(dom)) = (best, ex.dominant()) {
                assert_eq!((best.family, &best.indices), (dom.family, &dom.indices));
            }
        }
    }
}

#[test]
fn torus_relative_error_decreases() {
    let ctx = Ctx::default();
    let k = KnotSpec::Torus { a: 1 };
    let xi = ctx.c(1.0, 1.0);
    let errs: Vec<f64> = [50u64, 100, 200]
        .iter()
        .map(|&n| asymptotics::compare(&ctx, &k, &xi, n, Variant::Canonical).unwrap().rel_err)
        .collect();
    assert!(errs[2] < 1.0);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn iterated_relative_error_decreases() {
    let ctx = Ctx::default();
    let k = KnotSpec::IteratedTorus { a: 1, b: 6 };
    let xi = ctx.c(1.0, 1.0);
    let rows: Vec<_> = [50u64, 100, 200]
        .iter()
        .map(|&n| asymptotics::compare(&ctx, &k, &xi, n, Variant::Canonical).unwrap())
        .collect();
    assert!(rows.windows(2).all(|w| w[1].rel_err < w[0].rel_err));
    assert_eq!(rows[2].dominant_family, Some(Family::Iterated2));
}

#[test]
fn sign_variants_give_the_same_error_on_the_grid() {
    // e^{N(±(2j+1))πiξ/ξ} agree for integer N, and the τ₂ sign change is invisible at this size
    let ctx = Ctx::default();
    let k = KnotSpec::IteratedTorus { a: 1, b: 6 };
    let xi = ctx.c(1.0, 1.0);
    for n in [100u64, 200] {
        let c = asymptotics::compare(&ctx, &k, &xi, n, Variant::Canonical).unwrap().rel_err;
        let d = asymptotics::compare(&ctx, &k, &xi, n, Variant::Display).unwrap().rel_err;
        assert!((c - d).abs() < 1e-6 * c, "N={n}: {c} vs {d}");
    }
}

#[test]
fn invalid_inputs() {
    let ctx = Ctx::default();
    assert!(asymptotics::torus_terms(&ctx, 1, &ctx.c(0.0, 1.0), 10).is_err());
    assert!(asymptotics::torus_terms(&ctx, 1, &ctx.c(1.0, -1.0), 10).is_err());
    assert!(asymptotics::iterated_terms(&ctx, 1, 5, &ctx.c(1.0, 1.0), 10, Variant::Canonical).is_err());
    assert!(asymptotics::expansion(&ctx, &KnotSpec::FigureEight, &ctx.c(1.0, 1.0), 10, Variant::Canonical).is_err());
}

fn ln_abs(z: &Complex) -> f64 {
    log2_abs(z) * std::f64::consts::LN_2
}
