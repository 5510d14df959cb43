//! SL(2,C) representations of the three knot families.

use std::collections::BTreeMap;

use rug::Complex;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::freegroup::{companion_longitude, knot_presentation, KnotSpec, Presentation, Word};
use crate::numerics::{abs, fmt_float, Ctx, MatC};

/// Which component of the representation variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    /// Sign in front of the radical in d_± (figure-eight).
    Sign { s: i8 },
    /// ω₁ = exp((2k+1)πi/(2a+1)) (torus knot).
    Torus { k: i64 },
    /// Companion abelian, pattern non-abelian; ω₂ = exp((2j+1)πi/(2b+1)).
    AN { j: i64 },
    /// Companion non-abelian, pattern abelian; ω₁ as for the torus knot.
    NA { k: i64 },
    /// Both non-abelian; ω₃ = exp((2h+1)πi/(2b+1-4(2a+1))).
    NN { k: i64, h: i64 },
}

#[derive(Clone, Debug)]
pub struct RepParams {
    pub knot: KnotSpec,
    pub u: Complex,
    pub branch: Branch,
}

impl RepParams {
    pub fn new(knot: KnotSpec, u: Complex, branch: Branch) -> Self {
        RepParams { knot, u, branch }
    }

    pub fn alpha(&self) -> i64 {
        match self.knot {
            KnotSpec::Torus { a } | KnotSpec::IteratedTorus { a, .. } => 2 * a + 1,
            KnotSpec::FigureEight => 0,
        }
    }

    pub fn beta(&self) -> i64 {
        match self.knot {
            KnotSpec::IteratedTorus { b, .. } => 2 * b + 1,
            _ => 0,
        }
    }

    /// β - 4α, the exponent in the ω₃ root condition.
    pub fn gamma(&self) -> i64 {
        self.beta() - 4 * self.alpha()
    }

    pub fn omega1(&self, ctx: &Ctx) -> Option<Complex> {
        match self.branch {
            Branch::Torus { k } | Branch::NA { k } | Branch::NN { k, .. } => {
                Some(ctx.root_of_unity(2 * k + 1, self.alpha()))
            }
            _ => None,
        }
    }

    pub fn omega2(&self, ctx: &Ctx) -> Option<Complex> {
        match self.branch {
            Branch::AN { j } => Some(ctx.root_of_unity(2 * j + 1, self.beta())),
            _ => None,
        }
    }

    pub fn omega3(&self, ctx: &Ctx) -> Option<Complex> {
        match self.branch {
            Branch::NN { h, .. } => Some(ctx.root_of_unity(2 * h + 1, self.gamma())),
            _ => None,
        }
    }

    /// Check family/branch compatibility and index ranges.
    pub fn validate(&self) -> Result<()> {
        self.knot.validate()?;
        let range = |name: &str, v: i64, hi: i64| -> Result<()> {
            if v < 0 || v >= hi {
                return Err(Error::OutOfRange(format!("{name} = {v} must lie in 0..={}", hi - 1)));
            }
            Ok(())
        };
        match (self.knot, self.branch) {
            (KnotSpec::FigureEight, Branch::Sign { s }) => {
                if s != 1 && s != -1 {
                    return Err(Error::OutOfRange(format!("sign must be +1 or -1, got {s}")));
                }
                Ok(())
            }
            (KnotSpec::Torus { a }, Branch::Torus { k }) => range("k", k, a),
            (KnotSpec::IteratedTorus { b, .. }, Branch::AN { j }) => range("j", j, b),
            (KnotSpec::IteratedTorus { a, .. }, Branch::NA { k }) => range("k", k, a),
            (KnotSpec::IteratedTorus { a, .. }, Branch::NN { k, h }) => {
                range("k", k, a)?;
                let c = self.gamma();
                range("h", h, c)?;
                if 2 * h + 1 == c {
                    // ω₃ = -1: the companion-pattern gluing relation degenerates
                    return Err(Error::BranchPoint(format!(
                        "h = {h} gives ω₃ = -1, for which λ_C x^b p = q x^b λ_C fails"
                    )));
                }
                Ok(())
            }
            (k, b) => Err(Error::Unsupported(format!("branch {b:?} does not apply to {}", k.name()))),
        }
    }
}

/// √((2cosh u + 1)(2cosh u - 3)), principal branch.
pub fn fig8_radical(u: &Complex) -> Complex {
    let c = u.clone().cosh();
    let p = (c.clone() * 2u32 + 1u32) * (c * 2u32 - 3u32);
    p.sqrt()
}

/// d_± = cosh u - 3/2 ± √(...)/2.
pub fn fig8_d(u: &Complex, s: i8) -> Complex {
    let rad = fig8_radical(u);
    let c = u.clone().cosh() - Complex::with_val(u.prec(), (1.5, 0));
    if s > 0 {
        c + rad / 2u32
    } else {
        c - rad / 2u32
    }
}

/// ℓ(u) with the chosen sign in front of the radical (sign +1 is the printed ℓ).
pub fn fig8_ell(u: &Complex, s: i8) -> Complex {
    let rad = fig8_radical(u);
    let base = (u.clone() * 2u32).cosh() - u.clone().cosh() - 1u32;
    let t = u.clone().sinh() * rad;
    if s > 0 {
        base + t
    } else {
        base - t
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub params: RepParams,
    pub presentation: Presentation,
    images: BTreeMap<String, MatC>,
}

fn upper(m: &Complex, c: Complex) -> MatC {
    let mi = m.clone().recip();
    MatC::m2(m.clone(), c, Complex::new(m.prec().0), mi)
}

fn lower(m: &Complex, c: Complex) -> MatC {
    let mi = m.clone().recip();
    MatC::m2(m.clone(), Complex::new(m.prec().0), c, mi)
}

pub fn build_representation(ctx: &Ctx, params: &RepParams) -> Result<Representation> {
    params.validate()?;
    let presentation = knot_presentation(&params.knot)?;
    let u = ctx.lift(&params.u);
    let m = (u.clone() / 2u32).exp();
    let one = ctx.one();
    let cosh_u = u.clone().cosh();
    let mut images = BTreeMap::new();
    match params.branch {
        Branch::Sign { s } => {
            let rad = fig8_radical(&u);
            if abs(&rad) < 1e-30 {
                return Err(Error::BranchPoint(format!(
                    "(2cosh u+1)(2cosh u-3) vanishes at u = {}",
                    crate::numerics::fmt_complex(&u, 12)
                )));
            }
            let d = fig8_d(&u, s);
            images.insert("x".into(), upper(&m, one.clone()));
            images.insert("y".into(), lower(&m, -d));
        }
        Branch::Torus { .. } => {
            let w1 = params.omega1(ctx).unwrap();
            let c = w1.clone() + w1.recip() - cosh_u * 2u32;
            images.insert("x".into(), upper(&m, one.clone()));
            images.insert("y".into(), lower(&m, c));
        }
        Branch::AN { .. } => {
            let w2 = params.omega2(ctx).unwrap();
            let p = upper(&m, one.clone());
            let q = lower(&m, w2.clone() + w2.recip() - cosh_u * 2u32);
            let pq = p.mul(&q);
            images.insert("x".into(), pq.clone());
            images.insert("y".into(), pq);
            images.insert("p".into(), p);
            images.insert("q".into(), q);
        }
        Branch::NA { .. } => {
            let w1 = params.omega1(ctx).unwrap();
            let ch = (u.clone() / 2u32).cosh();
            if abs(&ch) < 1e-30 {
                return Err(Error::BranchPoint("cosh(u/2) vanishes".into()));
            }
            let eu = u.clone().exp();
            let c = w1.clone() + w1.recip() - (u.clone() * 2u32).cosh() * 2u32;
            images.insert("x".into(), upper(&eu, one.clone()));
            images.insert("y".into(), lower(&eu, c));
            let pq = upper(&m, (ch * 2u32).recip());
            images.insert("p".into(), pq.clone());
            images.insert("q".into(), pq);
        }
        Branch::NN { .. } => {
            let w1 = params.omega1(ctx).unwrap();
            let w3 = params.omega3(ctx).unwrap();
            let w3i = w3.clone().recip();
            let p = upper(&m, one.clone());
            let q = lower(&m, w3.clone() + &w3i - cosh_u * 2u32);
            let x = p.mul(&q);
            let c = m.clone().recip() * (w3.clone() - &w3i)
                - m.clone() * (w3.clone().square() + 1u32 - &w1 - w1.clone().recip());
            let y = MatC::m2(w3.clone(), ctx.zero(), c, w3i);
            images.insert("x".into(), x);
            images.insert("y".into(), y);
            images.insert("p".into(), p);
            images.insert("q".into(), q);
        }
    }
    let mut p = params.clone();
    p.u = u;
    Ok(Representation { params: p, presentation, images })
}

impl Representation {
    pub fn image(&self, g: &str) -> Result<&MatC> {
        self.images.get(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }

    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.params.u.prec().0)
    }

    /// Largest |ρ(r) - I| over the relators.
    pub fn relator_residual(&self) -> Result<f64> {
        let id = MatC::identity(&self.ctx(), 2);
        let mut worst: f64 = 0.0;
        for r in &self.presentation.relators {
            worst = worst.max(evaluate_word(self, r)?.dist(&id));
        }
        Ok(worst)
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        let z = |c: &Complex| json!([fmt_float(c.real(), digits), fmt_float(c.imag(), digits)]);
        let gens: serde_json::Map<String, serde_json::Value> = self
            .images
            .iter()
            .map(|(g, m)| {
                let rows: Vec<_> = (0..2).map(|i| json!([z(m.get(i, 0)), z(m.get(i, 1))])).collect();
                (g.clone(), json!(rows))
            })
            .collect();
        json!({
            "knot": self.params.knot,
            "branch": self.params.branch,
            "u": z(&self.params.u),
            "precision_bits": self.ctx().prec,
            "generators": gens,
        })
    }
}

/// ρ(w) as the ordered product of generator images.
pub fn evaluate_word(rep: &Representation, w: &Word) -> Result<MatC> {
    let ctx = rep.ctx();
    let mut acc = MatC::identity(&ctx, 2);
    for (g, e) in w.syllables() {
        let img = rep.image(g)?;
        let base = if *e < 0 { img.inv_sl2() } else { img.clone() };
        let f = base.pow(e.abs()).expect("positive power");
        acc = acc.mul(&f);
    }
    Ok(acc)
}

/// Matrix of g ↦ M⁻¹gM on sl(2,C) in the ordered basis (E, H, F); column j holds the
/// coordinates of the image of the j-th basis vector.
pub fn adjoint3(m: &MatC) -> Result<MatC> {
    assert_eq!((m.rows, m.cols), (2, 2));
    let ctx = Ctx::new(m.prec());
    let det = m.det();
    let err = abs(&(det - ctx.one()));
    let tol = 2f64.powi(-((ctx.prec / 2).min(1000) as i32)) * m.max_abs().powi(2).max(1.0);
    if err > tol {
        return Err(Error::NonUnitDeterminant(err));
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    // M⁻¹ = [[d, -b], [-c, a]]; conjugating each basis element by hand
    // E ↦ [[d c, d²], [-c², -c d]]
    // H ↦ [[a d + b c, 2 b d], [-2 a c, -(a d + b c)]]
    // F ↦ [[-a b, -b²], [a², a b]]
    let cols = [
        [d.clone().square(), Complex::with_val(ctx.prec, d * c), -c.clone().square()],
        [
            Complex::with_val(ctx.prec, b * d) * 2u32,
            Complex::with_val(ctx.prec, a * d) + Complex::with_val(ctx.prec, b * c),
            -Complex::with_val(ctx.prec, a * c) * 2u32,
        ],
        [-b.clone().square(), -Complex::with_val(ctx.prec, a * b), a.clone().square()],
    ];
    let mut out = MatC::zeros(&ctx, 3, 3);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            out.set(i, j, v.clone());
        }
    }
    Ok(out)
}

fn upper_tri(ul: Complex, ur: Complex, lr: Complex) -> MatC {
    let z = Complex::new(ul.prec().0);
    MatC::m2(ul, ur, z, lr)
}

/// Closed-form image of the longitude, independent of word evaluation.
pub fn longitude_closed_form(ctx: &Ctx, p: &RepParams) -> Result<MatC> {
    p.validate()?;
    let u = ctx.lift(&p.u);
    let torus_like = |n: i64| {
        let nu = u.clone() * n;
        upper_tri(-(-nu.clone()).exp(), nu.clone().sinh() / (u.clone() / 2u32).sinh(), -nu.exp())
    };
    Ok(match p.branch {
        Branch::Sign { s } => {
            let ell = fig8_ell(&u, 1);
            let corner = (u.clone() / 2u32).cosh() * fig8_radical(&u) * 2u32 * i32::from(s);
            if s > 0 {
                upper_tri(ell.clone(), corner, ell.recip())
            } else {
                upper_tri(ell.clone().recip(), corner, ell)
            }
        }
        Branch::Torus { .. } => torus_like(p.alpha()),
        Branch::AN { .. } | Branch::NN { .. } => torus_like(p.beta()),
        Branch::NA { .. } => {
            let nu = u.clone() * (4 * p.alpha());
            upper_tri((-nu.clone()).exp(), -(nu.clone().sinh() / u.clone().sinh()), nu.exp())
        }
    })
}

/// Closed-form image of the companion longitude λ_C for the NA family.
pub fn na_companion_longitude_closed_form(ctx: &Ctx, p: &RepParams) -> Result<MatC> {
    if !matches!(p.branch, Branch::NA { .. }) {
        return Err(Error::Unsupported("companion longitude closed form is for the NA family".into()));
    }
    let u = ctx.lift(&p.u);
    let nu = u.clone() * (2 * p.alpha());
    Ok(upper_tri(-(-nu.clone()).exp(), nu.clone().sinh() / u.clone().sinh(), -nu.exp()))
}

/// Companion longitude word for an iterated-torus representation.
pub fn companion_longitude_word(p: &RepParams) -> Option<Word> {
    match p.knot {
        KnotSpec::IteratedTorus { a, .. } => Some(companion_longitude(a)),
        _ => None,
    }
}

/// dv/du along the branch, from the closed-form longitude eigenvalue.
pub fn dv_du(ctx: &Ctx, p: &RepParams) -> Complex {
    match p.branch {
        Branch::Torus { .. } => ctx.int(-2 * p.alpha()),
        Branch::AN { .. } | Branch::NN { .. } => ctx.int(-2 * p.beta()),
        Branch::NA { .. } => ctx.int(-8 * p.alpha()),
        Branch::Sign { s } => {
            let u = ctx.lift(&p.u);
            // v = 2 log ℓ^{±1}: dv/du = ±2(1 - 4cosh u)/√(...)
            let num = (ctx.one() - u.clone().cosh() * 4u32) * 2u32 * i32::from(s);
            num / fig8_radical(&u)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{dist, im, re};

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn fig8_complete_structure_point() {
        let c = ctx();
        let d = fig8_d(&c.zero(), 1);
        assert!((re(&d) + 0.5).abs() < 1e-30);
        assert!((im(&d) - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let rep = build_representation(&c, &RepParams::new(KnotSpec::FigureEight, c.zero(), Branch::Sign { s: 1 })).unwrap();
        assert!(rep.relator_residual().unwrap() < 1e-20);
    }

    #[test]
    fn adjoint_of_fig8_meridian() {
        let c = ctx();
        let u = c.real(0.37);
        let rep = build_representation(&c, &RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: -1 })).unwrap();
        let x = adjoint3(rep.image("x").unwrap()).unwrap();
        let e = |t: f64| c.real(t).exp();
        let expect = MatC::from_rows(vec![
            vec![e(-0.37), e(-0.185) * 2u32, c.int(-1)],
            vec![c.zero(), c.one(), -e(0.185)],
            vec![c.zero(), c.zero(), e(0.37)],
        ]);
        assert!(x.dist(&expect) < 1e-60);
    }

    #[test]
    fn adjoint_of_diagonal() {
        let c = ctx();
        let m = c.c(1.3, 0.4);
        let a = adjoint3(&MatC::m2(m.clone(), c.zero(), c.zero(), m.clone().recip())).unwrap();
        let m2 = m.clone().square();
        let expect = MatC::from_rows(vec![
            vec![m2.clone().recip(), c.zero(), c.zero()],
            vec![c.zero(), c.one(), c.zero()],
            vec![c.zero(), c.zero(), m2],
        ]);
        assert!(a.dist(&expect) < 1e-60);
        assert!(adjoint3(&MatC::identity(&c, 2)).unwrap().dist(&MatC::identity(&c, 3)) < 1e-70);
    }

    #[test]
    fn adjoint_rejects_non_unit_det() {
        let c = ctx();
        let m = MatC::m2(c.int(2), c.zero(), c.zero(), c.int(1));
        assert!(matches!(adjoint3(&m), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn torus_relation_at_example_point() {
        let c = ctx();
        let rep = build_representation(&c, &RepParams::new(KnotSpec::Torus { a: 1 }, c.real(0.3), Branch::Torus { k: 0 })).unwrap();
        assert!(rep.relator_residual().unwrap() < 1e-20);
    }

    #[test]
    fn longitude_examples() {
        let c = ctx();
        let an = RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 6 }, c.real(0.5), Branch::AN { j: 0 });
        let l = longitude_closed_form(&c, &an).unwrap();
        assert!(dist(l.get(0, 0), &-c.real(-6.5).exp()) < 1e-60);
        let na = RepParams::new(KnotSpec::IteratedTorus { a: 1, b: 6 }, c.real(0.5), Branch::NA { k: 0 });
        let l = longitude_closed_form(&c, &na).unwrap();
        assert!(dist(l.get(0, 0), &c.real(-6.0).exp()) < 1e-60);
    }

    #[test]
    fn index_validation() {
        let c = ctx();
        let k = KnotSpec::IteratedTorus { a: 1, b: 6 };
        assert!(matches!(
            build_representation(&c, &RepParams::new(k, c.real(0.2), Branch::AN { j: 6 })),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            build_representation(&c, &RepParams::new(k, c.real(0.2), Branch::NN { k: 0, h: 0 })),
            Err(Error::BranchPoint(_))
        ));
        assert!(matches!(
            build_representation(&c, &RepParams::new(KnotSpec::Torus { a: 1 }, c.real(0.2), Branch::AN { j: 0 })),
            Err(Error::Unsupported(_))
        ));
        // 2cosh u = 3 is a branch point of the radical
        let u0 = c.real(1.5).acosh();
        assert!(matches!(
            build_representation(&c, &RepParams::new(KnotSpec::FigureEight, u0, Branch::Sign { s: 1 })),
            Err(Error::BranchPoint(_))
        ));
    }
}
