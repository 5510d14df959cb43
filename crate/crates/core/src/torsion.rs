//! Twisted Alexander polynomials through Fox calculus, their t → 1 limits (λ-torsion), the
//! conversion to the meridian torsion, and the chain-complex torsion of the figure-eight knot.

use std::collections::HashMap;

use rug::ops::Pow;
use rug::Complex;
use serde::Serialize;

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::freegroup::{fox_derivative, GroupRingElement, KnotSpec, Word};
use crate::numerics::{abs, basis_change_det, fmt_complex, kernel_basis, rank, Ctx, MatC};
use crate::representations::{
    adjoint3, build_representation, dv_du, evaluate_word, fig8_d, fig8_radical, Branch, RepParams,
    Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorsionKind {
    Lambda,
    Mu,
    /// Limit of T/(t-1)^k with k > 1; not known to be a Reidemeister torsion.
    AlexanderLimit,
}

#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub value: Complex,
    pub kind: TorsionKind,
    pub sign_ambiguous: bool,
    pub vanishing_order: u32,
    /// |difference| between the two finest extrapolation levels.
    pub err_estimate: f64,
}

/// Φ(w) = t^{α(w)} Ad(ρ(w)). Because Ad(MN) = Ad(N)Ad(M), Φ reverses products.
pub struct Phi<'a> {
    rep: &'a Representation,
    t: Complex,
    cache: HashMap<Word, MatC>,
}

impl<'a> Phi<'a> {
    pub fn new(rep: &'a Representation, t: &Complex) -> Self {
        Phi { rep, t: rep.ctx().lift(t), cache: HashMap::new() }
    }

    pub fn word(&mut self, w: &Word) -> Result<MatC> {
        if let Some(m) = self.cache.get(w) {
            return Ok(m.clone());
        }
        let ad = adjoint3(&evaluate_word(self.rep, w)?)?;
        let wt = self.rep.presentation.weight(w);
        let tw = self.t.clone().pow(wt as i32);
        let m = ad.scale(&tw);
        self.cache.insert(w.clone(), m.clone());
        Ok(m)
    }

    pub fn element(&mut self, g: &GroupRingElement) -> Result<MatC> {
        let ctx = self.rep.ctx();
        let mut acc = MatC::zeros(&ctx, 3, 3);
        for (w, c) in g.terms() {
            acc = acc.add(&self.word(w)?.scale(&ctx.int(c)));
        }
        Ok(acc)
    }

    /// Φ(g - 1) for a generator g.
    pub fn gen_minus_one(&mut self, g: &str) -> Result<MatC> {
        let ctx = self.rep.ctx();
        Ok(self.word(&Word::gen(g))?.sub(&MatC::identity(&ctx, 3)))
    }
}

/// Block matrix with block (j, i) = Φ(∂r_i/∂x_j), generators `gens` along block rows and all
/// relators along block columns.
pub fn fox_matrix(rep: &Representation, t: &Complex, gens: &[String]) -> Result<MatC> {
    let ctx = rep.ctx();
    let rels = &rep.presentation.relators;
    let mut phi = Phi::new(rep, t);
    let mut m = MatC::zeros(&ctx, 3 * gens.len(), 3 * rels.len());
    for (j, g) in gens.iter().enumerate() {
        for (i, r) in rels.iter().enumerate() {
            let block = phi.element(&fox_derivative(r, g))?;
            m.set_block(3 * j, 3 * i, &block);
        }
    }
    Ok(m)
}

/// The block matrix with the row of `drop` removed.
pub fn twisted_matrix(rep: &Representation, t: &Complex, drop: &str) -> Result<MatC> {
    let gens: Vec<String> = rep.presentation.generators.iter().filter(|g| *g != drop).cloned().collect();
    if gens.len() == rep.presentation.generators.len() {
        return Err(Error::UnknownGenerator(drop.to_string()));
    }
    fox_matrix(rep, t, &gens)
}

/// ∂₂ of the twisted chain complex at parameter t (all generators).
pub fn boundary2(rep: &Representation, t: &Complex) -> Result<MatC> {
    fox_matrix(rep, t, &rep.presentation.generators)
}

/// ∂₁ = (Φ(x₁-1) | ... | Φ(x_n-1)).
pub fn boundary1(rep: &Representation, t: &Complex) -> Result<MatC> {
    let ctx = rep.ctx();
    let gens = &rep.presentation.generators;
    let mut phi = Phi::new(rep, t);
    let mut m = MatC::zeros(&ctx, 3, 3 * gens.len());
    for (j, g) in gens.iter().enumerate() {
        m.set_block(0, 3 * j, &phi.gen_minus_one(g)?);
    }
    Ok(m)
}

/// det Φ(∂r_i/∂x_j) / det Φ(x_drop - 1).
pub fn twisted_alexander(rep: &Representation, t: &Complex, drop: &str) -> Result<Complex> {
    let num = twisted_matrix(rep, t, drop)?.det();
    let den = Phi::new(rep, t).gen_minus_one(drop)?.det();
    let d = abs(&den);
    if d < 1e-60 * (1.0 + abs(&num)) {
        return Err(Error::SingularSystem(d));
    }
    Ok(num / den)
}

/// Default extrapolation grid for t = 1 + h. Three points leave errors near 1e-9 for the cable
/// families, so two finer points are added.
pub const H_GRID: [f64; 5] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

/// The three-point grid; used for the refinement-stability check.
pub const H_GRID_COARSE: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Neville extrapolation of samples f(h_i) to h = 0; returns (value, last correction size).
fn extrapolate_to_zero(hs: &[f64], fs: &[Complex]) -> (Complex, f64) {
    let n = hs.len();
    let mut p: Vec<Complex> = fs.to_vec();
    let mut last = 0.0;
    let prec = fs[0].prec().0;
    let ctx = Ctx::new(prec);
    for m in 1..n {
        for i in 0..n - m {
            let (hi, hj) = (ctx.real(hs[i]), ctx.real(hs[i + m]));
            // P = (h_j·P_i - h_i·P_{i+1}) / (h_j - h_i)... evaluated at 0
            let num = hj.clone() * &p[i] - hi.clone() * &p[i + 1];
            let np = num / (hj - hi);
            if i == 0 && m == n - 1 {
                last = abs(&(np.clone() - &p[0]));
            }
            p[i] = np;
        }
    }
    (p[0].clone(), last)
}

/// lim_{t→1} T(t)/(t-1)^k with k detected from the samples. Returns (limit, k, err).
pub fn alexander_limit(rep: &Representation, drop: &str, hs: &[f64]) -> Result<(Complex, u32, f64)> {
    if hs.len() < 2 {
        return Err(Error::Hypothesis("need at least two step sizes".into()));
    }
    let ctx = rep.ctx();
    let vals: Vec<Complex> = hs
        .iter()
        .map(|h| twisted_alexander(rep, &(ctx.real(*h) + 1u32), drop))
        .collect::<Result<_>>()?;
    let order_between = |i: usize| -> f64 {
        let r = abs(&vals[i]) / abs(&vals[i + 1]);
        r.ln() / (hs[i] / hs[i + 1]).ln()
    };
    let k0 = order_between(0);
    let k = k0.round();
    for i in 0..hs.len() - 1 {
        let ki = order_between(i);
        if !ki.is_finite() || (ki - k).abs() > 0.1 {
            return Err(Error::Convergence(format!(
                "vanishing order unstable under refinement: {k0:.4} vs {ki:.4}"
            )));
        }
    }
    if k < 0.0 {
        return Err(Error::Convergence(format!("twisted Alexander polynomial has a pole of order {}", -k)));
    }
    let k = k as u32;
    let scaled: Vec<Complex> =
        vals.iter().zip(hs).map(|(v, h)| v.clone() / ctx.real(*h).pow(k)).collect();
    let (lim, err) = extrapolate_to_zero(hs, &scaled);
    Ok((lim, k, err))
}

/// λ-torsion -lim T/(t-1) when the order is one; for higher order the bare limit of
/// T/(t-1)^k is returned and labelled as such.
pub fn torsion_lambda(rep: &Representation) -> Result<TorsionResult> {
    torsion_lambda_with_grid(rep, &H_GRID)
}

pub fn torsion_lambda_with_grid(rep: &Representation, hs: &[f64]) -> Result<TorsionResult> {
    let drop = default_drop(rep);
    let (lim, k, err) = alexander_limit(rep, drop, hs)?;
    let (value, kind) = if k == 1 { (-lim, TorsionKind::Lambda) } else { (lim, TorsionKind::AlexanderLimit) };
    Ok(TorsionResult { value, kind, sign_ambiguous: true, vanishing_order: k, err_estimate: err })
}

/// The generator whose row is dropped: y for every family here.
pub fn default_drop(_rep: &Representation) -> &'static str {
    "y"
}

/// Porti: T_μ = T_λ / (dv/du).
pub fn torsion_mu(lambda: &TorsionResult, dv_du: &Complex) -> Result<TorsionResult> {
    if abs(dv_du) == 0.0 {
        return Err(Error::Hypothesis("dv/du vanishes".into()));
    }
    let kind = match lambda.kind {
        TorsionKind::Lambda => TorsionKind::Mu,
        k => k,
    };
    Ok(TorsionResult {
        value: lambda.value.clone() / dv_du,
        kind,
        sign_ambiguous: true,
        vanishing_order: lambda.vanishing_order,
        err_estimate: lambda.err_estimate / abs(dv_du),
    })
}

/// Meridian torsion through the Fox pipeline with dv/du from the closed-form longitude.
pub fn torsion_mu_for(ctx: &Ctx, p: &RepParams) -> Result<TorsionResult> {
    let rep = build_representation(ctx, p)?;
    let lam = torsion_lambda(&rep)?;
    torsion_mu(&lam, &dv_du(ctx, p))
}

/// Diagnostics of the figure-eight chain-complex computation.
#[derive(Clone, Debug)]
pub struct ChainComplexTorsion {
    pub value: Complex,
    pub d2: MatC,
    pub d1: MatC,
    pub rank_d2: usize,
    pub rank_d1: usize,
    pub h1_dim: usize,
    pub h2_dim: usize,
    pub h2_generator: Vec<Complex>,
    pub composition_residual: f64,
}

/// Torsion of the figure-eight complement from the twisted chain complex C₂ → C₁ → C₀ with the
/// reference generators coming from the boundary torus.
pub fn fig8_torsion_chain_complex(ctx: &Ctx, u: &Complex, sign: i8) -> Result<ChainComplexTorsion> {
    let p = RepParams::new(KnotSpec::FigureEight, ctx.lift(u), Branch::Sign { s: sign });
    let rep = build_representation(ctx, &p)?;
    let one = ctx.one();
    let d2 = boundary2(&rep, &one)?;
    let d1 = boundary1(&rep, &one)?;
    let composition_residual = d1.mul(&d2).max_abs();
    let tol = 1e-30;
    let rank_d2 = rank(&d2, tol);
    let rank_d1 = rank(&d1, tol);
    let ker_d2 = kernel_basis(&d2, tol).len();
    let ker_d1 = kernel_basis(&d1, tol).len();
    let h2_dim = ker_d2;
    let h1_dim = ker_d1 - rank_d2;
    if h1_dim != 1 || h2_dim != 1 {
        return Err(Error::Hypothesis(format!(
            "unexpected twisted homology dimensions H1 = {h1_dim}, H2 = {h2_dim}"
        )));
    }
    let uu = ctx.lift(u);
    let m = (uu.clone() / 2u32).exp();
    let pvec = vec![m.clone() * 2u32, uu.clone().exp() - 1u32, ctx.zero()];
    let x = adjoint3(rep.image("x")?)?;
    let y = adjoint3(rep.image("y")?)?;
    let xi = x.inverse().ok_or(Error::SingularSystem(0.0))?;
    let yi = y.inverse().ok_or(Error::SingularSystem(0.0))?;
    // h̃₂ = (X⁻¹Y - I) X⁻¹ Y X Y⁻¹ X P
    let a = xi.mul(&y).sub(&MatC::identity(ctx, 3));
    let chain = a.mul(&xi).mul(&y).mul(&x).mul(&yi).mul(&x);
    let h2 = chain.mul_vec(&pvec);
    let e = |k: usize, n: usize| -> Vec<Complex> {
        (0..n).map(|i| if i == k { ctx.one() } else { ctx.zero() }).collect()
    };
    let mut h1 = pvec.clone();
    h1.extend([ctx.zero(), ctx.zero(), ctx.zero()]);
    let num = basis_change_det(&[d2.col(0), d2.col(1), h1, e(1, 6), e(2, 6), e(4, 6)], 1e-60)?;
    let den1 = basis_change_det(&[d1.col(1), d1.col(2), d1.col(4)], 1e-60)?;
    let den2 = basis_change_det(&[h2.clone(), e(0, 3), e(1, 3)], 1e-60)?;
    Ok(ChainComplexTorsion {
        value: num / (den1 * den2),
        d2,
        d1,
        rank_d2,
        rank_d1,
        h1_dim,
        h2_dim,
        h2_generator: h2,
        composition_residual,
    })
}

/// The 6×3 table of ∂₂ entries for the figure-eight knot as printed, kept only for comparison
/// against the computed boundary map.
pub fn fig8_printed_d_table(ctx: &Ctx, u: &Complex, sign: i8) -> MatC {
    let u = ctx.lift(u);
    let d = fig8_d(&u, sign);
    let e = |k: f64| (u.clone() * ctx.real(k)).exp();
    let ch = u.clone().cosh();
    let c3 = ch.clone() * 2u32 - 3u32; // 2cosh u - 3
    let c1 = ch.clone() * 2u32 - 1u32; // 2cosh u - 1
    let eu = e(1.0);
    let e2 = e(2.0);
    let e3 = e(3.0);
    let e4 = e(4.0);
    let e5 = e(5.0);
    let d2 = d.clone().square();
    let one = ctx.one();
    let d11 = e(-2.0)
        * (c3.clone() * (e3.clone() + e2.clone() * 2u32 + 1u32)
            - e(-1.0) * &d * (e3.clone() * 3u32 - e2.clone() * 2u32 + eu.clone() * 4u32 - 1u32));
    let d12 = e(-2.5) * 2u32
        * (e5.clone() - e4.clone() * 2u32 - e3.clone() * 2u32 + e2.clone() * 4u32 - eu.clone() * 4u32 + 1u32
            - d.clone() * (e4.clone() + &e3 - e2.clone() * 2u32 + eu.clone() * 3u32 - 1u32));
    let d13 = -(e(-1.0) * &c1
        * (e3.clone() - &e2 - eu.clone() * 2u32 + 1u32 - d.clone() * (e2.clone() + &eu - 1u32)));
    let d21 = e(-2.5) * &d
        * (eu.clone() * (-(eu.clone() * 3u32) + 2u32) + d.clone() * (e3.clone() - &e2 + eu.clone() * 2u32 - 1u32));
    let d22 = -(e(-3.0)
        * (-(e3.clone() * 5u32) + e2.clone() * 14u32 - eu.clone() * 10u32 + 2u32
            + d.clone() * 2u32 * (e4.clone() - &e3 + e2.clone() * 4u32 - eu.clone() * 4u32 + 1u32)));
    let d23 = -(e(-2.5) * (eu.clone() - 1u32)
        * ((eu.clone() - 1u32) * (e2.clone() + eu.clone() * 2u32 - 1u32) - d.clone() * (eu.clone() * 2u32 - 1u32)));
    let d31 = e(-1.0) * &d2
        * (-(e(-1.0) * (eu.clone() + 1u32).square() * &c3) + d.clone() * 2u32);
    let d32 = e(-1.5) * 2u32 * &d * &c3 * (e2.clone() + &eu - 1u32 - &d);
    let d33 = e(-2.0) * (eu.clone() - 1u32) * &c3 * (e2.clone() + &eu - 1u32 - &d);
    let d41 = c3.clone() * 2u32 * (-one.clone() + d.clone() * &ch);
    let d42 = -(e(-0.5) * 2u32 * &c3 * (e2.clone() + &eu - 1u32 - &d));
    let d43 = (eu.clone() - 1u32)
        * ((eu.clone() + 1u32) * &c3 + e(-1.0) * &d * (-e2.clone() - &eu + 1u32));
    let d51 = e(-1.5) * &d * &c3 * (e2.clone() - &eu - 1u32 + e2.clone() * &d);
    let ch2 = ch.clone().square();
    let d52 = -(ch2.clone() * 8u32 - ch.clone() * 16u32 + 7u32
        + d.clone() * 2u32 * (ch2.clone() * 4u32 - ch.clone() * 6u32 + 1u32));
    let d53 = -(e(-1.5) * (eu.clone() - 1u32)
        * ((eu.clone() - 1u32).square() + d.clone() * (e2.clone() - &eu + 1u32)));
    let d61 = -((eu.clone() - 1u32) * &c3
        * (c3.clone() + e(-2.0) * &d * (e3.clone() - e2.clone() * 2u32 - 1u32)));
    let d62 = e(-0.5) * 2u32 * &d * (eu.clone() - 1u32)
        * (ch.clone() * 2u32 - 2u32 + d.clone() * &c1);
    let d63 = c1.clone() * (c3.clone() + d.clone() * 2u32 * (ch.clone() - 1u32));
    MatC::from_rows(vec![
        vec![d11, d12, d13],
        vec![d21, d22, d23],
        vec![d31, d32, d33],
        vec![d41, d42, d43],
        vec![d51, d52, d53],
        vec![d61, d62, d63],
    ])
}

/// The printed 3×6 matrix of ∂₁ for the figure-eight knot.
pub fn fig8_printed_d1(ctx: &Ctx, u: &Complex, sign: i8) -> MatC {
    let u = ctx.lift(u);
    let d = fig8_d(&u, sign);
    let e = |k: f64| (u.clone() * ctx.real(k)).exp();
    let z = ctx.zero();
    MatC::from_rows(vec![
        vec![e(-1.0) - 1u32, e(-0.5) * 2u32, -ctx.one(), e(-1.0) - 1u32, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), -e(0.5), -(e(-0.5) * &d), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), e(1.0) - 1u32, -d.clone().square(), e(0.5) * 2u32 * &d, e(1.0) - 1u32],
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct TableDiscrepancy {
    pub matrix: &'static str,
    pub row: usize,
    pub col: usize,
    pub printed: String,
    pub computed: String,
    pub rel_err: f64,
}

/// Entries (1-based) where the printed ∂₂ and ∂₁ disagree with the computed boundary maps.
pub fn fig8_d_table_discrepancies(ctx: &Ctx, u: &Complex, sign: i8, tol: f64) -> Result<Vec<TableDiscrepancy>> {
    let p = RepParams::new(KnotSpec::FigureEight, ctx.lift(u), Branch::Sign { s: sign });
    let rep = build_representation(ctx, &p)?;
    let one = ctx.one();
    let pairs = [
        ("d2", boundary2(&rep, &one)?, fig8_printed_d_table(ctx, u, sign)),
        ("d1", boundary1(&rep, &one)?, fig8_printed_d1(ctx, u, sign)),
    ];
    let mut out = Vec::new();
    for (name, computed, printed) in pairs {
        for i in 0..computed.rows {
            for j in 0..computed.cols {
                let a = computed.get(i, j);
                let b = printed.get(i, j);
                let err = abs(&(a.clone() - b)) / abs(a).max(abs(b)).max(1e-300);
                if err > tol {
                    out.push(TableDiscrepancy {
                        matrix: name,
                        row: i + 1,
                        col: j + 1,
                        printed: fmt_complex(b, 17),
                        computed: fmt_complex(a, 17),
                        rel_err: err,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Closed forms from the hand computation, used as the second route in checks.
pub mod closed {
    use super::*;

    fn tp(t: &Complex, n: i64) -> Complex {
        t.clone().pow(n as i32)
    }

    /// Torus knot, y dropped: det Φ(∂r/∂x).
    pub fn torus_numerator(t: &Complex, u: &Complex, alpha: i64, w1: &Complex) -> Complex {
        let ta = tp(t, alpha);
        let eu = u.clone().exp();
        let num = (ta.clone() - 1u32).square()
            * (ta + 1u32)
            * (t.clone() * &eu - 1u32)
            * (t.clone() / &eu - 1u32);
        let t2 = t.clone().square();
        let den = (t.clone() + 1u32) * (t2.clone() - w1.clone().square()) * (t2 - w1.clone().square().recip());
        num / den
    }

    /// Figure-eight, y dropped: det Φ(∂r/∂x).
    pub fn fig8_numerator(t: &Complex, u: &Complex) -> Complex {
        let eu = u.clone().exp();
        let pre = -(t.clone().pow(-3i32) * (-(u.clone() * 2u32)).exp());
        let inner = eu.clone()
            + t.clone() * (-Complex::with_val(t.prec(), 2) + (t.clone() - 1u32) * &eu - eu.clone().square() * 2u32);
        pre * (t.clone() - 1u32).square() * (t.clone() - &eu) * (t.clone() * &eu - 1u32) * inner
    }

    /// det Φ(y - 1) for the torus and figure-eight knots: (t-1)(te^u-1)(te^{-u}-1).
    pub fn knot_y_denominator(t: &Complex, u: &Complex) -> Complex {
        let eu = u.clone().exp();
        (t.clone() - 1u32) * (t.clone() * &eu - 1u32) * (t.clone() / &eu - 1u32)
    }

    /// (t²-1)(t²z²-1)(t²z⁻²-1): det Φ(y-1) for the iterated families, z = ω₂, e^u or ω₃.
    pub fn iterated_y_denominator(t: &Complex, z: &Complex) -> Complex {
        let t2 = t.clone().square();
        let z2 = z.clone().square();
        (t2.clone() - 1u32) * (t2.clone() * &z2 - 1u32) * (t2 / z2 - 1u32)
    }

    /// AN family: det Φ(∂r₁/∂x) = Π_{s ∈ {t², t²ω₂², t²ω₂⁻²}} (s^α + 1)/(s + 1).
    pub fn an_r1_block(t: &Complex, alpha: i64, w2: &Complex) -> Complex {
        let t2 = t.clone().square();
        let w22 = w2.clone().square();
        let mut acc = Complex::with_val(t.prec(), 1);
        for s in [t2.clone(), t2.clone() * &w22, t2 / &w22] {
            acc *= (tp(&s, alpha) + 1u32) / (s + 1u32);
        }
        acc
    }

    /// NA and NN families: det Φ(∂r₁/∂x) with z = e^u (NA) or ω₃ (NN).
    pub fn nonabelian_r1_block(t: &Complex, alpha: i64, w1: &Complex, z: &Complex) -> Complex {
        let t2a = tp(t, 2 * alpha);
        let t2 = t.clone().square();
        let t4 = t2.clone().square();
        let z2 = z.clone().square();
        let w12 = w1.clone().square();
        let num = (t2a.clone() - 1u32).square()
            * (t2a + 1u32)
            * (t2.clone() * &z2 - 1u32)
            * (t2.clone() / &z2 - 1u32);
        let den = (t2 + 1u32) * (t4.clone() - &w12) * (t4 - w12.recip());
        num / den
    }

    /// AN and NN families: the (p, q) × (r₂, r₃) block, -(t^β+1)(t^β-1)².
    pub fn pattern_block_an(t: &Complex, beta: i64) -> Complex {
        let tb = tp(t, beta);
        -((tb.clone() + 1u32) * (tb - 1u32).square())
    }

    /// NA family: -(1+t^β)(1+t^β e^{γu})(1+t^β e^{-γu}), γ = β - 4α.
    pub fn pattern_block_na(t: &Complex, beta: i64, gamma: i64, u: &Complex) -> Complex {
        let tb = tp(t, beta);
        let eg = (u.clone() * gamma).exp();
        -((tb.clone() + 1u32) * (tb.clone() * &eg + 1u32) * (tb / eg + 1u32))
    }

    fn w_minus_inv(w: &Complex) -> Complex {
        w.clone() - w.clone().recip()
    }

    pub fn torus_lambda(alpha: i64, w1: &Complex) -> Complex {
        (w_minus_inv(w1).recip() * alpha).square()
    }

    pub fn torus_mu(alpha: i64, w1: &Complex) -> Complex {
        w_minus_inv(w1).square().recip() * alpha / 2u32
    }

    pub fn fig8_lambda(u: &Complex) -> Complex {
        u.clone().cosh() * 4u32 - 1u32
    }

    pub fn fig8_mu(u: &Complex) -> Complex {
        fig8_radical(u) / 2u32
    }

    fn an_ratio(alpha: i64, w2: &Complex) -> Complex {
        let wa = w2.clone().pow(alpha as i32);
        let w22 = w2.clone().square();
        (wa.clone() + wa.recip()) / (w22.clone() - w22.recip())
    }

    pub fn an_lambda(alpha: i64, beta: i64, w2: &Complex) -> Complex {
        (an_ratio(alpha, w2) * beta).square()
    }

    pub fn an_mu(alpha: i64, beta: i64, w2: &Complex) -> Complex {
        an_ratio(alpha, w2).square() * beta / 2u32
    }

    /// NA λ-torsion as obtained from the Fox pipeline: (4α cosh(γu/2)/(ω₁-ω₁⁻¹))².
    pub fn na_lambda(alpha: i64, gamma: i64, u: &Complex, w1: &Complex) -> Complex {
        let ch = (u.clone() * gamma / 2u32).cosh();
        (ch * (4 * alpha) / w_minus_inv(w1)).square()
    }

    /// NA μ-torsion: λ/(dv/du) with dv/du = -8α.
    pub fn na_mu(alpha: i64, gamma: i64, u: &Complex, w1: &Complex) -> Complex {
        na_lambda(alpha, gamma, u, w1) / (-8 * alpha)
    }

    /// The printed NA λ-torsion: α cosh(γu/2)/(ω₁-ω₁⁻¹), first power.
    pub fn na_lambda_printed(alpha: i64, gamma: i64, u: &Complex, w1: &Complex) -> Complex {
        let ch = (u.clone() * gamma / 2u32).cosh();
        ch * alpha / w_minus_inv(w1)
    }

    /// The printed NA μ-torsion: (α/8)(cosh(γu/2)/(ω₁-ω₁⁻¹))².
    pub fn na_mu_printed(alpha: i64, gamma: i64, u: &Complex, w1: &Complex) -> Complex {
        let ch = (u.clone() * gamma / 2u32).cosh();
        (ch / w_minus_inv(w1)).square() * alpha / 8u32
    }

    /// NN: lim T/(t-1)³ = (2αβ/(ω₁-ω₁⁻¹))².
    pub fn nn_alexander_limit(alpha: i64, beta: i64, w1: &Complex) -> Complex {
        (w_minus_inv(w1).recip() * (2 * alpha * beta)).square()
    }

    /// NN: the limit divided by dv/du = -2β, i.e. -2β(α/(ω₁-ω₁⁻¹))².
    pub fn nn_alexander_limit_mu(alpha: i64, beta: i64, w1: &Complex) -> Complex {
        (w_minus_inv(w1).recip() * alpha).square() * (-2 * beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CrossCheckStatus {
    Match,
    Mismatch,
    /// Known disagreement, reported rather than asserted.
    Warn,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub family: String,
    pub indices: Vec<i64>,
    pub tau_inv_sq_abs: f64,
    pub torsion_abs: f64,
    pub rel_diff: f64,
    pub status: CrossCheckStatus,
}

/// Compare |τ|⁻² from the expansion against |T_μ| from the Fox pipeline at the point u.
pub fn tau_torsion_crosscheck(ctx: &Ctx, p: &RepParams, tol: f64) -> Result<CrossCheckReport> {
    let xi = ctx.lift(&p.u) + ctx.ipi() * 2u32;
    let (family, indices, tau) = match (p.knot, p.branch) {
        (KnotSpec::Torus { a }, Branch::Torus { k }) => ("torus", vec![k], asymptotics::tau_torus(ctx, a, k)),
        (KnotSpec::IteratedTorus { a, b }, Branch::AN { j }) => ("AN", vec![j], asymptotics::tau1(ctx, a, b, j)),
        (KnotSpec::IteratedTorus { a, b }, Branch::NA { k }) => {
            ("NA", vec![k], asymptotics::tau2(ctx, a, b, k, &xi, asymptotics::Variant::Canonical))
        }
        (KnotSpec::IteratedTorus { a, b }, Branch::NN { k, h }) => {
            // m = k, l = h + 2m + 1
            let m = k;
            let l = h + 2 * m + 1;
            ("NN", vec![k, h], asymptotics::tau3(ctx, a, b, l, m))
        }
        _ => return Err(Error::Unsupported("no expansion coefficient for this family".into())),
    };
    let tau_inv_sq = abs(&tau.square().recip());
    let tm = torsion_mu_for(ctx, p)?;
    let torsion_abs = abs(&tm.value);
    let rel_diff = (tau_inv_sq - torsion_abs).abs() / torsion_abs.max(1e-300);
    let status = if family == "NN" {
        CrossCheckStatus::Warn
    } else if rel_diff <= tol {
        CrossCheckStatus::Match
    } else {
        CrossCheckStatus::Mismatch
    };
    Ok(CrossCheckReport { family: family.into(), indices, tau_inv_sq_abs: tau_inv_sq, torsion_abs, rel_diff, status })
}
