//! Chern-Simons classes [s, t; z], closed-form CS values of the representation families,
//! Kirk-Klassen path integration, the figure-eight dilogarithm potential, and the identity
//! CS = S - πiu - uv/4 linking CS to the exponents of the colored Jones expansion.

use rug::{Complex, Float};
use serde::Serialize;

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::freegroup::KnotSpec;
use crate::numerics::{abs, gauss_legendre, im, li2, re, Ctx};
use crate::representations::{fig8_ell, Branch, RepParams};

/// [s, t; z] modulo the three moves
/// (s,t;z) ≈ (s+1,t;z e^{-8πit}) ≈ (s,t+1;z e^{8πis}) ≈ (-s,-t;z).
#[derive(Clone, Debug)]
pub struct CSClass {
    pub s: Complex,
    pub t: Complex,
    pub z: Complex,
}

fn e8pi(ctx: &Ctx, w: &Complex) -> Complex {
    (ctx.ipi() * 8u32 * w).exp()
}

impl CSClass {
    pub fn new(s: Complex, t: Complex, z: Complex) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::Hypothesis("z must be nonzero".into()));
        }
        Ok(CSClass { s, t, z })
    }

    /// [u/(4πi), v/(4πi); exp(2CS/(πi))].
    pub fn from_uv_cs(ctx: &Ctx, u: &Complex, v: &Complex, cs: &Complex) -> Self {
        let four_pi_i = ctx.ipi() * 4u32;
        let z = (ctx.lift(cs) * 2u32 / ctx.ipi()).exp();
        CSClass { s: ctx.lift(u) / &four_pi_i, t: ctx.lift(v) / four_pi_i, z }
    }

    /// (s+n, t; z e^{-8πint})
    pub fn shift_s(&self, ctx: &Ctx, n: i64) -> Self {
        let z = self.z.clone() * e8pi(ctx, &(self.t.clone() * -n));
        CSClass { s: self.s.clone() + n, t: self.t.clone(), z }
    }

    /// (s, t+m; z e^{8πims})
    pub fn shift_t(&self, ctx: &Ctx, m: i64) -> Self {
        let z = self.z.clone() * e8pi(ctx, &(self.s.clone() * m));
        CSClass { s: self.s.clone(), t: self.t.clone() + m, z }
    }

    pub fn negate(&self) -> Self {
        CSClass { s: -self.s.clone(), t: -self.t.clone(), z: self.z.clone() }
    }

    fn reduce(&self, ctx: &Ctx) -> Self {
        let n = re(&self.s).floor() as i64;
        let a = self.shift_s(ctx, -n);
        let m = re(&a.t).floor() as i64;
        a.shift_t(ctx, -m)
    }

    /// Representative with 0 ≤ Re s, Re t < 1, choosing between ±(s,t) lexicographically.
    pub fn normalize(&self, ctx: &Ctx) -> Self {
        let a = self.reduce(ctx);
        let b = a.negate().reduce(ctx);
        let key = |c: &CSClass| (re(&c.s), im(&c.s), re(&c.t), im(&c.t));
        let (ka, kb) = (key(&a), key(&b));
        if kb.partial_cmp(&ka) == Some(std::cmp::Ordering::Less) { b } else { a }
    }

    /// Equivalence up to the moves, tolerant of representatives on either side of Re = integer.
    pub fn equivalent(&self, ctx: &Ctx, other: &CSClass, tol: f64) -> bool {
        for o in [other.clone(), other.negate()] {
            let ds = self.s.clone() - &o.s;
            let dt = self.t.clone() - &o.t;
            let (n, m) = (re(&ds).round(), re(&dt).round());
            let near = |d: &Complex, k: f64| (re(d) - k).abs() < tol && im(d).abs() < tol;
            if !near(&ds, n) || !near(&dt, m) {
                continue;
            }
            let moved = o.shift_s(ctx, n as i64).shift_t(ctx, m as i64);
            if abs(&(moved.z / &self.z - 1u32)) < tol {
                return true;
            }
        }
        false
    }
}

/// A CS value, defined modulo π².
#[derive(Clone, Debug)]
pub struct CSValue {
    pub value: Complex,
}

impl CSValue {
    pub fn new(value: Complex) -> Self {
        CSValue { value }
    }

    /// |a - b - nπ²| with n the nearest integer.
    pub fn residual(&self, ctx: &Ctx, other: &CSValue) -> f64 {
        mod_pi2_residual(ctx, &(self.value.clone() - &other.value))
    }

    pub fn eq_mod_pi2(&self, ctx: &Ctx, other: &CSValue, tol: f64) -> bool {
        self.residual(ctx, other) <= tol
    }
}

/// Distance from d to the nearest element of π²Z.
pub fn mod_pi2_residual(ctx: &Ctx, d: &Complex) -> f64 {
    let pi2 = ctx.pi().square();
    let q = d.clone() / &pi2;
    let n = re(&q).round();
    abs(&(d.clone() - pi2 * ctx.real(n)))
}

fn family_name(p: &RepParams) -> &'static str {
    match p.branch {
        Branch::Sign { .. } => "figure-eight",
        Branch::Torus { .. } => "torus",
        Branch::AN { .. } => "AN",
        Branch::NA { .. } => "NA",
        Branch::NN { .. } => "NN",
    }
}

/// The printed CS value and v for branch integer `branch` (l, m or n in the respective
/// closed form; NA takes half-integers).
pub fn cs_closed_form(ctx: &Ctx, p: &RepParams, branch: f64) -> Result<(CSValue, Complex)> {
    p.validate()?;
    let u = ctx.lift(&p.u);
    let br = ctx.real(branch);
    let pi2 = ctx.pi().square();
    let ipi = ctx.ipi();
    let sq = |n: i64, d: i64| pi2.clone() * ((2 * n + 1) * (2 * n + 1)) / (2 * d);
    let (cs, v) = match p.branch {
        Branch::Torus { k } => {
            let alpha = p.alpha();
            let cs = ipi.clone() * &u * &br / 2u32 + sq(k, alpha);
            (cs, -(u.clone() * (2 * alpha)) + ipi * 2u32 * &br)
        }
        Branch::AN { j } => {
            let beta = p.beta();
            let cs = ipi.clone() * &u * &br / 2u32 + sq(j, beta);
            (cs, -(u.clone() * (2 * beta)) + ipi * 2u32 * &br)
        }
        Branch::NA { k } => {
            let alpha = p.alpha();
            let cs = ipi.clone() * &u * &br + sq(k, alpha);
            (cs, -(u.clone() * (8 * alpha)) + ipi * 4u32 * &br)
        }
        Branch::NN { k, h } => {
            let (alpha, beta, gamma) = (p.alpha(), p.beta(), p.gamma());
            let cs = ipi.clone() * &u * &br / 2u32 + sq(k, alpha) + sq(h, gamma);
            (cs, -(u.clone() * (2 * beta)) + ipi * 2u32 * &br)
        }
        Branch::Sign { .. } => {
            return Err(Error::Unsupported("figure-eight CS comes from fig8_potential".into()))
        }
    };
    Ok((CSValue::new(cs), v))
}

/// Result of a Kirk-Klassen integration.
#[derive(Clone, Debug)]
pub struct KKResult {
    /// z₁/z₀
    pub ratio: Complex,
    /// ∫₀¹ (u v' - v u') dt
    pub integral: Complex,
    pub err_estimate: f64,
    pub intervals: usize,
}

/// exp[(i/2π) ∫₀¹ (u v' - v u') dt] for a path t ↦ (u_t, v_t). Derivatives are central
/// differences at step 2^{-prec/3}; the quadrature is composite 8-point Gauss-Legendre with
/// interval doubling until two levels agree to `tol`. `path` must be reentrant.
pub fn kirk_klassen_ratio<F>(ctx: &Ctx, path: F, tol: f64) -> Result<KKResult>
where
    F: Fn(&Float) -> (Complex, Complex),
{
    let prec = ctx.prec;
    let h = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 3));
    let integrand = |t: &Float| -> Complex {
        let (u, v) = path(t);
        let (up, vp) = path(&Float::with_val(prec, t + &h));
        let (um, vm) = path(&Float::with_val(prec, t - &h));
        let two_h = Complex::with_val(prec, Float::with_val(prec, &h * 2u32));
        let du = (up - um) / &two_h;
        let dv = (vp - vm) / &two_h;
        u * dv - v * du
    };
    let nodes = gauss_legendre(ctx, 8);
    let composite = |m: usize| -> Complex {
        let mut acc = ctx.zero();
        let width = Float::with_val(prec, 1) / m as u32;
        let half = Float::with_val(prec, &width / 2u32);
        for i in 0..m {
            let mid = Float::with_val(prec, &width * i as u32) + &half;
            for (x, w) in &nodes {
                let t = Float::with_val(prec, x * &half) + &mid;
                acc += integrand(&t) * Float::with_val(prec, w * &half);
            }
        }
        acc
    };
    let mut m = 1usize;
    let mut prev = composite(m);
    while m < 4096 {
        m *= 2;
        let cur = composite(m);
        let err = abs(&(cur.clone() - &prev));
        if err <= tol * abs(&cur).max(1.0) {
            let ratio = (cur.clone() * ctx.i() / (ctx.pi() * 2u32)).exp();
            return Ok(KKResult { ratio, integral: cur, err_estimate: err, intervals: m });
        }
        prev = cur;
    }
    Err(Error::Convergence("Kirk-Klassen quadrature did not settle by 4096 intervals".into()))
}

/// Kirk-Klassen route to the CS value of a torus, AN or NA representation.
#[derive(Clone, Debug)]
pub struct KKCheck {
    pub u0: Complex,
    pub quadrature: KKResult,
    pub ratio_closed: Complex,
    pub ratio_rel_err: f64,
    pub cs_path: CSValue,
    pub cs_closed: CSValue,
    pub cs_residual: f64,
}

/// Integrates along the straight path from the representation at u₀ (where the class is
/// [u₀/(4πi), t₀; e^{8πi s₀ t₀}] with t₀ integral) to u, then compares with the closed form.
/// `branch` must make t₀ = v(u₀)/(4πi) an integer.
pub fn kk_path_check(ctx: &Ctx, p: &RepParams, branch: i64, tol: f64) -> Result<KKCheck> {
    let u = ctx.lift(&p.u);
    let (u0, slope, vconst, mult) = match p.branch {
        Branch::Torus { k } => {
            let a = p.alpha();
            (ctx.ipi() * (2 * k + 1) / a, -2 * a, ctx.ipi() * (2 * branch), branch)
        }
        Branch::AN { j } => {
            let b = p.beta();
            (ctx.ipi() * (2 * j + 1) / b, -2 * b, ctx.ipi() * (2 * branch), branch)
        }
        Branch::NA { k } => {
            let a = p.alpha();
            (ctx.ipi() * (2 * k + 1) / (2 * a), -8 * a, ctx.ipi() * (4 * branch), 2 * branch)
        }
        _ => return Err(Error::Unsupported(format!("no Kirk-Klassen path for {}", family_name(p)))),
    };
    let v_of = |w: &Complex| w.clone() * slope + &vconst;
    let t0 = v_of(&u0) / (ctx.ipi() * 4u32);
    if (re(&t0) - re(&t0).round()).abs() > 1e-20 || im(&t0).abs() > 1e-20 {
        return Err(Error::Hypothesis(format!(
            "branch {branch} gives non-integral v(u0)/(4πi) = {}",
            crate::numerics::fmt_complex(&t0, 6)
        )));
    }
    let du = u.clone() - &u0;
    let path = |t: &Float| {
        let ut = u0.clone() + du.clone() * t;
        let vt = v_of(&ut);
        (ut, vt)
    };
    let quadrature = kirk_klassen_ratio(ctx, path, tol)?;
    let ratio_closed = (du.clone() * mult).exp();
    let ratio_rel_err = abs(&(quadrature.ratio.clone() / &ratio_closed - 1u32));
    let s0 = u0.clone() / (ctx.ipi() * 4u32);
    let z0 = e8pi(ctx, &(s0 * &t0));
    let z1 = z0 * &quadrature.ratio;
    let cs_path = CSValue::new(ctx.ipi() / 2u32 * z1.ln());
    let (cs_closed, _) = cs_closed_form(ctx, p, branch as f64)?;
    let cs_residual = cs_path.residual(ctx, &cs_closed);
    Ok(KKCheck { u0, quadrature, ratio_closed, ratio_rel_err, cs_path, cs_closed, cs_residual })
}

#[derive(Clone, Debug)]
pub struct Fig8Potential {
    pub phi: Complex,
    pub s: Complex,
    pub ds_du: Complex,
    pub v: Complex,
    /// iVol + ∫₀^u log ℓ - u log ℓ(u)/2
    pub cs: Complex,
    /// S - πiu - uv/4
    pub cs_from_s: Complex,
}

/// Vol(S³ ∖ 4₁) = 2 Im Li₂(e^{iπ/3}).
pub fn fig8_volume(ctx: &Ctx) -> Float {
    let w = ctx.root_of_unity(1, 3);
    Float::with_val(ctx.prec, li2(&w).imag() * 2u32)
}

/// φ(u) = -arccosh(cosh u - 1/2), so φ(0) = -iπ/3 and S(0) = +i·Vol. For small real u the
/// argument sits on the cut of the principal arccosh, so the analytic form -i·arccos is used.
pub fn fig8_phi(ctx: &Ctx, u: &Complex) -> Complex {
    let c = ctx.lift(u).cosh() - ctx.ratio(1, 2);
    -(ctx.i() * c.acos())
}

/// log ℓ on the branch where it is the derivative of the potential: πi + ln(-ℓ₋(u)).
pub fn fig8_log_ell(ctx: &Ctx, u: &Complex) -> Complex {
    let l = fig8_ell(&ctx.lift(u), -1);
    ctx.ipi() + (-l).ln()
}

pub fn fig8_s(ctx: &Ctx, u: &Complex) -> Complex {
    let u = ctx.lift(u);
    let phi = fig8_phi(ctx, &u);
    let a = li2(&(u.clone() - &phi).exp());
    let b = li2(&(u.clone() + &phi).exp());
    a - b - u * phi
}

pub fn fig8_potential(ctx: &Ctx, u: &Complex) -> Result<Fig8Potential> {
    let u = ctx.lift(u);
    if abs(&u) >= 0.4 {
        return Err(Error::BranchPoint("figure-eight potential needs |u| < 0.4".into()));
    }
    let phi = fig8_phi(ctx, &u);
    let s = fig8_s(ctx, &u);
    let ds_du = fig8_log_ell(ctx, &u);
    let v = ds_du.clone() * 2u32 - ctx.ipi() * 2u32;
    let integral = if u.is_zero() {
        ctx.zero()
    } else {
        let nodes = gauss_legendre(ctx, 8);
        let integrate = |m: usize| -> Complex {
            let mut acc = ctx.zero();
            for i in 0..m {
                for (x, w) in &nodes {
                    let t = (Float::with_val(ctx.prec, x + 1u32) / 2u32 + i as u32) / m as u32;
                    acc += fig8_log_ell(ctx, &(u.clone() * &t)) * Float::with_val(ctx.prec, w / (2 * m) as u32);
                }
            }
            acc * &u
        };
        let mut m = 1;
        let mut prev = integrate(m);
        loop {
            m *= 2;
            let cur = integrate(m);
            let d = abs(&(cur.clone() - &prev));
            if d < 1e-40 * abs(&cur).max(1.0) {
                break cur;
            }
            if m >= 1024 {
                return Err(Error::Convergence("log ℓ quadrature did not settle".into()));
            }
            prev = cur;
        }
    };
    let ivol = ctx.i() * fig8_volume(ctx);
    let cs = ivol + integral - u.clone() * &ds_du / 2u32;
    let cs_from_s = s.clone() - ctx.ipi() * &u - u.clone() * &v / 4u32;
    Ok(Fig8Potential { phi, s, ds_du, v, cs, cs_from_s })
}

/// Outcome of S(u+2πi) - πiu - uv/4 against the closed-form CS value.
#[derive(Clone, Debug, Serialize)]
pub struct CsMatch {
    pub family: String,
    pub indices: Vec<i64>,
    /// l, m, n in the closed form (half-integer for NA)
    pub branch: f64,
    #[serde(skip)]
    pub s: Complex,
    #[serde(skip)]
    pub v: Complex,
    #[serde(skip)]
    pub cs_from_s: Complex,
    #[serde(skip)]
    pub cs_closed: Complex,
    /// |v from dS/du - v from the closed form|
    pub v_residual: f64,
    pub residual: f64,
}

/// S, dS/dξ and the closed-form branch for each family at ξ = u + 2πi.
fn s_data(ctx: &Ctx, p: &RepParams, xi: &Complex) -> Result<(Vec<i64>, Complex, Complex, f64)> {
    Ok(match (p.knot, p.branch) {
        (KnotSpec::Torus { a }, Branch::Torus { k }) => {
            let alpha = p.alpha();
            (vec![k], asymptotics::s_torus(ctx, a, k, xi), asymptotics::ds_torus(ctx, a, k, xi), (-2 * (alpha - k)) as f64)
        }
        (KnotSpec::IteratedTorus { a, b }, Branch::AN { j }) => {
            let v = asymptotics::Variant::Canonical;
            (vec![j], asymptotics::s1(ctx, a, b, j, xi, v), asymptotics::ds1(ctx, a, b, j, xi), (-2 * (p.beta() - j)) as f64)
        }
        (KnotSpec::IteratedTorus { a, b }, Branch::NA { k }) => {
            let l = -((8 * p.alpha() - 4 * k - 1) as f64) / 2.0;
            (vec![k], asymptotics::s2(ctx, a, b, k, xi), asymptotics::ds2(ctx, a, b, k, xi), l)
        }
        (KnotSpec::IteratedTorus { a, b }, Branch::NN { k, h }) => {
            let m = k;
            let l = h + 2 * m + 1;
            let n = -2 * (p.beta() - l);
            (vec![l, m], asymptotics::s3(ctx, a, b, l, m, xi), asymptotics::ds3(ctx, a, b, l, m, xi), n as f64)
        }
        _ => return Err(Error::Unsupported(format!("no expansion exponent for {}", family_name(p)))),
    })
}

/// S(u+2πi) - πiu - uv/4 with v = 2dS/du - 2πi, compared mod π² with the closed form.
pub fn cs_matches_s(ctx: &Ctx, p: &RepParams) -> Result<CsMatch> {
    let u = ctx.lift(&p.u);
    let xi = u.clone() + ctx.ipi() * 2u32;
    let (indices, s, ds, branch) = s_data(ctx, p, &xi)?;
    let v = ds * 2u32 - ctx.ipi() * 2u32;
    let cs_from_s = s.clone() - ctx.ipi() * &u - u.clone() * &v / 4u32;
    let (closed, v_closed) = cs_closed_form(ctx, p, branch)?;
    let residual = mod_pi2_residual(ctx, &(cs_from_s.clone() - &closed.value));
    let v_residual = abs(&(v.clone() - &v_closed));
    Ok(CsMatch {
        family: family_name(p).into(),
        indices,
        branch,
        s,
        v,
        cs_from_s,
        cs_closed: closed.value,
        v_residual,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_constant() {
        let ctx = Ctx::default();
        assert!((fig8_volume(&ctx).to_f64() - 2.029883212819307).abs() < 1e-14);
    }

    #[test]
    fn residual_mod_pi2() {
        let ctx = Ctx::default();
        let a = CSValue::new(ctx.real(1.0));
        let b = CSValue::new(ctx.real(1.0) + ctx.pi().square() * 3u32);
        assert!(a.residual(&ctx, &b) < 1e-60);
    }

    #[test]
    fn constant_path_ratio_is_one() {
        let ctx = Ctx::default();
        let c = ctx.c(0.3, 0.2);
        let r = kirk_klassen_ratio(&ctx, |_t| (c.clone(), c.clone() * 2u32), 1e-20).unwrap();
        assert!(abs(&(r.ratio - 1u32)) < 1e-30);
    }
}
