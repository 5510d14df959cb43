//! Saddle-point expansion of J_N(K; e^{ξ/N}) for T(2,α) and its (2,β)-cable: the exponents
//! S, the coefficients τ, their index ranges, and the assembled approximant.

use rug::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::KnotSpec;
use crate::jones::{alexander_reciprocal, colored_jones_iterated, colored_jones_torus};
use crate::numerics::{abs, contour_angle, re, im, Ctx, Membership, Strip};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Torus,
    Iterated1,
    Iterated2,
    Iterated3,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Torus => "torus",
            Family::Iterated1 => "iterated-1",
            Family::Iterated2 => "iterated-2",
            Family::Iterated3 => "iterated-3",
        }
    }
}

/// Which printed form of S₁ and τ₂ to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// S₁ linear term (2j+1)ξπi and τ₂ with (-1)^{k+1}.
    Canonical,
    /// S₁ linear term (-1)^{j+1}(2j+1)ξπi and τ₂ without the sign.
    Display,
}

#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    pub family: Family,
    pub indices: Vec<i64>,
    pub s: Complex,
    pub tau: Complex,
    /// prefactor · τ · exp(N S/ξ)
    pub contribution: Complex,
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub leading: Complex,
    pub terms: Vec<ExpansionTerm>,
    /// Index tuples within ε of a strip boundary; excluded from `terms`.
    pub borderline: Vec<(Family, Vec<i64>)>,
}

impl Expansion {
    pub fn total(&self) -> Complex {
        let mut acc = self.leading.clone();
        for t in &self.terms {
            acc += &t.contribution;
        }
        acc
    }

    /// Term of largest |contribution|.
    pub fn dominant(&self) -> Option<&ExpansionTerm> {
        self.terms.iter().max_by(|a, b| {
            crate::numerics::log2_abs(&a.contribution)
                .partial_cmp(&crate::numerics::log2_abs(&b.contribution))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

fn check_xi(xi: &Complex) -> Result<()> {
    if re(xi) == 0.0 {
        return Err(Error::Hypothesis("ξ must not be purely imaginary".into()));
    }
    if im(xi) < 0.0 {
        return Err(Error::Hypothesis("ξ must satisfy Im ξ >= 0".into()));
    }
    Ok(())
}

fn odd(n: i64) -> i64 {
    2 * n + 1
}

fn sign(n: i64) -> i32 {
    if n.rem_euclid(2) == 0 { 1 } else { -1 }
}

/// Odd n with nπi inside the strip, and those on its boundary.
pub fn odd_multiples_in(ctx: &Ctx, strip: &Strip) -> Result<(Vec<i64>, Vec<i64>)> {
    let (lo, hi) = strip.bounds();
    let step = std::f64::consts::PI * strip.phi.cos();
    if step.abs() < 1e-12 {
        return Err(Error::Hypothesis("strip direction must not be ±π/2".into()));
    }
    let (a, b) = if step > 0.0 { (lo / step, hi / step) } else { (hi / step, lo / step) };
    let (start, end) = (a.floor() as i64 - 1, b.ceil() as i64 + 1);
    let mut inside = Vec::new();
    let mut border = Vec::new();
    for n in start..=end {
        if n.rem_euclid(2) == 0 {
            continue;
        }
        match strip.classify(&(ctx.ipi() * n))? {
            Membership::Inside => inside.push(n),
            Membership::Borderline => border.push(n),
            Membership::Outside => {}
        }
    }
    Ok((inside, border))
}

/// τ_k = (-1)^k 4 sin((2k+1)π/α)/√(2α).
pub fn tau_torus(ctx: &Ctx, a: i64, k: i64) -> Complex {
    let alpha = 2 * a + 1;
    let s = (ctx.pi() * odd(k) / alpha).sin();
    s * 4u32 / ctx.int(2 * alpha).sqrt() * sign(k)
}

/// S_k(ξ) = -((2k+1)πi - αξ)²/(2α).
pub fn s_torus(ctx: &Ctx, a: i64, k: i64, xi: &Complex) -> Complex {
    let alpha = 2 * a + 1;
    let w = ctx.ipi() * odd(k) - ctx.lift(xi) * alpha;
    -(w.square() / (2 * alpha))
}

fn ab(a: i64, b: i64) -> (i64, i64) {
    (2 * a + 1, 2 * b + 1)
}

/// τ₁(j) = (-1)^j √(2/β) sin(2(2j+1)π/β)/cos((2j+1)απ/β).
pub fn tau1(ctx: &Ctx, a: i64, b: i64, j: i64) -> Complex {
    let (alpha, beta) = ab(a, b);
    let pi = ctx.pi();
    let num = (pi.clone() * (2 * odd(j)) / beta).sin();
    let den = (pi * (odd(j) * alpha) / beta).cos();
    (ctx.ratio(2, beta).sqrt() * num / den) * sign(j)
}

pub fn s1(ctx: &Ctx, a: i64, b: i64, j: i64, xi: &Complex, v: Variant) -> Complex {
    let (_, beta) = ab(a, b);
    let x = ctx.lift(xi);
    let mut lin = x.clone() * ctx.ipi() * odd(j);
    if v == Variant::Display {
        lin *= sign(j + 1);
    }
    lin - x.square() * beta / 2u32 + ctx.pi().square() * (odd(j) * odd(j)) / (2 * beta)
}

/// τ₂(k) = (-1)^{k+1} √(2/α) sin((2k+1)π/α)/cosh((β-4α)ξ/2); the display variant drops the sign.
pub fn tau2(ctx: &Ctx, a: i64, b: i64, k: i64, xi: &Complex, v: Variant) -> Complex {
    let (alpha, beta) = ab(a, b);
    let s = (ctx.pi() * odd(k) / alpha).sin();
    let c = (ctx.lift(xi) * (beta - 4 * alpha) / 2u32).cosh();
    let t = ctx.ratio(2, alpha).sqrt() * s / c;
    match v {
        Variant::Canonical => t * sign(k + 1),
        Variant::Display => t,
    }
}

pub fn s2(ctx: &Ctx, a: i64, _b: i64, k: i64, xi: &Complex) -> Complex {
    let alpha = 2 * a + 1;
    let x = ctx.lift(xi);
    x.clone() * ctx.ipi() * (2 * odd(k)) - x.square() * (2 * alpha) + ctx.pi().square() * (odd(k) * odd(k)) / (2 * alpha)
}

/// τ₃(l,m) = (-1)^{l+m} 4 sin((2m+1)π/α)/√(α(β-4α)).
pub fn tau3(ctx: &Ctx, a: i64, b: i64, l: i64, m: i64) -> Complex {
    let (alpha, beta) = ab(a, b);
    let s = (ctx.pi() * odd(m) / alpha).sin();
    s * 4u32 / ctx.int(alpha * (beta - 4 * alpha)).sqrt() * sign(l + m)
}

pub fn s3(ctx: &Ctx, a: i64, b: i64, l: i64, m: i64, xi: &Complex) -> Complex {
    let (alpha, beta) = ab(a, b);
    let gamma = beta - 4 * alpha;
    let x = ctx.lift(xi);
    let (l1, m1) = (odd(l), odd(m));
    let q = l1 * l1 * alpha + m1 * m1 * beta - 4 * l1 * m1 * alpha;
    x.clone() * ctx.ipi() * l1 - x.square() * beta / 2u32 + ctx.pi().square() * q / (2 * alpha * gamma)
}

/// dS_k/dξ = (2k+1)πi - αξ.
pub fn ds_torus(ctx: &Ctx, a: i64, k: i64, xi: &Complex) -> Complex {
    ctx.ipi() * odd(k) - ctx.lift(xi) * (2 * a + 1)
}

/// dS₁/dξ (canonical form).
pub fn ds1(ctx: &Ctx, _a: i64, b: i64, j: i64, xi: &Complex) -> Complex {
    ctx.ipi() * odd(j) - ctx.lift(xi) * (2 * b + 1)
}

pub fn ds2(ctx: &Ctx, a: i64, _b: i64, k: i64, xi: &Complex) -> Complex {
    ctx.ipi() * (2 * odd(k)) - ctx.lift(xi) * (4 * (2 * a + 1))
}

pub fn ds3(ctx: &Ctx, _a: i64, b: i64, l: i64, _m: i64, xi: &Complex) -> Complex {
    ctx.ipi() * odd(l) - ctx.lift(xi) * (2 * b + 1)
}

/// √(-π)/(2 sinh(ξ/2)) · √(N/ξ), principal branches.
fn sqrt_prefactor(ctx: &Ctx, xi: &Complex, n: u64) -> Complex {
    let x = ctx.lift(xi);
    let sh = (x.clone() / 2u32).sinh() * 2u32;
    (-ctx.pi()).sqrt() / sh * (ctx.int(n as i64) / x).sqrt()
}

/// π/(2 sinh(ξ/2)) · N/ξ.
fn linear_prefactor(ctx: &Ctx, xi: &Complex, n: u64) -> Complex {
    let x = ctx.lift(xi);
    let sh = (x.clone() / 2u32).sinh() * 2u32;
    ctx.pi() / sh * (ctx.int(n as i64) / x)
}

fn term(ctx: &Ctx, family: Family, indices: Vec<i64>, s: Complex, tau: Complex, pre: &Complex, xi: &Complex, n: u64) -> ExpansionTerm {
    let e = (s.clone() * ctx.int(n as i64) / ctx.lift(xi)).exp();
    let contribution = pre.clone() * &tau * e;
    ExpansionTerm { family, indices, s, tau, contribution }
}

pub fn torus_terms(ctx: &Ctx, a: i64, xi: &Complex, n: u64) -> Result<Expansion> {
    KnotSpec::Torus { a }.validate()?;
    check_xi(xi)?;
    let alpha = 2 * a + 1;
    let phi = contour_angle(xi);
    let strip = Strip::new(phi, ctx.lift(xi) * alpha);
    let (inside, border) = odd_multiples_in(ctx, &strip)?;
    let pre = sqrt_prefactor(ctx, xi, n);
    let terms = inside
        .into_iter()
        .map(|nn| {
            let k = (nn - 1) / 2;
            term(ctx, Family::Torus, vec![k], s_torus(ctx, a, k, xi), tau_torus(ctx, a, k), &pre, xi, n)
        })
        .collect();
    let borderline = border.into_iter().map(|nn| (Family::Torus, vec![(nn - 1) / 2])).collect();
    Ok(Expansion { leading: alexander_reciprocal(ctx, &KnotSpec::Torus { a }, xi)?, terms, borderline })
}

/// Family-3 pairs (l, m), with the m-strip depending on where (2l+1)πi lies.
pub fn family3_indices(ctx: &Ctx, a: i64, b: i64, xi: &Complex) -> Result<(Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    let (alpha, beta) = ab(a, b);
    let gamma = beta - 4 * alpha;
    let phi = contour_angle(xi);
    let x = ctx.lift(xi);
    let outer = Strip::new(phi, x.clone() * beta);
    let inner = Strip::new(phi, x.clone() * gamma);
    let (ls, l_border) = odd_multiples_in(ctx, &outer)?;
    let mut pairs = Vec::new();
    let mut border: Vec<(i64, i64)> = l_border.iter().map(|n| ((n - 1) / 2, i64::MIN)).collect();
    for ln in ls {
        let l = (ln - 1) / 2;
        let lpi = ctx.ipi() * ln;
        let end = ctx.ipi() * (2 * ln * alpha) / beta;
        let m_strip = match inner.classify(&lpi)? {
            Membership::Inside => Strip::new(phi, end),
            Membership::Borderline => {
                border.push((l, i64::MIN));
                continue;
            }
            Membership::Outside => {
                let base = -(x.clone() * gamma / 2u32) + lpi / 2u32;
                let shift = end - &base;
                Strip::with_base(phi, base, shift)
            }
        };
        let (ms, m_border) = odd_multiples_in(ctx, &m_strip)?;
        for mn in ms {
            if mn.rem_euclid(alpha) != 0 {
                pairs.push((l, (mn - 1) / 2));
            }
        }
        for mn in m_border {
            if mn.rem_euclid(alpha) != 0 {
                border.push((l, (mn - 1) / 2));
            }
        }
    }
    Ok((pairs, border))
}

pub fn iterated_terms(ctx: &Ctx, a: i64, b: i64, xi: &Complex, n: u64, v: Variant) -> Result<Expansion> {
    let knot = KnotSpec::IteratedTorus { a, b };
    knot.validate()?;
    check_xi(xi)?;
    let (alpha, beta) = ab(a, b);
    let phi = contour_angle(xi);
    let x = ctx.lift(xi);
    let pre = sqrt_prefactor(ctx, xi, n);
    let pre3 = linear_prefactor(ctx, xi, n);
    let mut terms = Vec::new();
    let mut borderline = Vec::new();

    let (js, jb) = odd_multiples_in(ctx, &Strip::new(phi, x.clone() * beta))?;
    for nn in js {
        let j = (nn - 1) / 2;
        terms.push(term(ctx, Family::Iterated1, vec![j], s1(ctx, a, b, j, xi, v), tau1(ctx, a, b, j), &pre, xi, n));
    }
    borderline.extend(jb.into_iter().map(|nn| (Family::Iterated1, vec![(nn - 1) / 2])));

    let (ks, kb) = odd_multiples_in(ctx, &Strip::new(phi, x.clone() * (2 * alpha)))?;
    for nn in ks.into_iter().filter(|nn| nn.rem_euclid(alpha) != 0) {
        let k = (nn - 1) / 2;
        terms.push(term(ctx, Family::Iterated2, vec![k], s2(ctx, a, b, k, xi), tau2(ctx, a, b, k, xi, v), &pre, xi, n));
    }
    borderline.extend(kb.into_iter().filter(|nn| nn.rem_euclid(alpha) != 0).map(|nn| (Family::Iterated2, vec![(nn - 1) / 2])));

    let (lm, lmb) = family3_indices(ctx, a, b, xi)?;
    for (l, m) in lm {
        terms.push(term(ctx, Family::Iterated3, vec![l, m], s3(ctx, a, b, l, m, xi), tau3(ctx, a, b, l, m), &pre3, xi, n));
    }
    borderline.extend(lmb.into_iter().map(|(l, m)| {
        let idx = if m == i64::MIN { vec![l] } else { vec![l, m] };
        (Family::Iterated3, idx)
    }));

    Ok(Expansion { leading: alexander_reciprocal(ctx, &knot, xi)?, terms, borderline })
}

pub fn expansion(ctx: &Ctx, k: &KnotSpec, xi: &Complex, n: u64, v: Variant) -> Result<Expansion> {
    match *k {
        KnotSpec::Torus { a } => torus_terms(ctx, a, xi, n),
        KnotSpec::IteratedTorus { a, b } => iterated_terms(ctx, a, b, xi, n, v),
        KnotSpec::FigureEight => Err(Error::Unsupported("no expansion for the figure-eight knot".into())),
    }
}

/// Leading term plus all families, canonical forms.
pub fn approximate(ctx: &Ctx, k: &KnotSpec, xi: &Complex, n: u64) -> Result<Complex> {
    Ok(expansion(ctx, k, xi, n, Variant::Canonical)?.total())
}

/// ∫_{C_φ} g(ζ) e^{-Nζ²/H} dζ ≈ √(πH/N) g(0), with the square root taken along the direction
/// of C_φ (the principal root when φ = 0).
pub fn saddle_gaussian(ctx: &Ctx, h: &Complex, g0: &Complex, n: f64, phi: f64) -> Result<Complex> {
    let e2 = ctx.c((2.0 * phi).cos(), (2.0 * phi).sin());
    let q = e2 / ctx.lift(h);
    if re(&q) <= 0.0 {
        return Err(Error::Hypothesis("saddle condition Re(e^{2iφ}/H) > 0 violated".into()));
    }
    // ∫ e^{-N q r²} e^{iφ} dr = e^{iφ} √(π/(N q))
    let dir = ctx.c(phi.cos(), phi.sin());
    Ok(dir * (ctx.pi() / (q * ctx.real(n))).sqrt() * ctx.lift(g0))
}

#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub n: u64,
    pub exact: Complex,
    pub approx: Complex,
    pub rel_err: f64,
    pub err_bound: f64,
    pub precision_bits: u32,
    pub dominant_family: Option<Family>,
    pub dominant_indices: Vec<i64>,
}

/// |approximate/exact - 1| for one N.
pub fn compare(ctx: &Ctx, k: &KnotSpec, xi: &Complex, n: u64, v: Variant) -> Result<ComparisonRow> {
    let eval = match *k {
        KnotSpec::Torus { a } => colored_jones_torus(ctx, a, n, xi)?,
        KnotSpec::IteratedTorus { a, b } => colored_jones_iterated(ctx, a, b, n, xi)?,
        KnotSpec::FigureEight => return Err(Error::Unsupported("no colored Jones for the figure-eight knot".into())),
    };
    let wctx = Ctx::new(eval.precision_bits);
    let ex = expansion(&wctx, k, xi, n, v)?;
    let approx = ex.total();
    let rel_err = abs(&(approx.clone() / &eval.value - 1u32));
    let dom = ex.dominant();
    Ok(ComparisonRow {
        n,
        exact: eval.value,
        approx: Complex::with_val(ctx.prec, approx),
        rel_err,
        err_bound: eval.err_bound,
        precision_bits: eval.precision_bits,
        dominant_family: dom.map(|t| t.family),
        dominant_indices: dom.map(|t| t.indices.clone()).unwrap_or_default(),
    })
}
