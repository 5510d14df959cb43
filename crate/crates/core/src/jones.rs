//! Colored Jones polynomials of T(2,α) and of the (2,β)-cable of T(2,α): exact Laurent
//! polynomials for the torus family and arbitrary-precision evaluation at t = e^{ξ/N}.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Integer};

use crate::error::{Error, Result};
use crate::freegroup::KnotSpec;
use crate::numerics::{abs, log2_abs, re, im, Ctx};

/// Laurent polynomial in t^{1/2}: key e stands for t^{e/2}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfLaurent {
    coeffs: BTreeMap<i64, Integer>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        HalfLaurent::monomial(0, 1)
    }

    /// c·t^{e/2}
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut p = HalfLaurent::zero();
        p.add_term(e, &Integer::from(c));
        p
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = HalfLaurent::zero();
        for (e, c) in pairs {
            p.add_term(e, &Integer::from(c));
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: &Integer) {
        if *c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> Integer {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Sorted (exponent numerator, coefficient) pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, &Integer)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.coeffs {
            r.add_term(*e, c);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HalfLaurent { coeffs: self.coeffs.iter().map(|(e, c)| (*e, Integer::from(-c))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = HalfLaurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                r.add_term(e1 + e2, &Integer::from(c1 * c2));
            }
        }
        r
    }

    /// Multiply by t^{e/2}.
    pub fn shift(&self, e: i64) -> Self {
        HalfLaurent { coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (dlead_e, dlead_c) = match d.coeffs.iter().next_back() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::Internal("division by zero polynomial".into())),
        };
        let dspan = dlead_e - d.min_exp().unwrap();
        let mut rem = self.clone();
        let mut q = HalfLaurent::zero();
        while let Some((e, c)) = rem.coeffs.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if e - rem.min_exp().unwrap() < dspan {
                return Err(Error::Internal("Laurent division left a nonzero remainder".into()));
            }
            let (quot, r) = c.div_rem(dlead_c.clone());
            if r != 0 {
                return Err(Error::Internal("Laurent division is not integral".into()));
            }
            let shift = e - dlead_e;
            q.add_term(shift, &quot);
            for (de, dc) in &d.coeffs {
                rem.add_term(de + shift, &(-Integer::from(dc * &quot)));
            }
        }
        Ok(q)
    }

    /// Value at t = 1.
    pub fn at_one(&self) -> Integer {
        self.coeffs.values().sum()
    }

    /// Evaluate with s = t^{1/2}.
    pub fn eval_half(&self, s: &Complex) -> Complex {
        let prec = s.prec().0;
        let mut acc = Complex::new(prec);
        for (e, c) in &self.coeffs {
            let term = Complex::with_val(prec, s.clone().pow(*e as i32)) * Complex::with_val(prec, c);
            acc += term;
        }
        acc
    }

    /// Evaluate at t = e^{ξ/N}.
    pub fn eval_xi(&self, xi: &Complex, n: u64) -> Complex {
        let prec = xi.prec().0;
        let mut acc = Complex::new(prec);
        for (e, c) in &self.coeffs {
            let w = (xi.clone() * *e / (2 * n)).exp();
            acc += w * Complex::with_val(prec, c);
        }
        acc
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mag = Integer::from(c.abs_ref());
            let exp = if e % 2 == 0 { format!("{}", e / 2) } else { format!("{e}/2") };
            let coef = if mag == 1 && *e != 0 { String::new() } else { mag.to_string() };
            let mono = match *e {
                0 => String::new(),
                2 => "t".into(),
                _ => format!("t^{exp}"),
            };
            write!(f, "{sign}{coef}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

fn alpha_of(a: i64) -> i64 {
    2 * a + 1
}

/// Σ_{c=0}^{n-1} (-1)^c t^{α(c²+c)/2}(t^{(2c+1)/2} - t^{-(2c+1)/2}) as a half-Laurent polynomial.
fn torus_inner_exact(alpha: i64, n: i64) -> HalfLaurent {
    let mut p = HalfLaurent::zero();
    for c in 0..n {
        let s: i64 = if c % 2 == 0 { 1 } else { -1 };
        let base = alpha * (c * c + c);
        p.add_term(base + 2 * c + 1, &Integer::from(s));
        p.add_term(base - 2 * c - 1, &Integer::from(-s));
    }
    p
}

/// Exact J_N(T(2,2a+1); t).
pub fn colored_jones_torus_exact(a: i64, n: i64) -> Result<HalfLaurent> {
    if a < 1 || n < 1 {
        return Err(Error::Hypothesis("colored Jones needs a >= 1 and N >= 1".into()));
    }
    let alpha = alpha_of(a);
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let num = torus_inner_exact(alpha, n).shift(-alpha * (n * n - 1)).mul(&HalfLaurent::monomial(0, sign));
    let den = HalfLaurent::from_pairs([(n, 1), (-n, -1)]);
    num.div_exact(&den)
}

/// Exact J_N of the (2,2b+1)-cable of T(2,2a+1), used as an independent check on the
/// numeric route at small N.
pub fn colored_jones_iterated_exact(a: i64, b: i64, n: i64) -> Result<HalfLaurent> {
    check_iterated(a, b)?;
    if n < 1 {
        return Err(Error::Hypothesis("N must be positive".into()));
    }
    let alpha = alpha_of(a);
    let beta = 2 * b + 1;
    let mut p = HalfLaurent::zero();
    for d in 0..n {
        for c in 0..=2 * d {
            let s: i64 = if (d + c) % 2 == 0 { 1 } else { -1 };
            let base = beta * (d * d + d) - 4 * alpha * (d * d + d) + alpha * (c * c + c);
            p.add_term(base + 2 * c + 1, &Integer::from(s));
            p.add_term(base - 2 * c - 1, &Integer::from(-s));
        }
    }
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let num = p.shift(-beta * (n * n - 1)).mul(&HalfLaurent::monomial(0, sign));
    num.div_exact(&HalfLaurent::from_pairs([(n, 1), (-n, -1)]))
}

fn check_iterated(a: i64, b: i64) -> Result<()> {
    KnotSpec::IteratedTorus { a, b }.validate()
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

#[derive(Clone, Debug)]
pub struct JonesEval {
    pub n: u64,
    pub xi: Complex,
    pub value: Complex,
    pub precision_bits: u32,
    /// Absolute rounding-error bound.
    pub err_bound: f64,
}

/// Working precision for sums whose terms reach e^{growth·N|Re ξ|/2}.
pub fn working_precision(base: u32, n: u64, xi: &Complex, growth: i64) -> u32 {
    let r = re(xi).abs();
    let ln2 = std::f64::consts::LN_2;
    let by_growth = (growth as f64 * n as f64 * r / (2.0 * ln2)).ceil() as u32 + base + 64;
    let escalated = if n > 500 { (4.0 * n as f64 * r / ln2).ceil() as u32 + 128 } else { 0 };
    by_growth.max(escalated).max(base)
}

/// t^{e/2} with t = e^{ξ/N}.
fn tpow_half(xi: &Complex, n: u64, e: i64) -> Complex {
    (xi.clone() * e / (2 * n)).exp()
}

/// S(c) = (-1)^c t^{α(c²+c)/2}(t^{(2c+1)/2} - t^{-(2c+1)/2}).
fn torus_term(xi: &Complex, n: u64, alpha: i64, c: i64) -> Complex {
    let base = alpha * (c * c + c);
    let v = tpow_half(xi, n, base + 2 * c + 1) - tpow_half(xi, n, base - 2 * c - 1);
    if c % 2 == 0 { v } else { -v }
}

/// Partial sums P(c) = Σ_{c' ≤ c} S(c') for c < len, computed in parallel and reduced in order.
fn torus_prefix(xi: &Complex, n: u64, alpha: i64, len: i64) -> (Vec<Complex>, f64) {
    let terms: Vec<Complex> = (0..len).into_par_iter().map(|c| torus_term(xi, n, alpha, c)).collect();
    let maxlog = terms.iter().map(log2_abs).fold(f64::NEG_INFINITY, f64::max);
    let mut acc = Complex::new(xi.prec().0);
    let prefix = terms
        .into_iter()
        .map(|t| {
            acc += t;
            acc.clone()
        })
        .collect();
    (prefix, maxlog)
}

fn sign_n(n: u64) -> i32 {
    if (n - 1) % 2 == 0 { 1 } else { -1 }
}

/// (-1)^{N-1} e^{-g(N²-1)ξ/(2N)} / (2 sinh(ξ/2)).
fn prefactor(xi: &Complex, n: u64, g: i64) -> Complex {
    let nn = n as i64;
    let e = (-(xi.clone() * (g * (nn * nn - 1))) / (2 * nn)).exp();
    let den = (xi.clone() / 2u32).sinh() * 2u32;
    (e / den) * sign_n(n)
}

fn finish(xi: &Complex, n: u64, prec: u32, out_prec: u32, sum: Complex, pre: Complex, maxlog: f64, n_terms: u64) -> JonesEval {
    let value = sum * &pre;
    let bound = (n_terms as f64 + 1.0) * 2f64.powf(maxlog - prec as f64 + 2.0) * abs(&pre);
    JonesEval {
        n,
        xi: xi.clone(),
        value: Complex::with_val(out_prec.max(prec), value),
        precision_bits: prec,
        err_bound: if bound.is_finite() { bound } else { f64::MAX },
    }
}

/// J_N(T(2,2a+1); e^{ξ/N}) by the single sum.
pub fn colored_jones_torus(ctx: &Ctx, a: i64, n: u64, xi: &Complex) -> Result<JonesEval> {
    if a < 1 || n < 1 {
        return Err(Error::Hypothesis("colored Jones needs a >= 1 and N >= 1".into()));
    }
    check_xi(xi)?;
    let alpha = alpha_of(a);
    let prec = working_precision(ctx.prec, n, xi, alpha);
    let x = Complex::with_val(prec, xi);
    let (prefix, maxlog) = torus_prefix(&x, n, alpha, n as i64);
    let sum = prefix.last().cloned().unwrap();
    let pre = prefactor(&x, n, alpha);
    Ok(finish(xi, n, prec, ctx.prec, sum, pre, maxlog, n))
}

/// J_N of the cable by the double sum, reorganised as Σ_d (-1)^d t^{(β-4α)(d²+d)/2} P(2d)
/// with P the torus partial sums.
pub fn colored_jones_iterated(ctx: &Ctx, a: i64, b: i64, n: u64, xi: &Complex) -> Result<JonesEval> {
    check_iterated(a, b)?;
    if n < 1 {
        return Err(Error::Hypothesis("N must be positive".into()));
    }
    check_xi(xi)?;
    let alpha = alpha_of(a);
    let beta = 2 * b + 1;
    let gamma = beta - 4 * alpha;
    let prec = working_precision(ctx.prec, n, xi, beta);
    let x = Complex::with_val(prec, xi);
    let (prefix, maxlog_inner) = torus_prefix(&x, n, alpha, 2 * n as i64 - 1);
    let outer: Vec<Complex> = (0..n as i64)
        .into_par_iter()
        .map(|d| {
            let w = tpow_half(&x, n, gamma * (d * d + d)) * &prefix[2 * d as usize];
            if d % 2 == 0 { w } else { -w }
        })
        .collect();
    let maxlog = outer.iter().map(log2_abs).fold(maxlog_inner, f64::max);
    let mut sum = Complex::new(prec);
    for t in outer {
        sum += t;
    }
    let pre = prefactor(&x, n, beta);
    Ok(finish(xi, n, prec, ctx.prec, sum, pre, maxlog, 2 * n))
}

/// Term-by-term double sum in the given precision, used as a reference.
pub fn colored_jones_iterated_naive(ctx: &Ctx, a: i64, b: i64, n: u64, xi: &Complex) -> Result<Complex> {
    check_iterated(a, b)?;
    check_xi(xi)?;
    let alpha = alpha_of(a);
    let beta = 2 * b + 1;
    let x = ctx.lift(xi);
    let mut sum = ctx.zero();
    for d in 0..n as i64 {
        for c in 0..=2 * d {
            let base = beta * (d * d + d) - 4 * alpha * (d * d + d) + alpha * (c * c + c);
            let v = tpow_half(&x, n, base + 2 * c + 1) - tpow_half(&x, n, base - 2 * c - 1);
            if (d + c) % 2 == 0 {
                sum += v;
            } else {
                sum -= v;
            }
        }
    }
    Ok(sum * prefactor(&x, n, beta))
}

/// 1/Δ(K; e^ξ): the leading term of the expansion.
pub fn alexander_reciprocal(ctx: &Ctx, k: &KnotSpec, xi: &Complex) -> Result<Complex> {
    if re(xi) == 0.0 {
        return Err(Error::Hypothesis("ξ must not be purely imaginary".into()));
    }
    let x = ctx.lift(xi);
    let sh = (x.clone() / 2u32).sinh();
    match *k {
        KnotSpec::Torus { a } => {
            let alpha = alpha_of(a);
            Ok(x.clone().sinh() / (sh * 2u32 * (x * alpha / 2u32).cosh()))
        }
        KnotSpec::IteratedTorus { a, b } => {
            let alpha = alpha_of(a);
            let beta = 2 * b + 1;
            let num = (x.clone() * 2u32).sinh();
            Ok(num / (sh * 4u32 * (x.clone() * alpha).cosh() * (x * beta / 2u32).cosh()))
        }
        KnotSpec::FigureEight => Err(Error::Unsupported("no Alexander reciprocal for the figure-eight knot".into())),
    }
}
