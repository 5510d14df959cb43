//! Arbitrary-precision scalars, small dense complex matrices and strip geometry.

use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// The universal scalar. Precision travels with each value; `Ctx` fixes it at construction.
pub type ComplexAP = Complex;

/// Working precision in bits. Passed explicitly, never read from global state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub prec: u32,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { prec: Self::DEFAULT_PREC }
    }
}

impl Ctx {
    pub const DEFAULT_PREC: u32 = 256;

    pub fn new(prec: u32) -> Self {
        Ctx { prec: prec.max(32) }
    }

    pub fn doubled(&self) -> Self {
        Ctx::new(self.prec * 2)
    }

    pub fn c(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.prec, (re, im))
    }

    pub fn real(&self, re: f64) -> Complex {
        Complex::with_val(self.prec, (re, 0.0))
    }

    pub fn int(&self, n: i64) -> Complex {
        Complex::with_val(self.prec, (Integer::from(n), 0))
    }

    pub fn ratio(&self, p: i64, q: i64) -> Complex {
        Complex::with_val(self.prec, (Rational::from((p, q)), 0))
    }

    pub fn zero(&self) -> Complex {
        Complex::new(self.prec)
    }

    pub fn one(&self) -> Complex {
        self.int(1)
    }

    pub fn i(&self) -> Complex {
        self.c(0.0, 1.0)
    }

    pub fn pi_f(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    pub fn pi(&self) -> Complex {
        Complex::with_val(self.prec, (self.pi_f(), 0))
    }

    /// πi
    pub fn ipi(&self) -> Complex {
        Complex::with_val(self.prec, (0, self.pi_f()))
    }

    /// exp(iπ p/q), computed from the rational angle to avoid rounding the argument twice.
    pub fn root_of_unity(&self, p: i64, q: i64) -> Complex {
        let ang = self.pi_f() * Float::with_val(self.prec, p) / Float::with_val(self.prec, q);
        let (s, c) = ang.sin_cos(Float::new(self.prec));
        Complex::with_val(self.prec, (c, s))
    }

    /// Lift a value computed at another precision into this context.
    pub fn lift(&self, z: &Complex) -> Complex {
        Complex::with_val(self.prec, z)
    }
}

pub fn abs(z: &Complex) -> f64 {
    Float::with_val(64, z.abs_ref()).to_f64()
}

pub fn abs_float(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

pub fn re(z: &Complex) -> f64 {
    z.real().to_f64()
}

pub fn im(z: &Complex) -> f64 {
    z.imag().to_f64()
}

/// |a - b|
pub fn dist(a: &Complex, b: &Complex) -> f64 {
    abs(&(a.clone() - b))
}

/// |a/b - 1|, falling back to |a - b| when b vanishes.
pub fn rel_err(a: &Complex, b: &Complex) -> f64 {
    let nb = abs(b);
    if nb == 0.0 {
        return abs(a);
    }
    dist(a, b) / nb
}

/// log2|z| without overflow for huge exponents.
pub fn log2_abs(z: &Complex) -> f64 {
    let a = abs_float(z);
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = a.to_f64_exp();
    m.abs().log2() + e as f64
}

/// Decimal text with `digits` significant digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// `a+bi` / `a-bi` text form.
pub fn fmt_complex(z: &Complex, digits: usize) -> String {
    let r = fmt_float(z.real(), digits);
    let i = fmt_float(z.imag(), digits);
    if i.starts_with('-') {
        format!("{r}{i}i")
    } else {
        format!("{r}+{i}i")
    }
}

/// Parse `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`, with optional exponents in either part.
pub fn parse_complex(ctx: &Ctx, text: &str) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |msg: &str| Error::Syntax { pos: 0, msg: format!("{msg} in complex literal `{text}`") };
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let parse_real = |t: &str| -> Result<Float> {
        let v = Float::parse(t).map_err(|_| bad("bad number"))?;
        Ok(Float::with_val(ctx.prec, v))
    };
    if let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im_val = match im_part {
            "" | "+" => Float::with_val(ctx.prec, 1),
            "-" => Float::with_val(ctx.prec, -1),
            t => parse_real(t)?,
        };
        let re_val = if re_part.is_empty() { Float::new(ctx.prec) } else { parse_real(re_part)? };
        Ok(Complex::with_val(ctx.prec, (re_val, im_val)))
    } else {
        Ok(Complex::with_val(ctx.prec, (parse_real(&s)?, 0)))
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct MatC {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex>,
}

impl MatC {
    pub fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        MatC { rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = ctx.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        MatC { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<Complex>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        MatC { rows: r, cols: c, data }
    }

    pub fn m2(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        MatC { rows: 2, cols: 2, data: vec![a, b, c, d] }
    }

    pub fn prec(&self) -> u32 {
        self.data.first().map_or(Ctx::DEFAULT_PREC, |z| z.prec().0)
    }

    fn ctx(&self) -> Ctx {
        Ctx::new(self.prec())
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex) {
        self.data[i * self.cols + j] = z;
    }

    pub fn col(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn mul(&self, other: &MatC) -> MatC {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let ctx = self.ctx();
        let mut out = MatC::zeros(&ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ctx.zero();
                for k in 0..self.cols {
                    acc += self.get(i, k).clone() * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(self.cols, v.len());
        let ctx = self.ctx();
        (0..self.rows)
            .map(|i| {
                let mut acc = ctx.zero();
                for (k, x) in v.iter().enumerate() {
                    acc += self.get(i, k).clone() * x;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &MatC) -> MatC {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        MatC { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &MatC) -> MatC {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        MatC { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Complex) -> MatC {
        let data = self.data.iter().map(|a| a.clone() * s).collect();
        MatC { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> MatC {
        let data = self.data.iter().map(|a| -a.clone()).collect();
        MatC { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> MatC {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        MatC { rows: self.cols, cols: self.rows, data }
    }

    pub fn trace(&self) -> Complex {
        let mut acc = self.ctx().zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| abs(z).powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(abs).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &MatC) -> f64 {
        self.sub(other).norm()
    }

    /// Copy `block` into position (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatC) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatC {
        let mut out = MatC::zeros(&self.ctx(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let ctx = self.ctx();
        let mut a = self.data.clone();
        let mut det = ctx.one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| abs(&a[i * n + k]).total_cmp(&abs(&a[j * n + k])))
                .unwrap();
            if a[p * n + k].is_zero() {
                return ctx.zero();
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det *= &pivot;
            for i in k + 1..n {
                let f = a[i * n + k].clone() / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let t = f.clone() * &a[k * n + j];
                    a[i * n + j] -= t;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `None` when a pivot vanishes exactly.
    pub fn inverse(&self) -> Option<MatC> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let ctx = self.ctx();
        let mut a = self.clone();
        let mut inv = MatC::identity(&ctx, n);
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| abs(a.get(i, k)).total_cmp(&abs(a.get(j, k)))).unwrap();
            if a.get(p, k).is_zero() {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                    inv.data.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a.get(k, k).clone();
            for j in 0..n {
                *a.get_mut(k, j) /= &pivot;
                *inv.get_mut(k, j) /= &pivot;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = f.clone() * a.get(k, j);
                    *a.get_mut(i, j) -= t;
                    let t = f.clone() * inv.get(k, j);
                    *inv.get_mut(i, j) -= t;
                }
            }
        }
        Some(inv)
    }

    /// Inverse of a 2×2 matrix of determinant one.
    pub fn inv_sl2(&self) -> MatC {
        assert_eq!((self.rows, self.cols), (2, 2));
        MatC::m2(
            self.get(1, 1).clone(),
            -self.get(0, 1).clone(),
            -self.get(1, 0).clone(),
            self.get(0, 0).clone(),
        )
    }

    /// Integer power by repeated squaring; negative powers go through `inverse`.
    pub fn pow(&self, n: i64) -> Option<MatC> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = MatC::identity(&self.ctx(), self.rows);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

fn vec_norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| abs(z).powi(2)).sum::<f64>().sqrt()
}

/// One-sided Jacobi SVD: returns (singular values, V) where the columns of `M·V` are mutually
/// orthogonal with norms equal to the singular values.
pub fn jacobi_svd(m: &MatC) -> (Vec<f64>, MatC) {
    let ctx = Ctx::new(m.prec());
    let n = m.cols;
    let mut a: Vec<Vec<Complex>> = (0..n).map(|j| m.col(j)).collect();
    let mut v: Vec<Vec<Complex>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ctx.one() } else { ctx.zero() }).collect())
        .collect();
    let tol = Float::with_val(ctx.prec, Float::i_exp(1, -(ctx.prec as i32) + 8));
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let mut alpha = Float::new(ctx.prec);
                let mut beta = Float::new(ctx.prec);
                let mut gamma = ctx.zero();
                for k in 0..a[i].len() {
                    alpha += Float::with_val(ctx.prec, a[i][k].norm_ref());
                    beta += Float::with_val(ctx.prec, a[j][k].norm_ref());
                    gamma += a[i][k].clone().conj() * &a[j][k];
                }
                let g = abs_float(&gamma);
                let scale = Float::with_val(ctx.prec, &alpha * &beta).sqrt();
                if g.is_zero() || g <= Float::with_val(ctx.prec, &tol * &scale) {
                    continue;
                }
                rotated = true;
                // phase e^{iθ} = γ/|γ|
                let phase = gamma.clone() / &g;
                let zeta = Float::with_val(ctx.prec, &beta - &alpha) / Float::with_val(ctx.prec, &g * 2u32);
                let root = Float::with_val(ctx.prec, zeta.clone().square() + 1u32).sqrt();
                let sign = if zeta.is_sign_negative() { -1i32 } else { 1i32 };
                let t = Float::with_val(ctx.prec, sign) / (zeta.clone().abs() + &root);
                let c = Float::with_val(ctx.prec, t.clone().square() + 1u32).sqrt().recip();
                let s = Float::with_val(ctx.prec, &c * &t);
                let cc = Complex::with_val(ctx.prec, (&c, 0));
                let s_conj_phase = phase.clone().conj() * &s;
                let s_phase = phase * &s;
                for col in [&mut a, &mut v] {
                    for k in 0..col[i].len() {
                        let ai = col[i][k].clone();
                        let aj = col[j][k].clone();
                        col[i][k] = cc.clone() * &ai - s_conj_phase.clone() * &aj;
                        col[j][k] = s_phase.clone() * &ai + cc.clone() * &aj;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = a.iter().map(|c| vec_norm(c)).collect();
    (sigma, MatC::from_cols(&v))
}

/// Basis of the numerical null space: right singular vectors whose singular value is at most
/// `tol·σ_max`. Vectors are unit length.
pub fn kernel_basis(m: &MatC, tol: f64) -> Vec<Vec<Complex>> {
    if m.cols == 0 {
        return Vec::new();
    }
    let (sigma, v) = jacobi_svd(m);
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (j, s) in sigma.iter().enumerate() {
        if smax == 0.0 || *s <= tol * smax {
            let col = v.col(j);
            let nrm = vec_norm(&col);
            let ctx = Ctx::new(m.prec());
            let inv = ctx.real(1.0 / nrm);
            out.push(col.into_iter().map(|z| z * &inv).collect());
        }
    }
    out
}

/// Numerical rank under the same criterion as `kernel_basis`.
pub fn rank(m: &MatC, tol: f64) -> usize {
    m.cols - kernel_basis(m, tol).len()
}

/// Determinant of the matrix whose columns are `vectors` in the standard basis.
pub fn basis_change_det(vectors: &[Vec<Complex>], tol: f64) -> Result<Complex> {
    let n = vectors.len();
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Hypothesis(format!(
            "basis change needs {n} vectors of length {n}"
        )));
    }
    let d = MatC::from_cols(vectors).det();
    let a = abs(&d);
    if a <= tol {
        return Err(Error::SingularSystem(a));
    }
    Ok(d)
}

/// Where a point sits relative to a strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    /// Within epsilon of a boundary line: excluded, but worth reporting.
    Borderline,
}

/// The open region between the line through `base` in direction e^{iφ} and its translate by
/// `shift`, shrunk by `epsilon` on both sides.
#[derive(Clone, Debug)]
pub struct Strip {
    pub phi: f64,
    pub base: Complex,
    pub shift: Complex,
    pub epsilon: f64,
}

impl Strip {
    pub fn new(phi: f64, shift: Complex) -> Self {
        let epsilon = 1e-9 * abs(&shift);
        let base = Complex::new(shift.prec().0);
        Strip { phi, base, shift, epsilon }
    }

    pub fn with_base(phi: f64, base: Complex, shift: Complex) -> Self {
        let mut s = Strip::new(phi, shift);
        s.base = base;
        s
    }

    /// Normal coordinate Im(z·e^{-iφ}).
    pub fn coord(&self, z: &Complex) -> f64 {
        im(z) * self.phi.cos() - re(z) * self.phi.sin()
    }

    /// Normal-coordinate interval (lo, hi) of the unshrunk strip.
    pub fn bounds(&self) -> (f64, f64) {
        let b = self.coord(&self.base);
        let w = self.coord(&self.shift);
        (b + w.min(0.0), b + w.max(0.0))
    }

    fn check(&self) -> Result<()> {
        if self.phi.cos().abs() < 1e-12 {
            return Err(Error::Hypothesis("strip direction must not be ±π/2".into()));
        }
        if !(self.epsilon > 0.0) && !self.shift.is_zero() {
            return Err(Error::Hypothesis("strip epsilon must be positive".into()));
        }
        Ok(())
    }

    pub fn classify(&self, z: &Complex) -> Result<Membership> {
        self.check()?;
        if self.shift.is_zero() {
            return Ok(Membership::Outside);
        }
        let w = self.coord(&self.shift);
        if w.abs() <= 2.0 * self.epsilon {
            return Err(Error::DegenerateStrip { width: w.abs(), twice_eps: 2.0 * self.epsilon });
        }
        let c = self.coord(z);
        let (lo, hi) = self.bounds();
        if c > lo + self.epsilon && c < hi - self.epsilon {
            Ok(Membership::Inside)
        } else if c >= lo - self.epsilon && c <= hi + self.epsilon {
            Ok(Membership::Borderline)
        } else {
            Ok(Membership::Outside)
        }
    }
}

pub fn strip_contains(z: &Complex, s: &Strip) -> Result<bool> {
    Ok(s.classify(z)? == Membership::Inside)
}

/// φ = arg(ξ)/2, nudged away from ±π/2.
pub fn contour_angle(xi: &Complex) -> f64 {
    let mut phi = im(xi).atan2(re(xi)) / 2.0;
    let half = std::f64::consts::FRAC_PI_2;
    if (phi - half).abs() < 1e-6 {
        phi = half - 1e-3;
    } else if (phi + half).abs() < 1e-6 {
        phi = -half + 1e-3;
    }
    phi
}

static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// B_0, B_2, ..., B_{2(count-1)}.
fn bernoulli_even(count: usize) -> Vec<Rational> {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if guard.len() < count {
        // Akiyama-Tanigawa; gives B_1 = +1/2, which is never used here.
        let n_max = 2 * (count - 1);
        let mut a: Vec<Rational> = Vec::with_capacity(n_max + 1);
        let mut all = Vec::with_capacity(n_max + 1);
        for m in 0..=n_max {
            a.push(Rational::from((1, m as u32 + 1)));
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * Integer::from(j);
            }
            all.push(a[0].clone());
        }
        *guard = all.into_iter().step_by(2).collect();
    }
    guard[..count].to_vec()
}

/// Principal-branch dilogarithm.
pub fn li2(z: &Complex) -> Complex {
    let prec = z.prec().0;
    let ctx = Ctx::new(prec);
    // guard bits for the functional-equation reductions
    let w = Ctx::new(prec + 32);
    let zz = w.lift(z);
    let r = li2_inner(&w, &zz);
    ctx.lift(&r)
}

fn pi2_6(ctx: &Ctx) -> Complex {
    let p = ctx.pi();
    p.clone() * &p / 6u32
}

fn li2_inner(ctx: &Ctx, z: &Complex) -> Complex {
    if z.is_zero() {
        return ctx.zero();
    }
    let one = ctx.one();
    if dist(z, &one) == 0.0 {
        return pi2_6(ctx);
    }
    let az = abs(z);
    if az > 1.0 {
        // Li2(z) = -Li2(1/z) - π²/6 - ½ ln²(-z)
        let inv = one.clone() / z;
        let l = (-z.clone()).ln();
        return -li2_inner(ctx, &inv) - pi2_6(ctx) - l.square() / 2u32;
    }
    if az <= 0.5 {
        return li2_series(ctx, z);
    }
    if re(z) > 0.5 {
        // Li2(z) = π²/6 - ln z ln(1-z) - Li2(1-z)
        let omz = one - z;
        let t = z.clone().ln() * omz.clone().ln();
        return pi2_6(ctx) - t - li2_inner(ctx, &omz);
    }
    li2_bernoulli(ctx, z)
}

fn li2_series(ctx: &Ctx, z: &Complex) -> Complex {
    let mut sum = ctx.zero();
    let mut pw = z.clone();
    let eps_bits = ctx.prec as f64 + 8.0;
    for k in 1u64.. {
        let term = pw.clone() / Integer::from(k * k);
        sum += &term;
        if log2_abs(&term) < log2_abs(&sum) - eps_bits || term.is_zero() {
            break;
        }
        pw *= z;
    }
    sum
}

fn li2_bernoulli(ctx: &Ctx, z: &Complex) -> Complex {
    let w = -(ctx.one() - z).ln();
    // |w| stays below about 2.3 on this branch; the terms decay like (|w|/2π)^{2k}
    let ratio = (abs(&w) / (2.0 * std::f64::consts::PI)).max(1e-3);
    let per = -2.0 * ratio.log2();
    let count = ((ctx.prec as f64 + 16.0) / per).ceil() as usize + 4;
    let b = bernoulli_even(count + 1);
    let w2 = w.clone().square();
    let mut sum = w.clone() - w2.clone() / 4u32;
    let mut pw = w.clone(); // w^{2k+1}
    let mut fact = Integer::from(1); // (2k+1)!
    for (k, bk) in b.iter().enumerate().skip(1) {
        pw *= &w2;
        fact *= Integer::from((2 * k) * (2 * k + 1));
        let coef = bk.clone() / &fact;
        let term = pw.clone() * Complex::with_val(ctx.prec, (coef, 0));
        sum += &term;
    }
    sum
}

/// Gauss-Legendre nodes and weights on [-1, 1], refined by Newton iteration at the context
/// precision.
pub fn gauss_legendre(ctx: &Ctx, n: usize) -> Vec<(Float, Float)> {
    let prec = ctx.prec + 32;
    let pi = Float::with_val(prec, Constant::Pi);
    let eps = Float::with_val(prec, Float::i_exp(1, -(ctx.prec as i32) - 8));
    // (P_n(x), P_n'(x)) by the three-term recurrence
    let legendre = |x: &Float| -> (Float, Float) {
        let mut p0 = Float::with_val(prec, 1);
        let mut p1 = x.clone();
        for k in 2..=n {
            let k = k as u32;
            let p2 = (Float::with_val(prec, x * &p1) * (2 * k - 1) - Float::with_val(prec, &p0 * (k - 1))) / k;
            p0 = p1;
            p1 = p2;
        }
        let x2 = Float::with_val(prec, x * x) - 1u32;
        let dp = (Float::with_val(prec, x * &p1) - &p0) * n as u32 / x2;
        (p1, dp)
    };
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = Float::with_val(prec, &pi * (4 * i as u32 - 1)) / (4 * n as u32 + 2);
        x = x.cos();
        for _ in 0..100 {
            let (p, dp) = legendre(&x);
            let dx = p / &dp;
            x -= &dx;
            if dx.abs() < eps {
                break;
            }
        }
        let (_, dp) = legendre(&x);
        let x2 = Float::with_val(prec, 1) - Float::with_val(prec, &x * &x);
        let w = Float::with_val(prec, 2) / (x2 * dp.square());
        out.push((Float::with_val(ctx.prec, x), Float::with_val(ctx.prec, w)));
    }
    out
}
