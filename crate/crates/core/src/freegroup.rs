//! Free-group words, the integral group ring, Fox derivatives and the knot-group presentations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Freely reduced word in syllable form: no zero exponents, no two adjacent syllables on the
/// same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syl: Vec<(String, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn gen(name: &str) -> Self {
        Word::gen_pow(name, 1)
    }

    pub fn gen_pow(name: &str, e: i64) -> Self {
        Word::from_syllables([(name.to_string(), e)])
    }

    pub fn from_syllables(it: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut w = Word::empty();
        for (g, e) in it {
            w.push(&g, e);
        }
        w
    }

    fn push(&mut self, g: &str, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syl.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syl.pop();
                }
                return;
            }
        }
        self.syl.push((g.to_string(), e));
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syl
    }

    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syl.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Letter-by-letter expansion.
    pub fn letters(&self) -> Vec<(String, i64)> {
        let mut out = Vec::with_capacity(self.len());
        for (g, e) in &self.syl {
            for _ in 0..e.unsigned_abs() {
                out.push((g.clone(), e.signum()));
            }
        }
        out
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (g, e) in &other.syl {
            w.push(g, *e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { syl: self.syl.iter().rev().map(|(g, e)| (g.clone(), -e)).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Re-run free reduction; a no-op on values built through this API.
    pub fn reduce(&self) -> Word {
        Word::from_syllables(self.syl.iter().cloned())
    }

    pub fn exponent_sum(&self, g: &str) -> i64 {
        self.syl.iter().filter(|(h, _)| h == g).map(|(_, e)| e).sum()
    }

    pub fn generators(&self) -> Vec<String> {
        let mut v: Vec<String> = self.syl.iter().map(|(g, _)| g.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return write!(f, "1");
        }
        for (g, e) in &self.syl {
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parse a word. Generator names are one ASCII letter followed by optional digits; `1` is the
/// empty word; `(...)` groups; postfix `^n` binds tighter than juxtaposition.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, gens: None };
    let w = p.product()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err(format!("unexpected `{}`", p.s[p.pos] as char)));
    }
    Ok(w)
}

/// As `parse_word`, rejecting names outside `gens`.
pub fn parse_word_in(text: &str, gens: &[String]) -> Result<Word> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, gens: Some(gens) };
    let w = p.product()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err(format!("unexpected `{}`", p.s[p.pos] as char)));
    }
    Ok(w)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    gens: Option<&'a [String]>,
}

impl Parser<'_> {
    fn err(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Word> {
        let mut w = Word::empty();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            return Ok(atom.pow(n));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input".into()))?;
        match c {
            b'(' => {
                self.pos += 1;
                let w = self.product()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("missing `)`".into()));
                }
                self.pos += 1;
                Ok(w)
            }
            b'1' => {
                self.pos += 1;
                Ok(Word::empty())
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
                if let Some(gens) = self.gens {
                    if !gens.contains(&name) {
                        return Err(Error::UnknownGenerator(name));
                    }
                }
                Ok(Word::gen(&name))
            }
            c => Err(self.err(format!("unexpected `{}`", c as char))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(Error::Syntax { pos: start, msg: "expected an integer exponent".into() });
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "exponent out of range".into() })
    }
}

/// Finite Z-linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(w, 1)
    }

    pub fn monomial(w: Word, c: i64) -> Self {
        let mut g = Self::zero();
        g.add_term(w, c);
        g
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Left multiplication by a word.
    pub fn left_mul(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (b, c) in self.terms() {
            out.add_term(w.mul(b), c);
        }
        out
    }

    /// Sum of coefficients (the augmentation map to Z).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{w}")?;
            } else {
                write!(f, "{sign}{mag}*{w}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// ∂(g^e)/∂x for a single syllable: Σ_{i<e} x^i when e > 0, -Σ_{i=1}^{|e|} x^{-i} when e < 0.
fn syllable_derivative(g: &str, e: i64, x: &str) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    if g != x {
        return out;
    }
    if e > 0 {
        for i in 0..e {
            out.add_term(Word::gen_pow(x, i), 1);
        }
    } else {
        for i in 1..=-e {
            out.add_term(Word::gen_pow(x, -i), -1);
        }
    }
    out
}

/// Fox free derivative ∂w/∂x, expanding the product rule along the syllables of `w`.
pub fn fox_derivative(w: &Word, x: &str) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::empty();
    for (g, e) in w.syllables() {
        if g == x {
            out = out.add(&syllable_derivative(g, *e, x).left_mul(&prefix));
        }
        prefix.push(g, *e);
    }
    out
}

/// ∂(wⁿ)/∂x through the geometric-series identity (Σ_{i<n} wⁱ)·∂w/∂x, with the analogous
/// -(Σ_{i=1}^{|n|} w^{-i})·∂w/∂x for negative n.
pub fn fox_derivative_power(w: &Word, n: i64, x: &str) -> GroupRingElement {
    let dw = fox_derivative(w, x);
    let mut geo = GroupRingElement::zero();
    if n > 0 {
        for i in 0..n {
            geo.add_term(w.pow(i), 1);
        }
    } else {
        for i in 1..=-n {
            geo.add_term(w.pow(-i), -1);
        }
    }
    geo.mul(&dw)
}

/// Knot descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnotSpec {
    FigureEight,
    Torus { a: i64 },
    IteratedTorus { a: i64, b: i64 },
}

impl KnotSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KnotSpec::FigureEight => Ok(()),
            KnotSpec::Torus { a } => {
                if a < 1 {
                    return Err(Error::Hypothesis(format!("T(2,2a+1) needs a >= 1, got a = {a}")));
                }
                Ok(())
            }
            KnotSpec::IteratedTorus { a, b } => {
                if a < 1 || b < 1 {
                    return Err(Error::Hypothesis(format!(
                        "iterated torus knot needs a >= 1 and b >= 1, got a = {a}, b = {b}"
                    )));
                }
                let c = 2 * b + 1 - 4 * (2 * a + 1);
                if c <= 0 {
                    return Err(Error::Hypothesis(format!(
                        "iterated torus knot needs 2b+1-4(2a+1) > 0, got 2*{b}+1-4*(2*{a}+1) = {c}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            KnotSpec::FigureEight => "figure-eight".into(),
            KnotSpec::Torus { a } => format!("T(2,{})", 2 * a + 1),
            KnotSpec::IteratedTorus { a, b } => format!("T(2,{})^(2,{})", 2 * a + 1, 2 * b + 1),
        }
    }
}

/// Deficiency-one presentation with peripheral words and the abelianization weights
/// (the image of each generator in H_1 = Z).
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub meridian: Word,
    pub longitude: Word,
    pub weights: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
    meridian: String,
    longitude: String,
    weights: BTreeMap<String, i64>,
}

impl Presentation {
    /// Abelianization exponent α(w).
    pub fn weight(&self, w: &Word) -> i64 {
        w.syllables().iter().map(|(g, e)| self.weights.get(g).copied().unwrap_or(0) * e).sum()
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        parse_word_in(text, &self.generators)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| r.to_string()).collect(),
            meridian: self.meridian.to_string(),
            longitude: self.longitude.to_string(),
            weights: self.weights.clone(),
        };
        serde_json::to_value(j).expect("presentation serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: PresentationJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::Syntax { pos: 0, msg: e.to_string() })?;
        let parse = |s: &str| parse_word_in(s, &j.generators);
        Ok(Presentation {
            relators: j.relators.iter().map(|r| parse(r)).collect::<Result<_>>()?,
            meridian: parse(&j.meridian)?,
            longitude: parse(&j.longitude)?,
            generators: j.generators.clone(),
            weights: j.weights,
        })
    }
}

/// Longitude of the companion T(2,2a+1): y(xy)^{2a}x^{-4a-1}.
pub fn companion_longitude(a: i64) -> Word {
    let xy = Word::gen("x").mul(&Word::gen("y"));
    Word::gen("y").mul(&xy.pow(2 * a)).mul(&Word::gen_pow("x", -4 * a - 1))
}

/// (xy)^a x (xy)^{-a} y^{-1}
fn torus_relator(a: i64) -> Word {
    let xy = Word::gen("x").mul(&Word::gen("y"));
    xy.pow(a).mul(&Word::gen("x")).mul(&xy.pow(-a)).mul(&Word::gen_pow("y", -1))
}

pub fn knot_presentation(k: &KnotSpec) -> Result<Presentation> {
    k.validate()?;
    let gens = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let p = |s: &str| parse_word(s).expect("built-in word parses");
    Ok(match *k {
        KnotSpec::FigureEight => Presentation {
            generators: gens(&["x", "y"]),
            relators: vec![p("xy^-1x^-1yx(yxy^-1x^-1y)^-1")],
            meridian: p("x"),
            longitude: p("xy^-1xyx^-2yxy^-1x^-1"),
            weights: [("x".to_string(), 1), ("y".to_string(), 1)].into(),
        },
        KnotSpec::Torus { a } => Presentation {
            generators: gens(&["x", "y"]),
            relators: vec![torus_relator(a)],
            meridian: p("x"),
            longitude: companion_longitude(a),
            weights: [("x".to_string(), 1), ("y".to_string(), 1)].into(),
        },
        KnotSpec::IteratedTorus { a, b } => {
            let lc = companion_longitude(a);
            let x = |e| Word::gen_pow("x", e);
            let pp = Word::gen("p");
            let q = Word::gen("q");
            let r2 = pp.mul(&q).mul(&x(-1));
            let r3 = lc.mul(&x(b)).mul(&pp).mul(&lc.inverse()).mul(&x(-b)).mul(&q.inverse());
            let lon = lc
                .mul(&x(b))
                .mul(&pp)
                .mul(&Word::gen_pow("q", -b))
                .mul(&lc)
                .mul(&x(b))
                .mul(&Word::gen_pow("p", -3 * b - 1));
            Presentation {
                generators: gens(&["x", "y", "p", "q"]),
                relators: vec![torus_relator(a), r2, r3],
                meridian: pp,
                longitude: lon,
                weights: [
                    ("x".to_string(), 2),
                    ("y".to_string(), 2),
                    ("p".to_string(), 1),
                    ("q".to_string(), 1),
                ]
                .into(),
            }
        }
    })
}
