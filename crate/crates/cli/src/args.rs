use clap::{Args, ValueEnum};
use qka::freegroup::KnotSpec;
use qka::numerics::{parse_complex, Ctx};
use qka::representations::{Branch, RepParams};
use qka::{Error, Result};
use rug::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KnotKind {
    Torus,
    Iterated,
    Fig8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    An,
    Na,
    Nn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug)]
pub struct KnotArgs {
    #[arg(long, value_enum)]
    pub knot: KnotKind,
    #[arg(long)]
    pub a: Option<i64>,
    #[arg(long)]
    pub b: Option<i64>,
}

impl KnotArgs {
    pub fn spec(&self) -> Result<KnotSpec> {
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| Error::Hypothesis(format!("--{name} is required for this knot")))
        };
        let k = match self.knot {
            KnotKind::Torus => KnotSpec::Torus { a: need(self.a, "a")? },
            KnotKind::Iterated => KnotSpec::IteratedTorus { a: need(self.a, "a")?, b: need(self.b, "b")? },
            KnotKind::Fig8 => KnotSpec::FigureEight,
        };
        k.validate()?;
        Ok(k)
    }
}

/// A knot together with a representation branch and the meridian parameter u.
#[derive(Args, Clone, Debug)]
pub struct RepArgs {
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Iterated-torus family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// ω₁ index for torus, NA and NN.
    #[arg(long, default_value_t = 0)]
    pub k: i64,
    /// ω₂ index for AN.
    #[arg(long, default_value_t = 0)]
    pub j: i64,
    /// ω₃ index for NN.
    #[arg(long, default_value_t = 0)]
    pub h: i64,
    /// Figure-eight sign (+1 or -1).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i8,
    #[arg(long, default_value = "0.2", allow_hyphen_values = true)]
    pub u: String,
}

impl RepArgs {
    pub fn params(&self, ctx: &Ctx) -> Result<RepParams> {
        let knot = self.knot.spec()?;
        let u = parse_complex(ctx, &self.u)?;
        let branch = match (knot, self.family) {
            (KnotSpec::FigureEight, _) => {
                if self.sign != 1 && self.sign != -1 {
                    return Err(Error::Hypothesis("--sign must be +1 or -1".into()));
                }
                Branch::Sign { s: self.sign }
            }
            (KnotSpec::Torus { .. }, _) => Branch::Torus { k: self.k },
            (KnotSpec::IteratedTorus { .. }, Some(FamilyArg::An)) => Branch::AN { j: self.j },
            (KnotSpec::IteratedTorus { .. }, Some(FamilyArg::Na)) => Branch::NA { k: self.k },
            (KnotSpec::IteratedTorus { .. }, Some(FamilyArg::Nn)) => Branch::NN { k: self.k, h: self.h },
            (KnotSpec::IteratedTorus { .. }, None) => {
                return Err(Error::Hypothesis("--family (an, na or nn) is required for iterated torus knots".into()))
            }
        };
        let p = RepParams::new(knot, u, branch);
        p.validate()?;
        Ok(p)
    }
}

pub fn parse_xi(ctx: &Ctx, text: &str) -> Result<Complex> {
    parse_complex(ctx, text)
}
