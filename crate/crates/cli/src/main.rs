mod args;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qka::asymptotics::{self, Variant};
use qka::chern_simons::{cs_closed_form, cs_matches_s, mod_pi2_residual};
use qka::freegroup::KnotSpec;
use qka::jones;
use qka::numerics::{abs, Ctx};
use qka::representations::{build_representation, dv_du, Branch};
use qka::torsion::{self, closed, TorsionKind};
use qka::Error;
use serde_json::{json, Value};

use args::{parse_xi, Format, KnotArgs, RepArgs};
use output::{f17, Sink};

#[derive(Parser, Debug)]
#[command(name = "qka", version, about = "Colored Jones asymptotics, Chern-Simons invariants and twisted torsions of torus and iterated torus knots")]
struct Cli {
    /// Working precision in bits (default: QKA_PRECISION_BITS or 256).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Colored Jones polynomial values (or the exact torus polynomial).
    Jones {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long = "N", alias = "n", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value = "1+1i")]
        xi: String,
        /// Exact Laurent polynomial instead of an evaluation (torus knots).
        #[arg(long)]
        exact: bool,
    },
    /// Relative error of the asymptotic expansion against the exact values over an N-grid.
    Compare {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long = "N", alias = "n", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value = "1+1i")]
        xi: String,
        #[arg(long, value_enum, default_value = "canonical")]
        variant: VariantArg,
    },
    /// Twisted torsion of a representation.
    Torsion {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value = "fox")]
        route: Route,
    },
    /// Chern-Simons invariant from the expansion exponent and from the closed form.
    Cs {
        #[command(flatten)]
        rep: RepArgs,
        /// Branch integer of the closed form (default: the one matching the exponent).
        #[arg(long, allow_hyphen_values = true)]
        branch_int: Option<f64>,
    },
    /// Generator images of a representation.
    Reps {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Run the identity and cross-check suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        check: verify::Check,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Canonical,
    Display,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Fox,
    ChainComplex,
    ClosedForm,
}

fn precision(flag: Option<u32>) -> Result<u32, Error> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var("QKA_PRECISION_BITS") {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Hypothesis(format!("QKA_PRECISION_BITS = `{s}` is not a positive integer"))),
        Err(_) => Ok(Ctx::DEFAULT_PREC),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_)
        | Error::OutOfRange(_)
        | Error::BranchPoint(_)
        | Error::Syntax { .. }
        | Error::UnknownGenerator(_)
        | Error::Unsupported(_)
        | Error::DegenerateStrip { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = precision(cli.precision).and_then(|prec| {
        if prec < 64 {
            return Err(Error::Hypothesis("precision must be at least 64 bits".into()));
        }
        let ctx = Ctx::new(prec);
        let sink = Sink::new(cli.format, cli.output.clone(), prec);
        run(&ctx, &sink, &cli.command)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("output: {e}"))
}

fn run(ctx: &Ctx, sink: &Sink, cmd: &Command) -> Result<u8, Error> {
    match cmd {
        Command::Jones { knot, n, xi, exact } => cmd_jones(ctx, sink, knot, n, xi, *exact),
        Command::Compare { knot, n, xi, variant } => cmd_compare(ctx, sink, knot, n, xi, *variant),
        Command::Torsion { rep, route } => cmd_torsion(ctx, sink, rep, *route),
        Command::Cs { rep, branch_int } => cmd_cs(ctx, sink, rep, *branch_int),
        Command::Reps { rep } => {
            let p = rep.params(ctx)?;
            let r = build_representation(ctx, &p)?;
            let mut v = r.to_json(sink.digits);
            v["relator_residual"] = json!(f17(r.relator_residual()?));
            let mut w: Box<dyn std::io::Write> = match &sink.path {
                Some(path) => Box::new(std::fs::File::create(path).map_err(io_err)?),
                None => Box::new(std::io::stdout().lock()),
            };
            serde_json::to_writer_pretty(&mut w, &v).map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(w).map_err(io_err)?;
            Ok(0)
        }
        Command::Verify { check } => verify::run(ctx, *check),
    }
}

use std::io::Write as _;

fn cmd_jones(ctx: &Ctx, sink: &Sink, knot: &KnotArgs, ns: &[u64], xi: &str, exact: bool) -> Result<u8, Error> {
    let k = knot.spec()?;
    if exact {
        let a = match k {
            KnotSpec::Torus { a } => a,
            _ => return Err(Error::Unsupported("exact mode covers torus knots only".into())),
        };
        let mut rows = Vec::new();
        for &n in ns {
            if n > 200 {
                return Err(Error::Hypothesis("exact mode is limited to N <= 200".into()));
            }
            let p = jones::colored_jones_torus_exact(a, n as i64)?;
            for (e, c) in p.pairs() {
                rows.push(json!({"knot": k.name(), "N": n, "exponent_numerator": e, "exponent_denominator": 2, "coefficient": c.to_string()}));
            }
            if sink.format == Format::Json {
                let terms: Vec<Value> = p.pairs().map(|(e, c)| json!([e, c.to_string()])).collect();
                let last = rows.len();
                rows.truncate(last - p.pairs().count());
                rows.push(json!({"knot": k.name(), "N": n, "exponent_denominator": 2, "terms": terms, "polynomial": p.to_string()}));
            }
        }
        sink.emit(&["knot", "N", "exponent_numerator", "exponent_denominator", "coefficient"], &rows).map_err(io_err)?;
        return Ok(0);
    }
    let x = parse_xi(ctx, xi)?;
    let mut rows = Vec::new();
    for &n in ns {
        let ev = match k {
            KnotSpec::Torus { a } => jones::colored_jones_torus(ctx, a, n, &x)?,
            KnotSpec::IteratedTorus { a, b } => jones::colored_jones_iterated(ctx, a, b, n, &x)?,
            KnotSpec::FigureEight => return Err(Error::Unsupported("no colored Jones formula for the figure-eight knot".into())),
        };
        rows.push(json!({
            "knot": k.name(),
            "N": n,
            "xi": xi,
            "value_re": sink.re(&ev.value),
            "value_im": sink.im(&ev.value),
            "err_bound": f17(ev.err_bound),
            "precision_bits": ev.precision_bits,
        }));
    }
    sink.emit(&["knot", "N", "xi", "value_re", "value_im", "err_bound", "precision_bits"], &rows).map_err(io_err)?;
    Ok(0)
}

fn cmd_compare(ctx: &Ctx, sink: &Sink, knot: &KnotArgs, ns: &[u64], xi: &str, variant: VariantArg) -> Result<u8, Error> {
    let k = knot.spec()?;
    if ns.len() < 2 {
        return Err(Error::Hypothesis("compare needs at least two values of N".into()));
    }
    let x = parse_xi(ctx, xi)?;
    let v = match variant {
        VariantArg::Canonical => Variant::Canonical,
        VariantArg::Display => Variant::Display,
    };
    let mut rows = Vec::new();
    let mut errs = Vec::new();
    for &n in ns {
        let r = asymptotics::compare(ctx, &k, &x, n, v)?;
        errs.push(r.rel_err);
        rows.push(json!({
            "N": n,
            "exact_re": sink.re(&r.exact),
            "exact_im": sink.im(&r.exact),
            "approx_re": sink.re(&r.approx),
            "approx_im": sink.im(&r.approx),
            "rel_err": f17(r.rel_err),
            "dominant_family": r.dominant_family.map(|f| f.name()).unwrap_or("leading"),
            "dominant_indices": r.dominant_indices,
            "precision_bits": r.precision_bits,
            "err_bound": f17(r.err_bound),
        }));
    }
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    sink.emit(
        &["N", "exact_re", "exact_im", "approx_re", "approx_im", "rel_err", "dominant_family", "dominant_indices", "precision_bits", "err_bound"],
        &rows,
    )
    .map_err(io_err)?;
    eprintln!("rel_err strictly decreasing: {}", if decreasing { "yes" } else { "no" });
    Ok(0)
}

fn family_label(b: &Branch) -> (&'static str, Vec<i64>) {
    match *b {
        Branch::Sign { s } => ("figure-eight", vec![s as i64]),
        Branch::Torus { k } => ("torus", vec![k]),
        Branch::AN { j } => ("AN", vec![j]),
        Branch::NA { k } => ("NA", vec![k]),
        Branch::NN { k, h } => ("NN", vec![k, h]),
    }
}

fn cmd_torsion(ctx: &Ctx, sink: &Sink, rep: &RepArgs, route: Route) -> Result<u8, Error> {
    let p = rep.params(ctx)?;
    let (family, indices) = family_label(&p.branch);
    let (value, order, kind) = match route {
        Route::Fox => {
            let r = build_representation(ctx, &p)?;
            let lam = torsion::torsion_lambda(&r)?;
            let mu = torsion::torsion_mu(&lam, &dv_du(ctx, &p))?;
            (mu.value, Some(lam.vanishing_order), mu.kind)
        }
        Route::ChainComplex => {
            let s = match p.branch {
                Branch::Sign { s } => s,
                _ => return Err(Error::Unsupported("the chain-complex route is implemented for the figure-eight knot".into())),
            };
            (torsion::fig8_torsion_chain_complex(ctx, &p.u, s)?.value, None, TorsionKind::Mu)
        }
        Route::ClosedForm => {
            let u = ctx.lift(&p.u);
            let (v, kind) = match (p.knot, p.branch) {
                (_, Branch::Sign { .. }) => (closed::fig8_mu(&u), TorsionKind::Mu),
                (_, Branch::Torus { .. }) => (closed::torus_mu(p.alpha(), &p.omega1(ctx).unwrap()), TorsionKind::Mu),
                (_, Branch::AN { .. }) => (closed::an_mu(p.alpha(), p.beta(), &p.omega2(ctx).unwrap()), TorsionKind::Mu),
                (_, Branch::NA { .. }) => (closed::na_mu(p.alpha(), p.gamma(), &u, &p.omega1(ctx).unwrap()), TorsionKind::Mu),
                (_, Branch::NN { .. }) => (
                    closed::nn_alexander_limit_mu(p.alpha(), p.beta(), &p.omega1(ctx).unwrap()),
                    TorsionKind::AlexanderLimit,
                ),
            };
            (v, None, kind)
        }
    };
    let route_name = match route {
        Route::Fox => "fox",
        Route::ChainComplex => "chain-complex",
        Route::ClosedForm => "closed-form",
    };
    let row = json!({
        "knot": p.knot.name(),
        "family": family,
        "indices": indices,
        "u": qka::numerics::fmt_complex(&p.u, 17),
        "t_limit_order": order,
        "torsion_abs": f17(abs(&value)),
        "value_re": sink.re(&value),
        "value_im": sink.im(&value),
        "kind": kind,
        "route": route_name,
    });
    sink.emit(&["knot", "family", "indices", "u", "t_limit_order", "torsion_abs", "value_re", "value_im", "kind", "route"], &[row])
        .map_err(io_err)?;
    Ok(0)
}

fn cmd_cs(ctx: &Ctx, sink: &Sink, rep: &RepArgs, branch_int: Option<f64>) -> Result<u8, Error> {
    let p = rep.params(ctx)?;
    let (family, _) = family_label(&p.branch);
    let m = cs_matches_s(ctx, &p)?;
    let (branch, cs, v, residual) = match branch_int {
        None => (m.branch, m.cs_closed.clone(), m.v.clone(), m.residual),
        Some(b) => {
            let (c, v) = cs_closed_form(ctx, &p, b)?;
            let r = mod_pi2_residual(ctx, &(c.value.clone() - &m.cs_from_s));
            (b, c.value, v, r)
        }
    };
    let row = json!({
        "family": family,
        "u": qka::numerics::fmt_complex(&p.u, 17),
        "indices": m.indices,
        "branch_int": branch,
        "CS_re": sink.re(&cs),
        "CS_im": sink.im(&cs),
        "v_re": sink.re(&v),
        "v_im": sink.im(&v),
        "residual_mod_pi2": f17(residual),
    });
    sink.emit(&["family", "u", "indices", "branch_int", "CS_re", "CS_im", "v_re", "v_im", "residual_mod_pi2"], &[row])
        .map_err(io_err)?;
    Ok(0)
}
