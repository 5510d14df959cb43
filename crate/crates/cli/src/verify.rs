use clap::ValueEnum;
use qka::chern_simons::{cs_matches_s, kk_path_check};
use qka::freegroup::KnotSpec;
use qka::numerics::{abs, Ctx};
use qka::representations::{build_representation, Branch, RepParams};
use qka::torsion::{self, closed, CrossCheckStatus};
use qka::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    Cs,
    Kk,
    Tau,
    NnTorsion,
    DTable,
    Structure,
}

#[derive(Default)]
struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, status: &str, name: &str, detail: String) {
        if status == "FAIL" {
            self.failures += 1;
        }
        println!("{status} {name} {detail}");
    }

    fn check(&mut self, name: &str, value: f64, tol: f64) {
        let status = if value <= tol { "PASS" } else { "FAIL" };
        self.line(status, name, format!("residual={value:.3e} tol={tol:.0e}"));
    }

    fn error(&mut self, name: &str, e: qka::Error) {
        self.line("FAIL", name, format!("error: {e}"));
    }
}

const US: [(f64, f64); 3] = [(0.2, 0.05), (-0.13, 0.21), (0.31, -0.07)];

fn iterated_params(ctx: &Ctx, u: &rug::Complex) -> Vec<RepParams> {
    let mut v = Vec::new();
    for (a, b) in [(1, 6), (2, 10)] {
        let knot = KnotSpec::IteratedTorus { a, b };
        for j in 0..b {
            v.push(RepParams::new(knot, u.clone(), Branch::AN { j }));
        }
        for k in 0..a {
            v.push(RepParams::new(knot, u.clone(), Branch::NA { k }));
        }
    }
    let _ = ctx;
    v
}

fn nn_params(u: &rug::Complex) -> Vec<RepParams> {
    let mut v = Vec::new();
    for (a, b) in [(1, 7), (1, 8), (2, 12)] {
        let knot = KnotSpec::IteratedTorus { a, b };
        let c = 2 * b + 1 - 4 * (2 * a + 1);
        for k in 0..a {
            for h in (0..c).filter(|h| 2 * h + 1 != c) {
                v.push(RepParams::new(knot, u.clone(), Branch::NN { k, h }));
            }
        }
    }
    v
}

fn torus_params(u: &rug::Complex) -> Vec<RepParams> {
    (1..=3).flat_map(|a| (0..a).map(move |k| RepParams::new(KnotSpec::Torus { a }, u.clone(), Branch::Torus { k }))).collect()
}

fn label(p: &RepParams) -> String {
    format!("{}:{:?}", p.knot.name(), p.branch).replace(' ', "")
}

fn cs_checks(ctx: &Ctx, r: &mut Report) {
    for (ur, ui) in US {
        let u = ctx.c(ur, ui);
        let mut ps = torus_params(&u);
        ps.extend(iterated_params(ctx, &u));
        ps.extend(nn_params(&u));
        for p in ps {
            let name = format!("cs-matches-s[{}]", label(&p));
            match cs_matches_s(ctx, &p) {
                Ok(m) => r.check(&name, m.residual.max(m.v_residual), 1e-20),
                Err(e) => r.error(&name, e),
            }
        }
    }
}

fn kk_checks(ctx: &Ctx, r: &mut Report) {
    let u = ctx.c(0.2, 0.05);
    let mut ps = torus_params(&u);
    ps.extend(iterated_params(ctx, &u));
    for p in ps {
        let branch = match p.branch {
            Branch::NA { .. } => -3,
            _ => -1,
        };
        let name = format!("kirk-klassen[{}]", label(&p));
        match kk_path_check(ctx, &p, branch, 1e-12) {
            Ok(k) => r.check(&name, k.ratio_rel_err.max(k.cs_residual), 1e-6),
            Err(e) => r.error(&name, e),
        }
    }
}

fn tau_checks(ctx: &Ctx, r: &mut Report) {
    let u = ctx.c(0.2, 0.05);
    let mut ps = torus_params(&u);
    ps.extend(iterated_params(ctx, &u));
    for p in ps {
        let name = format!("tau-torsion[{}]", label(&p));
        match torsion::tau_torsion_crosscheck(ctx, &p, 1e-9) {
            Ok(c) => {
                let status = if c.status == CrossCheckStatus::Match { "PASS" } else { "FAIL" };
                r.line(status, &name, format!("|tau|^-2={:.12e} |T_mu|={:.12e} rel={:.3e}", c.tau_inv_sq_abs, c.torsion_abs, c.rel_diff));
            }
            Err(e) => r.error(&name, e),
        }
    }
}

fn nn_checks(ctx: &Ctx, r: &mut Report) {
    let u = ctx.c(0.2, 0.05);
    for p in nn_params(&u) {
        let name = format!("nn-torsion[{}]", label(&p));
        match torsion::tau_torsion_crosscheck(ctx, &p, 1e-9) {
            Ok(c) => r.line(
                "WARN",
                &name,
                format!("|tau3|^-2={:.12e} differs from |limit/(dv/du)|={:.12e} (rel {:.3e})", c.tau_inv_sq_abs, c.torsion_abs, c.rel_diff),
            ),
            Err(e) => r.error(&name, e),
        }
    }
}

fn d_table_checks(ctx: &Ctx, r: &mut Report) {
    for s in [1i8, -1] {
        for u in [0.1, 0.2, 0.3] {
            match torsion::fig8_d_table_discrepancies(ctx, &ctx.real(u), s, 1e-9) {
                Ok(list) => {
                    for d in &list {
                        r.line(
                            "ERRATUM",
                            &format!("d-table[{}({},{}),u={u},sign={s}]", d.matrix, d.row, d.col),
                            format!("printed={} computed={} rel={:.3e}", d.printed, d.computed, d.rel_err),
                        );
                    }
                    r.line("INFO", &format!("d-table[u={u},sign={s}]"), format!("{} printed entries disagree", list.len()));
                }
                Err(e) => r.error("d-table", e),
            }
        }
    }
}

fn structure_checks(ctx: &Ctx, r: &mut Report) -> Result<()> {
    let u = ctx.c(0.2, 0.05);
    let mut ps = vec![
        RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: 1 }),
        RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: -1 }),
    ];
    ps.extend(torus_params(&u));
    ps.extend(iterated_params(ctx, &u));
    ps.extend(nn_params(&u));
    for p in ps {
        let rep = build_representation(ctx, &p)?;
        r.check(&format!("relators[{}]", label(&p)), rep.relator_residual()?, 1e-20);
        let t = ctx.c(1.3, 0.2);
        let d2 = torsion::boundary2(&rep, &t)?;
        let d1 = torsion::boundary1(&rep, &t)?;
        r.check(&format!("d1d2[{}]", label(&p)), d1.mul(&d2).max_abs(), 1e-20);
        let by_word = qka::representations::evaluate_word(&rep, &rep.presentation.longitude)?;
        let cf = qka::representations::longitude_closed_form(ctx, &p)?;
        r.check(&format!("longitude[{}]", label(&p)), by_word.dist(&cf) / cf.norm(), 1e-20);
    }
    for x in [0.1, 0.2, 0.3] {
        let u = ctx.real(x);
        let cc = torsion::fig8_torsion_chain_complex(ctx, &u, 1)?;
        let fox = torsion::torsion_mu_for(ctx, &RepParams::new(KnotSpec::FigureEight, u.clone(), Branch::Sign { s: 1 }))?;
        let cf = abs(&closed::fig8_mu(&u));
        let dev = (abs(&cc.value) - cf).abs().max((abs(&fox.value) - cf).abs());
        r.check(&format!("fig8-torsion-triple[u={x}]"), dev, 1e-8);
    }
    Ok(())
}

pub fn run(ctx: &Ctx, check: Check) -> Result<u8> {
    let mut r = Report::default();
    let all = check == Check::All;
    if all || check == Check::Structure {
        if let Err(e) = structure_checks(ctx, &mut r) {
            r.error("structure", e);
        }
    }
    if all || check == Check::Cs {
        cs_checks(ctx, &mut r);
    }
    if all || check == Check::Kk {
        kk_checks(ctx, &mut r);
    }
    if all || check == Check::Tau {
        tau_checks(ctx, &mut r);
    }
    if all || check == Check::NnTorsion {
        nn_checks(ctx, &mut r);
    }
    if all || check == Check::DTable {
        d_table_checks(ctx, &mut r);
    }
    println!("SUMMARY failures={}", r.failures);
    Ok(if r.failures == 0 { 0 } else { 1 })
}
