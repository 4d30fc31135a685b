//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
//! usage errors (bad flags, unknown rows, tags or parameters).

pub mod report;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pseudo_einstein::duality::{self, Table3Report, TABLE3_LEN};
use pseudo_einstein::einstein::{self, FibrationId, ParamKind};
use pseudo_einstein::groups::{build_str, FamilySpec};
use pseudo_einstein::transitivity::{self, Params, RowReport};
use pseudo_einstein::{Error, Q};
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pseudo-einstein", version, about = "Exact Lie-theoretic checks for homogeneous Einstein metrics on pseudo-hyperbolic spaces")]
pub struct Cli {
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Append decimal approximations to rational values in text output.
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List table rows or the fibration catalog.
    Tables {
        #[arg(long)]
        table: Option<u8>,
        /// Print the Hopf fibration catalog as JSON.
        #[arg(long)]
        catalog: bool,
    },
    /// Check transitivity rows of tables 1 and 2.
    VerifyAction {
        #[arg(long, default_value_t = 1)]
        table: u8,
        /// Single row; all rows when omitted.
        #[arg(long)]
        row: Option<u8>,
        #[command(flatten)]
        params: ParamArgs,
        /// Every parameter choice with ambient size below --max-ambient.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = transitivity::MAX_AMBIENT)]
        max_ambient: usize,
        /// Run the negative controls instead.
        #[arg(long)]
        controls: bool,
    },
    /// Einstein constants, t₀ and the Einstein scan of a Hopf fibration.
    Einstein {
        #[arg(long)]
        fibration: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// Find every t with g_t Einstein.
        #[arg(long)]
        scan: bool,
        /// Einstein residual of g_t at the given values (e.g. 1/5).
        #[arg(long = "t")]
        t: Vec<String>,
    },
    /// Compact duals: table 3 rows, or a single algebra with --group.
    Dual {
        #[arg(long)]
        row: Option<u8>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        group: Option<String>,
    },
    /// Homogeneous Einstein metrics on a space tag such as H:15:7.
    Enumerate {
        #[arg(long)]
        space: String,
    },
    /// Run every table at minimal parameters and write report files.
    Report {
        /// Output directory; defaults to $PSEUDO_EINSTEIN_REPORT_DIR or `.`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write tables.csv.
        #[arg(long)]
        csv: bool,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let mut ctx = Ctx { out, json: cli.json, approx: cli.approx };
    match dispatch(&mut ctx, cli.command) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(ctx.out, "error: {e}");
            if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::InvalidParams(_) | Error::Parse(..) | Error::UnknownTag(_) | Error::UnknownRow { .. })
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
    approx: bool,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&mut self, record: &T, text: impl FnOnce(&Self) -> String) {
        let line = if self.json { report::to_line(record) } else { text(self) };
        let _ = writeln!(self.out, "{line}");
    }

    fn q(&self, x: &Q) -> String {
        if self.approx && !x.is_integer() {
            format!("{x} (≈{:.6})", x.to_f64())
        } else {
            x.to_string()
        }
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Fills in a row's parameters from flags, defaulting to the minimal ones.
fn resolve_params(minimal: Params, p: &ParamArgs) -> Result<Params, Error> {
    let unexpected = |names: &[(&str, Option<usize>)]| -> Result<(), Error> {
        match names.iter().find(|(_, v)| v.is_some()) {
            Some((name, _)) => Err(Error::InvalidParams(format!("--{name} does not apply to this row"))),
            None => Ok(()),
        }
    };
    Ok(match minimal {
        Params::Fixed => {
            unexpected(&[("n", p.n), ("r", p.r), ("m", p.m), ("s", p.s)])?;
            Params::Fixed
        }
        Params::NR { n, r } => {
            unexpected(&[("m", p.m), ("s", p.s)])?;
            Params::NR { n: p.n.unwrap_or(n), r: p.r.unwrap_or(r) }
        }
        Params::MS { m, s } => {
            unexpected(&[("n", p.n), ("r", p.r)])?;
            Params::MS { m: p.m.unwrap_or(m), s: p.s.unwrap_or(s) }
        }
        Params::M { m } => {
            unexpected(&[("n", p.n), ("r", p.r), ("s", p.s)])?;
            Params::M { m: p.m.unwrap_or(m) }
        }
    })
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Tables { table, catalog } => tables(ctx, table, catalog),
        Command::VerifyAction {
            table,
            row,
            params,
            sweep,
            max_ambient,
            controls,
        } => {
            if controls {
                negative_controls(ctx)
            } else {
                verify_action(ctx, table, row, &params, sweep, max_ambient)
            }
        }
        Command::Einstein { fibration, m, s, scan, t } => einstein_cmd(ctx, &fibration, m, s, scan, &t),
        Command::Dual { row, params, group } => match group {
            Some(g) => dual_group(ctx, &g),
            None => dual_rows(ctx, row, &params),
        },
        Command::Enumerate { space } => enumerate(ctx, &space),
        Command::Report { out, csv } => report_cmd(ctx, out, csv),
    }
}

#[derive(Serialize)]
struct TableEntry {
    table: u8,
    row: u8,
    params: Params,
    g: String,
    h: String,
    space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<duality::CompactClaim>,
}

fn tables(ctx: &mut Ctx, table: Option<u8>, catalog: bool) -> Result<bool, Error> {
    if catalog {
        let text = serde_json::to_string_pretty(&einstein::catalog_json()).expect("catalog serializes");
        let _ = writeln!(ctx.out, "{text}");
        return Ok(true);
    }
    let which: Vec<u8> = match table {
        Some(t @ 1..=3) => vec![t],
        Some(t) => return Err(Error::UnknownRow { table: t, row: 0 }),
        None => vec![1, 2, 3],
    };
    for t in which {
        if t == 3 {
            for row in 1..=TABLE3_LEN {
                let p = duality::table3_minimal_params(row)?;
                let r = duality::table3_row(row, p)?;
                let e = TableEntry {
                    table: 3,
                    row,
                    params: p,
                    g: r.source.g.to_string(),
                    h: r.source.h.to_string(),
                    space: r.source.space.clone(),
                    dual: Some(r.claim.clone()),
                };
                ctx.emit(&e, |_| {
                    format!("3 ({row}) [{p}] {} / {} = {}  ->  {} / {} = {}", e.g, e.h, e.space, r.claim.group, r.claim.isotropy, r.claim.space)
                });
            }
            continue;
        }
        for row in 1..=transitivity::table_len(t) {
            let p = transitivity::minimal_params(t, row)?;
            let spec = transitivity::table_row(t, row, p)?;
            let e = TableEntry {
                table: t,
                row,
                params: p,
                g: spec.g.to_string(),
                h: spec.h.to_string(),
                space: spec.space.clone(),
                dual: None,
            };
            ctx.emit(&e, |_| format!("{t} ({row}) [{p}] {} / {} = {}", e.g, e.h, e.space));
        }
    }
    Ok(true)
}

fn emit_row(ctx: &mut Ctx, r: &RowReport) {
    ctx.emit(r, |_| {
        let d = &r.dims;
        let mut s = format!(
            "table {} row {} [{}] {}: {} dims {{{}, {}, {}, {}}}",
            r.table,
            r.row,
            r.params,
            r.space,
            pass_word(r.pass),
            d.ambient,
            d.g,
            d.h,
            d.sum
        );
        if !r.failures.is_empty() {
            s.push_str(&format!(" failed: {}", r.failures.join(", ")));
        }
        s
    });
}

fn row_jobs(table: u8, row: Option<u8>, params: &ParamArgs, sweep: bool, max_ambient: usize) -> Result<Vec<(u8, Params)>, Error> {
    let rows: Vec<u8> = match row {
        Some(r) => vec![r],
        None => {
            if params.n.is_some() || params.r.is_some() || params.m.is_some() || params.s.is_some() {
                return Err(Error::InvalidParams("parameters need --row".into()));
            }
            let len = transitivity::table_len(table);
            if len == 0 {
                return Err(Error::UnknownRow { table, row: 0 });
            }
            (1..=len).collect()
        }
    };
    let mut jobs = Vec::new();
    for r in rows {
        let minimal = transitivity::minimal_params(table, r)?;
        if sweep {
            jobs.extend(transitivity::parameter_sweep(table, r, max_ambient)?.into_iter().map(|p| (r, p)));
        } else {
            jobs.push((r, resolve_params(minimal, params)?));
        }
    }
    Ok(jobs)
}

/// Verifies rows in parallel; results keep the job order.
pub fn verify_rows(table: u8, jobs: &[(u8, Params)]) -> Result<Vec<RowReport>, Error> {
    jobs.par_iter()
        .map(|&(r, p)| transitivity::verify_table_row(table, r, p))
        .collect()
}

fn verify_action(ctx: &mut Ctx, table: u8, row: Option<u8>, params: &ParamArgs, sweep: bool, max_ambient: usize) -> Result<bool, Error> {
    let jobs = row_jobs(table, row, params, sweep, max_ambient)?;
    let reports = verify_rows(table, &jobs)?;
    for r in &reports {
        emit_row(ctx, r);
    }
    Ok(reports.iter().all(|r| r.pass))
}

#[derive(Serialize)]
struct ControlRecord {
    control: &'static str,
    transitive: bool,
    pass: bool,
}

fn negative_controls(ctx: &mut Ctx) -> Result<bool, Error> {
    let mut all = true;
    for c in transitivity::negative_controls()? {
        let rep = transitivity::check_transitive(&c.instance)?;
        let rec = ControlRecord {
            control: c.name,
            transitive: rep.transitive,
            pass: !rep.transitive,
        };
        all &= rec.pass;
        ctx.emit(&rec, |_| format!("control {}: {} (transitive: {})", rec.control, pass_word(rec.pass), rec.transitive));
    }
    Ok(all)
}

fn fibration_params(id: FibrationId, m: Option<usize>, s: Option<usize>) -> Result<Params, Error> {
    Ok(match id.takes() {
        ParamKind::Fixed => {
            if m.is_some() || s.is_some() {
                return Err(Error::InvalidParams(format!("{id} takes no parameters")));
            }
            Params::Fixed
        }
        ParamKind::MS => Params::MS { m: m.unwrap_or(1), s: s.unwrap_or(0) },
        ParamKind::M => {
            if s.is_some() {
                return Err(Error::InvalidParams(format!("{id} takes only --m")));
            }
            Params::M { m: m.unwrap_or(1) }
        }
    })
}

#[derive(Serialize)]
struct EinsteinRecord {
    fibration: FibrationId,
    params: Params,
    total_space: String,
    base_space: String,
    fibre_dim: usize,
    lambda_base: Q,
    lambda_fibre: Q,
    t_zero: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scan: Option<Vec<Q>>,
    pass: bool,
}

#[derive(Serialize)]
struct ResidualRecord {
    fibration: FibrationId,
    params: Params,
    t: Q,
    residual: Q,
    einstein: bool,
}

fn einstein_cmd(ctx: &mut Ctx, name: &str, m: Option<usize>, s: Option<usize>, scan: bool, ts: &[String]) -> Result<bool, Error> {
    let id: FibrationId = name.parse()?;
    let params = fibration_params(id, m, s)?;
    let ts: Vec<Q> = ts
        .iter()
        .map(|t| t.parse::<Q>().map_err(|e| Error::Parse(t.clone(), e.to_string())))
        .collect::<Result<_, _>>()?;
    let fib = einstein::build_fibration(id, params)?;
    let lambdas = einstein::lambda_values(&fib)?;
    let t0 = einstein::t_zero_from(&lambdas, fib.a_tensor_vanishes());
    let mut pass = true;
    let scan_set = if scan {
        let found = einstein::einstein_scan(&fib, None)?;
        let mut expected: BTreeSet<Q> = BTreeSet::from([Q::ONE]);
        expected.extend(t0.clone());
        pass &= found == expected;
        Some(found.into_iter().collect::<Vec<_>>())
    } else {
        None
    };
    let rec = EinsteinRecord {
        fibration: id,
        params,
        total_space: fib.total_space.clone(),
        base_space: fib.base_space.clone(),
        fibre_dim: fib.fibre_dim(),
        lambda_base: lambdas.lambda_base.clone(),
        lambda_fibre: lambdas.lambda_fibre.clone(),
        t_zero: t0.clone(),
        scan: scan_set.clone(),
        pass,
    };
    ctx.emit(&rec, |c| {
        let mut s = format!(
            "{id} [{params}] {} -> {}: fibre dim {}, lambda' = {}, lambda^ = {}, t0 = {}",
            rec.total_space,
            rec.base_space,
            rec.fibre_dim,
            c.q(&rec.lambda_base),
            c.q(&rec.lambda_fibre),
            rec.t_zero.as_ref().map_or("none".to_string(), |t| c.q(t))
        );
        if let Some(found) = &rec.scan {
            let list: Vec<String> = found.iter().map(|t| c.q(t)).collect();
            s.push_str(&format!("\nt ∈ {{{}}}", list.join(", ")));
        }
        s
    });
    for t in ts {
        let residual = einstein::einstein_residual(&fib.variation(&t)?);
        let rec = ResidualRecord {
            fibration: id,
            params,
            t: t.clone(),
            einstein: residual.is_zero(),
            residual,
        };
        ctx.emit(&rec, |c| format!("t = {}: residual {}{}", c.q(&rec.t), c.q(&rec.residual), if rec.einstein { " (Einstein)" } else { "" }));
    }
    Ok(pass)
}

fn emit_table3(ctx: &mut Ctx, r: &Table3Report) {
    ctx.emit(r, |_| {
        let d = &r.dims;
        let mut s = format!(
            "table 3 row {} [{}] {} -> {}: {} dims g {} h {} m {} g+ {} rank {}",
            r.row,
            r.params,
            r.space,
            r.dual_space,
            pass_word(r.pass),
            d.g,
            d.h,
            d.m,
            d.g_plus,
            d.rank
        );
        if !r.failures.is_empty() {
            s.push_str(&format!(" failed: {}", r.failures.join(", ")));
        }
        s
    });
}

/// Table 3 at the given rows, in parallel, in row order.
pub fn verify_table3_rows(jobs: &[(u8, Params)]) -> Result<Vec<Table3Report>, Error> {
    jobs.par_iter().map(|&(r, p)| duality::verify_table3(r, p)).collect()
}

fn dual_rows(ctx: &mut Ctx, row: Option<u8>, params: &ParamArgs) -> Result<bool, Error> {
    let jobs: Vec<(u8, Params)> = match row {
        Some(r) => vec![(r, resolve_params(duality::table3_minimal_params(r)?, params)?)],
        None => (1..=TABLE3_LEN)
            .map(|r| duality::table3_minimal_params(r).map(|p| (r, p)))
            .collect::<Result<_, _>>()?,
    };
    let reports = verify_table3_rows(&jobs)?;
    for r in &reports {
        emit_table3(ctx, r);
    }
    Ok(reports.iter().all(|r| r.pass))
}

#[derive(Serialize)]
struct GroupDual {
    group: String,
    dim: usize,
    plus: usize,
    minus: usize,
    dual_killing: pseudo_einstein::Signature,
    compact: bool,
    rank: usize,
}

fn dual_group(ctx: &mut Ctx, spec: &str) -> Result<bool, Error> {
    let spec: FamilySpec = spec.parse()?;
    let g = build_str(&spec.to_string())?;
    let d = duality::DualityData::new(&g.algebra)?;
    let rec = GroupDual {
        group: spec.to_string(),
        dim: g.dim(),
        plus: d.plus.dim(),
        minus: d.minus.dim(),
        dual_killing: d.dual.killing_signature(),
        compact: duality::is_compact(&d.dual),
        rank: duality::rank(&d.dual),
    };
    ctx.emit(&rec, |_| {
        format!(
            "{}: dim {} = {} + {}, dual Killing {}, compact {}, rank {}",
            rec.group, rec.dim, rec.plus, rec.minus, rec.dual_killing, rec.compact, rec.rank
        )
    });
    Ok(rec.compact)
}

fn enumerate(ctx: &mut Ctx, tag: &str) -> Result<bool, Error> {
    let e = einstein::enumerate_einstein_metrics(tag)?;
    let agrees = e.theorem_count.map_or(true, |c| c == e.count);
    ctx.emit(&e, |c| {
        let mut s = format!("{}: {} homogeneous Einstein metric{}", e.space, e.count, if e.count == 1 { "" } else { "s" });
        match e.theorem_count {
            Some(t) => s.push_str(&format!(" (theorem: {t})")),
            None => s.push_str(" (no theorem clause applies)"),
        }
        for m in &e.metrics {
            s.push_str(&format!("\n  {} [{}] t = {}", m.source, m.params, c.q(&m.t)));
        }
        for w in &e.without_t0 {
            s.push_str(&format!("\n  {w}: no t0"));
        }
        s
    });
    Ok(agrees)
}

#[derive(Serialize)]
struct Summary {
    table1: usize,
    table2: usize,
    table3: usize,
    fibrations: usize,
    failures: usize,
}

fn all_rows(table: u8) -> Result<Vec<(u8, Params)>, Error> {
    (1..=transitivity::table_len(table))
        .map(|r| transitivity::minimal_params(table, r).map(|p| (r, p)))
        .collect()
}

fn report_cmd(ctx: &mut Ctx, out: Option<PathBuf>, csv: bool) -> Result<bool, Error> {
    let dir = report::report_dir(out.as_deref());
    let t1 = verify_rows(1, &all_rows(1)?)?;
    let t2 = verify_rows(2, &all_rows(2)?)?;
    let t3 = verify_table3_rows(
        &(1..=TABLE3_LEN)
            .map(|r| duality::table3_minimal_params(r).map(|p| (r, p)))
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    let fibs: Vec<EinsteinRecord> = FibrationId::ALL
        .par_iter()
        .map(|&id| {
            let params = fibration_params(id, None, None)?;
            let fib = einstein::build_fibration(id, params)?;
            let l = einstein::lambda_values(&fib)?;
            let t0 = einstein::t_zero_from(&l, fib.a_tensor_vanishes());
            let found = einstein::einstein_scan(&fib, None)?;
            let mut expected = BTreeSet::from([Q::ONE]);
            expected.extend(t0.clone());
            Ok(EinsteinRecord {
                fibration: id,
                params,
                total_space: fib.total_space.clone(),
                base_space: fib.base_space.clone(),
                fibre_dim: fib.fibre_dim(),
                lambda_base: l.lambda_base,
                lambda_fibre: l.lambda_fibre,
                t_zero: t0,
                pass: found == expected,
                scan: Some(found.into_iter().collect()),
            })
        })
        .collect::<Result<_, Error>>()?;
    let io = |e: std::io::Error| Error::CheckFailed(format!("writing report: {e}"));
    let mut rows = t1.clone();
    rows.extend(t2.iter().cloned());
    report::write_json(&dir, "transitivity.json", &rows).map_err(io)?;
    report::write_json(&dir, "duality.json", &t3).map_err(io)?;
    report::write_json(&dir, "fibrations.json", &fibs).map_err(io)?;
    if csv {
        let text = report::rows_csv(&rows).map_err(io)?;
        std::fs::write(dir.join("tables.csv"), text).map_err(io)?;
    }
    let failures = rows.iter().filter(|r| !r.pass).count() + t3.iter().filter(|r| !r.pass).count() + fibs.iter().filter(|f| !f.pass).count();
    let summary = Summary {
        table1: t1.len(),
        table2: t2.len(),
        table3: t3.len(),
        fibrations: fibs.len(),
        failures,
    };
    ctx.emit(&summary, |_| {
        format!(
            "wrote {}: table 1 {} rows, table 2 {} rows, table 3 {} rows, {} fibrations, {} failures",
            dir.display(),
            summary.table1,
            summary.table2,
            summary.table3,
            summary.fibrations,
            failures
        )
    });
    Ok(failures == 0)
}
