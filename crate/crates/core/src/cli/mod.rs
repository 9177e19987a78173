//! The `zariski` command line. The binary only calls [`run`].
//!
//! Exit codes: 0 success, 1 counterexample, 2 usage or schema error,
//! 3 cap exceeded.

mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{build_ag, build_ag_star, build_g_tau, metrics, to_dot, to_json, Format, Graph};
use crate::spectra::ZariskiSpace;
use crate::verifier::{
    check, sweep, Evaluation, Family, Instance, ModuleData, SweepOptions, SweepSummary, TheoremId,
};

pub use input::{CapArgs, CapsFile, InstanceArgs, InstanceFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "zariski",
    version,
    about = "Zariski topology-graphs of finite modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Machine-readable output where a text form exists.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Reserved for randomized sweep subsampling; sweeps are exhaustive.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spec(M), T, Min(T), ∩T, Q and M/Q.
    Spec(InstanceArgs),
    /// One graph as DOT or JSON.
    Graph {
        which: Which,
        #[command(flatten)]
        instance: InstanceArgs,
        /// `dot` or `json`
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Exact metrics of one graph as JSON.
    Metrics {
        #[arg(default_value = "g-tau")]
        which: Which,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Theorem checks on one instance or a sweep; JSON lines and a summary.
    Verify {
        /// Theorem ids such as `T4.4`; repeatable, default all.
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        /// `zn:A..B` or `products:max=N`.
        #[arg(long)]
        sweep: Option<String>,
        /// In sweeps, print passing and inapplicable reports too.
        #[arg(long)]
        all_reports: bool,
        /// Add per-report timings.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// All three graphs, to stdout or one file per graph in `--out`.
    Export {
        #[command(flatten)]
        instance: InstanceArgs,
        /// `dot` or `json`
        #[arg(long, default_value = "json")]
        format: String,
        /// Directory for g-tau, ag and ag-star files
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    GTau,
    Ag,
    AgStar,
}

impl Which {
    const ALL: [Which; 3] = [Which::GTau, Which::Ag, Which::AgStar];

    fn name(self) -> &'static str {
        match self {
            Which::GTau => "g-tau",
            Which::Ag => "ag",
            Which::AgStar => "ag-star",
        }
    }
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            if e.is_cap() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}

/// Runs a parsed command line, writing everything but errors to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Spec(args) => {
            let inst = args.resolve(&cli.caps)?;
            let v = spec_listing(&inst)?;
            if cli.json {
                emit(out, &serde_json::to_string(&v).expect("json"))?;
            } else {
                emit(out, &spec_text(&v))?;
            }
            Ok(EXIT_OK)
        }
        Command::Graph {
            which,
            instance,
            format,
        } => {
            let format: Format = format.parse()?;
            let inst = instance.resolve(&cli.caps)?;
            let g = build(&inst, *which)?;
            match format {
                Format::Dot => emit(out, to_dot(&g).trim_end())?,
                Format::Json => emit(
                    out,
                    &serde_json::to_string(&to_json(&g, None)).expect("json"),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Metrics { which, instance } => {
            let inst = instance.resolve(&cli.caps)?;
            let g = build(&inst, *which)?;
            let m = metrics(&g, inst.caps.max_chi_vertices)?;
            emit(out, &serde_json::to_string(&m).expect("json"))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            theorems,
            sweep: family,
            all_reports,
            timing,
            instance,
        } => {
            let theorems = parse_theorems(theorems)?;
            match family {
                Some(f) => {
                    if instance.has_any() {
                        return Err(Error::Schema("--sweep does not take an instance".into()));
                    }
                    let family: Family = f.parse()?;
                    verify_sweep(cli, &family, theorems, *all_reports, *timing, out)
                }
                None => verify_one(&instance.resolve(&cli.caps)?, &theorems, *timing, out),
            }
        }
        Command::Export {
            instance,
            format,
            out: dir,
        } => {
            let format: Format = format.parse()?;
            let inst = instance.resolve(&cli.caps)?;
            export(&inst, format, dir.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::Schema(format!("cannot write output: {e}")))
}

fn parse_theorems(ids: &[String]) -> Result<Vec<TheoremId>> {
    if ids.is_empty() {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for id in ids.iter().flat_map(|s| s.split(',')) {
        let t: TheoremId = id.trim().parse()?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

fn build(inst: &Instance, which: Which) -> Result<Graph> {
    let data = ModuleData::new(inst)?;
    Ok(match which {
        Which::GTau => {
            let t = inst.resolve_t(data.space())?;
            build_g_tau(data.space(), &t)
        }
        Which::Ag => build_ag(data.space()),
        Which::AgStar => build_ag_star(data.space()),
    })
}

fn spec_listing(inst: &Instance) -> Result<Value> {
    let m = inst.build_module()?;
    let space = ZariskiSpace::new(m, &inst.caps)?;
    let t = inst.resolve_t(&space)?;
    let ctx = space.t_context(&t)?;
    let min_t = space.min_members(&t);
    let m = space.module();
    let primes: Vec<Value> = (0..space.spec_len())
        .map(|p| {
            json!({
                "index": p,
                "prime": space.label(space.prime(p)),
                "colon": m.colon(space.prime(p)).divisors(),
            })
        })
        .collect();
    Ok(json!({
        "instance": inst.describe(),
        "order": m.order(),
        "submodules": space.lattice().len(),
        "annihilator": m.annihilator().divisors(),
        "spec": primes,
        "T": t.positions(),
        "min_T": min_t.positions(),
        "meet_T": space.label(&ctx.meet),
        "Q": space.label(&ctx.q),
        "quotient_order": ctx.quotient.order(),
        "quotient_faithful": ctx.quotient.is_faithful(),
    }))
}

fn spec_text(v: &Value) -> String {
    let list = |key: &str| -> String {
        let ids: Vec<String> = v[key]
            .as_array()
            .expect("index list")
            .iter()
            .map(|i| format!("P{i}"))
            .collect();
        format!("{{{}}}", ids.join(", "))
    };
    let mut s = format!(
        "{}\n|M| = {}, {} submodules, Ann(M) = {}\nSpec(M): {} prime(s)\n",
        v["instance"].as_str().expect("instance"),
        v["order"],
        v["submodules"],
        ideal_text(&v["annihilator"]),
        v["spec"].as_array().expect("spec").len()
    );
    for p in v["spec"].as_array().expect("spec") {
        s.push_str(&format!(
            "  P{} = {}  (P:M) = {}\n",
            p["index"],
            p["prime"].as_str().expect("label"),
            ideal_text(&p["colon"])
        ));
    }
    s.push_str(&format!(
        "T = {}\nMin(T) = {}\n∩T = {}\nQ = {}\nM/Q: order {}, {}",
        list("T"),
        list("min_T"),
        v["meet_T"].as_str().expect("meet"),
        v["Q"].as_str().expect("Q"),
        v["quotient_order"],
        if v["quotient_faithful"] == json!(true) {
            "faithful"
        } else {
            "not faithful"
        }
    ));
    s
}

fn ideal_text(divisors: &Value) -> String {
    let d: Vec<String> = divisors
        .as_array()
        .expect("divisors")
        .iter()
        .map(|x| x.to_string())
        .collect();
    format!("({})", d.join(","))
}

fn verify_one(
    inst: &Instance,
    theorems: &[TheoremId],
    timing: bool,
    out: &mut dyn Write,
) -> Result<u8> {
    let data = ModuleData::new(inst)?;
    let ev = Evaluation::new(&data, inst.clone())?;
    let mut summary = SweepSummary {
        modules: 1,
        instances: 1,
        ..SweepSummary::default()
    };
    for &th in theorems {
        let r = check(th, &ev, timing);
        summary.add(&r);
        emit(out, &serde_json::to_string(&r).expect("json"))?;
    }
    finish(out, &summary)
}

fn verify_sweep(
    cli: &Cli,
    family: &Family,
    theorems: Vec<TheoremId>,
    all_reports: bool,
    timing: bool,
    out: &mut dyn Write,
) -> Result<u8> {
    let opts = SweepOptions {
        theorems,
        caps: cli.caps.apply(&CapsFile::default()),
        jobs: cli.jobs,
        timing,
    };
    let mut write_err = None;
    let summary = sweep(
        family,
        &opts,
        &mut |r| {
            if write_err.is_none() && (all_reports || r.is_counterexample() || r.skipped.is_some())
            {
                if let Err(e) = emit(out, &serde_json::to_string(r).expect("json")) {
                    write_err = Some(e);
                }
            }
        },
        None,
    )?;
    if let Some(e) = write_err {
        return Err(e);
    }
    finish(out, &summary)
}

fn finish(out: &mut dyn Write, summary: &SweepSummary) -> Result<u8> {
    emit(
        out,
        &serde_json::to_string(&json!({ "summary": summary })).expect("json"),
    )?;
    Ok(if summary.failed > 0 {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    })
}

fn export(
    inst: &Instance,
    format: Format,
    dir: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let mut parts = Vec::new();
    for which in Which::ALL {
        let g = build(inst, which)?;
        let text = match format {
            Format::Dot => {
                to_dot(&g).replacen("graph G", &format!("graph \"{}\"", which.name()), 1)
            }
            Format::Json => {
                let m = metrics(&g, inst.caps.max_chi_vertices)?;
                serde_json::to_string_pretty(&to_json(&g, Some(&m))).expect("json") + "\n"
            }
        };
        parts.push((which, text));
    }
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| Error::Schema(format!("cannot create {}: {e}", dir.display())))?;
            let ext = if format == Format::Dot { "dot" } else { "json" };
            for (which, text) in &parts {
                let path = dir.join(format!("{}.{ext}", which.name()));
                std::fs::write(&path, text)
                    .map_err(|e| Error::Schema(format!("cannot write {}: {e}", path.display())))?;
                emit(out, &path.display().to_string())?;
            }
        }
        None if format == Format::Dot => {
            for (_, text) in &parts {
                emit(out, text.trim_end())?;
            }
        }
        None => {
            let mut all = serde_json::Map::new();
            all.insert("instance".into(), json!(inst.describe()));
            for (which, text) in &parts {
                all.insert(
                    which.name().into(),
                    serde_json::from_str(text).expect("json"),
                );
            }
            emit(
                out,
                &serde_json::to_string_pretty(&Value::Object(all)).expect("json"),
            )?;
        }
    }
    Ok(())
}
