use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dwinv_core::braid::{
    closure_structure, framed_invariant, framing_correction, parse_braid, BraidWord, ColoredBraid,
};
use dwinv_core::cocycle::CocycleParams;
use dwinv_core::double::{twist, DoubleModel};
use dwinv_core::group::GroupSpec;
use dwinv_core::modular::derived::{lens_space_engine, lens_space_invariant};
use dwinv_core::modular::search::{equivalence_classes, equivalence_search, obstruction, Invariants};
use dwinv_core::modular::wmatrix::{ba_closed_form, w_identities, whitehead_b5};
use dwinv_core::modular::{check_modularity, fusion_table, w_matrix_from, Matrix, ModularData, WMatrix};
use dwinv_core::quandle::single_color_check;
use dwinv_core::{CycloNumber, Error};

#[derive(Parser)]
#[command(name = "dwinv", version, about = "Modular data, W-matrices and colored link invariants of D^w(Z_q x| Z_p)")]
struct Cli {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, default_value_t = 11, global = true)]
    q: u32,
    #[arg(long, default_value_t = 5, global = true)]
    p: u32,
    #[arg(long, default_value_t = 4, global = true)]
    n: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Simple objects with dimensions and twists.
    Anyons {
        #[arg(long, default_value_t = 1)]
        u: u32,
    },
    /// S and T with the modularity and Verlinde checks.
    Modular {
        #[arg(long, num_args = 1.., default_values_t = [1])]
        u: Vec<u32>,
    },
    /// Whitehead W-matrix with its identities and the closed form of the B-A block.
    Wmatrix {
        #[arg(long, num_args = 1.., default_values_t = [1])]
        u: Vec<u32>,
        /// Defaults to s2^-2 s1 s2^-1 s1.
        #[arg(long)]
        braid: Option<String>,
    },
    /// Framed and 0-framed invariants of a colored braid closure.
    Invariant {
        #[arg(long, default_value_t = 1)]
        u: u32,
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: usize,
        /// One label per strand, or one per closure component.
        #[arg(long, num_args = 1.., required = true)]
        colors: Vec<String>,
    },
    /// Compares a closure colored by one B object with the quandle coloring count.
    Quandle {
        #[arg(long, default_value_t = 1)]
        u: u32,
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// Searches for relabelings between the categories for different u.
    Distinguish {
        #[arg(long, num_args = 2, conflicts_with = "all")]
        u: Option<Vec<u32>>,
        #[arg(long)]
        all: bool,
        /// Compare (S, T) only.
        #[arg(long)]
        st_only: bool,
    },
    /// Lens space invariant Z(L(p,q)).
    Lens {
        #[arg(long, default_value_t = 1)]
        u: u32,
        #[arg(long, allow_negative_numbers = true)]
        lp: i64,
        #[arg(long, allow_negative_numbers = true)]
        lq: i64,
        /// Also evaluate the surgery chain with the braid engine.
        #[arg(long)]
        engine: bool,
    },
}

enum Failure {
    Core(Error),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(m) => Failure::Verification(m),
            e => Failure::Core(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Exact string plus a float approximation.
fn exact(x: &CycloNumber) -> Value {
    let z = x.to_float();
    json!({ "exact": x.to_string(), "approx": [z.re, z.im] })
}

fn model(g: &GroupArgs, u: u32) -> Outcome<DoubleModel> {
    let spec = GroupSpec::new(g.q, g.p, g.n)?;
    Ok(DoubleModel::new(CocycleParams::new(spec, u)?))
}

struct Output<'a> {
    format: Format,
    out: Option<&'a Path>,
}

impl Output<'_> {
    fn path_for(&self, suffix: Option<&str>) -> Option<PathBuf> {
        let out = self.out?;
        Some(match suffix {
            None => out.to_path_buf(),
            Some(sfx) => {
                let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let name = match out.extension() {
                    Some(ext) => format!("{stem}_{sfx}.{}", ext.to_string_lossy()),
                    None => format!("{stem}_{sfx}"),
                };
                out.with_file_name(name)
            }
        })
    }

    fn write(&self, suffix: Option<&str>, bytes: &[u8]) -> Outcome<()> {
        match self.path_for(suffix) {
            Some(p) => fs::write(p, bytes)?,
            None => io::stdout().write_all(bytes)?,
        }
        Ok(())
    }

    fn json<T: Serialize>(&self, value: &T) -> Outcome<()> {
        let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
        s.push('\n');
        self.write(None, s.as_bytes())
    }

    /// Rows in CSV, or the JSON value when the format is JSON.
    fn table(&self, suffix: Option<&str>, header: &[&str], rows: &[Vec<String>], value: &Value) -> Outcome<()> {
        match self.format {
            Format::Json => self.json(value),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header)?;
                for r in rows {
                    w.write_record(r)?;
                }
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                self.write(suffix, &bytes)
            }
        }
    }
}

fn matrix_rows(labels: &[String], m: &Matrix) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = vec![String::new()];
    header.extend(labels.iter().cloned());
    let rows = labels
        .iter()
        .zip(m)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().map(ToString::to_string)).collect())
        .collect();
    (header, rows)
}

fn cmd_anyons(g: &GroupArgs, u: u32, out: &Output) -> Outcome<()> {
    let m = model(g, u)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for o in m.objects() {
        let t = twist(&m, o.index);
        let (num, den) = t.fraction();
        rows.push(vec![o.label.clone(), o.dim().to_string(), format!("{num}/{den}")]);
        items.push(json!({ "label": o.label, "dim": o.dim(), "twist": t.to_string(), "twist_fraction": [num, den] }));
    }
    let value = json!({ "q": g.q, "p": g.p, "n": g.n, "u": u, "objects": items });
    out.table(None, &["label", "dim", "twist_fraction"], &rows, &value)
}

fn cmd_modular(g: &GroupArgs, us: &[u32], out: &Output) -> Outcome<()> {
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for &u in us {
        let m = model(g, u)?;
        let md = ModularData::compute(&m);
        let report = check_modularity(&md);
        let fusion = fusion_table(&md);
        let fusion_ok = fusion.as_ref().is_ok_and(|f| f.respects_dimensions(&md.dims));
        if !report.holds() || !fusion_ok {
            failures.push(format!("u = {u}: modularity {}, fusion {}", report.holds(), fusion_ok));
        }
        if out.format == Format::Csv {
            let (header, rows) = matrix_rows(&md.labels, &md.s);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let sfx = format!("S_u{u}");
            out.table((us.len() > 1).then_some(sfx.as_str()), &header, &rows, &Value::Null)?;
        }
        results.push(json!({
            "u": u,
            "modular_data": md,
            "report": report,
            "verlinde_certified": fusion.is_ok(),
            "fusion_respects_dimensions": fusion_ok,
        }));
    }
    if out.format == Format::Json {
        out.json(&json!({ "results": results }))?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures.join("; ")))
    }
}

fn cmd_wmatrix(g: &GroupArgs, us: &[u32], braid: Option<&str>, out: &Output) -> Outcome<()> {
    let word = match braid {
        Some(text) => parse_braid(text, 3)?,
        None => whitehead_b5(),
    };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for &u in us {
        let m = model(g, u)?;
        let md = ModularData::compute(&m);
        let wm = w_matrix_from(&m, &word)?;
        let duals = md
            .duals()
            .ok_or_else(|| Failure::Verification(format!("u = {u}: S² is not a permutation")))?;
        let identities = w_identities(&md, &wm, &duals);
        let mut ba_checked = 0;
        let mut ba_failures = Vec::new();
        for b in 0..md.rank() {
            for a in 0..md.rank() {
                if let Some(expect) = ba_closed_form(&m, b, a) {
                    ba_checked += 1;
                    if wm.w[b][a] != expect {
                        ba_failures.push((md.labels[b].clone(), md.labels[a].clone()));
                    }
                }
            }
        }
        if !identities.holds() || !ba_failures.is_empty() {
            failures.push(format!(
                "u = {u}: identities {}, closed form mismatches {}",
                identities.holds(),
                ba_failures.len()
            ));
        }
        if out.format == Format::Csv {
            let (header, rows) = matrix_rows(&md.labels, &wm.w);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let sfx = format!("W_u{u}");
            out.table((us.len() > 1).then_some(sfx.as_str()), &header, &rows, &Value::Null)?;
        }
        results.push(json!({
            "u": u,
            "labels": md.labels,
            "wmatrix": wm,
            "identities": identities,
            "ba_closed_form": { "checked": ba_checked, "mismatches": ba_failures },
        }));
    }
    if out.format == Format::Json {
        out.json(&json!({ "results": results }))?;
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures.join("; ")))
    }
}

fn colored_braid(m: &DoubleModel, word: BraidWord, labels: &[String]) -> Outcome<ColoredBraid> {
    let colors = labels.iter().map(|l| m.find(l)).collect::<Result<Vec<_>, _>>()?;
    let comps = closure_structure(&word).components.len();
    if colors.len() == word.strands() {
        Ok(ColoredBraid::new(m, word, colors)?)
    } else if colors.len() == comps {
        Ok(ColoredBraid::from_components(m, word, &colors)?)
    } else {
        Err(Error::InvalidInput(format!(
            "{} colors for {} strands and {comps} components",
            colors.len(),
            word.strands()
        ))
        .into())
    }
}

fn cmd_invariant(g: &GroupArgs, u: u32, braid: &str, strands: usize, labels: &[String], out: &Output) -> Outcome<()> {
    let m = model(g, u)?;
    let word = parse_braid(braid, strands)?;
    let colored = colored_braid(&m, word, labels)?;
    let cs = closure_structure(colored.word());
    let framed = framed_invariant(&m, &colored);
    let zero = framed.mul_unit(framing_correction(&m, &colored));
    let colors: Vec<&str> = colored.colors().iter().map(|&c| m.objects()[c].label.as_str()).collect();
    let value = json!({
        "u": u,
        "braid": colored.word().to_string(),
        "colors": colors,
        "components": cs.components,
        "writhe": cs.writhe,
        "framed": exact(&framed),
        "zero_framed": exact(&zero),
    });
    let rows = vec![
        vec!["framed".to_string(), framed.to_string()],
        vec!["zero_framed".to_string(), zero.to_string()],
    ];
    out.table(None, &["quantity", "exact"], &rows, &value)
}

fn cmd_quandle(g: &GroupArgs, u: u32, braid: &str, strands: usize, k: u32, s: u32, out: &Output) -> Outcome<()> {
    let m = model(g, u)?;
    let word = parse_braid(braid, strands)?;
    let r = single_color_check(&m, &word, k, s)?;
    let value = json!({
        "u": u,
        "braid": word.to_string(),
        "label": r.label,
        "writhe": r.writhe,
        "coloring_count": r.coloring_count,
        "framed": exact(&r.framed),
        "predicted": exact(&r.predicted),
        "holds": r.holds,
    });
    let rows = vec![vec![
        r.label.clone(),
        r.writhe.to_string(),
        r.coloring_count.to_string(),
        r.framed.to_string(),
        r.holds.to_string(),
    ]];
    out.table(None, &["label", "writhe", "coloring_count", "framed", "holds"], &rows, &value)?;
    if r.holds {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{}: framed invariant differs from θ^writhe · count", r.label)))
    }
}

struct Computed {
    md: ModularData,
    w: Option<WMatrix>,
}

fn compute_all(g: &GroupArgs, us: &[u32], with_w: bool) -> Outcome<Vec<Computed>> {
    us.iter()
        .map(|&u| {
            let m = model(g, u)?;
            let md = ModularData::compute(&m);
            let w = if with_w { Some(w_matrix_from(&m, &whitehead_b5())?) } else { None };
            Ok(Computed { md, w })
        })
        .collect()
}

fn invariants(c: &Computed) -> Invariants<'_> {
    Invariants { md: &c.md, w: c.w.as_ref() }
}

/// `(B_{1,0}, A_{1,4})` first, then any pair that yields a contradiction.
fn find_obstruction(x: &Computed, y: &Computed) -> Option<Value> {
    let (wx, wy) = (x.w.as_ref()?, y.w.as_ref()?);
    let n = x.md.rank();
    let preferred = match (x.md.find("B_{1,0}"), x.md.find("A_{1,4}")) {
        (Some(b), Some(a)) => vec![(b, a)],
        _ => Vec::new(),
    };
    let all = (1..n).flat_map(|a| (1..n).map(move |t| (a, t)));
    for (anchor, target) in preferred.into_iter().chain(all) {
        let ob = obstruction(&x.md, wx, &y.md, wy, anchor, target);
        if ob.contradiction && !ob.anchor_images.is_empty() && !ob.t_allowed.is_empty() {
            return serde_json::to_value(ob).ok();
        }
    }
    None
}

fn cmd_distinguish(g: &GroupArgs, pair: Option<&[u32]>, all: bool, st_only: bool, out: &Output) -> Outcome<()> {
    let p = g.p;
    let us: Vec<u32> = match pair {
        Some(pair) if !all => pair.to_vec(),
        _ => (0..p).collect(),
    };
    let data = compute_all(g, &us, !st_only)?;
    let value = if us.len() == 2 && !all {
        let r = equivalence_search(&invariants(&data[0]), &invariants(&data[1]));
        let verdict = if r.equivalent { "EQUIVALENT" } else { "NOT-EQUIVALENT" };
        let ob = if r.equivalent { None } else { find_obstruction(&data[0], &data[1]) };
        json!({
            "u": us,
            "invariants": if st_only { "S,T" } else { "S,T,W" },
            "verdict": verdict,
            "witness": r.witness.map(|w| w.iter().map(|&b| data[1].md.labels[b].clone()).collect::<Vec<_>>()),
            "reason": r.reason,
            "nodes": r.nodes,
            "obstruction": ob,
        })
    } else {
        let items: Vec<Invariants> = data.iter().map(invariants).collect();
        let classes: Vec<Vec<u32>> = equivalence_classes(&items)
            .into_iter()
            .map(|c| c.into_iter().map(|i| us[i]).collect())
            .collect();
        json!({
            "invariants": if st_only { "S,T" } else { "S,T,W" },
            "u": us,
            "classes": classes,
        })
    };
    match out.format {
        Format::Json => out.json(&value),
        Format::Csv => {
            let rows: Vec<Vec<String>> = match value.get("classes") {
                Some(Value::Array(cs)) => cs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]).collect(),
                _ => vec![vec!["0".into(), value["verdict"].to_string()]],
            };
            out.table(None, &["class", "members"], &rows, &value)
        }
    }
}

fn cmd_lens(g: &GroupArgs, u: u32, lp: i64, lq: i64, engine: bool, out: &Output) -> Outcome<()> {
    let m = model(g, u)?;
    let md = ModularData::compute(&m);
    let v = lens_space_invariant(&md, lp, lq)?;
    let engine_value = if engine { Some(lens_space_engine(&m, &md, lp, lq)?) } else { None };
    let agrees = engine_value.as_ref().map(|e| *e == v.value);
    let value = json!({
        "u": u,
        "p": lp,
        "q": lq,
        "continued_fraction": v.continued_fraction,
        "expansion": "p/q = a_n - 1/(a_{n-1} - ... - 1/a_1), listed a_1..a_n",
        "signature": v.signature,
        "value": exact(&v.value),
        "engine": engine_value.as_ref().map(exact),
        "engine_agrees": agrees,
    });
    let rows = vec![vec![lp.to_string(), lq.to_string(), v.signature.to_string(), v.value.to_string()]];
    out.table(None, &["p", "q", "signature", "value"], &rows, &value)?;
    match agrees {
        Some(false) => Err(Failure::Verification("braid-engine chain value differs".into())),
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    let out = Output { format: cli.format, out: cli.out.as_deref() };
    // Validate the group before dispatching.
    GroupSpec::new(cli.group.q, cli.group.p, cli.group.n)?;
    let g = &cli.group;
    match &cli.command {
        Command::Anyons { u } => cmd_anyons(g, *u, &out),
        Command::Modular { u } => cmd_modular(g, u, &out),
        Command::Wmatrix { u, braid } => cmd_wmatrix(g, u, braid.as_deref(), &out),
        Command::Invariant { u, braid, strands, colors } => cmd_invariant(g, *u, braid, *strands, colors, &out),
        Command::Quandle { u, braid, strands, k, s } => cmd_quandle(g, *u, braid, *strands, *k, *s, &out),
        Command::Distinguish { u, all, st_only } => cmd_distinguish(g, u.as_deref(), *all, *st_only, &out),
        Command::Lens { u, lp, lq, engine } => cmd_lens(g, *u, *lp, *lq, *engine, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidSpec(_) => 2,
                Error::InconsistentColoring { .. } => 3,
                _ => 1,
            })
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(4)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
