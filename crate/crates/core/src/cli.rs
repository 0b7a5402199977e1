//! Command-line front end.
//!
//! Every command prints one [`CommandResult`], as JSON or as a plain table.
//! Exit codes: 0 success, 2 invalid input, 3 budget exhausted, 4 internal
//! invariant violation.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, fig1_reported_divergence, CatalogEntry, FIG1_FAMILY};
use crate::error::{Error, Result};
use crate::homotopy::{class_fixed_stats, homotopy_class, is_contractible, is_deformation_retract, is_rigid, RigidSubject};
use crate::image::{kappa_count, DigitalImage, PointId};
use crate::invariants::{
    coincidence_spectrum, common_fixed_spectrum, divergence_degree, fixed_point_spectrum, has_fpp,
    homotopy_coincidence_spectrum, homotopy_common_fixed_spectrum, min_numbers, restricted_divergence, MinKind, Spectrum,
};
use crate::iso::are_isomorphic;
use crate::map::{continuity_oracle, is_continuous, DigitalMap, MapDescription};
use crate::search::{count_continuous_maps, default_parallelism, find_retraction, SearchBudget, SearchStats, DEFAULT_MAX_NODES};
use crate::suite::property_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "digitop", version, about = "Coincidence and fixed point invariants of digital images")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Catalog key, image JSON file, or inline image JSON.
    #[arg(long, global = true)]
    image: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    budget_nodes: u64,
    #[arg(long, global = true)]
    max_seconds: Option<f64>,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SpectrumKind {
    Fix,
    Cs,
    Cfs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MinArg {
    Mc,
    McStar,
    Mcf,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// `id`, `const:<i>`, `rot:<k>`, a catalog map name, a map JSON file or inline JSON.
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, adjacency and connectivity of the image.
    Info,
    /// Whether a map is continuous.
    Continuity {
        #[arg(long)]
        f: String,
        /// Also run the connected-subset oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Number of continuous maps from the image to a target (itself by default).
    CountMaps {
        #[arg(long)]
        target: Option<String>,
    },
    /// Fixed point, coincidence or common fixed point spectrum.
    Spectrum {
        #[arg(value_enum)]
        kind: SpectrumKind,
    },
    /// Homotopy class of a map with its fixed point statistics.
    Class {
        #[arg(long)]
        f: String,
        /// Print every member.
        #[arg(long)]
        list: bool,
    },
    /// Homotopy coincidence spectrum; `--star` keeps the second map fixed.
    Hcs {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        star: bool,
    },
    /// Homotopy common fixed point spectrum.
    Hfs {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Minimum coincidence or common fixed point number.
    Min {
        #[arg(value_enum)]
        kind: MinArg,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Rigidity of a map, or of the image when no map is given.
    Rigid {
        #[arg(long)]
        f: Option<String>,
    },
    /// Whether the identity is homotopic to a constant.
    Contractible,
    /// Search for a retraction onto a subset.
    Retract {
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Whether a subset is a deformation retract.
    DefRetract {
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Isomorphism test against another image.
    Iso {
        #[arg(long)]
        other: String,
    },
    /// Fixed point property.
    Fpp,
    /// Divergence degree at one point, or at every point.
    Divergence {
        /// Zero-based point index.
        #[arg(long, conflicts_with = "label")]
        point: Option<usize>,
        /// One-based label (`fig1` numbering).
        #[arg(long)]
        label: Option<usize>,
        /// Restrict both maps to a family: `paper` for the bundled fig1
        /// maps, or a comma-separated list of map specs.
        #[arg(long)]
        family: Option<String>,
    },
    /// Property suite.
    Suite,
}

/// Output of one command.
#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub op: String,
    pub inputs: Value,
    pub result: Value,
    pub stats: Option<SearchStats>,
    pub exit_status: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted(_) => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// result to `out`. Returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let format = cli.global.format;
    let res = execute(&cli);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&res).expect("command result serializes") + "\n",
        Format::Table => render_table(&res),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_INVALID;
    }
    res.exit_status
}

fn op_name(c: &Command) -> &'static str {
    match c {
        Command::Info => "info",
        Command::Continuity { .. } => "continuity",
        Command::CountMaps { .. } => "count-maps",
        Command::Spectrum { .. } => "spectrum",
        Command::Class { .. } => "class",
        Command::Hcs { .. } => "hcs",
        Command::Hfs { .. } => "hfs",
        Command::Min { .. } => "min",
        Command::Rigid { .. } => "rigid",
        Command::Contractible => "contractible",
        Command::Retract { .. } => "retract",
        Command::DefRetract { .. } => "def-retract",
        Command::Iso { .. } => "iso",
        Command::Fpp => "fpp",
        Command::Divergence { .. } => "divergence",
        Command::Suite => "suite",
    }
}

/// Echo of the inputs that determine the result. Worker count and time
/// limit are left out so that output does not depend on them.
fn inputs_echo(cli: &Cli) -> Value {
    let mut v = json!({
        "image": cli.global.image,
        "budget_nodes": cli.global.budget_nodes,
    });
    let extra = match &cli.command {
        Command::Continuity { f, oracle } => json!({ "f": f, "oracle": oracle }),
        Command::CountMaps { target } => json!({ "target": target }),
        Command::Spectrum { kind } => json!({ "kind": kind }),
        Command::Class { f, list } => json!({ "f": f, "list": list }),
        Command::Hcs { pair, star } => json!({ "f": pair.f, "g": pair.g, "star": star }),
        Command::Hfs { pair } => json!({ "f": pair.f, "g": pair.g }),
        Command::Min { kind, pair } => json!({ "kind": min_kind(*kind), "f": pair.f, "g": pair.g }),
        Command::Rigid { f } => json!({ "f": f }),
        Command::Retract { subset } | Command::DefRetract { subset } => json!({ "subset": subset }),
        Command::Iso { other } => json!({ "other": other }),
        Command::Divergence { point, label, family } => json!({ "point": point, "label": label, "family": family }),
        Command::Suite => json!({ "seed": cli.global.seed }),
        Command::Info | Command::Contractible | Command::Fpp => json!({}),
    };
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn execute(cli: &Cli) -> CommandResult {
    let op = op_name(&cli.command).to_string();
    let inputs = inputs_echo(cli);
    match dispatch(cli) {
        Ok(out) => CommandResult { op, inputs, result: out.result, stats: out.stats, exit_status: out.status },
        Err(e) => {
            let stats = match &e {
                Error::BudgetExhausted(s) => Some(s.clone()),
                _ => None,
            };
            let status = exit_code(&e);
            CommandResult { op, inputs, result: json!({ "error": e.to_string() }), stats, exit_status: status }
        }
    }
}

struct Output {
    result: Value,
    stats: Option<SearchStats>,
    status: i32,
}

impl Output {
    fn new(result: Value, stats: Option<SearchStats>) -> Output {
        Output { result, stats, status: EXIT_OK }
    }

    fn spectrum(s: &Spectrum, stats: SearchStats, extra: Value) -> Output {
        let mut result = json!({ "values": s.values, "complete": s.complete });
        if let (Value::Object(m), Value::Object(e)) = (&mut result, extra) {
            m.extend(e);
        }
        let status = if s.complete { EXIT_OK } else { EXIT_BUDGET };
        Output { result, stats: Some(stats), status }
    }
}

fn budget(g: &Global) -> Result<SearchBudget> {
    let b = SearchBudget {
        max_nodes: g.budget_nodes,
        max_results: None,
        max_seconds: g.max_seconds,
        parallelism: g.parallelism.unwrap_or_else(default_parallelism),
    };
    b.validate()?;
    Ok(b)
}

/// A catalog key, a JSON file path, or inline JSON.
pub fn load_image(spec: &str) -> Result<Arc<DigitalImage>> {
    if catalog::is_catalog_key(spec) {
        return catalog::load_key(spec);
    }
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else if Path::new(spec).is_file() {
        std::fs::read_to_string(spec)?
    } else {
        return Err(Error::UnknownCatalogKey(spec.to_string()));
    };
    Ok(Arc::new(DigitalImage::from_json(&text)?))
}

struct Loaded {
    image: Arc<DigitalImage>,
    entry: Option<CatalogEntry>,
}

fn loaded(g: &Global) -> Result<Loaded> {
    let spec = g.image.as_deref().ok_or_else(|| Error::Precondition("--image is required".into()))?;
    if catalog::is_catalog_key(spec) {
        let entry = catalog::catalog_get(spec)?;
        return Ok(Loaded { image: entry.image.clone(), entry: Some(entry) });
    }
    Ok(Loaded { image: load_image(spec)?, entry: None })
}

fn parse_index(spec: &str, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::InvalidMap(format!("bad map spec `{spec}`")))
}

/// `id`, `const:<i>`, `rot:<k>` (cycles), a bundled map name, or map JSON.
pub fn parse_map(spec: &str, image: &Arc<DigitalImage>, entry: Option<&CatalogEntry>) -> Result<DigitalMap> {
    if spec == "id" {
        return Ok(DigitalMap::identity(image));
    }
    if let Some(i) = spec.strip_prefix("const:") {
        return DigitalMap::constant(image, image, PointId(parse_index(spec, i)?));
    }
    if let Some(k) = spec.strip_prefix("rot:") {
        if !image.name().is_some_and(|n| n.starts_with("cycle:")) {
            return Err(Error::InvalidMap("rotations are defined on cycle images only".into()));
        }
        return Ok(DigitalMap::rotation(image, parse_index(spec, k)?));
    }
    if let Some(f) = entry.and_then(|e| e.map(spec)) {
        return Ok(f.clone());
    }
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else if Path::new(spec).is_file() {
        std::fs::read_to_string(spec)?
    } else {
        return Err(Error::InvalidMap(format!("unknown map `{spec}`")));
    };
    let desc: MapDescription = serde_json::from_str(&text)?;
    let f = desc.build(catalog::load_key)?;
    if **f.source() != **image {
        return Err(Error::ImageMismatch("map source differs from --image".into()));
    }
    Ok(f)
}

fn min_kind(k: MinArg) -> MinKind {
    match k {
        MinArg::Mc => MinKind::Mc,
        MinArg::McStar => MinKind::McStar,
        MinArg::Mcf => MinKind::Mcf,
    }
}

fn points_of(x: &DigitalImage, subset: &[usize]) -> Result<Vec<PointId>> {
    subset.iter().map(|&p| x.check_point(PointId(p)).map(PointId)).collect()
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let b = budget(g)?;
    let Loaded { image: x, entry } = loaded(g)?;
    let map = |s: &str| parse_map(s, &x, entry.as_ref());
    Ok(match &cli.command {
        Command::Info => {
            let conn = x.connectivity();
            let degrees: Vec<usize> = (0..x.size()).map(|p| x.degree(p)).collect();
            let lattice = match x.lattice() {
                Some(l) => json!({ "dim": l.dim, "t": l.t, "kappa": kappa_count(l.t, l.dim)? }),
                None => Value::Null,
            };
            let maps: Vec<&str> = entry.iter().flat_map(|e| e.maps.iter().map(|(n, _)| n.as_str())).collect();
            Output::new(
                json!({
                    "name": x.name(),
                    "size": x.size(),
                    "edge_count": x.edge_count(),
                    "connected": conn.is_connected,
                    "components": conn.components.len(),
                    "degrees": degrees,
                    "lattice": lattice,
                    "maps": maps,
                }),
                None,
            )
        }
        Command::Continuity { f, oracle } => {
            let f = map(f)?;
            let mut r = json!({ "continuous": is_continuous(&f), "assign": f.assignment() });
            if *oracle {
                r["oracle"] = json!(continuity_oracle(&f)?);
            }
            Output::new(r, None)
        }
        Command::CountMaps { target } => {
            let y = match target {
                Some(t) => load_image(t)?,
                None => x.clone(),
            };
            let (n, st) = count_continuous_maps(&x, &y, &b)?;
            let status = if st.exhausted { EXIT_OK } else { EXIT_BUDGET };
            Output { result: json!({ "count": n, "complete": st.exhausted }), stats: Some(st), status }
        }
        Command::Spectrum { kind } => {
            let (s, st) = match kind {
                SpectrumKind::Fix => fixed_point_spectrum(&x, &b)?,
                SpectrumKind::Cs => coincidence_spectrum(&x, &b)?,
                SpectrumKind::Cfs => common_fixed_spectrum(&x, &b)?,
            };
            Output::spectrum(&s, st, json!({ "kind": kind }))
        }
        Command::Class { f, list } => {
            let f = map(f)?;
            let class = homotopy_class(&f, &b)?;
            let mut r = json!({ "size": class.len(), "complete": class.complete });
            if f.is_self_map() {
                let (fs, _) = class_fixed_stats(&f, &b)?;
                r["fixed"] = json!(fs);
            }
            if *list {
                r["members"] = json!(class.assignments());
            }
            let status = if class.complete { EXIT_OK } else { EXIT_BUDGET };
            Output { result: r, stats: Some(class.stats.clone()), status }
        }
        Command::Hcs { pair, star } => {
            let (s, st) = homotopy_coincidence_spectrum(&map(&pair.f)?, &map(&pair.g)?, *star, &b)?;
            Output::spectrum(&s, st, json!({ "starred": star }))
        }
        Command::Hfs { pair } => {
            let (s, st) = homotopy_common_fixed_spectrum(&map(&pair.f)?, &map(&pair.g)?, &b)?;
            Output::spectrum(&s, st, json!({}))
        }
        Command::Min { kind, pair } => {
            let k = min_kind(*kind);
            let (v, s, st) = min_numbers(&map(&pair.f)?, &map(&pair.g)?, k, &b)?;
            Output::new(json!({ "kind": k, "value": v, "spectrum": s.values }), Some(st))
        }
        Command::Rigid { f } => {
            let (rigid, subject) = match f {
                Some(f) => (is_rigid(RigidSubject::Map(&map(f)?), &b)?, "map"),
                None => (is_rigid(RigidSubject::Image(&x), &b)?, "image"),
            };
            Output::new(json!({ "rigid": rigid, "subject": subject }), None)
        }
        Command::Contractible => Output::new(json!({ "contractible": is_contractible(&x, &b)? }), None),
        Command::Retract { subset } => {
            let pts = points_of(&x, subset)?;
            let (r, st) = find_retraction(&x, &pts, &b)?;
            Output::new(
                json!({ "retract": r.is_some(), "retraction": r.as_ref().map(|r| r.assignment().to_vec()) }),
                Some(st),
            )
        }
        Command::DefRetract { subset } => {
            let pts = points_of(&x, subset)?;
            let (ok, r) = is_deformation_retract(&x, &pts, &b)?;
            Output::new(
                json!({ "deformation_retract": ok, "retraction": r.as_ref().map(|r| r.assignment().to_vec()) }),
                None,
            )
        }
        Command::Iso { other } => {
            let y = load_image(other)?;
            let (iso, st) = are_isomorphic(&x, &y, &b)?;
            Output::new(
                json!({ "isomorphic": iso.is_some(), "forward": iso.as_ref().map(|i| i.forward.clone()) }),
                Some(st),
            )
        }
        Command::Fpp => {
            let (fpp, free, st) = has_fpp(&x, &b)?;
            Output::new(
                json!({ "fpp": fpp, "fixed_point_free": free.as_ref().map(|f| f.assignment().to_vec()) }),
                Some(st),
            )
        }
        Command::Divergence { point, label, family } => {
            let point = match (point, label) {
                (Some(p), _) => Some(*p),
                (None, Some(0)) => return Err(Error::Precondition("labels start at 1".into())),
                (None, Some(l)) => Some(l - 1),
                (None, None) => None,
            };
            let targets: Vec<usize> = match point {
                Some(p) => vec![x.check_point(PointId(p))?],
                None => (0..x.size()).collect(),
            };
            match family {
                None => {
                    let mut rows = Vec::new();
                    let mut total: Option<SearchStats> = None;
                    for p in targets {
                        let (pair, st) = divergence_degree(&x, PointId(p), &b)?;
                        total = Some(total.map_or(st.clone(), |t| t.combine(&st)));
                        rows.push(json!({ "point": p, "label": p + 1, "pair": pair }));
                    }
                    Output::new(json!({ "literal": true, "points": rows }), total)
                }
                Some(fam) => {
                    let (names, maps) = family_maps(fam, &x, entry.as_ref())?;
                    let on_fig1 = x.name() == Some("fig1") && fam == "paper";
                    let mut rows = Vec::new();
                    for p in targets {
                        let r = restricted_divergence(&x, PointId(p), &maps)?;
                        let mut row = json!({
                            "point": p,
                            "label": p + 1,
                            "k": r.k,
                            "witness": [names[r.first], names[r.second]],
                            "differing_labels": r.differing.iter().map(|q| q.index() + 1).collect::<Vec<_>>(),
                            "pairs_scanned": r.pairs_scanned,
                        });
                        if on_fig1 {
                            let reported = fig1_reported_divergence(p + 1);
                            row["reported"] = json!(reported);
                            row["agrees"] = json!(reported == Some(r.k));
                        }
                        rows.push(row);
                    }
                    Output::new(json!({ "literal": false, "family": names, "points": rows }), None)
                }
            }
        }
        Command::Suite => {
            let report = property_suite(&x, &b, g.seed)?;
            let failed = report.failures().count();
            let status = if failed > 0 { EXIT_INVARIANT } else { EXIT_OK };
            Output { result: json!({ "checks": report, "failures": failed }), stats: None, status }
        }
    })
}

fn family_maps(fam: &str, x: &Arc<DigitalImage>, entry: Option<&CatalogEntry>) -> Result<(Vec<String>, Vec<DigitalMap>)> {
    if fam == "paper" {
        let e = entry
            .filter(|e| e.key == "fig1")
            .ok_or_else(|| Error::Precondition("the `paper` family is bundled with fig1 only".into()))?;
        let maps = FIG1_FAMILY.iter().map(|n| e.map(n).expect("bundled map").clone()).collect();
        return Ok((FIG1_FAMILY.iter().map(|s| s.to_string()).collect(), maps));
    }
    let names: Vec<String> = fam.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let maps = names.iter().map(|n| parse_map(n, x, entry)).collect::<Result<Vec<_>>>()?;
    Ok((names, maps))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_table(r: &CommandResult) -> String {
    let mut s = format!("op: {}\n", r.op);
    match &r.result {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        s.push_str(&format!("{k}:\n"));
                        for row in rows {
                            s.push_str(&format!("  {}\n", cell(row)));
                        }
                    }
                    _ => s.push_str(&format!("{k}: {}\n", cell(v))),
                }
            }
        }
        other => s.push_str(&format!("result: {}\n", cell(other))),
    }
    if let Some(st) = &r.stats {
        s.push_str(&format!(
            "nodes: {}  results: {}  exhausted: {}  seconds: {:.3}\n",
            st.nodes_visited, st.results_found, st.exhausted, st.elapsed
        ));
    }
    s.push_str(&format!("exit: {}\n", r.exit_status));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut full = vec!["digitop", "--format", "json"];
        full.extend_from_slice(args);
        let code = run(full, &mut out);
        (code, serde_json::from_slice(&out).unwrap())
    }

    #[test]
    fn spectrum_on_c5() {
        let (code, v) = run_json(&["spectrum", "fix", "--image", "cycle:5"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["values"], json!([0, 1, 2, 3, 5]));
        assert_eq!(v["op"], "spectrum");
    }

    #[test]
    fn starred_hcs() {
        let (code, v) = run_json(&["hcs", "--image", "cycle:5", "--f", "id", "--g", "const:0", "--star"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["values"], json!([1]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_json(&["info", "--image", "nowhere"]).0, EXIT_INVALID);
        assert_eq!(run_json(&["info"]).0, EXIT_INVALID);
        let (code, v) = run_json(&["count-maps", "--image", "cube", "--budget-nodes", "5"]);
        assert_eq!(code, EXIT_BUDGET);
        assert_eq!(v["result"]["complete"], json!(false));
        let (code, _) = run_json(&["contractible", "--image", "cycle:6", "--budget-nodes", "5"]);
        assert_eq!(code, EXIT_BUDGET);
        let (code, _) = run_json(&["continuity", "--image", "cycle:5", "--f", "rot:x"]);
        assert_eq!(code, EXIT_INVALID);
        let mut out = Vec::new();
        assert_eq!(run(["digitop", "bogus"], &mut out), EXIT_INVALID);
    }

    #[test]
    fn inline_map_json() {
        let (code, v) = run_json(&[
            "continuity",
            "--image",
            "interval:0:2",
            "--f",
            r#"{"image":"interval:0:2","assign":[0,2,2]}"#,
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["continuous"], json!(false));
    }

    #[test]
    fn table_output() {
        let mut out = Vec::new();
        let code = run(["digitop", "fpp", "--image", "point"], &mut out);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(code, 0);
        assert!(text.starts_with("op: fpp\n"));
        assert!(text.contains("fpp: true"));
    }
}
