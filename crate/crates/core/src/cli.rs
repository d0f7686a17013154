//! The `modepoly` command line.
//!
//! Exit codes: 0 success, 2 invalid input (including a non-independent mode
//! set, whose degeneracy report goes to stderr), 3 budget exceeded, 4 an
//! oracle disagreed with a closed form.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{even_parity_set, odd_parity_set, Graph, ModeSet, DEFAULT_MAX_CUBE_DIM};
use crate::linalg::{format_rational, Rational};
use crate::membership::{self, Strictness};
use crate::oracle::{hrep_predicate, montecarlo_volume};
use crate::polytope::Distribution;
use crate::poset::{self, Poset, DEFAULT_MAX_EXTENSIONS, DEFAULT_MAX_IDEALS};
use crate::verify::{check_instance, CheckOptions};
use crate::{mode_polytope, strong_polytope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "modepoly",
    version,
    about = "Exact geometry of mode and strong-mode polytopes"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Mode,
    Strong,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List vertices (V-representation)
    Vertices {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Classify the defining inequalities
    Facets {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Exact volume relative to the probability simplex
    Volume {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        instance: InstanceArgs,
        /// Also estimate the volume from this many uniform samples
        #[arg(long, value_name = "TRIALS")]
        montecarlo: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Count linear extensions of the induced order
    Extensions {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Read a general poset instead of deriving one from graph and modes
        #[arg(long, value_name = "FILE", conflicts_with_all = ["generator", "graph"])]
        poset: Option<PathBuf>,
        /// Also count by filtering all permutations
        #[arg(long)]
        naive: bool,
        /// Also report |C|! * |V \ C|!
        #[arg(long)]
        lower_bound: bool,
        /// Also list the extensions, up to --max-extensions of them
        #[arg(long)]
        list: bool,
    },
    /// Test a distribution for membership
    Membership {
        #[arg(value_enum, default_value_t = Kind::Mode)]
        kind: Kind,
        #[arg(long, value_name = "FILE")]
        dist: PathBuf,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Write a member distribution as a convex combination of vertices
    Decompose {
        #[arg(value_enum, default_value_t = Kind::Mode)]
        kind: Kind,
        #[arg(long, value_name = "FILE")]
        dist: PathBuf,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Cross-check every closed form against the oracles
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Emit graph JSON
    Generate {
        #[arg(long, value_name = "SPEC")]
        generator: String,
        #[arg(long, default_value_t = DEFAULT_MAX_CUBE_DIM)]
        max_cube_dim: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// hypercube:N, path:N, cycle:N, grid:RxC, or bipartite:AxB
    #[arg(long, value_name = "SPEC", conflicts_with = "graph")]
    pub generator: Option<String>,
    /// Graph JSON file: {"nodes": [...], "edges": [[a, b], ...]}
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Comma-separated labels, even-parity, odd-parity, or none
    #[arg(long, value_name = "LIST", conflicts_with = "modes_file")]
    pub modes: Option<String>,
    /// Mode set JSON file: {"modes": [...]}
    #[arg(long, value_name = "FILE")]
    pub modes_file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_CUBE_DIM)]
    pub max_cube_dim: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_IDEALS)]
    pub max_ideals: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_EXTENSIONS)]
    pub max_extensions: u64,
    /// Largest graph accepted, in nodes
    #[arg(long, default_value_t = 1 << 20)]
    pub max_nodes: usize,
    /// Largest vertex list produced
    #[arg(long, default_value_t = mode_polytope::DEFAULT_MAX_VERTICES)]
    pub max_vertices: u64,
}

/// Parses a generator spec such as `hypercube:3` or `grid:2x3`.
pub fn parse_generator(spec: &str, max_cube_dim: usize) -> Result<Graph> {
    let bad = || Error::invalid(format!("bad generator spec {spec:?}"));
    let (name, arg) = spec.split_once(':').ok_or_else(bad)?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let pair = |s: &str| -> Result<(usize, usize)> {
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        Ok((num(a)?, num(b)?))
    };
    match name.trim() {
        "hypercube" | "cube" => Graph::hypercube_with_cap(num(arg)?, max_cube_dim),
        "path" => Graph::path(num(arg)?),
        "cycle" => Graph::cycle(num(arg)?),
        "grid" => {
            let (r, c) = pair(arg)?;
            Graph::grid(r, c)
        }
        "bipartite" => {
            let (a, b) = pair(arg)?;
            Graph::complete_bipartite(a, b)
        }
        _ => Err(bad()),
    }
}

/// Parses mode shorthand: labels separated by commas, `even-parity`,
/// `odd-parity`, or `none`.
pub fn parse_modes(g: &Graph, spec: &str) -> Result<ModeSet> {
    match spec.trim() {
        "even-parity" => Ok(even_parity_set(g)),
        "odd-parity" => Ok(odd_parity_set(g)),
        "" | "none" => Ok(ModeSet::empty()),
        list => {
            let labels: Vec<&str> = list.split(',').map(str::trim).collect();
            ModeSet::from_labels(g, &labels)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

impl InstanceArgs {
    fn graph(&self) -> Result<Graph> {
        let g = match (&self.generator, &self.graph) {
            (Some(spec), None) => parse_generator(spec, self.max_cube_dim)?,
            (None, Some(path)) => Graph::from_json(&read(path)?)?,
            _ => return Err(Error::invalid("give exactly one of --generator or --graph")),
        };
        if g.len() > self.max_nodes {
            return Err(Error::BudgetExceeded {
                what: "graph node",
                limit: self.max_nodes as u64,
                reached: g.len() as u64,
            });
        }
        Ok(g)
    }

    fn modes(&self, g: &Graph) -> Result<ModeSet> {
        match (&self.modes, &self.modes_file) {
            (Some(spec), None) => parse_modes(g, spec),
            (None, Some(path)) => ModeSet::from_json(g, &read(path)?),
            (None, None) => Ok(ModeSet::empty()),
            _ => Err(Error::invalid(
                "give at most one of --modes or --modes-file",
            )),
        }
    }

    fn load(&self) -> Result<(Graph, ModeSet)> {
        let g = self.graph()?;
        let c = self.modes(&g)?;
        Ok((g, c))
    }

    fn describe(&self, g: &Graph, c: &ModeSet) -> String {
        let source = match (&self.generator, &self.graph) {
            (Some(s), _) => s.clone(),
            (_, Some(p)) => p.display().to_string(),
            _ => String::new(),
        };
        format!("{source} modes=[{}]", g.labels_of(c.members()).join(","))
    }
}

/// JSON value plus its human rendering.
struct Output(Value, String);

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match execute(cli.command) {
        Ok((output, code)) => {
            let Output(json, text) = output;
            let text = match format {
                Format::Text => text,
                Format::Json => {
                    serde_json::to_string_pretty(&json).expect("values serialize") + "\n"
                }
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotIndependent(report) => {
                    let _ = writeln!(
                        err,
                        "{}",
                        serde_json::to_string_pretty(&report.to_json()).expect("serializes")
                    );
                    EXIT_INVALID
                }
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn rat_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn execute(command: Command) -> Result<(Output, i32)> {
    match command {
        Command::Generate {
            generator,
            max_cube_dim,
        } => {
            let g = parse_generator(&generator, max_cube_dim)?;
            let mut text = String::new();
            for (a, b) in g.edge_labels() {
                let _ = writeln!(text, "{a} -- {b}");
            }
            Ok((Output(g.to_json(), text), EXIT_OK))
        }
        Command::Vertices { kind, instance } => {
            let (g, c) = instance.load()?;
            let (json, rows): (Value, Vec<(String, Distribution)>) = match kind {
                Kind::Mode => {
                    let v = mode_polytope::vertices_with_limit(&g, &c, instance.max_vertices)?;
                    let json = v.to_json(&g);
                    let rows = v
                        .vertices
                        .into_iter()
                        .map(|v| (v.generator.tag(&g), v.distribution))
                        .collect();
                    (json, rows)
                }
                Kind::Strong => {
                    let v = strong_polytope::vertices(&g, &c)?;
                    let json = Value::Array(v.iter().map(|x| x.to_json(&g)).collect());
                    let rows = v
                        .into_iter()
                        .map(|x| (format!("f:{}", g.label(x.anchor)), x.distribution))
                        .collect();
                    (json, rows)
                }
            };
            Ok((Output(json, distribution_table(&g, &rows)), EXIT_OK))
        }
        Command::Facets { kind, instance } => {
            let (g, c) = instance.load()?;
            let rows: Vec<(String, bool, String)> = match kind {
                Kind::Mode => mode_polytope::facets(&g, &c)?
                    .into_iter()
                    .map(|f| (f.inequality.kind.tag(&g), f.facet, f.reason.to_string()))
                    .collect(),
                Kind::Strong => {
                    let facets = strong_polytope::facets(&g, &c)?;
                    strong_polytope::hrep(&g, &c)?
                        .inequalities()
                        .iter()
                        .map(|h| {
                            let facet = facets.contains(h);
                            let why = if facet {
                                "facet"
                            } else {
                                "implied by a strong-mode inequality"
                            };
                            (h.kind.tag(&g), facet, why.to_owned())
                        })
                        .collect()
                }
            };
            let json = Value::Array(
                rows.iter()
                    .map(|(kind, facet, _)| json!({ "kind": kind, "facet": facet }))
                    .collect(),
            );
            let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
            let mut text = String::new();
            for (kind, facet, why) in &rows {
                let mark = if *facet { "facet" } else { "-" };
                let _ = writeln!(text, "{kind:<width$}  {mark:<5}  {why}");
            }
            Ok((Output(json, text), EXIT_OK))
        }
        Command::Volume {
            kind,
            instance,
            montecarlo,
            seed,
        } => {
            let (g, c) = instance.load()?;
            let (exact, h) = match kind {
                Kind::Mode => (
                    mode_polytope::volume_ratio_with_budget(&g, &c, instance.max_ideals)?,
                    mode_polytope::hrep(&g, &c)?,
                ),
                Kind::Strong => (
                    strong_polytope::volume_ratio(&g, &c)?,
                    strong_polytope::hrep(&g, &c)?,
                ),
            };
            let Some(trials) = montecarlo else {
                let text = format_rational(&exact) + "\n";
                return Ok((Output(json!({ "volume": rat_json(&exact) }), text), EXIT_OK));
            };
            if trials == 0 {
                return Err(Error::invalid("--montecarlo needs at least one trial"));
            }
            let est = montecarlo_volume(hrep_predicate(&h), g.len(), trials, seed);
            let kind_name = if kind == Kind::Mode { "mode" } else { "strong" };
            let report = json!({
                "instance": format!("{kind_name} {}", instance.describe(&g, &c)),
                "exact": rat_json(&exact),
                "estimate": est.estimate_f64(),
                "stderr": est.std_error(),
                "trials": trials,
                "seed": seed,
            });
            let text = format!(
                "exact     {}\nestimate  {:.6} +- {:.6} ({} trials, seed {})\n",
                format_rational(&exact),
                est.estimate_f64(),
                est.std_error(),
                trials,
                seed
            );
            Ok((Output(report, text), EXIT_OK))
        }
        Command::Extensions {
            instance,
            poset: poset_file,
            naive,
            lower_bound,
            list,
        } => {
            let (p, bound) = match &poset_file {
                Some(path) => (Poset::from_json(&read(path)?)?, None),
                None => {
                    let (g, c) = instance.load()?;
                    let bound = lower_bound
                        .then(|| poset::extension_lower_bound(&g, &c))
                        .transpose()?;
                    (poset::poset_from_modes(&g, &c)?, bound)
                }
            };
            let count = p.count_linear_extensions(instance.max_ideals)?;
            let mut obj = json!({ "count": count.to_string() });
            let mut text = format!("{count}\n");
            let mut code = EXIT_OK;
            if naive {
                let n = p.count_linear_extensions_naive()?;
                if n != count {
                    code = EXIT_INCONSISTENT;
                }
                obj["naive"] = Value::String(n.to_string());
                let _ = writeln!(text, "naive {n}");
            }
            if let Some(b) = bound {
                if count < b {
                    code = EXIT_INCONSISTENT;
                }
                obj["lower_bound"] = Value::String(b.to_string());
                let _ = writeln!(text, "lower bound {b}");
            } else if lower_bound {
                return Err(Error::invalid("--lower-bound needs a graph and mode set"));
            }
            if list {
                let orders = p.enumerate_extensions(instance.max_extensions)?;
                let named: Vec<Vec<&str>> = orders
                    .iter()
                    .map(|o| o.iter().map(|&i| p.elements()[i].as_str()).collect())
                    .collect();
                for order in &named {
                    let _ = writeln!(text, "{}", order.join(" < "));
                }
                obj["extensions"] = json!(named);
            }
            Ok((Output(obj, text), code))
        }
        Command::Membership {
            kind,
            dist,
            instance,
        } => {
            let (g, c) = instance.load()?;
            let p = Distribution::from_json(&g, &read(&dist)?)?;
            let m = match kind {
                Kind::Mode => membership::in_mode_polytope(&p, &g, &c)?,
                Kind::Strong => membership::in_strong_polytope(&p, &g, &c)?,
            };
            let set = |nodes: Vec<usize>| g.labels_of(&nodes);
            let modes = set(membership::modes_of(&p, &g, Strictness::Weak)?);
            let strict = set(membership::strict_modes_of(&p, &g)?);
            let strong = set(membership::strong_modes_of(&p, &g, Strictness::Weak)?);
            let strict_strong = set(membership::strict_strong_modes_of(&p, &g)?);
            let mut obj = m.to_json(&g);
            obj["modes"] = json!(modes);
            obj["strict_modes"] = json!(strict);
            obj["strong_modes"] = json!(strong);
            obj["strict_strong_modes"] = json!(strict_strong);
            let mut text = format!("member  {}\n", m.member);
            if let Some(v) = &m.violation {
                let _ = writeln!(
                    text,
                    "violated  {}: {} < {} (slack {})",
                    v.inequality.kind.tag(&g),
                    format_rational(&v.lhs),
                    format_rational(&v.rhs),
                    format_rational(&v.slack)
                );
            }
            let _ = writeln!(text, "modes                {}", modes.join(" "));
            let _ = writeln!(text, "strict modes         {}", strict.join(" "));
            let _ = writeln!(text, "strong modes         {}", strong.join(" "));
            let _ = writeln!(text, "strict strong modes  {}", strict_strong.join(" "));
            Ok((Output(obj, text), EXIT_OK))
        }
        Command::Decompose {
            kind,
            dist,
            instance,
        } => {
            let (g, c) = instance.load()?;
            let p = Distribution::from_json(&g, &read(&dist)?)?;
            let parts: Vec<(String, Distribution, Rational)> = match kind {
                Kind::Mode => mode_polytope::decompose(&p, &g, &c)?
                    .into_iter()
                    .map(|(v, w)| (v.generator.tag(&g), v.distribution, w))
                    .collect(),
                Kind::Strong => strong_polytope::decompose(&p, &g, &c)?
                    .into_iter()
                    .map(|(v, w)| (format!("f:{}", g.label(v.anchor)), v.distribution, w))
                    .collect(),
            };
            let back = mode_polytope::recombine(g.len(), parts.iter().map(|(_, d, w)| (d, w)));
            let code = if back == p.probabilities() {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            };
            let json = Value::Array(
                parts
                    .iter()
                    .map(|(tag, d, w)| {
                        json!({ "generator": tag, "weight": rat_json(w), "probabilities": d.to_json(&g) })
                    })
                    .collect(),
            );
            let width = parts.iter().map(|r| r.0.len()).max().unwrap_or(0);
            let mut text = String::new();
            for (tag, _, w) in &parts {
                let _ = writeln!(text, "{tag:<width$}  {}", format_rational(w));
            }
            Ok((Output(json, text), code))
        }
        Command::Check { instance } => {
            let (g, c) = instance.load()?;
            let opts = CheckOptions {
                max_ideals: instance.max_ideals,
                ..CheckOptions::default()
            };
            let report = check_instance(&g, &c, &opts)?;
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            };
            let text: String = report.outcomes.iter().map(|o| format!("{o}\n")).collect();
            Ok((Output(report.to_json(), text), code))
        }
    }
}

fn distribution_table(g: &Graph, rows: &[(String, Distribution)]) -> String {
    let mut cells: Vec<Vec<String>> = vec![std::iter::once("generator".to_owned())
        .chain(g.labels().iter().cloned())
        .collect()];
    for (tag, d) in rows {
        cells.push(
            std::iter::once(tag.clone())
                .chain(d.probabilities().iter().map(format_rational))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut text = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(text, "{}", line.join("  ").trim_end());
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("modepoly").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn generator_specs() {
        assert_eq!(parse_generator("hypercube:3", 20).unwrap().len(), 8);
        assert_eq!(parse_generator("grid:2x3", 20).unwrap().len(), 6);
        assert_eq!(
            parse_generator("bipartite:2x3", 20).unwrap().edge_count(),
            6
        );
        assert!(parse_generator("hypercube:21", 20).is_err());
        assert!(parse_generator("hypercube:21", 21).is_ok());
        assert!(parse_generator("torus:3", 20).is_err());
        assert!(parse_generator("path", 20).is_err());
    }

    #[test]
    fn text_volume() {
        let (code, out, _) = run_args(&[
            "volume",
            "strong",
            "--generator",
            "hypercube:2",
            "--modes",
            "even-parity",
            "--format",
            "text",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "1/9\n");
    }

    #[test]
    fn degenerate_modes_exit_2() {
        let (code, _, err) = run_args(&[
            "vertices",
            "mode",
            "--generator",
            "hypercube:2",
            "--modes",
            "00,01",
        ]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("\"zeros\""));
    }

    #[test]
    fn budget_exit_3() {
        let (code, _, err) = run_args(&[
            "extensions",
            "--generator",
            "hypercube:3",
            "--modes",
            "even-parity",
            "--max-ideals",
            "5",
        ]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(err.contains("budget"));
    }

    #[test]
    fn bad_arguments_exit_2() {
        let (code, _, _) = run_args(&["volume", "sideways"]);
        assert_eq!(code, EXIT_INVALID);
        let (code, _, _) = run_args(&["volume", "mode"]);
        assert_eq!(code, EXIT_INVALID);
    }
}
