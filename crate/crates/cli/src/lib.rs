//! The `artk` command line. [`run`] takes the argument list and returns what
//! should be written to stdout and stderr together with the exit code:
//! 0 pass, 1 fail, 2 inconclusive (a cap was hit), 3 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use artk_core::amalgam::{FiniteAmalgam, FiniteGroup};
use artk_core::artin::{iota, lift_conjugator, positive_braid_equal, theta, ArtinWord, BraidVerdict};
use artk_core::cube::{fundamental_domain, shadow_ball, CubeComplexBall};
use artk_core::decompose::{decompose, Strategy};
use artk_core::parabolic::{bounded_closure, check_property, HandleCatalog, Intersection, ParabolicHandle, Property, Verdict};
use artk_core::tree::{CoxeterShadowTree, TreeBackend, TreeBall};
use artk_core::verify::{self, VerifyOptions};
use artk_core::{Caps, Coxeter, CoxeterElement, Error, LabeledGraph, Side};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

const TREE_CAP: usize = 100_000;

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("caps must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "artk", version, about = "Artin and Coxeter group toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Maximum braid-class size explored by the word problem
    #[arg(long, global = true, default_value_t = Caps::default().braid, value_parser = positive)]
    cap_braid: usize,
    /// Maximum number of group elements enumerated
    #[arg(long, global = true, default_value_t = Caps::default().enumeration, value_parser = positive)]
    cap_enum: usize,
    /// Ball radius for trees and cube complexes
    #[arg(long, global = true)]
    radius: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print a graph with its presentations and cliques
    Graph { graph: PathBuf },
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    #[command(subcommand)]
    Artin(ArtinCmd),
    #[command(subcommand)]
    Parabolic(ParabolicCmd),
    #[command(subcommand)]
    Tree(TreeCmd),
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Split the Artin group into an iterated amalgam of free-of-infinity pieces
    Decompose {
        graph: PathBuf,
        #[arg(long, default_value = "star-link")]
        strategy: Strategy,
    },
    /// Run self-check suites
    Verify {
        graph: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Random words for the word-problem suite
        #[arg(long, default_value_t = VerifyOptions::default().samples)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CoxeterCmd {
    /// Canonical reduced word
    Reduce { graph: PathBuf, word: String },
    Equal { graph: PathBuf, a: String, b: String },
    Length { graph: PathBuf, word: String },
    /// Minimal representative of gW_X (right) or W_Xg (left)
    CosetMin {
        graph: PathBuf,
        word: String,
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// W_X g W_Y = h1 g0 h2 with g0 minimal
    DoubleCoset {
        graph: PathBuf,
        word: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Subcommand)]
pub enum ArtinCmd {
    /// Image in the Coxeter group
    Theta { graph: PathBuf, word: String },
    /// Positive lift of a Coxeter element
    Iota { graph: PathBuf, word: String },
    FreeReduce { graph: PathBuf, word: String },
    /// Braid equivalence of two positive words, with a certificate
    Equal { graph: PathBuf, p: String, q: String },
    /// Lift g with gW_Xg^-1 inside W_Y to the Artin group
    Lift {
        graph: PathBuf,
        word: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum ParabolicCmd {
    /// Smallest parabolic subgroup containing the given elements
    Closure { graph: PathBuf, words: Vec<String> },
    /// Intersect g1 W_X1 g1^-1 with g2 W_X2 g2^-1
    Intersect {
        graph: PathBuf,
        conj1: String,
        base1: String,
        conj2: String,
        base2: String,
    },
    /// Check an intersection property on the Coxeter group
    Check {
        graph: PathBuf,
        #[arg(long)]
        property: Property,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PivotArgs {
    /// Non-adjacent pair `s,t`; the ShortLex-first non-edge by default
    #[arg(long)]
    pivot: Option<String>,
    /// Limit on coset representatives per vertex, for infinite vertex groups
    #[arg(long)]
    branch: Option<usize>,
    /// Same as --format=dot
    #[arg(long)]
    dot: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum TreeCmd {
    /// Ball in the Bass-Serre tree of a one-edge splitting
    Ball {
        graph: PathBuf,
        #[command(flatten)]
        pivot: PivotArgs,
    },
    /// Fixed subtree of an element
    Fix {
        graph: PathBuf,
        word: String,
        #[command(flatten)]
        pivot: PivotArgs,
    },
    Decompose {
        graph: PathBuf,
        #[arg(long, default_value = "star-link")]
        strategy: Strategy,
    },
    /// Bass-Serre tree of Z/n *_{Z/k} Z/m
    Amalgam {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 1)]
        over: usize,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CubeCmd {
    /// Fundamental domain
    Domain { graph: PathBuf },
    /// Ball in the clique-cube complex of the Coxeter group
    Ball { graph: PathBuf },
    /// Vertices and cubes fixed by an element
    Fix {
        graph: PathBuf,
        word: String,
        /// Use the fundamental domain instead of a ball
        #[arg(long)]
        domain: bool,
    },
    /// Flag condition at every vertex with a complete link
    Flagcheck { graph: PathBuf },
}

/// Everything a command needs besides the command itself.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub caps: Caps,
    pub radius: Option<usize>,
    pub format: Format,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Report printed by commands that end in a verdict.
#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub command: String,
    pub graph_hash: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

struct Rendered {
    text: String,
    json: Value,
    dot: Option<String>,
    verdict: Verdict,
}

impl Rendered {
    fn new(text: String, json: Value) -> Self {
        Rendered {
            text,
            json,
            dot: None,
            verdict: Verdict::Pass,
        }
    }

    fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    fn verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = Result<T, Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stderr: text, ..Output::default() }
            } else {
                Output { code, stdout: text, ..Output::default() }
            };
        }
    };
    let config = RunConfig {
        command: cli.command,
        caps: Caps {
            braid: cli.global.cap_braid,
            enumeration: cli.global.cap_enum,
        },
        radius: cli.global.radius,
        format: cli.global.format,
        seed: cli.global.seed,
        out: cli.global.out,
    };
    execute(&config)
}

pub fn execute(config: &RunConfig) -> Output {
    let start = Instant::now();
    let rendered = match dispatch(config) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => return usage(msg),
        Err(Failure::Core(e)) if e.is_cap() => {
            return Output {
                code: EXIT_INCONCLUSIVE,
                stdout: String::new(),
                stderr: format!("inconclusive: {e}\n"),
            }
        }
        Err(Failure::Core(e)) => return usage(e.to_string()),
    };
    let format = effective_format(config);
    let body = match format {
        Format::Text => rendered.text,
        Format::Json => serde_json::to_string_pretty(&rendered.json).expect("json values serialize") + "\n",
        Format::Dot => match rendered.dot {
            Some(d) => d,
            None => return usage("this command has no DOT output".into()),
        },
    };
    let code = match rendered.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let mut stderr = String::new();
    if matches!(config.command, Command::Verify { .. }) {
        stderr = format!("elapsed {:.3}s\n", start.elapsed().as_secs_f64());
    }
    match &config.out {
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => Output { code, stdout: String::new(), stderr },
            Err(e) => usage(format!("{}: {e}", path.display())),
        },
        None => Output { code, stdout: body, stderr },
    }
}

fn usage(msg: String) -> Output {
    Output {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn effective_format(config: &RunConfig) -> Format {
    let dot_flag = match &config.command {
        Command::Tree(TreeCmd::Ball { pivot, .. } | TreeCmd::Fix { pivot, .. }) => pivot.dot,
        Command::Tree(TreeCmd::Amalgam { dot, .. }) => *dot,
        _ => false,
    };
    if dot_flag {
        Format::Dot
    } else {
        config.format
    }
}

fn load(path: &PathBuf) -> Res<LabeledGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    LabeledGraph::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn engine(path: &PathBuf, caps: Caps) -> Res<Coxeter> {
    Ok(Coxeter::with_caps(Arc::new(load(path)?), caps))
}

fn element(engine: &Coxeter, word: &str) -> Res<CoxeterElement> {
    Ok(engine.reduce(&engine.parse_word(word)?)?)
}

fn dispatch(config: &RunConfig) -> Res<Rendered> {
    let caps = config.caps;
    match &config.command {
        Command::Graph { graph } => graph_info(&load(graph)?),
        Command::Coxeter(cmd) => coxeter(cmd, caps),
        Command::Artin(cmd) => artin(cmd, caps),
        Command::Parabolic(cmd) => parabolic(cmd, config),
        Command::Tree(cmd) => tree(cmd, config),
        Command::Cube(cmd) => cube(cmd, config),
        Command::Decompose { graph, strategy } => decomposition(&load(graph)?, *strategy),
        Command::Verify { graph, suite, samples } => verify_cmd(config, graph, suite, *samples),
    }
}

fn graph_info(g: &LabeledGraph) -> Res<Rendered> {
    let cliques: Vec<String> = g.enumerate_cliques().iter().map(|&c| g.format_subset(c)).collect();
    let text = format!(
        "{}artin: {}\ncoxeter: {}\ncliques: {}\nhash: {}\n",
        g.to_text(),
        g.artin_presentation(),
        g.coxeter_presentation(),
        cliques.join(" "),
        g.fingerprint()
    );
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!([g.name(e.a), g.name(e.b), e.label]))
        .collect();
    let json = json!({
        "vertices": g.names(),
        "edges": edges,
        "artin": g.artin_presentation(),
        "coxeter": g.coxeter_presentation(),
        "cliques": g.enumerate_cliques().iter().map(|&c| g.subset_names(c)).collect::<Vec<_>>(),
        "hash": g.fingerprint(),
    });
    Ok(Rendered::new(text, json))
}

fn coxeter(cmd: &CoxeterCmd, caps: Caps) -> Res<Rendered> {
    match cmd {
        CoxeterCmd::Reduce { graph, word } => {
            let e = engine(graph, caps)?;
            let g = element(&e, word)?;
            let s = e.format(&g);
            Ok(Rendered::new(format!("{s}\n"), json!({ "word": s, "length": g.len() })))
        }
        CoxeterCmd::Equal { graph, a, b } => {
            let e = engine(graph, caps)?;
            let eq = e.equal(&e.parse_word(a)?, &e.parse_word(b)?)?;
            Ok(Rendered::new(format!("{eq}\n"), json!({ "equal": eq })))
        }
        CoxeterCmd::Length { graph, word } => {
            let e = engine(graph, caps)?;
            let n = e.length(&e.parse_word(word)?)?;
            Ok(Rendered::new(format!("{n}\n"), json!({ "length": n })))
        }
        CoxeterCmd::CosetMin { graph, word, subset, side } => {
            let e = engine(graph, caps)?;
            let x = e.graph().parse_subset(subset)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let m = e.min_coset_rep(&element(&e, word)?, x, side)?;
            let s = e.format(&m);
            Ok(Rendered::new(format!("{s}\n"), json!({ "word": s, "length": m.len() })))
        }
        CoxeterCmd::DoubleCoset { graph, word, left, right } => {
            let e = engine(graph, caps)?;
            let (x, y) = (e.graph().parse_subset(left)?, e.graph().parse_subset(right)?);
            let d = e.min_double_coset(&element(&e, word)?, x, y)?;
            let (h1, g0, h2) = (e.format(&d.h1), e.format(&d.g0), e.format(&d.h2));
            Ok(Rendered::new(
                format!("h1: {h1}\ng0: {g0}\nh2: {h2}\n"),
                json!({ "h1": h1, "g0": g0, "h2": h2 }),
            ))
        }
    }
}

fn artin(cmd: &ArtinCmd, caps: Caps) -> Res<Rendered> {
    match cmd {
        ArtinCmd::Theta { graph, word } => {
            let e = engine(graph, caps)?;
            let w = ArtinWord::parse(e.graph(), word)?;
            let s = e.format(&theta(&e, &w)?);
            Ok(Rendered::new(format!("{s}\n"), json!({ "word": s })))
        }
        ArtinCmd::Iota { graph, word } => {
            let e = engine(graph, caps)?;
            let s = iota(&element(&e, word)?).display(e.graph()).to_string();
            Ok(Rendered::new(format!("{s}\n"), json!({ "word": s })))
        }
        ArtinCmd::FreeReduce { graph, word } => {
            let e = engine(graph, caps)?;
            let s = ArtinWord::parse(e.graph(), word)?.free_reduce().display(e.graph()).to_string();
            Ok(Rendered::new(format!("{s}\n"), json!({ "word": s })))
        }
        ArtinCmd::Equal { graph, p, q } => {
            let e = engine(graph, caps)?;
            let (p, q) = (ArtinWord::parse(e.graph(), p)?, ArtinWord::parse(e.graph(), q)?);
            if !p.is_positive() || !q.is_positive() {
                return Err(Failure::Usage("artin equal takes positive words".into()));
            }
            Ok(match positive_braid_equal(&e, &p, &q, caps.braid)? {
                BraidVerdict::Equal(cert) => {
                    let json = json!({ "verdict": Verdict::Pass, "equal": true, "certificate": cert.to_json(e.graph()) });
                    Rendered::new(format!("equal ({} moves)\n", cert.moves.len()), json)
                }
                BraidVerdict::Distinct => {
                    Rendered::new("distinct\n".into(), json!({ "verdict": Verdict::Fail, "equal": false })).verdict(Verdict::Fail)
                }
                BraidVerdict::Inconclusive { class_size } => Rendered::new(
                    format!("inconclusive: braid class of {class_size} words has no match\n"),
                    json!({ "verdict": Verdict::Inconclusive, "class_size": class_size }),
                )
                .verdict(Verdict::Inconclusive),
            })
        }
        ArtinCmd::Lift { graph, word, from, to } => {
            let e = engine(graph, caps)?;
            let g = e.graph();
            let (x, y) = (g.parse_subset(from)?, g.parse_subset(to)?);
            match lift_conjugator(&e, &element(&e, word)?, x, y) {
                Ok(res) => {
                    let map: BTreeMap<&str, &str> = res.generator_map.iter().map(|(&v, &f)| (g.name(v), g.name(f))).collect();
                    let certs: BTreeMap<&str, Value> = res.certificates.iter().map(|(&v, c)| (g.name(v), c.to_json(g))).collect();
                    let conj = res.conjugator_word.display(g).to_string();
                    let mut text = format!("conjugator: {conj}\ng0: {}\n", e.format(&res.g0));
                    for (v, f) in &map {
                        text.push_str(&format!("{v} -> {f}\n"));
                    }
                    text.push_str(&format!("bijective: {}\n", res.bijective));
                    let json = json!({
                        "verdict": Verdict::Pass,
                        "conjugator_word": conj,
                        "g0": e.format(&res.g0),
                        "generator_map": map,
                        "certificates": certs,
                        "bijective": res.bijective,
                        "certificates_replay": res.verify(g),
                    });
                    Ok(Rendered::new(text, json))
                }
                Err(err @ Error::NotConjugatedInto { .. }) => Ok(Rendered::new(
                    format!("not conjugated into: {err}\n"),
                    json!({ "verdict": Verdict::Fail, "error": err.to_string() }),
                )
                .verdict(Verdict::Fail)),
                Err(err) => Err(err.into()),
            }
        }
    }
}

fn handle_json(e: &Coxeter, h: &ParabolicHandle) -> Value {
    json!({
        "conjugator": e.format(h.conjugator()),
        "base": e.graph().subset_names(h.base()),
        "display": h.display(e).to_string(),
    })
}

fn parabolic(cmd: &ParabolicCmd, config: &RunConfig) -> Res<Rendered> {
    let caps = config.caps;
    match cmd {
        ParabolicCmd::Closure { graph, words } => {
            let e = engine(graph, caps)?;
            let b = words.iter().map(|w| element(&e, w)).collect::<Res<Vec<_>>>()?;
            match HandleCatalog::for_engine(&e) {
                Ok(catalog) => {
                    let trace = catalog.parabolic_closure(&b)?;
                    let mut text = String::new();
                    for h in &trace.chain {
                        text.push_str(&format!("  {}\n", h.display(&e)));
                    }
                    text.push_str(&format!("closure: {}\n", trace.result.display(&e)));
                    let json = json!({
                        "chain": trace.chain.iter().map(|h| handle_json(&e, h)).collect::<Vec<_>>(),
                        "closure": handle_json(&e, &trace.result),
                        "certified": true,
                    });
                    Ok(Rendered::new(text, json))
                }
                Err(err) if err.is_cap() => {
                    let radius = config.radius.unwrap_or(2);
                    let bounded = bounded_closure(&e, &b, radius)?;
                    let verdict = if bounded.certified { Verdict::Pass } else { Verdict::Inconclusive };
                    let text = format!(
                        "closure: {}{}\n",
                        bounded.handle.display(&e),
                        if bounded.certified { "" } else { " (conjugators searched to the given radius only)" }
                    );
                    let json = json!({ "closure": handle_json(&e, &bounded.handle), "certified": bounded.certified, "radius": radius });
                    Ok(Rendered::new(text, json).verdict(verdict))
                }
                Err(err) => Err(err.into()),
            }
        }
        ParabolicCmd::Intersect { graph, conj1, base1, conj2, base2 } => {
            let e = engine(graph, caps)?;
            let g = e.graph();
            let p1 = ParabolicHandle::new(&e, &element(&e, conj1)?, g.parse_subset(base1)?)?;
            let p2 = ParabolicHandle::new(&e, &element(&e, conj2)?, g.parse_subset(base2)?)?;
            let catalog = HandleCatalog::for_engine(&e)?;
            Ok(match catalog.intersect(&p1, &p2)? {
                Intersection::Parabolic(h) => Rendered::new(
                    format!("{}\n", h.display(&e)),
                    json!({ "parabolic": true, "handle": handle_json(&e, &h) }),
                ),
                Intersection::NotParabolic(w) => {
                    let elements: Vec<String> = w.elements.iter().map(|x| e.format(x)).collect();
                    Rendered::new(
                        format!("not parabolic: {}\n", elements.join(", ")),
                        json!({ "parabolic": false, "elements": elements }),
                    )
                    .verdict(Verdict::Fail)
                }
            })
        }
        ParabolicCmd::Check { graph, property } => {
            let e = engine(graph, caps)?;
            let report = check_property(&e, *property)?;
            let mut text = format!(
                "{} {} ({} pairs)\n",
                report.property.name(),
                verdict_name(report.verdict),
                report.pairs_checked
            );
            if let Some(c) = &report.counterexample {
                text.push_str(&format!("counterexample: {} ∩ {} = {{{}}}\n", c.p1, c.p2, c.intersection.join(", ")));
            }
            let json = serde_json::to_value(&report).expect("reports serialize");
            Ok(Rendered::new(text, json).verdict(report.verdict))
        }
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn shadow_tree(e: &Coxeter, p: &PivotArgs) -> Res<CoxeterShadowTree> {
    let g = e.graph();
    let (s, t) = match &p.pivot {
        Some(text) => {
            let names: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).collect();
            let [s, t] = names[..] else {
                return Err(Failure::Usage(format!("pivot `{text}` must name two vertices")));
            };
            (g.vertex(s)?, g.vertex(t)?)
        }
        None => artk_core::decompose::first_nonedge(g, g.all())
            .ok_or_else(|| Failure::Usage("the graph is complete, so there is no splitting".into()))?,
    };
    Ok(CoxeterShadowTree::new(e, s, t, p.branch)?)
}

fn tree_rendered<B: TreeBackend>(ball: &TreeBall<B>) -> Rendered {
    let mut text = format!(
        "{} vertices, {} edges{}\n",
        ball.vertices.len(),
        ball.edges.len(),
        if ball.truncated { ", truncated" } else { "" }
    );
    for (i, e) in ball.edges.iter().enumerate() {
        text.push_str(&format!("{}: {} -- {}\n", i, ball.vertex_label(e.ends[0]), ball.vertex_label(e.ends[1])));
    }
    Rendered::new(text, ball.to_json()).dot(ball.to_dot())
}

fn tree(cmd: &TreeCmd, config: &RunConfig) -> Res<Rendered> {
    let radius = config.radius.unwrap_or(2);
    match cmd {
        TreeCmd::Ball { graph, pivot } => {
            let e = engine(graph, config.caps)?;
            let ball = TreeBall::grow(shadow_tree(&e, pivot)?, radius, TREE_CAP)?;
            Ok(tree_rendered(&ball))
        }
        TreeCmd::Fix { graph, word, pivot } => {
            let e = engine(graph, config.caps)?;
            let w = element(&e, word)?;
            let ball = TreeBall::grow(shadow_tree(&e, pivot)?, radius, TREE_CAP)?;
            let fixed = ball.fixed_set(&w)?;
            let labels: Vec<String> = fixed.vertices.iter().map(|&v| ball.vertex_label(v)).collect();
            let text = format!(
                "{} fixed vertices, {} fixed edges, connected: {}\n{}\n",
                fixed.vertices.len(),
                fixed.edges.len(),
                fixed.connected,
                labels.join(" ")
            );
            let json = json!({
                "element": e.format(&w),
                "radius": radius,
                "vertices": labels,
                "edges": fixed.edges,
                "connected": fixed.connected,
            });
            Ok(Rendered::new(text, json).dot(ball.to_dot()))
        }
        TreeCmd::Decompose { graph, strategy } => decomposition(&load(graph)?, *strategy),
        TreeCmd::Amalgam { n, m, over, .. } => {
            let (n, m, k) = (*n, *m, *over);
            if n == 0 || m == 0 || k == 0 || n % k != 0 || m % k != 0 {
                return Err(Failure::Usage(format!("Z/{k} does not embed in both Z/{n} and Z/{m}")));
            }
            let c = FiniteGroup::cyclic(k, "z");
            let into_a = (0..k).map(|i| i * (n / k)).collect();
            let into_b = (0..k).map(|i| i * (m / k)).collect();
            let amalgam = FiniteAmalgam::new(FiniteGroup::cyclic(n, "a"), FiniteGroup::cyclic(m, "b"), c, into_a, into_b)?;
            let ball = TreeBall::grow(amalgam, radius, TREE_CAP)?;
            Ok(tree_rendered(&ball))
        }
    }
}

fn decomposition(g: &LabeledGraph, strategy: Strategy) -> Res<Rendered> {
    let tree = decompose(g, strategy);
    Ok(Rendered::new(format!("{}\n", tree.render(g)), tree.to_json(g)))
}

fn cube_rendered(ball: &CubeComplexBall, highlight: &[usize]) -> Rendered {
    let g = ball.graph();
    let f: Vec<String> = ball.f_vector().iter().map(usize::to_string).collect();
    let mut text = format!("f-vector: ({})\n", f.join(","));
    for v in &ball.vertices {
        text.push_str(&format!("{} {}\n", ball.engine().format(&v.rep), g.format_subset(v.clique)));
    }
    Rendered::new(text, ball.to_json()).dot(ball.to_dot(highlight))
}

fn cube(cmd: &CubeCmd, config: &RunConfig) -> Res<Rendered> {
    let radius = config.radius.unwrap_or(2);
    match cmd {
        CubeCmd::Domain { graph } => Ok(cube_rendered(&fundamental_domain(&load(graph)?), &[])),
        CubeCmd::Ball { graph } => Ok(cube_rendered(&shadow_ball(&engine(graph, config.caps)?, radius)?, &[])),
        CubeCmd::Fix { graph, word, domain } => {
            let e = engine(graph, config.caps)?;
            let w = element(&e, word)?;
            let ball = if *domain { fundamental_domain(e.graph()) } else { shadow_ball(&e, radius)? };
            let fixed = ball.fixed_set(&w)?;
            let labels: Vec<String> = fixed.vertices.iter().map(|&v| ball.vertex_label(v)).collect();
            let text = format!("{} fixed vertices, {} fixed cubes\n{}\n", fixed.vertices.len(), fixed.cubes.len(), labels.join(" "));
            let json = json!({
                "element": e.format(&w),
                "radius": ball.radius,
                "vertices": labels,
                "cubes": fixed.cubes,
            });
            Ok(Rendered::new(text, json).dot(ball.to_dot(&fixed.vertices)))
        }
        CubeCmd::Flagcheck { graph } => {
            let e = engine(graph, config.caps)?;
            let mut counterexamples = Vec::new();
            let mut details = serde_json::Map::new();
            for (name, ball) in [("domain", fundamental_domain(e.graph())), ("ball", shadow_ball(&e, radius)?)] {
                let report = ball.flag_link_check()?;
                for (v, link) in &report.violations {
                    counterexamples.push(format!("{name} vertex {}: link vertices {link:?}", ball.vertex_label(*v)));
                }
                details.insert(name.into(), json!({ "checked": report.checked, "partial": report.partial }));
            }
            details.insert("radius".into(), json!(radius));
            let verdict = if counterexamples.is_empty() { Verdict::Pass } else { Verdict::Fail };
            Ok(verdict_rendered(
                VerdictReport {
                    command: "cube flagcheck".into(),
                    graph_hash: e.graph().fingerprint(),
                    seed: config.seed,
                    verdict,
                    counterexamples,
                    details: Value::Object(details),
                },
                String::new(),
            ))
        }
    }
}

fn verdict_rendered(report: VerdictReport, extra: String) -> Rendered {
    let mut text = format!("{}: {}\n", report.command, verdict_name(report.verdict));
    text.push_str(&extra);
    for c in &report.counterexamples {
        text.push_str(&format!("  counterexample: {c}\n"));
    }
    let verdict = report.verdict;
    Rendered::new(text, serde_json::to_value(&report).expect("reports serialize")).verdict(verdict)
}

fn verify_cmd(config: &RunConfig, graph: &PathBuf, suite: &str, samples: usize) -> Res<Rendered> {
    let e = engine(graph, config.caps)?;
    let opts = VerifyOptions {
        seed: config.seed,
        samples,
        radius: config.radius.unwrap_or(VerifyOptions::default().radius),
        ..VerifyOptions::default()
    };
    let reports = verify::run_suite(&e, suite, &opts).map_err(|err| match err {
        Error::Invalid(msg) => Failure::Usage(msg),
        other => Failure::Core(other),
    })?;
    let mut extra = String::new();
    let mut counterexamples = Vec::new();
    for r in &reports {
        extra.push_str(&format!("  {} {} ({} checked)", verdict_name(r.verdict), r.suite, r.checked));
        if let Some(note) = &r.note {
            extra.push_str(&format!(": {note}"));
        }
        extra.push('\n');
        counterexamples.extend(r.counterexamples.iter().map(|c| format!("{}: {c}", r.suite)));
    }
    let report = VerdictReport {
        command: format!("verify --suite={suite}"),
        graph_hash: e.graph().fingerprint(),
        seed: config.seed,
        verdict: verify::overall(&reports),
        counterexamples,
        details: json!({ "suites": reports }),
    };
    Ok(verdict_rendered(report, extra))
}
