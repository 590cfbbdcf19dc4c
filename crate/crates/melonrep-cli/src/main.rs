//! Command-line front end for melon-graph word representation: analyze a
//! spec end to end, verify a word against a graph, emit DOT drawings, or
//! run the exhaustive search oracle directly.
//!
//! Output is byte-identical across runs for identical invocations; the
//! `--timings` flag opts into wall-clock measurements. Every certificate in
//! a report is re-verified immediately before printing.
//!
//! Exit codes: 0 success, 1 negative check verdict, 2 unusable input,
//! 3 size guard, 4 internal verification failure, 5 search budget
//! exhausted.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::exit;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use melonrep::comparability::{
    hasse_orientation, is_comparability_melon, prn, ComparabilityError, ComparabilityTag,
    PrnWitness,
};
use melonrep::graph::{
    build_melon, build_named, find_transitive_orientation, parse_edge_list, Graph, GraphError,
    MelonSpec, NamedGraph, ORIENTATION_EDGE_LIMIT,
};
use melonrep::line::{
    build_line_melon, line_comparability, line_refuter, line_rep_number, line_word_representable,
    LineError,
};
use melonrep::melon::{representation_number, RepError, RepReason};
use melonrep::oracle::{min_perm_rep, min_uniform_rep, OracleError, SearchBudget};
use melonrep::words::{represents, Word};

const SCHEMA: &str = "melonrep/1";

#[derive(Parser)]
#[command(
    name = "melonrep",
    about = "Words that represent melon graphs: construction, verification, classification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline for a melon spec: representation number, comparability
    /// and permutation count, Hasse layers, and the line-graph verdicts.
    Analyze {
        /// Comma-separated path lengths, e.g. "3,3,3" (trailing comma ok)
        spec: String,
        /// Cross-check classifier outputs against the exhaustive oracle
        #[arg(long)]
        oracle: bool,
        /// Include wall-clock timings (breaks byte-identical output)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Verify that a word represents a graph given as an edge list.
    Check {
        /// Edge-list file: "u v" per line, "vertex u" for isolated
        /// vertices, "#" comments
        graph: PathBuf,
        /// Word file: whitespace-separated letters
        word: PathBuf,
    },
    /// Emit a DOT drawing of the melon, its line graph, or its Hasse diagram.
    Dot {
        /// Comma-separated path lengths, e.g. "2,2,2"
        spec: String,
        /// Which structure to draw
        #[arg(long, value_enum, default_value_t = What::Graph)]
        what: What,
    },
    /// Exhaustive minimum-representation search on a spec, a named graph
    /// (K4, P5, C6, Prism3, T2, S1, S2, H3, K3xK2), or an edge-list file.
    Oracle {
        /// Melon spec, named graph, or edge-list file path
        input: String,
        /// Search for the minimum uniform representation number
        #[arg(long)]
        uniform: bool,
        /// Search for the minimum permutation count
        #[arg(long)]
        perm: bool,
        /// Include wall-clock timings (breaks byte-identical output)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Vertex cap for oracle searches
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Largest uniformity / permutation count the oracle tries
    #[arg(long)]
    max_k: Option<usize>,
    /// Search-tree node cap before giving up
    #[arg(long)]
    node_limit: Option<u64>,
}

impl BudgetArgs {
    fn to_budget(&self) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget {
            max_vertices: self.max_vertices.unwrap_or(d.max_vertices),
            max_k: self.max_k.unwrap_or(d.max_k),
            node_limit: self.node_limit.unwrap_or(d.node_limit),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Graph,
    Line,
    Hasse,
}

/// A fatal condition with its process exit code.
struct Fatal {
    code: i32,
    msg: String,
}

fn fatal(code: i32, msg: impl Display) -> Fatal {
    Fatal {
        code,
        msg: msg.to_string(),
    }
}

impl From<GraphError> for Fatal {
    fn from(e: GraphError) -> Self {
        let code = match &e {
            GraphError::SizeGuardExceeded { .. } => 3,
            _ => 2,
        };
        fatal(code, e)
    }
}

impl From<OracleError> for Fatal {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Graph(g) => g.into(),
            OracleError::SizeGuard { .. } => fatal(3, e),
            OracleError::NodeLimitExceeded { .. } => fatal(5, e),
            _ => fatal(2, e),
        }
    }
}

impl From<RepError> for Fatal {
    fn from(e: RepError) -> Self {
        match e {
            RepError::SearchBudgetExceeded { .. } => fatal(5, e),
            RepError::Graph(g) => g.into(),
            RepError::Oracle(o) => o.into(),
            RepError::Word(w) => fatal(4, w),
            other => fatal(2, other),
        }
    }
}

impl From<ComparabilityError> for Fatal {
    fn from(e: ComparabilityError) -> Self {
        match e {
            ComparabilityError::Graph(g) => g.into(),
            ComparabilityError::Oracle(o) => o.into(),
            ComparabilityError::Word(w) => fatal(4, w),
            other => fatal(2, other),
        }
    }
}

impl From<LineError> for Fatal {
    fn from(e: LineError) -> Self {
        match e {
            LineError::SearchBudgetExceeded { .. } => fatal(5, e),
            LineError::VerificationFailed { .. } => fatal(4, e),
            LineError::Graph(g) => g.into(),
            LineError::Oracle(o) => o.into(),
            LineError::Word(w) => fatal(4, w),
            other => fatal(2, other),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Analyze {
            spec,
            oracle,
            timings,
            budget,
        } => cmd_analyze(&spec, oracle, timings, &budget.to_budget()),
        Cmd::Check { graph, word } => cmd_check(&graph, &word),
        Cmd::Dot { spec, what } => cmd_dot(&spec, what),
        Cmd::Oracle {
            input,
            uniform,
            perm,
            timings,
            budget,
        } => cmd_oracle(&input, uniform, perm, timings, &budget.to_budget()),
    };
    match result {
        Ok(code) => exit(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            exit(f.code);
        }
    }
}

fn parse_spec(text: &str) -> Result<MelonSpec, Fatal> {
    MelonSpec::parse(text).map_err(|e| fatal(2, e))
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    input: InputEcho,
    melon: MelonSection,
    line: LineSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleChecks>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<BTreeMap<&'static str, u128>>,
}

#[derive(Serialize)]
struct InputEcho {
    spec: String,
    lengths: Vec<u32>,
    vertices: usize,
    edges: usize,
}

#[derive(Serialize)]
struct WordCert {
    word: String,
    uniformity: usize,
}

#[derive(Serialize)]
struct MelonSection {
    r: usize,
    reason: String,
    certificate: WordCert,
    comparability: Option<String>,
    prn: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prn_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realizer: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hasse: Option<HasseSection>,
}

#[derive(Serialize)]
struct HasseSection {
    case: String,
    layers: Vec<Vec<String>>,
    covers: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct LineSection {
    word_representable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    refuter: Option<String>,
    r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<WordCert>,
    class: String,
    prn: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessSection>,
}

#[derive(Serialize)]
struct WitnessSection {
    pattern: String,
    embedding: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct OracleChecks {
    budget: BudgetEcho,
    melon_uniform: CrossCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    melon_perm: Option<CrossCheck>,
    line_uniform: CrossCheck,
}

#[derive(Serialize)]
struct BudgetEcho {
    max_vertices: usize,
    max_k: usize,
    node_limit: u64,
}

#[derive(Serialize)]
struct CrossCheck {
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
}

fn reason_text(reason: &RepReason) -> String {
    match reason {
        RepReason::CompleteK2K3 => "CompleteK2K3".into(),
        RepReason::CircleConstruction(case) => format!("CircleConstruction({case})"),
        RepReason::InducedM3 => "InducedM3".into(),
        RepReason::InducedM4 => "InducedM4".into(),
    }
}

fn witness_text(witness: &PrnWitness) -> String {
    match witness {
        PrnWitness::Kn => "Kn".into(),
        PrnWitness::PermutationGraph => "PermutationGraph".into(),
        PrnWitness::InducedEvenCycle(n) => format!("InducedEvenCycle({n})"),
        PrnWitness::InducedT2 => "InducedT2".into(),
    }
}

fn tag_text(tag: ComparabilityTag) -> String {
    match tag {
        ComparabilityTag::SameParity => "SameParity".into(),
        ComparabilityTag::EdgeAndShortEvens => "EdgeAndShortEvens".into(),
    }
}

/// Re-verifies a certificate word right before it is printed; a failure
/// here is always an internal bug and exits with code 4.
fn emit_word(w: &Word, g: &Graph, what: &str) -> Result<WordCert, Fatal> {
    let ok = represents(w, g).map_err(|e| fatal(4, e))?;
    if !ok {
        return Err(fatal(4, format!("{what} failed re-verification at emission")));
    }
    let uniformity = match w.uniformity() {
        Ok(Some(k)) => k,
        _ => return Err(fatal(4, format!("{what} is not uniform at emission"))),
    };
    Ok(WordCert {
        word: w.to_string(),
        uniformity,
    })
}

fn cmd_analyze(
    spec_text: &str,
    with_oracle: bool,
    with_timings: bool,
    budget: &SearchBudget,
) -> Result<i32, Fatal> {
    let spec = parse_spec(spec_text)?;
    let g = build_melon(&spec);
    let mut timings: BTreeMap<&'static str, u128> = BTreeMap::new();

    let t = Instant::now();
    let rv = representation_number(&spec)?;
    timings.insert("melon_ms", t.elapsed().as_millis());
    let certificate = emit_word(&rv.certificate, &g, "melon certificate")?;
    if certificate.uniformity != rv.r {
        return Err(fatal(
            4,
            format!(
                "melon certificate is {}-uniform but r = {}",
                certificate.uniformity, rv.r
            ),
        ));
    }

    let t = Instant::now();
    let tag = is_comparability_melon(&spec);
    let (prn_value, prn_reason, realizer) = match tag {
        Some(_) => {
            let pv = prn(&spec)?;
            let flat_ok = pv.realizer.represents(&g).map_err(|e| fatal(4, e))?;
            if !flat_ok {
                return Err(fatal(4, "realizer failed re-verification at emission"));
            }
            let perms: Vec<String> = pv.realizer.perms().iter().map(Word::to_string).collect();
            (Some(pv.prn), Some(witness_text(&pv.witness)), Some(perms))
        }
        None => (None, None, None),
    };
    let hasse = match tag {
        Some(_) => {
            let h = hasse_orientation(&spec)?;
            Some(HasseSection {
                case: format!("{:?}", h.case()),
                layers: h.layers().to_vec(),
                covers: h
                    .covers()
                    .iter()
                    .map(|(u, v)| [u.clone(), v.clone()])
                    .collect(),
            })
        }
        None => None,
    };
    timings.insert("comparability_ms", t.elapsed().as_millis());

    let t = Instant::now();
    let lg = build_line_melon(&spec);
    let representable = line_word_representable(&spec);
    let refuter = line_refuter(&spec)?;
    if representable != refuter.is_none() {
        return Err(fatal(
            4,
            "line representability and the neighborhood refuter disagree",
        ));
    }
    let (line_r, line_cert) = if representable {
        let lv = line_rep_number(&spec)?;
        let w = lv.certificate.expect("representable verdict carries a word");
        let cert = emit_word(&w, &lg, "line certificate")?;
        let r = lv.r.expect("representable verdict carries r");
        if cert.uniformity != r {
            return Err(fatal(
                4,
                format!("line certificate is {}-uniform but r = {r}", cert.uniformity),
            ));
        }
        (Some(r), Some(cert))
    } else {
        (None, None)
    };
    let lc = line_comparability(&spec)?;
    timings.insert("line_ms", t.elapsed().as_millis());

    let oracle = if with_oracle {
        let t = Instant::now();
        let checks = oracle_checks(&spec, &g, &lg, rv.r, prn_value, line_r, budget)?;
        timings.insert("oracle_ms", t.elapsed().as_millis());
        Some(checks)
    } else {
        None
    };

    let report = Report {
        schema: SCHEMA,
        input: InputEcho {
            spec: spec.to_string(),
            lengths: spec.lengths().to_vec(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        },
        melon: MelonSection {
            r: rv.r,
            reason: reason_text(&rv.reason),
            certificate,
            comparability: tag.map(tag_text),
            prn: prn_value,
            prn_reason,
            realizer,
            hasse,
        },
        line: LineSection {
            word_representable: representable,
            refuter,
            r: line_r,
            certificate: line_cert,
            class: lc.class.to_string(),
            prn: lc.prn,
            witness: lc.witness.map(|w| WitnessSection {
                pattern: w.pattern,
                embedding: w.embedding,
            }),
        },
        oracle,
        timings: with_timings.then_some(timings),
    };
    print_json(&report);
    Ok(0)
}

fn over_budget(g: &Graph, budget: &SearchBudget) -> Option<String> {
    (g.vertex_count() > budget.max_vertices).then(|| {
        format!(
            "graph has {} vertices, over the search cap of {}",
            g.vertex_count(),
            budget.max_vertices
        )
    })
}

/// Runs the oracle against the classifier results where the budget allows;
/// any disagreement is an internal failure (exit 4).
fn oracle_checks(
    spec: &MelonSpec,
    g: &Graph,
    lg: &Graph,
    melon_r: usize,
    melon_prn: Option<usize>,
    line_r: Option<usize>,
    budget: &SearchBudget,
) -> Result<OracleChecks, Fatal> {
    let melon_uniform = match over_budget(g, budget) {
        Some(why) => CrossCheck {
            skipped: Some(why),
            k: None,
            agrees: None,
        },
        None => {
            let found = min_uniform_rep(g, budget)?;
            let k = found.as_ref().map(|(k, _)| *k);
            if k != Some(melon_r) {
                return Err(fatal(
                    4,
                    format!(
                        "oracle found minimum uniformity {k:?} but the classifier says {melon_r} for ({spec})"
                    ),
                ));
            }
            CrossCheck {
                skipped: None,
                k,
                agrees: Some(true),
            }
        }
    };
    let melon_perm = match melon_prn {
        None => None,
        Some(want) => Some(match over_budget(g, budget) {
            Some(why) => CrossCheck {
                skipped: Some(why),
                k: None,
                agrees: None,
            },
            None => {
                let found = min_perm_rep(g, budget)?;
                let k = found.as_ref().map(|(k, _)| *k);
                if k != Some(want) {
                    return Err(fatal(
                        4,
                        format!(
                            "oracle found minimum permutation count {k:?} but the classifier says {want} for ({spec})"
                        ),
                    ));
                }
                CrossCheck {
                    skipped: None,
                    k,
                    agrees: Some(true),
                }
            }
        }),
    };
    let line_uniform = match over_budget(lg, budget) {
        Some(why) => CrossCheck {
            skipped: Some(why),
            k: None,
            agrees: None,
        },
        None => {
            let found = min_uniform_rep(lg, budget)?;
            let k = found.as_ref().map(|(k, _)| *k);
            if k != line_r {
                return Err(fatal(
                    4,
                    format!(
                        "oracle found minimum line uniformity {k:?} but the classifier says {line_r:?} for ({spec})"
                    ),
                ));
            }
            CrossCheck {
                skipped: None,
                k,
                agrees: Some(true),
            }
        }
    };
    Ok(OracleChecks {
        budget: BudgetEcho {
            max_vertices: budget.max_vertices,
            max_k: budget.max_k,
            node_limit: budget.node_limit,
        },
        melon_uniform,
        melon_perm,
        line_uniform,
    })
}

fn print_json<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    println!("{text}");
}

// ------------------------------------------------------------------ check

fn read_graph_file(path: &PathBuf) -> Result<Graph, Fatal> {
    let text = fs::read_to_string(path)
        .map_err(|e| fatal(2, format!("cannot read {}: {e}", path.display())))?;
    let g = parse_edge_list(&text).map_err(|e| fatal(2, format!("{}: {e}", path.display())))?;
    if g.vertex_count() == 0 {
        return Err(fatal(2, format!("{}: no vertices", path.display())));
    }
    Ok(g)
}

fn alternate_in(tokens: &[String], a: &str, b: &str) -> bool {
    let seq: Vec<&str> = tokens
        .iter()
        .map(String::as_str)
        .filter(|t| *t == a || *t == b)
        .collect();
    seq.windows(2).all(|p| p[0] != p[1])
}

fn cmd_check(graph_path: &PathBuf, word_path: &PathBuf) -> Result<i32, Fatal> {
    let g = read_graph_file(graph_path)?;
    let text = fs::read_to_string(word_path)
        .map_err(|e| fatal(2, format!("cannot read {}: {e}", word_path.display())))?;
    let tokens: Vec<String> = text.split_whitespace().map(str::to_string).collect();
    if tokens.is_empty() {
        return Err(fatal(2, format!("{}: empty word", word_path.display())));
    }
    for v in g.vertices() {
        if !tokens.iter().any(|t| t == v) {
            return Err(fatal(
                2,
                format!("word never mentions graph vertex {v:?}"),
            ));
        }
    }
    for t in &tokens {
        if !g.contains_vertex(t) {
            return Err(fatal(2, format!("word letter {t:?} is not a graph vertex")));
        }
    }
    let w = Word::new(tokens.clone());
    if represents(&w, &g).map_err(|e| fatal(2, e))? {
        match w.uniformity() {
            Ok(Some(k)) => println!("REPRESENTS, {k}-uniform"),
            _ => println!("REPRESENTS, non-uniform"),
        }
        return Ok(0);
    }
    let vs: Vec<&str> = g.vertices().collect();
    for (i, a) in vs.iter().enumerate() {
        for b in vs.iter().skip(i + 1) {
            let alt = alternate_in(&tokens, a, b);
            let adj = g.has_edge(a, b);
            if alt != adj {
                if alt {
                    println!(
                        "DOES NOT REPRESENT: ({a}, {b}) alternate in the word but are not adjacent"
                    );
                } else {
                    println!(
                        "DOES NOT REPRESENT: ({a}, {b}) are adjacent but do not alternate"
                    );
                }
                return Ok(1);
            }
        }
    }
    unreachable!("negative verdict must expose a differing pair");
}

// -------------------------------------------------------------------- dot

fn graph_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in g.vertices() {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  \"{u}\" -- \"{v}\";\n"));
    }
    out.push_str("}\n");
    out
}

fn cmd_dot(spec_text: &str, what: What) -> Result<i32, Fatal> {
    let spec = parse_spec(spec_text)?;
    let text = match what {
        What::Graph => graph_dot(&build_melon(&spec), "melon"),
        What::Line => graph_dot(&build_line_melon(&spec), "line_melon"),
        What::Hasse => {
            if is_comparability_melon(&spec).is_none() {
                return Err(fatal(
                    2,
                    format!("({spec}) is not a comparability melon; no Hasse diagram exists"),
                ));
            }
            hasse_orientation(&spec)?.to_dot("hasse")
        }
    };
    print!("{text}");
    Ok(0)
}

// ----------------------------------------------------------------- oracle

#[derive(Serialize)]
struct OracleReport {
    schema: &'static str,
    input: OracleInput,
    budget: BudgetEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    uniform: Option<UniformResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perm: Option<PermResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<BTreeMap<&'static str, u128>>,
}

#[derive(Serialize)]
struct OracleInput {
    source: String,
    vertices: usize,
    edges: usize,
}

#[derive(Serialize)]
struct UniformResult {
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct PermResult {
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perms: Option<Vec<String>>,
    exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

/// Builds the oracle's input graph from a melon spec, a named-graph token,
/// or an edge-list file path, in that order of interpretation.
fn oracle_input(input: &str) -> Result<(String, Graph), Fatal> {
    if input.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        let spec = parse_spec(input)?;
        return Ok((format!("melon {spec}"), build_melon(&spec)));
    }
    if let Some(named) = parse_named(input) {
        return Ok((input.to_string(), build_named(named)?));
    }
    let path = PathBuf::from(input);
    if path.exists() {
        return Ok((input.to_string(), read_graph_file(&path)?));
    }
    Err(fatal(
        2,
        format!("cannot interpret {input:?} as a melon spec, a named graph, or a file"),
    ))
}

fn parse_named(token: &str) -> Option<NamedGraph> {
    let t = token.replace('_', "");
    match t.as_str() {
        "Prism3" => return Some(NamedGraph::Prism3),
        "T2" => return Some(NamedGraph::T2),
        "S1" => return Some(NamedGraph::S1),
        "S2" => return Some(NamedGraph::S2),
        _ => {}
    }
    if let Some(m) = t.strip_prefix('K').and_then(|r| r.strip_suffix("xK2")) {
        return m.parse().ok().map(NamedGraph::KmBoxK2);
    }
    let (head, tail) = t.split_at(1);
    let n: usize = tail.parse().ok()?;
    match head {
        "P" => Some(NamedGraph::Path(n)),
        "C" => Some(NamedGraph::Cycle(n)),
        "K" => Some(NamedGraph::Complete(n)),
        "H" => Some(NamedGraph::H(n)),
        _ => None,
    }
}

fn cmd_oracle(
    input: &str,
    uniform: bool,
    perm: bool,
    with_timings: bool,
    budget: &SearchBudget,
) -> Result<i32, Fatal> {
    let (source, g) = oracle_input(input)?;
    let (run_uniform, run_perm) = if uniform || perm {
        (uniform, perm)
    } else {
        (true, true)
    };
    let mut timings: BTreeMap<&'static str, u128> = BTreeMap::new();

    let uniform = if run_uniform {
        let t = Instant::now();
        let found = min_uniform_rep(&g, budget)?;
        timings.insert("uniform_ms", t.elapsed().as_millis());
        Some(match found {
            Some((k, w)) => {
                if !represents(&w, &g).map_err(|e| fatal(4, e))? {
                    return Err(fatal(4, "oracle witness failed re-verification"));
                }
                UniformResult {
                    k: Some(k),
                    witness: Some(w.to_string()),
                    exhaustive: true,
                    note: None,
                }
            }
            None => UniformResult {
                k: None,
                witness: None,
                exhaustive: true,
                note: Some(format!(
                    "no k-uniform representing word with k <= {}",
                    budget.max_k
                )),
            },
        })
    } else {
        None
    };

    let perm = if run_perm {
        let t = Instant::now();
        let found = min_perm_rep(&g, budget)?;
        timings.insert("perm_ms", t.elapsed().as_millis());
        Some(match found {
            Some((k, seq)) => {
                if !seq.represents(&g).map_err(|e| fatal(4, e))? {
                    return Err(fatal(4, "oracle realizer failed re-verification"));
                }
                PermResult {
                    k: Some(k),
                    perms: Some(seq.perms().iter().map(Word::to_string).collect()),
                    exhaustive: true,
                    note: None,
                }
            }
            None => {
                let note = if g.edge_count() <= ORIENTATION_EDGE_LIMIT
                    && find_transitive_orientation(&g)?.is_none()
                {
                    "not a comparability graph".to_string()
                } else {
                    format!("no realizer with at most {} permutations", budget.max_k)
                };
                PermResult {
                    k: None,
                    perms: None,
                    exhaustive: true,
                    note: Some(note),
                }
            }
        })
    } else {
        None
    };

    let report = OracleReport {
        schema: SCHEMA,
        input: OracleInput {
            source,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        },
        budget: BudgetEcho {
            max_vertices: budget.max_vertices,
            max_k: budget.max_k,
            node_limit: budget.node_limit,
        },
        uniform,
        perm,
        timings: with_timings.then_some(timings),
    };
    print_json(&report);
    Ok(0)
}
