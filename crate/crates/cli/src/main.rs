//! `loclin`: checks, verification runs, constructions and oracle comparisons
//! for locally linear graphs.

mod output;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use loclin::construct::{attach_triangle_chain, find_chain_start, ChainSpec, ConstructError};
use loclin::hamilton::{find_hamilton_cycle, find_hamilton_path};
use loclin::local::{
    check_local_linear_invariants, is_locally_hamiltonian, is_locally_linear, is_locally_traceable,
    InvariantReport,
};
use loclin::search::{
    brute_force_enumerate, collect_locally_linear, enumerate_locally_linear, Requirement,
    SearchConstraints, SearchError, SearchOptions, SearchReport, BRUTE_FORCE_MAX_VERTICES,
    DEFAULT_BUDGET_NODES, DEFAULT_SPLIT_DEPTH,
};
use loclin::verify::{
    verify_degree_bound, verify_min_order, verify_min_size, verify_min_size_nontraceable,
    VerifyError, VerifyOptions,
};
use loclin::{emit_graph6, parse_graph6, Edge, Graph};

use output::{Outcome, Output, RunConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_CONSTRUCTION: u8 = 4;
const EXIT_ORACLE: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "loclin", version, about = "Locally linear graph checks, searches and constructions")]
struct Cli {
    /// Worker threads for searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Abort a search after this many tree nodes.
    #[arg(long, global = true, env = "LOCLIN_BUDGET_NODES", default_value_t = DEFAULT_BUDGET_NODES)]
    budget_nodes: u64,
    /// Directory for reports and witness files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Format of the report printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Claim {
    /// No nonhamiltonian member below order 12, one at order 12.
    #[value(alias = "1")]
    MinOrder,
    /// Least size of a nonhamiltonian member of order n is 2n.
    #[value(alias = "2")]
    MinSize,
    /// Members of order n with at most 2n + 2 edges are traceable.
    #[value(alias = "3")]
    NontraceableSize,
    /// Nonhamiltonian members have maximum degree at most n - 5, attained.
    #[value(alias = "4")]
    DegreeBound,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report local and global properties of every graph in a graph6 file.
    Check {
        /// graph6 file, one graph per line; `-` reads stdin.
        input: PathBuf,
    },
    /// Run the search and construction behind one extremal claim.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        /// Order searched for the size and degree claims.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Size cap for the minimum-size search; defaults to 2n.
        #[arg(long)]
        search_cap: Option<usize>,
        /// Largest order built by the triangle chain.
        #[arg(long, default_value_t = 50)]
        chain_limit: usize,
        /// Search order 11 without the degree cap.
        #[arg(long)]
        unrestricted_eleven: bool,
    },
    /// Grow a triangle chain from a nonhamiltonian locally linear seed.
    Construct {
        /// Seed as a graph6 string, or a file whose first line is one.
        seed: String,
        /// Number of triangles to attach.
        #[arg(long)]
        steps: usize,
        /// Start edge as `u-v`; chosen automatically when absent.
        #[arg(long)]
        start_edge: Option<String>,
    },
    /// Compare brute-force and augmentation counts for every order up to n.
    Oracle {
        /// Largest order compared.
        #[arg(long)]
        n: usize,
    },
    /// Enumerate connected locally linear graphs under constraints.
    Search {
        /// Order of the graphs.
        #[arg(long)]
        n: usize,
        /// Largest number of edges.
        #[arg(long)]
        m_max: Option<usize>,
        /// Largest maximum degree.
        #[arg(long)]
        delta_max: Option<usize>,
        /// Comma-separated subset of connected, nonhamiltonian, nontraceable.
        #[arg(long, value_delimiter = ',', value_enum)]
        require: Vec<RequireArg>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RequireArg {
    Connected,
    Nonhamiltonian,
    Nontraceable,
}

impl From<RequireArg> for Requirement {
    fn from(r: RequireArg) -> Self {
        match r {
            RequireArg::Connected => Requirement::Connected,
            RequireArg::Nonhamiltonian => Requirement::Nonhamiltonian,
            RequireArg::Nontraceable => Requirement::Nontraceable,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output::new(&cli.out, cli.format);
    let code = match run(&cli, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    };
    ExitCode::from(code)
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Budget(String),
    Construction(String),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Construction(_) => EXIT_CONSTRUCTION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) | CliError::Budget(s) | CliError::Construction(s) => f.write_str(s),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::StepFailed { .. } => CliError::Construction(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn search_options(cli: &Cli) -> SearchOptions {
    SearchOptions {
        workers: cli
            .workers
            .map_or_else(|| SearchOptions::default().workers, |w| w as usize),
        budget_nodes: cli.budget_nodes,
        split_depth: DEFAULT_SPLIT_DEPTH,
    }
}

fn run_config(cli: &Cli, command: String, input: Option<String>, constraints: Vec<SearchConstraints>) -> RunConfig {
    let opts = search_options(cli);
    RunConfig {
        command,
        input,
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        workers: opts.workers,
        budget_nodes: opts.budget_nodes,
        format: cli.format,
        constraints,
    }
}

fn run(cli: &Cli, out: &Output) -> Result<u8, CliError> {
    match &cli.command {
        Command::Check { input } => cmd_check(cli, out, input),
        Command::Verify {
            claim,
            n,
            search_cap,
            chain_limit,
            unrestricted_eleven,
        } => cmd_verify(cli, out, *claim, *n, search_cap.unwrap_or(2 * n), *chain_limit, *unrestricted_eleven),
        Command::Construct {
            seed,
            steps,
            start_edge,
        } => cmd_construct(cli, out, seed, *steps, start_edge.as_deref()),
        Command::Oracle { n } => cmd_oracle(cli, out, *n),
        Command::Search {
            n,
            m_max,
            delta_max,
            require,
        } => {
            let c = SearchConstraints {
                n: *n,
                m_max: *m_max,
                delta_max: *delta_max,
                require: require
                    .iter()
                    .map(|&r| r.into())
                    .chain([Requirement::Connected])
                    .collect::<BTreeSet<_>>(),
            };
            cmd_search(cli, out, c)
        }
    }
}

fn read_input(input: &PathBuf) -> Result<String, CliError> {
    if input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(CliError::Io)
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))
    }
}

/// Non-empty graph6 lines with their 1-based line numbers. An optional
/// `>>graph6<<` header is skipped.
fn parse_lines(text: &str) -> Result<Vec<(usize, Graph)>, CliError> {
    let mut graphs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        graphs.push((i + 1, g));
    }
    Ok(graphs)
}

#[derive(Serialize)]
struct GraphProperties {
    line: usize,
    graph6: String,
    n: usize,
    m: usize,
    locally_linear: bool,
    locally_traceable: bool,
    locally_hamiltonian: bool,
    hamiltonian: bool,
    traceable: bool,
    certificate: Option<loclin::hamilton::Certificate>,
    invariants: InvariantReport,
}

#[derive(Serialize)]
struct CheckRow<'a> {
    line: usize,
    graph6: &'a str,
    n: usize,
    m: usize,
    locally_linear: bool,
    locally_traceable: bool,
    locally_hamiltonian: bool,
    hamiltonian: bool,
    traceable: bool,
    invariants_pass: bool,
}

fn cmd_check(cli: &Cli, out: &Output, input: &PathBuf) -> Result<u8, CliError> {
    let graphs = parse_lines(&read_input(input)?)?;
    let reports: Vec<GraphProperties> = graphs
        .into_iter()
        .map(|(line, g)| {
            let cycle = find_hamilton_cycle(&g);
            let path = if cycle.is_some() { None } else { find_hamilton_path(&g) };
            GraphProperties {
                line,
                graph6: emit_graph6(&g),
                n: g.order(),
                m: g.size(),
                locally_linear: is_locally_linear(&g),
                locally_traceable: is_locally_traceable(&g),
                locally_hamiltonian: is_locally_hamiltonian(&g),
                hamiltonian: cycle.is_some(),
                traceable: cycle.is_some() || path.is_some(),
                certificate: cycle.or(path),
                invariants: check_local_linear_invariants(&g),
            }
        })
        .collect();
    let config = run_config(cli, "check".into(), Some(input.display().to_string()), Vec::new());
    match cli.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &reports {
                w.serialize(CheckRow {
                    line: r.line,
                    graph6: &r.graph6,
                    n: r.n,
                    m: r.m,
                    locally_linear: r.locally_linear,
                    locally_traceable: r.locally_traceable,
                    locally_hamiltonian: r.locally_hamiltonian,
                    hamiltonian: r.hamiltonian,
                    traceable: r.traceable,
                    invariants_pass: r.invariants.all_pass(),
                })
                .map_err(|e| CliError::Io(e.into()))?;
            }
            w.flush()?;
        }
        _ => {
            for r in &reports {
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
        }
    }
    out.save_report(&config, &Outcome::pass(), &reports)?;
    Ok(0)
}

fn verify_error(e: VerifyError, out: &Output, config: &RunConfig) -> Result<u8, CliError> {
    match e {
        VerifyError::Search(SearchError::Budget { partial, budget }) => {
            out.write_search(config, &Outcome::budget(), std::slice::from_ref(&partial))?;
            Err(CliError::Budget(format!(
                "node budget {budget} exhausted at order {} after {} nodes",
                partial.constraints.n, partial.nodes
            )))
        }
        VerifyError::Search(e) => Err(CliError::Input(e.to_string())),
        VerifyError::Construct(e) => Err(e.into()),
    }
}

fn verdict_code(pass: bool, reports: &[&SearchReport]) -> u8 {
    if reports.iter().any(|r| r.oracle_disagreements > 0) {
        EXIT_ORACLE
    } else if pass {
        0
    } else {
        EXIT_FAIL
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(
    cli: &Cli,
    out: &Output,
    claim: Claim,
    n: usize,
    search_cap: usize,
    chain_limit: usize,
    unrestricted_eleven: bool,
) -> Result<u8, CliError> {
    let opts = search_options(cli);
    let name = claim.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut config = run_config(cli, format!("verify {name}"), None, Vec::new());
    match claim {
        Claim::MinOrder => {
            let r = match verify_min_order(&VerifyOptions {
                search: opts,
                unrestricted_eleven,
            }) {
                Ok(r) => r,
                Err(e) => return verify_error(e, out, &config),
            };
            config.constraints = r.runs.iter().map(|s| s.constraints.clone()).collect();
            let below: u64 = r.runs[..r.runs.len() - 1].iter().map(|s| s.filters.matching).sum();
            let at12 = r.runs.last().map_or(0, |s| s.filters.matching);
            out.say(&format!(
                "{} min-order: {below} witnesses for n <= 11, {at12} at n = 12 (confirmed by oracle: {})",
                pass_word(r.pass),
                r.witness_confirmed
            ));
            let outcome = Outcome::new(r.pass);
            out.emit_report(&config, &outcome, &r)?;
            out.write_search_files(&r.runs)?;
            Ok(verdict_code(r.pass, &r.runs.iter().collect::<Vec<_>>()))
        }
        Claim::MinSize => {
            config.constraints = vec![SearchConstraints::new(n)
                .requiring(Requirement::Nonhamiltonian)
                .with_m_max(search_cap)];
            let r = match verify_min_size(n, search_cap, chain_limit, &opts) {
                Ok(r) => r,
                Err(e) => return verify_error(e, out, &config),
            };
            let chain_top = r.chain.last().map_or(n, |c| c.n);
            out.say(&format!(
                "{} min-size: min witness size {} at n = {n}; chain validated for orders {}..{chain_top}: {}",
                pass_word(r.pass),
                r.min_witness_size.map_or("none".into(), |m| m.to_string()),
                n + 1,
                r.chain_valid
            ));
            let outcome = Outcome::new(r.pass);
            out.emit_report(&config, &outcome, &r)?;
            out.write_search_files(std::slice::from_ref(&r.search))?;
            out.write_chain(&r.chain)?;
            Ok(verdict_code(r.pass, &[&r.search]))
        }
        Claim::NontraceableSize => {
            config.constraints = vec![SearchConstraints::new(n)
                .requiring(Requirement::Nontraceable)
                .with_m_max(2 * n + 2)];
            let r = match verify_min_size_nontraceable(n, &opts) {
                Ok(r) => r,
                Err(e) => return verify_error(e, out, &config),
            };
            out.say(&format!(
                "{} nontraceable-size: {} of {} classes with n = {n}, m <= {} are nontraceable; divisibility violations: {}",
                pass_word(r.pass),
                r.search.filters.nontraceable,
                r.search.filters.classes,
                2 * n + 2,
                r.search.divisibility_violations
            ));
            let outcome = Outcome::new(r.pass);
            out.emit_report(&config, &outcome, &r)?;
            out.write_search_files(std::slice::from_ref(&r.search))?;
            Ok(verdict_code(r.pass, &[&r.search]))
        }
        Claim::DegreeBound => {
            let r = match verify_degree_bound(n, &opts) {
                Ok(r) => r,
                Err(e) => return verify_error(e, out, &config),
            };
            config.constraints = vec![r.sharp.constraints.clone(), r.uncapped.constraints.clone()];
            out.say(&format!(
                "{} degree-bound: largest witness degree {} at n = {n} (bound {})",
                pass_word(r.pass),
                r.max_witness_degree.map_or("none".into(), |d| d.to_string()),
                n.saturating_sub(5)
            ));
            let outcome = Outcome::new(r.pass);
            out.emit_report(&config, &outcome, &r)?;
            out.write_search_files(&[r.sharp.clone(), r.uncapped.clone()])?;
            Ok(verdict_code(r.pass, &[&r.sharp, &r.uncapped]))
        }
    }
}

fn parse_edge(s: &str) -> Result<Edge, CliError> {
    let bad = || CliError::Input(format!("bad edge {s:?}; expected u-v"));
    let (a, b) = s.split_once('-').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == b {
        return Err(bad());
    }
    Ok(Edge::new(a, b))
}

fn read_seed(seed: &str) -> Result<Graph, CliError> {
    let path = PathBuf::from(seed);
    let text = if path.is_file() {
        let body = read_input(&path)?;
        body.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim().to_string()
    } else {
        seed.trim().to_string()
    };
    parse_graph6(&text).map_err(|e| CliError::Input(format!("seed: {e}")))
}

#[derive(Serialize)]
struct ChainEntry {
    step: usize,
    n: usize,
    m: usize,
    locally_linear: bool,
    hamiltonian: Option<bool>,
}

fn cmd_construct(
    cli: &Cli,
    out: &Output,
    seed: &str,
    steps: usize,
    start_edge: Option<&str>,
) -> Result<u8, CliError> {
    let g = read_seed(seed)?;
    let edge = match start_edge {
        Some(s) => Some(parse_edge(s)?),
        None => find_chain_start(&g)?,
    };
    let config = run_config(cli, "construct".into(), Some(seed.to_string()), Vec::new());
    let links = match edge {
        Some(e) => attach_triangle_chain(&ChainSpec {
            seed: g,
            start_edge: e,
            steps,
        })?,
        None if steps == 0 => Vec::new(),
        None => {
            return Err(CliError::Construction(
                "step 1 failed: no suitable start edge validates".into(),
            ))
        }
    };
    let entries: Vec<ChainEntry> = links
        .iter()
        .map(|l| ChainEntry {
            step: l.step,
            n: l.graph.order(),
            m: l.graph.size(),
            locally_linear: is_locally_linear(&l.graph),
            hamiltonian: l.hamiltonian,
        })
        .collect();
    let lines: Vec<String> = links.iter().map(|l| emit_graph6(&l.graph)).collect();
    for l in &lines {
        println!("{l}");
    }
    out.write_lines("chain.g6", &lines)?;
    out.write_json("chain.json", &entries)?;
    out.save_report(&config, &Outcome::pass(), &serde_json::json!({ "start_edge": edge, "chain": entries }))?;
    Ok(0)
}

#[derive(Serialize)]
struct OracleRow {
    n: usize,
    brute_force: usize,
    augmentation: usize,
    equal: bool,
}

fn cmd_oracle(cli: &Cli, out: &Output, n: usize) -> Result<u8, CliError> {
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(CliError::Input(format!(
            "oracle order {n} exceeds {BRUTE_FORCE_MAX_VERTICES}"
        )));
    }
    let opts = search_options(cli);
    let mut rows = Vec::new();
    let mut divergence = None;
    for k in 1..=n {
        let brute = brute_force_enumerate(k).map_err(|e| CliError::Input(e.to_string()))?;
        let (_, fast) = collect_locally_linear(&SearchConstraints::new(k), &opts).map_err(|e| match e {
            SearchError::Budget { .. } => CliError::Budget(e.to_string()),
            SearchError::Order { .. } => CliError::Input(e.to_string()),
        })?;
        let fast: BTreeSet<String> = fast.iter().map(emit_graph6).collect();
        let brute_keys: BTreeSet<String> = brute.into_keys().collect();
        if divergence.is_none() {
            divergence = brute_keys.symmetric_difference(&fast).next().cloned();
        }
        rows.push(OracleRow {
            n: k,
            brute_force: brute_keys.len(),
            augmentation: fast.len(),
            equal: brute_keys == fast,
        });
    }
    let pass = rows.iter().all(|r| r.equal);
    let config = run_config(cli, "oracle".into(), None, Vec::new());
    match cli.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &rows {
                w.serialize(r).map_err(|e| CliError::Io(e.into()))?;
            }
            w.flush()?;
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
        Format::Text => {
            println!("{:>3} {:>12} {:>12}", "n", "brute-force", "augmentation");
            for r in &rows {
                println!("{:>3} {:>12} {:>12}", r.n, r.brute_force, r.augmentation);
            }
        }
    }
    out.save_report(&config, &Outcome::new(pass), &rows)?;
    if let Some(g6) = divergence {
        eprintln!("first divergent canonical form: {g6}");
        return Ok(EXIT_ORACLE);
    }
    Ok(0)
}

fn cmd_search(cli: &Cli, out: &Output, c: SearchConstraints) -> Result<u8, CliError> {
    let opts = search_options(cli);
    let config = run_config(cli, "search".into(), None, vec![c.clone()]);
    let report = match enumerate_locally_linear(&c, &opts, &|_| {}) {
        Ok(r) => r,
        Err(SearchError::Budget { partial, budget }) => {
            out.write_search(&config, &Outcome::budget(), std::slice::from_ref(&partial))?;
            return Err(CliError::Budget(format!(
                "node budget {budget} exhausted after {} nodes",
                partial.nodes
            )));
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    out.say(&format!(
        "n = {}: {} classes, {} nonhamiltonian, {} nontraceable, {} matching, {:.2}s",
        c.n,
        report.filters.classes,
        report.filters.nonhamiltonian,
        report.filters.nontraceable,
        report.filters.matching,
        report.elapsed_secs
    ));
    out.write_search(&config, &Outcome::pass(), std::slice::from_ref(&report))?;
    Ok(verdict_code(true, &[&report]))
}
