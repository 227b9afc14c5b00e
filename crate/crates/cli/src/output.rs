//! Report envelopes, witness corpora and CSV summaries.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use loclin::search::{SearchConstraints, SearchReport};
use loclin::verify::ChainRecord;

use crate::Format;

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub out: Option<String>,
    pub workers: usize,
    pub budget_nodes: u64,
    pub format: Format,
    pub constraints: Vec<SearchConstraints>,
}

impl RunConfig {
    /// SHA-256 over the tool version and the search constraints.
    pub fn constraints_hash(&self) -> String {
        let body = serde_json::to_vec(&(env!("CARGO_PKG_VERSION"), &self.constraints))
            .expect("constraints serialize");
        hex::encode(Sha256::digest(body))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub pass: bool,
    pub status: &'static str,
}

impl Outcome {
    pub fn new(pass: bool) -> Self {
        Outcome {
            pass,
            status: if pass { "pass" } else { "fail" },
        }
    }

    pub fn pass() -> Self {
        Outcome::new(true)
    }

    pub fn budget() -> Self {
        Outcome {
            pass: false,
            status: "budget_exhausted",
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    run: &'a RunConfig,
    constraints_hash: String,
    outcome: &'a Outcome,
    report: &'a T,
}

#[derive(Serialize)]
struct ManifestEntry<'a> {
    graph6: &'a str,
    n: usize,
    m: usize,
    delta: usize,
    hamiltonian: bool,
    traceable: bool,
    certificate: &'a Option<loclin::hamilton::Certificate>,
}

#[derive(Serialize)]
struct SummaryRow {
    n: usize,
    m_max: Option<usize>,
    delta_max: Option<usize>,
    classes: u64,
    nonhamiltonian: u64,
    nontraceable: u64,
    seconds: f64,
}

pub struct Output {
    dir: Option<PathBuf>,
    format: Format,
}

impl Output {
    pub fn new(dir: &Option<PathBuf>, format: Format) -> Self {
        Output {
            dir: dir.clone(),
            format,
        }
    }

    fn path(&self, name: &str) -> io::Result<Option<PathBuf>> {
        match &self.dir {
            None => Ok(None),
            Some(d) => {
                fs::create_dir_all(d)?;
                Ok(Some(d.join(name)))
            }
        }
    }

    /// Human-readable line, printed only in text mode.
    pub fn say(&self, line: &str) {
        if self.format == Format::Text {
            println!("{line}");
        }
    }

    pub fn write_json<T: Serialize + ?Sized>(&self, name: &str, value: &T) -> io::Result<()> {
        if let Some(p) = self.path(name)? {
            write_pretty(&p, value)?;
        }
        Ok(())
    }

    pub fn write_lines(&self, name: &str, lines: &[String]) -> io::Result<()> {
        if let Some(p) = self.path(name)? {
            let mut body = lines.join("\n");
            if !body.is_empty() {
                body.push('\n');
            }
            fs::write(p, body)?;
        }
        Ok(())
    }

    /// Writes `report.json` into the output directory.
    pub fn save_report<T: Serialize>(&self, config: &RunConfig, outcome: &Outcome, report: &T) -> io::Result<()> {
        let env = envelope(config, outcome, report);
        self.write_json("report.json", &env)
    }

    /// Like [`Output::save_report`], and prints the envelope in JSON mode.
    pub fn emit_report<T: Serialize>(&self, config: &RunConfig, outcome: &Outcome, report: &T) -> io::Result<()> {
        let env = envelope(config, outcome, report);
        if self.format == Format::Json {
            println!("{}", serde_json::to_string_pretty(&env).expect("reports serialize"));
        }
        self.write_json("report.json", &env)
    }

    /// Witness corpus, manifest and CSV summary for a set of searches. The
    /// summary goes to stdout in CSV mode.
    pub fn write_search_files(&self, runs: &[SearchReport]) -> io::Result<()> {
        let witnesses: Vec<_> = runs.iter().flat_map(|r| &r.witnesses).collect();
        let lines: Vec<String> = witnesses.iter().map(|w| w.graph6.clone()).collect();
        self.write_lines("witnesses.g6", &lines)?;
        let manifest: Vec<ManifestEntry> = witnesses
            .iter()
            .map(|w| ManifestEntry {
                graph6: &w.graph6,
                n: w.n,
                m: w.m,
                delta: w.delta,
                hamiltonian: w.hamiltonian,
                traceable: w.traceable,
                certificate: &w.certificate,
            })
            .collect();
        self.write_json("witnesses.json", &manifest)?;

        let summary = summary_csv(runs)?;
        if let Some(p) = self.path("summary.csv")? {
            fs::write(p, &summary)?;
        }
        if self.format == Format::Csv {
            print!("{summary}");
        }
        Ok(())
    }

    pub fn write_search(&self, config: &RunConfig, outcome: &Outcome, runs: &[SearchReport]) -> io::Result<()> {
        self.emit_report(config, outcome, &runs)?;
        self.write_search_files(runs)
    }

    pub fn write_chain(&self, chain: &[ChainRecord]) -> io::Result<()> {
        let lines: Vec<String> = chain.iter().map(|c| c.graph6.clone()).collect();
        self.write_lines("chain.g6", &lines)?;
        self.write_json("chain.json", chain)
    }
}

fn envelope<'a, T: Serialize>(config: &'a RunConfig, outcome: &'a Outcome, report: &'a T) -> Envelope<'a, T> {
    Envelope {
        run: config,
        constraints_hash: config.constraints_hash(),
        outcome,
        report,
    }
}

fn write_pretty<T: Serialize + ?Sized>(path: &Path, value: &T) -> io::Result<()> {
    let mut body = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    body.push('\n');
    fs::write(path, body)
}

fn summary_csv(runs: &[SearchReport]) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in runs {
        w.serialize(SummaryRow {
            n: r.constraints.n,
            m_max: r.constraints.m_max,
            delta_max: r.constraints.delta_max,
            classes: r.filters.classes,
            nonhamiltonian: r.filters.nonhamiltonian,
            nontraceable: r.filters.nontraceable,
            seconds: r.elapsed_secs,
        })
        .map_err(io::Error::other)?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
