//! Many analyses at once, with a deterministic summary and exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{corpus_file_name, generate_corpus, GenSpec};
use crate::error::{Error, Result};
use crate::problem::{parse_problem, ProblemFile};
use crate::report::{run_analysis, StructureReport, SCHEMA_VERSION};
use crate::scalar::FieldSpec;

/// One named input of a batch. Inputs that failed to parse are kept so the
/// failure shows up in the summary.
#[derive(Clone, Debug)]
pub struct BatchInput {
    pub name: String,
    pub problem: Result<ProblemFile>,
}

/// Reads every `*.problem` file of a directory, sorted by file name.
pub fn inputs_from_dir(dir: &Path) -> Result<Vec<BatchInput>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "problem"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| BatchInput {
            name: p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
            problem: fs::read_to_string(&p).map_err(Error::from).and_then(|t| parse_problem(&t)),
        })
        .collect())
}

/// Generates inputs from `+`-separated corpus specs, e.g.
/// `ci:count=200+monomial:count=200`.
pub fn inputs_from_specs(text: &str, default_seed: u64) -> Result<Vec<BatchInput>> {
    let mut out = Vec::new();
    for part in text.split('+') {
        let spec = GenSpec::parse_with_seed(part.trim(), default_seed)?;
        for (i, p) in generate_corpus(&spec)?.into_iter().enumerate() {
            out.push(BatchInput {
                name: corpus_file_name(spec.kind, i),
                problem: Ok(p),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct BatchOptions {
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub field: Option<FieldSpec>,
    pub keep_timing: bool,
    /// Analyze everything even after a falsification. The exit code is
    /// still 4.
    pub keep_going: bool,
    /// Where a reproducer is written when a falsification aborts the run.
    pub reproducer_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Ok,
    Error,
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub name: String,
    pub status: EntryStatus,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<StructureReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub schema_version: u32,
    pub total: usize,
    pub analyzed: usize,
    pub gorenstein: usize,
    pub non_gorenstein: usize,
    pub agrees: usize,
    pub errors: usize,
    pub falsifications: usize,
    /// Set when a falsification stopped the run early.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aborted_at: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<String>,
    pub exit_code: i32,
    pub entries: Vec<BatchEntry>,
}

impl BatchSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    /// The same summary with per-entry reports removed.
    pub fn compact(&self) -> BatchSummary {
        let mut s = self.clone();
        for e in &mut s.entries {
            e.report = None;
        }
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let detail = match (&e.status, &e.message) {
                (EntryStatus::Ok, _) => format!(
                    "{} agrees={}",
                    if e.gorenstein == Some(true) { "gorenstein" } else { "not-gorenstein" },
                    e.agrees.unwrap_or(false)
                ),
                (_, Some(m)) => m.clone(),
                (_, None) => String::new(),
            };
            out.push_str(&format!("{:<28} {:<9} {detail}\n", e.name, format!("{:?}", e.status).to_lowercase()));
        }
        out.push_str(&format!(
            "total {} analyzed {} gorenstein {} non-gorenstein {} agrees {} errors {} falsifications {}\n",
            self.total, self.analyzed, self.gorenstein, self.non_gorenstein, self.agrees, self.errors, self.falsifications
        ));
        if let Some(name) = &self.aborted_at {
            out.push_str(&format!("aborted at {name}\n"));
        }
        if let Some(path) = &self.reproducer {
            out.push_str(&format!("reproducer written to {path}\n"));
        }
        out
    }
}

fn analyze_one(input: &BatchInput, opts: &BatchOptions) -> BatchEntry {
    let result = input.problem.clone().and_then(|p| {
        let p = match opts.field {
            Some(f) => p.with_field(f),
            None => p,
        };
        run_analysis(&p)
    });
    match result {
        Ok(report) => {
            let report = if opts.keep_timing { report } else { report.without_timing() };
            let falsified = report.has_falsification();
            BatchEntry {
                name: input.name.clone(),
                status: if falsified { EntryStatus::Falsified } else { EntryStatus::Ok },
                exit_code: if falsified { 4 } else { 0 },
                gorenstein: Some(report.verdict.oracle_gorenstein),
                agrees: Some(report.verdict.agrees),
                error_kind: None,
                message: falsified.then(|| report.falsifications.join("; ")),
                report: Some(report),
            }
        }
        Err(e) => BatchEntry {
            name: input.name.clone(),
            status: EntryStatus::Error,
            exit_code: e.exit_code(),
            gorenstein: None,
            agrees: None,
            error_kind: Some(e.kind().to_string()),
            message: Some(e.to_string()),
            report: None,
        },
    }
}

fn reproducer_text(input: &BatchInput, entry: &BatchEntry, opts: &BatchOptions) -> String {
    let mut text = format!("# falsification in {}\n", input.name);
    if let Some(m) = &entry.message {
        for line in m.lines() {
            text.push_str(&format!("# {line}\n"));
        }
    }
    if let Ok(p) = &input.problem {
        let p = match opts.field {
            Some(f) => p.with_field(f),
            None => p.clone(),
        };
        text.push_str(&p.to_string());
    }
    text
}

/// Analyzes every input, possibly in parallel. The summary does not depend
/// on the number of workers. The first falsification (in input order) ends
/// the run and, when a reproducer directory is set, is written out as a
/// problem file.
pub fn run_batch(inputs: &[BatchInput], opts: &BatchOptions) -> Result<BatchSummary> {
    let first_falsified = AtomicUsize::new(usize::MAX);
    let work = || -> Vec<Option<BatchEntry>> {
        inputs
            .par_iter()
            .enumerate()
            .map(|(i, input)| {
                if !opts.keep_going && i > first_falsified.load(Ordering::Relaxed) {
                    return None;
                }
                let entry = analyze_one(input, opts);
                if entry.status == EntryStatus::Falsified {
                    first_falsified.fetch_min(i, Ordering::Relaxed);
                }
                Some(entry)
            })
            .collect()
    };
    let results = if opts.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(work)
    } else {
        work()
    };

    let stop = first_falsified.into_inner();
    let keep = if opts.keep_going { usize::MAX } else { stop.saturating_add(1) };
    let entries: Vec<BatchEntry> = results
        .into_iter()
        .take(keep)
        .map(|e| e.expect("entries up to the first falsification are computed"))
        .collect();

    let mut reproducer = None;
    let aborted_at = (stop != usize::MAX && !opts.keep_going).then(|| inputs[stop].name.clone());
    if stop != usize::MAX {
        if let Some(dir) = &opts.reproducer_dir {
            fs::create_dir_all(dir)?;
            let path = dir.join(format!("falsification-{}", inputs[stop].name));
            let path = path.with_extension("problem");
            fs::write(&path, reproducer_text(&inputs[stop], &entries[stop], opts))?;
            reproducer = Some(path.display().to_string());
        }
    }

    let count = |f: &dyn Fn(&BatchEntry) -> bool| entries.iter().filter(|e| f(e)).count();
    Ok(BatchSummary {
        schema_version: SCHEMA_VERSION,
        total: inputs.len(),
        analyzed: count(&|e| e.report.is_some()),
        gorenstein: count(&|e| e.gorenstein == Some(true)),
        non_gorenstein: count(&|e| e.gorenstein == Some(false)),
        agrees: count(&|e| e.agrees == Some(true)),
        errors: count(&|e| e.status == EntryStatus::Error),
        falsifications: count(&|e| e.status == EntryStatus::Falsified),
        aborted_at,
        reproducer,
        exit_code: entries.iter().map(|e| e.exit_code).max().unwrap_or(0),
        entries,
    })
}

/// Writes one `<name>.json` report per analyzed input plus `summary.json`.
pub fn write_outputs(summary: &BatchSummary, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for e in &summary.entries {
        if let Some(r) = &e.report {
            let stem = e.name.strip_suffix(".problem").unwrap_or(&e.name);
            fs::write(dir.join(format!("{stem}.json")), r.to_json() + "\n")?;
        }
    }
    fs::write(dir.join("summary.json"), summary.compact().to_json() + "\n")?;
    Ok(())
}
