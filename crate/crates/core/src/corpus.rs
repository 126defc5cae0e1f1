//! The built-in corpus, group files, and report files.
//!
//! Group files are JSON objects in one of two forms:
//!
//! ```text
//! {"name": "C2", "order": 2, "table": [[0, 1], [1, 0]]}
//! {"name": "S3", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}
//! ```
//!
//! Cayley tables use 0-based indices with the identity at 0.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{close_generators, Permutation};
use crate::error::{invalid, Error, Result};
use crate::family::{FamilyRegistry, GroupRecipe};
use crate::group::{validate_table, GroupTable, DEFAULT_ORDER_CAP};
use crate::verify::VerificationReport;

pub const PRODUCTS: &str = "products";
pub const FILES: &str = "files";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_order: usize,
    pub families: Vec<String>,
    pub file_paths: Vec<PathBuf>,
}

impl CorpusSpec {
    /// Every registered family plus direct products.
    pub fn all(max_order: usize, registry: &FamilyRegistry) -> Self {
        let mut families: Vec<String> = registry.names().iter().map(|s| s.to_string()).collect();
        families.push(PRODUCTS.to_string());
        CorpusSpec { max_order, families, file_paths: Vec::new() }
    }

    pub fn with_families(max_order: usize, families: &[&str]) -> Self {
        CorpusSpec { max_order, families: families.iter().map(|s| s.to_string()).collect(), file_paths: Vec::new() }
    }

    fn includes(&self, family: &str) -> bool {
        self.families.iter().any(|f| f == family)
    }
}

/// The corpus as recipes: names and orders without building any table.
///
/// Families come in registry order, each in ascending parameter order,
/// followed by products and then files. Products pair every non-abelian
/// member of order ≥ 6 with each non-trivial cyclic group, and with every
/// non-abelian member at or after it in that list.
pub fn corpus_recipes(spec: &CorpusSpec, registry: &FamilyRegistry) -> Result<Vec<GroupRecipe>> {
    if spec.max_order > DEFAULT_ORDER_CAP {
        return Err(Error::CapacityExceeded { what: "corpus max order", requested: spec.max_order, cap: DEFAULT_ORDER_CAP });
    }
    for f in &spec.families {
        if f != PRODUCTS && f != FILES {
            registry.lookup(f)?;
        }
    }
    let mut out = Vec::new();
    for name in registry.names() {
        if !spec.includes(name) {
            continue;
        }
        let fam = registry.lookup(name)?;
        for params in fam.corpus_params(spec.max_order) {
            out.push(registry.recipe(name, &params)?);
        }
    }
    if spec.includes(PRODUCTS) {
        let half = spec.max_order / 2;
        let mut nonabelian = Vec::new();
        for name in registry.names() {
            let fam = registry.lookup(name)?;
            if fam.abelian() {
                continue;
            }
            for params in fam.corpus_params(half) {
                let r = registry.recipe(name, &params)?;
                let g_is_nonabelian = r.order >= 6 && !registry.build(&r)?.is_abelian();
                if g_is_nonabelian {
                    nonabelian.push(r);
                }
            }
        }
        for (i, a) in nonabelian.iter().enumerate() {
            for k in 2..=spec.max_order / a.order {
                out.push(GroupRecipe::product(a, &registry.recipe("cyclic", &[k])?));
            }
            for b in &nonabelian[i..] {
                if a.order * b.order <= spec.max_order {
                    out.push(GroupRecipe::product(a, b));
                }
            }
        }
    }
    if spec.includes(FILES) || !spec.file_paths.is_empty() {
        for path in &spec.file_paths {
            let g = load_group(path)?;
            if g.order() <= spec.max_order {
                out.push(GroupRecipe { name: g.name().to_string(), order: g.order(), source: crate::family::RecipeSource::File(path.clone()) });
            }
        }
    }
    Ok(out)
}

pub fn builtin_corpus(spec: &CorpusSpec) -> Result<Vec<GroupTable>> {
    let registry = FamilyRegistry::builtin();
    corpus_recipes(spec, &registry)?.iter().map(|r| registry.build(r)).collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Cayley { name: String, order: usize, table: Vec<Vec<usize>> },
    Permutation { name: String, degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupFile {
    pub fn into_group(self, origin: &str) -> Result<GroupTable> {
        match self {
            GroupFile::Cayley { name, order, table } => {
                if table.len() != order {
                    return Err(Error::Parse {
                        path: origin.to_string(),
                        message: format!("order {order} but table has {} rows", table.len()),
                    });
                }
                if order > DEFAULT_ORDER_CAP {
                    return Err(Error::CapacityExceeded { what: "group file", requested: order, cap: DEFAULT_ORDER_CAP });
                }
                Ok(validate_table(&table).map_err(Error::Validation)?.with_name(name))
            }
            GroupFile::Permutation { name, degree, generators } => {
                let gens = generators.into_iter().map(Permutation::new).collect::<Result<Vec<_>>>()?;
                close_generators(degree, &gens, &name)
            }
        }
    }
}

pub fn load_group(path: &Path) -> Result<GroupTable> {
    let text = fs::read_to_string(path)?;
    parse_group(&text, &path.display().to_string())
}

pub fn parse_group(text: &str, origin: &str) -> Result<GroupTable> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::Parse { path: origin.to_string(), message: e.to_string() })?;
    file.into_group(origin)
}

/// Cayley form, one table row per line.
pub fn render_group(g: &GroupTable) -> String {
    let mut s = String::new();
    let name = serde_json::to_string(g.name()).expect("string serializes");
    let _ = writeln!(s, "{{\"name\": {name}, \"order\": {}, \"table\": [", g.order());
    let rows = g.rows();
    for (i, row) in rows.iter().enumerate() {
        let cells = row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let sep = if i + 1 < rows.len() { "," } else { "" };
        let _ = writeln!(s, "  [{cells}]{sep}");
    }
    s.push_str("]}\n");
    s
}

pub fn save_group(g: &GroupTable, path: &Path) -> Result<()> {
    fs::write(path, render_group(g))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(invalid(format!("unknown report format '{s}'"))),
        }
    }
}

/// A group that could not be verified, kept alongside the reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFailure {
    pub name: String,
    pub order: usize,
    pub message: String,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    order: usize,
    psi: u64,
    avg_num: u64,
    avg_den: u64,
    meo: u64,
    k: u64,
    cc_mode: &'static str,
    cc_tested: u64,
    all_hold: bool,
    violations: u64,
}

const CSV_HEADER: [&str; 11] =
    ["name", "order", "psi", "avg_num", "avg_den", "meo", "k", "cc_mode", "cc_tested", "all_hold", "violations"];

fn sorted(reports: &[VerificationReport]) -> Vec<&VerificationReport> {
    let mut v: Vec<&VerificationReport> = reports.iter().collect();
    v.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    v
}

pub fn render_reports(reports: &[VerificationReport], failures: &[GroupFailure], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in sorted(reports) {
                w.serialize(CsvRow {
                    name: &r.name,
                    order: r.order,
                    psi: r.stats.psi,
                    avg_num: r.stats.avg.num(),
                    avg_den: r.stats.avg.den(),
                    meo: r.stats.meo,
                    k: r.k,
                    cc_mode: r.cc_mode.as_str(),
                    cc_tested: r.cc_tested,
                    all_hold: r.all_hold(),
                    violations: r.violations(),
                })
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                reports: Vec<&'a VerificationReport>,
                errors: &'a [GroupFailure],
            }
            let mut s = serde_json::to_string_pretty(&Doc { reports: sorted(reports), errors: failures })
                .map_err(|e| Error::Io(e.into()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn write_reports(
    reports: &[VerificationReport],
    failures: &[GroupFailure],
    format: ReportFormat,
    path: &Path,
) -> Result<()> {
    fs::write(path, render_reports(reports, failures, format)?)?;
    Ok(())
}
