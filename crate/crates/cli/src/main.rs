use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use avgord::classes::{class_number, conjugacy_classes, power_classes};
use avgord::corpus::{corpus_recipes, render_reports, CorpusSpec, GroupFailure, ReportFormat};
use avgord::family::{FamilyRegistry, GroupRecipe};
use avgord::group::GroupTable;
use avgord::order::order_stats;
use avgord::verify::{verify_group, VerificationReport, VerifyConfig, DEFAULT_CLASS_LIMIT, DEFAULT_SAMPLES};

#[derive(Parser)]
#[command(name = "avgord", version, about = "Average element orders of finite groups, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order statistics of one group.
    Stats {
        /// `family:<name>:<params>` or `file:<path>`
        source: String,
    },
    /// Power classes and conjugacy classes of one group.
    Classes { source: String },
    /// Verify every check over the corpus or the given groups.
    Verify(VerifyArgs),
    /// List the corpus without building it.
    #[command(alias = "corpus-list")]
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 32)]
    max_order: usize,
    /// Comma-separated family names; defaults to every family plus products.
    #[arg(long, value_delimiter = ',')]
    families: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Verify only these groups instead of the corpus.
    #[arg(long)]
    group: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_CLASS_LIMIT)]
    class_limit: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

fn corpus_spec(args: &CorpusArgs, registry: &FamilyRegistry) -> CorpusSpec {
    if args.families.is_empty() {
        CorpusSpec::all(args.max_order, registry)
    } else {
        CorpusSpec { max_order: args.max_order, families: args.families.clone(), file_paths: Vec::new() }
    }
}

fn resolve(registry: &FamilyRegistry, source: &str) -> Result<GroupTable> {
    let recipe = registry.parse_source(source)?;
    Ok(registry.build(&recipe)?)
}

fn cmd_stats(registry: &FamilyRegistry, source: &str) -> Result<()> {
    let g = resolve(registry, source)?;
    let st = order_stats(&g, &g.all())?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "name:  {}", g.name())?;
    writeln!(out, "order: {}", g.order())?;
    writeln!(out, "psi:   {}", st.psi)?;
    writeln!(out, "o:     {} ({:.6})", st.avg, st.avg.to_f64())?;
    writeln!(out, "meo:   {}", st.meo)?;
    writeln!(out, "k:     {}", class_number(&g))?;
    Ok(())
}

fn cmd_classes(registry: &FamilyRegistry, source: &str) -> Result<()> {
    let g = resolve(registry, source)?;
    let mut out = std::io::stdout().lock();
    let power = power_classes(&g);
    writeln!(out, "power classes: {}", power.len())?;
    for c in &power.classes {
        writeln!(out, "  rep={} order={} size={}", g.label(c.representative), c.rep_order, c.members.len())?;
    }
    let conj = conjugacy_classes(&g);
    writeln!(out, "conjugacy classes: {}", conj.len())?;
    for c in &conj.classes {
        writeln!(out, "  rep={} order={} size={}", g.label(c.representative), c.rep_order, c.members.len())?;
    }
    Ok(())
}

fn cmd_corpus(registry: &FamilyRegistry, args: &CorpusArgs) -> Result<()> {
    let recipes = corpus_recipes(&corpus_spec(args, registry), registry)?;
    let mut out = std::io::stdout().lock();
    for r in &recipes {
        writeln!(out, "{}\t{}", r.name, r.order)?;
    }
    Ok(())
}

fn cmd_verify(registry: &FamilyRegistry, args: &VerifyArgs) -> Result<bool> {
    let format: ReportFormat = args.format.parse()?;
    let recipes: Vec<GroupRecipe> = if args.group.is_empty() {
        corpus_recipes(&corpus_spec(&args.corpus, registry), registry)?
    } else {
        args.group.iter().map(|s| registry.parse_source(s)).collect::<avgord::Result<_>>()?
    };
    let cfg = VerifyConfig { class_limit: args.class_limit, samples: args.samples, seed: args.seed, ..VerifyConfig::default() };
    if cfg.samples == 0 {
        bail!("--samples must be at least 1");
    }

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().context("building worker pool")?;
    let results: Vec<std::result::Result<VerificationReport, GroupFailure>> = pool.install(|| {
        recipes
            .par_iter()
            .map(|r| {
                registry.build(r).and_then(|g| verify_group(&g, &cfg)).map_err(|e| GroupFailure {
                    name: r.name.clone(),
                    order: r.order,
                    message: e.to_string(),
                })
            })
            .collect()
    });
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(f) => {
                eprintln!("error: {} (order {}): {}", f.name, f.order, f.message);
                failures.push(f);
            }
        }
    }
    for rep in &reports {
        for c in rep.checks.iter().filter(|c| !c.holds) {
            eprintln!(
                "violation: {} {}: {} {} {} fails ({} of {}), witness {}",
                rep.name,
                c.check_id,
                c.lhs,
                serde_json::to_string(&c.relation).unwrap_or_default().trim_matches('"'),
                c.rhs,
                c.failures,
                c.instances,
                serde_json::to_string(&c.witness).unwrap_or_default()
            );
        }
    }

    let rendered = render_reports(&reports, &failures, format)?;
    let checks: u64 = reports.iter().map(|r| r.instances()).sum();
    let violations: u64 = reports.iter().map(|r| r.violations()).sum();
    let summary = format!("groups={} checks={} violations={}", reports.len(), checks, violations);
    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{rendered}");
            eprintln!("{summary}");
        }
    }
    Ok(violations == 0 && failures.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = FamilyRegistry::builtin();
    let result = match &cli.command {
        Command::Stats { source } => cmd_stats(&registry, source).map(|_| true),
        Command::Classes { source } => cmd_classes(&registry, source).map(|_| true),
        Command::Corpus(args) => cmd_corpus(&registry, args).map(|_| true),
        Command::Verify(args) => cmd_verify(&registry, args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
