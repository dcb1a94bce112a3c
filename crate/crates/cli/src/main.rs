use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use ulam_words::engine::{working_memory_bytes, KNOWN_COUNTS};
use ulam_words::io::level_file::level_file_name;
use ulam_words::io::{export_reports, load_store, render_heatmap, save_level};
use ulam_words::oracle::oracle_levels;
use ulam_words::patterns::{check_families, check_power_conjecture};
use ulam_words::stats::{
    check_growth_bounds, density, density_fit_error, discrepancy, gap_mean_fit_error, gap_stats,
    modular_profile, PRIME_POWERS_BELOW_30,
};
use ulam_words::{UlamTable, Word};

const MAX_ORACLE_LENGTH: u32 = 16;

#[derive(Parser)]
#[command(
    name = "ulam-words",
    version,
    about = "Enumerate and analyse Ulam words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build levels 1..=N and optionally store them as level files.
    Compute {
        #[arg(long, default_value_t = 24)]
        max_n: u32,
        #[arg(long, env = "ULAM_STORE")]
        store: Option<PathBuf>,
        /// Working-memory budget per level, in MiB.
        #[arg(long, default_value_t = 1024)]
        memory_budget_mb: u64,
    },
    /// Cross-check the sieve against the dictionary oracle, symmetry and
    /// published counts, and optionally every closed-form family.
    Verify {
        #[arg(long, default_value_t = 12)]
        oracle_max: u32,
        #[arg(long)]
        patterns: bool,
        #[arg(long, default_value_t = 24)]
        max_n: u32,
        /// Verify stored levels instead of computing fresh ones.
        #[arg(long, env = "ULAM_STORE")]
        store: Option<PathBuf>,
    },
    /// Write CSV reports for the stored levels.
    Stats {
        #[arg(long, env = "ULAM_STORE")]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the zero-leading words of one level as a PGM image.
    Heatmap {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "ULAM_STORE")]
        store: Option<PathBuf>,
    },
    /// Print fit errors, growth-bound checks and the power-of-two ones scan.
    Conjectures {
        #[arg(long, env = "ULAM_STORE")]
        store: PathBuf,
    },
}

#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Compute {
            max_n,
            store,
            memory_budget_mb,
        } => compute(max_n, store.as_deref(), memory_budget_mb),
        Command::Verify {
            oracle_max,
            patterns,
            max_n,
            store,
        } => verify(oracle_max, patterns, max_n, store.as_deref()),
        Command::Stats { store, out } => {
            let table = load_table(&store)?;
            let written = export_reports(&table, &out)?;
            println!("wrote {} reports to {}", written.len(), out.display());
            Ok(Outcome::Pass)
        }
        Command::Heatmap { n, out, store } => heatmap(n, &out, store.as_deref()),
        Command::Conjectures { store } => conjectures(&load_table(&store)?),
    }
}

fn load_table(store: &Path) -> Result<UlamTable> {
    let levels = load_store(store)?;
    if levels.is_empty() {
        bail!("no level files in {}", store.display());
    }
    Ok(UlamTable::from_levels(levels)?)
}

fn compute(max_n: u32, store: Option<&Path>, budget_mb: u64) -> Result<Outcome> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let budget = budget_mb << 20;
    if max_n > 1 && working_memory_bytes(max_n) > budget {
        bail!(
            "level {max_n} needs {} MiB of working memory; raise --memory-budget-mb",
            working_memory_bytes(max_n).div_ceil(1 << 20)
        );
    }
    if let Some(dir) = store {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut table = UlamTable::new().with_memory_budget(budget);
    let save = |level: &ulam_words::LevelSet| -> Result<()> {
        if let Some(dir) = store {
            save_level(level, dir.join(level_file_name(level.length())))?;
        }
        Ok(())
    };
    println!("n,count");
    let base = table.level(1).unwrap();
    println!("1,{}", base.count());
    save(base)?;
    let start = Instant::now();
    let mut saved = Ok(());
    table.extend_to_with(max_n, |level| {
        println!("{},{}", level.length(), level.count());
        if saved.is_ok() {
            saved = save(level);
        }
    })?;
    saved?;
    eprintln!("built levels 1..={max_n} in {:.2?}", start.elapsed());
    Ok(Outcome::Pass)
}

struct Checks {
    failed: usize,
}

impl Checks {
    fn report(&mut self, ok: bool, what: impl std::fmt::Display) {
        if ok {
            println!("ok    {what}");
        } else {
            println!("FAIL  {what}");
            self.failed += 1;
        }
    }
}

fn verify(oracle_max: u32, patterns: bool, max_n: u32, store: Option<&Path>) -> Result<Outcome> {
    if !(1..=MAX_ORACLE_LENGTH).contains(&oracle_max) {
        bail!("--oracle-max must be in 1..={MAX_ORACLE_LENGTH}");
    }
    let table = match store {
        Some(dir) if dir.join(level_file_name(1)).exists() => load_table(dir)?,
        _ => UlamTable::build(max_n.max(oracle_max))?,
    };
    let mut checks = Checks { failed: 0 };

    let oracle = oracle_levels(oracle_max.min(table.max_length()));
    for (i, expected) in oracle.iter().enumerate() {
        let n = i as u32 + 1;
        let sieve: std::collections::BTreeSet<Word> = table.level(n).unwrap().words().collect();
        checks.report(
            &sieve == expected,
            format_args!("oracle agrees at n={n} ({} words)", sieve.len()),
        );
    }

    for level in table.levels() {
        let closed = level
            .words()
            .all(|w| level.contains_word(&w.complement()) && level.contains_word(&w.reverse()));
        checks.report(
            closed,
            format_args!("n={} closed under complement and reverse", level.length()),
        );
    }

    for n in 2..=table.max_length().min(14) {
        let level = table.level(n).unwrap();
        let sound = (0..1u64 << n).all(|c| {
            let rc = table
                .representation_count(&Word::decode(n, c).unwrap())
                .unwrap();
            level.contains(c) == (rc == 1)
        });
        checks.report(
            sound,
            format_args!("n={n} matches the representation-count definition"),
        );
    }

    for (n, expected) in KNOWN_COUNTS {
        if let Some(level) = table.level(n) {
            checks.report(
                level.count() == expected,
                format_args!("#U_{n} = {} (published {expected})", level.count()),
            );
        }
    }

    if patterns {
        let report = check_families(&table)?;
        for (family, word) in &report.mismatches {
            println!("      mismatch in {family}: {word}");
        }
        checks.report(
            report.mismatches.is_empty(),
            format_args!("closed-form families agree on {} words", report.checked),
        );
        for k in 1..=2 {
            let found = check_power_conjecture(&table, k)?;
            checks.report(
                found.is_empty(),
                format_args!("0^a 1^{} 0^b rule (k={k})", 1 << k),
            );
        }
    }

    println!("{} check(s) failed", checks.failed);
    Ok(if checks.failed == 0 {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

fn heatmap(n: u32, out: &Path, store: Option<&Path>) -> Result<Outcome> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let stored = store
        .map(|dir| dir.join(level_file_name(n)))
        .filter(|p| p.exists());
    let level = match stored {
        Some(path) => ulam_words::io::load_level(path)?,
        None => UlamTable::build(n)?.level(n).unwrap().clone(),
    };
    render_heatmap(&level, out)?;
    println!("wrote {}", out.display());
    Ok(Outcome::Pass)
}

fn conjectures(table: &UlamTable) -> Result<Outcome> {
    let mut outcome = Outcome::Pass;

    println!("n,density,density_fit_error_pct,mean_gap,gap_fit_error_pct,max_gap,max_gap/1.35^n");
    for level in table.levels().iter().skip(1) {
        let n = level.length();
        let s = gap_stats(level)?;
        println!(
            "{n},{:.9},{:.4},{:.6},{:.4},{},{:.4}",
            density(level),
            density_fit_error(level, 0.526, -0.3) * 100.0,
            s.mean(),
            gap_mean_fit_error(&s, 1.9, 0.3) * 100.0,
            s.max_gap(),
            s.max_gap() as f64 / 1.35f64.powi(n as i32),
        );
    }

    let counts = table.counts().into_iter().collect();
    let growth = check_growth_bounds(&counts);
    println!(
        "growth bounds: linear checked {:?}, violations {:?}; weak checked {:?}, violations {:?}",
        growth.linear_checked.len(),
        growth.linear_violations,
        growth.weak_checked.len(),
        growth.weak_violations
    );
    if !growth.is_clean() {
        outcome = Outcome::Violation;
    }

    for k in 1..=4u32 {
        if (1u32 << k) + 2 > table.max_length() {
            break;
        }
        let found = check_power_conjecture(table, k)?;
        let status = if k <= 2 { "theorem" } else { "conjecture" };
        println!(
            "0^a 1^{} 0^b ({status}): {} counterexample(s)",
            1 << k,
            found.len()
        );
        for c in &found {
            println!(
                "  a={} b={} n={} ulam={}",
                c.a, c.b, c.length, c.engine_says_ulam
            );
        }
        if k <= 2 && !found.is_empty() {
            outcome = Outcome::Violation;
        }
    }

    let last = table.level(table.max_length()).unwrap();
    print!("discrepancy at n={}:", last.length());
    for pk in PRIME_POWERS_BELOW_30 {
        print!(" d_{pk}={:.3e}", discrepancy(&modular_profile(last, pk)?));
    }
    println!();

    if last.count() >= 2 {
        let s = gap_stats(last)?;
        let by_class = s.mod_profile(6)?;
        let total = s.gap_count() as f64;
        println!(
            "gap residues mod 6 at n={}: p(2 or 4) = {:.4}, p(1 or 3) = {:.4}",
            last.length(),
            (by_class[2] + by_class[4]) as f64 / total,
            (by_class[1] + by_class[3]) as f64 / total
        );
    }
    Ok(outcome)
}
