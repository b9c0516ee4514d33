//! The `run`, `compare` and `sweep` workflows behind the command-line tool.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};

use super::config::{ConfigFile, ConfigOverrides};
use super::reports::{
    load_welfare, write_comparison_csv, write_json, write_long_csv, FileDigest, RunManifest, RunSummary,
    MANIFEST_FILE, MANIFEST_SCHEMA, SUMMARY_FILE, TOOL_VERSION,
};
use super::rounds::{RoundWriter, ROUNDS_FILE, ROUNDS_SCHEMA};
use crate::emotion::Mode;
use crate::error::{Error, Result};
use crate::society::{simulate, SimulationConfig, SocietyPreset};
use crate::stats::{summarize, ComparisonResult, WelfareAccumulator, WelfareTable};

pub const TABLE_FILE: &str = "table1.csv";
pub const LONG_FILE: &str = "welfare_long.csv";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads for games within a step; 0 uses every core.
    pub threads: usize,
    /// Write `rounds.csv` (large at full scale).
    pub write_rounds: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { threads: 1, write_rounds: true }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub summary: RunSummary,
    pub manifest: RunManifest,
    pub table: WelfareTable,
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// Runs `config` and writes `rounds.csv`, `summary.json` and `manifest.json` into `out_dir`.
pub fn run_to_dir(config: &SimulationConfig, out_dir: &Path, opts: RunOptions) -> Result<RunOutput> {
    config.validate()?;
    create_dir(out_dir)?;
    let started_at = now();

    let rounds_path = out_dir.join(ROUNDS_FILE);
    let mut writer = if opts.write_rounds { Some(RoundWriter::create(&rounds_path)?) } else { None };
    let mut acc = WelfareAccumulator::default();
    let mut records = 0u64;
    let mut failure = None;
    simulate(config, opts.threads, |r| {
        if failure.is_some() {
            return;
        }
        records += 1;
        let step = acc.push(r).and_then(|_| match writer.as_mut() {
            Some(w) => w.write(r),
            None => Ok(()),
        });
        if let Err(e) = step {
            failure = Some(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut files = Vec::new();
    if let Some(w) = writer {
        use std::io::Write;
        let mut inner = w.finish()?;
        inner.flush().map_err(|e| Error::io(&rounds_path, e))?;
        drop(inner);
        files.push(FileDigest::of(&rounds_path)?);
    }

    let table = acc.finish()?;
    let summary = RunSummary::new(config, records, &table)?;
    let summary_path = out_dir.join(SUMMARY_FILE);
    write_json(&summary_path, &summary)?;
    files.push(FileDigest::of(&summary_path)?);

    let manifest = RunManifest {
        schema: MANIFEST_SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        rounds_schema: ROUNDS_SCHEMA.into(),
        config: *config,
        master_seed: config.master_seed,
        started_at,
        finished_at: now(),
        files,
    };
    write_json(&out_dir.join(MANIFEST_FILE), &manifest)?;
    Ok(RunOutput { summary, manifest, table })
}

/// `<stem>.long.csv` next to the table.
pub fn long_path_for(table_path: &Path) -> PathBuf {
    let stem = table_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "comparison".into());
    table_path.with_file_name(format!("{stem}.long.csv"))
}

pub fn write_comparison(
    rows: &[ComparisonResult],
    tables: &[&WelfareTable],
    table_path: &Path,
) -> Result<()> {
    if let Some(parent) = table_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        create_dir(parent)?;
    }
    let file = File::create(table_path).map_err(|e| Error::io(table_path, e))?;
    write_comparison_csv(BufWriter::new(file), rows)?;
    let long = long_path_for(table_path);
    let file = File::create(&long).map_err(|e| Error::io(&long, e))?;
    write_long_csv(BufWriter::new(file), tables)
}

/// Compares two arms, each given as a `summary.json` or `rounds.csv`.
/// Writes the table to `out` and the long-format welfare CSV beside it.
pub fn compare_files(stable: &Path, svoie: &Path, out: &Path) -> Result<Vec<ComparisonResult>> {
    let a = load_welfare(stable)?;
    let b = load_welfare(svoie)?;
    let rows = summarize(&a, &b)?;
    write_comparison(&rows, &[&a, &b], out)?;
    Ok(rows)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    pub seed: u64,
    pub desk: bool,
    pub steps: Option<u32>,
    pub repeats: Option<u32>,
    pub run: RunOptions,
}

pub fn sweep_config(preset: SocietyPreset, mode: Mode, opts: &SweepOptions) -> Result<SimulationConfig> {
    ConfigFile::default().resolve(&ConfigOverrides {
        society: Some(preset.name().to_owned()),
        mode: Some(mode),
        steps: opts.steps,
        repeats: opts.repeats,
        seed: Some(opts.seed),
        desk: opts.desk,
    })
}

/// Every preset under both modes, then one combined table (`table1.csv`)
/// and long-format CSV (`welfare_long.csv`) in `out_dir`.
pub fn sweep(out_dir: &Path, opts: &SweepOptions) -> Result<Vec<ComparisonResult>> {
    create_dir(out_dir)?;
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    for preset in SocietyPreset::ALL {
        let mut arms = Vec::with_capacity(2);
        for mode in [Mode::Stable, Mode::Svoie] {
            let config = sweep_config(preset, mode, opts)?;
            let dir = out_dir.join(format!("{}-{}", preset.name(), mode.as_str()));
            arms.push(run_to_dir(&config, &dir, opts.run)?.table);
        }
        rows.extend(summarize(&arms[0], &arms[1])?);
        tables.extend(arms);
    }
    let refs: Vec<&WelfareTable> = tables.iter().collect();
    let table_path = out_dir.join(TABLE_FILE);
    let file = File::create(&table_path).map_err(|e| Error::io(&table_path, e))?;
    write_comparison_csv(BufWriter::new(file), &rows)?;
    let long = out_dir.join(LONG_FILE);
    let file = File::create(&long).map_err(|e| Error::io(&long, e))?;
    write_long_csv(BufWriter::new(file), &refs)?;
    Ok(rows)
}
