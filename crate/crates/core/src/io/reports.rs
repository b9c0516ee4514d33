//! JSON run summaries, manifests and the comparison CSVs.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::emotion::Mode;
use crate::error::{Error, Result};
use crate::io::rounds::{read_rounds_file, ROUNDS_SCHEMA};
use crate::society::{SimulationConfig, SocietyPreset, TraitCounts};
use crate::stats::{
    per_step, AgentWelfare, ComparisonResult, SampleLabel, SampleStats, WelfareAccumulator, WelfareTable,
};

pub const SUMMARY_SCHEMA: &str = "svoie-summary/1";
pub const MANIFEST_SCHEMA: &str = "svoie-manifest/1";
pub const SUMMARY_FILE: &str = "summary.json";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepeatStats {
    pub repeat: u32,
    #[serde(flatten)]
    pub stats: SampleStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub label: SampleLabel,
    /// Agents per repeat.
    pub size: usize,
    /// Over individual welfares pooled across repeats.
    pub pooled: SampleStats,
    pub per_repeat: Vec<RepeatStats>,
}

/// Contents of `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub schema: String,
    pub rounds_schema: String,
    pub society: SocietyPreset,
    pub mode: Mode,
    pub counts: TraitCounts,
    pub steps: u32,
    pub repeats: u32,
    pub seed: u64,
    pub records: u64,
    pub samples: Vec<SampleSummary>,
    pub agents: Vec<AgentWelfare>,
}

impl RunSummary {
    pub fn new(config: &SimulationConfig, records: u64, table: &WelfareTable) -> Result<Self> {
        let samples = table
            .labels()
            .into_iter()
            .map(|label| {
                let per_repeat = (0..table.repeats)
                    .map(|r| {
                        Ok(RepeatStats {
                            repeat: r,
                            stats: SampleStats::of(&table.sample_for_repeat(label, r).values)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SampleSummary {
                    label,
                    size: table.sample_size(label),
                    pooled: SampleStats::of(&table.sample(label).values)?,
                    per_repeat,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RunSummary {
            schema: SUMMARY_SCHEMA.into(),
            rounds_schema: ROUNDS_SCHEMA.into(),
            society: config.society.name,
            mode: config.society.mode,
            counts: config.society.counts,
            steps: config.steps,
            repeats: config.repeats,
            seed: config.master_seed,
            records,
            samples,
            agents: table.agents.clone(),
        })
    }

    pub fn welfare_table(&self) -> WelfareTable {
        WelfareTable {
            society: self.society,
            mode: self.mode,
            repeats: self.repeats,
            agents: self.agents.clone(),
        }
    }

    pub fn sample(&self, label: SampleLabel) -> Option<&SampleSummary> {
        self.samples.iter().find(|s| s.label == label)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_summary(path: &Path) -> Result<RunSummary> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let summary: RunSummary = serde_json::from_str(&text)?;
    if summary.schema != SUMMARY_SCHEMA {
        return Err(Error::Format(format!("unsupported summary schema {:?}", summary.schema)));
    }
    Ok(summary)
}

/// Welfare table from either a `summary.json` or a `rounds.csv`.
pub fn load_welfare(path: &Path) -> Result<WelfareTable> {
    if path.extension().is_some_and(|e| e == "json") {
        return Ok(read_summary(path)?.welfare_table());
    }
    let mut acc = WelfareAccumulator::default();
    for r in read_rounds_file(path)? {
        acc.push(&r?)?;
    }
    acc.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> Result<Self> {
        let data = fs::read(path).map_err(|e| Error::io(path, e))?;
        Ok(FileDigest {
            name: path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
            bytes: data.len() as u64,
            sha256: hex::encode(Sha256::digest(&data)),
        })
    }
}

/// Contents of `manifest.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    pub tool_version: String,
    pub rounds_schema: String,
    pub config: SimulationConfig,
    pub master_seed: u64,
    pub started_at: String,
    pub finished_at: String,
    pub files: Vec<FileDigest>,
}

impl RunManifest {
    /// Re-hashes every listed file in `dir` and reports the first mismatch.
    pub fn verify(&self, dir: &Path) -> Result<()> {
        for f in &self.files {
            let now = FileDigest::of(&dir.join(&f.name))?;
            if &now != f {
                return Err(Error::Mismatch(format!("{} does not match its manifest digest", f.name)));
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TableRow {
    society: SocietyPreset,
    sample: SampleLabel,
    size: usize,
    stable_mean: f64,
    stable_std: f64,
    stable_cov: f64,
    svoie_mean: f64,
    svoie_std: f64,
    svoie_cov: f64,
    stable_step_mean: f64,
    svoie_step_mean: f64,
    p_value: Option<f64>,
    cohens_d: Option<f64>,
    repeat_p_value: Option<f64>,
}

/// Comparison table: one row per (society, sample), both arms side by side.
/// Welfare columns are per round; `*_step_mean` are per time step.
pub fn write_comparison_csv<W: Write>(writer: W, rows: &[ComparisonResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in rows {
        w.serialize(TableRow {
            society: r.society,
            sample: r.sample,
            size: r.size,
            stable_mean: r.stable.mean,
            stable_std: r.stable.std,
            stable_cov: r.stable.cov,
            svoie_mean: r.svoie.mean,
            svoie_std: r.svoie.std,
            svoie_cov: r.svoie.cov,
            stable_step_mean: per_step(r.stable.mean),
            svoie_step_mean: per_step(r.svoie.mean),
            p_value: r.p_value,
            cohens_d: r.cohens_d,
            repeat_p_value: r.repeat_p_value,
        })?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))?;
    Ok(())
}

#[derive(Serialize)]
struct LongRow {
    society: SocietyPreset,
    mode: Mode,
    repeat: u32,
    agent: u32,
    svo: &'static str,
    welfare: f64,
}

/// Long format for distribution plots: one row per agent, repeat and arm.
pub fn write_long_csv<W: Write>(writer: W, tables: &[&WelfareTable]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for t in tables {
        for a in &t.agents {
            w.serialize(LongRow {
                society: t.society,
                mode: t.mode,
                repeat: a.repeat,
                agent: a.agent,
                svo: a.svo.label(),
                welfare: a.welfare,
            })?;
        }
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))?;
    Ok(())
}
