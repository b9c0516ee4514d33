//! JSON run configuration.
//!
//! ```json
//! {"society": "mixed", "mode": "svoie", "seed": 42}
//! {"society": "altr-self", "counts": {"altr": 40, "self": 20}, "steps": 50, "repeats": 1, "seed": 7}
//! ```
//!
//! `society` names one of the four presets; `counts` overrides its trait
//! counts. `steps` and `repeats` default to 1000 and 3, `mode` to `stable`.
//! `seed` is required.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::emotion::Mode;
use crate::error::{Error, Result};
use crate::society::{
    SimulationConfig, SocietyConfig, SocietyPreset, TraitCounts, DEFAULT_REPEATS, DEFAULT_STEPS,
    DESK_POPULATION, DESK_STEPS, FULL_POPULATION,
};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub society: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<TraitCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeats: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub society: Option<String>,
    pub mode: Option<Mode>,
    pub steps: Option<u32>,
    pub repeats: Option<u32>,
    pub seed: Option<u64>,
    /// Population 60 (presets scaled proportionally) and 200 steps unless set explicitly.
    pub desk: bool,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn resolve(&self, overrides: &ConfigOverrides) -> Result<SimulationConfig> {
        let society_name = overrides
            .society
            .as_deref()
            .or(self.society.as_deref())
            .ok_or_else(|| Error::Config("missing society".into()))?;
        let name: SocietyPreset = society_name.parse()?;
        let counts = match self.counts {
            Some(c) => c,
            None if overrides.desk => name.counts(DESK_POPULATION),
            None => name.counts(FULL_POPULATION),
        };
        let default_steps = if overrides.desk { DESK_STEPS } else { DEFAULT_STEPS };
        let config = SimulationConfig {
            society: SocietyConfig {
                name,
                counts,
                mode: overrides.mode.or(self.mode).unwrap_or(Mode::Stable),
            },
            steps: overrides.steps.or(self.steps).unwrap_or(default_steps),
            repeats: overrides.repeats.or(self.repeats).unwrap_or(DEFAULT_REPEATS),
            master_seed: overrides.seed.or(self.seed).ok_or_else(|| Error::Config("missing seed".into()))?,
        };
        config.validate()?;
        Ok(config)
    }

    /// The fully explicit file form of a config.
    pub fn from_config(config: &SimulationConfig) -> Self {
        ConfigFile {
            society: Some(config.society.name.name().to_owned()),
            counts: Some(config.society.counts),
            mode: Some(config.society.mode),
            steps: Some(config.steps),
            repeats: Some(config.repeats),
            seed: Some(config.master_seed),
        }
    }
}

pub fn parse_config(text: &str) -> Result<SimulationConfig> {
    ConfigFile::parse(text)?.resolve(&ConfigOverrides::default())
}

pub fn load_config(path: &Path) -> Result<SimulationConfig> {
    load_config_with(path, &ConfigOverrides::default())
}

pub fn load_config_with(path: &Path, overrides: &ConfigOverrides) -> Result<SimulationConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ConfigFile::parse(&text)?.resolve(overrides)
}

pub fn config_to_json(config: &SimulationConfig) -> String {
    serde_json::to_string_pretty(&ConfigFile::from_config(config)).expect("config serializes")
}
