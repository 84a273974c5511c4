//! TOML run configuration. Every study constant has a field whose default
//! is the standard protocol value; relative paths resolve against the
//! directory holding the config file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::backtest::{
    StudyConfig, DEFAULT_ANNUAL_GROUPS, DEFAULT_BOOTSTRAP, DEFAULT_IN_SAMPLE_DAYS, DEFAULT_ROLLS,
};
use crate::dm::DmConfig;
use crate::error::{Error, Result};
use crate::models::{DeltaForm, ModelKind, ModelSpec, AR_P_MAX, VAR_P_MAX};
use crate::synth::SynthConfig;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub data: Option<DataSection>,
    #[serde(default)]
    pub study: StudySection,
    #[serde(default)]
    pub dm: DmSection,
    pub synth: Option<SynthConfig>,
    /// Directory of the config file; relative paths are resolved against it.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    pub calendar: PathBuf,
    pub exaa: PathBuf,
    pub target: PathBuf,
    /// Daily `YYYY-MM-DD,rate` file (target currency per EUR) for a non-EUR target.
    pub target_fx: Option<PathBuf>,
    #[serde(default = "default_market")]
    pub market: String,
    #[serde(default = "default_exaa_id")]
    pub exaa_id: String,
}

fn default_market() -> String {
    "TARGET".into()
}

fn default_exaa_id() -> String {
    "EXAA".into()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StudySection {
    pub in_sample_days: usize,
    pub rolls: usize,
    pub bootstrap_replicates: usize,
    pub refit_stride: usize,
    pub first_day: usize,
    pub annual_groups: usize,
    pub models: Vec<ModelKind>,
    /// Largest order scanned for `ar` and `delta_ar`.
    pub ar_p_max: usize,
    /// Largest order scanned for `var2d` and `var2d_shifted`.
    pub var_p_max: usize,
    pub delta_form: DeltaForm,
}

impl Default for StudySection {
    fn default() -> Self {
        Self {
            in_sample_days: DEFAULT_IN_SAMPLE_DAYS,
            rolls: DEFAULT_ROLLS,
            bootstrap_replicates: DEFAULT_BOOTSTRAP,
            refit_stride: 1,
            first_day: 1,
            annual_groups: DEFAULT_ANNUAL_GROUPS,
            models: ModelKind::ALL.to_vec(),
            ar_p_max: AR_P_MAX,
            var_p_max: VAR_P_MAX,
            delta_form: DeltaForm::default(),
        }
    }
}

impl StudySection {
    pub fn to_study_config(&self, seed: u64) -> Result<StudyConfig> {
        let models = self
            .models
            .iter()
            .map(|&kind| {
                let spec = ModelSpec::new(kind).with_delta_form(self.delta_form);
                match kind {
                    ModelKind::Ar | ModelKind::DeltaAr => spec.with_p_max(self.ar_p_max),
                    ModelKind::Var2d | ModelKind::Var2dShifted => spec.with_p_max(self.var_p_max),
                    _ => spec,
                }
            })
            .collect();
        let cfg = StudyConfig {
            in_sample_days: self.in_sample_days,
            rolls: self.rolls,
            models,
            bootstrap_replicates: self.bootstrap_replicates,
            seed,
            refit_stride: self.refit_stride,
            first_day: self.first_day,
            annual_groups: self.annual_groups,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DmSection {
    pub q_max: usize,
    pub min_length: usize,
    pub power: f64,
    /// Comparator whose losses enter with a positive sign.
    pub baseline: ModelKind,
    pub compare: Vec<ModelKind>,
    /// Error export of a previous backtest; defaults to `errors.csv` in the output directory.
    pub errors: Option<PathBuf>,
    pub market: Option<String>,
}

impl Default for DmSection {
    fn default() -> Self {
        let d = DmConfig::default();
        Self {
            q_max: d.q_max,
            min_length: d.min_length,
            power: d.power,
            baseline: ModelKind::Ar,
            compare: ModelKind::EXAA_BASED.to_vec(),
            errors: None,
            market: None,
        }
    }
}

impl DmSection {
    pub fn to_dm_config(&self) -> Result<DmConfig> {
        let cfg = DmConfig {
            q_max: self.q_max,
            min_length: self.min_length,
            power: self.power,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.base_dir = base_dir.to_path_buf();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// `--seed`, else the top-level `seed`, else `fallback`.
    pub fn seed(&self, cli_seed: Option<u64>, fallback: u64) -> u64 {
        cli_seed.or(self.seed).unwrap_or(fallback)
    }

    pub fn data(&self) -> Result<&DataSection> {
        self.data
            .as_ref()
            .ok_or_else(|| Error::Config("missing [data] section".into()))
    }

    pub fn synth(&self) -> Result<&SynthConfig> {
        self.synth
            .as_ref()
            .ok_or_else(|| Error::Config("missing [synth] section".into()))
    }

    pub fn market(&self) -> String {
        self.dm
            .market
            .clone()
            .or_else(|| self.data.as_ref().map(|d| d.market.clone()))
            .unwrap_or_else(default_market)
    }
}
