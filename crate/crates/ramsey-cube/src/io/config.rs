//! Run configuration, read from TOML or JSON.
//!
//! Every field has a desk-scale default; a file only needs the knobs it changes.

use crate::decomposition::{DecomposeOptions, FamilyOptions, Mode};
use crate::dense::DenseParams;
use crate::error::{Error, Result};
use crate::matching::{MatchParams, WalkKind};
use crate::stability::{DrcParams, HotTest, MainOptions, StabilityParams};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub s: usize,
    pub n: usize,
    pub epsilon: f64,
    pub threads: Option<usize>,
    pub decomposition: DecompositionConfig,
    pub dense: DenseConfig,
    pub matching: MatchingConfig,
    pub stability: StabilityConfig,
    pub drc: DrcConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecompositionConfig {
    pub epsilon: f64,
    /// Explicit `a`-schedule; empty means geometric from `v(G)`.
    pub schedule: Vec<usize>,
    pub mode: Mode,
    pub restarts: usize,
    pub verify_budget: u64,
    pub swap_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DenseConfig {
    /// Explicit `d`-schedule `d(0..=k+2)`; empty means the desk default.
    pub d: Vec<usize>,
    pub exponent_scale: f64,
    pub c_gap: f64,
    pub retries: usize,
    pub relaxed: bool,
    pub q_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchingConfig {
    pub m: usize,
    pub gamma: f64,
    /// `None` means `1/n^4`.
    pub density_threshold: Option<f64>,
    pub relaxed: bool,
    pub size_constant: f64,
    pub walk: WalkKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StabilityConfig {
    /// `None` means `1/n^2`.
    pub density_threshold: Option<f64>,
    pub heavy_intersection: f64,
    pub absorb: bool,
    pub greedy_budget: u64,
    pub hot: HotTest,
    pub any_size: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DrcConfig {
    pub c: u32,
    pub retries: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            s: 3,
            n: 6,
            epsilon: 0.25,
            threads: None,
            decomposition: DecompositionConfig::default(),
            dense: DenseConfig::default(),
            matching: MatchingConfig::default(),
            stability: StabilityConfig::default(),
            drc: DrcConfig::default(),
        }
    }
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        let f = FamilyOptions::default();
        DecompositionConfig { epsilon: 0.9, schedule: vec![], mode: Mode::Relaxed, restarts: f.restarts, verify_budget: f.verify_budget, swap_budget: f.swap_budget }
    }
}

impl Default for DenseConfig {
    fn default() -> Self {
        DenseConfig { d: vec![], exponent_scale: 0.25, c_gap: 1.0, retries: 100, relaxed: true, q_bound: None }
    }
}

impl Default for MatchingConfig {
    fn default() -> Self {
        let m = MatchParams::desk(3, 0.25);
        MatchingConfig { m: m.m, gamma: m.gamma, density_threshold: None, relaxed: true, size_constant: m.size_constant, walk: m.walk }
    }
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig { density_threshold: None, heavy_intersection: 0.25, absorb: true, greedy_budget: 200_000, hot: HotTest::PerPart, any_size: false }
    }
}

impl Default for DrcConfig {
    fn default() -> Self {
        DrcConfig { c: 8, retries: 100 }
    }
}

impl RunConfig {
    pub fn parse(text: &str, json: bool) -> Result<Self> {
        let cfg: RunConfig = if json {
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?
        } else {
            toml::from_str(text).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads `.json` as JSON and anything else as TOML.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        RunConfig::parse(&text, path.extension().is_some_and(|e| e == "json"))
    }

    pub fn dense_params(&self) -> DenseParams {
        let mut p = DenseParams::desk(self.n, self.s, self.epsilon);
        if !self.dense.d.is_empty() {
            p.k = self.dense.d.len().saturating_sub(3);
            p.d = self.dense.d.clone();
        }
        p.exponent_scale = self.dense.exponent_scale;
        p.c_gap = self.dense.c_gap;
        p.retries = self.dense.retries;
        p.relaxed = self.dense.relaxed;
        p.q_bound = self.dense.q_bound;
        p
    }

    pub fn match_params(&self) -> MatchParams {
        MatchParams {
            epsilon: self.epsilon,
            s: self.s,
            m: self.matching.m,
            gamma: self.matching.gamma,
            density_threshold: self.matching.density_threshold,
            relaxed: self.matching.relaxed,
            size_constant: self.matching.size_constant,
            walk: self.matching.walk,
            inner: None,
        }
    }

    pub fn decompose_options(&self) -> DecomposeOptions {
        let d = &self.decomposition;
        DecomposeOptions {
            mode: d.mode,
            family: FamilyOptions { restarts: d.restarts, verify_budget: d.verify_budget, swap_budget: d.swap_budget },
            seed: self.seed,
        }
    }

    pub fn main_options(&self) -> MainOptions {
        let st = &self.stability;
        MainOptions {
            stability: StabilityParams {
                epsilon: self.epsilon,
                decomposition_epsilon: self.decomposition.epsilon,
                schedule: (!self.decomposition.schedule.is_empty()).then(|| self.decomposition.schedule.clone()),
                decompose: self.decompose_options(),
                matching: self.match_params(),
                density_threshold: st.density_threshold,
                heavy_intersection: st.heavy_intersection,
                absorb: st.absorb,
                greedy_budget: st.greedy_budget,
                hot: st.hot,
            },
            any_size: st.any_size,
        }
    }

    pub fn drc_params(&self) -> DrcParams {
        DrcParams { c: self.drc.c, retries: self.drc.retries, ..DrcParams::desk(self.n) }
    }

    /// Shape checks always; the dense feasibility inequalities unless relaxed.
    pub fn validate(&self) -> Result<()> {
        if self.s < 2 {
            return Err(Error::Input("s must be at least 2".into()));
        }
        if !(0.0 < self.epsilon && self.epsilon < 1.0) {
            return Err(Error::Input(format!("epsilon {} outside (0,1)", self.epsilon)));
        }
        if !(0.0 < self.decomposition.epsilon && self.decomposition.epsilon < 1.0) {
            return Err(Error::Input(format!("decomposition epsilon {} outside (0,1)", self.decomposition.epsilon)));
        }
        if self.n == 0 || self.n > 20 {
            return Err(Error::Input(format!("n = {} outside 1..=20", self.n)));
        }
        self.dense_params().check(self.n)?;
        if self.matching.m <= self.n {
            self.match_params().validate(self.n)?;
        }
        Ok(())
    }
}
