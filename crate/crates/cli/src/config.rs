//! TOML experiment configuration: generator descriptions plus one parameter
//! block per subcommand. Unknown keys are rejected.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use circle_walks::{CirclePoint64, GeneratorSet64, Homeo64, IntervalMap64};

fn default_scale() -> f64 {
    0.5
}

/// One generator description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Rotation {
        label: String,
        weight: f64,
        angle: f64,
    },
    Mobius {
        label: String,
        weight: f64,
        /// Row-major [a, b, c, d] with determinant 1.
        matrix: [f64; 4],
    },
    Pl {
        label: String,
        weight: f64,
        /// Breakpoints [input, output-lift], strictly increasing inputs.
        breakpoints: Vec<[f64; 2]>,
    },
    NorthSouth {
        label: String,
        weight: f64,
        attractor: f64,
        repeller: f64,
        slope: f64,
    },
    IntervalAffine {
        label: String,
        weight: f64,
        slope: f64,
        intercept: f64,
        #[serde(default = "default_scale")]
        scale: f64,
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> anyhow::Result<(String, Homeo64, f64)> {
        match self {
            GeneratorSpec::Rotation { label, weight, angle } => {
                Ok((label.clone(), Homeo64::rotation(*angle), *weight))
            }
            GeneratorSpec::Mobius { label, weight, matrix } => {
                let m = Homeo64::mobius([[matrix[0], matrix[1]], [matrix[2], matrix[3]]])
                    .with_context(|| format!("generator `{label}`"))?;
                Ok((label.clone(), m, *weight))
            }
            GeneratorSpec::Pl { label, weight, breakpoints } => {
                let bps = breakpoints.iter().map(|b| (b[0], b[1])).collect();
                let m = Homeo64::piecewise_linear(bps)
                    .with_context(|| format!("generator `{label}`"))?;
                Ok((label.clone(), m, *weight))
            }
            GeneratorSpec::NorthSouth { label, weight, attractor, repeller, slope } => {
                let m = Homeo64::north_south(
                    CirclePoint64::new(*attractor),
                    CirclePoint64::new(*repeller),
                    *slope,
                )
                .with_context(|| format!("generator `{label}`"))?;
                Ok((label.clone(), m, *weight))
            }
            GeneratorSpec::IntervalAffine { label, weight, slope, intercept, scale } => {
                let m = IntervalMap64::affine(*slope, *intercept, *scale)
                    .with_context(|| format!("generator `{label}`"))?;
                Ok((label.clone(), m.homeo().clone(), *weight))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExponentBlock {
    pub steps: usize,
    pub trajectories: usize,
    pub point: f64,
    pub probe_scales: Vec<f64>,
}

impl Default for ExponentBlock {
    fn default() -> Self {
        ExponentBlock {
            steps: 2000,
            trajectories: 16,
            point: 0.1,
            probe_scales: vec![0.2, 0.1, 0.05, 0.02, 0.01],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StationaryBlock {
    pub start: Option<f64>,
    pub burn_in: usize,
    pub samples: usize,
    /// Pool size; 1 keeps the single-orbit measure.
    pub trajectories: usize,
}

impl Default for StationaryBlock {
    fn default() -> Self {
        StationaryBlock {
            start: None,
            burn_in: 500,
            samples: 10_000,
            trajectories: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecomposeBlock {
    pub starts: usize,
    pub burn_in: usize,
    pub samples: usize,
    pub resolution: usize,
    pub threshold: f64,
    pub basin_resolution: usize,
    pub basin_repeats: usize,
    pub basin_steps: usize,
}

impl Default for DecomposeBlock {
    fn default() -> Self {
        DecomposeBlock {
            starts: 8,
            burn_in: 500,
            samples: 4000,
            resolution: 256,
            threshold: 0.0,
            basin_resolution: 64,
            basin_repeats: 64,
            basin_steps: 400,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EntropyBlock {
    pub eps: f64,
    pub probes: usize,
    pub start: Option<f64>,
    pub burn_in: usize,
    pub samples_per_trajectory: usize,
    pub trajectories: usize,
    pub lambda_steps: usize,
    pub lambda_trajectories: usize,
}

impl Default for EntropyBlock {
    fn default() -> Self {
        EntropyBlock {
            eps: 0.05,
            probes: 200,
            start: None,
            burn_in: 400,
            samples_per_trajectory: 2000,
            trajectories: 20,
            lambda_steps: 600,
            lambda_trajectories: 4,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TransferBlock {
    pub resolution: usize,
    pub steps: usize,
}

impl Default for TransferBlock {
    fn default() -> Self {
        TransferBlock {
            resolution: 512,
            steps: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SyncBlock {
    pub pairs: usize,
    pub steps: usize,
    pub tol: f64,
}

impl Default for SyncBlock {
    fn default() -> Self {
        SyncBlock {
            pairs: 200,
            steps: 500,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StaircaseBlock {
    pub trajectory: u64,
    pub steps: usize,
    pub resolution: usize,
    /// Defaults to 16/resolution.
    pub jump_threshold: Option<f64>,
}

impl Default for StaircaseBlock {
    fn default() -> Self {
        StaircaseBlock {
            trajectory: 0,
            steps: 200,
            resolution: 512,
            jump_threshold: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PeriodBlock {
    pub resolution: usize,
}

impl Default for PeriodBlock {
    fn default() -> Self {
        PeriodBlock { resolution: 128 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InvariantBlock {
    pub resolution: usize,
    pub iterations: usize,
}

impl Default for InvariantBlock {
    fn default() -> Self {
        InvariantBlock {
            resolution: 128,
            iterations: 400,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClassifyBlock {
    pub support_resolution: usize,
    pub max_support_cells: usize,
    pub residual_tolerance: f64,
    pub slope_tolerance: f64,
    pub residual_resolution: usize,
    pub residual_iterations: usize,
}

impl Default for ClassifyBlock {
    fn default() -> Self {
        ClassifyBlock {
            support_resolution: 256,
            max_support_cells: 3,
            residual_tolerance: 0.02,
            slope_tolerance: 0.02,
            residual_resolution: 128,
            residual_iterations: 400,
        }
    }
}

/// Whole experiment file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub generators: Vec<GeneratorSpec>,
    pub exponent: ExponentBlock,
    pub stationary: StationaryBlock,
    pub decompose: DecomposeBlock,
    pub entropy: EntropyBlock,
    pub transfer: TransferBlock,
    pub sync: SyncBlock,
    pub staircase: StaircaseBlock,
    pub period: PeriodBlock,
    pub invariant: InvariantBlock,
    pub classify: ClassifyBlock,
}

impl ExperimentConfig {
    pub fn load(path: &std::path::Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: ExperimentConfig =
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(cfg)
    }

    pub fn build_generator_set(&self, seed: u64) -> anyhow::Result<GeneratorSet64> {
        if self.generators.is_empty() {
            bail!("config declares no generators");
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for spec in &self.generators {
            gens.push(spec.build()?);
        }
        Ok(GeneratorSet64::new(gens, seed)?)
    }
}
