//! Batch experiment runner: every estimator and structure analysis as a
//! subcommand with reproducible seeds and CSV/JSON outputs.
//!
//! Summaries are byte-identical across reruns with equal arguments; wall
//! clock and other provenance go to `run.log` instead.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::SystemTime;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use circle_walks::*;
use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "circle-walks",
    version,
    about = "Monte-Carlo experiments on random walks of circle homeomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML experiment file (see README for the schema).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named scenario from the built-in catalog (wins over --config).
    #[arg(long)]
    scenario: Option<String>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for summary.json and CSV artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Contraction exponent of paired trajectories at a point.
    Exponent {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        trajectories: Option<usize>,
        #[arg(long)]
        point: Option<f64>,
    },
    /// Empirical stationary measure along one (or a pool of) trajectories.
    Stationary {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        start: Option<f64>,
        #[arg(long)]
        burn_in: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        trajectories: Option<usize>,
    },
    /// Ergodic decomposition: stationary classes, supports, basin functions.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Approximated Jacobian / entropy with the contraction bound check.
    Entropy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        probes: Option<usize>,
    },
    /// Transfer-operator iteration of cos 2πx: Cesàro average and last iterate.
    Transfer {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Two-point synchronization test over uniform random pairs.
    Sync {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Staircase profile of one sampled composition.
    Staircase {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trajectory: Option<u64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        jump_threshold: Option<f64>,
    },
    /// Decomposability period of the arc-transition graph.
    Period {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Ulam fixed point and its per-generator invariance residual.
    #[command(name = "invariant-check")]
    InvariantCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// Trichotomy verdict: locally-contracting / isometry-like / finite-orbit-like.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// List the scenario catalog.
    #[command(name = "scenario-list")]
    ScenarioList {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

enum Failure {
    Config(anyhow::Error),
    Estimator(anyhow::Error),
}

fn config_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Config(e.into())
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("RDS_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Estimator(e)) => {
            eprintln!("estimator error: {e:#}");
            ExitCode::from(3)
        }
    }
}

/// Resolved inputs of one run.
struct Run {
    gs: GeneratorSet64,
    cfg: ExperimentConfig,
    scenario: Option<Scenario64>,
    seed: u64,
    out: PathBuf,
    log: Vec<String>,
}

impl Run {
    fn resolve(common: &Common) -> std::result::Result<Run, Failure> {
        let mut log = Vec::new();
        let mut cfg = match &common.config {
            Some(path) => ExperimentConfig::load(path).map_err(config_err)?,
            None => ExperimentConfig::default(),
        };
        let seed = common.seed.or(cfg.seed).unwrap_or(0);
        cfg.seed = Some(seed);
        let scenario = match &common.scenario {
            Some(name) => {
                if !cfg.generators.is_empty() {
                    log.push(format!(
                        "warning: --scenario {name} overrides the generators of the config file"
                    ));
                }
                Some(build_scenario::<f64>(name, seed).map_err(config_err)?)
            }
            None => None,
        };
        let gs = match &scenario {
            Some(sc) => sc.generator_set.clone(),
            None => {
                if common.config.is_none() {
                    return Err(config_err(anyhow::anyhow!(
                        "either --scenario <name> or --config <file> is required; \
                         available scenarios: {}",
                        catalog_list()
                    )));
                }
                cfg.build_generator_set(seed).map_err(config_err)?
            }
        };
        Ok(Run {
            gs,
            cfg,
            scenario,
            seed,
            out: common.out.clone(),
            log,
        })
    }

    fn scenario_name(&self) -> Option<&str> {
        self.scenario.as_ref().map(|s| s.name.as_str())
    }

    fn generic_start(&self) -> f64 {
        self.scenario
            .as_ref()
            .map(|s| s.generic_start.value())
            .unwrap_or(0.1)
    }

    fn finish<C: Serialize, R: Serialize>(
        &self,
        command: &str,
        block: C,
        result: R,
        flag: Option<String>,
        csv: Option<(String, String)>,
    ) -> CmdResult {
        #[derive(Serialize)]
        struct Summary<'a, C: Serialize, R: Serialize> {
            command: &'a str,
            seed: u64,
            scenario: Option<&'a str>,
            config: C,
            generators: &'a GeneratorSet64,
            result: R,
            #[serde(skip_serializing_if = "Option::is_none")]
            flag: Option<String>,
        }
        let summary = Summary {
            command,
            seed: self.seed,
            scenario: self.scenario_name(),
            config: block,
            generators: &self.gs,
            result,
            flag,
        };
        std::fs::create_dir_all(&self.out)
            .with_context(|| format!("creating {}", self.out.display()))
            .map_err(config_err)?;
        let json = serde_json::to_string_pretty(&summary).expect("serializable summary");
        write_file(&self.out.join("summary.json"), &(json + "\n"))?;
        if let Some((name, contents)) = csv {
            write_file(&self.out.join(name), &contents)?;
        }
        let mut log_text = String::new();
        let now = SystemTime::now()
            .duration_since(SystemTime::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let _ = writeln!(log_text, "unix_time={now} command={command} seed={}", self.seed);
        for line in &self.log {
            let _ = writeln!(log_text, "{line}");
        }
        write_file(&self.out.join("run.log"), &log_text)?;
        Ok(())
    }
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    std::fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(config_err)
}

fn require(cond: bool, msg: &str) -> CmdResult {
    if cond {
        Ok(())
    } else {
        Err(config_err(anyhow::anyhow!("{msg}")))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Cmd::Exponent { common, steps, trajectories, point } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.exponent.clone();
            if let Some(v) = steps {
                block.steps = v;
            }
            if let Some(v) = trajectories {
                block.trajectories = v;
            }
            if let Some(v) = point {
                block.point = v;
            }
            require(block.steps >= 100, "exponent.steps must be at least 100")?;
            require(block.trajectories >= 1, "exponent.trajectories must be positive")?;
            require(
                block.probe_scales.iter().all(|&s| s > 0.0 && s < 0.25),
                "exponent.probe_scales must lie in (0, 1/4)",
            )?;
            let params = ExponentParams {
                steps: block.steps,
                trajectories: block.trajectories,
                probe_scales: block.probe_scales.clone(),
                ..ExponentParams::default()
            };
            let x = CirclePoint64::new(block.point);
            let est = estimate_lambda_con(&run.gs, x, &params);
            let flag = est
                .no_contraction
                .then(|| "no contraction observed".to_string());
            // pair-distance traces at the reported scale
            let scale = est
                .scale
                .unwrap_or_else(|| *params.probe_scales.last().unwrap());
            let mut csv = String::from("step,log_dist,trajectory\n");
            for t in 0..block.trajectories as u64 {
                let orbit = run.gs.stream(t).iterate_pair(x, x.offset(scale), block.steps);
                for (k, (a, b)) in orbit.iter().enumerate() {
                    let d = circle_dist(*a, *b);
                    if d > 0.0 {
                        let _ = writeln!(csv, "{k},{},{t}", d.ln());
                    }
                }
            }
            run.finish("exponent", block, est, flag, Some(("exponent.csv".into(), csv)))
        }

        Cmd::Stationary { common, start, burn_in, samples, trajectories } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.stationary.clone();
            if start.is_some() {
                block.start = start;
            }
            if let Some(v) = burn_in {
                block.burn_in = v;
            }
            if let Some(v) = samples {
                block.samples = v;
            }
            if let Some(v) = trajectories {
                block.trajectories = v;
            }
            require(block.samples >= 1000, "stationary.samples must be at least 1000")?;
            require(block.trajectories >= 1, "stationary.trajectories must be positive")?;
            let x0 = CirclePoint64::new(block.start.unwrap_or_else(|| run.generic_start()));
            let mu = if block.trajectories == 1 {
                estimate_stationary(&run.gs, x0, block.burn_in, block.samples, 0)
            } else {
                estimate_stationary_pooled(
                    &run.gs,
                    x0,
                    block.burn_in,
                    block.samples,
                    block.trajectories,
                    0,
                )
            }
            .map_err(|e| Failure::Estimator(e.into()))?;

            #[derive(Serialize)]
            struct StationaryResult {
                count: usize,
                support_arcs: Vec<Arc64>,
                deciles: Vec<f64>,
            }
            let result = StationaryResult {
                count: mu.count(),
                support_arcs: mu.support_arcs(256, 0.0),
                deciles: (0..=10)
                    .map(|q| mu.quantile(q as f64 / 10.0).value())
                    .collect(),
            };
            let csv = mu.to_csv();
            run.finish("stationary", block, result, None, Some(("stationary.csv".into(), csv)))
        }

        Cmd::Decompose { common, starts, samples, resolution } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.decompose.clone();
            if let Some(v) = starts {
                block.starts = v;
            }
            if let Some(v) = samples {
                block.samples = v;
            }
            if let Some(v) = resolution {
                block.resolution = v;
            }
            require(block.starts >= 8, "decompose.starts must be at least 8")?;
            require(block.resolution >= 2, "decompose.resolution must be at least 2")?;
            let params = DecomposeParams {
                starts: default_starts(block.starts),
                burn_in: block.burn_in,
                samples: block.samples,
                resolution: block.resolution,
                threshold: block.threshold,
                basin_resolution: block.basin_resolution,
                basin_repeats: block.basin_repeats,
                basin_steps: block.basin_steps,
            };
            let dec = decompose_ergodic(&run.gs, &params)
                .map_err(|e| Failure::Estimator(e.into()))?;

            #[derive(Serialize)]
            struct DecomposeResult<'a> {
                d: usize,
                class_sizes: Vec<usize>,
                supports: &'a Vec<Vec<Arc64>>,
                basin_estimates: &'a Vec<GridFunction64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                warning: &'a Option<String>,
            }
            let mut csv = String::from("class,sample\n");
            for (c, m) in dec.measures.iter().enumerate() {
                for s in m.samples() {
                    let _ = writeln!(csv, "{c},{s}");
                }
            }
            let mut basins = String::from("node,class,u\n");
            for (c, u) in dec.basin_estimates.iter().enumerate() {
                for (j, v) in u.values().iter().enumerate() {
                    let _ = writeln!(basins, "{j},{c},{v}");
                }
            }
            let result = DecomposeResult {
                d: dec.d,
                class_sizes: dec.measures.iter().map(|m| m.count()).collect(),
                supports: &dec.supports,
                basin_estimates: &dec.basin_estimates,
                warning: &dec.warning,
            };
            let flag = dec.warning.clone();
            std::fs::create_dir_all(&run.out)
                .context("creating output directory")
                .map_err(config_err)?;
            write_file(&run.out.join("basins.csv"), &basins)?;
            run.finish("decompose", block, result, flag, Some(("decompose.csv".into(), csv)))
        }

        Cmd::Entropy { common, eps, probes } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.entropy.clone();
            if let Some(v) = eps {
                block.eps = v;
            }
            if let Some(v) = probes {
                block.probes = v;
            }
            require(block.probes >= 100, "entropy.probes must be at least 100")?;
            require(block.eps > 0.0 && block.eps < 1.0, "entropy.eps must lie in (0, 1)")?;
            let n_total = block.samples_per_trajectory * block.trajectories;
            require(
                block.eps * n_total as f64 >= 4.0,
                "entropy.eps times the sample count must be at least 4",
            )?;
            let x0 = CirclePoint64::new(block.start.unwrap_or_else(|| run.generic_start()));
            let mu = estimate_stationary_pooled(
                &run.gs,
                x0,
                block.burn_in,
                block.samples_per_trajectory,
                block.trajectories,
                0,
            )
            .map_err(|e| Failure::Estimator(e.into()))?;
            let params = EntropyParams {
                eps: block.eps,
                probes: block.probes,
                exponent: ExponentParams {
                    steps: block.lambda_steps,
                    trajectories: block.lambda_trajectories,
                    ..ExponentParams::default()
                },
                lambda_points: 16,
            };
            let est = estimate_entropy(&run.gs, &mu, &params)
                .map_err(|e| Failure::Estimator(e.into()))?;
            let draws = jacobian_probes(&run.gs, &mu, block.eps, block.probes)
                .map_err(|e| Failure::Estimator(e.into()))?;
            let mut csv = String::from("probe,generator,x,log_j\n");
            for (i, d) in draws.iter().enumerate() {
                match d.log_j {
                    Some(lj) => {
                        let _ = writeln!(csv, "{i},{},{},{lj}", d.generator, d.x);
                    }
                    None => {
                        let _ = writeln!(csv, "{i},{},{},", d.generator, d.x);
                    }
                }
            }
            run.finish("entropy", block, est, None, Some(("entropy.csv".into(), csv)))
        }

        Cmd::Transfer { common, resolution, steps } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.transfer.clone();
            if let Some(v) = resolution {
                block.resolution = v;
            }
            if let Some(v) = steps {
                block.steps = v;
            }
            require(block.resolution >= 8, "transfer.resolution must be at least 8")?;
            require(block.steps >= 1, "transfer.steps must be positive")?;
            let phi = GridFunction64::cosine(block.resolution);
            let it = transfer_iterate(&run.gs, &phi, block.steps);

            #[derive(Serialize)]
            struct TransferResult<'a> {
                iterates_norms: &'a Vec<f64>,
                cesaro_sup_norm: f64,
                last_sup_norm: f64,
                last_minus_cesaro: f64,
            }
            let result = TransferResult {
                iterates_norms: &it.iterates_norms,
                cesaro_sup_norm: it.cesaro.sup_norm(),
                last_sup_norm: it.last.sup_norm(),
                last_minus_cesaro: it.last.sup_dist(&it.cesaro),
            };
            let mut csv = String::from("node,phi,cesaro,last\n");
            for j in 0..block.resolution {
                let _ = writeln!(
                    csv,
                    "{j},{},{},{}",
                    phi.values()[j],
                    it.cesaro.values()[j],
                    it.last.values()[j]
                );
            }
            run.finish("transfer", block, result, None, Some(("transfer.csv".into(), csv)))
        }

        Cmd::Sync { common, pairs, steps, tol } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.sync.clone();
            if let Some(v) = pairs {
                block.pairs = v;
            }
            if let Some(v) = steps {
                block.steps = v;
            }
            if let Some(v) = tol {
                block.tol = v;
            }
            require(block.steps >= 100, "sync.steps must be at least 100")?;
            require(block.pairs >= 1, "sync.pairs must be positive")?;
            let pts = uniform_pairs::<f64>(run.seed, block.pairs);
            let report = sync_test(&run.gs, &pts, block.steps, block.tol);
            let mut csv = String::from("pair,x,y,final_dist,synced,rate\n");
            for (i, o) in report.outcomes.iter().enumerate() {
                let rate = o.rate.map(|r| r.to_string()).unwrap_or_default();
                let _ = writeln!(csv, "{i},{},{},{},{},{rate}", o.x, o.y, o.final_dist, o.synced);
            }
            run.finish("sync", block, report, None, Some(("sync.csv".into(), csv)))
        }

        Cmd::Staircase { common, trajectory, steps, resolution, jump_threshold } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.staircase.clone();
            if let Some(v) = trajectory {
                block.trajectory = v;
            }
            if let Some(v) = steps {
                block.steps = v;
            }
            if let Some(v) = resolution {
                block.resolution = v;
            }
            if jump_threshold.is_some() {
                block.jump_threshold = jump_threshold;
            }
            require(block.steps >= 100, "staircase.steps must be at least 100")?;
            require(block.resolution >= 256, "staircase.resolution must be at least 256")?;
            let delta = block
                .jump_threshold
                .unwrap_or_else(|| default_jump_threshold::<f64>(block.resolution));
            let prof = staircase_profile(
                &run.gs,
                block.trajectory,
                block.steps,
                block.resolution,
                delta,
            );
            let flag = (!prof.resolved).then(|| "profile not yet resolved".to_string());
            let mut csv = String::from("node,image\n");
            for (j, v) in prof.node_images.iter().enumerate() {
                let _ = writeln!(csv, "{j},{v}");
            }
            run.finish("staircase", block, prof, flag, Some(("staircase.csv".into(), csv)))
        }

        Cmd::Period { common, resolution } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.period.clone();
            if let Some(v) = resolution {
                block.resolution = v;
            }
            require(block.resolution >= 8, "period.resolution must be at least 8")?;
            let report = decomposability_period(&run.gs, block.resolution);
            let graph = build_arc_graph(&run.gs, block.resolution);
            let csv = graph.to_csv(&run.gs);
            run.finish("period", block, report, None, Some(("period.csv".into(), csv)))
        }

        Cmd::InvariantCheck { common, resolution, iterations } => {
            let run = Run::resolve(&common)?;
            let mut block = run.cfg.invariant.clone();
            if let Some(v) = resolution {
                block.resolution = v;
            }
            if let Some(v) = iterations {
                block.iterations = v;
            }
            require(block.resolution >= 32, "invariant.resolution must be at least 32")?;
            let check = invariant_measure_residual(&run.gs, block.resolution, block.iterations);
            let mut csv = String::from("node,weight\n");
            for (j, w) in check.candidate.iter().enumerate() {
                let _ = writeln!(csv, "{j},{w}");
            }
            run.finish(
                "invariant-check",
                block,
                check,
                None,
                Some(("invariant-check.csv".into(), csv)),
            )
        }

        Cmd::Classify { common } => {
            let run = Run::resolve(&common)?;
            let block = run.cfg.classify.clone();
            let params = ClassifyParams {
                support_resolution: block.support_resolution,
                max_support_cells: block.max_support_cells,
                residual_tolerance: block.residual_tolerance,
                slope_tolerance: block.slope_tolerance,
                residual_resolution: block.residual_resolution,
                residual_iterations: block.residual_iterations,
                ..ClassifyParams::default()
            };
            let report = classify_trichotomy(&run.gs, &params);
            let mut csv = String::from("metric,value\n");
            let _ = writeln!(csv, "verdict,{}", report.verdict);
            let _ = writeln!(csv, "residual,{}", report.residual);
            let _ = writeln!(csv, "slope,{}", report.slope);
            let _ = writeln!(csv, "d,{}", report.d);
            if let Some(cells) = report.smallest_support_cells {
                let _ = writeln!(csv, "smallest_support_cells,{cells}");
            }
            run.finish("classify", block, report, None, Some(("classify.csv".into(), csv)))
        }

        Cmd::ScenarioList { out } => {
            #[derive(Serialize)]
            struct Entry {
                name: &'static str,
                expected: Expected,
                generators: Vec<String>,
            }
            let mut entries = Vec::new();
            for name in CATALOG {
                let sc = build_scenario::<f64>(name, 0).map_err(config_err)?;
                entries.push(Entry {
                    name,
                    expected: sc.expected,
                    generators: sc
                        .generator_set
                        .generators()
                        .iter()
                        .map(|g| g.label.clone())
                        .collect(),
                });
                println!("{name}");
            }
            #[derive(Serialize)]
            struct ListSummary {
                command: &'static str,
                scenarios: Vec<Entry>,
            }
            std::fs::create_dir_all(&out)
                .context("creating output directory")
                .map_err(config_err)?;
            let json = serde_json::to_string_pretty(&ListSummary {
                command: "scenario-list",
                scenarios: entries,
            })
            .expect("serializable list");
            write_file(&out.join("summary.json"), &(json + "\n"))
        }
    }
}
