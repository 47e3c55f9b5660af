use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use dss_core::eval::{aggregate_scores, compare_methods, comparison_matrix, GroupBy};
use dss_core::{Method, MethodParams};
use dss_service::config::{serve, ServeConfig, BUNDLED_DATA, DEFAULT_PORT};
use dss_service::error::from_json;
use dss_service::pipeline::{
    all_methods, builtin_profiles, decisions_jsonl, find_profile, load_decisions, rank, ranking_csv,
    run_pipeline, score_decisions, scores_csv, sweep, sweep_csv, sweep_plot, PipelineConfig,
};
use dss_service::synth::{generate_decisions, generate_missions, DEFAULT_SEED};
use dss_service::{ingest, ingest_dir};

#[derive(Parser)]
#[command(name = "dss", version, about = "Rank, filter and evaluate multi-UAV mission plans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the plans of a dataset and write a CSV ranking.
    Rank {
        dataset: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rank, then drop plans similar to a better-ranked one.
    Filter {
        dataset: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// Output directory for the ranking, filtered ranking and summary.
        #[arg(long, default_value = "out")]
        output: PathBuf,
    },
    /// Kept-plan count and hypervolume over a grid of thresholds.
    SweepThreshold {
        dataset: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
        /// `start:stop:step` or a comma-separated list.
        #[arg(long, default_value = "0:5:0.1")]
        grid: String,
        /// CSV destination; a JSON plot series is written next to it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score methods against a decision log.
    Score {
        #[command(flatten)]
        eval: EvalArgs,
        /// Methods to score; all sixteen when omitted.
        #[arg(long = "method", value_delimiter = ',')]
        methods: Vec<Method>,
        #[arg(long, default_value = "method")]
        group_by: String,
        /// Per-decision score CSV.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Paired comparison of two methods with a Wilcoxon signed-rank test.
    Compare {
        #[command(flatten)]
        eval: EvalArgs,
        #[arg(long)]
        a: Method,
        #[arg(long)]
        b: Method,
        /// Also write the fuzzy-versus-crisp comparison matrix as CSV.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Serve the HTTP API. The port comes from `PORT`, then the config.
    Serve {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        decisions: Option<PathBuf>,
        #[arg(long, env = "PORT")]
        port: Option<u16>,
    },
    /// Write seeded synthetic missions and operator decisions.
    GenSynthetic {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "synthetic")]
        output: PathBuf,
    },
}

#[derive(Args)]
struct PipelineArgs {
    /// JSON pipeline config; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    method: Option<Method>,
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    threshold: Option<f64>,
    /// VIKOR compromise weight.
    #[arg(long)]
    v: Option<f64>,
    /// WASPAS blend between sum and product.
    #[arg(long)]
    lambda: Option<f64>,
}

impl PipelineArgs {
    fn resolve(&self) -> Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                from_json::<PipelineConfig>(&text, &p.display().to_string())?
            }
            None => PipelineConfig::default(),
        };
        if let Some(m) = self.method {
            cfg.ranking = MethodParams {
                method: m,
                ..cfg.ranking
            };
        }
        if let Some(v) = self.v {
            cfg.ranking.v = v;
        }
        if let Some(l) = self.lambda {
            cfg.ranking.lambda = l;
        }
        if let Some(p) = &self.profile {
            cfg.profile = p.clone();
        }
        if let Some(t) = self.threshold {
            cfg.threshold = t;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Directory of mission datasets.
    #[arg(long)]
    data: Option<PathBuf>,
    /// JSON-lines decision log.
    #[arg(long)]
    decisions: Option<PathBuf>,
}

impl EvalArgs {
    fn load(&self) -> Result<(Vec<dss_service::MissionDataset>, Vec<dss_core::eval::Decision>)> {
        let bundled = Path::new(BUNDLED_DATA);
        let data = self.data.clone().unwrap_or_else(|| bundled.join("missions"));
        let log = self.decisions.clone().unwrap_or_else(|| bundled.join("decisions.jsonl"));
        let decisions = load_decisions(&log)?;
        if decisions.is_empty() {
            anyhow::bail!("no decisions in {}", log.display());
        }
        Ok((ingest_dir(&data)?, decisions))
    }
}

fn write_or_print(output: Option<&Path>, body: &str) -> Result<()> {
    match output {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(p, body).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let profiles = builtin_profiles();
    match cli.command {
        Command::Rank {
            dataset,
            pipeline,
            output,
        } => {
            let cfg = pipeline.resolve()?;
            let ds = ingest(&dataset)?;
            let r = rank(&ds, &cfg.ranking, find_profile(&profiles, &cfg.profile)?)?;
            write_or_print(output.as_deref(), &ranking_csv(&r)?)
        }
        Command::Filter {
            dataset,
            pipeline,
            output,
        } => {
            let cfg = pipeline.resolve()?;
            let ds = ingest(&dataset)?;
            let out = run_pipeline(&ds, &cfg, &profiles)?;
            out.write(&output)?;
            println!(
                "{}: kept {} of {} plans ({} under {}, threshold {})",
                out.mission,
                out.filtered.len(),
                out.ranking.len(),
                out.ranking.method,
                out.profile,
                out.threshold
            );
            Ok(())
        }
        Command::SweepThreshold {
            dataset,
            pipeline,
            grid,
            output,
        } => {
            let cfg = pipeline.resolve()?;
            let ds = ingest(&dataset)?;
            let rows = sweep(&ds, &cfg, &profiles, &grid)?;
            write_or_print(output.as_deref(), &sweep_csv(&rows)?)?;
            if let Some(p) = output {
                let plot = serde_json::to_string_pretty(&sweep_plot(&ds.id, &cfg, &rows))? + "\n";
                write_or_print(Some(&p.with_extension("json")), &plot)?;
            }
            Ok(())
        }
        Command::Score {
            eval,
            methods,
            group_by,
            output,
        } => {
            let (missions, decisions) = eval.load()?;
            let params = if methods.is_empty() {
                all_methods()
            } else {
                methods.into_iter().map(MethodParams::new).collect()
            };
            let records = score_decisions(&missions, &decisions, &params, &profiles)?;
            if let Some(p) = &output {
                write_or_print(Some(p), &scores_csv(&records)?)?;
            }
            let groups = GroupBy::parse_list(&group_by)?;
            let names: Vec<&str> = groups.iter().map(|g| g.name()).collect();
            println!("{},count,mean,median,sd", names.join(","));
            for g in aggregate_scores(&records, &groups)? {
                println!("{},{},{:.6},{:.6},{:.6}", g.key.join(","), g.count, g.mean, g.median, g.sd);
            }
            Ok(())
        }
        Command::Compare { eval, a, b, matrix } => {
            let (missions, decisions) = eval.load()?;
            let params = if matrix.is_some() {
                all_methods()
            } else {
                vec![MethodParams::new(a), MethodParams::new(b)]
            };
            let records = score_decisions(&missions, &decisions, &params, &profiles)?;
            let c = compare_methods(&records, a.name(), b.name())?;
            println!(
                "{} vs {}: pairs={} mean_diff={:.6} w_plus={} p_value={:.6}{}",
                c.a,
                c.b,
                c.pairs,
                c.mean_diff,
                c.wilcoxon.w_plus,
                c.p_value(),
                if c.significant() { " significant" } else { "" }
            );
            if let Some(p) = matrix {
                let fuzzy: Vec<&str> = Method::fuzzy().map(|m| m.name()).collect();
                let crisp: Vec<&str> = Method::crisp().map(|m| m.name()).collect();
                write_or_print(Some(&p), &comparison_matrix(&records, &fuzzy, &crisp)?.to_csv())?;
            }
            Ok(())
        }
        Command::Serve {
            config,
            data,
            decisions,
            port,
        } => {
            let mut cfg = match &config {
                Some(p) => ServeConfig::load(p)?,
                None => ServeConfig::default(),
            };
            if let Some(d) = data {
                cfg.data = d;
            }
            if decisions.is_some() {
                cfg.decisions = decisions;
            }
            let port = port.or(cfg.port).unwrap_or(DEFAULT_PORT);
            tokio::runtime::Runtime::new()?.block_on(serve(&cfg, port))
        }
        Command::GenSynthetic { seed, output } => {
            let missions = generate_missions(seed);
            let dir = output.join("missions");
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for m in &missions {
                write_or_print(Some(&dir.join(format!("{}.json", m.id))), &(m.to_json() + "\n"))?;
            }
            let decisions = generate_decisions(&missions, seed);
            write_or_print(Some(&output.join("decisions.jsonl")), &decisions_jsonl(&decisions))?;
            println!(
                "wrote {} missions and {} decisions to {}",
                missions.len(),
                decisions.len(),
                output.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
