use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ris_harness::experiments::{distance, plane, robustness, solve, wavelength, write_outputs, Output, Report};
use ris_harness::{validate, HarnessError, Overrides, SceneConfig};

/// RIS link simulations: closed-form and SVD solutions, placement sweeps,
/// robustness maps and oracle checks.
#[derive(Parser)]
#[command(name = "rislink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one scene with every method.
    Solve(Common),
    /// Equilateral distance sweep against the singular-value bound.
    SweepDistance(Common),
    /// Power over plane S, plus the line-l profile with the direct link.
    SweepPlane(Common),
    /// Wavelength sweep with the fixed-area anti-decay design.
    SweepWavelength(Common),
    /// Power deviation when the panel is not where the solution assumed.
    Robustness(Common),
    /// Run the oracle suite.
    Validate(Common),
}

#[derive(Args)]
struct Common {
    /// Scene file (TOML); the bundled default profile when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSV, metadata and plot scripts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Refuse far-field channels outside the far-field region.
    #[arg(long)]
    strict_far_field: bool,
    /// Include the direct transmitter-receiver link.
    #[arg(long)]
    direct_link: bool,
    /// Points per axis for plane and robustness grids.
    #[arg(long)]
    grid: Option<usize>,
    /// Seed for randomized validation.
    #[arg(long)]
    seed: Option<u64>,
    /// Use the paper-scale panel size.
    #[arg(long)]
    paper_scale: bool,
}

impl Common {
    fn load(&self) -> ris_harness::Result<SceneConfig> {
        let o = Overrides {
            strict_far_field: self.strict_far_field,
            direct_link: self.direct_link,
            grid: self.grid,
            seed: self.seed,
            paper_scale: self.paper_scale,
        };
        SceneConfig::load(self.config.as_deref(), &o)
    }
}

fn run(cli: Cli) -> ris_harness::Result<()> {
    let (common, kind) = match &cli.command {
        Command::Solve(c) => (c, "solve"),
        Command::SweepDistance(c) => (c, "sweep-distance"),
        Command::SweepPlane(c) => (c, "sweep-plane"),
        Command::SweepWavelength(c) => (c, "sweep-wavelength"),
        Command::Robustness(c) => (c, "robustness"),
        Command::Validate(c) => (c, "validate"),
    };
    let cfg = common.load()?;
    let report = match kind {
        "solve" => solve::run(&cfg)?,
        "sweep-distance" => distance::run(&cfg)?,
        "sweep-plane" => plane::run(&cfg)?,
        "sweep-wavelength" => wavelength::run(&cfg)?,
        "robustness" => robustness::run(&cfg)?,
        _ => {
            let checks = validate::suite(&cfg)?;
            let summary = checks
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            let report = Report {
                experiment: "validate",
                outputs: vec![Output { name: "validate".into(), table: validate::table(&checks), plot: None }],
                summary,
            };
            finish(&report, common, &cfg)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(HarnessError::Validation(format!("{failed} of {} checks failed", checks.len())));
            }
            return Ok(());
        }
    };
    finish(&report, common, &cfg)
}

fn finish(report: &Report, common: &Common, cfg: &SceneConfig) -> ris_harness::Result<()> {
    write_outputs(report, &common.out, cfg)?;
    for line in &report.summary {
        println!("{line}");
    }
    for out in &report.outputs {
        println!("wrote {}", common.out.join(format!("{}.csv", out.name)).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are configuration errors; help and version are not errors
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rislink: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
