use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use emptyq::error::{Error, Result};
use emptyq::harness::config::{Config, Generator, Problem};
use emptyq::harness::trial::{generate, run_on, TrialSpec};
use emptyq::harness::verify::run_suites;
use emptyq::harness::{emit, run_sweep, Format};
use emptyq::instances::io::{read_file, write_file, InstanceFile};
use emptyq::qcore::AmplifyMode;

#[derive(Parser)]
#[command(name = "emptyq", version, about = "Query-model simulator for largest empty segment, square and rectangle algorithms")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance file with the quantum algorithm and its baseline.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        instance: PathBuf,
        /// LRECW width; defaults to the value in the file header.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        h: usize,
        #[arg(long, default_value_t = 1)]
        w: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `exact` or `estimated`.
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run a sweep described by a config file and print the text report.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Per-trial CSV output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Per-point CSV output.
        #[arg(long)]
        aggregate: Option<PathBuf>,
    },
    /// Write an instance file.
    Gen {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "random")]
        generator: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        k: Option<isize>,
        #[arg(long)]
        t: Option<isize>,
        #[arg(long, default_value_t = 0.02)]
        p_one: f64,
        #[arg(long, default_value_t = 0.05)]
        p_two: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn amplify_mode(mode: &str, samples: usize) -> Result<AmplifyMode> {
    match mode {
        "exact" => Ok(AmplifyMode::Exact),
        "estimated" if samples > 0 => Ok(AmplifyMode::Estimated { samples }),
        "estimated" => Err(Error::Config("samples must be positive".into())),
        other => Err(Error::Config(format!("unknown mode {other:?}"))),
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Solve { problem, instance, d, h, w, seed, mode, samples } => {
            let problem: Problem = problem.parse()?;
            let file = read_file(&instance)?;
            let n = file.map.n();
            let d = d.or(file.d).unwrap_or(1);
            let mut cfg = Config::new(problem, vec![n]);
            cfg.params.amplify = amplify_mode(&mode, samples)?;
            let spec = TrialSpec { problem, n, d, h, w };
            let r = run_on(&spec, &file.map, instance.display().to_string(), &cfg.params, seed)?;
            println!("problem   {}  n {}", problem, n);
            println!("quantum   {}  value {}  charge {}", r.quantum.render(), r.q_value, r.q_charge);
            println!("classical {}  value {}  charge {}", r.classical.render(), r.c_value, r.c_charge);
            println!("correct   {}", r.correct());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep { config, csv, aggregate } => {
            let cfg = Config::read(&config)?;
            let rep = run_sweep(&cfg)?;
            if let Some(path) = csv {
                std::fs::write(path, emit(&rep, Format::TrialsCsv)?)?;
            }
            if let Some(path) = aggregate {
                std::fs::write(path, emit(&rep, Format::AggregateCsv)?)?;
            }
            print!("{}", String::from_utf8_lossy(&emit(&rep, Format::Text)?));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { problem, n, generator, d, k, t, p_one, p_two, seed, out } => {
            let mut cfg = Config::new(problem.parse()?, vec![n]);
            cfg.generator = generator.parse::<Generator>()?;
            cfg.d = vec![d];
            (cfg.k, cfg.t, cfg.p_one, cfg.p_two) = (k, t, p_one, p_two);
            cfg.validate()?;
            let (map, desc) = generate(&cfg, n, d, seed)?;
            let header_d = (cfg.problem == Problem::Lrecw).then_some(d);
            write_file(&out, &InstanceFile { map, d: header_d })?;
            println!("wrote {} ({desc})", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { quick, seed } => {
            let results = run_suites(quick, seed);
            let mut all = true;
            for r in &results {
                println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                all &= r.passed;
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
