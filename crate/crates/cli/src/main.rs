//! `fdt` — storage-latency tradeoff toolbox for the 3x3 cache-aided
//! interference channel.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 infeasible budget,
//! 3 indivisible file size, 4 verification/consistency failure.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use fdt_core::delivery::{execute, plan_delivery};
use fdt_core::lp::{build_lp, solve_simplex, LpStatus};
use fdt_core::model::{check_feasible, classify_region, CacheBudget};
use fdt_core::placement::{minimal_file_size, place_caches, split_files, Library};
use fdt_core::rat::{fmt_rat, int, parse_rat, rat, Rat};
use fdt_core::theorem::{broadcast_baseline_fdt, closed_form_fdt, tx_only_fdt};
use fdt_core::verify::{
    check_boundary_continuity, check_oracle_equivalence, check_partition,
    check_theorem_agreement, feasible_grid,
};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INDIVISIBLE: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "fdt", version, about = "Storage-latency tradeoff for the 3x3 cache-aided interference channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the splitting LP at one budget and cross-check the closed form
    Solve {
        /// Receiver cache size as `p/q`, integer, or decimal
        #[arg(long = "mu-r")]
        mu_r: String,
        /// Transmitter cache size
        #[arg(long = "mu-t")]
        mu_t: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a CSV of region and FDT over the feasible grid
    Sweep {
        /// Grid step as a fraction, 0 < step <= 1/2
        #[arg(long)]
        step: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the bit-level placement/delivery simulation at one budget
    Simulate {
        #[arg(long = "mu-r")]
        mu_r: String,
        #[arg(long = "mu-t")]
        mu_t: String,
        /// Number of library files (at least 3)
        #[arg(long, default_value_t = 3)]
        files: usize,
        /// File size in bits, or `auto` for the minimal valid size
        #[arg(long = "file-size", default_value = "auto")]
        file_size: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cross-check simplex, closed form, oracle, and region structure
    Verify {
        #[arg(long, default_value = "1/60")]
        step: String,
        #[arg(long = "oracle-samples", default_value_t = 200)]
        oracle_samples: usize,
    },
    /// Emit the broadcast-baseline comparison and tx-only curve as CSV
    Compare {
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_flag_rat(value: &str, flag: &str) -> Result<Rat, u8> {
    parse_rat(value).map_err(|_| {
        eprintln!("error: cannot parse --{flag} value `{value}` as a rational");
        EXIT_USAGE
    })
}

fn parse_budget(mu_r: &str, mu_t: &str) -> Result<CacheBudget, u8> {
    let mu_r = parse_flag_rat(mu_r, "mu-r")?;
    let mu_t = parse_flag_rat(mu_t, "mu-t")?;
    let budget = CacheBudget::new(mu_r, mu_t).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INFEASIBLE
    })?;
    if !check_feasible(&budget) {
        eprintln!(
            "error: infeasible budget: mu_r + 3*mu_t >= 1 must hold (got {} + 3*{} = {})",
            fmt_rat(budget.mu_r()),
            fmt_rat(budget.mu_t()),
            fmt_rat(&(budget.mu_r() + int(3) * budget.mu_t()))
        );
        return Err(EXIT_INFEASIBLE);
    }
    Ok(budget)
}

fn cmd_solve(mu_r: &str, mu_t: &str, format: Format) -> Result<(), u8> {
    let budget = parse_budget(mu_r, mu_t)?;
    let region = classify_region(&budget).expect("feasible");
    let closed = closed_form_fdt(&budget).expect("feasible");
    let sol = solve_simplex(&build_lp(&budget).expect("feasible"));
    if sol.status != LpStatus::Optimal || sol.tau != closed {
        eprintln!("error: LP and closed form disagree at this budget");
        return Err(EXIT_VERIFY_FAILED);
    }
    let record = output::SolveRecord::new(&budget, region, &sol);
    match format {
        Format::Json => println!("{}", record.to_json()),
        Format::Text => print!("{}", record.to_text()),
    }
    Ok(())
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), u8> {
    std::fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn cmd_sweep(step: &str, out: &PathBuf) -> Result<(), u8> {
    let step = parse_flag_rat(step, "step")?;
    if step <= int(0) || step > rat(1, 2) {
        eprintln!("error: --step must satisfy 0 < step <= 1/2");
        return Err(EXIT_USAGE);
    }
    let mut csv = String::from("mu_r,mu_t,region,fdt\n");
    for b in feasible_grid(&step) {
        let region = classify_region(&b).expect("feasible");
        let fdt = closed_form_fdt(&b).expect("feasible");
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_rat(b.mu_r()),
            fmt_rat(b.mu_t()),
            region.name(),
            fdt
        ));
    }
    write_file(out, &csv)?;
    eprintln!("wrote {}", out.display());
    Ok(())
}

fn cmd_simulate(
    mu_r: &str,
    mu_t: &str,
    files: usize,
    file_size: &str,
    seed: u64,
    format: Format,
) -> Result<(), u8> {
    let budget = parse_budget(mu_r, mu_t)?;
    if files < 3 {
        eprintln!("error: --files must be at least 3");
        return Err(EXIT_USAGE);
    }
    let sol = solve_simplex(&build_lp(&budget).expect("feasible"));
    let minimal = minimal_file_size(&sol.ratios);
    let file_size = if file_size == "auto" {
        minimal
    } else {
        file_size.parse::<usize>().map_err(|_| {
            eprintln!("error: --file-size must be a positive integer or `auto`");
            EXIT_USAGE
        })?
    };
    let library = Library::random(files, file_size, seed);
    let layout = split_files(&sol.ratios, &library).map_err(|e| {
        eprintln!("error: {e} (use a multiple of {minimal})");
        EXIT_INDIVISIBLE
    })?;
    let caches = place_caches(&layout, &library);
    let demand = [0usize, 1, 2];
    let plan = plan_delivery(&layout, &library, &demand).expect("distinct demands");
    let report = execute(&plan, &caches, &layout, &library, &demand).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_VERIFY_FAILED
    })?;

    let consistent = report.decode_ok == [true; 3] && &report.measured_fdt == sol.tau.value();
    let rendered = output::SimReportOut::new(&budget, &sol, file_size, seed, &demand, &report);
    match format {
        Format::Json => println!("{}", rendered.to_json()),
        Format::Text => print!("{}", rendered.to_text()),
    }
    if !consistent {
        eprintln!("error: simulation disagrees with the LP optimum");
        return Err(EXIT_VERIFY_FAILED);
    }
    Ok(())
}

fn cmd_verify(step: &str, oracle_samples: usize) -> Result<(), u8> {
    let step = parse_flag_rat(step, "step")?;
    if step <= int(0) || step > rat(1, 2) {
        eprintln!("error: --step must satisfy 0 < step <= 1/2");
        return Err(EXIT_USAGE);
    }
    let fail = |e: fdt_core::verify::CheckFailure| {
        eprintln!("FAIL: {e}");
        EXIT_VERIFY_FAILED
    };
    let n = check_theorem_agreement(&step).map_err(fail)?;
    println!("theorem agreement: {n} grid points, LP = closed form everywhere");
    let n = check_partition(&step).map_err(fail)?;
    println!("region partition: {n} grid points, each in exactly one region");
    let n = check_boundary_continuity(&step).map_err(fail)?;
    println!("boundary continuity: {n} boundary points, adjacent formulas agree");
    let n = check_oracle_equivalence(oracle_samples, 0xFD7).map_err(fail)?;
    println!("oracle equivalence: {n} random budgets, simplex = basis enumeration");
    println!("all checks passed");
    Ok(())
}

fn cmd_compare(out: &PathBuf) -> Result<(), u8> {
    let mut csv = String::from("mu_r,ours_at_mu_t_1,baseline\n");
    for mu_r in [int(0), rat(1, 3), rat(2, 3), int(1)] {
        let b = CacheBudget::new(mu_r.clone(), int(1)).expect("in range");
        let ours = closed_form_fdt(&b).expect("feasible");
        let baseline = broadcast_baseline_fdt(&mu_r).expect("cited point");
        csv.push_str(&format!("{},{},{}\n", fmt_rat(&mu_r), ours, baseline));
    }
    csv.push_str("\nmu_t,tx_only_fdt\n");
    let step = rat(1, 12);
    let mut mu_t = rat(1, 3);
    while mu_t <= int(1) {
        let fdt = tx_only_fdt(&mu_t).expect("in domain");
        csv.push_str(&format!("{},{}\n", fmt_rat(&mu_t), fdt));
        mu_t += &step;
    }
    write_file(out, &csv)?;
    eprintln!("wrote {}", out.display());
    Ok(())
}

fn run() -> Result<(), u8> {
    let cli = Cli::try_parse().map_err(|e| {
        // clap renders its own message; help/version are not errors.
        let _ = e.print();
        match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
            _ => EXIT_USAGE,
        }
    })?;
    match cli.command {
        Command::Solve { mu_r, mu_t, format } => cmd_solve(&mu_r, &mu_t, format),
        Command::Sweep { step, out } => cmd_sweep(&step, &out),
        Command::Simulate {
            mu_r,
            mu_t,
            files,
            file_size,
            seed,
            format,
        } => cmd_simulate(&mu_r, &mu_t, files, &file_size, seed, format),
        Command::Verify {
            step,
            oracle_samples,
        } => cmd_verify(&step, oracle_samples),
        Command::Compare { out } => cmd_compare(&out),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
