//! Machine-readable records. Fractions are always emitted as `p/q` strings
//! and JSON key order is fixed, so identical inputs give identical bytes.

use fdt_core::delivery::SimReport;
use fdt_core::lp::LpSolution;
use fdt_core::model::{CacheBudget, Region, RATIO_NAMES};
use fdt_core::rat::fmt_rat;
use serde_json::{json, Map, Value};

pub struct SolveRecord {
    json: Value,
    text: String,
}

impl SolveRecord {
    pub fn new(budget: &CacheBudget, region: Region, sol: &LpSolution) -> Self {
        let mut ratios = Map::new();
        for (name, value) in RATIO_NAMES.iter().zip(sol.ratios.to_vec()) {
            ratios.insert(name.to_string(), Value::String(fmt_rat(&value)));
        }
        let fdt = sol.tau.to_string();
        let json = json!({
            "mu_r": fmt_rat(budget.mu_r()),
            "mu_t": fmt_rat(budget.mu_t()),
            "feasible": true,
            "region": region.name(),
            "fdt_lp": fdt,
            "fdt_closed_form": fdt,
            "ratios": Value::Object(ratios),
        });
        let mut text = format!(
            "budget: mu_r={}, mu_t={}\nregion: {}\nfdt: {} (LP = closed form)\nratios:\n",
            fmt_rat(budget.mu_r()),
            fmt_rat(budget.mu_t()),
            region.name(),
            fdt
        );
        for (name, value) in RATIO_NAMES.iter().zip(sol.ratios.to_vec()) {
            text.push_str(&format!("  {name} = {}\n", fmt_rat(&value)));
        }
        Self { json, text }
    }

    pub fn to_json(&self) -> String {
        self.json.to_string()
    }

    pub fn to_text(&self) -> String {
        self.text.clone()
    }
}

pub struct SimReportOut {
    json: Value,
    text: String,
}

impl SimReportOut {
    pub fn new(
        budget: &CacheBudget,
        sol: &LpSolution,
        file_size: usize,
        seed: u64,
        demand: &[usize; 3],
        report: &SimReport,
    ) -> Self {
        let phases: Vec<Value> = report
            .phases
            .iter()
            .map(|p| {
                json!({
                    "channel": p.kind.name(),
                    "dof": fmt_rat(&p.kind.dof()),
                    "messages": p.num_messages,
                    "bits": p.total_bits,
                    "duration": fmt_rat(&p.normalized_duration),
                })
            })
            .collect();
        let json = json!({
            "mu_r": fmt_rat(budget.mu_r()),
            "mu_t": fmt_rat(budget.mu_t()),
            "file_size": file_size,
            "seed": seed,
            "demand": demand.to_vec(),
            "phases": phases,
            "measured_fdt": fmt_rat(&report.measured_fdt),
            "fdt_lp": sol.tau.to_string(),
            "decode_ok": report.decode_ok.to_vec(),
            "tx_occupancy": report.tx_occupancy.to_vec(),
            "rx_occupancy": report.rx_occupancy.to_vec(),
        });
        let mut text = format!(
            "budget: mu_r={}, mu_t={}\nfile size: {file_size} bits, seed {seed}, demand {demand:?}\n",
            fmt_rat(budget.mu_r()),
            fmt_rat(budget.mu_t()),
        );
        for p in &report.phases {
            text.push_str(&format!(
                "phase {}: {} messages, {} bits, duration {}\n",
                p.kind.name(),
                p.num_messages,
                p.total_bits,
                fmt_rat(&p.normalized_duration)
            ));
        }
        text.push_str(&format!(
            "measured fdt: {} (LP: {})\ndecode ok: {:?}\ntx occupancy: {:?}\nrx occupancy: {:?}\n",
            fmt_rat(&report.measured_fdt),
            sol.tau,
            report.decode_ok,
            report.tx_occupancy,
            report.rx_occupancy
        ));
        Self { json, text }
    }

    pub fn to_json(&self) -> String {
        self.json.to_string()
    }

    pub fn to_text(&self) -> String {
        self.text.clone()
    }
}
