//! Result reports: `key: value` text and a JSON sidecar with the same fields.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CutArc {
    pub tail: usize,
    pub head: usize,
    pub cap: String,
}

/// Vertex ids are 1-based, as in graph files. `wall_time_ms` is the only
/// field that varies between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub problem: &'static str,
    pub mode: &'static str,
    pub algorithm: &'static str,
    pub root: Option<usize>,
    pub orientation: String,
    pub epsilon: String,
    pub seed: u64,
    pub value: String,
    pub sink: Vec<usize>,
    pub separator: Option<Vec<usize>>,
    pub cut_arcs: Option<Vec<CutArc>>,
    pub roots_tried: Vec<usize>,
    pub lambda_probes: u64,
    pub probe_runs: u64,
    pub terminals: u64,
    pub flow_calls: u64,
    pub batched_flow_rounds: u64,
    pub wall_time_ms: f64,
}

fn ids(v: &[usize]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k}: {v}");
        };
        kv("problem", self.problem.into());
        kv("mode", self.mode.into());
        kv("algorithm", self.algorithm.into());
        kv("root", self.root.map_or("-".into(), |r| r.to_string()));
        kv("orientation", self.orientation.clone());
        kv("epsilon", self.epsilon.clone());
        kv("seed", self.seed.to_string());
        kv("value", self.value.clone());
        kv("sink", ids(&self.sink));
        if let Some(sep) = &self.separator {
            kv("separator", ids(sep));
        }
        if let Some(arcs) = &self.cut_arcs {
            let list: Vec<String> = arcs
                .iter()
                .map(|a| format!("{}->{}:{}", a.tail, a.head, a.cap))
                .collect();
            kv("cut_arcs", if list.is_empty() { "-".into() } else { list.join(" ") });
        }
        kv("roots_tried", ids(&self.roots_tried));
        kv("lambda_probes", self.lambda_probes.to_string());
        kv("probe_runs", self.probe_runs.to_string());
        kv("terminals", self.terminals.to_string());
        kv("flow_calls", self.flow_calls.to_string());
        kv("batched_flow_rounds", self.batched_flow_rounds.to_string());
        kv("wall_time_ms", format!("{:.3}", self.wall_time_ms));
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Drops the timing line so reports of identical runs compare equal.
pub fn strip_timing(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("wall_time_ms:"))
        .map(|l| format!("{l}\n"))
        .collect()
}
