use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::anneal::{anneal, decode, Decoder, ReadoutReport};
use crate::clustering::{cost, distance_matrix, oracle_min, Partition};
use crate::error::{Error, Result};
use crate::hamiltonian::{assemble, Method};
use crate::harness::spec::ProblemSpec;

/// Largest register `run` will simulate (a 3^7 state vector).
pub const MAX_RUN_QUTRITS: usize = 7;

#[derive(Debug, Clone)]
pub struct RunResult {
    pub spec: ProblemSpec,
    pub n_qutrits: usize,
    pub report: ReadoutReport,
    pub top_partition: Partition,
    pub top_probability: f64,
    /// Cost of the decoded partition.
    pub annealed_cost: f64,
    pub oracle_min_cost: f64,
    pub oracle_partitions: Vec<Partition>,
    /// Whether the decoded partition is one of the oracle's minimizers.
    pub matched: bool,
    pub invalid_probability: f64,
    pub final_norm: f64,
    pub wall_time: Duration,
}

/// Builds the Hamiltonian, anneals, decodes and checks against the oracle.
pub fn run(spec: &ProblemSpec) -> Result<RunResult> {
    let started = Instant::now();
    let n_points = spec.points.len();
    let n_centroids = spec.centroids.as_ref().map_or(0, Vec::len);
    let n_qutrits = spec.scheme.qutrits(n_points, n_centroids);
    if n_qutrits > MAX_RUN_QUTRITS {
        return Err(Error::TooLarge {
            what: "register",
            size: n_qutrits,
            limit: MAX_RUN_QUTRITS,
        });
    }
    let dm = distance_matrix(&spec.points);

    let fixed: BTreeMap<usize, usize> = match (spec.scheme.method, &spec.centroids) {
        (Method::Kmeanspp, Some(cs)) => cs.iter().enumerate().map(|(c, &p)| (p, c)).collect(),
        _ => BTreeMap::new(),
    };
    // fail on the size guard before spending time annealing
    let oracle = oracle_min(&dm, spec.scheme.k, &fixed)?;

    let hf = assemble(&dm, &spec.scheme, spec.centroids.as_deref())?;
    let psi = anneal(&spec.anneal, &hf)?;
    let decoder = Decoder::new(&spec.scheme, n_points, spec.centroids.as_deref())?;
    let report = decode(&psi, &decoder)?;

    let top_partition = report.top_partition.clone();
    let matched = oracle.contains(&top_partition);
    Ok(RunResult {
        spec: spec.clone(),
        n_qutrits,
        annealed_cost: cost(&dm, &top_partition),
        top_probability: report.top_probability,
        invalid_probability: report.invalid_probability,
        top_partition,
        oracle_min_cost: oracle.min_cost,
        oracle_partitions: oracle.argmin_partitions,
        matched,
        final_norm: psi.norm(),
        report,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::spec::parse_spec;

    #[test]
    fn register_guard() {
        let pts: Vec<String> = (0..9).map(|i| format!("[{i}, {}]", i * i % 7)).collect();
        let spec = parse_spec(
            &format!(
                r#"{{"points": [{}], "method": "one-hot-k3"}}"#,
                pts.join(",")
            ),
            "inline",
        )
        .unwrap();
        assert!(run(&spec).unwrap_err().is_size_guard());
    }

    #[test]
    fn small_instance_matches_oracle() {
        let spec = parse_spec(
            r#"{"points": [[0,0],[1,0],[9,9],[10,9]], "method": "one-hot-k3-pinned",
                "anneal": {"steps": 300, "h": 2.0}}"#,
            "inline",
        )
        .unwrap();
        let r = run(&spec).unwrap();
        assert!(
            r.matched,
            "top {} vs oracle {:?}",
            r.top_partition, r.oracle_partitions
        );
        assert!((r.final_norm - 1.0).abs() < 1e-9);
        assert!((r.annealed_cost - r.oracle_min_cost).abs() < 1e-9);
    }
}
