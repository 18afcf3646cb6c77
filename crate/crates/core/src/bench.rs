//! Latency comparison of the weight-based criterion against the fan oracle.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terminality::{oracle_terminal_fan, terminal_prop1};
use crate::weights::{sample_valid, StandardWeightMatrix};

pub const MIN_SAMPLES: usize = 1000;

/// JSON Schema of [`BenchReport`].
pub const REPORT_SCHEMA: &str = r##"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "terminal-fano bench report",
  "type": "object",
  "required": ["samples", "n", "bound", "seed", "prop1", "fan_oracle", "speedup", "disagreements"],
  "properties": {
    "samples": {"type": "integer", "minimum": 1000},
    "n": {"type": "integer", "minimum": 4},
    "bound": {"type": "integer", "minimum": 1},
    "seed": {"type": "integer", "minimum": 0},
    "prop1": {"$ref": "#/$defs/timing"},
    "fan_oracle": {"$ref": "#/$defs/timing"},
    "speedup": {"type": "number", "exclusiveMinimum": 0},
    "disagreements": {"type": "integer", "minimum": 0}
  },
  "$defs": {
    "timing": {
      "type": "object",
      "required": ["median_ms", "mean_ms", "batched_ms"],
      "properties": {
        "median_ms": {"type": "number", "minimum": 0},
        "mean_ms": {"type": "number", "minimum": 0},
        "batched_ms": {"type": "number", "minimum": 0}
      }
    }
  }
}"##;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub samples: usize,
    pub n: usize,
    pub bound: i64,
    pub seed: u64,
}

/// Per-matrix latencies in milliseconds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub median_ms: f64,
    pub mean_ms: f64,
    /// Whole batch wall time divided by the batch size.
    pub batched_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub samples: usize,
    pub n: usize,
    pub bound: i64,
    pub seed: u64,
    pub prop1: Timing,
    pub fan_oracle: Timing,
    /// Ratio of fan-oracle to criterion median latency.
    pub speedup: f64,
    pub disagreements: usize,
}

fn time<F: FnMut(&StandardWeightMatrix) -> Result<bool>>(
    sample: &[StandardWeightMatrix],
    mut f: F,
) -> Result<(Timing, Vec<bool>)> {
    let mut single = Vec::with_capacity(sample.len());
    let mut verdicts = Vec::with_capacity(sample.len());
    for w in sample {
        let t = Instant::now();
        verdicts.push(f(w)?);
        single.push(t.elapsed().as_secs_f64() * 1e3);
    }
    let t = Instant::now();
    for w in sample {
        std::hint::black_box(f(w)?);
    }
    let batched_ms = t.elapsed().as_secs_f64() * 1e3 / sample.len() as f64;
    let mean_ms = single.iter().sum::<f64>() / single.len() as f64;
    single.sort_by(f64::total_cmp);
    let mid = single.len() / 2;
    let median_ms = if single.len() % 2 == 0 { 0.5 * (single[mid - 1] + single[mid]) } else { single[mid] };
    Ok((Timing { median_ms, mean_ms, batched_ms }, verdicts))
}

/// Times both deciders on the same freshly sampled valid matrices, one thread.
pub fn run(config: &BenchConfig) -> Result<BenchReport> {
    if config.samples < MIN_SAMPLES {
        return Err(Error::Infeasible(format!("bench needs at least {MIN_SAMPLES} samples")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sample: Vec<StandardWeightMatrix> =
        (0..config.samples).map(|_| sample_valid(config.n, config.bound, &mut rng)).collect();
    let (prop1, v1) = time(&sample, |w| Ok(terminal_prop1(w)?.terminal))?;
    let (fan_oracle, v2) = time(&sample, |w| Ok(oracle_terminal_fan(w)?.terminal))?;
    let disagreements = v1.iter().zip(&v2).filter(|(x, y)| x != y).count();
    let speedup = fan_oracle.median_ms / prop1.median_ms.max(f64::MIN_POSITIVE);
    Ok(BenchReport {
        samples: config.samples,
        n: config.n,
        bound: config.bound,
        seed: config.seed,
        prop1,
        fan_oracle,
        speedup,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sample_refused() {
        let cfg = BenchConfig { samples: 10, n: 10, bound: 7, seed: 0 };
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn schema_parses_and_lists_report_fields() {
        let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
        let required: Vec<&str> =
            schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        let report = BenchReport {
            samples: 1000,
            n: 10,
            bound: 7,
            seed: 0,
            prop1: Timing { median_ms: 0.1, mean_ms: 0.2, batched_ms: 0.1 },
            fan_oracle: Timing { median_ms: 1.0, mean_ms: 2.0, batched_ms: 1.0 },
            speedup: 10.0,
            disagreements: 0,
        };
        let v = serde_json::to_value(&report).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), required.len());
        for k in required {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
