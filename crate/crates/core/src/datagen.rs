//! Dataset generation: balanced labeled samples, landscape records and
//! exhaustive enumeration.
//!
//! Randomized generators run `shards` independent ChaCha8 streams (same
//! seed, stream number = shard index) in rounds. Each round's shard outputs
//! are merged in shard order, so output depends only on the seed and the
//! shard count, never on thread scheduling.

use std::collections::HashSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::ClassifierClient;
use crate::error::{Error, Result};
use crate::formats;
use crate::period::{growth_point, GrowthPoint};
use crate::terminality::{oracle_terminal_fan, terminal_prop1};
use crate::weights::{
    angular_order, canonical_key, sample_valid, standardize, validate, StandardWeightMatrix, WeightMatrix,
};

/// Upper bound on candidates drawn per shard in one round.
const ROUND_CAP: usize = 4096;
/// Valid draws a shard may spend looking for one label before giving up.
const LABEL_ATTEMPTS: u64 = 1_000_000;
/// Consecutive rounds without a new record before the request is deemed infeasible.
const STALL_ROUNDS: usize = 64;

/// A matrix with its exact label and deduplication key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledRecord {
    pub matrix: StandardWeightMatrix,
    pub terminal: bool,
    pub key: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct LabeledLine {
    a: Vec<i64>,
    b: Vec<i64>,
    terminal: bool,
    key: String,
}

impl LabeledRecord {
    pub fn new(matrix: StandardWeightMatrix) -> Result<Self> {
        let terminal = terminal_prop1(&matrix)?.terminal;
        let key = canonical_key(&matrix)?;
        Ok(LabeledRecord { matrix, terminal, key })
    }

    pub fn to_json_line(&self) -> String {
        let line = LabeledLine {
            a: self.matrix.a().to_vec(),
            b: self.matrix.b().to_vec(),
            terminal: self.terminal,
            key: String::from_utf8_lossy(&self.key).into_owned(),
        };
        serde_json::to_string(&line).expect("plain data serializes")
    }

    /// Parses a JSON line, checking the stored key against the matrix.
    pub fn from_json_line(line: &str) -> Result<Self> {
        let raw: LabeledLine = serde_json::from_str(line)?;
        let matrix = StandardWeightMatrix::try_from(WeightMatrix::new(raw.a, raw.b)?)?;
        let key = canonical_key(&matrix)?;
        if key != raw.key.as_bytes() {
            return Err(Error::Parse(format!("stored key {:?} does not match {matrix}", raw.key)));
        }
        Ok(LabeledRecord { matrix, terminal: raw.terminal, key })
    }
}

/// Writes the header, then one JSON line per record.
pub fn write_labeled<W: Write + ?Sized>(out: &mut W, records: &[LabeledRecord]) -> Result<()> {
    formats::write_header(out)?;
    for r in records {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(())
}

fn shard_rngs(seed: u64, shards: usize) -> Vec<ChaCha8Rng> {
    (0..shards)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            rng
        })
        .collect()
}

/// Splits `total` across shards, earlier shards taking the remainder.
fn split(total: usize, shards: usize) -> Vec<usize> {
    (0..shards).map(|s| total / shards + usize::from(s < total % shards)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedConfig {
    pub count: usize,
    pub n: usize,
    pub bound: i64,
    pub seed: u64,
    pub shards: usize,
    /// Cross-check every `audit_every`-th emitted label with the fan oracle; 0 disables.
    pub audit_every: usize,
}

impl BalancedConfig {
    pub fn new(count: usize, n: usize, bound: i64, seed: u64) -> Self {
        BalancedConfig { count, n, bound, seed, shards: 1, audit_every: 100 }
    }

    fn check(&self) -> Result<()> {
        if self.count % 2 != 0 {
            return Err(Error::Infeasible(format!("count {} is odd", self.count)));
        }
        check_shape(self.n, self.bound, self.shards)
    }
}

fn check_shape(n: usize, bound: i64, shards: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::TooFewColumns(n));
    }
    if bound < 1 {
        return Err(Error::Infeasible(format!("bound {bound} < 1")));
    }
    if shards == 0 {
        return Err(Error::Infeasible("zero shards".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub terminal: usize,
    pub non_terminal: usize,
    /// Valid matrices drawn, including those whose label was not wanted.
    pub candidates: u64,
    pub duplicates: usize,
    /// Labeled draws discarded because their class was already full.
    pub overflow: usize,
    pub audited: usize,
    pub rounds: usize,
}

/// Balanced labeled dataset: `count / 2` terminal and `count / 2`
/// non-terminal records, unique by canonical key.
///
/// Each draw first picks a target label among those still needed, then
/// samples valid matrices until the exact label matches.
pub fn generate_balanced<F>(config: &BalancedConfig, mut sink: F) -> Result<GenerationStats>
where
    F: FnMut(&LabeledRecord) -> Result<()>,
{
    config.check()?;
    let quota = config.count / 2;
    let mut need = [quota, quota]; // [non-terminal, terminal]
    let mut rngs = shard_rngs(config.seed, config.shards);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut stats = GenerationStats::default();
    let mut stalled = 0;

    while need[0] + need[1] > 0 {
        stats.rounds += 1;
        let per_shard = (need[0] + need[1]).div_ceil(config.shards).min(ROUND_CAP);
        let wanted = (need[1] > 0, need[0] > 0);
        let batches: Vec<(Vec<LabeledRecord>, u64)> = rngs
            .par_iter_mut()
            .map(|rng| {
                let mut out = Vec::with_capacity(per_shard);
                let mut drawn = 0u64;
                for _ in 0..per_shard {
                    let label = match wanted {
                        (true, true) => rng.gen_bool(0.5),
                        (t, _) => t,
                    };
                    let mut attempts = 0;
                    let w = loop {
                        let w = sample_valid(config.n, config.bound, rng);
                        drawn += 1;
                        attempts += 1;
                        if terminal_prop1(&w)?.terminal == label {
                            break w;
                        }
                        if attempts >= LABEL_ATTEMPTS {
                            return Err(Error::Infeasible(format!(
                                "no {} matrix in {LABEL_ATTEMPTS} draws (N = {}, bound = {})",
                                if label { "terminal" } else { "non-terminal" },
                                config.n,
                                config.bound
                            )));
                        }
                    };
                    let key = canonical_key(&w)?;
                    out.push(LabeledRecord { matrix: w, terminal: label, key });
                }
                Ok((out, drawn))
            })
            .collect::<Result<_>>()?;

        let before = stats.terminal + stats.non_terminal;
        for (batch, drawn) in batches {
            stats.candidates += drawn;
            for rec in batch {
                let slot = usize::from(rec.terminal);
                if seen.contains(&rec.key) {
                    stats.duplicates += 1;
                    continue;
                }
                if need[slot] == 0 {
                    stats.overflow += 1;
                    continue;
                }
                let emitted = stats.terminal + stats.non_terminal;
                if config.audit_every > 0 && emitted % config.audit_every == 0 {
                    let fan = oracle_terminal_fan(&rec.matrix)?;
                    stats.audited += 1;
                    if fan.terminal != rec.terminal {
                        return Err(Error::OracleDisagreement(format!(
                            "{}: prop1 says {}, fan oracle says {}",
                            rec.matrix, rec.terminal, fan.terminal
                        )));
                    }
                }
                need[slot] -= 1;
                if rec.terminal {
                    stats.terminal += 1;
                } else {
                    stats.non_terminal += 1;
                }
                sink(&rec)?;
                seen.insert(rec.key);
            }
        }
        if stats.terminal + stats.non_terminal == before {
            stalled += 1;
            if stalled >= STALL_ROUNDS {
                return Err(Error::Infeasible(format!(
                    "ran out of distinct matrices after {} records",
                    stats.terminal + stats.non_terminal
                )));
            }
        } else {
            stalled = 0;
        }
        log::info!(
            "round {}: {} terminal, {} non-terminal, {} duplicates",
            stats.rounds,
            stats.terminal,
            stats.non_terminal,
            stats.duplicates
        );
    }
    Ok(stats)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    Exact,
    Classifier,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandscapeConfig {
    /// Valid candidates to draw; records are emitted only for those kept.
    pub count: usize,
    pub n: usize,
    pub bound: i64,
    pub seed: u64,
    pub shards: usize,
    pub filter: Filter,
    pub threshold: f64,
}

impl LandscapeConfig {
    pub fn new(count: usize, n: usize, bound: i64, seed: u64) -> Self {
        LandscapeConfig { count, n, bound, seed, shards: 1, filter: Filter::Exact, threshold: 0.5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandscapeRecord {
    pub matrix: StandardWeightMatrix,
    pub prob_terminal: f64,
    pub growth: GrowthPoint,
}

impl LandscapeRecord {
    pub fn ell(&self) -> i64 {
        self.growth.ell
    }

    pub fn to_csv_row(&self) -> String {
        formats::landscape_row(
            &self.matrix,
            self.prob_terminal,
            self.growth.ell,
            self.growth.growth_a,
            self.growth.growth_b,
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandscapeStats {
    pub candidates: usize,
    pub kept: usize,
    /// Kept candidates skipped because the balance equation had no bracketed root.
    pub no_root: usize,
    pub rounds: usize,
}

/// Scores `matrices` by the chosen filter and attaches growth data to the
/// kept ones, in order.
fn score_and_grow(
    matrices: Vec<StandardWeightMatrix>,
    filter: Filter,
    threshold: f64,
    classifier: Option<&ClassifierClient>,
    stats: &mut LandscapeStats,
) -> Result<Vec<LandscapeRecord>> {
    let probs: Vec<f64> = match filter {
        Filter::Exact => matrices
            .par_iter()
            .map(|w| Ok(if terminal_prop1(w)?.terminal { 1.0 } else { 0.0 }))
            .collect::<Result<_>>()?,
        Filter::Classifier => classifier
            .ok_or_else(|| Error::ClassifierUnavailable("classifier filter without an endpoint".into()))?
            .predict(&matrices)?,
    };
    let kept: Vec<(StandardWeightMatrix, f64)> =
        matrices.into_iter().zip(probs).filter(|&(_, p)| p > threshold).collect();
    let grown: Vec<(StandardWeightMatrix, f64, Result<GrowthPoint>)> =
        kept.into_par_iter().map(|(w, p)| {
            let g = growth_point(&w);
            (w, p, g)
        }).collect();
    let mut out = Vec::with_capacity(grown.len());
    for (matrix, prob_terminal, g) in grown {
        match g {
            Ok(growth) => out.push(LandscapeRecord { matrix, prob_terminal, growth }),
            Err(Error::NoRoot(msg)) => {
                log::warn!("skipping {matrix}: {msg}");
                stats.no_root += 1;
            }
            Err(e) => return Err(e),
        }
    }
    stats.kept += out.len();
    Ok(out)
}

/// Landscape records for `count` freshly sampled valid candidates.
///
/// With [`Filter::Exact`] the probability is the exact label (0 or 1); with
/// [`Filter::Classifier`] it comes from the external endpoint, called once per
/// round. Candidates at or below `threshold` are dropped.
pub fn generate_landscape<F>(
    config: &LandscapeConfig,
    classifier: Option<&ClassifierClient>,
    mut sink: F,
) -> Result<LandscapeStats>
where
    F: FnMut(&LandscapeRecord) -> Result<()>,
{
    check_shape(config.n, config.bound, config.shards)?;
    if config.filter == Filter::Classifier && classifier.is_none() {
        return Err(Error::ClassifierUnavailable("classifier filter without an endpoint".into()));
    }
    let mut rngs = shard_rngs(config.seed, config.shards);
    let mut stats = LandscapeStats::default();
    while stats.candidates < config.count {
        stats.rounds += 1;
        let round = (config.count - stats.candidates).min(ROUND_CAP * config.shards);
        let sizes = split(round, config.shards);
        let batches: Vec<Vec<StandardWeightMatrix>> = rngs
            .par_iter_mut()
            .zip(sizes)
            .map(|(rng, k)| (0..k).map(|_| sample_valid(config.n, config.bound, rng)).collect())
            .collect();
        let merged: Vec<StandardWeightMatrix> = batches.into_iter().flatten().collect();
        stats.candidates += merged.len();
        for rec in score_and_grow(merged, config.filter, config.threshold, classifier, &mut stats)? {
            sink(&rec)?;
        }
    }
    Ok(stats)
}

/// Exact-filter landscape records for the given matrices, in order.
pub fn landscape_records(matrices: &[StandardWeightMatrix]) -> Result<Vec<LandscapeRecord>> {
    let mut stats = LandscapeStats::default();
    score_and_grow(matrices.to_vec(), Filter::Exact, 0.5, None, &mut stats)
}

/// Largest `bound^(2N−3)` accepted by [`enumerate_all`].
pub const ENUMERATION_LIMIT: f64 = 1e10;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    /// Standard-form matrices inspected.
    pub candidates: u64,
    pub valid: u64,
    pub classes: u64,
    pub terminal_classes: u64,
}

/// Every variety with a standard-form weight matrix whose entries lie in
/// `0..=bound`, once each, labeled.
///
/// Candidates are nondecreasing sequences over the anticlockwise-sorted
/// nonzero columns, starting on the horizontal axis and ending above the
/// diagonal, which is exactly the set of standard matrices in range. A class
/// has at most two standard forms; it is emitted from its key form, or from
/// the other form when the key form falls outside the range. Output order is
/// fixed by the enumeration, independent of thread count.
pub fn enumerate_all<F>(n: usize, bound: i64, mut sink: F) -> Result<EnumerationStats>
where
    F: FnMut(&LabeledRecord) -> Result<()>,
{
    check_shape(n, bound, 1)?;
    let size = (bound as f64).powi(2 * n as i32 - 3);
    if size > ENUMERATION_LIMIT {
        return Err(Error::Infeasible(format!(
            "bound^(2N-3) = {size:e} exceeds {ENUMERATION_LIMIT:e} (N = {n}, bound = {bound})"
        )));
    }
    let mut cols: Vec<(i64, i64)> =
        (0..=bound).flat_map(|x| (0..=bound).map(move |y| (x, y))).filter(|&c| c != (0, 0)).collect();
    cols.sort_by(|&p, &q| angular_order(p, q));
    let firsts: Vec<usize> = (0..cols.len()).filter(|&k| cols[k].1 == 0).collect();
    // The second column (a middle one when N ≥ 4) splits the work.
    let tasks: Vec<(usize, usize)> =
        firsts.iter().flat_map(|&i| (i..cols.len()).map(move |j| (i, j))).collect();

    let mut stats = EnumerationStats::default();
    for chunk in tasks.chunks(64) {
        let results: Vec<(Vec<LabeledRecord>, u64, u64)> = chunk
            .par_iter()
            .map(|&(i, j)| enumerate_task(&cols, n, bound, i, j))
            .collect::<Result<_>>()?;
        for (records, candidates, valid) in results {
            stats.candidates += candidates;
            stats.valid += valid;
            for rec in records {
                stats.classes += 1;
                stats.terminal_classes += u64::from(rec.terminal);
                sink(&rec)?;
            }
        }
    }
    log::info!(
        "enumerated N = {n}, bound = {bound}: {} candidates, {} valid, {} classes, {} terminal",
        stats.candidates,
        stats.valid,
        stats.classes,
        stats.terminal_classes
    );
    Ok(stats)
}

fn enumerate_task(
    cols: &[(i64, i64)],
    n: usize,
    bound: i64,
    first: usize,
    second: usize,
) -> Result<(Vec<LabeledRecord>, u64, u64)> {
    let mut out = Vec::new();
    let (mut candidates, mut valid) = (0u64, 0u64);
    let mut idx = vec![0usize; n];
    idx[0] = first;
    idx[1] = second;
    let in_range = |w: &WeightMatrix| w.a().iter().chain(w.b()).all(|&x| x <= bound);

    // Odometer over idx[2..n], nondecreasing, last column with a < b.
    fn fill(idx: &mut [usize], from: usize) {
        for k in from..idx.len() {
            idx[k] = idx[k - 1];
        }
    }
    fill(&mut idx, 2);
    loop {
        let last = cols[idx[n - 1]];
        if last.0 < last.1 {
            candidates += 1;
            let columns: Vec<(i64, i64)> = idx.iter().map(|&k| cols[k]).collect();
            let w = WeightMatrix::from_columns(&columns)?;
            if validate(&w).is_valid() {
                valid += 1;
                let own = w.to_string();
                let other = standardize(&w.swap_rows())?;
                let other_text = other.to_string();
                if own <= other_text || !in_range(&other) {
                    let matrix = StandardWeightMatrix::try_from(w)?;
                    let key = own.clone().min(other_text).into_bytes();
                    let terminal = terminal_prop1(&matrix)?.terminal;
                    out.push(LabeledRecord { matrix, terminal, key });
                }
            }
        }
        // advance the rightmost position that can still grow
        let mut pos = n - 1;
        loop {
            if pos < 2 {
                return Ok((out, candidates, valid));
            }
            if idx[pos] + 1 < cols.len() {
                idx[pos] += 1;
                fill(&mut idx, pos + 1);
                break;
            }
            pos -= 1;
        }
    }
}
