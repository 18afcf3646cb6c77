//! Subcommand bodies. Records go to the output stream, summaries to stderr.

use std::io::Write;

use terminal_fano::bench::{self, BenchConfig, REPORT_SCHEMA};
use terminal_fano::classifier::ClassifierClient;
use terminal_fano::datagen::{
    self, BalancedConfig, Filter, LabeledRecord, LandscapeConfig, LandscapeRecord,
};
use terminal_fano::formats::{self, VerdictLine, LANDSCAPE_COLUMNS};
use terminal_fano::terminality::POLYTOPE_MAX_DIM;
use terminal_fano::{
    oracle_terminal_fan, oracle_terminal_polytope, standardize, terminal_prop1, validate,
    StandardWeightMatrix, TerminalityVerdict,
};

use crate::io::{open_input, Output};
use crate::{
    BenchArgs, CheckArgs, EnumerateArgs, Failure, FilterArg, FormatArg, GenerateArgs, LandscapeArgs,
    MethodArg, EXIT_DISAGREEMENT, EXIT_FAILURE,
};

const CHECK_COLUMNS: &str = "a;b;terminal;method";
const LABELED_COLUMNS: &str = "a;b;terminal";

/// Sizes the global pool and returns the shard count.
fn init_threads(threads: Option<usize>) -> Result<usize, Failure> {
    let t = match threads {
        Some(0) => return Err(Failure::new(EXIT_FAILURE, "--threads must be at least 1")),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(t)
        .build_global()
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    Ok(t)
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn write_preamble(out: &mut Output, format: FormatArg, columns: &str) -> Result<(), Failure> {
    formats::write_header(out)?;
    if format == FormatArg::Csv {
        writeln!(out, "{columns}")?;
    }
    Ok(())
}

fn write_labeled(out: &mut Output, format: FormatArg, r: &LabeledRecord) -> std::io::Result<()> {
    match format {
        FormatArg::Jsonl => writeln!(out, "{}", r.to_json_line()),
        FormatArg::Csv => writeln!(out, "{};{};{}", join(r.matrix.a()), join(r.matrix.b()), r.terminal),
    }
}

fn line_error(line: usize, e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_FAILURE, format!("line {line}: {e}"))
}

fn decide(w: &StandardWeightMatrix, method: MethodArg, line: usize) -> Result<TerminalityVerdict, Failure> {
    let at = |e| line_error(line, e);
    match method {
        MethodArg::Prop1 => terminal_prop1(w).map_err(at),
        MethodArg::Fan => oracle_terminal_fan(w).map_err(at),
        MethodArg::Polytope => oracle_terminal_polytope(w).map_err(at),
        MethodArg::All => {
            let direct = terminal_prop1(w).map_err(at)?;
            let mut others = vec![oracle_terminal_fan(w).map_err(at)?];
            if w.n() - 2 <= POLYTOPE_MAX_DIM {
                others.push(oracle_terminal_polytope(w).map_err(at)?);
            }
            if let Some(v) = others.iter().find(|v| v.terminal != direct.terminal) {
                return Err(Failure::new(
                    EXIT_DISAGREEMENT,
                    format!(
                        "line {line}: oracles disagree on {w}: {} says {}, {} says {}",
                        direct.method.as_str(),
                        direct.terminal,
                        v.method.as_str(),
                        v.terminal
                    ),
                ));
            }
            Ok(direct)
        }
    }
}

pub fn check(args: &CheckArgs) -> Result<(), Failure> {
    let input = open_input(args.input.as_deref())?;
    let mut out = Output::create(args.out.output.as_deref())?;
    write_preamble(&mut out, args.format, CHECK_COLUMNS)?;
    let (mut total, mut terminal) = (0usize, 0usize);
    let result = (|| {
        for (line, parsed) in formats::read_matrices(input) {
            let raw = parsed.map_err(|e| line_error(line, e))?;
            let report = validate(&raw);
            if !report.is_valid() {
                let reason = format!("invalid weight matrix {raw}: fails {}", report.failures().join(", "));
                return Err(line_error(line, reason));
            }
            let w = standardize(&raw).map_err(|e| line_error(line, e))?;
            let v = decide(&w, args.method, line)?;
            match args.format {
                FormatArg::Jsonl => {
                    let json = serde_json::to_string(&VerdictLine::new(&w, &v))
                        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
                    writeln!(out, "{json}")?;
                }
                FormatArg::Csv => {
                    writeln!(out, "{};{};{};{}", join(w.a()), join(w.b()), v.terminal, v.method.as_str())?
                }
            }
            total += 1;
            terminal += usize::from(v.terminal);
        }
        Ok(())
    })();
    out.finish()?;
    result?;
    eprintln!("check: {total} matrices, {terminal} terminal");
    Ok(())
}

pub fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let s = &args.sampling;
    let shards = init_threads(s.threads)?;
    let mut cfg = BalancedConfig::new(args.count, s.n, s.bound, s.seed);
    cfg.shards = shards;
    cfg.audit_every = args.audit_every;
    let mut out = Output::create(args.out.output.as_deref())?;
    write_preamble(&mut out, args.format, LABELED_COLUMNS)?;
    let stats = datagen::generate_balanced(&cfg, |r| Ok(write_labeled(&mut out, args.format, r)?));
    out.finish()?;
    let stats = stats?;
    let labeled = stats.terminal + stats.non_terminal + stats.duplicates + stats.overflow;
    eprintln!(
        "generate: {} terminal + {} non-terminal records from {} candidates; \
         {} duplicates ({:.2}% of labeled draws), {} over quota, {} audited, {} rounds",
        stats.terminal,
        stats.non_terminal,
        stats.candidates,
        stats.duplicates,
        100.0 * stats.duplicates as f64 / labeled.max(1) as f64,
        stats.overflow,
        stats.audited,
        stats.rounds
    );
    Ok(())
}

pub fn enumerate(args: &EnumerateArgs) -> Result<(), Failure> {
    init_threads(args.threads)?;
    let mut out = Output::create(args.out.output.as_deref())?;
    write_preamble(&mut out, args.format, LABELED_COLUMNS)?;
    let stats = datagen::enumerate_all(args.n, args.bound, |r| {
        if r.terminal || !args.terminal_only {
            write_labeled(&mut out, args.format, r)?;
        }
        Ok(())
    });
    out.finish()?;
    let stats = stats?;
    eprintln!(
        "enumerate: {} terminal classes among {} classes (N = {}, bound = {}; {} candidates, {} valid)",
        stats.terminal_classes, stats.classes, args.n, args.bound, stats.candidates, stats.valid
    );
    Ok(())
}

fn landscape_json(r: &LandscapeRecord) -> String {
    serde_json::json!({
        "a": r.matrix.a(),
        "b": r.matrix.b(),
        "prob_terminal": r.prob_terminal,
        "fano_index": r.ell(),
        "A": r.growth.growth_a,
        "B": r.growth.growth_b,
    })
    .to_string()
}

pub fn landscape(args: &LandscapeArgs) -> Result<(), Failure> {
    if !(0.0..=1.0).contains(&args.threshold) {
        return Err(Failure::new(EXIT_FAILURE, "--threshold must lie in [0, 1]"));
    }
    let s = &args.sampling;
    let client = match args.filter {
        FilterArg::Exact => None,
        FilterArg::Classifier => Some(ClassifierClient::resolve(args.classifier.as_deref())?),
    };
    let shards = init_threads(s.threads)?;
    let mut cfg = LandscapeConfig::new(args.count, s.n, s.bound, s.seed);
    cfg.shards = shards;
    cfg.threshold = args.threshold;
    cfg.filter = match args.filter {
        FilterArg::Exact => Filter::Exact,
        FilterArg::Classifier => Filter::Classifier,
    };
    let mut out = Output::create(args.out.output.as_deref())?;
    write_preamble(&mut out, args.format, LANDSCAPE_COLUMNS)?;
    let stats = datagen::generate_landscape(&cfg, client.as_ref(), |r| {
        match args.format {
            FormatArg::Csv => writeln!(out, "{}", r.to_csv_row())?,
            FormatArg::Jsonl => writeln!(out, "{}", landscape_json(r))?,
        }
        Ok(())
    });
    out.finish()?;
    let stats = stats?;
    eprintln!(
        "landscape: kept {} of {} candidates ({:.2}%), {} without a balance root, {} rounds",
        stats.kept,
        stats.candidates,
        100.0 * stats.kept as f64 / stats.candidates.max(1) as f64,
        stats.no_root,
        stats.rounds
    );
    Ok(())
}

pub fn bench(args: &BenchArgs) -> Result<(), Failure> {
    let mut out = Output::create(args.out.output.as_deref())?;
    if args.schema {
        writeln!(out, "{REPORT_SCHEMA}")?;
        return Ok(out.finish()?);
    }
    if args.count < bench::MIN_SAMPLES {
        return Err(Failure::new(EXIT_FAILURE, format!("--count must be at least {}", bench::MIN_SAMPLES)));
    }
    let cfg = BenchConfig { samples: args.count, n: args.n, bound: args.bound, seed: args.seed };
    let report = bench::run(&cfg)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    writeln!(out, "{json}")?;
    out.finish()?;
    eprintln!(
        "bench: prop1 median {:.4} ms, fan oracle median {:.4} ms, speedup {:.1}x, {} disagreements",
        report.prop1.median_ms, report.fan_oracle.median_ms, report.speedup, report.disagreements
    );
    if report.disagreements > 0 {
        return Err(Failure::new(EXIT_DISAGREEMENT, format!("{} sampled verdicts disagree", report.disagreements)));
    }
    Ok(())
}
