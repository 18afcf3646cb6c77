//! Client for an external batch terminality classifier.
//!
//! The endpoint is a command line. It is run once per batch with two extra
//! arguments: a candidates file (header line, then one matrix per line in
//! the text form) and a path where it must write one probability per line,
//! in input order.

use std::io::Write;
use std::path::Path;
use std::process::Command;

use crate::error::{Error, Result};
use crate::formats;
use crate::weights::StandardWeightMatrix;

pub const ENDPOINT_ENV: &str = "TERMINAL_FANO_CLASSIFIER";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierClient {
    program: String,
    args: Vec<String>,
}

impl ClassifierClient {
    /// Splits `spec` on whitespace into a program and leading arguments.
    pub fn new(spec: &str) -> Result<Self> {
        let mut parts = spec.split_whitespace().map(str::to_owned);
        let program = parts
            .next()
            .ok_or_else(|| Error::ClassifierUnavailable("empty endpoint".into()))?;
        Ok(ClassifierClient { program, args: parts.collect() })
    }

    /// Endpoint from `explicit`, falling back to the environment.
    pub fn resolve(explicit: Option<&str>) -> Result<Self> {
        match explicit {
            Some(spec) => Self::new(spec),
            None => match std::env::var(ENDPOINT_ENV) {
                Ok(spec) => Self::new(&spec),
                Err(_) => Err(Error::ClassifierUnavailable(format!(
                    "no endpoint given and {ENDPOINT_ENV} is not set"
                ))),
            },
        }
    }

    pub fn program(&self) -> &str {
        &self.program
    }

    /// Probabilities of terminality, one per candidate, in order.
    pub fn predict(&self, candidates: &[StandardWeightMatrix]) -> Result<Vec<f64>> {
        let dir = tempfile::tempdir()?;
        let input = dir.path().join("candidates.txt");
        let output = dir.path().join("probabilities.txt");
        {
            let mut f = std::io::BufWriter::new(std::fs::File::create(&input)?);
            formats::write_header(&mut f)?;
            for w in candidates {
                writeln!(f, "{w}")?;
            }
            f.flush()?;
        }
        let status = Command::new(&self.program)
            .args(&self.args)
            .arg(&input)
            .arg(&output)
            .status()
            .map_err(|e| Error::ClassifierUnavailable(format!("{}: {e}", self.program)))?;
        if !status.success() {
            return Err(Error::ClassifierUnavailable(format!("{} exited with {status}", self.program)));
        }
        let probs = read_probabilities(&output)?;
        if probs.len() != candidates.len() {
            return Err(Error::ClassifierProtocol(format!(
                "{} probabilities for {} candidates",
                probs.len(),
                candidates.len()
            )));
        }
        Ok(probs)
    }
}

fn read_probabilities(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ClassifierProtocol(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let p: f64 = l.parse().map_err(|_| Error::ClassifierProtocol(format!("not a number: {l:?}")))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ClassifierProtocol(format!("probability {p} outside [0, 1]")));
            }
            Ok(p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_parsing() {
        let c = ClassifierClient::new("python3 -m clf predict").unwrap();
        assert_eq!(c.program(), "python3");
        assert_eq!(c.args, vec!["-m", "clf", "predict"]);
        assert!(ClassifierClient::new("   ").is_err());
    }

    #[test]
    fn missing_program_is_unavailable() {
        let c = ClassifierClient::new("/nonexistent/classifier-binary").unwrap();
        let w = crate::weights::standardize(&"1,1,0,0;0,0,1,1".parse().unwrap()).unwrap();
        assert!(matches!(c.predict(&[w]), Err(Error::ClassifierUnavailable(_))));
    }

    #[test]
    fn probability_file_checks() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("p.txt");
        std::fs::write(&p, "#terminal-fano v1\n0.25\n1\n").unwrap();
        assert_eq!(read_probabilities(&p).unwrap(), vec![0.25, 1.0]);
        std::fs::write(&p, "1.5\n").unwrap();
        assert!(matches!(read_probabilities(&p), Err(Error::ClassifierProtocol(_))));
        std::fs::write(&p, "x\n").unwrap();
        assert!(read_probabilities(&p).is_err());
    }
}
