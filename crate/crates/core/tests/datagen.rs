use std::collections::HashSet;
use std::os::unix::fs::PermissionsExt;

use terminal_fano::classifier::ClassifierClient;
use terminal_fano::datagen::{
    enumerate_all, generate_balanced, generate_landscape, write_labeled, BalancedConfig, Filter, LabeledRecord,
    LandscapeConfig,
};
use terminal_fano::formats::HEADER;
use terminal_fano::{oracle_terminal_fan, Error};

fn balanced_bytes(cfg: &BalancedConfig) -> Vec<u8> {
    let mut recs = Vec::new();
    generate_balanced(cfg, |r| {
        recs.push(r.clone());
        Ok(())
    })
    .unwrap();
    let mut out = Vec::new();
    write_labeled(&mut out, &recs).unwrap();
    out
}

fn landscape_bytes(cfg: &LandscapeConfig, clf: Option<&ClassifierClient>) -> Vec<u8> {
    let mut out = Vec::new();
    generate_landscape(cfg, clf, |r| {
        out.extend_from_slice(r.to_csv_row().as_bytes());
        out.push(b'\n');
        Ok(())
    })
    .unwrap();
    out
}

#[test]
fn balanced_output_is_reproducible() {
    for shards in [1, 4] {
        let mut cfg = BalancedConfig::new(200, 10, 7, 42);
        cfg.shards = shards;
        let first = balanced_bytes(&cfg);
        assert_eq!(first, balanced_bytes(&cfg));
        let text = String::from_utf8(first).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(HEADER));
        let recs: Vec<LabeledRecord> = lines.map(|l| LabeledRecord::from_json_line(l).unwrap()).collect();
        assert_eq!(recs.len(), 200);
        assert_eq!(recs.iter().filter(|r| r.terminal).count(), 100);
        let keys: HashSet<_> = recs.iter().map(|r| &r.key).collect();
        assert_eq!(keys.len(), 200);
        for r in recs.iter().step_by(10) {
            assert_eq!(oracle_terminal_fan(&r.matrix).unwrap().terminal, r.terminal);
        }
    }
}

#[test]
fn different_seeds_differ() {
    let a = balanced_bytes(&BalancedConfig::new(20, 8, 7, 1));
    let b = balanced_bytes(&BalancedConfig::new(20, 8, 7, 2));
    assert_ne!(a, b);
}

#[test]
fn landscape_output_is_reproducible() {
    let mut cfg = LandscapeConfig::new(500, 10, 7, 5);
    cfg.shards = 3;
    let first = landscape_bytes(&cfg, None);
    assert!(!first.is_empty());
    assert_eq!(first, landscape_bytes(&cfg, None));
}

#[test]
fn enumeration_is_reproducible() {
    let run = || {
        let mut v = Vec::new();
        let stats = enumerate_all(5, 3, |r| {
            v.push(r.to_json_line());
            Ok(())
        })
        .unwrap();
        (v, stats)
    };
    let (a, sa) = run();
    let (b, sb) = run();
    assert_eq!(a, b);
    assert_eq!(sa, sb);
    assert_eq!(sa.classes as usize, a.len());
    let unique: HashSet<_> = a.iter().collect();
    assert_eq!(unique.len(), a.len());
}

fn fake_classifier(dir: &std::path::Path, body: &str) -> ClassifierClient {
    let path = dir.join("clf.sh");
    std::fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    ClassifierClient::new(path.to_str().unwrap()).unwrap()
}

#[test]
fn classifier_filter_uses_endpoint_probabilities() {
    let dir = tempfile::tempdir().unwrap();
    // Probability 0.9 for matrices whose text starts with "1,", else 0.2.
    let clf = fake_classifier(
        dir.path(),
        r#"grep -v '^#' "$1" | awk '{ if (substr($0,1,2)=="1,") print 0.9; else print 0.2 }' > "$2""#,
    );
    let mut cfg = LandscapeConfig::new(300, 6, 7, 8);
    cfg.filter = Filter::Classifier;
    let mut probs = Vec::new();
    let stats = generate_landscape(&cfg, Some(&clf), |r| {
        assert!(r.matrix.to_string().starts_with("1,"));
        probs.push(r.prob_terminal);
        Ok(())
    })
    .unwrap();
    assert_eq!(stats.candidates, 300);
    assert!(!probs.is_empty());
    assert!(probs.iter().all(|&p| p == 0.9));
    assert_eq!(landscape_bytes(&cfg, Some(&clf)), landscape_bytes(&cfg, Some(&clf)));
}

#[test]
fn classifier_failures_are_hard_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = LandscapeConfig::new(10, 6, 7, 8);
    cfg.filter = Filter::Classifier;
    let failing = fake_classifier(dir.path(), "exit 4");
    assert!(matches!(generate_landscape(&cfg, Some(&failing), |_| Ok(())), Err(Error::ClassifierUnavailable(_))));
    let short = fake_classifier(dir.path(), r#"echo 0.5 > "$2""#);
    assert!(matches!(generate_landscape(&cfg, Some(&short), |_| Ok(())), Err(Error::ClassifierProtocol(_))));
}
