use netprofiler::degreedist::DegreeClassification;
use netprofiler::ingest::write_pajek;
use netprofiler::pipeline::{emit_reports, run_corpus, summarize, NetworkRecord, PipelineError, RunConfig, SystemClass};
use netprofiler::synth::{barabasi_albert, ring_lattice, watts_strogatz};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::path::Path;

fn small_config(corpus: &Path) -> RunConfig {
    RunConfig {
        corpus: corpus.to_path_buf(),
        bootstrap: 20,
        realizations: 2,
        ..RunConfig::default()
    }
}

fn write_corpus(dir: &Path, count: usize) {
    for i in 0..count {
        let g = match i % 3 {
            0 => watts_strogatz(60, 4, 0.1, i as u64).unwrap(),
            1 => barabasi_albert(80, 3, 2, i as u64).unwrap(),
            _ => ring_lattice(40, 4).unwrap(),
        };
        std::fs::write(dir.join(format!("g{i}.net")), write_pajek(&g, None)).unwrap();
    }
}

fn rows(csv: &str) -> BTreeMap<String, String> {
    csv.lines().skip(1).map(|l| (l.split(',').next().unwrap().to_string(), l.to_string())).collect()
}

fn run(config: &RunConfig, out: &Path) -> String {
    let report = run_corpus(config).unwrap();
    emit_reports(&report, out).unwrap();
    std::fs::read_to_string(out.join("records.csv")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn corrupting_one_file_changes_only_its_record(victim in 0usize..6) {
        let corpus = tempfile::tempdir().unwrap();
        let out = tempfile::tempdir().unwrap();
        write_corpus(corpus.path(), 6);
        let config = small_config(corpus.path());
        let clean = rows(&run(&config, &out.path().join("clean")));
        std::fs::write(corpus.path().join(format!("g{victim}.net")), "*Vertices 2\n*Edges\n1 7\n").unwrap();
        let dirty = rows(&run(&config, &out.path().join("dirty")));
        let changed: Vec<String> = clean.keys().filter(|k| clean.get(*k) != dirty.get(*k)).cloned().collect();
        prop_assert_eq!(changed, vec![format!("g{victim}")]);
    }
}

fn record_with(class: Option<DegreeClassification>) -> NetworkRecord {
    let corpus = tempfile::tempdir().unwrap();
    write_corpus(corpus.path(), 1);
    let mut r = run_corpus(&small_config(corpus.path())).unwrap().records.remove(0);
    r.small_world = None;
    if class.is_none() {
        r.degrees = None;
    } else if let Some(d) = r.degrees.as_mut() {
        d.classification = class.unwrap();
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn class_proportions_sum_to_one(picks in prop::collection::vec(prop::option::of(0usize..4), 1..30)) {
        let template: Vec<NetworkRecord> = std::iter::once(None)
            .chain(DegreeClassification::ALL.iter().copied().map(Some))
            .map(record_with)
            .collect();
        let records: Vec<NetworkRecord> = picks
            .iter()
            .map(|p| template[p.map_or(0, |i| i + 1)].clone())
            .collect();
        let s = summarize(&records, &RunConfig::default());
        let total: f64 = s.degree_class_proportions.values().sum();
        if s.degree_classified > 0 {
            prop_assert!((total - 1.0).abs() < 1e-12);
        } else {
            prop_assert_eq!(total, 0.0);
        }
    }
}

#[test]
fn empty_corpus_is_an_error() {
    let corpus = tempfile::tempdir().unwrap();
    std::fs::write(corpus.path().join("notes.md"), "nothing here").unwrap();
    assert!(matches!(run_corpus(&small_config(corpus.path())), Err(PipelineError::EmptyCorpus(_))));
}

#[test]
fn size_cap_skips_omega_but_not_degrees() {
    let corpus = tempfile::tempdir().unwrap();
    write_corpus(corpus.path(), 2);
    let config = RunConfig {
        size_cap_nodes: 70,
        ..small_config(corpus.path())
    };
    let report = run_corpus(&config).unwrap();
    let big = report.records.iter().find(|r| r.id == "g1").unwrap();
    assert!(big.small_world.is_none() && big.degrees.is_some());
    assert!(big.skip_reasons.iter().any(|s| s.stage == "omega" && s.reason == "size-cap"));
    assert!(report.records.iter().find(|r| r.id == "g0").unwrap().small_world.is_some());
}

#[test]
fn class_metadata_and_reports() {
    let corpus = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write_corpus(corpus.path(), 3);
    std::fs::write(corpus.path().join("classes.csv"), "id,class\ng0,trophic\ng2,social-interaction\n").unwrap();
    let report = run_corpus(&small_config(corpus.path())).unwrap();
    let classes: Vec<SystemClass> = report.records.iter().map(|r| r.system_class).collect();
    assert_eq!(classes, vec![SystemClass::Trophic, SystemClass::Other, SystemClass::SocialInteraction]);
    emit_reports(&report, out.path()).unwrap();
    for f in ["records.csv", "records.jsonl", "omega_hist.csv", "scatter.csv", "summary.json", "ccdf/g0.csv"] {
        assert!(out.path().join(f).is_file(), "{f} missing");
    }
    let hist = std::fs::read_to_string(out.path().join("omega_hist.csv")).unwrap();
    assert_eq!(hist.lines().count(), 41);
    let jsonl = std::fs::read_to_string(out.path().join("records.jsonl")).unwrap();
    assert_eq!(jsonl.lines().count(), 3);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["networks"], 3);
}

#[test]
fn disconnected_input_uses_giant_component() {
    let corpus = tempfile::tempdir().unwrap();
    let text = "*Vertices 12\n*Edges\n1 2\n2 3\n3 4\n4 1\n1 3\n5 6\n6 7\n7 8\n8 9\n9 5\n10 11\n";
    std::fs::write(corpus.path().join("split.net"), text).unwrap();
    let r = run_corpus(&small_config(corpus.path())).unwrap().records.remove(0);
    assert!(r.giant_component);
    assert_eq!((r.n, r.analyzed_n), (11, 5));
}
