mod common;

use std::fs;
use std::path::Path;

use common::fixture;
use documint_core::miner::{stats_path, write_alpaca, write_stats};
use documint_core::{
    export_alpaca, filter_repo, load_manifest, mine_tree, mine_trees, parse_single_function, CorpusSample,
    MineConfig, MiningStats, RepoThresholds,
};

fn alpaca_bytes(samples: &[CorpusSample]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_alpaca(samples, &mut buf).unwrap();
    buf
}

fn with_threads(n: usize) -> MineConfig {
    MineConfig {
        threads: Some(n),
        ..MineConfig::default()
    }
}

#[test]
fn fixture_tree_stats() {
    let (samples, stats) = mine_tree(&fixture("mining/tree"), "t", &MineConfig::default()).unwrap();
    assert_eq!(
        stats,
        MiningStats {
            files_seen: 4,
            files_parsed: 3,
            parse_failures: 1,
            functions_seen: 8,
            functions_with_docstring: 6,
            filtered_by_config: 1,
            duplicates_removed: 0,
            samples_exported: 5,
        }
    );
    assert!(stats.invariants_hold());
    let names: Vec<(&str, &str)> = samples
        .iter()
        .map(|s| (s.origin.path.as_str(), s.origin.qualified_name.as_str()))
        .collect();
    assert_eq!(
        names,
        [
            ("alpha.py", "area"),
            ("alpha.py", "fetch"),
            ("pkg/Beta.PY", "Stack.push"),
            ("pkg/sub/gamma.py", "outer"),
            ("pkg/sub/gamma.py", "outer.square"),
        ]
    );
}

#[test]
fn exported_instructions_reparse_without_docstring() {
    for tree in ["mining/tree", "mining/dup", "parser/corpus"] {
        let (samples, _) = mine_tree(&fixture(tree), "t", &MineConfig::default()).unwrap();
        assert!(!samples.is_empty());
        for s in &samples {
            let rec = parse_single_function(&s.instruction).unwrap_or_else(|e| panic!("{}: {e}", s.origin.qualified_name));
            assert!(rec.docstring.is_none());
            assert!(!s.response.trim().is_empty());
        }
    }
}

#[test]
fn deterministic_across_runs_and_threads() {
    for tree in ["mining/tree", "parser/corpus"] {
        let root = fixture(tree);
        let (first, stats) = mine_tree(&root, "t", &with_threads(1)).unwrap();
        let bytes = alpaca_bytes(&first);
        for n in [1, 2, 3, 8] {
            let (again, s) = mine_tree(&root, "t", &with_threads(n)).unwrap();
            assert_eq!(alpaca_bytes(&again), bytes, "threads={n}");
            assert_eq!(s, stats);
            assert_eq!(again, first);
        }
        let (global, _) = mine_tree(&root, "t", &MineConfig::default()).unwrap();
        assert_eq!(alpaca_bytes(&global), bytes);
    }
}

#[test]
fn duplicate_fixture_matches_golden() {
    let (samples, stats) = mine_tree(&fixture("mining/dup"), "d", &MineConfig::default()).unwrap();
    assert_eq!(stats.duplicates_removed, 1);
    assert_eq!(stats.samples_exported, 4);
    assert!(stats.invariants_hold());
    let golden = fixture("mining/dup.alpaca.json");
    let bytes = alpaca_bytes(&samples);
    if std::env::var_os("DOCUMINT_BLESS").is_some() {
        fs::write(&golden, &bytes).unwrap();
    }
    assert_eq!(String::from_utf8(bytes).unwrap(), fs::read_to_string(golden).unwrap());
}

#[test]
fn config_filters() {
    let root = fixture("mining/tree");
    let no_methods = MineConfig {
        include_methods: false,
        ..MineConfig::default()
    };
    let (s, st) = mine_tree(&root, "t", &no_methods).unwrap();
    assert!(s.iter().all(|x| x.origin.qualified_name != "Stack.push"));
    assert_eq!((st.samples_exported, st.filtered_by_config), (4, 2));

    let no_nested = MineConfig {
        include_nested: false,
        ..MineConfig::default()
    };
    let (s, _) = mine_tree(&root, "t", &no_nested).unwrap();
    assert!(s.iter().all(|x| x.origin.qualified_name != "outer.square"));

    let long_only = MineConfig {
        min_chars: 30,
        ..MineConfig::default()
    };
    let (s, st) = mine_tree(&root, "t", &long_only).unwrap();
    assert!(s.iter().all(|x| x.response.chars().filter(|c| !c.is_whitespace()).count() >= 30));
    assert!(st.invariants_hold());

    let excluded = MineConfig {
        exclude: vec!["pkg/**".into()],
        ..MineConfig::default()
    };
    let (_, st) = mine_tree(&root, "t", &excluded).unwrap();
    assert_eq!((st.files_seen, st.parse_failures, st.samples_exported), (1, 0, 2));
}

#[test]
fn empty_directory_and_missing_root() {
    let dir = tempfile::tempdir().unwrap();
    let (s, st) = mine_tree(dir.path(), "e", &MineConfig::default()).unwrap();
    assert!(s.is_empty());
    assert_eq!(st, MiningStats::default());
    assert!(mine_tree(&dir.path().join("nope"), "e", &MineConfig::default()).is_err());
}

#[test]
fn manifest_filter_and_export() {
    let repos = load_manifest(&fixture("mining/manifest.json")).unwrap();
    assert_eq!(repos.len(), 2);
    assert!(repos[0].root_path.ends_with("tree") && repos[0].root_path.is_dir());
    let t = RepoThresholds::default();
    let accepted: Vec<(String, std::path::PathBuf)> = repos
        .iter()
        .filter(|r| filter_repo(r, &t).is_accept())
        .map(|r| (r.repo_id.clone(), r.root_path.clone()))
        .collect();
    assert_eq!(accepted.len(), 1);
    let (samples, stats) = mine_trees(&accepted, &MineConfig::default()).unwrap();
    assert!(samples.iter().all(|s| s.origin.repo_id == "accepted/tree"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus.json");
    let n = export_alpaca(&samples, &out).unwrap();
    assert_eq!(n, fs::metadata(&out).unwrap().len());
    write_stats(&stats, &stats_path(&out)).unwrap();
    let back: MiningStats = serde_json::from_str(&fs::read_to_string(stats_path(&out)).unwrap()).unwrap();
    assert_eq!(back, stats);
    let rows: Vec<serde_json::Map<String, serde_json::Value>> =
        serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert!(rows.iter().all(|r| r.keys().map(String::as_str).collect::<Vec<_>>() == ["instruction", "response"]));
    assert!(!Path::new(&out).with_extension("tmp").exists());
}
