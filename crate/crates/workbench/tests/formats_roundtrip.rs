use std::path::Path;

use homonym_core::corpus::{
    HomonymInventory, PartOfSpeech, SenseEntry, SenseIndex, SenseTaggedInstance, WordKey,
};
use homonym_core::embed::EmbeddingRecord;
use homonym_oracles as oracle;
use homonym_workbench::formats::*;
use homonym_workbench::WorkbenchError;
use proptest::prelude::*;
use rand::Rng;

fn pos() -> impl Strategy<Value = PartOfSpeech> {
    prop_oneof![
        Just(PartOfSpeech::Noun),
        Just(PartOfSpeech::Verb),
        Just(PartOfSpeech::Adjective),
        Just(PartOfSpeech::Adverb)
    ]
}

fn word() -> impl Strategy<Value = String> {
    "[a-z][a-z_'.-]{0,8}"
}

fn instance() -> impl Strategy<Value = SenseTaggedInstance> {
    (
        prop::collection::vec("[^\t\n]{0,6}", 1..12),
        word(),
        pos(),
        "[a-z]{1,5}%[0-9]:[0-9]{2}:[0-9]{2}::",
        "s[0-9]{1,4}",
    )
        .prop_flat_map(|(tokens, lemma, pos, key, id)| {
            let n = tokens.len();
            (0..n).prop_map(move |target_index| SenseTaggedInstance {
                sentence_id: id.clone(),
                tokens: tokens.clone(),
                target_index,
                lemma: lemma.clone(),
                pos,
                sense_key: key.clone(),
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corpus_round_trips(rows in prop::collection::vec(instance(), 0..20)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write_corpus(&rows, &path).unwrap();
        prop_assert_eq!(parse_corpus(&path).unwrap(), rows);
    }

    #[test]
    fn sense_index_round_trips(rows in prop::collection::btree_map("[a-z]{1,6}%[0-9]:[0-9]{2}", (word(), pos(), 1u32..40), 0..30)) {
        let mut index = SenseIndex::new();
        for (key, (lemma, pos, n)) in &rows {
            index.insert(key.clone(), SenseEntry { lemma: lemma.clone(), pos: *pos, sense_number: *n }).unwrap();
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sense_index.tsv");
        write_sense_index(&index, &path).unwrap();
        prop_assert_eq!(parse_sense_index(&path).unwrap(), index);
    }

    #[test]
    fn inventory_round_trips(rows in prop::collection::btree_map((word(), pos(), 1u32..20), 1u32..1000, 0..30)) {
        let mut inventory = HomonymInventory::new();
        for ((lemma, pos, n), g) in &rows {
            inventory.insert(WordKey::new(lemma.clone(), *pos), *n, *g).unwrap();
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inventory.tsv");
        write_inventory(&inventory, &path).unwrap();
        prop_assert_eq!(parse_inventory(&path).unwrap(), inventory);
    }
}

#[test]
fn embeddings_round_trip_exactly() {
    let mut rng = oracle::rng(71);
    let dim = 12;
    let records: Vec<EmbeddingRecord> = (0..100)
        .map(|i| EmbeddingRecord {
            sentence_id: format!("s{i}"),
            lemma: "light".into(),
            pos: PartOfSpeech::Noun,
            sense_key: format!("light%1:{:02}:00::", i % 7),
            group_id: if i % 7 < 3 { 100 } else { 400 },
            vector: (0..dim)
                .map(|_| rng.random_range(-1e3..1e3) * rng.random::<f64>())
                .collect(),
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("embeddings.jsonl");
    write_embeddings(dim, &records, &path).unwrap();
    let back = parse_embeddings(&path).unwrap();
    assert_eq!(back.dim, dim);
    assert_eq!(back.records, records);
}

#[test]
fn writer_refuses_ragged_vectors() {
    let rec = EmbeddingRecord {
        sentence_id: "s".into(),
        lemma: "a".into(),
        pos: PartOfSpeech::Verb,
        sense_key: "k".into(),
        group_id: 1,
        vector: vec![1.0, 2.0],
    };
    let dir = tempfile::tempdir().unwrap();
    let err = write_embeddings(3, &[rec], &dir.path().join("e.jsonl")).unwrap_err();
    assert!(matches!(
        err,
        WorkbenchError::DimensionMismatch {
            expected: 3,
            found: 2,
            ..
        }
    ));
}

#[test]
fn missing_files_are_reported_by_path() {
    let err = parse_corpus(Path::new("/nonexistent/corpus.jsonl")).unwrap_err();
    assert!(matches!(err, WorkbenchError::MissingFile { .. }));
    assert!(err.to_string().contains("/nonexistent/corpus.jsonl"));
}

#[test]
fn bank_partition_from_inventory_file() {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/light/inventory.tsv");
    let inv = parse_inventory(&fixture).unwrap();
    let bank = WordKey::new("bank", PartOfSpeech::Noun);
    let group = |n| inv.group_of(&bank, n).unwrap();
    for n in [2, 5, 6, 8, 9] {
        assert_eq!(group(n), 100);
    }
    for n in [1, 3, 4, 7, 10] {
        assert_eq!(group(n), 200);
    }
}
