use homonym_core::corpus::PartOfSpeech;
use homonym_core::embed::{average_by_sense, context_window, EmbeddingRecord};
use homonym_oracles as oracle;
use proptest::prelude::*;

fn records() -> impl Strategy<Value = Vec<EmbeddingRecord>> {
    (1usize..8).prop_flat_map(|dim| {
        prop::collection::vec((0usize..7, prop::collection::vec(-10.0..10.0f64, dim)), 50).prop_map(
            |raw| {
                raw.into_iter()
                    .enumerate()
                    .map(|(i, (key, vector))| EmbeddingRecord {
                        sentence_id: format!("s{i}"),
                        lemma: "light".into(),
                        pos: PartOfSpeech::Noun,
                        sense_key: format!("light%1:0{key}"),
                        group_id: if key < 3 { 100 } else { 400 },
                        vector,
                    })
                    .collect()
            },
        )
    })
}

proptest! {
    #[test]
    fn averages_match_per_key_means(recs in records()) {
        let got = average_by_sense(&recs).unwrap();
        let pairs: Vec<(String, Vec<f64>)> = recs.iter().map(|r| (r.sense_key.clone(), r.vector.clone())).collect();
        let want = oracle::per_key_means(&pairs);
        prop_assert_eq!(got.len(), want.len());
        for avg in &got {
            let (mean, count) = &want[&avg.sense_key];
            prop_assert_eq!(avg.count, *count);
            for (a, b) in avg.mean_vector.iter().zip(mean) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn weighted_means_restore_the_total(recs in records()) {
        let got = average_by_sense(&recs).unwrap();
        let dim = recs[0].vector.len();
        for c in 0..dim {
            let total: f64 = recs.iter().map(|r| r.vector[c]).sum();
            let rebuilt: f64 = got.iter().map(|a| a.count as f64 * a.mean_vector[c]).sum();
            prop_assert!((total - rebuilt).abs() <= 1e-9);
        }
    }

    #[test]
    fn window_keeps_target(len in 1usize..80, target_frac in 0.0..1.0f64, radius in 0usize..15) {
        let tokens: Vec<usize> = (0..len).collect();
        let target = ((len as f64) * target_frac) as usize % len;
        let (window, at) = context_window(&tokens, target, radius).unwrap();
        prop_assert_eq!(window[at], target);
        prop_assert!(window.len() <= 2 * radius + 1);
        prop_assert_eq!(at, target.min(radius));
    }
}
