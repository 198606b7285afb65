use documint_core::metrics::{clarity_band, conciseness_band};
use documint_core::miner::content_hash;
use documint_core::{
    accuracy, conciseness, dedup_samples, filter_repo, ClarityBand, ConcisenessBand, CorpusSample, RepoMeta,
    RepoThresholds, SampleOrigin,
};
use proptest::prelude::*;

fn vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1000.0f64..1000.0, dim).prop_filter("non-zero", |v| v.iter().any(|x| x.abs() > 1e-3))
}

fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..64).prop_flat_map(|d| (vector(d), vector(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cosine_is_scale_invariant((a, b) in pair(), k in 0.01f64..100.0) {
        let scaled: Vec<f64> = a.iter().map(|x| x * k).collect();
        let base = accuracy(&a, &b).unwrap();
        prop_assert!((accuracy(&scaled, &b).unwrap() - base).abs() < 1e-9);
    }

    #[test]
    fn cosine_is_symmetric_and_bounded((a, b) in pair()) {
        let ab = accuracy(&a, &b).unwrap();
        prop_assert!((ab - accuracy(&b, &a).unwrap()).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&ab));
    }

    #[test]
    fn cosine_identity(a in (1usize..64).prop_flat_map(vector)) {
        prop_assert_eq!(accuracy(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn filter_is_monotone(
        c in 0u64..200, m in 0u64..20_000, s in 0u64..80_000, f in 0u64..30_000,
        dc in 0u64..100, dm in 0u64..10_000, ds in 0u64..40_000, df in 0u64..20_000,
    ) {
        let t = RepoThresholds::default();
        let meta = |c, m, s, f| RepoMeta { repo_id: "r".into(), contributors: c, commits: m, stars: s, forks: f, root_path: ".".into() };
        if filter_repo(&meta(c, m, s, f), &t).is_accept() {
            prop_assert!(filter_repo(&meta(c + dc, m + dm, s + ds, f + df), &t).is_accept());
        }
    }

    #[test]
    fn dedup_is_idempotent(items in prop::collection::vec((0u8..6, 0u8..4, 0u8..3), 0..40)) {
        let samples: Vec<CorpusSample> = items
            .iter()
            .map(|&(body, doc, indent)| {
                let instruction = format!("def f():\n{}return {body}", " ".repeat(indent as usize + 1));
                let response = format!("Doc {doc}.");
                CorpusSample {
                    content_hash: content_hash(&instruction, &response),
                    instruction,
                    response,
                    origin: SampleOrigin { repo_id: "r".into(), path: "p.py".into(), qualified_name: "f".into() },
                }
            })
            .collect();
        let (once, _) = dedup_samples(samples);
        let (twice, removed) = dedup_samples(once.clone());
        prop_assert_eq!(removed, 0);
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn self_concatenation_compresses(text in "[a-zA-Z ,.]{20,200}") {
        let doubled = format!("{text}{text}");
        prop_assert!(conciseness(&doubled).unwrap() < conciseness(&text).unwrap());
    }
}

#[test]
fn band_boundaries_are_inclusive() {
    assert_eq!(conciseness_band(0.5), ConcisenessBand::Ideal);
    assert_eq!(conciseness_band(0.6), ConcisenessBand::Ideal);
    assert_eq!(conciseness_band(0.5 - 1e-12), ConcisenessBand::TooTerse);
    assert_eq!(conciseness_band(0.6 + 1e-12), ConcisenessBand::Verbose);
    assert_eq!(clarity_band(50.0), ClarityBand::Ideal);
    assert_eq!(clarity_band(70.0), ClarityBand::Ideal);
    assert_eq!(clarity_band(50.0 - 1e-9), ClarityBand::TooComplex);
    assert_eq!(clarity_band(70.0 + 1e-9), ClarityBand::TooSimple);
}
