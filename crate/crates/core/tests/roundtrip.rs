use pivot_corpus::corpus::length_stats;
use pivot_corpus::fixtures;
use pivot_corpus::ingest::{
    normalize_caption_text, parse_collection_xml, parse_srt, parse_vtt, write_collection_xml, write_srt, write_vtt,
    Caption, Talk, TalkCollection,
};
use proptest::prelude::*;

fn caption_text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 ,.?!'&<>\"\u{05D0}-\u{05EA}\u{0627}-\u{064A}]{1,40}"
        .prop_map(|s| normalize_caption_text(&s))
        .prop_filter("non-empty", |s| !s.is_empty())
}

fn arb_talk() -> impl Strategy<Value = Talk> {
    prop::collection::vec((0u64..5000, 1u64..5000, caption_text()), 1..12).prop_map(|cues| {
        let mut t = 0;
        let mut captions = Vec::new();
        for (index, (gap, dur, text)) in cues.into_iter().enumerate() {
            let start_ms = t + gap;
            captions.push(Caption { index, start_ms, end_ms: start_ms + dur, text });
            t = start_ms + dur;
        }
        Talk { talk_id: "42".into(), language: "he".into(), title: None, captions }
    })
}

proptest! {
    #[test]
    fn srt_round_trip(talk in arb_talk()) {
        let parsed = parse_srt(write_srt(&talk).as_bytes(), "42", "he").unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(parsed.talk, talk);
    }

    #[test]
    fn vtt_round_trip(talk in arb_talk()) {
        let parsed = parse_vtt(write_vtt(&talk).as_bytes(), "42", "he").unwrap();
        prop_assert_eq!(parsed.talk, talk);
    }

    #[test]
    fn xml_round_trip(talk in arb_talk()) {
        let mut coll = TalkCollection::new("he");
        coll.insert(talk).unwrap();
        let back = parse_collection_xml(write_collection_xml(&coll).as_bytes()).unwrap();
        prop_assert_eq!(back, coll);
    }

    #[test]
    fn stats_of_concatenation(a in prop::collection::vec(1usize..300, 1..50), b in prop::collection::vec(1usize..300, 1..50)) {
        let merged: Vec<usize> = a.iter().chain(&b).copied().collect();
        let whole = length_stats(&merged).unwrap();
        let mut sorted = merged.clone();
        sorted.sort();
        let again = length_stats(&sorted).unwrap();
        prop_assert!((whole.mean - again.mean).abs() < 1e-9);
        prop_assert!((whole.std - again.std).abs() < 1e-9);
        prop_assert_eq!(whole.max, *sorted.last().unwrap());
        prop_assert_eq!(whole.per_mille_over_100, again.per_mille_over_100);
        prop_assert!(whole.std >= 0.0 && whole.max as f64 >= whole.mean);
    }
}

#[test]
fn fixture_corpus_round_trips_through_xml() {
    let c = fixtures::corpus();
    for coll in [&c.pivot, &c.pivot_b, &c.a, &c.b] {
        assert_eq!(&parse_collection_xml(write_collection_xml(coll).as_bytes()).unwrap(), coll);
    }
}
