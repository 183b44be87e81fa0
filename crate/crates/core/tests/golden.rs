use pivot_corpus::aligner::{AlignerParams, BeadType};
use pivot_corpus::fixtures::{self, TrilingualTalk};
use pivot_corpus::pivot::{pivot_align, PivotAlignment};
use pivot_corpus::rebuild::{rebuild, PunctProfile, RebuildStrategy, Stream};

fn run(t: &TrilingualTalk) -> PivotAlignment {
    pivot_align(&t.pivot, &t.a, t.pivot_b(), &t.b, &AlignerParams::default()).unwrap()
}

#[test]
fn talk_1443_pivot_punct_gives_three_sentences() {
    let out = run(&fixtures::talk_1443());
    assert_eq!(out.triples.len(), 5);
    let units = rebuild(&out.triples, RebuildStrategy::PivotPunct, &PunctProfile::default());
    let got: Vec<&str> = units.iter().map(|u| u.pivot_text.as_str()).collect();
    assert_eq!(got, fixtures::TALK_1443_PIVOT_SENTENCES);
    assert_eq!(units[1].b_text, "דמיינו את עצמכם עומדים מחוץ לדלת הכניסה של ביתכם");
    assert_eq!(units[2].source_triple_ids, vec![3, 4]);
}

#[test]
fn talk_1443_hebrew_punct_gives_one_sentence() {
    let out = run(&fixtures::talk_1443());
    let units = rebuild(&out.triples, RebuildStrategy::StrongPunctSide(Stream::B), &PunctProfile::default());
    assert_eq!(units.len(), 1);
    assert_eq!(units[0].pivot_text, fixtures::TALK_1443_PIVOT_SENTENCES.join(" "));
}

#[test]
fn talk_1443_none_keeps_five_units() {
    let out = run(&fixtures::talk_1443());
    let units = rebuild(&out.triples, RebuildStrategy::None, &PunctProfile::default());
    assert_eq!(units.len(), 5);
    assert_eq!(units[1].pivot_text, "Imagine yourself standing");
}

#[test]
fn talk_1443_split_caption_is_grouped() {
    let t = fixtures::talk_1443_split();
    let out = run(&t);
    assert_eq!(
        out.map_pb.bead_types(),
        vec![BeadType::ONE_ONE, BeadType::ONE_TWO, BeadType::ONE_ONE, BeadType::ONE_ONE]
    );
    assert_eq!(out.triples.len(), 4);
    assert_eq!(out.triples[1].b_caption_ids, vec![1, 2]);
    assert_eq!(out.triples[1].a_caption_ids, vec![1]);
}

#[test]
fn talk_2357_one_to_two_is_one_unit() {
    let t = fixtures::talk_2357();
    let out = run(&t);
    assert_eq!(out.triples.len(), 3);
    let unit = &out.triples[1];
    assert_eq!(unit.pivot_caption_ids, vec![1]);
    assert_eq!(unit.a_caption_ids, vec![1, 2]);
    assert_eq!(unit.b_caption_ids, vec![1]);
    assert_eq!(t.a.captions[1].start_ms, 53851);
    assert_eq!(t.a.captions[2].start_ms, 56091);
    assert_eq!(t.a.captions[2].end_ms, 59091);
    assert_eq!(unit.a_text, "لغة الإشارة الفرنسيه اعتُمِدت في امريكا في أوائل القرن التاسع عشر");
}

#[test]
fn desync_talk_is_flagged() {
    let out = run(&fixtures::talk_desync());
    assert!(out.report.unit_rate > 0.0);
    assert_eq!(out.report.differing_units, 1);
    assert!(out.triples.last().unwrap().divergent);
    assert!(!out.triples[0].divergent);
    for t in [fixtures::talk_1443(), fixtures::talk_2357()] {
        assert_eq!(run(&t).report.unit_rate, 0.0);
    }
}
