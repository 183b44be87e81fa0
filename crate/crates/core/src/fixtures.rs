//! Small trilingual fixtures (English pivot, Arabic, Hebrew) modelled on two
//! TED talks whose subtitles show the segmentation and punctuation problems
//! the pipeline deals with, plus one talk whose two English streams disagree.

use crate::ingest::{Caption, Talk, TalkCollection};

pub const PIVOT: &str = "en";
pub const LANG_A: &str = "ar";
pub const LANG_B: &str = "he";

type Cue = (u64, u64, &'static str);

/// One talk in the three languages. `pivot_b` is the pivot stream as paired
/// with B when it differs from `pivot`.
#[derive(Debug, Clone)]
pub struct TrilingualTalk {
    pub pivot: Talk,
    pub pivot_b: Option<Talk>,
    pub a: Talk,
    pub b: Talk,
}

impl TrilingualTalk {
    pub fn pivot_b(&self) -> &Talk {
        self.pivot_b.as_ref().unwrap_or(&self.pivot)
    }
}

pub fn talk<S: AsRef<str>>(id: &str, language: &str, cues: &[(u64, u64, S)]) -> Talk {
    Talk {
        talk_id: id.to_string(),
        language: language.to_string(),
        title: None,
        captions: cues
            .iter()
            .enumerate()
            .map(|(index, (start_ms, end_ms, text))| Caption {
                index,
                start_ms: *start_ms,
                end_ms: *end_ms,
                text: text.as_ref().to_string(),
            })
            .collect(),
    }
}

const T1443: [(u64, u64); 5] = [(11520, 14890), (14890, 17200), (17200, 19930), (19930, 23060), (23060, 25740)];

/// Talk 1443 with five captions per language. English has reliable
/// sentence-final punctuation, Hebrew has none, Arabic follows English.
pub fn talk_1443() -> TrilingualTalk {
    let en = [
        "I'd like to invite you to close your eyes.",
        "Imagine yourself standing",
        "outside the front door of your home.",
        "I'd like you to notice the color of the door,",
        "the material that it's made out of.",
    ];
    let ar = [
        "أود أن أدعوكم لإغلاق أعينكم.",
        "تخيلوا أنفسكم واقفين",
        "خارج الباب الأمامي لمنزلكم.",
        "أود أن تلاحظوا لون الباب،",
        "المادة التي صنع منها.",
    ];
    let he = [
        "אני רוצה להזמין אתכם לעצום את העיניים",
        "דמיינו את עצמכם עומדים",
        "מחוץ לדלת הכניסה של ביתכם",
        "אני רוצה שתשימו לב לצבע של הדלת",
        "לחומר שממנו היא עשויה",
    ];
    let cues = |texts: [&'static str; 5]| -> Vec<Cue> {
        T1443.iter().zip(texts).map(|(&(s, e), t)| (s, e, t)).collect()
    };
    TrilingualTalk {
        pivot: talk("1443", PIVOT, &cues(en)),
        pivot_b: None,
        a: talk("1443", LANG_A, &cues(ar)),
        b: talk("1443", LANG_B, &cues(he)),
    }
}

/// The three sentences pivot-punctuation rebuilding yields for [`talk_1443`].
pub const TALK_1443_PIVOT_SENTENCES: [&str; 3] = [
    "I'd like to invite you to close your eyes.",
    "Imagine yourself standing outside the front door of your home.",
    "I'd like you to notice the color of the door, the material that it's made out of.",
];

/// Talk 1443 as first subtitled: four English captions, where the Hebrew
/// translation splits the second one in two.
pub fn talk_1443_split() -> TrilingualTalk {
    let full = talk_1443();
    let en = [
        (11520, 14890, "I'd like to invite you to close your eyes."),
        (14890, 19930, "Imagine yourself standing outside the front door of your home."),
        (19930, 23060, "I'd like you to notice the color of the door,"),
        (23060, 25740, "the material that it's made out of."),
    ];
    let ar = [
        (11520, 14890, "أود أن أدعوكم لإغلاق أعينكم."),
        (14890, 19930, "تخيلوا أنفسكم واقفين خارج الباب الأمامي لمنزلكم."),
        (19930, 23060, "أود أن تلاحظوا لون الباب،"),
        (23060, 25740, "المادة التي صنع منها."),
    ];
    TrilingualTalk {
        pivot: talk("1443", PIVOT, &en),
        pivot_b: None,
        a: talk("1443", LANG_A, &ar),
        b: full.b,
    }
}

/// Talk 2357: one English caption spanning 53851–59091 is split by the
/// Arabic translation at 56091.
pub fn talk_2357() -> TrilingualTalk {
    let en = [
        (49120, 53851, "Let me tell you a little about its history."),
        (53851, 59091, "French sign language was brought to America during the early 1800s,"),
        (59091, 62870, "and it grew into American Sign Language."),
    ];
    let ar = [
        (49120, 53851, "دعوني أخبركم قليلاً عن تاريخها."),
        (53851, 56091, "لغة الإشارة الفرنسيه اعتُمِدت في امريكا"),
        (56091, 59091, "في أوائل القرن التاسع عشر"),
        (59091, 62870, "وتطورت إلى لغة الإشارة الأمريكية."),
    ];
    let he = [
        (49120, 53851, "תנו לי לספר לכם מעט על ההיסטוריה שלה."),
        (53851, 59091, "שפת הסימנים הצרפתית הובאה לאמריקה בתחילת המאה ה-19,"),
        (59091, 62870, "והיא התפתחה לשפת הסימנים האמריקאית."),
    ];
    TrilingualTalk {
        pivot: talk("2357", PIVOT, &en),
        pivot_b: None,
        a: talk("2357", LANG_A, &ar),
        b: talk("2357", LANG_B, &he),
    }
}

/// A talk whose English stream paired with Hebrew merges two captions and
/// words the last one differently.
pub fn talk_desync() -> TrilingualTalk {
    let en = [
        (1000, 4200, "Thank you so much for having me here today."),
        (4200, 6900, "I want to talk about water."),
        (6900, 9800, "Every living thing needs it to survive."),
        (9800, 12500, "Yet we waste more of it every year."),
    ];
    let en_b = [
        (1000, 4200, "Thank you so much for having me here today."),
        (4200, 9800, "I want to talk about water. Every living thing needs it to survive."),
        (9800, 12500, "Yet we waste more of it each year."),
    ];
    let ar = [
        (1000, 4200, "شكرا جزيلا لاستضافتي هنا اليوم."),
        (4200, 6900, "أريد أن أتحدث عن الماء."),
        (6900, 9800, "كل كائن حي يحتاجه ليعيش."),
        (9800, 12500, "ومع ذلك نهدر المزيد منه كل عام."),
    ];
    let he = [
        (1000, 4200, "תודה רבה שהזמנתם אותי לכאן היום."),
        (4200, 9800, "אני רוצה לדבר על מים. כל יצור חי זקוק להם כדי לשרוד."),
        (9800, 12500, "ובכל זאת אנחנו מבזבזים יותר מהם בכל שנה."),
    ];
    TrilingualTalk {
        pivot: talk("3005", PIVOT, &en),
        pivot_b: Some(talk("3005", PIVOT, &en_b)),
        a: talk("3005", LANG_A, &ar),
        b: talk("3005", LANG_B, &he),
    }
}

/// Collections for a small corpus: pivot, pivot paired with B, A and B.
#[derive(Debug, Clone)]
pub struct FixtureCorpus {
    pub pivot: TalkCollection,
    pub pivot_b: TalkCollection,
    pub a: TalkCollection,
    pub b: TalkCollection,
}

/// Talks 1443, 2357 and the desynchronized talk 3005.
pub fn corpus() -> FixtureCorpus {
    let mut out = FixtureCorpus {
        pivot: TalkCollection::new(PIVOT),
        pivot_b: TalkCollection::new(PIVOT),
        a: TalkCollection::new(LANG_A),
        b: TalkCollection::new(LANG_B),
    };
    for t in [talk_1443(), talk_2357(), talk_desync()] {
        out.pivot_b.insert(t.pivot_b().clone()).expect("unique ids");
        out.pivot.insert(t.pivot).expect("unique ids");
        out.a.insert(t.a).expect("unique ids");
        out.b.insert(t.b).expect("unique ids");
    }
    out
}
