/// Caption text normalization: strips byte-order marks, trims, and collapses
/// every whitespace run (newlines and tabs included) to a single space.
pub fn normalize_caption_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for word in raw
        .split(|c: char| c.is_whitespace() || c == '\u{feff}')
        .filter(|w| !w.is_empty())
    {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}
