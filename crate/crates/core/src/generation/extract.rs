//! Code extraction from raw model replies.
//!
//! Priority: the first fenced block whose label matches the language, then
//! the first fenced block of any label, then the whole reply verbatim. A
//! fence opens on a line starting with three backticks and closes at the next
//! line consisting of three backticks; an unclosed fence runs to the end.

#[derive(Debug, Clone, PartialEq, Eq)]
struct Fence<'a> {
    label: &'a str,
    body: String,
}

fn fences(text: &str) -> Vec<Fence<'_>> {
    let mut out = Vec::new();
    let mut lines = text.lines();
    while let Some(line) = lines.next() {
        let Some(label) = line.strip_prefix("```") else { continue };
        let mut body = Vec::new();
        for inner in lines.by_ref() {
            if inner.trim_end() == "```" {
                break;
            }
            body.push(inner.strip_suffix('\r').unwrap_or(inner));
        }
        out.push(Fence { label: label.trim(), body: body.join("\n") });
    }
    out
}

fn normalize_language(tag: &str) -> String {
    let first = tag.split_whitespace().next().unwrap_or("");
    let cleaned: String = first
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '#'))
        .flat_map(char::to_lowercase)
        .collect();
    match cleaned.as_str() {
        "py" | "python3" | "py3" => "python".to_string(),
        "c++" | "cc" | "cxx" | "c++17" | "c++20" => "cpp".to_string(),
        "js" | "node" => "javascript".to_string(),
        "rs" => "rust".to_string(),
        _ => cleaned,
    }
}

/// Labels match when their first whitespace-separated token agrees after
/// lowercasing, stripping punctuation, and folding common aliases
/// (`py`/`python3` → `python`, `c++` → `cpp`, ...). For `"Python 3"` the
/// normalized tag is `python`.
pub fn language_matches(label: &str, language_tag: &str) -> bool {
    let a = normalize_language(label);
    !a.is_empty() && a == normalize_language(language_tag)
}

pub fn extract_code(raw_response: &str, language_tag: &str) -> String {
    let blocks = fences(raw_response);
    if let Some(f) = blocks.iter().find(|f| language_matches(f.label, language_tag)) {
        return f.body.clone();
    }
    match blocks.into_iter().next() {
        Some(f) => f.body,
        None => raw_response.to_string(),
    }
}
