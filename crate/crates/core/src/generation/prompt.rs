use crate::store::Problem;

use super::GenerationError;

/// Default instructions: solve in the corpus language, stdin/stdout I/O, one
/// code block in the reply. Not tuned against any particular model.
pub const DEFAULT_TEMPLATE: &str = "\
You are solving a competitive programming problem.
Write a complete program in {language} that reads from standard input and writes to standard output.
Reply with only the program inside a single fenced code block.

Problem statement:
{statement}

Sample tests:
{samples}
";

const PLACEHOLDERS: [&str; 3] = ["statement", "samples", "language"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Piece {
    Text(String),
    Slot(&'static str),
}

/// A prompt template with `{statement}`, `{samples}` and `{language}`
/// placeholders. `{{` and `}}` produce literal braces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate {
    source: String,
    pieces: Vec<Piece>,
}

impl Default for PromptTemplate {
    fn default() -> Self {
        Self::parse(DEFAULT_TEMPLATE).expect("default template is valid")
    }
}

impl PromptTemplate {
    pub fn parse(source: &str) -> Result<Self, GenerationError> {
        let mut pieces = Vec::new();
        let mut text = String::new();
        let mut chars = source.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            match c {
                '{' if chars.peek().map(|&(_, n)| n) == Some('{') => {
                    chars.next();
                    text.push('{');
                }
                '}' if chars.peek().map(|&(_, n)| n) == Some('}') => {
                    chars.next();
                    text.push('}');
                }
                '{' => {
                    let rest = &source[i + 1..];
                    let end = rest
                        .find('}')
                        .ok_or_else(|| GenerationError::Template(format!("unclosed '{{' at byte {i}")))?;
                    let name = &rest[..end];
                    let slot = PLACEHOLDERS
                        .iter()
                        .find(|p| **p == name)
                        .ok_or_else(|| GenerationError::Template(format!("unknown placeholder {{{name}}}")))?;
                    if !text.is_empty() {
                        pieces.push(Piece::Text(std::mem::take(&mut text)));
                    }
                    pieces.push(Piece::Slot(slot));
                    for _ in 0..=end {
                        chars.next();
                    }
                }
                '}' => return Err(GenerationError::Template(format!("unmatched '}}' at byte {i}"))),
                _ => text.push(c),
            }
        }
        if !text.is_empty() {
            pieces.push(Piece::Text(text));
        }
        Ok(Self { source: source.to_string(), pieces })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn render(&self, problem: &Problem) -> String {
        let mut out = String::new();
        for piece in &self.pieces {
            match piece {
                Piece::Text(t) => out.push_str(t),
                Piece::Slot("statement") => out.push_str(&problem.statement),
                Piece::Slot("samples") => out.push_str(&render_samples(problem)),
                Piece::Slot("language") => out.push_str(&problem.submission_language),
                Piece::Slot(other) => unreachable!("placeholder {other} validated at parse"),
            }
        }
        out
    }
}

fn trim_newline(s: &str) -> &str {
    s.strip_suffix("\r\n").or_else(|| s.strip_suffix('\n')).unwrap_or(s)
}

fn render_samples(problem: &Problem) -> String {
    if problem.samples.is_empty() {
        return "(none)".to_string();
    }
    problem
        .samples
        .iter()
        .map(|s| format!("Input:\n{}\nOutput:\n{}", trim_newline(&s.input), trim_newline(&s.expected_output)))
        .collect::<Vec<_>>()
        .join("\n\n")
}

pub fn build_prompt(problem: &Problem, template: &PromptTemplate) -> String {
    template.render(problem)
}
