//! Line-oriented text format for reaction systems (`.acn`).
//!
//! ```text
//! # comment
//! food: f1 f2
//! stimulus: s
//! reaction R1: f1 + f2 -> d1 cat s, d2
//! reaction R2: d1 -> d2 cat f2
//! ```
//!
//! Derived elements are declared implicitly by appearing as a product.
//! A derived element produced by no reaction can be listed on an optional
//! `derived:` line. The `cat` clause is omitted for uncatalysed reactions.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::model::{
    is_identifier, validate_system, ElementId, ElementKind, ElementSet, Reaction, ReactionId,
    ReactionSystem, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// A parsed document together with where each declaration came from.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemDocument {
    pub lines: Vec<String>,
    pub system: ReactionSystem,
    /// 1-based line of each element's first declaration.
    pub element_lines: BTreeMap<ElementId, usize>,
    pub reaction_lines: BTreeMap<ReactionId, usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Food,
    Stimulus,
    Derived,
}

struct Decl {
    line: usize,
    section: Section,
}

struct RawReaction {
    line: usize,
    reaction: Reaction,
    /// Column of every element mention, for diagnostics.
    columns: Vec<(ElementId, usize)>,
}

/// Splits `s` (starting at byte `offset` of the line) on `sep`, returning
/// trimmed tokens with their 1-based columns.
fn tokens(s: &str, offset: usize, sep: char) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in s.split(sep) {
        let trimmed = piece.trim();
        let lead = piece.len() - piece.trim_start().len();
        out.push((trimmed.to_owned(), offset + start + lead + 1));
        start += piece.len() + sep.len_utf8();
    }
    out
}

fn ident(tok: &str, line: usize, column: usize, what: &str) -> Result<(), ParseError> {
    if tok.is_empty() {
        return Err(ParseError::new(line, column, format!("missing {what}")));
    }
    if !is_identifier(tok) {
        return Err(ParseError::new(line, column, format!("invalid {what} {tok:?}")));
    }
    Ok(())
}

fn id_list(
    s: &str,
    offset: usize,
    sep: char,
    line: usize,
    what: &str,
) -> Result<Vec<(String, usize)>, ParseError> {
    let toks = tokens(s, offset, sep);
    for (t, c) in &toks {
        ident(t, line, *c, what)?;
    }
    Ok(toks)
}

fn parse_reaction(body: &str, offset: usize, line: usize) -> Result<RawReaction, ParseError> {
    let colon = body
        .find(':')
        .ok_or_else(|| ParseError::new(line, offset + 1, "expected ':' after reaction id"))?;
    let id = body[..colon].trim();
    let id_col = offset + body[..colon].len() - body[..colon].trim_start().len() + 1;
    ident(id, line, id_col, "reaction id")?;

    let rest_off = offset + colon + 1;
    let rest = &body[colon + 1..];
    let arrow = rest
        .find("->")
        .ok_or_else(|| ParseError::new(line, rest_off + 1, "expected '->'"))?;
    let lhs = &rest[..arrow];
    let after = &rest[arrow + 2..];
    let after_off = rest_off + arrow + 2;

    // ` cat ` separates products from catalysts
    let (rhs, cat) = match find_keyword(after, "cat") {
        Some(at) => (&after[..at], Some((&after[at + 3..], after_off + at + 3))),
        None => (after, None),
    };

    let mut columns = Vec::new();
    let mut collect = |toks: Vec<(String, usize)>| -> ElementSet {
        toks.into_iter()
            .map(|(t, c)| {
                let id = ElementId::new(t);
                columns.push((id.clone(), c));
                id
            })
            .collect()
    };
    let reactants = collect(id_list(lhs, rest_off, '+', line, "reactant")?);
    let products = collect(id_list(rhs, after_off, '+', line, "product")?);
    let catalysts = match cat {
        Some((c, off)) => collect(id_list(c, off, ',', line, "catalyst")?),
        None => ElementSet::new(),
    };

    Ok(RawReaction {
        line,
        reaction: Reaction { id: ReactionId::new(id), reactants, products, catalysts },
        columns,
    })
}

/// Byte offset of `kw` as a standalone word in `s`.
fn find_keyword(s: &str, kw: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let is_word = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    s.match_indices(kw).map(|(i, _)| i).find(|&i| {
        let before = i == 0 || !is_word(bytes[i - 1]);
        let end = i + kw.len();
        let after = end == bytes.len() || !is_word(bytes[end]);
        before && after
    })
}

/// Parses a document, reporting the first problem with its position.
pub fn parse_document(text: &str) -> Result<SystemDocument, ParseError> {
    let lines: Vec<String> = text.lines().map(str::to_owned).collect();
    let mut decls: BTreeMap<ElementId, Decl> = BTreeMap::new();
    let mut raw: Vec<RawReaction> = Vec::new();
    let mut food_line: Option<usize> = None;

    for (i, full) in lines.iter().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("");
        let lead = content.len() - content.trim_start().len();
        let content = content.trim_end();
        let body = &content[lead..];
        if body.is_empty() {
            continue;
        }

        let header = |kw: &str| {
            body.strip_prefix(kw)
                .and_then(|r| r.trim_start().strip_prefix(':'))
                .map(|r| (r, lead + body.len() - r.len()))
        };

        let section = if let Some(hit) = header("food") {
            Some((Section::Food, hit))
        } else if let Some(hit) = header("stimulus") {
            Some((Section::Stimulus, hit))
        } else if let Some(hit) = header("derived") {
            Some((Section::Derived, hit))
        } else {
            None
        };

        if let Some((section, (list, off))) = section {
            if section == Section::Food {
                food_line.get_or_insert(line);
            }
            for tok in list.split_whitespace() {
                let col = off + (tok.as_ptr() as usize - list.as_ptr() as usize) + 1;
                ident(tok, line, col, "element id")?;
                let id = ElementId::from(tok);
                if let Some(prev) = decls.get(&id) {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("duplicate element {id} (first declared on line {})", prev.line),
                    ));
                }
                decls.insert(id, Decl { line, section });
            }
            continue;
        }

        if let Some(rest) = body.strip_prefix("reaction") {
            if rest.starts_with(char::is_whitespace) {
                let off = lead + "reaction".len();
                let r = parse_reaction(rest, off, line)?;
                if let Some(prev) = raw.iter().find(|p| p.reaction.id == r.reaction.id) {
                    return Err(ParseError::new(
                        line,
                        lead + 1,
                        format!(
                            "duplicate reaction {} (first declared on line {})",
                            r.reaction.id, prev.line
                        ),
                    ));
                }
                raw.push(r);
                continue;
            }
        }

        return Err(ParseError::new(
            line,
            lead + 1,
            "expected 'food:', 'stimulus:', 'derived:' or 'reaction <id>:'",
        ));
    }

    let mut system = ReactionSystem::new();
    let mut element_lines = BTreeMap::new();
    for (id, d) in &decls {
        let kind = match d.section {
            Section::Food => ElementKind::Food,
            Section::Stimulus => ElementKind::Stimulus,
            Section::Derived => ElementKind::Derived,
        };
        system.elements.insert(id.clone(), kind);
        element_lines.insert(id.clone(), d.line);
    }
    for r in &raw {
        for p in &r.reaction.products {
            if !system.elements.contains_key(p) {
                system.elements.insert(p.clone(), ElementKind::Derived);
                element_lines.insert(p.clone(), r.line);
            }
        }
    }
    for r in &raw {
        if let Some((id, col)) = r.columns.iter().find(|(id, _)| !system.elements.contains_key(id)) {
            return Err(ParseError::new(
                r.line,
                *col,
                format!("reaction {} references undeclared element {id}", r.reaction.id),
            ));
        }
    }

    let mut reaction_lines = BTreeMap::new();
    for r in raw {
        reaction_lines.insert(r.reaction.id.clone(), r.line);
        system.reactions.push(r.reaction);
    }

    if let Some(v) = validate_system(&system).into_iter().next() {
        let line = match (&v, v.reaction()) {
            (_, Some(rid)) => reaction_lines[rid],
            (Violation::MalformedElementId { element }, _) => element_lines[element],
            _ => food_line.unwrap_or(1),
        };
        return Err(ParseError::new(line, 1, v.to_string()));
    }

    Ok(SystemDocument { lines, system, element_lines, reaction_lines })
}

pub fn parse_system(text: &str) -> Result<ReactionSystem, ParseError> {
    parse_document(text).map(|d| d.system)
}

fn join<'a, T: fmt::Display + 'a>(items: impl IntoIterator<Item = &'a T>, sep: &str) -> String {
    let mut out = String::new();
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        let _ = write!(out, "{item}");
    }
    out
}

/// Canonical text: `food:` line, `stimulus:` line (if any), `derived:` line
/// for unproduced derived elements (if any), then reactions sorted by id.
pub fn serialize_system(system: &ReactionSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "food: {}", join(&system.foodset(), " "));
    let stimuli = system.stimuli();
    if !stimuli.is_empty() {
        let _ = writeln!(out, "stimulus: {}", join(&stimuli, " "));
    }
    let orphans: ElementSet = system
        .derived()
        .into_iter()
        .filter(|d| !system.reactions.iter().any(|r| r.products.contains(d)))
        .collect();
    if !orphans.is_empty() {
        let _ = writeln!(out, "derived: {}", join(&orphans, " "));
    }
    let mut reactions: Vec<&Reaction> = system.reactions.iter().collect();
    reactions.sort_by(|a, b| a.id.cmp(&b.id));
    for r in reactions {
        let _ = write!(
            out,
            "reaction {}: {} -> {}",
            r.id,
            join(&r.reactants, " + "),
            join(&r.products, " + ")
        );
        if !r.catalysts.is_empty() {
            let _ = write!(out, " cat {}", join(&r.catalysts, ", "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{figure_system, Stage};

    const STAGE_D: &str = "\
# reference scenario, stage D
food: f1 f2
stimulus: s

reaction R1: f1 + f2 -> d1 cat s, d2
reaction R2: d1 -> d2 cat f2   # f2 triggers
reaction R3: d1 + d2 -> d3 cat f1
";

    #[test]
    fn parses_stage_d() {
        let doc = parse_document(STAGE_D).unwrap();
        assert_eq!(doc.system, figure_system(Stage::D));
        assert_eq!(doc.reaction_lines[&ReactionId::from("R2")], 6);
        assert_eq!(doc.element_lines[&ElementId::from("s")], 3);
        assert_eq!(doc.element_lines[&ElementId::from("d3")], 7);
    }

    #[test]
    fn empty_foodset() {
        let err = parse_system("food:\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.message, "empty foodset");
        let err = parse_system("stimulus: s\n").unwrap_err();
        assert_eq!(err.message, "empty foodset");
    }

    #[test]
    fn undeclared_element() {
        let err = parse_system("food: a\n\nreaction R: a + q7 -> b cat a\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.column, 17);
        assert!(err.message.contains("q7"), "{err}");
    }

    #[test]
    fn syntax_errors() {
        let e = parse_system("food: a\nreaction R a -> b cat a\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (2, "expected ':' after reaction id"));
        let e = parse_system("food: a\nreaction R: a b cat a\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (2, "expected '->'"));
        let e = parse_system("food: a\nreaction R: a -> cat a\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (2, "missing product"));
        let e = parse_system("food: a 9x\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        let e = parse_system("food: a\nreact R: a -> b\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_system("food: a\nreaction R: a -> b cat\n").unwrap_err();
        assert_eq!(e.message, "missing catalyst");
    }

    #[test]
    fn duplicates() {
        let e = parse_system("food: a\nstimulus: a\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("duplicate element a"));
        let e = parse_system("food: a\nreaction R: a -> b\nreaction R: a -> c\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate reaction R"));
    }

    #[test]
    fn validation_errors_carry_the_reaction_line() {
        let e = parse_system("food: a\nstimulus: s\nreaction R: a + s -> b cat a\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("stimulus s"));
        let e = parse_system("food: a b\nreaction R: a -> b cat a\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("expected DERIVED"));
    }

    #[test]
    fn serializes_stage_a() {
        assert_eq!(
            serialize_system(&figure_system(Stage::A)),
            "food: f1 f2\nstimulus: s\nreaction R1: f1 + f2 -> d1 cat s\n"
        );
    }

    #[test]
    fn canonical_order_and_optional_clauses() {
        let mut d = figure_system(Stage::D);
        d.reactions.reverse();
        assert_eq!(serialize_system(&d), serialize_system(&figure_system(Stage::D)));

        let sys = ReactionSystem::new()
            .with_elements(ElementKind::Food, ["a"])
            .with_elements(ElementKind::Derived, ["b", "lonely"])
            .with_reaction(Reaction::new("R", ["a"], ["b"], []));
        let text = serialize_system(&sys);
        assert_eq!(text, "food: a\nderived: lonely\nreaction R: a -> b\n");
        assert_eq!(parse_system(&text).unwrap(), sys);
    }

    #[test]
    fn round_trip_fixtures() {
        for stage in Stage::ALL {
            let sys = figure_system(stage);
            let text = serialize_system(&sys);
            let back = parse_system(&text).unwrap();
            assert!(back.same_structure(&sys));
            assert_eq!(serialize_system(&back), text);
        }
    }

    #[test]
    fn keyword_detection_is_word_based() {
        assert_eq!(find_keyword(" cats -> d cat x", "cat"), Some(11));
        let sys = parse_system("food: cats\nreaction R: cats -> dcat cat cats\n").unwrap();
        assert_eq!(sys.reactions[0].catalysts.len(), 1);
    }
}
