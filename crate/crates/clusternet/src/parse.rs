//! State expressions: `2 MnO4- + 6 H+ + 5 H2C2O4`.
//!
//! Species names may themselves contain `+` (ions do), so the separator is
//! the standalone `+` token delimited by whitespace. A term is an optional
//! count followed by a species name; a missing count means one. The single
//! token `0` denotes the empty state, which otherwise could not be written.

use crate::algebra::State;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    offset: usize,
}

fn tokenize(expr: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in expr.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &expr[s..i],
                    offset: s,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &expr[s..],
            offset: s,
        });
    }
    out
}

fn is_count(text: &str) -> bool {
    !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit())
}

/// Parse an expression into a state vector over the declared species.
/// Coefficients of repeated names accumulate. Errors carry the byte offset
/// of the offending token.
pub fn parse_state(expr: &str, species: &[String]) -> Result<State> {
    let tokens = tokenize(expr);
    if tokens.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty state expression".into(),
        });
    }
    if tokens.len() == 1 && tokens[0].text == "0" {
        return Ok(State::zeros(species.len()));
    }

    let mut entries = vec![0u64; species.len()];
    let mut it = tokens.iter().peekable();
    loop {
        // one term: optional count, then a species name
        let mut count: u64 = 1;
        let tok = match it.next() {
            Some(t) => *t,
            None => {
                return Err(Error::Syntax {
                    offset: expr.len(),
                    message: "expected a term after `+`".into(),
                })
            }
        };
        let name_tok = if is_count(tok.text) {
            count = tok.text.parse().map_err(|_| Error::Syntax {
                offset: tok.offset,
                message: "count does not fit in 64 bits".into(),
            })?;
            match it.next() {
                Some(t) => *t,
                None => {
                    return Err(Error::Syntax {
                        offset: tok.offset,
                        message: "count without a species name".into(),
                    })
                }
            }
        } else {
            tok
        };
        if name_tok.text == "+" {
            return Err(Error::Syntax {
                offset: name_tok.offset,
                message: "expected a species name, found `+`".into(),
            });
        }
        let idx = species
            .iter()
            .position(|s| s == name_tok.text)
            .ok_or_else(|| Error::UnknownSpecies {
                name: name_tok.text.to_string(),
                offset: name_tok.offset,
            })?;
        entries[idx] = entries[idx].checked_add(count).ok_or(Error::Overflow)?;

        match it.next() {
            None => break,
            Some(t) if t.text == "+" => continue,
            Some(t) => {
                return Err(Error::Syntax {
                    offset: t.offset,
                    message: format!("expected `+` between terms, found `{}`", t.text),
                })
            }
        }
    }
    Ok(State::new(entries))
}

/// Render a state in the expression grammar, terms in species order; the
/// empty state renders as `0`.
pub fn render_state(state: &State, species: &[String]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &count) in state.entries().iter().enumerate() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            terms.push(species[i].clone());
        } else {
            terms.push(format!("{} {}", count, species[i]));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Species-list sanity: nonempty, whitespace-free, unique, and not
/// colliding with the grammar (`+` separator, bare counts, the `0` state).
pub fn validate_species(species: &[String]) -> Result<()> {
    for (i, s) in species.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::InvalidModel(format!("species {i} has an empty name")));
        }
        if s.chars().any(char::is_whitespace) {
            return Err(Error::InvalidModel(format!(
                "species `{s}` contains whitespace"
            )));
        }
        if s == "+" || is_count(s) {
            return Err(Error::InvalidModel(format!(
                "species name `{s}` collides with the expression grammar"
            )));
        }
        if species[..i].contains(s) {
            return Err(Error::InvalidModel(format!("duplicate species `{s}`")));
        }
    }
    Ok(())
}
