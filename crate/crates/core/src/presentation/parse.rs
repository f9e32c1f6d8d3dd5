use super::{name_index, FreeWord, GeneratorId, Letter, Presentation};
use crate::error::{Error, Result};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the presentation-file format.
///
/// ```text
/// generators: s1 s2 s3
/// meridian: s1
/// xi: s1=1 s2=1 s3=1
/// rel: s1 = s3 s2 s3^-1
/// relator: s2^-1 s1 s3 s1^-1
/// ```
///
/// `rel: u = v` becomes the relator `u^-1 v`. Lines starting with `#` are
/// comments. Relators that reduce to the empty word are dropped.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_presentation_with_warnings(text).map(|(p, _)| p)
}

/// Like [`parse_presentation`], also returning normalization warnings
/// (unreduced or trivial relators).
pub fn parse_presentation_with_warnings(text: &str) -> Result<(Presentation, Vec<String>)> {
    let mut names: Option<Vec<String>> = None;
    let mut meridian_name: Option<(String, usize)> = None;
    let mut xi_spec: Vec<(String, i64, usize, usize)> = Vec::new();
    let mut raw: Vec<(Vec<Letter>, usize)> = Vec::new();
    let mut warnings = Vec::new();

    for (ln0, full_line) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = full_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(syntax(ln, col, "expected `key: value`"));
        };
        let key = line[..colon].trim();
        let body = &line[colon + 1..];
        let body_col = colon + 2;

        if names.is_none() && key != "generators" {
            return Err(syntax(ln, 1, "the first line must declare `generators:`"));
        }
        match key {
            "generators" => {
                if names.is_some() {
                    return Err(syntax(ln, 1, "duplicate `generators:` line"));
                }
                let mut list = Vec::new();
                for (col, tok) in tokens(body, body_col) {
                    if !valid_name(tok) {
                        return Err(syntax(ln, col, format!("invalid generator name {tok:?}")));
                    }
                    if list.iter().any(|n: &String| n == tok) {
                        return Err(syntax(ln, col, format!("duplicate generator {tok:?}")));
                    }
                    list.push(tok.to_string());
                }
                names = Some(list);
            }
            "meridian" => {
                let toks: Vec<_> = tokens(body, body_col).collect();
                if toks.len() != 1 {
                    return Err(syntax(ln, body_col, "expected exactly one meridian"));
                }
                meridian_name = Some((toks[0].1.to_string(), ln));
            }
            "xi" => {
                for (col, tok) in tokens(body, body_col) {
                    let Some((n, v)) = tok.split_once('=') else {
                        return Err(syntax(ln, col, "expected `name=value`"));
                    };
                    let v: i64 = v
                        .parse()
                        .map_err(|_| syntax(ln, col + n.len() + 1, "expected an integer"))?;
                    xi_spec.push((n.to_string(), v, ln, col));
                }
            }
            "rel" | "relator" => {
                let names = names.as_ref().unwrap();
                let index = name_index(names);
                let letters = if key == "rel" {
                    let Some(eq) = body.find('=') else {
                        return Err(syntax(ln, body_col, "`rel:` needs `lhs = rhs`"));
                    };
                    let lhs = parse_word(&body[..eq], body_col, ln, &index)?;
                    let rhs = parse_word(&body[eq + 1..], body_col + eq + 1, ln, &index)?;
                    lhs.iter()
                        .rev()
                        .map(|l| l.inverse())
                        .chain(rhs)
                        .collect()
                } else {
                    parse_word(body, body_col, ln, &index)?
                };
                raw.push((letters, ln));
            }
            other => {
                return Err(syntax(ln, 1, format!("unknown key {other:?}")));
            }
        }
    }

    let names = names.ok_or_else(|| syntax(1, 1, "missing `generators:` line"))?;
    let index = name_index(&names);
    let mut xi = vec![1i64; names.len()];
    for (n, v, ln, col) in xi_spec {
        let Some(&i) = index.get(n.as_str()) else {
            return Err(Error::UnknownGenerator(format!("{n} (line {ln}, column {col})")));
        };
        xi[i] = v;
    }
    let meridian = match meridian_name {
        None => None,
        Some((n, _)) => Some(GeneratorId(
            *index
                .get(n.as_str())
                .ok_or_else(|| Error::UnknownGenerator(n.clone()))?,
        )),
    };

    let mut relators = Vec::new();
    for (letters, ln) in raw {
        let reduced = FreeWord::new(letters.iter().copied());
        if reduced.is_empty() {
            warnings.push(format!("line {ln}: relator is trivial and was dropped"));
            continue;
        }
        if reduced.len() != letters.len() {
            warnings.push(format!("line {ln}: relator was freely reduced"));
        }
        relators.push(reduced);
    }
    let p = Presentation::new(names, relators, xi, meridian)?;
    Ok((p, warnings))
}

fn tokens(body: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((offset + s, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((offset + s, &body[s..]));
    }
    out.into_iter()
}

fn valid_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn parse_word(
    body: &str,
    offset: usize,
    ln: usize,
    index: &std::collections::HashMap<&str, usize>,
) -> Result<Vec<Letter>> {
    let mut letters = Vec::new();
    for (col, tok) in tokens(body, offset) {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            None => (tok, 1i64),
            Some((n, e)) => {
                let e: i64 = e
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| syntax(ln, col + n.len() + 1, "expected an integer exponent"))?;
                (n, e)
            }
        };
        if !valid_name(name) {
            return Err(syntax(ln, col, format!("invalid letter {tok:?}")));
        }
        let Some(&g) = index.get(name) else {
            return Err(Error::UnknownGenerator(format!("{name} (line {ln}, column {col})")));
        };
        let letter = if exp >= 0 { Letter::pos(g) } else { Letter::neg(g) };
        for _ in 0..exp.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_becomes_lhs_inverse_rhs() {
        let p = parse_presentation("generators: a b c\nrel: a = b c b^-1\n").unwrap();
        assert_eq!(p.relators()[0], FreeWord::from_pairs(&[(0, -1), (1, 1), (2, 1), (1, -1)]));
        assert!(p.has_unit_xi());
        assert_eq!(p.meridian(), None);
    }

    #[test]
    fn one_generator_no_relators() {
        let p = parse_presentation("generators: s1\n").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relator_count(), 0);
        assert_eq!(p.xi(), &[1]);
    }

    #[test]
    fn imbalance_is_an_error() {
        let err = parse_presentation("generators: s1 s2\nrelator: s1 s2\n").unwrap_err();
        assert!(matches!(err, Error::Imbalanced { sum: 2, .. }));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_presentation("generators: s1\nrelator s1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 1, .. }));
        let err = parse_presentation("generators: s1 s2\nrelator: s1 s2^x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 16, .. }), "{err}");
        let err = parse_presentation("generators: s1\nrelator: s1 s9^-1\n").unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(_)));
    }

    #[test]
    fn xi_and_warnings() {
        let text = "generators: a b\nxi: a=1 b=-1\nrelator: a b b^-1 b\nrelator: a a^-1\n";
        let (p, warnings) = parse_presentation_with_warnings(text).unwrap();
        assert_eq!(p.xi(), &[1, -1]);
        assert_eq!(p.relator_count(), 1);
        assert_eq!(warnings.len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let text = "generators: x y\nmeridian: y\nxi: x=2 y=2\nrel: x = y x y^-1\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}
