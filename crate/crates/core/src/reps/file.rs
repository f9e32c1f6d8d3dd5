use num_bigint::BigInt;

use super::{Convention, IntMatrix, MatrixRep, Permutation, PermutationRep};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// Contents of a representation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepFile {
    Permutation(PermutationRep),
    Matrix(MatrixRep),
}

impl RepFile {
    pub fn dim(&self) -> usize {
        match self {
            RepFile::Permutation(r) => r.degree,
            RepFile::Matrix(m) => m.dim(),
        }
    }
}

/// Parses a representation file for presentation `p`.
///
/// Each line is `name: (a b c)(d e)` in 1-based cycle notation or
/// `name: [row-major integers]`. Lines must not mix the two forms. An
/// optional `degree: k` line fixes the permutation degree; otherwise it is
/// the largest point mentioned. Optional `convention: transpose` marks
/// matrices stored transposed. `#` starts a comment. The result is verified
/// against `p`.
pub fn parse_rep_file(text: &str, p: &Presentation) -> Result<RepFile> {
    let mut degree: Option<usize> = None;
    let mut convention = Convention::AsGiven;
    let mut entries: Vec<Option<String>> = vec![None; p.generator_count()];
    for (ln0, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, body) = line
            .split_once(':')
            .ok_or_else(|| Error::RepParse(format!("line {}: expected `name: value`", ln0 + 1)))?;
        let (key, body) = (key.trim(), body.trim());
        match key {
            "degree" => {
                degree = Some(body.parse().map_err(|_| {
                    Error::RepParse(format!("line {}: bad degree {body:?}", ln0 + 1))
                })?)
            }
            "convention" => {
                convention = match body {
                    "as-given" => Convention::AsGiven,
                    "transpose" => Convention::Transpose,
                    _ => {
                        return Err(Error::RepParse(format!(
                            "line {}: unknown convention {body:?}",
                            ln0 + 1
                        )))
                    }
                }
            }
            name => {
                let g = p
                    .find(name)
                    .ok_or_else(|| Error::UnknownGenerator(format!("{name} (line {})", ln0 + 1)))?;
                if entries[g.0].replace(body.to_string()).is_some() {
                    return Err(Error::RepParse(format!("line {}: {name} assigned twice", ln0 + 1)));
                }
            }
        }
    }
    if let Some(i) = entries.iter().position(Option::is_none) {
        return Err(Error::RepParse(format!("no image for generator {}", p.names()[i])));
    }
    let entries: Vec<String> = entries.into_iter().map(Option::unwrap).collect();
    let matrices = entries.iter().filter(|e| e.starts_with('[')).count();
    if matrices == entries.len() && !entries.is_empty() {
        let mats = entries
            .iter()
            .map(|e| parse_matrix(e))
            .collect::<Result<Vec<_>>>()?;
        let dim = mats.first().map_or(0, IntMatrix::dim);
        let m = MatrixRep::new(dim, mats, convention)?;
        if !super::verify_matrix_rep(p, &m) {
            return Err(Error::Unverified);
        }
        return Ok(RepFile::Matrix(m));
    }
    if matrices != 0 {
        return Err(Error::RepParse("cannot mix cycle and matrix lines".into()));
    }
    // compact cycles like (253) list single-digit points
    let spaced = entries.iter().any(|e| e.contains(' ') || e.contains(','));
    let k = degree.unwrap_or_else(|| {
        entries
            .iter()
            .flat_map(|e| e.split(|c: char| !c.is_ascii_digit()))
            .filter_map(|d| {
                if spaced {
                    d.parse::<usize>().ok()
                } else {
                    d.chars().filter_map(|c| c.to_digit(10)).max().map(|x| x as usize)
                }
            })
            .max()
            .unwrap_or(1)
    });
    let images = entries
        .iter()
        .map(|e| Permutation::from_cycles(e, k))
        .collect::<Result<Vec<_>>>()?;
    let r = PermutationRep::checked(p, k, images);
    if !r.verified {
        return Err(Error::Unverified);
    }
    Ok(RepFile::Permutation(r))
}

fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    let values = body
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace() || c == '[' || c == ']')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|_| Error::RepParse(format!("bad matrix entry {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = (values.len() as f64).sqrt().round() as usize;
    if n * n != values.len() {
        return Err(Error::RepParse(format!("{} entries do not form a square matrix", values.len())));
    }
    let rows = values.chunks(n.max(1)).map(<[BigInt]>::to_vec).collect();
    IntMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn trefoil() -> Presentation {
        crate::fixtures::trefoil()
    }

    #[test]
    fn cycle_file() {
        let p = trefoil();
        let tr = crate::reps::CycleType::parse("transposition", 3).unwrap();
        let reps = crate::reps::search_permutation_reps(&p, 3, Some(&tr), 10);
        let r = reps.iter().find(|r| r.image_order() == 6).unwrap();
        let text: String = p
            .names()
            .iter()
            .zip(&r.images)
            .map(|(n, q)| format!("{n}: {q}\n"))
            .collect();
        assert_eq!(parse_rep_file(&text, &p).unwrap(), RepFile::Permutation(r.clone()));

        let broken = format!("degree: 3\n{}", text.replacen(&r.images[0].to_string(), "()", 1));
        assert!(matches!(parse_rep_file(&broken, &p), Err(Error::Unverified)));
        assert!(parse_rep_file("s1: (12)\ns2: (12)\n", &p).is_err());
        assert!(parse_rep_file("s1: (12)\ns2: (12)\ns3: (12)\nx9: ()\n", &p).is_err());
    }

    #[test]
    fn matrix_file() {
        let p = parse_presentation("generators: a b\nrel: a = b a b^-1\n").unwrap();
        let text = "a: [1 1; 0 1]\nb: [1 0 0 1]\n";
        match parse_rep_file(text, &p).unwrap() {
            RepFile::Matrix(m) => assert_eq!(m.dim(), 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_rep_file("a: [2 0; 0 1]\nb: [1 0; 0 1]\n", &p).is_err());
        assert!(parse_rep_file("a: [1 0; 0 1]\n", &p).is_err());
        assert!(parse_rep_file("a: (12)\nb: [1 0; 0 1]\n", &p).is_err());
    }
}
