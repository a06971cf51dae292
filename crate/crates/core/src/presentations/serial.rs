//! Text formats for presentations.
//!
//! * JSON: `{"n": int, "generators": [...], "relators": [...]}` with an
//!   optional `"evaluation"` object (symbol to matrix text) written only for
//!   symbols that have no built-in matrix.
//! * plain: `gens: F(1); rels: F(1)^2`. The dimension is recovered from the
//!   largest generator index, so only standard-symbol presentations keep it.
//! * GAP: write-only `FreeGroup` script.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};
use crate::exactmat::{generator_matrix, GeneratorId, IntMatrix};
use crate::words::{parse_word, parse_word_at, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Plain,
    Gap,
}

#[derive(Serialize, Deserialize)]
struct JsonPresentation {
    n: usize,
    generators: Vec<String>,
    relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    evaluation: Option<BTreeMap<String, String>>,
}

pub fn serialize(p: &Presentation, format: Format) -> String {
    match format {
        Format::Json => to_json(p),
        Format::Plain => to_plain(p),
        Format::Gap => to_gap(p),
    }
}

pub fn parse(text: &str, format: Format) -> Result<Presentation> {
    match format {
        Format::Json => from_json(text),
        Format::Plain => from_plain(text),
        Format::Gap => Err(Error::Precondition("the GAP format is write-only".into())),
    }
}

fn to_json(p: &Presentation) -> String {
    let extra: BTreeMap<String, String> = p
        .evaluation
        .iter()
        .filter(|(g, _)| !g.is_standard())
        .map(|(g, m)| (g.to_string(), m.to_string()))
        .collect();
    let doc = JsonPresentation {
        n: p.n,
        generators: p.generators.iter().map(|g| g.to_string()).collect(),
        relators: p.relators.iter().map(|w| w.to_string()).collect(),
        evaluation: (!extra.is_empty()).then_some(extra),
    };
    serde_json::to_string_pretty(&doc).expect("presentation serializes")
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    start + column.saturating_sub(1)
}

fn parse_generator(s: &str, base: usize) -> Result<GeneratorId> {
    let w = parse_word_at(s, base)?;
    match w.letters() {
        [l] if l.exponent == 1 => Ok(l.symbol.clone()),
        _ => Err(Error::parse(base, format!("{s:?} is not a single generator"))),
    }
}

fn standard_evaluation(n: usize, gens: &[GeneratorId]) -> BTreeMap<GeneratorId, IntMatrix> {
    if n == 0 {
        return BTreeMap::new();
    }
    gens.iter()
        .filter_map(|g| generator_matrix(g, n).ok().map(|m| (g.clone(), m)))
        .collect()
}

fn check_declared(p: &Presentation) -> Result<()> {
    match p.undeclared_symbols().first() {
        None => Ok(()),
        Some(g) => Err(Error::parse(0, format!("relator uses undeclared generator {g}"))),
    }
}

fn from_json(text: &str) -> Result<Presentation> {
    let doc: JsonPresentation = serde_json::from_str(text)
        .map_err(|e| Error::parse(byte_offset(text, e.line(), e.column()), e.to_string()))?;
    let located = |what: &str, k: usize, err: Error| match err {
        Error::Parse { position, message } => Error::Parse {
            position,
            message: format!("{what} {}: {message}", k + 1),
        },
        other => other,
    };
    let generators = doc
        .generators
        .iter()
        .enumerate()
        .map(|(k, s)| parse_generator(s, 0).map_err(|e| located("generator", k, e)))
        .collect::<Result<Vec<_>>>()?;
    let relators = doc
        .relators
        .iter()
        .enumerate()
        .map(|(k, s)| parse_word(s).map_err(|e| located("relator", k, e)))
        .collect::<Result<Vec<_>>>()?;
    let mut evaluation = standard_evaluation(doc.n, &generators);
    for (k, (sym, mat)) in doc.evaluation.unwrap_or_default().into_iter().enumerate() {
        let g = parse_generator(&sym, 0).map_err(|e| located("evaluation key", k, e))?;
        let m: IntMatrix = mat.parse().map_err(|e| located("evaluation matrix", k, e))?;
        if m.dim() != doc.n {
            return Err(Error::DimensionMismatch(format!(
                "evaluation of {g} has dimension {}, expected {}",
                m.dim(),
                doc.n
            )));
        }
        evaluation.insert(g, m);
    }
    let p = Presentation::new(doc.n, generators, relators).with_evaluation(evaluation);
    check_declared(&p)?;
    Ok(p)
}

fn to_plain(p: &Presentation) -> String {
    let gens: Vec<String> = p.generators.iter().map(|g| g.to_string()).collect();
    let rels: Vec<String> = p.relators.iter().map(|w| w.to_string()).collect();
    format!("gens: {}; rels: {}", gens.join(", "), rels.join(", "))
}

/// Split on `sep` outside parentheses, keeping byte offsets.
fn split_top(text: &str, sep: u8) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, b) in text.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if b == sep && depth == 0 => {
                out.push((start, &text[start..k]));
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn section<'a>(text: &'a str, offset: usize, key: &str) -> Result<(usize, &'a str)> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    match trimmed.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
        Some(rest) => Ok((offset + lead + key.len() + 1, rest)),
        None => Err(Error::parse(offset + lead, format!("expected \"{key}:\""))),
    }
}

fn max_index(g: &GeneratorId) -> usize {
    match *g {
        GeneratorId::E(i, j) | GeneratorId::T(i, j) => i.max(j),
        GeneratorId::F(i) => i,
        GeneratorId::S(i) => i + 1,
        GeneratorId::Named(_) => 0,
    }
}

fn from_plain(text: &str) -> Result<Presentation> {
    let parts = split_top(text, b';');
    if parts.len() != 2 {
        return Err(Error::parse(
            parts.get(2).map_or(text.len(), |p| p.0),
            "expected \"gens: ...; rels: ...\"",
        ));
    }
    let (gpos, gtext) = section(parts[0].1, parts[0].0, "gens")?;
    let (rpos, rtext) = section(parts[1].1, parts[1].0, "rels")?;
    let items = |body: &str, base: usize| -> Vec<(usize, String)> {
        if body.trim().is_empty() {
            return Vec::new();
        }
        split_top(body, b',')
            .into_iter()
            .map(|(k, s)| (base + k, s.to_string()))
            .collect()
    };
    let generators = items(gtext, gpos)
        .into_iter()
        .map(|(at, s)| parse_generator(&s, at))
        .collect::<Result<Vec<_>>>()?;
    let relators = items(rtext, rpos)
        .into_iter()
        .map(|(at, s)| parse_word_at(&s, at))
        .collect::<Result<Vec<Word>>>()?;
    let n = generators.iter().map(max_index).max().unwrap_or(0);
    let evaluation = standard_evaluation(n, &generators);
    let p = Presentation::new(n, generators, relators).with_evaluation(evaluation);
    check_declared(&p)?;
    Ok(p)
}

fn to_gap(p: &Presentation) -> String {
    let index: BTreeMap<&GeneratorId, usize> =
        p.generators.iter().enumerate().map(|(k, g)| (g, k + 1)).collect();
    let names: Vec<String> = p.generators.iter().map(|g| format!("\"{g}\"")).collect();
    let mut out = String::new();
    writeln!(out, "F := FreeGroup({});", names.join(", ")).expect("string write");
    let rels: Vec<String> = p
        .relators
        .iter()
        .map(|w| {
            if w.is_empty() {
                return "One(F)".to_string();
            }
            w.letters()
                .iter()
                .map(|l| {
                    let k = index[&l.symbol];
                    if l.exponent == 1 {
                        format!("F.{k}")
                    } else {
                        format!("F.{k}^{}", l.exponent)
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect();
    writeln!(out, "rels := [{}];", rels.join(", ")).expect("string write");
    writeln!(out, "G := F / rels;").expect("string write");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{gamma2_presentation, gl2z_presentation};

    #[test]
    fn json_round_trip() {
        for p in [gamma2_presentation(1), gamma2_presentation(3), gl2z_presentation()] {
            let text = serialize(&p, Format::Json);
            assert_eq!(parse(&text, Format::Json).unwrap(), p);
        }
        let text = serialize(&gamma2_presentation(1), Format::Json);
        assert!(!text.contains("evaluation"));
        assert!(serialize(&gl2z_presentation(), Format::Json).contains("\"x\": \"1,-1;0,1\""));
    }

    #[test]
    fn plain_round_trip() {
        let p = gamma2_presentation(1);
        assert_eq!(serialize(&p, Format::Plain), "gens: F(1); rels: F(1)^2");
        for n in 1..=4 {
            let p = gamma2_presentation(n);
            assert_eq!(parse(&serialize(&p, Format::Plain), Format::Plain).unwrap(), p);
        }
    }

    #[test]
    fn malformed_inputs_report_positions() {
        assert!(matches!(parse("garbage", Format::Json), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse("garbage", Format::Plain), Err(Error::Parse { .. })));
        match parse("gens: F(1); rels: F(1)^", Format::Plain) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 23),
            other => panic!("{other:?}"),
        }
        assert!(parse("gens: F(1); rels: F(2)", Format::Plain).is_err());
        assert!(parse("{}", Format::Gap).is_err());
    }
}
