//! Reference data transcribed into text files under `fixtures/`.
//!
//! The directory can be moved with `KRPOLY_FIXTURES`.

use std::path::PathBuf;

use crate::model::Model;
use crate::pbw_crystal::SignatureTemplate;
use crate::trail_oracle::{trail_array, TrailArray};
use crate::Error;

pub const ENV_VAR: &str = "KRPOLY_FIXTURES";

pub fn fixtures_dir() -> PathBuf {
    std::env::var_os(ENV_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")))
}

fn read(name: &str) -> Result<String, Error> {
    let path = fixtures_dir().join(name);
    std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn sigma_file(model: Model) -> &'static str {
    match model {
        Model::E6R1 => "sigma_e6_r1.txt",
        Model::E6R6 => "sigma_e6_r6.txt",
        Model::E7R7 => "sigma_e7_r7.txt",
    }
}

pub fn tprime_file(model: Model) -> Option<&'static str> {
    match model {
        Model::E6R1 => None,
        Model::E6R6 => Some("tprime_e6_r6.txt"),
        Model::E7R7 => Some("tprime_e7_r7.txt"),
    }
}

/// Lines `i | minus plus | minus plus | ...` with roots in stacked notation.
pub fn parse_sigma(model: Model, text: &str) -> Result<Vec<SignatureTemplate>, Error> {
    let data = model.data();
    let index = |s: &str| -> Result<usize, Error> {
        let beta = data.rs.parse_root(s)?;
        data.roots[..data.m]
            .iter()
            .position(|b| *b == beta)
            .ok_or_else(|| Error::Parse(format!("{s} is not a nilradical root")))
    };
    let mut out = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let mut fields = line.split('|');
        let i: usize = fields
            .next()
            .and_then(|f| f.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("line {line:?}")))?;
        let mut pairs = Vec::new();
        for f in fields {
            let mut roots = f.split_whitespace();
            match (roots.next(), roots.next(), roots.next()) {
                (Some(a), Some(b), None) => pairs.push((index(a)?, index(b)?)),
                _ => return Err(Error::Parse(format!("pair {f:?}"))),
            }
        }
        out.push(SignatureTemplate { i, pairs });
    }
    Ok(out)
}

pub fn load_sigma(model: Model) -> Result<Vec<SignatureTemplate>, Error> {
    parse_sigma(model, &read(sigma_file(model))?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TprimeFixture {
    /// letters the 0/1 strings are written over
    pub letters: Vec<usize>,
    /// `(label, strings)` per reference sub-case
    pub groups: Vec<(String, Vec<String>)>,
}

impl TprimeFixture {
    /// Arrays on the nilradical, after moving each string onto `word` (the
    /// tail of `j_0`). Adjacent commuting letters written in the other order
    /// have their two entries swapped.
    pub fn arrays(&self, word: &[usize]) -> Result<Vec<TrailArray>, Error> {
        let perm = align(&self.letters, word)?;
        let mut out = Vec::new();
        for (_, lines) in &self.groups {
            for s in lines {
                let bits: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
                if bits.len() != word.len() || bits.iter().any(|&b| b > 1) {
                    return Err(Error::Parse(format!("trail string {s:?}")));
                }
                let moved: Vec<u8> = perm.iter().map(|&p| bits[p]).collect();
                out.push(trail_array(&moved));
            }
        }
        Ok(out)
    }
}

// For each position of `word`, the position of `letters` it comes from.
fn align(letters: &[usize], word: &[usize]) -> Result<Vec<usize>, Error> {
    if letters.len() != word.len() {
        return Err(Error::Parse("display word has the wrong length".into()));
    }
    let mut perm: Vec<usize> = (0..word.len()).collect();
    let mut cur = letters.to_vec();
    let mut k = 0;
    while k < word.len() {
        if cur[k] == word[k] {
            k += 1;
        } else if k + 1 < word.len()
            && cur[k] == word[k + 1]
            && cur[k + 1] == word[k]
            && matches!((cur[k], cur[k + 1]), (2, 3) | (3, 2))
        {
            cur.swap(k, k + 1);
            perm.swap(k, k + 1);
            k += 2;
        } else {
            return Err(Error::Parse(format!(
                "display word differs from j_0 at {k}"
            )));
        }
    }
    Ok(perm)
}

pub fn parse_tprime(text: &str) -> Result<TprimeFixture, Error> {
    let mut letters = None;
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(w) = rest.strip_prefix("display letters:") {
                letters = Some(
                    w.trim()
                        .chars()
                        .map(|ch| ch.to_digit(10).map(|d| d as usize))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| Error::Parse("display letters".into()))?,
                );
            } else if rest.starts_with("sub-case") {
                groups.push((rest.to_string(), Vec::new()));
            }
            continue;
        }
        if groups.is_empty() {
            groups.push(("all".into(), Vec::new()));
        }
        groups.last_mut().unwrap().1.push(line.to_string());
    }
    let letters = letters.ok_or_else(|| Error::Parse("missing display letters".into()))?;
    Ok(TprimeFixture { letters, groups })
}

pub fn load_tprime(model: Model) -> Result<Option<TprimeFixture>, Error> {
    match tprime_file(model) {
        Some(name) => Ok(Some(parse_tprime(&read(name)?)?)),
        None => Ok(None),
    }
}
