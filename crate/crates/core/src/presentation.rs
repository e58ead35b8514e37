//! Text format for power-commutator presentations.
//!
//! ```text
//! # name: d8
//! p 2
//! gens 3
//! pow g2 = g3^1
//! comm g2 g1 = g3^1
//! ```
//!
//! Omitted `pow` lines mean `g_i^p = 1`, omitted `comm` lines mean the pair
//! commutes. Comment lines of the form `# key: value` are kept as metadata.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{MipError, Result};
use crate::pcgroup::{PcGroup, RawWord};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentationFile {
    pub p: u64,
    pub gens: usize,
    /// Power words by 0-based generator; empty means trivial.
    pub powers: Vec<RawWord>,
    /// `(j, i, word)` for `[g_j, g_i]`, 0-based, `j > i`.
    pub comms: Vec<(usize, usize, RawWord)>,
    pub metadata: BTreeMap<String, String>,
}

impl PresentationFile {
    pub fn build(&self) -> Result<PcGroup> {
        PcGroup::from_relations(self.p, self.gens, &self.powers, &self.comms)
    }

    /// The relations of `g` in normal form.
    pub fn from_group(g: &PcGroup) -> Self {
        let m = g.n_gens();
        let raw = |w: &crate::GroupElement| -> RawWord {
            w.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| (k, e as i64))
                .collect()
        };
        let mut comms = Vec::new();
        for j in 0..m {
            for i in 0..j {
                let w = raw(g.comm_word(j, i));
                if !w.is_empty() {
                    comms.push((j, i, w));
                }
            }
        }
        PresentationFile {
            p: g.p(),
            gens: m,
            powers: (0..m).map(|i| raw(g.power_word(i))).collect(),
            comms,
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        let _ = writeln!(s, "p {}", self.p);
        let _ = writeln!(s, "gens {}", self.gens);
        for (i, w) in self.powers.iter().enumerate() {
            if !w.is_empty() {
                let _ = writeln!(s, "pow g{} = {}", i + 1, word_text(w));
            }
        }
        let mut comms = self.comms.clone();
        comms.sort_by_key(|&(j, i, _)| (j, i));
        for (j, i, w) in comms {
            if !w.is_empty() {
                let _ = writeln!(s, "comm g{} g{} = {}", j + 1, i + 1, word_text(&w));
            }
        }
        s
    }
}

fn word_text(w: &RawWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|(k, e)| format!("g{}^{}", k + 1, e))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn serialize_presentation(g: &PcGroup) -> String {
    PresentationFile::from_group(g).to_text()
}

pub fn parse_presentation(text: &str) -> Result<PcGroup> {
    parse_file(text)?.build()
}

pub fn parse_file(text: &str) -> Result<PresentationFile> {
    let mut p: Option<u64> = None;
    let mut gens: Option<usize> = None;
    let mut powers: BTreeMap<usize, (RawWord, usize)> = BTreeMap::new();
    let mut comms: BTreeMap<(usize, usize), (RawWord, usize)> = BTreeMap::new();
    let mut metadata = BTreeMap::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let trimmed = raw.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = c.split_once(':') {
                let k = k.trim();
                if !k.is_empty() && k.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
                    metadata.insert(k.to_string(), v.trim().to_string());
                }
            }
            continue;
        }
        let line = trimmed.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let kw = parts.next().unwrap_or_default();
        let need_gens =
            || gens.ok_or_else(|| MipError::parse(line_no, "`gens` must come before relations"));
        match kw {
            "p" => {
                let v = single_number(parts, line_no, "p")?;
                if p.replace(v).is_some() {
                    return Err(MipError::parse(line_no, "duplicate `p` line"));
                }
                if !crate::pcgroup::is_prime(v) {
                    return Err(MipError::parse(line_no, format!("{v} is not prime")));
                }
            }
            "gens" => {
                let v = single_number(parts, line_no, "gens")? as usize;
                if gens.replace(v).is_some() {
                    return Err(MipError::parse(line_no, "duplicate `gens` line"));
                }
                if v == 0 {
                    return Err(MipError::parse(
                        line_no,
                        "a presentation needs at least one generator",
                    ));
                }
            }
            "pow" => {
                let m = need_gens()?;
                let (lhs, rhs) = split_eq(line, line_no)?;
                let lhs: Vec<&str> = lhs.split_whitespace().skip(1).collect();
                let [gi] = lhs[..] else {
                    return Err(MipError::parse(line_no, "expected `pow g<i> = <word>`"));
                };
                let i = gen_index(gi, m, line_no)?;
                let w = parse_word(rhs, m, line_no)?;
                check_after(&w, i, line_no)?;
                if powers.insert(i, (w, line_no)).is_some() {
                    return Err(MipError::parse(
                        line_no,
                        format!("second `pow` line for g{}", i + 1),
                    ));
                }
            }
            "comm" => {
                let m = need_gens()?;
                let (lhs, rhs) = split_eq(line, line_no)?;
                let lhs: Vec<&str> = lhs.split_whitespace().skip(1).collect();
                let [gj, gi] = lhs[..] else {
                    return Err(MipError::parse(
                        line_no,
                        "expected `comm g<j> g<i> = <word>`",
                    ));
                };
                let j = gen_index(gj, m, line_no)?;
                let i = gen_index(gi, m, line_no)?;
                if j <= i {
                    return Err(MipError::parse(
                        line_no,
                        format!(
                            "non-weighted presentation: `comm g{} g{}` needs j > i",
                            j + 1,
                            i + 1
                        ),
                    ));
                }
                let w = parse_word(rhs, m, line_no)?;
                check_after(&w, j, line_no)?;
                if comms.insert((j, i), (w, line_no)).is_some() {
                    return Err(MipError::parse(
                        line_no,
                        format!("second `comm` line for g{} g{}", j + 1, i + 1),
                    ));
                }
            }
            other => {
                return Err(MipError::parse(
                    line_no,
                    format!("unknown keyword `{other}`"),
                ))
            }
        }
    }
    let last = text.lines().count().max(1);
    let p = p.ok_or_else(|| MipError::parse(last, "missing `p` line"))?;
    let gens = gens.ok_or_else(|| MipError::parse(last, "missing `gens` line"))?;
    let mut pw = vec![Vec::new(); gens];
    for (i, (w, _)) in powers {
        pw[i] = w;
    }
    Ok(PresentationFile {
        p,
        gens,
        powers: pw,
        comms: comms
            .into_iter()
            .map(|((j, i), (w, _))| (j, i, w))
            .collect(),
        metadata,
    })
}

fn single_number<'a>(
    mut parts: impl Iterator<Item = &'a str>,
    line: usize,
    kw: &str,
) -> Result<u64> {
    let v = parts
        .next()
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| MipError::parse(line, format!("expected `{kw} <number>`")))?;
    if parts.next().is_some() {
        return Err(MipError::parse(
            line,
            format!("trailing input after `{kw}`"),
        ));
    }
    Ok(v)
}

fn split_eq(line: &str, line_no: usize) -> Result<(&str, &str)> {
    line.split_once('=')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| MipError::parse(line_no, "missing `=`"))
}

fn gen_index(tok: &str, m: usize, line: usize) -> Result<usize> {
    let k = tok
        .strip_prefix('g')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| {
            MipError::parse(line, format!("expected a generator `g<k>`, found `{tok}`"))
        })?;
    if k == 0 || k > m {
        return Err(MipError::parse(
            line,
            format!("generator g{k} out of range 1..={m}"),
        ));
    }
    Ok(k - 1)
}

fn parse_word(s: &str, m: usize, line: usize) -> Result<RawWord> {
    if s == "1" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(MipError::parse(
            line,
            "empty word; write `1` for the identity",
        ));
    }
    s.split_whitespace()
        .map(|tok| {
            let (g, e) = match tok.split_once('^') {
                Some((g, e)) => {
                    let e = e
                        .parse::<i64>()
                        .map_err(|_| MipError::parse(line, format!("bad exponent in `{tok}`")))?;
                    (g, e)
                }
                None => (tok, 1),
            };
            Ok((gen_index(g, m, line)?, e))
        })
        .collect()
}

fn check_after(w: &RawWord, after: usize, line: usize) -> Result<()> {
    match w.iter().find(|&&(k, _)| k <= after) {
        Some(&(k, _)) => Err(MipError::parse(
            line,
            format!(
                "non-weighted presentation: relation of g{} mentions g{}",
                after + 1,
                k + 1
            ),
        )),
        None => Ok(()),
    }
}
