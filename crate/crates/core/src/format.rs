//! Text and JSON file formats for instances and solutions.
//!
//! Instance text files start with a header line:
//!
//! ```text
//! 3GSM n               then 3n rows of n² pair indices (women, men, dogs)
//! 3PSA N               then N rows of C(N-1, 2) pair indices
//! 3DM m                then one `w x y` line per edge, 1-based
//! 3SATB vars clauses B then one line of signed literals per clause
//! ```
//!
//! Pair indices are 0-based and follow the rank-row numbering of
//! [`GsmInstance`] and [`PsaInstance`]; rows list pairs from most to least
//! preferred. Blank lines and lines starting with `#` are skipped. A file
//! whose first non-blank character is `{` is read as JSON instead.
//!
//! Solution files use the headers `MARRIAGE n k`, `MATCHING N k` and
//! `3DM-MATCHING m k`, each followed by `k` lines of three 1-based indices.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{DmInstance, GsmInstance, PsaInstance};
use crate::reductions::SatBFormula;
use crate::solution::{Family, Submarriage, Submatching};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Gsm(GsmInstance),
    Psa(PsaInstance),
    Dm(DmInstance),
    Sat(SatBFormula),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Gsm(_) => "3GSM",
            Instance::Psa(_) => "3PSA",
            Instance::Dm(_) => "3DM",
            Instance::Sat(_) => "3SATB",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum InstanceDoc {
    #[serde(rename = "3GSM")]
    Gsm { n: usize, preferences: Vec<Vec<usize>> },
    #[serde(rename = "3PSA")]
    Psa { players: usize, preferences: Vec<Vec<usize>> },
    #[serde(rename = "3DM")]
    Dm { m: usize, edges: Vec<[usize; 3]> },
    #[serde(rename = "3SATB")]
    Sat { vars: usize, bound: usize, clauses: Vec<Vec<i64>> },
}

fn signed_clauses(f: &SatBFormula) -> Vec<Vec<i64>> {
    f.clauses().iter().map(|c| c.iter().map(|l| l.to_signed()).collect()).collect()
}

fn one_based(edges: &[[usize; 3]]) -> Vec<[usize; 3]> {
    edges.iter().map(|e| e.map(|v| v + 1)).collect()
}

fn zero_based(edges: Vec<[usize; 3]>, line: usize) -> Result<Vec<[usize; 3]>> {
    edges
        .into_iter()
        .map(|e| {
            if e.contains(&0) {
                Err(Error::Parse { line, msg: "indices are 1-based".into() })
            } else {
                Ok(e.map(|v| v - 1))
            }
        })
        .collect()
}

impl InstanceDoc {
    fn from_instance(inst: &Instance) -> Self {
        match inst {
            Instance::Gsm(g) => {
                InstanceDoc::Gsm { n: g.n(), preferences: g.preference_lists().into_iter().flatten().collect() }
            }
            Instance::Psa(p) => InstanceDoc::Psa { players: p.players(), preferences: p.preference_lists() },
            Instance::Dm(d) => InstanceDoc::Dm { m: d.m(), edges: one_based(d.edges()) },
            Instance::Sat(f) => InstanceDoc::Sat { vars: f.n_vars(), bound: f.bound(), clauses: signed_clauses(f) },
        }
    }

    fn into_instance(self) -> Result<Instance> {
        Ok(match self {
            InstanceDoc::Gsm { n, preferences } => Instance::Gsm(gsm_from_rows(n, preferences)?),
            InstanceDoc::Psa { players, preferences } => {
                Instance::Psa(PsaInstance::from_preference_lists(players, preferences)?)
            }
            InstanceDoc::Dm { m, edges } => Instance::Dm(DmInstance::new(m, zero_based(edges, 0)?)?),
            InstanceDoc::Sat { vars, bound, clauses } => Instance::Sat(SatBFormula::new(vars, clauses, bound)?),
        })
    }
}

fn gsm_from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<GsmInstance> {
    if rows.len() != 3 * n {
        return Err(Error::DimensionMismatch(format!("expected {} preference rows, got {}", 3 * n, rows.len())));
    }
    let mut it = rows.into_iter();
    let lists = [0, 1, 2].map(|_| it.by_ref().take(n).collect::<Vec<_>>());
    GsmInstance::from_preference_lists(n, lists)
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    match inst {
        Instance::Gsm(g) => {
            writeln!(out, "3GSM {}", g.n()).unwrap();
            for row in g.preference_lists().iter().flatten() {
                writeln!(out, "{}", join(row)).unwrap();
            }
        }
        Instance::Psa(p) => {
            writeln!(out, "3PSA {}", p.players()).unwrap();
            for row in p.preference_lists() {
                writeln!(out, "{}", join(row)).unwrap();
            }
        }
        Instance::Dm(d) => {
            writeln!(out, "3DM {}", d.m()).unwrap();
            for e in one_based(d.edges()) {
                writeln!(out, "{}", join(e)).unwrap();
            }
        }
        Instance::Sat(f) => {
            writeln!(out, "3SATB {} {} {}", f.n_vars(), f.clauses().len(), f.bound()).unwrap();
            for c in signed_clauses(f) {
                writeln!(out, "{}", join(c)).unwrap();
            }
        }
    }
    out
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDoc::from_instance(inst)).expect("instance documents serialize")
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad number {tok:?}") }))
        .collect()
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, String, Vec<usize>)> {
    let (line, text) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let mut toks = text.split_whitespace();
    let tag = toks.next().unwrap().to_string();
    let args = numbers(line, &toks.collect::<Vec<_>>().join(" "))?;
    Ok((line, tag, args))
}

fn expect_args(line: usize, tag: &str, args: &[usize], count: usize) -> Result<()> {
    if args.len() != count {
        return Err(Error::Parse { line, msg: format!("{tag} header takes {count} number(s)") });
    }
    Ok(())
}

fn take_rows<'a, T: std::str::FromStr>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    count: usize,
    last_line: usize,
) -> Result<Vec<(usize, Vec<T>)>> {
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, text) = lines.next().ok_or(Error::Parse {
            line: last_line,
            msg: format!("expected {count} rows, found {}", rows.len()),
        })?;
        rows.push((line, numbers(line, text)?));
    }
    Ok(rows)
}

fn no_trailing<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<()> {
    match lines.next() {
        Some((line, _)) => Err(Error::Parse { line, msg: "unexpected trailing content".into() }),
        None => Ok(()),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    if text.trim_start().starts_with('{') {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        return doc.into_instance();
    }
    let mut lines = content_lines(text);
    let (hline, tag, args) = header(&mut lines)?;
    let inst = match tag.as_str() {
        "3GSM" => {
            expect_args(hline, &tag, &args, 1)?;
            let n = args[0];
            let rows = take_rows::<usize>(&mut lines, 3 * n, hline)?;
            Instance::Gsm(gsm_from_rows(n, rows.into_iter().map(|(_, r)| r).collect())?)
        }
        "3PSA" => {
            expect_args(hline, &tag, &args, 1)?;
            let players = args[0];
            let rows = take_rows::<usize>(&mut lines, players, hline)?;
            Instance::Psa(PsaInstance::from_preference_lists(players, rows.into_iter().map(|(_, r)| r).collect())?)
        }
        "3DM" => {
            expect_args(hline, &tag, &args, 1)?;
            let mut edges = Vec::new();
            for (line, text) in lines.by_ref() {
                let e: Vec<usize> = numbers(line, text)?;
                let e: [usize; 3] =
                    e.try_into().map_err(|_| Error::Parse { line, msg: "an edge has three endpoints".into() })?;
                edges.extend(zero_based(vec![e], line)?);
            }
            Instance::Dm(DmInstance::new(args[0], edges)?)
        }
        "3SATB" => {
            expect_args(hline, &tag, &args, 3)?;
            let rows = take_rows::<i64>(&mut lines, args[1], hline)?;
            Instance::Sat(SatBFormula::new(args[0], rows.into_iter().map(|(_, r)| r).collect(), args[2])?)
        }
        other => return Err(Error::Parse { line: hline, msg: format!("unknown instance kind {other:?}") }),
    };
    no_trailing(lines)?;
    Ok(inst)
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Marriage(Submarriage),
    Matching(Submatching),
    /// A 3DM matching given by its edges, 0-based.
    Dm { m: usize, edges: Vec<[usize; 3]> },
}

pub fn write_solution(sol: &Solution) -> String {
    let (tag, size, triples): (&str, usize, Vec<[usize; 3]>) = match sol {
        Solution::Marriage(s) => ("MARRIAGE", s.n(), s.families().iter().map(Family::as_array).collect()),
        Solution::Matching(s) => ("MATCHING", s.players(), s.triples().to_vec()),
        Solution::Dm { m, edges } => ("3DM-MATCHING", *m, edges.clone()),
    };
    let mut out = format!("{tag} {size} {}\n", triples.len());
    for t in one_based(&triples) {
        writeln!(out, "{}", join(t)).unwrap();
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut lines = content_lines(text);
    let (hline, tag, args) = header(&mut lines)?;
    expect_args(hline, &tag, &args, 2)?;
    let rows = take_rows::<usize>(&mut lines, args[1], hline)?;
    no_trailing(lines)?;
    let mut triples = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let t: [usize; 3] = row.try_into().map_err(|_| Error::Parse { line, msg: "expected three indices".into() })?;
        triples.extend(zero_based(vec![t], line)?);
    }
    match tag.as_str() {
        "MARRIAGE" => {
            let n = args[0];
            for t in &triples {
                if let Some(&v) = t.iter().find(|&&v| v >= n) {
                    return Err(Error::IndexOutOfRange { index: v, limit: n });
                }
            }
            let families = triples.into_iter().map(|[a, b, d]| Family::new(a, b, d)).collect();
            Ok(Solution::Marriage(Submarriage::new(n, families)?))
        }
        "MATCHING" => Ok(Solution::Matching(Submatching::new(args[0], triples)?)),
        "3DM-MATCHING" => Ok(Solution::Dm { m: args[0], edges: triples }),
        other => Err(Error::Parse { line: hline, msg: format!("unknown solution kind {other:?}") }),
    }
}

pub fn read_solution(path: &Path) -> Result<Solution> {
    parse_solution(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_gadget2, gen_planted_dm, gen_random_psa};

    #[test]
    fn gsm_round_trip() {
        let g = Instance::Gsm(gen_gadget2());
        let text = write_instance(&g);
        assert!(text.starts_with("3GSM 2\n"));
        assert_eq!(parse_instance(&text).unwrap(), g);
        assert_eq!(parse_instance(&instance_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn psa_and_dm_round_trip() {
        let p = Instance::Psa(gen_random_psa(6, 3).unwrap());
        assert_eq!(parse_instance(&write_instance(&p)).unwrap(), p);
        let d = Instance::Dm(gen_planted_dm(3, 2, 1).0);
        assert_eq!(parse_instance(&write_instance(&d)).unwrap(), d);
        assert_eq!(parse_instance(&instance_to_json(&d)).unwrap(), d);
    }

    #[test]
    fn comments_and_errors() {
        let text = "# tiny\n3SATB 2 2 2\n1 -2\n\n-1\n";
        let Instance::Sat(f) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(write_instance(&Instance::Sat(f)), "3SATB 2 2 2\n1 -2\n-1\n");
        assert!(matches!(parse_instance("3GSM 1\n0\n0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_instance("3DM 2\n1 2 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_instance("4GSM 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_instance("3GSM 1\n0\n0\n0\n0\n"), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn solution_round_trip() {
        let sub = Submarriage::new(3, vec![Family::new(0, 2, 1), Family::new(2, 0, 0)]).unwrap();
        let text = write_solution(&Solution::Marriage(sub.clone()));
        assert_eq!(text, "MARRIAGE 3 2\n1 3 2\n3 1 1\n");
        assert_eq!(parse_solution(&text).unwrap(), Solution::Marriage(sub));
        let text = "MATCHING 6 1\n1 4 6\n";
        let Solution::Matching(m) = parse_solution(text).unwrap() else { panic!() };
        assert_eq!(m.triples(), &[[0, 3, 5]]);
        assert!(parse_solution("MARRIAGE 2 1\n1 3 1\n").is_err());
    }
}
