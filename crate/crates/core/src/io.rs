//! Text and JSON formats for arrays, Latin squares, MOLS catalogues and
//! parity reports.
//!
//! Text formats ignore blank lines and lines starting with `#`:
//!
//! ```text
//! OA k n base          LS n base          MOLSSET label n count base
//! <n² rows of k>       <n rows of n>      <count squares of n rows>
//! ```
//!
//! `base` is 0 or 1 and applies to symbols. Columns in JSON reports are
//! 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::oa::{mols_set_to_oa, mols_to_oa, OrthogonalArray};
use crate::order::{Bit, Order, OrderClass};
use crate::parity::{
    check_plausible, sigma_from_tau_unchecked, tau_from_sigma, tau_from_standard, PpStatus, SigmaMatrix, StandardSigma,
    TauVector,
};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next non-blank, non-comment line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((idx + 1, trimmed.split_whitespace().collect()));
        }
        None
    }

    fn expect_line(&mut self, what: &str, last: usize) -> Result<(usize, Vec<&'a str>)> {
        self.next_line().ok_or_else(|| parse_err(last + 1, format!("unexpected end of input, expected {what}")))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn number(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn base_of(tok: &str, line: usize) -> Result<usize> {
    match tok {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(parse_err(line, format!("base must be 0 or 1, found {tok:?}"))),
    }
}

fn symbols(toks: &[&str], width: usize, base: usize, n: usize, line: usize) -> Result<Vec<usize>> {
    if toks.len() != width {
        return Err(parse_err(line, format!("expected {width} entries, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| {
            let v = number(t, line)?;
            if v < base || v - base >= n {
                return Err(parse_err(line, format!("symbol {v} outside {base}..={}", n - 1 + base)));
            }
            Ok(v - base)
        })
        .collect()
}

fn header<'a>(toks: &[&'a str], line: usize, keyword: &str, fields: usize) -> Result<Vec<&'a str>> {
    if toks.first() != Some(&keyword) {
        return Err(parse_err(line, format!("expected header starting with {keyword}")));
    }
    if toks.len() != fields + 1 {
        return Err(parse_err(line, format!("{keyword} header takes {fields} fields, found {}", toks.len() - 1)));
    }
    Ok(toks[1..].to_vec())
}

fn read_square(lines: &mut Lines<'_>, n: usize, base: usize, last: usize) -> Result<(LatinSquare, usize)> {
    let mut rows = Vec::with_capacity(n);
    let mut at = last;
    for _ in 0..n {
        let (line, toks) = lines.expect_line("a square row", at)?;
        rows.push(symbols(&toks, n, base, n, line)?);
        at = line;
    }
    let sq = LatinSquare::from_rows(&rows).map_err(|e| parse_err(last + 1, e.to_string()))?;
    Ok((sq, at))
}

fn no_trailing(lines: &mut Lines<'_>) -> Result<()> {
    match lines.next_line() {
        Some((line, _)) => Err(parse_err(line, "unexpected trailing content")),
        None => Ok(()),
    }
}

pub fn parse_oa(text: &str) -> Result<OrthogonalArray> {
    let mut lines = Lines::new(text);
    let (hl, toks) = lines.expect_line("an OA header", 0)?;
    let h = header(&toks, hl, "OA", 3)?;
    let (k, n, base) = (number(h[0], hl)?, number(h[1], hl)?, base_of(h[2], hl)?);
    if n == 0 || n > 255 {
        return Err(parse_err(hl, format!("order {n} out of range 1..=255")));
    }
    let mut rows = Vec::with_capacity(n * n);
    let mut at = hl;
    for _ in 0..n * n {
        let (line, toks) = lines.expect_line("an array row", at)?;
        rows.push(symbols(&toks, k, base, n, line)?);
        at = line;
    }
    no_trailing(&mut lines)?;
    OrthogonalArray::new(k, n, &rows)
}

pub fn format_oa(a: &OrthogonalArray, base: usize) -> String {
    let mut out = format!("OA {} {} {}\n", a.k(), a.n(), base);
    for row in a.cells().chunks_exact(a.k()) {
        let line: Vec<String> = row.iter().map(|&v| (v as usize + base).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_latin(text: &str) -> Result<LatinSquare> {
    let mut lines = Lines::new(text);
    let (hl, toks) = lines.expect_line("an LS header", 0)?;
    let h = header(&toks, hl, "LS", 2)?;
    let (n, base) = (number(h[0], hl)?, base_of(h[1], hl)?);
    if n == 0 || n > 255 {
        return Err(parse_err(hl, format!("order {n} out of range 1..=255")));
    }
    let (sq, _) = read_square(&mut lines, n, base, hl)?;
    no_trailing(&mut lines)?;
    Ok(sq)
}

fn push_square(out: &mut String, sq: &LatinSquare, base: usize) {
    for row in sq.rows() {
        let line: Vec<String> = row.iter().map(|&v| (v + base).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn format_latin(sq: &LatinSquare, base: usize) -> String {
    let mut out = format!("LS {} {}\n", sq.order(), base);
    push_square(&mut out, sq, base);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub label: String,
    pub squares: Vec<LatinSquare>,
    pub note: String,
}

impl CatalogueEntry {
    pub fn order(&self) -> usize {
        self.squares.first().map_or(0, LatinSquare::order)
    }

    /// The array with row, column and one column per square.
    pub fn to_oa(&self) -> Result<OrthogonalArray> {
        mols_set_to_oa(&self.squares)
    }
}

/// Parses a catalogue of `MOLSSET` blocks. Squares in a block must be
/// pairwise orthogonal; the error names the first failing pair.
pub fn parse_catalogue(text: &str) -> Result<Vec<CatalogueEntry>> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some((hl, toks)) = lines.next_line() {
        let h = header(&toks, hl, "MOLSSET", 4)?;
        let label = h[0].to_string();
        let (n, count, base) = (number(h[1], hl)?, number(h[2], hl)?, base_of(h[3], hl)?);
        if n == 0 || n > 255 {
            return Err(parse_err(hl, format!("order {n} out of range 1..=255")));
        }
        let mut squares = Vec::with_capacity(count);
        let mut at = hl;
        for _ in 0..count {
            let (sq, last) = read_square(&mut lines, n, base, at)?;
            squares.push(sq);
            at = last;
        }
        for a in 0..squares.len() {
            for b in (a + 1)..squares.len() {
                if let Some(pair) = squares[a].orthogonality_defect(&squares[b]) {
                    return Err(Error::SquaresNotOrthogonal {
                        first: a + 1,
                        second: b + 1,
                        pair: (pair.0 + base, pair.1 + base),
                    });
                }
            }
        }
        out.push(CatalogueEntry { label, squares, note: format!("set {} read from line {hl}", h[0]) });
    }
    Ok(out)
}

pub fn format_catalogue(entries: &[CatalogueEntry], base: usize) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!("MOLSSET {} {} {} {}\n", e.label, e.order(), e.squares.len(), base));
        for sq in &e.squares {
            push_square(&mut out, sq, base);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OaJson {
    pub k: usize,
    pub n: usize,
    pub base: usize,
    pub rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinJson {
    pub n: usize,
    pub base: usize,
    pub cells: Vec<Vec<usize>>,
}

fn shift(rows: &[Vec<usize>], base: usize) -> Result<Vec<Vec<usize>>> {
    if base > 1 {
        return Err(Error::Dimension(format!("base must be 0 or 1, got {base}")));
    }
    rows.iter()
        .map(|r| r.iter().map(|&v| v.checked_sub(base).ok_or(Error::SymbolOutOfRange { symbol: v, n: 0 })).collect())
        .collect()
}

impl OaJson {
    pub fn from_oa(a: &OrthogonalArray) -> Self {
        OaJson { k: a.k(), n: a.n(), base: 0, rows: a.rows() }
    }

    pub fn to_oa(&self) -> Result<OrthogonalArray> {
        OrthogonalArray::new(self.k, self.n, &shift(&self.rows, self.base)?)
    }
}

impl LatinJson {
    pub fn from_square(sq: &LatinSquare) -> Self {
        LatinJson { n: sq.order(), base: 0, cells: sq.rows() }
    }

    pub fn to_square(&self) -> Result<LatinSquare> {
        if self.cells.len() != self.n {
            return Err(Error::Dimension(format!("expected {} rows, found {}", self.n, self.cells.len())));
        }
        LatinSquare::from_rows(&shift(&self.cells, self.base)?)
    }
}

/// Reads an array from any supported input: OA or LS text, a catalogue with
/// exactly one set, or the JSON mirrors. A Latin square becomes the
/// three-column array (row, column, symbol).
pub fn read_array(text: &str) -> Result<OrthogonalArray> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(trimmed)?;
        return if value.get("rows").is_some() {
            serde_json::from_value::<OaJson>(value)?.to_oa()
        } else {
            mols_to_oa(&[serde_json::from_value::<LatinJson>(value)?.to_square()?])
        };
    }
    let first = Lines::new(text).next_line();
    match first.as_ref().and_then(|(_, t)| t.first().copied()) {
        Some("OA") => parse_oa(text),
        Some("LS") => mols_to_oa(&[parse_latin(text)?]),
        Some("MOLSSET") => {
            let entries = parse_catalogue(text)?;
            match entries.as_slice() {
                [e] => e.to_oa(),
                _ => Err(Error::Precondition(format!("expected one MOLS set, found {}", entries.len()))),
            }
        }
        Some(other) => Err(parse_err(first.map_or(1, |f| f.0), format!("unknown header {other:?}"))),
        None => Err(parse_err(1, "empty input")),
    }
}

/// Machine-readable τ/σ summary. Columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub nmod4: u8,
    pub tau: Vec<[usize; 4]>,
    pub sigma_standard: Vec<[usize; 3]>,
    pub plausible: bool,
    pub pp_plausible: String,
}

impl ParityReport {
    pub fn new(t: &TauVector) -> Self {
        let check = check_plausible(t);
        let sigma = sigma_from_tau_unchecked(t);
        ParityReport {
            k: t.k(),
            n: t.order().exact(),
            nmod4: t.order().class().residue(),
            tau: t.components().map(|(c, i, j, b)| [c + 1, i + 1, j + 1, b as usize]).collect(),
            sigma_standard: sigma.entries().map(|(i, j, b)| [i + 1, j + 1, b as usize]).collect(),
            plausible: check.plausible,
            pp_plausible: check.pp_plausible.as_str().to_string(),
        }
    }

    pub fn pp_status(&self) -> PpStatus {
        match self.pp_plausible.as_str() {
            "yes" => PpStatus::Yes,
            "no" => PpStatus::No,
            _ => PpStatus::NotApplicable,
        }
    }
}

/// Unknown fields (report flags, seeds, construction names) are ignored so
/// that emitted reports read back.
#[derive(Debug, Deserialize)]
struct ParityInput {
    k: usize,
    n: Option<usize>,
    nmod4: Option<u8>,
    sigma: Option<Vec<Vec<Bit>>>,
    sigma_standard: Option<Vec<[usize; 3]>>,
    tau: Option<Vec<[usize; 4]>>,
}

fn column(v: usize, k: usize) -> Result<usize> {
    if v == 0 || v > k {
        return Err(Error::Dimension(format!("column {v} outside 1..={k}")));
    }
    Ok(v - 1)
}

fn bit(v: usize) -> Result<Bit> {
    match v {
        0 | 1 => Ok(v as Bit),
        _ => Err(Error::Dimension(format!("parity bit must be 0 or 1, got {v}"))),
    }
}

/// Reads a τ-parity from JSON holding `k`, `n` or `nmod4`, and one of
/// `tau` (`[c,i,j,bit]`), `sigma_standard` (`[i,j,bit]`) or `sigma`
/// (a k×k 0/1 matrix), tried in that order. Missing entries default to 0.
pub fn parse_parity_json(text: &str) -> Result<TauVector> {
    let input: ParityInput = serde_json::from_str(text)?;
    let k = input.k;
    if k < 3 {
        return Err(Error::Dimension(format!("k = {k} must be at least 3")));
    }
    let order = match (input.n, input.nmod4) {
        (Some(n), None) => Order::Exact(n),
        (Some(n), Some(r)) if n % 4 == r as usize => Order::Exact(n),
        (None, Some(r)) if r < 4 => Order::Class(OrderClass::from_residue(r as usize)?),
        _ => return Err(Error::Dimension("give n, or nmod4 in 0..4, consistently".into())),
    };
    if let Some(entries) = input.tau {
        let mut t = TauVector::zero(k, order);
        for [c, i, j, b] in entries {
            let (c, i, j) = (column(c, k)?, column(i, k)?, column(j, k)?);
            if c == i || c == j || i == j {
                return Err(Error::Dimension(format!(
                    "τ component ({}, {}, {}) needs distinct columns",
                    c + 1,
                    i + 1,
                    j + 1
                )));
            }
            t.set(c, i, j, bit(b)?);
        }
        return Ok(t);
    }
    if let Some(entries) = input.sigma_standard {
        let mut upper = vec![0; crate::order::pair_count(k)];
        for [i, j, b] in entries {
            let (i, j) = (column(i, k)?, column(j, k)?);
            if i >= j {
                return Err(Error::Dimension(format!("σ entry ({}, {}) must have i < j", i + 1, j + 1)));
            }
            upper[crate::order::pair_rank(k, i, j)] = bit(b)?;
        }
        return Ok(tau_from_standard(&StandardSigma::new(k, order, upper)?));
    }
    let rows =
        input.sigma.ok_or_else(|| Error::Precondition("one of tau, sigma_standard, sigma is required".into()))?;
    if rows.len() != k {
        return Err(Error::Dimension(format!("sigma has {} rows, expected {k}", rows.len())));
    }
    Ok(tau_from_sigma(&SigmaMatrix::from_rows(order, &rows)?))
}
