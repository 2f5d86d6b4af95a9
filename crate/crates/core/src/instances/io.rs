//! Instance files.
//!
//! ```text
//! EMPTYQ1 <kind> <n> [d]
//! ```
//! followed by `n` lines: one digit per line for `map1d`/`trit1d`, or `n`
//! rows of `n` digits for `map2d`. Digits are ASCII `0`, `1`, `2`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instances::maps::{Map1D, Map2D, TritMap1D};

pub const MAGIC: &str = "EMPTYQ1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceMap {
    Map1D(Map1D),
    Trit1D(TritMap1D),
    Map2D(Map2D),
}

impl InstanceMap {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceMap::Map1D(_) => "map1d",
            InstanceMap::Trit1D(_) => "trit1d",
            InstanceMap::Map2D(_) => "map2d",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            InstanceMap::Map1D(m) => m.n(),
            InstanceMap::Trit1D(m) => m.n(),
            InstanceMap::Map2D(m) => m.n(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub map: InstanceMap,
    /// Optional algorithm parameter carried in the header (fixed width).
    pub d: Option<usize>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn digit(c: char, line: usize, max: u8) -> Result<u8> {
    match c.to_digit(10) {
        Some(v) if v as u8 <= max => Ok(v as u8),
        _ => Err(parse_err(line, format!("unexpected character {c:?}"))),
    }
}

pub fn parse(text: &str) -> Result<InstanceFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 3 || fields.len() > 4 || fields[0] != MAGIC {
        return Err(parse_err(1, format!("expected `{MAGIC} <kind> <n> [d]`, got {header:?}")));
    }
    let n: usize = fields[2].parse().map_err(|_| parse_err(1, format!("bad n {:?}", fields[2])))?;
    if n == 0 {
        return Err(parse_err(1, "n must be positive"));
    }
    let d = match fields.get(3) {
        Some(s) => Some(s.parse().map_err(|_| parse_err(1, format!("bad d {s:?}")))?),
        None => None,
    };
    let body: Vec<(usize, &str)> = lines.filter(|(_, l)| !l.trim().is_empty()).collect();
    if body.len() != n {
        return Err(parse_err(1, format!("expected {n} data lines, found {}", body.len())));
    }
    let one_digit = |max: u8| -> Result<Vec<u8>> {
        body.iter()
            .map(|&(ln, l)| {
                let l = l.trim();
                let mut cs = l.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => digit(c, ln, max),
                    _ => Err(parse_err(ln, format!("expected one digit, got {l:?}"))),
                }
            })
            .collect()
    };
    let map = match fields[1] {
        "map1d" => InstanceMap::Map1D(Map1D::from_bits(&one_digit(1)?)?),
        "trit1d" => InstanceMap::Trit1D(TritMap1D::from_trits(&one_digit(2)?)?),
        "map2d" => {
            let rows = body
                .iter()
                .map(|&(ln, l)| {
                    let row: Vec<u8> = l.trim().chars().map(|c| digit(c, ln, 1)).collect::<Result<_>>()?;
                    if row.len() != n {
                        return Err(parse_err(ln, format!("row has {} cells, expected {n}", row.len())));
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            InstanceMap::Map2D(Map2D::from_rows(&rows)?)
        }
        other => return Err(parse_err(1, format!("unknown kind {other:?}"))),
    };
    Ok(InstanceFile { map, d })
}

pub fn render(inst: &InstanceFile) -> String {
    let mut out = String::new();
    let _ = write!(out, "{MAGIC} {} {}", inst.map.kind(), inst.map.n());
    if let Some(d) = inst.d {
        let _ = write!(out, " {d}");
    }
    out.push('\n');
    match &inst.map {
        InstanceMap::Map1D(m) => m.to_bits().iter().for_each(|b| {
            let _ = writeln!(out, "{b}");
        }),
        InstanceMap::Trit1D(m) => m.to_trits().iter().for_each(|t| {
            let _ = writeln!(out, "{t}");
        }),
        InstanceMap::Map2D(m) => m.to_rows().iter().for_each(|row| {
            row.iter().for_each(|c| out.push((b'0' + c) as char));
            out.push('\n');
        }),
    }
    out
}

pub fn read_file(path: &Path) -> Result<InstanceFile> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: &Path, inst: &InstanceFile) -> Result<()> {
    std::fs::write(path, render(inst))?;
    Ok(())
}
