//! Signed Gauss codes and Reidemeister I/II reduction.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussEntry {
    /// Crossing label, starting at 1.
    pub label: usize,
    pub over: bool,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussCode {
    pub entries: Vec<GaussEntry>,
}

impl GaussCode {
    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn writhe(&self) -> i64 {
        self.entries.iter().filter(|e| e.over).map(|e| i64::from(e.sign)).sum()
    }

    /// Checks that every label occurs once over and once under with a single sign.
    pub fn validate(&self) -> Result<()> {
        let mut seen: Vec<(usize, bool, i8)> = Vec::new();
        for e in &self.entries {
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Domain(format!("crossing {} has sign {}", e.label, e.sign)));
            }
            if seen.iter().any(|&(l, o, _)| l == e.label && o == e.over) {
                return Err(Error::Domain(format!(
                    "crossing {} visited twice on the same strand",
                    e.label
                )));
            }
            if seen.iter().any(|&(l, _, s)| l == e.label && s != e.sign) {
                return Err(Error::Domain(format!("crossing {} has inconsistent signs", e.label)));
            }
            seen.push((e.label, e.over, e.sign));
        }
        for &(l, _, _) in &seen {
            if seen.iter().filter(|&&(m, _, _)| m == l).count() != 2 {
                return Err(Error::Domain(format!("crossing {l} is not visited exactly twice")));
            }
        }
        Ok(())
    }

    /// Reads `O1+ U2+ O3- ...`; whitespace or commas separate entries.
    pub fn parse(s: &str) -> Result<GaussCode> {
        let mut entries = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let bad = || Error::Domain(format!("malformed Gauss code entry {tok:?}"));
            let mut chars = tok.chars();
            let over = match chars.next() {
                Some('O' | 'o') => true,
                Some('U' | 'u') => false,
                _ => return Err(bad()),
            };
            let rest = chars.as_str();
            let (digits, sign) = match rest.chars().last() {
                Some('+') => (&rest[..rest.len() - 1], 1),
                Some('-') => (&rest[..rest.len() - 1], -1),
                _ => return Err(bad()),
            };
            let label: usize = digits.parse().map_err(|_| bad())?;
            if label == 0 {
                return Err(bad());
            }
            entries.push(GaussEntry { label, over, sign });
        }
        let code = GaussCode { entries };
        code.validate()?;
        Ok(code)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                format!(
                    "{}{}{}",
                    if e.over { 'O' } else { 'U' },
                    e.label,
                    if e.sign > 0 { '+' } else { '-' }
                )
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Gauss code of a diagram, read from vertex 0; labels are crossing index + 1.
pub fn gauss_code(d: &KnotDiagram) -> GaussCode {
    GaussCode {
        entries: d
            .visits()
            .into_iter()
            .map(|v| GaussEntry {
                label: v.crossing + 1,
                over: v.over,
                sign: d.crossings[v.crossing].sign,
            })
            .collect(),
    }
}

/// A single cancelling move found by [`reduce_gauss`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionMove {
    /// A kink: the crossing is visited twice in a row.
    R1 { label: usize },
    /// A bigon: two crossings of opposite sign, consecutive on an over arc and on an under arc.
    R2 { labels: (usize, usize) },
}

fn find_r1(e: &[GaussEntry]) -> Option<usize> {
    let m = e.len();
    (0..m).find(|&i| e[i].label == e[(i + 1) % m].label).map(|i| e[i].label)
}

fn find_r2(e: &[GaussEntry]) -> Option<(usize, usize)> {
    let m = e.len();
    if m < 4 {
        return None;
    }
    for i in 0..m {
        let (a, b) = (e[i], e[(i + 1) % m]);
        if !(a.over && b.over) || a.label == b.label || a.sign == b.sign {
            continue;
        }
        let pair = |x: &GaussEntry, y: &GaussEntry| {
            (x.label == a.label && y.label == b.label) || (x.label == b.label && y.label == a.label)
        };
        if (0..m).any(|j| !e[j].over && !e[(j + 1) % m].over && pair(&e[j], &e[(j + 1) % m])) {
            return Some((a.label, b.label));
        }
    }
    None
}

/// Repeatedly cancels R1 kinks and R2 bigons, returning the reduced code and the moves.
pub fn reduce_gauss_with_moves(code: &GaussCode) -> (GaussCode, Vec<ReductionMove>) {
    let mut entries = code.entries.clone();
    let mut moves = Vec::new();
    loop {
        if let Some(label) = find_r1(&entries) {
            entries.retain(|e| e.label != label);
            moves.push(ReductionMove::R1 { label });
        } else if let Some((a, b)) = find_r2(&entries) {
            entries.retain(|e| e.label != a && e.label != b);
            moves.push(ReductionMove::R2 { labels: (a, b) });
        } else {
            break;
        }
    }
    (GaussCode { entries }, moves)
}

pub fn reduce_gauss(code: &GaussCode) -> GaussCode {
    reduce_gauss_with_moves(code).0
}
