//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! dims 3 4
//! cost 1 1 = [4,8] fixed [10,30]
//! supply 1 = [30,33]
//! demand 1 = [20,21]
//! ```
//!
//! Indices are 1-based. `t i j = [lo,hi]` and `l i j = [lo,hi]` may be used
//! instead of a combined `cost` line. `dims` must come first.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::interval::Interval;
use crate::model::{IfctpInstance, InstanceDraft, InvalidInstance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("malformed interval `{0}`")]
    MalformedInterval(String),
    #[error("interval lo > hi")]
    IntervalOrder,
    #[error("index {index} out of range 1..={max} for {field}")]
    IndexOutOfRange {
        field: &'static str,
        index: usize,
        max: usize,
    },
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("expected {expected} {field} entries, found {found}")]
    Count {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Invalid(#[from] InvalidInstance),
}

/// Parse failure, with the 1-based line number when it is tied to a line.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

type Pair = (f64, f64);

fn parse_interval(text: &str) -> Result<Pair, ParseErrorKind> {
    let malformed = || ParseErrorKind::MalformedInterval(text.trim().to_string());
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(malformed)?;
    let (lo, hi) = inner.split_once(',').ok_or_else(malformed)?;
    let lo: f64 = lo.trim().parse().map_err(|_| malformed())?;
    let hi: f64 = hi.trim().parse().map_err(|_| malformed())?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(malformed());
    }
    if lo > hi {
        return Err(ParseErrorKind::IntervalOrder);
    }
    Ok((lo, hi))
}

fn parse_index(token: Option<&str>, field: &'static str, max: usize) -> Result<usize, ParseErrorKind> {
    let token = token.ok_or_else(|| ParseErrorKind::Syntax(format!("missing {field} index")))?;
    let index: usize = token
        .parse()
        .map_err(|_| ParseErrorKind::Syntax(format!("bad {field} index `{token}`")))?;
    if index == 0 || index > max {
        return Err(ParseErrorKind::IndexOutOfRange { field, index, max });
    }
    Ok(index - 1)
}

struct Grid {
    cells: Vec<Vec<Option<Pair>>>,
}

impl Grid {
    fn new(m: usize, n: usize) -> Self {
        Self {
            cells: vec![vec![None; n]; m],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: Pair, what: &str) -> Result<(), ParseErrorKind> {
        let slot = &mut self.cells[i][j];
        if slot.is_some() {
            return Err(ParseErrorKind::Duplicate(format!("{what} entry ({},{})", i + 1, j + 1)));
        }
        *slot = Some(v);
        Ok(())
    }

    fn filled(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_some()).count()
    }

    fn finish(self) -> Vec<Vec<Pair>> {
        self.cells
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.unwrap_or_default()).collect())
            .collect()
    }
}

fn set_slot(slots: &mut [Option<Pair>], k: usize, v: Pair, what: &str) -> Result<(), ParseErrorKind> {
    if slots[k].is_some() {
        return Err(ParseErrorKind::Duplicate(format!("{what} entry {}", k + 1)));
    }
    slots[k] = Some(v);
    Ok(())
}

/// Parses `[lo,hi]` as written in problem files.
impl std::str::FromStr for Interval {
    type Err = ParseErrorKind;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = parse_interval(text)?;
        Ok(Interval::new(lo, hi).expect("checked by parse_interval"))
    }
}

/// Parses and validates a problem file.
pub fn parse_instance(text: &str) -> Result<IfctpInstance, ParseError> {
    let mut dims: Option<(usize, usize)> = None;
    let mut unit = Grid::new(0, 0);
    let mut fixed = Grid::new(0, 0);
    let mut supply: Vec<Option<Pair>> = Vec::new();
    let mut demand: Vec<Option<Pair>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let at = |kind: ParseErrorKind| ParseError {
            line: Some(lineno + 1),
            kind,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let keyword = line.split_whitespace().next().unwrap_or_default();
        if keyword == "dims" {
            if dims.is_some() {
                return Err(at(ParseErrorKind::Duplicate("dims line".into())));
            }
            let parts: Vec<&str> = line.split_whitespace().skip(1).collect();
            let [m, n] = parts.as_slice() else {
                return Err(at(ParseErrorKind::Syntax(
                    "expected `dims <sources> <destinations>`".into(),
                )));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| at(ParseErrorKind::Syntax(format!("bad dimension `{s}`"))))
            };
            let (m, n) = (parse(m)?, parse(n)?);
            if m == 0 || n == 0 {
                return Err(at(ParseErrorKind::Syntax("dimensions must be positive".into())));
            }
            dims = Some((m, n));
            unit = Grid::new(m, n);
            fixed = Grid::new(m, n);
            supply = vec![None; m];
            demand = vec![None; n];
            continue;
        }
        let Some((m, n)) = dims else {
            return Err(at(ParseErrorKind::Syntax("`dims` must precede all entries".into())));
        };
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| at(ParseErrorKind::Syntax(format!("expected `=` in `{keyword}` line"))))?;
        let mut idx = lhs.split_whitespace().skip(1);
        let result = match keyword {
            "cost" => (|| {
                let i = parse_index(idx.next(), "source", m)?;
                let j = parse_index(idx.next(), "destination", n)?;
                let (t, l) = rhs
                    .split_once("fixed")
                    .ok_or_else(|| ParseErrorKind::Syntax("expected `cost i j = [lo,hi] fixed [lo,hi]`".into()))?;
                unit.set(i, j, parse_interval(t)?, "cost")?;
                fixed.set(i, j, parse_interval(l)?, "fixed-charge")
            })(),
            "t" => (|| {
                let i = parse_index(idx.next(), "source", m)?;
                let j = parse_index(idx.next(), "destination", n)?;
                unit.set(i, j, parse_interval(rhs)?, "cost")
            })(),
            "l" | "fixed" => (|| {
                let i = parse_index(idx.next(), "source", m)?;
                let j = parse_index(idx.next(), "destination", n)?;
                fixed.set(i, j, parse_interval(rhs)?, "fixed-charge")
            })(),
            "supply" => (|| {
                let i = parse_index(idx.next(), "source", m)?;
                set_slot(&mut supply, i, parse_interval(rhs)?, "supply")
            })(),
            "demand" => (|| {
                let j = parse_index(idx.next(), "destination", n)?;
                set_slot(&mut demand, j, parse_interval(rhs)?, "demand")
            })(),
            other => Err(ParseErrorKind::Syntax(format!("unknown keyword `{other}`"))),
        };
        result.map_err(at)?;
        if idx.next().is_some() {
            return Err(at(ParseErrorKind::Syntax("too many indices".into())));
        }
    }

    let whole = |kind| ParseError { line: None, kind };
    let Some((m, n)) = dims else {
        return Err(whole(ParseErrorKind::Syntax("missing `dims` line".into())));
    };
    let count = |field, expected, found| {
        if expected == found {
            Ok(())
        } else {
            Err(whole(ParseErrorKind::Count { field, expected, found }))
        }
    };
    count("cost", m * n, unit.filled())?;
    count("fixed-charge", m * n, fixed.filled())?;
    count("supply", m, supply.iter().flatten().count())?;
    count("demand", n, demand.iter().flatten().count())?;

    InstanceDraft {
        sources: m,
        destinations: n,
        unit_cost: unit.finish(),
        fixed_charge: fixed.finish(),
        supply: supply.into_iter().flatten().collect(),
        demand: demand.into_iter().flatten().collect(),
    }
    .build()
    .map_err(|e| whole(e.into()))
}

/// Canonical problem file for an instance; [`parse_instance`] reads it back
/// to an identical instance.
pub fn render_instance(instance: &IfctpInstance) -> String {
    let (m, n) = (instance.sources(), instance.destinations());
    let mut out = String::new();
    let _ = writeln!(out, "dims {m} {n}");
    for ((i, j), t) in instance.unit_cost().indexed_iter() {
        let l = instance.fixed_charge()[(i, j)];
        let _ = writeln!(
            out,
            "cost {} {} = [{},{}] fixed [{},{}]",
            i + 1,
            j + 1,
            t.lo(),
            t.hi(),
            l.lo(),
            l.hi()
        );
    }
    for (i, s) in instance.supply().iter().enumerate() {
        let _ = writeln!(out, "supply {} = [{},{}]", i + 1, s.lo(), s.hi());
    }
    for (j, d) in instance.demand().iter().enumerate() {
        let _ = writeln!(out, "demand {} = [{},{}]", j + 1, d.lo(), d.hi());
    }
    out
}
