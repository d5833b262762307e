//! Closed real intervals in endpoint form `[lo, hi]` and center/width form
//! `<c, w>`, with the arithmetic and the distance-to-ideal preference used to
//! rank interval-valued costs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

/// Absolute tolerance under which two distances to the ideal are a tie.
pub const PREFERENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval lo > hi ({lo} > {hi})")]
    Reversed { lo: f64, hi: f64 },
    #[error("interval endpoint is not finite")]
    NotFinite,
    #[error("interval width must be nonnegative, got {0}")]
    NegativeWidth(f64),
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
///
/// A degenerate interval (`lo == hi`) is a crisp value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        if lo > hi {
            return Err(IntervalError::Reversed { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[v, v]`.
    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn center(&self) -> f64 {
        (self.hi + self.lo) / 2.0
    }

    /// Half-width. Always nonnegative.
    #[inline]
    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn to_center_width(self) -> CenterWidth {
        CenterWidth {
            c: self.center(),
            w: self.width(),
        }
    }

    pub fn from_center_width(cw: CenterWidth) -> Result<Self, IntervalError> {
        if !cw.c.is_finite() || !cw.w.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        if cw.w < 0.0 {
            return Err(IntervalError::NegativeWidth(cw.w));
        }
        Ok(Self {
            lo: cw.c - cw.w,
            hi: cw.c + cw.w,
        })
    }

    /// Scalar multiple. A negative factor swaps the limits.
    pub fn scale(self, gamma: f64) -> Self {
        if gamma >= 0.0 {
            Self {
                lo: gamma * self.lo,
                hi: gamma * self.hi,
            }
        } else {
            Self {
                lo: gamma * self.hi,
                hi: gamma * self.lo,
            }
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl Default for Interval {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        rhs.scale(self)
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, Add::add)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// Center/width representation `<c, w>` of an interval: expected value and
/// uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterWidth {
    pub c: f64,
    pub w: f64,
}

impl CenterWidth {
    pub fn new(c: f64, w: f64) -> Result<Self, IntervalError> {
        if !c.is_finite() || !w.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        if w < 0.0 {
            return Err(IntervalError::NegativeWidth(w));
        }
        Ok(Self { c, w })
    }

    pub fn to_interval(self) -> Result<Interval, IntervalError> {
        Interval::from_center_width(self)
    }

    /// `<gamma c, |gamma| w>`.
    pub fn scale(self, gamma: f64) -> Self {
        Self {
            c: gamma * self.c,
            w: gamma.abs() * self.w,
        }
    }
}

impl Add for CenterWidth {
    type Output = CenterWidth;

    fn add(self, rhs: CenterWidth) -> CenterWidth {
        CenterWidth {
            c: self.c + rhs.c,
            w: self.w + rhs.w,
        }
    }
}

impl From<Interval> for CenterWidth {
    fn from(i: Interval) -> Self {
        i.to_center_width()
    }
}

impl fmt::Display for CenterWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "<{:.*}, {:.*}>", p, self.c, p, self.w),
            None => write!(f, "<{}, {}>", self.c, self.w),
        }
    }
}

/// Euclidean distance between `p` and `ideal` in the (center, width) plane.
pub fn distance_to_ideal(p: CenterWidth, ideal: CenterWidth) -> f64 {
    (p.c - ideal.c).hypot(p.w - ideal.w)
}

/// Outcome of comparing two interval costs against an ideal point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    First,
    Second,
    Tie,
}

impl Preference {
    /// `Ordering::Less` means the first argument ranks ahead.
    pub fn as_ordering(self) -> Ordering {
        match self {
            Preference::First => Ordering::Less,
            Preference::Second => Ordering::Greater,
            Preference::Tie => Ordering::Equal,
        }
    }
}

/// Ranks `p` against `q` by their distance to `ideal`; the closer one is
/// preferred.
pub fn prefer(p: CenterWidth, q: CenterWidth, ideal: CenterWidth) -> Preference {
    let dp = distance_to_ideal(p, ideal);
    let dq = distance_to_ideal(q, ideal);
    if (dp - dq).abs() <= PREFERENCE_TOLERANCE {
        Preference::Tie
    } else if dp < dq {
        Preference::First
    } else {
        Preference::Second
    }
}
