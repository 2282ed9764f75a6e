//! One-dimensional intervals with open/closed, possibly infinite bounds,
//! and finite unions of them kept in canonical (maximal-subinterval) form.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

/// Exact rational coordinate.
pub type Rational = BigRational;

/// Shorthand for the integer `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"n"` or `"p/q"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational, FormatError> {
    let text = text.trim();
    let bad = || FormatError::BadRational(text.to_string());
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Renders a rational as `"n"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// One end of an interval.
///
/// The derived ordering (`NegInf < Finite < PosInf`, then by value, then
/// open before closed) is only used for canonical output order. Set-theoretic
/// comparisons of bounds go through [`lower_cmp`] and [`upper_cmp`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    NegInf,
    Finite { value: Rational, closed: bool },
    PosInf,
}

impl Endpoint {
    pub fn closed(value: Rational) -> Self {
        Endpoint::Finite { value, closed: true }
    }

    pub fn open(value: Rational) -> Self {
        Endpoint::Finite { value, closed: false }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Endpoint::Finite { closed: true, .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite { .. })
    }

    fn flipped(&self) -> Self {
        match self {
            Endpoint::Finite { value, closed } => Endpoint::Finite {
                value: value.clone(),
                closed: !closed,
            },
            other => other.clone(),
        }
    }
}

/// Orders two endpoints used as lower bounds: the one admitting more points
/// on its right is smaller. At equal values a closed bound starts earlier.
pub fn lower_cmp(a: &Endpoint, b: &Endpoint) -> Ordering {
    use Endpoint::*;
    match (a, b) {
        (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
        (NegInf, _) | (_, PosInf) => Ordering::Less,
        (_, NegInf) | (PosInf, _) => Ordering::Greater,
        (Finite { value: x, closed: cx }, Finite { value: y, closed: cy }) => x.cmp(y).then_with(|| cy.cmp(cx)),
    }
}

/// Orders two endpoints used as upper bounds. At equal values an open bound
/// ends earlier.
pub fn upper_cmp(a: &Endpoint, b: &Endpoint) -> Ordering {
    use Endpoint::*;
    match (a, b) {
        (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
        (NegInf, _) | (_, PosInf) => Ordering::Less,
        (_, NegInf) | (PosInf, _) => Ordering::Greater,
        (Finite { value: x, closed: cx }, Finite { value: y, closed: cy }) => x.cmp(y).then_with(|| cx.cmp(cy)),
    }
}

/// A nonempty interval of the real line. The empty interval is never
/// constructed; operations that may produce it return `Option`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr", into = "IntervalRepr")]
pub struct Interval {
    lo: Endpoint,
    hi: Endpoint,
}

impl Interval {
    /// Builds `lo .. hi`, or `None` when the described set is empty or the
    /// bounds are malformed (`+inf` as lower, `-inf` as upper).
    pub fn new(lo: Endpoint, hi: Endpoint) -> Option<Self> {
        let nonempty = match (&lo, &hi) {
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => false,
            (Endpoint::NegInf, _) | (_, Endpoint::PosInf) => true,
            (Endpoint::Finite { value: a, closed: ca }, Endpoint::Finite { value: b, closed: cb }) => {
                a < b || (a == b && *ca && *cb)
            }
        };
        nonempty.then_some(Interval { lo, hi })
    }

    /// `[a, b]`
    pub fn closed(a: Rational, b: Rational) -> Option<Self> {
        Self::new(Endpoint::closed(a), Endpoint::closed(b))
    }

    /// `(a, b)`
    pub fn open(a: Rational, b: Rational) -> Option<Self> {
        Self::new(Endpoint::open(a), Endpoint::open(b))
    }

    /// `[q, q]`
    pub fn point(q: Rational) -> Self {
        Interval {
            lo: Endpoint::closed(q.clone()),
            hi: Endpoint::closed(q),
        }
    }

    /// The whole real line.
    pub fn full() -> Self {
        Interval {
            lo: Endpoint::NegInf,
            hi: Endpoint::PosInf,
        }
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn is_full(&self) -> bool {
        self.lo == Endpoint::NegInf && self.hi == Endpoint::PosInf
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let above_lo = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::Finite { value, closed } => x > value || (*closed && x == value),
            Endpoint::PosInf => false,
        };
        let below_hi = match &self.hi {
            Endpoint::PosInf => true,
            Endpoint::Finite { value, closed } => x < value || (*closed && x == value),
            Endpoint::NegInf => false,
        };
        above_lo && below_hi
    }

    /// Set inclusion `other ⊆ self`.
    pub fn contains(&self, other: &Interval) -> bool {
        lower_cmp(&self.lo, &other.lo) != Ordering::Greater && upper_cmp(&other.hi, &self.hi) != Ordering::Greater
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = match lower_cmp(&self.lo, &other.lo) {
            Ordering::Less => &other.lo,
            _ => &self.lo,
        };
        let hi = match upper_cmp(&self.hi, &other.hi) {
            Ordering::Greater => &other.hi,
            _ => &self.hi,
        };
        Interval::new(lo.clone(), hi.clone())
    }

    /// `self ∪ other` when that union is itself an interval.
    pub fn merge(&self, other: &Interval) -> Option<Interval> {
        let (first, second) = if lower_cmp(&self.lo, &other.lo) == Ordering::Greater {
            (other, self)
        } else {
            (self, other)
        };
        let connected = match (&first.hi, &second.lo) {
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => true,
            (Endpoint::Finite { value: h, closed: ch }, Endpoint::Finite { value: l, closed: cl }) => {
                h > l || (h == l && (*ch || *cl))
            }
            _ => false,
        };
        if !connected {
            return None;
        }
        let hi = match upper_cmp(&first.hi, &second.hi) {
            Ordering::Less => second.hi.clone(),
            _ => first.hi.clone(),
        };
        Some(Interval {
            lo: first.lo.clone(),
            hi,
        })
    }

    /// The maximal intervals of `ℝ ∖ self`: one per finite bound, with the
    /// closedness flipped.
    pub fn complement(&self) -> Vec<Interval> {
        let mut out = Vec::with_capacity(2);
        if self.lo.is_finite() {
            out.push(Interval {
                lo: Endpoint::NegInf,
                hi: self.lo.flipped(),
            });
        }
        if self.hi.is_finite() {
            out.push(Interval {
                lo: self.hi.flipped(),
                hi: Endpoint::PosInf,
            });
        }
        out
    }

    /// Some point inside the interval.
    pub fn representative(&self) -> Rational {
        match (&self.lo, &self.hi) {
            (Endpoint::NegInf, Endpoint::PosInf) => Rational::zero(),
            (Endpoint::NegInf, Endpoint::Finite { value, .. }) => value - Rational::one(),
            (Endpoint::Finite { value, .. }, Endpoint::PosInf) => value + Rational::one(),
            (Endpoint::Finite { value: a, .. }, Endpoint::Finite { value: b, .. }) => (a + b) / rat(2),
            _ => unreachable!("interval invariant"),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Endpoint::NegInf => write!(f, "(-inf")?,
            Endpoint::Finite { value, closed } => {
                write!(f, "{}{}", if *closed { '[' } else { '(' }, format_rational(value))?
            }
            Endpoint::PosInf => write!(f, "(+inf")?,
        }
        write!(f, ",")?;
        match &self.hi {
            Endpoint::PosInf => write!(f, "+inf)"),
            Endpoint::Finite { value, closed } => {
                write!(f, "{}{}", format_rational(value), if *closed { ']' } else { ')' })
            }
            Endpoint::NegInf => write!(f, "-inf)"),
        }
    }
}

/// Wire form of an interval.
#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    lo_closed: bool,
    hi: String,
    hi_closed: bool,
}

fn endpoint_to_wire(e: &Endpoint) -> (String, bool) {
    match e {
        Endpoint::NegInf => ("-inf".to_string(), false),
        Endpoint::PosInf => ("+inf".to_string(), false),
        Endpoint::Finite { value, closed } => (format_rational(value), *closed),
    }
}

fn endpoint_from_wire(text: &str, closed: bool) -> Result<Endpoint, FormatError> {
    match text.trim() {
        "-inf" | "+inf" if closed => Err(FormatError::ClosedInfinity),
        "-inf" => Ok(Endpoint::NegInf),
        "+inf" => Ok(Endpoint::PosInf),
        other => Ok(Endpoint::Finite {
            value: parse_rational(other)?,
            closed,
        }),
    }
}

impl From<Interval> for IntervalRepr {
    fn from(iv: Interval) -> Self {
        let (lo, lo_closed) = endpoint_to_wire(&iv.lo);
        let (hi, hi_closed) = endpoint_to_wire(&iv.hi);
        IntervalRepr {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }
}

impl TryFrom<IntervalRepr> for Interval {
    type Error = FormatError;

    fn try_from(repr: IntervalRepr) -> Result<Self, Self::Error> {
        let lo = endpoint_from_wire(&repr.lo, repr.lo_closed)?;
        let hi = endpoint_from_wire(&repr.hi, repr.hi_closed)?;
        let shown = format!(
            "{}{}, {}{}",
            if repr.lo_closed { '[' } else { '(' },
            repr.lo,
            repr.hi,
            if repr.hi_closed { ']' } else { ')' }
        );
        Interval::new(lo, hi).ok_or(FormatError::EmptyInterval(shown))
    }
}

/// A finite union of intervals, stored as its maximal subintervals in
/// increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct OneDimArea {
    parts: Vec<Interval>,
}

impl OneDimArea {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self::from(Interval::full())
    }

    /// Sorts and merges arbitrary intervals into canonical form.
    pub fn normalize<I: IntoIterator<Item = Interval>>(parts: I) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort_by(|a, b| lower_cmp(&a.lo, &b.lo).then_with(|| upper_cmp(&a.hi, &b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            if let Some(last) = merged.last_mut() {
                if let Some(joined) = last.merge(&iv) {
                    *last = joined;
                    continue;
                }
            }
            merged.push(iv);
        }
        OneDimArea { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        self.parts.iter().any(|iv| iv.contains_point(x))
    }

    pub fn union(&self, other: &OneDimArea) -> OneDimArea {
        Self::normalize(self.parts.iter().chain(&other.parts).cloned())
    }

    pub fn intersect(&self, other: &OneDimArea) -> OneDimArea {
        Self::normalize(
            self.parts
                .iter()
                .flat_map(|a| other.parts.iter().filter_map(move |b| a.intersect(b))),
        )
    }

    /// The gaps between consecutive parts, plus the two unbounded ends.
    pub fn complement(&self) -> OneDimArea {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut lo = Endpoint::NegInf;
        for iv in &self.parts {
            if let Some(gap) = Interval::new(lo, iv.lo.flipped()) {
                out.push(gap);
            }
            lo = iv.hi.flipped();
        }
        if let Some(gap) = Interval::new(lo, Endpoint::PosInf) {
            out.push(gap);
        }
        OneDimArea { parts: out }
    }
}

impl From<Interval> for OneDimArea {
    fn from(iv: Interval) -> Self {
        OneDimArea { parts: vec![iv] }
    }
}

impl From<Vec<Interval>> for OneDimArea {
    fn from(parts: Vec<Interval>) -> Self {
        Self::normalize(parts)
    }
}

impl From<OneDimArea> for Vec<Interval> {
    fn from(area: OneDimArea) -> Self {
        area.parts
    }
}

impl fmt::Display for OneDimArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, iv) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
