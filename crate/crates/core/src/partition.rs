//! The partition tower `W_0, W_1, ...` of the intercept interval `(0, 1)`.
//!
//! `W_n` tiles `(0, 1)` by open intervals, one per index prefix
//! `(a_0, ..., a_n)`: every `b` in an interval yields a cut chain whose
//! origin segment has exactly that prefix. Refinement from `W_k` to
//! `W_{k+1}` turns every `S` interval into an `L` interval and cuts every
//! `L` interval (length `tau^-k`) into an `L` part of length `tau^-(k+1)`
//! and an `S` part of length `tau^-(k+2)`, the `S` part sitting on the lower
//! side for even `k` and on the upper side for odd `k`.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::golden::{golden_power, GoldenRational};
use crate::ktheory::{fib, fib_signed, rotation_orbit};
use crate::substitution::{IndexPrefix, Letter};

/// Deepest level any tower operation will descend to.
pub const DEPTH_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("level {requested} exceeds the depth cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("intercept {0} is not in the open interval (0, 1)")]
    OutOfRange(String),
    #[error("prefix {0} must start with 0")]
    UnanchoredPrefix(IndexPrefix),
    #[error("boundary_orbit needs n >= 1")]
    EmptyOrbit,
    #[error("intervals have different kinds")]
    KindMismatch,
    #[error("intervals are at levels {0} and {1}")]
    LevelMismatch(usize, usize),
    #[error("interval ({lo}, {hi}) is not part of the partition")]
    NotInPartition { lo: String, hi: String },
    #[error("offset {0} is outside [0, interval length)")]
    OffsetOutOfRange(String),
}

/// An open interval of `W_level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: GoldenRational,
    pub hi: GoldenRational,
    pub kind: Letter,
    pub level: usize,
    /// `(a_0, ..., a_level)`, always with `a_0 = 0`.
    pub path: IndexPrefix,
}

impl Interval {
    fn root() -> Self {
        Self {
            lo: GoldenRational::zero(),
            hi: GoldenRational::one(),
            kind: Letter::L,
            level: 0,
            path: IndexPrefix::new(vec![0]).expect("single bit"),
        }
    }

    pub fn length(&self) -> GoldenRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, b: &GoldenRational) -> bool {
        &self.lo < b && b < &self.hi
    }

    pub fn midpoint(&self) -> GoldenRational {
        &(&self.lo + &self.hi) * &GoldenRational::ratio(1, 2)
    }

    /// Split point used when refining this `L` interval to the next level.
    fn split_point(&self) -> GoldenRational {
        let short = golden_power(-(self.level as i64 + 2));
        if self.level.is_multiple_of(2) {
            &self.lo + &short
        } else {
            &self.hi - &short
        }
    }

    fn child(&self, lo: GoldenRational, hi: GoldenRational, kind: Letter) -> Self {
        let mut path = self.path.clone();
        path.push(kind.bit())
            .expect("an S interval is always followed by an L interval");
        Self {
            lo,
            hi,
            kind,
            level: self.level + 1,
            path,
        }
    }

    /// The children at the next level, in ascending order.
    fn refine(&self) -> Vec<Interval> {
        match self.kind {
            Letter::S => vec![self.child(self.lo.clone(), self.hi.clone(), Letter::L)],
            Letter::L => {
                let sp = self.split_point();
                let (low, high) = if self.level.is_multiple_of(2) {
                    (Letter::S, Letter::L)
                } else {
                    (Letter::L, Letter::S)
                };
                vec![
                    self.child(self.lo.clone(), sp.clone(), low),
                    self.child(sp, self.hi.clone(), high),
                ]
            }
        }
    }

    /// The child containing `b`, or `None` if `b` is the split point.
    fn descend(&self, b: &GoldenRational) -> Option<Interval> {
        let mut children = self.refine();
        if children.len() == 1 {
            return children.pop();
        }
        match b.cmp(&children[0].hi) {
            std::cmp::Ordering::Less => Some(children.swap_remove(0)),
            std::cmp::Ordering::Greater => children.pop(),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// `W_level`: intervals in ascending order and the interior boundary points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub level: usize,
    pub intervals: Vec<Interval>,
    pub boundaries: Vec<GoldenRational>,
}

impl Partition {
    /// Position of an interval with the same endpoints.
    pub fn position(&self, interval: &Interval) -> Option<usize> {
        let i = self
            .intervals
            .binary_search_by(|probe| probe.lo.cmp(&interval.lo))
            .ok()?;
        (self.intervals[i].hi == interval.hi).then_some(i)
    }

    pub fn count(&self, kind: Letter) -> usize {
        self.intervals.iter().filter(|i| i.kind == kind).count()
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), PartitionError> {
    if n > cap {
        Err(PartitionError::CapExceeded { requested: n, cap })
    } else {
        Ok(())
    }
}

/// `W_n` with the default depth cap.
pub fn build_partition(n: usize) -> Result<Partition, PartitionError> {
    build_partition_capped(n, DEPTH_CAP)
}

/// `W_n`, refusing levels above `cap`. `W_n` has `f(n+2)` intervals.
pub fn build_partition_capped(n: usize, cap: usize) -> Result<Partition, PartitionError> {
    check_cap(n, cap)?;
    let mut intervals = vec![Interval::root()];
    for _ in 0..n {
        intervals = intervals.iter().flat_map(Interval::refine).collect();
    }
    let boundaries = intervals.iter().skip(1).map(|i| i.lo.clone()).collect();
    Ok(Partition {
        level: n,
        intervals,
        boundaries,
    })
}

/// Where an intercept sits in `W_n`.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "located", content = "value", rename_all = "snake_case")]
pub enum Located {
    Interval(Interval),
    /// `b` is a split point first created when refining to this level.
    SingularBoundary(usize),
}

/// The interval of `W_n` containing `b`, found by descending the tower.
pub fn locate(b: &GoldenRational, n: usize) -> Result<Located, PartitionError> {
    check_cap(n, DEPTH_CAP)?;
    if b.sign() <= 0 || b >= &GoldenRational::one() {
        return Err(PartitionError::OutOfRange(b.to_string()));
    }
    let mut current = Interval::root();
    for level in 1..=n {
        match current.descend(b) {
            Some(next) => current = next,
            None => return Ok(Located::SingularBoundary(level)),
        }
    }
    Ok(Located::Interval(current))
}

/// Index prefix of an intercept, read off the tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum InterceptIndex {
    Prefix(IndexPrefix),
    SingularBoundary(usize),
}

/// `(a_0, ..., a_depth)` where `a_k` is the kind of the interval of `W_k`
/// containing `b`.
pub fn index_from_intercept(
    b: &GoldenRational,
    depth: usize,
) -> Result<InterceptIndex, PartitionError> {
    Ok(match locate(b, depth)? {
        Located::Interval(i) => InterceptIndex::Prefix(i.path),
        Located::SingularBoundary(level) => InterceptIndex::SingularBoundary(level),
    })
}

/// The first `f(n+2) - 1` points of the rotation by `-1/tau` from `1/tau^2`.
/// As a set these are the boundaries of `W_n`.
pub fn boundary_orbit(n: usize) -> Result<Vec<GoldenRational>, PartitionError> {
    if n == 0 {
        return Err(PartitionError::EmptyOrbit);
    }
    check_cap(n, DEPTH_CAP)?;
    let count: usize = (fib(n + 2) - 1u32)
        .try_into()
        .expect("capped Fibonacci numbers fit in usize");
    let step = -GoldenRational::tau_inv();
    Ok(rotation_orbit(&golden_power(-2), count, &step))
}

/// The interval of `W_{len-1}` selected by the prefix.
pub fn interval_for_prefix(z: &IndexPrefix) -> Result<Interval, PartitionError> {
    if z.bits().first() != Some(&0) {
        return Err(PartitionError::UnanchoredPrefix(z.clone()));
    }
    check_cap(z.len() - 1, DEPTH_CAP)?;
    let mut current = Interval::root();
    for &bit in &z.bits()[1..] {
        current = current
            .refine()
            .into_iter()
            .find(|c| c.kind.bit() == bit)
            .expect("a valid prefix never asks an S interval for another S");
    }
    Ok(current)
}

/// Inverse of [`interval_for_prefix`]: locate the midpoint and check the
/// endpoints agree.
pub fn prefix_for_interval(interval: &Interval) -> Result<IndexPrefix, PartitionError> {
    let not_found = || PartitionError::NotInPartition {
        lo: interval.lo.to_string(),
        hi: interval.hi.to_string(),
    };
    if interval.lo.sign() < 0 || interval.hi > GoldenRational::one() || interval.lo >= interval.hi {
        return Err(not_found());
    }
    match locate(&interval.midpoint(), interval.level)? {
        Located::Interval(found) if found.lo == interval.lo && found.hi == interval.hi => {
            Ok(found.path)
        }
        _ => Err(not_found()),
    }
}

/// Decomposition of the offset between two same-kind intervals of `W_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDifference {
    /// Signed numbers of `L` and `S` intervals from `I'` (inclusive) to `I`
    /// (exclusive); negative when `I` lies below `I'`.
    #[serde(rename = "kL", with = "crate::golden::json_bigint")]
    pub k_l: BigInt,
    #[serde(rename = "kS", with = "crate::golden::json_bigint")]
    pub k_s: BigInt,
    /// `diff = k1/tau + k2`.
    #[serde(with = "crate::golden::json_bigint")]
    pub k1: BigInt,
    #[serde(with = "crate::golden::json_bigint")]
    pub k2: BigInt,
    pub diff: GoldenRational,
}

/// `b - b'` for `b = lo(I) + t` and `b' = lo(I') + t`, expressed through
/// interval counts and as an element of `Z + (1/tau)Z`.
pub fn interval_pair_difference(
    partition: &Partition,
    target: &Interval,
    source: &Interval,
    t: &GoldenRational,
) -> Result<PairDifference, PartitionError> {
    if target.level != source.level {
        return Err(PartitionError::LevelMismatch(target.level, source.level));
    }
    if target.level != partition.level {
        return Err(PartitionError::LevelMismatch(target.level, partition.level));
    }
    if target.kind != source.kind {
        return Err(PartitionError::KindMismatch);
    }
    if t.sign() < 0 || t >= &target.length() {
        return Err(PartitionError::OffsetOutOfRange(t.to_string()));
    }
    let index_of = |i: &Interval| {
        partition
            .position(i)
            .ok_or_else(|| PartitionError::NotInPartition {
                lo: i.lo.to_string(),
                hi: i.hi.to_string(),
            })
    };
    let (i, j) = (index_of(target)?, index_of(source)?);
    let (range, sign) = if i >= j { (j..i, 1) } else { (i..j, -1) };
    let between = &partition.intervals[range];
    let count =
        |kind| BigInt::from(sign * between.iter().filter(|x| x.kind == kind).count() as i64);
    let (k_l, k_s) = (count(Letter::L), count(Letter::S));

    let n = partition.level as i64;
    let parity = if n % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    };
    let k1 = &parity * (&k_s * fib_signed(n + 1) - &k_l * fib_signed(n));
    let k2 = &parity * (&k_l * fib_signed(n - 1) - &k_s * fib_signed(n));
    let diff = &(&target.lo + t) - &(&source.lo + t);
    debug_assert_eq!(
        diff,
        &(&GoldenRational::integer(k_l.clone()) * &golden_power(-n))
            + &(&GoldenRational::integer(k_s.clone()) * &golden_power(-n - 1))
    );
    Ok(PairDifference {
        k_l,
        k_s,
        k1,
        k2,
        diff,
    })
}
