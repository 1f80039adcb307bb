//! Geometric constructions of Fibonacci chains from the square lattice and
//! lines of slope `1/tau`.
//!
//! * The cut procedure reads `L` at every crossing of a vertical grid line
//!   `x = m` and `S` at every crossing of a horizontal line `y = n` by the
//!   line `y = x/tau + b`.
//! * The strip projection walks the staircase of lattice points whose perp
//!   coordinate `u = s - r/tau` lies in a half-open window of width `tau`.
//! * Window lines are the lines of slope `1/tau` through lattice points with
//!   `0 < u < 1`, ordered by parallel distance; they cut the partition tower.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::golden::{json_bigint, GoldenRational};
use crate::substitution::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("count must be at least 1")]
    EmptyCount,
    #[error(
        "singular window: lattice point ({r}, {s}) lies on the window boundary; \
         use the cut procedure with an explicit singular policy"
    )]
    SingularWindow { r: BigInt, s: BigInt },
}

/// How a coincident vertical/horizontal crossing is ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularPolicy {
    /// Line pushed up infinitesimally: `S` then `L`.
    Upper,
    /// Line pushed down infinitesimally: `L` then `S`.
    Lower,
}

impl SingularPolicy {
    fn pair(self) -> [Letter; 2] {
        match self {
            SingularPolicy::Upper => [Letter::S, Letter::L],
            SingularPolicy::Lower => [Letter::L, Letter::S],
        }
    }
}

/// The line `y = x/tau + b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutLine {
    pub intercept: GoldenRational,
}

impl CutLine {
    pub fn new(intercept: GoldenRational) -> Self {
        Self { intercept }
    }

    /// True iff the line passes a lattice point.
    pub fn is_singular(&self) -> bool {
        is_singular(&self.intercept)
    }

    /// Height of the line at abscissa `x`.
    pub fn height_at(&self, x: &GoldenRational) -> GoldenRational {
        &(x * &GoldenRational::tau_inv()) + &self.intercept
    }
}

/// One grid crossing of a cut line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingEvent {
    pub kind: Letter,
    /// `m` for the vertical line `x = m`, `n` for the horizontal line `y = n`.
    #[serde(rename = "grid", with = "json_bigint")]
    pub grid_index: BigInt,
    pub x: GoldenRational,
}

/// Letters read off a cut line over a window of crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutChain {
    pub word: Word,
    pub events: Vec<CrossingEvent>,
    /// Index of the origin segment: the last crossing with `x <= 0`.
    pub origin: usize,
    /// Word indices of coincident crossings (lattice points on the line).
    pub coincidences: Vec<usize>,
}

/// Intercepts in `Z + (1/tau)Z` give lines through lattice points.
pub fn is_singular(b: &GoldenRational) -> bool {
    b.is_golden_integer()
}

struct Crossings {
    frac: GoldenRational,
    shift: BigInt,
    policy: SingularPolicy,
}

impl Crossings {
    fn new(b: &GoldenRational, policy: SingularPolicy) -> Self {
        let (shift, frac) = b.floor_mod1();
        Self {
            frac,
            shift,
            policy,
        }
    }

    fn vertical(m: &BigInt) -> CrossingEvent {
        CrossingEvent {
            kind: Letter::L,
            grid_index: m.clone(),
            x: GoldenRational::integer(m.clone()),
        }
    }

    fn horizontal(&self, n: &BigInt, x: &GoldenRational) -> CrossingEvent {
        CrossingEvent {
            kind: Letter::S,
            grid_index: n + &self.shift,
            x: x.clone(),
        }
    }

    /// `x = tau (n - frac)` for the reduced horizontal index `n`.
    fn horizontal_x(&self, n: &BigInt) -> GoldenRational {
        &GoldenRational::tau() * &(&GoldenRational::integer(n.clone()) - &self.frac)
    }

    fn first_horizontal_at_or_after_origin(&self) -> BigInt {
        if self.frac.is_zero() {
            BigInt::zero()
        } else {
            BigInt::one()
        }
    }

    fn ordered_pair(&self, m: &BigInt, n: &BigInt, x: &GoldenRational) -> [CrossingEvent; 2] {
        let v = Self::vertical(m);
        let h = self.horizontal(n, x);
        match self.policy.pair()[0] {
            Letter::S => [h, v],
            Letter::L => [v, h],
        }
    }

    /// Crossings with `x >= 0` in increasing order; returns the events and
    /// the event indices where a coincident pair starts.
    fn forward(&self, count: usize) -> (Vec<CrossingEvent>, Vec<usize>) {
        let mut out = Vec::with_capacity(count + 1);
        let mut pairs = Vec::new();
        let mut m = BigInt::zero();
        let mut n = self.first_horizontal_at_or_after_origin();
        let mut xh = self.horizontal_x(&n);
        let tau = GoldenRational::tau();
        while out.len() < count {
            let xv = GoldenRational::integer(m.clone());
            match xv.cmp(&xh) {
                std::cmp::Ordering::Less => {
                    out.push(Self::vertical(&m));
                    m += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(self.horizontal(&n, &xh));
                    n += 1;
                    xh = &xh + &tau;
                }
                std::cmp::Ordering::Equal => {
                    pairs.push(out.len());
                    out.extend(self.ordered_pair(&m, &n, &xh));
                    m += 1;
                    n += 1;
                    xh = &xh + &tau;
                }
            }
        }
        out.truncate(count);
        (out, pairs)
    }

    /// The `count` crossings with `x < 0` nearest the origin, in increasing order.
    fn backward(&self, count: usize) -> (Vec<CrossingEvent>, Vec<usize>) {
        let mut rev = Vec::with_capacity(count + 1);
        let mut pair_ends = Vec::new();
        let mut m = -BigInt::one();
        let mut n = self.first_horizontal_at_or_after_origin() - 1;
        let mut xh = self.horizontal_x(&n);
        let tau = GoldenRational::tau();
        while rev.len() < count {
            let xv = GoldenRational::integer(m.clone());
            match xv.cmp(&xh) {
                std::cmp::Ordering::Greater => {
                    rev.push(Self::vertical(&m));
                    m -= 1;
                }
                std::cmp::Ordering::Less => {
                    rev.push(self.horizontal(&n, &xh));
                    n -= 1;
                    xh = &xh - &tau;
                }
                std::cmp::Ordering::Equal => {
                    let [first, second] = self.ordered_pair(&m, &n, &xh);
                    rev.push(second);
                    rev.push(first);
                    pair_ends.push(rev.len() - 1);
                    m -= 1;
                    n -= 1;
                    xh = &xh - &tau;
                }
            }
        }
        rev.truncate(count);
        rev.reverse();
        // a pair whose first event fell past the window is only half present
        let pairs = pair_ends
            .into_iter()
            .filter(|&e| e < count)
            .map(|e| count - 1 - e)
            .rev()
            .collect();
        (rev, pairs)
    }
}

/// The first `count` letters of the cut chain starting at the crossing `x = 0`.
pub fn cut_chain(
    b: &GoldenRational,
    count: usize,
    policy: SingularPolicy,
) -> Result<CutChain, CutError> {
    cut_window(b, 0, count, policy)
}

/// Cut chain over the `before` crossings left of the origin followed by the
/// first `count` crossings at `x >= 0`.
pub fn cut_window(
    b: &GoldenRational,
    before: usize,
    count: usize,
    policy: SingularPolicy,
) -> Result<CutChain, CutError> {
    if count == 0 {
        return Err(CutError::EmptyCount);
    }
    let crossings = Crossings::new(b, policy);
    let (mut events, mut coincidences) = crossings.backward(before);
    let (right, right_pairs) = crossings.forward(count);
    let at_origin = right.iter().take_while(|e| e.x.is_zero()).count();
    let origin = before + at_origin - 1;
    coincidences.extend(right_pairs.into_iter().map(|i| i + before));
    events.extend(right);
    let word = events.iter().map(|e| e.kind).collect();
    Ok(CutChain {
        word,
        events,
        origin,
        coincidences,
    })
}

/// Perp coordinate `u = s - r/tau` of the lattice point `(r, s)`.
pub fn perp_coordinate(r: &BigInt, s: &BigInt) -> GoldenRational {
    // s - r (tau - 1) = (s + r) - r tau
    GoldenRational::golden(s + r, -r)
}

/// Parallel distance `d(r, s) = (tau/(tau+2)) (r + s/tau)`.
pub fn parallel_distance(r: &BigInt, s: &BigInt) -> GoldenRational {
    let along = GoldenRational::golden(r - s, s.clone());
    let scale = GoldenRational::tau()
        .checked_div(&GoldenRational::golden(2, 1))
        .expect("tau + 2 is nonzero");
    &along * &scale
}

/// Staircase produced by the strip projection, with the visited lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripChain {
    pub word: Word,
    #[serde(serialize_with = "serialize_points")]
    pub points: Vec<(BigInt, BigInt)>,
}

fn serialize_points<S: serde::Serializer>(
    points: &[(BigInt, BigInt)],
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Point<'a>(
        #[serde(with = "json_bigint")] &'a BigInt,
        #[serde(with = "json_bigint")] &'a BigInt,
    );
    s.collect_seq(points.iter().map(|(r, t)| Point(r, t)))
}

/// Strip projection through the window `[c, c + tau)` in the perp coordinate.
///
/// The walk starts at the topmost lattice point of the column `r = 0`,
/// i.e. the one with `u` in `[c + 1/tau, c + tau)`, and steps right (`L`)
/// while `u - 1/tau` stays in the window, else up (`S`). With `c = b - 1/tau`
/// it reproduces `cut_chain(b, ..)` letter for letter.
pub fn strip_chain(c: &GoldenRational, count: usize) -> Result<StripChain, CutError> {
    if count == 0 {
        return Err(CutError::EmptyCount);
    }
    if c.is_golden_integer() {
        // c = p + q tau = perp_coordinate(-q, p + q)
        return Err(CutError::SingularWindow {
            r: -c.q(),
            s: c.p() + c.q(),
        });
    }
    let tau_inv = GoldenRational::tau_inv();
    let split = c + &tau_inv;
    let top = c + &GoldenRational::tau();
    let mut r = BigInt::zero();
    let mut s = split.ceil();
    let mut u = GoldenRational::integer(s.clone());
    let mut letters = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count + 1);
    points.push((r.clone(), s.clone()));
    let one = GoldenRational::one();
    for _ in 0..count {
        debug_assert!(&u >= c && u < top);
        if u >= split {
            letters.push(Letter::L);
            r += 1;
            u = &u - &tau_inv;
        } else {
            letters.push(Letter::S);
            s += 1;
            u = &u + &one;
        }
        points.push((r.clone(), s.clone()));
    }
    Ok(StripChain {
        word: Word::new(letters),
        points,
    })
}

/// A line of slope `1/tau` through a lattice point with `0 < u < 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeLine {
    #[serde(with = "json_bigint")]
    pub r: BigInt,
    #[serde(with = "json_bigint")]
    pub s: BigInt,
    pub intercept: GoldenRational,
    pub distance: GoldenRational,
}

/// The first `limit` window lines of positive parallel distance, nearest first.
///
/// Each column `r >= 1` holds exactly one point with `0 < u < 1`, namely
/// `s = floor(r/tau) + 1`; `s` is nondecreasing in `r`, so `d` is strictly
/// increasing in `r`. Columns `r <= 0` give `d <= 0`.
pub fn enumerate_window_lines(limit: usize) -> Vec<LatticeLine> {
    let tau_inv = GoldenRational::tau_inv();
    let mut lines: Vec<LatticeLine> = (1..=limit)
        .map(|r| {
            let r = BigInt::from(r);
            let s = (&GoldenRational::integer(r.clone()) * &tau_inv).floor() + 1;
            LatticeLine {
                intercept: perp_coordinate(&r, &s),
                distance: parallel_distance(&r, &s),
                r,
                s,
            }
        })
        .collect();
    lines.sort_by(|a, b| a.distance.cmp(&b.distance));
    lines
}

/// One tile of a rendered F-lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tile {
    pub start: f64,
    pub length: f64,
    pub kind: Letter,
}

/// Tile lengths `m(L) = cos(theta)`, `m(S) = sin(theta)` with `theta = atan(1/tau)`.
pub fn tile_lengths() -> (f64, f64) {
    let tau = GoldenRational::tau().to_f64();
    let hyp = (tau * tau + 1.0).sqrt();
    (tau / hyp, 1.0 / hyp)
}

/// Float layout of a word as an F-lattice starting at `origin`.
pub fn render_tiling(w: &Word, origin: f64) -> Vec<Tile> {
    let (long, short) = tile_lengths();
    let mut pos = origin;
    w.letters()
        .iter()
        .map(|&kind| {
            let length = match kind {
                Letter::L => long,
                Letter::S => short,
            };
            let tile = Tile {
                start: pos,
                length,
                kind,
            };
            pos += length;
            tile
        })
        .collect()
}
