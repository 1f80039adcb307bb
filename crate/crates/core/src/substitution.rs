//! Words over `{L, S}`, the Fibonacci deflation `S -> L, L -> LS`, its
//! inverse inflation `LS -> L, L -> S`, and index sequences of a marked
//! segment.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("invalid letter {0:?}: words use only 'L' and 'S'")]
    BadLetter(char),
    #[error("invalid index bit {0:?}: prefixes use only '0' and '1'")]
    BadBit(char),
    #[error("index constraint violated at position {0}: a 1 must be followed by a 0")]
    AdjacentOnes(usize),
    #[error("word is not inflatable: interior \"SS\" at position {0}")]
    InteriorSS(usize),
    #[error("position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L,
    S,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::S => 'S',
        }
    }

    /// Index bit of a segment of this type: `S -> 1`, `L -> 0`.
    pub fn bit(self) -> u8 {
        match self {
            Letter::L => 0,
            Letter::S => 1,
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = SubstitutionError;
    fn try_from(c: char) -> Result<Self, Self::Error> {
        match c {
            'L' => Ok(Letter::L),
            'S' => Ok(Letter::S),
            other => Err(SubstitutionError::BadLetter(other)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.as_char())
    }
}

/// A finite word over `{L, S}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// The factor `self[start..start+len]`.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// True iff `other` occurs as a contiguous factor of `self`.
    pub fn contains_factor(&self, other: &Word) -> bool {
        other.is_empty() || self.0.windows(other.len()).any(|w| w == other.letters())
    }
}

impl Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{l}"))
    }
}

impl FromStr for Word {
    type Err = SubstitutionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Letter::try_from).collect()
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite index sequence `(a_0, ..., a_n)` with `a_j = 1 => a_{j+1} = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPrefix(Vec<u8>);

impl IndexPrefix {
    pub fn new(bits: Vec<u8>) -> Result<Self, SubstitutionError> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(SubstitutionError::BadBit(char::from(b'0' + b.min(9))));
        }
        if let Some(i) = bits.windows(2).position(|w| w == [1, 1]) {
            return Err(SubstitutionError::AdjacentOnes(i));
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Appends a bit, enforcing the index constraint.
    pub fn push(&mut self, bit: u8) -> Result<(), SubstitutionError> {
        if bit > 1 {
            return Err(SubstitutionError::BadBit(char::from(b'0' + bit.min(9))));
        }
        if bit == 1 && self.last() == Some(1) {
            return Err(SubstitutionError::AdjacentOnes(self.0.len() - 1));
        }
        self.0.push(bit);
        Ok(())
    }

    pub fn truncated(&self, len: usize) -> IndexPrefix {
        IndexPrefix(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl fmt::Display for IndexPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{b}"))
    }
}

impl FromStr for IndexPrefix {
    type Err = SubstitutionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(SubstitutionError::BadBit(other)),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        IndexPrefix::new(bits)
    }
}

impl Serialize for IndexPrefix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Substitution `S -> L`, `L -> LS`.
pub fn deflate(w: &Word) -> Word {
    let mut out = Vec::with_capacity(2 * w.len());
    for &l in w.letters() {
        match l {
            Letter::L => out.extend([Letter::L, Letter::S]),
            Letter::S => out.push(Letter::L),
        }
    }
    Word(out)
}

/// `n`-fold deflation of the single letter `L`.
pub fn fixed_word(n: usize) -> Word {
    (0..n).fold(Word(vec![Letter::L]), |w, _| deflate(&w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// `LS`, inflating to `L`.
    LS,
    /// A bare `L`, inflating to `S`.
    L,
}

impl BlockKind {
    pub fn inflated(self) -> Letter {
        match self {
            BlockKind::LS => Letter::L,
            BlockKind::L => Letter::S,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub start: usize,
    pub len: usize,
}

/// Alignment of a word with its inflation.
///
/// `blocks` holds the complete blocks only; block `i` becomes letter `i` of
/// the inflated word. `position_map[j]` is the block covering parent letter
/// `j`, or `None` if that letter sits in a partial edge block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockParse {
    pub blocks: Vec<Block>,
    pub leading_partial: bool,
    pub trailing_partial: bool,
    pub position_map: Vec<Option<usize>>,
}

/// Greedy left-to-right inflation `LS -> L`, `L -> S`.
///
/// A leading `S` (whose `L` partner lies to the left of the window) and a
/// trailing `L` (whose `S` partner may lie to the right) are dropped and
/// flagged.
pub fn inflate(w: &Word) -> Result<(Word, BlockParse), SubstitutionError> {
    let letters = w.letters();
    let n = letters.len();
    let mut blocks = Vec::with_capacity(n / 2 + 1);
    let mut position_map = vec![None; n];
    let mut leading_partial = false;
    let mut trailing_partial = false;
    let mut i = 0;
    if letters.first() == Some(&Letter::S) {
        leading_partial = true;
        i = 1;
    }
    while i < n {
        match (letters[i], letters.get(i + 1)) {
            (Letter::S, _) => return Err(SubstitutionError::InteriorSS(i - 1)),
            (Letter::L, Some(Letter::S)) => {
                position_map[i] = Some(blocks.len());
                position_map[i + 1] = Some(blocks.len());
                blocks.push(Block {
                    kind: BlockKind::LS,
                    start: i,
                    len: 2,
                });
                i += 2;
            }
            (Letter::L, Some(Letter::L)) => {
                position_map[i] = Some(blocks.len());
                blocks.push(Block {
                    kind: BlockKind::L,
                    start: i,
                    len: 1,
                });
                i += 1;
            }
            (Letter::L, None) => {
                trailing_partial = true;
                i += 1;
            }
        }
    }
    let word = blocks.iter().map(|b| b.kind.inflated()).collect();
    Ok((
        word,
        BlockParse {
            blocks,
            leading_partial,
            trailing_partial,
            position_map,
        },
    ))
}

/// Result of tracking a segment through successive inflations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexOutcome {
    Defined(IndexPrefix),
    /// At inflation level `level` the segment fell into a partial edge
    /// block; `known` holds the indices `a_0..a_{level-1}` already decided.
    Undefined {
        level: usize,
        known: IndexPrefix,
    },
}

impl IndexOutcome {
    pub fn prefix(&self) -> Option<&IndexPrefix> {
        match self {
            IndexOutcome::Defined(p) => Some(p),
            IndexOutcome::Undefined { .. } => None,
        }
    }
}

/// Index prefix `(a_0, ..., a_depth)` of the segment at `position`.
pub fn index_prefix(
    w: &Word,
    position: usize,
    depth: usize,
) -> Result<IndexOutcome, SubstitutionError> {
    if position >= w.len() {
        return Err(SubstitutionError::PositionOutOfRange {
            position,
            len: w.len(),
        });
    }
    let mut bits = IndexPrefix::new(vec![w[position].bit()])?;
    let mut word = w.clone();
    let mut pos = position;
    for level in 1..=depth {
        let (next, parse) = inflate(&word)?;
        match parse.position_map[pos] {
            Some(p) => {
                bits.push(next[p].bit())?;
                pos = p;
                word = next;
            }
            None => return Ok(IndexOutcome::Undefined { level, known: bits }),
        }
    }
    Ok(IndexOutcome::Defined(bits))
}

/// No `SS` and no `LLL` factor.
pub fn is_valid_fword(w: &Word) -> bool {
    let l = w.letters();
    !l.windows(2).any(|p| p == [Letter::S, Letter::S])
        && !l.windows(3).any(|p| p == [Letter::L, Letter::L, Letter::L])
}
