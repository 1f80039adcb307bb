//! Combinatorial side of the AF algebra of Fibonacci chains: the sets `Z_n`
//! of index prefixes, the Bratteli dimension data, the ordered `K_0` group,
//! the prefix and tail equivalences, and leaf equivalence of intercepts.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::golden::{json_bigint, GoldenRational};
use crate::substitution::IndexPrefix;

/// Largest `n` accepted by [`enumerate_prefixes`].
pub const ENUMERATION_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("enumeration of Z_{requested} exceeds the cap n <= {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("prefixes have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Memoized Fibonacci numbers `f0 = 0, f1 = f2 = 1`.
///
/// Fills are idempotent: concurrent writers extend the table with the same
/// values, so a reader never observes a wrong entry.
pub struct FibSequence {
    table: RwLock<Vec<BigInt>>,
}

impl FibSequence {
    pub const fn new() -> Self {
        Self {
            table: RwLock::new(Vec::new()),
        }
    }

    pub fn get(&self, n: usize) -> BigInt {
        if let Some(v) = self.table.read().unwrap().get(n) {
            return v.clone();
        }
        let mut table = self.table.write().unwrap();
        if table.is_empty() {
            table.push(BigInt::zero());
            table.push(BigInt::one());
        }
        while table.len() <= n {
            let k = table.len();
            let next = &table[k - 1] + &table[k - 2];
            table.push(next);
        }
        table[n].clone()
    }

    /// `f(n)` for any integer `n`, using `f(-n) = (-1)^(n+1) f(n)`.
    pub fn get_signed(&self, n: i64) -> BigInt {
        let v = self.get(n.unsigned_abs() as usize);
        if n < 0 && n % 2 == 0 {
            -v
        } else {
            v
        }
    }
}

impl Default for FibSequence {
    fn default() -> Self {
        Self::new()
    }
}

static FIB: FibSequence = FibSequence::new();

/// The `n`th Fibonacci number from the shared memo.
pub fn fib(n: usize) -> BigInt {
    FIB.get(n)
}

/// Fibonacci number at a possibly negative index (`f(-1) = 1`).
pub fn fib_signed(n: i64) -> BigInt {
    FIB.get_signed(n)
}

/// All of `Z_n` in lexicographic order.
pub fn enumerate_prefixes(n: usize) -> Result<Vec<IndexPrefix>, KTheoryError> {
    if n > ENUMERATION_CAP {
        return Err(KTheoryError::CapExceeded {
            requested: n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    let mut bits = Vec::with_capacity(n + 1);
    extend_prefixes(n + 1, &mut bits, &mut out);
    Ok(out)
}

fn extend_prefixes(len: usize, bits: &mut Vec<u8>, out: &mut Vec<IndexPrefix>) {
    if bits.len() == len {
        out.push(IndexPrefix::new(bits.clone()).expect("constraint maintained"));
        return;
    }
    for b in [0u8, 1] {
        if b == 1 && bits.last() == Some(&1) {
            continue;
        }
        bits.push(b);
        extend_prefixes(len, bits, out);
        bits.pop();
    }
}

/// Sizes `(k_n, k'_n)` of the two matrix blocks of `A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionVector {
    #[serde(rename = "n")]
    pub level: usize,
    #[serde(rename = "kL", with = "json_bigint")]
    pub k: BigInt,
    #[serde(rename = "kS", with = "json_bigint")]
    pub k_prime: BigInt,
}

impl DimensionVector {
    pub fn initial() -> Self {
        Self {
            level: 0,
            k: BigInt::one(),
            k_prime: BigInt::one(),
        }
    }

    /// One application of the inclusion matrix `[[1,1],[1,0]]`.
    pub fn next(&self) -> Self {
        Self {
            level: self.level + 1,
            k: &self.k + &self.k_prime,
            k_prime: self.k.clone(),
        }
    }
}

pub fn dimension_vector(n: usize) -> DimensionVector {
    (0..n).fold(DimensionVector::initial(), |v, _| v.next())
}

/// 2x2 integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2(pub [[BigInt; 2]; 2]);

impl Matrix2 {
    pub fn identity() -> Self {
        Self([
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ])
    }

    pub fn inclusion() -> Self {
        Self::from_i64([[1, 1], [1, 0]])
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Self(m.map(|row| row.map(BigInt::from)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        let cell = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Self([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

/// `[[1,1],[1,0]]^n` by binary exponentiation.
pub fn inclusion_power(n: u64) -> Matrix2 {
    Matrix2::inclusion().pow(n)
}

/// Two-node-per-level Bratteli diagram of the inductive system `A_0 -> A_1 -> ...`.
#[derive(Debug, Clone, Serialize)]
pub struct BratteliDiagram {
    pub levels: Vec<DimensionVector>,
    /// Edge multiplicities from level `n` (columns L, S) to level `n+1` (rows L, S).
    pub edges: [[u8; 2]; 2],
}

impl BratteliDiagram {
    pub fn new(levels: usize) -> Self {
        let mut out = Vec::with_capacity(levels);
        let mut v = DimensionVector::initial();
        for _ in 0..levels {
            out.push(v.clone());
            v = v.next();
        }
        Self {
            levels: out,
            edges: [[1, 1], [1, 0]],
        }
    }

    /// `node weight = sum of incoming source weights` at every level.
    pub fn is_consistent(&self) -> bool {
        self.levels.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            b.k == &a.k + &a.k_prime && b.k_prime == a.k
        })
    }

    /// Block shapes of the embedding `diag(M, N) -> diag(M, N, M)` between
    /// consecutive levels, as `(source block sizes, target block sequence)`.
    pub fn embedding_shape(&self, level: usize) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let v = self.levels.get(level)?;
        Some((
            vec![v.k.clone(), v.k_prime.clone()],
            vec![v.k.clone(), v.k_prime.clone(), v.k.clone()],
        ))
    }

    /// Graphviz rendering: nodes `L{n}`/`S{n}` labelled with their weights.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
        for v in &self.levels {
            s += &format!(
                "  L{0} [label=\"{1}\"];\n  S{0} [label=\"{2}\"];\n",
                v.level, v.k, v.k_prime
            );
        }
        for v in self.levels.iter().skip(1) {
            let (cur, prev) = (v.level, v.level - 1);
            s += &format!("  L{prev} -> L{cur};\n  S{prev} -> L{cur};\n  L{prev} -> S{cur};\n");
        }
        s.push_str("}\n");
        s
    }
}

/// The class `a + b*tau` in `K_0(A) = Z^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct K0Element {
    #[serde(with = "json_bigint")]
    pub a: BigInt,
    #[serde(with = "json_bigint")]
    pub b: BigInt,
}

impl K0Element {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn value(&self) -> GoldenRational {
        GoldenRational::golden(self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for K0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Membership in the finite-level cone
/// `f_n a + f_{n+1} b >= 0 and f_{n-1} a + f_n b >= 0`.
pub fn cone_member_finite(n: usize, e: &K0Element) -> bool {
    let (f_prev, f_n, f_next) = (fib_signed(n as i64 - 1), fib(n), fib(n + 1));
    let first = &f_n * &e.a + &f_next * &e.b;
    let second = &f_prev * &e.a + &f_n * &e.b;
    !first.is_negative() && !second.is_negative()
}

/// Membership in the limit cone `a + tau*b >= 0`, decided exactly.
pub fn cone_member_limit(e: &K0Element) -> bool {
    e.value().sign() >= 0
}

/// `R_n`: two prefixes of equal length are related iff their last entries agree.
pub fn prefix_equiv_rn(z: &IndexPrefix, w: &IndexPrefix) -> Result<bool, KTheoryError> {
    if z.len() != w.len() {
        return Err(KTheoryError::LengthMismatch(z.len(), w.len()));
    }
    Ok(z.bits().last() == w.bits().last())
}

/// Finite-window verdict on tail equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "index")]
pub enum TailVerdict {
    /// Entries agree at every index greater than `M` (with `M >= 0`).
    EquivalentFrom(usize),
    /// The final entries differ; no tail agreement is visible up to this index.
    DistinctThrough(usize),
    /// The window holds no entries.
    Inconclusive,
}

pub fn tail_equiv(z: &IndexPrefix, w: &IndexPrefix) -> Result<TailVerdict, KTheoryError> {
    if z.len() != w.len() {
        return Err(KTheoryError::LengthMismatch(z.len(), w.len()));
    }
    if z.is_empty() {
        return Ok(TailVerdict::Inconclusive);
    }
    let last = z.len() - 1;
    let disagreement = z.bits().iter().zip(w.bits()).rposition(|(a, b)| a != b);
    Ok(match disagreement {
        None => TailVerdict::EquivalentFrom(0),
        Some(i) if i == last => TailVerdict::DistinctThrough(last),
        Some(i) => TailVerdict::EquivalentFrom(i),
    })
}

/// Intercepts on the same leaf: `b - b'` lies in `Z + (1/tau)Z`.
pub fn leaf_equivalent(b: &GoldenRational, b_prime: &GoldenRational) -> bool {
    (b - b_prime).is_golden_integer()
}

/// `frac(start + k*step)` for `k = 0..count`.
pub fn rotation_orbit(
    start: &GoldenRational,
    count: usize,
    step: &GoldenRational,
) -> Vec<GoldenRational> {
    let mut out = Vec::with_capacity(count);
    let mut x = start.frac();
    for _ in 0..count {
        let next = (&x + step).frac();
        out.push(std::mem::replace(&mut x, next));
    }
    out
}
