//! Partitions, hook conditions, highest weights of covariant modules, strip
//! branchings, and supersymmetric Schur dimensions and characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition, stored as weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Accepts weakly decreasing parts; trailing zeros are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The `i`-th part, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// All partitions of `size`, in reverse lexicographic order.
    pub fn all_of_size(size: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// `λ_{k+1} ≤ n`.
pub fn in_hook(lambda: &Partition, k: usize, n: usize) -> bool {
    lambda.part(k + 1) as usize <= n
}

fn check_hook(lambda: &Partition, k: usize, n: usize) -> Result<()> {
    if in_hook(lambda, k, n) {
        Ok(())
    } else {
        Err(Error::HookViolation {
            partition: lambda.to_string(),
            k,
            n,
        })
    }
}

/// Highest weight `[m_{-k}, ..., m_{-1}; m_1, ..., m_n]` of a covariant
/// gl(k|n) module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    neg: Vec<i64>,
    pos: Vec<i64>,
}

impl HighestWeight {
    /// `neg` lists `m_{-k}, ..., m_{-1}` left to right, `pos` lists
    /// `m_1, ..., m_n`.
    pub fn new(neg: Vec<i64>, pos: Vec<i64>) -> Result<Self> {
        let hw = HighestWeight { neg, pos };
        hw.check()?;
        Ok(hw)
    }

    fn check(&self) -> Result<()> {
        if let Some(v) = self.neg.iter().chain(&self.pos).find(|v| **v < 0) {
            return Err(Error::InvalidWeight(format!("{self}: negative label {v}")));
        }
        if self.neg.windows(2).any(|w| w[0] < w[1]) || self.pos.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "{self}: labels must weakly decrease"
            )));
        }
        let positive = self.pos.iter().filter(|v| **v > 0).count() as i64;
        let Some(&m_1) = self.neg.last() else {
            return Ok(());
        };
        if m_1 < positive {
            return Err(Error::InvalidWeight(format!(
                "{self}: m_-1 = {m_1} but {positive} positive labels are nonzero"
            )));
        }
        Ok(())
    }

    pub fn zero(k: usize, n: usize) -> Self {
        HighestWeight {
            neg: vec![0; k],
            pos: vec![0; n],
        }
    }

    pub fn k(&self) -> usize {
        self.neg.len()
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// `m_{-k}, ..., m_{-1}`.
    pub fn neg(&self) -> &[i64] {
        &self.neg
    }

    /// `m_1, ..., m_n`.
    pub fn pos(&self) -> &[i64] {
        &self.pos
    }

    /// The label `m_i` for `i ∈ {-k..-1, 1..n}`.
    pub fn get(&self, i: i32) -> Option<i64> {
        if i < 0 {
            let idx = self.neg.len() as i32 + i;
            (idx >= 0).then(|| self.neg[idx as usize])
        } else if i > 0 {
            self.pos.get(i as usize - 1).copied()
        } else {
            None
        }
    }

    pub fn size(&self) -> i64 {
        self.neg.iter().chain(&self.pos).sum()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "[{};{}]", j(&self.neg), j(&self.pos))
    }
}

impl FromStr for HighestWeight {
    type Err = Error;

    /// Parses `"m_-k,...,m_-1;m_1,...,m_n"`, optionally wrapped in brackets.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = t
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("highest weight {s:?} needs a ';' separator")))?;
        let side = |x: &str| -> Result<Vec<i64>> {
            let x = x.trim();
            if x.is_empty() {
                return Ok(Vec::new());
            }
            x.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("bad label {v:?} in {s:?}: {e}")))
                })
                .collect()
        };
        HighestWeight::new(side(a)?, side(b)?)
    }
}

impl Serialize for HighestWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HighestWeight", 2)?;
        st.serialize_field("neg", &self.neg)?;
        st.serialize_field("pos", &self.pos)?;
        st.end()
    }
}

pub fn weight_from_partition(lambda: &Partition, k: usize, n: usize) -> Result<HighestWeight> {
    check_hook(lambda, k, n)?;
    let conj = lambda.conjugate();
    // m_{-k..-1} = λ_1..λ_k
    let neg = (1..=k).map(|i| lambda.part(i) as i64).collect();
    let pos = (1..=n)
        .map(|i| (conj.part(i) as i64 - k as i64).max(0))
        .collect();
    HighestWeight::new(neg, pos)
}

/// Inverse of [`weight_from_partition`].
///
/// The first `k` parts are read off the negative labels; the remaining
/// parts are `λ_{k+i} = #{j : m_j ≥ i}`, which undoes
/// `m_j = max(0, λ'_j - k)`.
pub fn partition_from_weight(hw: &HighestWeight) -> Partition {
    let mut parts: Vec<u32> = hw.neg().iter().map(|&v| v as u32).collect();
    let top = hw.pos().first().copied().unwrap_or(0);
    for i in 1..=top {
        parts.push(hw.pos().iter().filter(|&&m| m >= i).count() as u32);
    }
    Partition::new(parts).expect("valid highest weight gives a partition")
}

/// Parts of `σ` with `σ_i ∈ [lo_i, hi_i]`, weakly decreasing, listed with
/// the last part varying slowest, each coordinate descending.
fn boxed_partitions(lo: &[u32], hi: &[u32]) -> Vec<Partition> {
    fn rec(i: usize, lo: &[u32], hi: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lo.len() {
            let mut v = cur.clone();
            v.reverse();
            out.push(v);
            return;
        }
        // cur holds σ_len, σ_len-1, ... built from the end
        let floor = cur.last().copied().unwrap_or(0);
        for v in (lo[lo.len() - 1 - i].max(floor)..=hi[hi.len() - 1 - i]).rev() {
            cur.push(v);
            rec(i + 1, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(0, lo, hi, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|v| Partition::new(v).expect("bounds keep parts decreasing"))
        .collect()
}

/// All `σ` in the `(k, n-1)`-hook with `λ/σ` a vertical strip.
pub fn vertical_strip_predecessors(lambda: &Partition, k: usize, n: usize) -> Vec<Partition> {
    let hi = lambda.parts().to_vec();
    let lo: Vec<u32> = hi.iter().map(|p| p - 1).collect();
    boxed_partitions(&lo, &hi)
        .into_iter()
        .filter(|s| n > 0 && in_hook(s, k, n - 1) || n == 0 && in_hook(s, k, 0))
        .collect()
}

/// All `σ` in the `(k-1, n)`-hook with `λ/σ` a horizontal strip.
pub fn horizontal_strip_predecessors(lambda: &Partition, k: usize, n: usize) -> Vec<Partition> {
    let hi = lambda.parts().to_vec();
    let lo: Vec<u32> = (1..=hi.len()).map(|i| lambda.part(i + 1)).collect();
    let k1 = k.saturating_sub(1);
    boxed_partitions(&lo, &hi)
        .into_iter()
        .filter(|s| in_hook(s, k1, n))
        .collect()
}

/// An exponent vector `(a_{-k}, ..., a_{-1}; b_1, ..., b_n)` of a monomial
/// `∏ x_i^{a_i} ∏ y_j^{b_j}`.
pub type Exponents = Vec<i64>;

/// Multiset of monomials, as exponent vector → multiplicity.
pub type Character = BTreeMap<Exponents, u64>;

/// Which variable the branching recursion removes at `(k, n)`: `y_n` while
/// `n ≥ k`, otherwise `x_{-k}`. Alternating this way walks the chain
/// gl(n|n) ⊃ gl(n|n-1) ⊃ gl(n-1|n-1) ⊃ ...
fn removes_y(k: usize, n: usize) -> bool {
    n > 0 && n >= k
}

fn predecessors(lambda: &Partition, k: usize, n: usize) -> (Vec<Partition>, usize, usize) {
    if removes_y(k, n) {
        (vertical_strip_predecessors(lambda, k, n), k, n - 1)
    } else {
        (horizontal_strip_predecessors(lambda, k, n), k - 1, n)
    }
}

pub fn super_dimension(lambda: &Partition, k: usize, n: usize) -> Result<u64> {
    check_hook(lambda, k, n)?;
    fn rec(
        l: &Partition,
        k: usize,
        n: usize,
        memo: &mut HashMap<(Partition, usize, usize), u64>,
    ) -> u64 {
        if k == 0 && n == 0 {
            return u64::from(l.is_empty());
        }
        let key = (l.clone(), k, n);
        if let Some(v) = memo.get(&key) {
            return *v;
        }
        let (preds, k1, n1) = predecessors(l, k, n);
        let v = preds.iter().map(|s| rec(s, k1, n1, memo)).sum();
        memo.insert(key, v);
        v
    }
    Ok(rec(lambda, k, n, &mut HashMap::new()))
}

/// The monomials of `s_λ(x_{-k}, ..., x_{-1} | y_1, ..., y_n)`.
pub fn super_character(lambda: &Partition, k: usize, n: usize) -> Result<Character> {
    check_hook(lambda, k, n)?;
    type Memo = HashMap<(Partition, usize, usize), Character>;
    fn rec(l: &Partition, k: usize, n: usize, memo: &mut Memo) -> Character {
        if k == 0 && n == 0 {
            let mut c = Character::new();
            if l.is_empty() {
                c.insert(Vec::new(), 1);
            }
            return c;
        }
        let key = (l.clone(), k, n);
        if let Some(c) = memo.get(&key) {
            return c.clone();
        }
        let (preds, k1, n1) = predecessors(l, k, n);
        let mut out = Character::new();
        for s in &preds {
            let e = (l.size() - s.size()) as i64;
            for (mono, mult) in rec(s, k1, n1, memo) {
                let mut v = mono;
                if removes_y(k, n) {
                    v.push(e);
                } else {
                    v.insert(0, e);
                }
                *out.entry(v).or_insert(0) += mult;
            }
        }
        memo.insert(key, out.clone());
        out
    }
    Ok(rec(lambda, k, n, &mut Memo::new()))
}
