//! Odd Gel'fand-Zetlin patterns for covariant gl(n|n) modules.
//!
//! Rows are numbered 1 (bottom) to 2n (top). Row `2p` carries columns
//! `-p..-1` and `1..p`; row `2p-1` carries `-p..-1` and `1..p-1`. Each row
//! is the highest weight of a subalgebra in the chain
//! gl(n|n) ⊃ gl(n|n-1) ⊃ gl(n-1|n-1) ⊃ ... ⊃ gl(1|0).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schur::HighestWeight;

/// Number of negative and positive columns in row `s`.
pub fn row_shape(s: usize) -> (usize, usize) {
    let p = s.div_ceil(2);
    (p, if s % 2 == 0 { p } else { p - 1 })
}

/// Columns of row `s`, negative ones first.
pub fn columns(s: usize) -> impl Iterator<Item = i32> {
    let (a, b) = row_shape(s);
    (-(a as i32)..0).chain(1..=b as i32)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GZPattern {
    n: usize,
    /// `rows[s - 1]` is row `s`: negative columns `-p..-1`, then `1..`.
    rows: Vec<Vec<i64>>,
}

impl GZPattern {
    /// Builds a pattern from rows listed bottom-up, checking only the shape.
    pub fn from_rows(n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != 2 * n {
            return Err(Error::MalformedPattern(format!(
                "gl({n}|{n}) needs {} rows, got {}",
                2 * n,
                rows.len()
            )));
        }
        for (idx, row) in rows.iter().enumerate() {
            let (a, b) = row_shape(idx + 1);
            if row.len() != a + b {
                return Err(Error::MalformedPattern(format!(
                    "row {} must have {} entries, got {}",
                    idx + 1,
                    a + b,
                    row.len()
                )));
            }
        }
        Ok(GZPattern { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows bottom-up.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, s: usize) -> &[i64] {
        &self.rows[s - 1]
    }

    fn slot(s: usize, i: i32) -> Option<usize> {
        let (a, b) = row_shape(s);
        if i < 0 && (-i) as usize <= a {
            Some((a as i32 + i) as usize)
        } else if i > 0 && i as usize <= b {
            Some(a + i as usize - 1)
        } else {
            None
        }
    }

    pub fn has(&self, i: i32, s: usize) -> bool {
        s >= 1 && s <= 2 * self.n && Self::slot(s, i).is_some()
    }

    /// The label `m_{i,s}`.
    pub fn get(&self, i: i32, s: usize) -> Result<i64> {
        if !(1..=2 * self.n).contains(&s) {
            return Err(Error::InvalidPosition { column: i, row: s });
        }
        Self::slot(s, i)
            .map(|k| self.rows[s - 1][k])
            .ok_or(Error::InvalidPosition { column: i, row: s })
    }

    /// `m_{i,s}` for a position known to exist.
    pub(crate) fn m(&self, i: i32, s: usize) -> i64 {
        self.rows[s - 1][Self::slot(s, i).expect("position exists")]
    }

    pub(crate) fn set(&mut self, i: i32, s: usize, v: i64) {
        let k = Self::slot(s, i).expect("position exists");
        self.rows[s - 1][k] = v;
    }

    /// Copy with `m_{i,s}` shifted by `delta`.
    pub fn shifted(&self, i: i32, s: usize, delta: i64) -> GZPattern {
        let mut q = self.clone();
        q.set(i, s, self.m(i, s) + delta);
        q
    }

    pub fn row_sum(&self, s: usize) -> i64 {
        if s == 0 {
            0
        } else {
            self.rows[s - 1].iter().sum()
        }
    }

    pub fn top(&self) -> HighestWeight {
        let top = &self.rows[2 * self.n - 1];
        HighestWeight::new(top[..self.n].to_vec(), top[self.n..].to_vec())
            .unwrap_or_else(|_| HighestWeight::zero(self.n, self.n))
    }

    /// `θ_{i,s}`: `m_{i,s+1} - m_{i,s}` for negative `i` and odd `s`,
    /// `m_{i,s} - m_{i,s+1}` for positive `i` and even `s`.
    pub fn theta(&self, i: i32, s: usize) -> Result<i64> {
        let defined = if i < 0 {
            s % 2 == 1 && s < 2 * self.n && self.has(i, s)
        } else {
            i > 0 && s % 2 == 0 && s >= 2 && s < 2 * self.n && self.has(i, s)
        };
        if !defined {
            return Err(Error::UndefinedTheta { column: i, row: s });
        }
        Ok(self.th(i, s))
    }

    pub(crate) fn th(&self, i: i32, s: usize) -> i64 {
        if i < 0 {
            self.m(i, s + 1) - self.m(i, s)
        } else {
            self.m(i, s) - self.m(i, s + 1)
        }
    }

    /// Labels flattened from the top row down, left to right.
    pub fn flatten_top_down(&self) -> Vec<i64> {
        self.rows.iter().rev().flatten().copied().collect()
    }
}

/// Basis order: lexicographic on the flattened rows, top row first.
impl Ord for GZPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            self.rows
                .iter()
                .rev()
                .flatten()
                .cmp(other.rows.iter().rev().flatten())
        })
    }
}

impl PartialOrd for GZPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct PatternRepr {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl Serialize for GZPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PatternRepr {
            n: self.n,
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GZPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PatternRepr::deserialize(d)?;
        GZPattern::from_rows(r.n, r.rows).map_err(serde::de::Error::custom)
    }
}

/// Renders the triangle top row first, with a dashed rule `┊` between the negative and
/// positive columns.
impl fmt::Display for GZPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for s in (1..=2 * self.n).rev() {
            let (a, _) = row_shape(s);
            let cell = |v: &i64| format!("{v:>width$}");
            let left: Vec<String> = self.row(s)[..a].iter().map(cell).collect();
            let right: Vec<String> = self.row(s)[a..].iter().map(cell).collect();
            let pad = (self.n - a) * (width + 1);
            let left = format!("{:>pad$}{}", "", left.join(" "));
            let right = right.join(" ");
            let line = format!("{left} ┊ {right}");
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

/// A failed pattern condition.
///
/// Conditions 1-7 are the defining conditions of an odd GZ pattern;
/// condition 0 is nonnegativity of the lower labels and condition 8 is the
/// covariance bound `m_{-1,2p-1} ≥ #{i > 0 : m_{i,2p-2} > 0}` linking an
/// odd row to the row below it. Without 0 and 8 some arrays pass 1-7 while
/// carrying a negative weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub row: usize,
    pub column: Option<i32>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(
                f,
                "condition {} at row {}, column {}",
                self.condition, self.row, c
            ),
            None => write!(f, "condition {} at row {}", self.condition, self.row),
        }
    }
}

fn positives(p: &GZPattern, s: usize) -> i64 {
    let (a, _) = row_shape(s);
    p.row(s)[a..].iter().filter(|v| **v > 0).count() as i64
}

/// All violated conditions, in order of condition number then row.
pub fn violations(p: &GZPattern) -> Vec<Violation> {
    let n = p.n;
    let r = 2 * n;
    let mut out = Vec::new();
    let mut push = |condition: u8, row: usize, column: Option<i32>| {
        out.push(Violation {
            condition,
            row,
            column,
        })
    };
    for s in 1..r {
        for i in columns(s) {
            if p.m(i, s) < 0 {
                push(0, s, Some(i));
            }
        }
    }
    if n == 0 {
        return out;
    }
    // 1: top row is a covariant highest weight
    let top = p.row(r);
    for (idx, i) in columns(r).enumerate() {
        if top[idx] < 0 {
            push(1, r, Some(i));
        }
    }
    for i in (-(n as i32)..-1).chain(1..n as i32) {
        if p.m(i, r) < p.m(i + 1, r) {
            push(1, r, Some(i));
        }
    }
    if p.m(-1, r) < positives(p, r) {
        push(1, r, Some(-1));
    }
    // 2, 3: θ-conditions
    for q in 1..=n {
        for i in -(q as i32)..0 {
            if !(0..=1).contains(&(p.m(i, 2 * q) - p.m(i, 2 * q - 1))) {
                push(2, 2 * q - 1, Some(i));
            }
        }
    }
    for q in 1..n {
        for i in 1..=q as i32 {
            if !(0..=1).contains(&(p.m(i, 2 * q) - p.m(i, 2 * q + 1))) {
                push(3, 2 * q, Some(i));
            }
        }
    }
    // 4, 5: covariance within a row
    for q in 1..=n {
        if p.m(-1, 2 * q) < positives(p, 2 * q) {
            push(4, 2 * q, Some(-1));
        }
    }
    for q in 2..=n {
        if p.m(-1, 2 * q - 1) < positives(p, 2 * q - 1) {
            push(5, 2 * q - 1, Some(-1));
        }
    }
    // 6, 7: in-betweenness
    for q in 2..=n {
        for i in 1..q as i32 {
            let (hi, mid, lo) = (p.m(i, 2 * q), p.m(i, 2 * q - 1), p.m(i + 1, 2 * q));
            if !(hi >= mid && mid >= lo) {
                push(6, 2 * q - 1, Some(i));
            }
        }
    }
    for q in 1..n {
        for i in -(q as i32) - 1..=-2 {
            let (hi, mid, lo) = (p.m(i, 2 * q + 1), p.m(i + 1, 2 * q), p.m(i + 1, 2 * q + 1));
            if !(hi >= mid && mid >= lo) {
                push(7, 2 * q, Some(i + 1));
            }
        }
    }
    // 8: covariance across an odd row and the row below it
    for q in 2..=n {
        if p.m(-1, 2 * q - 1) < positives(p, 2 * q - 2) {
            push(8, 2 * q - 1, Some(-1));
        }
    }
    out
}

pub fn validate(p: &GZPattern) -> Result<()> {
    let v = violations(p);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidPattern(v))
    }
}

pub fn is_valid(p: &GZPattern) -> bool {
    violations(p).is_empty()
}

fn require_square(hw: &HighestWeight) -> Result<usize> {
    if hw.k() != hw.n() {
        return Err(Error::InvalidWeight(format!(
            "{hw} is a gl({}|{}) weight; patterns need k = n",
            hw.k(),
            hw.n()
        )));
    }
    Ok(hw.n())
}

pub fn highest_weight_pattern(hw: &HighestWeight) -> Result<GZPattern> {
    let n = require_square(hw)?;
    let rows = (1..=2 * n)
        .map(|s| {
            columns(s)
                .map(|i| hw.get(i).expect("column exists in top row"))
                .collect()
        })
        .collect();
    GZPattern::from_rows(n, rows)
}

/// Candidate rows `s - 1` below row `s`.
///
/// From an even row `2p` down to `2p-1` the negative labels drop by θ and
/// the positive ones interlace; from an odd row `2p+1` down to `2p` the
/// positive labels rise by θ and the negative ones interlace. Rows that are
/// not covariant highest weights, or that break the cross-row bound, are
/// discarded.
fn rows_below(upper: &[i64], s: usize) -> Vec<Vec<i64>> {
    let (ua, _) = row_shape(s);
    let (la, lb) = row_shape(s - 1);
    let at = |i: i32| -> i64 {
        if i < 0 {
            upper[(ua as i32 + i) as usize]
        } else {
            upper[ua + i as usize - 1]
        }
    };
    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(la + lb);
    for i in (-(la as i32)..0).chain(1..=lb as i32) {
        let c: Vec<i64> = if s % 2 == 0 {
            if i < 0 {
                let m = at(i);
                (0..=1).map(|t| m - t).filter(|v| *v >= 0).collect()
            } else {
                (at(i + 1)..=at(i)).collect()
            }
        } else if i > 0 {
            (0..=1).map(|t| at(i) + t).collect()
        } else {
            (at(i)..=at(i - 1)).collect()
        };
        choices.push(c);
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(la + lb);
    fn product(choices: &[Vec<i64>], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == choices.len() {
            out.push(cur.clone());
            return;
        }
        for v in &choices[cur.len()] {
            cur.push(*v);
            product(choices, cur, out);
            cur.pop();
        }
    }
    product(&choices, &mut cur, &mut out);
    out.retain(|row| {
        let (neg, pos) = row.split_at(la);
        if neg.windows(2).any(|w| w[0] < w[1]) || pos.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        let npos = pos.iter().filter(|v| **v > 0).count() as i64;
        if neg.last().copied().unwrap_or(0) < npos {
            return false;
        }
        // an odd row bounds the positive support of the row below it
        !(s % 2 == 1 && at(-1) < npos)
    });
    out
}

/// All patterns with top row `hw`, in basis order.
pub fn enumerate(hw: &HighestWeight) -> Result<Vec<GZPattern>> {
    let n = require_square(hw)?;
    if n == 0 {
        return Ok(vec![GZPattern { n: 0, rows: vec![] }]);
    }
    let top: Vec<i64> = columns(2 * n).map(|i| hw.get(i).unwrap()).collect();
    let mut stack: Vec<Vec<i64>> = vec![top];
    let mut out = Vec::new();
    fn rec(stack: &mut Vec<Vec<i64>>, n: usize, out: &mut Vec<GZPattern>) {
        let s = 2 * n + 1 - stack.len();
        if s == 1 {
            let rows = stack.iter().rev().cloned().collect();
            out.push(GZPattern { n, rows });
            return;
        }
        for row in rows_below(stack.last().unwrap(), s) {
            stack.push(row);
            rec(stack, n, out);
            stack.pop();
        }
    }
    rec(&mut stack, n, &mut out);
    out.sort();
    debug_assert!(out.iter().all(is_valid));
    Ok(out)
}

/// A pattern with top row `hw` built by choosing each lower row uniformly
/// among the rows allowed below the previous one. Not uniform over the
/// basis, but every basis pattern has positive probability.
pub fn random_pattern<R: rand::Rng + ?Sized>(hw: &HighestWeight, rng: &mut R) -> Result<GZPattern> {
    let n = require_square(hw)?;
    let mut rows: Vec<Vec<i64>> = vec![columns(2 * n).map(|i| hw.get(i).unwrap()).collect()];
    for s in (2..=2 * n).rev() {
        let below = rows_below(rows.last().unwrap(), s);
        let pick = rng.random_range(0..below.len());
        rows.push(below[pick].clone());
    }
    rows.reverse();
    GZPattern::from_rows(n, rows)
}

/// Weight components `(w_{-n}, ..., w_{-1}; w_1, ..., w_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector {
    pub neg: Vec<i64>,
    pub pos: Vec<i64>,
}

impl WeightVector {
    pub fn get(&self, i: i32) -> i64 {
        if i < 0 {
            self.neg[(self.neg.len() as i32 + i) as usize]
        } else {
            self.pos[i as usize - 1]
        }
    }

    /// Components in the order `-n..-1, 1..n`.
    pub fn to_vec(&self) -> Vec<i64> {
        self.neg.iter().chain(&self.pos).copied().collect()
    }
}

/// `E_{-i,-i}` eigenvalue: row sum `2i-1` minus row sum `2i-2`.
pub fn diag_neg(p: &GZPattern, i: usize) -> i64 {
    p.row_sum(2 * i - 1) - p.row_sum(2 * i - 2)
}

/// `E_{ii}` eigenvalue: row sum `2i` minus row sum `2i-1`.
pub fn diag_pos(p: &GZPattern, i: usize) -> i64 {
    p.row_sum(2 * i) - p.row_sum(2 * i - 1)
}

pub fn weight(p: &GZPattern) -> WeightVector {
    let n = p.n;
    WeightVector {
        neg: (1..=n).rev().map(|i| diag_neg(p, i)).collect(),
        pos: (1..=n).map(|i| diag_pos(p, i)).collect(),
    }
}

/// The ordered basis of a module with an index lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    hw: HighestWeight,
    patterns: Vec<GZPattern>,
    index: HashMap<GZPattern, usize>,
}

impl Basis {
    pub fn new(hw: &HighestWeight) -> Result<Self> {
        let patterns = enumerate(hw)?;
        let index = patterns
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        Ok(Basis {
            hw: hw.clone(),
            patterns,
            index,
        })
    }

    pub fn hw(&self) -> &HighestWeight {
        &self.hw
    }

    pub fn n(&self) -> usize {
        self.hw.n()
    }

    pub fn dim(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[GZPattern] {
        &self.patterns
    }

    pub fn index_of(&self, p: &GZPattern) -> Option<usize> {
        self.index.get(p).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{
        partition_from_weight, super_character, super_dimension, weight_from_partition, Partition,
    };

    fn hw(s: &str) -> HighestWeight {
        s.parse().unwrap()
    }

    fn pat(n: usize, rows: &[&[i64]]) -> GZPattern {
        GZPattern::from_rows(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(columns(1).collect::<Vec<_>>(), vec![-1]);
        assert_eq!(columns(2).collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(columns(3).collect::<Vec<_>>(), vec![-2, -1, 1]);
        assert_eq!(columns(4).collect::<Vec<_>>(), vec![-2, -1, 1, 2]);
        assert!(matches!(
            GZPattern::from_rows(1, vec![vec![0, 0], vec![1, 1]]),
            Err(Error::MalformedPattern(_))
        ));
        assert!(matches!(
            GZPattern::from_rows(2, vec![vec![0]]),
            Err(Error::MalformedPattern(_))
        ));
    }

    #[test]
    fn validate_examples() {
        for s in ["1;1", "1,1;0,0", "2,1;1,0", "3,2,2;1,1,0", "0;0"] {
            assert!(
                validate(&highest_weight_pattern(&hw(s)).unwrap()).is_ok(),
                "{s}"
            );
        }
        let bad = pat(1, &[&[2], &[1, 1]]);
        match validate(&bad) {
            Err(Error::InvalidPattern(v)) => {
                assert_eq!(v[0].condition, 2);
                assert_eq!((v[0].row, v[0].column), (1, Some(-1)));
            }
            other => panic!("{other:?}"),
        }
        assert!(validate(&pat(1, &[&[0], &[0, 0]])).is_ok());
    }

    #[test]
    fn cross_row_condition_is_needed() {
        // passes conditions 1-7 but E_{-2,-2} would be -1 on it
        let p = pat(2, &[&[0], &[1, 1], &[1, 0, 0], &[1, 1, 0, 0]]);
        let v = violations(&p);
        assert_eq!(v.iter().map(|x| x.condition).collect::<Vec<_>>(), vec![8]);
        assert_eq!(weight(&p).get(-2), -1);
    }

    #[test]
    fn negative_lower_label_is_flagged() {
        let p = pat(1, &[&[-1], &[0, 0]]);
        assert!(violations(&p).iter().any(|v| v.condition == 0));
    }

    #[test]
    fn enumerate_examples() {
        let b = enumerate(&hw("1;1")).unwrap();
        assert_eq!(b, vec![pat(1, &[&[0], &[1, 1]]), pat(1, &[&[1], &[1, 1]])]);
        assert_eq!(enumerate(&hw("0;0")).unwrap().len(), 1);
        assert_eq!(enumerate(&hw("1,1;0,0")).unwrap().len(), 8);
        assert!(enumerate(&hw("1;")).is_err());
    }

    /// All arrays with the right top row and lower labels in `0..=bound`
    /// that satisfy every condition.
    fn brute_force(top: &HighestWeight, bound: i64) -> Vec<GZPattern> {
        let n = top.n();
        let free: usize = (1..2 * n).map(|s| columns(s).count()).sum();
        let mut out = Vec::new();
        let mut vals = vec![0i64; free];
        loop {
            let mut it = vals.iter();
            let mut rows: Vec<Vec<i64>> = (1..2 * n)
                .map(|s| columns(s).map(|_| *it.next().unwrap()).collect())
                .collect();
            rows.push(columns(2 * n).map(|i| top.get(i).unwrap()).collect());
            let p = GZPattern::from_rows(n, rows).unwrap();
            if is_valid(&p) {
                out.push(p);
            }
            let mut k = 0;
            while k < free && vals[k] == bound {
                vals[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
            vals[k] += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_equals_validated_brute_force() {
        for s in [
            "1;1", "2;1", "3;0", "1,1;0,0", "2,0;0,0", "1,0;0,0", "2,1;1,0", "2,2;1,0",
        ] {
            let w = hw(s);
            let bound = w.neg()[0] + 1;
            assert_eq!(enumerate(&w).unwrap(), brute_force(&w, bound), "{s}");
        }
    }

    #[test]
    fn highest_weight_pattern_examples() {
        let p = highest_weight_pattern(&hw("1;1")).unwrap();
        assert_eq!(p.rows(), &[vec![1], vec![1, 1]]);
        let p = highest_weight_pattern(&hw("0;0")).unwrap();
        assert_eq!(p.rows(), &[vec![0], vec![0, 0]]);
        let p = highest_weight_pattern(&hw("2,0;0,0")).unwrap();
        assert_eq!(
            p.rows(),
            &[vec![0], vec![0, 0], vec![2, 0, 0], vec![2, 0, 0, 0]]
        );
    }

    #[test]
    fn weight_examples() {
        for s in ["1;1", "2,1;1,0", "3,2,1;1,0,0"] {
            let w = hw(s);
            let p = highest_weight_pattern(&w).unwrap();
            let wt = weight(&p);
            assert_eq!((wt.neg.as_slice(), wt.pos.as_slice()), (w.neg(), w.pos()));
        }
        let wt = weight(&pat(1, &[&[0], &[1, 1]]));
        assert_eq!((wt.neg, wt.pos), (vec![0], vec![2]));
        let wt = weight(&pat(1, &[&[0], &[0, 0]]));
        assert_eq!((wt.neg, wt.pos), (vec![0], vec![0]));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(pat(1, &[&[0], &[1, 1]]).theta(-1, 1).unwrap(), 1);
        assert_eq!(pat(1, &[&[1], &[1, 1]]).theta(-1, 1).unwrap(), 0);
        let p = highest_weight_pattern(&hw("2,1;1,0")).unwrap();
        assert!(matches!(p.theta(1, 1), Err(Error::UndefinedTheta { .. })));
        assert!(matches!(p.theta(-1, 2), Err(Error::UndefinedTheta { .. })));
        assert!(matches!(p.theta(1, 4), Err(Error::UndefinedTheta { .. })));
        for q in enumerate(&hw("2,1;1,0")).unwrap() {
            for (i, s) in [(-1, 1), (-2, 3), (-1, 3), (1, 2)] {
                assert!((0..=1).contains(&q.theta(i, s).unwrap()));
            }
        }
    }

    #[test]
    fn counts_characters_and_restriction() {
        for n in 1..=3usize {
            for size in 0..=if n == 3 { 5 } else { 6 } {
                for lam in Partition::all_of_size(size) {
                    let Ok(w) = weight_from_partition(&lam, n, n) else {
                        continue;
                    };
                    assert_eq!(partition_from_weight(&w), lam);
                    let pats = enumerate(&w).unwrap();
                    assert_eq!(pats.len() as u64, super_dimension(&lam, n, n).unwrap());
                    let mut chr = crate::schur::Character::new();
                    for p in &pats {
                        *chr.entry(weight(p).to_vec()).or_insert(0) += 1;
                    }
                    assert_eq!(chr, super_character(&lam, n, n).unwrap());
                    // rows below the top form gl(n|n-1) modules, each once
                    let mut by_row: HashMap<Vec<i64>, u64> = HashMap::new();
                    for p in &pats {
                        *by_row.entry(p.row(2 * n - 1).to_vec()).or_insert(0) += 1;
                    }
                    for (row, count) in by_row {
                        let sub = HighestWeight::new(row[..n].to_vec(), row[n..].to_vec()).unwrap();
                        let sigma = partition_from_weight(&sub);
                        assert!(
                            crate::schur::vertical_strip_predecessors(&lam, n, n).contains(&sigma)
                        );
                        assert_eq!(count, super_dimension(&sigma, n, n - 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn random_patterns_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let w = hw("5,3,3,2;2,1,0,0");
        for _ in 0..200 {
            let p = random_pattern(&w, &mut rng).unwrap();
            assert!(is_valid(&p), "{:?}", p.rows());
            assert_eq!(p.top(), w);
        }
    }

    #[test]
    fn json_form() {
        let p = pat(1, &[&[0], &[1, 1]]);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"n":1,"rows":[[0],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<GZPattern>(&j).unwrap(), p);
    }

    #[test]
    fn text_form() {
        let p = highest_weight_pattern(&hw("2,1;1,0")).unwrap();
        let t = p.to_string();
        assert_eq!(t.lines().next().unwrap(), "2 1 ┊ 1 0");
        assert_eq!(t.lines().last().unwrap(), "  1 ┊");
    }
}
