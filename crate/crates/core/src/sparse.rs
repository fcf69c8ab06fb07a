//! Sparse operators with exact entries, and exact span computations.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{RadicalSum, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Parity {
    /// Parity of `E_ij`: odd iff `i·j < 0`.
    pub fn of_indices(i: i32, j: i32) -> Parity {
        if (i < 0) != (j < 0) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A square matrix stored column by column; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    parity: Parity,
    cols: Vec<BTreeMap<usize, RadicalSum>>,
}

/// A sparse vector: basis index → coefficient, zeros absent.
pub type SparseVector = BTreeMap<usize, RadicalSum>;

fn add_into(v: &mut SparseVector, idx: usize, x: &RadicalSum) {
    if x.is_zero() {
        return;
    }
    let slot = v.entry(idx).or_default();
    *slot += x;
    if slot.is_zero() {
        v.remove(&idx);
    }
}

impl SparseOperator {
    pub fn zero(dim: usize, parity: Parity) -> Self {
        SparseOperator {
            dim,
            parity,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn from_columns(parity: Parity, cols: Vec<SparseVector>) -> Self {
        let dim = cols.len();
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseOperator { dim, parity, cols }
    }

    pub fn diagonal(values: &[RadicalSum]) -> Self {
        let cols = values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut c = BTreeMap::new();
                if !v.is_zero() {
                    c.insert(k, v.clone());
                }
                c
            })
            .collect();
        SparseOperator {
            dim: values.len(),
            parity: Parity::Even,
            cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> RadicalSum {
        self.cols[col].get(&row).cloned().unwrap_or_default()
    }

    pub fn column(&self, col: usize) -> &SparseVector {
        &self.cols[col]
    }

    /// Nonzero entries sorted by `(row, col)`.
    pub fn entries(&self) -> Vec<(usize, usize, &RadicalSum)> {
        let mut v: Vec<_> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x)))
            .collect();
        v.sort_by_key(|(r, c, _)| (*r, *c));
        v
    }

    fn check_dims(&self, other: &SparseOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Sum, keeping the parity of `self`.
    pub fn add(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (c, col) in other.cols.iter().enumerate() {
            for (r, x) in col {
                add_into(&mut out.cols[c], *r, x);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparseOperator {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, q: &Rational) -> SparseOperator {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(r, x)| (*r, x.scale(q)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        SparseOperator {
            dim: self.dim,
            parity: self.parity,
            cols,
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> SparseOperator {
        self.parity = parity;
        self
    }

    /// `self · v`.
    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (k, b) in v {
            for (r, a) in &self.cols[*k] {
                add_into(&mut out, *r, &(a * b));
            }
        }
        out
    }

    /// Matrix product `self · other`; parities add.
    pub fn mul(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_dims(other)?;
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Ok(SparseOperator {
            dim: self.dim,
            parity: self.parity + other.parity,
            cols,
        })
    }

    pub fn transpose(&self) -> SparseOperator {
        let mut cols = vec![BTreeMap::new(); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                cols[*r].insert(c, x.clone());
            }
        }
        SparseOperator {
            dim: self.dim,
            parity: self.parity,
            cols,
        }
    }
}

/// `⟦A, B⟧ = AB - (-1)^{|A||B|} BA`.
pub fn super_bracket(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    if a.parity == Parity::Odd && b.parity == Parity::Odd {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

struct Entry<'a>(usize, usize, &'a RadicalSum);

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("row", &self.0)?;
        m.serialize_entry("col", &self.1)?;
        m.serialize_entry("value", self.2)?;
        m.end()
    }
}

impl Serialize for SparseOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self
            .entries()
            .into_iter()
            .map(|(r, c, x)| Entry(r, c, x))
            .collect();
        let mut st = s.serialize_struct("SparseOperator", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("parity", self.parity.as_str())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// An exact row-echelon basis of a subspace of `K^dim`, where `K` is the
/// field generated by the radicals that occur.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpan {
    /// pivot index → basis vector with coefficient 1 at the pivot and zero
    /// at every other pivot.
    rows: BTreeMap<usize, SparseVector>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    add_into(&mut v, *k, &-(&c * x));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inverse().expect("stored entries are nonzero");
        let v: SparseVector = v.iter().map(|(k, x)| (*k, x * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (k, x) in &v {
                    add_into(row, *k, &-(&c * x));
                }
            }
        }
        self.rows.insert(pivot, v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, SignedRadical};

    fn sq(d: u64) -> RadicalSum {
        SignedRadical::new(rat(1), d).unwrap().into()
    }

    fn op(parity: Parity, dim: usize, entries: &[(usize, usize, RadicalSum)]) -> SparseOperator {
        let mut cols = vec![SparseVector::new(); dim];
        for (r, c, x) in entries {
            cols[*c].insert(*r, x.clone());
        }
        SparseOperator::from_columns(parity, cols)
    }

    #[test]
    fn bracket_of_odd_with_itself_is_twice_square() {
        let x = op(Parity::Odd, 2, &[(0, 1, sq(2)), (1, 0, sq(3))]);
        let b = super_bracket(&x, &x).unwrap();
        let twice = x.mul(&x).unwrap().scale(&rat(2));
        assert_eq!(b, twice);
        assert_eq!(b.parity(), Parity::Even);
    }

    #[test]
    fn bracket_with_zero() {
        let a = op(Parity::Even, 3, &[(0, 2, sq(5))]);
        let z = SparseOperator::zero(3, Parity::Odd);
        let b = super_bracket(&a, &z).unwrap();
        assert!(b.is_zero());
        assert_eq!(b.parity(), Parity::Odd);
        assert!(matches!(
            super_bracket(&a, &SparseOperator::zero(2, Parity::Even)),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn transpose_and_entries() {
        let a = op(
            Parity::Odd,
            3,
            &[
                (2, 0, sq(2)),
                (0, 1, sq(3)),
                (0, 2, RadicalSum::from_int(4)),
            ],
        );
        let t = a.transpose();
        assert_eq!(t.get(0, 2), sq(2));
        assert_eq!(t.transpose(), a);
        let e: Vec<(usize, usize)> = a.entries().iter().map(|(r, c, _)| (*r, *c)).collect();
        assert_eq!(e, vec![(0, 1), (0, 2), (2, 0)]);
        let j = serde_json::to_string(&a).unwrap();
        assert!(j.starts_with(r#"{"dim":3,"parity":"odd","entries":[{"row":0,"col":1,"value":[{"coeff":"1","radicand":3}]}"#));
    }

    #[test]
    fn echelon_rank() {
        let mut s = EchelonSpan::new();
        let v1: SparseVector = [(0, sq(2)), (1, RadicalSum::from_int(1))].into();
        let v2: SparseVector = [(0, RadicalSum::from_int(2)), (1, sq(2))].into();
        assert!(s.insert(&v1));
        // v2 = √2 · v1
        assert!(!s.insert(&v2));
        let v3: SparseVector = [(1, sq(3))].into();
        assert!(s.insert(&v3));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[(0, RadicalSum::from_int(1))].into()));
    }
}
