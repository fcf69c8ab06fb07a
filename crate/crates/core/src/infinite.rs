//! Covariant gl(∞|∞) modules through stable infinite patterns.
//!
//! A stable pattern agrees with its top weight in every row above its
//! stability index `N`, so it is stored as the weight plus rows `1..=N`.
//! Generator actions are local in the rows, so they are computed on a
//! finite truncation of large enough rank and read back.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::action::{apply, Generator, Module};
use crate::error::{Error, Result};
use crate::patterns::{columns, highest_weight_pattern, validate, GZPattern};
use crate::scalars::{RadicalSum, SignedRadical};
use crate::schur::{partition_from_weight, super_dimension, HighestWeight};
use crate::sparse::{EchelonSpan, SparseVector};
use crate::verify::{Budget, Failure, VerificationReport};

/// `[..., m_{-2}, m_{-1}; m_1, m_2, ...]` with an eventually constant
/// negative side and a finitely supported positive side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableWeight {
    neg_tail: i64,
    /// `m_{-1}, m_{-2}, ...` until the tail value is reached.
    neg_exceptions: Vec<i64>,
    /// `m_1, ..., m_s`; every later label is zero.
    pos: Vec<i64>,
}

impl StableWeight {
    pub fn new(neg_tail: i64, neg_exceptions: Vec<i64>, pos: Vec<i64>) -> Result<Self> {
        let mut w = StableWeight {
            neg_tail,
            neg_exceptions,
            pos,
        };
        while w.neg_exceptions.last() == Some(&w.neg_tail) {
            w.neg_exceptions.pop();
        }
        while w.pos.last() == Some(&0) {
            w.pos.pop();
        }
        w.check()?;
        Ok(w)
    }

    pub fn zero() -> Self {
        StableWeight {
            neg_tail: 0,
            neg_exceptions: Vec::new(),
            pos: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.neg_tail < 0 || self.neg_exceptions.iter().chain(&self.pos).any(|v| *v < 0) {
            return Err(Error::InvalidWeight(format!("{self}: negative label")));
        }
        let mut neg = self.neg_exceptions.clone();
        neg.push(self.neg_tail);
        if neg.windows(2).any(|w| w[0] > w[1]) || self.pos.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "{self}: labels must weakly decrease"
            )));
        }
        if self.m(-1) < self.pos.len() as i64 {
            return Err(Error::InvalidWeight(format!(
                "{self}: m_-1 = {} but {} positive labels are nonzero",
                self.m(-1),
                self.pos.len()
            )));
        }
        Ok(())
    }

    pub fn neg_tail(&self) -> i64 {
        self.neg_tail
    }

    pub fn neg_exceptions(&self) -> &[i64] {
        &self.neg_exceptions
    }

    pub fn pos(&self) -> &[i64] {
        &self.pos
    }

    /// `m_i` for any nonzero index.
    pub fn m(&self, i: i32) -> i64 {
        let k = i.unsigned_abs() as usize;
        if i < 0 {
            self.neg_exceptions
                .get(k - 1)
                .copied()
                .unwrap_or(self.neg_tail)
        } else {
            self.pos.get(k - 1).copied().unwrap_or(0)
        }
    }

    /// The signature `[m]^s`: labels of the columns present in row `s`.
    pub fn row(&self, s: usize) -> Vec<i64> {
        columns(s).map(|i| self.m(i)).collect()
    }

    /// `[m]^{2n}` as a gl(n|n) highest weight.
    pub fn finite(&self, n: usize) -> HighestWeight {
        let n = n as i32;
        let neg = (-n..0).map(|i| self.m(i)).collect();
        let pos = (1..=n).map(|i| self.m(i)).collect();
        HighestWeight::new(neg, pos).expect("restriction of a valid stable weight")
    }
}

impl fmt::Display for StableWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut neg = vec![self.neg_tail];
        neg.extend(self.neg_exceptions.iter().rev());
        let pos: Vec<i64> = self.pos.iter().copied().chain([0]).collect();
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "[...{};{}...]", join(&neg), join(&pos))
    }
}

/// Parses `"...t,a,b;c,d..."`. The leftmost negative label repeats forever
/// to the left; positive labels not given are zero. The ellipses and
/// brackets are optional, so a finite highest weight string also parses.
impl FromStr for StableWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .replace('…', "...");
        let t = t.trim().trim_start_matches("...").trim_end_matches("...");
        let Some((neg, pos)) = t.split_once(';') else {
            return Err(Error::Parse(format!("stable weight {s:?} needs a ';'")));
        };
        let list = |side: &str| -> Result<Vec<i64>> {
            side.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<i64>()
                        .map_err(|e| Error::Parse(format!("{x:?} in {s:?}: {e}")))
                })
                .collect()
        };
        let neg = list(neg)?;
        let pos = list(pos)?;
        let tail = neg.first().copied().unwrap_or(0);
        StableWeight::new(tail, neg.into_iter().rev().collect(), pos)
    }
}

impl Serialize for StableWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StableWeight", 3)?;
        st.serialize_field("negTail", &self.neg_tail)?;
        st.serialize_field("negExceptions", &self.neg_exceptions)?;
        st.serialize_field("pos", &self.pos)?;
        st.end()
    }
}

/// An infinite pattern that agrees with its top weight above row `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StablePattern {
    weight: StableWeight,
    /// Rows `1..=N`, in the ragged layout of [`GZPattern`].
    rows: Vec<Vec<i64>>,
}

impl StablePattern {
    /// Validates the data and drops trailing rows that agree with the top
    /// weight, so the stored length is the stability index.
    pub fn new(weight: StableWeight, mut rows: Vec<Vec<i64>>) -> Result<Self> {
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != columns(idx + 1).count() {
                return Err(Error::MalformedPattern(format!(
                    "row {} must have {} entries, got {}",
                    idx + 1,
                    columns(idx + 1).count(),
                    row.len()
                )));
            }
        }
        while let Some(last) = rows.last() {
            if *last == weight.row(rows.len()) {
                rows.pop();
            } else {
                break;
            }
        }
        let p = StablePattern { weight, rows };
        validate(&p.materialize(p.stability_index().div_ceil(2) + 1))?;
        Ok(p)
    }

    pub fn weight(&self) -> &StableWeight {
        &self.weight
    }

    pub fn stability_index(&self) -> usize {
        self.rows.len()
    }

    pub fn explicit_rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Row `s`, explicit or read from the top weight.
    pub fn row(&self, s: usize) -> Vec<i64> {
        match self.rows.get(s - 1) {
            Some(r) => r.clone(),
            None => self.weight.row(s),
        }
    }

    pub fn get(&self, i: i32, s: usize) -> Result<i64> {
        let pos = columns(s)
            .position(|c| c == i)
            .ok_or(Error::InvalidPosition { column: i, row: s })?;
        Ok(self.row(s)[pos])
    }

    fn materialize(&self, n: usize) -> GZPattern {
        let rows = (1..=2 * n).map(|s| self.row(s)).collect();
        GZPattern::from_rows(n, rows).expect("rows follow the ragged layout")
    }

    /// Reads a finite pattern whose top row is `[m]^{2n}` back as a stable
    /// pattern with canonical stability index.
    fn from_finite(weight: &StableWeight, p: &GZPattern) -> StablePattern {
        let mut rows = p.rows().to_vec();
        while let Some(last) = rows.last() {
            if *last == weight.row(rows.len()) {
                rows.pop();
            } else {
                break;
            }
        }
        StablePattern {
            weight: weight.clone(),
            rows,
        }
    }
}

impl Serialize for StablePattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StablePattern", 5)?;
        st.serialize_field("negTail", &self.weight.neg_tail)?;
        st.serialize_field("negExceptions", &self.weight.neg_exceptions)?;
        st.serialize_field("pos", &self.weight.pos)?;
        st.serialize_field("stabilityIndex", &self.rows.len())?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

impl fmt::Display for StablePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}  N = {}", self.weight, self.stability_index())?;
        let shown = self.stability_index().max(1);
        write!(f, "{}", self.materialize(shown.div_ceil(2)))
    }
}

/// The pattern all of whose rows are the top weight.
pub fn infinite_highest_weight(weight: &StableWeight) -> StablePattern {
    StablePattern {
        weight: weight.clone(),
        rows: Vec::new(),
    }
}

/// The lower `2n` rows as a gl(n|n) pattern with top row `[m]^{2n}`.
pub fn truncate(p: &StablePattern, n: usize) -> Result<GZPattern> {
    if 2 * n < p.stability_index() {
        return Err(Error::TruncationTooShallow {
            n,
            index: p.stability_index(),
        });
    }
    Ok(p.materialize(n))
}

/// Smallest gl(n|n) containing `g`.
fn generator_rank(g: Generator) -> usize {
    match g {
        Generator::RaiseI1(i) | Generator::LowerI1(i) => i + 1,
        _ => g.index(),
    }
}

pub fn infinite_apply(
    g: Generator,
    p: &StablePattern,
) -> Result<Vec<(StablePattern, SignedRadical)>> {
    if g.index() == 0 {
        return Err(Error::InvalidGenerator(format!("{g}")));
    }
    // one spare rank keeps the top row of the truncation out of reach of g
    let n = generator_rank(g).max(p.stability_index().div_ceil(2)) + 1;
    let terms = apply(g, &p.materialize(n))?;
    Ok(terms
        .into_iter()
        .map(|(q, c)| (StablePattern::from_finite(&p.weight, &q), c))
        .collect())
}

fn odd_lowerings(n: usize) -> Vec<Generator> {
    Generator::raising(n)
        .into_iter()
        .map(Generator::star)
        .collect()
}

/// Stable patterns reached from the highest weight by at most `depth`
/// odd lowering generators of gl(n|n).
pub fn lowering_orbit(weight: &StableWeight, n: usize, depth: usize) -> Result<Vec<StablePattern>> {
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut out = vec![infinite_highest_weight(weight)];
    seen.insert(Vec::new());
    let mut frontier = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for g in odd_lowerings(n) {
                for (q, _) in infinite_apply(g, p)? {
                    if seen.insert(q.rows.clone()) {
                        next.push(q);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

fn term_map(terms: Vec<(GZPattern, SignedRadical)>) -> BTreeMap<Vec<Vec<i64>>, RadicalSum> {
    let mut m: BTreeMap<Vec<Vec<i64>>, RadicalSum> = BTreeMap::new();
    for (q, c) in terms {
        *m.entry(q.rows().to_vec()).or_default() += &RadicalSum::from(c);
    }
    m.retain(|_, v| !v.is_zero());
    m
}

fn show_terms(m: &BTreeMap<Vec<Vec<i64>>, RadicalSum>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{v}·{k:?}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// For every stable pattern within 4 odd lowerings of the highest weight
/// and every gl(n|n) generator, the action commutes with truncation to
/// gl(n|n), term by term. Each emitted pattern is also checked to be
/// canonical and valid.
pub fn check_truncation_consistency(
    weight: &StableWeight,
    n: usize,
    budget: &Budget,
) -> Result<VerificationReport> {
    let hw = weight.finite(n);
    budget.admit(&hw)?;
    let sample = lowering_orbit(weight, n, 4)?;
    let cases: Vec<(&StablePattern, Generator)> = sample
        .iter()
        .flat_map(|p| Generator::all(n).into_iter().map(move |g| (p, g)))
        .collect();
    let outcomes: Vec<(Vec<Option<Failure>>, usize, usize)> = cases
        .par_iter()
        .map(|&(p, g)| -> Result<_> {
            let loc = format!("{g} on {:?}", p.rows);
            let emitted = infinite_apply(g, p)?;
            let mut fails = Vec::new();
            let mut grown = 0;
            let mut lifted = Vec::new();
            for (q, c) in &emitted {
                grown = grown.max(q.stability_index());
                let canonical = q
                    .rows
                    .last()
                    .map_or(true, |r| *r != q.weight.row(q.rows.len()));
                let valid = validate(&q.materialize(q.stability_index().div_ceil(2) + 1)).is_ok();
                fails.push((!(canonical && valid)).then(|| Failure {
                    relation: "emitted pattern is canonical and valid".into(),
                    location: loc.clone(),
                    expected: "canonical, valid".into(),
                    got: format!("{:?}", q.rows),
                }));
                lifted.push((truncate(q, n)?, c.clone()));
            }
            let lhs = term_map(lifted);
            let rhs = term_map(apply(g, &truncate(p, n)?)?);
            fails.push((lhs != rhs).then(|| Failure {
                relation: "truncate ∘ action = action ∘ truncate".into(),
                location: loc,
                expected: show_terms(&rhs),
                got: show_terms(&lhs),
            }));
            Ok((fails, p.stability_index(), grown))
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new("truncation")
        .with_param("weight", weight.to_string())
        .with_param("n", n)
        .with_param("patterns", sample.len());
    let mut max_in = 0;
    let mut max_out = 0;
    for (fails, n_in, n_out) in outcomes {
        max_in = max_in.max(n_in);
        max_out = max_out.max(n_out);
        for f in fails {
            report.record(f);
        }
    }
    let top = truncate(&infinite_highest_weight(weight), n)?;
    let hwp = highest_weight_pattern(&hw)?;
    report.record((top != hwp).then(|| Failure {
        relation: "truncated highest weight pattern".into(),
        location: format!("n = {n}"),
        expected: format!("{:?}", hwp.rows()),
        got: format!("{:?}", top.rows()),
    }));
    let report = report
        .with_param("max_stability_index_in", max_in)
        .with_param("max_stability_index_out", max_out);
    Ok(report.finish())
}

/// Spans the orbit of the truncated highest weight vector under all
/// gl(n|n) generators and compares its rank with the module dimension.
pub fn connectivity_probe(
    weight: &StableWeight,
    n: usize,
    budget: &Budget,
) -> Result<VerificationReport> {
    let hw = weight.finite(n);
    budget.admit(&hw)?;
    let expected = super_dimension(&partition_from_weight(&hw), n, n)? as usize;
    let module = Module::new(&hw)?;
    let ops = Generator::all(n)
        .into_par_iter()
        .map(|g| module.generator_matrix(g))
        .collect::<Result<Vec<_>>>()?;
    let top = truncate(&infinite_highest_weight(weight), n)?;
    let start = module.basis().index_of(&top).ok_or_else(|| {
        Error::FormulaIntegrity("highest weight pattern outside its basis".into())
    })?;
    let mut span = EchelonSpan::new();
    let v: SparseVector = [(start, RadicalSum::one())].into();
    span.insert(&v);
    let mut queue = vec![v];
    while let Some(v) = queue.pop() {
        if span.rank() == module.dim() {
            break;
        }
        for op in &ops {
            let w = op.apply(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    let mut report = VerificationReport::new("connectivity")
        .with_param("weight", weight.to_string())
        .with_param("n", n)
        .with_param("dim", expected)
        .with_param("rank", span.rank());
    report.record((span.rank() != expected).then(|| Failure {
        relation: "orbit of the highest weight vector spans the module".into(),
        location: format!("{hw}"),
        expected: expected.to_string(),
        got: span.rank().to_string(),
    }));
    Ok(report.finish())
}
