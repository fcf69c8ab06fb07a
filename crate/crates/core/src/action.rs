//! Generator actions on the odd GZ basis and the operators they define.
//!
//! The off-diagonal generators are the odd root vectors `E_{-i,i}`,
//! `E_{-i-1,i}` and their transposes `E_{i,-i}`, `E_{i,-i-1}`. Each acts on
//! one row of a pattern: the `(-i,i)` pair on row `2i-1`, the `(-i-1,i)`
//! pair on row `2i`.
//!
//! Every coefficient has the form `prefactor · S · (N/D)^{1/2}` where `N`
//! and `D` are products of label differences. On atypical patterns some
//! factor of `D` can vanish while the prefactor does not. Writing the self
//! labels of the changing row as `z_1, ..., z_m` and the neighbouring labels
//! as `a_1, ..., a_m'`, the ratio `N/D` for term `t` is the residue of
//! `±∏(z - a_j) / ∏(z - z_j)` at `z = z_t`. In the singular case we cancel
//! coinciding poles and zeros before taking the residue, which is the
//! continuous extension of the formula in the labels.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::patterns::{diag_neg, diag_pos, is_valid, Basis, GZPattern};
use crate::scalars::{rat, RadicalSum, Rational, SignedRadical};
use crate::schur::HighestWeight;
use crate::sparse::{super_bracket, Parity, SparseOperator, SparseVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `E_{-i,-i}`
    DiagNeg(usize),
    /// `E_{ii}`
    DiagPos(usize),
    /// `E_{-i,i}`
    RaiseII(usize),
    /// `E_{-i-1,i}`
    RaiseI1(usize),
    /// `E_{i,-i}`
    LowerII(usize),
    /// `E_{i,-i-1}`
    LowerI1(usize),
}

impl Generator {
    /// The Weyl indices `(a, b)` of `E_ab`.
    pub fn indices(self) -> (i32, i32) {
        use Generator::*;
        match self {
            DiagNeg(i) => (-(i as i32), -(i as i32)),
            DiagPos(i) => (i as i32, i as i32),
            RaiseII(i) => (-(i as i32), i as i32),
            RaiseI1(i) => (-(i as i32) - 1, i as i32),
            LowerII(i) => (i as i32, -(i as i32)),
            LowerI1(i) => (i as i32, -(i as i32) - 1),
        }
    }

    pub fn index(self) -> usize {
        use Generator::*;
        match self {
            DiagNeg(i) | DiagPos(i) | RaiseII(i) | RaiseI1(i) | LowerII(i) | LowerI1(i) => i,
        }
    }

    /// The generator equal to `E_ab`, if there is one.
    pub fn from_indices(a: i32, b: i32) -> Option<Generator> {
        use Generator::*;
        let u = |x: i32| x.unsigned_abs() as usize;
        match (a, b) {
            (a, b) if a == b && a < 0 => Some(DiagNeg(u(a))),
            (a, b) if a == b && a > 0 => Some(DiagPos(u(a))),
            (a, b) if a < 0 && b > 0 && a == -b => Some(RaiseII(u(b))),
            (a, b) if a < 0 && b > 0 && a == -b - 1 => Some(RaiseI1(u(b))),
            (a, b) if a > 0 && b < 0 && b == -a => Some(LowerII(u(a))),
            (a, b) if a > 0 && b < 0 && b == -a - 1 => Some(LowerI1(u(a))),
            _ => None,
        }
    }

    pub fn parity(self) -> Parity {
        let (a, b) = self.indices();
        Parity::of_indices(a, b)
    }

    pub fn is_raising(self) -> bool {
        matches!(self, Generator::RaiseII(_) | Generator::RaiseI1(_))
    }

    pub fn is_lowering(self) -> bool {
        matches!(self, Generator::LowerII(_) | Generator::LowerI1(_))
    }

    /// The transposed generator (`E_ab ↦ E_ba`).
    pub fn star(self) -> Generator {
        let (a, b) = self.indices();
        Generator::from_indices(b, a).expect("generator set is closed under transpose")
    }

    pub fn check(self, n: usize) -> Result<()> {
        use Generator::*;
        let i = self.index();
        let ok = match self {
            DiagNeg(_) | DiagPos(_) | RaiseII(_) | LowerII(_) => (1..=n).contains(&i),
            RaiseI1(_) | LowerI1(_) => i >= 1 && i < n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(format!("{self} on gl({n}|{n})")))
        }
    }

    /// All generators of gl(n|n): diagonals, then raisings, then lowerings.
    pub fn all(n: usize) -> Vec<Generator> {
        use Generator::*;
        let mut v: Vec<Generator> = Vec::new();
        v.extend((1..=n).map(DiagNeg));
        v.extend((1..=n).map(DiagPos));
        v.extend(Self::raising(n));
        v.extend(Self::raising(n).into_iter().map(Generator::star));
        v
    }

    /// `E_{-1,1}, E_{-2,1}, E_{-2,2}, ..., E_{-n,n}`.
    pub fn raising(n: usize) -> Vec<Generator> {
        let mut v = Vec::new();
        for i in 1..=n {
            if i > 1 {
                v.push(Generator::RaiseI1(i - 1));
            }
            v.push(Generator::RaiseII(i));
        }
        v
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = self.indices();
        write!(f, "E({a},{b})")
    }
}

/// `l_{i,s}`: `m_{i,s} - i` for negative `i`, `-m_{i,s} + i` for positive.
pub fn l_value(p: &GZPattern, i: i32, s: usize) -> Result<i64> {
    let m = p.get(i, s)?;
    Ok(if i < 0 { m - i as i64 } else { -m + i as i64 })
}

fn l(p: &GZPattern, i: i32, s: usize) -> i64 {
    let m = p.m(i, s);
    if i < 0 {
        m - i as i64
    } else {
        -m + i as i64
    }
}

pub fn apply_diagonal(g: Generator, p: &GZPattern) -> Result<i64> {
    g.check(p.n())?;
    match g {
        Generator::DiagNeg(i) => Ok(diag_neg(p, i)),
        Generator::DiagPos(i) => Ok(diag_pos(p, i)),
        _ => Err(Error::InvalidGenerator(format!("{g} is not diagonal"))),
    }
}

/// `Σ_{s=1}^{a} Σ_{j=-s}^{-1} θ_{j,2s-1} + Σ_{s=1}^{b} Σ_{j=1}^{s} θ_{j,2s}`.
fn theta_prefix(p: &GZPattern, a: usize, b: usize) -> i64 {
    let mut t = 0;
    for s in 1..=a {
        for j in -(s as i32)..0 {
            t += p.th(j, 2 * s - 1);
        }
    }
    for s in 1..=b {
        for j in 1..=s as i32 {
            t += p.th(j, 2 * s);
        }
    }
    t
}

/// One term of an action formula before the square root is taken.
struct Term {
    column: i32,
    prefactor: i64,
    sign_exponent: i64,
    numer: Vec<i64>,
    denom: Vec<i64>,
    /// the whole fraction carries a leading minus sign
    negated: bool,
    /// position of this term's pole among the block's self labels
    self_index: usize,
}

/// Self labels and neighbour labels of the changing row.
struct Block {
    row: usize,
    /// shift applied to the changing label
    delta: i64,
    selfs: Vec<i64>,
    /// columns matching `selfs`, negative ones first
    cols: Vec<i32>,
    alist: Vec<i64>,
    /// `N/D = residue_sign · Res`
    residue_sign: i64,
    terms: Vec<Term>,
}

fn prod_range(range: impl Iterator<Item = i32>, f: impl Fn(i32) -> i64) -> Vec<i64> {
    range.map(f).collect()
}

/// Terms of `E_{-i,i}` (raise) or `E_{i,-i}` (lower) on row `2i-1`.
fn block_ii(p: &GZPattern, i: usize, raise: bool) -> Block {
    let ii = i as i32;
    let (r0, r1, r2) = (2 * i - 2, 2 * i - 1, 2 * i);
    let cols: Vec<i32> = (-ii..0).chain(1..ii).collect();
    let selfs = cols
        .iter()
        .map(|&k| if k < 0 { l(p, k, r2) } else { l(p, k, r0) + 1 })
        .collect();
    let alist = (-ii + 1..0)
        .map(|j| l(p, j, r0) + 1)
        .chain((1..=ii).map(|j| l(p, j, r2)))
        .collect();
    let mut terms = Vec::new();
    for (idx, &k) in cols.iter().enumerate() {
        if k < 0 {
            let th = p.th(k, r1);
            let sign_exponent =
                theta_prefix(p, i - 1, i - 1) + (-ii..k).map(|j| p.th(j, r1)).sum::<i64>();
            let lk = l(p, k, r2);
            let mut numer = prod_range(-ii + 1..0, |j| lk - l(p, j, r0) - 1);
            numer.extend(prod_range(1..=ii, |j| lk - l(p, j, r2)));
            let mut denom = prod_range((-ii..0).filter(|j| *j != k), |j| lk - l(p, j, r2));
            denom.extend(prod_range(1..ii, |j| lk - l(p, j, r0) - 1));
            terms.push(Term {
                column: k,
                prefactor: if raise { th } else { 1 - th },
                sign_exponent,
                numer,
                denom,
                negated: false,
                self_index: idx,
            });
        } else {
            let th = p.th(k, r0);
            let sign_exponent = theta_prefix(p, i - 1, i.saturating_sub(2))
                + (1..k).map(|j| p.th(j, r0)).sum::<i64>();
            let lk = l(p, k, r1);
            let (numer, denom) = if raise {
                let mut nu = prod_range(-ii + 1..0, |j| l(p, j, r0) - lk + 1);
                nu.extend(prod_range(1..=ii, |j| l(p, j, r2) - lk));
                let mut de = prod_range(-ii..0, |j| l(p, j, r2) - lk);
                de.extend(prod_range((1..ii).filter(|j| *j != k), |j| {
                    l(p, j, r0) - lk + 1
                }));
                (nu, de)
            } else {
                let mut nu = prod_range(-ii + 1..0, |j| l(p, j, r0) - lk);
                nu.extend(prod_range(1..=ii, |j| l(p, j, r2) - lk - 1));
                let mut de = prod_range(-ii..0, |j| l(p, j, r2) - lk - 1);
                de.extend(prod_range((1..ii).filter(|j| *j != k), |j| {
                    l(p, j, r0) - lk
                }));
                (nu, de)
            };
            terms.push(Term {
                column: k,
                prefactor: if raise { th } else { 1 - th },
                sign_exponent,
                numer,
                denom,
                negated: true,
                self_index: idx,
            });
        }
    }
    Block {
        row: r1,
        delta: if raise { 1 } else { -1 },
        selfs,
        cols,
        alist,
        residue_sign: 1,
        terms,
    }
}

/// Terms of `E_{-i-1,i}` (raise) or `E_{i,-i-1}` (lower) on row `2i`.
fn block_i1(p: &GZPattern, i: usize, raise: bool) -> Block {
    let ii = i as i32;
    let (r1, r2, r3) = (2 * i - 1, 2 * i, 2 * i + 1);
    let cols: Vec<i32> = (-ii..0).chain(1..=ii).collect();
    let selfs = cols
        .iter()
        .map(|&k| if k < 0 { l(p, k, r1) } else { l(p, k, r3) - 1 })
        .collect();
    let alist = (-ii - 1..0)
        .map(|j| l(p, j, r3) - 1)
        .chain((1..ii).map(|j| l(p, j, r1)))
        .collect();
    let shift = if raise { 0 } else { 1 };
    let mut terms = Vec::new();
    for (idx, &k) in cols.iter().enumerate() {
        if k < 0 {
            let th = p.th(k, r1);
            let sign_exponent =
                theta_prefix(p, i - 1, i - 1) + (-ii..k).map(|j| p.th(j, r1)).sum::<i64>();
            let (lk2, lk1) = (l(p, k, r2), l(p, k, r1));
            let mut numer = prod_range(-ii - 1..0, |j| lk2 - l(p, j, r3) + shift);
            numer.extend(prod_range(1..ii, |j| lk1 - l(p, j, r1)));
            let mut denom = prod_range((-ii..0).filter(|j| *j != k), |j| lk1 - l(p, j, r1));
            denom.extend(prod_range(1..=ii, |j| lk1 - l(p, j, r3) + 1));
            terms.push(Term {
                column: k,
                prefactor: if raise { th } else { 1 - th },
                sign_exponent,
                numer,
                denom,
                negated: true,
                self_index: idx,
            });
        } else {
            let th = p.th(k, r2);
            let sign_exponent =
                theta_prefix(p, i, i - 1) + (1..k).map(|j| p.th(j, r2)).sum::<i64>();
            let (lk3, lk2) = (l(p, k, r3), l(p, k, r2));
            let mut numer = prod_range(-ii - 1..0, |j| l(p, j, r3) - lk3);
            numer.extend(prod_range(1..ii, |j| l(p, j, r1) - lk2 + shift));
            let mut denom = prod_range(-ii..0, |j| l(p, j, r1) - lk3 + 1);
            denom.extend(prod_range((1..=ii).filter(|j| *j != k), |j| {
                l(p, j, r3) - lk3
            }));
            terms.push(Term {
                column: k,
                prefactor: if raise { th } else { 1 - th },
                sign_exponent,
                numer,
                denom,
                negated: false,
                self_index: idx,
            });
        }
    }
    Block {
        row: r2,
        delta: if raise { -1 } else { 1 },
        selfs,
        cols,
        alist,
        residue_sign: -1,
        terms,
    }
}

fn multiset(v: &[i64]) -> BTreeMap<i64, i64> {
    let mut m = BTreeMap::new();
    for x in v {
        *m.entry(*x).or_insert(0) += 1;
    }
    m
}

/// Residue at `selfs[t]` of `∏(z - a) / ∏(z - s)` after cancelling common
/// factors.
fn reduced_residue(selfs: &[i64], t: usize, alist: &[i64]) -> Result<Rational> {
    let z = selfs[t];
    let mut poles = multiset(selfs);
    let mut zeros = multiset(alist);
    for (v, c) in poles.iter_mut() {
        if let Some(d) = zeros.get_mut(v) {
            let m = (*c).min(*d);
            *c -= m;
            *d -= m;
        }
    }
    match poles.get(&z).copied().unwrap_or(0) {
        0 => return Ok(Rational::from_integer(0.into())),
        1 => {}
        _ => {
            return Err(Error::FormulaIntegrity(format!(
                "double pole at {z}: self labels {selfs:?}, neighbours {alist:?}"
            )))
        }
    }
    *poles.get_mut(&z).unwrap() -= 1;
    let mut r = rat(1);
    for (a, c) in zeros {
        for _ in 0..c {
            r *= rat(z - a);
        }
    }
    for (w, c) in poles {
        for _ in 0..c {
            r /= rat(z - w);
        }
    }
    Ok(r)
}

/// The squared magnitude `N/D` for one term, or `None` if it vanishes.
fn squared_coefficient(block: &Block, term: &Term) -> Result<Rational> {
    if !term.denom.contains(&0) {
        let mut q = rat(1);
        for f in &term.numer {
            q *= rat(*f);
        }
        for f in &term.denom {
            q /= rat(*f);
        }
        return Ok(if term.negated { -q } else { q });
    }
    // singular: a positive-column pole sharing its value with a
    // negative-column pole contributes nothing; the negative one carries
    // the whole residue
    let z = block.selfs[term.self_index];
    if term.column > 0
        && block
            .cols
            .iter()
            .zip(&block.selfs)
            .any(|(c, s)| *c < 0 && *s == z)
    {
        return Ok(rat(0));
    }
    Ok(reduced_residue(&block.selfs, term.self_index, &block.alist)? * rat(block.residue_sign))
}

fn evaluate(
    p: &GZPattern,
    block: Block,
    what: Generator,
) -> Result<Vec<(GZPattern, SignedRadical)>> {
    let mut out = Vec::new();
    for term in &block.terms {
        if term.prefactor == 0 {
            continue;
        }
        let q = squared_coefficient(&block, term)?;
        let c = SignedRadical::normalize(term.sign_exponent % 2 != 0, &q).map_err(|e| match e {
            Error::NegativeRadicand(v) => Error::FormulaIntegrity(format!(
                "{what}, column {}: negative radicand {v} on {:?}",
                term.column,
                p.rows()
            )),
            other => other,
        })?;
        if c.is_zero() {
            continue;
        }
        let target = p.shifted(term.column, block.row, block.delta);
        if !is_valid(&target) {
            return Err(Error::FormulaIntegrity(format!(
                "{what}, column {}: nonzero coefficient {c} into an invalid pattern {:?}",
                term.column,
                target.rows()
            )));
        }
        out.push((target, c));
    }
    Ok(out)
}

pub fn apply_raising(g: Generator, p: &GZPattern) -> Result<Vec<(GZPattern, SignedRadical)>> {
    g.check(p.n())?;
    match g {
        Generator::RaiseII(i) => evaluate(p, block_ii(p, i, true), g),
        Generator::RaiseI1(i) => evaluate(p, block_i1(p, i, true), g),
        _ => Err(Error::InvalidGenerator(format!(
            "{g} is not a raising generator"
        ))),
    }
}

pub fn apply_lowering(g: Generator, p: &GZPattern) -> Result<Vec<(GZPattern, SignedRadical)>> {
    g.check(p.n())?;
    match g {
        Generator::LowerII(i) => evaluate(p, block_ii(p, i, false), g),
        Generator::LowerI1(i) => evaluate(p, block_i1(p, i, false), g),
        _ => Err(Error::InvalidGenerator(format!(
            "{g} is not a lowering generator"
        ))),
    }
}

/// Any generator applied to one pattern, as a list of terms.
pub fn apply(g: Generator, p: &GZPattern) -> Result<Vec<(GZPattern, SignedRadical)>> {
    match g {
        Generator::DiagNeg(_) | Generator::DiagPos(_) => {
            let v = apply_diagonal(g, p)?;
            Ok(if v == 0 {
                Vec::new()
            } else {
                vec![(p.clone(), SignedRadical::from_rational(rat(v)))]
            })
        }
        g if g.is_raising() => apply_raising(g, p),
        g => apply_lowering(g, p),
    }
}

/// Order `-1, 1, -2, 2, ..., -n, n` in which consecutive indices are joined
/// by a generator.
pub fn odd_chain(n: usize) -> Vec<i32> {
    (1..=n as i32).flat_map(|i| [-i, i]).collect()
}

/// A covariant gl(n|n) module with its ordered basis.
#[derive(Debug)]
pub struct Module {
    basis: Basis,
    cache: std::sync::Mutex<HashMap<(i32, i32), SparseOperator>>,
}

impl Module {
    pub fn new(hw: &HighestWeight) -> Result<Self> {
        Ok(Module {
            basis: Basis::new(hw)?,
            cache: Default::default(),
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn generator_matrix(&self, g: Generator) -> Result<SparseOperator> {
        g.check(self.n())?;
        let cols: Vec<SparseVector> = self
            .basis
            .patterns()
            .par_iter()
            .map(|p| -> Result<SparseVector> {
                let mut col = SparseVector::new();
                for (q, c) in apply(g, p)? {
                    let r = self.basis.index_of(&q).ok_or_else(|| {
                        Error::FormulaIntegrity(format!("{g} leaves the basis: {:?}", q.rows()))
                    })?;
                    let slot = col.entry(r).or_default();
                    *slot += &RadicalSum::from(c);
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        Ok(SparseOperator::from_columns(g.parity(), cols))
    }

    fn check_index(&self, i: i32) -> Result<()> {
        let n = self.n() as i32;
        if i == 0 || i.abs() > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// `E_ab`. Generators are built directly; any other element is
    /// `⟦E_ac, E_cb⟧` where `c` is the neighbour of `a` on the odd chain in
    /// the direction of `b`.
    pub fn weyl_element(&self, a: i32, b: i32) -> Result<SparseOperator> {
        self.check_index(a)?;
        self.check_index(b)?;
        if let Some(m) = self.cache.lock().unwrap().get(&(a, b)) {
            return Ok(m.clone());
        }
        let m = match Generator::from_indices(a, b) {
            Some(g) => self.generator_matrix(g)?,
            None => {
                let chain = odd_chain(self.n());
                let pa = chain.iter().position(|x| *x == a).unwrap();
                let pb = chain.iter().position(|x| *x == b).unwrap();
                let c = if pa < pb {
                    chain[pa + 1]
                } else {
                    chain[pa - 1]
                };
                let left = self.weyl_element(a, c)?;
                let right = self.weyl_element(c, b)?;
                super_bracket(&left, &right)?
            }
        };
        self.cache.lock().unwrap().insert((a, b), m.clone());
        Ok(m)
    }

    /// All Weyl indices `-n..-1, 1..n`.
    pub fn indices(&self) -> Vec<i32> {
        let n = self.n() as i32;
        (-n..0).chain(1..=n).collect()
    }
}

pub fn generator_matrix(g: Generator, hw: &HighestWeight) -> Result<SparseOperator> {
    Module::new(hw)?.generator_matrix(g)
}

pub fn weyl_element(a: i32, b: i32, hw: &HighestWeight) -> Result<SparseOperator> {
    Module::new(hw)?.weyl_element(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{enumerate, highest_weight_pattern, weight};

    fn hw(s: &str) -> HighestWeight {
        s.parse().unwrap()
    }

    fn pat(n: usize, rows: &[&[i64]]) -> GZPattern {
        GZPattern::from_rows(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn sr(c: i64, d: u64) -> SignedRadical {
        SignedRadical::new(rat(c), d).unwrap()
    }

    #[test]
    fn l_value_examples() {
        let p = pat(1, &[&[1], &[1, 1]]);
        assert_eq!(l_value(&p, -1, 2).unwrap(), 2);
        assert_eq!(l_value(&p, 1, 2).unwrap(), 0);
        let z = highest_weight_pattern(&HighestWeight::zero(3, 3)).unwrap();
        assert_eq!(l_value(&z, -3, 6).unwrap(), 3);
        assert!(matches!(
            l_value(&p, 1, 1),
            Err(Error::InvalidPosition { .. })
        ));
    }

    #[test]
    fn diagonal_examples() {
        let top = highest_weight_pattern(&hw("1;1")).unwrap();
        assert_eq!(apply_diagonal(Generator::DiagPos(1), &top).unwrap(), 1);
        assert_eq!(
            apply_diagonal(Generator::DiagNeg(1), &pat(1, &[&[0], &[1, 1]])).unwrap(),
            0
        );
        let z = highest_weight_pattern(&HighestWeight::zero(2, 2)).unwrap();
        for g in Generator::all(2).into_iter().take(4) {
            assert_eq!(apply_diagonal(g, &z).unwrap(), 0);
        }
    }

    #[test]
    fn gl11_examples() {
        let p0 = pat(1, &[&[0], &[1, 1]]);
        let p1 = pat(1, &[&[1], &[1, 1]]);
        assert_eq!(
            apply_raising(Generator::RaiseII(1), &p0).unwrap(),
            vec![(p1.clone(), sr(1, 2))]
        );
        assert!(apply_raising(Generator::RaiseII(1), &p1)
            .unwrap()
            .is_empty());
        assert_eq!(
            apply_lowering(Generator::LowerII(1), &p1).unwrap(),
            vec![(p0.clone(), sr(1, 2))]
        );
        assert!(apply_lowering(Generator::LowerII(1), &p0)
            .unwrap()
            .is_empty());
        let z = highest_weight_pattern(&HighestWeight::zero(1, 1)).unwrap();
        assert!(apply_lowering(Generator::LowerII(1), &z)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn raisings_kill_highest_weight_pattern() {
        for s in ["1;1", "2,1;1,0", "2,2;1,1", "3,2,1;1,0,0", "2,2,2;1,1,0"] {
            let w = hw(s);
            let top = highest_weight_pattern(&w).unwrap();
            for g in Generator::raising(w.n()) {
                assert!(apply_raising(g, &top).unwrap().is_empty(), "{s} {g}");
            }
        }
    }

    #[test]
    fn generator_matrix_examples() {
        let w = hw("1;1");
        let m = generator_matrix(Generator::RaiseII(1), &w).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), RadicalSum::from(sr(1, 2)));
        let d = generator_matrix(Generator::DiagPos(1), &w).unwrap();
        assert_eq!(
            d,
            SparseOperator::diagonal(&[RadicalSum::from_int(2), RadicalSum::from_int(1)])
        );
        let z = HighestWeight::zero(1, 1);
        for g in Generator::all(1) {
            let m = generator_matrix(g, &z).unwrap();
            assert_eq!(m.dim(), 1);
            assert!(m.is_zero());
        }
        assert!(matches!(
            generator_matrix(Generator::RaiseI1(1), &w),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn anticommutator_gl11() {
        let m = Module::new(&hw("1;1")).unwrap();
        let b = super_bracket(
            &m.weyl_element(-1, 1).unwrap(),
            &m.weyl_element(1, -1).unwrap(),
        )
        .unwrap();
        assert_eq!(
            b,
            SparseOperator::diagonal(&[RadicalSum::from_int(2), RadicalSum::from_int(2)])
        );
    }

    #[test]
    fn weyl_element_examples() {
        let w = hw("2,1;1,0");
        let m = Module::new(&w).unwrap();
        assert_eq!(
            m.weyl_element(-1, 1).unwrap(),
            m.generator_matrix(Generator::RaiseII(1)).unwrap()
        );
        let e12 = m.weyl_element(1, 2).unwrap();
        let direct = super_bracket(
            &m.weyl_element(1, -2).unwrap(),
            &m.weyl_element(-2, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(e12, direct);
        assert_eq!(e12.parity(), Parity::Even);
        for (i, g) in [(-2, Generator::DiagNeg(2)), (1, Generator::DiagPos(1))] {
            assert_eq!(
                m.weyl_element(i, i).unwrap(),
                m.generator_matrix(g).unwrap()
            );
        }
        assert!(matches!(
            m.weyl_element(0, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            m.weyl_element(3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn singular_denominators_use_the_reduced_residue() {
        // E_{2,-2} on this pattern has a vanishing denominator factor with
        // prefactor 1; the reduced value keeps the anticommutator exact
        let w = hw("1,1;0,0");
        let p = pat(2, &[&[1], &[1, 0], &[1, 1, 0], &[1, 1, 0, 0]]);
        assert!(is_valid(&p));
        let block = block_ii(&p, 2, false);
        assert!(block
            .terms
            .iter()
            .any(|t| t.prefactor != 0 && t.denom.contains(&0)));
        let m = Module::new(&w).unwrap();
        let b = super_bracket(
            &m.weyl_element(-2, 2).unwrap(),
            &m.weyl_element(2, -2).unwrap(),
        )
        .unwrap();
        let want = m
            .weyl_element(-2, -2)
            .unwrap()
            .add(&m.weyl_element(2, 2).unwrap())
            .unwrap();
        assert_eq!(b, want);
    }

    #[test]
    fn residue_matches_literal_formula_when_regular() {
        for s in [
            "2,1;1,0",
            "3,1;2,0",
            "2,2;1,1",
            "2,1,1;1,0,0",
            "3,2,1;1,0,0",
        ] {
            let w = hw(s);
            for p in enumerate(&w).unwrap() {
                let n = w.n();
                let mut blocks = Vec::new();
                for i in 1..=n {
                    blocks.push(block_ii(&p, i, true));
                    blocks.push(block_ii(&p, i, false));
                    if i < n {
                        blocks.push(block_i1(&p, i, true));
                        blocks.push(block_i1(&p, i, false));
                    }
                }
                for b in &blocks {
                    for t in &b.terms {
                        if t.prefactor == 0 || t.denom.contains(&0) {
                            continue;
                        }
                        let lit = squared_coefficient(b, t).unwrap();
                        let res = reduced_residue(&b.selfs, t.self_index, &b.alist).unwrap()
                            * rat(b.residue_sign);
                        assert_eq!(lit, res, "{s} {:?}", p.rows());
                    }
                }
            }
        }
    }

    #[test]
    fn weight_covariance() {
        for s in ["2,1;1,0", "2,1,1;1,0,0"] {
            let w = hw(s);
            for p in enumerate(&w).unwrap() {
                let mu = weight(&p);
                for g in Generator::all(w.n()) {
                    let (a, b) = g.indices();
                    for (q, _) in apply(g, &p).unwrap() {
                        let nu = weight(&q);
                        for c in (-(w.n() as i32)..0).chain(1..=w.n() as i32) {
                            let shift = i64::from(c == a) - i64::from(c == b);
                            assert_eq!(nu.get(c), mu.get(c) + shift, "{g}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generator_bookkeeping() {
        assert_eq!(Generator::raising(3).len(), 5);
        assert_eq!(Generator::all(2).len(), 10);
        for g in Generator::all(3) {
            assert_eq!(
                Generator::from_indices(g.indices().0, g.indices().1),
                Some(g)
            );
            assert_eq!(g.star().star(), g);
        }
        assert_eq!(Generator::from_indices(1, 2), None);
        assert_eq!(odd_chain(2), vec![-1, 1, -2, 2]);
    }
}
