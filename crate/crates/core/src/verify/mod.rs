//! Exact verification suites: algebra relations, characters, highest
//! weight vectors, the star relation, and the rational identities behind
//! the anticommutator coefficients.

mod identities;

pub use identities::{
    check_full_interpolation, check_lagrange_identity, check_worked_coefficient,
    interpolation_suite, lagrange_suite, worked_coefficient_by_action, worked_coefficient_suite,
    WorkedLabels,
};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{apply, Generator, Module};
use crate::error::{Error, Result};
use crate::patterns::{enumerate, highest_weight_pattern, weight};
use crate::schur::{partition_from_weight, super_character, super_dimension, HighestWeight};
use crate::sparse::{super_bracket, Parity, SparseOperator};

/// Limits on the modules a suite will build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_dim: usize,
    pub max_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dim: 500,
            max_n: 3,
        }
    }
}

impl Budget {
    /// Dimension of the module, or an error if it is over budget.
    pub fn admit(&self, hw: &HighestWeight) -> Result<usize> {
        if hw.k() != hw.n() {
            return Err(Error::InvalidWeight(format!(
                "{hw} is not a gl(n|n) weight"
            )));
        }
        if hw.n() > self.max_n {
            return Err(Error::BudgetExceeded(format!(
                "n = {} exceeds the rank budget {}",
                hw.n(),
                self.max_n
            )));
        }
        let dim = super_dimension(&partition_from_weight(hw), hw.k(), hw.n())? as usize;
        if dim > self.max_dim {
            return Err(Error::BudgetExceeded(format!(
                "dim V({hw}) = {dim} exceeds the dimension budget {}",
                self.max_dim
            )));
        }
        Ok(dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub relation: String,
    pub location: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            checks: 0,
            failures: Vec::new(),
            seed: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable param"),
        );
        self
    }

    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn record(&mut self, outcome: Option<Failure>) {
        self.checks += 1;
        if let Some(f) = outcome {
            self.failures.push(f);
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.failures.sort();
        self
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.failures.sort();
    }
}

/// `None` when equal, otherwise a failure naming the first differing entry.
fn compare(relation: String, expected: &SparseOperator, got: &SparseOperator) -> Option<Failure> {
    if expected == got {
        return None;
    }
    if expected.dim() != got.dim() || expected.parity() != got.parity() {
        return Some(Failure {
            relation,
            location: "shape".into(),
            expected: format!("dim {} {:?}", expected.dim(), expected.parity()),
            got: format!("dim {} {:?}", got.dim(), got.parity()),
        });
    }
    let mut cells: Vec<(usize, usize)> = expected
        .entries()
        .into_iter()
        .chain(got.entries())
        .map(|(r, c, _)| (r, c))
        .collect();
    cells.sort_unstable();
    let (r, c) = cells
        .into_iter()
        .find(|(r, c)| expected.get(*r, *c) != got.get(*r, *c))
        .expect("operators differ somewhere");
    Some(Failure {
        relation,
        location: format!("entry ({r}, {c})"),
        expected: expected.get(r, c).to_string(),
        got: got.get(r, c).to_string(),
    })
}

fn sign_flip(a: i32, b: i32, c: i32, d: i32) -> bool {
    Parity::of_indices(a, b) == Parity::Odd && Parity::of_indices(c, d) == Parity::Odd
}

/// `⟦E_ab, E_cd⟧ = δ_bc E_ad - (-1)^{|E_ab||E_cd|} δ_ad E_cb` for all
/// index quadruples.
pub fn check_defining_relations(hw: &HighestWeight, budget: &Budget) -> Result<VerificationReport> {
    let dim = budget.admit(hw)?;
    let module = Module::new(hw)?;
    let idx = module.indices();
    let mut ops: BTreeMap<(i32, i32), SparseOperator> = BTreeMap::new();
    for &a in &idx {
        for &b in &idx {
            ops.insert((a, b), module.weyl_element(a, b)?);
        }
    }
    let mut quads = Vec::with_capacity(idx.len().pow(4));
    for &a in &idx {
        for &b in &idx {
            for &c in &idx {
                for &d in &idx {
                    quads.push((a, b, c, d));
                }
            }
        }
    }
    let outcomes: Vec<Option<Failure>> = quads
        .par_iter()
        .map(|&(a, b, c, d)| -> Result<Option<Failure>> {
            let lhs = super_bracket(&ops[&(a, b)], &ops[&(c, d)])?;
            let parity = Parity::of_indices(a, b) + Parity::of_indices(c, d);
            let mut rhs = SparseOperator::zero(dim, parity);
            if b == c {
                rhs = rhs.add(&ops[&(a, d)])?;
            }
            if a == d {
                let t = &ops[&(c, b)];
                rhs = if sign_flip(a, b, c, d) {
                    rhs.add(t)?
                } else {
                    rhs.sub(t)?
                };
            }
            Ok(compare(format!("[E({a},{b}), E({c},{d})]"), &rhs, &lhs))
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new("relations")
        .with_param("hw", hw)
        .with_param("dim", dim);
    for o in outcomes {
        report.record(o);
    }
    Ok(report.finish())
}

/// `{E_{-i,i}, E_{i,-i}} = E_{-i,-i} + E_{ii}` and
/// `{E_{-i-1,i}, E_{i,-i-1}} = E_{-i-1,-i-1} + E_{ii}`.
pub fn check_anticommutator_identities(
    hw: &HighestWeight,
    budget: &Budget,
) -> Result<VerificationReport> {
    let dim = budget.admit(hw)?;
    let module = Module::new(hw)?;
    let n = hw.n() as i32;
    let pairs: Vec<(i32, i32)> = (1..=n)
        .map(|i| (-i, i))
        .chain((1..n).map(|i| (-i - 1, i)))
        .collect();
    let mut report = VerificationReport::new("anticommutators")
        .with_param("hw", hw)
        .with_param("dim", dim);
    for (a, b) in pairs {
        let up = module.generator_matrix(Generator::from_indices(a, b).unwrap())?;
        let down = module.generator_matrix(Generator::from_indices(b, a).unwrap())?;
        let lhs = super_bracket(&up, &down)?;
        let rhs = module
            .weyl_element(a, a)?
            .add(&module.weyl_element(b, b)?)?;
        report.record(compare(format!("{{E({a},{b}), E({b},{a})}}"), &rhs, &lhs));
    }
    Ok(report.finish())
}

/// The weights of the basis patterns against the supersymmetric Schur
/// character.
pub fn check_character(hw: &HighestWeight, budget: &Budget) -> Result<VerificationReport> {
    let dim = budget.admit(hw)?;
    let n = hw.n();
    let mut got = crate::schur::Character::new();
    for p in enumerate(hw)? {
        *got.entry(weight(&p).to_vec()).or_insert(0) += 1;
    }
    let want = super_character(&partition_from_weight(hw), n, n)?;
    let mut report = VerificationReport::new("character")
        .with_param("hw", hw)
        .with_param("dim", dim);
    let keys: std::collections::BTreeSet<_> = got.keys().chain(want.keys()).cloned().collect();
    for k in keys {
        let (g, w) = (
            got.get(&k).copied().unwrap_or(0),
            want.get(&k).copied().unwrap_or(0),
        );
        report.record((g != w).then(|| Failure {
            relation: "weight multiplicity".into(),
            location: format!("{k:?}"),
            expected: w.to_string(),
            got: g.to_string(),
        }));
    }
    Ok(report.finish())
}

/// Even Chevalley raisings `E_{i,i+1}`, `i = -n..-2, 1..n-1`.
pub fn even_chevalley_raisings(n: usize) -> Vec<(i32, i32)> {
    let n = n as i32;
    (-n..=-2).chain(1..n).map(|i| (i, i + 1)).collect()
}

/// Raising generators and even Chevalley raisings annihilate the highest
/// weight pattern, and the diagonal generators return the labels.
pub fn check_highest_weight_vector(hw: &HighestWeight) -> Result<VerificationReport> {
    let n = hw.n();
    let top = highest_weight_pattern(hw)?;
    let mut report = VerificationReport::new("hwv").with_param("hw", hw);
    let loc = "highest weight pattern".to_string();
    for g in Generator::raising(n) {
        let terms = apply(g, &top)?;
        report.record((!terms.is_empty()).then(|| Failure {
            relation: format!("{g} v = 0"),
            location: loc.clone(),
            expected: "0".into(),
            got: format!("{} terms", terms.len()),
        }));
    }
    for i in 1..=n {
        for (g, c) in [
            (Generator::DiagNeg(i), -(i as i32)),
            (Generator::DiagPos(i), i as i32),
        ] {
            let v = crate::action::apply_diagonal(g, &top)?;
            let m = hw.get(c).unwrap();
            report.record((v != m).then(|| Failure {
                relation: format!("{g} v = m v"),
                location: loc.clone(),
                expected: m.to_string(),
                got: v.to_string(),
            }));
        }
    }
    let chev = even_chevalley_raisings(n);
    if !chev.is_empty() {
        let module = Module::new(hw)?;
        let col = module
            .basis()
            .index_of(&top)
            .expect("highest weight pattern is in the basis");
        for (a, b) in chev {
            let e = module.weyl_element(a, b)?;
            let nz = e.column(col).len();
            report.record((nz != 0).then(|| Failure {
                relation: format!("E({a},{b}) v = 0"),
                location: loc.clone(),
                expected: "0".into(),
                got: format!("{nz} nonzero entries"),
            }));
        }
    }
    Ok(report.finish())
}

/// `E_ba` is the transpose of `E_ab` for every pair of indices.
pub fn check_unitarity(hw: &HighestWeight, budget: &Budget) -> Result<VerificationReport> {
    let dim = budget.admit(hw)?;
    let module = Module::new(hw)?;
    let idx = module.indices();
    let mut report = VerificationReport::new("unitarity")
        .with_param("hw", hw)
        .with_param("dim", dim);
    for &a in &idx {
        for &b in &idx {
            if a > b {
                continue;
            }
            let e = module.weyl_element(a, b)?;
            let f = module.weyl_element(b, a)?;
            report.record(compare(
                format!("E({b},{a}) = E({a},{b})^T"),
                &e.transpose(),
                &f,
            ));
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(s: &str) -> HighestWeight {
        s.parse().unwrap()
    }

    #[test]
    fn relations_small_modules() {
        for s in ["0;0", "1;1", "2;1", "1,1;0,0", "2,0;0,0"] {
            let r = check_defining_relations(&hw(s), &Budget::default()).unwrap();
            assert!(r.success(), "{s}: {:?}", r.failures);
            assert_eq!(r.checks, (4 * hw(s).n() * hw(s).n()).pow(2) as u64);
        }
    }

    #[test]
    fn anticommutators_and_unitarity() {
        for s in ["0;0", "1;1", "1,1;0,0", "2,1;1,0", "1,1,1;0,0,0"] {
            let b = Budget::default();
            assert!(
                check_anticommutator_identities(&hw(s), &b)
                    .unwrap()
                    .success(),
                "{s}"
            );
            assert!(check_unitarity(&hw(s), &b).unwrap().success(), "{s}");
        }
        let r = check_unitarity(&hw("1,1;0,0"), &Budget::default()).unwrap();
        assert_eq!(r.checks, 10);
    }

    #[test]
    fn characters_and_hwv() {
        for s in ["0;0", "1;1", "1,1;0,0", "2,0;0,0", "2,1,1;1,0,0"] {
            assert!(
                check_character(&hw(s), &Budget::default())
                    .unwrap()
                    .success(),
                "{s}"
            );
            let r = check_highest_weight_vector(&hw(s)).unwrap();
            assert!(r.success(), "{s}");
        }
        let r = check_highest_weight_vector(&hw("2,0;0,0")).unwrap();
        // 3 raisings, 4 diagonals, 2 even Chevalley raisings
        assert_eq!(r.checks, 9);
    }

    #[test]
    fn budget_is_enforced() {
        let small = Budget {
            max_dim: 4,
            max_n: 3,
        };
        assert!(matches!(
            check_defining_relations(&hw("1,1;0,0"), &small),
            Err(Error::BudgetExceeded(_))
        ));
        let narrow = Budget {
            max_dim: 500,
            max_n: 1,
        };
        assert!(matches!(
            check_character(&hw("1,1;0,0"), &narrow),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn a_wrong_relation_is_reported() {
        let m = Module::new(&hw("1;1")).unwrap();
        let e = m.weyl_element(-1, 1).unwrap();
        let f = compare("x".into(), &e, &e.scale(&crate::scalars::rat(2)));
        let f = f.unwrap();
        assert_eq!(f.location, "entry (1, 0)");
        assert_eq!((f.expected.as_str(), f.got.as_str()), ("√2", "2√2"));
    }

    #[test]
    fn report_json_schema() {
        let r = check_anticommutator_identities(&hw("1;1"), &Budget::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        assert_eq!(keys, vec!["checks", "failures", "params", "seed", "suite"]);
    }
}
