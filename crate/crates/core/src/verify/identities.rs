//! Rational identities behind the anticommutator coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Failure, VerificationReport};
use crate::action::{apply, Generator};
use crate::error::{Error, Result};
use crate::patterns::{is_valid, random_pattern, GZPattern};
use crate::scalars::{rat, ratio, RadicalSum, Rational};
use crate::schur::HighestWeight;

/// Labels of rows 3 and 5 of a gl(4|4) pattern entering the diagonal
/// coefficient of `{E_{-3,2}, E_{2,-3}}`. `mb*` fields are negative
/// columns (`mb25` is `m_{-2,5}`), `m*` fields positive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WorkedLabels {
    pub mb35: i64,
    pub mb25: i64,
    pub mb15: i64,
    pub m15: i64,
    pub m25: i64,
    pub mb23: i64,
    pub mb13: i64,
    pub m13: i64,
}

impl WorkedLabels {
    /// Reads the labels off a gl(n|n) pattern with `n ≥ 3`.
    pub fn from_pattern(p: &GZPattern) -> Result<Self> {
        Ok(WorkedLabels {
            mb35: p.get(-3, 5)?,
            mb25: p.get(-2, 5)?,
            mb15: p.get(-1, 5)?,
            m15: p.get(1, 5)?,
            m25: p.get(2, 5)?,
            mb23: p.get(-2, 3)?,
            mb13: p.get(-1, 3)?,
            m13: p.get(1, 3)?,
        })
    }

    /// `m̄35 + m̄25 + m̄15 + m15 + m25 - m̄23 - m̄13 - m13`.
    pub fn linear_form(&self) -> i64 {
        self.mb35 + self.mb25 + self.mb15 + self.m15 + self.m25 - self.mb23 - self.mb13 - self.m13
    }

    /// The four-term sum, or an error if a denominator factor vanishes.
    pub fn four_term_sum(&self) -> Result<Rational> {
        let WorkedLabels {
            mb35,
            mb25,
            mb15,
            m15,
            m25,
            mb23,
            mb13,
            m13,
        } = *self;
        let terms: [(&[i64], &[i64]); 4] = [
            (
                &[mb35 - mb13 + 1, mb25 - mb13, mb13 - mb15 + 1, mb13 + m13],
                &[mb13 + m15 + 1, mb13 + m25, mb23 - mb13 + 1],
            ),
            (
                &[mb35 + m15 + 2, mb25 + m15 + 1, mb15 + m15, m15 - m13 + 1],
                &[mb23 + m15 + 2, mb13 + m15 + 1, m15 - m25 + 1],
            ),
            (
                &[mb35 + m25 + 1, mb25 + m25, mb15 + m25 - 1, m13 - m25],
                &[mb23 + m25 + 1, mb13 + m25, m15 - m25 + 1],
            ),
            (
                &[
                    mb35 - mb23,
                    mb23 - mb25 + 1,
                    mb23 - mb15 + 2,
                    mb23 + m13 + 1,
                ],
                &[mb23 + m15 + 2, mb23 + m25 + 1, mb23 - mb13 + 1],
            ),
        ];
        let mut total = rat(0);
        for (t, (num, den)) in terms.iter().enumerate() {
            if den.contains(&0) {
                return Err(Error::ZeroDenominator(format!(
                    "term {} of the four-term sum",
                    t + 1
                )));
            }
            let mut q = rat(1);
            for f in *num {
                q *= rat(*f);
            }
            for f in *den {
                q /= rat(*f);
            }
            total += q;
        }
        Ok(total)
    }
}

/// Whether the four-term sum equals the linear form. Inputs with a
/// vanishing denominator are rejected.
pub fn check_worked_coefficient(labels: &WorkedLabels) -> Result<bool> {
    Ok(labels.four_term_sum()? == rat(labels.linear_form()))
}

/// Diagonal coefficient of `{E_{-3,2}, E_{2,-3}}` on `p`, computed from
/// the generator actions.
pub fn worked_coefficient_by_action(p: &GZPattern) -> Result<RadicalSum> {
    let (up, down) = (Generator::RaiseI1(2), Generator::LowerI1(2));
    let mut total = RadicalSum::zero();
    for (first, second) in [(down, up), (up, down)] {
        for (q, c1) in apply(first, p)? {
            for (r, c2) in apply(second, &q)? {
                if &r == p {
                    total += &RadicalSum::from(&c1 * &c2);
                }
            }
        }
    }
    Ok(total)
}

fn random_gl44_weight<R: Rng>(rng: &mut R) -> HighestWeight {
    let mut neg: Vec<i64> = (0..4).map(|_| rng.random_range(0..=12)).collect();
    neg.sort_unstable_by(|a, b| b.cmp(a));
    let m_1 = neg[3];
    let support = rng.random_range(0..=m_1.min(4)) as usize;
    let mut pos: Vec<i64> = (0..4)
        .map(|k| {
            if k < support {
                rng.random_range(1..=8)
            } else {
                0
            }
        })
        .collect();
    pos.sort_unstable_by(|a, b| b.cmp(a));
    HighestWeight::new(neg, pos).expect("constructed to be covariant")
}

/// All valid patterns that agree with `p` except in row 4, i.e. every
/// admissible choice of `θ_{-2,3}, θ_{-1,3}, θ_{1,4}, θ_{2,4}`.
fn row4_variants(p: &GZPattern) -> Vec<GZPattern> {
    let mut out = Vec::new();
    for bits in 0..16u32 {
        let th = |k: u32| i64::from(bits >> k & 1);
        let row4 = vec![
            p.m(-2, 3) + th(0),
            p.m(-1, 3) + th(1),
            p.m(1, 5) + th(2),
            p.m(2, 5) + th(3),
        ];
        let mut rows = p.rows().to_vec();
        rows[3] = row4;
        let q = GZPattern::from_rows(p.n(), rows).expect("same shape");
        if is_valid(&q) {
            out.push(q);
        }
    }
    out
}

/// Samples valid gl(4|4) patterns and checks, exactly, that the four-term
/// sum equals the linear form and that the action-side coefficient equals
/// it for every admissible θ-assignment of row 4.
pub fn worked_coefficient_suite(samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("worked-coefficient").with_param("samples", samples);
    report.seed = Some(seed);
    let mut accepted = 0;
    let mut rejected = 0u64;
    let mut theta_variants = 0u64;
    while accepted < samples {
        let p = random_pattern(&random_gl44_weight(&mut rng), &mut rng)?;
        let labels = WorkedLabels::from_pattern(&p)?;
        let ok = match check_worked_coefficient(&labels) {
            Ok(ok) => ok,
            Err(Error::ZeroDenominator(_)) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        accepted += 1;
        let loc = format!("{:?}", p.rows());
        report.record((!ok).then(|| {
            Failure {
                relation: "four-term sum = linear form".into(),
                location: loc.clone(),
                expected: labels.linear_form().to_string(),
                got: labels
                    .four_term_sum()
                    .map(|q| q.to_string())
                    .unwrap_or_default(),
            }
        }));
        let want = RadicalSum::from_int(labels.linear_form());
        for q in row4_variants(&p) {
            theta_variants += 1;
            let got = worked_coefficient_by_action(&q)?;
            report.record((got != want).then(|| Failure {
                relation: "{E(-3,2), E(2,-3)} diagonal".into(),
                location: format!("{:?}", q.rows()),
                expected: want.to_string(),
                got: got.to_string(),
            }));
        }
    }
    let report = report
        .with_param("rejected_singular", rejected)
        .with_param("theta_variants", theta_variants);
    Ok(report.finish())
}

fn check_distinct(xs: &[Rational]) -> Result<()> {
    for (i, x) in xs.iter().enumerate() {
        if xs[..i].contains(x) {
            return Err(Error::RepeatedNode(x.to_string()));
        }
    }
    Ok(())
}

fn check_lengths(xs: &[Rational], as_: &[Rational]) -> Result<()> {
    if xs.len() != as_.len() || xs.is_empty() {
        return Err(Error::DimensionMismatch {
            left: xs.len(),
            right: as_.len(),
        });
    }
    Ok(())
}

/// `∏_j (x_i - a_j) / ∏_{j≠i} (x_i - x_j)`.
fn lagrange_weight(xs: &[Rational], as_: &[Rational], i: usize) -> Rational {
    let mut q = rat(1);
    for a in as_ {
        q *= &xs[i] - a;
    }
    for (j, x) in xs.iter().enumerate() {
        if j != i {
            q /= &xs[i] - x;
        }
    }
    q
}

/// `Σ_i ∏_j (x_i - a_j) / ∏_{j≠i} (x_i - x_j) = Σ_i (x_i - a_i)`.
pub fn check_lagrange_identity(xs: &[Rational], as_: &[Rational]) -> Result<bool> {
    check_lengths(xs, as_)?;
    check_distinct(xs)?;
    let lhs: Rational = (0..xs.len()).map(|i| lagrange_weight(xs, as_, i)).sum();
    let rhs: Rational = xs.iter().zip(as_).map(|(x, a)| x - a).sum();
    Ok(lhs == rhs)
}

/// `∏_i (x - a_i) = Σ_i w_i ∏_{j≠i} (x - x_j) + ∏_i (x - x_i)` with `w_i`
/// the weights of [`check_lagrange_identity`], evaluated at `x`.
pub fn check_full_interpolation(xs: &[Rational], as_: &[Rational], x: &Rational) -> Result<bool> {
    check_lengths(xs, as_)?;
    check_distinct(xs)?;
    let lhs: Rational = as_.iter().map(|a| x - a).product();
    let mut rhs: Rational = xs.iter().map(|xi| x - xi).product();
    for i in 0..xs.len() {
        let basis: Rational = xs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, xj)| x - xj)
            .product();
        rhs += lagrange_weight(xs, as_, i) * basis;
    }
    Ok(lhs == rhs)
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.random_range(-40..=40);
    let den = rng.random_range(1..=12);
    ratio(num, den)
}

fn random_instance<R: Rng>(rng: &mut R, max_n: usize) -> (Vec<Rational>, Vec<Rational>) {
    let len = rng.random_range(0..=max_n) + 1;
    let mut xs: Vec<Rational> = Vec::with_capacity(len);
    while xs.len() < len {
        let x = random_rational(rng);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    let as_ = (0..len).map(|_| random_rational(rng)).collect();
    (xs, as_)
}

fn show(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(|q| q.to_string()).collect();
    format!("[{}]", s.join(", "))
}

pub fn lagrange_suite(max_n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("lagrange")
        .with_param("max_n", max_n)
        .with_param("samples", samples);
    report.seed = Some(seed);
    for _ in 0..samples {
        let (xs, as_) = random_instance(&mut rng, max_n);
        let ok = check_lagrange_identity(&xs, &as_)?;
        report.record((!ok).then(|| Failure {
            relation: "lagrange identity".into(),
            location: format!("xs={} as={}", show(&xs), show(&as_)),
            expected: "equal".into(),
            got: "unequal".into(),
        }));
    }
    Ok(report.finish())
}

pub fn interpolation_suite(max_n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("interpolation")
        .with_param("max_n", max_n)
        .with_param("samples", samples);
    report.seed = Some(seed);
    for _ in 0..samples {
        let (xs, as_) = random_instance(&mut rng, max_n);
        let x = random_rational(&mut rng);
        let ok = check_full_interpolation(&xs, &as_, &x)?;
        report.record((!ok).then(|| Failure {
            relation: "interpolation identity".into(),
            location: format!("xs={} as={} x={x}", show(&xs), show(&as_)),
            expected: "equal".into(),
            got: "unequal".into(),
        }));
    }
    Ok(report.finish())
}
