//! Exact scalars of the form `c·√d` and finite sums of them.
//!
//! Every matrix element produced by the generator actions is a
//! [`SignedRadical`]: a rational coefficient times the square root of a
//! squarefree positive integer. Products of operators leave that form, so
//! operator entries are stored as [`RadicalSum`]s, which are elements of the
//! multi-quadratic field `Q(√2, √3, √5, ...)`. Because the square roots of
//! distinct squarefree integers are linearly independent over `Q`, the
//! canonical term map makes equality testing exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default trial-division bound used when extracting square factors.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Splits `n` into `s² · d` with `d` squarefree.
///
/// Trial division stops at `bound`; if a cofactor remains whose square
/// factors cannot be ruled out below the bound, an error is returned.
pub fn squarefree_decompose(n: &BigUint, bound: u64) -> Result<(BigUint, BigUint)> {
    let mut rem = n.clone();
    let mut square = BigUint::one();
    let mut radicand = BigUint::one();
    if rem.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    let mut p: u64 = 2;
    loop {
        let pb = BigUint::from(p);
        if &pb * &pb > rem {
            break;
        }
        if p > bound {
            return Err(Error::FactorBoundExceeded {
                value: n.to_string(),
                bound,
            });
        }
        let mut exp = 0u32;
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            exp += 1;
        }
        if exp > 0 {
            square *= pb.pow(exp / 2);
            if exp % 2 == 1 {
                radicand *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // what is left has no factor <= sqrt(rem), so it is 1 or a prime
    radicand *= rem;
    Ok((square, radicand))
}

fn radicand_u64(d: &BigUint) -> Result<u64> {
    d.to_u64()
        .ok_or_else(|| Error::RadicandOverflow(d.to_string()))
}

/// An exact scalar `coeff · √radicand` in canonical form.
///
/// The radicand is squarefree and at least one; zero is stored as `0·√1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedRadical {
    coeff: Rational,
    radicand: u64,
}

impl SignedRadical {
    pub fn zero() -> Self {
        SignedRadical {
            coeff: Rational::zero(),
            radicand: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(coeff: Rational) -> Self {
        SignedRadical { coeff, radicand: 1 }
    }

    /// `coeff · √radicand`, rejecting radicands that are not squarefree.
    pub fn new(coeff: Rational, radicand: u64) -> Result<Self> {
        if radicand == 0 {
            return Ok(Self::zero());
        }
        let (sq, d) = squarefree_decompose(&BigUint::from(radicand), DEFAULT_FACTOR_BOUND)?;
        if !sq.is_one() || d != BigUint::from(radicand) {
            return Err(Error::Parse(format!(
                "radicand {radicand} is not squarefree"
            )));
        }
        if coeff.is_zero() {
            return Ok(Self::zero());
        }
        Ok(SignedRadical { coeff, radicand })
    }

    /// The canonical `c·√d` equal to `sign·√q`.
    pub fn normalize(negative: bool, q: &Rational) -> Result<Self> {
        Self::normalize_with_bound(negative, q, DEFAULT_FACTOR_BOUND)
    }

    pub fn normalize_with_bound(negative: bool, q: &Rational, bound: u64) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeRadicand(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(a/b) = √(a·b) / b
        let a = q.numer().magnitude();
        let b = q.denom().magnitude();
        let (s, d) = squarefree_decompose(&(a * b), bound)?;
        let mut coeff = Rational::new(BigInt::from(s), BigInt::from(b.clone()));
        if negative {
            coeff = -coeff;
        }
        Ok(SignedRadical {
            coeff,
            radicand: radicand_u64(&d)?,
        })
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The rational square of this value.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * rat(self.radicand as i64)
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }
}

/// Product of two canonical radicals. For squarefree `a`, `b` with
/// `g = gcd(a, b)`, `√a·√b = g·√((a/g)(b/g))` and the new radicand is
/// again squarefree, so no factoring is needed.
fn mul_parts(c1: &Rational, d1: u64, c2: &Rational, d2: u64) -> (Rational, u64) {
    let g = d1.gcd(&d2);
    let d = (d1 / g)
        .checked_mul(d2 / g)
        .expect("radicand product overflows 64 bits");
    (c1 * c2 * rat(g as i64), d)
}

impl Mul for &SignedRadical {
    type Output = SignedRadical;

    fn mul(self, rhs: &SignedRadical) -> SignedRadical {
        if self.is_zero() || rhs.is_zero() {
            return SignedRadical::zero();
        }
        let (coeff, radicand) = mul_parts(&self.coeff, self.radicand, &rhs.coeff, rhs.radicand);
        SignedRadical { coeff, radicand }
    }
}

impl Mul for SignedRadical {
    type Output = SignedRadical;

    fn mul(self, rhs: SignedRadical) -> SignedRadical {
        &self * &rhs
    }
}

impl Neg for SignedRadical {
    type Output = SignedRadical;

    fn neg(self) -> SignedRadical {
        SignedRadical {
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl fmt::Display for SignedRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(f, &self.coeff, self.radicand, true)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Rational, d: u64, leading: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if leading {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    if d == 1 {
        return write!(f, "{mag}");
    }
    if mag.is_one() {
        write!(f, "√{d}")
    } else {
        write!(f, "{mag}√{d}")
    }
}

/// A finite sum `Σ c_d √d` over distinct squarefree `d`, zero terms removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: BTreeMap<u64, Rational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = RadicalSum::zero();
        s.add_term(1, q);
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(radicand, coefficient)` in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if it is rational (no surd terms).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The value if it is a single radical.
    pub fn as_signed_radical(&self) -> Option<SignedRadical> {
        match self.terms.len() {
            0 => Some(SignedRadical::zero()),
            1 => {
                let (d, c) = self.terms.iter().next().unwrap();
                Some(SignedRadical {
                    coeff: c.clone(),
                    radicand: *d,
                })
            }
            _ => None,
        }
    }

    fn add_term(&mut self, d: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> RadicalSum {
        if q.is_zero() {
            return RadicalSum::zero();
        }
        RadicalSum {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    pub fn mul_radical(&self, r: &SignedRadical) -> RadicalSum {
        let mut out = RadicalSum::zero();
        if r.is_zero() {
            return out;
        }
        for (d, c) in &self.terms {
            let (c2, d2) = mul_parts(c, *d, &r.coeff, r.radicand);
            out.add_term(d2, c2);
        }
        out
    }

    /// Multiplicative inverse in the multi-quadratic field, `None` for zero.
    ///
    /// Picks a prime `p` dividing some radicand, writes `x = a + b√p` with
    /// `a`, `b` free of `√p`, and uses `1/x = (a - b√p) / (a² - p·b²)`. The
    /// denominator has one prime fewer, so the recursion terminates.
    pub fn inverse(&self) -> Option<RadicalSum> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(RadicalSum::from_rational(q.recip()));
        }
        let p = self
            .terms
            .keys()
            .filter(|d| **d > 1)
            .map(|d| smallest_prime_factor(*d))
            .min()
            .expect("non-rational sum has a surd term");
        let mut a = RadicalSum::zero();
        let mut b = RadicalSum::zero();
        for (d, c) in &self.terms {
            if d % p == 0 {
                b.add_term(d / p, c.clone());
            } else {
                a.add_term(*d, c.clone());
            }
        }
        let norm = &(&a * &a) - &(&b * &b).scale(&rat(p as i64));
        let inv_norm = norm.inverse()?;
        let sqrt_p = SignedRadical {
            coeff: Rational::one(),
            radicand: p,
        };
        let conj = &a - &b.mul_radical(&sqrt_p);
        Some(&conj * &inv_norm)
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| c.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .sum()
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

impl From<SignedRadical> for RadicalSum {
    fn from(r: SignedRadical) -> Self {
        let mut s = RadicalSum::zero();
        s.add_term(r.radicand, r.coeff);
        s
    }
}

impl From<&SignedRadical> for RadicalSum {
    fn from(r: &SignedRadical) -> Self {
        RadicalSum::from(r.clone())
    }
}

impl AddAssign<&RadicalSum> for RadicalSum {
    fn add_assign(&mut self, rhs: &RadicalSum) {
        for (d, c) in &rhs.terms {
            self.add_term(*d, c.clone());
        }
    }
}

impl Add for &RadicalSum {
    type Output = RadicalSum;

    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;

    fn add(mut self, rhs: RadicalSum) -> RadicalSum {
        self += &rhs;
        self
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;

    fn neg(self) -> RadicalSum {
        RadicalSum {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;

    fn neg(self) -> RadicalSum {
        -&self
    }
}

impl Sub for &RadicalSum {
    type Output = RadicalSum;

    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &(-rhs)
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;

    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        &self - &rhs
    }
}

impl Mul for &RadicalSum {
    type Output = RadicalSum;

    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let (c, d) = mul_parts(c1, *d1, c2, *d2);
                out.add_term(d, c);
            }
        }
        out
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;

    fn mul(self, rhs: RadicalSum) -> RadicalSum {
        &self * &rhs
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (d, c)) in self.terms.iter().enumerate() {
            fmt_term(f, c, *d, idx == 0)?;
        }
        Ok(())
    }
}

// JSON forms: {"coeff": "p/q", "radicand": d}; sums as sorted arrays of those.

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    radicand: u64,
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// `"p/q"` in lowest terms, or `"p"` when the denominator is one.
pub(crate) fn format_rational(q: &Rational) -> String {
    q.to_string()
}

impl Serialize for SignedRadical {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TermRepr {
            coeff: format_rational(&self.coeff),
            radicand: self.radicand,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedRadical {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = TermRepr::deserialize(d)?;
        let coeff = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
        SignedRadical::new(coeff, t.radicand).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RadicalSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(d, c)| TermRepr {
                coeff: format_rational(c),
                radicand: *d,
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<SignedRadical>::deserialize(d)?;
        Ok(v.into_iter()
            .fold(RadicalSum::zero(), |acc, r| acc + RadicalSum::from(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sr(c: Rational, d: u64) -> SignedRadical {
        SignedRadical::new(c, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            SignedRadical::normalize(false, &rat(8)).unwrap(),
            sr(rat(2), 2)
        );
        let z = SignedRadical::normalize(false, &rat(0)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.radicand(), 1);
        assert_eq!(
            SignedRadical::normalize(true, &ratio(9, 4)).unwrap(),
            sr(ratio(-3, 2), 1)
        );
        // √(1/2) = (1/2)√2
        assert_eq!(
            SignedRadical::normalize(false, &ratio(1, 2)).unwrap(),
            sr(ratio(1, 2), 2)
        );
    }

    #[test]
    fn normalize_rejects_negative() {
        assert!(matches!(
            SignedRadical::normalize(false, &rat(-2)),
            Err(Error::NegativeRadicand(_))
        ));
    }

    #[test]
    fn factor_bound_is_enforced() {
        // 1000003 is prime; a bound of 100 cannot certify 1000003²·... squarefree
        let big = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        assert!(matches!(
            squarefree_decompose(&big, 100),
            Err(Error::FactorBoundExceeded { .. })
        ));
        let (s, d) = squarefree_decompose(&BigUint::from(72u32), 100).unwrap();
        assert_eq!((s, d), (BigUint::from(6u32), BigUint::from(2u32)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(sr(rat(1), 2) * sr(rat(1), 2), sr(rat(2), 1));
        assert_eq!(sr(rat(1), 2) * sr(rat(1), 3), sr(rat(1), 6));
        let p = sr(rat(2), 6) * sr(ratio(1, 2), 10);
        assert_eq!(p, sr(rat(2), 15));
        // independent float check of the exact product
        let expect = 2.0 * 6f64.sqrt() * 0.5 * 10f64.sqrt();
        assert!((p.to_f64() - expect).abs() < 1e-12);
        assert!((p.to_f64() - 7.745966692414834).abs() < 1e-12);
    }

    #[test]
    fn add_examples() {
        let r2 = RadicalSum::from(sr(rat(1), 2));
        assert!((&r2 + &(-&r2)).is_zero());
        let s = &r2 + &RadicalSum::from(sr(rat(1), 3));
        assert_eq!(
            s.terms().map(|(d, c)| (d, c.clone())).collect::<Vec<_>>(),
            vec![(2, rat(1)), (3, rat(1))]
        );
        let t = RadicalSum::from(sr(ratio(3, 2), 5)) + RadicalSum::from(sr(ratio(1, 2), 5));
        assert_eq!(t, RadicalSum::from(sr(rat(2), 5)));
    }

    #[test]
    fn inverse_of_multi_surd() {
        // x = 1 + √2 + √3
        let x = RadicalSum::from_int(1)
            + RadicalSum::from(sr(rat(1), 2))
            + RadicalSum::from(sr(rat(1), 3));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, RadicalSum::one());
        assert!(RadicalSum::zero().inverse().is_none());
    }

    #[test]
    fn json_forms() {
        let r = sr(ratio(-3, 2), 5);
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"coeff":"-3/2","radicand":5}"#);
        let back: SignedRadical = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        let s = RadicalSum::from(sr(rat(1), 3)) + RadicalSum::from(sr(rat(2), 2));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"[{"coeff":"2","radicand":2},{"coeff":"1","radicand":3}]"#
        );
        let back: RadicalSum = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SignedRadical>(r#"{"coeff":"1","radicand":8}"#).is_err());
    }

    fn small_sr() -> impl Strategy<Value = SignedRadical> {
        (-50i64..50, 1i64..20, 0u64..1000).prop_map(|(p, q, r)| {
            SignedRadical::normalize(p < 0, &(ratio(p.abs(), q) * rat(r as i64 + 1))).unwrap()
        })
    }

    fn small_sum() -> impl Strategy<Value = RadicalSum> {
        proptest::collection::vec(small_sr(), 0..5)
            .prop_map(|v| v.into_iter().fold(RadicalSum::zero(), |a, r| a + r.into()))
    }

    proptest! {
        #[test]
        fn mul_matches_float(a in small_sr(), b in small_sr()) {
            let exact = (&a * &b).to_f64();
            let approx = a.to_f64() * b.to_f64();
            prop_assert!((exact - approx).abs() <= 1e-12 * approx.abs().max(1.0));
        }

        #[test]
        fn square_is_rational(a in small_sr()) {
            prop_assert_eq!((&a * &a).radicand(), 1);
        }

        #[test]
        fn add_is_associative_and_commutative(a in small_sum(), b in small_sum(), c in small_sum()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &RadicalSum::zero(), a.clone());
        }

        #[test]
        fn inverse_roundtrip(a in small_sum()) {
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(&a * &inv, RadicalSum::one());
            } else {
                prop_assert!(a.is_zero());
            }
        }
    }
}
