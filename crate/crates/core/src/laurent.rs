//! Integer Laurent polynomials in one variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::InvariantError;

/// `coeffs[i]` is the coefficient of `t^(low + i)`. Leading and trailing
/// coefficients are nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![BigInt::from(c)])
    }

    /// `t`-coefficients starting at exponent `low`.
    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (exp, c)| acc + Self::monomial(c, exp))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> i64 {
        self.low
    }

    pub fn high_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { low: if self.is_zero() { 0 } else { self.low + by }, coeffs: self.coeffs.clone() }
    }

    pub fn eval(&self, t: i64) -> num_rational::BigRational {
        let t = num_rational::BigRational::from_integer(BigInt::from(t));
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in self.terms() {
            acc += num_rational::BigRational::from_integer(c.clone()) * pow_rat(&t, e);
        }
        acc
    }

    /// `p(1/t)`.
    pub fn mirror(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(-self.high_exp(), coeffs)
    }

    /// Exact quotient `self / other`; `None` when the division leaves a
    /// remainder or `other` is zero.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dn = other.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return None;
        }
        let lead = other.coeffs.last().unwrap();
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in other.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - other.low, quot))
    }

    /// Alexander normalization: multiplied by `±t^k` so that the exponents
    /// are symmetric about zero (lowest exponent rounded down when the span
    /// is odd) and the value at `t = 1` is positive. When `p(1) = 0` the
    /// highest coefficient is made positive instead.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let span = self.high_exp() - self.low;
        let mut p = Self { low: -(span + 1) / 2, coeffs: self.coeffs.clone() };
        let at_one: BigInt = p.coeffs.iter().sum();
        let negate = if at_one.is_zero() { p.coeffs.last().unwrap().is_negative() } else { at_one.is_negative() };
        if negate {
            p = -p;
        }
        p
    }

    /// True when `p(t) = p(1/t)`.
    pub fn is_symmetric(&self) -> bool {
        self.mirror() == *self
    }
}

fn pow_rat(t: &num_rational::BigRational, e: i64) -> num_rational::BigRational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    let mut acc = num_rational::BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().max(rhs.high_exp());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(low, coeffs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

/// Ascending exponents, e.g. `t^-1 - 1 + t` or `-2*t^-2 + 5`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvariantError::MalformedPoly(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        // split into signed terms, keeping the sign of `t^-k` exponents
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Self::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1i64, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, exp) = match body.find('t') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0i64),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() { BigInt::one() } else { head.parse::<BigInt>().map_err(|_| bad())? };
                    let tail = &body[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            acc = acc + Self::from_coeffs(exp, vec![coef * sign]);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn normalizes_trefoil() {
        // t^2 - t + 1 and -t^5 + t^4 - t^3 are both the trefoil polynomial
        let a = p(&[(2, 1), (1, -1), (0, 1)]).normalized();
        let b = p(&[(5, -1), (4, 1), (3, -1)]).normalized();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "t^-1 - 1 + t");
        assert!(a.is_symmetric());
    }

    #[test]
    fn printing_and_parsing() {
        let fig8 = p(&[(-1, -1), (0, 3), (1, -1)]);
        assert_eq!(fig8.to_string(), "-t^-1 + 3 - t");
        assert_eq!("-t^-1 + 3 - t".parse::<LaurentPoly>().unwrap(), fig8);
        assert_eq!("2*t^-2 - 3 t + 7".parse::<LaurentPoly>().unwrap(), p(&[(-2, 2), (1, -3), (0, 7)]));
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("x+1".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = p(&[(0, 1), (1, 1)]);
        let b = p(&[(0, -1), (1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.shift(-3).div_exact(&b), Some(a.shift(-3)));
        assert_eq!(a.div_exact(&p(&[(0, 2)])), None);
        assert_eq!(LaurentPoly::one().div_exact(&LaurentPoly::zero()), None);
    }

    #[test]
    fn evaluation() {
        let fig8 = p(&[(-1, -1), (0, 3), (1, -1)]);
        assert_eq!(fig8.eval(-1), num_rational::BigRational::from_integer(5.into()));
        assert_eq!(fig8.eval(1), num_rational::BigRational::from_integer(1.into()));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-5i64..5, prop::collection::vec(-9i64..10, 0..6))
            .prop_map(|(low, cs)| LaurentPoly::from_coeffs(low, cs.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn normalization_is_idempotent(a in arb_poly(), k in -4i64..4, neg in any::<bool>()) {
            let n = a.normalized();
            prop_assert_eq!(n.normalized(), n.clone());
            let moved = if neg { -a.shift(k) } else { a.shift(k) };
            prop_assert_eq!(moved.normalized(), n);
        }

        #[test]
        fn product_divides(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }
    }
}
