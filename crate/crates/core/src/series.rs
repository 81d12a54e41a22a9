//! Integer power series truncated at a fixed degree, and polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `Σ c_i t^i` for `i ≤ degree_bound`, with exact `i128` coefficients.
///
/// Polynomials are series whose bound is their degree. Arithmetic panics on
/// `i128` overflow, which needs coefficients far beyond anything a poset of
/// desk size produces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<i128>,
}

impl TruncatedSeries {
    /// Trailing zeros are dropped.
    pub fn new(coeffs: Vec<i128>) -> Self {
        let mut s = TruncatedSeries { coeffs };
        s.trim();
        s
    }

    pub fn zero() -> Self {
        TruncatedSeries { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TruncatedSeries { coeffs: vec![1] }
    }

    /// `c t^i`
    pub fn monomial(c: i128, i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = c;
        TruncatedSeries::new(v)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Degree of the last nonzero term, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: i128) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, 0);
        }
        self.coeffs[i] = self.coeffs[i]
            .checked_add(c)
            .expect("series coefficient overflow");
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        TruncatedSeries::new(
            (0..n)
                .map(|i| {
                    self.coeff(i)
                        .checked_add(other.coeff(i))
                        .expect("series coefficient overflow")
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// `f(-t)`
    pub fn at_neg_t(&self) -> Self {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 0 { c } else { -c })
                .collect(),
        )
    }

    /// Drop every term above `t^n`.
    pub fn truncate(&self, n: usize) -> Self {
        TruncatedSeries::new(self.coeffs.iter().take(n + 1).copied().collect())
    }

    /// Product modulo `t^{n+1}`.
    pub fn mul_trunc(&self, other: &Self, n: usize) -> Self {
        let mut out = vec![0i128; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                let p = a.checked_mul(b).expect("series coefficient overflow");
                out[i + j] = out[i + j]
                    .checked_add(p)
                    .expect("series coefficient overflow");
            }
        }
        TruncatedSeries::new(out)
    }

    /// Inverse modulo `t^{n+1}`; needs constant term `±1`.
    pub fn inverse_trunc(&self, n: usize) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0 != 1 && c0 != -1 {
            return None;
        }
        let mut inv = vec![0i128; n + 1];
        inv[0] = c0;
        for m in 1..=n {
            let mut s: i128 = 0;
            for i in 1..=m {
                let p = self
                    .coeff(i)
                    .checked_mul(inv[m - i])
                    .expect("series coefficient overflow");
                s = s.checked_add(p).expect("series coefficient overflow");
            }
            inv[m] = -s * c0;
        }
        Some(TruncatedSeries::new(inv))
    }

    /// Whether `self ≡ other mod t^{n+1}`.
    pub fn agrees_to(&self, other: &Self, n: usize) -> bool {
        (0..=n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl fmt::Display for TruncatedSeries {
    /// Ascending degree with explicit signs, e.g. `1 - 2*t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write!(f, "{var}")?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        assert_eq!(
            TruncatedSeries::new(vec![1, -2, 1]).to_string(),
            "1 - 2*t + t^2"
        );
        assert_eq!(TruncatedSeries::monomial(-1, 5).to_string(), "-t^5");
        assert_eq!(TruncatedSeries::zero().to_string(), "0");
        assert_eq!(TruncatedSeries::new(vec![0, 3, 0, 0]).to_string(), "3*t");
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1 - 2t) = 1 + 2t + 4t^2 + 8t^3
        let s = TruncatedSeries::new(vec![1, -2]);
        assert_eq!(s.inverse_trunc(3).unwrap().coeffs(), &[1, 2, 4, 8]);
        assert!(TruncatedSeries::new(vec![2, 1]).inverse_trunc(3).is_none());
    }

    proptest! {
        #[test]
        fn inverse_is_inverse(c in proptest::collection::vec(-5i128..=5, 1..6), n in 0usize..8) {
            let mut c = c;
            c[0] = 1;
            let s = TruncatedSeries::new(c);
            let inv = s.inverse_trunc(n).unwrap();
            prop_assert_eq!(s.mul_trunc(&inv, n), TruncatedSeries::one());
        }

        #[test]
        fn neg_t_is_an_involution(c in proptest::collection::vec(-9i128..=9, 0..8)) {
            let s = TruncatedSeries::new(c);
            prop_assert_eq!(s.at_neg_t().at_neg_t(), s);
        }
    }
}
