//! Exact coefficient fields: the rationals and prime fields.
//!
//! Every rank computation in the crate goes through the [`Field`] trait so the
//! same code runs over `Q` and over `F_p`. The runtime choice is carried by
//! [`FieldSpec`]; use [`dispatch_field!`](crate::dispatch_field) to turn a spec
//! into a concrete field value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Characteristic of the coefficient field: 0 for `Q`, otherwise a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };
    pub const F2: FieldSpec = FieldSpec { characteristic: 2 };

    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic == 0 {
            return Ok(Self::RATIONALS);
        }
        if characteristic >= 1 << 31 {
            return Err(FieldError::PrimeTooLarge(characteristic));
        }
        if !is_prime(characteristic) {
            return Err(FieldError::NotPrime(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rationals(&self) -> bool {
        self.characteristic == 0
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self::RATIONALS
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `q`, `Q`, `0`, a bare prime such as `2`, or `F2` / `f7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t == "0" {
            return Ok(Self::RATIONALS);
        }
        let digits = t.strip_prefix(['F', 'f', 'p', 'P']).unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::Unrecognized(s.to_string()))?;
        FieldSpec::new(p)
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = FieldError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Field arithmetic on an associated element type.
///
/// The field value itself is a (cheap) context object so prime fields can
/// carry their modulus.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `a -= f * b`
    fn sub_mul_assign(&self, a: &mut Self::Elem, f: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(f, b);
        *a = self.sub(a, &t);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn sub_mul_assign(&self, a: &mut BigRational, f: &BigRational, b: &BigRational) {
        // Most entries in our matrices are small integers; skip the gcd work
        // of a general rational product when both factors are integral.
        if f.is_integer() && b.is_integer() && a.is_integer() {
            let prod = f.numer() * b.numer();
            *a = BigRational::from_integer(a.numer() - prod);
        } else {
            *a -= f * b;
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// `Z/pZ` for a prime `p < 2^31`, elements stored as reduced residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics if `p` is not a prime below `2^31`; use [`FieldSpec::new`] to
    /// validate user input first.
    pub fn new(p: u64) -> Self {
        assert!(
            FieldSpec::new(p)
                .map(|s| s.characteristic() == p)
                .unwrap_or(false)
                && p != 0,
            "{p} is not a supported prime"
        );
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.p,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Extended Euclid on signed values.
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i64) as u64
    }
}

/// Render a field element as a signed integer when it has one.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Convert a small rational back to `i64` if it is an integer.
pub fn rational_as_i64(q: &BigRational) -> Option<i64> {
    if !q.is_integer() || q.numer().abs() > BigInt::from(i64::MAX) {
        return None;
    }
    q.numer().to_string().parse().ok()
}

/// Run `$body` with `$f` bound to the concrete field named by `$spec`.
///
/// ```
/// use koszulkit::{dispatch_field, field::{Field, FieldSpec}};
/// let spec = FieldSpec::F2;
/// let two_is_zero = dispatch_field!(spec, f => f.is_zero(&f.from_i64(2)));
/// assert!(two_is_zero);
/// ```
#[macro_export]
macro_rules! dispatch_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        let __spec: $crate::field::FieldSpec = $spec;
        match __spec.characteristic() {
            0 => {
                let $f = $crate::field::Rationals;
                $body
            }
            p => {
                let $f = $crate::field::PrimeField::new(p);
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::RATIONALS);
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::F2);
        assert_eq!("7".parse::<FieldSpec>().unwrap().characteristic(), 7);
        assert!(matches!(
            "4".parse::<FieldSpec>(),
            Err(FieldError::NotPrime(4))
        ));
        assert!("x".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::new(3).unwrap().to_string(), "F3");
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.neg(&0), 0);
    }

    #[test]
    fn rational_fused_update() {
        let q = Rationals;
        let mut a = q.from_i64(5);
        q.sub_mul_assign(&mut a, &q.from_i64(2), &q.from_i64(3));
        assert_eq!(a, q.from_i64(-1));
        let half = q.inv(&q.from_i64(2));
        q.sub_mul_assign(&mut a, &half, &q.from_i64(1));
        assert_eq!(rational_to_string(&a), "-3/2");
    }
}
