//! Coefficient rings.
//!
//! The engine computes over four concrete coherent rings: the integers, the
//! rationals, prime fields and the quotient rings `Z/m`. Every computation is
//! carried out in exact integer arithmetic; the ring only controls how
//! presentations are interpreted (which relations are adjoined, when torsion
//! survives).

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::RingError;

/// One of the four supported coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    /// The ring of integers `Z`.
    Integers,
    /// The field of rationals `Q`.
    Rationals,
    /// The prime field `F_p`. The modulus is checked for primality on
    /// construction via [`RingSpec::prime_field`].
    PrimeField(u64),
    /// The quotient ring `Z/m` with `m >= 2`, not necessarily prime.
    ModRing(u64),
}

impl RingSpec {
    /// Builds `F_p`, rejecting composite or trivial moduli.
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if is_prime_u64(p) {
            Ok(RingSpec::PrimeField(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    /// Builds `Z/m`, rejecting `m < 2`.
    pub fn mod_ring(m: u64) -> Result<Self, RingError> {
        if m >= 2 {
            Ok(RingSpec::ModRing(m))
        } else {
            Err(RingError::ModulusTooSmall(m))
        }
    }

    /// The modulus to lift through when the ring is a quotient of `Z`,
    /// `None` for `Z` and `Q`.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Integers | RingSpec::Rationals => None,
            RingSpec::PrimeField(p) => Some(*p),
            RingSpec::ModRing(m) => Some(*m),
        }
    }

    /// True for `Q` and `F_p`, where every module is a vector space.
    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Rationals | RingSpec::PrimeField(_))
    }

    /// Canonical residue of `x` in the ring: reduced into `[0, m)` for the
    /// modular rings, returned unchanged over `Z` and `Q`.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self.modulus() {
            Some(m) => {
                let m = BigInt::from(m);
                ((x % &m) + &m) % &m
            }
            None => x.clone(),
        }
    }

    /// Whether `x` is zero in the ring.
    pub fn is_zero(&self, x: &BigInt) -> bool {
        use num_traits::Zero;
        self.reduce(x).is_zero()
    }

    /// Parses the CLI ring syntax: `Z`, `Q`, `Fp:<p>`, `Zm:<m>`.
    pub fn parse(text: &str) -> Result<Self, RingError> {
        match text {
            "Z" => return Ok(RingSpec::Integers),
            "Q" => return Ok(RingSpec::Rationals),
            _ => {}
        }
        if let Some(p) = text.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| RingError::Unparsable(text.into()))?;
            return RingSpec::prime_field(p);
        }
        if let Some(m) = text.strip_prefix("Zm:") {
            let m: u64 = m.parse().map_err(|_| RingError::Unparsable(text.into()))?;
            return RingSpec::mod_ring(m);
        }
        Err(RingError::Unparsable(text.into()))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "F_{p}"),
            RingSpec::ModRing(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for all `u64` inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This base set decides primality for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91)); // 7 * 13
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn constructors_validate() {
        assert!(RingSpec::prime_field(5).is_ok());
        assert!(RingSpec::prime_field(6).is_err());
        assert!(RingSpec::mod_ring(2).is_ok());
        assert!(RingSpec::mod_ring(1).is_err());
    }

    #[test]
    fn parse_syntax() {
        assert_eq!(RingSpec::parse("Z").unwrap(), RingSpec::Integers);
        assert_eq!(RingSpec::parse("Q").unwrap(), RingSpec::Rationals);
        assert_eq!(RingSpec::parse("Fp:7").unwrap(), RingSpec::PrimeField(7));
        assert_eq!(RingSpec::parse("Zm:6").unwrap(), RingSpec::ModRing(6));
        assert!(RingSpec::parse("Fp:8").is_err());
        assert!(RingSpec::parse("GF(4)").is_err());
    }

    #[test]
    fn reduction() {
        let ring = RingSpec::ModRing(5);
        assert_eq!(ring.reduce(&BigInt::from(-3)), BigInt::from(2));
        assert!(ring.is_zero(&BigInt::from(10)));
        assert!(!RingSpec::Integers.is_zero(&BigInt::from(10)));
    }
}
