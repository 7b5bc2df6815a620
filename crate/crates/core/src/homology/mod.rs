//! Second homology of finite groups and related checks.

mod l0;
mod schur;

pub use l0::{lemma_l0_check, L0Instance, L0Report};
pub use schur::{schur_multiplier, SchurReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::zlattice::abelianization;

/// Rank of `H_2` for an aspherical presentation of a perfect group:
/// relators minus generators. Asphericity cannot be checked here and must
/// be asserted by the caller.
pub fn aspherical_h2_rank(p: &Presentation, aspherical: bool) -> Result<i64> {
    if !aspherical {
        return Err(Error::Precondition(
            "the rank formula needs an aspherical presentation".into(),
        ));
    }
    let h1 = abelianization(p);
    if !h1.is_trivial() {
        return Err(Error::NotPerfect(h1.to_string()));
    }
    Ok(p.relator_count() as i64 - p.generator_count() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaumslagVerdict {
    pub modulus: u64,
    pub unit: u64,
    pub k: i64,
    /// `unit^k mod n`.
    pub twisted: u64,
    pub unit_inverse: u64,
    pub isomorphic: bool,
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn mod_pow(b: u64, mut e: u64, n: u64) -> u64 {
    let (mut acc, mut b) = (1 % n, b % n);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc
}

/// Decides whether `Z/n semidirect_u Z` and `Z/n semidirect_{u^k} Z` are
/// isomorphic, for a prime power `n`: they are iff `u^k = u^{+-1} mod n`.
pub fn baumslag_iso_test(modulus: u64, unit: i64, k: i64) -> Result<BaumslagVerdict> {
    if !is_prime_power(modulus) || modulus > u32::MAX as u64 {
        return Err(Error::Precondition(format!("{modulus} is not a prime power below 2^32")));
    }
    let n = modulus;
    let u = unit.rem_euclid(n as i64) as u64;
    if num_integer::gcd(u, n) != 1 {
        return Err(Error::Precondition(format!("{unit} is not a unit modulo {n}")));
    }
    let order = (1..=n).find(|&e| mod_pow(u, e, n) == 1).expect("units have finite order");
    let inverse = mod_pow(u, order - 1, n);
    let e = k.rem_euclid(order as i64) as u64;
    let twisted = mod_pow(u, e, n);
    Ok(BaumslagVerdict {
        modulus: n,
        unit: u,
        k,
        twisted,
        unit_inverse: inverse,
        isomorphic: twisted == u || twisted == inverse,
    })
}

#[cfg(test)]
mod tests;
