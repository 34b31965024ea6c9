use num_integer::Integer;

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Units of Z/n in increasing order (1 first).
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

pub fn multiplicative_order(k: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = k % n;
    let mut o = 1;
    while x != 1 {
        x = x * k % n;
        o += 1;
    }
    o
}

pub fn inverse_mod(k: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut x = 1;
    while x * k % n != 1 {
        x += 1;
    }
    x
}

/// ζ_n ↦ ζ_n^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisAutomorphism {
    conductor: u64,
    exponent: u64,
}

impl GaloisAutomorphism {
    pub fn new(conductor: u64, exponent: i64) -> Result<Self> {
        let k = exponent.rem_euclid(conductor as i64) as u64;
        let k = if conductor == 1 { 1 } else { k };
        if k.gcd(&conductor) != 1 {
            return Err(Error::ParameterInvalid(format!(
                "exponent {exponent} is not a unit modulo {conductor}"
            )));
        }
        Ok(GaloisAutomorphism { conductor, exponent: k })
    }

    pub fn identity(conductor: u64) -> Self {
        GaloisAutomorphism { conductor, exponent: 1 % conductor.max(2) }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        GaloisAutomorphism {
            conductor: self.conductor,
            exponent: if self.conductor == 1 { 1 } else { self.exponent * other.exponent % self.conductor },
        }
    }

    pub fn inverse(&self) -> Self {
        GaloisAutomorphism {
            conductor: self.conductor,
            exponent: if self.conductor == 1 { 1 } else { inverse_mod(self.exponent, self.conductor) },
        }
    }

    pub fn order(&self) -> u64 {
        multiplicative_order(self.exponent, self.conductor)
    }

    /// Apply to `x`; x is lifted first when its conductor divides ours.
    pub fn apply(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        if x.conductor() == self.conductor {
            return Ok(x.galois(self.exponent));
        }
        if self.conductor.is_multiple_of(x.conductor()) {
            return Ok(x.lift(self.conductor)?.galois(self.exponent));
        }
        Err(Error::ConductorMismatch(x.conductor(), self.conductor))
    }
}

/// Trace and norm of `x` over a subgroup of automorphisms.
pub fn trace_and_norm(x: &Cyclotomic, subgroup: &[GaloisAutomorphism]) -> Result<(Cyclotomic, Cyclotomic)> {
    let n = subgroup.first().map_or(x.conductor(), |s| s.conductor().max(x.conductor()));
    let mut tr = Cyclotomic::zero(n);
    let mut nm = Cyclotomic::one(n);
    for s in subgroup {
        let y = s.apply(x)?;
        tr = tr.add(&y);
        nm = nm.mul(&y);
    }
    Ok((tr, nm))
}

/// Closure of a set of exponents under multiplication modulo n, sorted.
pub fn generated_subgroup(n: u64, gens: &[u64]) -> Vec<u64> {
    let mut set = vec![1 % n.max(2)];
    if n == 1 {
        return vec![1];
    }
    let mut i = 0;
    while i < set.len() {
        for &g in gens {
            let y = set[i] * g % n;
            if !set.contains(&y) {
                set.push(y);
            }
        }
        i += 1;
    }
    set.sort_unstable();
    set
}

/// Smallest representative of each coset `k·sub` in (Z/n)ˣ, increasing.
pub fn coset_representatives(n: u64, sub: &[u64]) -> Vec<u64> {
    let mut covered = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for k in units_mod(n) {
        if covered.contains(&k) {
            continue;
        }
        reps.push(k);
        for &s in sub {
            covered.insert(k * s % n.max(1));
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn conjugation_on_gaussian() {
        let s = GaloisAutomorphism::new(4, 3).unwrap();
        let i = Cyclotomic::zeta_power(4, 1);
        assert_eq!(s.apply(&i).unwrap(), i.neg());
        let id = GaloisAutomorphism::identity(4);
        assert_eq!(id.apply(&i).unwrap(), i);
    }

    #[test]
    fn fixed_gaussian_period() {
        let s = GaloisAutomorphism::new(7, 2).unwrap();
        let z = |j| Cyclotomic::zeta_power(7, j);
        let x = z(1).add(&z(2)).add(&z(4));
        assert_eq!(s.apply(&x).unwrap(), x);
    }

    #[test]
    fn traces_and_norms() {
        let sub = [GaloisAutomorphism::identity(5), GaloisAutomorphism::new(5, 4).unwrap()];
        let (t, _) = trace_and_norm(&Cyclotomic::zeta_power(5, 1), &sub).unwrap();
        assert_eq!(t, Cyclotomic::zeta_power(5, 1).add(&Cyclotomic::zeta_power(5, 4)));
        let full = [GaloisAutomorphism::identity(4), GaloisAutomorphism::new(4, 3).unwrap()];
        let x = Cyclotomic::one(4).add(&Cyclotomic::zeta_power(4, 1));
        let (_, nm) = trace_and_norm(&x, &full).unwrap();
        assert_eq!(nm, Cyclotomic::from_rational(4, int(2)));
        let q = Cyclotomic::from_rational(5, int(3));
        let (t, _) = trace_and_norm(&q, &sub).unwrap();
        assert_eq!(t, q.scale(&int(2)));
    }

    #[test]
    fn groups_mod_n() {
        assert_eq!(units_mod(8), vec![1, 3, 5, 7]);
        assert_eq!(generated_subgroup(7, &[2]), vec![1, 2, 4]);
        assert_eq!(coset_representatives(7, &[1, 2, 4]), vec![1, 3]);
        assert_eq!(multiplicative_order(3, 7), 6);
        assert!(GaloisAutomorphism::new(6, 2).is_err());
    }
}
