//! Elements of Q(ζ_n) in the power basis reduced modulo the n-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::rational::{from_pair, to_pair, Rational};
use crate::error::{Error, Result};

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            poly = exact_monic_division(&poly, &div);
        }
    }
    let p = Arc::new(poly);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduce a dense coefficient list (entry i is the coefficient of ζ_n^i) modulo Φ_n.
fn reduce(n: u64, mut v: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], Rational::zero());
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                v[i - d + j] -= &c * Rational::from_integer(pj.into());
            }
        }
    }
    v.resize(d, Rational::zero());
    v
}

#[derive(Clone)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*z{}", self.n),
                _ => format!("({c})*z{}^{i}", self.n),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        Cyclotomic {
            n,
            coeffs: vec![Rational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn from_rational(n: u64, q: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, Rational::one())
    }

    /// ζ_n^j for any integer j.
    pub fn zeta_power(n: u64, j: i64) -> Self {
        let e = j.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_dense(n, v)
    }

    /// Build from coefficients on ζ^0, ζ^1, … (any length; reduced).
    pub fn from_dense(n: u64, v: Vec<Rational>) -> Self {
        Cyclotomic { n, coeffs: reduce(n, v) }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if this lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    /// Same element written over ζ_m, where n divides m.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::ConductorMismatch(self.n, m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let mut v = vec![Rational::zero(); step * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::from_dense(m, v))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = self.n.lcm(&other.n);
        (self.lift(m).unwrap(), other.lift(m).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.n == other.n {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic { n: self.n, coeffs };
        }
        let (a, b) = self.common(other);
        a.add(&b)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.n != other.n {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let d = self.coeffs.len();
        let mut v = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.n, v)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under ζ ↦ ζ^k; `k` must be coprime to the conductor.
    pub fn galois(&self, k: u64) -> Self {
        debug_assert_eq!(k.gcd(&self.n), 1);
        let n = self.n as usize;
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i * k as usize) % n] += c;
            }
        }
        Self::from_dense(self.n, v)
    }

    /// Product of all conjugates over Q.
    pub fn absolute_norm(&self) -> Rational {
        let mut acc = self.clone();
        for k in super::galois::units_mod(self.n).into_iter().skip(1) {
            acc = acc.mul(&self.galois(k));
        }
        acc.as_rational().expect("absolute norm is rational")
    }

    /// Multiplicative inverse; certified by the product check.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut cof = Self::one(self.n);
        for k in super::galois::units_mod(self.n).into_iter().skip(1) {
            cof = cof.mul(&self.galois(k));
        }
        let norm = self.mul(&cof).as_rational().expect("norm is rational");
        let inv = cof.scale(&(Rational::one() / norm));
        debug_assert!(self.mul(&inv).is_one());
        Ok(inv)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "conductor": self.n,
            "coeffs": self.coeffs.iter().map(to_pair).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed cyclotomic number".into());
        let n = v.get("conductor").and_then(Value::as_u64).ok_or_else(bad)?;
        if n == 0 {
            return Err(bad());
        }
        let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(bad)?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for p in arr {
            let p = p.as_array().ok_or_else(bad)?;
            if p.len() != 2 {
                return Err(bad());
            }
            coeffs.push(from_pair(p[0].as_str().ok_or_else(bad)?, p[1].as_str().ok_or_else(bad)?)?);
        }
        Ok(Self::from_dense(n, coeffs))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.common(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}
