//! Elements of the rational group algebra QG and the averaging idempotents built from subgroups.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::arith::matrix::ExactMatrix;
use crate::arith::rational::{from_pair, to_pair, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Sparse element of QG: integer numerators over one positive common denominator, kept reduced.
#[derive(Clone)]
pub struct AlgebraElement {
    group: Arc<FiniteGroup>,
    terms: Vec<(u32, BigInt)>,
    den: BigInt,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.den == other.den && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let q = Rational::new(c.clone(), self.den.clone());
                format!("({q})*{}", self.group.word(*g as usize))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AlgebraElement {
    fn normalized(group: Arc<FiniteGroup>, mut terms: Vec<(u32, BigInt)>, mut den: BigInt) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        if terms.is_empty() {
            return AlgebraElement { group, terms, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for t in terms.iter_mut() {
                t.1 = -std::mem::take(&mut t.1);
            }
        }
        let g = terms.iter().fold(den.clone(), |acc, (_, c)| acc.gcd(c));
        if !g.is_one() {
            for t in terms.iter_mut() {
                t.1 = &t.1 / &g;
            }
            den = &den / &g;
        }
        AlgebraElement { group, terms, den }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        AlgebraElement { group: group.clone(), terms: Vec::new(), den: BigInt::one() }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    /// The group element `g` as an algebra element.
    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        AlgebraElement {
            group: group.clone(),
            terms: vec![(g as u32, BigInt::one())],
            den: BigInt::one(),
        }
    }

    pub fn from_terms(group: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let terms: Vec<(usize, Rational)> = terms.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        let den = terms.iter().fold(BigInt::one(), |a, (_, q)| a.lcm(q.denom()));
        let mut acc: Vec<(u32, BigInt)> = terms
            .into_iter()
            .map(|(g, q)| (g as u32, q.numer() * (&den / q.denom())))
            .collect();
        acc.sort_by_key(|t| t.0);
        let mut merged: Vec<(u32, BigInt)> = Vec::with_capacity(acc.len());
        for (g, c) in acc {
            match merged.last_mut() {
                Some(last) if last.0 == g => last.1 += c,
                _ => merged.push((g, c)),
            }
        }
        Self::normalized(group.clone(), merged, den)
    }

    pub fn from_dense(group: &Arc<FiniteGroup>, v: &[Rational]) -> Self {
        Self::from_terms(group, v.iter().cloned().enumerate())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
    }

    pub fn coeff(&self, g: usize) -> Rational {
        match self.terms.binary_search_by_key(&(g as u32), |t| t.0) {
            Ok(i) => Rational::new(self.terms[i].1.clone(), self.den.clone()),
            Err(_) => Rational::zero(),
        }
    }

    pub fn terms(&self) -> Vec<(usize, Rational)> {
        self.terms
            .iter()
            .map(|(g, c)| (*g as usize, Rational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.0 as usize).collect()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.group.order()];
        for (g, c) in &self.terms {
            v[*g as usize] = Rational::new(c.clone(), self.den.clone());
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.den.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn augmentation(&self) -> Rational {
        Rational::new(self.terms.iter().map(|t| &t.1).sum(), self.den.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let gi = self.terms.get(i).map(|t| t.0);
            let gj = other.terms.get(j).map(|t| t.0);
            match (gi, gj) {
                (Some(a), Some(b)) if a == b => {
                    let y = &other.terms[j].1 * &fb;
                    let c = &self.terms[i].1 * &fa + if sign > 0 { y } else { -y };
                    out.push((a, c));
                    i += 1;
                    j += 1;
                }
                (Some(a), b) if b.is_none_or(|b| a < b) => {
                    out.push((a, &self.terms[i].1 * &fa));
                    i += 1;
                }
                _ => {
                    let y = &other.terms[j].1 * &fb;
                    out.push((other.terms[j].0, if sign > 0 { y } else { -y }));
                    j += 1;
                }
            }
        }
        Self::normalized(self.group.clone(), out, l)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.combine(other, -1))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let terms = self.terms.iter().map(|(g, c)| (*g, c * q.numer())).collect();
        Self::normalized(self.group.clone(), terms, &self.den * q.denom())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_same(other))
    }

    fn mul_same(&self, other: &Self) -> Self {
        let n = self.group.order();
        let den = &self.den * &other.den;
        if let Some(v) = self.mul_small(other, n) {
            let terms = v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(g, c)| (g as u32, BigInt::from(c)))
                .collect();
            return Self::normalized(self.group.clone(), terms, den);
        }
        let mut acc = vec![BigInt::zero(); n];
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                acc[self.group.mul(*g as usize, *h as usize)] += a * b;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (g as u32, c))
            .collect();
        Self::normalized(self.group.clone(), terms, den)
    }

    // machine-integer convolution; None on overflow
    fn mul_small(&self, other: &Self, n: usize) -> Option<Vec<i128>> {
        let a: Vec<(usize, i64)> = self
            .terms
            .iter()
            .map(|(g, c)| c.to_i64().map(|c| (*g as usize, c)))
            .collect::<Option<_>>()?;
        let b: Vec<(usize, i64)> = other
            .terms
            .iter()
            .map(|(g, c)| c.to_i64().map(|c| (*g as usize, c)))
            .collect::<Option<_>>()?;
        let mut acc = vec![0i128; n];
        for &(g, x) in &a {
            for &(h, y) in &b {
                let k = self.group.mul(g, h);
                acc[k] = acc[k].checked_add(x as i128 * y as i128)?;
            }
        }
        Some(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.group);
        for _ in 0..e {
            acc = self.mul_same(&acc);
        }
        acc
    }

    fn map_support(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut terms: Vec<(u32, BigInt)> =
            self.terms.iter().map(|(g, c)| (f(*g as usize) as u32, c.clone())).collect();
        terms.sort_by_key(|t| t.0);
        AlgebraElement { group: self.group.clone(), terms, den: self.den.clone() }
    }

    /// `g⁻¹ x g`.
    pub fn conjugate_by(&self, g: usize) -> Self {
        let gr = self.group.clone();
        self.map_support(|h| gr.conj(h, g))
    }

    /// `g·x`.
    pub fn left_mul_group(&self, g: usize) -> Self {
        let gr = self.group.clone();
        self.map_support(|h| gr.mul(g, h))
    }

    /// `x·g`.
    pub fn right_mul_group(&self, g: usize) -> Self {
        let gr = self.group.clone();
        self.map_support(|h| gr.mul(h, g))
    }

    pub fn is_idempotent(&self) -> bool {
        &self.mul_same(self) == self
    }

    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&s| &self.conjugate_by(s) == self)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul_same(other) == other.mul_same(self)
    }

    pub fn are_orthogonal(&self, other: &Self) -> bool {
        self.mul_same(other).is_zero() && other.mul_same(self).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (g, q) in self.terms() {
            let [n, d] = to_pair(&q);
            m.insert(g.to_string(), Value::Array(vec![Value::String(n), Value::String(d)]));
        }
        let mut out = Map::new();
        out.insert("coeffs".into(), Value::Object(m));
        Value::Object(out)
    }

    pub fn from_json(group: &Arc<FiniteGroup>, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("malformed algebra element: {m}"));
        let m = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        let mut terms = Vec::with_capacity(m.len());
        for (k, p) in m {
            let g: usize = k.parse().map_err(|_| bad("bad index"))?;
            if g >= group.order() {
                return Err(bad("index out of range"));
            }
            let p = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("bad pair"))?;
            let q = from_pair(
                p[0].as_str().ok_or_else(|| bad("bad numerator"))?,
                p[1].as_str().ok_or_else(|| bad("bad denominator"))?,
            )?;
            terms.push((g, q));
        }
        Ok(Self::from_terms(group, terms))
    }
}

impl<'a> Add for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &'a AlgebraElement) -> AlgebraElement {
        self.try_add(o).expect("same group")
    }
}

impl<'a> Sub for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &'a AlgebraElement) -> AlgebraElement {
        self.try_sub(o).expect("same group")
    }
}

impl<'a> Mul for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &'a AlgebraElement) -> AlgebraElement {
        self.try_mul(o).expect("same group")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let terms = self.terms.iter().map(|(g, c)| (*g, -c)).collect();
        AlgebraElement { group: self.group.clone(), terms, den: self.den.clone() }
    }
}

/// `Ĥ = (1/|H|) Σ h`.
pub fn hat(group: &Arc<FiniteGroup>, h: &Subgroup) -> AlgebraElement {
    let q = Rational::new(BigInt::one(), BigInt::from(h.order()));
    AlgebraElement::from_terms(group, h.iter().map(|x| (x, q.clone())))
}

/// Normal subgroups of `H` minimal among those properly containing `K`.
pub fn minimal_normal_oversubgroups(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<Subgroup>> {
    if !g.is_normal_in(k, h) {
        return Err(Error::NotNormal);
    }
    if let Some(gen) = g.quotient_is_cyclic(h, k)? {
        // subgroups of a cyclic quotient: one minimal one per prime divisor
        let m = (h.order() / k.order()) as u64;
        return Ok(crate::arith::cyclotomic::prime_factors(m)
            .into_iter()
            .map(|p| g.join(k, &[g.pow(gen, (m / p) as i64)]))
            .collect());
    }
    let mut cands: Vec<Subgroup> = Vec::new();
    for x in h.iter().filter(|&x| !k.contains(x)) {
        if cands.iter().any(|c| c.contains(x) && c.order() == k.order() * g.coset_order(x, k)) {
            continue;
        }
        let l = g.normal_closure_in(&g.join(k, &[x]), h);
        if !cands.contains(&l) {
            cands.push(l);
        }
    }
    let minimal: Vec<Subgroup> = cands
        .iter()
        .filter(|l| !cands.iter().any(|o| o != *l && o.is_subset(l)))
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort();
    Ok(minimal)
}

/// `ε(H,K)`: `K̂` when `H = K`, otherwise the product of `K̂ − L̂` over minimal normal `L ⊋ K`.
pub fn epsilon(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<AlgebraElement> {
    if !group.is_normal_in(k, h) {
        return Err(Error::NotNormal);
    }
    let khat = hat(group, k);
    if h == k {
        return Ok(khat);
    }
    let mut acc = khat.clone();
    for l in minimal_normal_oversubgroups(group, h, k)? {
        let factor = &khat - &hat(group, &l);
        acc = &acc * &factor;
    }
    debug_assert!(acc.is_idempotent());
    Ok(acc)
}

/// Distinct conjugates `x^g`, `g ∈ G`, in order of first appearance along a right transversal
/// of a subgroup known to fix `x`.
pub fn distinct_conjugates(x: &AlgebraElement, fixer: &Subgroup) -> Vec<AlgebraElement> {
    let g = x.group().clone();
    let t = g.right_transversal(&g.whole(), fixer).expect("subgroup of G");
    let mut out: Vec<AlgebraElement> = Vec::new();
    for r in t.reps {
        let c = x.conjugate_by(r);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `e(G,H,K)`: sum of the distinct G-conjugates of `ε(H,K)`, with its idempotency flag.
pub fn e_sum_of_conjugates(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<(AlgebraElement, bool)> {
    let eps = epsilon(group, h, k)?;
    let fixer = group.intersection(&group.normalizer(h), &group.normalizer(k));
    let mut e = AlgebraElement::zero(group);
    for c in distinct_conjugates(&eps, &fixer) {
        e = &e + &c;
    }
    let idem = e.is_idempotent();
    Ok((e, idem))
}

/// Elements `g` with `g⁻¹ x g = x`, restricted to `ambient`.
pub fn centralizer_of_element(x: &AlgebraElement, ambient: &Subgroup) -> Subgroup {
    let g = x.group();
    let members: Vec<usize> = ambient.iter().filter(|&s| &x.conjugate_by(s) == x).collect();
    g.subgroup_from_members(&members).expect("stabilizer is a subgroup")
}

/// Incremental row echelon form over Q, used for spans of algebra elements.
#[derive(Default, Clone)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
    }

    /// Adds `v` to the span; true when it was independent.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &v[p];
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }
}

/// Basis of `e·QG·e`, chosen among the elements `e g e` in group order.
pub fn corner_basis(e: &AlgebraElement) -> Vec<AlgebraElement> {
    let group = e.group().clone();
    if e.is_one() {
        return (0..group.order()).map(|g| AlgebraElement::basis(&group, g)).collect();
    }
    // e·g·e is constant on double cosets A_r·g·A_l of the absorbing subgroups
    let right_abs: Vec<usize> = (0..group.order()).filter(|&a| &e.right_mul_group(a) == e).collect();
    let left_abs: Vec<usize> = (0..group.order()).filter(|&a| &e.left_mul_group(a) == e).collect();
    let mut seen = vec![false; group.order()];
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for g in 0..group.order() {
        if seen[g] {
            continue;
        }
        for &a in &right_abs {
            let ag = group.mul(a, g);
            for &b in &left_abs {
                seen[group.mul(ag, b)] = true;
            }
        }
        let b = e * &e.left_mul_group(g);
        if b.is_zero() {
            continue;
        }
        if ech.insert(b.to_dense()) {
            basis.push(b);
        }
    }
    basis
}

/// `dim_Q(f·QG·f)`.
pub fn corner_dimension(e: &AlgebraElement, f: &AlgebraElement) -> Result<usize> {
    if !e.is_idempotent() || !f.is_idempotent() {
        return Err(Error::NotAnIdempotent);
    }
    if &(f * e) != f {
        return Err(Error::DimensionMismatch("f does not lie under e".into()));
    }
    Ok(corner_basis(f).len())
}

/// Coordinates of `target` in the span of `vectors`, if it lies there.
pub fn solve_in_span(vectors: &[AlgebraElement], target: &AlgebraElement) -> Result<Option<Vec<Rational>>> {
    let n = target.group().order();
    if vectors.is_empty() {
        return Ok(target.is_zero().then(Vec::new));
    }
    let cols: Vec<Vec<Rational>> = vectors.iter().map(|v| v.to_dense()).collect();
    // rows restricted to the joint support keep the system small
    let mut used = vec![false; n];
    for v in vectors.iter().chain(std::iter::once(target)) {
        for g in v.support() {
            used[g] = true;
        }
    }
    let rows_idx: Vec<usize> = (0..n).filter(|&g| used[g]).collect();
    let a = ExactMatrix::from_rows(
        rows_idx
            .iter()
            .map(|&g| cols.iter().map(|c| c[g].clone()).collect())
            .collect(),
    )?;
    let t = target.to_dense();
    let b: Vec<Rational> = rows_idx.iter().map(|&g| t[g].clone()).collect();
    a.solve(&b)
}

/// Basis of the linear relations among `vectors`.
pub fn kernel_of(vectors: &[AlgebraElement]) -> Result<Vec<Vec<Rational>>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let n = first.group().order();
    let mut used = vec![false; n];
    for v in vectors {
        for g in v.support() {
            used[g] = true;
        }
    }
    let dense: Vec<Vec<Rational>> = vectors.iter().map(|v| v.to_dense()).collect();
    let rows: Vec<Vec<Rational>> = (0..n)
        .filter(|&g| used[g])
        .map(|g| dense.iter().map(|c| c[g].clone()).collect())
        .collect();
    if rows.is_empty() {
        // every vector is zero
        return Ok((0..vectors.len())
            .map(|i| (0..vectors.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect());
    }
    ExactMatrix::from_rows(rows)?.kernel_basis()
}

pub fn combine(vectors: &[AlgebraElement], coeffs: &[Rational]) -> AlgebraElement {
    let mut acc = AlgebraElement::zero(vectors[0].group());
    for (v, c) in vectors.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &v.scale(c);
        }
    }
    acc
}

/// Solve `x·y = e` inside `e·QG·e`, with `basis` a basis of that corner.
pub fn inverse_with_basis(e: &AlgebraElement, x: &AlgebraElement, basis: &[AlgebraElement]) -> Result<Option<AlgebraElement>> {
    let cols: Vec<AlgebraElement> = basis.iter().map(|b| x * b).collect();
    let Some(c) = solve_in_span(&cols, e)? else {
        return Ok(None);
    };
    let y = combine(basis, &c);
    if &(&y * x) != e || &(x * &y) != e {
        return Ok(None);
    }
    Ok(Some(y))
}

/// Inverse of `x` in the corner `e·QG·e`, or `None` when `x` is singular there.
pub fn inverse_in_corner(e: &AlgebraElement, x: &AlgebraElement) -> Result<Option<AlgebraElement>> {
    e.check(x)?;
    if !e.is_idempotent() {
        return Err(Error::NotAnIdempotent);
    }
    if e.is_one() {
        // the inverse lies in the subalgebra spanned by the subgroup generated by the support
        let group = x.group().clone();
        let s = group.generated(&x.support());
        let basis: Vec<AlgebraElement> = s.iter().map(|g| AlgebraElement::basis(&group, g)).collect();
        return inverse_with_basis(e, x, &basis);
    }
    if &(e * x) != x || &(x * e) != x {
        return Err(Error::DimensionMismatch("element is not in the corner".into()));
    }
    inverse_with_basis(e, x, &corner_basis(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::group::DEFAULT_CLOSURE_CAP;

    fn grp(text: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutation_text(text, DEFAULT_CLOSURE_CAP).unwrap())
    }

    /// Oracle: dense convolution straight from the definition.
    fn convolve(g: &FiniteGroup, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = g.order();
        let mut out = vec![Rational::zero(); n];
        for x in 0..n {
            for y in 0..n {
                out[g.mul(x, y)] += &a[x] * &b[y];
            }
        }
        out
    }

    #[test]
    fn inverse_pairs_multiply_to_one() {
        let g = grp("r: (1 2 3)\ns: (1 2)");
        for x in 0..6 {
            let p = &AlgebraElement::basis(&g, x) * &AlgebraElement::basis(&g, g.inv(x));
            assert!(p.is_one());
        }
    }

    #[test]
    fn hats_are_idempotent() {
        let g = grp("a: (1 2 3 4)\nb: (2 4)");
        for h in g.all_subgroups(200).unwrap() {
            let e = hat(&g, &h);
            assert!(e.is_idempotent());
            assert_eq!(e.is_central(), g.is_normal(&h));
        }
    }

    #[test]
    fn s3_complement_of_rotation_average() {
        let g = grp("r: (1 2 3)\ns: (1 2)");
        let r = g.generated(&[g.parse_word("r").unwrap()]);
        let x = &AlgebraElement::one(&g) - &hat(&g, &r);
        let sq = convolve(&g, &x.to_dense(), &x.to_dense());
        assert_eq!(sq, x.to_dense());
        assert_eq!(&x * &x, x);
    }

    #[test]
    fn epsilon_examples() {
        let c2 = grp("h: (1 2)");
        let e = epsilon(&c2, &c2.whole(), &c2.whole()).unwrap();
        assert_eq!(e, AlgebraElement::from_terms(&c2, [(0, rat(1, 2)), (1, rat(1, 2))]));

        let c4 = grp("a: (1 2 3 4)");
        let e = epsilon(&c4, &c4.whole(), &c4.trivial_subgroup()).unwrap();
        let a2 = c4.parse_word("a^2").unwrap();
        assert_eq!(e, AlgebraElement::from_terms(&c4, [(0, rat(1, 2)), (a2, rat(-1, 2))]));

        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let r = s3.generated(&[s3.parse_word("r").unwrap()]);
        let e = epsilon(&s3, &r, &s3.trivial_subgroup()).unwrap();
        assert_eq!(e, &AlgebraElement::one(&s3) - &hat(&s3, &r));

        let b = s3.generated(&[s3.parse_word("s").unwrap()]);
        assert!(matches!(epsilon(&s3, &s3.whole(), &b), Err(Error::NotNormal)));
    }

    #[test]
    fn conjugate_sums() {
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let (e, idem) = e_sum_of_conjugates(&s3, &s3.whole(), &s3.whole()).unwrap();
        assert_eq!(e, hat(&s3, &s3.whole()));
        assert!(idem);
        let r = s3.generated(&[1]);
        let (e, idem) = e_sum_of_conjugates(&s3, &r, &s3.trivial_subgroup()).unwrap();
        assert!(idem && e.is_central());
        assert_eq!(e, epsilon(&s3, &r, &s3.trivial_subgroup()).unwrap());

        let d8 = grp("a: (1 2 3 4)\nb: (2 4)");
        let a = d8.generated(&[1]);
        let (e, _) = e_sum_of_conjugates(&d8, &a, &d8.trivial_subgroup()).unwrap();
        let a2 = d8.parse_word("a^2").unwrap();
        assert_eq!(e, AlgebraElement::from_terms(&d8, [(0, rat(1, 2)), (a2, rat(-1, 2))]));
    }

    #[test]
    fn orthogonality_predicates() {
        let c4 = grp("a: (1 2 3 4)");
        let a2 = c4.parse_word("a^2").unwrap();
        let x = AlgebraElement::from_terms(&c4, [(0, rat(1, 2)), (a2, rat(-1, 2))]);
        let y = AlgebraElement::from_terms(&c4, [(0, rat(1, 2)), (a2, rat(1, 2))]);
        assert!(x.are_orthogonal(&y));
        assert!(!AlgebraElement::basis(&c4, 1).is_idempotent());
    }

    #[test]
    fn corners_and_inverses() {
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let one = AlgebraElement::one(&s3);
        assert_eq!(corner_dimension(&one, &one).unwrap(), 6);
        let g = 4;
        let inv = inverse_in_corner(&one, &AlgebraElement::basis(&s3, g)).unwrap().unwrap();
        assert_eq!(inv, AlgebraElement::basis(&s3, s3.inv(g)));
        // a primitive idempotent of the 2x2 block: (1 - r̂)(1 + s)/2
        let r = s3.generated(&[1]);
        let e = &one - &hat(&s3, &r);
        let s = s3.parse_word("s").unwrap();
        let f = &e * &AlgebraElement::from_terms(&s3, [(0, rat(1, 2)), (s, rat(1, 2))]);
        assert!(f.is_idempotent());
        assert_eq!(corner_dimension(&e, &f).unwrap(), 1);
        assert_eq!(corner_dimension(&one, &e).unwrap(), 4);
        // 1 + s is a zero divisor, hence not invertible
        let z = AlgebraElement::from_terms(&s3, [(0, int(1)), (s, int(1))]);
        assert!(inverse_in_corner(&one, &z).unwrap().is_none());
        assert!(matches!(inverse_in_corner(&z, &one), Err(Error::NotAnIdempotent)));
    }

    #[test]
    fn json_round_trip_and_mismatch() {
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let x = AlgebraElement::from_terms(&s3, [(0, rat(1, 3)), (5, rat(-7, 2))]);
        assert_eq!(AlgebraElement::from_json(&s3, &x.to_json()).unwrap(), x);
        let other = grp("r: (1 2 3)\ns: (1 2)");
        assert!(matches!(x.try_mul(&AlgebraElement::one(&other)), Err(Error::GroupMismatch)));
    }

    #[test]
    fn big_coefficients_fall_back_to_bigint() {
        let c4 = grp("a: (1 2 3 4)");
        let big = Rational::from_integer(BigInt::from(i64::MAX));
        let x = AlgebraElement::from_terms(&c4, [(0, big.clone()), (1, big.clone())]);
        let y = &x * &x;
        assert_eq!(y.coeff(1), &big * &big * int(2));
    }
}
