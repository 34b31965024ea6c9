//! One simple component `QG·e` as a crossed product.
//!
//! All field and twisting computations run in the corner `ε·QG·ε`, where `ε = ε(H,K)`.
//! Corner elements lift to the full centralizer of the matrix units by `y ↦ Σ_t t⁻¹ y t`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{
    centralizer_of_element, combine, corner_basis, inverse_with_basis, kernel_of, solve_in_span, AlgebraElement,
};
use crate::arith::cyclotomic::{euler_phi, prime_factors, Cyclotomic};
use crate::arith::galois::{coset_representatives, multiplicative_order, units_mod, GaloisAutomorphism};
use crate::arith::rational::{rational_root, Rational};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::shoda::{ShodaPair, StrongInductiveChain};

pub const DEFAULT_MAX_HEIGHT: i64 = 64;
pub const DEFAULT_CANDIDATE_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug)]
pub struct ComponentOptions {
    /// Largest coefficient height tried in the norm-equation search.
    pub max_height: i64,
    /// Cap on norm-equation candidates per cyclic factor.
    pub candidate_budget: usize,
}

impl Default for ComponentOptions {
    fn default() -> Self {
        ComponentOptions { max_height: DEFAULT_MAX_HEIGHT, candidate_budget: DEFAULT_CANDIDATE_BUDGET }
    }
}

/// Cyclic-algebra data `(𝔼/𝔽, σ, z^d = a)` kept when the twisting could not be trivialized.
#[derive(Clone, Debug)]
pub struct CyclicPresentation {
    pub sigma: GaloisAutomorphism,
    pub order: u64,
    pub power: Cyclotomic,
}

#[derive(Clone, Debug)]
pub struct ComponentDescriptor {
    pub group: Arc<FiniteGroup>,
    pub pair: ShodaPair,
    pub chain: StrongInductiveChain,
    /// Central idempotent of the component.
    pub e: AlgebraElement,
    pub epsilon: AlgebraElement,
    /// Composite right transversal, identity first; `|T| = k`.
    pub transversal: Vec<usize>,
    /// `b_units[i][j] = t_i⁻¹ ε t_j`.
    pub b_units: Vec<Vec<AlgebraElement>>,
    /// `[H:K]`; the field `𝔼 ≅ Q(ζ_conductor)` via `ζ ↦ hε`.
    pub conductor: u64,
    pub field_generator: usize,
    pub corner_basis: Vec<AlgebraElement>,
    /// `h^j ε` for `j < φ(conductor)`.
    pub field_basis: Vec<AlgebraElement>,
    /// Galois group of `𝔼/𝔽`, identity first, ascending exponents.
    pub galois: Vec<GaloisAutomorphism>,
    /// Corner twisting units aligned with `galois`: `z⁻¹ y z = σ(y)` for `y ∈ 𝔼`.
    pub z_units: Vec<AlgebraElement>,
    pub trivialized: bool,
    pub twisting_failure: Option<String>,
    pub cyclic_presentation: Option<CyclicPresentation>,
}

/// Composite transversal `T = T_0 T_1 ⋯`, each `T_i` a right transversal of `C_i` in `H_{i+1}`.
pub fn composite_transversal(group: &FiniteGroup, chain: &StrongInductiveChain) -> Result<Vec<usize>> {
    let mut t = vec![group.identity()];
    for (i, c) in chain.centralizers.iter().enumerate() {
        let level = group.right_transversal(&chain.tower[i + 1], c)?.reps;
        t = t.iter().flat_map(|&a| level.iter().map(move |&b| (a, b))).map(|(a, b)| group.mul(a, b)).collect();
    }
    Ok(t)
}

/// Matrix units `t_i⁻¹ ε t_j` of the split part, verified through `ε t_j t_k⁻¹ ε = δ_jk ε`.
pub fn build_b_matrix_units(
    group: &FiniteGroup,
    eps: &AlgebraElement,
    e: &AlgebraElement,
    transversal: &[usize],
) -> Result<Vec<Vec<AlgebraElement>>> {
    for (j, &tj) in transversal.iter().enumerate() {
        for (k, &tk) in transversal.iter().enumerate() {
            let p = eps * &eps.left_mul_group(group.mul(tj, group.inv(tk)));
            let ok = if j == k { &p == eps } else { p.is_zero() };
            if !ok {
                return Err(Error::MatrixUnitRelationFailed(format!("product of units ({j}) and ({k}) is wrong")));
            }
        }
    }
    let units: Vec<Vec<AlgebraElement>> = transversal
        .iter()
        .map(|&ti| transversal.iter().map(|&tj| eps.left_mul_group(group.inv(ti)).right_mul_group(tj)).collect())
        .collect();
    let mut trace = AlgebraElement::zero(eps.group());
    for (i, row) in units.iter().enumerate() {
        trace = &trace + &row[i];
    }
    if &trace != e {
        return Err(Error::MatrixUnitRelationFailed("diagonal units do not sum to the central idempotent".into()));
    }
    Ok(units)
}

impl ComponentDescriptor {
    pub fn build(pair: &ShodaPair, chain: &StrongInductiveChain, opts: &ComponentOptions) -> Result<Self> {
        let group = pair.character.group().clone();
        let e = chain.central_idempotent().clone();
        let eps = chain.idempotents[0].clone();
        let transversal = composite_transversal(&group, chain)?;
        if transversal.len() != chain.k() {
            return Err(Error::InvariantBreach("transversal size differs from k".into()));
        }
        let b_units = build_b_matrix_units(&group, &eps, &e, &transversal)?;
        let conductor = pair.index() as u64;
        let h = pair.character.generator();
        let phi = euler_phi(conductor) as usize;
        let field_basis: Vec<AlgebraElement> =
            (0..phi).map(|j| eps.left_mul_group(group.pow(h, j as i64))).collect();
        let basis = corner_basis(&eps);
        if basis.len() != chain.galois_size() * phi {
            return Err(Error::DimensionMismatch(format!(
                "corner has dimension {} but the crossed product needs {}",
                basis.len(),
                chain.galois_size() * phi
            )));
        }
        let mut comp = ComponentDescriptor {
            group,
            pair: pair.clone(),
            chain: chain.clone(),
            e,
            epsilon: eps,
            transversal,
            b_units,
            conductor,
            field_generator: h,
            corner_basis: basis,
            field_basis,
            galois: Vec::new(),
            z_units: Vec::new(),
            trivialized: false,
            twisting_failure: None,
            cyclic_presentation: None,
        };
        comp.find_twisting_units()?;
        match comp.trivialize_twisting(opts) {
            Ok(()) => comp.trivialized = true,
            Err(Error::TwistingNotTrivialized(why)) => comp.twisting_failure = Some(why),
            Err(other) => return Err(other),
        }
        Ok(comp)
    }

    /// Size of the split part, `k`.
    pub fn k(&self) -> usize {
        self.transversal.len()
    }

    /// `|𝒢|`.
    pub fn galois_size(&self) -> usize {
        self.chain.galois_size()
    }

    pub fn matrix_size(&self) -> usize {
        self.k() * self.galois_size()
    }

    pub fn center_dimension(&self) -> usize {
        euler_phi(self.conductor) as usize / self.galois_size()
    }

    pub fn contribution(&self) -> usize {
        self.matrix_size().pow(2) * self.center_dimension()
    }

    pub fn galois_exponents(&self) -> Vec<u64> {
        self.galois.iter().map(|s| s.exponent()).collect()
    }

    fn one(&self) -> &AlgebraElement {
        &self.epsilon
    }

    /// Corner image `x_E` of a cyclotomic number.
    pub fn embed_corner(&self, x: &Cyclotomic) -> Result<AlgebraElement> {
        let x = x.lift(self.conductor)?;
        Ok(combine(&self.field_basis, x.coeffs()))
    }

    /// `Σ_t t⁻¹ x_E t`, the diagonal copy of `x` in the component.
    pub fn embed_e(&self, x: &Cyclotomic) -> Result<AlgebraElement> {
        Ok(self.lift_corner(&self.embed_corner(x)?))
    }

    /// `Σ_t t⁻¹ y t` for a corner element `y`.
    pub fn lift_corner(&self, y: &AlgebraElement) -> AlgebraElement {
        let mut acc = AlgebraElement::zero(&self.group);
        for &t in &self.transversal {
            acc = &acc + &y.conjugate_by(t);
        }
        acc
    }

    pub fn extract_corner(&self, y: &AlgebraElement) -> Result<Cyclotomic> {
        let c = solve_in_span(&self.field_basis, y)?.ok_or(Error::NotInImage)?;
        Ok(Cyclotomic::from_dense(self.conductor, c))
    }

    /// Inverse of `embed_e`.
    pub fn extract_e(&self, z: &AlgebraElement) -> Result<Cyclotomic> {
        let corner = &(&self.epsilon * z) * &self.epsilon;
        let x = self.extract_corner(&corner)?;
        if &self.embed_e(&x)? != z {
            return Err(Error::NotInImage);
        }
        Ok(x)
    }

    pub fn corner_inverse(&self, y: &AlgebraElement) -> Result<Option<AlgebraElement>> {
        inverse_with_basis(&self.epsilon, y, &self.corner_basis)
    }

    fn corner_pow(&self, y: &AlgebraElement, d: u64) -> AlgebraElement {
        let mut acc = self.one().clone();
        for _ in 0..d {
            acc = &acc * y;
        }
        acc
    }

    /// Full-algebra twisting unit for `𝒢[i]`.
    pub fn z_unit(&self, i: usize) -> AlgebraElement {
        self.lift_corner(&self.z_units[i])
    }

    pub fn galois_index(&self, exponent: u64) -> Option<usize> {
        self.galois.iter().position(|s| s.exponent() == exponent % self.conductor.max(1) || self.conductor == 1)
    }

    /// Solves `hε·z = z·h^kε` for every `k`, keeping those with an invertible solution.
    pub fn find_twisting_units(&mut self) -> Result<()> {
        let m = self.conductor;
        let h = self.field_generator;
        let he = self.field_basis.get(1).cloned().unwrap_or_else(|| self.epsilon.left_mul_group(h));
        let cen = centralizer_of_element(&self.epsilon, &self.group.whole());
        let mut galois = Vec::new();
        let mut z_units = Vec::new();
        for k in units_mod(m) {
            let hk = self.group.pow(h, k as i64);
            let target = self.epsilon.left_mul_group(hk);
            // group elements centralizing ε give the cleanest units
            let direct = cen.iter().find(|&g| he.conjugate_by(g) == target);
            let z = match direct {
                Some(g) => Some(self.epsilon.left_mul_group(g)),
                None => self.solve_twisting(&he, &target)?,
            };
            if let Some(z) = z {
                galois.push(GaloisAutomorphism::new(m, k as i64)?);
                z_units.push(z);
            }
        }
        if galois.len() != self.galois_size() {
            return Err(Error::GaloisSizeMismatch { expected: self.galois_size(), found: galois.len() });
        }
        self.galois = galois;
        self.z_units = z_units;
        self.check_z_action()
    }

    fn solve_twisting(&self, he: &AlgebraElement, target: &AlgebraElement) -> Result<Option<AlgebraElement>> {
        let cols: Vec<AlgebraElement> = self.corner_basis.iter().map(|b| &(he * b) - &(b * target)).collect();
        let kernel = kernel_of(&cols)?;
        if kernel.is_empty() {
            return Ok(None);
        }
        let sols: Vec<AlgebraElement> = kernel.iter().map(|c| combine(&self.corner_basis, c)).collect();
        if self.corner_inverse(&sols[0])?.is_some() {
            return Ok(Some(sols[0].clone()));
        }
        // small integer combinations of up to three kernel vectors
        let n = sols.len();
        let coeffs: Vec<i64> = vec![1, -1, 2, -2];
        for size in 2..=3.min(n) {
            for idx in index_subsets(n, size) {
                for cs in coefficient_tuples(&coeffs, size) {
                    let mut z = AlgebraElement::zero(&self.group);
                    for (&i, &c) in idx.iter().zip(&cs) {
                        z = &z + &sols[i].scale(&Rational::from_integer(c.into()));
                    }
                    if self.corner_inverse(&z)?.is_some() {
                        return Ok(Some(z));
                    }
                }
            }
        }
        Err(Error::InvariantBreach("twisting solutions exist but none is invertible".into()))
    }

    /// `z_σ⁻¹ (h^j ε) z_σ = h^{jk} ε` on the whole field basis.
    fn check_z_action(&self) -> Result<()> {
        for (s, z) in self.galois.iter().zip(&self.z_units) {
            for (j, y) in self.field_basis.iter().enumerate() {
                let img = self.embed_corner(&Cyclotomic::zeta_power(self.conductor, j as i64).galois(s.exponent()))?;
                if (y * z) != (z * &img) {
                    return Err(Error::InvariantBreach(format!(
                        "twisting unit for exponent {} does not act as the automorphism",
                        s.exponent()
                    )));
                }
            }
        }
        Ok(())
    }

    fn norm_over(&self, x: &Cyclotomic, sub: &[u64]) -> Cyclotomic {
        sub.iter().fold(Cyclotomic::one(self.conductor), |acc, &k| acc.mul(&x.galois(k)))
    }

    /// `x` with `N_{⟨σ⟩}(x) = target`, by the unified candidate schedule.
    fn solve_norm_equation(&self, target: &Cyclotomic, sub: &[u64], d: u64, opts: &ComponentOptions) -> Option<Cyclotomic> {
        let m = self.conductor;
        let test = |y: &Cyclotomic| -> Option<Cyclotomic> {
            if y.is_zero() {
                return None;
            }
            let ny = self.norm_over(y, sub);
            let ratio = target.div(&ny).ok()?.as_rational()?;
            let c = rational_root(&ratio, d as u32)?;
            Some(y.scale(&c))
        };
        let roots: Vec<Cyclotomic> = (0..m.max(1) as i64)
            .flat_map(|l| [Cyclotomic::zeta_power(m, l), Cyclotomic::zeta_power(m, l).neg()])
            .collect();
        for y in &roots {
            if let Some(x) = test(y) {
                return Some(x);
            }
        }
        for s in square_root_candidates(m) {
            for r in &roots {
                if let Some(x) = test(&s.mul(r)) {
                    return Some(x);
                }
            }
        }
        let phi = euler_phi(m) as usize;
        let mut spent = 0usize;
        let mut height = 1i64;
        let mut prev = 0i64;
        while height <= opts.max_height {
            let mut found = None;
            let mut exhausted = false;
            for_each_vector(phi, height, |v| {
                // only vectors new at this height
                if v.iter().all(|c| c.abs() <= prev) {
                    return true;
                }
                spent += 1;
                if spent > opts.candidate_budget {
                    exhausted = true;
                    return false;
                }
                let y = Cyclotomic::from_dense(m, v.iter().map(|&c| Rational::from_integer(c.into())).collect());
                if let Some(x) = test(&y) {
                    found = Some(x);
                    return false;
                }
                true
            });
            if found.is_some() {
                return found;
            }
            if exhausted {
                return None;
            }
            prev = height;
            height *= 2;
        }
        None
    }

    /// Rescales the twisting units by field elements until `z_σ z_τ = z_{στ}`.
    pub fn trivialize_twisting(&mut self, opts: &ComponentOptions) -> Result<()> {
        let m = self.conductor;
        let exps = self.galois_exponents();
        if exps.len() == 1 {
            self.z_units = vec![self.epsilon.clone()];
            return Ok(());
        }
        let gens = cyclic_decomposition(m, &exps).ok_or_else(|| {
            Error::TwistingNotTrivialized("Galois group has no direct cyclic decomposition".into())
        })?;
        let mut fixed: Vec<AlgebraElement> = Vec::new();
        for &(g, d) in &gens {
            let i = self.galois_index(g).expect("generator in group");
            let z = self.z_units[i].clone();
            let a = self.extract_corner(&self.corner_pow(&z, d))?;
            let target = a.inverse()?;
            let sub: Vec<u64> = (0..d).map(|j| pow_mod(g, j, m)).collect();
            let x = self.solve_norm_equation(&target, &sub, d, opts).ok_or_else(|| {
                if gens.len() == 1 {
                    self.cyclic_presentation = Some(CyclicPresentation {
                        sigma: self.galois[i],
                        order: d,
                        power: a.clone(),
                    });
                }
                Error::TwistingNotTrivialized(format!("norm equation N(x) = {target} has no solution within the search bounds"))
            })?;
            let zx = &self.embed_corner(&x)? * &z;
            if &self.corner_pow(&zx, d) != self.one() {
                return Err(Error::InvariantBreach("rescaled twisting unit has the wrong power".into()));
            }
            fixed.push(zx);
        }
        if gens.len() > 1 {
            fixed = self.commuting_rescaling(&gens, fixed)?;
        }
        let mut z_units = Vec::with_capacity(exps.len());
        for &s in &exps {
            let powers = decompose(s, &gens, m).expect("element of the decomposed group");
            let mut acc = self.one().clone();
            for (zi, &p) in fixed.iter().zip(&powers) {
                acc = &acc * &self.corner_pow(zi, p);
            }
            z_units.push(acc);
        }
        self.z_units = z_units;
        self.check_z_action()?;
        self.check_cocycle()
    }

    fn commuting_rescaling(&self, gens: &[(u64, u64)], fixed: Vec<AlgebraElement>) -> Result<Vec<AlgebraElement>> {
        let m = self.conductor;
        // roots of unity of norm one for each generator keep the power relations
        let choices: Vec<Vec<AlgebraElement>> = gens
            .iter()
            .zip(&fixed)
            .map(|(&(g, d), z)| {
                let sub: Vec<u64> = (0..d).map(|j| pow_mod(g, j, m)).collect();
                (0..m as i64)
                    .flat_map(|l| [Cyclotomic::zeta_power(m, l), Cyclotomic::zeta_power(m, l).neg()])
                    .filter(|r| self.norm_over(r, &sub).is_one())
                    .map(|r| &self.embed_corner(&r).expect("same conductor") * z)
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; gens.len()];
        loop {
            let cand: Vec<&AlgebraElement> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            let commute = (0..cand.len()).all(|a| (a + 1..cand.len()).all(|b| cand[a] * cand[b] == cand[b] * cand[a]));
            if commute {
                return Ok(cand.into_iter().cloned().collect());
            }
            let mut p = 0;
            loop {
                if p == idx.len() {
                    return Err(Error::TwistingNotTrivialized("no commuting rescaling of the twisting units".into()));
                }
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    /// `z_σ z_τ = z_{στ}` for all pairs.
    fn check_cocycle(&self) -> Result<()> {
        for (i, s) in self.galois.iter().enumerate() {
            for (j, t) in self.galois.iter().enumerate() {
                let l = self.galois_index(s.compose(t).exponent()).expect("closed");
                if &self.z_units[i] * &self.z_units[j] != self.z_units[l] {
                    return Err(Error::InvariantBreach("twisting units are not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    /// Cosets of `𝒢` in `(Z/m)ˣ`; their orbit sums of `ζ` span the center.
    pub fn center_orbits(&self) -> Vec<Vec<u64>> {
        let exps = self.galois_exponents();
        let m = self.conductor;
        coset_representatives(m, &exps)
            .into_iter()
            .map(|r| {
                let mut o: Vec<u64> = exps.iter().map(|&s| r * s % m.max(1)).collect();
                o.sort_unstable();
                o
            })
            .collect()
    }

    pub fn summary_json(&self) -> Value {
        let words = |s: &crate::group::Subgroup| -> Vec<String> {
            self.group.subgroup_generators(s).into_iter().map(|g| self.group.word(g)).collect()
        };
        json!({
            "pair": {"H": words(&self.pair.h), "K": words(&self.pair.k), "H_order": self.pair.h.order(), "K_order": self.pair.k.order()},
            "chain": self.chain.tower.iter().map(words).collect::<Vec<_>>(),
            "k": self.k(),
            "galois_size": self.galois_size(),
            "m": if self.trivialized { json!(self.matrix_size()) } else { Value::Null },
            "center": {
                "conductor": self.conductor,
                "dimension": self.center_dimension(),
                "galois_exponents": self.galois_exponents(),
                "orbit_sums": self.center_orbits(),
            },
            "trivialized": self.trivialized,
            "twisting_failure": self.twisting_failure,
            "cyclic_presentation": self.cyclic_presentation.as_ref().map(|c| json!({
                "sigma_exponent": c.sigma.exponent(),
                "order": c.order,
                "z_power": c.power.to_json(),
            })),
            "contribution": self.contribution(),
        })
    }
}

/// `k^j mod m`.
fn pow_mod(k: u64, j: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    (0..j).fold(1 % m, |acc, _| acc * k % m)
}

/// Generators `(g_i, d_i)` with `𝒢 = ⟨g_1⟩ × ⋯`, largest orders first.
fn cyclic_decomposition(m: u64, exps: &[u64]) -> Option<Vec<(u64, u64)>> {
    let mut sorted: Vec<u64> = exps.to_vec();
    sorted.sort_by_key(|&x| (std::cmp::Reverse(multiplicative_order(x, m)), x));
    let mut gens: Vec<(u64, u64)> = Vec::new();
    let mut span: Vec<u64> = vec![1 % m.max(2)];
    for &x in &sorted {
        if span.len() == exps.len() {
            break;
        }
        let d = multiplicative_order(x, m);
        let cyc: Vec<u64> = (0..d).map(|j| pow_mod(x, j, m)).collect();
        if cyc.iter().skip(1).any(|c| span.contains(c)) {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * d as usize);
        for s in &span {
            for c in &cyc {
                next.push(s * c % m);
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() != span.len() * d as usize {
            continue;
        }
        span = next;
        gens.push((x, d));
    }
    (span.len() == exps.len()).then_some(gens)
}

/// Exponent vector of `s` over the decomposition.
fn decompose(s: u64, gens: &[(u64, u64)], m: u64) -> Option<Vec<u64>> {
    let mut idx = vec![0u64; gens.len()];
    loop {
        let v = gens.iter().zip(&idx).fold(1 % m.max(2), |acc, (&(g, _), &p)| acc * pow_mod(g, p, m) % m.max(1));
        if v == s % m.max(1) || m <= 2 {
            return Some(idx);
        }
        let mut p = 0;
        loop {
            if p == gens.len() {
                return None;
            }
            idx[p] += 1;
            if idx[p] < gens[p].1 {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let r = pow_mod(a % p, (p - 1) / 2, p);
    if r == 1 {
        1
    } else if r == 0 {
        0
    } else {
        -1
    }
}

/// Square roots available in `Q(ζ_m)`: Gauss sums, `i`, `√2`, `√−2`, and pairwise products.
fn square_root_candidates(m: u64) -> Vec<Cyclotomic> {
    let mut base = Vec::new();
    for p in prime_factors(m) {
        if p == 2 {
            continue;
        }
        let step = (m / p) as i64;
        let g = (1..p).fold(Cyclotomic::zero(m), |acc, j| {
            acc.add(&Cyclotomic::zeta_power(m, j as i64 * step).scale(&Rational::from_integer(legendre(j, p).into())))
        });
        base.push(g);
    }
    if m.is_multiple_of(4) {
        base.push(Cyclotomic::zeta_power(m, (m / 4) as i64));
    }
    if m.is_multiple_of(8) {
        let z = Cyclotomic::zeta_power(m, (m / 8) as i64);
        let zi = Cyclotomic::zeta_power(m, -((m / 8) as i64));
        base.push(z.add(&zi));
        base.push(z.sub(&zi));
    }
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            out.push(base[i].mul(&base[j]));
        }
    }
    out
}

/// Visits integer vectors in `[-h, h]^n` in a fixed order until `f` returns false.
fn for_each_vector(n: usize, h: i64, mut f: impl FnMut(&[i64]) -> bool) {
    let mut v = vec![-h; n];
    loop {
        if !f(&v) {
            return;
        }
        let mut p = 0;
        loop {
            if p == n {
                return;
            }
            v[p] += 1;
            if v[p] <= h {
                break;
            }
            v[p] = -h;
            p += 1;
        }
    }
}

fn index_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn coefficient_tuples(values: &[i64], size: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..size {
        out = out.into_iter().flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Per-component dimensions and the global total.
#[derive(Clone, Debug)]
pub struct WedderburnSummary {
    pub components: Vec<Value>,
    pub total: usize,
    pub group_order: usize,
}

pub fn wedderburn_summary(comps: &[ComponentDescriptor], coverage_complete: bool) -> Result<WedderburnSummary> {
    let mut total = 0;
    let mut out = Vec::new();
    for c in comps {
        // dim e·QG is |G| times the identity coefficient of e
        let dim = c.e.coeff(0) * Rational::from_integer(BigInt::from(c.group.order()));
        if dim != Rational::from_integer(BigInt::from(c.contribution())) {
            return Err(Error::DimensionMismatch(format!(
                "component ideal has dimension {dim} but the structure predicts {}",
                c.contribution()
            )));
        }
        total += c.contribution();
        out.push(c.summary_json());
    }
    let group_order = comps.first().map_or(0, |c| c.group.order());
    if coverage_complete && total != group_order {
        return Err(Error::DimensionMismatch(format!("components add up to {total}, not {group_order}")));
    }
    Ok(WedderburnSummary { components: out, total, group_order })
}

impl WedderburnSummary {
    pub fn to_json(&self) -> Value {
        json!({"components": self.components, "total_dimension": self.total, "group_order": self.group_order})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{DEFAULT_CLOSURE_CAP, DEFAULT_SUBGROUP_CAP};
    use crate::shoda::{find_strong_inductive_chain, is_shoda_pair, DEFAULT_CHAIN_BUDGET};

    fn grp(text: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutation_text(text, DEFAULT_CLOSURE_CAP).unwrap())
    }

    fn component(g: &Arc<FiniteGroup>, h: &[&str], k: &[&str]) -> ComponentDescriptor {
        let parse = |ws: &[&str]| g.generated(&ws.iter().map(|w| g.parse_word(w).unwrap()).collect::<Vec<_>>());
        let pair = is_shoda_pair(g, &parse(h), &parse(k)).unwrap();
        let subs = g.all_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
        let chain = find_strong_inductive_chain(&pair, &subs, DEFAULT_CHAIN_BUDGET).unwrap().unwrap();
        ComponentDescriptor::build(&pair, &chain, &ComponentOptions::default()).unwrap()
    }

    #[test]
    fn s3_two_by_two_block() {
        let g = grp("r: (1 2 3)\ns: (1 2)");
        let c = component(&g, &["r"], &[]);
        assert_eq!((c.k(), c.galois_size(), c.matrix_size(), c.center_dimension()), (1, 2, 2, 1));
        assert_eq!(c.b_units.len(), 1);
        assert_eq!(c.b_units[0][0], c.epsilon);
        assert!(c.trivialized);
        assert_eq!(c.galois_exponents(), vec![1, 2]);
        let s = g.parse_word("s").unwrap();
        assert_eq!(c.z_units[1], c.epsilon.left_mul_group(s));
    }

    #[test]
    fn dihedral_field_embedding() {
        let g = grp("a: (1 2 3 4)\nb: (2 4)");
        let c = component(&g, &["a"], &[]);
        let i = Cyclotomic::zeta_power(4, 1);
        let ai = c.embed_e(&i).unwrap();
        assert_eq!(ai, c.epsilon.left_mul_group(1));
        assert_eq!(&ai * &ai, -&c.e);
        assert_eq!(c.embed_e(&Cyclotomic::one(4)).unwrap(), c.e);
        assert_eq!(c.extract_e(&ai).unwrap(), i);
        assert!(matches!(c.extract_e(&AlgebraElement::basis(&g, 0)), Err(Error::NotInImage)));
        assert!(c.trivialized);
    }

    #[test]
    fn quaternion_component_is_not_split() {
        let g = grp("i: (1 3 2 4)(5 8 6 7)\nj: (1 5 2 6)(3 7 4 8)");
        let c = component(&g, &["i"], &[]);
        assert!(!c.trivialized);
        let p = c.cyclic_presentation.as_ref().unwrap();
        assert_eq!(p.power, Cyclotomic::from_rational(4, Rational::from_integer((-1).into())));
    }

    #[test]
    fn frobenius_21() {
        let g = grp("a: (1 2 3 4 5 6 7)\nb: (2 3 5)(4 7 6)");
        let c = component(&g, &["a"], &[]);
        assert_eq!((c.k(), c.galois_size()), (1, 3));
        assert_eq!(c.matrix_size(), 3);
        assert_eq!(c.contribution(), 18);
        assert!(c.trivialized);
    }

    #[test]
    fn multi_level_chain_units() {
        // C5 ⋊ C4 acting faithfully: the component on (C5, 1) is M4(Q)
        let g = grp("a: (1 2 3 4 5)\nb: (2 3 5 4)");
        assert_eq!(g.order(), 20);
        let c = component(&g, &["a"], &[]);
        assert_eq!(c.matrix_size(), 4);
        assert_eq!(c.contribution(), 16);
        assert!(c.trivialized);
    }

    #[test]
    fn decompositions() {
        assert_eq!(cyclic_decomposition(8, &[1, 3, 5, 7]).unwrap().len(), 2);
        assert_eq!(cyclic_decomposition(7, &[1, 2, 3, 4, 5, 6]).unwrap(), vec![(3, 6)]);
        assert_eq!(decompose(5, &[(3, 2), (5, 2)], 8).unwrap(), vec![0, 1]);
        let g5 = &square_root_candidates(5)[0];
        assert_eq!(g5.mul(g5), Cyclotomic::from_rational(5, Rational::from_integer(5.into())));
    }
}
