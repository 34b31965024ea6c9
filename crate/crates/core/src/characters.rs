//! Linear characters of cyclic subquotients, induction, and rational central idempotents.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::AlgebraElement;
use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::galois::{coset_representatives, units_mod, GaloisAutomorphism};
use crate::arith::rational::Rational;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

const NOT_IN_DOMAIN: u32 = u32::MAX;

/// `h^i·k ↦ ζ_m^(i·exponent)` on `domain`, with kernel `kernel` and `m = [domain : kernel]`.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    group: Arc<FiniteGroup>,
    domain: Subgroup,
    kernel: Subgroup,
    generator: usize,
    order: u64,
    exponent: u64,
    // coset index i of each element of the domain, NOT_IN_DOMAIN elsewhere
    coset: Vec<u32>,
}

impl LinearCharacter {
    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Exponent `e` with `λ(x) = ζ_m^e`, or `None` off the domain.
    pub fn exponent_at(&self, x: usize) -> Option<u64> {
        let i = self.coset[x];
        (i != NOT_IN_DOMAIN).then(|| (i as u64 * self.exponent) % self.order)
    }

    pub fn value(&self, x: usize) -> Option<Cyclotomic> {
        self.exponent_at(x).map(|e| Cyclotomic::zeta_power(self.order, e as i64))
    }
}

/// The φ([H:K]) characters of H with kernel exactly K, ordered by exponent.
pub fn linear_characters_with_kernel(
    group: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Vec<LinearCharacter>> {
    if !k.is_subset(h) {
        return Err(Error::NotContained);
    }
    let gen = group.quotient_is_cyclic(h, k)?.ok_or(Error::QuotientNotCyclic)?;
    let m = h.order() / k.order();
    let mut coset = vec![NOT_IN_DOMAIN; group.order()];
    let mut hi = group.identity();
    for i in 0..m {
        for x in k.iter() {
            coset[group.mul(hi, x)] = i as u32;
        }
        hi = group.mul(hi, gen);
    }
    Ok(units_mod(m as u64)
        .into_iter()
        .map(|j| LinearCharacter {
            group: group.clone(),
            domain: h.clone(),
            kernel: k.clone(),
            generator: gen,
            order: m as u64,
            exponent: j,
            coset: coset.clone(),
        })
        .collect())
}

/// First faithful-on-`H/K` character (exponent 1).
pub fn principal_character(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<LinearCharacter> {
    Ok(linear_characters_with_kernel(group, h, k)?.remove(0))
}

/// Class function on `domain` with values in `Q(ζ_conductor)`; stored per element.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    domain: Subgroup,
    conductor: u64,
    // per element of the domain: multiplicities of each power of ζ
    counts: HashMap<usize, Vec<i64>>,
}

impl ClassFunction {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn value(&self, g: usize) -> Cyclotomic {
        match self.counts.get(&g) {
            Some(c) => Cyclotomic::from_dense(self.conductor, c.iter().map(|&x| Rational::from_integer(x.into())).collect()),
            None => Cyclotomic::zero(self.conductor),
        }
    }

    pub fn degree(&self) -> Cyclotomic {
        self.value(self.group.identity())
    }

    /// `⟨χ,χ⟩ = (1/|D|) Σ χ(g)·conj(χ(g))`.
    pub fn self_inner_product(&self) -> Rational {
        let n = self.conductor;
        let mut acc = Cyclotomic::zero(n);
        for g in self.domain.iter() {
            let v = self.value(g);
            acc = acc.add(&v.mul(&v.galois(n - 1)));
        }
        acc.as_rational().expect("norms are rational") / Rational::from_integer(self.domain.order().into())
    }

    pub fn to_json(&self) -> Value {
        let classes = class_representatives(&self.group, &self.domain);
        json!({
            "conductor": self.conductor,
            "domain": self.domain.members(),
            "values": classes.iter().map(|&g| json!({
                "representative": g,
                "word": self.group.word(g),
                "value": self.value(g).to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Smallest element of each conjugacy class of `domain`.
pub fn class_representatives(group: &FiniteGroup, domain: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for x in domain.iter() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for g in domain.iter() {
            seen[group.conj(x, g)] = true;
        }
    }
    reps
}

/// `χ(g) = Σ_t λ°(t⁻¹ g t)` over a transversal of the character's domain in `up_to`.
pub fn induce(lambda: &LinearCharacter, up_to: &Subgroup) -> Result<ClassFunction> {
    let group = lambda.group.clone();
    let t = group.left_transversal(up_to, &lambda.domain)?;
    let m = lambda.order;
    let mut counts = HashMap::new();
    for g in up_to.iter() {
        let mut c = vec![0i64; m as usize];
        let mut any = false;
        for &r in &t.reps {
            if let Some(e) = lambda.exponent_at(group.conj(g, r)) {
                c[e as usize] += 1;
                any = true;
            }
        }
        if any {
            counts.insert(g, c);
        }
    }
    Ok(ClassFunction { group, domain: up_to.clone(), conductor: m, counts })
}

/// Automorphisms of `Q(ζ_n)` fixing every value of `χ`.
pub fn character_field_stabilizer(chi: &ClassFunction) -> Vec<GaloisAutomorphism> {
    let n = chi.conductor;
    let mut values: Vec<&Vec<i64>> = chi.counts.values().collect();
    values.sort();
    values.dedup();
    let values: Vec<Cyclotomic> = values
        .into_iter()
        .map(|c| Cyclotomic::from_dense(n, c.iter().map(|&x| Rational::from_integer(x.into())).collect()))
        .collect();
    units_mod(n)
        .into_iter()
        .filter(|&k| values.iter().all(|v| &v.galois(k) == v))
        .map(|k| GaloisAutomorphism::new(n, k as i64).expect("unit"))
        .collect()
}

/// `e_Q(χ) = (χ(1)/|D|) Σ_σ Σ_g σ(χ(g)) g⁻¹`, σ over `Gal(Q(χ)/Q)`.
pub fn central_idempotent_from_character(chi: &ClassFunction) -> Result<AlgebraElement> {
    let n = chi.conductor;
    let group = chi.group.clone();
    let stab: Vec<u64> = character_field_stabilizer(chi).iter().map(|s| s.exponent()).collect();
    let reps = coset_representatives(n, &stab);
    let degree = chi.degree().as_rational().ok_or(Error::NonRationalOutput)?;
    let scale = degree / Rational::from_integer(BigInt::from(chi.domain.order()));
    let mut traces: HashMap<&Vec<i64>, Rational> = HashMap::new();
    let mut terms = Vec::with_capacity(chi.counts.len());
    for (&g, c) in &chi.counts {
        let tr = match traces.get(c) {
            Some(t) => t.clone(),
            None => {
                let v = chi.value(g);
                let s = reps.iter().fold(Cyclotomic::zero(n), |a, &k| a.add(&v.galois(k)));
                let t = s.as_rational().ok_or(Error::NonRationalOutput)?;
                traces.insert(c, t.clone());
                t
            }
        };
        if !tr.is_zero() {
            terms.push((group.inv(g), &scale * tr));
        }
    }
    let e = AlgebraElement::from_terms(&group, terms);
    if !e.is_idempotent() {
        return Err(Error::InvariantBreach("character formula did not yield an idempotent".into()));
    }
    let gens = group.subgroup_generators(&chi.domain);
    if gens.iter().any(|&s| e.conjugate_by(s) != e) {
        return Err(Error::InvariantBreach("character formula did not yield a central element".into()));
    }
    Ok(e)
}

/// `[e_Q(λ^{H_0}), …, e_Q(λ^{H_n})]` along a tower starting at the character's domain.
pub fn chain_idempotents(lambda: &LinearCharacter, tower: &[Subgroup]) -> Result<Vec<AlgebraElement>> {
    if tower.first() != Some(&lambda.domain) {
        return Err(Error::ParameterInvalid("tower must start at the character's domain".into()));
    }
    let mut out = Vec::with_capacity(tower.len());
    for w in tower.windows(2) {
        if !w[0].is_subset(&w[1]) {
            return Err(Error::NotContained);
        }
    }
    for h in tower {
        out.push(central_idempotent_from_character(&induce(lambda, h)?)?);
    }
    Ok(out)
}

/// `dim_Q(e·QG)`, the rank of `{e·g}`; used as a size check on central idempotents.
pub fn ideal_dimension(e: &AlgebraElement) -> usize {
    let group = e.group().clone();
    let mut ech = crate::algebra::Echelon::new();
    for g in 0..group.order() {
        ech.insert(e.right_mul_group(g).to_dense());
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{epsilon, hat};
    use crate::arith::rational::{int, rat};
    use crate::group::DEFAULT_CLOSURE_CAP;

    fn grp(text: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutation_text(text, DEFAULT_CLOSURE_CAP).unwrap())
    }

    #[test]
    fn character_counts() {
        let c2 = grp("h: (1 2)");
        let l = linear_characters_with_kernel(&c2, &c2.whole(), &c2.trivial_subgroup()).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].value(1).unwrap(), Cyclotomic::from_rational(2, int(-1)));
        let c4 = grp("a: (1 2 3 4)");
        let l = linear_characters_with_kernel(&c4, &c4.whole(), &c4.trivial_subgroup()).unwrap();
        assert_eq!(l.iter().map(|c| c.exponent()).collect::<Vec<_>>(), vec![1, 3]);
        let c7 = grp("a: (1 2 3 4 5 6 7)");
        assert_eq!(linear_characters_with_kernel(&c7, &c7.whole(), &c7.trivial_subgroup()).unwrap().len(), 6);
        let k4 = grp("a: (1 2)\nb: (3 4)");
        assert!(matches!(
            linear_characters_with_kernel(&k4, &k4.whole(), &k4.trivial_subgroup()),
            Err(Error::QuotientNotCyclic)
        ));
    }

    #[test]
    fn induced_characters() {
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let r = s3.generated(&[s3.parse_word("r").unwrap()]);
        let l = principal_character(&s3, &r, &s3.trivial_subgroup()).unwrap();
        let chi = induce(&l, &s3.whole()).unwrap();
        assert_eq!(chi.degree(), Cyclotomic::from_rational(3, int(2)));
        assert_eq!(chi.value(s3.parse_word("r").unwrap()), Cyclotomic::from_rational(3, int(-1)));
        assert!(chi.value(s3.parse_word("s").unwrap()).is_zero());
        assert_eq!(chi.self_inner_product(), int(1));

        let d8 = grp("a: (1 2 3 4)\nb: (2 4)");
        let a = d8.generated(&[1]);
        let l = principal_character(&d8, &a, &d8.trivial_subgroup()).unwrap();
        let chi = induce(&l, &d8.whole()).unwrap();
        assert!(chi.value(1).is_zero());
        assert!(chi.value(d8.parse_word("b").unwrap()).is_zero());
        assert_eq!(chi.degree(), Cyclotomic::from_rational(4, int(2)));

        // inducing to the domain itself returns λ
        let chi = induce(&l, &a).unwrap();
        assert_eq!(chi.value(1), Cyclotomic::zeta_power(4, 1));
    }

    #[test]
    fn idempotents_from_characters() {
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let triv = principal_character(&s3, &s3.whole(), &s3.whole()).unwrap();
        let e = central_idempotent_from_character(&induce(&triv, &s3.whole()).unwrap()).unwrap();
        assert_eq!(e, hat(&s3, &s3.whole()));

        let r = s3.generated(&[1]);
        let l = principal_character(&s3, &r, &s3.trivial_subgroup()).unwrap();
        let e = central_idempotent_from_character(&induce(&l, &s3.whole()).unwrap()).unwrap();
        assert_eq!(e, &AlgebraElement::one(&s3) - &hat(&s3, &r));

        let c4 = grp("a: (1 2 3 4)");
        let l = principal_character(&c4, &c4.whole(), &c4.trivial_subgroup()).unwrap();
        let e = central_idempotent_from_character(&induce(&l, &c4.whole()).unwrap()).unwrap();
        let a2 = c4.parse_word("a^2").unwrap();
        assert_eq!(e, AlgebraElement::from_terms(&c4, [(0, rat(1, 2)), (a2, rat(-1, 2))]));
        assert_eq!(e, epsilon(&c4, &c4.whole(), &c4.trivial_subgroup()).unwrap());
    }

    #[test]
    fn frobenius_chain() {
        let g = grp("a: (1 2 3 4 5 6 7)\nb: (2 3 5)(4 7 6)");
        assert_eq!(g.order(), 21);
        let a = g.generated(&[g.parse_word("a").unwrap()]);
        let l = principal_character(&g, &a, &g.trivial_subgroup()).unwrap();
        let es = chain_idempotents(&l, &[a.clone(), g.whole()]).unwrap();
        assert_eq!(es[0], epsilon(&g, &a, &g.trivial_subgroup()).unwrap());
        assert_eq!(&es[0] * &es[1], es[0]);
        assert_eq!(ideal_dimension(&es[1]), 18);
        let triv = chain_idempotents(&principal_character(&g, &g.whole(), &g.whole()).unwrap(), &[g.whole()]).unwrap();
        assert_eq!(triv, vec![hat(&g, &g.whole())]);
    }
}
