//! Units of the integral group ring: Bass cyclic, generalized Bass, bicyclic and elementary
//! generators attached to split components.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde_json::{json, Value};

use crate::algebra::{hat, inverse_in_corner, AlgebraElement};
use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::galois::{coset_representatives, multiplicative_order, units_mod};
use crate::arith::rational::Rational;
use crate::component::ComponentDescriptor;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::idempotents::{find_normal_element, matrix_units, primitive_idempotent_set, MatrixUnits, DEFAULT_NORMAL_BUDGET};

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    BassCyclic { g: usize, k: u64, m: u64 },
    GeneralizedBass { g: usize, normal: Vec<usize>, k: u64, m: u64, exponent: usize },
    Bicyclic { g: usize, h: usize },
    Elementary { component: usize, plus: bool, row: (usize, usize), col: (usize, usize), beta: Cyclotomic, c: BigInt },
}

impl Provenance {
    pub fn to_json(&self, group: &FiniteGroup) -> Value {
        match self {
            Provenance::BassCyclic { g, k, m } => json!({"kind": "bass_cyclic", "g": group.word(*g), "k": k, "m": m}),
            Provenance::GeneralizedBass { g, normal, k, m, exponent } => json!({
                "kind": "generalized_bass", "g": group.word(*g),
                "M": normal.iter().map(|&x| group.word(x)).collect::<Vec<_>>(),
                "k": k, "m": m, "n_b": exponent,
            }),
            Provenance::Bicyclic { g, h } => json!({"kind": "bicyclic", "g": group.word(*g), "h": group.word(*h)}),
            Provenance::Elementary { component, plus, row, col, beta, c } => json!({
                "kind": if *plus { "v_plus" } else { "v_minus" },
                "component": component,
                "row": [row.0, row.1], "col": [col.0, col.1],
                "beta": beta.to_json(), "c": c.to_string(),
            }),
        }
    }
}

/// A unit of ZG with a certified integral inverse.
#[derive(Clone, Debug)]
pub struct UnitElement {
    pub value: AlgebraElement,
    pub inverse: AlgebraElement,
    pub provenance: Provenance,
}

impl UnitElement {
    fn certified(value: AlgebraElement, inverse: AlgebraElement, provenance: Provenance) -> Result<Self> {
        if !value.is_integral() || !inverse.is_integral() {
            return Err(Error::NonIntegralInverse);
        }
        if !(&value * &inverse).is_one() || !(&inverse * &value).is_one() {
            return Err(Error::InvariantBreach("unit and inverse do not multiply to one".into()));
        }
        Ok(UnitElement { value, inverse, provenance })
    }

    pub fn is_trivial(&self) -> bool {
        self.value.is_one()
    }

    pub fn to_json(&self) -> Value {
        let g = self.value.group();
        json!({
            "provenance": self.provenance.to_json(g),
            "value": self.value.to_json(),
            "inverse": self.inverse.to_json(),
        })
    }
}

fn geometric_sum(group: &Arc<FiniteGroup>, g: usize, len: usize) -> AlgebraElement {
    let mut terms = Vec::with_capacity(len);
    let mut x = group.identity();
    for _ in 0..len {
        terms.push((x, Rational::one()));
        x = group.mul(x, g);
    }
    AlgebraElement::from_terms(group, terms)
}

/// `u_{k,m}(g) = (1 + g + ⋯ + g^{k−1})^m + ((1 − k^m)/|g|)·(1 + g + ⋯ + g^{|g|−1})`.
fn bass_value(group: &Arc<FiniteGroup>, g: usize, k: u64, m: u64) -> Result<AlgebraElement> {
    let n = group.element_order(g) as u64;
    if k <= 1 || k >= n {
        return Err(Error::ParameterInvalid(format!("need 1 < k < |g| = {n}, got k = {k}")));
    }
    let km: BigInt = Pow::pow(BigInt::from(k), m);
    if !(&km - BigInt::one()).is_multiple_of(&BigInt::from(n)) {
        return Err(Error::ParameterInvalid(format!("{k}^{m} is not 1 modulo {n}")));
    }
    let c = (BigInt::one() - km) / BigInt::from(n);
    let base = geometric_sum(group, g, k as usize).pow(m as u32);
    Ok(&base + &geometric_sum(group, g, n as usize).scale(&Rational::from_integer(c)))
}

pub fn bass_cyclic_unit(group: &Arc<FiniteGroup>, g: usize, k: u64, m: u64) -> Result<UnitElement> {
    let u = bass_value(group, g, k, m)?;
    let inv = inverse_in_corner(&AlgebraElement::one(group), &u)?
        .ok_or_else(|| Error::InvariantBreach("Bass cyclic element is not invertible".into()))?;
    UnitElement::certified(u, inv, Provenance::BassCyclic { g, k, m })
}

/// `(1 − M̂ + u_{k,m}(g)·M̂)^n` for the least `n ≥ 1` making it and its inverse integral.
pub fn generalized_bass_unit(group: &Arc<FiniteGroup>, g: usize, normal: &Subgroup, k: u64, m: u64) -> Result<UnitElement> {
    if !group.is_normal(normal) {
        return Err(Error::NotNormal);
    }
    let base = bass_cyclic_unit(group, g, k, m)?;
    let mh = hat(group, normal);
    let rest = &AlgebraElement::one(group) - &mh;
    let cap = 2 * group.order() * group.order();
    let um = &base.value * &mh;
    let uim = &base.inverse * &mh;
    let mut p = um.clone();
    let mut q = uim.clone();
    for n in 1..=cap {
        let value = &rest + &p;
        if value.is_integral() {
            let inverse = &rest + &q;
            if inverse.is_integral() {
                let normal = group.subgroup_generators(normal);
                return UnitElement::certified(value, inverse, Provenance::GeneralizedBass { g, normal, k, m, exponent: n });
            }
        }
        p = &p * &um;
        q = &q * &uim;
    }
    Err(Error::MinimalExponentNotFound(cap))
}

/// `1 + (1 − h)·g·h̃` with `h̃ = 1 + h + ⋯ + h^{|h|−1}`; inverse `1 − (1 − h)·g·h̃`.
pub fn bicyclic_unit(group: &Arc<FiniteGroup>, g: usize, h: usize) -> Result<UnitElement> {
    let one = AlgebraElement::one(group);
    let ht = geometric_sum(group, h, group.element_order(h));
    let nil = &(&(&one - &AlgebraElement::basis(group, h)) * &AlgebraElement::basis(group, g)) * &ht;
    if !(&nil * &nil).is_zero() {
        return Err(Error::InvariantBreach("bicyclic generator is not square-zero".into()));
    }
    UnitElement::certified(&one + &nil, &one - &nil, Provenance::Bicyclic { g, h })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalKind {
    NonCommDivisionNotTotallyDefiniteQuaternion,
    M2Q,
    M2ImaginaryQuadratic,
    M2TotallyDefiniteQuaternion,
    None,
    Unknown,
}

impl ExceptionalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExceptionalKind::NonCommDivisionNotTotallyDefiniteQuaternion => "noncommutative_division_algebra",
            ExceptionalKind::M2Q => "m2_rationals",
            ExceptionalKind::M2ImaginaryQuadratic => "m2_imaginary_quadratic",
            ExceptionalKind::M2TotallyDefiniteQuaternion => "m2_totally_definite_quaternion",
            ExceptionalKind::None => "none",
            ExceptionalKind::Unknown => "unknown",
        }
    }

    pub fn is_exceptional(&self) -> bool {
        !matches!(self, ExceptionalKind::None)
    }
}

/// Classification of a component against the exceptional shapes, from size, center and splitting.
pub fn exceptional_screen(comp: &ComponentDescriptor) -> ExceptionalKind {
    let m = comp.matrix_size();
    if m == 1 {
        return ExceptionalKind::None;
    }
    if !comp.trivialized {
        return ExceptionalKind::Unknown;
    }
    if m >= 3 {
        return ExceptionalKind::None;
    }
    match comp.center_dimension() {
        1 => ExceptionalKind::M2Q,
        2 => {
            // the quadratic center is real exactly when complex conjugation fixes it
            let conj = comp.conductor.saturating_sub(1).max(1);
            if comp.galois_index(conj).is_some() {
                ExceptionalKind::None
            } else {
                ExceptionalKind::M2ImaginaryQuadratic
            }
        }
        _ => ExceptionalKind::None,
    }
}

/// Orbit sums `Σ_{σ∈𝒢} σ(τ(w))`, τ over coset representatives of `𝒢` by exponent.
pub fn orbit_sum_basis(comp: &ComponentDescriptor) -> Result<Vec<Cyclotomic>> {
    let m = comp.conductor;
    let full = units_mod(m);
    let w = find_normal_element(m, &full, DEFAULT_NORMAL_BUDGET)?;
    let exps = comp.galois_exponents();
    Ok(coset_representatives(m, &exps)
        .into_iter()
        .map(|t| exps.iter().fold(Cyclotomic::zero(m), |acc, &s| acc.add(&w.galois(t).galois(s))))
        .collect())
}

/// Elementary generators `1 + cβ𝙴_{ab}` on one triangle, without the exceptional screen.
pub fn v_generators_unscreened(
    comp: &ComponentDescriptor,
    index: usize,
    units: &MatrixUnits,
    plus: bool,
) -> Result<Vec<UnitElement>> {
    if !comp.trivialized {
        return Err(Error::SchurIndexNotOne);
    }
    let betas = orbit_sum_basis(comp)?;
    let embedded: Vec<AlgebraElement> = betas.iter().map(|b| comp.embed_e(b)).collect::<Result<_>>()?;
    let n = units.labels.len();
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut c = BigInt::one();
    let mut products = Vec::new();
    for (bi, be) in embedded.iter().enumerate() {
        for &(a, b) in &off {
            let x = be * &units.units[a][b];
            c = c.lcm(x.denominator());
            products.push((bi, a, b, x));
        }
    }
    let one = AlgebraElement::one(&comp.group);
    let cq = Rational::from_integer(c.clone());
    let mut out = Vec::new();
    for (bi, a, b, x) in products {
        if (a > b) != plus {
            continue;
        }
        let nil = x.scale(&cq);
        if !(&nil * &nil).is_zero() {
            return Err(Error::InvariantBreach("elementary generator is not square-zero".into()));
        }
        let prov = Provenance::Elementary {
            component: index,
            plus,
            row: units.labels[a],
            col: units.labels[b],
            beta: betas[bi].clone(),
            c: c.clone(),
        };
        out.push(UnitElement::certified(&one + &nil, &one - &nil, prov)?);
    }
    Ok(out)
}

/// Screened elementary generators for a split, non-exceptional component.
pub fn v_generators(comp: &ComponentDescriptor, index: usize, plus: bool) -> Result<Vec<UnitElement>> {
    if !comp.trivialized {
        return Err(Error::SchurIndexNotOne);
    }
    if exceptional_screen(comp).is_exceptional() {
        return Err(Error::ExceptionalComponent);
    }
    let set = primitive_idempotent_set(comp)?;
    let mu = matrix_units(comp, &set)?;
    v_generators_unscreened(comp, index, &mu, plus)
}

/// One generator per cyclic subgroup up to conjugacy.
pub fn cyclic_subgroup_representatives(group: &FiniteGroup) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in 1..group.order() {
        if seen[g] {
            continue;
        }
        reps.push(g);
        let n = group.element_order(g);
        for j in (1..n).filter(|j| j.gcd(&n) == 1) {
            let y = group.pow(g, j as i64);
            for x in 0..group.order() {
                seen[group.conj(y, x)] = true;
            }
        }
    }
    reps
}

/// Parameter triples `(g, k, m)`: `2 ≤ k ≤ |g|/2`, `k` a unit mod `|g|`, `m` its order.
pub fn bass_parameters(group: &FiniteGroup) -> Vec<(usize, u64, u64)> {
    let mut out = Vec::new();
    for g in cyclic_subgroup_representatives(group) {
        let n = group.element_order(g) as u64;
        for k in (2..=n / 2).filter(|k| k.gcd(&n) == 1) {
            out.push((g, k, multiplicative_order(k, n)));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ExceptionalEntry {
    pub component: usize,
    pub kind: ExceptionalKind,
}

#[derive(Clone, Debug)]
pub struct UnitReport {
    pub generators: Vec<UnitElement>,
    pub exceptional: Vec<ExceptionalEntry>,
    pub notes: Vec<String>,
}

impl UnitReport {
    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.generators.iter().map(UnitElement::to_json).collect::<Vec<_>>(),
            "exceptional": self.exceptional.iter().map(|e| json!({"component": e.component, "kind": e.kind.as_str()})).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

/// Bicyclic units used when exceptional components are present.
pub fn bicyclic_fallback(group: &Arc<FiniteGroup>) -> Result<Vec<UnitElement>> {
    let lab = |s: &str| -> Option<usize> {
        group.labels().iter().position(|l| l == s).map(|i| group.label_elements()[i])
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    match (lab("a"), lab("b")) {
        (Some(a), Some(b)) if group.element_order(a) >= 4 && group.element_order(b) == 2 => {
            let ab = |j: i64| group.mul(group.pow(a, j), b);
            pairs.extend([(a, ab(2)), (a, b), (b, ab(1)), (a, ab(3))]);
        }
        _ => {
            let gens = group.generators().to_vec();
            for &g in &gens {
                for &h in &gens {
                    if g != h {
                        pairs.push((g, h));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for (g, h) in pairs {
        let u = bicyclic_unit(group, g, h)?;
        if !u.is_trivial() {
            out.push(u);
        }
    }
    Ok(out)
}

/// Bass cyclic units, generalized Bass units over normal subgroups containing the derived
/// subgroup, and elementary generators of every split non-exceptional component.
pub fn unit_report(group: &Arc<FiniteGroup>, comps: &[ComponentDescriptor]) -> Result<UnitReport> {
    let mut generators = Vec::new();
    let mut notes = Vec::new();
    let derived = group.derived_subgroup();
    let whole = group.whole();
    let normals: Vec<Subgroup> = if group.order() <= crate::group::DEFAULT_SUBGROUP_CAP {
        let mut subs = group.all_subgroups(crate::group::DEFAULT_SUBGROUP_CAP)?;
        subs.retain(|s| derived.is_subset(s) && s != &whole && group.is_normal(s));
        subs
    } else {
        notes.push("group too large to enumerate subgroups; only the derived subgroup is used for generalized Bass units".into());
        if derived != whole { vec![derived.clone()] } else { Vec::new() }
    };
    for (g, k, m) in bass_parameters(group) {
        let u = bass_cyclic_unit(group, g, k, m)?;
        if !u.is_trivial() {
            generators.push(u);
        }
        for mm in &normals {
            let u = generalized_bass_unit(group, g, mm, k, m)?;
            if !u.is_trivial() && !generators.iter().any(|x: &UnitElement| x.value == u.value) {
                generators.push(u);
            }
        }
    }
    let mut exceptional = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let kind = exceptional_screen(c);
        if kind.is_exceptional() {
            exceptional.push(ExceptionalEntry { component: i, kind });
            continue;
        }
        if c.matrix_size() < 2 {
            continue;
        }
        for plus in [true, false] {
            generators.extend(v_generators(c, i, plus)?);
        }
    }
    if !exceptional.is_empty() {
        notes.push("exceptional components present; bicyclic units emitted as a fallback".into());
        generators.extend(bicyclic_fallback(group)?);
    }
    Ok(UnitReport { generators, exceptional, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::idempotents::{matrix_units, primitive_idempotent_set};
    use crate::group::DEFAULT_CLOSURE_CAP;

    fn grp(text: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutation_text(text, DEFAULT_CLOSURE_CAP).unwrap())
    }

    #[test]
    fn bass_examples() {
        let c5 = grp("g: (1 2 3 4 5)");
        let u = bass_cyclic_unit(&c5, 1, 2, 4).unwrap();
        let one = AlgebraElement::one(&c5);
        let oracle = &(&one + &AlgebraElement::basis(&c5, 1)).pow(4) - &geometric_sum(&c5, 1, 5).scale(&int(3));
        assert_eq!(u.value, oracle);
        assert!(matches!(bass_cyclic_unit(&c5, 1, 1, 1), Err(Error::ParameterInvalid(_))));
        assert!(matches!(bass_cyclic_unit(&c5, 1, 2, 3), Err(Error::ParameterInvalid(_))));
        let c7 = grp("g: (1 2 3 4 5 6 7)");
        bass_cyclic_unit(&c7, 1, 3, 6).unwrap();
    }

    #[test]
    fn generalized_bass_examples() {
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let r = s3.parse_word("r").unwrap();
        let rs = s3.generated(&[r]);
        let u = generalized_bass_unit(&s3, r, &rs, 2, 2).unwrap();
        assert!(u.value.is_central());
        let triv = generalized_bass_unit(&s3, r, &s3.trivial_subgroup(), 2, 2).unwrap();
        assert_eq!(triv.value, bass_cyclic_unit(&s3, r, 2, 2).unwrap().value);
    }

    #[test]
    fn bicyclic_examples() {
        let c4 = grp("a: (1 2 3 4)");
        assert!(bicyclic_unit(&c4, 1, 2).unwrap().is_trivial());
        let s3 = grp("r: (1 2 3)\ns: (1 2)");
        let (r, s) = (s3.parse_word("r").unwrap(), s3.parse_word("s").unwrap());
        // trivial whenever g normalizes <h>
        assert!(bicyclic_unit(&s3, s, r).unwrap().is_trivial());
        assert!(!bicyclic_unit(&s3, r, s).unwrap().is_trivial());
        let d8 = grp("a: (1 2 3 4)\nb: (2 4)");
        assert!(!bicyclic_unit(&d8, d8.parse_word("a").unwrap(), d8.parse_word("b").unwrap()).unwrap().is_trivial());
        assert_eq!(bicyclic_fallback(&d8).unwrap().len(), 4);
    }

    fn component(text: &str, h: &[&str]) -> ComponentDescriptor {
        use crate::component::ComponentOptions;
        use crate::group::DEFAULT_SUBGROUP_CAP;
        use crate::shoda::{find_strong_inductive_chain, is_shoda_pair, DEFAULT_CHAIN_BUDGET};
        let g = grp(text);
        let hs = g.generated(&h.iter().map(|w| g.parse_word(w).unwrap()).collect::<Vec<_>>());
        let pair = is_shoda_pair(&g, &hs, &g.trivial_subgroup()).unwrap();
        let subs = g.all_subgroups(DEFAULT_SUBGROUP_CAP).unwrap();
        let chain = find_strong_inductive_chain(&pair, &subs, DEFAULT_CHAIN_BUDGET).unwrap().unwrap();
        ComponentDescriptor::build(&pair, &chain, &ComponentOptions::default()).unwrap()
    }

    fn check_elementary(c: &ComponentDescriptor, us: &[UnitElement]) {
        let one = AlgebraElement::one(&c.group);
        let off = &one - &c.e;
        for u in us {
            let n = &u.value - &one;
            assert!((&n * &n).is_zero());
            assert_eq!(&off * &u.value, off);
        }
    }

    #[test]
    fn screening_and_elementary_generators() {
        let s3 = component("r: (1 2 3)\ns: (1 2)", &["r"]);
        assert_eq!(exceptional_screen(&s3), ExceptionalKind::M2Q);
        assert!(matches!(v_generators(&s3, 0, true), Err(Error::ExceptionalComponent)));
        let set = primitive_idempotent_set(&s3).unwrap();
        let mu = matrix_units(&s3, &set).unwrap();
        let plus = v_generators_unscreened(&s3, 0, &mu, true).unwrap();
        let minus = v_generators_unscreened(&s3, 0, &mu, false).unwrap();
        assert_eq!((plus.len(), minus.len()), (1, 1));
        check_elementary(&s3, &plus);

        let c54 = component("a: (1 2 3 4 5)\nb: (2 3 5 4)", &["a"]);
        assert_eq!(exceptional_screen(&c54), ExceptionalKind::None);
        let v = v_generators(&c54, 0, true).unwrap();
        assert_eq!(v.len(), 6);
        check_elementary(&c54, &v);

        let f21 = component("a: (1 2 3 4 5 6 7)\nb: (2 3 5)(4 7 6)", &["a"]);
        assert_eq!(exceptional_screen(&f21), ExceptionalKind::None);
        let v = v_generators(&f21, 0, false).unwrap();
        // two orbit sums times three strictly upper entries
        assert_eq!(v.len(), 6);
        check_elementary(&f21, &v);

        let q8 = component("i: (1 3 2 4)(5 8 6 7)\nj: (1 5 2 6)(3 7 4 8)", &["i"]);
        assert_eq!(exceptional_screen(&q8), ExceptionalKind::Unknown);
        assert!(matches!(v_generators(&q8, 0, true), Err(Error::SchurIndexNotOne)));
    }

    #[test]
    fn reports() {
        let c6 = grp("g: (1 2 3 4 5 6)");
        let rep = unit_report(&c6, &[]).unwrap();
        assert!(rep.exceptional.is_empty());
        assert!(rep
            .generators
            .iter()
            .all(|u| matches!(u.provenance, Provenance::GeneralizedBass { .. } | Provenance::BassCyclic { .. })));
        let s3 = component("r: (1 2 3)\ns: (1 2)", &["r"]);
        let rep = unit_report(&s3.group, std::slice::from_ref(&s3)).unwrap();
        assert_eq!(rep.exceptional.len(), 1);
        assert!(rep.generators.iter().any(|u| matches!(u.provenance, Provenance::Bicyclic { .. })));
        for u in &rep.generators {
            if matches!(u.provenance, Provenance::GeneralizedBass { .. }) {
                assert!(u.value.is_central());
            }
        }
    }
}
