//! Complete sets of orthogonal primitive idempotents and matrix units of a split component.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::AlgebraElement;
use crate::arith::cyclotomic::{euler_phi, Cyclotomic};
use crate::arith::matrix::ExactMatrix;
use crate::arith::rational::Rational;
use crate::component::ComponentDescriptor;
use crate::error::{Error, Result};

pub const DEFAULT_NORMAL_BUDGET: usize = 10_000;

// full pairwise checks up to this many members; structured checks beyond
const DIRECT_CHECK_LIMIT: usize = 6;
// rank-based corner dimensions up to this group order; trace certificate beyond
const RANK_CHECK_ORDER: usize = 200;

/// The `k` conjugates `t⁻¹ ε t`.
pub fn b_idempotents(comp: &ComponentDescriptor) -> Result<Vec<AlgebraElement>> {
    let out: Vec<AlgebraElement> = comp.b_units.iter().enumerate().map(|(i, r)| r[i].clone()).collect();
    check_orthogonal_sum(&out, &comp.e)?;
    Ok(out)
}

fn check_orthogonal_sum(fs: &[AlgebraElement], e: &AlgebraElement) -> Result<()> {
    let mut sum = AlgebraElement::zero(e.group());
    for (i, f) in fs.iter().enumerate() {
        if !f.is_idempotent() {
            return Err(Error::InvariantBreach(format!("member {i} is not idempotent")));
        }
        for g in &fs[i + 1..] {
            if !f.are_orthogonal(g) {
                return Err(Error::InvariantBreach(format!("member {i} is not orthogonal to a later member")));
            }
        }
        sum = &sum + f;
    }
    if &sum != e {
        return Err(Error::InvariantBreach("members do not sum to the central idempotent".into()));
    }
    Ok(())
}

/// `det[σ_i(σ_j(w))] ≠ 0`.
pub fn is_normal_element(w: &Cyclotomic, exponents: &[u64]) -> Result<bool> {
    let rows: Vec<Vec<Cyclotomic>> = exponents
        .iter()
        .map(|&j| exponents.iter().map(|&i| w.galois(j).galois(i)).collect())
        .collect();
    Ok(!ExactMatrix::from_rows(rows)?.determinant()?.is_zero())
}

/// Fixed schedule: `ζ`, `1+ζ`, `ζ^j`, `ζ^j+ζ^l`, then integer vectors of growing height.
pub fn find_normal_element(conductor: u64, exponents: &[u64], budget: usize) -> Result<Cyclotomic> {
    if exponents.len() <= 1 {
        return Ok(Cyclotomic::one(conductor));
    }
    let z = |j: i64| Cyclotomic::zeta_power(conductor, j);
    let mut spent = 0usize;
    let mut try_one = |w: Cyclotomic| -> Result<Option<Cyclotomic>> {
        spent += 1;
        if spent > budget {
            return Err(Error::BudgetExceeded("normal element search".into()));
        }
        Ok(is_normal_element(&w, exponents)?.then_some(w))
    };
    let n = conductor as i64;
    let mut schedule = vec![z(1), Cyclotomic::one(conductor).add(&z(1))];
    schedule.extend((2..n).map(z));
    for j in 0..n {
        for l in j + 1..n {
            schedule.push(z(j).add(&z(l)));
        }
    }
    for w in schedule {
        if let Some(w) = try_one(w)? {
            return Ok(w);
        }
    }
    let phi = euler_phi(conductor) as usize;
    for h in 1..=4i64 {
        let mut v = vec![-h; phi];
        loop {
            if v.iter().any(|c| c.abs() == h) {
                let w = Cyclotomic::from_dense(conductor, v.iter().map(|&c| Rational::from_integer(c.into())).collect());
                if let Some(w) = try_one(w)? {
                    return Ok(w);
                }
            }
            let mut p = 0;
            loop {
                if p == phi {
                    break;
                }
                v[p] += 1;
                if v[p] <= h {
                    break;
                }
                v[p] = -h;
                p += 1;
            }
            if p == phi {
                break;
            }
        }
    }
    Err(Error::BudgetExceeded("normal element schedule exhausted".into()))
}

/// Corner twisting unit `u_σ = z_{σ⁻¹}`, so that `u_σ y u_σ⁻¹ = σ(y)`.
fn u_unit(comp: &ComponentDescriptor, i: usize) -> &AlgebraElement {
    let inv = comp.galois[i].inverse().exponent();
    &comp.z_units[comp.galois_index(inv).expect("group closed under inverses")]
}

/// Solves `Σ_i α_i σ_i(w) = Σ_i σ_i(w)` and `Σ_i α_i σ_i(σ_j(w)) = w − σ_j(w)` for `j ≥ 2`;
/// returns the corner element `α = Σ α_i u_{σ_i}` and the coefficients.
pub fn solve_alpha(comp: &ComponentDescriptor, w: &Cyclotomic) -> Result<(AlgebraElement, Vec<Cyclotomic>)> {
    if !comp.trivialized {
        return Err(Error::SchurIndexNotOne);
    }
    let exps = comp.galois_exponents();
    let w = w.lift(comp.conductor)?;
    let rows: Vec<Vec<Cyclotomic>> =
        exps.iter().map(|&j| exps.iter().map(|&i| w.galois(j).galois(i)).collect()).collect();
    let total = exps.iter().fold(Cyclotomic::zero(comp.conductor), |a, &i| a.add(&w.galois(i)));
    let mut rhs = vec![total];
    rhs.extend(exps[1..].iter().map(|&j| w.sub(&w.galois(j))));
    let coeffs = ExactMatrix::from_rows(rows)?.solve(&rhs)?.ok_or(Error::SingularSystem)?;
    let mut alpha = AlgebraElement::zero(&comp.group);
    for (i, c) in coeffs.iter().enumerate() {
        alpha = &alpha + &(&comp.embed_corner(c)? * u_unit(comp, i));
    }
    if comp.corner_inverse(&alpha)?.is_none() {
        return Err(Error::SingularSystem);
    }
    Ok((alpha, coeffs))
}

#[derive(Clone, Debug)]
pub struct PrimitiveIdempotentSet {
    /// Members keyed by (transversal index, Galois index).
    pub members: Vec<((usize, usize), AlgebraElement)>,
    pub alpha: AlgebraElement,
    pub alpha_coefficients: Vec<Cyclotomic>,
    pub e_hat: AlgebraElement,
    pub normal_element: Cyclotomic,
    // corner blocks u_i⁻¹ α⁻¹ Ê α u_j
    blocks: Vec<Vec<AlgebraElement>>,
}

impl PrimitiveIdempotentSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_json(&self, comp: &ComponentDescriptor) -> Value {
        json!({
            "normal_element": self.normal_element.to_json(),
            "alpha": comp.lift_corner(&self.alpha).to_json(),
            "e_hat": comp.lift_corner(&self.e_hat).to_json(),
            "members": self.members.iter().map(|((t, i), f)| json!({
                "t": comp.group.word(comp.transversal[*t]),
                "i": i,
                "value": f.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `{t⁻¹ u_i⁻¹ α⁻¹ Ê ε α u_i t}` with its full verification battery.
pub fn primitive_idempotent_set(comp: &ComponentDescriptor) -> Result<PrimitiveIdempotentSet> {
    if !comp.trivialized {
        return Err(Error::SchurIndexNotOne);
    }
    let kk = comp.galois_size();
    let w = find_normal_element(comp.conductor, &comp.galois_exponents(), DEFAULT_NORMAL_BUDGET)?;
    let (alpha, alpha_coefficients) = solve_alpha(comp, &w)?;
    let alpha_inv = comp.corner_inverse(&alpha)?.ok_or(Error::SingularSystem)?;
    let mut e_hat = AlgebraElement::zero(&comp.group);
    for z in &comp.z_units {
        e_hat = &e_hat + z;
    }
    let e_hat = e_hat.scale(&Rational::new(BigInt::from(1), BigInt::from(kk)));
    if !e_hat.is_idempotent() {
        return Err(Error::InvariantBreach("averaged twisting units are not idempotent".into()));
    }
    let core = &(&alpha_inv * &e_hat) * &alpha;
    let us: Vec<&AlgebraElement> = (0..kk).map(|i| u_unit(comp, i)).collect();
    let u_invs: Vec<&AlgebraElement> = (0..kk).map(|i| &comp.z_units[i]).collect();
    let blocks: Vec<Vec<AlgebraElement>> = (0..kk)
        .map(|i| (0..kk).map(|j| &(u_invs[i] * &core) * us[j]).collect())
        .collect();
    let mut members = Vec::with_capacity(comp.k() * kk);
    for (ti, &t) in comp.transversal.iter().enumerate() {
        for (i, row) in blocks.iter().enumerate() {
            members.push(((ti, i), row[i].conjugate_by(t)));
        }
    }
    let set = PrimitiveIdempotentSet { members, alpha, alpha_coefficients, e_hat, normal_element: w, blocks };
    verify_idempotent_set(comp, &set)?;
    Ok(set)
}

fn verify_idempotent_set(comp: &ComponentDescriptor, set: &PrimitiveIdempotentSet) -> Result<()> {
    let index = comp.group.order() / comp.pair.h.order();
    if set.members.len() != index {
        return Err(Error::InvariantBreach(format!("{} idempotents for index {index}", set.members.len())));
    }
    let fs: Vec<AlgebraElement> = set.members.iter().map(|(_, f)| f.clone()).collect();
    check_orthogonal_sum(&fs, &comp.e)?;
    let dim_f = comp.center_dimension();
    for f in &fs {
        // dim f·QG = n·dim F for a rank-one idempotent of M_n(F)
        let col = f.coeff(0) * Rational::from_integer(BigInt::from(comp.group.order()));
        if col != Rational::from_integer(BigInt::from(comp.matrix_size() * dim_f)) {
            return Err(Error::InvariantBreach("idempotent does not have rank one".into()));
        }
        if comp.group.order() <= RANK_CHECK_ORDER && crate::algebra::corner_basis(f).len() != dim_f {
            return Err(Error::InvariantBreach("corner of an idempotent has the wrong dimension".into()));
        }
    }
    for z in &comp.z_units {
        if (&set.e_hat * z) != set.e_hat {
            return Err(Error::InvariantBreach("averaged twisting units do not absorb the units".into()));
        }
    }
    Ok(())
}

/// Matrix units `𝙴_{(t,i),(t′,i′)} = t⁻¹ u_i⁻¹ α⁻¹ Ê α u_{i′} t′`.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    pub labels: Vec<(usize, usize)>,
    pub units: Vec<Vec<AlgebraElement>>,
}

impl MatrixUnits {
    pub fn to_json(&self, comp: &ComponentDescriptor) -> Value {
        let label = |(t, i): (usize, usize)| json!({"t": comp.group.word(comp.transversal[t]), "i": i});
        let mut out = Vec::new();
        for (a, row) in self.units.iter().enumerate() {
            for (b, u) in row.iter().enumerate() {
                out.push(json!({"row": label(self.labels[a]), "col": label(self.labels[b]), "value": u.to_json()}));
            }
        }
        Value::Array(out)
    }
}

pub fn matrix_units(comp: &ComponentDescriptor, set: &PrimitiveIdempotentSet) -> Result<MatrixUnits> {
    let group = &comp.group;
    let labels: Vec<(usize, usize)> = set.members.iter().map(|(l, _)| *l).collect();
    let units: Vec<Vec<AlgebraElement>> = labels
        .iter()
        .map(|&(t, i)| {
            labels
                .iter()
                .map(|&(t2, i2)| {
                    set.blocks[i][i2].left_mul_group(group.inv(comp.transversal[t])).right_mul_group(comp.transversal[t2])
                })
                .collect()
        })
        .collect();
    let n = labels.len();
    for a in 0..n {
        if units[a][a] != set.members[a].1 {
            return Err(Error::MatrixUnitRelationFailed("diagonal differs from the idempotent set".into()));
        }
    }
    if n <= DIRECT_CHECK_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let p = &units[a][b] * &units[c][d];
                        let ok = if b == c { p == units[a][d] } else { p.is_zero() };
                        if !ok {
                            return Err(Error::MatrixUnitRelationFailed(format!("({a},{b})·({c},{d})")));
                        }
                    }
                }
            }
        }
    } else {
        // the split-part relations are already verified; the corner blocks carry the rest
        let kk = comp.galois_size();
        for i in 0..kk {
            for j in 0..kk {
                for l in 0..kk {
                    for r in 0..kk {
                        let p = &set.blocks[i][j] * &set.blocks[l][r];
                        let ok = if j == l { p == set.blocks[i][r] } else { p.is_zero() };
                        if !ok {
                            return Err(Error::MatrixUnitRelationFailed(format!("corner blocks ({i},{j})·({l},{r})")));
                        }
                    }
                }
            }
        }
    }
    Ok(MatrixUnits { labels, units })
}
