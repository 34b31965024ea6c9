//! Built-in groups of the regression corpus.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_CLOSURE_CAP};
use crate::shoda::DeclaredPair;

/// Names accepted by [`builtin`]; the last one is the slow order-1000 instance.
pub const CORPUS: &[&str] = &["s3", "d8", "d16", "q8", "c7_c3", "c5_c4"];
pub const SLOW_CORPUS: &[&str] = &["p5_d8"];

fn perm_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "s3" => "r: (1 2 3)\ns: (1 2)",
        "d8" => "a: (1 2 3 4)\nb: (2 4)",
        "d16" => "a: (1 2 3 4 5 6 7 8)\nb: (2 8)(3 7)(4 6)",
        "q8" => "i: (1 3 2 4)(5 8 6 7)\nj: (1 5 2 6)(3 7 4 8)",
        "c7_c3" => "a: (1 2 3 4 5 6 7)\nb: (2 3 5)(4 7 6)",
        "c5_c4" => "a: (1 2 3 4 5)\nb: (2 3 5 4)",
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Result<Arc<FiniteGroup>> {
    if let Some(text) = perm_text(name) {
        return Ok(Arc::new(FiniteGroup::from_permutation_text(text, DEFAULT_CLOSURE_CAP)?));
    }
    match name {
        "p5_d8" => Ok(Arc::new(extraspecial_by_dihedral()?)),
        _ => Err(Error::Parse(format!("unknown builtin group {name:?}"))),
    }
}

// Heisenberg group of order 125: (i, j, l) = x^i y^j z^l, x central, [y, z] = x.
type Heis = (u8, u8, u8);

fn hmul(a: Heis, b: Heis) -> Heis {
    let m = |v: i32| v.rem_euclid(5) as u8;
    (m(a.0 as i32 + b.0 as i32 - a.2 as i32 * b.1 as i32), m(a.1 as i32 + b.1 as i32), m(a.2 as i32 + b.2 as i32))
}

fn hpow(a: Heis, n: u32) -> Heis {
    (0..n).fold((0, 0, 0), |acc, _| hmul(acc, a))
}

fn hmap(u: Heis, images: [Heis; 3]) -> Heis {
    hmul(hmul(hpow(images[0], u.0 as u32), hpow(images[1], u.1 as u32)), hpow(images[2], u.2 as u32))
}

// Conjugation u ↦ a⁻¹ u a fixes x and raises y, z to the powers 2, 3.
fn act_a(u: Heis) -> Heis {
    hmap(u, [(1, 0, 0), (0, 2, 0), (0, 0, 3)])
}

// Conjugation u ↦ b⁻¹ u b inverts x and swaps y, z up to inversion.
fn act_b(u: Heis) -> Heis {
    hmap(u, [(4, 0, 0), (0, 0, 4), (0, 4, 0)])
}

// Dihedral element a^s b^f.
type Dih = (u8, u8);

fn dmul(a: Dih, b: Dih) -> Dih {
    let t = if a.1 == 0 { b.0 as i32 } else { -(b.0 as i32) };
    ((a.0 as i32 + t).rem_euclid(4) as u8, (a.1 + b.1) % 2)
}

fn dinv(a: Dih) -> Dih {
    if a.1 == 0 { ((4 - a.0) % 4, 0) } else { a }
}

/// `d⁻¹ u d`.
fn act(d: Dih, u: Heis) -> Heis {
    let mut v = u;
    for _ in 0..d.0 {
        v = act_a(v);
    }
    if d.1 == 1 {
        v = act_b(v);
    }
    v
}

/// Semidirect product of the Heisenberg group mod 5 by the dihedral group of order 8.
pub fn extraspecial_by_dihedral() -> Result<FiniteGroup> {
    type El = (Heis, Dih);
    let op = |p: &El, q: &El| -> El { (hmul(p.0, act(dinv(p.1), q.0)), dmul(p.1, q.1)) };
    let id: El = ((0, 0, 0), (0, 0));
    let gens: Vec<El> = vec![
        ((1, 0, 0), (0, 0)),
        ((0, 1, 0), (0, 0)),
        ((0, 0, 1), (0, 0)),
        ((0, 0, 0), (1, 0)),
        ((0, 0, 0), (0, 1)),
    ];
    let labels = ["x", "y", "z", "a", "b"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_generators(id, &gens, labels, op, DEFAULT_CLOSURE_CAP)
}

fn sub(g: &FiniteGroup, words: &[&str]) -> Result<Subgroup> {
    let els = words.iter().map(|w| g.parse_word(w)).collect::<Result<Vec<_>>>()?;
    Ok(g.generated(&els))
}

/// A complete irredundant set of pairs for the order-1000 group, with towers for the pairs
/// whose component is only reached through an intermediate subgroup.
pub fn extraspecial_by_dihedral_pairs(g: &FiniteGroup) -> Result<Vec<DeclaredPair>> {
    let whole = g.whole();
    let p_a = sub(g, &["x", "y", "z", "a"])?;
    let p_b = sub(g, &["x", "y", "z", "b"])?;
    let p_ba = sub(g, &["x", "y", "z", "b*a"])?;
    let p = sub(g, &["x", "y", "z"])?;
    let xya = sub(g, &["x", "y", "a"])?;
    let mut out = Vec::new();
    let mut plain = |h: &Subgroup, k: Subgroup| out.push(DeclaredPair { h: h.clone(), k, tower: None });
    plain(&whole, whole.clone());
    plain(&whole, sub(g, &["x", "y", "z", "a^2", "a*b"])?);
    plain(&whole, p_a.clone());
    plain(&whole, sub(g, &["x", "y", "z", "a^2", "b"])?);
    plain(&p_a, p.clone());
    for (h, extra) in [(&p_b, "b"), (&p_ba, "b*a")] {
        // the two kernels with cyclic quotient of order 10 and 5
        let d = g.commutator_subgroup(h, h);
        plain(h, d.clone());
        plain(h, g.join(&d, &[g.parse_word(extra)?]));
    }
    plain(&p, sub(g, &["x", "y"])?);
    for k in [sub(g, &["y", "a"])?, sub(g, &["y", "a^2"])?, sub(g, &["y"])?] {
        out.push(DeclaredPair { h: xya.clone(), k, tower: Some(vec![xya.clone(), p_a.clone(), whole.clone()]) });
    }
    Ok(out)
}

/// Declared pairs for a builtin group, when the corpus ships them.
pub fn declared_pairs(name: &str, g: &FiniteGroup) -> Result<Option<Vec<DeclaredPair>>> {
    match name {
        "p5_d8" => extraspecial_by_dihedral_pairs(g).map(Some),
        _ => Ok(None),
    }
}
