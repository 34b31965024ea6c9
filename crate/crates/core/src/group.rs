//! Finite groups stored as dense Cayley tables.
//!
//! Element 0 is always the identity. Groups built from generators number
//! their elements in breadth-first discovery order, so indices are stable
//! for a fixed generator list.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 5000;
pub const DEFAULT_SUBGROUP_CAP: usize = 200;

pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    labels: Vec<String>,
    label_elems: Vec<usize>,
    // (parent, generator index) for elements discovered by BFS
    tree: Vec<Option<(u32, u32)>>,
    gens: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.n)
            .field("labels", &self.labels)
            .finish()
    }
}

/// A permutation of `0..degree`, stored as its image list.
pub type Perm = Vec<usize>;

/// Parse cycle notation with 1-based points, e.g. `(1 2 3)(4,5)`. `()` is the identity.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::NotAPermutation(format!("expected '(' in {s:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::NotAPermutation(format!("unbalanced parenthesis in {s:?}")))?;
        let body = &rest[1..close];
        let mut cyc = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| Error::NotAPermutation(format!("bad point {tok:?}")))?;
            if p == 0 {
                return Err(Error::NotAPermutation("points are 1-based".into()));
            }
            cyc.push(p - 1);
        }
        cycles.push(cyc);
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Convert cycles to an image list on `degree` points.
pub fn cycles_to_perm(cycles: &[Vec<usize>], degree: usize) -> Result<Perm> {
    let mut img: Perm = (0..degree).collect();
    let mut seen = vec![false; degree];
    for cyc in cycles {
        for (i, &p) in cyc.iter().enumerate() {
            if p >= degree || seen[p] {
                return Err(Error::NotAPermutation(format!("point {} repeated or out of range", p + 1)));
            }
            seen[p] = true;
            img[p] = cyc[(i + 1) % cyc.len()];
        }
    }
    Ok(img)
}

fn compose(p: &Perm, q: &Perm) -> Perm {
    // apply p first, then q
    p.iter().map(|&i| q[i]).collect()
}

impl FiniteGroup {
    /// Close a generator list under an associative product, numbering elements by BFS.
    pub fn from_generators<T, F>(
        identity: T,
        gens: &[T],
        labels: Vec<String>,
        op: F,
        cap: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let ng = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut tree: Vec<Option<(u32, u32)>> = vec![None];
        let mut rmul: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = op(&elems[i], g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        if j >= cap {
                            return Err(Error::OrderBoundExceeded(cap));
                        }
                        index.insert(y.clone(), j);
                        elems.push(y);
                        tree.push(Some((i as u32, gi as u32)));
                        j
                    }
                };
                rmul.push(j as u32);
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
        }
        for j in 1..n {
            let (p, gi) = tree[j].expect("non-identity elements have a parent");
            for a in 0..n {
                let ap = mul[a * n + p as usize] as usize;
                mul[a * n + j] = rmul[ap * ng + gi as usize];
            }
        }
        let label_elems = gens.iter().map(|g| index[g]).collect::<Vec<_>>();
        let labels = if labels.len() == ng {
            labels
        } else {
            (1..=ng).map(|i| format!("g{i}")).collect()
        };
        Ok(Self::finish(n, mul, labels, label_elems, tree))
    }

    /// Group generated by permutations on a common ground set (shorter ones are padded with fixed points).
    pub fn from_permutations(gens: &[Perm], labels: Vec<String>, cap: usize) -> Result<Self> {
        let degree = gens.iter().map(|g| g.len()).max().unwrap_or(0);
        let mut padded = Vec::with_capacity(gens.len());
        for g in gens {
            let mut seen = vec![false; g.len()];
            for &x in g {
                if x >= g.len() || seen[x] {
                    return Err(Error::NotAPermutation(format!("{g:?} is not a bijection")));
                }
                seen[x] = true;
            }
            let mut p = g.clone();
            p.extend(g.len()..degree);
            padded.push(p);
        }
        let id: Perm = (0..degree).collect();
        Self::from_generators(id, &padded, labels, compose, cap)
    }

    /// Parse a permutation generator file: one generator per line, optionally `label: (cycles)`.
    pub fn from_permutation_text(text: &str, cap: usize) -> Result<Self> {
        let mut labels = Vec::new();
        let mut cycles = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (label, body) = match line.split_once(':') {
                Some((l, b)) => (Some(l.trim().to_string()), b.trim()),
                None => (None, line),
            };
            labels.push(label.unwrap_or_else(|| format!("g{}", labels.len() + 1)));
            cycles.push(parse_cycles(body)?);
        }
        let degree = cycles
            .iter()
            .flat_map(|c| c.iter().flatten())
            .map(|&p| p + 1)
            .max()
            .unwrap_or(1);
        let perms = cycles
            .iter()
            .map(|c| cycles_to_perm(c, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::from_permutations(&perms, labels, cap)
    }

    /// Validate a Cayley table whose identity is element 0.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let bad = |m: &str| Error::Parse(format!("invalid Cayley table: {m}"));
        if n == 0 {
            return Err(bad("empty"));
        }
        let mut mul = vec![0u32; n * n];
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(bad("not square"));
            }
            let mut seen = vec![false; n];
            for (j, &x) in row.iter().enumerate() {
                if x >= n || seen[x] {
                    return Err(bad("row is not a permutation"));
                }
                seen[x] = true;
                mul[i * n + j] = x as u32;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let x = mul[i * n + j] as usize;
                if seen[x] {
                    return Err(bad("column is not a permutation"));
                }
                seen[x] = true;
            }
        }
        for i in 0..n {
            if mul[i] as usize != i || mul[i * n] as usize != i {
                return Err(bad("element 0 is not the identity"));
            }
        }
        let g = Self::finish(n, mul, Vec::new(), Vec::new(), vec![None; n]);
        // associativity against a generating set suffices
        for &s in &g.gens {
            for x in 0..n {
                for y in 0..n {
                    if g.mul(g.mul(x, y), s) != g.mul(x, g.mul(y, s)) {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(g)
    }

    fn finish(
        n: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        label_elems: Vec<usize>,
        tree: Vec<Option<(u32, u32)>>,
    ) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&x| x == 0).expect("latin square") as u32;
        }
        let mut orders = vec![1u32; n];
        for a in 1..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        let mut g = FiniteGroup {
            n,
            mul,
            inv,
            orders,
            labels,
            label_elems,
            tree,
            gens: Vec::new(),
        };
        let whole: Vec<usize> = (0..n).collect();
        g.gens = if g.label_elems.is_empty() {
            g.greedy_generators(&whole)
        } else {
            g.label_elems.clone()
        };
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order(a) as i64;
        let e = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x⁻¹ y⁻¹ x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// Generators used for centrality and normality tests.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_elements(&self) -> &[usize] {
        &self.label_elems
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Display word for an element in the generator labels.
    pub fn word(&self, g: usize) -> String {
        if g == 0 {
            return "1".into();
        }
        if self.labels.is_empty() || self.tree[g].is_none() {
            return format!("#{g}");
        }
        let mut letters = Vec::new();
        let mut x = g;
        while let Some((p, gi)) = self.tree[x] {
            letters.push(gi as usize);
            x = p as usize;
        }
        letters.reverse();
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let l = &self.labels[letters[i]];
            parts.push(if j - i == 1 { l.clone() } else { format!("{l}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    /// Parse a word such as `a^2*b*x^-1`; `1` is the identity and `#k` names element k directly.
    pub fn parse_word(&self, s: &str) -> Result<usize> {
        let mut x = 0;
        for tok in s.split('*') {
            let tok = tok.trim();
            if tok.is_empty() || tok == "1" || tok == "e" {
                continue;
            }
            if let Some(idx) = tok.strip_prefix('#') {
                let k: usize = idx.parse().map_err(|_| Error::Parse(format!("bad index {tok:?}")))?;
                if k >= self.n {
                    return Err(Error::Parse(format!("index {k} out of range")));
                }
                x = self.mul(x, k);
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let li = self
                .labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            x = self.mul(x, self.pow(self.label_elems[li], exp));
        }
        Ok(x)
    }

    // ---- subgroups ----

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.n, vec![0])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.n, (0..self.n as u32).collect())
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        self.closure_from(vec![0], gens)
    }

    /// Smallest subgroup containing `sub` and `extra`.
    pub fn join(&self, sub: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = self.subgroup_generators(sub);
        gens.extend_from_slice(extra);
        self.closure_from(sub.members.iter().map(|&x| x as usize).collect(), &gens)
    }

    fn closure_from(&self, start: Vec<usize>, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.n];
        let mut list = Vec::with_capacity(start.len());
        for x in start {
            if !seen[x] {
                seen[x] = true;
                list.push(x);
            }
        }
        if !seen[0] {
            seen[0] = true;
            list.push(0);
        }
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        let mut m: Vec<u32> = list.into_iter().map(|x| x as u32).collect();
        m.sort_unstable();
        Subgroup::from_sorted(self.n, m)
    }

    /// Validate an element set as a subgroup.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<Subgroup> {
        let mut m: Vec<u32> = members.iter().map(|&x| x as u32).collect();
        m.sort_unstable();
        m.dedup();
        if m.iter().any(|&x| x as usize >= self.n) {
            return Err(Error::NotASubgroup);
        }
        let s = Subgroup::from_sorted(self.n, m);
        if !s.contains(0) || !self.n.is_multiple_of(s.order()) {
            return Err(Error::NotASubgroup);
        }
        for a in s.iter() {
            if !s.contains(self.inv(a)) {
                return Err(Error::NotASubgroup);
            }
            for b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(s)
    }

    fn greedy_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        // prefer elements of large order so generating sets stay short
        let mut cand: Vec<usize> = members.to_vec();
        cand.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in cand {
            if cur.order() == members.len() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure_from(cur.members.iter().map(|&y| y as usize).collect(), &gens);
            }
        }
        gens
    }

    /// A short generating set for `sub`.
    pub fn subgroup_generators(&self, sub: &Subgroup) -> Vec<usize> {
        if sub.order() == self.n {
            return self.gens.clone();
        }
        let m: Vec<usize> = sub.iter().collect();
        self.greedy_generators(&m)
    }

    /// Every subgroup, sorted by order then member list.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.n > cap {
            return Err(Error::OrderBoundExceeded(cap));
        }
        let mut found: HashSet<Vec<u64>> = HashSet::new();
        let mut all: Vec<Subgroup> = Vec::new();
        let mut cyclic_gens = Vec::new();
        for g in 0..self.n {
            let c = self.generated(&[g]);
            if found.insert(c.mask.clone()) {
                cyclic_gens.push(g);
                all.push(c);
            }
        }
        let mut frontier: Vec<usize> = (0..all.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &si in &frontier {
                let s = all[si].clone();
                for &g in &cyclic_gens {
                    if s.contains(g) {
                        continue;
                    }
                    let t = self.join(&s, &[g]);
                    if found.insert(t.mask.clone()) {
                        next.push(all.len());
                        all.push(t);
                    }
                }
            }
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    pub fn is_subgroup_of(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.is_subset(b)
    }

    /// `K ⊴ H`.
    pub fn is_normal_in(&self, k: &Subgroup, h: &Subgroup) -> bool {
        if !k.is_subset(h) {
            return false;
        }
        let kg = self.subgroup_generators(k);
        self.subgroup_generators(h)
            .iter()
            .all(|&s| kg.iter().all(|&x| k.contains(self.conj(x, s))))
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.is_normal_in(k, &self.whole())
    }

    pub fn conjugate_subgroup(&self, s: &Subgroup, g: usize) -> Subgroup {
        let mut m: Vec<u32> = s.iter().map(|x| self.conj(x, g) as u32).collect();
        m.sort_unstable();
        Subgroup::from_sorted(self.n, m)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let m = a.members.iter().copied().filter(|&x| b.contains(x as usize)).collect();
        Subgroup::from_sorted(self.n, m)
    }

    /// `N_G(K)`.
    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        self.normalizer_in(k, &self.whole())
    }

    /// `N_A(K)` for an ambient subgroup A.
    pub fn normalizer_in(&self, k: &Subgroup, ambient: &Subgroup) -> Subgroup {
        let kg = self.subgroup_generators(k);
        let m = ambient
            .members
            .iter()
            .copied()
            .filter(|&g| kg.iter().all(|&x| k.contains(self.conj(x, g as usize))))
            .collect();
        Subgroup::from_sorted(self.n, m)
    }

    /// Elements of G commuting with every element of `s`.
    pub fn centralizer_subgroup(&self, s: &Subgroup) -> Subgroup {
        let sg = self.subgroup_generators(s);
        let m = (0..self.n)
            .filter(|&g| sg.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .map(|g| g as u32)
            .collect();
        Subgroup::from_sorted(self.n, m)
    }

    /// Smallest normal subgroup of `ambient` containing `s`.
    pub fn normal_closure_in(&self, s: &Subgroup, ambient: &Subgroup) -> Subgroup {
        let ag = self.subgroup_generators(ambient);
        let mut cur = s.clone();
        loop {
            let cg = self.subgroup_generators(&cur);
            let extra: Vec<usize> = cg
                .iter()
                .flat_map(|&x| ag.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&y| !cur.contains(y))
                .collect();
            if extra.is_empty() {
                return cur;
            }
            cur = self.join(&cur, &extra);
        }
    }

    /// `[A, B] = ⟨a⁻¹b⁻¹ab⟩`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut cur = self.trivial_subgroup();
        let mut gens = Vec::new();
        for x in a.iter() {
            for y in b.iter() {
                let c = self.commutator(x, y);
                if !cur.contains(c) {
                    gens.push(c);
                    cur = self.closure_from(cur.iter().collect(), &gens);
                }
            }
        }
        cur
    }

    /// `⟨g⁻¹h⁻¹gh : h ∈ H⟩`.
    pub fn commutator_with_element(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut cur = self.trivial_subgroup();
        let mut gens = Vec::new();
        for x in h.iter() {
            let c = self.commutator(g, x);
            if !cur.contains(c) {
                gens.push(c);
                cur = self.closure_from(cur.iter().collect(), &gens);
            }
        }
        cur
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let whole = self.whole();
        let mut gens = Vec::new();
        for &a in &self.gens {
            for &b in &self.gens {
                gens.push(self.commutator(a, b));
            }
        }
        let s = self.generated(&gens);
        self.normal_closure_in(&s, &whole)
    }

    /// Order of `hK` in `H/K`.
    pub fn coset_order(&self, h: usize, k: &Subgroup) -> usize {
        let mut x = h;
        let mut j = 1;
        while !k.contains(x) {
            x = self.mul(x, h);
            j += 1;
        }
        j
    }

    /// An element `h` with `⟨hK⟩ = H/K` if the quotient is cyclic.
    pub fn quotient_is_cyclic(&self, h: &Subgroup, k: &Subgroup) -> Result<Option<usize>> {
        if !self.is_normal_in(k, h) {
            return Err(Error::NotNormal);
        }
        let m = h.order() / k.order();
        Ok(h.iter().find(|&x| self.coset_order(x, k) == m))
    }

    /// Left transversal: the cosets `rep·sub` partition `ambient`; lowest unused index first.
    pub fn left_transversal(&self, ambient: &Subgroup, sub: &Subgroup) -> Result<CosetTransversal> {
        self.transversal(ambient, sub, true)
    }

    /// Right transversal: the cosets `sub·rep` partition `ambient`; lowest unused index first.
    pub fn right_transversal(&self, ambient: &Subgroup, sub: &Subgroup) -> Result<CosetTransversal> {
        self.transversal(ambient, sub, false)
    }

    fn transversal(&self, ambient: &Subgroup, sub: &Subgroup, left: bool) -> Result<CosetTransversal> {
        if !sub.is_subset(ambient) {
            return Err(Error::NotContained);
        }
        let mut covered = vec![false; self.n];
        let mut reps = Vec::new();
        for g in ambient.iter() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for s in sub.iter() {
                let x = if left { self.mul(g, s) } else { self.mul(s, g) };
                covered[x] = true;
            }
        }
        Ok(CosetTransversal {
            subgroup: sub.clone(),
            reps,
        })
    }

    /// Conjugacy class representatives (smallest index in each class), with class sizes.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let mut cls = vec![x];
            seen[x] = true;
            let mut q = VecDeque::from([x]);
            while let Some(y) = q.pop_front() {
                for &g in &self.gens {
                    let z = self.conj(y, g);
                    if !seen[z] {
                        seen[z] = true;
                        cls.push(z);
                        q.push_back(z);
                    }
                }
            }
            cls.sort_unstable();
            classes.push(cls);
        }
        classes
    }
}

/// A subgroup stored as a sorted member list plus a bit set over the parent's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<u64>,
}

impl Subgroup {
    fn from_sorted(parent_order: usize, members: Vec<u32>) -> Self {
        let mut mask = vec![0u64; parent_order.div_ceil(64)];
        for &m in &members {
            mask[m as usize / 64] |= 1 << (m % 64);
        }
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.mask
            .get(g / 64)
            .is_some_and(|w| w & (1u64 << (g % 64)) != 0)
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&x| x as usize)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.len() == other.mask.len()
            && self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

/// Coset representatives with the identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTransversal {
    pub subgroup: Subgroup,
    pub reps: Vec<usize>,
}
