//! Explicit finite groups: multiplication tables, subgroups, quotients,
//! permutation automorphisms, and the named coordinate groups.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::inv_mod;
use crate::structures::{enumerate_group, enumerate_sylow, AutMatrix, IndexSet, Partition};
use crate::{Error, Result};

/// Tables up to this size are validated with an exhaustive associativity
/// sweep; larger ones use a fixed-seed sample of at least ten thousand
/// triples.  Cancellation (each row and column a permutation), the identity
/// and inverses are always checked exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

const VALIDATION_SAMPLES: usize = 10_000;

/// A finite group given by its full multiplication table.
///
/// Elements are the indices `0..size`.  The table is row-major:
/// `mul(i, j)` is the index of the product (left factor `i`).
#[derive(Clone)]
pub struct GroupTable {
    name: String,
    size: usize,
    identity: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Build a table from a multiplication closure and validate the group
    /// axioms (see [`EXHAUSTIVE_ASSOCIATIVITY`] for the associativity
    /// policy).
    pub fn from_fn<F>(name: &str, size: usize, mul_fn: F, labels: Option<Vec<String>>) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        if size == 0 {
            return Err(Error::Invalid("a group table needs at least one element".into()));
        }
        if let Some(ls) = &labels {
            if ls.len() != size {
                return Err(Error::Invalid("label count does not match group size".into()));
            }
        }
        let mut mul = vec![0u32; size * size];
        for i in 0..size {
            for j in 0..size {
                let k = mul_fn(i, j);
                if k >= size {
                    return Err(Error::Invalid(format!(
                        "product of {i} and {j} escapes the element range"
                    )));
                }
                mul[i * size + j] = k as u32;
            }
        }
        Self::from_table(name, size, mul, labels, true)
    }

    /// Build from a precomputed flat table.  `check_associativity` can be
    /// switched off when the table provably inherits associativity (for
    /// example from matrix multiplication); all cheaper axioms are still
    /// verified.
    pub fn from_table(
        name: &str,
        size: usize,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
        check_associativity: bool,
    ) -> Result<Self> {
        if mul.len() != size * size {
            return Err(Error::Invalid("multiplication table has the wrong shape".into()));
        }
        // Latin square: rows and columns are permutations.
        let mut seen = vec![false; size];
        for i in 0..size {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..size {
                let k = mul[i * size + j] as usize;
                if k >= size || seen[k] {
                    return Err(Error::Inconsistent(format!("row {i} of the table is not a permutation")));
                }
                seen[k] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..size {
                let k = mul[j * size + i] as usize;
                if k >= size || seen[k] {
                    return Err(Error::Inconsistent(format!(
                        "column {i} of the table is not a permutation"
                    )));
                }
                seen[k] = true;
            }
        }
        // Identity.
        let mut identity = None;
        'outer: for e in 0..size {
            for x in 0..size {
                if mul[e * size + x] as usize != x || mul[x * size + e] as usize != x {
                    continue 'outer;
                }
            }
            identity = Some(e);
            break;
        }
        let identity =
            identity.ok_or_else(|| Error::Inconsistent("table has no two-sided identity".into()))?;
        // Inverses.
        let mut inv = vec![u32::MAX; size];
        for x in 0..size {
            for y in 0..size {
                if mul[x * size + y] as usize == identity && mul[y * size + x] as usize == identity {
                    inv[x] = y as u32;
                    break;
                }
            }
            if inv[x] == u32::MAX {
                return Err(Error::Inconsistent(format!("element {x} has no two-sided inverse")));
            }
        }
        let table = GroupTable { name: name.to_string(), size, identity, mul, inv, labels };
        if check_associativity {
            table.validate_associativity()?;
        }
        Ok(table)
    }

    fn validate_associativity(&self) -> Result<()> {
        let n = self.size;
        let check = |a: usize, b: usize, c: usize| -> bool {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::Inconsistent(format!(
                                "associativity fails on ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
            for _ in 0..VALIDATION_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Err(Error::Inconsistent(format!("associativity fails on ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// a b a⁻¹ b⁻¹.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// g h g⁻¹.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn order_of(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.size {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure of a set of element indices under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.size];
        member[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &g in gens {
            if !member[g] {
                member[g] = true;
                out.push(g);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !member[y] {
                        member[y] = true;
                        out.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small deterministic generating set: repeatedly adjoin the least
    /// element outside the closure so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut have = 1usize;
        loop {
            if have == self.size {
                return gens;
            }
            let closed = self.closure(&gens);
            if closed.len() == self.size {
                return gens;
            }
            have = closed.len();
            let mut member = vec![false; self.size];
            for &x in &closed {
                member[x] = true;
            }
            let next = (0..self.size).find(|&x| !member[x]).expect("proper subgroup has a complement");
            gens.push(next);
        }
    }

    /// The subgroup generated by all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut member = vec![false; self.size];
        let mut gens = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                let c = self.commutator(a, b);
                if !member[c] {
                    member[c] = true;
                    gens.push(c);
                }
            }
        }
        self.closure(&gens)
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&z| (0..self.size).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn centralizes(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&z| (0..self.size).all(|g| self.mul(z, g) == self.mul(g, z)))
    }

    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = g;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, g);
        }
        out.sort_unstable();
        out
    }

    /// Check that a permutation of the element indices is an automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.size {
            return false;
        }
        let mut seen = vec![false; self.size];
        for &v in perm {
            if v >= self.size || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        for a in 0..self.size {
            for b in 0..self.size {
                if perm[self.mul(a, b)] != self.mul(perm[a], perm[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Compose permutations: `(a ∘ b)(x) = a[b[x]]`.
pub fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn perm_inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; a.len()];
    for (i, &v) in a.iter().enumerate() {
        out[v] = i;
    }
    out
}

/// Close a list of permutations under composition (all of the same degree).
pub fn perm_closure(gens: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>> {
    let degree = match gens.first() {
        Some(g) => g.len(),
        None => return Ok(vec![]),
    };
    let id: Vec<usize> = (0..degree).collect();
    let mut out: Vec<Vec<usize>> = vec![id.clone()];
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    seen.insert(id, ());
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let current = out[i].clone();
        for g in gens {
            let next = perm_compose(g, &current);
            if !seen.contains_key(&next) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded { predicted: out.len() as u128 + 1, cap: cap as u128 });
                }
                seen.insert(next.clone(), ());
                out.push(next);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

/// The additive cyclic group `Z/n`.
pub fn cyclic(n: u64) -> Result<GroupTable> {
    if n == 0 || n > 1 << 20 {
        return Err(Error::Invalid(format!("cyclic order {n} out of range")));
    }
    let n = n as usize;
    let labels = (0..n).map(|i| i.to_string()).collect();
    GroupTable::from_fn(&format!("Z/{n}"), n, |a, b| (a + b) % n, Some(labels))
}

/// Direct product with row-major index `(a, b) ↦ a·|B| + b`.
pub fn product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.size(), b.size());
    let labels = (0..na * nb)
        .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
        .collect();
    let name = format!("{}x{}", a.name(), b.name());
    let mul = |x: usize, y: usize| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    };
    GroupTable::from_fn(&name, na * nb, mul, Some(labels))
}

/// A subgroup presented on its own index range together with the embedding
/// into the parent.
pub struct Subgroup {
    pub table: GroupTable,
    /// `embed[i]` = parent index of subgroup element `i`.
    pub embed: Vec<usize>,
    /// parent index -> subgroup index (usize::MAX outside).
    pub locate: Vec<usize>,
}

pub fn subgroup(parent: &GroupTable, members: &[usize], name: &str) -> Result<Subgroup> {
    let mut embed = members.to_vec();
    embed.sort_unstable();
    embed.dedup();
    let mut locate = vec![usize::MAX; parent.size()];
    for (i, &g) in embed.iter().enumerate() {
        locate[g] = i;
    }
    let n = embed.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = locate[parent.mul(embed[i], embed[j])];
            if k == usize::MAX {
                return Err(Error::Invalid(format!("subset {name} is not closed under multiplication")));
            }
            mul[i * n + j] = k as u32;
        }
    }
    let labels = Some(embed.iter().map(|&g| parent.label(g)).collect());
    let table = GroupTable::from_table(name, n, mul, labels, false)?;
    Ok(Subgroup { table, embed, locate })
}

/// A quotient by a normal subgroup, with the projection map.
pub struct QuotientTable {
    pub table: GroupTable,
    /// parent index -> class index.
    pub proj: Vec<usize>,
    /// class index -> least parent representative.
    pub reps: Vec<usize>,
}

pub fn quotient(parent: &GroupTable, normal: &[usize], name: &str) -> Result<QuotientTable> {
    let n = parent.size();
    let mut members = vec![false; n];
    for &x in normal {
        members[x] = true;
    }
    if !members[parent.identity()] {
        return Err(Error::Invalid("normal subgroup must contain the identity".into()));
    }
    // normality
    for g in 0..n {
        for &h in normal {
            if !members[parent.conj(g, h)] {
                return Err(Error::Invalid(format!("subgroup is not normal (conjugate of {h} by {g} escapes)")));
            }
        }
    }
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if proj[g] != usize::MAX {
            continue;
        }
        let class = reps.len();
        reps.push(g);
        for &h in normal {
            proj[parent.mul(g, h)] = class;
        }
        if proj[g] != class {
            return Err(Error::Inconsistent("coset enumeration failed".into()));
        }
    }
    let q = reps.len();
    if q * normal.len() != n {
        return Err(Error::Inconsistent("cosets do not partition the group".into()));
    }
    let mut mul = vec![0u32; q * q];
    for i in 0..q {
        for j in 0..q {
            mul[i * q + j] = proj[parent.mul(reps[i], reps[j])] as u32;
        }
    }
    let labels = Some(reps.iter().map(|&g| format!("[{}]", parent.label(g))).collect());
    let table = GroupTable::from_table(name, q, mul, labels, false)?;
    Ok(QuotientTable { table, proj, reps })
}

/// A group of matrices with its multiplication table and the index of each
/// matrix, so automorphisms by conjugation can be turned into permutations.
#[derive(Clone)]
pub struct MatrixGroup {
    pub table: GroupTable,
    pub elements: Vec<AutMatrix>,
    index: HashMap<AutMatrix, usize>,
}

impl MatrixGroup {
    /// Build from a closed list of matrices.  Labels are digit coordinates
    /// when a partition index set is supplied.
    pub fn from_elements(name: &str, elements: Vec<AutMatrix>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Invalid("empty matrix list".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, m) in elements.iter().enumerate() {
            if index.insert(m.clone(), i).is_some() {
                return Err(Error::Invalid("duplicate matrix in element list".into()));
            }
        }
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = elements[i].mul(&elements[j]);
                let k = *index.get(&prod).ok_or_else(|| {
                    Error::Invalid(format!("set is not closed: product of elements {i} and {j} is missing"))
                })?;
                mul[i * n + j] = k as u32;
            }
        }
        let index_set = IndexSet::new(elements[0].partition());
        let coords = index_set.coords().to_vec();
        let labels = Some(
            elements
                .iter()
                .map(|m| {
                    let digits: Vec<String> = coords.iter().map(|c| m.digit(c).to_string()).collect();
                    digits.join("")
                })
                .collect(),
        );
        // Associativity is inherited from matrix multiplication.
        let table = GroupTable::from_table(name, n, mul, labels, false)?;
        Ok(MatrixGroup { table, elements, index })
    }

    /// The Sylow p-subgroup of the automorphism group of the given abelian
    /// p-group.
    pub fn sylow(partition: &Partition, p: u64, cap: u128) -> Result<Self> {
        let elements = enumerate_sylow(partition, p, cap)?;
        Self::from_elements(&format!("P_{}({p})", partition.label()), elements)
    }

    /// The full automorphism group.
    pub fn full(partition: &Partition, p: u64, cap: u128) -> Result<Self> {
        let elements = enumerate_group(partition, p, cap)?;
        Self::from_elements(&format!("G_{}({p})", partition.label()), elements)
    }

    pub fn index_of(&self, m: &AutMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The permutation `g ↦ d g d⁻¹`.  Fails if the set is not closed under
    /// this conjugation.
    pub fn conj_permutation(&self, d: &AutMatrix) -> Result<Vec<usize>> {
        let dinv = d.inverse()?;
        let mut perm = Vec::with_capacity(self.elements.len());
        for g in &self.elements {
            let image = d.mul(g).mul(&dinv);
            let k = self.index.get(&image).ok_or_else(|| {
                Error::Invalid("conjugation does not preserve this matrix group".into())
            })?;
            perm.push(*k);
        }
        Ok(perm)
    }
}

/// A group law on coordinate tuples `(Z/p)^arity`, together with the scaling
/// action of a torus `((Z/p)^*)^units`.
pub struct CoordinateGroup {
    pub table: GroupTable,
    p: u64,
    arity: usize,
    units: usize,
    law: fn(u64, &[u64], &[u64]) -> Vec<u64>,
    scale: fn(u64, &[u64], &[u64]) -> Vec<u64>,
}

impl CoordinateGroup {
    fn build(
        name: &str,
        p: u64,
        names: &[&str],
        units: usize,
        law: fn(u64, &[u64], &[u64]) -> Vec<u64>,
        scale: fn(u64, &[u64], &[u64]) -> Vec<u64>,
    ) -> Result<Self> {
        if !crate::linalg::is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let arity = names.len();
        let size = (p as usize).pow(arity as u32);
        if size > 1 << 22 {
            return Err(Error::CapExceeded { predicted: size as u128, cap: 1 << 22 });
        }
        let decode = |i: usize| -> Vec<u64> {
            let mut v = vec![0u64; arity];
            let mut rest = i as u64;
            // Most significant coordinate first, matching the name order.
            for k in (0..arity).rev() {
                v[k] = rest % p;
                rest /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> usize {
            let mut acc = 0u64;
            for &x in v {
                acc = acc * p + (x % p);
            }
            acc as usize
        };
        let labels = (0..size)
            .map(|i| {
                let v = decode(i);
                let parts: Vec<String> =
                    names.iter().zip(&v).map(|(n, x)| format!("{n}={x}")).collect();
                parts.join(",")
            })
            .collect();
        let table = GroupTable::from_fn(
            name,
            size,
            |i, j| encode(&law(p, &decode(i), &decode(j))),
            Some(labels),
        )?;
        Ok(CoordinateGroup { table, p, arity, units, law, scale })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn decode(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.arity];
        let mut rest = i as u64;
        for k in (0..self.arity).rev() {
            v[k] = rest % self.p;
            rest /= self.p;
        }
        v
    }

    pub fn encode(&self, v: &[u64]) -> usize {
        let mut acc = 0u64;
        for &x in v {
            acc = acc * self.p + (x % self.p);
        }
        acc as usize
    }

    pub fn law(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        (self.law)(self.p, x, y)
    }

    /// The permutation induced by the torus element `t` (unit tuple).
    /// Validated to be an automorphism of the table.
    pub fn torus_permutation(&self, t: &[u64]) -> Result<Vec<usize>> {
        if t.len() != self.units {
            return Err(Error::Invalid(format!("expected {} torus parameters", self.units)));
        }
        if t.iter().any(|&u| u % self.p == 0) {
            return Err(Error::Invalid("torus parameters must be units".into()));
        }
        let perm: Vec<usize> = (0..self.table.size())
            .map(|i| self.encode(&(self.scale)(self.p, t, &self.decode(i))))
            .collect();
        if !self.table.is_automorphism(&perm) {
            return Err(Error::Inconsistent("torus scaling is not an automorphism".into()));
        }
        Ok(perm)
    }

    /// All `(p−1)^units` torus permutations (with multiplicity: distinct
    /// parameter tuples can induce the same permutation).
    pub fn torus_permutations(&self) -> Result<Vec<Vec<usize>>> {
        let p = self.p;
        let mut out = Vec::new();
        let count = (p - 1).pow(self.units as u32);
        for idx in 0..count {
            let mut rest = idx;
            let mut t = vec![0u64; self.units];
            for k in 0..self.units {
                t[k] = 1 + rest % (p - 1);
                rest /= p - 1;
            }
            out.push(self.torus_permutation(&t)?);
        }
        Ok(out)
    }
}

#[inline]
fn ratio(p: u64, num: u64, den: u64) -> u64 {
    num % p * inv_mod(den % p, p).expect("unit denominator") % p
}

/// The first coordinate group: coordinates `(b, c)`, componentwise addition,
/// torus `(t₁,t₂)` scaling `b` by `t₁/t₂` and `c` by `t₂/t₁`.
pub fn g1(p: u64) -> Result<CoordinateGroup> {
    fn law(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
        vec![(x[0] + y[0]) % p, (x[1] + y[1]) % p]
    }
    fn scale(p: u64, t: &[u64], x: &[u64]) -> Vec<u64> {
        vec![ratio(p, t[0], t[1]) * x[0] % p, ratio(p, t[1], t[0]) * x[1] % p]
    }
    CoordinateGroup::build(&format!("G1({p})"), p, &["b", "c"], 2, law, scale)
}

/// The second coordinate group: coordinates `(b, c, e, f)` with the single
/// cross term `e'' = e + e' + f c'`.
pub fn g2(p: u64) -> Result<CoordinateGroup> {
    fn law(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
        vec![
            (x[0] + y[0]) % p,
            (x[1] + y[1]) % p,
            (x[2] + y[2] + x[3] * y[1]) % p,
            (x[3] + y[3]) % p,
        ]
    }
    fn scale(p: u64, t: &[u64], x: &[u64]) -> Vec<u64> {
        vec![
            ratio(p, t[0], t[2]) * x[0] % p,
            ratio(p, t[1], t[0]) * x[1] % p,
            ratio(p, t[2], t[0]) * x[2] % p,
            ratio(p, t[2], t[1]) * x[3] % p,
        ]
    }
    CoordinateGroup::build(&format!("G2({p})"), p, &["b", "c", "e", "f"], 3, law, scale)
}

/// The third coordinate group: coordinates `(a, b, c, e, f)` with cross terms
/// `a'' = a + a' + b f'` and `e'' = e + e' + f c'`.
pub fn g3(p: u64) -> Result<CoordinateGroup> {
    fn law(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
        vec![
            (x[0] + y[0] + x[1] * y[4]) % p,
            (x[1] + y[1]) % p,
            (x[2] + y[2]) % p,
            (x[3] + y[3] + x[4] * y[2]) % p,
            (x[4] + y[4]) % p,
        ]
    }
    fn scale(p: u64, t: &[u64], x: &[u64]) -> Vec<u64> {
        vec![
            ratio(p, t[0], t[1]) * x[0] % p,
            ratio(p, t[0], t[2]) * x[1] % p,
            ratio(p, t[1], t[0]) * x[2] % p,
            ratio(p, t[2], t[0]) * x[3] % p,
            ratio(p, t[2], t[1]) * x[4] % p,
        ]
    }
    CoordinateGroup::build(&format!("G3({p})"), p, &["a", "b", "c", "e", "f"], 3, law, scale)
}

/// The fourth coordinate group: coordinates `(a, b, c, d, e, f)` with cross
/// terms `a'' = a + a' + b f'`, `d'' = d + d' + c b'`, `e'' = e + e' + f c'`.
pub fn g4(p: u64) -> Result<CoordinateGroup> {
    fn law(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
        vec![
            (x[0] + y[0] + x[1] * y[5]) % p,
            (x[1] + y[1]) % p,
            (x[2] + y[2]) % p,
            (x[3] + y[3] + x[2] * y[1]) % p,
            (x[4] + y[4] + x[5] * y[2]) % p,
            (x[5] + y[5]) % p,
        ]
    }
    fn scale(p: u64, t: &[u64], x: &[u64]) -> Vec<u64> {
        vec![
            ratio(p, t[0], t[1]) * x[0] % p,
            ratio(p, t[0], t[2]) * x[1] % p,
            ratio(p, t[1], t[0]) * x[2] % p,
            ratio(p, t[1], t[2]) * x[3] % p,
            ratio(p, t[2], t[0]) * x[4] % p,
            ratio(p, t[2], t[1]) * x[5] % p,
        ]
    }
    CoordinateGroup::build(&format!("G4({p})"), p, &["a", "b", "c", "d", "e", "f"], 3, law, scale)
}

/// p-rank of a finite abelian group table: log_p of the index of the image
/// of the p-th power map.
pub fn abelian_p_rank(table: &GroupTable, p: u64) -> Result<u32> {
    if !table.is_abelian() {
        return Err(Error::Invalid("p-rank is only defined here for abelian tables".into()));
    }
    let mut image = vec![false; table.size()];
    let mut count = 0usize;
    for x in 0..table.size() {
        let y = table.pow(x, p);
        if !image[y] {
            image[y] = true;
            count += 1;
        }
    }
    let quot = table.size() / count;
    let mut rank = 0u32;
    let mut q = quot as u64;
    while q > 1 {
        if q % p != 0 {
            return Err(Error::Inconsistent("power-map index is not a p-power".into()));
        }
        q /= p;
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Partition;

    #[test]
    fn cyclic_tables() {
        let z6 = cyclic(6).unwrap();
        assert_eq!(z6.size(), 6);
        assert_eq!(z6.identity(), 0);
        assert_eq!(z6.mul(4, 5), 3);
        assert_eq!(z6.inv(2), 4);
        assert_eq!(z6.order_of(2), 3);
        assert!(z6.is_abelian());
        assert_eq!(z6.generators(), vec![1]);
    }

    #[test]
    fn product_table() {
        let a = cyclic(3).unwrap();
        let b = cyclic(3).unwrap();
        let ab = product(&a, &b).unwrap();
        assert_eq!(ab.size(), 9);
        assert!(ab.is_abelian());
        assert_eq!(abelian_p_rank(&ab, 3).unwrap(), 2);
        assert_eq!(abelian_p_rank(&cyclic(9).unwrap(), 3).unwrap(), 1);
    }

    #[test]
    fn coordinate_group_orders_and_centers() {
        let p = 3u64;
        let c1 = g1(p).unwrap();
        let c2 = g2(p).unwrap();
        let c3 = g3(p).unwrap();
        let c4 = g4(p).unwrap();
        assert_eq!(c1.table.size(), 9);
        assert_eq!(c2.table.size(), 81);
        assert_eq!(c3.table.size(), 243);
        assert_eq!(c4.table.size(), 729);
        assert!(c1.table.is_abelian());
        assert!(!c3.table.is_abelian());
        // The a-axis is central in the third group.
        let a_axis: Vec<usize> = (0..3).map(|a| c3.encode(&[a, 0, 0, 0, 0])).collect();
        assert!(c3.table.centralizes(&a_axis));
        // The d-axis is central in the fourth group and the quotient has the
        // order of the third group.
        let d_axis: Vec<usize> = (0..3).map(|d| c4.encode(&[0, 0, 0, d, 0, 0])).collect();
        assert!(c4.table.centralizes(&d_axis));
        let q = quotient(&c4.table, &d_axis, "G4/d").unwrap();
        assert_eq!(q.table.size(), 243);
    }

    #[test]
    fn torus_acts_by_automorphisms() {
        for p in [3u64, 5] {
            let c3 = g3(p).unwrap();
            let perms = c3.torus_permutations().unwrap();
            assert_eq!(perms.len(), ((p - 1) * (p - 1) * (p - 1)) as usize);
            let closed = perm_closure(&perms, 4096).unwrap();
            assert!(closed.len() <= perms.len());
            if p == 3 {
                break;
            }
        }
    }

    #[test]
    fn commutator_subgroup_of_g4() {
        let c4 = g4(3).unwrap();
        let derived = c4.table.commutator_subgroup();
        // Exactly the (a, d, e) coordinates survive.
        assert_eq!(derived.len(), 27);
        for &i in &derived {
            let v = c4.decode(i);
            assert_eq!((v[1], v[2], v[5]), (0, 0, 0));
        }
    }

    #[test]
    fn matrix_group_and_conjugation() {
        let partition = Partition::new(&[2, 1]).unwrap();
        let group = MatrixGroup::sylow(&partition, 3, 1 << 20).unwrap();
        assert_eq!(group.table.size(), 27);
        let d = AutMatrix::teichmuller(&partition, 3, &[2, 1]).unwrap();
        let perm = group.conj_permutation(&d).unwrap();
        assert!(group.table.is_automorphism(&perm));
        let full = MatrixGroup::full(&partition, 3, 1 << 20).unwrap();
        assert_eq!(full.table.size(), 108);
        let sub = subgroup(
            &full.table,
            &(0..full.table.size())
                .filter(|&i| full.elements[i].is_unipotent_mod_p())
                .collect::<Vec<_>>(),
            "sylow",
        )
        .unwrap();
        assert_eq!(sub.table.size(), 27);
    }

    #[test]
    fn quotient_validates_normality() {
        let c3 = g3(3).unwrap();
        // The b-axis is not normal-central; expect an error or a valid
        // quotient — here the b-axis is actually normal iff closed under
        // conjugation.  The a-axis is central, so this must succeed:
        let a_axis: Vec<usize> = (0..3).map(|a| c3.encode(&[a, 0, 0, 0, 0])).collect();
        let q = quotient(&c3.table, &a_axis, "G3/a").unwrap();
        assert_eq!(q.table.size(), 81);
        // and the quotient law matches the second group's on (b, c, e, f).
        let c2 = g2(3).unwrap();
        let to_c2 = |i: usize| {
            let v = c3.decode(q.reps[i]);
            c2.encode(&[v[1], v[2], v[3], v[4]])
        };
        for i in 0..q.table.size() {
            for j in 0..q.table.size() {
                assert_eq!(to_c2(q.table.mul(i, j)), c2.table.mul(to_c2(i), to_c2(j)));
            }
        }
    }
}
