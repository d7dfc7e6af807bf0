//! Chief series of the Sylow subgroup, coset representatives, commutator
//! subgroups, abelianization, and constructive elementary-matrix
//! factorizations.

use crate::linalg::{inv_mod, p_pow};
use crate::structures::{
    enumerate_sylow, sylow_order, AutMatrix, Coord, IndexSet, Partition,
};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

// ---------------------------------------------------------------------------
// generic subgroup machinery over explicit matrix sets
// ---------------------------------------------------------------------------

/// [a, b] = a b a⁻¹ b⁻¹.
pub fn commutator(a: &AutMatrix, b: &AutMatrix) -> Result<AutMatrix> {
    Ok(a.mul(b).mul(&a.inverse()?).mul(&b.inverse()?))
}

/// Subgroup generated by `generators` (breadth-first closure; the identity is
/// always included).
pub fn closure(generators: &[AutMatrix], cap: usize) -> Result<Vec<AutMatrix>> {
    let Some(first) = generators.first() else {
        return Err(Error::Invalid("closure needs at least one generator".into()));
    };
    let id = AutMatrix::identity(first.partition(), first.p())?;
    let mut seen: HashSet<AutMatrix> = HashSet::new();
    let mut order: Vec<AutMatrix> = Vec::new();
    seen.insert(id.clone());
    order.push(id);
    let mut frontier = 0usize;
    while frontier < order.len() {
        let current = order[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = current.mul(g);
            if seen.insert(next.clone()) {
                if order.len() >= cap {
                    return Err(Error::CapExceeded {
                        predicted: order.len() as u128 + 1,
                        cap: cap as u128,
                    });
                }
                order.push(next);
            }
        }
    }
    Ok(order)
}

/// A small generating set extracted greedily from a full element list.
pub fn greedy_generators(elements: &[AutMatrix], cap: usize) -> Result<Vec<AutMatrix>> {
    let Some(first) = elements.first() else {
        return Err(Error::Invalid("empty element list".into()));
    };
    let id = AutMatrix::identity(first.partition(), first.p())?;
    let mut gens: Vec<AutMatrix> = Vec::new();
    let mut have: HashSet<AutMatrix> = HashSet::from([id]);
    for e in elements {
        if !have.contains(e) {
            gens.push(e.clone());
            have = closure(&gens, cap)?.into_iter().collect();
            if have.len() == elements.len() {
                break;
            }
        }
    }
    Ok(gens)
}

/// Derived subgroup [G, G] of a fully enumerated group: commutators of a
/// generating set, closed under multiplication and conjugation (normal
/// closure).
pub fn commutator_closure(elements: &[AutMatrix], cap: usize) -> Result<Vec<AutMatrix>> {
    let gens = greedy_generators(elements, cap)?;
    if gens.is_empty() {
        // trivial group
        return Ok(vec![AutMatrix::identity(
            elements[0].partition(),
            elements[0].p(),
        )?]);
    }
    let mut seed: Vec<AutMatrix> = Vec::new();
    let mut seen: HashSet<AutMatrix> = HashSet::new();
    for a in &gens {
        for b in &gens {
            let c = commutator(a, b)?;
            if seen.insert(c.clone()) {
                seed.push(c);
            }
        }
    }
    let gen_invs: Vec<AutMatrix> =
        gens.iter().map(|g| g.inverse()).collect::<Result<_>>()?;
    loop {
        let sub = closure(&seed, cap)?;
        let sub_set: HashSet<AutMatrix> = sub.iter().cloned().collect();
        let mut fresh = Vec::new();
        for (x, xi) in gens.iter().zip(&gen_invs) {
            for h in &sub {
                let conj = x.mul(h).mul(xi);
                if !sub_set.contains(&conj) && seen.insert(conj.clone()) {
                    fresh.push(conj);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(sub);
        }
        seed.extend(fresh);
    }
}

// ---------------------------------------------------------------------------
// quotients and abelian invariants
// ---------------------------------------------------------------------------

/// The quotient of an enumerated group by a normal subgroup, with
/// multiplication through coset representatives.
pub struct Quotient {
    reps: Vec<AutMatrix>,
    coset_of: HashMap<AutMatrix, usize>,
}

impl Quotient {
    pub fn new(group: &[AutMatrix], normal: &[AutMatrix]) -> Result<Self> {
        if group.is_empty() || normal.is_empty() || group.len() % normal.len() != 0 {
            return Err(Error::Invalid(format!(
                "subgroup of order {} cannot have index in group of order {}",
                normal.len(),
                group.len()
            )));
        }
        let mut reps = Vec::new();
        let mut coset_of = HashMap::with_capacity(group.len());
        for g in group {
            if coset_of.contains_key(g) {
                continue;
            }
            let id = reps.len();
            for d in normal {
                if coset_of.insert(g.mul(d), id).is_some() {
                    return Err(Error::Invalid(
                        "normal subgroup does not partition the group into cosets".into(),
                    ));
                }
            }
            reps.push(g.clone());
        }
        if reps.len() * normal.len() != group.len() {
            return Err(Error::Internal("coset enumeration mismatch".into()));
        }
        Ok(Self { reps, coset_of })
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, i: usize) -> &AutMatrix {
        &self.reps[i]
    }

    pub fn coset_index(&self, g: &AutMatrix) -> Option<usize> {
        self.coset_of.get(g).copied()
    }

    pub fn identity_index(&self) -> usize {
        let id = AutMatrix::identity(self.reps[0].partition(), self.reps[0].p()).expect("id");
        self.coset_of[&id]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.coset_of[&self.reps[i].mul(&self.reps[j])]
    }

    pub fn pow(&self, i: usize, mut k: u64) -> usize {
        let mut acc = self.identity_index();
        let mut base = i;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }
}

/// Invariant factors d₁ | d₂ | … of a finite abelian group presented by a
/// quotient table, recovered from solution counts of x^{q^j} = 1.
pub fn abelian_invariants(q: &Quotient) -> Result<Vec<u64>> {
    if !q.is_abelian() {
        return Err(Error::Invalid("quotient is not abelian".into()));
    }
    let order = q.order() as u64;
    if order == 1 {
        return Ok(vec![]);
    }
    // factor the order
    let mut primes = Vec::new();
    let mut rest = order;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            primes.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    let e = q.identity_index();
    // per-prime lists of prime-power orders, descending
    let mut primary: Vec<Vec<u64>> = Vec::new();
    for &prime in &primes {
        // counts[j] = #{x : x^{prime^j} = 1}
        let mut logs = vec![0u32];
        let mut j = 1u32;
        loop {
            let pj = prime.pow(j);
            let count = (0..q.order()).filter(|&i| q.pow(i, pj) == e).count() as u64;
            let mut log = 0u32;
            let mut c = count;
            while c > 1 {
                if c % prime != 0 {
                    return Err(Error::Internal("solution count is not a prime power".into()));
                }
                c /= prime;
                log += 1;
            }
            logs.push(log);
            if prime.pow(log) == count && logs[j as usize] == logs[j as usize - 1] {
                break;
            }
            j += 1;
        }
        // m_j = #cyclic factors with exponent ≥ j
        let mut powers: Vec<u64> = Vec::new();
        for j in 1..logs.len() {
            let m_j = logs[j] - logs[j - 1];
            // factors with exponent exactly ≥ j get upgraded
            for slot in 0..m_j as usize {
                if powers.len() <= slot {
                    powers.push(1);
                }
                powers[slot] *= prime;
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        primary.push(powers);
    }
    // zip largest-with-largest into invariant factors, then ascending
    let slots = primary.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for s in 0..slots {
        let mut f = 1u64;
        for v in &primary {
            if s < v.len() {
                f *= v[s];
            }
        }
        factors.push(f);
    }
    factors.reverse();
    Ok(factors)
}

/// Number of invariant factors divisible by p (the p-rank of the group).
pub fn p_rank(invariants: &[u64], p: u64) -> u32 {
    invariants.iter().filter(|&&d| d % p == 0).count() as u32
}

// ---------------------------------------------------------------------------
// chief series
// ---------------------------------------------------------------------------

/// Which total order indexes the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOrder {
    /// The base order on coordinates.
    Base,
    /// The modified order: everything outside T below everything in T.
    Modified,
}

/// An ascending chain 1 = N₀ < N₁ < … < N_r = P with each index p, realized
/// as explicit element sets with one step generator per level.
pub struct ChiefSeries {
    pub partition: Partition,
    pub p: u64,
    pub order: SeriesOrder,
    /// Coordinates in ascending chosen order; level i is cut out by the
    /// vanishing of all digits above coords[i-1].
    pub coords: Vec<Coord>,
    /// E_{Pos(s)}(p^l), one per coordinate; generates level i over level i−1.
    pub generators: Vec<AutMatrix>,
    /// subgroups[i] has order p^i; subgroups[0] = {1}, last = whole Sylow.
    pub subgroups: Vec<Vec<AutMatrix>>,
    index: IndexSet,
}

impl ChiefSeries {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// For the modified order, the level that the structure theory pins as
    /// the derived subgroup: the level of max(S∖T), i.e. |S∖T|.
    pub fn derived_level(&self) -> Option<usize> {
        match self.order {
            SeriesOrder::Modified => Some(self.index.s_minus_t().len()),
            SeriesOrder::Base => None,
        }
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    /// Full verification: sizes, generator placement, and the central-step
    /// property [P, N_{i+1}] ⊆ N_i (which also gives normality).
    pub fn verify(&self) -> Result<()> {
        let r = self.coords.len();
        let whole = &self.subgroups[r];
        for (i, sub) in self.subgroups.iter().enumerate() {
            let expect = (self.p as u128).pow(i as u32);
            if sub.len() as u128 != expect {
                return Err(Error::Inconsistent(format!(
                    "level {i} has order {}, expected {expect}",
                    sub.len()
                )));
            }
        }
        for i in 0..r {
            let below: HashSet<&AutMatrix> = self.subgroups[i].iter().collect();
            let gen = &self.generators[i];
            if below.contains(gen) {
                return Err(Error::Inconsistent(format!(
                    "generator of level {} already lies in level {}",
                    i + 1,
                    i
                )));
            }
            if !self.subgroups[i + 1].contains(gen) {
                return Err(Error::Inconsistent(format!(
                    "generator of level {} is not a member of that level",
                    i + 1
                )));
            }
        }
        // central steps, exhaustively
        let mut inverses: HashMap<&AutMatrix, AutMatrix> = HashMap::new();
        for g in whole {
            inverses.insert(g, g.inverse()?);
        }
        for i in 0..r {
            let lower: HashSet<&AutMatrix> = self.subgroups[i].iter().collect();
            for g in whole {
                let gi = &inverses[g];
                for h in &self.subgroups[i + 1] {
                    let hi = &inverses[h];
                    let comm = g.mul(h).mul(gi).mul(hi);
                    if !lower.contains(&comm) {
                        return Err(Error::Inconsistent(format!(
                            "step {} is not central: a commutator escapes level {i}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build the chief series of the Sylow subgroup under the chosen order.
pub fn chief_series(
    partition: &Partition,
    p: u64,
    order: SeriesOrder,
    cap: u128,
) -> Result<ChiefSeries> {
    let index = IndexSet::new(partition);
    let coords: Vec<Coord> = match order {
        SeriesOrder::Base => index.coords().to_vec(),
        SeriesOrder::Modified => index.mto_coords(),
    };
    let elements = enumerate_sylow(partition, p, cap)?;
    debug_assert_eq!(elements.len() as u128, sylow_order(partition, p));
    let mut subgroups = Vec::with_capacity(coords.len() + 1);
    for level in 0..=coords.len() {
        let above = &coords[level..];
        let members: Vec<AutMatrix> = elements
            .iter()
            .filter(|g| above.iter().all(|c| g.digit(c) == 0))
            .cloned()
            .collect();
        subgroups.push(members);
    }
    let generators: Vec<AutMatrix> = coords
        .iter()
        .map(|c| index.coset_rep(p, c, 1))
        .collect::<Result<_>>()?;
    Ok(ChiefSeries {
        partition: partition.clone(),
        p,
        order,
        coords,
        generators,
        subgroups,
        index,
    })
}

/// Representatives C_{t1}^{t2} for the cosets of the level of t1 inside the
/// level of t2 (base order); `t1 = None` means the empty coordinate (trivial
/// subgroup).
pub fn coset_reps(
    index: &IndexSet,
    p: u64,
    t1: Option<&Coord>,
    t2: &Coord,
) -> Result<Vec<AutMatrix>> {
    let coords = index.coords();
    let pos1 = match t1 {
        None => 0,
        Some(c) => {
            coords
                .iter()
                .position(|x| x == c)
                .ok_or_else(|| Error::Invalid(format!("{c} is not a free coordinate")))?
                + 1
        }
    };
    let pos2 = coords
        .iter()
        .position(|x| x == t2)
        .ok_or_else(|| Error::Invalid(format!("{t2} is not a free coordinate")))?
        + 1;
    if pos1 >= pos2 {
        return Err(Error::Invalid("first coordinate must precede the second".into()));
    }
    // free digits exactly at coords[pos1..pos2]
    let free = &coords[pos1..pos2];
    let partition = index.partition();
    let n = partition.rank();
    let mut digits = vec![0u64; free.len()];
    let mut out = Vec::new();
    loop {
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            entries[r * n + r] = 1;
        }
        for (coord, &a) in free.iter().zip(&digits) {
            let (x, y) = coord.pos(partition);
            let modulus = p_pow(p, partition.exponent(x - 1));
            let slot = &mut entries[(x - 1) * n + (y - 1)];
            *slot = (*slot + a * p_pow(p, coord.l)) % modulus;
        }
        out.push(AutMatrix::from_entries(partition, p, entries)?);
        let mut pos = 0usize;
        loop {
            if pos == digits.len() {
                return Ok(out);
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// elementary factorization over a single modulus
// ---------------------------------------------------------------------------

/// One factor E_{(x,y)}(value), 1-based positions, x ≠ y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementaryFactor {
    pub x: usize,
    pub y: usize,
    pub value: u64,
}

fn uniform_modulus(g: &AutMatrix) -> Result<u64> {
    let partition = g.partition();
    if partition.k() != 1 {
        return Err(Error::Invalid(
            "elementary factorization needs a single-exponent partition".into(),
        ));
    }
    Ok(p_pow(g.p(), partition.max_exponent()))
}

/// Determinant over the uniform modulus by permutation expansion (ranks here
/// are small).
pub fn det_mod(g: &AutMatrix) -> Result<u64> {
    let m = uniform_modulus(g)?;
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det: i128 = 0;
    // Heap's algorithm with parity tracking
    fn heaps(
        k: usize,
        perm: &mut Vec<usize>,
        sign: &mut i128,
        acc: &mut i128,
        g: &AutMatrix,
        m: u64,
    ) {
        if k == 1 {
            let mut prod: i128 = *sign;
            for (r, &c) in perm.iter().enumerate() {
                prod = prod * g.at(r, c) as i128 % m as i128;
            }
            *acc = (*acc + prod).rem_euclid(m as i128);
            return;
        }
        for i in 0..k {
            heaps(k - 1, perm, sign, acc, g, m);
            if i < k - 1 {
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut sign: i128 = 1;
    heaps(n, &mut perm, &mut sign, &mut det, g, m);
    Ok(det.rem_euclid(m as i128) as u64)
}

/// Factor a determinant-one matrix over Z/p^k into elementary matrices
/// E_{(x,y)}(α); the returned product equals the input exactly.
pub fn sl_factorize(g: &AutMatrix) -> Result<Vec<ElementaryFactor>> {
    let m = uniform_modulus(g)?;
    let p = g.p();
    let n = g.n();
    if det_mod(g)? != 1 {
        return Err(Error::Invalid("matrix determinant is not 1".into()));
    }
    let mut work: Vec<u64> = (0..n * n).map(|k| g.at(k / n, k % n)).collect();
    let at = |w: &Vec<u64>, r: usize, c: usize| w[r * n + c];
    let row_add = |w: &mut Vec<u64>, dst: usize, src: usize, f: u64| {
        for c in 0..n {
            w[dst * n + c] =
                ((w[dst * n + c] as u128 + f as u128 * w[src * n + c] as u128) % m as u128) as u64;
        }
    };
    let col_add = |w: &mut Vec<u64>, dst: usize, src: usize, f: u64| {
        for r in 0..n {
            w[r * n + dst] =
                ((w[r * n + dst] as u128 + f as u128 * w[r * n + src] as u128) % m as u128) as u64;
        }
    };
    // L · g · R = D with L, R products of elementary matrices
    let mut left: Vec<ElementaryFactor> = Vec::new(); // applied left, in order
    let mut right: Vec<ElementaryFactor> = Vec::new(); // applied right, in order
    for c in 0..n {
        if at(&work, c, c) % p == 0 {
            let r = (c + 1..n)
                .find(|&r| at(&work, r, c) % p != 0)
                .ok_or_else(|| Error::Internal("no unit pivot available".into()))?;
            // row c += row r
            row_add(&mut work, c, r, 1);
            left.push(ElementaryFactor { x: c + 1, y: r + 1, value: 1 });
        }
        let pivot_inv = inv_mod(at(&work, c, c), m).expect("unit pivot");
        for r in c + 1..n {
            let v = at(&work, r, c);
            if v != 0 {
                let f = (m - (v as u128 * pivot_inv as u128 % m as u128) as u64) % m;
                row_add(&mut work, r, c, f);
                left.push(ElementaryFactor { x: r + 1, y: c + 1, value: f });
            }
        }
        for cc in c + 1..n {
            let v = at(&work, c, cc);
            if v != 0 {
                let f = (m - (v as u128 * pivot_inv as u128 % m as u128) as u64) % m;
                col_add(&mut work, cc, c, f);
                right.push(ElementaryFactor { x: c + 1, y: cc + 1, value: f });
            }
        }
    }
    // work is now Diag(d_0, …, d_{n−1}) with product 1; peel with the
    // four-factor gadget Diag(a, a⁻¹) = E₂₁(1−a⁻¹)·E₁₂(−1)·E₂₁(1−a)·E₁₂(a⁻¹)
    // in rows (i, i+1): Diag(d_i, d_{i+1}) = Diag(d_i, d_i⁻¹)·Diag(1, d_i·d_{i+1}).
    let mut diag: Vec<u64> = (0..n).map(|i| at(&work, i, i)).collect();
    let mut middle: Vec<ElementaryFactor> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let a = diag[i];
        if a == 1 {
            continue;
        }
        let a_inv = inv_mod(a, m).ok_or_else(|| Error::Internal("diagonal not a unit".into()))?;
        let (x, y) = (i + 1, i + 2);
        middle.push(ElementaryFactor { x: y, y: x, value: (1 + m - a_inv) % m });
        middle.push(ElementaryFactor { x, y, value: m - 1 });
        middle.push(ElementaryFactor { x: y, y: x, value: (1 + m - a) % m });
        middle.push(ElementaryFactor { x, y, value: a_inv });
        diag[i + 1] = (diag[i + 1] as u128 * a as u128 % m as u128) as u64;
        diag[i] = 1;
    }
    if diag.iter().any(|&d| d != 1) {
        return Err(Error::Internal("diagonal did not clear to the identity".into()));
    }
    // g = L₁⁻¹ … L_t⁻¹ · (middle) · R_u⁻¹ … R₁⁻¹
    let neg = |f: &ElementaryFactor| ElementaryFactor { x: f.x, y: f.y, value: (m - f.value) % m };
    let mut factors: Vec<ElementaryFactor> = left.iter().map(neg).collect();
    factors.extend(middle);
    factors.extend(right.iter().rev().map(neg));
    factors.retain(|f| f.value != 0);
    // verify exactly
    let rebuilt = assemble_factors(g.partition(), p, &factors)?;
    if &rebuilt != g {
        return Err(Error::Internal("factorization does not re-multiply to the input".into()));
    }
    Ok(factors)
}

/// Multiply a factor list back into a matrix.
pub fn assemble_factors(
    partition: &Partition,
    p: u64,
    factors: &[ElementaryFactor],
) -> Result<AutMatrix> {
    let mut acc = AutMatrix::identity(partition, p)?;
    for f in factors {
        acc = acc.mul(&AutMatrix::elementary(partition, p, f.x, f.y, f.value)?);
    }
    Ok(acc)
}

/// Split g (det ≡ 1 mod p, uniform modulus p^k) as g = g′ + p·h with
/// det(g′) = 1 exactly; h is returned entrywise with values below p^{k−1}.
pub fn strong_approx_decompose(g: &AutMatrix) -> Result<(AutMatrix, Vec<u64>)> {
    let m = uniform_modulus(g)?;
    let p = g.p();
    if p == 2 {
        return Err(Error::Invalid("decomposition requires an odd prime".into()));
    }
    let d = det_mod(g)?;
    if d % p != 1 {
        return Err(Error::Invalid(format!("determinant {d} is not 1 mod {p}")));
    }
    let n = g.n();
    let u = inv_mod(d, m).expect("unit determinant");
    // scale the last column by det(g)⁻¹ ≡ 1 mod p
    let scale = AutMatrix::elementary(g.partition(), p, n, n, (u + m - 1) % m)?;
    let g_prime = g.mul(&scale);
    debug_assert_eq!(det_mod(&g_prime)?, 1);
    let mut h = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let diff = (g.at(r, c) + m - g_prime.at(r, c)) % m;
            if diff % p != 0 {
                return Err(Error::Internal("difference is not divisible by p".into()));
            }
            h.push(diff / p);
        }
    }
    Ok((g_prime, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{enumerate_group, random_aut};
    use rand::SeedableRng;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn chief_series_21_both_orders() {
        let lam = part(&[2, 1]);
        for order in [SeriesOrder::Base, SeriesOrder::Modified] {
            let series = chief_series(&lam, 3, order, 1 << 20).unwrap();
            assert_eq!(series.len(), 3);
            let sizes: Vec<usize> = series.subgroups.iter().map(|s| s.len()).collect();
            assert_eq!(sizes, vec![1, 3, 9, 27]);
            series.verify().unwrap();
        }
        // modified order: level |S∖T| = 1 is the derived subgroup
        let series = chief_series(&lam, 3, SeriesOrder::Modified, 1 << 20).unwrap();
        assert_eq!(series.derived_level(), Some(1));
        let sylow = enumerate_sylow(&lam, 3, 1 << 20).unwrap();
        let derived = commutator_closure(&sylow, 1 << 20).unwrap();
        assert_eq!(derived.len(), 3);
        let expected: std::collections::HashSet<_> =
            series.subgroups[1].iter().cloned().collect();
        assert!(derived.iter().all(|g| expected.contains(g)));
        // and the derived subgroup is exactly the vanishing locus of T digits
        let index = IndexSet::new(&lam);
        for g in &sylow {
            let in_derived = derived.contains(g);
            let t_zero = index.t_set().iter().all(|t| g.digit(t) == 0);
            assert_eq!(in_derived, t_zero);
        }
    }

    #[test]
    fn chief_series_single_step() {
        // λ = (1,1), p = 5: the Sylow subgroup is Z/5
        let lam = part(&[1, 1]);
        let series = chief_series(&lam, 5, SeriesOrder::Base, 1 << 20).unwrap();
        assert_eq!(series.len(), 1);
        assert_eq!(series.subgroups[1].len(), 5);
        series.verify().unwrap();
    }

    #[test]
    fn coset_representatives() {
        let lam = part(&[2, 1]);
        let index = IndexSet::new(&lam);
        let coords = index.coords().to_vec();
        // t1 = ∅, t2 = max: the whole 27-element group
        let reps = coset_reps(&index, 3, None, &coords[2]).unwrap();
        assert_eq!(reps.len(), 27);
        // skip two levels: 9 representatives, pairwise distinct left & right
        let reps = coset_reps(&index, 3, Some(&coords[0]), &coords[2]).unwrap();
        assert_eq!(reps.len(), 9);
        let series = chief_series(&lam, 3, SeriesOrder::Base, 1 << 20).unwrap();
        let level1: std::collections::HashSet<_> =
            series.subgroups[1].iter().cloned().collect();
        for (a, x) in reps.iter().enumerate() {
            for y in reps.iter().skip(a + 1) {
                let left = x.inverse().unwrap().mul(y);
                let right = y.mul(&x.inverse().unwrap());
                assert!(!level1.contains(&left), "left cosets must differ");
                assert!(!level1.contains(&right), "right cosets must differ");
            }
        }
        // order mismatch is an error
        assert!(coset_reps(&index, 3, Some(&coords[2]), &coords[0]).is_err());
    }

    #[test]
    fn commutator_subgroups_of_small_linear_groups() {
        // GL₂(Z/2) has derived subgroup of order 3
        let lam = part(&[1, 1]);
        let gl2_f2 = enumerate_group(&lam, 2, 1 << 20).unwrap();
        assert_eq!(gl2_f2.len(), 6);
        assert_eq!(commutator_closure(&gl2_f2, 1 << 20).unwrap().len(), 3);

        // GL₂(Z/3) has derived subgroup SL₂(Z/3) of order 24
        let gl2_f3 = enumerate_group(&lam, 3, 1 << 20).unwrap();
        assert_eq!(gl2_f3.len(), 48);
        let derived = commutator_closure(&gl2_f3, 1 << 20).unwrap();
        assert_eq!(derived.len(), 24);
        assert!(derived.iter().all(|g| det_mod(g).unwrap() == 1));

        // GL₂(Z/4): derived subgroup strictly inside SL₂(Z/4)
        let lam2 = part(&[2, 2]);
        let gl2_z4 = enumerate_group(&lam2, 2, 1 << 20).unwrap();
        assert_eq!(gl2_z4.len(), 96);
        let derived = commutator_closure(&gl2_z4, 1 << 20).unwrap();
        let sl_order = gl2_z4.iter().filter(|g| det_mod(g).unwrap() == 1).count();
        assert_eq!((derived.len(), sl_order), (24, 48));
    }

    #[test]
    fn abelianizations() {
        // Sylow of λ=(2,1,1) at p=3 has abelianization (Z/3)³
        let lam = part(&[2, 1, 1]);
        let sylow = enumerate_sylow(&lam, 3, 1 << 20).unwrap();
        assert_eq!(sylow.len(), 729);
        let derived = commutator_closure(&sylow, 1 << 20).unwrap();
        let q = Quotient::new(&sylow, &derived).unwrap();
        assert_eq!(abelian_invariants(&q).unwrap(), vec![3, 3, 3]);

        // full automorphism group for λ=(2,1), p=3: abelianization of order
        // 4 with trivial 3-part
        let lam21 = part(&[2, 1]);
        let group = enumerate_group(&lam21, 3, 1 << 20).unwrap();
        let derived = commutator_closure(&group, 1 << 20).unwrap();
        let q = Quotient::new(&group, &derived).unwrap();
        let inv = abelian_invariants(&q).unwrap();
        assert_eq!(inv.iter().product::<u64>(), 4);
        assert_eq!(p_rank(&inv, 3), 0);

        // GL₂(Z/4): abelianization order divisible by 2
        let gl2_z4 = enumerate_group(&part(&[2, 2]), 2, 1 << 20).unwrap();
        let derived = commutator_closure(&gl2_z4, 1 << 20).unwrap();
        let q = Quotient::new(&gl2_z4, &derived).unwrap();
        let inv = abelian_invariants(&q).unwrap();
        assert_eq!(inv.iter().product::<u64>() % 2, 0);
    }

    #[test]
    fn factorization_round_trips() {
        let lam = part(&[2, 2]);
        // identity → empty list
        let id = AutMatrix::identity(&lam, 3).unwrap();
        assert!(sl_factorize(&id).unwrap().is_empty());
        // E₁₂(5) over Z/9 → itself
        let e = AutMatrix::elementary(&lam, 3, 1, 2, 5).unwrap();
        let f = sl_factorize(&e).unwrap();
        assert_eq!(f, vec![ElementaryFactor { x: 1, y: 2, value: 5 }]);
        // Diag(2,5) over Z/9 (det 10 ≡ 1)
        let d = AutMatrix::from_entries(&lam, 3, vec![2, 0, 0, 5]).unwrap();
        let f = sl_factorize(&d).unwrap();
        assert_eq!(assemble_factors(&lam, 3, &f).unwrap(), d);
        assert!(f.iter().all(|t| t.x != t.y));
        // random SL₂(Z/9) and SL₃(Z/27) elements
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = loop {
                let cand = random_aut(&lam, 3, &mut rng);
                if det_mod(&cand).unwrap() == 1 {
                    break cand;
                }
            };
            let f = sl_factorize(&g).unwrap();
            assert_eq!(assemble_factors(&lam, 3, &f).unwrap(), g);
        }
        let lam3 = part(&[3, 3, 3]);
        for _ in 0..10 {
            let g = loop {
                let cand = random_aut(&lam3, 3, &mut rng);
                if det_mod(&cand).unwrap() == 1 {
                    break cand;
                }
            };
            let f = sl_factorize(&g).unwrap();
            assert_eq!(assemble_factors(&lam3, 3, &f).unwrap(), g);
        }
        // non-unit determinant is rejected
        let bad = AutMatrix::from_entries(&lam, 3, vec![2, 0, 0, 1]).unwrap();
        assert!(sl_factorize(&bad).is_err());
    }

    #[test]
    fn strong_approx() {
        // n = 1: g = (4) over Z/9 → g′ = (1), h = (1)
        let lam1 = part(&[2]);
        let g = AutMatrix::from_entries(&lam1, 3, vec![4]).unwrap();
        let (gp, h) = strong_approx_decompose(&g).unwrap();
        assert_eq!(gp.at(0, 0), 1);
        assert_eq!(h, vec![1]);
        // det exactly 1 → h = 0
        let lam = part(&[2, 2]);
        let d = AutMatrix::from_entries(&lam, 3, vec![2, 0, 0, 5]).unwrap();
        let (gp, h) = strong_approx_decompose(&d).unwrap();
        assert_eq!(gp, d);
        assert!(h.iter().all(|&x| x == 0));
        // random elements of the congruence kernel of GL₂(Z/9)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut count = 0;
        while count < 100 {
            let g = random_aut(&lam, 3, &mut rng);
            if det_mod(&g).unwrap() % 3 != 1 {
                continue;
            }
            count += 1;
            let (gp, h) = strong_approx_decompose(&g).unwrap();
            assert_eq!(det_mod(&gp).unwrap(), 1);
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!((gp.at(r, c) + 3 * h[r * 2 + c]) % 9, g.at(r, c));
                }
            }
        }
    }

    #[test]
    fn modified_series_central_for_211() {
        // the larger instance used downstream: λ=(2,1,1), p=3, |P| = 729
        let lam = part(&[2, 1, 1]);
        let series = chief_series(&lam, 3, SeriesOrder::Modified, 1 << 20).unwrap();
        assert_eq!(series.len(), 6);
        assert_eq!(series.derived_level(), Some(3));
        series.verify().unwrap();
        // derived level matches the commutator subgroup as a set
        let sylow = enumerate_sylow(&lam, 3, 1 << 20).unwrap();
        let derived: std::collections::HashSet<_> =
            commutator_closure(&sylow, 1 << 20).unwrap().into_iter().collect();
        let level: std::collections::HashSet<_> =
            series.subgroups[3].iter().cloned().collect();
        assert_eq!(derived, level);
    }
}
