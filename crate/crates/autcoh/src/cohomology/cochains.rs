//! Explicit cochains.
//!
//! * digit 1-cochains `w_s` on a Sylow matrix group (read one p-adic digit
//!   of one entry), their coboundary tables `v_s`, and product 2-cocycles
//!   built from two digit homomorphisms;
//! * the decomposition identity expressing the sum of diagonal coboundaries
//!   `v` through digit pairings — the computational heart of the inflation
//!   argument for the distinguished abelianized slots;
//! * the carry cocycle on `Z/p^r` (the extension to `Z/p^{r+1}`), its
//!   pullbacks under multiplication automorphisms, and the cyclic class sum
//!   that certifies (non)triviality of any class on a cyclic subgroup;
//! * pairing tables `(g, h) ↦ Σ x_i(g)·y_j(h)` on coordinate groups — the
//!   distinguished invariant classes of the named groups.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::group::{cyclic, CoordinateGroup, GroupTable, MatrixGroup};
use crate::linalg::p_pow;
use crate::structures::{random_sylow, AutMatrix, Coord, IndexSet, Partition};
use crate::{Error, Result};

/// The digit values `w_s(g)` over all elements of a matrix group.
pub fn digit_values(group: &MatrixGroup, coord: &Coord) -> Vec<u64> {
    group.elements.iter().map(|m| m.digit(coord)).collect()
}

/// The coboundary table `v_s(g, h) = w_s(gh) − w_s(g) − w_s(h)` mod p.
///
/// With this sign convention the diagonal-digit identities come out with
/// positive pairings on the right-hand side.
pub fn digit_coboundary_table(group: &MatrixGroup, p: u64, coord: &Coord) -> Vec<u8> {
    let n = group.table.size();
    let w = digit_values(group, coord);
    let mut out = vec![0u8; n * n];
    for g in 0..n {
        for h in 0..n {
            let gh = group.table.mul(g, h);
            out[g * n + h] = ((w[gh] + 2 * p - w[g] % p - w[h] % p) % p) as u8;
        }
    }
    out
}

/// The product table `u(g, h) = w_left(g) · w_right(h)` mod p.  A 2-cocycle
/// whenever both digits are homomorphisms into `F_p`.
pub fn product_table(group: &MatrixGroup, p: u64, left: &Coord, right: &Coord) -> Vec<u8> {
    let n = group.table.size();
    let wl = digit_values(group, left);
    let wr = digit_values(group, right);
    let mut out = vec![0u8; n * n];
    for g in 0..n {
        for h in 0..n {
            out[g * n + h] = ((wl[g] % p) * (wr[h] % p) % p) as u8;
        }
    }
    out
}

/// The transposed-slot partner `(0, j, i, n, m)` of a coordinate — the digit
/// that pairs with `s` in the decomposition identity.
pub fn partner(s: &Coord) -> Coord {
    Coord { l: 0, i: s.j, j: s.i, m: s.n, n: s.m }
}

/// How to sweep over element pairs in identities on large Sylow groups.
#[derive(Debug, Clone, Copy)]
pub enum SampleMode {
    /// Every pair of the fully enumerated group.
    Exhaustive,
    /// Deterministically seeded random pairs; the group is never enumerated.
    Sampled { pairs: usize, seed: u64 },
}

/// Outcome of [`inflation_decomposition_check`].
#[derive(Debug, Clone)]
pub struct InflationReport {
    /// The distinguished abelianized slots the identity was checked for.
    pub t1: Vec<Coord>,
    /// Element pairs swept (0 when `t1` is empty and the claim is vacuous).
    pub pairs_checked: u64,
}

/// Verify, for every distinguished slot `t₀ = (1,1,1,x,x+1)` of the
/// partition, the decomposition identity
///
/// ```text
///   Σ_{m ≤ x} v_{(1,1,1,m,m)}(g, h)
///     = Σ_{m < x} [ w_{(1,1,1,m,m+1)}(g)·w_{(0,1,1,m+1,m)}(h)
///                 + w_{(0,1,1,m+1,m)}(g)·w_{(1,1,1,m,m+1)}(h) ]
///       + w_{t₀}(g)·w_{φ(t₀)}(h)                      (mod p)
/// ```
///
/// on the Sylow subgroup — the left side is a sum of coboundaries, so the
/// product cocycle `u_{t₀}` is cohomologically trivial on the Sylow group
/// even though it inflates from a generator slot of the abelianization.
///
/// Returns a vacuous report when the partition has no distinguished slots.
pub fn inflation_decomposition_check(
    partition: &Partition,
    p: u64,
    mode: SampleMode,
) -> Result<InflationReport> {
    let index = IndexSet::new(partition);
    let t1 = index.t1().to_vec();
    if t1.is_empty() {
        return Ok(InflationReport { t1, pairs_checked: 0 });
    }
    for t0 in &t1 {
        for m in 1..=t0.m as usize {
            if partition.rho(m) != 1 {
                return Err(Error::Invalid(format!(
                    "decomposition identity needs 1×1 blocks up to position {}, got ρ_{m} > 1",
                    t0.m
                )));
            }
        }
    }

    let check_pair = |g: &AutMatrix, h: &AutMatrix| -> Result<()> {
        let gh = g.mul(h);
        for t0 in &t1 {
            let x = t0.m;
            let mut lhs = 0u64;
            for m in 1..=x {
                let s = Coord { l: 1, i: 1, j: 1, m, n: m };
                lhs = (lhs + gh.digit(&s) + 2 * p - g.digit(&s) - h.digit(&s)) % p;
            }
            let mut rhs = 0u64;
            for m in 1..x {
                let s = Coord { l: 1, i: 1, j: 1, m, n: m + 1 };
                let sp = partner(&s);
                rhs = (rhs + g.digit(&s) * h.digit(&sp) + g.digit(&sp) * h.digit(&s)) % p;
            }
            let phi = index.phi(t0).expect("slots come from T₁");
            rhs = (rhs + g.digit(t0) * h.digit(&phi)) % p;
            if lhs != rhs {
                return Err(Error::Inconsistent(format!(
                    "decomposition identity fails at slot {t0}: {lhs} ≠ {rhs}"
                )));
            }
        }
        Ok(())
    };

    let pairs_checked;
    match mode {
        SampleMode::Exhaustive => {
            let elements = crate::structures::enumerate_sylow(partition, p, 1 << 14)?;
            for g in &elements {
                for h in &elements {
                    check_pair(g, h)?;
                }
            }
            pairs_checked = (elements.len() * elements.len()) as u64;
        }
        SampleMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..pairs {
                let g = random_sylow(partition, p, &mut rng);
                let h = random_sylow(partition, p, &mut rng);
                check_pair(&g, &h)?;
            }
            pairs_checked = pairs as u64;
        }
    }
    Ok(InflationReport { t1, pairs_checked })
}

/// The cyclic group `Z/p^r` together with the carry table
/// `c(a, b) = ⌊(a + b)/p^r⌋` — the 2-cocycle of the extension `Z/p^{r+1}`,
/// with values in `F_p`.
pub fn carry_cocycle(p: u64, r: u32) -> Result<(GroupTable, Vec<u8>)> {
    let n = p_pow(p, r);
    let table = cyclic(n)?;
    let n = n as usize;
    let mut c = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            c[a * n + b] = u8::from(a + b >= n);
        }
    }
    Ok((table, c))
}

/// The pullback `c(σa, σb)` of the carry table under the automorphism
/// `a ↦ s·a` of `Z/p^r`.  Cohomologous to `s` times the carry class.
pub fn carry_pullback(p: u64, r: u32, s: u64) -> Result<Vec<u8>> {
    let n = p_pow(p, r);
    if s % p == 0 {
        return Err(Error::Invalid("scaling by a non-unit is not an automorphism".into()));
    }
    let (_, c) = carry_cocycle(p, r)?;
    let s = (s % n) as usize;
    let n = n as usize;
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        let sa = (s * a) % n;
        for b in 0..n {
            let sb = (s * b) % n;
            out[a * n + b] = c[sa * n + sb];
        }
    }
    Ok(out)
}

/// Entrywise multiple `k·c` of a table mod p.
pub fn multiple_table(table: &[u8], k: u64, p: u64) -> Vec<u8> {
    table.iter().map(|&v| ((v as u64 * k) % p) as u8).collect()
}

/// Entrywise difference `c − d` mod p.
pub fn difference_table(c: &[u8], d: &[u8], p: u64) -> Vec<u8> {
    c.iter().zip(d).map(|(&a, &b)| ((a as u64 + p - b as u64) % p) as u8).collect()
}

/// `Σ_j c(σ^j, σ)` over the cyclic subgroup generated by `sigma`, mod p.
///
/// For a 2-cocycle restricted to `⟨σ⟩` this sum is invariant under
/// coboundaries, and it vanishes exactly when the restricted class is
/// trivial — a one-number certificate of nonvanishing.
pub fn cyclic_class_sum(g: &GroupTable, p: u64, table: &[u8], sigma: usize) -> u64 {
    let n = g.size();
    debug_assert_eq!(table.len(), n * n);
    let id = g.identity();
    let mut sum = 0u64;
    let mut x = id;
    loop {
        sum = (sum + table[x * n + sigma] as u64) % p;
        x = g.mul(x, sigma);
        if x == id {
            break;
        }
    }
    sum
}

/// The table `(g, h) ↦ Σ_{(i,j)} x_i(g)·x_j(h)` mod p on a coordinate group
/// — the explicit representatives of the distinguished invariant classes.
pub fn pairing_table(cg: &CoordinateGroup, pairs: &[(usize, usize)]) -> Result<Vec<u8>> {
    let n = cg.table.size();
    let p = cg.p();
    for &(i, j) in pairs {
        if i >= cg.arity() || j >= cg.arity() {
            return Err(Error::Invalid("pairing index out of range".into()));
        }
    }
    let decoded: Vec<Vec<u64>> = (0..n).map(|x| cg.decode(x)).collect();
    let mut out = vec![0u8; n * n];
    for g in 0..n {
        for h in 0..n {
            let mut acc = 0u64;
            for &(i, j) in pairs {
                acc = (acc + decoded[g][i] * decoded[h][j]) % p;
            }
            out[g * n + h] = acc as u8;
        }
    }
    Ok(out)
}

/// The distinguished invariant class `b ⊗ c` of the first coordinate group.
pub fn g1_invariant_table(cg: &CoordinateGroup) -> Result<Vec<u8>> {
    pairing_table(cg, &[(0, 1)])
}

/// The distinguished invariant class `a ⊗ c + b ⊗ e` of the third
/// coordinate group (tuple order `(a, b, c, e, f)`).
pub fn g3_invariant_table(cg: &CoordinateGroup) -> Result<Vec<u8>> {
    pairing_table(cg, &[(0, 2), (1, 3)])
}

/// The two distinguished invariant classes `c ⊗ a + d ⊗ f` and
/// `a ⊗ c + b ⊗ e` of the fourth coordinate group (tuple order
/// `(a, b, c, d, e, f)`).
pub fn g4_invariant_tables(cg: &CoordinateGroup) -> Result<[Vec<u8>; 2]> {
    Ok([pairing_table(cg, &[(2, 0), (3, 5)])?, pairing_table(cg, &[(0, 2), (1, 4)])?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::brute::{is_coboundary, verify_cocycle};
    use crate::cohomology::group::g1;
    use crate::structures::enumerate_diagonal;

    #[test]
    fn digit_coboundaries_are_coboundaries() {
        let partition = Partition::new(&[2, 1]).unwrap();
        let group = MatrixGroup::sylow(&partition, 3, 1 << 14).unwrap();
        let index = IndexSet::new(&partition);
        for s in index.coords() {
            let v = digit_coboundary_table(&group, 3, s);
            verify_cocycle(&group.table, 3, &v).unwrap();
            assert!(is_coboundary(&group.table, 3, &v).unwrap().is_some(), "v_{s} not trivial");
        }
    }

    #[test]
    fn product_cocycle_on_sylow_21_is_invariant_coboundary() {
        let partition = Partition::new(&[2, 1]).unwrap();
        let group = MatrixGroup::sylow(&partition, 3, 1 << 14).unwrap();
        let index = IndexSet::new(&partition);
        let t1 = index.t1();
        assert_eq!(t1.len(), 1);
        let t0 = t1[0];
        assert_eq!((t0.m, t0.n), (1, 2));
        let phi = index.phi(&t0).unwrap();
        assert_eq!((phi.l, phi.m, phi.n), (0, 2, 1));
        let u = product_table(&group, 3, &t0, &phi);
        verify_cocycle(&group.table, 3, &u).unwrap();
        assert!(is_coboundary(&group.table, 3, &u).unwrap().is_some());
        // invariance under every diagonal conjugation
        let n = group.table.size();
        for d in enumerate_diagonal(&partition, 3).unwrap() {
            let perm = group.conj_permutation(&d).unwrap();
            for g in 0..n {
                for h in 0..n {
                    assert_eq!(u[g * n + h], u[perm[g] * n + perm[h]]);
                }
            }
        }
    }

    #[test]
    fn decomposition_identity_small_partitions() {
        let p21 = Partition::new(&[2, 1]).unwrap();
        let rep = inflation_decomposition_check(&p21, 3, SampleMode::Exhaustive).unwrap();
        assert_eq!(rep.t1.len(), 1);
        assert_eq!(rep.pairs_checked, 27 * 27);

        // elementary abelian shape: no distinguished slots, vacuous claim
        let p111 = Partition::new(&[1, 1, 1]).unwrap();
        let rep = inflation_decomposition_check(&p111, 3, SampleMode::Exhaustive).unwrap();
        assert!(rep.t1.is_empty());
        assert_eq!(rep.pairs_checked, 0);
    }

    #[test]
    fn decomposition_identity_staircase_sampled() {
        let p321 = Partition::new(&[3, 2, 1]).unwrap();
        let rep = inflation_decomposition_check(
            &p321,
            3,
            SampleMode::Sampled { pairs: 500, seed: 0xDEC0 },
        )
        .unwrap();
        assert_eq!(rep.t1.len(), 2);
        assert_eq!(rep.pairs_checked, 500);
        inflation_decomposition_check(&p321, 5, SampleMode::Sampled { pairs: 200, seed: 1 })
            .unwrap();
    }

    #[test]
    fn carry_class_and_multiples() {
        let p = 5;
        let (g, f) = carry_cocycle(p, 2).unwrap();
        verify_cocycle(&g, p, &f).unwrap();
        assert_eq!(cyclic_class_sum(&g, p, &f, 1), 1);
        // k·f has class sum k: the four nonzero multiples are pairwise
        // non-cohomologous
        for k in 1..p {
            let kf = multiple_table(&f, k, p);
            assert_eq!(cyclic_class_sum(&g, p, &kf, 1), k);
            for k2 in 1..k {
                let diff = difference_table(&kf, &multiple_table(&f, k2, p), p);
                assert!(is_coboundary(&g, p, &diff).unwrap().is_none());
            }
        }
        // pullback under a ↦ s·a is cohomologous to s·f, and to f only at s ≡ 1
        for s in [2u64, 7, 11, 24] {
            let pulled = carry_pullback(p, 2, s).unwrap();
            verify_cocycle(&g, p, &pulled).unwrap();
            let diff = difference_table(&pulled, &multiple_table(&f, s % p, p), p);
            assert!(is_coboundary(&g, p, &diff).unwrap().is_some());
            let from_f = difference_table(&pulled, &f, p);
            let trivial = is_coboundary(&g, p, &from_f).unwrap().is_some();
            assert_eq!(trivial, s % p == 1);
        }
    }

    #[test]
    fn g1_pairing_is_the_invariant_class() {
        let cg = g1(3).unwrap();
        let z = g1_invariant_table(&cg).unwrap();
        verify_cocycle(&cg.table, 3, &z).unwrap();
        assert!(is_coboundary(&cg.table, 3, &z).unwrap().is_none());
        let n = cg.table.size();
        for perm in cg.torus_permutations().unwrap() {
            for g in 0..n {
                for h in 0..n {
                    assert_eq!(z[g * n + h], z[perm[g] * n + perm[h]]);
                }
            }
        }
    }
}
