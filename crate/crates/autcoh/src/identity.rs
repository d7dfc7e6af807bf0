//! Matrix identities over the dual numbers `Z[X]/(X²)`.
//!
//! The players: `A` and `B` are n×n matrices whose strictly lower entries
//! are plain integers, whose strictly upper entries are integer multiples of
//! the square-zero generator `X`, and whose diagonals vanish.  Their group
//! counterparts `gᵃ = I + A + X·diag` multiply to `gᵃgᵇ`, and `C` collects
//! the lower part of the product without its `X`-coefficients and the upper
//! part's `X`-coefficients:
//!
//! * lower: `C = L_A + L_B + L_A·L_B`
//! * upper: `X·(L_A·U_B + U_A·L_B + U_A + U_B)`
//!
//! Four facts tie determinants to alternating trace sums:
//!
//! 1. `det(I + N) = 1 + Σ_{i≥2} (−1)^{i−1} tr(Nⁱ)/i` for `N ∈ {A, B, C}`
//!    (each trace is an exact multiple of `i`);
//! 2. `det(I + A) + det(I + B) = 1 + det(I + A)·det(I + B)`;
//! 3. `det(I + A)·det(I + B) = det(I + C) + tr(AB)`;
//! 4. the combination of 1–3 eliminates the determinants.
//!
//! Eliminating `X` from part 4 leaves a polynomial identity over the plain
//! integers: the sum `Σ_{i<j} (a_ij·b_ji + a_ji·b_ij)` cancels against the
//! alternating sums of descending-cycle products of `C`, `A` and `B`.  That
//! integer identity is what the digit-cochain decomposition on Sylow
//! subgroups ultimately rests on, so this module verifies both the dual
//! statement and the integer statement directly.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Largest matrix dimension accepted (determinants are expanded over all
/// permutations).
pub const MAX_DIM: usize = 6;
/// Random entries are drawn from `[−ENTRY_BOUND, ENTRY_BOUND]`; together
/// with `MAX_DIM` this keeps every intermediate inside `i128`.
pub const ENTRY_BOUND: i128 = 999;

/// A dual number `re + eps·X` with `X² = 0`.  All arithmetic is checked:
/// an overflow is a bug in the caller's bounds, not data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Dual {
    pub re: i128,
    pub eps: i128,
}

impl Dual {
    pub const ZERO: Dual = Dual { re: 0, eps: 0 };
    pub const ONE: Dual = Dual { re: 1, eps: 0 };

    pub fn new(re: i128, eps: i128) -> Self {
        Dual { re, eps }
    }

    pub fn add(self, o: Dual) -> Dual {
        Dual {
            re: self.re.checked_add(o.re).expect("dual addition overflow"),
            eps: self.eps.checked_add(o.eps).expect("dual addition overflow"),
        }
    }

    pub fn sub(self, o: Dual) -> Dual {
        Dual {
            re: self.re.checked_sub(o.re).expect("dual subtraction overflow"),
            eps: self.eps.checked_sub(o.eps).expect("dual subtraction overflow"),
        }
    }

    pub fn mul(self, o: Dual) -> Dual {
        let re = self.re.checked_mul(o.re).expect("dual multiplication overflow");
        let e1 = self.re.checked_mul(o.eps).expect("dual multiplication overflow");
        let e2 = self.eps.checked_mul(o.re).expect("dual multiplication overflow");
        Dual { re, eps: e1.checked_add(e2).expect("dual multiplication overflow") }
    }

    pub fn neg(self) -> Dual {
        Dual { re: -self.re, eps: -self.eps }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.eps == 0
    }
}

/// A square matrix over the dual numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMatrix {
    n: usize,
    entries: Vec<Dual>,
}

impl DualMatrix {
    pub fn zero(n: usize) -> Self {
        DualMatrix { n, entries: vec![Dual::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Dual::ONE;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> Dual {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Dual) {
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, o: &DualMatrix) -> DualMatrix {
        assert_eq!(self.n, o.n);
        let entries = self.entries.iter().zip(&o.entries).map(|(&a, &b)| a.add(b)).collect();
        DualMatrix { n: self.n, entries }
    }

    pub fn mul(&self, o: &DualMatrix) -> DualMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = DualMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] = out.entries[i * n + j].add(aik.mul(o.at(k, j)));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Dual {
        (0..self.n).fold(Dual::ZERO, |acc, i| acc.add(self.at(i, i)))
    }

    /// Determinant by signed permutation expansion (n ≤ MAX_DIM).
    pub fn det(&self) -> Dual {
        let n = self.n;
        let mut total = Dual::ZERO;
        for perm in (0..n).permutations(n) {
            let mut prod = Dual::ONE;
            for (i, &j) in perm.iter().enumerate() {
                prod = prod.mul(self.at(i, j));
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            if permutation_sign(&perm) > 0 {
                total = total.add(prod);
            } else {
                total = total.sub(prod);
            }
        }
        total
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn check_shape(n: usize, vals: &[i128], what: &str) -> Result<()> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::Invalid(format!("dimension must be between 2 and {MAX_DIM}")));
    }
    if vals.len() != n * n {
        return Err(Error::Invalid(format!("{what} must be an n×n array")));
    }
    if vals.iter().any(|&v| v.unsigned_abs() > ENTRY_BOUND as u128) {
        return Err(Error::Invalid(format!("{what} entries must stay within ±{ENTRY_BOUND}")));
    }
    Ok(())
}

/// The dual matrix with plain lower entries, `X`-multiplied upper entries
/// and zero diagonal, read from a plain n×n integer array.
fn dualize(n: usize, vals: &[i128]) -> DualMatrix {
    let mut m = DualMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                m.set(i, j, Dual::new(vals[i * n + j], 0));
            } else if i < j {
                m.set(i, j, Dual::new(0, vals[i * n + j]));
            }
        }
    }
    m
}

/// The integer matrix `C` built from the off-diagonal integer arrays of `A`
/// and `B`: lower part `L_A + L_B + L_A·L_B`, upper part
/// `L_A·U_B + U_A·L_B + U_A + U_B`, zero diagonal.
pub fn product_lower_upper(n: usize, a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    check_shape(n, a, "first matrix")?;
    check_shape(n, b, "second matrix")?;
    let lower = |v: &[i128], i: usize, j: usize| if i > j { v[i * n + j] } else { 0 };
    let upper = |v: &[i128], i: usize, j: usize| if i < j { v[i * n + j] } else { 0 };
    let mut c = vec![0i128; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut acc: i128;
            if i > j {
                acc = a[i * n + j] + b[i * n + j];
                for k in 0..n {
                    acc = acc
                        .checked_add(
                            lower(a, i, k).checked_mul(lower(b, k, j)).expect("overflow"),
                        )
                        .expect("overflow");
                }
            } else {
                acc = a[i * n + j] + b[i * n + j];
                for k in 0..n {
                    let t1 = lower(a, i, k).checked_mul(upper(b, k, j)).expect("overflow");
                    let t2 = upper(a, i, k).checked_mul(lower(b, k, j)).expect("overflow");
                    acc = acc.checked_add(t1).expect("overflow");
                    acc = acc.checked_add(t2).expect("overflow");
                }
            }
            c[i * n + j] = acc;
        }
    }
    Ok(c)
}

/// `Σ_{i≥2} (−1)^{i−1} tr(Nⁱ)/i`, verifying that each trace is an exact
/// multiple of `i` with no plain part.
fn alternating_trace_sum(m: &DualMatrix) -> Result<Dual> {
    let n = m.n();
    let mut power = m.clone();
    let mut total = Dual::ZERO;
    for i in 2..=n {
        power = power.mul(m);
        let t = power.trace();
        if t.re != 0 {
            return Err(Error::Inconsistent(format!(
                "trace of the {i}-th power has a plain part: {}",
                t.re
            )));
        }
        if t.eps % i as i128 != 0 {
            return Err(Error::Inconsistent(format!(
                "trace of the {i}-th power is not divisible by {i}"
            )));
        }
        let term = Dual::new(0, t.eps / i as i128);
        total = if i % 2 == 0 { total.sub(term) } else { total.add(term) };
    }
    Ok(total)
}

/// Verify all four determinant/trace statements on one instance: `a` and
/// `b` hold the off-diagonal integers (diagonals of the arrays are
/// ignored), `da` and `db` the diagonal `X`-coefficients of `gᵃ` and `gᵇ`.
pub fn verify_proposition(n: usize, a: &[i128], b: &[i128], da: &[i128], db: &[i128]) -> Result<()> {
    check_shape(n, a, "first matrix")?;
    check_shape(n, b, "second matrix")?;
    if da.len() != n || db.len() != n {
        return Err(Error::Invalid("diagonals must have length n".into()));
    }
    let am = dualize(n, a);
    let bm = dualize(n, b);
    let c = product_lower_upper(n, a, b)?;
    let cm = dualize(n, &c);
    let id = DualMatrix::identity(n);

    let det_a = id.add(&am).det();
    let det_b = id.add(&bm).det();
    let det_c = id.add(&cm).det();

    // (1) alternating trace sums reproduce the determinants
    for (m, d, name) in [(&am, det_a, "A"), (&bm, det_b, "B"), (&cm, det_c, "C")] {
        let lhs = Dual::ONE.add(alternating_trace_sum(m)?);
        if lhs != d {
            return Err(Error::Inconsistent(format!(
                "trace expansion of det(I + {name}) fails: {lhs:?} ≠ {d:?}"
            )));
        }
    }

    // (2) det(I+A) + det(I+B) = 1 + det(I+A)·det(I+B)
    if det_a.add(det_b) != Dual::ONE.add(det_a.mul(det_b)) {
        return Err(Error::Inconsistent("determinant sum identity fails".into()));
    }

    // (3) det(I+A)·det(I+B) = det(I+C) + tr(AB)
    let tr_ab = am.mul(&bm).trace();
    if tr_ab.re != 0 {
        return Err(Error::Inconsistent("tr(AB) has a plain part".into()));
    }
    if det_a.mul(det_b) != det_c.add(tr_ab) {
        return Err(Error::Inconsistent("product determinant identity fails".into()));
    }

    // (4) the determinant-free combination vanishes
    let combo = tr_ab
        .add(alternating_trace_sum(&cm)?)
        .sub(alternating_trace_sum(&am)?)
        .sub(alternating_trace_sum(&bm)?);
    if !combo.is_zero() {
        return Err(Error::Inconsistent("trace combination identity fails".into()));
    }

    // the group-element determinants also see only the diagonal traces
    let mut ga = id.add(&am);
    let mut gb = id.add(&bm);
    for i in 0..n {
        ga.set(i, i, Dual::new(1, da[i]));
        gb.set(i, i, Dual::new(1, db[i]));
    }
    let dsum = |d: &[i128]| d.iter().sum::<i128>();
    if ga.det() != det_a.add(Dual::new(0, dsum(da))) {
        return Err(Error::Inconsistent("diagonal trace contribution fails for gᵃ".into()));
    }
    if gb.det() != det_b.add(Dual::new(0, dsum(db))) {
        return Err(Error::Inconsistent("diagonal trace contribution fails for gᵇ".into()));
    }
    Ok(())
}

/// `Σ` of products around every strictly descending `i`-cycle, for
/// `i = 2..=n`, signed `(−1)^{i−1}`.
fn descending_cycle_sum(n: usize, vals: &[i128]) -> i128 {
    let mut total: i128 = 0;
    for i in 2..=n {
        let mut sum: i128 = 0;
        for combo in (0..n).combinations(i) {
            // combinations come out ascending; the cycle wants descending
            let cycle: Vec<usize> = combo.into_iter().rev().collect();
            let mut prod: i128 = 1;
            for t in 0..i {
                let from = cycle[t];
                let to = cycle[(t + 1) % i];
                prod = prod.checked_mul(vals[from * n + to]).expect("overflow");
                if prod == 0 {
                    break;
                }
            }
            sum = sum.checked_add(prod).expect("overflow");
        }
        total = if i % 2 == 0 {
            total.checked_sub(sum).expect("overflow")
        } else {
            total.checked_add(sum).expect("overflow")
        };
    }
    total
}

/// The integer cycle-sum identity: for any off-diagonal integer arrays,
///
/// ```text
///   Σ_{i<j} (a_ij·b_ji + a_ji·b_ij)
///     + Σ_{i=2}^{n} (−1)^{i−1} Σ_{descending i-cycles} (c-product − a-product − b-product) = 0
/// ```
///
/// with `c = product_lower_upper(a, b)`.
pub fn verify_theorem(n: usize, a: &[i128], b: &[i128]) -> Result<()> {
    check_shape(n, a, "first matrix")?;
    check_shape(n, b, "second matrix")?;
    let c = product_lower_upper(n, a, b)?;
    let mut pairing: i128 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let t1 = a[i * n + j].checked_mul(b[j * n + i]).expect("overflow");
            let t2 = a[j * n + i].checked_mul(b[i * n + j]).expect("overflow");
            pairing = pairing.checked_add(t1).expect("overflow");
            pairing = pairing.checked_add(t2).expect("overflow");
        }
    }
    let total = pairing + descending_cycle_sum(n, &c)
        - descending_cycle_sum(n, a)
        - descending_cycle_sum(n, b);
    if total != 0 {
        return Err(Error::Inconsistent(format!("cycle-sum identity fails: residue {total}")));
    }
    Ok(())
}

/// Outcome of a random sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub trials_per_dimension: u64,
    pub dimensions: Vec<usize>,
    pub total_instances: u64,
}

/// Check both the dual-number proposition and the integer theorem on
/// `trials` random instances for every dimension `2..=max_n`, with entries
/// uniform in `[−ENTRY_BOUND, ENTRY_BOUND]`.
pub fn random_check(max_n: usize, trials: u64, seed: u64) -> Result<IdentityReport> {
    if !(2..=MAX_DIM).contains(&max_n) {
        return Err(Error::Invalid(format!("dimension must be between 2 and {MAX_DIM}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = ENTRY_BOUND;
    let mut total = 0u64;
    for n in 2..=max_n {
        for _ in 0..trials {
            let mut a = vec![0i128; n * n];
            let mut b = vec![0i128; n * n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        a[i * n + j] = rng.gen_range(-bound..=bound);
                        b[i * n + j] = rng.gen_range(-bound..=bound);
                    }
                }
            }
            let da: Vec<i128> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            let db: Vec<i128> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            verify_proposition(n, &a, &b, &da, &db)?;
            verify_theorem(n, &a, &b)?;
            total += 1;
        }
    }
    Ok(IdentityReport {
        trials_per_dimension: trials,
        dimensions: (2..=max_n).collect(),
        total_instances: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn dual_arithmetic() {
        let x = Dual::new(0, 1);
        assert!(x.mul(x).is_zero());
        let u = Dual::new(3, 5);
        let v = Dual::new(2, -1);
        assert_eq!(u.mul(v), Dual::new(6, 7));
        assert_eq!(u.add(v), Dual::new(5, 4));
    }

    #[test]
    fn determinant_expansion() {
        // det [[1, X·2], [3, 1]] = 1 − 6X
        let mut m = DualMatrix::identity(2);
        m.set(0, 1, Dual::new(0, 2));
        m.set(1, 0, Dual::new(3, 0));
        assert_eq!(m.det(), Dual::new(1, -6));
    }

    #[test]
    fn hand_instance_n3() {
        let a = vec![0, 2, -1, 3, 0, 5, -4, 7, 0];
        let b = vec![0, -3, 6, 1, 0, -2, 8, 9, 0];
        verify_proposition(3, &a, &b, &[1, -2, 3], &[0, 4, -5]).unwrap();
        verify_theorem(3, &a, &b).unwrap();
        // the identity is not vacuous on this instance
        let am = dualize(3, &a);
        let bm = dualize(3, &b);
        assert_ne!(am.mul(&bm).trace(), Dual::ZERO);
    }

    #[test]
    fn corrupted_product_matrix_fails() {
        let a = vec![0, 2, -1, 3, 0, 5, -4, 7, 0];
        let b = vec![0, -3, 6, 1, 0, -2, 8, 9, 0];
        let mut c = product_lower_upper(3, &a, &b).unwrap();
        c[1 * 3 + 0] += 1;
        let pairing: i128 = (0..3)
            .flat_map(|i| ((i + 1)..3).map(move |j| (i, j)))
            .map(|(i, j)| a[i * 3 + j] * b[j * 3 + i] + a[j * 3 + i] * b[i * 3 + j])
            .sum();
        let total = pairing + descending_cycle_sum(3, &c)
            - descending_cycle_sum(3, &a)
            - descending_cycle_sum(3, &b);
        assert_ne!(total, 0, "the identity must notice a corrupted entry");
    }

    #[test]
    fn random_sweep_small() {
        let report = random_check(5, 120, 0xD1CE).unwrap();
        assert_eq!(report.total_instances, 480);
    }

    /// Sparse multivariate polynomials over four named variables, enough to
    /// prove the n = 2 identity symbolically rather than numerically.
    #[derive(Clone, Debug, Default, PartialEq, Eq)]
    struct Poly(HashMap<Vec<u32>, i64>); // exponent vector for (a01, a10, b01, b10)

    impl Poly {
        fn var(i: usize) -> Poly {
            let mut e = vec![0u32; 4];
            e[i] = 1;
            Poly(HashMap::from([(e, 1)]))
        }

        fn add(&self, o: &Poly) -> Poly {
            let mut out = self.0.clone();
            for (k, &v) in &o.0 {
                *out.entry(k.clone()).or_insert(0) += v;
            }
            out.retain(|_, v| *v != 0);
            Poly(out)
        }

        fn neg(&self) -> Poly {
            Poly(self.0.iter().map(|(k, &v)| (k.clone(), -v)).collect())
        }

        fn mul(&self, o: &Poly) -> Poly {
            let mut out: HashMap<Vec<u32>, i64> = HashMap::new();
            for (k1, &v1) in &self.0 {
                for (k2, &v2) in &o.0 {
                    let k: Vec<u32> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                    *out.entry(k).or_insert(0) += v1 * v2;
                }
            }
            out.retain(|_, v| *v != 0);
            Poly(out)
        }

        fn is_zero(&self) -> bool {
            self.0.is_empty()
        }
    }

    #[test]
    fn symbolic_identity_n2() {
        let (a01, a10, b01, b10) = (Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(3));
        // c10 = a10 + b10, c01 = a01 + b01 (the degree-2 correction terms
        // need three indices and vanish at n = 2)
        let c10 = a10.add(&b10);
        let c01 = a01.add(&b01);
        // pairing + (−1)·(c-cycle − a-cycle − b-cycle) for the only cycle (1 0)
        let pairing = a01.mul(&b10).add(&a10.mul(&b01));
        let cycles = c10.mul(&c01).add(&a10.mul(&a01).neg()).add(&b10.mul(&b01).neg());
        assert!(pairing.add(&cycles.neg()).is_zero());
    }
}
