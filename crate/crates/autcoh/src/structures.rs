//! Partitions, the finite abelian p-groups they define, automorphisms of
//! those groups as block matrices with mixed moduli, and the coordinate
//! combinatorics of a Sylow p-subgroup.
//!
//! A partition λ = (λ₁^ρ₁ > λ₂^ρ₂ > … > λ_k^ρ_k) determines
//! A_λ = ⊕ (Z/p^{λ_i})^{ρ_i}. Its automorphisms are ρ×ρ matrices
//! (ρ = Σρ_i) where the entry in row r is read modulo p^{e_r} (e_r the
//! exponent of the block containing r) and entries above the block diagonal
//! carry forced divisibility: if e_r > e_c then p^{e_r − e_c} divides the
//! (r,c) entry. Such a matrix is an automorphism exactly when its diagonal
//! blocks are invertible modulo p.

use crate::linalg::{inv_mod, invert_mod_prime_power, is_prime, p_pow, padic_digits, FpMatrix};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

// ---------------------------------------------------------------------------
// partitions
// ---------------------------------------------------------------------------

/// A partition stored as strictly decreasing (part, multiplicity) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pairs: Vec<(u32, u32)>,
}

impl Partition {
    /// Build from parts in any order, e.g. `[2, 1, 1]`.
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("partition must have at least one part".into()));
        }
        if parts.iter().any(|&x| x == 0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        let mut sorted = parts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for part in sorted {
            match pairs.last_mut() {
                Some((p, m)) if *p == part => *m += 1,
                _ => pairs.push((part, 1)),
            }
        }
        Ok(Self { pairs })
    }

    /// Parse `"2,1,1"` (optionally wrapped in parentheses or spaces).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<u32> = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Invalid(format!("bad partition component {tok:?}")))
            })
            .collect::<Result<_>>()?;
        Self::new(&parts)
    }

    /// Distinct-part count k.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// (part, multiplicity) pairs, largest part first.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// λ_m for 1-based block index m.
    pub fn lambda(&self, m: usize) -> u32 {
        self.pairs[m - 1].0
    }

    /// ρ_m for 1-based block index m.
    pub fn rho(&self, m: usize) -> u32 {
        self.pairs[m - 1].1
    }

    /// Total rank ρ = Σρ_i (the matrix size).
    pub fn rank(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m as usize).sum()
    }

    /// All parts with multiplicity, descending, e.g. `[2, 1, 1]`.
    pub fn flattened(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(part, mult) in &self.pairs {
            out.extend(std::iter::repeat(part).take(mult as usize));
        }
        out
    }

    /// Exponent e_r of the block containing 0-based row r.
    pub fn exponent(&self, row: usize) -> u32 {
        self.flattened()[row]
    }

    /// 1-based block index of 0-based row r.
    pub fn block_of(&self, row: usize) -> usize {
        let mut acc = 0usize;
        for (idx, &(_, mult)) in self.pairs.iter().enumerate() {
            acc += mult as usize;
            if row < acc {
                return idx + 1;
            }
        }
        unreachable!("row out of range")
    }

    /// 0-based first row of 1-based block m.
    pub fn block_start(&self, m: usize) -> usize {
        self.pairs[..m - 1].iter().map(|&(_, mult)| mult as usize).sum()
    }

    /// Largest part λ₁.
    pub fn max_exponent(&self) -> u32 {
        self.pairs[0].0
    }

    /// Successive gaps λ_i − λ_{i+1}, ending with λ_k − 0.
    pub fn gaps(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for w in self.pairs.windows(2) {
            out.push(w[0].0 - w[1].0);
        }
        out.push(self.pairs.last().unwrap().0);
        out
    }

    /// True when every gap (including the final part itself) is at most 1.
    pub fn is_gap_free(&self) -> bool {
        self.gaps().iter().all(|&g| g <= 1)
    }

    /// Human-readable label like `(2,1,1)`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.flattened().iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

// ---------------------------------------------------------------------------
// the abelian group A_λ
// ---------------------------------------------------------------------------

/// A_λ = ⊕ Z/p^{e_r} with flattened exponents e_1 ≥ e_2 ≥ …; elements are
/// plain digit vectors, coordinate r taken mod p^{e_r}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub p: u64,
    exps: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(partition: &Partition, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Self { p, exps: partition.flattened() })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.exps.iter().map(|&e| p_pow(self.p, e)).collect()
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn order(&self) -> u128 {
        self.exps.iter().map(|&e| p_pow(self.p, e) as u128).product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.exps.len()]
    }

    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(self.moduli()).map(|(&x, m)| x % m).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(self.moduli())
            .map(|((&x, &y), m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(self.moduli()).map(|(&x, m)| (m - x % m) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn smul(&self, k: u64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(self.moduli())
            .map(|(&x, m)| ((k as u128 * x as u128) % m as u128) as u64)
            .collect()
    }

    /// All elements, odometer order; errs when the order exceeds `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<Vec<Vec<u64>>> {
        let total = self.order();
        if total > cap {
            return Err(Error::CapExceeded { predicted: total, cap });
        }
        let moduli = self.moduli();
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            let mut pos = 0usize;
            loop {
                if pos == moduli.len() {
                    return Ok(out);
                }
                cur[pos] += 1;
                if cur[pos] < moduli[pos] {
                    break;
                }
                cur[pos] = 0;
                pos += 1;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// automorphisms as mixed-modulus matrices
// ---------------------------------------------------------------------------

/// A shape-constrained ρ×ρ matrix over mixed moduli; see module docs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutMatrix {
    p: u64,
    partition: Partition,
    entries: Vec<u64>,
}

impl AutMatrix {
    pub fn identity(partition: &Partition, p: u64) -> Result<Self> {
        let n = partition.rank();
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            entries[r * n + r] = 1;
        }
        Self::from_entries(partition, p, entries)
    }

    /// Validate shape + divisibility and reduce entries mod their row
    /// modulus. Entries are row-major.
    pub fn from_entries(partition: &Partition, p: u64, mut entries: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let n = partition.rank();
        if entries.len() != n * n {
            return Err(Error::Invalid(format!(
                "expected {} entries for rank {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        let flat = partition.flattened();
        for r in 0..n {
            let modulus = p_pow(p, flat[r]);
            for c in 0..n {
                let v = &mut entries[r * n + c];
                *v %= modulus;
                if flat[r] > flat[c] {
                    let must_divide = p_pow(p, flat[r] - flat[c]);
                    if *v % must_divide != 0 {
                        return Err(Error::Invalid(format!(
                            "entry ({r},{c}) = {v} must be divisible by {must_divide}"
                        )));
                    }
                }
            }
        }
        Ok(Self { p, partition: partition.clone(), entries })
    }

    /// E_{(x,y)}(value): identity plus `value` added at 1-based position
    /// (x,y). On the diagonal this is the diagonal matrix with entry
    /// 1 + value at (x,x).
    pub fn elementary(partition: &Partition, p: u64, x: usize, y: usize, value: u64) -> Result<Self> {
        let n = partition.rank();
        if x == 0 || y == 0 || x > n || y > n {
            return Err(Error::Invalid(format!("position ({x},{y}) out of range")));
        }
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            entries[r * n + r] = 1;
        }
        let modulus = p_pow(p, partition.exponent(x - 1));
        entries[(x - 1) * n + (y - 1)] = (entries[(x - 1) * n + (y - 1)] + value % modulus) % modulus;
        Self::from_entries(partition, p, entries)
    }

    /// Overwrite one entry, enforcing the same reduction and divisibility
    /// rules as `from_entries`.
    pub fn set_entry(&mut self, r: usize, c: usize, value: u64) -> Result<()> {
        let n = self.partition.rank();
        if r >= n || c >= n {
            return Err(Error::Invalid(format!("position ({r},{c}) out of range")));
        }
        let er = self.partition.exponent(r);
        let ec = self.partition.exponent(c);
        let v = value % p_pow(self.p, er);
        if er > ec && v % p_pow(self.p, er - ec) != 0 {
            return Err(Error::Invalid(format!(
                "entry ({r},{c}) = {v} must be divisible by p^{}",
                er - ec
            )));
        }
        self.entries[r * n + c] = v;
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.rank()
    }

    /// Canonical entry value at 0-based (r,c); lies in [0, p^{e_r}).
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.n() + c]
    }

    pub fn row_modulus(&self, r: usize) -> u64 {
        p_pow(self.p, self.partition.exponent(r))
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.partition, other.partition);
        let n = self.n();
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            let modulus = self.row_modulus(r) as u128;
            for c in 0..n {
                let mut acc: u128 = 0;
                for s in 0..n {
                    acc += self.at(r, s) as u128 * other.at(s, c) as u128 % modulus;
                }
                entries[r * n + c] = (acc % modulus) as u64;
            }
        }
        // closure of the shape constraints under multiplication is a ring
        // fact; keep a debug check on it
        let out = Self { p: self.p, partition: self.partition.clone(), entries };
        debug_assert!(out.shape_ok());
        out
    }

    fn shape_ok(&self) -> bool {
        let n = self.n();
        let flat = self.partition.flattened();
        (0..n).all(|r| {
            (0..n).all(|c| {
                flat[r] <= flat[c] || self.at(r, c) % p_pow(self.p, flat[r] - flat[c]) == 0
            })
        })
    }

    /// Apply to an element of A_λ (digit vector of length ρ).
    pub fn act(&self, a: &[u64]) -> Vec<u64> {
        let n = self.n();
        debug_assert_eq!(a.len(), n);
        (0..n)
            .map(|r| {
                let modulus = self.row_modulus(r) as u128;
                let mut acc: u128 = 0;
                for c in 0..n {
                    acc += self.at(r, c) as u128 * a[c] as u128 % modulus;
                }
                (acc % modulus) as u64
            })
            .collect()
    }

    /// One diagonal block reduced mod p.
    fn diag_block_mod_p(&self, m: usize) -> FpMatrix {
        let start = self.partition.block_start(m);
        let size = self.partition.rho(m) as usize;
        let mut block = FpMatrix::zero(self.p, size, size);
        for r in 0..size {
            for c in 0..size {
                block.set(r, c, self.at(start + r, start + c) % self.p);
            }
        }
        block
    }

    /// An endomorphism of this shape is invertible iff every diagonal block
    /// is invertible mod p.
    pub fn is_automorphism(&self) -> bool {
        (1..=self.partition.k()).all(|m| {
            let size = self.partition.rho(m) as usize;
            self.diag_block_mod_p(m).rank() == size
        })
    }

    /// Member of the Sylow subgroup: unipotent lower triangular mod p.
    pub fn is_unipotent_mod_p(&self) -> bool {
        let n = self.n();
        (0..n).all(|r| {
            (0..n).all(|c| {
                let v = self.at(r, c) % self.p;
                if r == c {
                    v == 1
                } else if c > r {
                    v == 0
                } else {
                    true
                }
            })
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n();
        let e_max = self.partition.max_exponent();
        // canonical entry values already satisfy the divisibility constraints
        // as integers, so lifting entrywise commutes with the action on A_λ
        let lifted: Vec<u64> = self.entries.clone();
        let inv = invert_mod_prime_power(n, &lifted, self.p, e_max).ok_or_else(|| {
            Error::NotAutomorphism("matrix is not invertible".into())
        })?;
        Self::from_entries(&self.partition, self.p, inv)
            .map_err(|e| Error::Internal(format!("inverse lost shape constraints: {e}")))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(&self.partition, self.p).expect("identity");
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order, with a search cap.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let id = Self::identity(&self.partition, self.p).expect("identity");
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc == id {
                return Ok(k);
            }
            acc = acc.mul(self);
        }
        Err(Error::CapExceeded { predicted: cap as u128 + 1, cap: cap as u128 })
    }

    /// p-adic digit of the entry at a coordinate's position.
    pub fn digit(&self, coord: &Coord) -> u64 {
        let (x, y) = coord.pos(&self.partition);
        let e = self.partition.exponent(x - 1);
        padic_digits(self.at(x - 1, y - 1), self.p, e)[coord.l as usize]
    }

    /// Digits along a list of coordinates.
    pub fn coordinates(&self, coords: &[Coord]) -> Vec<u64> {
        coords.iter().map(|c| self.digit(c)).collect()
    }

    /// Diagonal matrix of Teichmüller lifts ω(u_r) = u_r^{p^{e_r − 1}}; the
    /// inputs are units mod p and the result has multiplicative order
    /// dividing p − 1.
    pub fn teichmuller(partition: &Partition, p: u64, units: &[u64]) -> Result<Self> {
        let n = partition.rank();
        if units.len() != n {
            return Err(Error::Invalid(format!("need {n} units, got {}", units.len())));
        }
        let mut entries = vec![0u64; n * n];
        for (r, &u) in units.iter().enumerate() {
            if u % p == 0 {
                return Err(Error::Invalid(format!("{u} is not a unit mod {p}")));
            }
            let e = partition.exponent(r);
            let modulus = p_pow(p, e);
            let mut exp = 1u64;
            for _ in 1..e {
                exp = exp
                    .checked_mul(p)
                    .ok_or_else(|| Error::Invalid("exponent overflow".into()))?;
            }
            entries[r * n + r] = crate::linalg::pow_mod(u % modulus, exp, modulus);
        }
        Self::from_entries(partition, p, entries)
    }
}

impl fmt::Display for AutMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "[{}] (mod {})", row.join(", "), self.row_modulus(r))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// coordinates and the index set S
// ---------------------------------------------------------------------------

/// A free coordinate (l, i, j, m, n): digit l of the (i,j) entry of block
/// (m,n). Blocks and in-block indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    pub l: u32,
    pub i: u32,
    pub j: u32,
    pub m: u32,
    pub n: u32,
}

impl Coord {
    /// 1-based matrix position.
    pub fn pos(&self, partition: &Partition) -> (usize, usize) {
        let x = partition.block_start(self.m as usize) + self.i as usize;
        let y = partition.block_start(self.n as usize) + self.j as usize;
        (x, y)
    }

    /// χ(Pos) = row − column.
    pub fn chi(&self, partition: &Partition) -> i64 {
        let (x, y) = self.pos(partition);
        x as i64 - y as i64
    }

    pub fn row(&self, partition: &Partition) -> usize {
        self.pos(partition).0
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.l, self.i, self.j, self.m, self.n)
    }
}

/// Compare coordinates in the base total order: higher digit index first,
/// then higher χ, then higher row — those are the *smaller* elements.
fn cmp_to(a: &Coord, b: &Coord, partition: &Partition) -> Ordering {
    b.l.cmp(&a.l)
        .then_with(|| b.chi(partition).cmp(&a.chi(partition)))
        .then_with(|| b.row(partition).cmp(&a.row(partition)))
}

/// The free coordinate set of a Sylow subgroup, with its two total orders
/// and the distinguished subsets controlling the commutator quotient.
#[derive(Debug, Clone)]
pub struct IndexSet {
    partition: Partition,
    /// S \ {∅} in ascending base order (least first).
    coords: Vec<Coord>,
    /// T in ascending base order.
    t_set: Vec<Coord>,
    /// T₁ ⊆ T: slots (1,1,1,m,m+1) with ρ_m = ρ_{m+1} = 1.
    t1: Vec<Coord>,
    /// Whether the single-block (k = 1) rule defined T.
    pub single_block_rule: bool,
}

impl IndexSet {
    pub fn new(partition: &Partition) -> Self {
        let k = partition.k();
        let mut coords = Vec::new();
        for m in 1..=k {
            for n in 1..=k {
                let lam_m = partition.lambda(m);
                for i in 1..=partition.rho(m) {
                    for j in 1..=partition.rho(n) {
                        let l_min = if m == n {
                            if i > j {
                                0
                            } else {
                                1
                            }
                        } else if m < n {
                            lam_m - partition.lambda(n)
                        } else {
                            0
                        };
                        for l in l_min..lam_m {
                            // diagonal slots (i = j) only exist from digit 1
                            if m == n && i == j && l == 0 {
                                continue;
                            }
                            coords.push(Coord { l, i, j, m: m as u32, n: n as u32 });
                        }
                    }
                }
            }
        }
        coords.sort_by(|a, b| cmp_to(a, b, partition));

        let mut t_set: Vec<Coord> = coords
            .iter()
            .copied()
            .filter(|c| c.l == 0 && c.chi(partition) == 1)
            .collect();
        let single_block_rule = k == 1;
        if !single_block_rule {
            for m in 1..k {
                // the cross-block slot (1,1,ρ_{m+1},m,m+1) only exists when
                // the parts drop by exactly one there
                if partition.lambda(m) - partition.lambda(m + 1) != 1 {
                    continue;
                }
                t_set.push(Coord {
                    l: 1,
                    i: 1,
                    j: partition.rho(m + 1),
                    m: m as u32,
                    n: m as u32 + 1,
                });
            }
        }
        t_set.sort_by(|a, b| cmp_to(a, b, partition));
        for t in &t_set {
            debug_assert!(coords.contains(t), "T must be a subset of S");
        }

        let t1: Vec<Coord> = t_set
            .iter()
            .copied()
            .filter(|t| {
                t.l == 1
                    && t.i == 1
                    && t.j == 1
                    && t.n == t.m + 1
                    && partition.rho(t.m as usize) == 1
                    && partition.rho(t.m as usize + 1) == 1
            })
            .collect();

        Self { partition: partition.clone(), coords, t_set, t1, single_block_rule }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// S \ {∅}, ascending in the base order.
    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn t_set(&self) -> &[Coord] {
        &self.t_set
    }

    pub fn t1(&self) -> &[Coord] {
        &self.t1
    }

    pub fn contains_t(&self, c: &Coord) -> bool {
        self.t_set.contains(c)
    }

    /// S \ T, ascending in the base order.
    pub fn s_minus_t(&self) -> Vec<Coord> {
        self.coords.iter().copied().filter(|c| !self.contains_t(c)).collect()
    }

    /// S \ {∅} in the modified order: all of S \ T below all of T, each part
    /// internally in the base order.
    pub fn mto_coords(&self) -> Vec<Coord> {
        let mut out = self.s_minus_t();
        out.extend(self.t_set.iter().copied());
        out
    }

    /// Companion slot φ(t) = (0,1,1,m+1,m) of a T₁ slot t = (1,1,1,m,m+1).
    pub fn phi(&self, t: &Coord) -> Option<Coord> {
        if self.t1.contains(t) {
            Some(Coord { l: 0, i: 1, j: 1, m: t.m + 1, n: t.m })
        } else {
            None
        }
    }

    /// Coset representative E_{Pos(s)}(p^l a) for a digit value a.
    pub fn coset_rep(&self, p: u64, coord: &Coord, a: u64) -> Result<AutMatrix> {
        let (x, y) = coord.pos(&self.partition);
        AutMatrix::elementary(&self.partition, p, x, y, p_pow(p, coord.l) * (a % p))
    }
}

// ---------------------------------------------------------------------------
// orders and enumeration
// ---------------------------------------------------------------------------

/// |Aut(A_λ)| by the classical product formula over ascending exponents.
pub fn group_order(partition: &Partition, p: u64) -> u128 {
    let mut exps = partition.flattened();
    exps.reverse(); // ascending e_1 ≤ e_2 ≤ … ≤ e_n
    let n = exps.len();
    let d: Vec<usize> = (0..n)
        .map(|k| (0..n).filter(|&l| exps[l] == exps[k]).max().unwrap() + 1)
        .collect();
    let c: Vec<usize> = (0..n)
        .map(|k| (0..n).filter(|&l| exps[l] == exps[k]).min().unwrap() + 1)
        .collect();
    let pp = |e: u32| -> u128 { p_pow(p, e) as u128 };
    let mut order: u128 = 1;
    for k in 0..n {
        order *= (p as u128).pow(d[k] as u32) - (p as u128).pow(k as u32);
    }
    for j in 0..n {
        order *= (pp(exps[j])).pow((n - d[j]) as u32);
    }
    for i in 0..n {
        order *= (pp(exps[i] - 1)).pow((n - c[i] + 1) as u32);
    }
    order
}

/// |P_λ| = p^{|S \ ∅|}.
pub fn sylow_order(partition: &Partition, p: u64) -> u128 {
    let count = IndexSet::new(partition).coords().len() as u32;
    (p as u128).pow(count)
}

/// |D_λ| = (p − 1)^ρ.
pub fn diagonal_order(partition: &Partition, p: u64) -> u128 {
    ((p - 1) as u128).pow(partition.rank() as u32)
}

/// Every element of the Sylow subgroup: odometer over the free digits.
pub fn enumerate_sylow(partition: &Partition, p: u64, cap: u128) -> Result<Vec<AutMatrix>> {
    let total = sylow_order(partition, p);
    if total > cap {
        return Err(Error::CapExceeded { predicted: total, cap });
    }
    let index = IndexSet::new(partition);
    let coords = index.coords();
    let n = partition.rank();
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; coords.len()];
    loop {
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            entries[r * n + r] = 1;
        }
        for (coord, &a) in coords.iter().zip(&digits) {
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

/// Every automorphism, by enumerating all shape digits and filtering on
/// invertibility of the diagonal blocks.
pub fn enumerate_group(partition: &Partition, p: u64, cap: u128) -> Result<Vec<AutMatrix>> {
    let total = group_order(partition, p);
    if total > cap {
        return Err(Error::CapExceeded { predicted: total, cap });
    }
    let n = partition.rank();
    let flat = partition.flattened();
    // per-entry value ranges: entry (r,c) runs over multiples of
    // p^{max(e_r − e_c, 0)} below p^{e_r}
    let mut steps = Vec::with_capacity(n * n);
    let mut counts = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let delta = flat[r].saturating_sub(flat[c]);
            steps.push(p_pow(p, delta));
            counts.push(p_pow(p, flat[r] - delta));
        }
    }
    let candidates: u128 = counts.iter().map(|&x| x as u128).product();
    if candidates > cap.saturating_mul(64).max(1 << 24) {
        return Err(Error::CapExceeded { predicted: candidates, cap: cap.saturating_mul(64) });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut counter = vec![0u64; n * n];
    loop {
        let entries: Vec<u64> = counter.iter().zip(&steps).map(|(&k, &s)| k * s).collect();
        let cand = AutMatrix::from_entries(partition, p, entries)?;
        if cand.is_automorphism() {
            out.push(cand);
        }
        let mut pos = 0usize;
        loop {
            if pos == counter.len() {
                if out.len() as u128 != total {
                    return Err(Error::Internal(format!(
                        "enumeration found {} automorphisms, order formula says {total}",
                        out.len()
                    )));
                }
                return Ok(out);
            }
            counter[pos] += 1;
            if counter[pos] < counts[pos] {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

/// The restricted diagonal subgroup: Teichmüller lifts of unit tuples.
pub fn enumerate_diagonal(partition: &Partition, p: u64) -> Result<Vec<AutMatrix>> {
    let n = partition.rank();
    let mut out = Vec::new();
    let mut units = vec![1u64; n];
    loop {
        out.push(AutMatrix::teichmuller(partition, p, &units)?);
        let mut pos = 0usize;
        loop {
            if pos == n {
                return Ok(out);
            }
            units[pos] += 1;
            if units[pos] < p {
                break;
            }
            units[pos] = 1;
            pos += 1;
        }
    }
}

/// Uniform random Sylow element (uniform independent digits).
pub fn random_sylow<R: rand::Rng>(partition: &Partition, p: u64, rng: &mut R) -> AutMatrix {
    let index = IndexSet::new(partition);
    let n = partition.rank();
    let mut entries = vec![0u64; n * n];
    for r in 0..n {
        entries[r * n + r] = 1;
    }
    for coord in index.coords() {
        let (x, y) = coord.pos(partition);
        let modulus = p_pow(p, partition.exponent(x - 1));
        let a = rng.gen_range(0..p);
        let slot = &mut entries[(x - 1) * n + (y - 1)];
        *slot = (*slot + a * p_pow(p, coord.l)) % modulus;
    }
    AutMatrix::from_entries(partition, p, entries).expect("random sylow element")
}

/// Uniform random automorphism by rejection on the diagonal blocks.
pub fn random_aut<R: rand::Rng>(partition: &Partition, p: u64, rng: &mut R) -> AutMatrix {
    let n = partition.rank();
    let flat = partition.flattened();
    loop {
        let mut entries = vec![0u64; n * n];
        for r in 0..n {
            for c in 0..n {
                let delta = flat[r].saturating_sub(flat[c]);
                let step = p_pow(p, delta);
                let count = p_pow(p, flat[r] - delta);
                entries[r * n + c] = rng.gen_range(0..count) * step;
            }
        }
        let cand = AutMatrix::from_entries(partition, p, entries).expect("shape digits");
        if cand.is_automorphism() {
            return cand;
        }
    }
}

/// Multiplicative inverse of a unit acting on a single cyclic factor; small
/// convenience shared by callers working with one block.
pub fn unit_inverse(a: u64, p: u64, e: u32) -> Option<u64> {
    inv_mod(a, p_pow(p, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn partition_basics() {
        let lam = Partition::parse(" (2, 1, 1) ").unwrap();
        assert_eq!(lam.pairs(), &[(2, 1), (1, 2)]);
        assert_eq!(lam.k(), 2);
        assert_eq!(lam.rank(), 3);
        assert_eq!(lam.flattened(), vec![2, 1, 1]);
        assert_eq!(lam.label(), "(2,1,1)");
        assert_eq!(lam.exponent(0), 2);
        assert_eq!(lam.exponent(2), 1);
        assert_eq!(lam.block_of(0), 1);
        assert_eq!(lam.block_of(2), 2);
        assert_eq!(lam.block_start(2), 1);
        assert!(lam.is_gap_free());
        assert!(!part(&[3, 1]).is_gap_free());
        assert!(part(&[2]).gaps() == vec![2] && !part(&[2]).is_gap_free());
        assert!(Partition::new(&[]).is_err());
        assert!(Partition::parse("2,0").is_err());
    }

    #[test]
    fn index_set_21() {
        let lam = part(&[2, 1]);
        let index = IndexSet::new(&lam);
        let a = Coord { l: 1, i: 1, j: 1, m: 1, n: 1 };
        let b = Coord { l: 1, i: 1, j: 1, m: 1, n: 2 };
        let c = Coord { l: 0, i: 1, j: 1, m: 2, n: 1 };
        assert_eq!(index.coords(), &[a, b, c]);
        assert_eq!(index.t_set(), &[b, c]);
        assert_eq!(index.s_minus_t(), vec![a]);
        assert_eq!(index.mto_coords(), vec![a, b, c]);
        assert_eq!(index.t1(), &[b]);
        assert_eq!(index.phi(&b), Some(c));
        assert_eq!(index.phi(&c), None);
        assert!(!index.single_block_rule);
        // positions
        assert_eq!(a.pos(&lam), (1, 1));
        assert_eq!(b.pos(&lam), (1, 2));
        assert_eq!(c.pos(&lam), (2, 1));
        assert_eq!(c.chi(&lam), 1);
    }

    #[test]
    fn index_set_sizes_match_oracles() {
        for (parts, s_len, t_len) in [
            (vec![2u32, 1], 3usize, 2usize),
            (vec![2, 1, 1], 6, 3),
            (vec![1, 1, 1], 3, 2),
            (vec![2, 2, 1], 9, 3),
            (vec![3, 2, 1], 11, 4),
        ] {
            let index = IndexSet::new(&part(&parts));
            assert_eq!(index.coords().len(), s_len, "|S\\∅| for {parts:?}");
            assert_eq!(index.t_set().len(), t_len, "|T| for {parts:?}");
        }
        // single-block rule engages only for k = 1
        assert!(IndexSet::new(&part(&[1, 1, 1])).single_block_rule);
        assert!(!IndexSet::new(&part(&[2, 1])).single_block_rule);
        // T₁ examples: empty for (1,1,1) and (2,1,1); two slots for (3,2,1)
        assert!(IndexSet::new(&part(&[1, 1, 1])).t1().is_empty());
        assert!(IndexSet::new(&part(&[2, 1, 1])).t1().is_empty());
        assert_eq!(IndexSet::new(&part(&[3, 2, 1])).t1().len(), 2);
    }

    #[test]
    fn orders_match_enumeration() {
        let lam = part(&[2, 1]);
        assert_eq!(group_order(&lam, 3), 108);
        assert_eq!(sylow_order(&lam, 3), 27);
        assert_eq!(diagonal_order(&lam, 3), 4);
        assert_eq!(group_order(&lam, 5), 2000);
        assert_eq!(group_order(&part(&[3, 1]), 3), 324);
        assert_eq!(group_order(&part(&[3, 1]), 5), 10000);
        assert_eq!(group_order(&part(&[1, 1]), 3), 48);
        assert_eq!(group_order(&part(&[2]), 3), 6);

        let sylow = enumerate_sylow(&lam, 3, 1 << 20).unwrap();
        assert_eq!(sylow.len(), 27);
        assert!(sylow.iter().all(|g| g.is_unipotent_mod_p() && g.is_automorphism()));

        let group = enumerate_group(&lam, 3, 1 << 20).unwrap();
        assert_eq!(group.len(), 108);

        let diag = enumerate_diagonal(&lam, 3).unwrap();
        assert_eq!(diag.len(), 4);
        let id = AutMatrix::identity(&lam, 3).unwrap();
        for d in &diag {
            assert_eq!(d.mul(d), id, "restricted diagonal elements square to 1 at p = 3");
        }
    }

    #[test]
    fn matrix_arithmetic_and_inverse() {
        let lam = part(&[2, 1, 1]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let id = AutMatrix::identity(&lam, 3).unwrap();
        for _ in 0..40 {
            let g = random_aut(&lam, 3, &mut rng);
            let inv = g.inverse().unwrap();
            assert_eq!(g.mul(&inv), id);
            assert_eq!(inv.mul(&g), id);
        }
        // associativity spot check
        let (a, b, c) = (
            random_aut(&lam, 3, &mut rng),
            random_aut(&lam, 3, &mut rng),
            random_aut(&lam, 3, &mut rng),
        );
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // action is a homomorphism to automorphisms of A_λ
        let grp = AbelianGroup::new(&lam, 3).unwrap();
        let v = vec![5, 2, 1];
        let w = vec![8, 0, 2];
        assert_eq!(
            a.act(&grp.add(&v, &w)),
            grp.add(&a.act(&v), &a.act(&w))
        );
        assert_eq!(a.mul(&b).act(&v), a.act(&b.act(&v)));
    }

    #[test]
    fn shape_constraints_enforced() {
        let lam = part(&[2, 1]);
        // entry (0,1) = 1 is not divisible by 3
        assert!(AutMatrix::from_entries(&lam, 3, vec![1, 1, 0, 1]).is_err());
        assert!(AutMatrix::from_entries(&lam, 3, vec![1, 3, 0, 1]).is_ok());
        // elementary constructor respects positions
        let e = AutMatrix::elementary(&lam, 3, 1, 2, 3).unwrap();
        assert_eq!(e.at(0, 1), 3);
        assert!(AutMatrix::elementary(&lam, 3, 1, 2, 1).is_err());
    }

    #[test]
    fn digits_read_back() {
        let lam = part(&[2, 1]);
        let index = IndexSet::new(&lam);
        // g = [[1+3a, 3b], [c, 1]] with digits a = 2, b = 1, c = 2
        let g = AutMatrix::from_entries(&lam, 3, vec![7, 3, 2, 1]).unwrap();
        assert_eq!(g.coordinates(index.coords()), vec![2, 1, 2]);
        let rep = index.coset_rep(3, &index.coords()[1], 2).unwrap();
        assert_eq!(rep.at(0, 1), 6);
        assert_eq!(rep.digit(&index.coords()[1]), 2);
    }

    #[test]
    fn teichmuller_properties() {
        let lam = part(&[3, 1]);
        for u in 1..5u64 {
            let d = AutMatrix::teichmuller(&lam, 5, &[u, u]).unwrap();
            // order divides p − 1 = 4
            let id = AutMatrix::identity(&lam, 5).unwrap();
            assert_eq!(d.pow(4), id);
            // reduces to diag(u, u) mod 5
            assert_eq!(d.at(0, 0) % 5, u);
            assert_eq!(d.at(1, 1) % 5, u);
        }
    }

    #[test]
    fn abelian_group_ops() {
        let lam = part(&[2, 1]);
        let grp = AbelianGroup::new(&lam, 3).unwrap();
        assert_eq!(grp.order(), 27);
        assert_eq!(grp.moduli(), vec![9, 3]);
        let a = vec![7, 2];
        let b = vec![5, 2];
        assert_eq!(grp.add(&a, &b), vec![3, 1]);
        assert_eq!(grp.sub(&a, &a), grp.zero());
        assert_eq!(grp.smul(4, &a), vec![1, 2]);
        assert_eq!(grp.enumerate(100).unwrap().len(), 27);
        assert!(grp.enumerate(10).is_err());
    }
}
