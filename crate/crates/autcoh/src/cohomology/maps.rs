//! Connecting maps between the cohomology of a group, a central subgroup,
//! and the quotient, together with the two subspace operations that carry
//! Sylow-level computations up to the full group.
//!
//! Everything here works on explicit cocycle tables over `F_p`:
//!
//! * [`ClassSpace`] — coordinates on `H²(G, F_p)`: a coboundary echelon plus
//!   an augmented echelon over the chosen basis classes, so arbitrary
//!   cocycle tables can be located in the basis.
//! * [`restrict_table`] / [`inflate_table`] / [`transgression`] /
//!   [`theta_table`] — the four maps of the low-degree exact sequence of a
//!   central extension; [`hs_exactness`] verifies exactness at every node.
//! * [`invariant_subspace`] — fixed classes under a finite group of
//!   automorphisms, with the averaging projector as a cross-check whenever
//!   the acting group has order prime to p.
//! * [`stable_subspace`] — classes of a subgroup P ≤ G satisfying the
//!   double-coset stability conditions; for P a Sylow p-subgroup these are
//!   exactly the classes of `H²(G, F_p)`.

use super::brute::{greedy_generators, h2_brute, hom_basis, verify_cocycle, CohomologySpace};
use super::fp8::Echelon8;
use super::group::{perm_inverse, quotient, subgroup, GroupTable, QuotientTable, Subgroup};
use super::pc::{PcCohomology, PcGroup};
use crate::linalg::{inv_mod, FpEchelon};
use crate::{Error, Result};

/// Echelon basis of the full coboundary space B²(G, F_p) in table
/// coordinates: the span of `∂δ_w` over all w ∈ G.
pub(crate) fn coboundary_echelon(g: &GroupTable, p: u64) -> Echelon8 {
    let n = g.size();
    let mut ech = Echelon8::new(p, n * n);
    let mut row = vec![0u8; n * n];
    for w in 0..n {
        row.iter_mut().for_each(|v| *v = 0);
        for x in 0..n {
            for y in 0..n {
                let mut v = 0u64;
                if x == w {
                    v += 1;
                }
                if y == w {
                    v += 1;
                }
                if g.mul(x, y) == w {
                    v += p - 1;
                }
                row[x * n + y] = (v % p) as u8;
            }
        }
        ech.offer(row.clone());
    }
    ech
}

/// Coordinates on H²(G, F_p) relative to a fixed basis of representative
/// tables.
pub struct ClassSpace {
    p: u64,
    n: usize,
    dim: usize,
    cob: Echelon8,
    coords_ech: Echelon8,
    basis_tables: Vec<Vec<u8>>,
}

impl ClassSpace {
    pub fn new(g: &GroupTable, p: u64, space: &CohomologySpace) -> Result<Self> {
        if space.group_size != g.size() || space.p != p {
            return Err(Error::Invalid("cohomology space does not match the group".into()));
        }
        let n = g.size();
        let cob = coboundary_echelon(g, p);
        if cob.rank() != n - space.h1_dim {
            return Err(Error::Inconsistent(format!(
                "coboundary space has rank {}, expected |G| − h¹ = {}",
                cob.rank(),
                n - space.h1_dim
            )));
        }
        let dim = space.dim;
        let mut indep = Echelon8::new(p, n * n);
        let mut coords_ech = Echelon8::new(p, n * n + dim);
        for (i, t) in space.basis.iter().enumerate() {
            let mut red = t.clone();
            cob.reduce(&mut red);
            if !indep.offer(red.clone()) {
                return Err(Error::Inconsistent("basis classes are linearly dependent".into()));
            }
            let mut aug = red;
            aug.resize(n * n + dim, 0);
            aug[n * n + i] = 1;
            coords_ech.offer(aug);
        }
        Ok(ClassSpace { p, n, dim, cob, coords_ech, basis_tables: space.basis.clone() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_size(&self) -> usize {
        self.n
    }

    /// Canonical representative of the class of `table` modulo coboundaries.
    pub fn reduce(&self, table: &[u8]) -> Result<Vec<u8>> {
        if table.len() != self.n * self.n {
            return Err(Error::Invalid("cocycle table has the wrong shape".into()));
        }
        let mut red = table.to_vec();
        self.cob.reduce(&mut red);
        Ok(red)
    }

    /// Whether the table is a coboundary.
    pub fn is_zero_class(&self, table: &[u8]) -> Result<bool> {
        if table.len() != self.n * self.n {
            return Err(Error::Invalid("cocycle table has the wrong shape".into()));
        }
        Ok(self.cob.contains(table))
    }

    /// Coordinates of the class of `table` in the chosen basis.  Errors if
    /// the table is not a cocycle class in the span (which, for a basis of
    /// the full H², means it was not a cocycle at all).
    pub fn coords(&self, table: &[u8]) -> Result<Vec<u64>> {
        let red = self.reduce(table)?;
        let mut aug: Vec<u8> = red;
        aug.resize(self.n * self.n + self.dim, 0);
        self.coords_ech.reduce(&mut aug);
        if aug[..self.n * self.n].iter().any(|&v| v != 0) {
            return Err(Error::Invalid("table is not in the span of the basis classes".into()));
        }
        let p = self.p;
        Ok(aug[self.n * self.n..].iter().map(|&v| (p - v as u64) % p).collect())
    }

    /// The representative table of a coordinate vector.
    pub fn class_table(&self, coords: &[u64]) -> Result<Vec<u8>> {
        if coords.len() != self.dim {
            return Err(Error::Invalid("coordinate vector has the wrong length".into()));
        }
        let mut out = vec![0u8; self.n * self.n];
        for (c, t) in coords.iter().zip(&self.basis_tables) {
            let c = c % self.p;
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(t) {
                *o = ((*o as u64 + c * v as u64) % self.p) as u8;
            }
        }
        Ok(out)
    }
}

/// Restriction of a cocycle table on the parent to a subgroup (in the
/// subgroup's own indexing).
pub fn restrict_table(parent: &GroupTable, sub: &Subgroup, table: &[u8]) -> Result<Vec<u8>> {
    let np = parent.size();
    if table.len() != np * np {
        return Err(Error::Invalid("cocycle table has the wrong shape".into()));
    }
    let nh = sub.table.size();
    let mut out = vec![0u8; nh * nh];
    for i in 0..nh {
        for j in 0..nh {
            out[i * nh + j] = table[sub.embed[i] * np + sub.embed[j]];
        }
    }
    Ok(out)
}

/// Inflation of a cocycle table on the quotient to the parent.
pub fn inflate_table(parent: &GroupTable, q: &QuotientTable, table: &[u8]) -> Result<Vec<u8>> {
    let nq = q.table.size();
    if table.len() != nq * nq {
        return Err(Error::Invalid("cocycle table has the wrong shape".into()));
    }
    let np = parent.size();
    let mut out = vec![0u8; np * np];
    for x in 0..np {
        for y in 0..np {
            out[x * np + y] = table[q.proj[x] * nq + q.proj[y]];
        }
    }
    Ok(out)
}

/// Transgression of a homomorphism φ: H → F_p along the central extension
/// 1 → H → G → Q → 1: the class of `(q₁, q₂) ↦ φ(s(q₁) s(q₂) s(q₁q₂)⁻¹)`
/// for the section s sending each class to its stored representative (and
/// the identity class to the identity, so the result is normalized).
pub fn transgression(
    parent: &GroupTable,
    hsub: &Subgroup,
    q: &QuotientTable,
    phi: &[u64],
    p: u64,
) -> Result<Vec<u8>> {
    let nh = hsub.table.size();
    if phi.len() != nh {
        return Err(Error::Invalid("homomorphism values have the wrong length".into()));
    }
    for i in 0..nh {
        for j in 0..nh {
            if (phi[i] + phi[j]) % p != phi[hsub.table.mul(i, j)] % p {
                return Err(Error::Invalid("the supplied values are not a homomorphism".into()));
            }
        }
    }
    let nq = q.table.size();
    let mut section = q.reps.clone();
    section[q.proj[parent.identity()]] = parent.identity();
    let mut out = vec![0u8; nq * nq];
    for i in 0..nq {
        for j in 0..nq {
            let prod = parent.mul(section[i], section[j]);
            let e = parent.mul(prod, parent.inv(section[q.proj[prod]]));
            let h = hsub.locate[e];
            if h == usize::MAX {
                return Err(Error::Inconsistent(
                    "the section's factor set escapes the central subgroup".into(),
                ));
            }
            out[i * nq + j] = (phi[h] % p) as u8;
        }
    }
    verify_cocycle(&q.table, p, &out)?;
    Ok(out)
}

/// The commutator pairing of a class: `β(x, h) = c(x, h) − c(h, x)` on
/// G × H for a central subgroup H, returned as a |G| × |H| table.  Measures
/// the failure of lifts of H to stay central in the extension defined by c.
/// Bi-additivity in both arguments is verified.
pub fn theta_table(parent: &GroupTable, hsub: &Subgroup, p: u64, table: &[u8]) -> Result<Vec<u8>> {
    let n = parent.size();
    if table.len() != n * n {
        return Err(Error::Invalid("cocycle table has the wrong shape".into()));
    }
    if !parent.centralizes(&hsub.embed) {
        return Err(Error::Invalid("theta pairing needs a central subgroup".into()));
    }
    let nh = hsub.table.size();
    let mut out = vec![0u8; n * nh];
    for x in 0..n {
        for k in 0..nh {
            let h = hsub.embed[k];
            out[x * nh + k] =
                ((table[x * n + h] as u64 + p - table[h * n + x] as u64) % p) as u8;
        }
    }
    // bi-additivity, exhaustively (the groups this is used on are small)
    for x1 in 0..n {
        for x2 in 0..n {
            let x12 = parent.mul(x1, x2);
            for k in 0..nh {
                let lhs = out[x12 * nh + k] as u64;
                let rhs = (out[x1 * nh + k] as u64 + out[x2 * nh + k] as u64) % p;
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "theta pairing is not additive in the first argument at ({x1}, {x2}, {k})"
                    )));
                }
            }
        }
    }
    for x in 0..n {
        for k1 in 0..nh {
            for k2 in 0..nh {
                let k12 = hsub.table.mul(k1, k2);
                let lhs = out[x * nh + k12] as u64;
                let rhs = (out[x * nh + k1] as u64 + out[x * nh + k2] as u64) % p;
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "theta pairing is not additive in the second argument at ({x}, {k1}, {k2})"
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// The ranks certifying exactness of the low-degree sequence
/// `0 → Hom(Q) → Hom(G) → Hom(H) → H²(Q) → H²(G) → H²(H) × P(G, H)`
/// of a central extension.  Produced by [`hs_exactness`], which fails unless
/// every node is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HsReport {
    pub h1_q: usize,
    pub h1_g: usize,
    pub h1_h: usize,
    pub h2_q: usize,
    pub h2_g: usize,
    pub rank_inf1: usize,
    pub rank_res1: usize,
    pub rank_tra: usize,
    pub rank_inf2: usize,
    pub rank_res_theta: usize,
}

/// Verify exactness of the five-term (plus θ-extended) sequence of the
/// central extension `1 → H → G → G/H → 1` with trivial `F_p` coefficients.
/// `h_members` are the parent indices of the central subgroup.
pub fn hs_exactness(parent: &GroupTable, h_members: &[usize], p: u64, cap: usize) -> Result<HsReport> {
    if !parent.centralizes(h_members) {
        return Err(Error::Invalid("the subgroup is not central".into()));
    }
    let hsub = subgroup(parent, h_members, "H")?;
    let q = quotient(parent, h_members, "Q")?;
    let bg = hom_basis(parent, p)?;
    let bq = hom_basis(&q.table, p)?;
    let bh = hom_basis(&hsub.table, p)?;
    let sq = h2_brute(&q.table, p, cap)?;
    let sg = h2_brute(parent, p, cap)?;
    let cq = ClassSpace::new(&q.table, p, &sq)?;
    let cg = ClassSpace::new(parent, p, &sg)?;
    let (h1_q, h1_g, h1_h) = (bq.len(), bg.len(), bh.len());
    let (h2_q, h2_g) = (sq.dim, sg.dim);
    let n = parent.size();
    let nh = hsub.table.size();

    // deg-1 inflation: Hom(Q) → Hom(G), injective
    let mut ech = FpEchelon::new(p, n);
    for phi in &bq {
        let vals: Vec<u64> = (0..n).map(|x| phi[q.proj[x]]).collect();
        // composite with restriction to H is zero
        if hsub.embed.iter().any(|&h| vals[h] != 0) {
            return Err(Error::Inconsistent("an inflated homomorphism does not kill H".into()));
        }
        ech.offer(vals);
    }
    let rank_inf1 = ech.rank();
    if rank_inf1 != h1_q {
        return Err(Error::Inconsistent("deg-1 inflation is not injective".into()));
    }

    // deg-1 restriction: Hom(G) → Hom(H)
    let mut ech = FpEchelon::new(p, nh);
    let mut res1_rows = Vec::new();
    for phi in &bg {
        let vals: Vec<u64> = hsub.embed.iter().map(|&h| phi[h]).collect();
        res1_rows.push(vals.clone());
        ech.offer(vals);
    }
    let rank_res1 = ech.rank();
    if rank_inf1 != h1_g - rank_res1 {
        return Err(Error::Inconsistent(format!(
            "not exact at Hom(G): im(inf) = {rank_inf1}, ker(res) = {}",
            h1_g - rank_res1
        )));
    }

    // transgression: Hom(H) → H²(Q)
    let mut ech = FpEchelon::new(p, h2_q);
    for psi in &bh {
        let t = transgression(parent, &hsub, &q, psi, p)?;
        ech.offer(cq.coords(&t)?);
    }
    let rank_tra = ech.rank();
    // composite: restrictions of G-homomorphisms transgress to zero
    for vals in &res1_rows {
        let t = transgression(parent, &hsub, &q, vals, p)?;
        if !cq.is_zero_class(&t)? {
            return Err(Error::Inconsistent("a restricted homomorphism transgresses nontrivially".into()));
        }
    }
    if rank_res1 != h1_h - rank_tra {
        return Err(Error::Inconsistent(format!(
            "not exact at Hom(H): im(res) = {rank_res1}, ker(tra) = {}",
            h1_h - rank_tra
        )));
    }

    // deg-2 inflation: H²(Q) → H²(G)
    let mut ech = FpEchelon::new(p, h2_g);
    for i in 0..h2_q {
        let inf = inflate_table(parent, &q, sq.table(i))?;
        ech.offer(cg.coords(&inf)?);
    }
    let rank_inf2 = ech.rank();
    // composite: transgressions inflate to coboundaries
    for psi in &bh {
        let t = transgression(parent, &hsub, &q, psi, p)?;
        let inf = inflate_table(parent, &q, &t)?;
        if !cg.is_zero_class(&inf)? {
            return Err(Error::Inconsistent("a transgression survives inflation".into()));
        }
    }
    if rank_tra != h2_q - rank_inf2 {
        return Err(Error::Inconsistent(format!(
            "not exact at H²(Q): im(tra) = {rank_tra}, ker(inf) = {}",
            h2_q - rank_inf2
        )));
    }

    // restriction × theta out of H²(G)
    let hcob = coboundary_echelon(&hsub.table, p);
    let mut parts: Vec<Vec<u8>> = Vec::with_capacity(h2_g);
    for i in 0..h2_g {
        let mut res = restrict_table(parent, &hsub, sg.table(i))?;
        hcob.reduce(&mut res);
        let mut v = res;
        v.extend(theta_table(parent, &hsub, p, sg.table(i))?);
        parts.push(v);
    }
    let width = nh * nh + n * nh;
    let mut ech = FpEchelon::new(p, h2_g);
    for t in 0..width {
        let row: Vec<u64> = (0..h2_g).map(|i| parts[i][t] as u64).collect();
        if row.iter().any(|&v| v != 0) {
            ech.offer(row);
        }
    }
    let rank_res_theta = ech.rank();
    // composite: inflations restrict to zero tables and pair to zero
    for i in 0..h2_q {
        let inf = inflate_table(parent, &q, sq.table(i))?;
        let res = restrict_table(parent, &hsub, &inf)?;
        if res.iter().any(|&v| v != 0) {
            return Err(Error::Inconsistent("an inflated class has a nonzero restriction table".into()));
        }
        let th = theta_table(parent, &hsub, p, &inf)?;
        if th.iter().any(|&v| v != 0) {
            return Err(Error::Inconsistent("an inflated class has a nonzero theta pairing".into()));
        }
    }
    if rank_inf2 != h2_g - rank_res_theta {
        return Err(Error::Inconsistent(format!(
            "not exact at H²(G): im(inf) = {rank_inf2}, ker(res × θ) = {}",
            h2_g - rank_res_theta
        )));
    }

    Ok(HsReport {
        h1_q,
        h1_g,
        h1_h,
        h2_q,
        h2_g,
        rank_inf1,
        rank_res1,
        rank_tra,
        rank_inf2,
        rank_res_theta,
    })
}

// ---------------------------------------------------------------------------
// invariant classes under a group of automorphisms
// ---------------------------------------------------------------------------

/// A basis (in class coordinates) of an invariant or stable subspace.
pub struct InvariantClasses {
    pub dim: usize,
    pub coord_basis: Vec<Vec<u64>>,
}

/// The matrix (row-major, columns = images of basis classes) of the action
/// `c ↦ c ∘ (π⁻¹ × π⁻¹)` of an automorphism π on class coordinates.
pub fn conj_action_matrix(
    g: &GroupTable,
    cs: &ClassSpace,
    space: &CohomologySpace,
    perm: &[usize],
) -> Result<Vec<Vec<u64>>> {
    if !g.is_automorphism(perm) {
        return Err(Error::Invalid("the permutation is not an automorphism of the table".into()));
    }
    let n = g.size();
    let pinv = perm_inverse(perm);
    let dim = cs.dim();
    let mut mat = vec![vec![0u64; dim]; dim];
    for j in 0..dim {
        let t = space.table(j);
        let mut moved = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                moved[x * n + y] = t[pinv[x] * n + pinv[y]];
            }
        }
        let coords = cs.coords(&moved)?;
        for r in 0..dim {
            mat[r][j] = coords[r];
        }
    }
    Ok(mat)
}

/// Common fixed space of a family of matrices (intersection of the kernels
/// of A − I), as coordinate vectors.
fn fixed_space(p: u64, dim: usize, mats: &[Vec<Vec<u64>>]) -> Vec<Vec<u64>> {
    let mut ech = FpEchelon::new(p, dim);
    for a in mats {
        for r in 0..dim {
            let mut row = a[r].clone();
            row[r] = (row[r] + p - 1) % p;
            ech.offer(row);
        }
    }
    ech.kernel_basis()
}

/// Validate the averaging projector `(1/|D|) Σ_d A_d` against a claimed
/// fixed space: it must be idempotent, fix the space pointwise, and have
/// rank equal to the fixed dimension.  Requires p ∤ |D|.
fn check_averaging(p: u64, dim: usize, mats: &[Vec<Vec<u64>>], fixed: &[Vec<u64>]) -> Result<()> {
    let count = mats.len() as u64;
    let scale = inv_mod(count % p, p)
        .ok_or_else(|| Error::Invalid("averaging requires the acting order to be prime to p".into()))?;
    let mut proj = vec![vec![0u64; dim]; dim];
    for a in mats {
        for r in 0..dim {
            for c in 0..dim {
                proj[r][c] = (proj[r][c] + a[r][c]) % p;
            }
        }
    }
    for row in proj.iter_mut() {
        for v in row.iter_mut() {
            *v = *v * scale % p;
        }
    }
    // idempotence
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = 0u64;
            for k in 0..dim {
                acc = (acc + proj[r][k] * proj[k][c]) % p;
            }
            if acc != proj[r][c] {
                return Err(Error::Inconsistent("averaging operator is not idempotent".into()));
            }
        }
    }
    // fixes the fixed space pointwise
    for f in fixed {
        for r in 0..dim {
            let mut acc = 0u64;
            for k in 0..dim {
                acc = (acc + proj[r][k] * f[k]) % p;
            }
            if acc != f[r] % p {
                return Err(Error::Inconsistent("averaging operator moves a fixed vector".into()));
            }
        }
    }
    // rank equals the fixed dimension
    let mut ech = FpEchelon::new(p, dim);
    for r in 0..dim {
        ech.offer(proj[r].clone());
    }
    if ech.rank() != fixed.len() {
        return Err(Error::Inconsistent(format!(
            "averaging image has rank {}, fixed space has dimension {}",
            ech.rank(),
            fixed.len()
        )));
    }
    Ok(())
}

/// The subspace of H²(G, F_p) fixed by a family of automorphisms (given as
/// permutations of the element indices; duplicates are harmless).  When the
/// family size is prime to p, the averaging projector is computed as an
/// independent certificate of the answer.
pub fn invariant_subspace(
    g: &GroupTable,
    p: u64,
    space: &CohomologySpace,
    cs: &ClassSpace,
    perms: &[Vec<usize>],
) -> Result<InvariantClasses> {
    let dim = cs.dim();
    let mut mats = Vec::with_capacity(perms.len());
    for perm in perms {
        mats.push(conj_action_matrix(g, cs, space, perm)?);
    }
    let fixed = fixed_space(p, dim, &mats);
    if perms.len() as u64 % p != 0 {
        check_averaging(p, dim, &mats, &fixed)?;
    }
    Ok(InvariantClasses { dim: fixed.len(), coord_basis: fixed })
}

/// The action matrix of an automorphism on the polycyclic model: basis tails
/// are pulled back through the permutation without materializing tables.
pub fn pc_action_matrix(pc: &PcGroup, coh: &PcCohomology, perm: &[usize]) -> Result<Vec<Vec<u64>>> {
    if !pc.table.is_automorphism(perm) {
        return Err(Error::Invalid("the permutation is not an automorphism of the table".into()));
    }
    let pinv = perm_inverse(perm);
    let dim = coh.dim;
    let mut mat = vec![vec![0u64; dim]; dim];
    for (j, tails) in coh.basis.iter().enumerate() {
        let pulled = pc.tails_of_fn(|x, y| pc.cocycle_value(tails, pinv[x], pinv[y]))?;
        let coords = coh.coords(&pulled)?;
        for r in 0..dim {
            mat[r][j] = coords[r];
        }
    }
    Ok(mat)
}

/// Fixed classes in the polycyclic model, with the same averaging
/// cross-check as [`invariant_subspace`].
pub fn pc_invariant_subspace(
    pc: &PcGroup,
    coh: &PcCohomology,
    perms: &[Vec<usize>],
) -> Result<InvariantClasses> {
    let p = pc.pres.p();
    let dim = coh.dim;
    let mut mats = Vec::with_capacity(perms.len());
    for perm in perms {
        mats.push(pc_action_matrix(pc, coh, perm)?);
    }
    let fixed = fixed_space(p, dim, &mats);
    if perms.len() as u64 % p != 0 {
        check_averaging(p, dim, &mats, &fixed)?;
    }
    Ok(InvariantClasses { dim: fixed.len(), coord_basis: fixed })
}

// ---------------------------------------------------------------------------
// stable classes
// ---------------------------------------------------------------------------

/// Stable classes of a subgroup P inside G, with the cohomology space of P
/// included.  A class x is stable when, for every double coset PgP, its
/// restriction to `H_g = P ∩ gPg⁻¹` agrees with the conjugated restriction
/// `(h₁, h₂) ↦ x(g⁻¹h₁g, g⁻¹h₂g)` up to a coboundary on H_g.  For P a Sylow
/// p-subgroup of G, the stable classes are isomorphic to H²(G, F_p).
pub struct StableClasses {
    pub space: CohomologySpace,
    pub dim: usize,
    pub coord_basis: Vec<Vec<u64>>,
    pub double_cosets: usize,
}

pub fn stable_subspace(
    big: &GroupTable,
    p_members: &[usize],
    p: u64,
    cap: usize,
) -> Result<StableClasses> {
    let psub = subgroup(big, p_members, "P")?;
    let space = h2_brute(&psub.table, p, cap)?;
    let dim = space.dim;
    let np = psub.table.size();
    if dim == 0 {
        return Ok(StableClasses { space, dim: 0, coord_basis: vec![], double_cosets: 0 });
    }
    // double-coset representatives by orbit sweep under both-sided
    // multiplication by P-generators
    let pgens: Vec<usize> = greedy_generators(&psub.table)
        .into_iter()
        .map(|i| psub.embed[i])
        .collect();
    let nb = big.size();
    let mut visited = vec![false; nb];
    let mut reps = Vec::new();
    for start in 0..nb {
        if visited[start] {
            continue;
        }
        reps.push(start);
        visited[start] = true;
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for &a in &pgens {
                for y in [big.mul(a, x), big.mul(x, a)] {
                    if !visited[y] {
                        visited[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
    }
    let double_cosets = reps.len();

    let mut cond = FpEchelon::new(p, dim);
    'reps: for &g in &reps {
        let ginv = big.inv(g);
        // H_g in P's indexing, with the conjugate index alongside
        let mut members = Vec::new();
        let mut conj_to = Vec::new();
        for h in 0..np {
            let image = big.mul(big.mul(ginv, psub.embed[h]), g);
            let k = psub.locate[image];
            if k != usize::MAX {
                members.push(h);
                conj_to.push(k);
            }
        }
        let hsub = subgroup(&psub.table, &members, "H_g")?;
        let nh = hsub.table.size();
        // conj_to was collected in the same ascending order subgroup() uses
        debug_assert_eq!(hsub.embed, members);
        let hcob = coboundary_echelon(&hsub.table, p);
        let mut reduced = Vec::with_capacity(dim);
        for i in 0..dim {
            let t = space.table(i);
            let mut diff = vec![0u8; nh * nh];
            for a in 0..nh {
                for b in 0..nh {
                    let direct = t[hsub.embed[a] * np + hsub.embed[b]] as u64;
                    let conj = t[conj_to[a] * np + conj_to[b]] as u64;
                    diff[a * nh + b] = ((direct + p - conj) % p) as u8;
                }
            }
            hcob.reduce(&mut diff);
            reduced.push(diff);
        }
        for t in 0..nh * nh {
            let row: Vec<u64> = (0..dim).map(|i| reduced[i][t] as u64).collect();
            if row.iter().any(|&v| v != 0) {
                cond.offer(row);
                if cond.rank() == dim {
                    break 'reps;
                }
            }
        }
    }
    let coord_basis = cond.kernel_basis();
    Ok(StableClasses { space, dim: coord_basis.len(), coord_basis, double_cosets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::brute::BRUTE_CAP;
    use crate::cohomology::group::{cyclic, g1, g2, MatrixGroup};
    use crate::cohomology::pc::{h2_pc, PcGroup};
    use crate::structures::Partition;

    #[test]
    fn hs_exactness_cyclic_tower() {
        // 1 → 3Z/9 → Z/9 → Z/3 → 1
        let g = cyclic(9).unwrap();
        let report = hs_exactness(&g, &[0, 3, 6], 3, BRUTE_CAP).unwrap();
        assert_eq!(
            report,
            HsReport {
                h1_q: 1,
                h1_g: 1,
                h1_h: 1,
                h2_q: 1,
                h2_g: 1,
                rank_inf1: 1,
                rank_res1: 0,
                rank_tra: 1,
                rank_inf2: 0,
                rank_res_theta: 1,
            }
        );
    }

    #[test]
    fn hs_exactness_sylow_center_step() {
        // P of λ = (2,1) at p = 3, H = derived subgroup = center step
        let partition = Partition::new(&[2, 1]).unwrap();
        let group = MatrixGroup::sylow(&partition, 3, 1 << 20).unwrap();
        let derived = group.table.commutator_subgroup();
        assert_eq!(derived.len(), 3);
        let report = hs_exactness(&group.table, &derived, 3, BRUTE_CAP).unwrap();
        assert_eq!(report.h2_g, 4);
        assert_eq!(report.h2_q, 3); // quotient is (Z/3)²
        assert_eq!(report.rank_inf2, 2);
        // θ genuinely contributes: restriction alone has rank ≤ 1
        assert_eq!(report.rank_res_theta, 2);
    }

    #[test]
    fn invariant_classes_of_small_coordinate_groups() {
        let c1 = g1(3).unwrap();
        let space = h2_brute(&c1.table, 3, BRUTE_CAP).unwrap();
        assert_eq!(space.dim, 3);
        let cs = ClassSpace::new(&c1.table, 3, &space).unwrap();
        let perms = c1.torus_permutations().unwrap();
        assert_eq!(perms.len(), 4);
        let inv = invariant_subspace(&c1.table, 3, &space, &cs, &perms).unwrap();
        assert_eq!(inv.dim, 1);
        // the invariant class is not a coboundary
        let table = cs.class_table(&inv.coord_basis[0]).unwrap();
        assert!(!cs.is_zero_class(&table).unwrap());

        let c2 = g2(3).unwrap();
        let space = h2_brute(&c2.table, 3, BRUTE_CAP).unwrap();
        let cs = ClassSpace::new(&c2.table, 3, &space).unwrap();
        let perms = c2.torus_permutations().unwrap();
        let inv = invariant_subspace(&c2.table, 3, &space, &cs, &perms).unwrap();
        assert_eq!(inv.dim, 0);
    }

    #[test]
    fn pc_invariants_match_brute_on_g1() {
        let c1 = g1(3).unwrap();
        let gens = vec![c1.encode(&[1, 0]), c1.encode(&[0, 1])];
        let pc = PcGroup::from_table(&c1.table, 3, &gens).unwrap();
        let coh = h2_pc(&pc.pres).unwrap();
        assert_eq!(coh.dim, 3);
        let perms = c1.torus_permutations().unwrap();
        let inv = pc_invariant_subspace(&pc, &coh, &perms).unwrap();
        assert_eq!(inv.dim, 1);
    }

    #[test]
    fn stable_classes_detect_fusion() {
        // GL₂(F₃): the Sylow 3-subgroup is Z/3 and a normalizing element
        // inverts it, so no nonzero class is stable — matching the direct
        // brute-force H²(GL₂(F₃), F₃) = 0.
        let partition = Partition::new(&[1, 1]).unwrap();
        let full = MatrixGroup::full(&partition, 3, 1 << 20).unwrap();
        assert_eq!(full.table.size(), 48);
        let members: Vec<usize> = (0..full.table.size())
            .filter(|&i| full.elements[i].is_unipotent_mod_p())
            .collect();
        assert_eq!(members.len(), 3);
        let stable = stable_subspace(&full.table, &members, 3, BRUTE_CAP).unwrap();
        assert_eq!(stable.space.dim, 1);
        assert_eq!(stable.dim, 0);
        assert!(stable.double_cosets >= 2);
        let direct = h2_brute(&full.table, 3, BRUTE_CAP).unwrap();
        assert_eq!(direct.dim, 0);
    }

    #[test]
    fn stable_classes_trivial_fusion() {
        // P inside itself: only the trivial double coset, everything stable
        let partition = Partition::new(&[2, 1]).unwrap();
        let group = MatrixGroup::sylow(&partition, 3, 1 << 20).unwrap();
        let all: Vec<usize> = (0..group.table.size()).collect();
        let stable = stable_subspace(&group.table, &all, 3, BRUTE_CAP).unwrap();
        assert_eq!(stable.space.dim, 4);
        assert_eq!(stable.dim, 4);
    }
}
