//! Brute-force cohomology of an explicit finite group with trivial `F_p`
//! coefficients.
//!
//! Degree one is the p-rank of the abelianization, with explicit
//! homomorphisms available from [`hom_basis`].  Degree two goes through the
//! coinduced-module shift: a normalized 2-cocycle `c` is the same thing as a
//! crossed homomorphism `F: G → M` into `M = Maps(G, F_p)/constants` via
//! `F(g)(x) = c(x, g)`, and a crossed homomorphism is determined by its
//! values on a generating set.  Fixing a breadth-first spanning tree of the
//! Cayley graph, every non-tree edge contributes one vector equation; the
//! streamed system has `d·(|G|−1)` unknowns instead of `(|G|−1)²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp8::Echelon8;
use super::group::{abelian_p_rank, quotient, GroupTable};
use crate::linalg::FpSystem;
use crate::{Error, Result};

/// Largest group order accepted by [`h2_brute`]; beyond this the polycyclic
/// engine is the intended tool.
pub const BRUTE_CAP: usize = 300;

/// Largest group order accepted by the independent naive cross-check.
pub const NAIVE_CAP: usize = 16;

/// Cocycle identities are verified exhaustively up to this order, sampled
/// (fixed seed, ≥ 10⁴ triples) above it.
pub const EXHAUSTIVE_VERIFY: usize = 30;

/// dim H¹(G, F_p) with trivial action: the p-rank of G^{ab}.
pub fn h1_dim(g: &GroupTable, p: u64) -> Result<usize> {
    let derived = g.commutator_subgroup();
    let ab = quotient(g, &derived, "abelianization")?;
    Ok(abelian_p_rank(&ab.table, p)? as usize)
}

/// Breadth-first exploration of the Cayley graph on a generating set
/// (right multiplication).
struct Bfs {
    gens: Vec<usize>,
    /// visit order; starts with the identity
    order: Vec<usize>,
    /// tree[y] = (x, gen index a) with y = x·a, for y ≠ identity
    tree: Vec<Option<(usize, usize)>>,
    /// edges (x, gen index a, y = x·a) that closed a cycle
    nontree: Vec<(usize, usize, usize)>,
}

fn bfs(g: &GroupTable, gens: &[usize]) -> Result<Bfs> {
    let n = g.size();
    let mut visited = vec![false; n];
    let mut tree = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut nontree = Vec::new();
    visited[g.identity()] = true;
    order.push(g.identity());
    let mut head = 0usize;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (ai, &a) in gens.iter().enumerate() {
            let y = g.mul(x, a);
            if visited[y] {
                nontree.push((x, ai, y));
            } else {
                visited[y] = true;
                tree[y] = Some((x, ai));
                order.push(y);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Invalid("the supplied elements do not generate the group".into()));
    }
    Ok(Bfs { gens: gens.to_vec(), order, tree, nontree })
}

/// A small generating set chosen greedily: each step adjoins the element
/// whose closure with the current set grows the most (ties: least index).
/// For the groups handled here this realizes the minimal count.
pub fn greedy_generators(g: &GroupTable) -> Vec<usize> {
    let n = g.size();
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = g.closure(&gens);
    while closed.len() < n {
        let mut member = vec![false; n];
        for &x in &closed {
            member[x] = true;
        }
        let mut best: Option<(usize, usize)> = None; // (gain, candidate)
        for cand in 0..n {
            if member[cand] {
                continue;
            }
            gens.push(cand);
            let grown = g.closure(&gens).len();
            gens.pop();
            let better = match best {
                None => true,
                Some((gain, _)) => grown > gain,
            };
            if better {
                best = Some((grown, cand));
                if grown == n {
                    break;
                }
            }
        }
        let (_, cand) = best.expect("proper subgroup has a complement");
        gens.push(cand);
        closed = g.closure(&gens);
    }
    gens
}

/// Explicit basis of Hom(G, F_p): value vectors of length |G|.
pub fn hom_basis(g: &GroupTable, p: u64) -> Result<Vec<Vec<u64>>> {
    let n = g.size();
    if n == 1 {
        return Ok(vec![]);
    }
    let gens = greedy_generators(g);
    let d = gens.len();
    let walk = bfs(g, &gens)?;
    // symbolic values over the d unknowns f(a_i)
    let mut sym = vec![vec![0u8; d]; n];
    for &y in walk.order.iter().skip(1) {
        let (x, ai) = walk.tree[y].expect("non-root has a tree edge");
        let mut v = sym[x].clone();
        v[ai] = ((v[ai] as u64 + 1) % p) as u8;
        sym[y] = v;
    }
    let mut ech = Echelon8::new(p, d);
    for &(x, ai, y) in &walk.nontree {
        let mut row: Vec<u8> = sym[x].clone();
        row[ai] = ((row[ai] as u64 + 1) % p) as u8;
        for (r, &s) in row.iter_mut().zip(&sym[y]) {
            *r = ((*r as u64 + p - s as u64) % p) as u8;
        }
        ech.offer(row);
    }
    let kernel = ech.kernel_basis();
    let expect = h1_dim(g, p)?;
    if kernel.len() != expect {
        return Err(Error::Inconsistent(format!(
            "Hom(G, F_p) dimension mismatch: solved {} vs abelianization {}",
            kernel.len(),
            expect
        )));
    }
    let mut out = Vec::with_capacity(kernel.len());
    for u in kernel {
        let mut values = vec![0u64; n];
        for x in 0..n {
            let mut acc = 0u64;
            for (i, &c) in sym[x].iter().enumerate() {
                acc += c as u64 * u[i] as u64;
            }
            values[x] = acc % p;
        }
        out.push(values);
    }
    Ok(out)
}

/// A basis of H²(G, F_p) (trivial action) together with the dimension
/// bookkeeping of the normalized cocycle model.
pub struct CohomologySpace {
    pub p: u64,
    pub group_size: usize,
    pub h1_dim: usize,
    /// dim of the space of normalized 2-cocycles
    pub z2_dim: usize,
    /// dim of the space of normalized 2-coboundaries
    pub b2_dim: usize,
    pub dim: usize,
    /// normalized representative tables, row-major: entry `x·|G| + y` is
    /// `c(x, y)`
    pub basis: Vec<Vec<u8>>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self, i: usize) -> &[u8] {
        &self.basis[i]
    }
}

#[inline]
fn cidx(identity: usize, z: usize) -> usize {
    if z < identity {
        z
    } else {
        z - 1
    }
}

/// dim H²(G, F_p) with explicit representative cocycles, via the streamed
/// crossed-homomorphism system.  Groups larger than `cap` are refused —
/// use the polycyclic engine (`h2_pc`) for those.
pub fn h2_brute(g: &GroupTable, p: u64, cap: usize) -> Result<CohomologySpace> {
    let n = g.size();
    if n > cap {
        return Err(Error::CapExceeded { predicted: n as u128, cap: cap as u128 });
    }
    let h1 = h1_dim(g, p)?;
    if n == 1 {
        return Ok(CohomologySpace { p, group_size: 1, h1_dim: 0, z2_dim: 0, b2_dim: 0, dim: 0, basis: vec![] });
    }
    let id = g.identity();
    let gens = greedy_generators(g);
    let d = gens.len();
    let m = n - 1; // dimension of Maps(G,F_p)/constants in the normalized model
    let width = d * m;
    let walk = bfs(g, &gens)?;

    // Symbolic columns: for each element y, the value F(y) ∈ M is a linear
    // form in the unknowns; block a, coordinate z≠1 has flat index
    // a·m + cidx(z).  Stored as one arena slab per element.
    let mut columns: Vec<Vec<u8>> = vec![Vec::new(); n];
    columns[id] = vec![0u8; m * width];
    for &y in walk.order.iter().skip(1) {
        let (x, ai) = walk.tree[y].expect("non-root has a tree edge");
        let mut col = columns[x].clone();
        // F(x·a)(z) = F(x)(z) + c(z·x, a) − c(x, a)
        for z in 0..n {
            if z == id {
                continue;
            }
            let row = &mut col[cidx(id, z) * width..(cidx(id, z) + 1) * width];
            let zx = g.mul(z, x);
            if zx != id {
                let u = ai * m + cidx(id, zx);
                row[u] = ((row[u] as u64 + 1) % p) as u8;
            }
            if x != id {
                let u = ai * m + cidx(id, x);
                row[u] = ((row[u] as u64 + p - 1) % p) as u8;
            }
        }
        columns[y] = col;
    }

    let mut ech = Echelon8::new(p, width);
    for &(x, ai, y) in &walk.nontree {
        for z in 0..n {
            if z == id {
                continue;
            }
            let zc = cidx(id, z);
            let left = &columns[x][zc * width..(zc + 1) * width];
            let right = &columns[y][zc * width..(zc + 1) * width];
            let mut row: Vec<u8> = Vec::with_capacity(width);
            for (l, r) in left.iter().zip(right) {
                row.push(((*l as u64 + p - *r as u64) % p) as u8);
            }
            let zx = g.mul(z, x);
            if zx != id {
                let u = ai * m + cidx(id, zx);
                row[u] = ((row[u] as u64 + 1) % p) as u8;
            }
            if x != id {
                let u = ai * m + cidx(id, x);
                row[u] = ((row[u] as u64 + p - 1) % p) as u8;
            }
            ech.offer(row);
        }
    }
    drop(columns);

    let z2 = width - ech.rank();
    let b2 = m - h1;
    if z2 < b2 {
        return Err(Error::Inconsistent("cocycle space smaller than coboundary space".into()));
    }
    let dim = z2 - b2;

    // Coboundary image in the unknown space: for φ = δ_w, the crossed
    // homomorphism has F(a)(z) = [z·a = w] − [a = w] − [z = w].
    let mut b_ech = Echelon8::new(p, width);
    for w in 0..n {
        if w == id {
            continue;
        }
        let mut row = vec![0u8; width];
        for (ai, &a) in walk.gens.iter().enumerate() {
            for z in 0..n {
                if z == id {
                    continue;
                }
                let mut v = 0u64;
                if g.mul(z, a) == w {
                    v += 1;
                }
                if a == w {
                    v += p - 1;
                }
                if z == w {
                    v += p - 1;
                }
                row[ai * m + cidx(id, z)] = (v % p) as u8;
            }
        }
        b_ech.offer(row);
    }
    if b_ech.rank() != b2 {
        return Err(Error::Inconsistent(format!(
            "coboundary rank {} does not match |G|−1−h1 = {}",
            b_ech.rank(),
            b2
        )));
    }

    // Pick dim independent classes among the kernel vectors, reduced modulo
    // the coboundary image.
    let kernel = ech.kernel_basis();
    if kernel.len() != z2 {
        return Err(Error::Inconsistent("kernel dimension mismatch".into()));
    }
    let mut tracker = Echelon8::new(p, width);
    let mut reps: Vec<Vec<u8>> = Vec::new();
    for u in kernel {
        if reps.len() == dim {
            break;
        }
        let mut red = u.clone();
        b_ech.reduce(&mut red);
        if red.iter().all(|&x| x == 0) {
            continue;
        }
        if tracker.offer(red.clone()) {
            reps.push(red);
        }
    }
    if reps.len() != dim {
        return Err(Error::Inconsistent(format!(
            "found {} independent classes, expected {}",
            reps.len(),
            dim
        )));
    }

    // Materialize each representative as a full normalized table by running
    // the tree recursion numerically.
    let mut basis = Vec::with_capacity(dim);
    for u in &reps {
        let table = materialize(g, &walk, u, p);
        verify_cocycle(g, p, &table)?;
        basis.push(table);
    }
    Ok(CohomologySpace { p, group_size: n, h1_dim: h1, z2_dim: z2, b2_dim: b2, dim, basis })
}

/// Rebuild the full normalized table c(x, y) from an assignment `u` to the
/// generator columns.
fn materialize(g: &GroupTable, walk: &Bfs, u: &[u8], p: u64) -> Vec<u8> {
    let n = g.size();
    let id = g.identity();
    let m = n - 1;
    let mut col: Vec<Vec<u8>> = vec![vec![0u8; m]; n];
    for &y in walk.order.iter().skip(1) {
        let (x, ai) = walk.tree[y].expect("non-root has a tree edge");
        let mut v = col[x].clone();
        for z in 0..n {
            if z == id {
                continue;
            }
            let mut acc = v[cidx(id, z)] as u64;
            let zx = g.mul(z, x);
            if zx != id {
                acc += u[ai * m + cidx(id, zx)] as u64;
            }
            if x != id {
                acc += p - u[ai * m + cidx(id, x)] as u64;
            }
            v[cidx(id, z)] = (acc % p) as u8;
        }
        col[y] = v;
    }
    let mut table = vec![0u8; n * n];
    for y in 0..n {
        if y == id {
            continue;
        }
        for z in 0..n {
            if z == id {
                continue;
            }
            table[z * n + y] = col[y][cidx(id, z)];
        }
    }
    table
}

/// Check the 2-cocycle identity
/// `c(x,y) + c(xy,z) = c(y,z) + c(x,yz)`
/// (exhaustively for small groups, sampled with a fixed seed otherwise).
pub fn verify_cocycle(g: &GroupTable, p: u64, table: &[u8]) -> Result<()> {
    let n = g.size();
    if table.len() != n * n {
        return Err(Error::Invalid("cocycle table has the wrong shape".into()));
    }
    let defect = |x: usize, y: usize, z: usize| -> u64 {
        let a = table[x * n + y] as u64 + table[g.mul(x, y) * n + z] as u64;
        let b = table[y * n + z] as u64 + table[x * n + g.mul(y, z)] as u64;
        (a + 2 * p * p - b) % p
    };
    if n <= EXHAUSTIVE_VERIFY {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if defect(x, y, z) != 0 {
                        return Err(Error::Inconsistent(format!(
                            "cocycle identity fails at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0C);
        for _ in 0..10_000 {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if defect(x, y, z) != 0 {
                return Err(Error::Inconsistent(format!("cocycle identity fails at ({x}, {y}, {z})")));
            }
        }
    }
    Ok(())
}

/// The coboundary `∂φ(x,y) = φ(x) + φ(y) − φ(xy)`.
pub fn coboundary_table(g: &GroupTable, p: u64, phi: &[u64]) -> Vec<u8> {
    let n = g.size();
    let mut out = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            out[x * n + y] = ((phi[x] + phi[y] + p - phi[g.mul(x, y)] % p) % p) as u8;
        }
    }
    out
}

/// Decide whether a 2-cocycle table is a coboundary; returns the witness
/// 1-cochain φ with `∂φ = c` when it is.
pub fn is_coboundary(g: &GroupTable, p: u64, table: &[u8]) -> Result<Option<Vec<u64>>> {
    let n = g.size();
    if table.len() != n * n {
        return Err(Error::Invalid("cocycle table has the wrong shape".into()));
    }
    let mut sys = FpSystem::new(p, n);
    let mut coeffs = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            coeffs.iter_mut().for_each(|c| *c = 0);
            coeffs[x] = (coeffs[x] + 1) % p;
            coeffs[y] = (coeffs[y] + 1) % p;
            let xy = g.mul(x, y);
            coeffs[xy] = (coeffs[xy] + p - 1) % p;
            sys.push(&coeffs, table[x * n + y] as u64);
        }
    }
    Ok(sys.particular_solution())
}

/// Normalize a cocycle table in its class: subtract the constant `c(1,1)`.
pub fn normalize_cocycle(g: &GroupTable, p: u64, table: &[u8]) -> Result<Vec<u8>> {
    let n = g.size();
    let id = g.identity();
    let c0 = table[id * n + id] as u64;
    for t in 0..n {
        if table[id * n + t] as u64 != c0 || table[t * n + id] as u64 != c0 {
            return Err(Error::Invalid("table violates the border pattern of a 2-cocycle".into()));
        }
    }
    Ok(table.iter().map(|&v| ((v as u64 + p - c0) % p) as u8).collect())
}

/// Independent naive engine for tiny groups: full normalized table unknowns,
/// every cocycle identity as a row.  Returns dim H².
pub fn h2_brute_naive(g: &GroupTable, p: u64) -> Result<usize> {
    let n = g.size();
    if n > NAIVE_CAP {
        return Err(Error::CapExceeded { predicted: n as u128, cap: NAIVE_CAP as u128 });
    }
    if n == 1 {
        return Ok(0);
    }
    let id = g.identity();
    let m = n - 1;
    let unknown = |x: usize, y: usize| -> Option<usize> {
        if x == id || y == id {
            None
        } else {
            Some(cidx(id, x) * m + cidx(id, y))
        }
    };
    let mut ech = Echelon8::new(p, m * m);
    let mut row = vec![0u8; m * m];
    for x in 0..n {
        if x == id {
            continue;
        }
        for y in 0..n {
            if y == id {
                continue;
            }
            for z in 0..n {
                if z == id {
                    continue;
                }
                row.iter_mut().for_each(|v| *v = 0);
                let mut bump = |u: Option<usize>, s: u64| {
                    if let Some(i) = u {
                        row[i] = ((row[i] as u64 + s) % p) as u8;
                    }
                };
                bump(unknown(x, y), 1);
                bump(unknown(g.mul(x, y), z), 1);
                bump(unknown(y, z), p - 1);
                bump(unknown(x, g.mul(y, z)), p - 1);
                ech.offer(row.clone());
            }
        }
    }
    let z2 = m * m - ech.rank();
    let b2 = m - h1_dim(g, p)?;
    Ok(z2 - b2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::group::{cyclic, g1, g2, product, MatrixGroup};
    use crate::structures::Partition;

    #[test]
    fn h1_dims() {
        assert_eq!(h1_dim(&cyclic(9).unwrap(), 3).unwrap(), 1);
        let v = product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(h1_dim(&v, 3).unwrap(), 2);
        let partition = Partition::new(&[2, 1]).unwrap();
        let sylow = MatrixGroup::sylow(&partition, 3, 1 << 20).unwrap();
        // abelianized Sylow has rank |T| = 2
        assert_eq!(h1_dim(&sylow.table, 3).unwrap(), 2);
        let full = MatrixGroup::full(&partition, 3, 1 << 20).unwrap();
        // G^{ab} ≅ ((Z/3)^*)², of order 4: no p-part
        assert_eq!(h1_dim(&full.table, 3).unwrap(), 0);
    }

    #[test]
    fn hom_basis_matches_h1() {
        let v = product(&cyclic(3).unwrap(), &cyclic(9).unwrap()).unwrap();
        let basis = hom_basis(&v, 3).unwrap();
        assert_eq!(basis.len(), 2);
        for f in &basis {
            for x in 0..v.size() {
                for y in 0..v.size() {
                    assert_eq!((f[x] + f[y]) % 3, f[v.mul(x, y)]);
                }
            }
        }
    }

    #[test]
    fn h2_of_cyclic_groups() {
        for (p, r) in [(3u64, 1u32), (3, 2), (5, 1), (2, 3)] {
            let n = (p as usize).pow(r);
            let g = cyclic(n as u64).unwrap();
            let space = h2_brute(&g, p, BRUTE_CAP).unwrap();
            assert_eq!(space.dim, 1, "H² of Z/{n} must be a line");
            assert_eq!(space.z2_dim - space.b2_dim, 1);
            // representative is not a coboundary
            assert!(is_coboundary(&g, p, &space.basis[0]).unwrap().is_none());
        }
    }

    #[test]
    fn h2_of_elementary_abelian() {
        let v = product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        let space = h2_brute(&v, 3, BRUTE_CAP).unwrap();
        assert_eq!(space.dim, 3);
        assert_eq!(h2_brute_naive(&v, 3).unwrap(), 3);
        assert_eq!(h2_brute_naive(&cyclic(9).unwrap(), 3).unwrap(), 1);
        assert_eq!(h2_brute_naive(&cyclic(8).unwrap(), 2).unwrap(), 1);
        // mixed type: Z/4 × Z/2 over F_2 has h1 = 2, h2 = 3
        let w = product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(h2_brute(&w, 2, BRUTE_CAP).unwrap().dim, 3);
        assert_eq!(h2_brute_naive(&w, 2).unwrap(), 3);
    }

    #[test]
    fn h2_of_g1_and_g2() {
        let c1 = g1(3).unwrap();
        assert_eq!(h2_brute(&c1.table, 3, BRUTE_CAP).unwrap().dim, 3);
        let c2 = g2(3).unwrap();
        let space = h2_brute(&c2.table, 3, BRUTE_CAP).unwrap();
        // dimension is certified internally; representatives verified
        assert!(space.dim >= 1);
        assert_eq!(space.group_size, 81);
    }

    #[test]
    fn coboundary_solver_roundtrip() {
        let g = cyclic(9).unwrap();
        let phi: Vec<u64> = (0..9).map(|i| (i as u64 * i as u64 + 1) % 3).collect();
        let table = coboundary_table(&g, 3, &phi);
        let witness = is_coboundary(&g, 3, &table).unwrap().expect("is a coboundary");
        let again = coboundary_table(&g, 3, &witness);
        assert_eq!(table, again);
    }

    #[test]
    fn cap_is_enforced() {
        let g = cyclic(9).unwrap();
        assert!(h2_brute(&g, 3, 8).is_err());
    }
}
