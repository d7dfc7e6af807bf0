//! Independent brute-force oracles.
//!
//! Every numeric expectation used elsewhere in the test-suite is recomputed
//! here from first principles with plain std code — no imports from the
//! library under test. If one of these fails, the frozen constants are wrong,
//! not the engines.

use std::collections::{HashMap, HashSet, VecDeque};

// ---------------------------------------------------------------------------
// tiny helpers (deliberately duplicated; this file must not use the library)
// ---------------------------------------------------------------------------

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(((s0 % m as i128 + m as i128) % m as i128) as u64)
}

/// Rank of a dense matrix over F_p (rows of length `cols`).
fn fp_rank(p: u64, cols: usize, rows: &[Vec<u64>]) -> usize {
    let mut mat: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..mat.len()).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = inv_mod(mat[rank][col], p).unwrap();
        for c in col..cols {
            mat[rank][c] = mat[rank][c] * inv % p;
        }
        for r in 0..mat.len() {
            if r != rank && mat[r][col] != 0 {
                let f = mat[r][col];
                for c in col..cols {
                    mat[r][c] = (mat[r][c] + p * p - f * mat[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// p-adic digits
// ---------------------------------------------------------------------------

#[test]
fn oracle_padic_digits_17_base_3() {
    // 17 = 2 + 2*3 + 1*9
    let (mut x, mut digits) = (17u64, Vec::new());
    for _ in 0..3 {
        digits.push(x % 3);
        x /= 3;
    }
    assert_eq!(digits, vec![2, 2, 1]);
}

// ---------------------------------------------------------------------------
// residue systems mod 9 (desk examples, exhaustive)
// ---------------------------------------------------------------------------

#[test]
fn oracle_residue_systems_mod_9() {
    let xs: Vec<u64> = (0..9).filter(|&x| 3 * x % 9 == 6).collect();
    assert_eq!(xs, vec![2, 5, 8]);

    let xs: Vec<u64> = (0..9).filter(|&x| 2 * x % 9 == 1).collect();
    assert_eq!(xs, vec![5]);

    // {x + y ≡ 1, 3y ≡ 3}: exactly 3 solutions, not 9 (the first equation
    // alone has 9).
    let mut sols = Vec::new();
    for x in 0..9u64 {
        for y in 0..9u64 {
            if (x + y) % 9 == 1 && 3 * y % 9 == 3 {
                sols.push((x, y));
            }
        }
    }
    assert_eq!(sols.len(), 3);
    let first_eq_only = (0..9u64)
        .flat_map(|x| (0..9u64).map(move |y| (x, y)))
        .filter(|&(x, y)| (x + y) % 9 == 1)
        .count();
    assert_eq!(first_eq_only, 9);
}

// ---------------------------------------------------------------------------
// full 2-cocycle system for G = Z/3 with F_3 coefficients
// ---------------------------------------------------------------------------

#[test]
fn oracle_cocycle_space_z3() {
    // unnormalised tables c: G×G → F_3, 9 unknowns, trivial action
    let p = 3u64;
    let n = 3usize;
    let idx = |x: usize, y: usize| x * n + y;
    let mut z2 = 0u64;
    let mut cocycles = Vec::new();
    for mask in 0..3u64.pow(9) {
        let mut c = [0u64; 9];
        let mut m = mask;
        for slot in c.iter_mut() {
            *slot = m % 3;
            m /= 3;
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    (c[idx(y, z)] + c[idx((x + y) % n, z)] * 2 + c[idx(x, (y + z) % n)]
                        + c[idx(x, y)] * 2)
                        % p
                        == 0
                })
            })
        });
        if ok {
            z2 += 1;
            cocycles.push(c);
        }
    }
    // dim Z^2 = 3
    assert_eq!(z2, 27);

    // coboundaries: ∂v(x,y) = v(x) + v(y) - v(xy) over all 27 one-cochains
    let mut b2 = HashSet::new();
    for mask in 0..27u64 {
        let v = [mask % 3, mask / 3 % 3, mask / 9 % 3];
        let mut c = [0u64; 9];
        for x in 0..n {
            for y in 0..n {
                c[idx(x, y)] = (v[x] + v[y] + 2 * v[(x + y) % n]) % p;
            }
        }
        b2.insert(c);
    }
    // dim B^2 = 2, dim H^2 = 1
    assert_eq!(b2.len(), 9);
    assert_eq!(z2 / b2.len() as u64, 3); // |H^2| = 3
}

// ---------------------------------------------------------------------------
// coordinate index sets S and T from the raw definitions
// ---------------------------------------------------------------------------

/// Enumerate the free-coordinate set S\{∅} and the commutator support set T
/// for a partition given as (part, multiplicity) pairs, straight from the
/// definitions.
fn index_sets(parts: &[(u32, u32)]) -> (Vec<(u32, u32, u32, u32, u32)>, Vec<(u32, u32, u32, u32, u32)>) {
    let k = parts.len() as u32;
    let lambda = |m: u32| parts[(m - 1) as usize].0;
    let rho = |m: u32| parts[(m - 1) as usize].1;
    let mut s = Vec::new();
    for m in 1..=k {
        for n in 1..=k {
            for i in 1..=rho(m) {
                for j in 1..=rho(n) {
                    for l in 0..lambda(m) {
                        // S'' exclusions: diagonal blocks need l ≥ 1 on and
                        // above the diagonal; upper blocks need l ≥ λm − λn.
                        let excluded = if m == n {
                            l == 0 && i <= j
                        } else if m < n {
                            l < lambda(m) - lambda(n)
                        } else {
                            false
                        };
                        if !excluded {
                            s.push((l, i, j, m, n));
                        }
                    }
                }
            }
        }
    }
    // block offsets for positions
    let offset = |m: u32| -> u32 { (1..m).map(&rho).sum() };
    let pos = |&(_, i, j, m, n): &(u32, u32, u32, u32, u32)| -> (u32, u32) {
        (offset(m) + i, offset(n) + j)
    };
    let mut t = Vec::new();
    if k > 1 {
        for c in &s {
            let (x, y) = pos(c);
            if c.0 == 0 && x == y + 1 {
                t.push(*c);
            }
        }
        for m in 1..k {
            t.push((1, 1, rho(m + 1), m, m + 1));
        }
    } else {
        for c in &s {
            let (x, y) = pos(c);
            if c.0 == 0 && x == y + 1 {
                t.push(*c);
            }
        }
    }
    for c in &t {
        assert!(s.contains(c), "T must sit inside S: {c:?}");
    }
    (s, t)
}

#[test]
fn oracle_index_set_sizes() {
    // λ = (2,1): |S\∅| = 3, |T| = 2
    let (s, t) = index_sets(&[(2, 1), (1, 1)]);
    assert_eq!((s.len(), t.len()), (3, 2));
    // λ = (2,1,1): |S\∅| = 6, |T| = 3
    let (s, t) = index_sets(&[(2, 1), (1, 2)]);
    assert_eq!((s.len(), t.len()), (6, 3));
    // λ = (1,1,1): |S\∅| = 3, |T| = 2
    let (s, t) = index_sets(&[(1, 3)]);
    assert_eq!((s.len(), t.len()), (3, 2));
    // λ = (2,2,1): |S\∅| = 9 (matches the nine letters of the explicit law)
    let (s, t) = index_sets(&[(2, 2), (1, 1)]);
    assert_eq!((s.len(), t.len()), (9, 3));
    // λ = (3,2,1): |S\∅| = 11
    let (s, t) = index_sets(&[(3, 1), (2, 1), (1, 1)]);
    assert_eq!(s.len(), 11);
    assert_eq!(t.len(), 4); // two subdiagonal slots + two (1,1,ρ,m,m+1) slots
}

// ---------------------------------------------------------------------------
// automorphism groups of Z/9 ⊕ Z/3 (λ = (2,1), p = 3)
// ---------------------------------------------------------------------------

/// Matrices [[a, b], [c, d]] with a, b mod 9 and c, d mod 3; b must be
/// divisible by 3. Multiplication respects the per-row moduli.
fn aut21_mul(g: [u64; 4], h: [u64; 4]) -> [u64; 4] {
    [
        (g[0] * h[0] + g[1] * h[2]) % 9,
        (g[0] * h[1] + g[1] * h[3]) % 9,
        (g[2] * h[0] + g[3] * h[2]) % 3,
        (g[2] * h[1] + g[3] * h[3]) % 3,
    ]
}

#[test]
fn oracle_orders_for_partition_21_p3() {
    let mut all = Vec::new();
    for a in 0..9u64 {
        for b in (0..9u64).step_by(3) {
            for c in 0..3u64 {
                for d in 0..3u64 {
                    // automorphism iff both diagonal blocks are units mod 3
                    if a % 3 != 0 && d % 3 != 0 {
                        all.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    assert_eq!(all.len(), 108); // |G_λ|

    let sylow: Vec<[u64; 4]> =
        all.iter().copied().filter(|g| g[0] % 3 == 1 && g[3] % 3 == 1).collect();
    assert_eq!(sylow.len(), 27); // |P_λ| = 3^|S\∅|

    let diag: Vec<[u64; 4]> = all
        .iter()
        .copied()
        .filter(|g| {
            g[1] == 0
                && g[2] == 0
                && {
                    // multiplicative order dividing p-1 = 2
                    let sq = aut21_mul(*g, *g);
                    sq == [1, 0, 0, 1]
                }
        })
        .collect();
    assert_eq!(diag.len(), 4); // |D_λ| = (p-1)^2

    // closure sanity: the sylow set is closed under multiplication
    let set: HashSet<[u64; 4]> = sylow.iter().copied().collect();
    for g in &sylow {
        for h in &sylow {
            assert!(set.contains(&aut21_mul(*g, *h)));
        }
    }
}

// ---------------------------------------------------------------------------
// symbolic n = 2 instance of the trace identity
// ---------------------------------------------------------------------------

/// Polynomials in a12, a21, b12, b21 with integer coefficients, keyed by
/// exponent vectors.
type Poly = HashMap<[u8; 4], i64>;

fn pmul(lhs: &Poly, rhs: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in lhs {
        for (e2, c2) in rhs {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
            *out.entry(e).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn padd(lhs: &Poly, rhs: &Poly, sign: i64) -> Poly {
    let mut out = lhs.clone();
    for (e, c) in rhs {
        *out.entry(*e).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn var(i: usize) -> Poly {
    let mut e = [0u8; 4];
    e[i] = 1;
    HashMap::from([(e, 1i64)])
}

#[test]
fn oracle_trace_identity_n2_symbolic() {
    // variables: a12 = 0, a21 = 1, b12 = 2, b21 = 3
    let a12 = var(0);
    let a21 = var(1);
    let b12 = var(2);
    let b21 = var(3);
    // c21 = a21 + b21 (lower), c12 = a12 + b12 (upper): the strictly lower /
    // strictly upper 2×2 products contribute nothing to the off-diagonal.
    let c21 = padd(&a21, &b21, 1);
    let c12 = padd(&a12, &b12, 1);
    // pairing + alternating cycle sums (only the 2-cycle (2,1) exists):
    //   a12 b21 + a21 b12 − (c21 c12 − a21 a12 − b21 b12) = 0
    let mut acc = pmul(&a12, &b21);
    acc = padd(&acc, &pmul(&a21, &b12), 1);
    acc = padd(&acc, &pmul(&c21, &c12), -1);
    acc = padd(&acc, &pmul(&a21, &a12), 1);
    acc = padd(&acc, &pmul(&b21, &b12), 1);
    assert!(acc.is_empty(), "identity must vanish symbolically, got {acc:?}");
}

// ---------------------------------------------------------------------------
// commutator subgroups of small matrix groups
// ---------------------------------------------------------------------------

fn mat_mul_mod(a: &[u64; 4], b: &[u64; 4], m: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % m,
        (a[0] * b[1] + a[1] * b[3]) % m,
        (a[2] * b[0] + a[3] * b[2]) % m,
        (a[2] * b[1] + a[3] * b[3]) % m,
    ]
}

fn mat_inv_mod(a: &[u64; 4], m: u64) -> [u64; 4] {
    let det = (a[0] * a[3] % m + m - a[1] * a[2] % m) % m;
    let di = inv_mod(det, m).expect("invertible");
    [a[3] * di % m, (m - a[1] % m) % m * di % m, (m - a[2] % m) % m * di % m, a[0] * di % m]
}

fn gl2(m: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let det = (a * d % m + m - b * c % m) % m;
                    if inv_mod(det, m).is_some() {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn closure(gens: &[[u64; 4]], m: u64) -> HashSet<[u64; 4]> {
    let id = [1u64, 0, 0, 1];
    let mut seen: HashSet<[u64; 4]> = HashSet::from([id]);
    let mut queue: VecDeque<[u64; 4]> = VecDeque::new();
    for g in gens {
        if seen.insert(*g) {
            queue.push_back(*g);
        }
    }
    while let Some(g) = queue.pop_front() {
        for h in gens {
            for prod in [mat_mul_mod(&g, h, m), mat_mul_mod(h, &g, m)] {
                if seen.insert(prod) {
                    queue.push_back(prod);
                }
            }
        }
    }
    seen
}

#[test]
fn oracle_commutator_subgroups() {
    // GL2(Z/2): order 6, commutator subgroup of order 3
    let g = gl2(2);
    assert_eq!(g.len(), 6);
    let comms: Vec<[u64; 4]> = g
        .iter()
        .flat_map(|a| {
            g.iter().map(move |b| {
                let ai = mat_inv_mod(a, 2);
                let bi = mat_inv_mod(b, 2);
                mat_mul_mod(&mat_mul_mod(&ai, &bi, 2), &mat_mul_mod(a, b, 2), 2)
            })
        })
        .collect();
    let derived = closure(&comms, 2);
    assert_eq!(derived.len(), 3);
    // and SL2(Z/2) = GL2(Z/2) has order 6, so the inclusion is strict
    assert_eq!(g.iter().filter(|m| (m[0] * m[3] + m[1] * m[2]) % 2 == 1).count(), 6);

    // GL2(Z/3): order 48, commutator subgroup = SL2(Z/3), order 24
    let g = gl2(3);
    assert_eq!(g.len(), 48);
    let comms: Vec<[u64; 4]> = g
        .iter()
        .flat_map(|a| {
            g.iter().map(move |b| {
                let ai = mat_inv_mod(a, 3);
                let bi = mat_inv_mod(b, 3);
                mat_mul_mod(&mat_mul_mod(&ai, &bi, 3), &mat_mul_mod(a, b, 3), 3)
            })
        })
        .collect();
    let derived = closure(&comms, 3);
    assert_eq!(derived.len(), 24);
    for m in &derived {
        assert_eq!((m[0] * m[3] % 3 + 2 * (m[1] * m[2] % 3)) % 3, 1, "determinant 1");
    }

    // GL2(Z/4): derived subgroup strictly inside SL2(Z/4) (order 48)
    let g = gl2(4);
    assert_eq!(g.len(), 96);
    let comms: Vec<[u64; 4]> = g
        .iter()
        .flat_map(|a| {
            g.iter().map(move |b| {
                let ai = mat_inv_mod(a, 4);
                let bi = mat_inv_mod(b, 4);
                mat_mul_mod(&mat_mul_mod(&ai, &bi, 4), &mat_mul_mod(a, b, 4), 4)
            })
        })
        .collect();
    let derived = closure(&comms, 4);
    let sl_order = g.iter().filter(|m| (m[0] * m[3] % 4 + 4 - m[1] * m[2] % 4) % 4 == 1).count();
    assert_eq!(sl_order, 48);
    assert!(derived.len() < sl_order, "derived = {} must be < {}", derived.len(), sl_order);
    assert_eq!(derived.len(), 24);
}

// ---------------------------------------------------------------------------
// five-factor elementary gadget over Z/9
// ---------------------------------------------------------------------------

#[test]
fn oracle_elementary_diagonal_gadget_mod_9() {
    let m = 9u64;
    let e21 = |x: u64| [1, 0, x % m, 1];
    let e12 = |x: u64| [1, x % m, 0, 1];
    let a2 = 5u64;
    let a2_inv = inv_mod(a2, m).unwrap(); // 2
    // B = E21(1 - a2^{-1}) · E12(-1) · E21(1) · E21(-a2) · E12(a2^{-1})
    let mut b = e21((1 + m - a2_inv) % m);
    b = mat_mul_mod(&b, &e12(m - 1), m);
    b = mat_mul_mod(&b, &e21(1), m);
    b = mat_mul_mod(&b, &e21(m - a2 % m), m);
    b = mat_mul_mod(&b, &e12(a2_inv), m);
    // det(B) = 1 and B · Diag(2,5) = Diag(2·5, 1) = I mod 9
    let det = (b[0] * b[3] % m + m - b[1] * b[2] % m) % m;
    assert_eq!(det, 1);
    let prod = mat_mul_mod(&b, &[2, 0, 0, 5], m);
    assert_eq!(prod, [1, 0, 0, 1]);
}

// ---------------------------------------------------------------------------
// natural action of {±1} on Z/4 (degrees 1 and 2)
// ---------------------------------------------------------------------------

#[test]
fn oracle_natural_action_pm1_on_z4() {
    // G = {0,1} with 1 acting as negation on A = Z/4
    let act = |g: usize, a: u64| if g == 0 { a } else { (4 - a) % 4 };
    let gmul = |x: usize, y: usize| (x + y) % 2;

    // degree 1: crossed homs f with f(xy) = f(x) + x·f(y)
    let mut z1 = Vec::new();
    for f1 in 0..4u64 {
        let f = [0u64, f1];
        let ok = (0..2).all(|x| {
            (0..2).all(|y| f[gmul(x, y)] == (f[x] + act(x, f[y])) % 4)
        });
        if ok {
            z1.push(f);
        }
    }
    assert_eq!(z1.len(), 4);
    let b1: HashSet<[u64; 2]> = (0..4u64).map(|a| [0, (act(1, a) + 4 - a) % 4]).collect();
    assert_eq!(b1.len(), 2);
    assert_eq!(z1.len() / b1.len(), 2); // H^1 ≅ Z/2

    // degree 2: c: G×G → Z/4 with x·c(y,z) − c(xy,z) + c(x,yz) − c(x,y) = 0
    let idx = |x: usize, y: usize| 2 * x + y;
    let mut z2 = Vec::new();
    for mask in 0..4u64.pow(4) {
        let mut c = [0u64; 4];
        let mut t = mask;
        for slot in c.iter_mut() {
            *slot = t % 4;
            t /= 4;
        }
        let ok = (0..2).all(|x| {
            (0..2).all(|y| {
                (0..2).all(|z| {
                    (act(x, c[idx(y, z)]) + 4 - c[idx(gmul(x, y), z)] + c[idx(x, gmul(y, z))] + 4
                        - c[idx(x, y)])
                        % 4
                        == 0
                })
            })
        });
        if ok {
            z2.push(c);
        }
    }
    let mut b2 = HashSet::new();
    for v1 in 0..4u64 {
        for v0 in 0..4u64 {
            let v = [v0, v1];
            let mut c = [0u64; 4];
            for x in 0..2 {
                for y in 0..2 {
                    c[idx(x, y)] = (v[x] + act(x, v[y]) + 4 - v[gmul(x, y)]) % 4;
                }
            }
            b2.insert(c);
        }
    }
    assert_eq!(z2.len() / b2.len(), 2); // H^2 ≅ Z/2 (dihedral vs quaternion)
}

// ---------------------------------------------------------------------------
// natural action of GL2(Z/2) on (Z/2)^2 (degrees 1 and 2 both vanish)
// ---------------------------------------------------------------------------

#[test]
fn oracle_natural_action_gl2_z2() {
    let elems = gl2(2);
    let n = elems.len();
    assert_eq!(n, 6);
    let index: HashMap<[u64; 4], usize> = elems.iter().copied().zip(0..).collect();
    let mul = |x: usize, y: usize| index[&mat_mul_mod(&elems[x], &elems[y], 2)];
    let act = |g: usize, v: (u64, u64)| {
        let m = &elems[g];
        ((m[0] * v.0 + m[1] * v.1) % 2, (m[2] * v.0 + m[3] * v.1) % 2)
    };

    // H^1: unknowns f(g) ∈ F_2^2 (12 bits); conditions f(xy) = f(x) + x f(y)
    let cols = 2 * n;
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            // two scalar equations
            for comp in 0..2 {
                let mut row = vec![0u64; cols];
                row[2 * mul(x, y) + comp] += 1;
                row[2 * x + comp] += 1;
                // x·f(y): the matrix row `comp` of elems[x] hits f(y)
                let m = &elems[x];
                let (r0, r1) = if comp == 0 { (m[0], m[1]) } else { (m[2], m[3]) };
                row[2 * y] += r0;
                row[2 * y + 1] += r1;
                rows.push(row.iter().map(|&v| v % 2).collect());
            }
        }
    }
    let z1_dim = cols - fp_rank(2, cols, &rows);
    // B^1 from the 2 module generators; V^G = 0 so dim B^1 = 2
    let mut b1_rows = Vec::new();
    for a in [(1u64, 0u64), (0, 1)] {
        let mut row = vec![0u64; cols];
        for g in 0..n {
            let ga = act(g, a);
            row[2 * g] = (ga.0 + 2 - a.0) % 2;
            row[2 * g + 1] = (ga.1 + 2 - a.1) % 2;
        }
        b1_rows.push(row);
    }
    let b1_dim = fp_rank(2, cols, &b1_rows);
    assert_eq!(b1_dim, 2);
    assert_eq!(z1_dim - b1_dim, 0, "H^1(GL2(F2), natural) = 0");

    // H^2: unknowns c(x,y) ∈ F_2^2 (72 bits)
    let cols2 = 2 * n * n;
    let slot = |x: usize, y: usize, comp: usize| 2 * (x * n + y) + comp;
    let mut rows2 = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for comp in 0..2 {
                    let mut row = vec![0u64; cols2];
                    // x·c(y,z)
                    let m = &elems[x];
                    let (r0, r1) = if comp == 0 { (m[0], m[1]) } else { (m[2], m[3]) };
                    row[slot(y, z, 0)] += r0;
                    row[slot(y, z, 1)] += r1;
                    row[slot(mul(x, y), z, comp)] += 1;
                    row[slot(x, mul(y, z), comp)] += 1;
                    row[slot(x, y, comp)] += 1;
                    rows2.push(row.iter().map(|&v| v % 2).collect());
                }
            }
        }
    }
    let z2_dim = cols2 - fp_rank(2, cols2, &rows2);
    // B^2 = image of ∂ on 1-cochains: dim C^1 − dim Z^1(as crossed-hom kernel
    // of ∂ is the cocycle space in degree 1)
    let b2_dim = cols - z1_dim;
    assert_eq!(z2_dim - b2_dim, 0, "H^2(GL2(F2), natural) = 0");
}

// ---------------------------------------------------------------------------
// elementary abelian G1 = (Z/3)^2: full H^2 and its invariant part
// ---------------------------------------------------------------------------

#[test]
fn oracle_g1_invariant_dim_p3() {
    let p = 3u64;
    // elements (b, c) ∈ F_3^2, index = 3b + c
    let n = 9usize;
    let mul = |x: usize, y: usize| {
        let (b1, c1) = (x / 3, x % 3);
        let (b2, c2) = (y / 3, y % 3);
        3 * ((b1 + b2) % 3) + (c1 + c2) % 3
    };
    // Z^2 over 81 unknowns
    let cols = n * n;
    let slot = |x: usize, y: usize| x * n + y;
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut row = vec![0u64; cols];
                row[slot(y, z)] += 1;
                row[slot(mul(x, y), z)] += 2;
                row[slot(x, mul(y, z))] += 1;
                row[slot(x, y)] += 2;
                rows.push(row.iter().map(|&v| v % p).collect::<Vec<_>>());
            }
        }
    }
    let z2_dim = cols - fp_rank(p as u64, cols, &rows);
    // coboundary dimension: ∂v(x,y) = v(x) + v(y) − v(xy); taking x = y = 1
    // forces v(1) = 0, so ker ∂ = Hom(G, F_3), dim 2, and dim B^2 = 9 − 2
    let b2_dim = n - 2;
    let h2_dim = z2_dim - b2_dim;
    assert_eq!(h2_dim, 3, "dim H^2((Z/3)^2, F_3) = 3");

    // D = ((F_3^*)^2) acts by (b,c) → (t1/t2 · b, t2/t1 · c); invariant
    // classes via averaging over the 4 group elements. Work with explicit
    // basis cocycles: build a basis of Z^2 mod B^2 first.
    let mut basis: Vec<Vec<u64>> = Vec::new();
    {
        // kernel basis of the cocycle system
        let mut mat: Vec<Vec<u64>> = rows.clone();
        // reduce to rref and read off kernel (small: 81 cols)
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(r) = (rank..mat.len()).find(|&r| mat[r][col] % p != 0) else {
                continue;
            };
            mat.swap(rank, r);
            let inv = inv_mod(mat[rank][col], p).unwrap();
            for c in col..cols {
                mat[rank][c] = mat[rank][c] * inv % p;
            }
            for rr in 0..mat.len() {
                if rr != rank && mat[rr][col] % p != 0 {
                    let f = mat[rr][col];
                    for c in col..cols {
                        mat[rr][c] = (mat[rr][c] + p * p - f * mat[rank][c] % p) % p;
                    }
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let pivot_cols: HashSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for &(r, c) in &pivots {
                if mat[r][free] % p != 0 {
                    v[c] = (p - mat[r][free] % p) % p;
                }
            }
            basis.push(v);
        }
        assert_eq!(basis.len(), z2_dim);
    }
    // coboundary span generators
    let mut cob: Vec<Vec<u64>> = Vec::new();
    for g in 0..n {
        let mut c = vec![0u64; cols];
        for x in 0..n {
            for y in 0..n {
                let mut val = 0u64;
                if x == g {
                    val += 1;
                }
                if y == g {
                    val += 1;
                }
                if mul(x, y) == g {
                    val += 2;
                }
                c[slot(x, y)] = val % p;
            }
        }
        cob.push(c);
    }
    // averaging over D
    let units = [1usize, 2usize];
    let mut perms = Vec::new();
    for &t1 in &units {
        for &t2 in &units {
            let r = t1 * inv_mod(t2 as u64, p).unwrap() as usize % 3;
            let rinv = inv_mod(r as u64, p).unwrap() as usize;
            // action on elements: (b,c) → (r b, r^{-1} c); cocycle pullback by
            // the inverse automorphism
            let perm: Vec<usize> = (0..n)
                .map(|e| {
                    let (b, c) = (e / 3, e % 3);
                    3 * (rinv * b % 3) + (r * c % 3)
                })
                .collect();
            perms.push(perm);
        }
    }
    // project each basis class: average c ∘ (perm × perm) over D, then test
    // how many projected classes are independent modulo coboundaries
    let inv4 = inv_mod(4 % p, p).unwrap();
    let mut projected = Vec::new();
    for b in &basis {
        let mut avg = vec![0u64; cols];
        for perm in &perms {
            for x in 0..n {
                for y in 0..n {
                    avg[slot(x, y)] += b[slot(perm[x], perm[y])];
                }
            }
        }
        for v in avg.iter_mut() {
            *v = *v % p * inv4 % p;
        }
        projected.push(avg);
    }
    // rank of projected classes modulo coboundaries
    let cob_rank = fp_rank(p, cols, &cob);
    let mut stacked = cob.clone();
    stacked.extend(projected.iter().cloned());
    let inv_dim = fp_rank(p, cols, &stacked) - cob_rank;
    assert_eq!(inv_dim, 1, "invariant part of H^2((Z/3)^2) under D has dim 1");
}
