//! Torus-invariant subspaces of `H²(G, F_p)`.
//!
//! Conjugation by the diagonal complement `D_λ` (or, on the named coordinate
//! groups, the scaling torus) permutes group elements, hence acts on second
//! cohomology; since |torus| is prime to p, the invariant subspace is a
//! direct summand computed by the averaging projector, and it is exactly
//! what survives toward the cohomology of the full group.
//!
//! Run with: `cargo run --example invariant_classes`

use autcoh::cohomology::cochains::{g1_invariant_table, g3_invariant_table, g4_invariant_tables};
use autcoh::cohomology::group::{g1, g2, g3, g4};
use autcoh::cohomology::maps::{conj_action_matrix, pc_invariant_subspace};
use autcoh::cohomology::{h2_brute, h2_pc, verify_cocycle, ClassSpace, MatrixGroup, PcGroup};
use autcoh::structures::{enumerate_diagonal, Partition};
use autcoh::Result;

fn main() -> Result<()> {
    let p = 3;

    // --- the named coordinate groups (table-driven route) ----------------
    println!("invariant dims of H² under the scaling torus, p = {p}:");
    let mut invariant_dims = Vec::new();
    for (name, cg) in [("G₁", g1(p)?), ("G₂", g2(p)?), ("G₃", g3(p)?)] {
        let space = h2_brute(&cg.table, p, 300)?;
        let cs = ClassSpace::new(&cg.table, p, &space)?;
        let perms = cg.torus_permutations()?;
        let inv = autcoh::cohomology::invariant_subspace(&cg.table, p, &space, &cs, &perms)?;
        println!("  {name} (order {:3}): h² = {:2}, invariant part {}", cg.table.size(), space.dim, inv.dim);
        invariant_dims.push(inv.dim);
    }

    // G₄ has order 729: use the pc engine and its invariant routine
    let cg = g4(p)?;
    let chain = [
        cg.encode(&[0, 1, 0, 0, 0, 0]),
        cg.encode(&[0, 0, 1, 0, 0, 0]),
        cg.encode(&[0, 0, 0, 0, 0, 1]),
        cg.encode(&[1, 0, 0, 0, 0, 0]),
        cg.encode(&[0, 0, 0, 1, 0, 0]),
        cg.encode(&[0, 0, 0, 0, 1, 0]),
    ];
    let pc = PcGroup::from_table(&cg.table, p, &chain)?;
    let coh = h2_pc(&pc.pres)?;
    let inv = pc_invariant_subspace(&pc, &coh, &cg.torus_permutations()?)?;
    println!("  G₄ (order {}): h² = {:2}, invariant part {} (pc engine)", cg.table.size(), coh.dim, inv.dim);
    invariant_dims.push(inv.dim);
    assert_eq!(invariant_dims, vec![1, 0, 1, 2]);
    println!("invariant dimension profile (1, 0, 1, 2) ✓");

    // the invariant generators are explicit bilinear pairing tables
    let cg1 = g1(p)?;
    let t = g1_invariant_table(&cg1)?;
    verify_cocycle(&cg1.table, p, &t)?;
    let space = h2_brute(&cg1.table, p, 300)?;
    let cs = ClassSpace::new(&cg1.table, p, &space)?;
    assert!(!cs.is_zero_class(&t)?);
    for perm in cg1.torus_permutations()? {
        // the class is literally fixed: its coordinates are an eigenvector
        let mat = conj_action_matrix(&cg1.table, &cs, &space, &perm)?;
        let coords = cs.coords(&t)?;
        let image: Vec<u64> = (0..coords.len())
            .map(|r| (0..coords.len()).map(|c| mat[r][c] * coords[c]).sum::<u64>() % p)
            .collect();
        assert_eq!(image, coords);
    }
    println!("\nG₁ generator b ⊗ c: nonzero class, fixed by every torus element ✓");

    let cg3 = g3(p)?;
    let t = g3_invariant_table(&cg3)?;
    verify_cocycle(&cg3.table, p, &t)?;
    println!("G₃ generator a ⊗ c + b ⊗ e: verified 2-cocycle ✓");
    let cg4 = g4(p)?;
    for (i, t) in g4_invariant_tables(&cg4)?.iter().enumerate() {
        verify_cocycle(&cg4.table, p, t)?;
        println!("G₄ generator #{}: verified 2-cocycle ✓", i + 1);
    }

    // --- the Sylow subgroup under its genuine diagonal torus --------------
    let lambda = Partition::parse("2,1")?;
    let sylow = MatrixGroup::sylow(&lambda, p, 1 << 14)?;
    let space = h2_brute(&sylow.table, p, 300)?;
    let cs = ClassSpace::new(&sylow.table, p, &space)?;
    let mut perms = Vec::new();
    for d in enumerate_diagonal(&lambda, p)? {
        perms.push(sylow.conj_permutation(&d)?);
    }
    let inv = autcoh::cohomology::invariant_subspace(&sylow.table, p, &space, &cs, &perms)?;
    println!(
        "\nP_{lambda}(p={p}): h² = {}, D_λ-invariant part {} — every class moves under the torus",
        space.dim, inv.dim
    );
    assert_eq!((space.dim, inv.dim), (4, 0));
    Ok(())
}
