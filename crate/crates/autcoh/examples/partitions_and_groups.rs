//! Partitions, the abelian p-group `A_λ`, and its automorphism group `G_λ`.
//!
//! Builds `A_(2,1)` at p = 3, explains the mixed-modulus matrix model of
//! `Aut(A_λ)` with its divisibility constraint, and cross-checks the
//! closed-form orders of `G_λ`, the Sylow p-subgroup `P_λ` and the diagonal
//! complement `D_λ` against explicit enumeration.
//!
//! Run with: `cargo run --example partitions_and_groups`

use autcoh::structures::{
    diagonal_order, enumerate_diagonal, group_order, sylow_order, AbelianGroup, AutMatrix,
    Partition,
};
use autcoh::cohomology::MatrixGroup;
use autcoh::Result;

fn main() -> Result<()> {
    let p = 3;
    let lambda = Partition::parse("2,1")?;
    println!("partition λ = {lambda}: pairs (part, multiplicity) = {:?}", lambda.pairs());
    println!("successive gaps (ending with λ_k − 0): {:?}", lambda.gaps());
    println!("gap-free (every drop ≤ 1): {}", lambda.is_gap_free());

    // the module: A_λ = Z/9 ⊕ Z/3
    let a = AbelianGroup::new(&lambda, p)?;
    println!("\nA_λ = ⊕ Z/{:?} of order {}", a.moduli(), a.order());
    let x = vec![4, 2];
    let y = vec![7, 2];
    println!("sample arithmetic: {x:?} + {y:?} = {:?}", a.add(&x, &y));

    // automorphisms are ρ×ρ matrices; row r is taken mod p^{e_r}, and an
    // entry at (r,c) with e_r > e_c must be divisible by p^{e_r − e_c}
    let g = AutMatrix::from_entries(&lambda, p, vec![4, 3, 1, 2])?;
    println!("\na valid automorphism (rows mod 9, 3):");
    print_matrix(&g);
    println!("acts on {x:?} ↦ {:?}", g.act(&x));
    assert!(g.is_automorphism());

    // entry (0,1) sits above the exponent drop 2 → 1, so it must be ≡ 0 mod 3
    let bad = AutMatrix::from_entries(&lambda, p, vec![4, 2, 1, 2]);
    println!("\nrejected matrix (entry (0,1) = 2 not divisible by 3):");
    println!("  {}", bad.unwrap_err());

    // closed-form orders versus explicit enumeration
    let full = MatrixGroup::full(&lambda, p, 1 << 14)?;
    let sylow = MatrixGroup::sylow(&lambda, p, 1 << 14)?;
    let diag = enumerate_diagonal(&lambda, p)?;
    println!("\n|G_λ| = {:5} (formula {})", full.elements.len(), group_order(&lambda, p));
    println!("|P_λ| = {:5} (formula {})", sylow.elements.len(), sylow_order(&lambda, p));
    println!("|D_λ| = {:5} (formula {})", diag.len(), diagonal_order(&lambda, p));
    assert_eq!(full.elements.len() as u128, group_order(&lambda, p));
    assert_eq!(sylow.elements.len() as u128, sylow_order(&lambda, p));
    assert_eq!(diag.len() as u128, diagonal_order(&lambda, p));

    // every Sylow member is unipotent lower-triangular mod p
    assert!(sylow.elements.iter().all(AutMatrix::is_unipotent_mod_p));
    println!("\nall {} Sylow members are unipotent lower-triangular mod {p}", sylow.elements.len());

    // |G_λ| = |P_λ| · (order prime to p): the Sylow subgroup is honest
    let index = group_order(&lambda, p) / sylow_order(&lambda, p);
    assert!(index % p as u128 != 0);
    println!("[G_λ : P_λ] = {index}, prime to p ✓");
    Ok(())
}

fn print_matrix(g: &AutMatrix) {
    for r in 0..g.n() {
        let row: Vec<String> = (0..g.n()).map(|c| g.at(r, c).to_string()).collect();
        println!("  [{}]  (mod {})", row.join(" "), g.row_modulus(r));
    }
}
