//! Commutator subgroups of `G_λ` and elementary factorization over `Z/p^k`.
//!
//! Over a field (single exponent, λ = (1,…,1)) the commutator subgroup of
//! `GL_n` is `SL_n` except for the tiny exceptions at q = 2; over `Z/p^k`
//! with k ≥ 2 the same holds for odd p, while p = 2 genuinely loses index.
//! The constructive ingredient is the factorization of any determinant-one
//! matrix into elementary matrices `E_{(x,y)}(α)`.
//!
//! Run with: `cargo run --example commutators_and_factorization`

use autcoh::cohomology::MatrixGroup;
use autcoh::series::{
    abelian_invariants, assemble_factors, commutator_closure, det_mod, p_rank, sl_factorize,
    strong_approx_decompose, Quotient,
};
use autcoh::structures::{AutMatrix, Partition};
use autcoh::Result;

/// Compare [G, G] with the determinant-one subgroup for a uniform modulus.
fn commutator_vs_sl(parts: &str, p: u64, cap: u128) -> Result<()> {
    let lambda = Partition::parse(parts)?;
    let group = MatrixGroup::full(&lambda, p, cap)?;
    let derived = commutator_closure(&group.elements, 1 << 20)?;
    let sl: Vec<&AutMatrix> =
        group.elements.iter().filter(|g| det_mod(g).unwrap() == 1).collect();
    let modulus = (p as u128).pow(lambda.lambda(1));
    let verdict = if derived.len() == sl.len() { "equals" } else { "is a proper subgroup of" };
    println!(
        "GL_{}(Z/{modulus}): |[G,G]| = {:4}  {verdict}  |SL| = {}",
        lambda.rank(),
        derived.len(),
        sl.len()
    );
    assert!(derived.len() <= sl.len());
    Ok(())
}

fn main() -> Result<()> {
    // odd characteristic: [GL, GL] = SL on the nose
    commutator_vs_sl("1,1", 3, 1 << 14)?; // GL_2(F_3)
    commutator_vs_sl("2,2", 3, 1 << 14)?; // GL_2(Z/9)
    // q = 2 exceptions: GL_2(F_2) ≅ S_3 has derived subgroup A_3 ⊊ SL = GL;
    // GL_3(F_2) is simple, hence its own commutator subgroup
    commutator_vs_sl("1,1", 2, 1 << 14)?;
    commutator_vs_sl("1,1,1", 2, 1 << 14)?;
    commutator_vs_sl("2,2", 2, 1 << 14)?; // index persists mod 4

    // factor a determinant-one matrix over Z/9 into elementary matrices
    let lambda = Partition::parse("2,2")?;
    let g = AutMatrix::from_entries(&lambda, 3, vec![2, 3, 5, 8])?;
    assert_eq!(det_mod(&g)?, 1);
    let factors = sl_factorize(&g)?;
    let words: Vec<String> =
        factors.iter().map(|f| format!("E_({},{})({})", f.x, f.y, f.value)).collect();
    println!("\n[2 3; 5 8] over Z/9 = {}", words.join(" · "));
    assert_eq!(assemble_factors(&lambda, 3, &factors)?, g);
    println!("re-assembled product matches exactly ✓");

    // strong-approximation step: det ≡ 1 (mod p) splits off an exact-det-one
    // part, the correction being divisible by p
    let h = AutMatrix::from_entries(&lambda, 3, vec![4, 3, 3, 1])?;
    assert_eq!(det_mod(&h)? % 3, 1);
    let (h1, corr) = strong_approx_decompose(&h)?;
    assert_eq!(det_mod(&h1)?, 1);
    println!("\ndet(h) = {} ≡ 1 (mod 3) splits as h = h′ + 3·{corr:?} with det(h′) = 1 ✓", det_mod(&h)?);

    // abelianized p-rank of G_λ detects partition gaps: a drop ≥ 2 forces a
    // Z/p quotient, a gap-free shape kills it
    println!();
    for (parts, p) in [("2,1", 3u64), ("3,1", 3), ("2", 3), ("1,1", 5)] {
        let lambda = Partition::parse(parts)?;
        let group = MatrixGroup::full(&lambda, p, 1 << 14)?;
        let derived = commutator_closure(&group.elements, 1 << 20)?;
        let q = Quotient::new(&group.elements, &derived)?;
        let invariants = abelian_invariants(&q)?;
        let rank = p_rank(&invariants, p);
        println!(
            "G_{lambda}(p={p}): G^ab ≅ ⊕ Z/{invariants:?}, p-rank {rank}  (gap-free: {})",
            lambda.is_gap_free()
        );
        assert_eq!(rank == 0, lambda.is_gap_free());
    }
    Ok(())
}
