//! Cohomology for the natural action: the group acts on `A_λ` itself.
//!
//! Coefficients are now the mixed-modulus module `A_λ`, so answers are
//! abelian groups (lists of cyclic factor orders) computed by Howell-form
//! linear algebra over `Z/p^e`.  A scalar automorphism `σ = q·id` is
//! central, and the standard centrality argument shows `(q − 1)^degree`
//! annihilates `H^degree` — which kills everything at odd p (take q = 2)
//! and explains why p = 2 is the only delicate prime.
//!
//! Run with: `cargo run --example natural_action`

use autcoh::cohomology::{scalar_annihilator, MatrixGroup, NaturalAction};
use autcoh::criteria::annihilator_check;
use autcoh::structures::{AutMatrix, Partition};
use autcoh::Result;

fn orders(v: &[u64]) -> String {
    if v.is_empty() {
        "0".into()
    } else {
        v.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
    }
}

fn main() -> Result<()> {
    // --- the sign action on Z/4 ⊕ Z/2 -------------------------------------
    let lambda = Partition::parse("2,1")?;
    let minus = AutMatrix::from_entries(&lambda, 2, vec![3, 0, 0, 1])?;
    let sign = MatrixGroup::from_elements("{±1}", vec![AutMatrix::identity(&lambda, 2)?, minus])?;
    let action = NaturalAction::new(sign)?;
    let h1 = action.h1()?;
    let h2 = action.h2()?;
    println!("{{±1}} acting on Z/4 ⊕ Z/2:");
    println!("  H¹ = {}   H² = {}", orders(&h1.orders), orders(&h2.orders));
    assert_eq!(h1.orders, vec![2, 2]);
    assert_eq!(h2.orders, vec![2, 2]);

    // Aut(Z/4) = {±1} on Z/4: the classical H^n(Z/2, Z/4⁻) pattern
    let lam4 = Partition::parse("2")?;
    let m4 = AutMatrix::from_entries(&lam4, 2, vec![3])?;
    let aut4 = MatrixGroup::from_elements("Aut(Z/4)", vec![AutMatrix::identity(&lam4, 2)?, m4])?;
    let action = NaturalAction::new(aut4)?;
    println!("Aut(Z/4) on Z/4:  H¹ = {}   H² = {}", orders(&action.h1()?.orders), orders(&action.h2()?.orders));
    assert_eq!(action.h1()?.orders, vec![2]);
    assert_eq!(action.h2()?.orders, vec![2]);

    // a unipotent Jordan block of order p acting on (Z/3)²
    let lam11 = Partition::parse("1,1")?;
    let j = AutMatrix::from_entries(&lam11, 3, vec![1, 0, 1, 1])?;
    let jordan = MatrixGroup::from_elements(
        "⟨J⟩",
        vec![AutMatrix::identity(&lam11, 3)?, j.clone(), j.mul(&j)],
    )?;
    let action = NaturalAction::new(jordan)?;
    println!("Jordan ⟨J⟩ on (Z/3)²:  H¹ = {}   H² = {}", orders(&action.h1()?.orders), orders(&action.h2()?.orders));
    assert_eq!(action.h1()?.orders, vec![3]);
    assert_eq!(action.h2()?.orders, vec![3]);

    // --- full automorphism groups: scalars kill everything at odd p --------
    for (parts, p) in [("1,1", 3u64), ("1,1", 2)] {
        let lambda = Partition::parse(parts)?;
        let full = MatrixGroup::full(&lambda, p, 1 << 14)?;
        let n = full.table.size();
        let action = NaturalAction::new(full)?;
        let h1 = action.h1()?;
        let h2 = action.h2()?;
        println!(
            "GL₂(F_{p}) (order {n}) on (Z/{p})²:  H¹ = {}   H² = {}",
            orders(&h1.orders),
            orders(&h2.orders)
        );
        assert!(h1.orders.is_empty() && h2.orders.is_empty());
    }

    // the annihilator argument, checked on explicit cochain complexes: for
    // a central scalar q, multiplication by (q−1)^degree is the zero map on
    // H^degree — here q = 2, so 1 kills H^*(GL₂(F₃)) outright, while the
    // sign group on Z/4 ⊕ Z/2 only learns that H^* is elementary 2-torsion
    println!();
    let gl23 = MatrixGroup::full(&Partition::parse("1,1")?, 3, 1 << 14)?;
    for degree in [1u8, 2] {
        assert!(annihilator_check(gl23.clone(), 2, degree)?);
        println!(
            "  (q−1)^{degree} = {} annihilates H^{degree}(GL₂(F₃), (Z/3)²) ✓",
            scalar_annihilator(3, degree as u32)
        );
    }
    let sign = MatrixGroup::from_elements(
        "{±1}",
        vec![AutMatrix::identity(&lambda_sign()?, 2)?, AutMatrix::from_entries(&lambda_sign()?, 2, vec![3, 0, 0, 1])?],
    )?;
    for degree in [1u8, 2] {
        // −1 ≡ 3 is the scalar available in this subgroup
        assert!(annihilator_check(sign.clone(), 3, degree)?);
        println!(
            "  (q−1)^{degree} = {} annihilates H^{degree}({{±1}}, Z/4 ⊕ Z/2) ✓",
            scalar_annihilator(2, degree as u32)
        );
    }
    Ok(())
}

fn lambda_sign() -> Result<Partition> {
    Partition::parse("2,1")
}
