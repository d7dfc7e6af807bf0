//! Chief series of the Sylow subgroup `P_λ` refining the coordinate orders.
//!
//! The ascending subgroup ladder adds one coordinate slot per step, so every
//! index is p and every step is central in the next; the series built on the
//! modified order passes through the derived subgroup `[P_λ, P_λ]` exactly
//! when the non-abelianization slots `S ∖ T` are exhausted.
//!
//! Run with: `cargo run --example chief_series`

use autcoh::cohomology::MatrixGroup;
use autcoh::series::{chief_series, commutator_closure, Quotient, SeriesOrder};
use autcoh::series::abelian_invariants;
use autcoh::structures::Partition;
use autcoh::Result;

fn main() -> Result<()> {
    let p = 3;
    for parts in ["2,1", "2,1,1"] {
        let lambda = Partition::parse(parts)?;
        println!("=== P_{lambda} at p = {p} ===");
        for order in [SeriesOrder::Base, SeriesOrder::Modified] {
            let series = chief_series(&lambda, p, order, 1 << 14)?;
            series.verify()?; // subgroup chain, normality, index p, centrality
            let name = match order {
                SeriesOrder::Base => "base order    ",
                SeriesOrder::Modified => "modified order",
            };
            let ladder: Vec<String> = series.coords.iter().map(|c| c.to_string()).collect();
            println!("{name}: 1 ◁ {} ◁ P, adding {}",
                (1..series.len()).map(|i| format!("N{i}")).collect::<Vec<_>>().join(" ◁ "),
                ladder.join(" → "));
            for (i, sub) in series.subgroups.iter().enumerate() {
                assert_eq!(sub.len() as u128, (p as u128).pow(i as u32));
            }
            println!("  verified: every index is p, every step central ✓");

            if let Some(dl) = series.derived_level() {
                // the modified order reaches [P, P] at level |S ∖ T|
                let whole = &series.subgroups[series.len()];
                let derived = commutator_closure(whole, 1 << 14)?;
                assert_eq!(series.subgroups[dl].len(), derived.len());
                assert!(derived.iter().all(|g| series.subgroups[dl].contains(g)));
                println!("  level {dl} is exactly the derived subgroup [P,P] of order {} ✓", derived.len());

                // the abelianization is elementary: (Z/p)^{|T|}
                let q = Quotient::new(whole, &derived)?;
                let invariants = abelian_invariants(&q)?;
                println!("  P^ab ≅ ⊕ Z/{invariants:?}  (elementary abelian of rank |T|)");
                assert!(invariants.iter().all(|&d| d == p));
            }
        }

        // per-step generators multiply out to the whole group
        let series = chief_series(&lambda, p, SeriesOrder::Modified, 1 << 14)?;
        let whole = MatrixGroup::from_elements("P", series.subgroups[series.len()].clone())?;
        for g in &series.generators {
            assert!(whole.index_of(g).is_some());
        }
        println!("all {} per-step generators lie in P ✓\n", series.generators.len());
    }
    Ok(())
}
