//! The coordinate set `S` of a Sylow subgroup and its two total orders.
//!
//! Every element of `P_λ` is reached exactly once by the product of coset
//! representatives `E_{Pos(s)}(p^l a_s)` over the slots `s ∈ S`, so
//! `|P_λ| = p^{|S|}`.  A distinguished subset `T ⊆ S` controls the
//! commutator quotient: `P_λ^{ab} ≅ (Z/p)^{|T|}`, and the modified total
//! order lists `S ∖ T` (commutator slots) before `T`.
//!
//! Run with: `cargo run --example index_sets_and_orders`

use autcoh::structures::{sylow_order, Coord, IndexSet, Partition};
use autcoh::Result;

fn show(label: &str, coords: &[Coord], lambda: &Partition) {
    println!("{label} ({} slots):", coords.len());
    for c in coords {
        let (x, y) = c.pos(lambda);
        println!("    {c}  digit l={} at matrix position ({x},{y}), χ = {}", c.l, c.chi(lambda));
    }
}

fn main() -> Result<()> {
    let p = 3;
    for parts in ["2,1", "2,1,1", "3,2,1"] {
        let lambda = Partition::parse(parts)?;
        let index = IndexSet::new(&lambda);
        println!("=== λ = {lambda} ===");
        show("S in the base order", index.coords(), &lambda);

        // |P_λ| = p^{|S|}
        let predicted = (p as u128).pow(index.coords().len() as u32);
        assert_eq!(predicted, sylow_order(&lambda, p));
        println!("  p^|S| = {predicted} = |P_λ| ✓");

        show("  T (abelianization slots)", index.t_set(), &lambda);
        show("  T₁ (distinguished cross-block slots)", index.t1(), &lambda);
        for t in index.t1() {
            println!("    companion φ({t}) = {}", index.phi(t).unwrap());
        }

        // modified order: S ∖ T first, then T — the ascending chief series
        // in this order reaches the derived subgroup exactly at |S ∖ T|
        let mto = index.mto_coords();
        assert_eq!(mto.len(), index.coords().len());
        assert_eq!(index.s_minus_t().len() + index.t_set().len(), mto.len());
        let tail: Vec<String> = mto[index.s_minus_t().len()..].iter().map(|c| c.to_string()).collect();
        println!("  modified order puts T last: … | {}", tail.join(" "));

        // coset representative for one slot
        let s = index.coords()[0];
        let rep = index.coset_rep(p, &s, 2)?;
        let (x, y) = s.pos(&lambda);
        println!("  coset rep E_({x},{y})(3^{}·2) has entry {} there\n", s.l, rep.at(x - 1, y - 1));
    }
    Ok(())
}
