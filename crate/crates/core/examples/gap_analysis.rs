//! Thickness and syndeticity scans with their certificates.

use spacing_lab::spacing::set_syndeticity;
use spacing_lab::{complement_thickness_verdict, thickness_scan, SpacingSet};

fn main() -> spacing_lab::Result<()> {
    let p2 = SpacingSet::blocks(2)?;
    println!("P(2) run of 128: {:?}", thickness_scan(&p2, 100_000, 128)?);
    println!("N \\ P(2) run of 100: {:?}", complement_thickness_verdict(&p2, 100_000, 100)?);
    let r = set_syndeticity(&p2, 10_000, Some(1000));
    println!("P(2) gaps up to 10^4: max gap {}, bound 1000: {:?}", r.max_gap, r.verdict);

    let evens = SpacingSet::explicit((1u32..=500).map(|n| (2 * n).into()))?;
    let r = set_syndeticity(&evens, 1000, Some(2));
    println!("even numbers: max gap {}, bound 2: {:?}", r.max_gap, r.verdict);
    Ok(())
}
