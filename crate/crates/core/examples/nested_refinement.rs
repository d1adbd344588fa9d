//! Nested refinement: times k_0 < k_1 < ... and shrinking nonempty sets.

use spacing_lab::{nested_refinement, PartialPattern, SpacingSet, Word};

fn main() -> spacing_lab::Result<()> {
    let p3 = SpacingSet::blocks(3)?;
    let v = "100000001".parse::<Word>()?.cylinder()?;
    let r = nested_refinement(&p3, &[v.clone(), v], 2, 5000)?;
    println!("P(3), m = 2: k = {:?}", r.times);
    for (n, family) in r.refined.iter().enumerate() {
        let sizes: Vec<usize> = family.iter().map(PartialPattern::len).collect();
        println!("  step {n}: constraint counts {sizes:?}");
    }

    let one = PartialPattern::one();
    let r = nested_refinement(&SpacingSet::blocks(2)?, &[one.clone(), one], 0, 5000)?;
    println!("P(2), m = 2: {:?}", r.verdict);
    Ok(())
}
