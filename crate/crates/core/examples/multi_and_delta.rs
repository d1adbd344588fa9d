//! Witness searches for σ × σ^2 × ... and for the diagonal criterion.

use spacing_lab::{delta_transitivity_witness, multi_transitivity_witness, PartialPattern, SpacingSet, Word};

fn main() -> spacing_lab::Result<()> {
    let p3 = SpacingSet::blocks(3)?;
    let w: Word = "100000001".parse()?;
    let r = multi_transitivity_witness(&p3, &[(w.clone(), w.clone()), (w.clone(), w)], 100)?;
    println!("P(3), σ × σ^2 on [100000001]: witness {:?}", r.witness);
    for pattern in &r.merged {
        let ones: Vec<String> = pattern.ones().map(ToString::to_string).collect();
        println!("  merged 1s at {}", ones.join(", "));
    }

    let p2 = SpacingSet::blocks(2)?;
    let one = PartialPattern::one();
    let r = delta_transitivity_witness(&p2, &one, &[one.clone(), one.clone()], 100_000)?;
    println!("P(2), [1] ∩ σ^-n[1] ∩ σ^-2n[1]: {:?}", r.verdict);

    let full = SpacingSet::explicit((1u32..=50).map(Into::into))?;
    let r = delta_transitivity_witness(&full, &one, &[one.clone(), one.clone()], 50)?;
    println!("[1, 50]: witness {:?}", r.witness);
    Ok(())
}
