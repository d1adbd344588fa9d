//! Stages P_0 ⊆ P_1 ⊆ ... and where they stop being computable.

use spacing_lab::construct::{ConstructionConfig, StageConvention};
use spacing_lab::{staged_p, weak_mixing_verdict, SpacingSet};

fn main() -> spacing_lab::Result<()> {
    let config = ConstructionConfig::default();
    match staged_p(3, 2, StageConvention::AtLeastOne, &config) {
        Ok(_) => println!("max(n,1) convention: two stages built"),
        Err(e) => println!("max(n,1) convention: {e}"),
    }

    let built = staged_p(3, 2, StageConvention::Literal, &config)?;
    for (n, stage) in built.set.stages().iter().enumerate() {
        let max = stage.max().map(|m| m.bits()).unwrap_or(0);
        println!("P_{n}: {} elements, largest has {max} bits", stage.len());
    }
    let last = SpacingSet::Explicit(built.set.last().clone());
    println!("weak mixing of P_2: {:?}", weak_mixing_verdict(&last, 100_000, 2)?);

    if let Err(e) = staged_p(3, 3, StageConvention::Literal, &config) {
        println!("third stage: {e}");
    }
    Ok(())
}
