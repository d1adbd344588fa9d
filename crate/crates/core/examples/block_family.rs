//! The block family P(m): thick, but p ∈ P(m) rules out m p ∈ P(m).

use spacing_lab::spacing::BlockFamily;
use spacing_lab::{thickness_verdict, verify_not_mp};

fn main() -> spacing_lab::Result<()> {
    for m in [2u64, 3, 4] {
        let fam = BlockFamily::new(m)?;
        let blocks: Vec<String> = (1..=3)
            .map(|k| {
                let (lo, hi) = fam.block(k);
                format!("[{lo}, {hi}]")
            })
            .collect();
        println!("P({m}) starts with {}", blocks.join(" ∪ "));
        let set = spacing_lab::block_family(m)?;
        println!("  thickness: {:?}", thickness_verdict(&set, 100_000, 64)?);
        println!("  not-mp up to 10^6: {}", verify_not_mp(m, 1_000_000)?.status_name());
    }
    Ok(())
}
