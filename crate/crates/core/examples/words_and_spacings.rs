//! Words, spacing sets and admissibility.

use spacing_lab::{PartialPattern, SpacingSet, Word};

fn main() -> spacing_lab::Result<()> {
    let p = SpacingSet::explicit([3u32, 5, 8].map(Into::into))?;
    for text in ["1001", "10010001", "101", "1000000000001"] {
        let w: Word = text.parse()?;
        let sp: Vec<String> = w.spacing_set().iter().map(ToString::to_string).collect();
        println!("{text:>14}  Sp = {{{}}}  admissible in {p}: {}", sp.join(","), w.is_admissible(&p));
    }

    // sparse form: length 10^30 with 1s at both ends
    let huge: Word = "1000000000000000000000000000000:0+999999999999999999999999999999".parse()?;
    println!("sparse word {huge} has spacing set {:?}", huge.spacing_set());

    let u: Word = "1001".parse()?;
    let joined = u.concat_with_gap(&4u32.into(), &u);
    println!("1001 . 0^4 . 1001 = {joined}");

    let cyl = u.cylinder()?;
    let shifted = cyl.shift(&6u32.into());
    let merged = spacing_lab::merge_patterns(&cyl, &shifted).expect("disjoint positions");
    println!("[1001] ∩ σ^-6[1001] nonempty in {p}: {}", spacing_lab::pattern_nonempty(&merged, &p));
    println!("[1] = {:?}", PartialPattern::one());
    Ok(())
}
