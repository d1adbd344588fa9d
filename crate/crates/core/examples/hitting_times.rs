//! Hitting times and products of powers of the shift.

use spacing_lab::transitivity::product_hitting_by_coordinates;
use spacing_lab::{hitting_times, product_hitting, PartialPattern, ProductQuery, SpacingSet, Word};

fn main() -> spacing_lab::Result<()> {
    let p = SpacingSet::explicit([2u32, 3, 7, 11].map(Into::into))?;
    let one = PartialPattern::one();
    println!("N([1], [1]) over {p}: {:?}", hitting_times(&one, &one, &p, 20)?);

    let u = "101".parse::<Word>()?.cylinder()?;
    println!("N([101], [1]) over P(2): {:?}", hitting_times(&u, &one, &SpacingSet::blocks(2)?, 40)?);

    for (m, exps) in [(2u64, vec![1u64, 2]), (2, vec![1, 3]), (3, vec![1, 2])] {
        let q = ProductQuery::uniform(SpacingSet::blocks(m)?, exps.clone(), one.clone(), one.clone(), 2000)?;
        let hits = product_hitting(&q)?;
        assert_eq!(hits, product_hitting_by_coordinates(&q)?);
        println!("P({m}) exponents {exps:?}: {} hits, first {:?}", hits.len(), hits.first());
    }
    Ok(())
}
