//! One application of the dispersed extension lemma on A = {3}.

use spacing_lab::construct::ConstructionConfig;
use spacing_lab::{lemma_extend, ExplicitSet};

fn main() -> spacing_lab::Result<()> {
    let a = ExplicitSet::from_u64s([3])?;
    let out = lemma_extend(&a, 1, 3, &ConstructionConfig::default())?;
    println!("k = {}, |L_k| = {}, {} scenarios", out.k, out.language_size, out.scenarios.len());
    for j in [0usize, 1, 2, 35] {
        let pair = &out.scenarios[j][0];
        let bits = out.l[j].bits();
        println!("scenario {:>2}: u = {}, v = {}, l_j has {bits} bits", j + 1, pair.u, pair.v);
    }
    let smallest: Vec<String> = out.b.iter().take(8).map(ToString::to_string).collect();
    println!("|B| = {}, smallest members {}", out.b.len(), smallest.join(", "));
    println!("B is 3-dispersed: {}", out.b.is_q_dispersed(&3u32.into()).is_ok());
    out.check(&ConstructionConfig::default()).map_err(spacing_lab::Error::Internal)?;
    println!("transcript re-checked");
    Ok(())
}
