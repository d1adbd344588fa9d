//! Finite languages L_n(Σ_P) and when two sets cannot be told apart.

use spacing_lab::{count_language, enumerate_language, language_equal_up_to, LanguageConfig, SpacingSet};

fn main() -> spacing_lab::Result<()> {
    let cfg = LanguageConfig::default();
    let p = SpacingSet::explicit([3u32].map(Into::into))?;
    let words: Vec<String> = enumerate_language(&p, 4, &cfg)?.iter().map(ToString::to_string).collect();
    println!("L_4 over {{3}}: {}", words.join(" "));

    for m in [2u64, 3] {
        let counts: Vec<String> = (0..=16)
            .map(|n| count_language(&SpacingSet::blocks(m).unwrap(), n, &cfg).map(|c| c.to_string()))
            .collect::<spacing_lab::Result<_>>()?;
        println!("|L_n(P({m}))| for n = 0..16: {}", counts.join(" "));
    }

    let q = SpacingSet::explicit([3u32, 40].map(Into::into))?;
    println!("L_10 over {{3}} vs {{3, 40}}: {:?}", language_equal_up_to(&p, &q, 10).is_ok());
    if let Err(sep) = language_equal_up_to(&p, &q, 41) {
        println!("L_41 separated by {} (in first: {})", sep.word, sep.in_first);
    }
    Ok(())
}
