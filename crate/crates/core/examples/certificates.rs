//! Sealing a report, verifying it, and catching a tampered copy.

use spacing_lab::cert::{self, Body, Verification};
use spacing_lab::{refute_product_transitivity, SpacingSet};

fn main() -> spacing_lab::Result<()> {
    let report = refute_product_transitivity(&SpacingSet::blocks(2)?, None, 100_000)?;
    let text = cert::seal(&Body::RefutationReport(report))?;
    println!("sealed {} bytes", text.len());
    println!("verify: {:?}", cert::verify(text.as_bytes())?);

    let tampered = text.replacen("\"hits\":[]", "\"hits\":[8]", 1);
    println!("edited hits: {:?}", cert::verify(tampered.as_bytes())?);

    // resealing defeats the digest, but the rescan still disagrees
    let resealed = cert::reseal(&tampered)?;
    match cert::verify(resealed.as_bytes())? {
        Verification::Rejected { reason } => println!("resealed: rejected ({reason})"),
        Verification::Accepted { .. } => println!("resealed: accepted"),
    }
    Ok(())
}
