//! Exact certificates for (N-1)B - I >= 0 and (N-1)I - B >= 0, and a
//! refutation of I - B >= 0.

use num_traits::Zero;

use bindinfo::prover::{prove_general, prove_symmetric, MeasureCombination, ProofOutcome};

fn main() -> bindinfo::Result<()> {
    for text in ["(N-1)B-I", "(N-1)I-B", "I-B"] {
        let combo = MeasureCombination::parse(text)?;
        for n in [3, 6, 12] {
            match prove_symmetric(&combo.symmetric_functional(n)?)? {
                ProofOutcome::Proven(c) => {
                    let used = c.multipliers.iter().filter(|m| !m.is_zero()).count();
                    println!("{text} >= 0 at N={n}: proven with {used} nonzero multipliers");
                }
                ProofOutcome::Refuted(r) => {
                    let point: Vec<String> = r.point.iter().map(ToString::to_string).collect();
                    println!(
                        "{text} >= 0 at N={n}: refuted at h = [{}], value {}",
                        point.join(", "),
                        r.value
                    );
                }
            }
        }
    }

    // the elemental cone gives named inequalities
    let combo = MeasureCombination::parse("(N-1)B-I")?;
    if let ProofOutcome::Proven(c) = prove_general(&combo.functional(3)?)? {
        println!("general proof at N=3:");
        for (name, m) in c.constraints.iter().zip(&c.multipliers) {
            if !m.is_zero() {
                println!("  {m} x [{name}]");
            }
        }
    }
    Ok(())
}
