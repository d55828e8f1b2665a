//! Mirror ascent for binding information, then a look at what it found.

use bindinfo::maximizer::{classify_optimum, maximize, MaximizeConfig, Objective};

fn main() -> bindinfo::Result<()> {
    let config = MaximizeConfig::default();
    for (n, k) in [(3, 2), (4, 2), (3, 3)] {
        let r = maximize(Objective::Binding, n, k, &config)?;
        let d = classify_optimum(&r.best_table, 1e-3)?;
        println!(
            "N={n} K={k}: B = {:.6} after {} iterations (restart {}), pseudo-independent: {}, residuals vanish: {}",
            r.best_value, r.iterations, r.best_restart, d.pseudo_independent, d.residuals_vanish
        );
        let support = r.best_table.probs().iter().filter(|&&p| p > 1e-6).count();
        println!("  support {support} of {}", r.best_table.probs().len());
    }
    let r = maximize(Objective::Multi, 4, 2, &config)?;
    println!("multi-information at N=4 K=2: {:.6}", r.best_value);
    Ok(())
}
