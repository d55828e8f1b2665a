//! Sample a chain, then recover its rates from the sequence alone.

use bindinfo::estimate::estimated_rates;
use bindinfo::{MarkovModel, SymbolSequence};

fn main() -> bindinfo::Result<()> {
    let chain = MarkovModel::binary_symmetric(0.1)?;
    let exact = chain.rates();
    let seq = SymbolSequence::new(chain.sample(1_000_000, 42), 2)?;
    let report = estimated_rates(&seq, 5)?;

    println!(
        "exact: h = {:.4}, E = {:.4}",
        exact.h_mu, exact.excess_entropy
    );
    println!(
        "{:>2} {:>8} {:>8} {:>8} {:>8}",
        "n", "H(n)", "h(n)", "E(n)", "rho(n)"
    );
    for row in &report.rows {
        println!(
            "{:>2} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            row.n,
            row.block_entropy,
            row.entropy_rate,
            row.excess_entropy,
            row.multi_information_rate
        );
    }
    println!(
        "binding of the 5-block {:.4}, {:.0} windows per state",
        report.binding_information, report.windows_per_state
    );
    Ok(())
}
