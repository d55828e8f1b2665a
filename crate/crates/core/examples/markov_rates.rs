//! Rates of a binary symmetric chain as the flip probability varies.

use bindinfo::MarkovModel;

fn main() -> bindinfo::Result<()> {
    println!(
        "{:>5} {:>8} {:>8} {:>8} {:>8}",
        "flip", "h", "rho", "r", "b"
    );
    for i in 1..10 {
        let flip = i as f64 / 10.0;
        let r = MarkovModel::binary_symmetric(flip)?.rates();
        println!(
            "{flip:>5.1} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            r.h_mu, r.rho_mu, r.r_mu, r.b_mu
        );
    }

    let chain = MarkovModel::new(vec![
        vec![0.0, 0.5, 0.5],
        vec![0.5, 0.0, 0.5],
        vec![0.5, 0.5, 0.0],
    ])?;
    let checks = chain.identity_checks(5)?;
    println!("no-repeat chain on 3 symbols: {:?}", chain.rates());
    println!(
        "largest identity residual for n <= 5: {:.2e}",
        checks.max_violation
    );
    Ok(())
}
