//! Binding information of modulo-K processes reaches (N-1) log2 K while their
//! multi-information stays at log2 K.

use bindinfo::measures::{binding_information, multi_information};
use bindinfo::processes::modulo_process;

fn main() -> bindinfo::Result<()> {
    for k in [2, 3] {
        for n in 2..=6 {
            let p = modulo_process(n, k, 0)?;
            println!(
                "K={k} N={n}: B = {:.4} (cap {:.4}), I = {:.4}",
                binding_information(&p)?,
                (n as f64 - 1.0) * (k as f64).log2(),
                multi_information(&p)?
            );
        }
    }
    Ok(())
}
