//! Measures on a hand-built joint table: two fair bits and their XOR.

use bindinfo::measures::{
    binding_information, conditional_entropy, entropy, multi_information, mutual_information,
    pir_profile, residual_entropy,
};
use bindinfo::{JointTable, Shape, SubsetMask};

fn main() -> bindinfo::Result<()> {
    let shape = Shape::new(3, 2)?;
    let xor = JointTable::from_fn(shape, |c| {
        let s = c.symbols();
        if s[2] == s[0] ^ s[1] {
            0.25
        } else {
            0.0
        }
    })?;

    let all = SubsetMask::full(3);
    println!("H(X0,X1,X2)      = {:.6}", entropy(&xor, all)?);
    println!(
        "I(X0;X1)         = {:.6}",
        mutual_information(
            &xor,
            SubsetMask::single(0),
            SubsetMask::single(1),
            SubsetMask::EMPTY
        )?
    );
    println!(
        "I(X0;X1 | X2)    = {:.6}",
        mutual_information(
            &xor,
            SubsetMask::single(0),
            SubsetMask::single(1),
            SubsetMask::single(2)
        )?
    );
    println!(
        "H(X2 | X0,X1)    = {:.6}",
        conditional_entropy(
            &xor,
            SubsetMask::single(2),
            SubsetMask::from_indices(&[0, 1])
        )?
    );
    println!("multi-info       = {:.6}", multi_information(&xor)?);
    println!("binding          = {:.6}", binding_information(&xor)?);
    println!("residual entropy = {:.6}", residual_entropy(&xor)?);
    println!("PIR profile      = {:?}", pir_profile(&xor, &[0, 1, 2])?);
    Ok(())
}
