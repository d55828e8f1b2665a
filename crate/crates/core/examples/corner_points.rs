//! The labelled points of the (H, I, B) region for six binary variables.

use bindinfo::bounds::corner_points;

fn main() -> bindinfo::Result<()> {
    println!("{:<12} {:>8} {:>8} {:>8}", "process", "H", "I", "B");
    for p in corner_points(6, 2)? {
        println!(
            "{:<12} {:>8.4} {:>8.4} {:>8.4}",
            p.label, p.joint_entropy, p.multi_information, p.binding_information
        );
    }
    Ok(())
}
