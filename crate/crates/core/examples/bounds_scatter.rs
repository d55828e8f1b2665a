//! Plot-ready CSV of (H, I, B) for random tables plus the canonical processes.
//!
//! ```text
//! cargo run --example bounds_scatter > scatter.csv
//! ```

use bindinfo::bounds::{corner_points, random_batch};

fn main() -> bindinfo::Result<()> {
    let (n, k) = (4, 2);
    println!("source,joint_entropy,multi_information,binding_information,all_bounds_hold");
    for row in random_batch(n, k, 2000, 7)? {
        let r = &row.report;
        println!(
            "random,{},{},{},{}",
            r.joint_entropy,
            r.multi_information,
            r.binding_information,
            r.all_satisfied()
        );
    }
    for p in corner_points(n, k)? {
        println!(
            "{},{},{},{},true",
            p.label, p.joint_entropy, p.multi_information, p.binding_information
        );
    }
    Ok(())
}
