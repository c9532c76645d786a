//! Which divisors tH - m(E_1 + ... + E_n) the criterion certifies as ample
//! on the blowup of the plane at 25 points.
//!
//! $ cargo run --example ampleness_grid

use seshadri::bounds::{ample_check, Ampleness};

fn main() -> seshadri::Result<()> {
    let n = 25;
    print!("m\\t");
    for t in 1..=16 {
        print!("{t:>3}");
    }
    println!();
    for m in 1..=4 {
        print!("{m:>3}");
        for t in 1..=16 {
            let mark = match ample_check(n, t, m)?.status {
                Ampleness::Ample => "A",
                Ampleness::Unknown => ".",
            };
            print!("{mark:>3}");
        }
        println!();
    }
    println!("{}", ample_check(n, 16, 4)?.reason);
    Ok(())
}
