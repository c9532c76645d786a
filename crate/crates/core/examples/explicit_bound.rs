//! Explicit lower bounds on the plane for a few n, with the decimal value of
//! epsilon next to the exact square.
//!
//! $ cargo run --example explicit_bound

use seshadri::bounds::cor13_bound;
use seshadri::report::DECIMAL_DIGITS;

fn main() -> seshadri::Result<()> {
    println!("{:>5} {:>20} {:>16}", "n", "eps^2 >=", "eps >=");
    for n in [16, 17, 20, 25, 50, 100, 1000] {
        let r = cor13_bound(n)?;
        println!(
            "{n:>5} {:>20} {:>16}",
            r.epsilon_lower_sq.to_string(),
            r.epsilon_lower_decimal(DECIMAL_DIGITS)?
        );
    }
    Ok(())
}
