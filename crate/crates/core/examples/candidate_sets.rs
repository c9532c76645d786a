//! How the obstruction set grows as delta shrinks, and the next possible
//! value of the constant above a known lower bound.
//!
//! $ cargo run --example candidate_sets

use seshadri::enumerate::{next_threshold, Threshold};
use seshadri::{enumerate_homogeneous, EnumParams, Rational, SurfaceData};

fn main() -> seshadri::Result<()> {
    let s = SurfaceData::p2();
    let n = 10;
    for mu in [2, 5, 21, 100, 1000] {
        let p = EnumParams::from_mu(n, Rational::integer(mu))?;
        let cs = enumerate_homogeneous(&s, n, &p)?;
        let ratios: Vec<String> = cs.ratios.iter().map(|r| r.to_string()).collect();
        println!("mu = {mu:>4}  delta = {:<8} ratios: {}", p.delta(), ratios.join(" "));
    }

    // once epsilon > b is known the constant jumps to the next candidate
    let p = EnumParams::from_mu(n, Rational::integer(21))?;
    let mut b = Rational::frac(3, 10);
    loop {
        match next_threshold(&s, n, &p, &b)? {
            Threshold::Next(r) => {
                println!("epsilon > {b} forces epsilon >= {r}");
                b = r;
            }
            Threshold::Limit { bound_sq } => {
                println!("epsilon > {b} forces epsilon^2 >= {bound_sq}");
                break;
            }
        }
    }
    Ok(())
}
