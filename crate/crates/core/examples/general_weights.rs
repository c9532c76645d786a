//! Obstruction classes for an unequal weight vector.
//!
//! $ cargo run --example general_weights

use seshadri::enumerate::{enumerate_general, EnumCap};
use seshadri::report::general_candidates_table;
use seshadri::{Rational, SurfaceData, WeightVector};

fn main() -> seshadri::Result<()> {
    // only the inequalities valid for arbitrary weights are applied, so some
    // listed classes (9L - 6E_1 - 4E_2 - 4E_3 - 4E_4) fail adjunction
    let s = SurfaceData::p2();
    let w = WeightVector::new(vec![Rational::integer(2), Rational::one(), Rational::one(), Rational::one()])?;
    for delta in [Rational::one(), Rational::frac(1, 4), Rational::frac(1, 20)] {
        let cs = enumerate_general(&s, &w, &delta, EnumCap { max_norm_sq: 400 })?;
        print!("{}", general_candidates_table(&cs));
    }
    Ok(())
}
