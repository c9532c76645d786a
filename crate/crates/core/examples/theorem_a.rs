//! The weaker bound that only needs uniform degree bounds, next to the
//! stronger one at the same mu.
//!
//! $ cargo run --example theorem_a

use seshadri::bounds::{bound_thm_a, bound_thm_b};
use seshadri::certificates::CertificateStore;
use seshadri::{Rational, SurfaceData};

fn main() -> seshadri::Result<()> {
    let s = SurfaceData::p2();
    let mu = Rational::integer(21);
    for n in [16, 20, 40] {
        let store = CertificateStore::builtin_p2(n);
        let a = bound_thm_a(&s, n, &mu, &store)?;
        let b = bound_thm_b(&s, n, &mu, &store)?;
        println!("n = {n:>2}: A gives {:>12}, B gives {:>12}", a.epsilon_lower_sq.to_string(), b.epsilon_lower_sq.to_string());
    }
    Ok(())
}
