//! Ten points on the plane at mu = 21: enumerate the obstruction classes,
//! check the hypotheses against the built-in facts, and print the audited
//! bound.
//!
//! $ cargo run --example nagata_ten

use seshadri::bounds::bound_thm_b;
use seshadri::certificates::{check_hypotheses, CertificateStore, Theorem};
use seshadri::report::{bound_table, candidates_table, hypothesis_table};
use seshadri::{enumerate_homogeneous, EnumParams, Rational, SurfaceData};

fn main() -> seshadri::Result<()> {
    let s = SurfaceData::p2();
    let (n, mu) = (10, Rational::integer(21));
    let store = CertificateStore::builtin_p2(n);

    let cs = enumerate_homogeneous(&s, n, &EnumParams::from_mu(n, mu.clone())?)?;
    print!("{}", candidates_table(&cs));
    println!();
    print!("{}", hypothesis_table(&check_hypotheses(Theorem::B, &s, n, &mu, &store)?));
    println!();
    print!("{}", bound_table(&bound_thm_b(&s, n, &mu, &store)?)?);
    Ok(())
}
