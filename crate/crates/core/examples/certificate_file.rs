//! Supply degree bounds as certificate text instead of the built-ins and
//! see which hypotheses they cover.
//!
//! $ cargo run --example certificate_file

use seshadri::bounds::{bound_thm_b, exact_rank1};
use seshadri::certificates::{check_hypotheses, parse_certificates, CertificateStore, Theorem};
use seshadri::report::hypothesis_table;
use seshadri::{Error, Rational, SurfaceData};

const CERTS: &str = "\
# three points
alpha uniform m=1 n=3 bound_sq=4
";

fn main() -> seshadri::Result<()> {
    let s = SurfaceData::p2();
    let (n, mu) = (3, Rational::integer(2));
    let mut store = CertificateStore::new();
    store.extend(parse_certificates(CERTS, "inline")?);
    print!("{}", hypothesis_table(&check_hypotheses(Theorem::B, &s, n, &mu, &store)?));

    match bound_thm_b(&s, n, &mu, &store) {
        Ok(r) => println!("eps^2 >= {}", r.epsilon_lower_sq),
        Err(e @ Error::Unresolved { .. }) => println!("no bound: {e}"),
        Err(e) => return Err(e),
    }

    // the survivor is the line through two of the points, which settles n = 3
    store.extend(parse_certificates("curve almost m=1 k=-1 n=3 degree=1", "line")?);
    let r = exact_rank1(&s, n, &store)?;
    println!("eps^2 = {} exactly", r.epsilon_lower_sq);

    // malformed lines are all reported at once
    if let Err(e) = parse_certificates("alpha uniform m=0 n=3 bound_sq=1\nalpha weird\n", "bad") {
        println!("{e}");
    }
    Ok(())
}
