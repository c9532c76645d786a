//! Exact constants for two and five points from the line and the conic
//! through them.
//!
//! $ cargo run --example exact_small_n

use seshadri::bounds::exact_rank1;
use seshadri::certificates::{parse_certificates, CertificateStore};
use seshadri::SurfaceData;

fn main() -> seshadri::Result<()> {
    let s = SurfaceData::p2();
    let mut store = CertificateStore::new();
    store.extend(parse_certificates(
        "curve uniform m=1 n=2 degree=1\ncurve uniform m=1 n=5 degree=2\n",
        "facts",
    )?);
    for n in [2, 5] {
        let r = exact_rank1(&s, n, &store)?;
        println!("n = {n}: eps^2 = {} (eps = {})", r.epsilon_lower_sq, r.epsilon_lower_decimal(6)?);
    }
    Ok(())
}
