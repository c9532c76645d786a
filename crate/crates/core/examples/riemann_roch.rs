//! The dimension count that produces curves of degree a through n points
//! with multiplicity m.
//!
//! $ cargo run --example riemann_roch

use seshadri::bounds::ah_condition;
use seshadri::SurfaceData;

fn main() {
    let s = SurfaceData::p2();
    for (n, m) in [(10, 1), (10, 2), (16, 3)] {
        let a = (1..).find(|&a| ah_condition(&s, n, m, a)).unwrap();
        println!("n = {n}, m = {m}: smallest degree with enough sections is {a}");
    }
}
