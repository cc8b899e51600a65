//! Prints CB, BBLSY, AP and BKK for a few small networks.

use topoflow::algebra::{ap_bound, bblsy_bound, bkk_bound, cb_bound};
use topoflow::network::{make_bridged_cliques, make_complete, make_path, make_ring};

fn main() -> topoflow::Result<()> {
    let cases = [
        ("path(6)", make_path(6)?),
        ("ring(6)", make_ring(6)?),
        ("complete(5)", make_complete(5)?),
        ("bridged(3,3)", make_bridged_cliques(3, 3)?),
    ];
    println!("{:<14} {:>8} {:>8} {:>8} {:>8}", "network", "BKK", "AP", "BBLSY", "CB");
    for (name, t) in &cases {
        let n = t.n();
        let bkk = bkk_bound(t, 0)?;
        let ap = ap_bound(t)?;
        println!("{name:<14} {:>8} {:>8} {:>8} {:>8}", bkk.total, ap, bblsy_bound(n), cb_bound(n));
        assert!(bkk.total <= ap && ap <= bblsy_bound(n) && bblsy_bound(n) <= cb_bound(n));
    }
    Ok(())
}
