//! Exact metrics of `G(τ_Spec)` for `Z_n`, `n ≤ 60` with a non-empty graph.

use zariski::graph::{build_g_tau, metrics};
use zariski::module::{Caps, FiniteModule};
use zariski::ring::Ring;
use zariski::spectra::ZariskiSpace;

fn plain(v: serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    println!(
        "{:>4} {:>3} {:>3} {:>6} {:>6} {:>3} {:>3} star",
        "n", "|V|", "|E|", "diam", "girth", "ω", "χ"
    );
    for n in 2..=60 {
        let space = ZariskiSpace::new(FiniteModule::regular(Ring::cyclic(n)?, &caps)?, &caps)?;
        let g = build_g_tau(&space, &space.whole_spec());
        if g.is_empty() {
            continue;
        }
        let m = metrics(&g, caps.max_chi_vertices)?;
        let diam = plain(serde_json::json!(m.diameter));
        let girth = plain(serde_json::json!(m.girth));
        println!(
            "{n:>4} {:>3} {:>3} {diam:>6} {girth:>6} {:>3} {:>3} {}",
            m.vertices, m.edges, m.clique_number, m.chromatic_number, m.star
        );
    }
    Ok(())
}
