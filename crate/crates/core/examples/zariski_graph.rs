//! `G(τ_T)` for every closed `T` of `Z_n`, for a few `n`.

use zariski::graph::build_g_tau;
use zariski::module::{Caps, FiniteModule};
use zariski::ring::Ring;
use zariski::spectra::ZariskiSpace;

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    for n in [12, 30, 36] {
        let space = ZariskiSpace::new(FiniteModule::regular(Ring::cyclic(n)?, &caps)?, &caps)?;
        for t in space.closed_sets().into_iter().filter(|t| !t.is_empty()) {
            let g = build_g_tau(&space, &t);
            let edges: Vec<String> = g
                .edges()
                .iter()
                .map(|&(a, b)| format!("{}-{}", g.labels()[a], g.labels()[b]))
                .collect();
            println!(
                "Z_{n}, T = {}: {}",
                space.prime_set_label(&t),
                edges.join(" ")
            );
        }
    }
    Ok(())
}
