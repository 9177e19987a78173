//! `AG(M)` and its colon-filtered subgraph `AG(M)*` for `Z_12` and for
//! `Z_2 ⊕ Z_2` over `Z_4`.

use zariski::graph::{build_ag, build_ag_star, Graph};
use zariski::module::{Caps, FiniteModule};
use zariski::ring::Ring;
use zariski::spectra::ZariskiSpace;

fn show(name: &str, g: &Graph) {
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|&(a, b)| format!("{}-{}", g.labels()[a], g.labels()[b]))
        .collect();
    println!("  {name}: {} vertices, edges {}", g.len(), edges.join(" "));
}

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    let modules = [
        FiniteModule::regular(Ring::cyclic(12)?, &caps)?,
        FiniteModule::direct_sum(Ring::cyclic(4)?, vec![vec![2, 2]], &caps)?,
    ];
    for m in modules {
        let space = ZariskiSpace::new(m, &caps)?;
        println!(
            "|M| = {}, Ann(M) = {}",
            space.module().order(),
            space.module().annihilator()
        );
        show("AG", &build_ag(&space));
        show("AG*", &build_ag_star(&space));
    }
    Ok(())
}
