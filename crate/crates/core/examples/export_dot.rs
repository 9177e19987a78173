//! Writes `G(τ_Spec)`, `AG` and `AG*` of `Z_2 ⊕ Z_3` over `Z_6` as DOT, and
//! `G(τ_Spec)` of `Z_30` as JSON with its metrics.

use zariski::graph::{build_ag, build_ag_star, build_g_tau, metrics, to_dot, to_json};
use zariski::module::{Caps, FiniteModule};
use zariski::ring::Ring;
use zariski::spectra::ZariskiSpace;

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    let m = FiniteModule::direct_sum(Ring::cyclic(6)?, vec![vec![2, 3]], &caps)?;
    let space = ZariskiSpace::new(m, &caps)?;
    print!("{}", to_dot(&build_g_tau(&space, &space.whole_spec())));
    print!("{}", to_dot(&build_ag(&space)));
    print!("{}", to_dot(&build_ag_star(&space)));

    let z30 = ZariskiSpace::new(FiniteModule::regular(Ring::cyclic(30)?, &caps)?, &caps)?;
    let g = build_g_tau(&z30, &z30.whole_spec());
    let m = metrics(&g, caps.max_chi_vertices)?;
    println!(
        "{}",
        serde_json::to_string(&to_json(&g, Some(&m))).expect("json")
    );
    Ok(())
}
