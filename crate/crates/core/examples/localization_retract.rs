//! `M = Z_30`, `T = V(6Z_30)`, `S = {1, 5, 25}`: the map `N ↦ 25N` from
//! `G(τ_T)` onto `G(τ_{T_S})`, checked as a retract.

use zariski::graph::{build_g_tau, clique_number, is_homomorphism, is_retract};
use zariski::module::{localize, Caps, FiniteModule};
use zariski::ring::Ring;
use zariski::spectra::{PrimeSet, ZariskiSpace};

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    let ring = Ring::cyclic(30)?;
    let space = ZariskiSpace::new(FiniteModule::regular(ring.clone(), &caps)?, &caps)?;
    let m = space.module();
    let six = m.span(&[m.element_by_coords(&[6]).expect("6 ∈ Z_30")]);
    let t = space.v_of(&six).clone();
    let s: Vec<_> = [1, 5, 25]
        .iter()
        .map(|&x| ring.elem(&[x]))
        .collect::<zariski::Result<_>>()?;
    let loc = localize(m, &s)?;
    let local = ZariskiSpace::new(loc.module.clone(), &caps)?;
    println!(
        "T = {}, e = {}, |S⁻¹M| = {}",
        space.prime_set_label(&t),
        loc.e,
        local.module().order()
    );

    let ts: Vec<usize> = t
        .positions()
        .iter()
        .map(|&p| {
            local
                .spec_position(&loc.map_submodule(m, space.prime(p)))
                .expect("S⁻¹P is prime")
        })
        .collect();
    let ts = PrimeSet::from_positions(local.spec_len(), &ts)?;
    let g = build_g_tau(&space, &t);
    let h = build_g_tau(&local, &ts);
    let phi: Vec<usize> = g
        .ids()
        .iter()
        .map(|&id| {
            let image = local.index_of(&loc.map_submodule(m, space.lattice().get(id)));
            h.position(image).expect("S⁻¹N is a vertex")
        })
        .collect();
    for (v, &w) in phi.iter().enumerate() {
        println!("  {} ↦ {}", g.labels()[v], h.labels()[w]);
    }
    let mut sigma = vec![0; h.len()];
    for (v, &w) in phi.iter().enumerate().rev() {
        sigma[w] = v;
    }
    println!("homomorphism {}", is_homomorphism(&g, &h, &phi));
    println!("retract {}", is_retract(&g, &h, &phi, &sigma));
    println!("ω(G) = {}, ω(H) = {}", clique_number(&g), clique_number(&h));
    Ok(())
}
