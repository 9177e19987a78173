//! `Spec(M)` with its Zariski closed sets, and the quotient context of a
//! closed `T`, for `Z_2 ⊕ Z_3 ⊕ Z_3` over `Z_6 x Z_3`.

use zariski::module::{Caps, FiniteModule};
use zariski::ring::Ring;
use zariski::spectra::ZariskiSpace;

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    let m = FiniteModule::direct_sum(Ring::new(vec![6, 3])?, vec![vec![2], vec![3, 3]], &caps)?;
    let space = ZariskiSpace::new(m, &caps)?;
    println!("Spec(M) has {} primes", space.spec_len());
    for p in 0..space.spec_len() {
        let prime = space.prime(p);
        println!(
            "  P{p} = {}  (P:M) = {}",
            space.label(prime),
            space.module().colon(prime)
        );
    }
    println!("closed sets:");
    for t in space.closed_sets() {
        let irreducible = space.is_irreducible(&t)?;
        println!("  {} irreducible={irreducible}", space.prime_set_label(&t));
    }
    println!(
        "primeful {}, X-injective {}",
        space.is_primeful(),
        space.is_x_injective()
    );

    let t = space
        .closed_sets()
        .into_iter()
        .find(|t| !t.is_empty() && t.len() < space.spec_len())
        .expect("a proper closed set");
    let ctx = space.t_context(&t)?;
    println!("T = {}", space.prime_set_label(&t));
    println!(
        "  ∩T = {}, Q = {}, |M/Q| = {}",
        space.label(&ctx.meet),
        space.label(&ctx.q),
        ctx.quotient.order()
    );
    Ok(())
}
