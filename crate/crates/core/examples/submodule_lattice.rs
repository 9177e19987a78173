//! The submodule lattice of `Z_2 ⊕ Z_4` over `Z_4`, with colon ideals and
//! the module predicates.

use zariski::module::{composition_length, enumerate_submodules, Caps, FiniteModule};
use zariski::ring::Ring;

fn main() -> zariski::Result<()> {
    let caps = Caps::default();
    let m = FiniteModule::direct_sum(Ring::cyclic(4)?, vec![vec![2, 4]], &caps)?;
    let lattice = enumerate_submodules(&m, &caps)?;
    println!(
        "|M| = {}, {} submodules, Ann(M) = {}",
        m.order(),
        lattice.len(),
        m.annihilator()
    );
    for n in lattice.iter() {
        println!(
            "  {:<14} |N| = {:<2} (N:M) = {}",
            m.submodule_label(n),
            n.len(),
            m.colon(n)
        );
    }
    println!("composition length {}", composition_length(&lattice));
    println!("faithful {}", m.is_faithful());
    println!("cyclic {}", m.is_cyclic());
    println!("prime module {}", m.is_prime_module());
    println!("semiprime {}", m.is_semiprime(&lattice));
    println!("multiplication {}", m.is_multiplication(&lattice));
    Ok(())
}
