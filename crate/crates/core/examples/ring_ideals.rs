//! Ideals, primes, the nilradical and idempotent lifting in `Z_12 x Z_5`.

use zariski::ring::Ring;

fn main() -> zariski::Result<()> {
    let r = Ring::new(vec![12, 5])?;
    println!("R = {r}, |R| = {}", r.order());
    let ideals = r.all_ideals();
    println!("{} ideals:", ideals.len());
    for i in &ideals {
        let tags = [
            (r.is_prime_ideal(i), "prime"),
            (r.is_minimal_ideal(i), "minimal"),
            (r.is_nil(i), "nil"),
        ];
        let tags: Vec<&str> = tags.iter().filter(|t| t.0).map(|t| t.1).collect();
        println!("  {i} {}", tags.join(" "));
    }
    let min: Vec<String> = r.minimal_primes().iter().map(|p| p.to_string()).collect();
    println!("Min(R) = {}", min.join(", "));
    println!("nilradical = {}", r.nilradical());

    let e: Vec<String> = r
        .nontrivial_idempotents()
        .iter()
        .map(|e| e.to_string())
        .collect();
    println!("nontrivial idempotents: {}", e.join(", "));

    // 4 is idempotent modulo the nil ideal (6)(1) of Z_12 x Z_5
    let nil = r.ideal(&[6, 5])?;
    let u = r.elem(&[10, 1])?;
    let lifted = r.lift_idempotent(&u, &nil)?;
    println!("{u} lifts along {nil} to {lifted}");
    Ok(())
}
