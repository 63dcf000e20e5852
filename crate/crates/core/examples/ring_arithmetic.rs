//! Bicomplex arithmetic: products, the bar conjugation, idempotent splitting,
//! zero divisors and the exponential forms.

use bicomplex_fields::{exp_bicomplex, exp_hyperbolic_split, Bicomplex};

fn main() {
    let a = Bicomplex::new(1.0, 2.0, -0.5, 0.25);
    let b = Bicomplex::new(-0.3, 0.1, 0.7, 1.0);
    println!("a      = {a}");
    println!("b      = {b}");
    println!("a * b  = {}", a * b);
    println!("i * j  = {}", Bicomplex::I * Bicomplex::J);
    println!("j * j  = {}", Bicomplex::J * Bicomplex::J);
    println!("a bar  = {}", a.conj_bar());
    println!("|a|    = {}", a.modulus());

    let (plus, minus) = a.idempotent_decompose();
    println!("a = J+ ({plus}) + J- ({minus})");
    assert_eq!(Bicomplex::from_idempotent(plus, minus), a);

    let jp = Bicomplex::J_PLUS;
    let jm = Bicomplex::J_MINUS;
    println!("J+ J+ = {}   J+ J- = {}", jp * jp, jp * jm);
    match jp.inverse() {
        Ok(_) => println!("J+ is invertible"),
        Err(e) => println!("J+ has no inverse: {e}"),
    }
    println!("a^-1 a = {}", a.inverse().expect("generic element") * a);

    println!("e^(i 0.3) e^(j 0.2) = {}", exp_bicomplex(0.3, 0.2));
    println!("e^(j 0.2)           = {}", exp_hyperbolic_split(0.2));
    println!("exp(0.3 i + 0.2 j)  = {}", Bicomplex::new(0.0, 0.3, 0.2, 0.0).exp());
}
