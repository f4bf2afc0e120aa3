//! Free reduction, conjugation, commutators and conjugacy in a free group.
//!
//! cargo run --example words

use gtorsion::commutator::split_commutator;
use gtorsion::word::{free_conjugate, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x: Word = "a b^2 b^-1 a^-1 c".parse()?;
    println!("reduced:      {x}");

    let g: Word = "b a".parse()?;
    let xg = x.conjugate(&g);
    println!("x^g:          {xg}");
    println!("cyclic form:  {}", xg.cyclic_normal_form());

    let h = free_conjugate(&x, &xg).expect("conjugate by construction");
    assert_eq!(x.conjugate(&h), xg);
    println!("conjugator:   {h}");

    // [x, yz] = [x, z] [x, y]^z
    let (y, z): (Word, Word) = ("a c".parse()?, "b^-1".parse()?);
    let (f1, f2) = split_commutator(&x, &y, &z);
    assert_eq!(Word::commutator(&x, &(&y * &z)), &f1 * &f2);
    println!("[x, yz] = ({f1}) ({f2})");
    Ok(())
}
