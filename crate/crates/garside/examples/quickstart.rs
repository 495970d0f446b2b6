//! Build a braid monoid, then normalize a word and standardize a conjugated
//! parabolic subgroup. Run with `cargo run -p garside --example quickstart`.

use garside::presentations::build_named;
use garside::{fractions, parabolic};

fn main() -> garside::Result<()> {
    let m = build_named("A3")?;

    let g = m.parse_word("s1.s2.s1.s1.s3")?;
    println!("normal form: {}", m.format_element(&g));

    let p = parabolic::parabolic_closure(&m, &[m.atom_id("s1").unwrap()]);
    let b = m.parse_word("s2")?;
    let (b_prime, target) = fractions::minimal_standardizer(&m, &p, &b);
    println!(
        "standardizer {} carries the conjugate onto {}",
        m.format_element(&b_prime),
        target.label(&m)
    );
    Ok(())
}
