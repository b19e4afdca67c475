//! Builds the spectrum two ways, from the eight-row table and from the
//! Clebsch–Gordan decomposition of V_ρ ⊗ V_(p,q), and compares them.

use dirac_su3::rep_theory::{clebsch_gordan_rho, weyl_dim, Rational, Weight};
use dirac_su3::spectrum::{build_spectrum, spectrum_third, FamilyParam, Route};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Weight::new(2, 1);
    let summands = clebsch_gordan_rho(w)?;
    let dims: Vec<u128> = summands.iter().map(|&s| weyl_dim(s)).collect::<Result<_, _>>()?;
    println!("V_(1,1) ⊗ V_(2,1) = {summands:?}");
    println!("dimensions {dims:?} sum to {} = 8 · {}", dims.iter().sum::<u128>(), weyl_dim(w)?);

    let cutoff = Rational::from(300);
    for (n, d) in [(0, 1), (1, 4), (1, 2), (7, 5)] {
        let t = FamilyParam::from_ratio(n, d);
        let table = build_spectrum(&t, cutoff, Route::Table)?;
        let principles = build_spectrum(&t, cutoff, Route::Principles)?;
        let mirrored = build_spectrum(&t.mirrored(), cutoff, Route::Table)?;
        println!(
            "t = {n}/{d}: {} lines, routes agree: {}, same as t -> 1-t: {}",
            table.len(),
            table.lines == principles.lines,
            table.lines == mirrored.lines
        );
    }

    let third = build_spectrum(&FamilyParam::from_ratio(1, 3), cutoff, Route::Table)?;
    println!("t = 1/3 matches p²+q²+pq with 2p²q²(p+q)²: {}", third.lines == spectrum_third(cutoff)?.lines);
    Ok(())
}
