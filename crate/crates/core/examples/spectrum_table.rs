//! Prints the merged spectrum of D_t² up to a cutoff.
//!
//! `cargo run --example spectrum_table -- 1/4 40`

use dirac_su3::rep_theory::{format_rational, parse_rational, rational_to_f64};
use dirac_su3::spectrum::{build_spectrum, FamilyParam, Route};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let t = parse_rational(args.first().map(String::as_str).unwrap_or("1/3"))?;
    let cutoff = parse_rational(args.get(1).map(String::as_str).unwrap_or("40"))?;

    let spectrum = build_spectrum(&FamilyParam::new(t), cutoff, Route::Table)?;
    println!("t = {}, eigenvalues up to {}", format_rational(&t), format_rational(&cutoff));
    println!("{:>12} {:>14} {:>16}", "exact", "decimal", "multiplicity");
    for line in spectrum.iter() {
        println!(
            "{:>12} {:>14.6} {:>16}",
            format_rational(&line.eigenvalue),
            rational_to_f64(&line.eigenvalue),
            line.multiplicity
        );
    }
    println!("{} distinct eigenvalues, {} states", spectrum.len(), spectrum.total_multiplicity());
    Ok(())
}
