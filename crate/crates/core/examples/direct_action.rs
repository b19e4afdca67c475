//! Direct summation of Tr f(D_t²/Λ²) over the spectrum, with the certified
//! truncation.

use dirac_su3::numerics::TestFunction;
use dirac_su3::spectral_action::direct_action_detailed;
use dirac_su3::spectrum::FamilyParam;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = FamilyParam::from_ratio(1, 2);
    for f in [TestFunction::ExpDecay, TestFunction::plateau(1.0, 2.0)?] {
        println!("f = {f}");
        println!("{:>6} {:>24} {:>12} {:>10} {:>8}", "Λ", "action", "cutoff", "tail", "lines");
        for lambda in [1.0, 2.0, 5.0, 10.0, 20.0] {
            let a = direct_action_detailed(&t, lambda, &f, 1e-12)?;
            println!("{lambda:>6} {:>24.12} {:>12.1} {:>10.1e} {:>8}", a.value, a.cutoff, a.tail_bound, a.lines);
        }
    }
    Ok(())
}
