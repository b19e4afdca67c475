//! The spectral action from Euler–Maclaurin applied to each of the eight
//! table rows, compared with direct summation.

use dirac_su3::euler_maclaurin::EmConfig;
use dirac_su3::numerics::TestFunction;
use dirac_su3::spectral_action::{direct_action, em_action};
use dirac_su3::spectrum::FamilyParam;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = TestFunction::ExpDecay;
    for (n, d) in [(1, 2), (1, 3), (0, 1)] {
        let t = FamilyParam::from_ratio(n, d);
        for m in [6, 8] {
            let cfg = EmConfig::for_action(m)?;
            for lambda in [2.0, 5.0, 10.0] {
                let em = em_action(&t, lambda, &f, &cfg)?;
                let direct = direct_action(&t, lambda, &f, 1e-12)?;
                println!(
                    "t={n}/{d} m={m} Λ={lambda:>4}: em {em:.10e} direct {direct:.10e} rel {:.1e}",
                    (em - direct).abs() / direct
                );
            }
        }
    }
    Ok(())
}
