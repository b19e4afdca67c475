//! The four-term large-Λ expansion, its coefficient integrals, and the
//! t = 1/3 leading term from Poisson summation.

use dirac_su3::numerics::{TestFunction, DEFAULT_TOL_2D};
use dirac_su3::spectral_action::{direct_action, expansion_action, poisson_leading, CoefficientIntegrals};
use dirac_su3::spectrum::FamilyParam;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for f in [TestFunction::ExpDecay, TestFunction::plateau(1.0, 2.0)?] {
        let c = CoefficientIntegrals::for_function(&f, DEFAULT_TOL_2D)?;
        println!("f = {f}: quadrant integrals {c:?}");
        for (n, d) in [(0, 1), (1, 3), (1, 2), (2, 3)] {
            let b = expansion_action(&FamilyParam::from_ratio(n, d), 10.0, &f, DEFAULT_TOL_2D)?;
            println!(
                "  t={n}/{d}: c8 {:.6} c6 {:+.6} c4 {:+.6} c2 {:+.6}  total at Λ=10 {:.6e}",
                b.c8, b.c6, b.c4, b.c2, b.total
            );
        }
        for lambda in [5.0, 10.0, 20.0] {
            let leading = poisson_leading(lambda, &f, DEFAULT_TOL_2D)?;
            let direct = direct_action(&FamilyParam::from_ratio(1, 3), lambda, &f, 1e-12)?;
            println!(
                "  t=1/3 Λ={lambda}: direct {direct:.12e} Poisson {leading:.12e} rel {:.1e}",
                (direct - leading).abs() / direct
            );
        }
    }
    Ok(())
}
