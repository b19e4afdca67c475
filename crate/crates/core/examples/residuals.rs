//! Direct action minus the four-term expansion, with the fitted log-log
//! slope of |residual| against Λ.

use dirac_su3::numerics::{TestFunction, DEFAULT_TOL_2D};
use dirac_su3::spectral_action::residual_report;
use dirac_su3::spectrum::FamilyParam;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambdas = [10.0, 14.0, 20.0, 28.0, 40.0];
    for (n, d) in [(1, 3), (1, 2), (0, 1)] {
        for f in [TestFunction::ExpDecay, TestFunction::plateau(1.0, 2.0)?] {
            let report = residual_report(&FamilyParam::from_ratio(n, d), &f, &lambdas, 1e-12, DEFAULT_TOL_2D)?;
            println!("t={n}/{d} f={f}: slope {:.3}", report.slope);
            for row in &report.rows {
                println!(
                    "  Λ={:>4}: direct {:.10e} expansion {:.10e} relative residual {:+.3e}",
                    row.lambda,
                    row.direct,
                    row.expansion,
                    row.residual / row.direct
                );
            }
        }
    }
    Ok(())
}
