//! One- and two-variable Euler–Maclaurin summation against brute force.

use dirac_su3::euler_maclaurin::{
    em_main_2d, em_remainder_2d, em_sum_1d, nn_sum_via_em, CutoffOfQuadratic1d, CutoffOfQuadratic2d, EmConfig,
    Summand2d,
};
use dirac_su3::numerics::TestFunction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Σ_{n≥0} e^{−n/2} = 1/(1 − e^{−1/2}); e^{−n²} has no odd derivatives at 0,
    // so only the remainder changes with m there
    let linear = CutoffOfQuadratic1d::new(TestFunction::ExpDecay, [0.0, 1.0, 0.0], 2.0)?;
    let gauss = CutoffOfQuadratic1d::new(TestFunction::ExpDecay, [1.0, 0.0, 0.0], 1.0)?;
    println!("exact Σ e^(-n/2) = {:.15}", 1.0 / (1.0 - (-0.5f64).exp()));
    for (label, h) in [("e^(-n/2)", linear), ("e^(-n²)", gauss)] {
        for m in [2, 4, 6, 8] {
            let s = em_sum_1d(&h, &EmConfig::new(m)?)?;
            println!("{label} m={m}: main {:.15} remainder {:+.3e} total {:.15}", s.value, s.remainder, s.total());
        }
    }

    let cfg = EmConfig::new(8)?;
    for scale in [1.0, 4.0, 25.0] {
        let g = CutoffOfQuadratic2d::of_form(TestFunction::ExpDecay, scale);
        let nn = nn_sum_via_em(&g, &cfg)?;
        let top = (12.0 * scale.sqrt()) as usize + 20;
        let brute: f64 =
            (0..=top).flat_map(|p| (0..=top).map(move |q| (p, q))).map(|(p, q)| g.eval(p as f64, q as f64)).sum();
        let main = em_main_2d(&g, &cfg)?;
        let r = em_remainder_2d(&g, &cfg)?;
        println!("e^-(p²+q²+pq)/{scale}: EM {:.12} brute {brute:.12}  main {main:.12} + remainder {r:+.3e}", nn.total);
    }
    Ok(())
}
