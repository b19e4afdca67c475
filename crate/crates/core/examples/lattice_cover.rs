//! Brute-force check that the six unimodular maps T₁…T₆ cover ℤ² with
//! ℕ² images overlapping only on the axes.

use dirac_su3::spectral_action::{verify_cover, COVER_TRANSFORMS};

fn main() {
    for (i, t) in COVER_TRANSFORMS.iter().enumerate() {
        println!("T{} = {:?}, det {}, T(2, 1) = {:?}", i + 1, t.matrix, t.determinant(), t.apply(2, 1));
    }
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    print!("{}", verify_cover(n));
}
