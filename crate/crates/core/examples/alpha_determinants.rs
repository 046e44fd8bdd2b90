//! The alpha-determinant interpolates between determinant and permanent.

use quasifree::alphadet::{alpha_determinant, alpha_determinant_cycles, alpha_determinant_enumerated, determinant, permanent};
use quasifree::kernels::random_psd;

fn main() -> quasifree::Result<()> {
    let m = random_psd(6, 1.0, 3);
    println!("det {:.6}  per {:.6}", determinant(&m), permanent(&m)?);
    for alpha in [-1.0, -0.5, -1.0 / 3.0, 0.0, 0.5, 1.0] {
        let fast = alpha_determinant(&m, alpha)?;
        let cycles = alpha_determinant_cycles(&m, alpha)?;
        let naive = alpha_determinant_enumerated(&m, alpha)?;
        println!("alpha {alpha:>6.3}: {fast:.10}  cycle dp gap {:.1e}  enumeration gap {:.1e}", (fast - cycles).abs(), (fast - naive).abs());
    }
    // the diagonal product is what remains at alpha = 0
    println!("prod diag {:.6}", m.diagonal().product());
    Ok(())
}
