//! The K-transform turns the convolution of configuration functions into
//! a pointwise product.

use quasifree::configspace::{k_inverse, k_transform, star};
use quasifree::{Caps, Configuration, ConfigurationFunction, Window};

fn main() -> quasifree::Result<()> {
    let w = Window::full(3);
    let caps = Caps::new(4, 2);
    let g1 = ConfigurationFunction::from_fn(w.clone(), caps, |g| 1.0 / (1.0 + g.size() as f64))?;
    let g2 = ConfigurationFunction::from_fn(w.clone(), caps, |g| (-(g.count(0) as f64)).exp())?;

    let conv = star(&g1, &g2)?;
    let (k1, k2, k12) = (k_transform(&g1, &w, caps)?, k_transform(&g2, &w, caps)?, k_transform(&conv, &w, caps)?);
    let mut worst: f64 = 0.0;
    for (gamma, v) in k12.iter().filter(|(g, _)| g.is_simple()) {
        worst = worst.max((v - k1.get(gamma) * k2.get(gamma)).abs());
    }
    println!("max |K(G1*G2) - KG1 KG2| on simple configurations: {worst:e}");
    println!("round trip K^-1 K: {:e}", k_inverse(&k1)?.max_abs_diff(&g1));

    let delta = ConfigurationFunction::delta(Configuration::from_sites([0]), w.clone(), caps)?;
    let twice = star(&delta, &delta)?;
    println!("delta * delta at [0, 0]: {}", twice.get(&Configuration::from_sites([0, 0])));
    Ok(())
}
