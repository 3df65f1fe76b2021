//! The three qubit MUBs from the octahedron: the purity form of the
//! min-entropy bound against the general root form, and the
//! Landau–Pollak chain for the maximal probabilities.

use qdesign::bounds::{bound_prop1, landau_pollak_cap, mub_min_bound};
use qdesign::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
use qdesign::moments::beta_parameters;
use qdesign::quantum::{bloch_to_state, DensityMatrix};

fn main() -> qdesign::Result<()> {
    let mub = assign_povms(&builtin_design(BuiltinDesign::Octahedron), &Grouping::octahedron_mub())?;
    println!("{:>6} {:>8} {:>14} {:>14}", "lambda", "purity", "purity form", "root form");
    for i in 0..=10 {
        let lambda = 0.05 * i as f64;
        let rho = DensityMatrix::diagonal(&[1.0 - lambda, lambda])?;
        let beta = beta_parameters(&mub, &rho, 3)?.beta_n;
        println!(
            "{lambda:>6.2} {:>8.4} {:>14.10} {:>14.10}",
            rho.purity(),
            mub_min_bound(rho.purity())?,
            bound_prop1(2, 3, beta)?
        );
    }

    println!("\nLandau-Pollak chain for pure states:");
    for bloch in [[0.0, 0.0, 1.0], [1.0, 1.0, 1.0], [0.3, -0.4, 0.866]] {
        let n: f64 = bloch.iter().map(|x| x * x).sum::<f64>().sqrt();
        let rho = DensityMatrix::from_pure(&bloch_to_state(bloch.map(|x| x / n))?);
        let lp = landau_pollak_cap(&mub, &rho, 3)?;
        println!("  {bloch:?}: actual {:.6} <= Jensen {:.6} <= cap {:.6}", lp.actual, lp.jensen_average, lp.cap);
    }
    Ok(())
}
