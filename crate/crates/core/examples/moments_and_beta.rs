//! Symmetric-subspace moments of qubit and qutrit states and the β̄
//! parameters they induce for each design.

use qdesign::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
use qdesign::moments::{beta_parameters, beta_range, sym_moment, sym_moment_direct};
use qdesign::quantum::{random_density_seeded, DensityMatrix, Ensemble};

fn main() -> qdesign::Result<()> {
    let qutrit = random_density_seeded(3, 42, Ensemble::HilbertSchmidt)?;
    println!("random qutrit, purity {:.6}", qutrit.purity());
    for s in 2..=5 {
        println!(
            "  s = {s}: spectrum {:.12}  tensor projector {:.12}",
            sym_moment(&qutrit, s)?,
            sym_moment_direct(&qutrit, s)?
        );
    }

    println!("\nβ̄ over the mixing line ρ = diag(1 − λ, λ):");
    for which in BuiltinDesign::ALL {
        let a = assign_povms(&builtin_design(which), &Grouping::Single)?;
        let t = which.strength();
        let (lo, hi) = beta_range(a.outcomes(), 2, t);
        print!("  {which:<18} range [{lo:.4e}, {hi:.4e}]:");
        for lambda in [0.0, 0.25, 0.5] {
            let rho = DensityMatrix::diagonal(&[1.0 - lambda, lambda])?;
            let b = beta_parameters(&a, &rho, t)?;
            print!("  λ={lambda}: {:.4e} (Σp^t = {:.4e})", b.beta, b.index_sum);
        }
        println!();
    }
    Ok(())
}
