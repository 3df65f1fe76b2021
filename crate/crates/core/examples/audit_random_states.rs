//! Audits every bound on seeded random states for each design and prints a
//! full report for one of them.

use qdesign::bounds::audit_state;
use qdesign::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
use qdesign::entropy::Alpha;
use qdesign::quantum::{random_density, seeded_rng, Ensemble};

fn main() -> qdesign::Result<()> {
    let mut rng = seeded_rng(7);
    for which in BuiltinDesign::ALL {
        let a = assign_povms(&builtin_design(which), &Grouping::Single)?;
        let t = which.strength();
        let alphas = [Alpha::Finite(t as f64), Alpha::Finite(2.0 * t as f64), Alpha::Infinity];
        let (mut violations, mut worst) = (0, f64::INFINITY);
        for _ in 0..500 {
            let rho = random_density(2, Ensemble::HilbertSchmidt, &mut rng)?;
            let report = audit_state(&a, &rho, &alphas, t)?;
            violations += usize::from(!report.flags.all_satisfied);
            worst = worst.min(report.worst_margin());
        }
        println!("{which:<18} 500 states, {violations} violations, smallest margin {worst:.3e} nats");
    }

    let a = assign_povms(&builtin_design(BuiltinDesign::Icosahedron), &Grouping::Single)?;
    let rho = random_density(2, Ensemble::Pure, &mut rng)?;
    let report = audit_state(&a, &rho, &[Alpha::Finite(5.0), Alpha::Infinity], 5)?;
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
