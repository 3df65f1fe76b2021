//! Steering inequalities with matched MUB measurements: separable states
//! satisfy both, the maximally entangled state violates both.

use qdesign::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
use qdesign::entropy::Alpha;
use qdesign::quantum::seeded_rng;
use qdesign::steering::{matched_alice_povms, steering_check_maxprob, steering_check_renyi, BipartiteDensityMatrix};

fn main() -> qdesign::Result<()> {
    let bob = assign_povms(&builtin_design(BuiltinDesign::Octahedron), &Grouping::octahedron_mub())?;
    let alice = matched_alice_povms(&bob)?;
    let mut rng = seeded_rng(1);
    let states = [
        ("separable (1 term)", BipartiteDensityMatrix::random_separable(2, 1, &mut rng)?),
        ("separable (4 terms)", BipartiteDensityMatrix::random_separable(2, 4, &mut rng)?),
        ("maximally entangled", BipartiteDensityMatrix::maximally_entangled(2)?),
    ];
    for (name, rho) in &states {
        println!("{name}:");
        for alpha in [Alpha::Finite(3.0), Alpha::Finite(5.0), Alpha::Infinity] {
            let r = steering_check_renyi(rho, &alice, &bob, alpha)?;
            println!("  Renyi alpha={alpha:<4} lhs {:.6} >= rhs {:.6}: {}", r.lhs, r.rhs, r.satisfied);
        }
        let r = steering_check_maxprob(rho, &alice, &bob)?;
        println!("  max probability      lhs {:.6} <= rhs {:.6}: {}", r.lhs, r.rhs, r.satisfied);
    }
    Ok(())
}
