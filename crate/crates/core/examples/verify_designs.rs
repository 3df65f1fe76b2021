//! Verifies the built-in qubit designs, shows how a design fails one order
//! above its strength, and round-trips a design through a JSON file.

use qdesign::designs::{builtin_design, frame_potential, verify_design, BuiltinDesign, VerifyMethod};
use qdesign::io::{load_design, save_design};

fn main() -> qdesign::Result<()> {
    for which in BuiltinDesign::ALL {
        let design = builtin_design(which);
        let t = which.strength();
        println!("{which}: K = {}, claimed strength {t}", design.len());
        for method in [VerifyMethod::Frame, VerifyMethod::Operator] {
            let report = verify_design(&design, t, 1e-10, method)?;
            let worst = report.residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
            println!("  {method:<8} passes = {}  worst residual = {worst:.2e}", report.passes);
        }
    }

    let oct = builtin_design(BuiltinDesign::Octahedron);
    let report = verify_design(&oct, 4, 1e-10, VerifyMethod::Frame)?;
    println!(
        "\noctahedron at t = 4: frame potential {:.12} vs {:.12}, residual {:.6e}",
        frame_potential(&oct, 4),
        0.2,
        report.residual(4).unwrap()
    );

    let path = std::env::temp_dir().join("qdesign-icosahedron.json");
    save_design(&builtin_design(BuiltinDesign::Icosahedron), &path)?;
    let loaded = load_design(&path)?;
    let ok = verify_design(&loaded, 5, 1e-10, VerifyMethod::Frame)?.passes;
    println!("reloaded {} from {}: 5-design = {ok}", loaded.len(), path.display());
    Ok(())
}
