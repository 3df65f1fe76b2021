//! Bound curves over the admissible β̄ interval for each design, written as
//! CSV files, plus the ratios and gaps at the two ends of each curve.

use std::fs;

use qdesign::designs::{assign_povms, builtin_design, BuiltinDesign, Grouping};
use qdesign::entropy::Alpha;
use qdesign::sweep::sweep_bounds;

fn main() -> qdesign::Result<()> {
    let dir = std::env::temp_dir().join("qdesign-curves");
    fs::create_dir_all(&dir)?;
    let oct = builtin_design(BuiltinDesign::Octahedron);
    let cases = [
        ("octahedron", assign_povms(&oct, &Grouping::Single)?, 3),
        ("octahedron_mub", assign_povms(&oct, &Grouping::octahedron_mub())?, 3),
        ("icosahedron", assign_povms(&builtin_design(BuiltinDesign::Icosahedron), &Grouping::Single)?, 5),
        ("icosidodecahedron", assign_povms(&builtin_design(BuiltinDesign::Icosidodecahedron), &Grouping::Single)?, 5),
    ];
    for (name, a, t) in cases {
        let alphas = [Alpha::Finite(t as f64), Alpha::Finite(2.0 * t as f64), Alpha::Infinity];
        let sweep = sweep_bounds(&a, t, 200, &alphas)?;
        let path = dir.join(format!("{name}.csv"));
        fs::write(&path, sweep.to_csv())?;
        let (first, last) = (&sweep.rows[0], sweep.rows.last().unwrap());
        println!(
            "{name:<18} ratio at left end {:.6}  gain at right end {:5.2}%  -> {}",
            first.bound_prop1 / first.bound_prior,
            100.0 * (last.bound_prop1 - last.bound_prior) / last.bound_prior,
            path.display()
        );
    }
    Ok(())
}
