//! The maximal-probability root Υ by Newton's method, the closed forms for
//! t = 2 and t = 3, and the one-step upper estimate.

use qdesign::upsilon::{
    chi, newton_iterates, upsilon, upsilon_closed_t2, upsilon_closed_t3, upsilon_nr1, UpsilonQuery,
};

fn main() -> qdesign::Result<()> {
    println!("{:>4} {:>2} {:>10} {:>16} {:>16} {:>16} {:>10}", "n", "t", "beta", "Newton", "closed", "one step", "chi");
    for (n, t, beta) in [(2, 2, 0.7), (6, 2, 0.3), (2, 3, 0.5), (6, 3, 1.0 / 18.0), (30, 3, 0.01), (12, 5, 2.572e-4)] {
        let q = UpsilonQuery::new(n, t, beta)?;
        let r = upsilon(&q, 1e-12)?;
        let closed = match t {
            2 => format!("{:.12}", upsilon_closed_t2(n, beta)?),
            3 => format!("{:.12}", upsilon_closed_t3(n, beta)?),
            _ => "-".into(),
        };
        println!(
            "{n:>4} {t:>2} {beta:>10.4e} {:>16.12} {closed:>16} {:>16.12} {:>10.3e}",
            r.value,
            upsilon_nr1(n, t, beta)?,
            chi(n, t, beta)?
        );
    }

    let q = UpsilonQuery::new(6, 3, 1.0 / 18.0)?;
    println!("\nNewton iterates from β^(1/t) for n = 6, t = 3, β = 1/18:");
    for (i, y) in newton_iterates(&q).iter().enumerate() {
        println!("  {i}: {y:.15}");
    }
    Ok(())
}
