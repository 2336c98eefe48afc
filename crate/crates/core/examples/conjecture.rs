//! Fits minimal recurrences to factor counts and tests whether their
//! characteristic polynomials are powers of the (k-1)-Bonacci polynomial.

use kbonacci::analysis::{bonacci_characteristic, check_batch, check_conjecture_default, geometric_control};
use kbonacci::factors::fac_m_empirical;
use kbonacci::{KParam, Word};

fn main() -> kbonacci::Result<()> {
    let k = KParam::new(4)?;
    println!("reference polynomial: {}", bonacci_characteristic(k).display_in("x"));

    for f in ["0", "5", "8", "3,4,0"] {
        let b: Word = f.parse()?;
        let r = check_conjecture_default(k, &b)?;
        if let Some(fit) = &r.fit {
            println!("{f:>6}: order {:>2}, char poly {}, {}", fit.order, fit.characteristic_polynomial.display_in("x"), r.verdict);
        }
    }

    let mut factors = Vec::new();
    for m in 1..=3 {
        factors.extend(fac_m_empirical(k, m, 11)?);
    }
    let batch = check_batch(k, &factors, None, None)?;
    println!("\n{}", batch.summary_table());

    let (_, control) = geometric_control(k)?;
    println!("powers of two: {control}");
    Ok(())
}
