//! Closed-form generating functions for digits and length-2 factors.

use kbonacci::gf::{ogf_digit, ogf_digit_expr, ogf_factor2, ogf_factor2_expr, ogf_shift};
use kbonacci::factors::enumerate_fac2;
use kbonacci::{KParam, Word};

fn main() -> kbonacci::Result<()> {
    let k = KParam::new(4)?;
    for d in [0, 3, 4, 5, 8, 11] {
        let gf = ogf_digit(k, d)?;
        let coeffs: Vec<String> = gf.series(12)?.iter().map(|c| c.to_string()).collect();
        println!("digit {d:>2}: {:<18} {}", ogf_digit_expr(k, d)?.to_string(), coeffs.join(","));
    }

    let five = ogf_digit(k, 5)?;
    println!("\nshifting digit 5 by k gives digit 9: {}", ogf_shift(k, &five)?.gf_equal(&ogf_digit(k, 9)?));

    println!();
    let mut shown = Vec::new();
    for e in enumerate_fac2(k, 9) {
        let family = e.class.to_string();
        let family = family.split('(').next().unwrap_or_default().to_string();
        if shown.iter().filter(|f| **f == family).count() < 2 {
            shown.push(family);
            println!("{:>4}: {}", e.word.to_string(), ogf_factor2_expr(k, &e.word)?);
            println!("      = {}", ogf_factor2(k, &e.word)?);
        }
    }
    let b: Word = "9,8".parse()?;
    println!("  98: {}", ogf_factor2_expr(k, &b)?);
    Ok(())
}
