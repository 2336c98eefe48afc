//! Enumerates the length-2 factors by family and checks them against the
//! factors actually seen in an iterate.

use kbonacci::factors::{classify2, enumerate_fac2, fac_m_empirical, Family};
use kbonacci::{KParam, Word};

fn main() -> kbonacci::Result<()> {
    let k = KParam::new(3)?;
    let entries = enumerate_fac2(k, 7);
    for e in &entries {
        println!("{:>4}  {:<16} witness W_{}", e.word.to_string(), e.class.to_string(), e.witness);
    }

    let n = 10;
    let seen = fac_m_empirical(k, 2, n)?;
    let members = enumerate_fac2(k, n as u64);
    let certified: Vec<_> = members.iter().filter(|e| e.witness <= n).collect();
    let early = seen.iter().filter(|w| certified.iter().all(|e| &e.word != *w)).count();
    println!(
        "\nW_{n} has {} distinct length-2 factors, all family members ({} unclassified)",
        seen.len(),
        seen.iter().filter(|w| !classify2(k, w).is_ok_and(|c| c.is_factor())).count()
    );
    println!(
        "{} members have witness <= {n}, {} of them present; {early} more appear before their witness",
        certified.len(),
        certified.iter().filter(|e| seen.contains(&e.word)).count()
    );

    for f in ["0,0", "2,1", "5,7"] {
        let b: Word = f.parse()?;
        let c = classify2(k, &b)?;
        let verdict = if c.verdict == Family::NotAFactor { "never occurs".to_string() } else { c.verdict.to_string() };
        println!("{f}: {verdict}");
    }
    Ok(())
}
