//! Prints the first iterates of the morphism for a few values of k, their
//! block decomposition, and a streamed prefix of a large iterate.

use kbonacci::words::{decompose, iterate, iterate_len, iterate_stream, phi, Block};
use kbonacci::{KParam, Word};

fn show(w: &Word) -> String {
    w.to_string()
}

fn main() -> kbonacci::Result<()> {
    for kk in [2, 3, 4] {
        let k = KParam::new(kk)?;
        let images: Vec<String> = (0..2 * kk as u64).map(|d| format!("{d}->{}", show(&phi(k, d)))).collect();
        println!("k = {kk}: {}", images.join("  "));
        for n in 0..=5 {
            println!("  W_{n} = {}", show(&iterate(k, n)?));
        }
    }

    let k = KParam::new(3)?;
    let n = 7;
    let parts: Vec<String> = decompose(k, n)
        .iter()
        .map(|b| match b {
            Block::Letter(d) => d.to_string(),
            Block::Iterate { index, shift: 0 } => format!("W_{index}"),
            Block::Iterate { index, shift } => format!("({shift}+W_{index})"),
        })
        .collect();
    println!("\nW_{n} = {}", parts.join(" "));

    let n = 60;
    let head: String = iterate_stream(k, n).take(40).map(|d| format!("{d},")).collect();
    println!("|W_{n}| = {} (k = 3)", iterate_len(k, n));
    println!("first 40 letters: {head}...");
    Ok(())
}
