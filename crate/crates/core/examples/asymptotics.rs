//! Growth of digit counts: the dominant root and the ratio
//! |W_n|_d / (n^(s-1) alpha^n) over a window.

use kbonacci::analysis::{asymptotic_check, dominant_root};
use kbonacci::KParam;

fn main() -> kbonacci::Result<()> {
    for kk in 3..=7 {
        let root = dominant_root(KParam::new(kk)?, 30)?;
        println!("k = {kk}: alpha = {}", root.alpha);
    }
    println!();
    for (kk, d) in [(3, 0), (4, 0), (4, 5), (4, 8), (5, 12)] {
        let r = asymptotic_check(KParam::new(kk)?, d, 40, 60)?;
        let last = r.ratio_samples.last().unwrap();
        println!(
            "k={kk} d={d:>2} s={}: ratio at n={} is {:.6}, gamma ~ {:.6}, fluctuation {:.2e}",
            r.s, last.n, last.ratio, r.gamma_estimate, r.max_relative_fluctuation
        );
    }
    Ok(())
}
