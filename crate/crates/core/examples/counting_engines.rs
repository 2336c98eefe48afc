//! Counts one factor with every engine and shows that they agree, then
//! counts in an iterate far too long to build.

use kbonacci::counting::{count_block, count_series, Engine};
use kbonacci::{KParam, Word};

fn main() -> kbonacci::Result<()> {
    let k = KParam::new(4)?;
    let factor: Word = "9,8".parse()?;
    let upto = 16;

    for engine in Engine::ALL {
        match count_series(k, &factor, upto, engine) {
            Ok(s) => {
                let values: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
                println!("{:>6}: {}", engine.to_string(), values.join(","));
            }
            Err(e) => println!("{:>6}: skipped ({e})", engine.to_string()),
        }
    }

    for (kk, f, n) in [(3, "0", 200), (4, "0,1", 150), (5, "0,1,0", 120)] {
        let k = KParam::new(kk)?;
        let b: Word = f.parse()?;
        println!("k={kk}: |W_{n}|_{b} = {}", count_block(k, &b, n)?);
    }
    Ok(())
}
