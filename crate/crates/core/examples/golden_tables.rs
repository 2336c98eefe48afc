//! Regenerates the reference tables, checks them cell by cell, and prints
//! one as markdown.

use kbonacci::tables::{regenerate, verify, TableId};

fn main() -> kbonacci::Result<()> {
    for id in TableId::ALL {
        println!("{}", verify(id, false)?);
    }
    println!();
    print!("{}", regenerate(TableId::DigitsK4)?.to_markdown());
    Ok(())
}
