//! Regenerates the persisted coincidence witnesses by grid search.
//!
//! cargo run -p adw-core --release --example regen_witnesses

use std::path::Path;
use std::time::Instant;

use adw_core::catalog::Catalog;
use adw_core::verify::coincidences;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("witnesses");
    let cat = Catalog::builtin();
    for c in coincidences() {
        let start = Instant::now();
        match c.generate(cat)? {
            Some(w) => {
                std::fs::write(dir.join(format!("{}.json", c.file)), w.to_json())?;
                println!("{}: found in {:.2?}", c.file, start.elapsed());
            }
            None => println!("{}: no witness on the grid ({:.2?})", c.file, start.elapsed()),
        }
    }
    Ok(())
}
