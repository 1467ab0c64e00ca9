//! Result records and the on-disk cache the command-line tool uses.
//!
//! ```text
//! cargo run --example records
//! ```

use sincprod::eval::EvalConfig;
use sincprod::quadrature::QuadratureConfig;
use sincprod::record::{exact_record, numeric_record, Cache, Family, ResultRecord};
use sincprod::Rational;

fn main() -> sincprod::Result<()> {
    let path = std::env::temp_dir().join("sincprod-records-example.jsonl");
    let _ = std::fs::remove_file(&path);
    let mut cache = Cache::open(&path)?;

    let families = [
        Family::J(7),
        Family::K(56),
        Family::I {
            b: Rational::from(2),
            n: 7,
        },
        Family::Eps(vec![Rational::from(1), Rational::from((1, 3))]),
    ];
    for family in &families {
        let record = exact_record(family, &EvalConfig::default(), 20, &mut cache)?;
        println!("{record}");
    }
    let numeric = numeric_record(&Family::J(7), &QuadratureConfig::new(20), &mut cache)?;
    println!("{numeric}");

    // records survive a round trip through text unchanged
    let line = numeric.to_line();
    assert_eq!(ResultRecord::from_line(&line)?.to_line(), line);
    println!("\n{line}");

    let reloaded = Cache::open(&path)?;
    println!("{} records in {}", reloaded.len(), path.display());
    std::fs::remove_file(&path)?;
    Ok(())
}
