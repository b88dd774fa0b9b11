//! Benchmarks for the complex, homology and polynomial routines. Run with
//! `cargo bench -p tutte-bench`.

use tutte_core::{generate_family, Family, Graph};

/// Graphs the benchmarks share, by name.
pub fn bench_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K4", generate_family(Family::Complete, 4).expect("K4")),
        ("C6", generate_family(Family::Cycle, 6).expect("C6")),
        ("theta5", generate_family(Family::Theta, 5).expect("theta5")),
    ]
}
