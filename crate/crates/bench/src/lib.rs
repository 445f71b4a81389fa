//! Fixtures shared by the benchmarks.

use k3lat_core::IntMatrix;

/// A dense `n x n` integer matrix with entries in `-5..=5`, fixed for a given `n`.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect())
        .collect();
    IntMatrix::from_i64(&rows)
}
