//! Shared inputs for the kernel benchmarks.

use pcm_core::generators::random_reciprocal;
use pcm_core::ReciprocalMatrix;

/// Orders exercised by every kernel benchmark.
pub const ORDERS: [usize; 4] = [4, 8, 16, 32];

/// A fixed random reciprocal matrix of order `n` with entries in `[1/9, 9]`.
pub fn bench_matrix(n: usize) -> ReciprocalMatrix {
    random_reciprocal(n, 9.0, 0xbe4c_0000 + n as u64)
}
