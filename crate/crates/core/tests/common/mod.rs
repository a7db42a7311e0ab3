//! Shared test helpers.

/// Seed for randomized suites. Pinned by default; override with the
/// DEGENERATA_TEST_SEED environment variable to explore other streams.
pub fn test_seed(default: u64) -> u64 {
    match std::env::var("DEGENERATA_TEST_SEED") {
        Ok(s) => s.parse().unwrap_or(default),
        Err(_) => default,
    }
}
