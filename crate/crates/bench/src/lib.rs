//! Shared inputs for the benchmarks.

use std::sync::Arc;

use permcong::family::CongruenceFamily;
use permcong::{Congruence, Family, Permutation};

pub fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation")
}

/// The congruence of a named family on `S_n`.
pub fn congruence(name: &str, n: usize) -> Arc<Congruence> {
    Family::named(name)
        .and_then(|f| f.congruence(n))
        .expect("named family builds")
}
