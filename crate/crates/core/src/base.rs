//! Micro-workloads: array fill, recursive Fibonacci and integer comparison.

use crate::error::{Error, Result, domain};
use crate::rng::Rng;

/// Largest `n` accepted by [`fib_recursive`].
pub const FIB_MAX_N: u32 = 60;

/// Arrays larger than this are refused rather than attempted.
pub const MAX_ARRAY_LEN: usize = 1 << 28;

/// Fills an `n`-element array with integers in `[0, 2^31)`, then reads `n`
/// elements back at random positions and returns their wrapping sum.
pub fn fill_array_rand(n: usize, rng: &mut Rng) -> Result<u64> {
    if n == 0 {
        return Err(domain("fill_array_rand needs n >= 1"));
    }
    if n > MAX_ARRAY_LEN {
        return Err(Error::Resource(format!(
            "array of {n} elements exceeds the {MAX_ARRAY_LEN} element limit"
        )));
    }
    let mut values: Vec<u32> = Vec::new();
    values
        .try_reserve_exact(n)
        .map_err(|e| Error::Resource(format!("cannot allocate {n} elements: {e}")))?;
    values.extend((0..n).map(|_| rng.next_i31()));

    let mut sum = 0u64;
    for _ in 0..n {
        let idx = rng.next_below(n as u64) as usize;
        sum = sum.wrapping_add(u64::from(values[idx]));
    }
    Ok(sum)
}

/// Naive double recursion; the call load is the workload.
pub fn fib_recursive(n: u32) -> Result<u64> {
    if n > FIB_MAX_N {
        return Err(domain(format!("fib_recursive: n = {n} exceeds {FIB_MAX_N}")));
    }
    Ok(fib(n))
}

fn fib(n: u32) -> u64 {
    if n < 2 {
        u64::from(n)
    } else {
        fib(n - 1) + fib(n - 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CompareTally {
    pub less: u64,
    pub equal: u64,
    pub greater: u64,
}

impl CompareTally {
    pub fn total(&self) -> u64 {
        self.less + self.equal + self.greater
    }
}

/// Draws `n_pairs` pairs of integers in `[0, 2^31)` and tallies how the first
/// compares to the second.
pub fn int_compare(n_pairs: u64, rng: &mut Rng) -> Result<CompareTally> {
    if n_pairs == 0 {
        return Err(domain("int_compare needs n_pairs >= 1"));
    }
    let mut tally = CompareTally::default();
    for _ in 0..n_pairs {
        let a = rng.next_i31();
        let b = rng.next_i31();
        match a.cmp(&b) {
            std::cmp::Ordering::Less => tally.less += 1,
            std::cmp::Ordering::Equal => tally.equal += 1,
            std::cmp::Ordering::Greater => tally.greater += 1,
        }
    }
    Ok(tally)
}
