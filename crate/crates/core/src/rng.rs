//! Seeded xorshift64* generator.
//!
//! The stream is fully specified here so that native and WASM builds draw
//! identical integers from identical seeds:
//!
//! * the seed is scrambled once with the SplitMix64 finalizer (a zero state
//!   is replaced by a fixed odd constant);
//! * each step applies `x ^= x >> 12; x ^= x << 25; x ^= x >> 27` and
//!   outputs `x * 0x2545F4914F6CDD1D` (wrapping).

/// Upper bound (exclusive) of the integers drawn by the base workloads.
pub const INT_RANGE: u32 = 1 << 31;

const MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;
const ZERO_STATE_REPLACEMENT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        if z == 0 {
            z = ZERO_STATE_REPLACEMENT;
        }
        Self { state: z }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULTIPLIER)
    }

    pub fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    /// Uniform integer in `[0, bound)` by Lemire's multiply-shift with
    /// rejection. `bound` must be non-zero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below: empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = u128::from(self.next_u64()) * u128::from(bound);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Uniform integer in `[lo, hi)`.
    pub fn next_int(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo < hi, "next_int: empty range {lo}..{hi}");
        let span = hi.wrapping_sub(lo) as u64;
        lo.wrapping_add(self.next_below(span) as i64)
    }

    /// Integer in `[0, 2^31)`, the range used by the array and compare kernels.
    pub fn next_i31(&mut self) -> u32 {
        self.next_u32() >> 1
    }

    /// Uniform double in `[0, 1)` built from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use super::Rng;

    #[test]
    fn stream_is_pinned() {
        // Also reproduced by an independent Python port of the generator.
        let mut rng = Rng::new(42);
        let first: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(first, GOLDEN_SEED_42);
    }

    const GOLDEN_SEED_42: [u64; 3] = [3580622183945639842, 10378725325292465923, 8967075514996744559];

    #[test]
    fn equal_seeds_equal_streams() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(Rng::new(7).next_u64(), Rng::new(8).next_u64());
    }

    #[test]
    fn i31_stays_in_range() {
        let mut rng = Rng::new(3);
        assert!((0..10_000).all(|_| rng.next_i31() < INT_RANGE));
    }

    proptest! {
        #[test]
        fn next_int_within_bounds(seed: u64, lo in -1000i64..1000, width in 1i64..5000) {
            let mut rng = Rng::new(seed);
            for _ in 0..32 {
                let x = rng.next_int(lo, lo + width);
                prop_assert!(lo <= x && x < lo + width);
            }
        }

        #[test]
        fn next_f64_unit_interval(seed: u64) {
            let mut rng = Rng::new(seed);
            let x = rng.next_f64();
            prop_assert!((0.0..1.0).contains(&x));
        }
    }
}
