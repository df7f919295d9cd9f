//! Result folding used to keep kernel outputs observable.

const OFFSET: u64 = 0xCBF2_9CE4_8422_2325;
const PRIME: u64 = 0x0000_0100_0000_01B3;

/// FNV-1a style fold over 64-bit words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fold(u64);

impl Default for Fold {
    fn default() -> Self {
        Self(OFFSET)
    }
}

impl Fold {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, word: u64) -> &mut Self {
        for byte in word.to_le_bytes() {
            self.0 = (self.0 ^ u64::from(byte)).wrapping_mul(PRIME);
        }
        self
    }

    pub fn push_bytes(&mut self, bytes: &[u8]) -> &mut Self {
        for &byte in bytes {
            self.0 = (self.0 ^ u64::from(byte)).wrapping_mul(PRIME);
        }
        self
    }

    /// Folds a float after rounding it to a multiple of 1e-6, so results that
    /// differ only in the last few ulps fold identically.
    pub fn push_rounded(&mut self, value: f64) -> &mut Self {
        let micro = (value * 1e6).round() as i64;
        self.push(micro as u64)
    }

    pub fn finish(&self) -> u64 {
        self.0
    }
}

pub fn fold_words(words: &[u64]) -> u64 {
    let mut f = Fold::new();
    for &w in words {
        f.push(w);
    }
    f.finish()
}
