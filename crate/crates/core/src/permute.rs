//! Recursive string permutation: each character in turn is the head,
//! followed by every permutation of the remaining characters.

use crate::error::{Result, domain};

/// Longest input accepted; the output grows as n!.
pub const MAX_PERMUTATION_LEN: usize = 10;

pub fn permutations(text: &str) -> Result<Vec<String>> {
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return Err(domain("permutations needs at least one character"));
    }
    if chars.len() > MAX_PERMUTATION_LEN {
        return Err(domain(format!(
            "input of {} characters exceeds the cap of {MAX_PERMUTATION_LEN}",
            chars.len()
        )));
    }
    Ok(permute(&chars))
}

fn permute(chars: &[char]) -> Vec<String> {
    if chars.len() == 1 {
        return vec![chars[0].to_string()];
    }
    let mut results = Vec::new();
    for (i, &head) in chars.iter().enumerate() {
        let rest: Vec<char> = chars[..i].iter().chain(&chars[i + 1..]).copied().collect();
        for tail in permute(&rest) {
            let mut s = String::with_capacity(tail.len() + head.len_utf8());
            s.push(head);
            s.push_str(&tail);
            results.push(s);
        }
    }
    results
}

/// The first `n` letters of the alphabet, the benchmark input.
pub fn alphabet_prefix(n: usize) -> String {
    ('a'..='z').take(n).collect()
}
