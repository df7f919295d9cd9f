//! Huffman code construction, encoding and decoding over byte alphabets.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use crate::error::{Error, Result, domain};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Leaf { symbol: u8, weight: u64 },
    Internal { left: usize, right: usize, freq: u64 },
}

/// Binary code tree; nodes live in an arena and the root is the last node
/// created.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanTree {
    nodes: Vec<Node>,
    root: usize,
}

impl HuffmanTree {
    pub fn root_freq(&self) -> u64 {
        self.freq(self.root)
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    fn freq(&self, idx: usize) -> u64 {
        match self.nodes[idx] {
            Node::Leaf { weight, .. } => weight,
            Node::Internal { freq, .. } => freq,
        }
    }

    /// Checks the structural invariants: two children per internal node and
    /// each internal frequency equal to the sum of its children.
    pub fn is_consistent(&self) -> bool {
        self.nodes.iter().all(|n| match *n {
            Node::Leaf { .. } => true,
            Node::Internal { left, right, freq } => {
                left != right && self.freq(left) + self.freq(right) == freq
            }
        }) && self.internal_count() + 1 == self.leaf_count()
    }
}

/// Builds the tree by repeatedly merging the two lightest subtrees.
///
/// Ties on frequency are broken by creation order, so equal inputs always
/// produce the same tree.
pub fn huffman_build(weights: &[(u8, u64)]) -> Result<HuffmanTree> {
    if weights.len() < 2 {
        return Err(domain(format!(
            "Huffman coding needs at least 2 symbols, got {}",
            weights.len()
        )));
    }
    let mut seen = [false; 256];
    for &(symbol, weight) in weights {
        if weight == 0 {
            return Err(domain(format!("symbol {symbol:#04x} has non-positive weight")));
        }
        if std::mem::replace(&mut seen[symbol as usize], true) {
            return Err(domain(format!("symbol {symbol:#04x} listed twice")));
        }
    }

    let mut nodes = Vec::with_capacity(2 * weights.len() - 1);
    let mut queue = BinaryHeap::with_capacity(weights.len());
    for &(symbol, weight) in weights {
        queue.push(Reverse((weight, nodes.len())));
        nodes.push(Node::Leaf { symbol, weight });
    }
    for _ in 1..weights.len() {
        let Reverse((fx, left)) = queue.pop().expect("queue holds at least two nodes");
        let Reverse((fy, right)) = queue.pop().expect("queue holds at least two nodes");
        let freq = fx + fy;
        queue.push(Reverse((freq, nodes.len())));
        nodes.push(Node::Internal { left, right, freq });
    }
    let Reverse((_, root)) = queue.pop().expect("one root remains");
    Ok(HuffmanTree { nodes, root })
}

/// Symbol frequencies of `text`, ordered by symbol.
pub fn frequencies(text: &[u8]) -> Vec<(u8, u64)> {
    let mut counts = [0u64; 256];
    for &b in text {
        counts[b as usize] += 1;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(s, &c)| (s as u8, c))
        .collect()
}

/// Growable sequence of bits, packed eight to a byte (MSB first).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn extend_from(&mut self, other: &BitString) {
        for bit in other.iter() {
            self.push(bit);
        }
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        prefix.len <= self.len && prefix.iter().zip(self.iter()).all(|(a, b)| a == b)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl std::str::FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = BitString::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(domain(format!("'{other}' is not a bit"))),
            }
        }
        Ok(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

/// Symbol to codeword map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    codes: BTreeMap<u8, BitString>,
}

impl CodeTable {
    /// Reads codewords off the tree: left edges emit 0, right edges 1.
    pub fn from_tree(tree: &HuffmanTree) -> Self {
        let mut codes = BTreeMap::new();
        let mut stack = vec![(tree.root, BitString::new())];
        while let Some((idx, prefix)) = stack.pop() {
            match tree.nodes[idx] {
                Node::Leaf { symbol, .. } => {
                    codes.insert(symbol, prefix);
                }
                Node::Internal { left, right, .. } => {
                    let mut l = prefix.clone();
                    l.push(false);
                    let mut r = prefix;
                    r.push(true);
                    stack.push((right, r));
                    stack.push((left, l));
                }
            }
        }
        Self { codes }
    }

    pub fn from_codes(codes: impl IntoIterator<Item = (u8, BitString)>) -> Self {
        Self {
            codes: codes.into_iter().collect(),
        }
    }

    pub fn get(&self, symbol: u8) -> Option<&BitString> {
        self.codes.get(&symbol)
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &BitString)> {
        self.codes.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_prefix_free(&self) -> bool {
        let codes: Vec<&BitString> = self.codes.values().collect();
        codes.iter().enumerate().all(|(i, a)| {
            codes
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !b.starts_with(a))
        })
    }

    /// Exact test of `sum 2^-len(c) == 1`, the Kraft equality of a full
    /// binary code tree. Codes deeper than 127 bits are reported as failing.
    pub fn satisfies_kraft_equality(&self) -> bool {
        let Some(max) = self.codes.values().map(BitString::len).max() else {
            return false;
        };
        if max > 127 {
            return false;
        }
        let total: u128 = self.codes.values().map(|c| 1u128 << (max - c.len())).sum();
        total == 1u128 << max
    }

    /// `sum w_i * len(c_i)` over the given weights.
    pub fn weighted_length(&self, weights: &[(u8, u64)]) -> Result<u64> {
        weights.iter().try_fold(0u64, |acc, &(s, w)| {
            let code = self.get(s).ok_or(Error::UnknownSymbol(s))?;
            Ok(acc + w * code.len() as u64)
        })
    }
}

pub fn huffman_encode(text: &[u8], table: &CodeTable) -> Result<BitString> {
    let mut out = BitString::with_capacity(text.len() * 4);
    for &b in text {
        let code = table.get(b).ok_or(Error::UnknownSymbol(b))?;
        out.extend_from(code);
    }
    Ok(out)
}

pub fn huffman_decode(bits: &BitString, tree: &HuffmanTree) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut node = tree.root;
    for bit in bits.iter() {
        if let Node::Internal { left, right, .. } = tree.nodes[node] {
            node = if bit { right } else { left };
        }
        if let Node::Leaf { symbol, .. } = tree.nodes[node] {
            out.push(symbol);
            node = tree.root;
        }
    }
    if node != tree.root {
        return Err(Error::Decode(format!(
            "bitstring of length {} ends inside a codeword",
            bits.len()
        )));
    }
    Ok(out)
}

/// Summary of one build, encode, decode cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodingRun {
    pub encoded_bits: u64,
    pub weighted_length: u64,
}

/// Counts frequencies, builds the code, encodes `text`, decodes it back and
/// checks the round trip.
pub fn coding_cycle(text: &[u8]) -> Result<CodingRun> {
    let weights = frequencies(text);
    let tree = huffman_build(&weights)?;
    let table = CodeTable::from_tree(&tree);
    let bits = huffman_encode(text, &table)?;
    let decoded = huffman_decode(&bits, &tree)?;
    if decoded != text {
        return Err(Error::Decode("round trip did not reproduce the input".into()));
    }
    Ok(CodingRun {
        encoded_bits: bits.len() as u64,
        weighted_length: table.weighted_length(&weights)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn two_symbols_get_one_bit_each() {
        let w = [(b'a', 1), (b'b', 1)];
        let tree = huffman_build(&w).unwrap();
        let table = CodeTable::from_tree(&tree);
        assert_eq!(table.get(b'a').unwrap().len(), 1);
        assert_eq!(table.get(b'b').unwrap().len(), 1);
        assert_eq!(table.weighted_length(&w).unwrap(), 2);
    }

    #[test]
    fn three_symbol_weighted_length() {
        let w = [(b'a', 1), (b'b', 2), (b'c', 4)];
        let tree = huffman_build(&w).unwrap();
        assert_eq!(CodeTable::from_tree(&tree).weighted_length(&w).unwrap(), 10);
        assert_eq!(tree.root_freq(), 7);
        assert!(tree.is_consistent());
    }

    #[test]
    fn build_rejects_bad_alphabets() {
        assert!(huffman_build(&[]).is_err());
        assert!(huffman_build(&[(b'a', 3)]).is_err());
        assert!(huffman_build(&[(b'a', 3), (b'b', 0)]).is_err());
        assert!(huffman_build(&[(b'a', 3), (b'a', 1)]).is_err());
    }

    #[test]
    fn encode_examples() {
        let table = CodeTable::from_codes([(b'a', bits("0")), (b'b', bits("1"))]);
        assert!(huffman_encode(b"", &table).unwrap().is_empty());
        assert_eq!(huffman_encode(b"ab", &table).unwrap(), bits("01"));
        assert!(matches!(
            huffman_encode(b"abc", &table),
            Err(Error::UnknownSymbol(b'c'))
        ));
    }

    #[test]
    fn decode_rejects_truncated_input() {
        let w = [(b'a', 1), (b'b', 2), (b'c', 4)];
        let tree = huffman_build(&w).unwrap();
        let table = CodeTable::from_tree(&tree);
        let mut enc = huffman_encode(b"ab", &table).unwrap();
        assert_eq!(huffman_decode(&enc, &tree).unwrap(), b"ab");
        // 'a' and 'b' have 2-bit codes; drop the final bit.
        let mut cut = BitString::new();
        for bit in enc.iter().take(enc.len() - 1) {
            cut.push(bit);
        }
        assert!(matches!(huffman_decode(&cut, &tree), Err(Error::Decode(_))));
        enc.push(true);
        assert!(huffman_decode(&enc, &tree).is_ok());
        assert!(huffman_decode(&BitString::new(), &tree).unwrap().is_empty());
    }

    #[test]
    fn table_properties() {
        let w = frequencies(b"aabbbcccc");
        let table = CodeTable::from_tree(&huffman_build(&w).unwrap());
        assert!(table.is_prefix_free());
        assert!(table.satisfies_kraft_equality());
        let bad = CodeTable::from_codes([(b'a', bits("0")), (b'b', bits("01"))]);
        assert!(!bad.is_prefix_free());
        let short = CodeTable::from_codes([(b'a', bits("00")), (b'b', bits("01"))]);
        assert!(!short.satisfies_kraft_equality());
    }

    #[test]
    fn bitstring_display_parse() {
        let b = bits("1011001110");
        assert_eq!(b.to_string(), "1011001110");
        assert_eq!(b.len(), 10);
        assert_eq!(b.get(2), Some(true));
        assert_eq!(b.get(10), None);
        assert!("10x".parse::<BitString>().is_err());
    }

    #[test]
    fn coding_cycle_counts_bits() {
        let run = coding_cycle(b"aabbbcccc").unwrap();
        assert_eq!(run.encoded_bits, run.weighted_length);
        assert!(coding_cycle(b"aaaa").is_err());
    }
}
