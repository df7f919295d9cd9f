//! 8-bit grayscale images and their PGM encoding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, domain};
use crate::rng::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::Shape(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn is_binary(&self) -> bool {
        self.pixels.iter().all(|&p| p == 0 || p == 255)
    }

    pub fn neighbor_pairs(&self) -> impl Iterator<Item = (usize, usize)> + use<> {
        neighbor_pairs(self.width, self.height)
    }
}

/// 4-connected neighbor pairs `(p, q)` of a `width x height` grid with
/// `p < q`, in row-major order of `p`, right neighbor before lower neighbor.
pub fn neighbor_pairs(width: usize, height: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..height).flat_map(move |y| {
        (0..width).flat_map(move |x| {
            let p = y * width + x;
            let right = (x + 1 < width).then_some((p, p + 1));
            let down = (y + 1 < height).then_some((p, p + width));
            right.into_iter().chain(down)
        })
    })
}

/// Pixels at or above `t` become 255, the rest 0.
pub fn threshold(img: &GrayImage, t: u8) -> GrayImage {
    GrayImage {
        width: img.width,
        height: img.height,
        pixels: img
            .pixels
            .iter()
            .map(|&p| if p >= t { 255 } else { 0 })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// Bright discs on a dark background, plus mild noise.
    Blobs,
    /// Alternating horizontal bands of random height.
    Stripes,
    /// Independent uniform intensities.
    Noise,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::Blobs, Pattern::Stripes, Pattern::Noise];

    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::Blobs => "blobs",
            Pattern::Stripes => "stripes",
            Pattern::Noise => "noise",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| domain(format!("unknown pattern '{s}' (blobs, stripes, noise)")))
    }
}

/// Deterministic synthetic image for a given seed.
pub fn generate_test_image(width: usize, height: usize, pattern: Pattern, rng: &mut Rng) -> GrayImage {
    let mut pixels = vec![0u8; width * height];
    match pattern {
        Pattern::Noise => {
            for p in &mut pixels {
                *p = rng.next_below(256) as u8;
            }
        }
        Pattern::Stripes => {
            let mut y = 0;
            let mut bright = rng.next_below(2) == 1;
            while y < height {
                let band = 1 + rng.next_below((height as u64 / 4).max(1)) as usize;
                let base: u8 = if bright { 200 } else { 50 };
                for row in y..(y + band).min(height) {
                    for x in 0..width {
                        pixels[row * width + x] = base - 16 + rng.next_below(32) as u8;
                    }
                }
                y += band;
                bright = !bright;
            }
        }
        Pattern::Blobs => {
            for p in &mut pixels {
                *p = 30 + rng.next_below(40) as u8;
            }
            let blobs = 1 + (width * height) / 200;
            let max_r = (width.min(height) as u64 / 4).max(1);
            for _ in 0..blobs {
                let cx = rng.next_below(width.max(1) as u64) as i64;
                let cy = rng.next_below(height.max(1) as u64) as i64;
                let r = 1 + rng.next_below(max_r) as i64;
                for y in 0..height as i64 {
                    for x in 0..width as i64 {
                        let (dx, dy) = (x - cx, y - cy);
                        if dx * dx + dy * dy <= r * r {
                            pixels[y as usize * width + x as usize] = 180 + rng.next_below(60) as u8;
                        }
                    }
                }
            }
        }
    }
    GrayImage {
        width,
        height,
        pixels,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    /// ASCII `P2`.
    Plain,
    /// Binary `P5`.
    Raw,
}

/// Parses a P2 or P5 PGM with maxval at most 255. Samples are rescaled to
/// `[0, 255]` when maxval is smaller.
pub fn read_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut cursor = PgmCursor { data, pos: 0, line: 1 };
    let magic = cursor.token()?;
    let raw = match magic.as_str() {
        "P2" => false,
        "P5" => true,
        other => return Err(cursor.error(format!("unsupported magic '{other}', expected P2 or P5"))),
    };
    let width = cursor.number()?;
    let height = cursor.number()?;
    let maxval = cursor.number()?;
    if maxval == 0 || maxval > 255 {
        return Err(cursor.error(format!("maxval {maxval} is not an 8-bit value")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| cursor.error("image dimensions overflow".into()))?;

    let mut pixels = Vec::with_capacity(count);
    if raw {
        // Exactly one whitespace byte separates maxval from the samples.
        cursor.pos += 1;
        let body = data
            .get(cursor.pos..cursor.pos + count)
            .ok_or_else(|| cursor.error(format!("expected {count} bytes of pixel data")))?;
        pixels.extend_from_slice(body);
    } else {
        for _ in 0..count {
            let v = cursor.number()?;
            if v > maxval {
                return Err(cursor.error(format!("sample {v} exceeds maxval {maxval}")));
            }
            pixels.push(v as u8);
        }
    }
    if let Some(&bad) = pixels.iter().find(|&&p| usize::from(p) > maxval) {
        return Err(cursor.error(format!("sample {bad} exceeds maxval {maxval}")));
    }
    if maxval != 255 {
        for p in &mut pixels {
            *p = ((usize::from(*p) * 255 + maxval / 2) / maxval) as u8;
        }
    }
    GrayImage::new(width, height, pixels)
}

pub fn write_pgm(img: &GrayImage, format: PgmFormat) -> Vec<u8> {
    match format {
        PgmFormat::Raw => {
            let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
            out.extend_from_slice(&img.pixels);
            out
        }
        PgmFormat::Plain => {
            let mut out = format!("P2\n{} {}\n255\n", img.width, img.height);
            for row in img.pixels.chunks(img.width.max(1)) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

struct PgmCursor<'a> {
    data: &'a [u8],
    pos: usize,
    line: usize,
}

impl PgmCursor<'_> {
    fn error(&self, message: String) -> Error {
        Error::Parse {
            line: self.line,
            message,
        }
    }

    fn skip_space(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    if c == b'\n' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                if b == b'\n' {
                    self.line += 1;
                }
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<String> {
        self.skip_space();
        let start = self.pos;
        while self
            .data
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("unexpected end of file".into()));
        }
        Ok(String::from_utf8_lossy(&self.data[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| self.error(format!("expected a number, found '{tok}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        assert!(threshold(&GrayImage::filled(3, 2, 0), 128).pixels().iter().all(|&p| p == 0));
        assert!(threshold(&GrayImage::filled(3, 2, 255), 128).pixels().iter().all(|&p| p == 255));
        let checker = GrayImage::new(2, 2, vec![100, 200, 200, 100]).unwrap();
        assert_eq!(threshold(&checker, 150).pixels(), &[0, 255, 255, 0]);
        assert_eq!(threshold(&checker, 200).pixels(), &[0, 255, 255, 0]);
    }

    #[test]
    fn neighbor_pairs_are_four_connected() {
        let img = GrayImage::filled(3, 2, 0);
        let pairs: Vec<_> = img.neighbor_pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)]);
    }

    #[test]
    fn shape_checked() {
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
    }

    #[test]
    fn pgm_round_trips() {
        let img = generate_test_image(7, 5, Pattern::Noise, &mut Rng::new(3));
        for format in [PgmFormat::Plain, PgmFormat::Raw] {
            assert_eq!(read_pgm(&write_pgm(&img, format)).unwrap(), img);
        }
    }

    #[test]
    fn pgm_comments_and_maxval() {
        let src = b"P2\n# made by hand\n2 1\n# max\n15\n0 15\n";
        let img = read_pgm(src).unwrap();
        assert_eq!(img.pixels(), &[0, 255]);
    }

    #[test]
    fn pgm_errors_carry_line_numbers() {
        match read_pgm(b"P2\n2 2\n255\n1 2\n3 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_pgm(b"P3\n1 1\n255\n0\n").is_err());
        assert!(read_pgm(b"P5\n2 2\n255\n\x01").is_err());
        assert!(read_pgm(b"P2\n1 1\n1000\n0\n").is_err());
        assert!(read_pgm(b"P2\n1 1\n10\n11\n").is_err());
    }

    #[test]
    fn patterns_parse() {
        for p in Pattern::ALL {
            assert_eq!(p.as_str().parse::<Pattern>().unwrap(), p);
        }
        assert!("plaid".parse::<Pattern>().is_err());
    }
}
