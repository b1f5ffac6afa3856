//! OEIS b-files of decimal expansions and digit comparison against balls.
//!
//! A b-file lists one `index digit` pair per line; `#` starts a comment. The
//! line `# offset K` declares the expansion offset: the term with index `K`
//! is the digit of `10^(K-1)`, and each following index moves one place to
//! the right. Without a declaration the first index is taken as the offset.

use binomv_core::{BallReal, Rational};
use thiserror::Error;

/// Registry entries whose series value is tabulated in the OEIS.
pub const OEIS_ANCHORS: &[(&str, &str)] = &[
    ("A157699", "L1"),
    ("A086466", "L3"),
    ("A086467", "L4"),
    ("A145438", "L5"),
    ("A157701", "L7"),
    ("A145434", "A40"),
];

/// Registry name for an A-number, or the input itself.
pub fn resolve_anchor(id: &str) -> &str {
    OEIS_ANCHORS.iter().find(|(a, _)| a.eq_ignore_ascii_case(id)).map_or(id, |(_, name)| name)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFileError {
    #[error("line {line}: malformed entry '{text}': {reason}")]
    Malformed { line: usize, text: String, reason: &'static str },
    #[error("line {line}: index {index} does not follow {previous}")]
    NotConsecutive { line: usize, index: i64, previous: i64 },
    #[error("no entries")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    /// Offset declared by a `# offset K` line.
    pub offset: Option<i64>,
    /// `(index, digit)` pairs with consecutive indices.
    pub entries: Vec<(i64, u8)>,
}

impl BFile {
    pub fn parse(text: &str) -> Result<BFile, BFileError> {
        let mut offset = None;
        let mut entries: Vec<(i64, u8)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() {
                continue;
            }
            if let Some(c) = s.strip_prefix('#') {
                let mut words = c.split_whitespace();
                if words.next().is_some_and(|w| w.eq_ignore_ascii_case("offset")) {
                    let k = words.next().and_then(|w| w.parse().ok());
                    let bad = || BFileError::Malformed { line, text: raw.into(), reason: "expected '# offset K'" };
                    offset = Some(k.ok_or_else(bad)?);
                    if words.next().is_some() {
                        return Err(bad());
                    }
                }
                continue;
            }
            let malformed = |reason| BFileError::Malformed { line, text: raw.into(), reason };
            let mut words = s.split_whitespace();
            let (Some(a), Some(b), None) = (words.next(), words.next(), words.next()) else {
                return Err(malformed("expected 'index digit'"));
            };
            let index: i64 = a.parse().map_err(|_| malformed("index is not an integer"))?;
            let digit = match b.as_bytes() {
                [d @ b'0'..=b'9'] => d - b'0',
                _ => return Err(malformed("term is not a decimal digit")),
            };
            if let Some(&(previous, _)) = entries.last() {
                if index != previous + 1 {
                    return Err(BFileError::NotConsecutive { line, index, previous });
                }
            }
            entries.push((index, digit));
        }
        if entries.is_empty() {
            return Err(BFileError::Empty);
        }
        Ok(BFile { offset, entries })
    }

    /// Declared offset, else the first index.
    pub fn effective_offset(&self) -> i64 {
        self.offset.unwrap_or(self.entries[0].0)
    }

    /// Decimal exponent of the digit with index `n`.
    pub fn place(offset: i64, n: i64) -> i64 {
        (offset - 1) - (n - offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: u8,
    pub computed: u8,
}

/// Outcome of comparing a b-file with a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitCheck {
    /// Leading b-file digits confirmed by certified digits.
    pub agreed: usize,
    pub available: usize,
    pub mismatch: Option<Mismatch>,
}

/// Digits of `|x|` at the exponents `places`, `None` where the ball does not decide them.
pub fn certified_digits(x: &BallReal, places: &[i64]) -> Vec<Option<u8>> {
    let Some(&lowest) = places.iter().min() else {
        return Vec::new();
    };
    if x.contains_zero() {
        return vec![None; places.len()];
    }
    let (mut lo, mut hi) = (x.lower_rational().abs(), x.upper_rational().abs());
    if lo > hi {
        core::mem::swap(&mut lo, &mut hi);
    }
    let scale = Rational::from_int(10).pow(-lowest).expect("nonzero base");
    let floor = |r: Rational| (r * scale.clone()).inner().floor().to_integer().to_string();
    let (a, b) = (floor(lo), floor(hi));
    let width = a.len().max(b.len());
    let a = format!("{a:0>width$}").into_bytes();
    let b = format!("{b:0>width$}").into_bytes();
    let common = a.iter().zip(&b).take_while(|(p, q)| p == q).count();
    places
        .iter()
        .map(|&e| {
            let from_right = (e - lowest) as usize;
            if from_right >= width {
                return Some(0);
            }
            let pos = width - 1 - from_right;
            (pos < common).then(|| a[pos] - b'0')
        })
        .collect()
}

/// Compares the b-file digits in order until the first undecided or differing digit.
pub fn check_digits(x: &BallReal, bfile: &BFile, offset: i64) -> DigitCheck {
    let places: Vec<i64> = bfile.entries.iter().map(|&(n, _)| BFile::place(offset, n)).collect();
    let got = certified_digits(x, &places);
    let mut agreed = 0;
    let mut mismatch = None;
    for (&(index, expected), digit) in bfile.entries.iter().zip(got) {
        match digit {
            Some(d) if d == expected => agreed += 1,
            Some(computed) => {
                mismatch = Some(Mismatch { index, expected, computed });
                break;
            }
            None => break,
        }
    }
    DigitCheck { agreed, available: bfile.entries.len(), mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_follow_the_decimal_point() {
        // pi: a(1) = 3 is the units digit.
        assert_eq!(BFile::place(1, 1), 0);
        assert_eq!(BFile::place(1, 2), -1);
        // 0.28...: a(0) = 2 is the tenths digit.
        assert_eq!(BFile::place(0, 0), -1);
        // 0.064...: a(-1) = 6 is the hundredths digit.
        assert_eq!(BFile::place(-1, -1), -2);
    }

    #[test]
    fn certified_digits_stop_at_the_radius() {
        let x = BallReal::from_rational(&Rational::frac(2808, 10000), 64).add_error(&Rational::frac(1, 100_000));
        let got = certified_digits(&x, &[0, -1, -2, -3, -4, -5]);
        assert_eq!(got, vec![Some(0), Some(2), Some(8), Some(0), None, None]);
    }

    #[test]
    fn negative_values_use_the_magnitude() {
        let x = BallReal::from_rational(&Rational::frac(-17, 16), 64);
        assert_eq!(certified_digits(&x, &[0, -1, -2]), vec![Some(1), Some(0), Some(6)]);
    }

    #[test]
    fn anchors_resolve() {
        assert_eq!(resolve_anchor("A157701"), "L7");
        assert_eq!(resolve_anchor("a157699"), "L1");
        assert_eq!(resolve_anchor("L4"), "L4");
    }
}
