//! Words without immediate repetitions.
//!
//! Any such word on `n > 1` symbols of length at least `2·n!` has a window
//! using some `k > 1` symbols, each at least `k` times; the words built by
//! `w_k = (w_{k-1} s_k)^{k-1} w_{k-1}` show that `2·n! - 1` is the longest
//! length without one. This is what caps how often a degree-two path can be
//! crossed, and so how long it needs to stay in the cyclomatic kernel.

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol at position {0} repeats its predecessor")]
    Repeat(usize),
    #[error("symbol {0} is outside the alphabet")]
    OutOfAlphabet(usize),
    #[error("alphabet needs at least two symbols")]
    AlphabetTooSmall,
}

/// Checks that no two consecutive symbols are equal.
pub fn validate_word(w: &[usize], n: usize) -> Result<(), WordError> {
    if let Some(&s) = w.iter().find(|&&s| s >= n) {
        return Err(WordError::OutOfAlphabet(s));
    }
    match w.windows(2).position(|p| p[0] == p[1]) {
        Some(i) => Err(WordError::Repeat(i + 1)),
        None => Ok(()),
    }
}

/// A window `start..end` on `k > 1` distinct symbols, each occurring at
/// least `k` times in it. Shortest first, then leftmost.
pub fn find_reducible_subword(w: &[usize]) -> Result<Option<(usize, usize, usize)>, WordError> {
    let alphabet = w.iter().max().map_or(0, |&m| m + 1);
    validate_word(w, alphabet)?;
    let mut best: Option<(usize, usize, usize)> = None;
    for start in 0..w.len() {
        let mut count = vec![0usize; alphabet];
        let mut distinct = 0;
        for end in start..w.len() {
            if best.is_some_and(|(s, e, _)| end + 1 - start >= e - s) {
                break;
            }
            let c = &mut count[w[end]];
            if *c == 0 {
                distinct += 1;
            }
            *c += 1;
            if distinct > 1 && count.iter().all(|&c| c == 0 || c >= distinct) {
                best = Some((start, end + 1, distinct));
                break;
            }
        }
    }
    Ok(best)
}

/// The longest word on `n` symbols without a reducible window; its length
/// is `2·n! - 1`.
pub fn extremal_word(n: usize) -> Result<Vec<usize>, WordError> {
    if n < 2 {
        return Err(WordError::AlphabetTooSmall);
    }
    let mut w = vec![0];
    for k in 2..=n {
        let sigma = k - 1;
        let mut next = Vec::with_capacity(k * w.len() + k - 1);
        for _ in 0..k - 1 {
            next.extend_from_slice(&w);
            next.push(sigma);
        }
        next.extend_from_slice(&w);
        w = next;
    }
    Ok(w)
}

/// Uniform random word of length `len` without immediate repetitions.
pub fn random_word(n: usize, len: usize, rng: &mut impl Rng) -> Result<Vec<usize>, WordError> {
    if n < 2 {
        return Err(WordError::AlphabetTooSmall);
    }
    let mut w: Vec<usize> = Vec::with_capacity(len);
    for _ in 0..len {
        let s = match w.last() {
            None => rng.gen_range(0..n),
            Some(&prev) => {
                let s = rng.gen_range(0..n - 1);
                if s >= prev {
                    s + 1
                } else {
                    s
                }
            }
        };
        w.push(s);
    }
    Ok(w)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, i| acc.saturating_mul(i))
}
