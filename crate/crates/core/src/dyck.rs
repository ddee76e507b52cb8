//! One-sided Dyck words over `k` bracket pairs.
//!
//! Positions passed to the pair predicates are 1-based and inclusive:
//! `(i, j)` denotes the factor `w_i ... w_j`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A bracket `[i` or `]i`, with `pair >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    pub pair: usize,
    pub side: Side,
}

impl Bracket {
    pub fn left(pair: usize) -> Bracket {
        Bracket {
            pair,
            side: Side::Left,
        }
    }

    pub fn right(pair: usize) -> Bracket {
        Bracket {
            pair,
            side: Side::Right,
        }
    }

    pub fn is_left(self) -> bool {
        self.side == Side::Left
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "[{}", self.pair),
            Side::Right => write!(f, "]{}", self.pair),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord(pub Vec<Bracket>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("bad bracket token `{0}`")]
    BadToken(String),
    #[error("position ({i}, {j}) out of range for a word of length {len}")]
    OutOfRange { i: usize, j: usize, len: usize },
    #[error("pair index {0} out of range 1..={1}")]
    PairOutOfRange(usize, usize),
    #[error("({0}, {1}) is not a matched pair")]
    NotMatched(usize, usize),
}

impl DyckWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest pair index used, 0 for the empty word.
    pub fn k(&self) -> usize {
        self.0.iter().map(|b| b.pair).max().unwrap_or(0)
    }

    fn check(&self, i: usize, j: usize) -> Result<(), DyckError> {
        if i == 0 || i > j || j > self.len() {
            return Err(DyckError::OutOfRange {
                i,
                j,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// The factor `w_i ... w_j` (1-based, inclusive).
    pub fn factor(&self, i: usize, j: usize) -> Result<DyckWord, DyckError> {
        self.check(i, j)?;
        Ok(DyckWord(self.0[i - 1..j].to_vec()))
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, b) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| {
                let side = match tok.chars().next() {
                    Some('[') => Side::Left,
                    Some(']') => Side::Right,
                    _ => return Err(DyckError::BadToken(tok.to_string())),
                };
                match tok[1..].parse::<usize>() {
                    Ok(pair) if pair >= 1 => Ok(Bracket { pair, side }),
                    _ => Err(DyckError::BadToken(tok.to_string())),
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DyckWord)
    }
}

/// Maps every left bracket to `[1` and every right bracket to `]1`.
pub fn project_h(w: &DyckWord) -> DyckWord {
    DyckWord(
        w.0.iter()
            .map(|b| Bracket {
                pair: 1,
                side: b.side,
            })
            .collect(),
    )
}

/// Keeps only the letters of pair `k_prime`, renamed to pair 1.
pub fn project_hk(w: &DyckWord, k_prime: usize, k: usize) -> Result<DyckWord, DyckError> {
    if k_prime == 0 || k_prime > k {
        return Err(DyckError::PairOutOfRange(k_prime, k));
    }
    Ok(DyckWord(
        w.0.iter()
            .filter(|b| b.pair == k_prime)
            .map(|b| Bracket {
                pair: 1,
                side: b.side,
            })
            .collect(),
    ))
}

/// Equal numbers of left and right letters and no prefix with more right
/// than left letters. Pair indices are ignored.
pub fn is_balanced(w: &DyckWord) -> bool {
    let mut depth: i64 = 0;
    for b in &w.0 {
        depth += if b.is_left() { 1 } else { -1 };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

pub fn is_matched_pair(w: &DyckWord, i: usize, j: usize) -> Result<bool, DyckError> {
    Ok(is_balanced(&project_h(&w.factor(i, j)?)))
}

/// Membership in `D_k` decided by the matched-pair characterization: the
/// whole word is a matched pair and, for every matched pair `(i, j)` and every
/// pair index `k'`, the projection `h_k'(w_i..w_j)` is balanced.
///
/// Projections that erase a factor entirely yield the empty word, which is
/// accepted as balanced here. The empty word itself is not in `D_k`.
pub fn in_dk_lemma(w: &DyckWord) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    let k = w.k();
    if !is_balanced(&project_h(w)) {
        return false;
    }
    // For a fixed i, extend j one letter at a time while tracking the height
    // and running minimum of h and of every h_k' on w_i..w_j. A factor is
    // balanced exactly when its final height is 0 and its minimum is >= 0.
    for i in 0..n {
        let mut h = 0i64;
        let mut h_min = 0i64;
        let mut hk = vec![0i64; k + 1];
        let mut hk_min = vec![0i64; k + 1];
        for b in &w.0[i..] {
            let step = if b.is_left() { 1 } else { -1 };
            h += step;
            h_min = h_min.min(h);
            hk[b.pair] += step;
            hk_min[b.pair] = hk_min[b.pair].min(hk[b.pair]);
            if h_min < 0 {
                // no later j can make (i, j) matched
                break;
            }
            if h == 0 && (1..=k).any(|kp| hk[kp] != 0 || hk_min[kp] < 0) {
                return false;
            }
        }
    }
    true
}

/// Stack discipline: push left letters, pop on the matching right letter.
pub fn in_dk_stack(w: &DyckWord) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut stack = Vec::new();
    for b in &w.0 {
        match b.side {
            Side::Left => stack.push(b.pair),
            Side::Right => {
                if stack.pop() != Some(b.pair) {
                    return false;
                }
            }
        }
    }
    stack.is_empty()
}

/// Matched, and either adjacent or enclosing a matched pair.
pub fn is_nested_pair(w: &DyckWord, i: usize, j: usize) -> Result<bool, DyckError> {
    if !is_matched_pair(w, i, j)? {
        return Ok(false);
    }
    Ok(j == i + 1 || (j > i + 1 && is_matched_pair(w, i + 1, j - 1)?))
}

/// Whether a matched pair splits at some `i < j' < j` into two matched pairs.
pub fn is_reducible_pair(w: &DyckWord, i: usize, j: usize) -> Result<bool, DyckError> {
    if !is_matched_pair(w, i, j)? {
        return Err(DyckError::NotMatched(i, j));
    }
    for jp in i + 1..j {
        if is_matched_pair(w, i, jp)? && is_matched_pair(w, jp + 1, j)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let x = w("[1 [2 ]2 ]1");
        assert_eq!(x.to_string(), "[1 [2 ]2 ]1");
        assert!("[0".parse::<DyckWord>().is_err());
        assert!("(1".parse::<DyckWord>().is_err());
        assert!("[".parse::<DyckWord>().is_err());
    }

    #[test]
    fn projections() {
        assert_eq!(project_h(&w("[2 ]2 [3 ]3")), w("[1 ]1 [1 ]1"));
        assert_eq!(project_h(&w("")), w(""));
        assert_eq!(project_hk(&w("[1 [2 ]2 ]1"), 2, 2).unwrap(), w("[1 ]1"));
        assert_eq!(project_hk(&w("[2 ]2"), 1, 2).unwrap(), w(""));
        assert!(project_hk(&w("[2 ]2"), 3, 2).is_err());
    }

    #[test]
    fn balance() {
        assert!(is_balanced(&w("[1 ]1 [1 ]1")));
        assert!(!is_balanced(&w("]1 [1")));
        assert!(!is_balanced(&w("[1 [1 ]1")));
    }

    #[test]
    fn pairs() {
        let a = w("[1 ]1 [2 ]2");
        assert!(is_matched_pair(&a, 1, 4).unwrap());
        assert!(!is_matched_pair(&a, 2, 3).unwrap());
        assert!(!is_nested_pair(&a, 1, 4).unwrap());
        assert!(is_reducible_pair(&a, 1, 4).unwrap());
        let b = w("[1 [2 ]2 ]1");
        assert!(is_matched_pair(&b, 2, 3).unwrap());
        assert!(is_nested_pair(&b, 1, 4).unwrap());
        assert!(!is_reducible_pair(&b, 1, 4).unwrap());
        assert!(is_nested_pair(&w("[1 ]1"), 1, 2).unwrap());
        assert!(is_matched_pair(&b, 0, 2).is_err());
        assert!(is_matched_pair(&b, 3, 5).is_err());
        assert_eq!(
            is_reducible_pair(&b, 1, 2),
            Err(DyckError::NotMatched(1, 2))
        );
    }

    #[test]
    fn membership() {
        assert!(in_dk_lemma(&w("[1 [2 ]2 ]1")));
        assert!(in_dk_stack(&w("[1 [2 ]2 ]1")));
        assert!(!in_dk_lemma(&w("[1 ]2")));
        assert!(!in_dk_stack(&w("[1 ]2 ]1")));
        assert!(!in_dk_lemma(&w("[1 [2 ]1 ]2")));
        assert!(!in_dk_stack(&w("[1 [2 ]1 ]2")));
        assert!(!in_dk_stack(&w("")));
    }
}
