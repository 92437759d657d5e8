use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on word length for [`knuth_closure`].
pub const CLOSURE_CAP: usize = 8;

/// Parses a word over `{1, .., n}` written as a digit string.
pub fn parse_word(s: &str, n: u8) -> Result<Vec<u8>> {
    let w: Vec<u8> = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(Error::InvalidLetter(c)))
        .collect::<Result<_>>()?;
    check_letters(&w, n)?;
    Ok(w)
}

pub fn check_letters(w: &[u8], n: u8) -> Result<()> {
    match w.iter().find(|&&x| x == 0 || x > n) {
        Some(&letter) => Err(Error::LetterOutOfRange { letter, rank: n }),
        None => Ok(()),
    }
}

pub fn format_word(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// A semistandard tableau over `{1, .., n}`.
///
/// `rows[0]` is the insertion row (the longest). Rows are weakly increasing
/// and each column strictly increases going from `rows[0]` outwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    rank: u8,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn empty(rank: u8) -> Self {
        Tableau { rank, rows: Vec::new() }
    }

    pub fn from_word(w: &[u8], rank: u8) -> Result<Self> {
        check_letters(w, rank)?;
        let mut t = Tableau::empty(rank);
        for &x in w {
            t.insert_unchecked(x);
        }
        Ok(t)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row insertion: `x` replaces the leftmost entry strictly greater than
    /// it, and the displaced entry is inserted into the next row.
    pub fn insert(&mut self, x: u8) -> Result<()> {
        check_letters(&[x], self.rank)?;
        self.insert_unchecked(x);
        Ok(())
    }

    fn insert_unchecked(&mut self, mut x: u8) {
        for row in self.rows.iter_mut() {
            let pos = row.partition_point(|&y| y <= x);
            if pos == row.len() {
                row.push(x);
                return;
            }
            std::mem::swap(&mut row[pos], &mut x);
        }
        self.rows.push(vec![x]);
    }

    /// Rows from the last to the insertion row, each left to right.
    /// Inserting this word into an empty tableau gives `self` back.
    pub fn reading_word(&self) -> Vec<u8> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// The plactic product: the reading word of `other` inserted into `self`.
    pub fn mul(&self, other: &Tableau) -> Result<Tableau> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch { left: self.rank as usize, right: other.rank as usize });
        }
        let mut out = self.clone();
        for x in other.reading_word() {
            out.insert_unchecked(x);
        }
        Ok(out)
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| !r.is_empty() && r.windows(2).all(|p| p[0] <= p[1]));
        let shape_ok = self.rows.windows(2).all(|p| p[0].len() >= p[1].len());
        let cols_ok = self.rows.windows(2).all(|p| p[1].iter().zip(&p[0]).all(|(hi, lo)| lo < hi));
        let range_ok = self.rows.iter().flatten().all(|&x| x >= 1 && x <= self.rank);
        rows_ok && shape_ok && cols_ok && range_ok
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| format_word(r)).collect();
        write!(f, "[{}]", rows.join("|"))
    }
}

pub fn plactic_mul(s: &Tableau, t: &Tableau) -> Result<Tableau> {
    s.mul(t)
}

/// All single rewrites of `w` by `bca <-> bac` (`a < b <= c`) and
/// `cab <-> acb` (`a <= b < c`).
fn knuth_neighbours(w: &[u8]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(2) {
        let (x, y, z) = (w[i], w[i + 1], w[i + 2]);
        let mut push = |t: [u8; 3]| {
            let mut v = w.to_vec();
            v[i..i + 3].copy_from_slice(&t);
            out.push(v);
        };
        // x y z read as b c a: a = z < b = x <= c = y
        if z < x && x <= y {
            push([x, z, y]);
        }
        // read as b a c: a = y < b = x <= c = z
        if y < x && x <= z {
            push([x, z, y]);
        }
        // read as c a b: a = y <= b = z < c = x
        if y <= z && z < x {
            push([y, x, z]);
        }
        // read as a c b: a = x <= b = z < c = y
        if x <= z && z < y {
            push([y, x, z]);
        }
    }
    out
}

/// The Knuth class of `w`, found by rewriting in both directions until no
/// new word appears. Words longer than `cap` are rejected.
pub fn knuth_closure(w: &[u8], cap: usize) -> Result<BTreeSet<Vec<u8>>> {
    if w.len() > cap {
        return Err(Error::CapExceeded { len: w.len(), cap });
    }
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for next in knuth_neighbours(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// All words over `{1, .., n}` of length exactly `len`, lexicographically.
pub fn all_plactic_words(n: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
