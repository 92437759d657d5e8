use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            other => Err(Error::InvalidLetter(other)),
        }
    }

    pub fn label(self) -> Label {
        match self {
            Letter::A => Label::A,
            Letter::B => Label::B,
        }
    }
}

/// An explicit word over `{a, b}`. May be empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Parses words such as `"abaab"` or `"ab^2a^2b"`; an exponent applies
    /// to the single letter before it.
    pub fn parse(s: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            if c == '^' {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let k: usize = digits
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent in {s:?}")))?;
                let last = *out.last().ok_or_else(|| Error::Invalid(format!("dangling exponent in {s:?}")))?;
                if k == 0 {
                    out.pop();
                } else {
                    out.extend(std::iter::repeat_n(last, k - 1));
                }
            } else {
                out.push(Letter::from_char(c)?);
            }
        }
        Ok(Word(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn labels(&self) -> Vec<Label> {
        self.0.iter().map(|l| l.label()).collect()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// The homomorphic image under `a -> x`, `b -> y`.
    pub fn substitute(&self, x: &Word, y: &Word) -> Word {
        let mut out = Vec::with_capacity(self.count(Letter::A) * x.len() + self.count(Letter::B) * y.len());
        for &l in &self.0 {
            out.extend_from_slice(match l {
                Letter::A => &x.0,
                Letter::B => &y.0,
            });
        }
        Word(out)
    }

    /// True iff `self` occurs contiguously inside `haystack`.
    pub fn is_factor_of(&self, haystack: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        haystack.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.0.strip_suffix(suffix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// True iff `letter^n` is a factor.
    pub fn has_run(&self, letter: Letter, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let mut run = 0;
        for &l in &self.0 {
            run = if l == letter { run + 1 } else { 0 };
            if run >= n {
                return true;
            }
        }
        false
    }

    /// Words of length `k` that do not occur as factors, in lexicographic order.
    pub fn missing_factors(&self, k: usize) -> Vec<Word> {
        all_words(k).into_iter().filter(|f| !f.is_factor_of(self)).collect()
    }

    pub fn all_factors_present(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if k > self.len() {
            return false;
        }
        let mut seen = vec![false; 1usize << k];
        for w in self.0.windows(k) {
            let code = w.iter().fold(0usize, |acc, &l| (acc << 1) | (l == Letter::B) as usize);
            seen[code] = true;
        }
        seen.iter().all(|&s| s)
    }
}

/// All words of length `k` over `{a, b}` in lexicographic order (`a < b`).
pub fn all_words(k: usize) -> Vec<Word> {
    (0..1usize << k)
        .map(|code| {
            Word((0..k).map(|i| if code >> (k - 1 - i) & 1 == 1 { Letter::B } else { Letter::A }).collect())
        })
        .collect()
}

/// Standalone form of [`Word::is_factor_of`]: is `w` a factor of `v`?
pub fn is_factor(w: &Word, v: &Word) -> bool {
    w.is_factor_of(v)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 0..=max).prop_map(Word)
    }

    #[test]
    fn parse_with_exponents() {
        assert_eq!(w("ab^2a^2b").to_string(), "abbaab");
        assert_eq!(w("ba^3b^3aba").len(), 10);
        assert_eq!(w("a^0b").to_string(), "b");
        assert!(Word::parse("abc").is_err());
        assert!(Word::parse("^2").is_err());
    }

    #[test]
    fn substitution() {
        let (x, y) = (w("ab"), w("ba"));
        assert_eq!(w("a").substitute(&x, &y), x);
        assert_eq!(w("abaab").substitute(&x, &y), w("ab^2a^2bab^2a"));
        assert_eq!(w("abbab").substitute(&x, &y), w("ab^2aba^2b^2a"));
    }

    #[test]
    fn factors_and_runs() {
        assert!(is_factor(&w("aa"), &w("abaab")));
        assert!(!is_factor(&w("aa"), &w("abbab")));
        let base = w("ab^2a^2b");
        let u3 = base.concat(&w("b")).concat(&base);
        let v3 = base.concat(&w("a")).concat(&base);
        assert!(w("bab").is_factor_of(&u3));
        assert!(!w("bab").is_factor_of(&v3));
        assert!(w("ba^3b^3aba").all_factors_present(3));
        assert!(!w("ab").all_factors_present(2));
        assert_eq!(w("ab").missing_factors(2), vec![w("aa"), w("ba"), w("bb")]);
        assert!(w("abbba").has_run(Letter::B, 3));
        assert!(!w("abbba").has_run(Letter::B, 4));
        assert!(Word::empty().is_factor_of(&w("a")));
    }

    #[test]
    fn lexicographic_enumeration() {
        let words: Vec<String> = all_words(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(words, ["aa", "ab", "ba", "bb"]);
        assert_eq!(all_words(0), vec![Word::empty()]);
    }

    proptest! {
        #[test]
        fn substitution_is_a_homomorphism(u in arb_word(8), v in arb_word(8), x in arb_word(4), y in arb_word(4)) {
            prop_assert_eq!(u.concat(&v).substitute(&x, &y), u.substitute(&x, &y).concat(&v.substitute(&x, &y)));
        }

        #[test]
        fn factor_enumeration_agrees(u in arb_word(20), k in 0usize..4) {
            prop_assert_eq!(u.all_factors_present(k), u.missing_factors(k).is_empty());
        }
    }
}
