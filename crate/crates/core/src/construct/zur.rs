use crate::error::{Error, Result};
use crate::word::{Identity, Letter, Word, WordExpr};

/// `<waw, wbw>[ab, ba]`, an identity of `UT_n` whenever `w` has every word
/// of length `n - 1` as a factor and neither `waw` nor `wbw` contains a run
/// of `n` equal letters.
pub fn zur_identity(w: &Word, n: usize) -> Result<Identity> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if n < 1 {
        return Err(Error::PreconditionFailed("n must be at least 1".into()));
    }
    let missing = w.missing_factors(n - 1);
    if !missing.is_empty() {
        let listed: Vec<String> = missing.iter().map(|m| m.to_string()).collect();
        return Err(Error::PreconditionFailed(format!(
            "{w} is missing factors of length {}: {}",
            n - 1,
            listed.join(", ")
        )));
    }
    let (u, v) = zur_words(w);
    for side in [&u, &v] {
        for l in [Letter::A, Letter::B] {
            if side.has_run(l, n) {
                return Err(Error::PreconditionFailed(format!("{side} contains {}^{n}", l.as_char())));
            }
        }
    }
    let body = WordExpr::word(w)?;
    let lhs = WordExpr::concat(vec![body.clone(), WordExpr::a(), body.clone()])?;
    let rhs = WordExpr::concat(vec![body.clone(), WordExpr::b(), body])?;
    let (ab, ba) = (WordExpr::parse("ab")?, WordExpr::parse("ba")?);
    Identity::new(lhs.subst(&ab, &ba), rhs.subst(&ab, &ba))
}

/// The unsubstituted sides `(waw, wbw)`.
pub fn zur_words(w: &Word) -> (Word, Word) {
    let mut u = w.clone();
    u.push(Letter::A);
    u.extend(w);
    let mut v = w.clone();
    v.push(Letter::B);
    v.extend(w);
    (u, v)
}
