use crate::construct::{factor_witness, WitnessAssignment};
use crate::error::Result;
use crate::word::{Identity, Word, WordExpr};

/// `<abuab[ab, ba], abvab[ab, ba]>`.
///
/// When `u[ab, ba] = v[ab, ba]` holds in `UT_4`, the result holds in the
/// plactic monoid of rank 4. That hypothesis is not checked here.
pub fn plactic_identity_lift(u: &Word, v: &Word) -> Result<Identity> {
    let wrap = |w: &Word| -> Result<WordExpr> {
        let ab = Word::parse("ab")?;
        WordExpr::word(&ab.concat(w).concat(&ab))
    };
    let (ab, ba) = (WordExpr::parse("ab")?, WordExpr::parse("ba")?);
    Identity::new(wrap(u)?.subst(&ab, &ba), wrap(v)?.subst(&ab, &ba))
}

/// The inner words `w b w` and `w a w` with `w = ba^3b^3aba`.
pub fn lift_inner_words() -> (Word, Word) {
    let w = Word::parse("ba^3b^3aba").expect("fixed word");
    let mut u = w.clone();
    u.extend(&Word::parse("b").unwrap());
    u.extend(&w);
    let mut v = w.clone();
    v.extend(&Word::parse("a").unwrap());
    v.extend(&w);
    (u, v)
}

/// An identity of the rank 4 plactic monoid that fails in `UT_5`, with the
/// factor witness of `abab` falsifying it.
pub fn p4_ut5_separation() -> (Identity, WitnessAssignment) {
    let (u, v) = lift_inner_words();
    let id = plactic_identity_lift(&u, &v).expect("distinct inner words");
    let fw = factor_witness(&Word::parse("abab").unwrap()).expect("nonempty word");
    (id, fw.assignment())
}
