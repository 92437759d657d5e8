//! Identities of full tropical matrix semigroups.

use super::{exponent_bound, lcm_upto, WitnessAssignment};
use crate::error::{Error, Result};
use crate::tropical::TropMatrix;
use crate::word::{Identity, WordExpr};

fn check_exponent(t: u64, n: u64, allow_remark: bool) -> Result<()> {
    if t == 0 {
        return Err(Error::ZeroExponent);
    }
    let bound = exponent_bound(n);
    if t < bound && !allow_remark {
        return Err(Error::ExponentBound { t, bound });
    }
    Ok(())
}

fn check_balanced(u: &WordExpr, v: &WordExpr, what: &str) -> Result<()> {
    if u.counts() != v.counts() {
        return Err(Error::PreconditionFailed(format!("{what} is not balanced")));
    }
    Ok(())
}

/// `<ua, va>[x, y]`.
fn lift(u: &WordExpr, v: &WordExpr, x: &WordExpr, y: &WordExpr) -> Result<Identity> {
    let a = WordExpr::a();
    Identity::new(u.then(&a).subst(x, y), v.then(&a).subst(x, y))
}

/// `[a^n̄, b^n̄]` images.
fn scaled_letters(n: u64) -> Result<(WordExpr, WordExpr)> {
    let nbar = lcm_upto(n);
    Ok((WordExpr::a().pow(nbar)?, WordExpr::b().pow(nbar)?))
}

/// From an identity `u = v` of `M_{n-1}` and an identity `q = r` of `UT_n`,
/// the `M_n` identity
/// `<ua, va>[(qr)^t[a^n̄, b^n̄], (qr)^t r[a^n̄, b^n̄]]`.
///
/// `t` must be at least `(n-1)^2 + 1` unless `allow_remark` is set.
pub fn fulliden_compose_i(
    u: &WordExpr,
    v: &WordExpr,
    q: &WordExpr,
    r: &WordExpr,
    t: u64,
    n: u64,
    allow_remark: bool,
) -> Result<Identity> {
    check_exponent(t, n, allow_remark)?;
    check_balanced(u, v, "u = v")?;
    check_balanced(q, r, "q = r")?;
    let (an, bn) = scaled_letters(n)?;
    let qr_t = q.then(r).pow(t)?;
    let x = qr_t.subst(&an, &bn);
    let y = qr_t.then(r).subst(&an, &bn);
    lift(u, v, &x, &y)
}

/// From an identity `u = v` of `M_{n-1}` and an identity `pqp = prp` of
/// `UT_n`, the `M_n` identity `<ua, va>[wqp[a^n̄, b^n̄], wrp[a^n̄, b^n̄]]` with
/// `w = (pqprp)^t`. Omitting `t` (so `w = pqprp`) requires `allow_remark`.
#[allow(clippy::too_many_arguments)]
pub fn fulliden_compose_ii(
    u: &WordExpr,
    v: &WordExpr,
    p: &WordExpr,
    q: &WordExpr,
    r: &WordExpr,
    t: Option<u64>,
    n: u64,
    allow_remark: bool,
) -> Result<Identity> {
    let t = match t {
        Some(t) => {
            check_exponent(t, n, allow_remark)?;
            t
        }
        None if allow_remark => 1,
        None => {
            return Err(Error::PreconditionFailed(
                "omitting the exponent requires allow_remark".into(),
            ))
        }
    };
    check_balanced(u, v, "u = v")?;
    check_balanced(q, r, "q = r")?;
    let (an, bn) = scaled_letters(n)?;
    let w = WordExpr::concat(vec![p.clone(), q.clone(), p.clone(), r.clone(), p.clone()])?.pow(t)?;
    let x = WordExpr::concat(vec![w.clone(), q.clone(), p.clone()])?.subst(&an, &bn);
    let y = WordExpr::concat(vec![w, r.clone(), p.clone()])?.subst(&an, &bn);
    lift(u, v, &x, &y)
}

/// An identity of `M_3` (sides of length 5832) that fails in `M_4`.
pub fn m3_identity() -> Identity {
    let u = WordExpr::parse("a^2b^3a^3babab^3a^2").unwrap();
    let v = WordExpr::parse("a^2b^3ababa^3b^3a^2").unwrap();
    let (ab, ba) = (WordExpr::parse("ab").unwrap(), WordExpr::parse("ba").unwrap());
    let p = WordExpr::parse("ab^2a^2b").unwrap().subst(&ab, &ba);
    fulliden_compose_ii(&u, &v, &p, &ab, &ba, None, 3, true).expect("fixed inputs are valid")
}

/// The pair `X, Y` in `M_4` falsifying [`m3_identity`].
pub fn m4_witness() -> WitnessAssignment {
    let x = TropMatrix::from_i64_rows(&[
        &[Some(2), None, None, None],
        &[None, Some(4), None, None],
        &[Some(3), None, None, None],
        &[None, None, Some(4), Some(0)],
    ])
    .unwrap();
    let y = TropMatrix::from_i64_rows(&[
        &[None, Some(0), None, None],
        &[None, None, Some(1), None],
        &[None, None, None, Some(1)],
        &[Some(1), None, None, None],
    ])
    .unwrap();
    WitnessAssignment { a: x, b: y }
}

/// `a^2b^4a^2 a^2b^2 a^2b^4a^2 = a^2b^4a^2 b^2a^2 a^2b^4a^2`, an identity of
/// `M_2`. For invertible `A, B` it holds iff `A^2B^2 = B^2A^2`.
pub fn m2_falsifier_pair() -> Identity {
    Identity::parse("a^2b^4a^2 a^2b^2 a^2b^4a^2", "a^2b^4a^2 b^2a^2 a^2b^4a^2").expect("distinct words")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{Permutation, TropValue};
    use crate::word::{Letter, Word};
    use num_bigint::BigUint;

    fn e(s: &str) -> WordExpr {
        WordExpr::parse(s).unwrap()
    }

    #[test]
    fn m3_lengths() {
        let id = m3_identity();
        assert_eq!(id.lengths(), (BigUint::from(5832u32), BigUint::from(5832u32)));
        assert!(id.is_balanced());
    }

    #[test]
    fn m3_image_lengths() {
        // l(wqp[a^6, b^6]) = 6 * l(wqp) = 6 * 54
        let (ab, ba) = (e("ab"), e("ba"));
        let p = e("ab^2a^2b").subst(&ab, &ba);
        let w = WordExpr::concat(vec![p.clone(), ab.clone(), p.clone(), ba.clone(), p.clone()]).unwrap();
        let wqp = WordExpr::concat(vec![w, ab, p]).unwrap();
        assert_eq!(wqp.expanded_length(), BigUint::from(54u32));
        let img = wqp.subst(&e("a^6"), &e("b^6"));
        assert_eq!(img.expanded_length(), BigUint::from(324u32));
        assert_eq!(img.expand(1000).unwrap().len(), 324);
    }

    #[test]
    fn m4_matrices() {
        let wit = m4_witness();
        assert_eq!(wit.a.diagonal(), vec![TropValue::fin(2), TropValue::fin(4), TropValue::NEG_INF, TropValue::fin(0)]);
        assert_eq!(*wit.a.get(2, 0), TropValue::fin(3));
        assert_eq!(*wit.a.get(3, 2), TropValue::fin(4));
        assert_eq!(wit.b.underlying_permutation(), Some(Permutation::cycle(4)));
    }

    #[test]
    fn compose_i_small_and_checked_by_expansion() {
        let id = fulliden_compose_i(&e("ab"), &e("ba"), &e("ab"), &e("ba"), 2, 2, false).unwrap();
        // X = (abba)^2[a^2, b^2] has length 16, Y = (abba)^2 ba [a^2, b^2] length 20
        let x = e("abbaabba").subst(&e("aa"), &e("bb")).expand(100).unwrap();
        let y = e("abbaabbaba").subst(&e("aa"), &e("bb")).expand(100).unwrap();
        let want = Word::parse("aba").unwrap().substitute(&x, &y);
        assert_eq!(id.lhs().expand(1000).unwrap(), want);
        assert_eq!(id.lengths().0, BigUint::from(2 * 16 + 20u32));
        assert!(id.is_balanced());
    }

    #[test]
    fn compose_rejections() {
        assert!(matches!(
            fulliden_compose_i(&e("ab"), &e("ab"), &e("ab"), &e("ba"), 2, 2, false),
            Err(Error::NotAnIdentity(_))
        ));
        assert_eq!(
            fulliden_compose_i(&e("ab"), &e("ba"), &e("ab"), &e("ba"), 4, 3, false).unwrap_err(),
            Error::ExponentBound { t: 4, bound: 5 }
        );
        assert!(fulliden_compose_i(&e("ab"), &e("ba"), &e("ab"), &e("ba"), 4, 3, true).is_ok());
        assert!(matches!(
            fulliden_compose_i(&e("ab"), &e("ba"), &e("a"), &e("b"), 2, 2, false),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            fulliden_compose_i(&e("ab"), &e("bb"), &e("ab"), &e("ba"), 2, 2, false),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            fulliden_compose_ii(&e("ab"), &e("ba"), &e("a"), &e("ab"), &e("ab"), Some(5), 3, false),
            Err(Error::NotAnIdentity(_))
        ));
        assert!(fulliden_compose_ii(&e("ab"), &e("ba"), &e("a"), &e("ab"), &e("ba"), None, 3, false).is_err());
    }

    #[test]
    fn m2_pair_shape() {
        let id = m2_falsifier_pair();
        let (l, r) = id.counts();
        assert_eq!(l, r);
        assert_eq!(l, (BigUint::from(10u32), BigUint::from(10u32)));
        assert_eq!(id.lengths().0, BigUint::from(20u32));
        assert_eq!(id.lhs().letter_count(Letter::A), BigUint::from(10u32));
    }

    #[test]
    fn m2_pair_on_cycle_and_diagonal() {
        let id = m2_falsifier_pair();
        let cyc = TropMatrix::permutation(&Permutation::cycle(3), &[TropValue::ZERO; 3]);
        let b = TropMatrix::diag_i64(&[0, 0, 1]);
        assert_ne!(id.lhs().eval_matrices(&cyc, &b).unwrap(), id.rhs().eval_matrices(&cyc, &b).unwrap());
        let s = TropMatrix::diag_i64(&[1, 1, 1]);
        assert_eq!(id.lhs().eval_matrices(&cyc, &s).unwrap(), id.rhs().eval_matrices(&cyc, &s).unwrap());
    }
}
