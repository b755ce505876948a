//! The harmonic product on the word algebra and the diamond products
//! `⋄_s`, the latter both by its letter recursion and by the closed form
//! `v ⋄_s w = ψ_s(φ(v) ∗ ψ_s⁻¹(w))`.

use std::convert::Infallible;
use std::sync::Arc;

use crate::context::{memoized, Context, Mutation};
use crate::error::{Error, Result};
use crate::lincomb::push_scaled;
use crate::rational::Rational;
use crate::words::{phi, phi_word, psi, psi_inv, Letter, NCPoly, RootIndex, Word};

fn unwrap_infallible<T>(r: std::result::Result<T, Infallible>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => match e {},
    }
}

/// Appends `c * p * suffix` to `pairs`.
fn push_times(pairs: &mut Vec<(Word, Rational)>, p: &NCPoly, suffix: &[Letter], c: i64) {
    pairs.extend(p.iter().map(|(w, k)| {
        let mut w = w.clone();
        for &l in suffix {
            w.push(l);
        }
        (w, if c == 1 { k.clone() } else { k * &Rational::from_integer(c) })
    }));
}

/// Harmonic product of two words.
///
/// `1 ∗ w = w ∗ 1 = w`, `vx ∗ w = v ∗ wx = (v ∗ w)x`, and
/// `vy_s ∗ wy_t = (v ∗ wy_t)y_s + (vy_s ∗ w)y_t + (v ∗ w)x y_{st}`.
pub fn harmonic_words(ctx: &Context, a: &Word, b: &Word) -> NCPoly {
    NCPoly::clone(&harmonic_shared(ctx, a, b))
}

fn harmonic_shared(ctx: &Context, a: &Word, b: &Word) -> Arc<NCPoly> {
    let r = ctx.modulus();
    if a.is_empty() {
        return Arc::new(NCPoly::word(r, b.clone()));
    }
    if b.is_empty() {
        return Arc::new(NCPoly::word(r, a.clone()));
    }
    unwrap_infallible(memoized(&ctx.harmonic_memo, (a.clone(), b.clone()), || {
        let (a0, la) = a.split_last().expect("nonempty");
        let (b0, lb) = b.split_last().expect("nonempty");
        let h = |u: &Word, v: &Word| harmonic_shared(ctx, u, v);
        let mut pairs = Vec::new();
        match (la.twist(), lb.twist()) {
            (None, _) => push_times(&mut pairs, &h(&a0, b), &[Letter::X], 1),
            (_, None) => push_times(&mut pairs, &h(a, &b0), &[Letter::X], 1),
            (Some(s), Some(t)) => {
                push_times(&mut pairs, &h(&a0, b), &[la], 1);
                push_times(&mut pairs, &h(a, &b0), &[lb], 1);
                push_times(&mut pairs, &h(&a0, &b0), &[Letter::X, Letter::y((s + t) % r)], 1);
            }
        }
        Ok(Arc::new(NCPoly::from_terms(r, pairs)))
    }))
}

pub fn harmonic(ctx: &Context, p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
    ctx.check(p)?;
    ctx.check(q)?;
    let mut pairs = Vec::new();
    for (a, ca) in p.iter() {
        for (b, cb) in q.iter() {
            push_scaled(&mut pairs, harmonic_shared(ctx, a, b).terms().clone(), &(ca * cb));
        }
    }
    Ok(NCPoly::from_terms(ctx.modulus(), pairs))
}

fn check_diamond_args(ctx: &Context, s: RootIndex, v: &NCPoly, w: &NCPoly) -> Result<()> {
    if v.modulus() != 1 {
        return Err(Error::ModulusMismatch(v.modulus(), 1));
    }
    if s.modulus() != ctx.modulus() {
        return Err(Error::ModulusMismatch(s.modulus(), ctx.modulus()));
    }
    ctx.check(w)
}

/// `v ⋄_s 1 = ψ_s φ(v)`.
fn diamond_right_unit(s: RootIndex, v: &Word) -> NCPoly {
    psi(s, &phi_word(s.modulus(), v))
}

/// The recursive diamond product on words: `v` over `{x, y}`, `w` over the
/// full alphabet. Peels the last letter of both arguments.
pub fn diamond_words(ctx: &Context, s: RootIndex, v: &Word, w: &Word) -> NCPoly {
    NCPoly::clone(&diamond_shared(ctx, s, v, w))
}

fn diamond_shared(ctx: &Context, s: RootIndex, v: &Word, w: &Word) -> Arc<NCPoly> {
    let r = ctx.modulus();
    if v.is_empty() {
        return Arc::new(NCPoly::word(r, w.clone()));
    }
    if w.is_empty() {
        return Arc::new(diamond_right_unit(s, v));
    }
    let key = (s.j(), v.clone(), w.clone());
    unwrap_infallible(memoized(&ctx.diamond_memo, key, || Ok(Arc::new(diamond_step(ctx, s, v, w)))))
}

fn diamond_step(ctx: &Context, s: RootIndex, v: &Word, w: &Word) -> NCPoly {
    let (v0, a) = v.split_last().expect("nonempty");
    let (w0, b) = w.split_last().expect("nonempty");
    let d = |v: &Word, w: &Word| diamond_shared(ctx, s, v, w);
    let mut pairs = Vec::new();
    // (v0 ⋄ w) a is the leading term of every rule.
    push_times(&mut pairs, &d(&v0, w), &[a], 1);
    let a_is_x = a.is_x();
    match b.twist() {
        None if a_is_x => {
            let sign = if ctx.mutation() == Some(Mutation::DiamondRule3Sign) { 1 } else { -1 };
            push_times(&mut pairs, &d(&v0.with(Letter::Y), &w0), &[Letter::X], sign);
        }
        None => push_times(&mut pairs, &d(v, &w0), &[Letter::X], 1),
        Some(0) if a_is_x => push_times(&mut pairs, &d(v, &w0), &[Letter::Y], 1),
        Some(0) => push_times(&mut pairs, &d(&v0.with(Letter::X), &w0), &[Letter::Y], -1),
        Some(_) => {
            // v0 ⋄ w0 z_t = v0 ⋄ w0 x + v0 ⋄ w0 y_t
            let tail = if a_is_x { d(&v0.with(Letter::Y), &w0) } else { d(v, &w0) };
            let (zt_sign, tail_sign) = if a_is_x { (1, -1) } else { (-1, 1) };
            push_times(&mut pairs, &d(&v0, &w0.with(Letter::X)), &[b], zt_sign);
            push_times(&mut pairs, &d(&v0, w), &[b], zt_sign);
            push_times(&mut pairs, &tail, &[b], tail_sign);
        }
    }
    NCPoly::from_terms(ctx.modulus(), pairs)
}

/// `v ⋄_s w` by the letter recursion. `v` must have modulus 1.
pub fn diamond(ctx: &Context, s: RootIndex, v: &NCPoly, w: &NCPoly) -> Result<NCPoly> {
    check_diamond_args(ctx, s, v, w)?;
    let mut pairs = Vec::new();
    for (a, ca) in v.iter() {
        for (b, cb) in w.iter() {
            push_scaled(&mut pairs, diamond_shared(ctx, s, a, b).terms().clone(), &(ca * cb));
        }
    }
    Ok(NCPoly::from_terms(ctx.modulus(), pairs))
}

/// `v ⋄_s w = ψ_s(φ(v) ∗ ψ_s⁻¹(w))`, computed from the morphisms and the
/// harmonic product only.
pub fn diamond_oracle(ctx: &Context, s: RootIndex, v: &NCPoly, w: &NCPoly) -> Result<NCPoly> {
    check_diamond_args(ctx, s, v, w)?;
    let v = phi(&v.embed(ctx.modulus())?);
    let prod = harmonic(ctx, &v, &psi_inv(s, w))?;
    Ok(psi(s, &prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_upto;

    fn w(s: &str) -> Word {
        Word::from_letters(
            &s.split_whitespace()
                .map(|t| if t == "x" { Letter::X } else { Letter::y(t[1..].parse().unwrap()) })
                .collect::<Vec<_>>(),
        )
    }

    fn p(r: u32, s: &str) -> NCPoly {
        NCPoly::word(r, w(s))
    }

    #[test]
    fn harmonic_unit() {
        let ctx = Context::new(2).unwrap();
        let q = p(2, "x y1 y0");
        assert_eq!(harmonic(&ctx, &NCPoly::one(2), &q).unwrap(), q);
        assert_eq!(harmonic(&ctx, &q, &NCPoly::one(2)).unwrap(), q);
    }

    #[test]
    fn harmonic_y_y() {
        let ctx = Context::new(1).unwrap();
        let y = p(1, "y0");
        let want = &p(1, "y0 y0").scale_int(2) + &p(1, "x y0");
        assert_eq!(harmonic(&ctx, &y, &y).unwrap(), want);
    }

    #[test]
    fn harmonic_depth_one_z() {
        let r = 3;
        let ctx = Context::new(r).unwrap();
        for s in RootIndex::all(r) {
            for t in RootIndex::all(r) {
                let a = NCPoly::z_ks(r, 2, s);
                let b = NCPoly::z_ks(r, 3, t);
                let want = &(&(&a * &b) + &(&b * &a)) + &NCPoly::z_ks(r, 5, s * t);
                assert_eq!(harmonic(&ctx, &a, &b).unwrap(), want);
            }
        }
    }

    #[test]
    fn harmonic_rejects_mixed_moduli() {
        let ctx = Context::new(2).unwrap();
        assert!(matches!(harmonic(&ctx, &NCPoly::x(1), &NCPoly::x(2)), Err(Error::ModulusMismatch(..))));
    }

    #[test]
    fn diamond_units() {
        for r in 1..=3 {
            let ctx = Context::new(r).unwrap();
            for s in RootIndex::all(r) {
                let target = p(r, "x y0");
                assert_eq!(diamond(&ctx, s, &NCPoly::one(1), &target).unwrap(), target);
                let y_one = diamond(&ctx, s, &p(1, "y0"), &NCPoly::one(r)).unwrap();
                assert_eq!(y_one, &NCPoly::z(r) - &NCPoly::z_delta(r, s));
                assert_eq!(diamond_oracle(&ctx, s, &p(1, "y0"), &NCPoly::one(r)).unwrap(), y_one);
                let x_one = diamond(&ctx, s, &p(1, "x"), &NCPoly::one(r)).unwrap();
                assert_eq!(x_one, NCPoly::z_delta(r, s));
            }
        }
    }

    #[test]
    fn diamond_y_y_untwisted() {
        let ctx = Context::new(1).unwrap();
        let s = RootIndex::one(1);
        let want = &p(1, "y0 y0") - &p(1, "x y0");
        assert_eq!(diamond(&ctx, s, &p(1, "y0"), &p(1, "y0")).unwrap(), want);
        assert_eq!(diamond_oracle(&ctx, s, &p(1, "y0"), &p(1, "y0")).unwrap(), want);
    }

    #[test]
    fn one_is_not_a_right_unit() {
        let ctx = Context::new(2).unwrap();
        for s in RootIndex::all(2).filter(|s| !s.is_one()) {
            let got = diamond(&ctx, s, &p(1, "y0"), &NCPoly::one(2)).unwrap();
            assert_ne!(got, p(2, "y0"));
        }
    }

    #[test]
    fn recursion_matches_closed_form_small() {
        let r = 2;
        let ctx = Context::new(r).unwrap();
        for s in RootIndex::all(r) {
            for v in words_upto(1, 2) {
                for x in words_upto(r, 2) {
                    let v = NCPoly::word(1, v.clone());
                    let x = NCPoly::word(r, x);
                    assert_eq!(diamond(&ctx, s, &v, &x).unwrap(), diamond_oracle(&ctx, s, &v, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn mutation_breaks_rule_three() {
        let ctx = Context::with_mutation(1, Some(Mutation::DiamondRule3Sign)).unwrap();
        let s = RootIndex::one(1);
        let (v, x) = (p(1, "x"), p(1, "x"));
        assert_ne!(diamond(&ctx, s, &v, &x).unwrap(), diamond_oracle(&ctx, s, &v, &x).unwrap());
    }

    #[test]
    fn diamond_rejects_twisted_left_argument() {
        let ctx = Context::new(2).unwrap();
        let s = RootIndex::one(2);
        assert!(diamond(&ctx, s, &p(2, "y1"), &NCPoly::one(2)).is_err());
    }
}
