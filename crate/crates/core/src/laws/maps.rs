use std::collections::BTreeSet;

use rand::Rng;

use super::{law, poly_eq, random_root, random_word, Case, Env, Law, Outcome};
use crate::error::Result;
use crate::hopf::{antipode, coproduct, enumerate_forests_upto, forest_sum, Forest};
use crate::products::diamond;
use crate::rtm::{apply_rtm, f_poly, g_poly};
use crate::words::{right_divide, tau, words_upto, Letter, NCPoly, RootIndex, Word};

pub(super) fn laws() -> Vec<Law> {
    vec![
        law("thm1", "f̃(z_s^δ w) = z_s^δ(F_f ⋄_s w)", thm1),
        law("thm2", "S(f)~(z_s^δ w) = z_s^δ(G_f ⋄_s w)", thm2),
        law("thm3", "S(f)~ = τ f̃ τ", thm3),
        law("prop7", "F_f ⋄_s v z_{s'}^δ w = Σ (F_{f'} ⋄_s v) z_{s'}^δ (F_{f''} ⋄_{s'} w)", prop7),
        law("mt45", "Σ F_{f'} ⋄_1 G_{f''} = 0 on the augmentation ideal", mt45),
        law("mt51", "F_f = −R_y τ R_y⁻¹(F_{S(f)}) on the augmentation ideal", mt51),
        law("g_eq_f_of_antipode", "G_f = F_{S(f)}", g_eq_f),
        law("rtm_commute", "f̃ g̃ = g̃ f̃", rtm_commute),
        law("rtm_split_independence", "(gh)~ = g̃ h̃ for every splitting of a forest", rtm_split),
        law("rtm_rz_commute", "f̃(wz) = f̃(w)z", rtm_rz),
        law("rtm_degree_raising", "f̃ raises word degree by deg f", rtm_degree),
    ]
}

fn forests(max: u32) -> Vec<Forest> {
    enumerate_forests_upto(max)
}

fn fs(f: &Forest) -> crate::hopf::ForestSum {
    forest_sum(f.clone())
}

/// `(r, s, f, w)` with `deg f ≤ F`, `deg w ≤ D`, plus samples with `deg w = D + 1`.
fn forest_word_cases(env: &Env, with_root: bool, dw: usize) -> Vec<Case> {
    let fl = forests(env.fdeg());
    let mut cases = Vec::new();
    for &r in &env.sweep.r_values {
        let ss: Vec<Option<RootIndex>> =
            if with_root { RootIndex::all(r).map(Some).collect() } else { vec![None] };
        for s in &ss {
            for f in &fl {
                for w in words_upto(r, dw) {
                    let c = Case::new(r).forests(std::slice::from_ref(f)).words(&[w]);
                    cases.push(match s {
                        Some(s) => c.roots(&[*s]),
                        None => c,
                    });
                }
            }
        }
        cases.extend(env.samples(r, |rng| {
            let f = fl[rng.gen_range(0..fl.len())].clone();
            let c = Case::new(r).forests(&[f]).words(&[random_word(rng, r, dw + 1)]);
            if with_root {
                let s = random_root(rng, r);
                c.roots(&[s])
            } else {
                c
            }
        }));
    }
    cases
}

fn thm1(env: &Env) -> Result<Outcome> {
    env.check(forest_word_cases(env, true, env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, f, w) = (c.s(0), fs(&c.forests[0]), c.wp(0));
        let zs = NCPoly::z_delta(r, s);
        let lhs = apply_rtm(&ctx, &f, &(&zs * &w))?;
        let rhs = &zs * &diamond(&ctx, s, &f_poly(&ctx, &f)?, &w)?;
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn thm2(env: &Env) -> Result<Outcome> {
    env.check(forest_word_cases(env, true, env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, f, w) = (c.s(0), fs(&c.forests[0]), c.wp(0));
        let zs = NCPoly::z_delta(r, s);
        let lhs = apply_rtm(&ctx, &antipode(&f), &(&zs * &w))?;
        let rhs = &zs * &diamond(&ctx, s, &g_poly(&ctx, &f)?, &w)?;
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn thm3(env: &Env) -> Result<Outcome> {
    env.check(forest_word_cases(env, false, env.d() + 1), |c| {
        let ctx = env.ctx(c.r)?;
        let (f, p) = (fs(&c.forests[0]), c.wp(0));
        let lhs = apply_rtm(&ctx, &antipode(&f), &p)?;
        let rhs = tau(&apply_rtm(&ctx, &f, &tau(&p))?);
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn prop7(env: &Env) -> Result<Outcome> {
    let d = env.d();
    let fl = forests(env.fdeg());
    let mut cases = Vec::new();
    for &r in &env.sweep.r_values {
        let words = words_upto(r, d);
        for s in RootIndex::all(r) {
            for s2 in RootIndex::all(r) {
                for f in &fl {
                    for v in &words {
                        for w in words_upto(r, d - v.len()) {
                            cases.push(Case::new(r).roots(&[s, s2]).forests(std::slice::from_ref(f)).words(&[v.clone(), w]));
                        }
                    }
                }
            }
        }
        cases.extend(env.samples(r, |rng| {
            let f = fl[rng.gen_range(0..fl.len())].clone();
            let rs = [random_root(rng, r), random_root(rng, r)];
            let ws = [random_word(rng, r, d / 2 + 1), random_word(rng, r, d / 2 + 1)];
            Case::new(r).roots(&rs).forests(&[f]).words(&ws)
        }));
    }
    env.check(cases, |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, s2) = (c.s(0), c.s(1));
        let f = fs(&c.forests[0]);
        let (v, w) = (c.wp(0), c.wp(1));
        let z2 = NCPoly::z_delta(r, s2);
        let lhs = diamond(&ctx, s, &f_poly(&ctx, &f)?, &(&(&v * &z2) * &w))?;
        let mut rhs = NCPoly::zero(r);
        for ((a, b), coef) in coproduct(&f).iter() {
            let left = diamond(&ctx, s, &f_poly(&ctx, &fs(a))?, &v)?;
            let right = diamond(&ctx, s2, &f_poly(&ctx, &fs(b))?, &w)?;
            rhs.add_scaled(&(&(&left * &z2) * &right), coef);
        }
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn aug_cases(env: &Env) -> Vec<Case> {
    forests(env.fdeg() + 1).into_iter().filter(|f| !f.is_unit()).map(|f| Case::new(1).forests(&[f])).collect()
}

fn mt45(env: &Env) -> Result<Outcome> {
    env.check(aug_cases(env), |c| {
        let base = env.base()?;
        let mut sum = NCPoly::zero(1);
        for ((a, b), coef) in coproduct(&fs(&c.forests[0])).iter() {
            let term = diamond(&base, RootIndex::one(1), &f_poly(&base, &fs(a))?, &g_poly(&base, &fs(b))?)?;
            sum.add_scaled(&term, coef);
        }
        Ok(poly_eq(&sum, &NCPoly::zero(1)))
    })
}

fn mt51(env: &Env) -> Result<Outcome> {
    env.check(aug_cases(env), |c| {
        let base = env.base()?;
        let f = fs(&c.forests[0]);
        let y = NCPoly::letter(1, Letter::Y);
        let of_antipode = f_poly(&base, &antipode(&f))?;
        let rhs = -&(&tau(&right_divide(&of_antipode, &y)?) * &y);
        Ok(poly_eq(&f_poly(&base, &f)?, &rhs))
    })
}

fn g_eq_f(env: &Env) -> Result<Outcome> {
    let cases = forests(env.fdeg() + 1).into_iter().map(|f| Case::new(1).forests(&[f])).collect();
    env.check(cases, |c| {
        let base = env.base()?;
        let f = fs(&c.forests[0]);
        Ok(poly_eq(&g_poly(&base, &f)?, &f_poly(&base, &antipode(&f))?))
    })
}

fn rtm_commute(env: &Env) -> Result<Outcome> {
    let fl: Vec<Forest> = forests(env.fdeg().min(2)).into_iter().filter(|f| !f.is_unit()).collect();
    let mut cases = Vec::new();
    for &r in &env.sweep.r_values {
        for (i, f) in fl.iter().enumerate() {
            for g in &fl[i + 1..] {
                for w in words_upto(r, env.d()) {
                    cases.push(Case::new(r).forests(&[f.clone(), g.clone()]).words(&[w]));
                }
            }
        }
    }
    env.check(cases, |c| {
        let ctx = env.ctx(c.r)?;
        let (f, g, w) = (fs(&c.forests[0]), fs(&c.forests[1]), c.wp(0));
        let fg = apply_rtm(&ctx, &f, &apply_rtm(&ctx, &g, &w)?)?;
        let gf = apply_rtm(&ctx, &g, &apply_rtm(&ctx, &f, &w)?)?;
        Ok(poly_eq(&fg, &gf))
    })
}

/// Every way to write `f = gh` with `g`, `h` nonempty, up to multiset equality.
fn splittings(f: &Forest) -> Vec<(Forest, Forest)> {
    let trees = f.trees();
    let n = trees.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) - 1 {
        let (mut g, mut h) = (Vec::new(), Vec::new());
        for (i, t) in trees.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.push(t.clone());
            } else {
                h.push(t.clone());
            }
        }
        out.insert((Forest::from_trees(g), Forest::from_trees(h)));
    }
    out.into_iter().collect()
}

fn rtm_split(env: &Env) -> Result<Outcome> {
    let mut cases = Vec::new();
    for &r in &env.sweep.r_values {
        for f in forests(env.fdeg()).into_iter().filter(|f| f.trees().len() >= 2) {
            for (g, h) in splittings(&f) {
                for w in words_upto(r, env.d()) {
                    cases.push(Case::new(r).forests(&[f.clone(), g.clone(), h.clone()]).words(&[w]));
                }
            }
        }
    }
    env.check(cases, |c| {
        let ctx = env.ctx(c.r)?;
        let w = c.wp(0);
        let whole = apply_rtm(&ctx, &fs(&c.forests[0]), &w)?;
        let split = apply_rtm(&ctx, &fs(&c.forests[1]), &apply_rtm(&ctx, &fs(&c.forests[2]), &w)?)?;
        Ok(poly_eq(&whole, &split))
    })
}

fn rtm_rz(env: &Env) -> Result<Outcome> {
    env.check(forest_word_cases(env, false, env.d()), |c| {
        let ctx = env.ctx(c.r)?;
        let (f, w) = (fs(&c.forests[0]), c.wp(0));
        let z = NCPoly::z(c.r);
        Ok(poly_eq(&apply_rtm(&ctx, &f, &(&w * &z))?, &(&apply_rtm(&ctx, &f, &w)? * &z)))
    })
}

fn rtm_degree(env: &Env) -> Result<Outcome> {
    env.check(forest_word_cases(env, false, env.d()), |c| {
        let ctx = env.ctx(c.r)?;
        let f = &c.forests[0];
        let w: &Word = &c.words[0];
        let out = apply_rtm(&ctx, &fs(f), &c.wp(0))?;
        let want = w.len() + f.degree() as usize;
        Ok((!out.is_homogeneous_of(want)).then(|| (out.to_string(), format!("homogeneous of degree {want}"))))
    })
}
