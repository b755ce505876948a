use super::{all_eq, law, poly_eq, random_root, random_word, Case, Env, Law, Outcome};
use crate::context::Context;
use crate::error::Result;
use crate::products::{diamond, diamond_oracle, harmonic};
use crate::words::{phi, psi, psi_inv, tau, words_upto, Letter, NCPoly, RootIndex, Word};

pub(super) fn laws() -> Vec<Law> {
    vec![
        law("phi_tau_involutions", "φ² = id, τ² = id, τ(vw) = τ(w)τ(v), φ(z_s) = z_s^δ", phi_tau),
        law("psi_bijectivity", "ψ_s⁻¹ψ_s = id = ψ_sψ_s⁻¹", psi_bijectivity),
        law("harmonic_comm_assoc", "∗ is commutative and associative", harmonic_comm_assoc),
        law("harmonic_lemma_i_ii", "z_{k,s} and z_{l,t} peel off either end of a harmonic product", harmonic_lemma),
        law("lem_xplusy", "vz ⋄_s w = v ⋄_s wz = (v ⋄_s w)z", lem_xplusy),
        law("lem6", "vx and vy against a z_t^δ tail", lem6),
        law("prop0", "v ⋄_s w = ψ_s(φ(v) ∗ ψ_s⁻¹(w))", prop0),
        law("lem1_mixed_assoc", "(u ⋄_1 v) ⋄_s w = u ⋄_s (v ⋄_s w)", lem1),
        law("lem_y", "y ⋄_s v z_t^δ w expands over the z_t^δ split", lem_y),
        law("prop_main3", "z_s^δ(vy ⋄_s w(z−z_t^δ)) = −τ(τ(v)y ⋄_t τ(w)(z−z_s^δ))(z−z_t^δ)", prop_main3),
        law("lem2_i", "vv' ⋄_s 1 = (v ⋄_s 1)(v' ⋄_s 1)", lem2_i),
        law("lem2_ii", "vy ⋄_s w(z−z_t^δ) = (vy ⋄_s w − v ⋄_s wz_t^δ)(y ⋄_t 1)", lem2_ii),
        law("lem2_iii", "yv ⋄_s zw = (y ⋄_s 1)(v ⋄_s zw) + z(yv ⋄_s w) − z(y ⋄_s 1)(v ⋄_s w)", lem2_iii),
        law("lem2_iv", "yv ⋄_s z_t^δ w = (y ⋄_s 1)(v ⋄_s z_t^δ w) + z_t^δ(yv ⋄_t w)", lem2_iv),
        law("lem2_v", "zv ⋄_s zw = z(v ⋄_s zw + zv ⋄_s w − z(v ⋄_s w))", lem2_v),
        law("lem2_vi", "zv ⋄_s z_t^δ w = z(v ⋄_s z_t^δ w) + z_t^δ(zv ⋄_t w) − z z_t^δ(v ⋄_t w)", lem2_vi),
        law("lem2_vii", "τ(v ⋄_s 1) = τ(v) ⋄_s 1", lem2_vii),
    ]
}

fn roots(r: u32) -> Vec<RootIndex> {
    RootIndex::all(r).collect()
}

fn z(r: u32) -> NCPoly {
    NCPoly::z(r)
}

fn zd(r: u32, s: RootIndex) -> NCPoly {
    NCPoly::z_delta(r, s)
}

fn y(r: u32) -> NCPoly {
    NCPoly::letter(r, Letter::Y)
}

/// Word pairs with total length at most `total`.
fn pairs(r1: u32, r2: u32, total: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for a in words_upto(r1, total) {
        for b in words_upto(r2, total - a.len()) {
            out.push((a.clone(), b));
        }
    }
    out
}

fn dm(ctx: &Context, s: RootIndex, v: &NCPoly, w: &NCPoly) -> Result<NCPoly> {
    diamond(ctx, s, v, w)
}

/// For each r: every root `s` (and `t` if `two_roots`) times every item.
fn with_roots<T>(
    env: &Env,
    two_roots: bool,
    items: impl Fn(u32) -> Vec<T>,
    build: impl Fn(u32, &[RootIndex], &T) -> Case,
) -> Vec<Case> {
    let mut out = Vec::new();
    for &r in &env.sweep.r_values {
        let items = items(r);
        for s in roots(r) {
            let ts = if two_roots { roots(r) } else { vec![s] };
            for t in ts {
                let rs: &[RootIndex] = if two_roots { &[s, t] } else { &[s] };
                for it in &items {
                    out.push(build(r, rs, it));
                }
            }
        }
    }
    out
}

/// Cases `(s[, t], v ∈ A_1, w ∈ A_r)` with `deg v ≤ dv`, `deg w ≤ dw`, plus samples one degree up.
fn left_right_cases(env: &Env, two_roots: bool, dv: usize, dw: usize) -> Vec<Case> {
    let mut cases = with_roots(
        env,
        two_roots,
        |r| {
            let vs = words_upto(1, dv);
            let ws = words_upto(r, dw);
            vs.iter().flat_map(|v| ws.iter().map(move |w| (v.clone(), w.clone()))).collect()
        },
        |r, rs, (v, w)| Case::new(r).roots(rs).left(std::slice::from_ref(v)).words(std::slice::from_ref(w)),
    );
    for &r in &env.sweep.r_values {
        cases.extend(env.samples(r, |rng| {
            let s = random_root(rng, r);
            let rs = if two_roots { vec![s, random_root(rng, r)] } else { vec![s] };
            Case::new(r).roots(&rs).left(&[random_word(rng, 1, dv + 1)]).words(&[random_word(rng, r, dw + 1)])
        }));
    }
    cases
}

fn phi_tau(env: &Env) -> Result<Outcome> {
    let d = env.d() + 2;
    let mut cases = Vec::new();
    for &r in &env.sweep.r_values {
        cases.extend(words_upto(r, d).into_iter().map(|w| Case::new(r).words(&[w])));
        cases.extend(pairs(r, r, env.d()).into_iter().map(|(a, b)| Case::new(r).words(&[a, b])));
        cases.extend(roots(r).into_iter().map(|s| Case::new(r).roots(&[s])));
    }
    env.check(cases, |c| {
        let r = c.r;
        Ok(match (c.words.len(), c.roots.first()) {
            (1, _) => {
                let w = c.wp(0);
                all_eq(&[(phi(&phi(&w)), w.clone()), (tau(&tau(&w)), w)])
            }
            (2, _) => poly_eq(&tau(&(&c.wp(0) * &c.wp(1))), &(&tau(&c.wp(1)) * &tau(&c.wp(0)))),
            (_, Some(&s)) => poly_eq(&phi(&NCPoly::z_s(r, s)), &zd(r, s)),
            _ => None,
        })
    })
}

fn psi_bijectivity(env: &Env) -> Result<Outcome> {
    let d = env.d() + 2;
    let cases = with_roots(env, false, |r| words_upto(r, d), |r, rs, w| Case::new(r).roots(rs).words(std::slice::from_ref(w)));
    env.check(cases, |c| {
        let (s, w) = (c.s(0), c.wp(0));
        Ok(all_eq(&[(psi_inv(s, &psi(s, &w)), w.clone()), (psi(s, &psi_inv(s, &w)), w)]))
    })
}

fn harmonic_comm_assoc(env: &Env) -> Result<Outcome> {
    let total = 2 * env.d();
    let mut cases = Vec::new();
    for &r in &env.sweep.r_values {
        for (a, rest) in pairs(r, r, total) {
            for b in words_upto(r, total - a.len() - rest.len()) {
                cases.push(Case::new(r).words(&[a.clone(), rest.clone(), b]));
            }
        }
        cases.extend(env.samples(r, |rng| {
            let ws: Vec<Word> = (0..3).map(|_| random_word(rng, r, total / 3 + 1)).collect();
            Case::new(r).words(&ws)
        }));
    }
    env.check(cases, |c| {
        let ctx = env.ctx(c.r)?;
        let (a, b, w) = (c.wp(0), c.wp(1), c.wp(2));
        let ab = harmonic(&ctx, &a, &b)?;
        Ok(all_eq(&[
            (ab.clone(), harmonic(&ctx, &b, &a)?),
            (harmonic(&ctx, &ab, &w)?, harmonic(&ctx, &a, &harmonic(&ctx, &b, &w)?)?),
        ]))
    })
}

fn harmonic_lemma(env: &Env) -> Result<Outcome> {
    let d = env.d();
    let kl: Vec<(u32, u32)> = (1..=3).flat_map(|k| (1..=3).map(move |l| (k, l))).collect();
    let mut cases = with_roots(
        env,
        true,
        |r| pairs(r, r, d).into_iter().flat_map(|p| kl.iter().map(move |&k| (p.clone(), k))).collect(),
        |r, rs, ((v, w), (k, l))| Case::new(r).roots(rs).ints(&[*k, *l]).words(&[v.clone(), w.clone()]),
    );
    for &r in &env.sweep.r_values {
        cases.extend(env.samples(r, |rng| {
            use rand::Rng;
            let ks = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
            let rs = [random_root(rng, r), random_root(rng, r)];
            Case::new(r).roots(&rs).ints(&ks).words(&[random_word(rng, r, d), random_word(rng, r, d)])
        }));
    }
    env.check(cases, |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let h = |a: &NCPoly, b: &NCPoly| harmonic(&ctx, a, b);
        let (s, t) = (c.s(0), c.s(1));
        let (k, l) = (c.ints[0], c.ints[1]);
        let zk = NCPoly::z_ks(r, k, s);
        let zl = NCPoly::z_ks(r, l, t);
        let zkl = NCPoly::z_ks(r, k + l, s * t);
        let (v, w) = (c.wp(0), c.wp(1));
        let lhs1 = h(&(&v * &zk), &(&w * &zl))?;
        let rhs1 = &(&(&h(&v, &(&w * &zl))? * &zk) + &(&h(&(&v * &zk), &w)? * &zl)) + &(&h(&v, &w)? * &zkl);
        let lhs2 = h(&(&zk * &v), &(&zl * &w))?;
        let rhs2 = &(&(&zk * &h(&v, &(&zl * &w))?) + &(&zl * &h(&(&zk * &v), &w)?)) + &(&zkl * &h(&v, &w)?);
        Ok(all_eq(&[(lhs1, rhs1), (lhs2, rhs2)]))
    })
}

fn lem_xplusy(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, false, env.d() + 1, env.d()), |c| {
        let ctx = env.ctx(c.r)?;
        let (s, v, w) = (c.s(0), c.lp(0), c.wp(0));
        let a = dm(&ctx, s, &(&v * &z(1)), &w)?;
        let b = dm(&ctx, s, &v, &(&w * &z(c.r)))?;
        let cc = &dm(&ctx, s, &v, &w)? * &z(c.r);
        Ok(all_eq(&[(a.clone(), b), (a, cc)]))
    })
}

fn lem6(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, true, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, t, v, w) = (c.s(0), c.s(1), c.lp(0), c.wp(0));
        let x1 = NCPoly::x(1);
        let zt = zd(r, t);
        let wzt = &w * &zt;
        let lhs_i = dm(&ctx, s, &(&v * &x1), &wzt)?;
        let rhs_i = &(&dm(&ctx, s, &v, &wzt)? * &zt) - &(&dm(&ctx, s, &(&v * &y(1)), &w)? * &zt);
        let lhs_ii = dm(&ctx, s, &(&v * &y(1)), &wzt)?;
        let y_one = dm(&ctx, t, &y(1), &NCPoly::one(r))?;
        let rhs_ii = &(&dm(&ctx, s, &v, &wzt)? * &y_one) + &(&dm(&ctx, s, &(&v * &y(1)), &w)? * &zt);
        Ok(all_eq(&[(lhs_i, rhs_i), (lhs_ii, rhs_ii)]))
    })
}

fn prop0(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, false, env.d() + 1, env.d()), |c| {
        let ctx = env.ctx(c.r)?;
        let (s, v, w) = (c.s(0), c.lp(0), c.wp(0));
        Ok(poly_eq(&diamond(&ctx, s, &v, &w)?, &diamond_oracle(&ctx, s, &v, &w)?))
    })
}

fn lem1(env: &Env) -> Result<Outcome> {
    let d = env.d();
    let mut cases = with_roots(
        env,
        false,
        |r| {
            let ws = words_upto(r, d);
            pairs(1, 1, d + 1).into_iter().flat_map(|p| ws.iter().map(move |w| (p.clone(), w.clone()))).collect()
        },
        |r, rs, ((u, v), w)| Case::new(r).roots(rs).left(&[u.clone(), v.clone()]).words(std::slice::from_ref(w)),
    );
    for &r in &env.sweep.r_values {
        cases.extend(env.samples(r, |rng| {
            let left = [random_word(rng, 1, d / 2 + 1), random_word(rng, 1, d / 2 + 1)];
            Case::new(r).roots(&[random_root(rng, r)]).left(&left).words(&[random_word(rng, r, d + 1)])
        }));
    }
    env.check(cases, |c| {
        let ctx = env.ctx(c.r)?;
        let base = env.base()?;
        let (s, u, v, w) = (c.s(0), c.lp(0), c.lp(1), c.wp(0));
        let lhs = dm(&ctx, s, &dm(&base, RootIndex::one(1), &u, &v)?, &w)?;
        let rhs = dm(&ctx, s, &u, &dm(&ctx, s, &v, &w)?)?;
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem_y(env: &Env) -> Result<Outcome> {
    let d = env.d();
    let mut cases = with_roots(
        env,
        true,
        |r| pairs(r, r, d),
        |r, rs, (v, w)| Case::new(r).roots(rs).words(&[v.clone(), w.clone()]),
    );
    for &r in &env.sweep.r_values {
        cases.extend(env.samples(r, |rng| {
            let rs = [random_root(rng, r), random_root(rng, r)];
            Case::new(r).roots(&rs).words(&[random_word(rng, r, d / 2 + 1), random_word(rng, r, d / 2 + 1)])
        }));
    }
    env.check(cases, |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, t, v, w) = (c.s(0), c.s(1), c.wp(0), c.wp(1));
        let zt = zd(r, t);
        let vzt = &v * &zt;
        let y1 = y(1);
        let lhs = dm(&ctx, s, &y1, &(&vzt * &w))?;
        let rhs = &(&(&(&dm(&ctx, s, &y1, &v)? * &zt) * &w) + &(&vzt * &dm(&ctx, s, &y1, &w)?))
            + &(&(&vzt * &(&zd(r, s) - &zt)) * &w);
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn prop_main3(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, true, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, t, v, w) = (c.s(0), c.s(1), c.lp(0), c.wp(0));
        let u_s = &z(r) - &zd(r, s);
        let u_t = &z(r) - &zd(r, t);
        let lhs = &zd(r, s) * &dm(&ctx, s, &(&v * &y(1)), &(&w * &u_t))?;
        let inner = dm(&ctx, t, &(&tau(&v) * &y(1)), &(&tau(&w) * &u_s))?;
        let rhs = -&(&tau(&inner) * &u_t);
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem2_i(env: &Env) -> Result<Outcome> {
    let d = env.d() + 1;
    let cases = with_roots(
        env,
        false,
        |_| pairs(1, 1, d),
        |r, rs, (v, v2)| Case::new(r).roots(rs).left(&[v.clone(), v2.clone()]),
    );
    env.check(cases, |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let one = NCPoly::one(r);
        let s = c.s(0);
        let lhs = dm(&ctx, s, &(&c.lp(0) * &c.lp(1)), &one)?;
        let rhs = &dm(&ctx, s, &c.lp(0), &one)? * &dm(&ctx, s, &c.lp(1), &one)?;
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem2_ii(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, true, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, t, v, w) = (c.s(0), c.s(1), c.lp(0), c.wp(0));
        let vy = &v * &y(1);
        let lhs = dm(&ctx, s, &vy, &(&w * &(&z(r) - &zd(r, t))))?;
        let y_one = dm(&ctx, t, &y(1), &NCPoly::one(r))?;
        let rhs = &(&dm(&ctx, s, &vy, &w)? - &dm(&ctx, s, &v, &(&w * &zd(r, t)))?) * &y_one;
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem2_iii(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, false, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, v, w) = (c.s(0), c.lp(0), c.wp(0));
        let yv = &y(1) * &v;
        let zw = &z(r) * &w;
        let y_one = dm(&ctx, s, &y(1), &NCPoly::one(r))?;
        let lhs = dm(&ctx, s, &yv, &zw)?;
        let rhs = &(&(&y_one * &dm(&ctx, s, &v, &zw)?) + &(&z(r) * &dm(&ctx, s, &yv, &w)?))
            - &(&(&z(r) * &y_one) * &dm(&ctx, s, &v, &w)?);
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem2_iv(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, true, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, t, v, w) = (c.s(0), c.s(1), c.lp(0), c.wp(0));
        let yv = &y(1) * &v;
        let ztw = &zd(r, t) * &w;
        let y_one = dm(&ctx, s, &y(1), &NCPoly::one(r))?;
        let lhs = dm(&ctx, s, &yv, &ztw)?;
        let rhs = &(&y_one * &dm(&ctx, s, &v, &ztw)?) + &(&zd(r, t) * &dm(&ctx, t, &yv, &w)?);
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem2_v(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, false, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, v, w) = (c.s(0), c.lp(0), c.wp(0));
        let zv = &z(1) * &v;
        let zw = &z(r) * &w;
        let lhs = dm(&ctx, s, &zv, &zw)?;
        let inner = &(&dm(&ctx, s, &v, &zw)? + &dm(&ctx, s, &zv, &w)?) - &(&z(r) * &dm(&ctx, s, &v, &w)?);
        Ok(poly_eq(&lhs, &(&z(r) * &inner)))
    })
}

fn lem2_vi(env: &Env) -> Result<Outcome> {
    env.check(left_right_cases(env, true, env.d(), env.d()), |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, t, v, w) = (c.s(0), c.s(1), c.lp(0), c.wp(0));
        let zv = &z(1) * &v;
        let zt = zd(r, t);
        let ztw = &zt * &w;
        let lhs = dm(&ctx, s, &zv, &ztw)?;
        let rhs = &(&(&z(r) * &dm(&ctx, s, &v, &ztw)?) + &(&zt * &dm(&ctx, t, &zv, &w)?))
            - &(&(&z(r) * &zt) * &dm(&ctx, t, &v, &w)?);
        Ok(poly_eq(&lhs, &rhs))
    })
}

fn lem2_vii(env: &Env) -> Result<Outcome> {
    let d = env.d() + 1;
    let cases = with_roots(env, false, |_| words_upto(1, d), |r, rs, v| Case::new(r).roots(rs).left(std::slice::from_ref(v)));
    env.check(cases, |c| {
        let r = c.r;
        let ctx = env.ctx(r)?;
        let (s, v) = (c.s(0), c.lp(0));
        let one = NCPoly::one(r);
        Ok(poly_eq(&tau(&dm(&ctx, s, &v, &one)?), &dm(&ctx, s, &tau(&v), &one)?))
    })
}
