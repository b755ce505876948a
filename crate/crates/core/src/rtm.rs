//! Rooted tree maps, the polynomials `F_f` and `G_f`, and generation of
//! linear relations among multiple L-values.
//!
//! A tree map is computed on the letter basis `{z} ∪ {z_s^δ}`:
//!
//! * `•̃(z_s^δ) = z_s^δ (z − z_s^δ)` and `t̃(z) = 0` for every tree `t`;
//! * `B₊(f)~(z_s^δ) = R_{z−z_s^δ} R_{2z−z_s^δ} R⁻¹_{z−z_s^δ} f̃(z_s^δ)`;
//! * `(gh)~ = g̃ ∘ h̃` on letters;
//! * `f̃(wv) = Σ f′~(w) f″~(v)` over the coproduct, for a letter `v`.
//!
//! Words are rewritten letter by letter through `x = z_1^δ`,
//! `y = z − z_1^δ` and `y_s = z_s^δ − z_1^δ`, and `f̃(1) = ε(f)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::{memoized, BasisLetter, Context};
use crate::error::{Error, Result};
use crate::hopf::{enumerate_forests, forest_coproduct, Forest, ForestSum, Tree};
use crate::products::diamond;
use crate::rational::Rational;
use crate::words::{right_divide, tau, word_to_index, words_of_length, Letter, NCPoly, RootIndex, Word};

fn basis_poly(r: u32, b: BasisLetter) -> NCPoly {
    match b {
        BasisLetter::Z => NCPoly::z(r),
        BasisLetter::ZDelta(j) => NCPoly::z_delta(r, RootIndex::new(j, r)),
    }
}

/// A letter as a combination of basis letters.
fn letter_in_basis(l: Letter) -> Vec<(BasisLetter, i64)> {
    match l.twist() {
        None => vec![(BasisLetter::ZDelta(0), 1)],
        Some(0) => vec![(BasisLetter::Z, 1), (BasisLetter::ZDelta(0), -1)],
        Some(j) => vec![(BasisLetter::ZDelta(j), 1), (BasisLetter::ZDelta(0), -1)],
    }
}

fn tree_on_letter(ctx: &Context, t: &Tree, b: BasisLetter) -> Result<NCPoly> {
    let r = ctx.modulus();
    let j = match b {
        BasisLetter::Z => return Ok(NCPoly::zero(r)),
        BasisLetter::ZDelta(j) => j,
    };
    let zd = basis_poly(r, b);
    let u = &NCPoly::z(r) - &zd;
    if t.degree() == 1 {
        return Ok(&zd * &u);
    }
    let inner = forest_on_letter(ctx, &t.branches(), BasisLetter::ZDelta(j))?;
    let q = right_divide(&inner, &u)?;
    let two_z_minus = &NCPoly::z(r).scale_int(2) - &zd;
    Ok(&(&q * &two_z_minus) * &u)
}

/// `f̃` on a basis letter.
pub fn forest_on_letter(ctx: &Context, f: &Forest, b: BasisLetter) -> Result<NCPoly> {
    if f.is_unit() {
        return Ok(basis_poly(ctx.modulus(), b));
    }
    memoized(&ctx.rtm_letter_memo, (f.clone(), b), || match f.as_tree() {
        Some(t) => tree_on_letter(ctx, t, b),
        None => {
            let (first, rest) = f.split_first().expect("nonempty forest");
            let inner = forest_on_letter(ctx, &rest, b)?;
            apply_forest(ctx, &Forest::tree(first), &inner)
        }
    })
}

/// `f̃` on a single letter of the word alphabet.
fn forest_on_alphabet_letter(ctx: &Context, f: &Forest, l: Letter) -> Result<NCPoly> {
    if f.is_unit() {
        return Ok(NCPoly::letter(ctx.modulus(), l));
    }
    let mut out = NCPoly::zero(ctx.modulus());
    for (b, c) in letter_in_basis(l) {
        out.add_scaled(&forest_on_letter(ctx, f, b)?, &c.into());
    }
    Ok(out)
}

/// `f̃` on a single word.
pub fn forest_on_word(ctx: &Context, f: &Forest, w: &Word) -> Result<NCPoly> {
    let r = ctx.modulus();
    if f.is_unit() {
        return Ok(NCPoly::word(r, w.clone()));
    }
    let Some((init, last)) = w.split_last() else {
        return Ok(NCPoly::zero(r));
    };
    memoized(&ctx.rtm_word_memo, (f.clone(), w.clone()), || {
        let mut out = NCPoly::zero(r);
        for ((left, right), c) in forest_coproduct(f).iter() {
            let head = forest_on_word(ctx, left, &init)?;
            if head.is_zero() {
                continue;
            }
            let tail = forest_on_alphabet_letter(ctx, right, last)?;
            out.add_scaled(&(&head * &tail), c);
        }
        Ok(out)
    })
}

fn apply_forest(ctx: &Context, f: &Forest, p: &NCPoly) -> Result<NCPoly> {
    p.try_map_words(ctx.modulus(), |w| forest_on_word(ctx, f, w))
}

/// `f̃(p)`, linear in both arguments.
pub fn apply_rtm(ctx: &Context, f: &ForestSum, p: &NCPoly) -> Result<NCPoly> {
    ctx.check(p)?;
    let mut out = NCPoly::zero(ctx.modulus());
    for (forest, c) in f.iter() {
        out.add_scaled(&apply_forest(ctx, forest, p)?, c);
    }
    Ok(out)
}

/// `τ f̃ τ (p)`.
pub fn apply_tau_conjugate(ctx: &Context, f: &ForestSum, p: &NCPoly) -> Result<NCPoly> {
    Ok(tau(&apply_rtm(ctx, f, &tau(p))?))
}

fn y1() -> NCPoly {
    NCPoly::letter(1, Letter::Y)
}

/// `R = R_y R_{x+2y} R_y⁻¹`.
pub fn r_operator(p: &NCPoly) -> Result<NCPoly> {
    let x_2y = &NCPoly::x(1) + &y1().scale_int(2);
    Ok(&(&right_divide(p, &y1())? * &x_2y) * &y1())
}

fn f_forest(base: &Context, f: &Forest) -> Result<NCPoly> {
    if f.is_unit() {
        return Ok(NCPoly::one(1));
    }
    memoized(&base.f_memo, f.clone(), || match f.as_tree() {
        Some(t) if t.degree() == 1 => Ok(y1()),
        Some(t) => r_operator(&f_forest(base, &t.branches())?),
        None => {
            let (first, rest) = f.split_first().expect("nonempty forest");
            let a = f_forest(base, &Forest::tree(first))?;
            let b = f_forest(base, &rest)?;
            diamond(base, RootIndex::one(1), &a, &b)
        }
    })
}

fn g_forest(base: &Context, f: &Forest) -> Result<NCPoly> {
    if f.is_unit() {
        return Ok(NCPoly::one(1));
    }
    memoized(&base.g_memo, f.clone(), || match f.as_tree() {
        Some(t) if t.degree() == 1 => Ok(-&y1()),
        Some(t) => {
            let two_x_y = &NCPoly::x(1).scale_int(2) + &y1();
            Ok(&two_x_y * &g_forest(base, &t.branches())?)
        }
        None => {
            let (first, rest) = f.split_first().expect("nonempty forest");
            let a = g_forest(base, &Forest::tree(first))?;
            let b = g_forest(base, &rest)?;
            diamond(base, RootIndex::one(1), &a, &b)
        }
    })
}

/// `F_f`, the modulus-1 polynomial with `f̃(z_s^δ w) = z_s^δ (F_f ⋄_s w)`.
pub fn f_poly(ctx: &Context, f: &ForestSum) -> Result<NCPoly> {
    let base = ctx.base();
    let mut out = NCPoly::zero(1);
    for (forest, c) in f.iter() {
        out.add_scaled(&f_forest(base, forest)?, c);
    }
    Ok(out)
}

/// `G_f`, the modulus-1 polynomial describing the tree map of the antipode.
pub fn g_poly(ctx: &Context, f: &ForestSum) -> Result<NCPoly> {
    let base = ctx.base();
    let mut out = NCPoly::zero(1);
    for (forest, c) in f.iter() {
        out.add_scaled(&g_forest(base, forest)?, c);
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Direct,
    TauConjugate,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "direct" => Ok(Variant::Direct),
            "tau" | "tau_conjugate" | "tau-conjugate" => Ok(Variant::TauConjugate),
            other => Err(Error::InvalidArgument(format!("unknown variant {other}"))),
        }
    }
}

/// `f̃(w)` (or `τ f̃ τ(w)`) for one forest and one admissible word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub r: u32,
    pub forest: Forest,
    pub input_word: Word,
    pub poly: NCPoly,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationTerm {
    pub k: Vec<u32>,
    pub j: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationJson {
    pub r: u32,
    pub forest: String,
    pub input_word: String,
    pub relation: Vec<RelationTerm>,
}

impl Relation {
    /// Index-form terms, largest word first.
    pub fn terms(&self) -> Vec<RelationTerm> {
        self.poly
            .iter()
            .rev()
            .map(|(w, c)| {
                let ix = word_to_index(w, self.r).expect("relation terms are admissible");
                RelationTerm { k: ix.k.clone(), j: ix.j(), coeff: c.to_fraction_string() }
            })
            .collect()
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson {
            r: self.r,
            forest: self.forest.to_string(),
            input_word: self.input_word.to_string(),
            relation: self.terms(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.forest, self.input_word, self.poly)
    }
}

/// One relation per (forest of degree `d`, admissible word of weight `wt`).
///
/// Every output term is checked to be admissible.
pub fn generate_relations(ctx: &Context, d: u32, wt: usize, variant: Variant) -> Result<Vec<Relation>> {
    if d == 0 || wt == 0 {
        return Err(Error::InvalidArgument("forest degree and weight must be positive".into()));
    }
    let r = ctx.modulus();
    let words: Vec<Word> = words_of_length(r, wt).into_iter().filter(Word::is_admissible).collect();
    let mut out = Vec::new();
    for forest in enumerate_forests(d) {
        let f = ForestSum::basis(forest.clone());
        for w in &words {
            let p = NCPoly::word(r, w.clone());
            let poly = match variant {
                Variant::Direct => apply_rtm(ctx, &f, &p)?,
                Variant::TauConjugate => apply_tau_conjugate(ctx, &f, &p)?,
            };
            if let Some((bad, _)) = poly.iter().find(|(t, _)| !t.is_admissible()) {
                return Err(Error::NonAdmissibleOutput {
                    forest: forest.to_string(),
                    word: w.to_string(),
                    term: bad.to_string(),
                });
            }
            out.push(Relation { r, forest: forest.clone(), input_word: w.clone(), poly });
        }
    }
    Ok(out)
}

/// Convenience for `Rational` literals in callers.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}
