//! The noncommutative algebra over the letters `x` and `y_s` (`s` an r-th
//! root of unity), with the morphisms and coding maps used by the rest of
//! the crate.
//!
//! Roots of unity are residues `j` mod `r` standing for `exp(2πij/r)`;
//! `y0` is the untwisted letter `y`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::lincomb::{merge_pairs, push_scaled, LinComb};
use crate::rational::Rational;

pub const MAX_MODULUS: u32 = 255;

/// An r-th root of unity `exp(2πij/r)`, stored as the residue `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootIndex {
    j: u32,
    r: u32,
}

impl RootIndex {
    pub fn new(j: u32, r: u32) -> RootIndex {
        assert!((1..=MAX_MODULUS).contains(&r), "modulus {r} out of range");
        RootIndex { j: j % r, r }
    }

    pub fn one(r: u32) -> RootIndex {
        RootIndex::new(0, r)
    }

    pub fn all(r: u32) -> impl Iterator<Item = RootIndex> {
        (0..r).map(move |j| RootIndex::new(j, r))
    }

    pub fn j(self) -> u32 {
        self.j
    }

    pub fn modulus(self) -> u32 {
        self.r
    }

    pub fn is_one(self) -> bool {
        self.j == 0
    }

    /// 0 at the identity, 1 elsewhere.
    pub fn delta(self) -> i64 {
        i64::from(!self.is_one())
    }

    pub fn inv(self) -> RootIndex {
        RootIndex::new(self.r - self.j, self.r)
    }
}

impl Mul for RootIndex {
    type Output = RootIndex;
    fn mul(self, other: RootIndex) -> RootIndex {
        debug_assert_eq!(self.r, other.r);
        RootIndex::new(self.j + other.j, self.r)
    }
}

impl Div for RootIndex {
    type Output = RootIndex;
    fn div(self, other: RootIndex) -> RootIndex {
        debug_assert_eq!(self.r, other.r);
        RootIndex::new(self.j + other.inv().j, self.r)
    }
}

/// A letter `x` or `y_j`.
///
/// The byte encoding realizes the letter order `y0 ≻ y1 ≻ y2 ≻ … ≻ x`:
/// `x` is 0 and `y_j` is `255 - j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub const X: Letter = Letter(0);
    /// The untwisted `y`.
    pub const Y: Letter = Letter(255);

    pub fn y(j: u32) -> Letter {
        assert!(j < MAX_MODULUS);
        Letter(255 - j as u8)
    }

    pub fn is_x(self) -> bool {
        self.0 == 0
    }

    /// Twist exponent of a `y` letter.
    pub fn twist(self) -> Option<u32> {
        (!self.is_x()).then(|| 255 - u32::from(self.0))
    }

    pub fn twist_root(self, r: u32) -> Option<RootIndex> {
        self.twist().map(|j| RootIndex::new(j, r))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist() {
            None => f.write_str("x"),
            Some(j) => write!(f, "y{j}"),
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word; ordered by length and then lexicographically in the letter order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Letter; 14]>);

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// Splits off the final letter.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        let (&last, init) = self.0.split_last()?;
        Some((Word::from_letters(init), last))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn with(&self, l: Letter) -> Word {
        let mut out = self.clone();
        out.push(l);
        out
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word::from_letters(&self.0[..len])
    }

    /// Empty or ending with a `y` letter.
    pub fn in_a1(&self) -> bool {
        self.last().is_none_or(|l| !l.is_x())
    }

    /// Nonempty, ends with some `y_s`, and starts with `x` or a twisted `y_t`.
    pub fn is_admissible(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(first), Some(last)) => !last.is_x() && first != Letter::Y,
            _ => false,
        }
    }

    /// Unique factorization `z_{k1,s1} ⋯ z_{kl,sl} x^a`.
    pub fn z_decompose(&self) -> (Vec<(u32, u32)>, u32) {
        let mut blocks = Vec::new();
        let mut xs = 0;
        for l in &self.0 {
            match l.twist() {
                None => xs += 1,
                Some(j) => {
                    blocks.push((xs + 1, j));
                    xs = 0;
                }
            }
        }
        (blocks, xs)
    }

    pub fn z_compose(blocks: &[(u32, u32)], trailing_x: u32) -> Word {
        let mut out = Word::empty();
        for &(k, j) in blocks {
            for _ in 1..k {
                out.push(Letter::X);
            }
            out.push(Letter::y(j));
        }
        for _ in 0..trailing_x {
            out.push(Letter::X);
        }
        out
    }

    /// Largest twist exponent used, if any.
    pub fn max_twist(&self) -> Option<u32> {
        self.0.iter().filter_map(|l| l.twist()).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

/// All words of exactly length `n` over the alphabet for modulus `r`, ascending.
pub fn words_of_length(r: u32, n: usize) -> Vec<Word> {
    let mut alphabet: Vec<Letter> = std::iter::once(Letter::X).chain((0..r).map(Letter::y)).collect();
    alphabet.sort();
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out.iter().flat_map(|w| alphabet.iter().map(move |&l| w.with(l))).collect();
    }
    out
}

/// All words of length `0..=n`, ascending.
pub fn words_upto(r: u32, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|k| words_of_length(r, k)).collect()
}

/// A noncommutative polynomial with rational coefficients and a fixed modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    r: u32,
    terms: LinComb<Word>,
}

fn check_modulus(r: u32) -> Result<()> {
    if (1..=MAX_MODULUS).contains(&r) {
        Ok(())
    } else {
        Err(Error::BadModulus(r))
    }
}

impl NCPoly {
    pub fn zero(r: u32) -> NCPoly {
        assert!(check_modulus(r).is_ok(), "modulus {r} out of range");
        NCPoly { r, terms: LinComb::zero() }
    }

    pub fn one(r: u32) -> NCPoly {
        NCPoly::word(r, Word::empty())
    }

    pub fn word(r: u32, w: Word) -> NCPoly {
        let mut p = NCPoly::zero(r);
        p.terms.add_term(w, Rational::from_integer(1));
        p
    }

    pub fn letter(r: u32, l: Letter) -> NCPoly {
        NCPoly::word(r, Word::from_letters(&[l]))
    }

    pub fn x(r: u32) -> NCPoly {
        NCPoly::letter(r, Letter::X)
    }

    pub fn y(r: u32, s: RootIndex) -> NCPoly {
        NCPoly::letter(r, Letter::y(s.j()))
    }

    /// `z = x + y`.
    pub fn z(r: u32) -> NCPoly {
        &NCPoly::x(r) + &NCPoly::letter(r, Letter::Y)
    }

    /// `z_s = x + y_s`.
    pub fn z_s(r: u32, s: RootIndex) -> NCPoly {
        &NCPoly::x(r) + &NCPoly::y(r, s)
    }

    /// `z_s^δ = x + δ(s) y_s`.
    pub fn z_delta(r: u32, s: RootIndex) -> NCPoly {
        if s.is_one() {
            NCPoly::x(r)
        } else {
            NCPoly::z_s(r, s)
        }
    }

    /// `z_{k,s} = x^{k-1} y_s`.
    pub fn z_ks(r: u32, k: u32, s: RootIndex) -> NCPoly {
        NCPoly::word(r, Word::z_compose(&[(k, s.j())], 0))
    }

    pub fn from_terms(r: u32, terms: impl IntoIterator<Item = (Word, Rational)>) -> NCPoly {
        NCPoly { r, terms: terms.into_iter().collect() }
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.coeff(w)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        debug_assert!(w.max_twist().is_none_or(|j| j < self.r), "letter outside modulus {}", self.r);
        self.terms.add_term(w, c);
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &NCPoly, c: &Rational) {
        self.assert_same(other);
        self.terms.add_scaled(&other.terms, c);
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        NCPoly { r: self.r, terms: self.terms.scale(c) }
    }

    pub fn scale_int(&self, c: i64) -> NCPoly {
        self.scale(&Rational::from_integer(c))
    }

    pub fn try_same_modulus(&self, other: &NCPoly) -> Result<()> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.r, other.r))
        }
    }

    fn assert_same(&self, other: &NCPoly) {
        if let Err(e) = self.try_same_modulus(other) {
            panic!("{e}");
        }
    }

    /// Reinterprets a modulus-1 polynomial inside the algebra for modulus `r`.
    pub fn embed(&self, r: u32) -> Result<NCPoly> {
        check_modulus(r)?;
        if self.r == r {
            return Ok(self.clone());
        }
        if self.r != 1 {
            return Err(Error::ModulusMismatch(self.r, 1));
        }
        Ok(NCPoly { r, terms: self.terms.clone() })
    }

    /// Restricts to modulus 1; every letter must be `x` or `y0`.
    pub fn restrict_to_one(&self) -> Result<NCPoly> {
        if self.r == 1 {
            return Ok(self.clone());
        }
        if self.terms.keys().any(|w| w.max_twist().is_some_and(|j| j > 0)) {
            return Err(Error::ModulusMismatch(self.r, 1));
        }
        Ok(NCPoly { r: 1, terms: self.terms.clone() })
    }

    /// Applies a linear map given on words.
    pub fn map_words(&self, r: u32, mut f: impl FnMut(&Word) -> NCPoly) -> NCPoly {
        NCPoly { r, terms: self.terms.map_linear(|w| f(w).terms) }
    }

    pub fn try_map_words(&self, r: u32, mut f: impl FnMut(&Word) -> Result<NCPoly>) -> Result<NCPoly> {
        let mut pairs = Vec::new();
        for (w, c) in self.iter() {
            push_scaled(&mut pairs, f(w)?.terms, c);
        }
        Ok(NCPoly { r, terms: LinComb::from_pairs(pairs) })
    }

    /// Right multiplication by a single letter.
    pub fn mul_letter(&self, l: Letter) -> NCPoly {
        NCPoly::from_terms(self.r, self.iter().map(|(w, c)| (w.with(l), c.clone())))
    }

    /// Left multiplication by a word.
    pub fn lmul_word(&self, u: &Word) -> NCPoly {
        NCPoly::from_terms(self.r, self.iter().map(|(w, c)| (u.concat(w), c.clone())))
    }

    /// Right multiplication by a word.
    pub fn rmul_word(&self, u: &Word) -> NCPoly {
        NCPoly::from_terms(self.r, self.iter().map(|(w, c)| (w.concat(u), c.clone())))
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        (0..n).fold(NCPoly::one(self.r), |acc, _| &acc * self)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|w| w.len() == d)
    }

    /// Every word is empty or ends with a `y` letter.
    pub fn in_a1(&self) -> bool {
        self.terms.keys().all(Word::in_a1)
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(Word::is_admissible)
    }

    /// Largest word in the term order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.try_same_modulus(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.try_same_modulus(other)?;
        Ok(self * other)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.assert_same(rhs);
        NCPoly { r: self.r, terms: &self.terms + &rhs.terms }
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.assert_same(rhs);
        NCPoly { r: self.r, terms: &self.terms - &rhs.terms }
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly { r: self.r, terms: -&self.terms }
    }
}

/// Concatenation product.
impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.assert_same(rhs);
        NCPoly { r: self.r, terms: self.terms.bilinear(&rhs.terms, |a, b| LinComb::basis(a.concat(b))) }
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl fmt::Display for NCPoly {
    /// Terms from the largest word down, e.g. `x y0 y0 - x x y0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let one = Rational::from_integer(1);
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == one {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[r={}]({self})", self.r)
    }
}

/// The structure-preserving maps on the word algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Morphism {
    /// Automorphism `x ↦ x + y`, `y_s ↦ δ(s) y_s − y`; an involution.
    Phi,
    /// Anti-automorphism `x ↔ y`, `y_s ↦ −y_s` for `s ≠ 1`; an involution.
    Tau,
    /// Twists become running products `s1, s1 s2, …`.
    I,
    IInv,
    /// Multiplies the first twist by `s`.
    M(RootIndex),
    /// `φ ∘ 𝓘 ∘ M_s`.
    Psi(RootIndex),
    /// `M_{1/s} ∘ 𝓘⁻¹ ∘ φ`.
    PsiInv(RootIndex),
}

/// Images of a letter under φ as signed letters.
fn phi_letter(l: Letter) -> SmallVec<[(Letter, i64); 2]> {
    match l.twist() {
        None => smallvec![(Letter::X, 1), (Letter::Y, 1)],
        Some(0) => smallvec![(Letter::Y, -1)],
        Some(_) => smallvec![(l, 1), (Letter::Y, -1)],
    }
}

/// The letter images are distinct, so the expanded words never collide.
pub fn phi_word(r: u32, w: &Word) -> NCPoly {
    let mut expanded = vec![(Word::empty(), 1i64)];
    for &l in w.letters() {
        let images = phi_letter(l);
        expanded = expanded.iter().flat_map(|(u, c)| images.iter().map(move |&(m, e)| (u.with(m), c * e))).collect();
    }
    NCPoly::from_terms(r, expanded.into_iter().map(|(u, c)| (u, Rational::from_integer(c))))
}

/// Expands one letter position at a time from the right and merges equal
/// states after each step, so inputs sharing prefixes are combined early.
pub fn phi(p: &NCPoly) -> NCPoly {
    let Some(longest) = p.max_degree() else {
        return p.clone();
    };
    // (unconsumed prefix, image of the consumed suffix, coefficient)
    let mut states: Vec<((Word, Word), Rational)> =
        p.iter().map(|(w, c)| ((w.clone(), Word::empty()), c.clone())).collect();
    for _ in 0..longest {
        let mut next = Vec::with_capacity(states.len() * 2);
        for ((rest, done), c) in states {
            let Some((head, last)) = rest.split_last() else {
                next.push(((rest, done), c));
                continue;
            };
            for (m, e) in phi_letter(last) {
                let c = if e == 1 { c.clone() } else { -&c };
                let mut image = Word::from_letters(&[m]);
                image.extend(&done);
                next.push(((head.clone(), image), c));
            }
        }
        states = merge_pairs(next);
    }
    NCPoly::from_terms(p.r, states.into_iter().map(|((_, done), c)| (done, c)))
}

pub fn tau_word(r: u32, w: &Word) -> NCPoly {
    let mut out = Word::empty();
    let mut sign = 1;
    for &l in w.letters().iter().rev() {
        match l.twist() {
            None => out.push(Letter::Y),
            Some(0) => out.push(Letter::X),
            Some(_) => {
                out.push(l);
                sign = -sign;
            }
        }
    }
    NCPoly::word(r, out).scale_int(sign)
}

pub fn tau(p: &NCPoly) -> NCPoly {
    p.map_words(p.r, |w| tau_word(p.r, w))
}

fn retwist(w: &Word, r: u32, f: impl Fn(&[(u32, u32)]) -> Vec<(u32, u32)>) -> Word {
    let (blocks, a) = w.z_decompose();
    let blocks: Vec<(u32, u32)> = f(&blocks).into_iter().map(|(k, j)| (k, j % r)).collect();
    Word::z_compose(&blocks, a)
}

pub fn iota_word(r: u32, w: &Word) -> Word {
    retwist(w, r, |blocks| {
        let mut acc = 0;
        blocks
            .iter()
            .map(|&(k, j)| {
                acc = (acc + j) % r;
                (k, acc)
            })
            .collect()
    })
}

pub fn iota_inv_word(r: u32, w: &Word) -> Word {
    retwist(w, r, |blocks| {
        let mut prev = 0;
        blocks
            .iter()
            .map(|&(k, j)| {
                let out = (j + r - prev) % r;
                prev = j;
                (k, out)
            })
            .collect()
    })
}

pub fn m_word(s: RootIndex, w: &Word) -> Word {
    retwist(w, s.modulus(), |blocks| {
        let mut out = blocks.to_vec();
        if let Some(first) = out.first_mut() {
            first.1 += s.j();
        }
        out
    })
}

fn map_single(p: &NCPoly, f: impl Fn(&Word) -> Word) -> NCPoly {
    NCPoly::from_terms(p.r, p.iter().map(|(w, c)| (f(w), c.clone())))
}

pub fn psi(s: RootIndex, p: &NCPoly) -> NCPoly {
    let r = p.r;
    phi(&map_single(p, |w| iota_word(r, &m_word(s, w))))
}

pub fn psi_inv(s: RootIndex, p: &NCPoly) -> NCPoly {
    let r = p.r;
    map_single(&phi(p), |w| m_word(s.inv(), &iota_inv_word(r, w)))
}

pub fn apply_morphism(kind: Morphism, p: &NCPoly) -> Result<NCPoly> {
    if let Morphism::M(s) | Morphism::Psi(s) | Morphism::PsiInv(s) = kind {
        if s.modulus() != p.r {
            return Err(Error::ModulusMismatch(s.modulus(), p.r));
        }
    }
    let r = p.r;
    Ok(match kind {
        Morphism::Phi => phi(p),
        Morphism::Tau => tau(p),
        Morphism::I => map_single(p, |w| iota_word(r, w)),
        Morphism::IInv => map_single(p, |w| iota_inv_word(r, w)),
        Morphism::M(s) => map_single(p, |w| m_word(s, w)),
        Morphism::Psi(s) => psi(s, p),
        Morphism::PsiInv(s) => psi_inv(s, p),
    })
}

/// Exact right division: returns `q` with `q * u == p`.
///
/// Repeatedly cancels the largest remaining word against the leading word
/// of `u`. The word order is a monomial order, so `lead(q u) = lead(q)
/// lead(u)` and the elimination finds the quotient whenever one exists.
pub fn right_divide(p: &NCPoly, u: &NCPoly) -> Result<NCPoly> {
    p.try_same_modulus(u)?;
    let (lead_word, lead_coeff) = match u.leading() {
        Some((w, c)) => (w.clone(), c.clone()),
        None => return Err(Error::InvalidArgument("division by zero polynomial".into())),
    };
    let mut rem = p.clone();
    let mut quot = NCPoly::zero(p.r);
    while let Some((w, c)) = rem.leading() {
        if !w.ends_with(&lead_word) {
            return Err(Error::NotRightDivisible { remainder: rem.to_string() });
        }
        let prefix = w.prefix(w.len() - lead_word.len());
        let factor = c / &lead_coeff;
        rem.add_scaled(&u.lmul_word(&prefix), &-&factor);
        quot.add_term(prefix, factor);
    }
    Ok(quot)
}

/// An index `(k1,…,kl; s1,…,sl)` of a multiple L-value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MLVIndex {
    pub k: Vec<u32>,
    pub s: Vec<RootIndex>,
}

impl MLVIndex {
    pub fn new(k: Vec<u32>, s: Vec<RootIndex>) -> Result<MLVIndex> {
        if k.is_empty() || k.len() != s.len() || k.contains(&0) {
            return Err(Error::InvalidArgument("index needs equal-length nonempty k and s with k_i >= 1".into()));
        }
        if s.windows(2).any(|p| p[0].modulus() != p[1].modulus()) {
            return Err(Error::InvalidArgument("mixed moduli in index".into()));
        }
        Ok(MLVIndex { k, s })
    }

    pub fn modulus(&self) -> u32 {
        self.s[0].modulus()
    }

    pub fn depth(&self) -> usize {
        self.k.len()
    }

    pub fn weight(&self) -> u32 {
        self.k.iter().sum()
    }

    /// `(k1, s1) ≠ (1, 1)`.
    pub fn is_admissible(&self) -> bool {
        !(self.k[0] == 1 && self.s[0].is_one())
    }

    pub fn j(&self) -> Vec<u32> {
        self.s.iter().map(|s| s.j()).collect()
    }
}

impl fmt::Display for MLVIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.k.iter().map(u32::to_string).collect();
        let j: Vec<String> = self.s.iter().map(|s| s.j().to_string()).collect();
        write!(f, "{};{}", k.join(","), j.join(","))
    }
}

pub fn word_to_index(w: &Word, r: u32) -> Result<MLVIndex> {
    if w.is_empty() || !w.in_a1() {
        return Err(Error::NotInA1(w.to_string()));
    }
    let (blocks, _) = w.z_decompose();
    let (k, s) = blocks.into_iter().map(|(k, j)| (k, RootIndex::new(j, r))).unzip();
    MLVIndex::new(k, s)
}

pub fn index_to_word(ix: &MLVIndex) -> Word {
    let blocks: Vec<(u32, u32)> = ix.k.iter().zip(&ix.s).map(|(&k, s)| (k, s.j())).collect();
    Word::z_compose(&blocks, 0)
}
