//! Rooted trees and forests with the Connes–Kreimer Hopf structure.
//!
//! Trees are kept in canonical form: children are sorted by degree and then
//! recursively by their own canonical order, so structural equality is
//! isomorphism of non-planar rooted trees. Forests are sorted multisets of
//! trees; the empty forest is the unit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;
use num_traits::Zero;

use crate::lincomb::LinComb;
use crate::rational::Rational;

/// A non-planar rooted tree in canonical form.
///
/// The derived order compares degree first and then the sorted child lists
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    degree: u32,
    children: Vec<Tree>,
}

impl Tree {
    /// The single vertex.
    pub fn vertex() -> Tree {
        Tree { degree: 1, children: Vec::new() }
    }

    pub fn from_children(mut children: Vec<Tree>) -> Tree {
        children.sort();
        let degree = 1 + children.iter().map(|c| c.degree).sum::<u32>();
        Tree { degree, children }
    }

    /// The ladder (path) with `n` vertices.
    pub fn ladder(n: u32) -> Tree {
        assert!(n >= 1);
        (1..n).fold(Tree::vertex(), |t, _| Tree::from_children(vec![t]))
    }

    /// The corolla with a root and `n` leaves.
    pub fn corolla(n: u32) -> Tree {
        Tree::from_children(vec![Tree::vertex(); n as usize])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    /// The forest obtained by deleting the root.
    pub fn branches(&self) -> Forest {
        Forest { degree: self.degree - 1, trees: self.children.clone() }
    }

    pub fn canonicalize(&self) -> Tree {
        Tree::from_children(self.children.iter().map(Tree::canonicalize).collect())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rooted forest: a sorted multiset of trees. Empty means the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Forest {
    degree: u32,
    trees: Vec<Tree>,
}

impl Forest {
    pub fn unit() -> Forest {
        Forest::default()
    }

    pub fn from_trees(mut trees: Vec<Tree>) -> Forest {
        trees.sort();
        let degree = trees.iter().map(|t| t.degree).sum();
        Forest { degree, trees }
    }

    pub fn tree(t: Tree) -> Forest {
        Forest { degree: t.degree, trees: vec![t] }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// Multiset union.
    pub fn mul(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        trees.sort();
        Forest { degree: self.degree + other.degree, trees }
    }

    /// Grafts all roots onto a new root.
    pub fn graft(&self) -> Tree {
        Tree { degree: self.degree + 1, children: self.trees.clone() }
    }

    /// Splits off the canonically least tree: `self = first * rest`.
    pub fn split_first(&self) -> Option<(Tree, Forest)> {
        let (first, rest) = self.trees.split_first()?;
        Some((first.clone(), Forest { degree: self.degree - first.degree, trees: rest.to_vec() }))
    }

    pub fn canonicalize(&self) -> Forest {
        Forest::from_trees(self.trees.iter().map(Tree::canonicalize).collect())
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Forest {
        Forest::tree(t)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of the Hopf algebra: a rational combination of forests.
pub type ForestSum = LinComb<Forest>;

/// A rational combination of pure tensors of forests.
pub type TensorSum = LinComb<(Forest, Forest)>;

pub fn forest_sum(f: Forest) -> ForestSum {
    ForestSum::basis(f)
}

pub fn unit_sum() -> ForestSum {
    ForestSum::basis(Forest::unit())
}

pub fn b_plus(f: &ForestSum) -> ForestSum {
    f.map_linear(|forest| ForestSum::basis(Forest::tree(forest.graft())))
}

pub fn forest_mul(a: &ForestSum, b: &ForestSum) -> ForestSum {
    a.bilinear(b, |f, g| ForestSum::basis(f.mul(g)))
}

pub fn tensor_mul(a: &TensorSum, b: &TensorSum) -> TensorSum {
    a.bilinear(b, |(a1, a2), (b1, b2)| TensorSum::basis((a1.mul(b1), a2.mul(b2))))
}

static TREE_COPRODUCT: LazyLock<DashMap<Tree, TensorSum>> = LazyLock::new(DashMap::new);
static TREE_ANTIPODE: LazyLock<DashMap<Tree, ForestSum>> = LazyLock::new(DashMap::new);

fn tree_coproduct(t: &Tree) -> TensorSum {
    if let Some(hit) = TREE_COPRODUCT.get(t) {
        return hit.clone();
    }
    // Δ(B₊(f)) = B₊(f) ⊗ 1 + (id ⊗ B₊) Δ(f)
    let mut out = TensorSum::basis((Forest::tree(t.clone()), Forest::unit()));
    for ((left, right), c) in forest_coproduct(&t.branches()).iter() {
        out.add_term((left.clone(), Forest::tree(right.graft())), c.clone());
    }
    TREE_COPRODUCT.insert(t.clone(), out.clone());
    out
}

/// Coproduct of a single forest, multiplicative over its trees.
pub fn forest_coproduct(f: &Forest) -> TensorSum {
    f.trees
        .iter()
        .fold(TensorSum::basis((Forest::unit(), Forest::unit())), |acc, t| tensor_mul(&acc, &tree_coproduct(t)))
}

pub fn coproduct(f: &ForestSum) -> TensorSum {
    f.map_linear(forest_coproduct)
}

/// The coefficient of the empty forest.
pub fn counit(f: &ForestSum) -> Rational {
    f.coeff(&Forest::unit())
}

fn tree_antipode(t: &Tree) -> ForestSum {
    if let Some(hit) = TREE_ANTIPODE.get(t) {
        return hit.clone();
    }
    // S(t) = -t - Σ' S(t') t'' over the reduced coproduct.
    let mut out = -&ForestSum::basis(Forest::tree(t.clone()));
    for ((left, right), c) in tree_coproduct(t).iter() {
        if left.is_unit() || right.is_unit() {
            continue;
        }
        let term = forest_mul(&forest_antipode(left), &ForestSum::basis(right.clone()));
        out.add_scaled(&term, &-c);
    }
    TREE_ANTIPODE.insert(t.clone(), out.clone());
    out
}

/// Antipode of a single forest; an algebra map since the algebra is commutative.
pub fn forest_antipode(f: &Forest) -> ForestSum {
    f.trees.iter().fold(unit_sum(), |acc, t| forest_mul(&acc, &tree_antipode(t)))
}

pub fn antipode(f: &ForestSum) -> ForestSum {
    f.map_linear(forest_antipode)
}

static TREES_BY_DEGREE: LazyLock<DashMap<u32, Vec<Tree>>> = LazyLock::new(DashMap::new);

/// All trees with exactly `d` vertices, in canonical order.
pub fn enumerate_trees(d: u32) -> Vec<Tree> {
    if d == 0 {
        return Vec::new();
    }
    if let Some(hit) = TREES_BY_DEGREE.get(&d) {
        return hit.clone();
    }
    let mut out: Vec<Tree> = enumerate_forests(d - 1).iter().map(Forest::graft).collect();
    out.sort();
    TREES_BY_DEGREE.insert(d, out.clone());
    out
}

/// All forests of exactly degree `d`, in canonical order and without repeats.
pub fn enumerate_forests(d: u32) -> Vec<Forest> {
    // Non-decreasing sequences of trees with the given total degree.
    fn extend(remaining: u32, min: Option<&Tree>, prefix: &mut Vec<Tree>, out: &mut Vec<Forest>) {
        if remaining == 0 {
            out.push(Forest::from_trees(prefix.clone()));
            return;
        }
        let start = min.map_or(1, Tree::degree);
        for deg in start..=remaining {
            for t in enumerate_trees(deg) {
                if min.is_some_and(|m| t < *m) {
                    continue;
                }
                prefix.push(t.clone());
                extend(remaining - deg, Some(&t), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(d, None, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All forests with degree in `0..=max_degree`, degree ascending.
pub fn enumerate_forests_upto(max_degree: u32) -> Vec<Forest> {
    (0..=max_degree).flat_map(enumerate_forests).collect()
}

fn write_sum<K>(f: &mut fmt::Formatter<'_>, terms: &LinComb<K>, show: impl Fn(&K) -> Option<String>) -> fmt::Result
where
    K: Ord + Clone,
{
    if terms.is_zero() {
        return f.write_str("0");
    }
    let one = Rational::from_integer(1);
    for (i, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        match show(k) {
            None => write!(f, "{mag}")?,
            Some(body) if mag == one => f.write_str(&body)?,
            Some(body) => write!(f, "{mag}*{body}")?,
        }
    }
    Ok(())
}

/// Formats a forest sum in the bracket grammar, e.g. `[] [] - 2*[[]]`.
pub struct ForestSumDisplay<'a>(pub &'a ForestSum);

impl fmt::Display for ForestSumDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.0, |forest| (!forest.is_unit()).then(|| forest.to_string()))
    }
}

pub struct TensorSumDisplay<'a>(pub &'a TensorSum);

impl fmt::Display for TensorSumDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.0, |(a, b)| Some(format!("{a} ⊗ {b}")))
    }
}

/// Groups tensor terms by left factor; handy for Sweedler-style sums.
pub fn tensor_by_left(t: &TensorSum) -> BTreeMap<Forest, ForestSum> {
    let mut out: BTreeMap<Forest, ForestSum> = BTreeMap::new();
    for ((a, b), c) in t.iter() {
        out.entry(a.clone()).or_default().add_term(b.clone(), c.clone());
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn is_augmented(f: &ForestSum) -> bool {
    counit(f).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Tree {
        Tree::vertex()
    }

    fn f(trees: Vec<Tree>) -> ForestSum {
        ForestSum::basis(Forest::from_trees(trees))
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn b_plus_of_unit_is_vertex() {
        assert_eq!(b_plus(&unit_sum()), f(vec![v()]));
    }

    #[test]
    fn b_plus_first_display() {
        // B₊(• cherry) has a root with a leaf and a cherry attached.
        let cherry = Tree::corolla(2);
        let got = b_plus(&f(vec![v(), cherry.clone()]));
        let want = f(vec![Tree::from_children(vec![v(), cherry])]);
        assert_eq!(got, want);
        assert_eq!(got.keys().next().unwrap().degree(), 5);
    }

    #[test]
    fn b_plus_second_display() {
        let l2 = Tree::ladder(2);
        let mut arg = f(vec![v(), v(), v()]);
        arg.add_scaled(&f(vec![l2.clone(), l2.clone()]), &q(-2));
        let mut want = f(vec![Tree::corolla(3)]);
        want.add_scaled(&f(vec![Tree::from_children(vec![l2.clone(), l2])]), &q(-2));
        assert_eq!(b_plus(&arg), want);
    }

    #[test]
    fn forest_mul_examples() {
        let one = unit_sum();
        let dot = f(vec![v()]);
        assert_eq!(forest_mul(&one, &dot), dot);
        assert_eq!(forest_mul(&dot, &dot), f(vec![v(), v()]));
        let lhs = forest_mul(&(&dot + &f(vec![Tree::ladder(2)])), &dot);
        assert_eq!(lhs, &f(vec![v(), v()]) + &f(vec![v(), Tree::ladder(2)]));
    }

    fn tensor(pairs: &[(i64, Vec<Tree>, Vec<Tree>)]) -> TensorSum {
        pairs
            .iter()
            .map(|(c, a, b)| ((Forest::from_trees(a.clone()), Forest::from_trees(b.clone())), q(*c)))
            .collect()
    }

    #[test]
    fn coproduct_displays() {
        assert_eq!(coproduct(&unit_sum()), tensor(&[(1, vec![], vec![])]));
        assert_eq!(coproduct(&f(vec![v()])), tensor(&[(1, vec![v()], vec![]), (1, vec![], vec![v()])]));
        assert_eq!(
            coproduct(&f(vec![v(), v()])),
            tensor(&[(1, vec![v(), v()], vec![]), (2, vec![v()], vec![v()]), (1, vec![], vec![v(), v()])])
        );
        let l2 = Tree::ladder(2);
        assert_eq!(
            coproduct(&f(vec![l2.clone()])),
            tensor(&[(1, vec![l2.clone()], vec![]), (1, vec![v()], vec![v()]), (1, vec![], vec![l2.clone()])])
        );
        let cherry = Tree::corolla(2);
        assert_eq!(
            coproduct(&f(vec![cherry.clone()])),
            tensor(&[
                (1, vec![cherry.clone()], vec![]),
                (1, vec![v(), v()], vec![v()]),
                (2, vec![v()], vec![l2]),
                (1, vec![], vec![cherry]),
            ])
        );
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&unit_sum()), q(1));
        assert_eq!(counit(&f(vec![v()])), q(0));
        let mut s = unit_sum().scale(&q(3));
        s.add_scaled(&f(vec![v(), v()]), &q(-2));
        assert_eq!(counit(&s), q(3));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&unit_sum()), unit_sum());
        assert_eq!(antipode(&f(vec![v()])), f(vec![v()]).scale(&q(-1)));
        let want = &f(vec![v(), v()]) - &f(vec![Tree::ladder(2)]);
        assert_eq!(antipode(&f(vec![Tree::ladder(2)])), want);
    }

    #[test]
    fn enumeration_small_degrees() {
        assert_eq!(enumerate_forests(0), vec![Forest::unit()]);
        let d2 = enumerate_forests(2);
        assert_eq!(d2.len(), 2);
        assert_eq!(d2[0], Forest::from_trees(vec![v(), v()]));
        assert_eq!(d2[1], Forest::tree(Tree::ladder(2)));
        assert_eq!(enumerate_forests(3).len(), 4);
        let counts: Vec<usize> = (1..=5).map(|d| enumerate_trees(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9]);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        for d in 0..=6 {
            let fs = enumerate_forests(d);
            assert!(fs.windows(2).all(|w| w[0] < w[1]));
            assert!(fs.iter().all(|f| f.degree() == d && f.canonicalize() == *f));
        }
    }

    #[test]
    fn display_bracket_form() {
        assert_eq!(Tree::corolla(2).to_string(), "[[][]]");
        assert_eq!(Tree::ladder(2).to_string(), "[[]]");
        assert_eq!(Forest::unit().to_string(), "1");
        let mut s = f(vec![v(), v()]);
        s.add_scaled(&f(vec![Tree::ladder(2)]), &q(-2));
        assert_eq!(ForestSumDisplay(&s).to_string(), "[] [] - 2*[[]]");
    }
}
