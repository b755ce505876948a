use std::collections::BTreeSet;

use super::{law, Case, Env, Law, Mismatch, Outcome};
use crate::error::Result;
use crate::hopf::{
    antipode, b_plus, coproduct, counit, enumerate_forests, enumerate_forests_upto, enumerate_trees, forest_mul,
    forest_sum, tensor_mul, Forest, ForestSum, ForestSumDisplay, TensorSum, TensorSumDisplay, Tree,
};
use crate::lincomb::LinComb;
use crate::rational::Rational;

pub(super) fn laws() -> Vec<Law> {
    vec![
        law("hopf_coassoc", "(Δ⊗id)Δ = (id⊗Δ)Δ", coassoc),
        law("hopf_counit", "(ε⊗id)Δ = id = (id⊗ε)Δ", counit_axiom),
        law("hopf_antipode_axiom", "m(S⊗id)Δ = ε·1 = m(id⊗S)Δ", antipode_axiom),
        law("hopf_multiplicativity", "Δ(gh) = Δ(g)Δ(h) and S(gh) = S(g)S(h)", multiplicativity),
        law("hopf_admissible_cuts", "Δ(t) agrees with the sum over admissible cuts", admissible_cuts),
        law("hopf_tree_counts", "trees per degree: 1, 1, 2, 4, 9, 20, …", tree_counts),
        law("hopf_grafting_degree", "B₊ raises degree by one and returns trees", grafting_degree),
    ]
}

type Triple = LinComb<(Forest, Forest, Forest)>;

fn show<K: Ord + Clone + std::fmt::Debug>(t: &LinComb<K>) -> String {
    let parts: Vec<String> = t.iter().map(|(k, c)| format!("{c}*{k:?}")).collect();
    parts.join(" + ")
}

fn forest_cases(d: u32) -> Vec<Case> {
    enumerate_forests_upto(d).into_iter().map(|f| Case::new(1).forests(&[f])).collect()
}

fn forests_eq(lhs: &ForestSum, rhs: &ForestSum) -> Mismatch {
    (lhs != rhs).then(|| (ForestSumDisplay(lhs).to_string(), ForestSumDisplay(rhs).to_string()))
}

fn coassoc(env: &Env) -> Result<Outcome> {
    env.check(forest_cases(env.sweep.max_hopf_degree), |c| {
        let delta = coproduct(&forest_sum(c.forests[0].clone()));
        let mut left = Triple::zero();
        let mut right = Triple::zero();
        for ((a, b), coef) in delta.iter() {
            for ((a1, a2), c1) in coproduct(&forest_sum(a.clone())).iter() {
                left.add_term((a1.clone(), a2.clone(), b.clone()), coef * c1);
            }
            for ((b1, b2), c2) in coproduct(&forest_sum(b.clone())).iter() {
                right.add_term((a.clone(), b1.clone(), b2.clone()), coef * c2);
            }
        }
        Ok((left != right).then(|| (show(&left), show(&right))))
    })
}

fn counit_axiom(env: &Env) -> Result<Outcome> {
    env.check(forest_cases(env.sweep.max_hopf_degree), |c| {
        let f = forest_sum(c.forests[0].clone());
        let delta = coproduct(&f);
        let mut left = ForestSum::zero();
        let mut right = ForestSum::zero();
        for ((a, b), coef) in delta.iter() {
            left.add_scaled(&forest_sum(b.clone()), &(coef * &counit(&forest_sum(a.clone()))));
            right.add_scaled(&forest_sum(a.clone()), &(coef * &counit(&forest_sum(b.clone()))));
        }
        Ok(forests_eq(&left, &f).or_else(|| forests_eq(&right, &f)))
    })
}

fn antipode_axiom(env: &Env) -> Result<Outcome> {
    env.check(forest_cases(env.sweep.max_hopf_degree), |c| {
        let f = forest_sum(c.forests[0].clone());
        let want = ForestSum::term(Forest::unit(), counit(&f));
        let mut left = ForestSum::zero();
        let mut right = ForestSum::zero();
        for ((a, b), coef) in coproduct(&f).iter() {
            let (a, b) = (forest_sum(a.clone()), forest_sum(b.clone()));
            left.add_scaled(&forest_mul(&antipode(&a), &b), coef);
            right.add_scaled(&forest_mul(&a, &antipode(&b)), coef);
        }
        Ok(forests_eq(&left, &want).or_else(|| forests_eq(&right, &want)))
    })
}

fn multiplicativity(env: &Env) -> Result<Outcome> {
    let d = env.sweep.max_hopf_degree;
    let forests: Vec<Forest> = enumerate_forests_upto(d).into_iter().filter(|f| !f.is_unit()).collect();
    let mut cases = Vec::new();
    for (i, g) in forests.iter().enumerate() {
        for h in &forests[i..] {
            if g.degree() + h.degree() <= d {
                cases.push(Case::new(1).forests(&[g.clone(), h.clone()]));
            }
        }
    }
    env.check(cases, |c| {
        let g = forest_sum(c.forests[0].clone());
        let h = forest_sum(c.forests[1].clone());
        let gh = forest_mul(&g, &h);
        let lhs = coproduct(&gh);
        let rhs = tensor_mul(&coproduct(&g), &coproduct(&h));
        if lhs != rhs {
            return Ok(Some((TensorSumDisplay(&lhs).to_string(), TensorSumDisplay(&rhs).to_string())));
        }
        Ok(forests_eq(&antipode(&gh), &forest_mul(&antipode(&g), &antipode(&h))))
    })
}

/// A tree as a parent array in preorder; vertex 0 is the root.
fn parent_array(t: &Tree) -> Vec<Option<usize>> {
    fn walk(t: &Tree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
        let me = out.len();
        out.push(parent);
        for c in t.children() {
            walk(c, Some(me), out);
        }
    }
    let mut out = Vec::new();
    walk(t, None, &mut out);
    out
}

fn subtree(parents: &[Option<usize>], v: usize, removed: &[bool]) -> Tree {
    let children = (0..parents.len())
        .filter(|&c| parents[c] == Some(v) && !removed[c])
        .map(|c| subtree(parents, c, removed))
        .collect();
    Tree::from_children(children)
}

fn is_ancestor(parents: &[Option<usize>], a: usize, mut v: usize) -> bool {
    while let Some(p) = parents[v] {
        if p == a {
            return true;
        }
        v = p;
    }
    false
}

/// `Σ_c P^c(t) ⊗ R^c(t)` over admissible cuts, plus `t ⊗ 1`.
fn cuts_coproduct(t: &Tree) -> TensorSum {
    let parents = parent_array(t);
    let n = parents.len();
    let mut out = TensorSum::basis((Forest::tree(t.clone()), Forest::unit()));
    let one = Rational::from_integer(1);
    for mask in 0u64..(1 << (n - 1)) {
        let cut: Vec<usize> = (1..n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        if cut.iter().any(|&a| cut.iter().any(|&b| a != b && is_ancestor(&parents, a, b))) {
            continue;
        }
        let mut removed = vec![false; n];
        for &v in &cut {
            removed[v] = true;
        }
        let no_removal = vec![false; n];
        let pruned = Forest::from_trees(cut.iter().map(|&v| subtree(&parents, v, &no_removal)).collect());
        let trunk = Forest::tree(subtree(&parents, 0, &removed));
        out.add_term((pruned, trunk), one.clone());
    }
    out
}

fn admissible_cuts(env: &Env) -> Result<Outcome> {
    let cases = (1..=env.sweep.max_hopf_degree)
        .flat_map(enumerate_trees)
        .map(|t| Case::new(1).forests(&[Forest::tree(t)]))
        .collect();
    env.check(cases, |c| {
        let t = c.forests[0].as_tree().expect("tree case");
        let lhs = coproduct(&forest_sum(c.forests[0].clone()));
        let rhs = cuts_coproduct(t);
        Ok((lhs != rhs).then(|| (TensorSumDisplay(&lhs).to_string(), TensorSumDisplay(&rhs).to_string())))
    })
}

/// Distinct rooted trees on `n` vertices, from all parent arrays.
fn brute_tree_count(n: u32) -> usize {
    let n = n as usize;
    let mut seen = BTreeSet::new();
    let mut parents = vec![0usize; n];
    loop {
        let arr: Vec<Option<usize>> = (0..n).map(|v| (v > 0).then(|| parents[v])).collect();
        seen.insert(subtree(&arr, 0, &vec![false; n]));
        // odometer over parents[v] in 0..v
        let mut v = n;
        loop {
            v -= 1;
            if v == 0 {
                return seen.len();
            }
            parents[v] += 1;
            if parents[v] < v {
                break;
            }
            parents[v] = 0;
        }
    }
}

/// Rooted unlabeled trees by vertex count.
const TREE_COUNTS: [usize; 9] = [1, 1, 2, 4, 9, 20, 48, 115, 286];

fn tree_counts(env: &Env) -> Result<Outcome> {
    let cases = (1..=env.sweep.max_hopf_degree.min(TREE_COUNTS.len() as u32))
        .map(|d| Case::new(1).ints(&[d]))
        .collect();
    env.check(cases, |c| {
        let d = c.ints[0];
        let got = enumerate_trees(d).len();
        let brute = brute_tree_count(d);
        let known = TREE_COUNTS[d as usize - 1];
        Ok((got != brute || got != known).then(|| (got.to_string(), format!("{brute} (brute), {known} (table)"))))
    })
}

fn grafting_degree(env: &Env) -> Result<Outcome> {
    let cases = (0..env.sweep.max_hopf_degree)
        .flat_map(enumerate_forests)
        .map(|f| Case::new(1).forests(&[f]))
        .collect();
    env.check(cases, |c| {
        let f = &c.forests[0];
        let g = b_plus(&forest_sum(f.clone()));
        let ok = g.len() == 1 && g.keys().all(|t| t.as_tree().is_some() && t.degree() == f.degree() + 1);
        Ok((!ok).then(|| (ForestSumDisplay(&g).to_string(), format!("a tree of degree {}", f.degree() + 1))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_counts() {
        let got: Vec<usize> = (1..=6).map(brute_tree_count).collect();
        assert_eq!(got, TREE_COUNTS[..6]);
    }

    #[test]
    fn cuts_of_cherry() {
        let t = Tree::corolla(2);
        assert_eq!(cuts_coproduct(&t), coproduct(&forest_sum(Forest::tree(t))));
    }
}
