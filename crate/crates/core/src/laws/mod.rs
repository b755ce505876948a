//! Named identity suites swept over small domains.
//!
//! Every suite enumerates its cases exhaustively below the degree caps of a
//! [`Sweep`], then adds `sample_budget` seeded random cases one degree above
//! them. Cases run in parallel; reports list failures in case order.

mod algebra;
mod hopf_laws;
mod maps;

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::{shared, Context, Mutation};
use crate::error::{Error, Result};
use crate::hopf::Forest;
use crate::words::{Letter, NCPoly, RootIndex, Word};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sweep {
    pub r_values: Vec<u32>,
    pub max_forest_degree: u32,
    pub max_word_degree: usize,
    /// Degree cap for the Hopf-algebra suites, which do not involve words.
    pub max_hopf_degree: u32,
    pub sample_budget: usize,
    pub seed: u64,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            r_values: vec![1, 2, 3],
            max_forest_degree: 3,
            max_word_degree: 3,
            max_hopf_degree: 5,
            sample_budget: 16,
            seed: 0x7265_6573,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub ms: u64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One generated input: a modulus, roots of unity, forests, words over
/// `{x, y}` (`left`) and words over the full alphabet (`words`).
#[derive(Clone, Debug, Default)]
pub(crate) struct Case {
    pub r: u32,
    pub roots: Vec<RootIndex>,
    pub forests: Vec<Forest>,
    pub left: Vec<Word>,
    pub words: Vec<Word>,
    pub ints: Vec<u32>,
}

impl Case {
    pub fn new(r: u32) -> Case {
        Case { r, ..Case::default() }
    }

    pub fn roots(mut self, roots: &[RootIndex]) -> Case {
        self.roots.extend_from_slice(roots);
        self
    }

    pub fn forests(mut self, forests: &[Forest]) -> Case {
        self.forests.extend_from_slice(forests);
        self
    }

    pub fn left(mut self, words: &[Word]) -> Case {
        self.left.extend_from_slice(words);
        self
    }

    pub fn words(mut self, words: &[Word]) -> Case {
        self.words.extend_from_slice(words);
        self
    }

    pub fn ints(mut self, ints: &[u32]) -> Case {
        self.ints.extend_from_slice(ints);
        self
    }

    pub fn s(&self, i: usize) -> RootIndex {
        self.roots[i]
    }

    pub fn lp(&self, i: usize) -> NCPoly {
        NCPoly::word(1, self.left[i].clone())
    }

    pub fn wp(&self, i: usize) -> NCPoly {
        NCPoly::word(self.r, self.words[i].clone())
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}", self.r)?;
        if !self.roots.is_empty() {
            let j: Vec<String> = self.roots.iter().map(|s| s.j().to_string()).collect();
            write!(f, " s=[{}]", j.join(","))?;
        }
        if !self.ints.is_empty() {
            let k: Vec<String> = self.ints.iter().map(u32::to_string).collect();
            write!(f, " k=[{}]", k.join(","))?;
        }
        for forest in &self.forests {
            write!(f, " f=({forest})")?;
        }
        for w in &self.left {
            write!(f, " v=({w})")?;
        }
        for w in &self.words {
            write!(f, " w=({w})")?;
        }
        Ok(())
    }
}

/// `Some((lhs, rhs))` when the sides differ.
pub(crate) type Mismatch = Option<(String, String)>;

pub(crate) fn poly_eq(lhs: &NCPoly, rhs: &NCPoly) -> Mismatch {
    (lhs != rhs).then(|| (lhs.to_string(), rhs.to_string()))
}

/// First mismatch among several `(lhs, rhs)` pairs.
pub(crate) fn all_eq(pairs: &[(NCPoly, NCPoly)]) -> Mismatch {
    pairs.iter().find_map(|(l, r)| poly_eq(l, r))
}

pub(crate) struct Env<'a> {
    pub sweep: &'a Sweep,
    pub mutation: Option<Mutation>,
    pub law: &'static str,
}

impl Env<'_> {
    pub fn ctx(&self, r: u32) -> Result<Arc<Context>> {
        shared(r, self.mutation)
    }

    pub fn base(&self) -> Result<Arc<Context>> {
        self.ctx(1)
    }

    pub fn rng(&self, r: u32) -> ChaCha8Rng {
        let tag = self.law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.sweep.seed ^ tag ^ u64::from(r).rotate_left(48))
    }

    pub fn d(&self) -> usize {
        self.sweep.max_word_degree
    }

    pub fn fdeg(&self) -> u32 {
        self.sweep.max_forest_degree
    }

    /// `sample_budget` cases drawn from `gen`, per modulus.
    pub fn samples(&self, r: u32, mut gen: impl FnMut(&mut ChaCha8Rng) -> Case) -> Vec<Case> {
        let mut rng = self.rng(r);
        (0..self.sweep.sample_budget).map(|_| gen(&mut rng)).collect()
    }

    /// Runs `check` on every case in parallel.
    pub fn check(&self, cases: Vec<Case>, check: impl Fn(&Case) -> Result<Mismatch> + Sync) -> Result<Outcome> {
        let results: Vec<Mismatch> = cases.par_iter().map(&check).collect::<Result<_>>()?;
        let failures = cases
            .iter()
            .zip(results)
            .filter_map(|(c, m)| m.map(|(lhs, rhs)| Failure { case: c.to_string(), lhs, rhs }))
            .collect();
        Ok(Outcome { cases: cases.len(), failures })
    }
}

pub(crate) struct Outcome {
    pub cases: usize,
    pub failures: Vec<Failure>,
}

pub(crate) fn random_word(rng: &mut ChaCha8Rng, r: u32, len: usize) -> Word {
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let pick = rng.gen_range(0..=r);
            if pick == r {
                Letter::X
            } else {
                Letter::y(pick)
            }
        })
        .collect();
    Word::from_letters(&letters)
}

pub(crate) fn random_root(rng: &mut ChaCha8Rng, r: u32) -> RootIndex {
    RootIndex::new(rng.gen_range(0..r), r)
}

/// A registered suite.
pub struct Law {
    pub name: &'static str,
    /// The statement being checked.
    pub statement: &'static str,
    run: fn(&Env) -> Result<Outcome>,
}

/// All registered suites, in a fixed order.
pub fn registry() -> Vec<Law> {
    let mut out = hopf_laws::laws();
    out.extend(algebra::laws());
    out.extend(maps::laws());
    out
}

pub fn law_names() -> Vec<&'static str> {
    registry().iter().map(|l| l.name).collect()
}

fn law(name: &'static str, statement: &'static str, run: fn(&Env) -> Result<Outcome>) -> Law {
    Law { name, statement, run }
}

/// Runs the named suites (`"all"` selects every suite).
///
/// Unknown names are rejected before anything runs.
pub fn run_suite(names: &[&str], sweep: &Sweep, mutation: Option<Mutation>) -> Result<Vec<LawReport>> {
    if sweep.r_values.is_empty() || sweep.r_values.iter().any(|&r| r == 0 || r > crate::words::MAX_MODULUS) {
        return Err(Error::InvalidArgument(format!("bad modulus list {:?}", sweep.r_values)));
    }
    let all = registry();
    let selected: Vec<&Law> = if names.contains(&"all") {
        all.iter().collect()
    } else {
        names
            .iter()
            .map(|n| all.iter().find(|l| l.name == *n).ok_or_else(|| Error::UnknownLaw(n.to_string())))
            .collect::<Result<_>>()?
    };
    selected
        .into_iter()
        .map(|l| {
            let start = Instant::now();
            let env = Env { sweep, mutation, law: l.name };
            let outcome = (l.run)(&env)?;
            Ok(LawReport {
                law: l.name.to_string(),
                cases: outcome.cases,
                failures: outcome.failures,
                ms: start.elapsed().as_millis() as u64,
            })
        })
        .collect()
}
