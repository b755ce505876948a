//! Per-modulus computation context holding the memo tables.
//!
//! Every table caches a pure function of its key, so results never depend
//! on fill order and a context can be shared across threads.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::hopf::Forest;
use crate::words::{NCPoly, Word, MAX_MODULUS};

/// Deliberate single-rule faults used to check that the law suites catch bugs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mutation {
    /// Flips the sign of the second term in `vx ⋄ wx = (v ⋄ wx)x − (vy ⋄ w)x`.
    DiamondRule3Sign,
}

impl Mutation {
    pub const ALL: [Mutation; 1] = [Mutation::DiamondRule3Sign];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DiamondRule3Sign => "diamond_rule_3_sign",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mutation> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMutation(s.to_string()))
    }
}

/// A letter of the basis `{z} ∪ {z_s^δ}` used to define rooted tree maps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BasisLetter {
    Z,
    /// `z_s^δ` for `s = exp(2πij/r)`.
    ZDelta(u32),
}

pub struct Context {
    r: u32,
    mutation: Option<Mutation>,
    base: Option<Box<Context>>,
    pub(crate) harmonic_memo: DashMap<(Word, Word), Arc<NCPoly>>,
    pub(crate) diamond_memo: DashMap<(u32, Word, Word), Arc<NCPoly>>,
    pub(crate) rtm_letter_memo: DashMap<(Forest, BasisLetter), NCPoly>,
    pub(crate) rtm_word_memo: DashMap<(Forest, Word), NCPoly>,
    pub(crate) f_memo: DashMap<Forest, NCPoly>,
    pub(crate) g_memo: DashMap<Forest, NCPoly>,
}

impl Context {
    pub fn new(r: u32) -> Result<Context> {
        Context::with_mutation(r, None)
    }

    pub fn with_mutation(r: u32, mutation: Option<Mutation>) -> Result<Context> {
        if !(1..=MAX_MODULUS).contains(&r) {
            return Err(Error::BadModulus(r));
        }
        let base = (r != 1).then(|| Box::new(Context::bare(1, mutation)));
        Ok(Context { base, ..Context::bare(r, mutation) })
    }

    fn bare(r: u32, mutation: Option<Mutation>) -> Context {
        Context {
            r,
            mutation,
            base: None,
            harmonic_memo: DashMap::new(),
            diamond_memo: DashMap::new(),
            rtm_letter_memo: DashMap::new(),
            rtm_word_memo: DashMap::new(),
            f_memo: DashMap::new(),
            g_memo: DashMap::new(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    /// The modulus-1 context, used for `⋄₁` and the polynomials `F_f`, `G_f`.
    pub fn base(&self) -> &Context {
        self.base.as_deref().unwrap_or(self)
    }

    pub fn check(&self, p: &NCPoly) -> Result<()> {
        if p.modulus() == self.r {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.r, p.modulus()))
        }
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context").field("r", &self.r).field("mutation", &self.mutation).finish()
    }
}

type SharedContexts = DashMap<(u32, Option<Mutation>), Arc<Context>>;

static SHARED: LazyLock<SharedContexts> = LazyLock::new(DashMap::new);

/// A process-wide context for `(r, mutation)`, created on first use.
pub fn shared(r: u32, mutation: Option<Mutation>) -> Result<Arc<Context>> {
    if let Some(ctx) = SHARED.get(&(r, mutation)) {
        return Ok(Arc::clone(&ctx));
    }
    let ctx = Arc::new(Context::with_mutation(r, mutation)?);
    Ok(Arc::clone(SHARED.entry((r, mutation)).or_insert(ctx).value()))
}

/// Looks `key` up in `memo`, computing and storing it on a miss.
///
/// The guard is released before `compute` runs, so recursive fills are safe.
pub(crate) fn memoized<K, V, E>(
    memo: &DashMap<K, V>,
    key: K,
    compute: impl FnOnce() -> std::result::Result<V, E>,
) -> std::result::Result<V, E>
where
    K: Eq + std::hash::Hash,
    V: Clone,
{
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let value = compute()?;
    memo.insert(key, value.clone());
    Ok(value)
}
