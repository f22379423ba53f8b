//! Identity registry, exact evaluation of both sides, and grid verification.

mod registry;
pub mod report;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::seqcore::{self, SeqError, SequenceCache};

pub use registry::{registry, IdentityDescriptor, Sides};

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("{id} does not apply at k={k}, n={n}")]
    NotApplicable { id: &'static str, k: usize, n: usize },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("negative sequence index {0}")]
    NegativeIndex(i64),
    #[error("empty grid: {0}")]
    EmptyGrid(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    AsPrinted,
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::AsPrinted => "as-printed",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Meaning of `L_0, L_1, L_2` in the classical-Lucas weighted sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LucasConvention {
    /// `2, 1, 3`
    #[default]
    Classical,
    /// `L(2, 0..3) = 1, 2, 3`
    Generalized,
}

impl FromStr for LucasConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(LucasConvention::Classical),
            "generalized" => Ok(LucasConvention::Generalized),
            other => Err(format!(
                "unknown Lucas convention `{other}` (expected classical or generalized)"
            )),
        }
    }
}

fn index(idx: i64) -> Result<usize, IdentityError> {
    usize::try_from(idx).map_err(|_| IdentityError::NegativeIndex(idx))
}

/// State for the primary route: the shared memo table.
#[derive(Debug, Clone, Default)]
pub struct EvalContext {
    pub cache: SequenceCache,
    pub lucas_convention: LucasConvention,
}

impl EvalContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: SequenceCache) -> Self {
        EvalContext {
            cache,
            ..Self::default()
        }
    }

    pub(crate) fn fib(&mut self, k: usize, idx: i64) -> Result<BigInt, IdentityError> {
        Ok(seqcore::gen_fib(k, index(idx)?, &mut self.cache)?.into())
    }

    pub(crate) fn lucas(&mut self, k: usize, idx: i64) -> Result<BigInt, IdentityError> {
        Ok(seqcore::gen_lucas(k, index(idx)?, &mut self.cache)?.into())
    }

    pub(crate) fn classic_lucas(&mut self, idx: i64) -> Result<BigInt, IdentityError> {
        let n = index(idx)?;
        let value = match self.lucas_convention {
            LucasConvention::Classical => seqcore::classic_lucas(n, &mut self.cache)?,
            LucasConvention::Generalized => seqcore::gen_lucas(2, n, &mut self.cache)?,
        };
        Ok(value.into())
    }
}

/// State for the alternate route: plain per-`k` vectors of `F` values and
/// their running prefix sums, grown on demand. Shares nothing with
/// [`SequenceCache`].
#[derive(Debug, Clone, Default)]
pub struct AltTable {
    lucas_convention: LucasConvention,
    fib: HashMap<usize, Vec<BigInt>>,
    prefix: HashMap<usize, Vec<BigInt>>,
}

impl AltTable {
    pub fn new(lucas_convention: LucasConvention) -> Self {
        AltTable {
            lucas_convention,
            ..Self::default()
        }
    }

    fn grow(&mut self, k: usize, upto: usize) {
        let values = self.fib.entry(k).or_default();
        let sums = self.prefix.entry(k).or_default();
        while values.len() <= upto {
            let m = values.len();
            let next = if m < k {
                BigInt::from(m + 1)
            } else {
                &values[m - 1] + &values[m - k]
            };
            let running = sums.last().cloned().unwrap_or_default() + &next;
            values.push(next);
            sums.push(running);
        }
    }

    pub fn fib(&mut self, k: usize, idx: i64) -> Result<BigInt, IdentityError> {
        let m = index(idx)?;
        self.grow(k, m);
        Ok(self.fib[&k][m].clone())
    }

    /// `sum_{m=0}^{upto} F(k, m)`; zero when `upto < 0`.
    pub fn fib_prefix(&mut self, k: usize, upto: i64) -> Result<BigInt, IdentityError> {
        if upto < 0 {
            return Ok(BigInt::default());
        }
        let m = upto as usize;
        self.grow(k, m);
        Ok(self.prefix[&k][m].clone())
    }

    /// `sum_{m=lo}^{hi} F(k, m)`; zero for an empty range.
    pub fn fib_range(&mut self, k: usize, lo: i64, hi: i64) -> Result<BigInt, IdentityError> {
        if hi < lo {
            return Ok(BigInt::default());
        }
        index(lo)?;
        Ok(self.fib_prefix(k, hi)? - self.fib_prefix(k, lo - 1)?)
    }

    pub fn lucas(&mut self, k: usize, idx: i64) -> Result<BigInt, IdentityError> {
        let m = index(idx)?;
        if m < 2 * k {
            return Ok(BigInt::from(m + 1));
        }
        let kk = k as i64;
        Ok(BigInt::from(kk - 1) * self.fib(k, idx - (2 * kk - 1))? + self.fib(k, idx - (kk - 1))?)
    }

    pub fn classic_lucas(&mut self, idx: i64) -> Result<BigInt, IdentityError> {
        match (self.lucas_convention, idx) {
            (LucasConvention::Classical, 0) => Ok(BigInt::from(2)),
            (LucasConvention::Classical, 1) => Ok(BigInt::from(1)),
            _ => self.lucas(2, idx),
        }
    }
}

pub fn find(id: &str) -> Result<IdentityDescriptor, IdentityError> {
    registry()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| IdentityError::UnknownIdentity(id.to_string()))
}

/// Resolves a list of ids, keeping registry order and dropping duplicates.
pub fn select(ids: &[String]) -> Result<Vec<IdentityDescriptor>, IdentityError> {
    for id in ids {
        find(id)?;
    }
    Ok(registry()
        .into_iter()
        .filter(|d| ids.iter().any(|id| id == d.id))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Only points inside each identity's stated range.
    Stated,
    /// Only points outside the stated range where both sides are defined.
    Explore,
}

impl IdentityDescriptor {
    pub fn in_scope(&self, scope: Scope, k: usize, n: usize) -> bool {
        match scope {
            Scope::Stated => (self.applies)(k, n),
            Scope::Explore => {
                !(self.applies)(k, n) && self.explore.is_some_and(|defined| defined(k, n))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationRecord {
    pub identity_id: &'static str,
    pub variant: Variant,
    pub k: usize,
    pub n: usize,
    #[serde(serialize_with = "report::as_decimal")]
    pub lhs: BigInt,
    #[serde(serialize_with = "report::as_decimal")]
    pub rhs: BigInt,
    pub matched: bool,
}

fn record(d: &IdentityDescriptor, k: usize, n: usize, (lhs, rhs): Sides) -> EvaluationRecord {
    EvaluationRecord {
        identity_id: d.id,
        variant: d.variant,
        k,
        n,
        matched: lhs == rhs,
        lhs,
        rhs,
    }
}

/// Evaluates both sides inside the stated range.
pub fn evaluate_identity(
    d: &IdentityDescriptor,
    k: usize,
    n: usize,
    ctx: &mut EvalContext,
) -> Result<EvaluationRecord, IdentityError> {
    if !(d.applies)(k, n) {
        return Err(IdentityError::NotApplicable { id: d.id, k, n });
    }
    Ok(record(d, k, n, (d.primary)(ctx, k, n)?))
}

/// Evaluates anywhere in the stated or exploration range.
pub fn evaluate_anywhere(
    d: &IdentityDescriptor,
    k: usize,
    n: usize,
    ctx: &mut EvalContext,
) -> Result<EvaluationRecord, IdentityError> {
    if !d.in_scope(Scope::Stated, k, n) && !d.in_scope(Scope::Explore, k, n) {
        return Err(IdentityError::NotApplicable { id: d.id, k, n });
    }
    Ok(record(d, k, n, (d.primary)(ctx, k, n)?))
}

/// Both sides through both routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteCheck {
    pub primary: Sides,
    pub alternate: Sides,
}

impl RouteCheck {
    pub fn agree(&self) -> bool {
        self.primary == self.alternate
    }
}

pub fn cross_check(
    d: &IdentityDescriptor,
    k: usize,
    n: usize,
    ctx: &mut EvalContext,
    table: &mut AltTable,
) -> Result<RouteCheck, IdentityError> {
    if !d.in_scope(Scope::Stated, k, n) && !d.in_scope(Scope::Explore, k, n) {
        return Err(IdentityError::NotApplicable { id: d.id, k, n });
    }
    Ok(RouteCheck {
        primary: (d.primary)(ctx, k, n)?,
        alternate: (d.alternate)(table, k, n)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub k_min: usize,
    pub k_max: usize,
    pub n_max: usize,
    /// Upper bound for identities whose `n` is a multiplier of `k`.
    pub multiplier_max: usize,
    pub scope: Scope,
    pub lucas_convention: LucasConvention,
}

impl Grid {
    pub fn new(k_min: usize, k_max: usize, n_max: usize) -> Self {
        Grid {
            k_min,
            k_max,
            n_max,
            multiplier_max: n_max,
            scope: Scope::Stated,
            lucas_convention: LucasConvention::Classical,
        }
    }

    pub fn multiplier_max(mut self, m: usize) -> Self {
        self.multiplier_max = m;
        self
    }

    pub fn scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn lucas_convention(mut self, c: LucasConvention) -> Self {
        self.lucas_convention = c;
        self
    }

    fn points(&self, d: &IdentityDescriptor) -> Vec<(usize, usize)> {
        let n_max = if d.multiplier { self.multiplier_max } else { self.n_max };
        (self.k_min..=self.k_max)
            .flat_map(|k| (0..=n_max).map(move |n| (k, n)))
            .filter(|&(k, n)| d.in_scope(self.scope, k, n))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub k: usize,
    pub n: usize,
    #[serde(serialize_with = "report::as_decimal")]
    pub lhs: BigInt,
    #[serde(serialize_with = "report::as_decimal")]
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentitySummary {
    pub identity_id: &'static str,
    pub variant: Variant,
    pub evaluated: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl IdentitySummary {
    pub fn passed(&self) -> bool {
        self.mismatched == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub grid: Grid,
    pub records: Vec<EvaluationRecord>,
    pub summary: Vec<IdentitySummary>,
}

impl VerificationReport {
    pub fn all_matched(&self) -> bool {
        self.records.iter().all(|r| r.matched)
    }

    pub fn summary_for(&self, id: &str) -> Option<&IdentitySummary> {
        self.summary.iter().find(|s| s.identity_id == id)
    }
}

fn summarize(d: &IdentityDescriptor, records: &[EvaluationRecord]) -> IdentitySummary {
    let matched = records.iter().filter(|r| r.matched).count();
    IdentitySummary {
        identity_id: d.id,
        variant: d.variant,
        evaluated: records.len(),
        matched,
        mismatched: records.len() - matched,
        first_counterexample: records.iter().find(|r| !r.matched).map(|r| Counterexample {
            k: r.k,
            n: r.n,
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
        }),
    }
}

/// Evaluates every selected identity at every in-scope grid point.
///
/// Identities are spread over `jobs` worker threads, each with its own clone
/// of the cache; worker caches are merged back afterwards. Records come out
/// in (registry order, k, n) order whatever `jobs` is.
pub fn verify_grid(
    ids: &[IdentityDescriptor],
    grid: &Grid,
    ctx: &mut EvalContext,
    jobs: usize,
) -> Result<VerificationReport, IdentityError> {
    if grid.k_min < 2 || grid.k_min > grid.k_max {
        return Err(IdentityError::EmptyGrid(format!(
            "k range {}..{}",
            grid.k_min, grid.k_max
        )));
    }
    if ids.is_empty() {
        return Err(IdentityError::EmptyGrid("no identities selected".into()));
    }
    ctx.lucas_convention = grid.lucas_convention;

    let run = |d: &IdentityDescriptor, mut local: EvalContext| {
        let records = grid
            .points(d)
            .into_iter()
            .map(|(k, n)| Ok(record(d, k, n, (d.primary)(&mut local, k, n)?)))
            .collect::<Result<Vec<_>, IdentityError>>()?;
        Ok::<_, IdentityError>((records, local.cache))
    };

    let results: Vec<_> = if jobs <= 1 {
        ids.iter().map(|d| run(d, ctx.clone())).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| ids.par_iter().map(|d| run(d, ctx.clone())).collect())
    };

    let mut records = Vec::new();
    let mut summary = Vec::new();
    for (d, result) in ids.iter().zip(results) {
        let (batch, cache) = result?;
        ctx.cache.merge(cache)?;
        summary.push(summarize(d, &batch));
        records.extend(batch);
    }
    Ok(VerificationReport {
        grid: *grid,
        records,
        summary,
    })
}
